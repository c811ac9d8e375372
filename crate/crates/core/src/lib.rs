//! Weber-law parameterized segmentation of one-dimensional series.
//!
//! - [`weber`]: Weber's law, the expansion ratio, inhibitory rate and
//!   integrated inconsistent rate (IIR), and limited-unit quantization.
//! - [`splitter`]: the expanding algorithm, which cuts a series wherever a
//!   gap's inconsistency score reaches the IIR threshold.
//! - [`enumeration`]: the length-then-value listing of terminating decimals
//!   in (0, 1), its diagonal, and digit inversion.
//! - [`series`], [`pgm`], [`cornsweet`], [`report`]: input parsing, the
//!   Cornsweet profile generator, and report serialization.

pub mod cornsweet;
pub mod enumeration;
pub mod pgm;
pub mod report;
pub mod series;
pub mod splitter;
pub mod weber;

pub use cornsweet::{cornsweet_image, cornsweet_profile};
pub use enumeration::{
    diagonal, find_in_enumeration, index_of, invert, nth_decimal, DigitSequence, EnumeratedDecimal,
};
pub use report::SplitReport;
pub use series::{parse_series, parse_series_bytes, SeriesFormat, SeriesSource};
pub use splitter::{
    diagnostics, split, three_value_case, GapDiagnostic, Mode, Segmentation, SplitConfig,
    SplitError,
};
pub use weber::{iir_from_k, iir_table, quantize, WeberParams, WeberTriple};
