//! The expanding algorithm: split a 1-D series wherever a gap is
//! inconsistent with the rest of the series.
//!
//! For every adjacent pair the splitter records the gap, the gap before it,
//! and the mean gap of the whole series. The expansion ratio is
//! `gap / mean_gap`, the inhibitory rate is `gap / (gap - former_gap)`, and
//! their quotient reduces to the inconsistency score
//!
//! ```text
//! score = (gap - former_gap) / mean_gap
//! ```
//!
//! A gap splits the series when its score reaches `IIR(k)`. On the
//! three-value system `(0, ΔI, I + ΔI)` the score of the second gap is
//! exactly `IIR(ΔI / I)`.
//!
//! The first gap has no former gap, so it is compared with the gap after it,
//! as if the series were mirrored at its start. A leading jump is then scored
//! like a trailing one, while a small leading gap scores at most 0.
//!
//! # Example
//!
//! ```
//! use expanding_core::splitter::{split, Mode, SplitConfig};
//!
//! let c = [173.0, 172.0, 171.0, 170.0, 169.0, 168.0, 167.0,
//!          178.0, 177.0, 176.0, 175.0, 174.0, 173.0];
//! let config = SplitConfig::new(Mode::Sequence, 0.1).unwrap();
//! let seg = split(&c, &config).unwrap();
//! assert_eq!(seg.boundaries(), &[7]);
//! assert_eq!(seg.segments(), &[0..7, 7..13]);
//! ```

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weber::{quantize, WeberError, WeberParams};

/// Relative slack on the inclusive `score >= IIR` comparison.
///
/// The three-value score equals `IIR` in exact arithmetic but can land an
/// ulp or two below it in `f64`.
pub const THRESHOLD_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplitError {
    #[error(transparent)]
    Weber(#[from] WeberError),
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("cannot split an empty series")]
    Empty,
    #[error("minimum segment length must be at least 1")]
    ZeroMinSegment,
}

/// How the series is ordered before gaps are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Sort ascending (stable) and split the value distribution.
    Sorted,
    /// Keep acquisition order and use absolute adjacent differences.
    Sequence,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sorted => "sorted",
            Mode::Sequence => "sequence",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sorted" => Ok(Mode::Sorted),
            "sequence" => Ok(Mode::Sequence),
            other => Err(format!(
                "unknown mode '{other}' (expected sorted or sequence)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitConfig {
    mode: Mode,
    params: WeberParams,
    recursive: bool,
    unit: Option<f64>,
    min_segment: usize,
}

impl SplitConfig {
    /// Single-pass configuration with no quantization and no merging.
    pub fn new(mode: Mode, k: f64) -> Result<Self, SplitError> {
        Ok(Self {
            mode,
            params: WeberParams::new(k)?,
            recursive: false,
            unit: None,
            min_segment: 1,
        })
    }

    pub fn recursive(mut self, recursive: bool) -> Self {
        self.recursive = recursive;
        self
    }

    /// Quantize every input value to a multiple of `unit` before splitting.
    pub fn with_unit(mut self, unit: f64) -> Result<Self, SplitError> {
        if !unit.is_finite() || unit <= 0.0 {
            return Err(WeberError::InvalidUnit(unit).into());
        }
        self.unit = Some(unit);
        Ok(self)
    }

    /// Segments shorter than `min_segment` get merged into a neighbour.
    pub fn with_min_segment(mut self, min_segment: usize) -> Result<Self, SplitError> {
        if min_segment == 0 {
            return Err(SplitError::ZeroMinSegment);
        }
        self.min_segment = min_segment;
        Ok(self)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn params(&self) -> WeberParams {
        self.params
    }

    pub fn k(&self) -> f64 {
        self.params.k()
    }

    pub fn iir(&self) -> f64 {
        self.params.iir()
    }

    pub fn is_recursive(&self) -> bool {
        self.recursive
    }

    pub fn unit(&self) -> Option<f64> {
        self.unit
    }

    pub fn min_segment(&self) -> usize {
        self.min_segment
    }
}

/// Per-gap record produced by [`diagnostics`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapDiagnostic {
    /// 1-based gap position; gap `i` sits between elements `i - 1` and `i`
    /// (0-based) of the working series.
    pub index: usize,
    pub gap: f64,
    /// Gap at `index - 1`. The first gap borrows the second gap instead
    /// (0 when it is the only gap).
    pub former_gap: f64,
    pub mean_gap: f64,
    /// Expansion ratio `gap / mean_gap` (0 when `mean_gap` is 0).
    pub er: f64,
    /// Inhibitory rate `gap / (gap - former_gap)`; infinite when the gap
    /// does not grow.
    pub ihr: f64,
    /// `(gap - former_gap) / mean_gap` (0 when `mean_gap` is 0).
    pub score: f64,
    pub split: bool,
}

impl GapDiagnostic {
    pub fn ihr_is_defined(&self) -> bool {
        self.ihr.is_finite()
    }
}

/// Result of [`split`].
#[derive(Debug, Clone, PartialEq)]
pub struct Segmentation {
    values: Vec<f64>,
    order: Vec<usize>,
    segments: Vec<Range<usize>>,
    boundaries: Vec<usize>,
    diagnostics: Vec<GapDiagnostic>,
}

impl Segmentation {
    /// The working series (quantized, and sorted in sorted mode).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `order()[j]` is the input index of working element `j`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// 0-based half-open ranges over [`values`](Self::values).
    pub fn segments(&self) -> &[Range<usize>] {
        &self.segments
    }

    /// 1-based gap indices where the series was cut, ascending.
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Diagnostics of the top-level pass over the whole working series.
    pub fn diagnostics(&self) -> &[GapDiagnostic] {
        &self.diagnostics
    }

    pub fn segment_values(&self) -> Vec<&[f64]> {
        self.segments
            .iter()
            .map(|r| &self.values[r.clone()])
            .collect()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

#[inline]
fn reaches_threshold(score: f64, iir: f64) -> bool {
    score >= iir - THRESHOLD_RTOL * iir
}

/// Computes gap diagnostics over an already prepared series.
///
/// Series shorter than two elements have no gaps.
pub fn gap_diagnostics(values: &[f64], iir: f64) -> Vec<GapDiagnostic> {
    if values.len() < 2 {
        return Vec::new();
    }
    let gaps: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;

    // the first gap has no predecessor and is held against its successor
    let mut former_gap = gaps.get(1).copied().unwrap_or(0.0);
    gaps.iter()
        .enumerate()
        .map(|(i, &gap)| {
            let growth = gap - former_gap;
            let ihr = if growth > 0.0 {
                gap / growth
            } else {
                f64::INFINITY
            };
            let (er, score) = if mean_gap > 0.0 {
                (gap / mean_gap, growth / mean_gap)
            } else {
                (0.0, 0.0)
            };
            let diag = GapDiagnostic {
                index: i + 1,
                gap,
                former_gap,
                mean_gap,
                er,
                ihr,
                score,
                split: mean_gap > 0.0 && reaches_threshold(score, iir),
            };
            former_gap = gap;
            diag
        })
        .collect()
}

/// Quantizes, validates, and (in sorted mode) sorts the input.
fn prepare(series: &[f64], config: &SplitConfig) -> Result<(Vec<f64>, Vec<usize>), SplitError> {
    let mut values = Vec::with_capacity(series.len());
    for (index, &x) in series.iter().enumerate() {
        if !x.is_finite() {
            return Err(SplitError::NonFinite { index });
        }
        let x = match config.unit {
            Some(unit) => quantize(x, unit)?,
            None => x,
        };
        if !x.is_finite() {
            return Err(SplitError::NonFinite { index });
        }
        values.push(x);
    }

    let mut order: Vec<usize> = (0..values.len()).collect();
    if config.mode == Mode::Sorted {
        // stable, so ties keep input order
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        values = order.iter().map(|&i| values[i]).collect();
    }
    Ok((values, order))
}

/// Per-gap diagnostics of `series` under `config`.
pub fn diagnostics(series: &[f64], config: &SplitConfig) -> Result<Vec<GapDiagnostic>, SplitError> {
    let (values, _) = prepare(series, config)?;
    Ok(gap_diagnostics(&values, config.iir()))
}

fn ranges_from_boundaries(range: Range<usize>, cuts: &[usize]) -> Vec<Range<usize>> {
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut start = range.start;
    for &cut in cuts {
        out.push(start..cut);
        start = cut;
    }
    out.push(start..range.end);
    out
}

fn refine(values: &[f64], range: Range<usize>, iir: f64, boundaries: &mut Vec<usize>) {
    if range.len() < 3 {
        return;
    }
    let cuts: Vec<usize> = gap_diagnostics(&values[range.clone()], iir)
        .iter()
        .filter(|d| d.split)
        .map(|d| range.start + d.index)
        .collect();
    if cuts.is_empty() {
        return;
    }
    boundaries.extend_from_slice(&cuts);
    for sub in ranges_from_boundaries(range, &cuts) {
        refine(values, sub, iir, boundaries);
    }
}

/// Folds segments shorter than `min_segment` into the neighbour across the
/// smaller adjoining gap (ties go left) until none remain or one segment is
/// left.
fn merge_short(values: &[f64], boundaries: &mut Vec<usize>, min_segment: usize) {
    let gap_at = |b: usize| (values[b] - values[b - 1]).abs();
    loop {
        let segments = ranges_from_boundaries(0..values.len(), boundaries);
        if segments.len() < 2 {
            return;
        }
        let Some(short) = segments.iter().position(|s| s.len() < min_segment) else {
            return;
        };
        let left = (short > 0).then(|| short - 1);
        let right = (short + 1 < segments.len()).then_some(short);
        let remove = match (left, right) {
            (Some(l), Some(r)) => {
                if gap_at(boundaries[l]) <= gap_at(boundaries[r]) {
                    l
                } else {
                    r
                }
            }
            (Some(l), None) => l,
            (None, Some(r)) => r,
            (None, None) => return,
        };
        boundaries.remove(remove);
    }
}

/// Splits `series` into internally consistent segments.
pub fn split(series: &[f64], config: &SplitConfig) -> Result<Segmentation, SplitError> {
    if series.is_empty() {
        return Err(SplitError::Empty);
    }
    let (values, order) = prepare(series, config)?;
    let iir = config.iir();
    let diagnostics = gap_diagnostics(&values, iir);

    let mut boundaries: Vec<usize> = diagnostics
        .iter()
        .filter(|d| d.split)
        .map(|d| d.index)
        .collect();
    if config.recursive {
        let top = boundaries.clone();
        for sub in ranges_from_boundaries(0..values.len(), &top) {
            refine(&values, sub, iir, &mut boundaries);
        }
        boundaries.sort_unstable();
    }
    if config.min_segment > 1 {
        merge_short(&values, &mut boundaries, config.min_segment);
    }

    let segments = ranges_from_boundaries(0..values.len(), &boundaries);
    Ok(Segmentation {
        values,
        order,
        segments,
        boundaries,
        diagnostics,
    })
}

/// Splits the triple `(0, k·I, I + k·I)` in sorted mode at threshold `k`.
///
/// The second gap scores exactly `IIR(k)`, so this always yields
/// `{0, ΔI} | {I + ΔI}`.
pub fn three_value_case(background: f64, k: f64) -> Result<Segmentation, SplitError> {
    let params = WeberParams::new(k)?;
    let triple = params.triple(background)?;
    split(&triple.values(), &SplitConfig::new(Mode::Sorted, k)?)
}
