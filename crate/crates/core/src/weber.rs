//! Weber's law and the closed-form threshold quantities derived from it.
//!
//! Weber's law says the just-noticeable increment `ΔI` over a background
//! intensity `I` is a constant fraction of it: `ΔI / I = K`. Taking the
//! triple `(0, ΔI, I + ΔI)` and asking when `I + ΔI` stands apart from the
//! other two gives three quantities:
//!
//! | quantity                          | closed form         |
//! |-----------------------------------|---------------------|
//! | expansion ratio `Er`              | `2 / (1 + K)`       |
//! | inhibitory rate `Ihr`             | `1 / (1 - K)`       |
//! | integrated inconsistent rate `IIR`| `2 (1 - K) / (1 + K)` |
//!
//! `IIR = Er / Ihr` is the threshold used by the splitter.

use thiserror::Error;

/// Errors raised when a Weber constant or quantization unit is out of range.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum WeberError {
    #[error("Weber constant k = {0} is negative (negative sense is not modelled)")]
    NegativeK(f64),
    #[error("Weber constant k = {0} is at or above 1 (no sense); splitting requires k < 1")]
    NoSense(f64),
    #[error("Weber constant k = {0} is above 1; table generation accepts k in [0, 1]")]
    AboveOne(f64),
    #[error("Weber constant is not a finite number")]
    NonFiniteK,
    #[error("background intensity {0} must be a finite positive number")]
    InvalidBackground(f64),
    #[error("quantization unit {0} must be a finite positive number")]
    InvalidUnit(f64),
}

/// The subjective Weber constant `K` together with its derived threshold.
///
/// Only `0 <= k < 1` is constructible, which keeps `Ihr` finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeberParams {
    k: f64,
    iir: f64,
}

impl WeberParams {
    pub fn new(k: f64) -> Result<Self, WeberError> {
        check_open_k(k)?;
        Ok(Self {
            k,
            iir: iir_formula(k),
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Integrated inconsistent rate, `2 (1 - k) / (1 + k)`.
    pub fn iir(&self) -> f64 {
        self.iir
    }

    /// Builds the triple `(0, ΔI, I + ΔI)` with `ΔI = k * background`.
    pub fn triple(&self, background: f64) -> Result<WeberTriple, WeberError> {
        WeberTriple::new(background, *self)
    }
}

/// The three-value system `(0, ΔI, I + ΔI)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeberTriple {
    background: f64,
    increment: f64,
    params: WeberParams,
}

impl WeberTriple {
    pub fn new(background: f64, params: WeberParams) -> Result<Self, WeberError> {
        if !background.is_finite() || background <= 0.0 {
            return Err(WeberError::InvalidBackground(background));
        }
        Ok(Self {
            background,
            increment: params.k() * background,
            params,
        })
    }

    pub fn background(&self) -> f64 {
        self.background
    }

    pub fn increment(&self) -> f64 {
        self.increment
    }

    pub fn params(&self) -> WeberParams {
        self.params
    }

    pub fn values(&self) -> [f64; 3] {
        [0.0, self.increment, self.background + self.increment]
    }
}

fn check_open_k(k: f64) -> Result<(), WeberError> {
    if k.is_nan() {
        Err(WeberError::NonFiniteK)
    } else if k < 0.0 {
        Err(WeberError::NegativeK(k))
    } else if k >= 1.0 {
        Err(WeberError::NoSense(k))
    } else {
        Ok(())
    }
}

fn check_closed_k(k: f64) -> Result<(), WeberError> {
    if k.is_nan() {
        Err(WeberError::NonFiniteK)
    } else if k < 0.0 {
        Err(WeberError::NegativeK(k))
    } else if k > 1.0 {
        Err(WeberError::AboveOne(k))
    } else {
        Ok(())
    }
}

#[inline]
fn iir_formula(k: f64) -> f64 {
    2.0 * (1.0 - k) / (1.0 + k)
}

/// `IIR = 2 (1 - k) / (1 + k)` for `k` in `[0, 1)`.
pub fn iir_from_k(k: f64) -> Result<f64, WeberError> {
    check_open_k(k)?;
    Ok(iir_formula(k))
}

/// Expansion ratio of the three-value system, `2 / (1 + k)`.
pub fn er_for_triple(params: &WeberParams) -> f64 {
    2.0 / (1.0 + params.k)
}

/// Inhibitory rate of the three-value system, `1 / (1 - k)`.
pub fn ihr_for_triple(params: &WeberParams) -> f64 {
    1.0 / (1.0 - params.k)
}

/// Raw expansion ratio over the closed interval `k ∈ [0, 1]`.
pub fn expansion_ratio(k: f64) -> Result<f64, WeberError> {
    check_closed_k(k)?;
    Ok(2.0 / (1.0 + k))
}

/// Raw inhibitory rate. `k = 1` divides by zero and is reported as
/// [`WeberError::NoSense`].
pub fn inhibitory_rate(k: f64) -> Result<f64, WeberError> {
    check_closed_k(k)?;
    if k == 1.0 {
        return Err(WeberError::NoSense(k));
    }
    Ok(1.0 / (1.0 - k))
}

/// Raw IIR over the closed interval `k ∈ [0, 1]`; `iir_raw(1) == 0`.
pub fn iir_raw(k: f64) -> Result<f64, WeberError> {
    check_closed_k(k)?;
    Ok(iir_formula(k))
}

/// Rounds half away from zero to `decimals` places.
pub fn round_half_away(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    // f64::round already breaks ties away from zero
    (x * scale).round() / scale
}

/// Tabulates `(k, IIR rounded to 2 decimals)` for each `k` in `[0, 1]`.
pub fn iir_table(ks: &[f64]) -> Result<Vec<(f64, f64)>, WeberError> {
    ks.iter()
        .map(|&k| iir_raw(k).map(|iir| (k, round_half_away(iir, 2))))
        .collect()
}

/// Snaps `x` to the nearest multiple of `unit`, ties away from zero.
///
/// This is the finite resolution of an observer: nothing finer than `unit`
/// is distinguishable.
pub fn quantize(x: f64, unit: f64) -> Result<f64, WeberError> {
    if !unit.is_finite() || unit <= 0.0 {
        return Err(WeberError::InvalidUnit(unit));
    }
    Ok((x / unit).round() * unit)
}
