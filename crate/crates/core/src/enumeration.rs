//! Enumeration of terminating decimals in (0, 1).
//!
//! Decimals are listed by digit count first and numeric value second:
//!
//! ```text
//! 0.1, 0.2, ..., 0.9, 0.01, 0.02, ..., 0.09, 0.11, ..., 0.99, 0.001, ...
//! ```
//!
//! The length-`L` group holds `9 * 10^(L-1)` numbers. A decimal whose digits
//! read as the integer `m` (with `m % 10 != 0`) sits at rank `m - m / 10`
//! inside its group. Everything here is exact integer and digit arithmetic.

use std::fmt;

use thiserror::Error;

/// Longest digit string whose index still fits in a `u64`.
pub const MAX_DIGITS: usize = 19;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("enumeration positions start at 1")]
    ZeroIndex,
    #[error("digit string is empty")]
    Empty,
    #[error("'{0}' is not a decimal digit")]
    NotADigit(char),
    #[error(
        "digit string '{0}' ends in 0; terminating decimals are written without trailing zeros"
    )]
    TrailingZero(String),
    #[error("digit string of length {0} exceeds the supported {MAX_DIGITS} digits")]
    TooLong(usize),
}

/// A terminating decimal `0.d1 d2 ... dL` with `dL != 0`, and its position
/// in the enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnumeratedDecimal {
    digits: String,
    index: u64,
}

impl EnumeratedDecimal {
    pub fn digits(&self) -> &str {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// 1-based enumeration position.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// `i`-th decimal digit (1-based), zero beyond the last digit.
    pub fn digit(&self, position: usize) -> u8 {
        match position
            .checked_sub(1)
            .and_then(|i| self.digits.as_bytes().get(i))
        {
            Some(b) => b - b'0',
            None => 0,
        }
    }
}

impl fmt::Display for EnumeratedDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.{}", self.digits)
    }
}

/// A finite prefix of an infinite digit expansion `0.d1 d2 d3 ...`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DigitSequence {
    digits: Vec<u8>,
}

impl DigitSequence {
    /// Panics if any element is not in `0..=9`.
    pub fn new(digits: Vec<u8>) -> Self {
        assert!(digits.iter().all(|&d| d <= 9), "digits must be in 0..=9");
        Self { digits }
    }

    pub fn parse(s: &str) -> Result<Self, EnumerationError> {
        let digits = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or(EnumerationError::NotADigit(c))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

impl fmt::Display for DigitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Number of decimals with fewer than `len` digits, `10^(len-1) - 1`.
fn preceding(len: u32) -> u64 {
    10u64.pow(len - 1) - 1
}

/// The `n`-th decimal of the enumeration (1-based).
pub fn nth_decimal(n: u64) -> Result<EnumeratedDecimal, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroIndex);
    }
    // groups 1..=19 cover every u64 index: their total is 10^19 - 1
    let len = (1..=MAX_DIGITS as u32)
        .find(|&l| n <= preceding(l) + 9 * 10u64.pow(l - 1))
        .unwrap_or(MAX_DIGITS as u32 + 1);
    if len as usize > MAX_DIGITS {
        return Err(EnumerationError::TooLong(len as usize));
    }
    let rank = n - preceding(len);
    // invert rank = m - m / 10 over integers that do not end in 0
    let m = rank + (rank - 1) / 9;
    Ok(EnumeratedDecimal {
        digits: format!("{m:0width$}", width = len as usize),
        index: n,
    })
}

/// Position of the decimal `0.<digits>` in the enumeration.
pub fn index_of(digits: &str) -> Result<u64, EnumerationError> {
    if digits.is_empty() {
        return Err(EnumerationError::Empty);
    }
    if let Some(c) = digits.chars().find(|c| !c.is_ascii_digit()) {
        return Err(EnumerationError::NotADigit(c));
    }
    if digits.ends_with('0') {
        return Err(EnumerationError::TrailingZero(digits.to_owned()));
    }
    if digits.len() > MAX_DIGITS {
        return Err(EnumerationError::TooLong(digits.len()));
    }
    let m: u64 = digits.parse().expect("validated ASCII digits");
    Ok(preceding(digits.len() as u32) + m - m / 10)
}

/// Builds the [`EnumeratedDecimal`] for a canonical digit string.
pub fn decimal_from_digits(digits: &str) -> Result<EnumeratedDecimal, EnumerationError> {
    let index = index_of(digits)?;
    Ok(EnumeratedDecimal {
        digits: digits.to_owned(),
        index,
    })
}

/// Diagonal digits: position `i` holds the `i`-th digit of the `i`-th
/// enumerated decimal.
pub fn diagonal(prefix_len: usize) -> DigitSequence {
    let digits = (1..=prefix_len)
        .map(|i| match nth_decimal(i as u64) {
            Ok(d) => d.digit(i),
            // an index that needs more than MAX_DIGITS digits cannot reach position i
            Err(_) => 0,
        })
        .collect();
    DigitSequence { digits }
}

/// Flips a digit sequence: `1 -> 0`, anything else `-> 1`.
pub fn invert(seq: &DigitSequence) -> DigitSequence {
    DigitSequence {
        digits: seq.digits.iter().map(|&d| u8::from(d != 1)).collect(),
    }
}

/// First position `n <= limit` whose decimal, zero-extended, equals `seq` on
/// every listed position and is zero past them.
///
/// Such a decimal is unique: it is `seq` with trailing zeros removed.
pub fn find_in_enumeration(seq: &DigitSequence, limit: u64) -> Option<u64> {
    let end = seq.digits.iter().rposition(|&d| d != 0)? + 1;
    if end > MAX_DIGITS {
        return None;
    }
    let canonical: String = seq.digits[..end]
        .iter()
        .map(|d| char::from(b'0' + d))
        .collect();
    index_of(&canonical).ok().filter(|&n| n <= limit)
}
