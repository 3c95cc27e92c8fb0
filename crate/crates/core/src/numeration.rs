//! Base-`p` numeration and the affine word calculus.
//!
//! A digit word `w = w_0 w_1 … w_{i-1}` acts on affine polynomials by
//! `f ↦ f(pX + w_k)`, one letter at a time from the left. Starting from `X`
//! this produces `p^i X + j` with `j = Σ w_k p^k`, so the word is exactly
//! the base-`p` expansion of `j`, least significant digit first, padded with
//! zeros to length `i`. The *code* `[p^i X + j]` is the same digits written
//! most significant first.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Digit;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumerationError {
    /// Sequences start at 1.
    ZeroIndex,
    BaseTooSmall(u32),
    /// `j >= p^i`.
    OffsetOutOfRange {
        exponent: u32,
        offset: u64,
    },
    DigitOutOfRange {
        digit: Digit,
        base: u32,
    },
    /// `(0, 0)` is not a relation.
    NotARelation,
    Overflow,
}

impl fmt::Display for NumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumerationError::ZeroIndex => {
                write!(f, "index 0 is not allowed: sequences start at n = 1")
            }
            NumerationError::BaseTooSmall(p) => write!(f, "base must be at least 2, got {p}"),
            NumerationError::OffsetOutOfRange { exponent, offset } => {
                write!(f, "offset {offset} is not below p^{exponent}")
            }
            NumerationError::DigitOutOfRange { digit, base } => {
                write!(f, "digit {digit} out of range for base {base}")
            }
            NumerationError::NotARelation => write!(f, "(0, 0) is not a relation"),
            NumerationError::Overflow => write!(f, "arithmetic overflow"),
        }
    }
}

fn check_base(p: u32) -> Result<(), NumerationError> {
    if p < 2 {
        Err(NumerationError::BaseTooSmall(p))
    } else {
        Ok(())
    }
}

/// `p^i`, or an overflow error.
pub fn checked_pow(p: u32, i: u32) -> Result<u64, NumerationError> {
    u64::from(p).checked_pow(i).ok_or(NumerationError::Overflow)
}

/// Base-`p` digits of `n >= 1`, least significant first. The last digit is
/// never zero.
pub fn digits_lsb(n: u64, p: u32) -> Result<Vec<Digit>, NumerationError> {
    check_base(p)?;
    if n == 0 {
        return Err(NumerationError::ZeroIndex);
    }
    let mut digits = Vec::new();
    let mut rest = n;
    let base = u64::from(p);
    while rest > 0 {
        digits.push((rest % base) as Digit);
        rest /= base;
    }
    Ok(digits)
}

/// Inverse of [`digits_lsb`] (also accepts trailing zeros).
pub fn from_digits_lsb(digits: &[Digit], p: u32) -> Result<u64, NumerationError> {
    check_base(p)?;
    let base = u64::from(p);
    let mut n: u64 = 0;
    for &d in digits.iter().rev() {
        if d >= p {
            return Err(NumerationError::DigitOutOfRange { digit: d, base: p });
        }
        n = n
            .checked_mul(base)
            .and_then(|v| v.checked_add(u64::from(d)))
            .ok_or(NumerationError::Overflow)?;
    }
    Ok(n)
}

/// Length of `n` in base `p` together with the number of occurrences of
/// each digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumerationStats {
    pub length: u32,
    pub digit_counts: Vec<u32>,
}

pub fn numeration_stats(n: u64, p: u32) -> Result<NumerationStats, NumerationError> {
    let digits = digits_lsb(n, p)?;
    let mut digit_counts = vec![0u32; p as usize];
    for &d in &digits {
        digit_counts[d as usize] += 1;
    }
    Ok(NumerationStats {
        length: digits.len() as u32,
        digit_counts,
    })
}

/// The affine polynomial `p^i X + j` with `0 <= j < p^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineCode {
    base: u32,
    exponent: u32,
    offset: u64,
}

impl AffineCode {
    pub fn new(exponent: u32, offset: u64, p: u32) -> Result<Self, NumerationError> {
        check_base(p)?;
        let bound = checked_pow(p, exponent)?;
        if offset >= bound {
            return Err(NumerationError::OffsetOutOfRange { exponent, offset });
        }
        Ok(AffineCode {
            base: p,
            exponent,
            offset,
        })
    }

    /// The identity code `X`.
    pub fn identity(p: u32) -> Result<Self, NumerationError> {
        Self::new(0, 0, p)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// `(i, j)`.
    pub fn pair(&self) -> (u32, u64) {
        (self.exponent, self.offset)
    }

    /// The word acting on `X`, least significant digit first.
    pub fn word(&self) -> Vec<Digit> {
        let base = u64::from(self.base);
        let mut rest = self.offset;
        (0..self.exponent)
            .map(|_| {
                let d = (rest % base) as Digit;
                rest /= base;
                d
            })
            .collect()
    }

    /// The code `[p^i X + j]`: `j` in base `p`, left-padded to `i` digits.
    pub fn code(&self) -> Vec<Digit> {
        let mut w = self.word();
        w.reverse();
        w
    }

    /// Apply one more generator `t_s`: `f ↦ f(pX + s)`. The new digit
    /// becomes the leftmost digit of the code.
    pub fn then(&self, s: Digit) -> Result<Self, NumerationError> {
        if s >= self.base {
            return Err(NumerationError::DigitOutOfRange {
                digit: s,
                base: self.base,
            });
        }
        let shift = checked_pow(self.base, self.exponent)?;
        let offset = shift
            .checked_mul(u64::from(s))
            .and_then(|v| v.checked_add(self.offset))
            .ok_or(NumerationError::Overflow)?;
        Self::new(self.exponent + 1, offset, self.base)
    }

    /// Evaluate at `X = n`.
    pub fn eval(&self, n: u64) -> Result<u64, NumerationError> {
        checked_pow(self.base, self.exponent)?
            .checked_mul(n)
            .and_then(|v| v.checked_add(self.offset))
            .ok_or(NumerationError::Overflow)
    }
}

impl fmt::Display for AffineCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.exponent, self.offset)
    }
}

/// `X^w` for a digit word applied left to right.
pub fn word_to_affine(word: &[Digit], p: u32) -> Result<AffineCode, NumerationError> {
    word.iter()
        .try_fold(AffineCode::identity(p)?, |code, &s| code.then(s))
}

pub fn affine_to_word(exponent: u32, offset: u64, p: u32) -> Result<Vec<Digit>, NumerationError> {
    Ok(AffineCode::new(exponent, offset, p)?.word())
}

/// Type of the relation `(i, j)`: the leftmost digit of `[p^i X + j]`.
pub fn relation_type(exponent: u32, offset: u64, p: u32) -> Result<Digit, NumerationError> {
    let code = AffineCode::new(exponent, offset, p)?;
    if exponent == 0 {
        return Err(NumerationError::NotARelation);
    }
    let lower = checked_pow(p, exponent - 1)?;
    Ok((code.offset / lower) as Digit)
}
