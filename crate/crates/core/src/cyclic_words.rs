//! Words in the free group `F_n` together with the shift automorphism
//! `x_i -> x_{i+1 mod n}` that generates a cyclic presentation.
//!
//! Text grammar: whitespace-separated tokens `x<i>` or `X<i>` (inverse),
//! optionally followed by `^<e>` with `e` a nonzero integer. `X3^2` is
//! `x_3^{-2}`. Words are kept literally; no free reduction is applied.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact_linear::IntMatrix;
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("token {token} (byte {offset}) `{text}`: {reason}")]
    Parse { token: usize, offset: usize, text: String, reason: String },
    #[error("word rank must be at least 1")]
    ZeroRank,
    #[error("letter index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("letter exponent must be nonzero")]
    ZeroExponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub exponent: i64,
}

/// A word `x_{i_1}^{e_1} ... x_{i_m}^{e_m}` in `F_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    n: usize,
    letters: Vec<Letter>,
}

impl CyclicWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self, WordError> {
        if n == 0 {
            return Err(WordError::ZeroRank);
        }
        for l in &letters {
            if l.index >= n {
                return Err(WordError::IndexOutOfRange { index: l.index, n });
            }
            if l.exponent == 0 {
                return Err(WordError::ZeroExponent);
            }
        }
        Ok(Self { n, letters })
    }

    /// Builds a word from `(index, exponent)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, i64)]) -> Result<Self, WordError> {
        Self::new(n, pairs.iter().map(|&(index, exponent)| Letter { index, exponent }).collect())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Image under `x_i -> x_{i+1 mod n}`.
    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    pub fn shift_by(&self, m: usize) -> Self {
        let letters = self
            .letters
            .iter()
            .map(|l| Letter { index: (l.index + m) % self.n, exponent: l.exponent })
            .collect();
        Self { n: self.n, letters }
    }

    /// `c_i`: total exponent of `x_i` in the word.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut c = vec![0i64; self.n];
        for l in &self.letters {
            c[l.index] += l.exponent;
        }
        c
    }

    /// Relation matrix of the abelianized cyclic presentation: row `i` is the
    /// exponent-sum vector of the `i`-th shift of the word.
    pub fn relation_matrix(&self) -> IntMatrix {
        circulant_of(&self.exponent_sums())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, l) in self.letters.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            let head = if l.exponent > 0 { 'x' } else { 'X' };
            write!(f, "{head}{}", l.index)?;
            if l.exponent.abs() != 1 {
                write!(f, "^{}", l.exponent.unsigned_abs())?;
            }
        }
        Ok(())
    }
}

pub fn parse_word(text: &str, n: usize) -> Result<CyclicWord, WordError> {
    if n == 0 {
        return Err(WordError::ZeroRank);
    }
    let mut letters = Vec::new();
    for (token, (offset, raw)) in split_tokens(text).enumerate() {
        let fail = |reason: String| WordError::Parse { token, offset, text: raw.to_string(), reason };
        let mut chars = raw.chars();
        let sign = match chars.next() {
            Some('x') => 1,
            Some('X') => -1,
            _ => return Err(fail("expected `x` or `X`".into())),
        };
        let rest = chars.as_str();
        let (index_text, exp_text) = match rest.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (rest, None),
        };
        if index_text.is_empty() || !index_text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(fail("expected a generator index".into()));
        }
        let index: usize = index_text.parse().map_err(|_| fail("index too large".into()))?;
        if index >= n {
            return Err(fail(format!("index {index} out of range for n = {n}")));
        }
        let exponent: i64 = match exp_text {
            None => 1,
            Some(e) => e.parse().map_err(|_| fail(format!("bad exponent `{e}`")))?,
        };
        if exponent == 0 {
            return Err(fail("exponent must be nonzero".into()));
        }
        let exponent = exponent.checked_mul(sign).ok_or_else(|| fail("exponent out of range".into()))?;
        letters.push(Letter { index, exponent });
    }
    Ok(CyclicWord { n, letters })
}

/// Yields `(byte offset, token)` pairs.
fn split_tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace().map(move |tok| (tok.as_ptr() as usize - text.as_ptr() as usize, tok))
}

pub fn shift(w: &CyclicWord) -> CyclicWord {
    w.shift()
}

pub fn exponent_sums(w: &CyclicWord) -> Vec<i64> {
    w.exponent_sums()
}

pub fn circulant_of(c: &[i64]) -> IntMatrix {
    let row: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
    IntMatrix::circulant(&row)
}

/// Representer polynomial `sum c_i t^i`.
pub fn rep_poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}
