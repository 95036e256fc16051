//! Parameter algebra of the Prishchepov groups `P(r,n,k,s,q)`.
//!
//! `P(r,n,k,s,q)` is the cyclically presented group on `n` generators whose
//! defining word is `(x_0 x_q ... x_{(r-1)q}) (x_{k-1} x_{k-1+q} ... x_{k-1+(s-1)q})^{-1}`,
//! indices mod `n`. Parameters are stored as given; every congruence and every
//! index is reduced mod `n` at the point of use.

use std::fmt;

use thiserror::Error;

use crate::arith::{gcd, mod_inverse, modn};
use crate::cyclic_words::{CyclicWord, Letter};
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("n must be at least 2, got {0}")]
    SmallN(u64),
    #[error("parameter {0} must be at least 1")]
    NonPositive(&'static str),
    #[error("{name} = {value} must be at least {min}")]
    TooSmall { name: &'static str, value: u64, min: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reduction needs s = r - 1 (got r = {r}, s = {s})")]
    Shape { r: u64, s: u64 },
    #[error("reduction needs k = 1 (mod gcd(n,q) = {d}), got k = {k}")]
    Inapplicable { k: u64, d: u64 },
    #[error("reduced presentation would have a single generator (q = {q} is a multiple of n = {n})")]
    Degenerate { n: u64, q: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrishParams {
    pub r: u64,
    pub n: u64,
    pub k: u64,
    pub s: u64,
    pub q: u64,
}

impl PrishParams {
    pub fn new(r: u64, n: u64, k: u64, s: u64, q: u64) -> Result<Self, ParamError> {
        if n < 2 {
            return Err(ParamError::SmallN(n));
        }
        for (name, v) in [("r", r), ("k", k), ("s", s), ("q", q)] {
            if v == 0 {
                return Err(ParamError::NonPositive(name));
            }
        }
        Ok(Self { r, n, k, s, q })
    }

    /// Canonical key `"r,n,k,s,q"`.
    pub fn key(&self) -> String {
        format!("{},{},{},{},{}", self.r, self.n, self.k, self.s, self.q)
    }

    /// Exponent-sum vector `c` of the defining word, length `n`.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let n = self.n;
        let mut c = vec![0i64; n as usize];
        for i in 0..self.r {
            c[modn(i as i128 * self.q as i128, n) as usize] += 1;
        }
        for i in 0..self.s {
            c[modn(self.k as i128 - 1 + i as i128 * self.q as i128, n) as usize] -= 1;
        }
        c
    }

    /// Associated polynomial already reduced mod `t^n - 1`.
    pub fn cyclic_poly(&self) -> IntPoly {
        IntPoly::from_i64(&self.exponent_sums())
    }
}

impl fmt::Display for PrishParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{},{},{},{})", self.r, self.n, self.k, self.s, self.q)
    }
}

pub fn word_of(p: &PrishParams) -> CyclicWord {
    let n = p.n;
    let idx = |x: i128| modn(x, n) as usize;
    let mut letters = Vec::with_capacity((p.r + p.s) as usize);
    for i in 0..p.r {
        letters.push(Letter { index: idx(i as i128 * p.q as i128), exponent: 1 });
    }
    for i in (0..p.s).rev() {
        letters.push(Letter { index: idx(p.k as i128 - 1 + i as i128 * p.q as i128), exponent: -1 });
    }
    CyclicWord::new(n as usize, letters).expect("indices reduced mod n")
}

/// `f(t) = sum_{i<r} t^{qi} - t^{k-1} sum_{i<s} t^{qi}`, exponents not reduced.
pub fn poly_general(p: &PrishParams) -> IntPoly {
    let q = p.q as usize;
    let pos = (0..p.r as usize).map(|i| (q * i, 1));
    let neg = (0..p.s as usize).map(|i| (p.k as usize - 1 + q * i, -1));
    IntPoly::from_terms(pos.chain(neg))
}

/// `F(t) = sum_{i<r} t^i - t^{k-1} sum_{i<r-1} t^i`.
pub fn poly_f(r: u64, k: u64) -> Result<IntPoly, ParamError> {
    if r < 2 {
        return Err(ParamError::TooSmall { name: "r", value: r, min: 2 });
    }
    if k < 1 {
        return Err(ParamError::TooSmall { name: "k", value: k, min: 1 });
    }
    let pos = (0..r as usize).map(|i| (i, 1));
    let neg = (0..r as usize - 1).map(|i| (k as usize - 1 + i, -1));
    Ok(IntPoly::from_terms(pos.chain(neg)))
}

/// `G(t) = sum_{i<k-1} t^i - t^r sum_{i<k-2} t^i`.
pub fn poly_g(r: u64, k: u64) -> Result<IntPoly, ParamError> {
    if k < 2 {
        return Err(ParamError::TooSmall { name: "k", value: k, min: 2 });
    }
    let pos = (0..k as usize - 1).map(|i| (i, 1));
    let neg = (0..(k as usize).saturating_sub(2)).map(|i| (r as usize + i, -1));
    Ok(IntPoly::from_terms(pos.chain(neg)))
}

/// `(k, r) -> (r + 1, k - 1)`.
pub fn involution(k: i64, r: i64) -> (i64, i64) {
    (r + 1, k - 1)
}

/// `P(r,n,k,s,q) -> P(s,n,n-k+2,r,q)` with the `k` slot taken in `[1, n]`.
pub fn flip(p: &PrishParams) -> PrishParams {
    let k = modn(p.n as i128 - p.k as i128 + 1, p.n) + 1;
    PrishParams { r: p.s, n: p.n, k, s: p.r, q: p.q }
}

/// Normalization data for `P(r,n,k,r-1,q) = *^d P(r,N,K,r-1,1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// `gcd(n, q)`
    pub d: u64,
    /// `N = n / d`
    pub n_red: u64,
    /// `Q = q / d`
    pub q_red: u64,
    /// inverse of `Q` mod `N`, in `[1, N)`
    pub q_hat: u64,
    /// `k - 1 = d (K' - 1)`
    pub k_prime: u64,
    /// `K = Q̂ (K' - 1) + 1`, represented in `[1, N]`
    pub k_red: u64,
    pub copies: u64,
    pub reduced: PrishParams,
}

pub fn reduce(p: &PrishParams) -> Result<Reduction, ReductionError> {
    if p.s + 1 != p.r {
        return Err(ReductionError::Shape { r: p.r, s: p.s });
    }
    let d = gcd(p.n as i128, p.q as i128);
    if !(p.k - 1).is_multiple_of(d) {
        return Err(ReductionError::Inapplicable { k: p.k, d });
    }
    let n_red = p.n / d;
    if n_red == 1 {
        return Err(ReductionError::Degenerate { n: p.n, q: p.q });
    }
    let q_red = p.q / d;
    let q_hat = mod_inverse(q_red % n_red, n_red).expect("gcd(N, Q) = 1");
    let k_prime = (p.k - 1) / d + 1;
    let k_red = modn(q_hat as i128 * (k_prime as i128 - 1), n_red) + 1;
    let reduced = PrishParams { r: p.r, n: n_red, k: k_red, s: p.r - 1, q: 1 };
    Ok(Reduction { d, n_red, q_red, q_hat, k_prime, k_red, copies: d, reduced })
}
