//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Determinants use fraction-free (Bareiss) elimination, Smith normal form
//! uses smallest-pivot elimination, and [`sylvester`] builds the Sylvester
//! matrix whose determinant is the resultant of two polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("entry count {len} does not match {rows}x{cols}")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("resultant is undefined for the zero polynomial")]
    ZeroPolynomial,
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinearError> {
        if entries.len() != rows * cols {
            return Err(LinearError::Shape { rows, cols, len: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| x.into()));
        }
        Self { rows: r, cols: c, entries }
    }

    /// `circ_n(c)`: row `i` is `c` cyclically shifted right by `i`.
    pub fn circulant(c: &[BigInt]) -> Self {
        let n = c.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(c[(j + n - i) % n].clone());
            }
        }
        Self { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.cols.max(1)).map(<[BigInt]>::to_vec).take(self.rows).collect()
    }

    /// Exact determinant by Bareiss elimination.
    pub fn det(&self) -> Result<BigInt, LinearError> {
        if !self.is_square() {
            return Err(LinearError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pivot = &pivot_row[k];
            for row in tail.iter_mut() {
                let lead = std::mem::take(&mut row[k]);
                for j in k + 1..n {
                    let cell = &mut row[j];
                    *cell *= pivot;
                    *cell -= &lead * &pivot_row[j];
                    // Bareiss: this division is always exact.
                    if !prev.is_one() {
                        *cell /= &prev;
                    }
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    pub fn smith_normal_form(&self) -> SmithForm {
        smith_normal_form(self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn det(m: &IntMatrix) -> Result<BigInt, LinearError> {
    m.det()
}

/// Invariant factors `d_1 | d_2 | ... | d_m`, zeros trailing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Product of the nonzero invariant factors.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).product()
    }

    /// Number of zero invariant factors (free rank of the cokernel, for square input).
    pub fn zero_count(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.invariant_factors.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            }
        })
    }
}

/// Smith normal form via elimination on the smallest-magnitude nonzero pivot.
/// Only the invariant factors are returned.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows;
    let cols = m.cols;
    let size = rows.min(cols);
    let mut a = m.to_rows();
    let mut factors = Vec::with_capacity(size);

    for t in 0..size {
        let Some((pi, pj)) = smallest_entry(&a, t) else {
            factors.resize(size, BigInt::zero());
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                let pivot_row = &head[t];
                let row = &mut tail[0];
                for j in t..cols {
                    let v = &q * &pivot_row[j];
                    row[j] -= v;
                }
                if !row[t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder survived; move the new smallest entry of row/column t into the corner.
                move_smallest_to_corner(&mut a, t);
                continue;
            }
            // Pivot must divide the remaining block; otherwise fold the offending row in.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    let src = &tail[0];
                    for j in t..cols {
                        head[t][j] += &src[j];
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }
    SmithForm { invariant_factors: factors }
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.magnitude() < a[bi][bj].magnitude()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn move_smallest_to_corner(a: &mut [Vec<BigInt>], t: usize) {
    let mut best = (t, t);
    for i in t..a.len() {
        let v = &a[i][t];
        if !v.is_zero() && (a[best.0][best.1].is_zero() || v.magnitude() < a[best.0][best.1].magnitude()) {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        let v = &a[t][j];
        if !v.is_zero() && (a[best.0][best.1].is_zero() || v.magnitude() < a[best.0][best.1].magnitude()) {
            best = (t, j);
        }
    }
    let (i, j) = best;
    a.swap(t, i);
    for row in a.iter_mut() {
        row.swap(t, j);
    }
}

/// Sylvester matrix of `f` and `g`, of size `deg f + deg g`.
///
/// The first `deg g` rows hold shifted coefficients of `f` (leading first),
/// the remaining `deg f` rows those of `g`, so that
/// `det = lc(f)^{deg g} * prod_{f(a)=0} g(a)`.
pub fn sylvester(f: &IntPoly, g: &IntPoly) -> Result<IntMatrix, LinearError> {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(LinearError::ZeroPolynomial);
    };
    let size = df + dg;
    let mut m = IntMatrix::zeros(size, size);
    for i in 0..dg {
        for (c, coeff) in f.coeffs().iter().rev().enumerate() {
            m.set(i, i + c, coeff.clone());
        }
    }
    for i in 0..df {
        for (c, coeff) in g.coeffs().iter().rev().enumerate() {
            m.set(dg + i, i + c, coeff.clone());
        }
    }
    Ok(m)
}
