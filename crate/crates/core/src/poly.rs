//! Dense integer polynomials, cyclotomic polynomials and resultants.
//!
//! Resultant sign convention: `Res(f, g) = lc(f)^{deg g} * prod_{f(a)=0} g(a)`,
//! which is the determinant of [`crate::exact_linear::sylvester`]. Only the
//! magnitude matters for perfectness questions; the sign is fixed so that
//! tests are deterministic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::arith::{divisors, mobius};
use crate::exact_linear::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division leaves a nonzero remainder")]
    Divisibility,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("resultant is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("modulus must be monic")]
    NonMonic,
    #[error("{0}")]
    Domain(String),
    #[error("circulant determinant {det} disagrees with cyclotomic resultant product {product}")]
    Inconsistent { det: BigInt, product: BigInt },
}

/// Integer polynomial; `coeffs[i]` is the coefficient of `t^i`.
/// The zero polynomial has no coefficients and no trailing zeros are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^e`
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    /// `t^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    /// Builds `sum c * t^e` from possibly repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (usize, i64)>>(terms: I) -> Self {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Coefficient-wise exact division by an integer. Panics if inexact.
    fn div_scalar(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    /// Multiplication by `t^e`.
    pub fn shift_up(&self, e: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Reduction modulo `t^n - 1`: exponents folded mod `n`.
    pub fn fold_cyclic(&self, n: usize) -> Self {
        assert!(n > 0, "fold_cyclic requires n >= 1");
        let mut coeffs = vec![BigInt::zero(); n.min(self.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i % n] += c;
        }
        Self::new(coeffs)
    }

    /// Quotient and remainder with integer coefficients. Fails with
    /// [`PolyError::Divisibility`] when some step needs a non-integral quotient.
    fn div_rem_integral(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let lc = g.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(df) = self.degree().filter(|&d| d >= dg) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![BigInt::zero(); df - dg + 1];
        for i in (0..=df - dg).rev() {
            let top = &rem[i + dg];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(PolyError::Divisibility);
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[i + j] -= &q * gc;
            }
            quot[i] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient `self / g`.
    pub fn exact_div(&self, g: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem_integral(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::Divisibility)
        }
    }

    /// Remainder on division by a monic `m`.
    pub fn reduce_mod(&self, m: &Self) -> Result<Self, PolyError> {
        if m.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if !m.is_monic() {
            return Err(PolyError::NonMonic);
        }
        Ok(self.div_rem_integral(m)?.1)
    }

    /// `t^D * f(1/t)`, requires `D >= deg f`.
    pub fn reversal(&self, window: usize) -> Result<Self, PolyError> {
        if let Some(d) = self.degree() {
            if d > window {
                return Err(PolyError::Domain(format!("reversal window {window} is below degree {d}")));
            }
        }
        let mut coeffs = vec![BigInt::zero(); window + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[window - i] = c.clone();
        }
        Ok(Self::new(coeffs))
    }

    /// Pseudo-remainder `lc(g)^{deg f - deg g + 1} f mod g`.
    fn pseudo_rem(&self, g: &Self) -> Self {
        let dg = g.degree().expect("pseudo_rem by zero");
        let lc = g.leading().unwrap();
        let Some(df) = self.degree().filter(|&d| d >= dg) else {
            return self.clone();
        };
        let mut rem = self.coeffs.clone();
        for i in (0..=df - dg).rev() {
            let top = rem[i + dg].clone();
            for c in rem.iter_mut().take(i + dg + 1) {
                *c *= lc;
            }
            for (j, gc) in g.coeffs.iter().enumerate() {
                rem[i + j] -= &top * gc;
            }
        }
        Self::new(rem)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{mag}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `d`-th cyclotomic polynomial as the Möbius product
/// `prod_{e | d} (t^e - 1)^{mu(d/e)}`.
pub fn cyclotomic(d: u64) -> Result<IntPoly, PolyError> {
    if d == 0 {
        return Err(PolyError::Domain("cyclotomic index must be positive".into()));
    }
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for e in divisors(d) {
        match mobius(d / e) {
            1 => num = &num * &IntPoly::x_pow_minus_one(e as usize),
            -1 => den = &den * &IntPoly::x_pow_minus_one(e as usize),
            _ => {}
        }
    }
    num.exact_div(&den)
}

/// Resultant by the subresultant polynomial remainder sequence.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let deg = |p: &IntPoly| p.degree().unwrap();
    let (cf, cg) = (f.content(), g.content());
    let scale: BigInt = Pow::pow(&cf, deg(g) as u32) * Pow::pow(&cg, deg(f) as u32);
    let mut a = f.div_scalar(&cf);
    let mut b = g.div_scalar(&cg);
    let mut sign = 1i32;
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -1;
        }
    }

    let mut lead = BigInt::one();
    let mut h = BigInt::one();
    while deg(&b) > 0 {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor: BigInt = &lead * Pow::pow(&h, delta as u32);
        b = r.div_scalar(&divisor);
        lead = a.leading().unwrap().clone();
        if delta > 0 {
            h = Pow::pow(&lead, delta as u32) / Pow::pow(&h, (delta - 1) as u32);
        }
        if b.is_zero() {
            return Ok(BigInt::zero());
        }
    }
    let da = deg(&a) as u32;
    let tail = if da == 0 {
        BigInt::one()
    } else {
        Pow::pow(b.leading().unwrap(), da) / Pow::pow(&h, da - 1)
    };
    let res = scale * tail;
    Ok(if sign < 0 { -res } else { res })
}

/// Determinant of `circ_n(f)`, the product of `f` over all `n`-th roots of unity.
///
/// Computed from the circulant matrix, then checked against
/// `prod_{d | n} |Res(f, Phi_d)|`; a mismatch is reported as
/// [`PolyError::Inconsistent`].
pub fn circulant_resultant(f: &IntPoly, n: usize) -> Result<BigInt, PolyError> {
    if n == 0 {
        return Err(PolyError::Domain("circulant size must be positive".into()));
    }
    if f.is_zero() {
        return Ok(BigInt::zero());
    }
    let d = f.degree().unwrap();
    if d >= n {
        return Err(PolyError::Domain(format!("degree {d} must be below circulant size {n}")));
    }
    let mut row = f.coeffs().to_vec();
    row.resize(n, BigInt::zero());
    let det = IntMatrix::circulant(&row).det().expect("circulant is square");

    let product = cyclotomic_resultant_product(f, n as u64)?;
    if det.magnitude() != product.magnitude() {
        return Err(PolyError::Inconsistent { det, product });
    }
    Ok(det)
}

/// `prod_{d | n} |Res(f, Phi_d)|` for nonzero `f`.
pub fn cyclotomic_resultant_product(f: &IntPoly, n: u64) -> Result<BigInt, PolyError> {
    let mut product = BigInt::one();
    for d in divisors(n) {
        let r = resultant(f, &cyclotomic(d)?)?;
        product *= r.abs();
        if product.is_zero() {
            break;
        }
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::sylvester;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn ring_ops() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-2, 1])), Err(PolyError::Divisibility));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPoly::zero());
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[-1, 1]));
        assert_eq!(cyclotomic(5).unwrap(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), p(&[1, 0, -1, 0, 1]));
        assert!(cyclotomic(0).is_err());
    }

    /// Independent oracle: Phi_d by repeated division of t^d - 1 by Phi_e, e | d, e < d.
    fn cyclotomic_by_division(d: u64) -> IntPoly {
        let mut acc = IntPoly::x_pow_minus_one(d as usize);
        for e in divisors(d) {
            if e < d {
                acc = acc.exact_div(&cyclotomic_by_division(e)).unwrap();
            }
        }
        acc
    }

    #[test]
    fn cyclotomic_matches_division_oracle() {
        for d in 1..=30 {
            assert_eq!(cyclotomic(d).unwrap(), cyclotomic_by_division(d), "Phi_{d}");
        }
    }

    #[test]
    fn cyclotomic_product_is_t_n_minus_one() {
        for n in 1..=64u64 {
            let prod = divisors(n).into_iter().fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
            assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize), "n = {n}");
        }
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-3, 1])).unwrap(), big(-1));
        let phi5 = cyclotomic(5).unwrap();
        assert_eq!(resultant(&p(&[1, 1, 0, -1]), &phi5).unwrap().abs(), big(1));
        assert_eq!(resultant(&p(&[1, 1, -1]), &phi5).unwrap().abs(), big(11));
        assert_eq!(resultant(&IntPoly::zero(), &phi5), Err(PolyError::ZeroPolynomial));
        // constants
        assert_eq!(resultant(&p(&[3]), &p(&[1, 0, 1])).unwrap(), big(9));
        assert_eq!(resultant(&p(&[3]), &p(&[5])).unwrap(), big(1));
    }

    #[test]
    fn resultant_with_linear_factor_is_value_at_one() {
        let t_minus_1 = p(&[-1, 1]);
        for f in [p(&[1, 1, -1]), p(&[2, 0, 3, -4]), p(&[5]), p(&[0, 0, 7, 1])] {
            let r = resultant(&f, &t_minus_1).unwrap();
            assert_eq!(r.abs(), f.eval(&big(1)).abs(), "{f}");
        }
    }

    #[test]
    fn resultant_common_root_is_zero() {
        let f = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let g = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), big(0));
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(p(&[1, 2]).reversal(1).unwrap(), p(&[2, 1]));
        assert_eq!(p(&[1, 1, 0, -1]).reversal(3).unwrap(), p(&[-1, 0, 1, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).reversal(3).unwrap(), p(&[1]));
        assert!(p(&[1, 1, 1]).reversal(1).is_err());
    }

    #[test]
    fn reduce_mod_examples() {
        let phi5 = cyclotomic(5).unwrap();
        let t5m1 = &phi5 * &p(&[-1, 1]);
        assert_eq!(IntPoly::monomial(big(1), 5).reduce_mod(&t5m1).unwrap(), p(&[1]));
        assert_eq!(phi5.reduce_mod(&phi5).unwrap(), IntPoly::zero());
        assert_eq!(IntPoly::monomial(big(1), 6).reduce_mod(&phi5).unwrap(), p(&[0, 1]));
        assert_eq!(p(&[1, 2]).reduce_mod(&p(&[1, 2])), Err(PolyError::NonMonic));
    }

    #[test]
    fn fold_cyclic_matches_reduce_mod() {
        let f = p(&[1, -2, 3, 0, 5, 7, -1, 2]);
        for n in 1..10 {
            assert_eq!(f.fold_cyclic(n), f.reduce_mod(&IntPoly::x_pow_minus_one(n)).unwrap());
        }
    }

    #[test]
    fn circulant_resultant_examples() {
        assert_eq!(circulant_resultant(&p(&[1, 1]), 3).unwrap().abs(), big(2));
        for n in 2..8 {
            assert_eq!(circulant_resultant(&p(&vec![1; n]), n).unwrap(), big(0));
        }
        assert_eq!(circulant_resultant(&p(&[1, 1, -1]), 5).unwrap().abs(), big(11));
        assert_eq!(circulant_resultant(&IntPoly::zero(), 4).unwrap(), big(0));
        assert!(circulant_resultant(&p(&[1, 1, 1]), 2).is_err());
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-5i64..=5, 1..=max_deg + 1)
            .prop_map(|c| IntPoly::from_i64(&c))
            .prop_filter("nonzero", |f| !f.is_zero())
    }

    proptest! {
        #[test]
        fn resultant_antisymmetry(f in small_poly(6), g in small_poly(6)) {
            let df = f.degree().unwrap();
            let dg = g.degree().unwrap();
            let a = resultant(&f, &g).unwrap();
            let b = resultant(&g, &f).unwrap();
            if (df * dg) % 2 == 1 {
                prop_assert_eq!(a, -b);
            } else {
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn resultant_equals_sylvester_det(f in small_poly(8), g in small_poly(8)) {
            let via_prs = resultant(&f, &g).unwrap();
            let via_det = sylvester(&f, &g).unwrap().det().unwrap();
            prop_assert_eq!(via_prs, via_det);
        }

        #[test]
        fn reversal_is_involutive(c in prop::collection::vec(-5i64..=5, 1..8), extra in 0usize..3) {
            prop_assume!(c[0] != 0);
            let f = IntPoly::from_i64(&c);
            let window = f.degree().unwrap() + extra;
            let twice = f.reversal(window).unwrap().reversal(window).unwrap();
            prop_assert_eq!(twice, f);
        }

        #[test]
        fn exact_div_inverts_mul(f in small_poly(5), g in small_poly(5)) {
            let prod = &f * &g;
            prop_assert_eq!(prod.exact_div(&g).unwrap(), f);
        }
    }
}
