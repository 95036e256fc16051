//! Perfectness and abelianization of Prishchepov groups, the type
//! congruences, the closed-form classifier, and the cyclotomic-unit machinery
//! behind it (unit tests at roots of unity, the `ε ζ^j F(ζ) = F(ζ^{-1})`
//! symmetry search, and power-sum multiset checks).
//!
//! Perfectness is always decided by the exact circulant determinant. The
//! congruence-based predicates are checked against it, never substituted for it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{congruent, divisors, gcd, modn};
use crate::cyclic_words::CyclicWord;
use crate::exact_linear::SmithForm;
use crate::poly::{cyclotomic, resultant, IntPoly, PolyError};
use crate::prishchepov::{poly_f, word_of, ParamError, PrishParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Abelianization of a cyclically presented group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianReport {
    /// Determinant of the circulant relation matrix.
    pub det: BigInt,
    pub invariant_factors: SmithForm,
    pub is_perfect: bool,
    pub is_finite_ab: bool,
}

pub fn abelianize_word(w: &CyclicWord) -> AbelianReport {
    let m = w.relation_matrix();
    let det = m.det().expect("circulant is square");
    let invariant_factors = m.smith_normal_form();
    AbelianReport {
        is_perfect: det.abs().is_one(),
        is_finite_ab: !det.is_zero(),
        det,
        invariant_factors,
    }
}

pub fn abelianization(p: &PrishParams) -> AbelianReport {
    abelianize_word(&word_of(p))
}

/// Circulant determinant `R_n` of the defining word (no Smith form).
pub fn determinant(p: &PrishParams) -> BigInt {
    crate::cyclic_words::circulant_of(&p.exponent_sums()).det().expect("circulant is square")
}

pub fn is_perfect(p: &PrishParams) -> bool {
    determinant(p).abs().is_one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TypeFlags {
    /// `q(r - s) ≡ 2(k - 1) (mod n)`
    pub type_z: bool,
    /// `q(r + s) ≡ 0 (mod n)`
    pub type_zprime: bool,
    /// `k ≡ 1`
    pub obvious_k1: bool,
    /// `k ≡ 1 + q`
    pub obvious_k1q: bool,
    /// `r ≡ 0`
    pub obvious_r0: bool,
    /// `s ≡ 0`
    pub obvious_s0: bool,
}

impl TypeFlags {
    pub fn type_ztilde(&self) -> bool {
        self.type_z || self.type_zprime
    }

    pub fn any_obvious(&self) -> bool {
        self.obvious_k1 || self.obvious_k1q || self.obvious_r0 || self.obvious_s0
    }

    /// Names of the obvious congruences that hold, in fixed order.
    pub fn obvious_names(&self) -> Vec<&'static str> {
        [
            (self.obvious_k1, "k1"),
            (self.obvious_k1q, "k1q"),
            (self.obvious_r0, "r0"),
            (self.obvious_s0, "s0"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect()
    }
}

pub fn type_flags(p: &PrishParams) -> TypeFlags {
    let (r, n, k, s, q) = (p.r as i128, p.n, p.k as i128, p.s as i128, p.q as i128);
    TypeFlags {
        type_z: congruent(q * (r - s), 2 * (k - 1), n),
        type_zprime: congruent(q * (r + s), 0, n),
        obvious_k1: congruent(k, 1, n),
        obvious_k1q: congruent(k, 1 + q, n),
        obvious_r0: congruent(r, 0, n),
        obvious_s0: congruent(s, 0, n),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Perfect,
    NotPerfect,
    Inapplicable(String),
}

impl Verdict {
    pub fn as_perfect(&self) -> Option<bool> {
        match self {
            Verdict::Perfect => Some(true),
            Verdict::NotPerfect => Some(false),
            Verdict::Inapplicable(_) => None,
        }
    }
}

/// Hypotheses of the closed-form classifier: `r >= s`, `gcd(n, k-1, q) = 1`
/// and `gcd(n, 6) = 1`. Returns the first failing one.
pub fn corollary_b_hypotheses(p: &PrishParams) -> Result<(), String> {
    let n = p.n as i128;
    if p.r < p.s {
        return Err(format!("needs r >= s (r = {}, s = {})", p.r, p.s));
    }
    if gcd(gcd(n, p.k as i128 - 1) as i128, p.q as i128) != 1 {
        return Err("needs gcd(n, k-1, q) = 1".into());
    }
    if gcd(n, 6) != 1 {
        return Err(format!("needs gcd(n, 6) = 1 (n = {})", p.n));
    }
    Ok(())
}

/// Closed-form perfectness: perfect iff `s = r - 1`, `gcd(n, q) = 1` and
/// `gcd(k - 1 - qr, n) = 1`, under [`corollary_b_hypotheses`].
pub fn corollary_b_classify(p: &PrishParams) -> Verdict {
    if let Err(reason) = corollary_b_hypotheses(p) {
        return Verdict::Inapplicable(reason);
    }
    let n = p.n as i128;
    let perfect = p.s + 1 == p.r
        && gcd(n, p.q as i128) == 1
        && gcd(p.k as i128 - 1 - p.q as i128 * p.r as i128, n) == 1;
    if perfect {
        Verdict::Perfect
    } else {
        Verdict::NotPerfect
    }
}

/// Truth of: perfect ⇒ type Z̃ or one of the four obvious congruences.
pub fn theorem_a_instance(p: &PrishParams) -> Result<bool, ClassifyError> {
    if gcd(p.n as i128, 6) != 1 {
        return Err(ClassifyError::Hypothesis(format!("gcd(n, 6) = 1 required, n = {}", p.n)));
    }
    if !is_perfect(p) {
        return Ok(true);
    }
    let flags = type_flags(p);
    Ok(flags.type_ztilde() || flags.any_obvious())
}

/// Whether `f(ζ_d)` is a unit of `Z[ζ_d]`, i.e. `|Res(f, Φ_d)| = 1`.
/// The zero polynomial is never a unit; `d = 0` is treated as not a unit.
pub fn is_unit_at(f: &IntPoly, d: u64) -> bool {
    if d == 0 || f.is_zero() {
        return false;
    }
    if d == 1 {
        return f.eval(&BigInt::one()).abs().is_one();
    }
    let phi = cyclotomic(d).expect("d >= 1");
    let rem = f.reduce_mod(&phi).expect("cyclotomic polynomials are monic");
    if rem.is_zero() {
        return false;
    }
    resultant(&rem, &phi).expect("nonzero inputs").abs().is_one()
}

/// Unit test at every divisor of `n`: the cyclotomic route to perfectness.
pub fn is_unit_at_all_divisors(f: &IntPoly, n: u64) -> bool {
    divisors(n).into_iter().all(|d| is_unit_at(f, d))
}

/// Witness of `ε ζ^j F(ζ) = F(ζ^{-1})` at a primitive `n`-th root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitSymmetry {
    pub j: u64,
    pub epsilon: i8,
}

/// Exhaustive search over `ε ∈ {+1, -1}` and `j ∈ [0, n)` (that order) for
/// `Φ_n | ε t^{j+D} F(t) - t^D F(1/t)`, `D = deg F`, `F = poly_f(r, k)`.
pub fn unit_symmetry_search(n: u64, r: u64, k: u64) -> Result<Option<UnitSymmetry>, ClassifyError> {
    if n < 2 {
        return Err(ClassifyError::Domain(format!("n must be at least 2, got {n}")));
    }
    let f = poly_f(r, k)?;
    unit_symmetry_of(&f, n)
}

/// [`unit_symmetry_search`] for an arbitrary polynomial.
pub fn unit_symmetry_of(f: &IntPoly, n: u64) -> Result<Option<UnitSymmetry>, ClassifyError> {
    let nu = n as usize;
    let phi = cyclotomic(n)?;
    let window = f.degree().unwrap_or(0);
    let target = f.reversal(window)?.reduce_mod(&phi)?;
    let folded = f.fold_cyclic(nu);
    let shifted: Vec<IntPoly> = (0..n)
        .map(|j| {
            let e = ((j as usize) + window) % nu;
            folded.shift_up(e).fold_cyclic(nu).reduce_mod(&phi)
        })
        .collect::<Result<_, _>>()?;
    for epsilon in [1i8, -1] {
        for (j, lhs) in shifted.iter().enumerate() {
            let hit = if epsilon > 0 { *lhs == target } else { -lhs == target };
            if hit {
                return Ok(Some(UnitSymmetry { j: j as u64, epsilon }));
            }
        }
    }
    Ok(None)
}

/// Truth of: a unit symmetry exists and `r ≢ 0,1`, `k ≢ 1,2 (mod n)`
/// ⇒ `2r ≡ 1` or `2k ≡ 3 (mod n)`.
pub fn main_lemma_instance(n: u64, r: u64, k: u64) -> Result<bool, ClassifyError> {
    if gcd(n as i128, 6) != 1 {
        return Err(ClassifyError::Hypothesis(format!("gcd(n, 6) = 1 required, n = {n}")));
    }
    let (ri, ki) = (r as i128, k as i128);
    let excluded = [0, 1].contains(&modn(ri, n)) || [1, 2].contains(&modn(ki, n));
    if excluded {
        return Ok(true);
    }
    if unit_symmetry_search(n, r, k)?.is_none() {
        return Ok(true);
    }
    Ok(congruent(2 * ri, 1, n) || congruent(2 * ki, 3, n))
}

/// Result of comparing two residue multisets through their first `ℓ` power sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerSumCheck {
    pub power_sums_equal: bool,
    pub multisets_equal: bool,
}

/// Compares `sum_z ζ^{jz}` with `sum_w ζ^{jw}` in `Z[t]/Φ_n` for `j = 1..ℓ`,
/// `ℓ = |Z| = |W|`, alongside plain multiset equality of the residues.
pub fn newton_girard_check(n: u64, z: &[u64], w: &[u64]) -> Result<PowerSumCheck, ClassifyError> {
    if n < 2 {
        return Err(ClassifyError::Domain(format!("n must be at least 2, got {n}")));
    }
    if z.len() != w.len() || z.is_empty() {
        return Err(ClassifyError::Domain(format!(
            "multisets must be nonempty and equal in size ({} vs {})",
            z.len(),
            w.len()
        )));
    }
    let phi = cyclotomic(n)?;
    PowerSums::new(n, phi).check(z, w)
}

/// Reusable power-sum evaluator for repeated checks at a fixed `n`.
pub struct PowerSums {
    n: u64,
    phi: IntPoly,
}

impl PowerSums {
    pub fn new(n: u64, phi: IntPoly) -> Self {
        Self { n, phi }
    }

    pub fn for_n(n: u64) -> Result<Self, ClassifyError> {
        Ok(Self::new(n, cyclotomic(n)?))
    }

    /// `sum_{x in xs} t^{jx mod n}` reduced mod `Φ_n`.
    pub fn power_sum(&self, xs: &[u64], j: u64) -> IntPoly {
        let n = self.n;
        let terms = xs.iter().map(|&x| (((j % n) * (x % n) % n) as usize, 1i64));
        IntPoly::from_terms(terms).reduce_mod(&self.phi).expect("monic")
    }

    pub fn check(&self, z: &[u64], w: &[u64]) -> Result<PowerSumCheck, ClassifyError> {
        if z.len() != w.len() || z.is_empty() {
            return Err(ClassifyError::Domain("multisets must be nonempty and equal in size".into()));
        }
        let ell = z.len() as u64;
        let power_sums_equal = (1..=ell).all(|j| self.power_sum(z, j) == self.power_sum(w, j));
        let sorted = |xs: &[u64]| {
            let mut v: Vec<u64> = xs.iter().map(|x| x % self.n).collect();
            v.sort_unstable();
            v
        };
        Ok(PowerSumCheck { power_sums_equal, multisets_equal: sorted(z) == sorted(w) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic_words::parse_word;

    fn pp(r: u64, n: u64, k: u64, s: u64, q: u64) -> PrishParams {
        PrishParams::new(r, n, k, s, q).unwrap()
    }

    fn factors(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn abelianization_examples() {
        let rep = abelianization(&pp(2, 5, 3, 1, 1));
        assert_eq!(rep.det.abs(), BigInt::from(11));
        assert_eq!(rep.invariant_factors.invariant_factors, factors(&[1, 1, 1, 1, 11]));
        assert!(!rep.is_perfect && rep.is_finite_ab);

        let rep = abelianization(&pp(3, 5, 3, 2, 1));
        assert_eq!(rep.det.abs(), BigInt::from(1));
        assert!(rep.is_perfect);

        // Sieradski S(2,3): f = 1 - t + t^2 over the cube roots of unity gives
        // 1 * (-2ω) * (-2ω²) = 4, abelianization Z/2 x Z/2.
        let rep = abelianization(&pp(2, 3, 2, 1, 2));
        assert_eq!(rep.det.abs(), BigInt::from(4));
        assert_eq!(rep.invariant_factors.invariant_factors, factors(&[1, 2, 2]));

        // S(2,4): values 1, 3, -i, i at the fourth roots of unity.
        let rep = abelianization(&pp(2, 4, 2, 1, 2));
        assert_eq!(rep.det.abs(), BigInt::from(3));
        assert_eq!(rep.invariant_factors.invariant_factors, factors(&[1, 1, 1, 3]));
    }

    #[test]
    fn word_abelianization() {
        let rep = abelianize_word(&parse_word("x0 X0", 3).unwrap());
        assert!(rep.det.is_zero() && !rep.is_finite_ab && !rep.is_perfect);
        assert_eq!(rep.invariant_factors.zero_count(), 3);
        let rep = abelianize_word(&parse_word("x0", 4).unwrap());
        assert!(rep.is_perfect);
    }

    #[test]
    fn perfect_examples() {
        assert!(is_perfect(&pp(2, 5, 2, 1, 2)));
        assert!(!is_perfect(&pp(2, 5, 3, 1, 1)));
        assert!(is_perfect(&pp(4, 3, 3, 3, 1)));
    }

    #[test]
    fn type_flag_examples() {
        let f = type_flags(&pp(4, 3, 3, 3, 1));
        assert!(f.type_z);
        let f = type_flags(&pp(2, 5, 2, 1, 2));
        assert!(f.type_z && !f.type_zprime);
        assert!(!type_flags(&pp(2, 6, 2, 1, 3)).type_zprime);
        let f = type_flags(&pp(5, 5, 6, 10, 4));
        assert_eq!(f.obvious_names(), vec!["k1", "r0", "s0"]);
    }

    #[test]
    fn corollary_b_examples() {
        assert_eq!(corollary_b_classify(&pp(2, 5, 2, 1, 2)), Verdict::Perfect);
        assert_eq!(corollary_b_classify(&pp(2, 5, 3, 1, 1)), Verdict::NotPerfect);
        assert!(matches!(corollary_b_classify(&pp(2, 6, 2, 1, 1)), Verdict::Inapplicable(_)));
        assert!(matches!(corollary_b_classify(&pp(1, 5, 2, 2, 1)), Verdict::Inapplicable(_)));
        assert!(matches!(corollary_b_classify(&pp(2, 25, 6, 1, 5)), Verdict::Inapplicable(_)));
    }

    #[test]
    fn corollary_b_misses_tuples_outside_type_ztilde() {
        // s = r-1, gcd(n,q) = 1 and gcd(k-1-qr, n) = 1 all hold, but the
        // group is not of type Z̃ and the determinant is not a unit.
        let p = pp(2, 5, 5, 1, 1);
        assert_eq!(corollary_b_classify(&p), Verdict::Perfect);
        assert!(!type_flags(&p).type_ztilde());
        assert!(!is_perfect(&p));
        // r ≡ 0 with k ≡ 1 is an obvious perfect group the closed form rejects.
        let p = pp(5, 5, 1, 4, 1);
        assert_eq!(corollary_b_classify(&p), Verdict::NotPerfect);
        assert!(is_perfect(&p));
    }

    #[test]
    fn theorem_a_examples() {
        assert!(theorem_a_instance(&pp(3, 5, 3, 2, 1)).unwrap());
        assert!(theorem_a_instance(&pp(2, 5, 3, 1, 1)).unwrap());
        assert!(theorem_a_instance(&pp(2, 5, 2, 1, 2)).unwrap());
        assert!(matches!(theorem_a_instance(&pp(2, 6, 2, 1, 1)), Err(ClassifyError::Hypothesis(_))));
    }

    #[test]
    fn theorem_a_fails_for_flipped_obvious_groups() {
        // r < s with k ≡ 1 - q: the word collapses to a single inverse letter,
        // yet none of the listed congruences holds.
        let p = pp(1, 5, 5, 2, 1);
        assert_eq!(crate::prishchepov::word_of(&p).to_string(), "x0 X0 X4");
        assert!(is_perfect(&p));
        assert!(!theorem_a_instance(&p).unwrap());
        // its flip is the obvious trivial group k ≡ 1 + q
        let f = crate::prishchepov::flip(&p);
        assert!(type_flags(&f).obvious_k1q);
    }

    #[test]
    fn unit_examples() {
        for d in 1..12 {
            assert!(is_unit_at(&IntPoly::from_i64(&[0, 0, 0, 1]), d));
        }
        assert!(is_unit_at(&IntPoly::from_i64(&[1, 1, 0, -1]), 5));
        assert!(!is_unit_at(&IntPoly::from_i64(&[1, 1, -1]), 5));
        assert!(!is_unit_at(&IntPoly::zero(), 5));
        assert!(is_unit_at(&IntPoly::from_i64(&[2, -1]), 1));
        assert!(!is_unit_at(&IntPoly::from_i64(&[1, 1, 1, 1, 1]), 5));
    }

    #[test]
    fn unit_criterion_matches_determinant() {
        for n in 2..=9u64 {
            for r in 1..=n {
                for k in 1..=n {
                    for s in 1..=n {
                        for q in 1..=3 {
                            let p = pp(r, n, k, s, q);
                            let f = p.cyclic_poly();
                            assert_eq!(is_perfect(&p), is_unit_at_all_divisors(&f, n), "{p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_search_examples() {
        assert!(unit_symmetry_search(5, 3, 3).unwrap().is_some());
        assert_eq!(unit_symmetry_search(5, 2, 3).unwrap(), None);
        assert_eq!(unit_symmetry_search(5, 2, 1).unwrap(), Some(UnitSymmetry { j: 3, epsilon: 1 }));
        assert!(unit_symmetry_search(5, 1, 3).is_err());
        assert!(unit_symmetry_search(1, 3, 3).is_err());
    }

    #[test]
    fn symmetry_witness_satisfies_relation() {
        // verify the witness independently: ε t^j F(t) t^{n-1}... evaluate both sides
        // as residues mod Φ_n using F(t^{n-1}) for F(ζ^{-1}).
        for n in [5u64, 7] {
            let phi = cyclotomic(n).unwrap();
            for r in 2..=n {
                for k in 1..=n {
                    let Some(w) = unit_symmetry_search(n, r, k).unwrap() else { continue };
                    let f = poly_f(r, k).unwrap();
                    let inv: IntPoly = IntPoly::from_terms(
                        f.coeffs().iter().enumerate().map(|(i, c)| {
                            (i * (n as usize - 1), i64::try_from(c.clone()).unwrap())
                        }),
                    );
                    let lhs = f.shift_up(w.j as usize).scale(&BigInt::from(w.epsilon));
                    let diff = &lhs - &inv;
                    assert!(diff.reduce_mod(&phi).unwrap().is_zero(), "n={n} r={r} k={k}");
                }
            }
        }
    }

    #[test]
    fn main_lemma_examples() {
        assert!(main_lemma_instance(5, 3, 3).unwrap());
        assert!(main_lemma_instance(7, 4, 2).unwrap());
        assert!(main_lemma_instance(5, 2, 3).unwrap());
        assert!(main_lemma_instance(9, 4, 4).is_err());
    }

    #[test]
    fn newton_girard_examples() {
        let c = newton_girard_check(5, &[0, 1, 2, 3], &[3, 2, 1, 0]).unwrap();
        assert!(c.power_sums_equal && c.multisets_equal);
        let c = newton_girard_check(7, &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert!(c.power_sums_equal && c.multisets_equal);
        let c = newton_girard_check(5, &[0], &[1]).unwrap();
        assert!(!c.power_sums_equal && !c.multisets_equal);
        assert!(newton_girard_check(5, &[0, 1], &[1]).is_err());
        assert!(newton_girard_check(5, &[], &[]).is_err());
    }
}
