use std::io;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::ValueEnum;
use cycpres_core::arith::{congruent, gcd};
use cycpres_core::prishchepov::PrishParams;
use cycpres_core::{
    circulant_resultant, corollary_b_classify, determinant, main_lemma_instance, poly_f, poly_g, reduce,
    type_flags, ReductionError,
};
use num_traits::{One, Pow, Signed};
use rand::Rng;
use rayon::prelude::*;

use crate::cache::Cache;
use crate::record::{build, compute_abelian, Abelian, RecordOptions, ResultRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Classify,
    VerifyTheoremA,
    VerifyCorollaryB,
    VerifyLemma,
    VerifyResultantSymmetry,
    VerifyReduction,
    OpenCases,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Classify => "classify",
            Mode::VerifyTheoremA => "verify-theorem-a",
            Mode::VerifyCorollaryB => "verify-corollary-b",
            Mode::VerifyLemma => "verify-lemma",
            Mode::VerifyResultantSymmetry => "verify-resultant-symmetry",
            Mode::VerifyReduction => "verify-reduction",
            Mode::OpenCases => "open-cases",
        }
    }

    fn locks_s(self) -> bool {
        matches!(self, Mode::VerifyLemma | Mode::VerifyResultantSymmetry | Mode::VerifyReduction | Mode::OpenCases)
    }

    fn fixes_q(self) -> bool {
        matches!(self, Mode::VerifyLemma | Mode::VerifyResultantSymmetry | Mode::OpenCases)
    }

    fn applies(self, p: &PrishParams) -> bool {
        let n = p.n as i128;
        let shape = p.s + 1 == p.r;
        match self {
            Mode::Classify | Mode::VerifyTheoremA | Mode::VerifyCorollaryB => true,
            Mode::VerifyLemma => shape && p.q == 1,
            Mode::VerifyResultantSymmetry => shape && p.q == 1 && p.k >= 2,
            Mode::VerifyReduction => shape && (p.k - 1).is_multiple_of(gcd(n, p.q as i128)),
            Mode::OpenCases => {
                gcd(n, 6) == 1
                    && p.q == 1
                    && shape
                    && congruent(2 * p.r as i128, 1, p.n)
                    && gcd(p.k as i128 - 1 - p.r as i128, n) == 1
                    && p.k > 2
                    && p.k <= p.n.div_ceil(2)
            }
        }
    }

    /// `Some(true)` when the tuple violates the property under test, `None` when not checked.
    fn violation(self, p: &PrishParams, rec: &ResultRecord, det: &cycpres_core::BigInt) -> Option<bool> {
        match self {
            Mode::Classify | Mode::VerifyCorollaryB => corollary_b_classify(p).as_perfect().map(|v| v != rec.perfect),
            Mode::VerifyTheoremA => {
                if gcd(p.n as i128, 6) != 1 {
                    return None;
                }
                let f = type_flags(p);
                Some(rec.perfect && !(f.type_ztilde() || f.any_obvious()))
            }
            Mode::VerifyLemma => main_lemma_instance(p.n, p.r, p.k).ok().map(|ok| !ok),
            Mode::VerifyResultantSymmetry => {
                let n = p.n as usize;
                let rf = circulant_resultant(&poly_f(p.r, p.k).ok()?.fold_cyclic(n), n).ok()?;
                let rg = circulant_resultant(&poly_g(p.r, p.k).ok()?.fold_cyclic(n), n).ok()?;
                Some(rf.abs() != rg.abs())
            }
            Mode::VerifyReduction => match reduce(p) {
                Ok(red) => {
                    let part = determinant(&red.reduced).abs();
                    Some(det.abs() != Pow::pow(&part, red.d as u32))
                }
                // A single-generator factor contributes R_1 = F(1) = 1.
                Err(ReductionError::Degenerate { .. }) => Some(!det.abs().is_one()),
                Err(_) => None,
            },
            Mode::OpenCases => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanSpec {
    pub ns: Vec<u64>,
    pub r: Option<Vec<u64>>,
    pub s: Option<Vec<u64>>,
    pub k: Option<Vec<u64>>,
    pub q: Option<Vec<u64>>,
    pub lock_s: bool,
    pub mode: Mode,
    pub opts: RecordOptions,
}

impl ScanSpec {
    /// Every tuple in scope, sorted lexicographically by `(r,n,k,s,q)`.
    pub fn tuples(&self) -> Vec<PrishParams> {
        let mut out = Vec::new();
        let lock = self.lock_s || self.mode.locks_s();
        for &n in &self.ns {
            let full: Vec<u64> = (1..=n).collect();
            let pick = |v: &Option<Vec<u64>>| v.clone().unwrap_or_else(|| full.clone());
            let (rs, ss, ks) = (pick(&self.r), pick(&self.s), pick(&self.k));
            let mut qs = pick(&self.q);
            if self.mode.fixes_q() {
                qs.retain(|&q| q == 1);
            }
            for &r in &rs {
                let s_choices: Vec<u64> = if lock { vec![r.saturating_sub(1)] } else { ss.clone() };
                for &s in &s_choices {
                    for &k in &ks {
                        for &q in &qs {
                            if let Ok(p) = PrishParams::new(r, n, k, s, q) {
                                if self.mode.applies(&p) {
                                    out.push(p);
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub records: Vec<ResultRecord>,
    pub checked: usize,
    pub perfect: usize,
    pub violations: Vec<PrishParams>,
    pub cache_hits: usize,
    pub spot_checks: usize,
    pub cache_mismatches: usize,
}

/// Fraction of cache hits recomputed from scratch, in percent.
const SPOT_CHECK_PERCENT: u32 = 1;

fn abelian_for(
    p: &PrishParams,
    need_factors: bool,
    cache: Option<&Cache>,
    hits: &AtomicUsize,
    spot: &AtomicUsize,
    mismatches: &AtomicUsize,
) -> io::Result<Abelian> {
    let Some(cache) = cache else {
        return Ok(compute_abelian(p, need_factors));
    };
    let key = p.key();
    if let Some(hit) = cache.get(&key, need_factors) {
        hits.fetch_add(1, Ordering::Relaxed);
        if rand::thread_rng().gen_range(0..100) < SPOT_CHECK_PERCENT {
            spot.fetch_add(1, Ordering::Relaxed);
            let fresh = compute_abelian(p, hit.factors.is_some());
            if fresh != *hit {
                mismatches.fetch_add(1, Ordering::Relaxed);
                eprintln!("warning: cached record for {p} disagrees with recomputation; using the fresh value");
                cache.append(&key, &fresh)?;
                return Ok(fresh);
            }
        }
        return Ok(hit.clone());
    }
    let fresh = compute_abelian(p, need_factors);
    cache.append(&key, &fresh)?;
    Ok(fresh)
}

pub fn run(spec: &ScanSpec, cache: Option<&Cache>) -> io::Result<Outcome> {
    let tuples = spec.tuples();
    let (hits, spot, mismatches) = (AtomicUsize::new(0), AtomicUsize::new(0), AtomicUsize::new(0));
    let evaluated: Vec<(ResultRecord, Option<bool>)> = tuples
        .par_iter()
        .map(|p| {
            let ab = abelian_for(p, spec.opts.factors, cache, &hits, &spot, &mismatches)?;
            let rec = build(p, &ab, spec.opts);
            let v = spec.mode.violation(p, &rec, &ab.det);
            Ok((rec, v))
        })
        .collect::<io::Result<_>>()?;
    if let Some(c) = cache {
        c.flush()?;
    }

    let mut out = Outcome {
        cache_hits: hits.into_inner(),
        spot_checks: spot.into_inner(),
        cache_mismatches: mismatches.into_inner(),
        ..Outcome::default()
    };
    for (p, (rec, v)) in tuples.iter().zip(evaluated) {
        out.perfect += usize::from(rec.perfect);
        if let Some(bad) = v {
            out.checked += 1;
            if bad {
                out.violations.push(*p);
            }
        }
        out.records.push(rec);
    }
    Ok(out)
}
