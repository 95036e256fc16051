use std::collections::HashMap;

use clap::ValueEnum;
use cycpres_core::arith::gcd;
use cycpres_core::classify::PowerSums;
use cycpres_core::prishchepov::PrishParams;
use cycpres_core::{determinant, flip, BigInt};
use num_traits::Signed;
use rayon::prelude::*;

use crate::record::RecordOptions;
use crate::sweep::{self, Mode, ScanSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    TheoremA,
    CorollaryB,
    Lemma,
    ResultantSymmetry,
    Reduction,
    Flip,
    NewtonGirard,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremA => "theorem-a",
            Suite::CorollaryB => "corollary-b",
            Suite::Lemma => "lemma",
            Suite::ResultantSymmetry => "resultant-symmetry",
            Suite::Reduction => "reduction",
            Suite::Flip => "flip",
            Suite::NewtonGirard => "newton-girard",
        }
    }

    /// Suites whose statements assume `gcd(n, 6) = 1`; `--n-max` skips other `n`.
    pub fn needs_gcd6(self) -> bool {
        matches!(self, Suite::TheoremA | Suite::CorollaryB | Suite::Lemma)
    }
}

pub struct Report {
    pub checked: usize,
    pub violations: Vec<String>,
}

pub fn run(suite: Suite, ns: &[u64]) -> Report {
    let mode = match suite {
        Suite::TheoremA => Mode::VerifyTheoremA,
        Suite::CorollaryB => Mode::VerifyCorollaryB,
        Suite::Lemma => Mode::VerifyLemma,
        Suite::ResultantSymmetry => Mode::VerifyResultantSymmetry,
        Suite::Reduction => Mode::VerifyReduction,
        Suite::Flip => return flip_suite(ns),
        Suite::NewtonGirard => return newton_girard_suite(ns),
    };
    let spec = ScanSpec {
        ns: ns.to_vec(),
        r: None,
        s: None,
        k: None,
        q: None,
        lock_s: false,
        mode,
        opts: RecordOptions { factors: false, witness: false },
    };
    let out = sweep::run(&spec, None).expect("no cache, no I/O");
    Report { checked: out.checked, violations: out.violations.iter().map(ToString::to_string).collect() }
}

fn flip_suite(ns: &[u64]) -> Report {
    let tuples: Vec<PrishParams> = ns
        .iter()
        .flat_map(|&n| {
            (1..=n).flat_map(move |r| {
                (1..=n).flat_map(move |k| {
                    (1..=n).flat_map(move |s| (1..=n).filter_map(move |q| PrishParams::new(r, n, k, s, q).ok()))
                })
            })
        })
        .collect();
    let violations = tuples
        .par_iter()
        .filter(|p| determinant(p).abs() != determinant(&flip(p)).abs())
        .map(|p| format!("{p} vs {}", flip(p)))
        .collect();
    Report { checked: tuples.len(), violations }
}

fn multisets(n: u64, size: usize) -> Vec<Vec<u64>> {
    fn rec(n: u64, size: usize, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(n, size, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Size-4 multisets of residues mod `n` whose first four power sums at a
/// primitive `n`-th root coincide must be equal. Multisets are bucketed by
/// their power-sum vector; a bucket with two members is a violation.
fn newton_girard_suite(ns: &[u64]) -> Report {
    const ELL: usize = 4;
    let mut checked = 0;
    let mut violations = Vec::new();
    for &n in ns {
        let sums = PowerSums::for_n(n).expect("n >= 2");
        let all = multisets(n, ELL);
        let keys: Vec<Vec<Vec<BigInt>>> = all
            .par_iter()
            .map(|m| (1..=ELL as u64).map(|j| sums.power_sum(m, j).coeffs().to_vec()).collect())
            .collect();
        let mut buckets: HashMap<&Vec<Vec<BigInt>>, Vec<usize>> = HashMap::new();
        for (i, key) in keys.iter().enumerate() {
            buckets.entry(key).or_default().push(i);
        }
        checked += all.len() * all.len();
        let mut clashes: Vec<&Vec<usize>> = buckets.values().filter(|b| b.len() > 1).collect();
        clashes.sort();
        for b in clashes {
            let group: Vec<String> = b.iter().map(|&i| format!("{:?}", all[i])).collect();
            violations.push(format!("n = {n}: {}", group.join(" ~ ")));
        }
    }
    Report { checked, violations }
}

pub fn default_ns(suite: Suite, n_max: u64) -> Vec<u64> {
    (2..=n_max).filter(|&n| !suite.needs_gcd6() || gcd(n as i128, 6) == 1).collect()
}
