use std::fmt::Write as _;

use cycpres_core::cyclic_words::circulant_of;
use cycpres_core::prishchepov::PrishParams;
use cycpres_core::{
    corollary_b_classify, type_flags, AbelianReport, BigInt, CyclicWord, UnitSymmetry, Verdict,
};
use cycpres_core::classify::unit_symmetry_of;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "r,n,k,s,q,det,perfect,type_Z,type_Zprime,obvious,classifier,witness_j,witness_eps";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub j: u64,
    pub eps: i8,
}

impl From<UnitSymmetry> for Witness {
    fn from(w: UnitSymmetry) -> Self {
        Self { j: w.j, eps: w.epsilon }
    }
}

/// One classified tuple. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultRecord {
    pub r: u64,
    pub n: u64,
    pub k: u64,
    pub s: u64,
    pub q: u64,
    pub det: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<String>>,
    pub perfect: bool,
    #[serde(rename = "type_Z")]
    pub type_z: bool,
    #[serde(rename = "type_Zprime")]
    pub type_zprime: bool,
    pub obvious: Vec<&'static str>,
    pub classifier: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Option<Witness>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RecordOptions {
    pub factors: bool,
    pub witness: bool,
}

/// Determinant plus (optionally) invariant factors: the expensive part of a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelian {
    pub det: BigInt,
    pub factors: Option<Vec<BigInt>>,
}

pub fn compute_abelian(p: &PrishParams, factors: bool) -> Abelian {
    let m = circulant_of(&p.exponent_sums());
    let det = m.det().expect("circulant is square");
    let factors = factors.then(|| {
        if det.abs().is_one() {
            vec![BigInt::one(); p.n as usize]
        } else {
            m.smith_normal_form().invariant_factors
        }
    });
    Abelian { det, factors }
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Perfect => "perfect",
        Verdict::NotPerfect => "not_perfect",
        Verdict::Inapplicable(_) => "inapplicable",
    }
}

pub fn build(p: &PrishParams, ab: &Abelian, opts: RecordOptions) -> ResultRecord {
    let flags = type_flags(p);
    let witness = opts.witness.then(|| {
        unit_symmetry_of(&p.cyclic_poly(), p.n).expect("n >= 2").map(Witness::from)
    });
    ResultRecord {
        r: p.r,
        n: p.n,
        k: p.k,
        s: p.s,
        q: p.q,
        det: ab.det.to_string(),
        invariant_factors: ab.factors.as_ref().map(|f| f.iter().map(ToString::to_string).collect()),
        perfect: ab.det.abs().is_one(),
        type_z: flags.type_z,
        type_zprime: flags.type_zprime,
        obvious: flags.obvious_names(),
        classifier: verdict_name(&corollary_b_classify(p)),
        witness,
    }
}

impl ResultRecord {
    pub fn csv_line(&self) -> String {
        let classifier = if self.classifier == "inapplicable" { "" } else { self.classifier };
        let (j, eps) = match self.witness {
            Some(Some(w)) => (w.j.to_string(), w.eps.to_string()),
            _ => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.r,
            self.n,
            self.k,
            self.s,
            self.q,
            self.det,
            self.perfect,
            self.type_z,
            self.type_zprime,
            self.obvious.join("|"),
            classifier,
            j,
            eps
        )
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "P({},{},{},{},{})", self.r, self.n, self.k, self.s, self.q);
        let _ = writeln!(out, "det: {}", self.det);
        if let Some(f) = &self.invariant_factors {
            let _ = writeln!(out, "invariant factors: {}", f.join(" "));
        }
        let _ = writeln!(out, "perfect: {}", self.perfect);
        let _ = writeln!(out, "type Z: {}", self.type_z);
        let _ = writeln!(out, "type Z': {}", self.type_zprime);
        let obvious = if self.obvious.is_empty() { "none".to_string() } else { self.obvious.join(" ") };
        let _ = writeln!(out, "obvious: {obvious}");
        let _ = writeln!(out, "classifier: {}", self.classifier);
        match self.witness {
            Some(Some(w)) => {
                let _ = writeln!(out, "witness: j = {}, eps = {}", w.j, w.eps);
            }
            Some(None) => {
                let _ = writeln!(out, "witness: none");
            }
            None => {}
        }
        out
    }
}

/// Abelianization of a general `G_n(w)`.
#[derive(Debug, Clone, Serialize)]
pub struct WordRecord {
    pub n: usize,
    pub word: String,
    pub det: String,
    pub invariant_factors: Vec<String>,
    pub perfect: bool,
    pub finite: bool,
}

impl WordRecord {
    pub fn new(w: &CyclicWord, report: &AbelianReport) -> Self {
        Self {
            n: w.rank(),
            word: w.to_string(),
            det: report.det.to_string(),
            invariant_factors: report.invariant_factors.invariant_factors.iter().map(ToString::to_string).collect(),
            perfect: report.is_perfect,
            finite: report.is_finite_ab,
        }
    }

    pub fn human(&self) -> String {
        format!(
            "G_{}({})\ndet: {}\ninvariant factors: {}\nperfect: {}\nfinite abelianization: {}\n",
            self.n,
            self.word,
            self.det,
            self.invariant_factors.join(" "),
            self.perfect,
            self.finite
        )
    }
}
