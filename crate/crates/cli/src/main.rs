mod cache;
mod record;
mod sweep;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cycpres_core::arith::gcd;
use cycpres_core::prishchepov::PrishParams;
use cycpres_core::{abelianize_word, parse_word, reduce};
use serde::Serialize;

use crate::cache::Cache;
use crate::record::{build, compute_abelian, RecordOptions, WordRecord, CSV_HEADER};
use crate::sweep::{Mode, ScanSpec};
use crate::verify::Suite;

/// Largest n accepted without --force.
const N_CAP: u64 = 60;

#[derive(Parser)]
#[command(name = "cycpres", version, about = "Perfectness and abelianization of cyclically presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify P(r,n,k,s,q).
    Classify {
        #[command(flatten)]
        tuple: Tuple,
        #[arg(long)]
        json: bool,
        /// Also search for a unit symmetry eps * z^j * f(z) = f(1/z).
        #[arg(long)]
        witness: bool,
    },
    /// Abelianization of a general G_n(w).
    Abelianize {
        /// Word such as "x0 x1 X2" or "x0^2 x3^-1".
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Normalize P(r,n,k,r-1,q) to copies of P(r,N,K,r-1,1).
    Reduce {
        #[command(flatten)]
        tuple: Tuple,
        /// Accepted for symmetry with the other query commands; output is always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Sweep a parameter box and emit one record per tuple.
    Scan(ScanArgs),
    /// Run a named verification suite and report violations.
    Verify {
        suite: Suite,
        /// Values of n: a comma list of numbers or inclusive ranges a-b.
        #[arg(long, value_parser = parse_set, conflicts_with = "n_max")]
        n: Option<NumSet>,
        /// All n in 2..=N (restricted to gcd(n,6) = 1 where the statement needs it).
        #[arg(long, default_value_t = 13)]
        n_max: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Args)]
struct Tuple {
    r: u64,
    n: u64,
    k: u64,
    s: u64,
    q: u64,
}

impl Tuple {
    fn params(&self) -> Result<PrishParams, Failure> {
        PrishParams::new(self.r, self.n, self.k, self.s, self.q).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NFilter {
    All,
    Gcd6,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum, default_value_t = Mode::Classify)]
    mode: Mode,
    /// Values of n: a comma list of numbers or inclusive ranges a-b, e.g. 5,7 or 5-13.
    #[arg(long, value_parser = parse_set)]
    n: NumSet,
    /// Keep every n (all) or only those with gcd(n,6) = 1 (gcd6).
    #[arg(long, value_enum, default_value_t = NFilter::All)]
    n_filter: NFilter,
    #[arg(long, value_parser = parse_set)]
    r: Option<NumSet>,
    #[arg(long, value_parser = parse_set)]
    s: Option<NumSet>,
    #[arg(long, value_parser = parse_set)]
    k: Option<NumSet>,
    #[arg(long, value_parser = parse_set)]
    q: Option<NumSet>,
    /// Force s = r - 1.
    #[arg(long)]
    lock_s: bool,
    /// Worker threads (0 picks one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Enable the result cache, optionally at PATH (else $CYCPRES_CACHE, else ./cycpres-cache.jsonl).
    #[arg(long, num_args = 0..=1, value_name = "PATH")]
    cache: Option<Option<PathBuf>>,
    /// Allow n above 60.
    #[arg(long)]
    force: bool,
    /// Include the unit-symmetry witness (j, eps) per tuple.
    #[arg(long)]
    witness: bool,
}

enum Failure {
    Usage(String),
    Inapplicable(String),
    Io(String),
    Violations,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violations => 1,
            Failure::Usage(_) => 2,
            Failure::Inapplicable(_) => 3,
            Failure::Io(_) => 4,
        }
    }
}

fn io_failure(what: &str) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{what}: {e}"))
}

#[derive(Serialize)]
struct TupleJson {
    r: u64,
    n: u64,
    k: u64,
    s: u64,
    q: u64,
}

impl From<&PrishParams> for TupleJson {
    fn from(p: &PrishParams) -> Self {
        Self { r: p.r, n: p.n, k: p.k, s: p.s, q: p.q }
    }
}

#[derive(Serialize)]
struct ReductionJson {
    d: u64,
    #[serde(rename = "N")]
    n_red: u64,
    #[serde(rename = "Q")]
    q_red: u64,
    #[serde(rename = "Q_hat")]
    q_hat: u64,
    #[serde(rename = "K_prime")]
    k_prime: u64,
    #[serde(rename = "K")]
    k_red: u64,
    copies: u64,
    reduced: TupleJson,
}

#[derive(Serialize)]
struct Summary {
    mode: &'static str,
    tuples: usize,
    perfect: usize,
    checked: usize,
    violations: usize,
}

#[derive(Serialize)]
struct Footer {
    summary: Summary,
}

#[derive(Clone, Debug)]
struct NumSet(Vec<u64>);

/// Comma list of numbers and inclusive ranges `a-b`, sorted and deduplicated.
fn parse_set(text: &str) -> Result<NumSet, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let num = |s: &str| s.trim().parse::<u64>().map_err(|_| format!("'{s}' is not a non-negative integer"));
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {part}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err("empty set".into());
    }
    Ok(NumSet(out))
}

fn check_ns(ns: &[u64], force: bool) -> Result<(), Failure> {
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(Failure::Usage(format!("n must be at least 2, got {bad}")));
    }
    if !force {
        if let Some(&big) = ns.iter().find(|&&n| n > N_CAP) {
            return Err(Failure::Usage(format!("n = {big} exceeds the cap of {N_CAP}; pass --force to allow it")));
        }
    }
    Ok(())
}

fn set_jobs(jobs: usize) {
    if jobs > 0 {
        // Only fails if a global pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
}

fn classify(tuple: &Tuple, json: bool, witness: bool) -> Result<(), Failure> {
    let p = tuple.params()?;
    let ab = compute_abelian(&p, true);
    let rec = build(&p, &ab, RecordOptions { factors: true, witness });
    if json {
        println!("{}", rec.json_line());
    } else {
        print!("{}", rec.human());
    }
    Ok(())
}

fn abelianize(word: &str, n: usize, json: bool) -> Result<(), Failure> {
    if n < 2 {
        return Err(Failure::Usage(format!("n must be at least 2, got {n}")));
    }
    let w = parse_word(word, n).map_err(|e| Failure::Usage(e.to_string()))?;
    let rec = WordRecord::new(&w, &abelianize_word(&w));
    if json {
        println!("{}", serde_json::to_string(&rec).expect("record serializes"));
    } else {
        print!("{}", rec.human());
    }
    Ok(())
}

fn reduce_cmd(tuple: &Tuple) -> Result<(), Failure> {
    let p = tuple.params()?;
    let red = reduce(&p).map_err(|e| Failure::Inapplicable(e.to_string()))?;
    let out = ReductionJson {
        d: red.d,
        n_red: red.n_red,
        q_red: red.q_red,
        q_hat: red.q_hat,
        k_prime: red.k_prime,
        k_red: red.k_red,
        copies: red.copies,
        reduced: TupleJson::from(&red.reduced),
    };
    let out = serde_json::to_string(&out).expect("reduction serializes");
    println!("{out}");
    Ok(())
}

fn scan(args: ScanArgs) -> Result<(), Failure> {
    check_ns(&args.n.0, args.force)?;
    set_jobs(args.jobs);
    let gcd6 = args.n_filter == NFilter::Gcd6 || args.mode == Mode::OpenCases;
    let ns: Vec<u64> = args.n.0.iter().copied().filter(|&n| !gcd6 || gcd(n as i128, 6) == 1).collect();
    let spec = ScanSpec {
        ns,
        r: args.r.map(|v| v.0),
        s: args.s.map(|v| v.0),
        k: args.k.map(|v| v.0),
        q: args.q.map(|v| v.0),
        lock_s: args.lock_s,
        mode: args.mode,
        opts: RecordOptions { factors: args.format == Format::Jsonl, witness: args.witness },
    };

    let mut sink: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(io_failure(&path.display().to_string()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let cache = match args.cache {
        Some(explicit) => {
            let path = cache::resolve_path(explicit);
            Some(Cache::open(&path).map_err(io_failure(&path.display().to_string()))?)
        }
        None => None,
    };

    let out = sweep::run(&spec, cache.as_ref()).map_err(io_failure("cache"))?;
    let write_err = io_failure("output");
    if args.format == Format::Csv {
        writeln!(sink, "{CSV_HEADER}").map_err(&write_err)?;
    }
    for rec in &out.records {
        let line = match args.format {
            Format::Csv => rec.csv_line(),
            Format::Jsonl => rec.json_line(),
        };
        writeln!(sink, "{line}").map_err(&write_err)?;
    }
    let footer = match args.format {
        Format::Csv => format!(
            "# mode: {}, tuples: {}, perfect: {}, checked: {}, violations: {}",
            spec.mode.name(),
            out.records.len(),
            out.perfect,
            out.checked,
            out.violations.len()
        ),
        Format::Jsonl => {
            let summary = Summary {
                mode: spec.mode.name(),
                tuples: out.records.len(),
                perfect: out.perfect,
                checked: out.checked,
                violations: out.violations.len(),
            };
            serde_json::to_string(&Footer { summary }).expect("summary serializes")
        }
    };
    writeln!(sink, "{footer}").map_err(&write_err)?;
    sink.flush().map_err(&write_err)?;

    if let Some(c) = &cache {
        eprintln!(
            "cache: {} entries loaded, {} hits, {} spot checks, {} mismatches",
            c.len(),
            out.cache_hits,
            out.spot_checks,
            out.cache_mismatches
        );
    }
    // Plain classification scans report classifier disagreements in the footer only.
    let verifying = !matches!(spec.mode, Mode::Classify | Mode::OpenCases);
    if !verifying {
        return Ok(());
    }
    for p in &out.violations {
        eprintln!("violation: {p}");
    }
    if out.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violations)
    }
}

fn verify(suite: Suite, n: Option<NumSet>, n_max: u64, jobs: usize, force: bool) -> Result<(), Failure> {
    let ns = n.map(|v| v.0).unwrap_or_else(|| verify::default_ns(suite, n_max));
    check_ns(&ns, force)?;
    set_jobs(jobs);
    let report = verify::run(suite, &ns);
    let status = if report.violations.is_empty() { "pass" } else { "FAIL" };
    println!("suite: {}", suite.name());
    println!("n: {}", ns.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    println!("checked: {}", report.checked);
    println!("violations: {}", report.violations.len());
    for v in &report.violations {
        println!("  {v}");
    }
    println!("{status}");
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violations)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { tuple, json, witness } => classify(&tuple, json, witness),
        Command::Abelianize { word, n, json } => abelianize(&word, n, json),
        Command::Reduce { tuple, json: _ } => reduce_cmd(&tuple),
        Command::Scan(args) => scan(args),
        Command::Verify { suite, n, n_max, jobs, force } => verify(suite, n, n_max, jobs, force),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) | Failure::Inapplicable(m) | Failure::Io(m) => eprintln!("error: {m}"),
                Failure::Violations => {}
            }
            ExitCode::from(f.code())
        }
    }
}
