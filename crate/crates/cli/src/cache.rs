//! Append-only JSON-lines store of determinants and invariant factors,
//! keyed by the canonical tuple string `"r,n,k,s,q"`.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use cycpres_core::BigInt;
use serde::{Deserialize, Serialize};

use crate::record::Abelian;

pub const DEFAULT_PATH: &str = "cycpres-cache.jsonl";
pub const ENV_VAR: &str = "CYCPRES_CACHE";

#[derive(Serialize, Deserialize)]
struct Line {
    key: String,
    det: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    invariant_factors: Option<Vec<String>>,
}

/// Explicit path, else the environment variable, else the default file name.
pub fn resolve_path(explicit: Option<PathBuf>) -> PathBuf {
    explicit
        .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_PATH))
}

pub struct Cache {
    entries: HashMap<String, Abelian>,
    writer: Mutex<BufWriter<File>>,
}

fn decode(line: &str) -> Option<(String, Abelian)> {
    let l: Line = serde_json::from_str(line).ok()?;
    let parts: Vec<u64> = l.key.split(',').map(|x| x.parse().ok()).collect::<Option<_>>()?;
    if parts.len() != 5 {
        return None;
    }
    let det: BigInt = l.det.parse().ok()?;
    let factors = match l.invariant_factors {
        Some(f) => Some(f.iter().map(|x| x.parse().ok()).collect::<Option<Vec<BigInt>>>()?),
        None => None,
    };
    Some((l.key, Abelian { det, factors }))
}

impl Cache {
    pub fn open(path: &Path) -> std::io::Result<Self> {
        let mut entries = HashMap::new();
        match File::open(path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match decode(&line) {
                        // Later lines supersede earlier ones.
                        Some((key, ab)) => {
                            entries.insert(key, ab);
                        }
                        None => eprintln!("warning: {}: skipping corrupt cache line {}", path.display(), i + 1),
                    }
                }
            }
            Err(e) if e.kind() == ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(Self { entries, writer: Mutex::new(BufWriter::new(file)) })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// A cached entry usable for the request (it must carry factors if they are needed).
    pub fn get(&self, key: &str, need_factors: bool) -> Option<&Abelian> {
        self.entries.get(key).filter(|ab| !need_factors || ab.factors.is_some())
    }

    pub fn append(&self, key: &str, ab: &Abelian) -> std::io::Result<()> {
        let line = Line {
            key: key.to_string(),
            det: ab.det.to_string(),
            invariant_factors: ab.factors.as_ref().map(|f| f.iter().map(ToString::to_string).collect()),
        };
        let mut w = self.writer.lock().expect("cache writer poisoned");
        serde_json::to_writer(&mut *w, &line)?;
        w.write_all(b"\n")
    }

    pub fn flush(&self) -> std::io::Result<()> {
        self.writer.lock().expect("cache writer poisoned").flush()
    }
}
