//! Experiment reports: JSON summary plus CSV data files.

use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    AtMost,
    AtLeast,
    Below,
}

impl Op {
    fn symbol(self) -> &'static str {
        match self {
            Op::AtMost => "<=",
            Op::AtLeast => ">=",
            Op::Below => "<",
        }
    }
}

/// One metric compared against its acceptance limit.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub op: Op,
    pub limit: f64,
}

impl Check {
    pub fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, op: Op::AtMost, limit }
    }

    pub fn at_least(name: &str, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, op: Op::AtLeast, limit }
    }

    pub fn below(name: &str, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, op: Op::Below, limit }
    }

    pub fn passed(&self) -> bool {
        match self.op {
            Op::AtMost => self.value <= self.limit,
            Op::AtLeast => self.value >= self.limit,
            Op::Below => self.value < self.limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DataFile {
    pub name: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub experiment: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Experiment-specific statistics.
    pub results: Value,
    pub files: Vec<DataFile>,
}

/// JSON number, or null for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

impl Report {
    pub fn new(experiment: &str, seed: u64, config: &BTreeMap<String, String>) -> Self {
        Report {
            experiment: experiment.into(),
            seed,
            config: config.clone(),
            checks: Vec::new(),
            results: Value::Object(Map::new()),
            files: Vec::new(),
        }
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn check_value(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.value)
    }

    /// Adds a CSV file named `<experiment>_<index>.csv`.
    pub fn add_file(&mut self, bytes: Vec<u8>) {
        let name = format!("{}_{}.csv", self.experiment, self.files.len());
        self.files.push(DataFile { name, bytes });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// The JSON summary. `serde_json` maps are ordered, so keys come out
    /// sorted and the text is deterministic.
    pub fn to_json(&self) -> String {
        let mut metrics = Map::new();
        let mut thresholds = Map::new();
        let mut pass = Map::new();
        for c in &self.checks {
            metrics.insert(c.name.clone(), num(c.value));
            thresholds.insert(c.name.clone(), json!({ "op": c.op.symbol(), "limit": num(c.limit) }));
            pass.insert(c.name.clone(), Value::Bool(c.passed()));
        }
        let v = json!({
            "experiment": self.experiment,
            "seed": self.seed,
            "config": self.config,
            "metrics": metrics,
            "thresholds": thresholds,
            "pass": pass,
            "passed": self.passed(),
            "results": self.results,
            "files": self.files.iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
        s.push('\n');
        s
    }

    /// One-line pass/fail summary.
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let parts: Vec<String> = self
            .checks
            .iter()
            .map(|c| format!("{}={:.6e}{}{}{:.1e}", c.name, c.value, if c.passed() { "" } else { "!" }, c.op.symbol(), c.limit))
            .collect();
        format!("{} {}: {}", self.experiment, status, parts.join(" "))
    }

    /// Writes `<experiment>.json` and the CSV files into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut written = Vec::new();
        let json_path = dir.join(format!("{}.json", self.experiment));
        fs::write(&json_path, self.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", json_path.display())))?;
        written.push(json_path);
        for f in &self.files {
            let p = dir.join(&f.name);
            fs::write(&p, &f.bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            written.push(p);
        }
        Ok(written)
    }
}

/// Builds a CSV in memory from a header and rows of displayable cells.
pub fn csv_bytes<I, R>(header: &[&str], rows: I) -> Result<Vec<u8>, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}
