use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            _ => Err(format!("unknown format `{s}` (expected json or tsv)")),
        }
    }
}

/// One check: what was measured, what was expected, and the statement it tests.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub measured: Value,
    pub expected: Value,
    /// Zero for exact checks.
    pub tolerance: f64,
    pub claim: String,
}

impl CheckRecord {
    pub fn new(
        id: impl Into<String>,
        ok: bool,
        measured: impl Into<Value>,
        expected: impl Into<Value>,
        tolerance: f64,
        claim: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured: measured.into(),
            expected: expected.into(),
            tolerance,
            claim: claim.into(),
        }
    }

    /// Exact comparison of two values.
    pub fn exact<T: Into<Value> + PartialEq + Clone>(
        id: impl Into<String>,
        measured: T,
        expected: T,
        claim: impl Into<String>,
    ) -> Self {
        let ok = measured == expected;
        Self::new(id, ok, measured, expected, 0.0, claim)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportConfig {
    pub n: i64,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: ReportConfig,
    pub pass: bool,
    /// Sorted by id.
    pub records: Vec<CheckRecord>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(suite: &str, config: ReportConfig, mut records: Vec<CheckRecord>, runtime_ms: u64) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        Self {
            suite: suite.to_string(),
            config,
            pass: records.iter().all(CheckRecord::passed),
            records,
            runtime_ms,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# suite\t{}", self.suite).unwrap();
        writeln!(s, "# n\t{}", self.config.n).unwrap();
        writeln!(s, "# seed\t{}", self.config.seed).unwrap();
        writeln!(s, "# tol\t{}", self.config.tol).unwrap();
        writeln!(s, "id\tstatus\tmeasured\texpected\ttolerance\tclaim").unwrap();
        for r in &self.records {
            let status = if r.passed() { "pass" } else { "fail" };
            writeln!(
                s,
                "{}\t{status}\t{}\t{}\t{}\t{}",
                r.id, r.measured, r.expected, r.tolerance, r.claim
            )
            .unwrap();
        }
        writeln!(s, "# pass\t{}", self.pass).unwrap();
        writeln!(s, "# runtime_ms\t{}", self.runtime_ms).unwrap();
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Tsv => self.to_tsv(),
        }
    }
}

/// Rendered report with the runtime line removed, for determinism checks.
pub fn strip_runtime(rendered: &str) -> String {
    rendered
        .lines()
        .filter(|l| !l.contains("runtime_ms"))
        .map(|l| format!("{l}\n"))
        .collect()
}
