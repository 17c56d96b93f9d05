//! Machine-readable check reports.

use serde::Serialize;

pub const SCHEMA: &str = "antiforce/1";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub suite: String,
    pub max_dim: usize,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub millis: u128,
}

impl Report {
    pub fn new(suite: &str, max_dim: usize, seed: u64) -> Report {
        Report {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION"),
            suite: suite.to_string(),
            max_dim,
            seed,
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.pass &= record.pass;
        self.checks.push(record);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Tab-separated rows: name, expected, actual, pass, millis.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("name\texpected\tactual\tpass\tmillis\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                c.name, c.expected, c.actual, c.pass, c.millis
            ));
        }
        out
    }

    pub fn emit(&self, format: &str) -> anyhow::Result<String> {
        match format {
            "json" => Ok(self.to_json()),
            "tsv" => Ok(self.to_tsv()),
            other => anyhow::bail!("unknown report format `{other}` (json or tsv)"),
        }
    }
}
