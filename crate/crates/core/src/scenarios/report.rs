/// Outcome of one sub-check of a verification procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    /// what was computed, or where it went wrong
    pub witness: String,
}

impl Check {
    pub fn new(id: impl Into<String>, passed: bool, witness: impl Into<String>) -> Self {
        Self { id: id.into(), passed, witness: witness.into() }
    }

    /// Pass when `got == want`; the witness shows the computed value.
    pub fn expect<T: PartialEq + std::fmt::Debug>(id: impl Into<String>, got: T, want: T) -> Self {
        let passed = got == want;
        let witness = if passed { format!("{got:?}") } else { format!("got {got:?}, expected {want:?}") };
        Self::new(id, passed, witness)
    }

    /// A check whose computation itself failed.
    pub fn error(id: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self::new(id, false, format!("error: {err}"))
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Bumped whenever the JSON layout changes.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub witness: String,
    /// wall time of the enclosing suite; zero unless timings were requested
    pub ms: u64,
}

/// Result of one CLI invocation. Serialises to a stable, versioned JSON layout.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    pub seed: u64,
    pub samples: usize,
    pub version: u32,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64, samples: usize) -> Self {
        Self { suite: suite.into(), checks: Vec::new(), seed, samples, version: REPORT_SCHEMA_VERSION }
    }

    pub fn push(&mut self, checks: Vec<Check>, ms: u64) {
        self.checks.extend(checks.into_iter().map(|c| CheckRecord {
            status: if c.passed { Status::Pass } else { Status::Fail },
            id: c.id,
            witness: c.witness,
            ms,
        }));
    }

    /// Skipped checks do not count against the report.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}\n\nseed {} · samples {} · schema v{}\n\n", self.suite, self.seed, self.samples, self.version);
        s.push_str("| status | check | witness |\n|---|---|---|\n");
        for c in &self.checks {
            let st = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            s.push_str(&format!("| {st} | `{}` | {} |\n", c.id, c.witness.replace('|', "\\|")));
        }
        let fails = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        s.push_str(&format!("\n{} checks, {} failed: {}\n", self.checks.len(), fails, if fails == 0 { "PASS" } else { "FAIL" }));
        s
    }
}
