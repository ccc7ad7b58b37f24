//! Verification reports: one entry per identity, with witnesses for failures.

use serde::Serialize;

use crate::value::LambdaValue;

/// Failing witnesses kept per check; the count of all failures is kept separately.
pub const MAX_WITNESSES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Generator names of the failing tuple.
    pub tuple: Vec<String>,
    /// The nonzero difference between the two sides.
    pub difference: LambdaValue,
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// Short name of the identity being checked, e.g. `jacobi`.
    pub tag: String,
    pub passed: bool,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, tag: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            tag: tag.into(),
            passed: true,
            failures: 0,
            witnesses: Vec::new(),
            note: None,
        }
    }

    /// A check whose verdict is a plain boolean with no polynomial witness.
    pub fn verdict(
        name: impl Into<String>,
        tag: impl Into<String>,
        passed: bool,
        note: Option<String>,
    ) -> Self {
        let mut c = Check::new(name, tag);
        c.passed = passed;
        c.failures = usize::from(!passed);
        c.note = note;
        c
    }

    /// Record the difference for one tuple; zero differences are ignored.
    pub fn record(&mut self, tuple: Vec<String>, difference: LambdaValue, target_names: &[String]) {
        if difference.is_zero() {
            return;
        }
        self.passed = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            let rendered = difference.render(target_names);
            self.witnesses.push(Witness {
                tuple,
                difference,
                rendered,
            });
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn fail(&mut self, note: impl Into<String>) {
        self.passed = false;
        self.failures += 1;
        self.note = Some(note.into());
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    /// Prefix every check name, for nesting sub-reports.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.name = format!("{prefix}.{}", c.name);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed_named(&self, name: &str) -> bool {
        self.get(name).map(|c| c.passed).unwrap_or(false)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        if failed.is_empty() {
            "all checks pass".to_string()
        } else {
            format!("failing: {}", failed.join(", "))
        }
    }

    pub fn to_json(&self) -> Vec<CheckJson> {
        self.checks.iter().map(CheckJson::from).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub tuple: Vec<String>,
    pub difference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub tag: String,
    pub status: &'static str,
    pub failures: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&Check> for CheckJson {
    fn from(c: &Check) -> Self {
        CheckJson {
            name: c.name.clone(),
            tag: c.tag.clone(),
            status: if c.passed { "pass" } else { "fail" },
            failures: c.failures,
            witnesses: c
                .witnesses
                .iter()
                .map(|w| WitnessJson {
                    tuple: w.tuple.clone(),
                    difference: w.rendered.clone(),
                })
                .collect(),
            note: c.note.clone(),
        }
    }
}
