//! Structured pass/fail reports shared by the verifiers.

use std::fmt;

use serde::Serialize;

/// Counterexamples kept per check; the failure count is never truncated.
pub const MAX_COUNTEREXAMPLES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub counterexamples: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { subject: subject.into(), checks: Vec::new() }
    }

    /// Records one check from `(ok, description)` cases; descriptions are only built for failures.
    pub fn check<I, F>(&mut self, name: impl Into<String>, cases: I) -> bool
    where
        I: IntoIterator<Item = (bool, F)>,
        F: FnOnce() -> String,
    {
        let mut check = Check { name: name.into(), checked: 0, failures: 0, counterexamples: Vec::new() };
        for (ok, describe) in cases {
            check.checked += 1;
            if !ok {
                check.failures += 1;
                if check.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    check.counterexamples.push(describe());
                }
            }
        }
        let passed = check.passed();
        self.checks.push(check);
        passed
    }

    /// Single-case check.
    pub fn assert(&mut self, name: impl Into<String>, ok: bool, describe: impl FnOnce() -> String) -> bool {
        self.check(name, [(ok, describe)])
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            let status = if c.passed() { "ok  " } else { "FAIL" };
            writeln!(f, "  {status} {} ({} checked, {} failed)", c.name, c.checked, c.failures)?;
            for example in &c.counterexamples {
                writeln!(f, "         {example}")?;
            }
        }
        write!(f, "{}", if self.passed() { "all checks passed" } else { "verification FAILED" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_truncation() {
        let mut r = VerificationReport::new("demo");
        assert!(!r.check("evens", (0..10).map(|i| (i % 2 == 0 || i > 100, move || format!("{i} is odd")))));
        r.assert("trivial", true, String::new);
        let evens = r.get("evens").unwrap();
        assert_eq!((evens.checked, evens.failures, evens.counterexamples.len()), (10, 5, 5));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r.to_string().contains("FAIL evens"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["checks"][1]["name"], "trivial");
    }
}
