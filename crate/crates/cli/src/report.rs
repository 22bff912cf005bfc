//! Check reports and command failures.

use std::fmt;

use xalg_core::laws::Witnessed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub subject: String,
    pub verdict: Verdict,
    pub axiom: Option<String>,
    pub witness: Option<Vec<usize>>,
    pub message: Option<String>,
    /// Whether re-evaluating the failing law at the witness fails again.
    pub reproduced: Option<bool>,
    pub checks: u64,
}

impl CheckReport {
    pub fn pass(subject: &str) -> Self {
        CheckReport {
            subject: subject.to_owned(),
            verdict: Verdict::Pass,
            axiom: None,
            witness: None,
            message: None,
            reproduced: None,
            checks: 0,
        }
    }

    /// A failure whose axiom tag is `err`'s tag under `prefix`.
    pub fn fail<E: Witnessed + fmt::Display>(subject: &str, prefix: &str, err: &E, reproduced: bool) -> Self {
        let tag = err.tag();
        let axiom = if prefix.is_empty() { tag } else { format!("{prefix}.{tag}") };
        CheckReport {
            subject: subject.to_owned(),
            verdict: Verdict::Fail,
            axiom: Some(axiom),
            witness: Some(err.witness()),
            message: Some(err.to_string()),
            reproduced: Some(reproduced),
            checks: 0,
        }
    }

    /// A failure found outside the core checkers, such as a table comparison.
    pub fn violated(subject: &str, axiom: &str, witness: Vec<usize>, message: &str) -> Self {
        CheckReport {
            subject: subject.to_owned(),
            verdict: Verdict::Fail,
            axiom: Some(axiom.to_owned()),
            witness: Some(witness),
            message: Some(message.to_owned()),
            reproduced: Some(true),
            checks: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn with_checks(mut self, checks: u64) -> Self {
        self.checks = checks;
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subject: {}", self.subject)?;
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        };
        writeln!(f, "verdict: {verdict}")?;
        if let Some(a) = &self.axiom {
            writeln!(f, "axiom: {a}")?;
        }
        if let Some(w) = &self.witness {
            let parts: Vec<String> = w.iter().map(usize::to_string).collect();
            writeln!(f, "witness: [{}]", parts.join(", "))?;
        }
        if let Some(m) = &self.message {
            writeln!(f, "message: {m}")?;
        }
        if let Some(r) = self.reproduced {
            writeln!(f, "reproduced: {r}")?;
        }
        writeln!(f, "checks: {}", self.checks)
    }
}

/// Why a command could not produce a passing result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    /// Malformed input, unknown names, limits: exit code 2.
    Input(String),
    /// A structure failed its checker: exit code 1.
    Check(Box<CheckReport>),
}

impl Failure {
    pub fn input(msg: impl fmt::Display) -> Self {
        Failure::Input(msg.to_string())
    }

    pub fn check(report: CheckReport) -> Self {
        Failure::Check(Box::new(report))
    }
}
