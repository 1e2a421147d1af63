use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// A reproducible counterexample: basis indices plus the offending vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<F> {
    pub indices: Vec<usize>,
    pub defect: Vec<F>,
    pub description: String,
}

/// Outcome of one exhaustive check.
#[derive(Clone, Debug, PartialEq)]
pub struct Report<F> {
    pub check: String,
    pub status: Status,
    /// Number of basis tuples (or items) examined.
    pub checked: usize,
    pub witness: Option<Witness<F>>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl<F> Report<F> {
    pub fn pass(check: impl Into<String>, checked: usize) -> Self {
        Report { check: check.into(), status: Status::Pass, checked, witness: None, notes: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn fail(check: impl Into<String>, checked: usize, witness: Witness<F>) -> Self {
        Report {
            check: check.into(),
            status: Status::Fail,
            checked,
            witness: Some(witness),
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn error(check: impl Into<String>, message: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            status: Status::Error,
            checked: 0,
            witness: None,
            notes: vec![message.into()],
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn timed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }
}

pub(crate) fn timed<F>(f: impl FnOnce() -> Report<F>) -> Report<F> {
    let start = std::time::Instant::now();
    let report = f();
    report.timed(start.elapsed())
}
