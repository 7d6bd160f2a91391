//! Structured validation reports shared by every validator.

use std::fmt;

/// Whether a finding invalidates its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    /// A relation fails; the input is invalid.
    Error,
    /// A convention is not followed but the input is still accepted.
    Warning,
}

/// One failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    /// Error or warning.
    pub severity: Severity,
    /// Short machine-readable tag, such as `mc` or `block-form`.
    pub kind: String,
    /// Index tuple the check concerns, if any.
    pub tuple: Option<Vec<usize>>,
    /// Cell, face or simplex label the check concerns, if any.
    pub cell: Option<String>,
    /// Bidegree `(p, q)` of the failing component, if any.
    pub bidegree: Option<(i64, i64)>,
    /// Number of nonzero entries of the residual (0 when not applicable).
    pub residual_nnz: usize,
    /// Human-readable explanation.
    pub detail: String,
}

impl Finding {
    /// An error finding with only a kind and a message.
    pub fn error(kind: &str, detail: impl Into<String>) -> Self {
        Finding {
            severity: Severity::Error,
            kind: kind.to_string(),
            tuple: None,
            cell: None,
            bidegree: None,
            residual_nnz: 0,
            detail: detail.into(),
        }
    }

    /// A warning finding with only a kind and a message.
    pub fn warning(kind: &str, detail: impl Into<String>) -> Self {
        Finding {
            severity: Severity::Warning,
            ..Finding::error(kind, detail)
        }
    }

    /// Sets the tuple.
    pub fn at_tuple(mut self, t: &[usize]) -> Self {
        self.tuple = Some(t.to_vec());
        self
    }

    /// Sets the cell label.
    pub fn at_cell(mut self, c: impl Into<String>) -> Self {
        self.cell = Some(c.into());
        self
    }

    /// Sets the bidegree.
    pub fn with_bidegree(mut self, p: i64, q: i64) -> Self {
        self.bidegree = Some((p, q));
        self
    }

    /// Sets the residual size.
    pub fn with_nnz(mut self, nnz: usize) -> Self {
        self.residual_nnz = nnz;
        self
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev} {}", self.kind)?;
        if let Some(t) = &self.tuple {
            write!(f, " tuple={t:?}")?;
        }
        if let Some(c) = &self.cell {
            write!(f, " cell={c}")?;
        }
        if let Some((p, q)) = self.bidegree {
            write!(f, " bidegree=({p},{q})")?;
        }
        if self.residual_nnz > 0 {
            write!(f, " nnz={}", self.residual_nnz)?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// An ordered list of findings; valid when it holds no errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    findings: Vec<Finding>,
}

impl Report {
    /// The empty report.
    pub fn new() -> Self {
        Report::default()
    }

    /// Appends a finding.
    pub fn push(&mut self, f: Finding) {
        self.findings.push(f);
    }

    /// Appends every finding of another report.
    pub fn extend(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    /// Appends every finding of another report, tagging each with a cell prefix.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut f in other.findings {
            f.cell = Some(match f.cell {
                Some(c) => format!("{prefix}/{c}"),
                None => prefix.to_string(),
            });
            self.findings.push(f);
        }
    }

    /// All findings in order.
    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    /// Error findings only.
    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    /// Warning findings only.
    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
    }

    /// True when no error was recorded.
    pub fn is_valid(&self) -> bool {
        self.errors().next().is_none()
    }

    /// Number of error findings.
    pub fn error_count(&self) -> usize {
        self.errors().count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}
