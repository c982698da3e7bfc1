//! Structured pass/fail records shared by the oracle, sampler and verifier.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Which identity or lemma a check verifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    Eq1,
    Eq2,
    Lemma2,
    Lemma3,
    Thm1Rows,
    Cor1Part1,
    Cor1Part2,
    CounterNilpotent,
    IrreducibleProduct,
    WellknownIdentity,
}

impl Anchor {
    pub fn as_str(self) -> &'static str {
        match self {
            Anchor::Eq1 => "eq1",
            Anchor::Eq2 => "eq2",
            Anchor::Lemma2 => "lemma2",
            Anchor::Lemma3 => "lemma3",
            Anchor::Thm1Rows => "thm1-rows",
            Anchor::Cor1Part1 => "cor1-part1",
            Anchor::Cor1Part2 => "cor1-part2",
            Anchor::CounterNilpotent => "counter-nilpotent",
            Anchor::IrreducibleProduct => "irreducible-product",
            Anchor::WellknownIdentity => "wellknown-identity",
        }
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The enumeration budget was too small to run the check.
    Refused,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Exact,
    Statistical,
}

/// First offending location plus the competing values, as exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub location: String,
    pub values: BTreeMap<String, String>,
}

impl Mismatch {
    pub fn new(location: impl Into<String>) -> Self {
        Mismatch {
            location: location.into(),
            values: BTreeMap::new(),
        }
    }

    pub fn value(mut self, name: &str, v: impl fmt::Display) -> Self {
        self.values.insert(name.to_string(), v.to_string());
        self
    }
}

/// One verification result. `status` is `pass` exactly when `detail` is absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub anchor: Anchor,
    pub kind: CheckKind,
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Mismatch>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check_name: impl Into<String>, anchor: Anchor) -> Self {
        VerificationReport {
            check_name: check_name.into(),
            anchor,
            kind: CheckKind::Exact,
            parameters: BTreeMap::new(),
            status: Status::Pass,
            detail: None,
            notes: Vec::new(),
        }
    }

    pub fn statistical(mut self) -> Self {
        self.kind = CheckKind::Statistical;
        self
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Records the first failure; later calls keep the earlier mismatch.
    pub fn fail(mut self, mismatch: Mismatch) -> Self {
        if self.detail.is_none() {
            self.status = Status::Fail;
            self.detail = Some(mismatch);
        }
        self
    }

    pub fn refuse(mut self, reason: impl fmt::Display) -> Self {
        self.status = Status::Refused;
        self.detail = Some(Mismatch::new("budget").value("reason", reason));
        self
    }

    pub fn with_outcome(self, mismatch: Option<Mismatch>) -> Self {
        match mismatch {
            Some(m) => self.fail(m),
            None => self,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Refused => "REFUSED",
        };
        write!(f, "[{status}] {} ({})", self.check_name, self.anchor)?;
        if self.kind == CheckKind::Statistical {
            write!(f, " [statistical]")?;
        }
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if !params.is_empty() {
            write!(f, " {}", params.join(" "))?;
        }
        if let Some(d) = &self.detail {
            write!(f, "\n    at {}:", d.location)?;
            for (k, v) in &d.values {
                write!(f, " {k}={v}")?;
            }
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}
