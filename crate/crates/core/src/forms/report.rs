use serde::{Deserialize, Serialize};

/// Outcome of a verification routine. A report passes when none of its
/// witnesses is a mismatch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub mismatch: bool,
    /// Where the witness was taken, e.g. `facet 2 / facet 0`.
    pub at: String,
    pub detail: serde_json::Value,
}

impl Witness {
    pub fn ok(at: impl Into<String>, detail: serde_json::Value) -> Self {
        Self {
            mismatch: false,
            at: at.into(),
            detail,
        }
    }

    pub fn mismatch(at: impl Into<String>, detail: serde_json::Value) -> Self {
        Self {
            mismatch: true,
            at: at.into(),
            detail,
        }
    }
}

impl CheckReport {
    pub fn new(name: impl Into<String>, witnesses: Vec<Witness>) -> Self {
        Self {
            name: name.into(),
            passed: witnesses.iter().all(|w| !w.mismatch),
            witnesses,
        }
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.mismatch)
    }
}
