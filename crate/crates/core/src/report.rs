//! Pass/fail records shared by the theory checkers and the verifier.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub pass: bool,
    /// Always present on failure.
    pub witness: Option<Value>,
}

impl Claim {
    pub fn holds() -> Claim {
        Claim {
            pass: true,
            witness: None,
        }
    }

    pub fn fails(witness: Value) -> Claim {
        Claim {
            pass: false,
            witness: Some(witness),
        }
    }

    /// The witness closure only runs when `pass` is false.
    pub fn check(pass: bool, witness: impl FnOnce() -> Value) -> Claim {
        if pass {
            Claim::holds()
        } else {
            Claim::fails(witness())
        }
    }

    /// Passes with an informational payload attached.
    pub fn holds_with(note: Value) -> Claim {
        Claim {
            pass: true,
            witness: Some(note),
        }
    }
}

/// Named claims checked for a single order `i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub order: usize,
    pub claims: BTreeMap<String, Claim>,
}

pub type IdentityReport = ClaimReport;
pub type LemmaReport = ClaimReport;

impl ClaimReport {
    pub fn new(order: usize) -> ClaimReport {
        ClaimReport {
            order,
            claims: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, claim: Claim) {
        let name = name.into();
        let previous = self.claims.insert(name.clone(), claim);
        assert!(previous.is_none(), "claim {name} recorded twice");
    }

    pub fn all_pass(&self) -> bool {
        self.claims.values().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&String, &Claim)> {
        self.claims.iter().filter(|(_, c)| !c.pass)
    }
}
