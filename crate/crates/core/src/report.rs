use std::fmt;

use serde::Serialize;

use crate::poly::{Poly, Variable};

/// One named identity residual; the identity holds when the residual is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    pub label: String,
    pub residual: String,
    pub zero: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub entries: Vec<ResidualEntry>,
}

impl ResidualReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push<V: Variable>(&mut self, label: impl Into<String>, residual: &Poly<V>) {
        self.entries.push(ResidualEntry {
            label: label.into(),
            residual: residual.to_string(),
            zero: residual.is_zero(),
        });
    }

    pub fn extend(&mut self, other: ResidualReport) {
        self.entries.extend(other.entries);
    }

    pub fn is_clean(&self) -> bool {
        self.entries.iter().all(|e| e.zero)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ResidualEntry> {
        self.entries.iter().filter(|e| !e.zero)
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{}: {}", e.label, e.residual)?;
        }
        Ok(())
    }
}
