//! The label oracle and its probe ledger.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::geometry::{Label, LabeledPointSet};

/// Holds the hidden labels of one instance and meters probes.
///
/// The first probe of an id reveals its label and appends the id to the
/// ledger; probing it again returns the cached label at no cost (or fails when
/// auditing is enabled). `cost()` is always the ledger length.
#[derive(Clone, Debug)]
pub struct ProbeOracle {
    hidden: HashMap<u64, (Label, bool)>,
    ledger: Vec<u64>,
    budget: Option<usize>,
    audit: bool,
}

impl ProbeOracle {
    pub fn new(labels: impl IntoIterator<Item = (u64, Label)>) -> Self {
        ProbeOracle {
            hidden: labels.into_iter().map(|(id, l)| (id, (l, false))).collect(),
            ledger: Vec::new(),
            budget: None,
            audit: false,
        }
    }

    pub fn from_labeled(set: &LabeledPointSet) -> Self {
        Self::new(set.unlabeled().ids().iter().copied().zip(set.labels().iter().copied()))
    }

    /// Caps the number of distinct probes.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    /// Treat any repeated probe as an error.
    pub fn with_audit(mut self) -> Self {
        self.audit = true;
        self
    }

    pub fn probe(&mut self, id: u64) -> Result<Label> {
        let (label, revealed) = self.hidden.get_mut(&id).ok_or(Error::UnknownId(id))?;
        if *revealed {
            if self.audit {
                return Err(Error::RepeatedProbe(id));
            }
            return Ok(*label);
        }
        if let Some(budget) = self.budget {
            if self.ledger.len() >= budget {
                return Err(Error::BudgetExhausted { budget });
            }
        }
        *revealed = true;
        self.ledger.push(id);
        Ok(*label)
    }

    pub fn cost(&self) -> usize {
        self.ledger.len()
    }

    /// Revealed ids in probe order.
    pub fn ledger(&self) -> &[u64] {
        &self.ledger
    }

    pub fn is_revealed(&self, id: u64) -> bool {
        self.hidden.get(&id).is_some_and(|(_, r)| *r)
    }
}
