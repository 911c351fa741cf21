use serde::{Deserialize, Serialize};

/// Resource limits shared by every scan and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ceilings {
    /// Largest `x` accepted by the segmented prime counter.
    pub sieve: u64,
    /// Largest population (`b^ℓ` or `q^{mℓ}`) an exhaustive scan may visit.
    pub scan: u64,
    /// Largest integer factored by trial division.
    pub factor: u64,
    /// Largest polynomial degree accepted by `factor`.
    pub poly_degree: usize,
    /// Candidate budget for chain enumeration.
    pub node_budget: u64,
}

impl Default for Ceilings {
    fn default() -> Self {
        Ceilings {
            sieve: 1_000_000_000,
            scan: 10_000_000,
            factor: 1_000_000_000_000,
            poly_degree: 24,
            node_budget: 10_000_000,
        }
    }
}

impl Ceilings {
    pub fn with_scan(mut self, scan: u64) -> Self {
        self.scan = scan;
        self
    }

    pub fn with_sieve(mut self, sieve: u64) -> Self {
        self.sieve = sieve;
        self
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }
}
