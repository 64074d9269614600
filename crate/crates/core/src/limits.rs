/// Caps on the exhaustive paths. The closed-form paths are never capped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest modulus whose residues may be materialized as a subset.
    pub enumeration_cap: u64,
    /// Largest number of `(k-1)`-tuples the enumeration oracle may visit.
    pub enumeration_budget: u64,
    /// Largest modulus accepted by the convolution oracle.
    pub convolution_cap: u64,
}

impl Limits {
    pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;
    pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;
    pub const DEFAULT_CONVOLUTION_CAP: u64 = 4096;

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.enumeration_budget = budget;
        self
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: Self::DEFAULT_ENUMERATION_CAP,
            enumeration_budget: Self::DEFAULT_ENUMERATION_BUDGET,
            convolution_cap: Self::DEFAULT_CONVOLUTION_CAP,
        }
    }
}
