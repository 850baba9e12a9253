/// Caps that bound the size of enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest Weyl group that will be enumerated element by element.
    pub weyl_group_cap: usize,
    /// Largest number of complement roots whose subsets are enumerated.
    pub subset_cap: usize,
    /// Largest number of candidate weights a shell enumeration may scan.
    pub candidate_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            weyl_group_cap: 1_000_000,
            subset_cap: 24,
            candidate_cap: 10_000_000,
        }
    }
}
