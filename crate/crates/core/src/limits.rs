/// Caps on the combinatorial searches.
///
/// Every search that can blow up checks one of these and fails with a budget
/// error instead of running away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of distinct words visited by one orbit search.
    pub max_orbit: usize,
    /// Maximum number of entries held by a memoization cache.
    pub max_cache: usize,
    /// Maximum number of candidate subsets tested by one deletion-set query.
    pub max_subsets: u64,
    /// Deletion sets up to this size are checked exhaustively by
    /// `verify_after_dyer`; larger ones are sampled.
    pub after_dyer_max: usize,
}

impl SearchLimits {
    pub const DEFAULT_MAX_ORBIT: usize = 2_000_000;
    pub const DEFAULT_MAX_CACHE: usize = 1_000_000;
    pub const DEFAULT_MAX_SUBSETS: u64 = 200_000_000;
    pub const DEFAULT_AFTER_DYER_MAX: usize = 12;
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_orbit: Self::DEFAULT_MAX_ORBIT,
            max_cache: Self::DEFAULT_MAX_CACHE,
            max_subsets: Self::DEFAULT_MAX_SUBSETS,
            after_dyer_max: Self::DEFAULT_AFTER_DYER_MAX,
        }
    }
}
