//! Tunable limits shared by the construction, factorization, and closure
//! engines.

/// Seed for the ChaCha8 stream used by equal-degree splitting. Fixed so
/// that factorizations — and everything built on them — are reproducible
/// run to run.
pub const DEFAULT_EDF_SEED: u64 = 0x4653_4554; // "FSET"

/// Default bound on worklist iterations during closure computation.
pub const DEFAULT_ITER_CAP: u64 = 10_000;

/// Default iteration budget for Pollard rho (Brent variant) when factoring
/// integers such as p^m - 1.
pub const DEFAULT_RHO_BUDGET: u64 = 4_000_000;

/// Default degree cap: 2 * 3^7 = 4374 over F_2, 2 * 3^5 = 486 otherwise.
///
/// These are the largest tower degrees the default test battery certifies;
/// they keep a full verification under a minute with schoolbook
/// arithmetic. Raise the cap to go deeper.
pub fn default_degree_cap(p: u64) -> usize {
    if p == 2 {
        4374
    } else {
        486
    }
}

/// Effort limits for construction and closure. `degree_cap` bounds the
/// degree of any polynomial that may be built or expanded, `iter_cap`
/// bounds closure worklist iterations, `edf_seed` fixes the equal-degree
/// splitting PRNG, and `rho_budget` bounds integer factorization effort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub degree_cap: usize,
    pub iter_cap: u64,
    pub edf_seed: u64,
    pub rho_budget: u64,
}

impl Limits {
    /// Default limits for the given prime.
    pub fn for_prime(p: u64) -> Self {
        Limits {
            degree_cap: default_degree_cap(p),
            iter_cap: DEFAULT_ITER_CAP,
            edf_seed: DEFAULT_EDF_SEED,
            rho_budget: DEFAULT_RHO_BUDGET,
        }
    }
}
