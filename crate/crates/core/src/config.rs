/// Search bounds and budgets shared by classification, certification and
/// verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Global exponent bound for radical membership searches.
    pub bound: u32,
    /// Range `1..=n_check` of the normality obstruction loop.
    pub n_check: u32,
    /// Largest accepted X-degree of an input polynomial.
    pub max_degree: usize,
    /// Largest `m` tried for `P^m` principal.
    pub class_number_bound: u32,
    /// Candidate factors examined by exhaustive irreducibility fallbacks.
    pub factor_budget: u64,
    /// Elements enumerated by the brute-force oracle.
    pub oracle_budget: u128,
    /// Seed for randomized spot checks.
    pub seed: u64,
    pub spot_checks: usize,
}

pub const ORACLE_BUDGET_VAR: &str = "SETCI_ORACLE_BUDGET";

impl Default for Config {
    fn default() -> Self {
        Config {
            bound: 64,
            n_check: 16,
            max_degree: 64,
            class_number_bound: 12,
            factor_budget: 1 << 16,
            oracle_budget: 1 << 18,
            seed: 0,
            spot_checks: 8,
        }
    }
}

impl Config {
    /// Defaults, with the oracle budget taken from the environment when set.
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        if let Some(b) = std::env::var(ORACLE_BUDGET_VAR).ok().and_then(|v| v.trim().parse().ok()) {
            cfg.oracle_budget = b;
        }
        cfg
    }
}
