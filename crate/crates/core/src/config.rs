/// Precision knobs and resource caps shared by the library and the CLI.
///
/// Every field has a default; `Config::default()` is what a bare CLI run uses.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Quadrature nodes for equilibrium-measure averages (power of two).
    pub n_nodes: usize,
    /// Grid size for curve tracing and sup-norm evaluation.
    pub n_theta: usize,
    /// Relative correction threshold for the root finder.
    pub root_tol: f64,
    /// Iteration cap for the root finder.
    pub root_max_iter: usize,
    /// Largest cyclotomic index that may be generated.
    pub cyclotomic_cap: u64,
    /// Largest degree accepted by integer factorization.
    pub factor_degree_cap: usize,
    /// Candidate cap for `no_sets_below_one` and `lehmer_scan`.
    pub scan_cap: u128,
    /// Candidate cap for minimal-height searches.
    pub search_cap: u128,
    /// Safety rail for cyclotomic index searches.
    pub max_index: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n_nodes: 1 << 12,
            n_theta: 1 << 12,
            root_tol: 1e-14,
            root_max_iter: 200,
            cyclotomic_cap: 10_000,
            factor_degree_cap: 24,
            scan_cap: 10_000_000,
            search_cap: 100_000_000,
            max_index: 300,
        }
    }
}
