//! Orbit values, window graphs and the minimum of the spectrum.

mod bottleneck;
pub mod graph;
pub mod spectrum;
pub mod sublevel;
pub mod values;

pub use graph::{Edge, WindowGraph};
pub use spectrum::{
    isolation_gap, lyndon_cycles, min_markov, periodic_spectrum_sample, SampleValue,
    SpectrumReport,
};
pub use sublevel::{curve_csv, entropy_curve, sublevel, to_sft, CurvePoint, Sublevel};
pub use values::{lagrange_value, markov_value, periodic_markov_value, CycleCertificate};

/// Tuning knobs shared by the engine routines.
#[derive(Clone, Debug, PartialEq)]
pub struct EngineConfig {
    /// Tolerance for entropy bounds.
    pub tol: f64,
    /// Maximum number of candidate windows while building a graph.
    pub edge_budget: usize,
    /// Depth added to the potential per refinement.
    pub refine_step: usize,
    /// Largest window radius refinement may reach.
    pub max_depth: usize,
    /// Maximum number of periodic orbits enumerated for sampling.
    pub sample_budget: usize,
    /// Period bound for the orbits used to cap the graph.
    pub cap_sample_period: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            tol: 1e-9,
            edge_budget: 1 << 21,
            refine_step: 4,
            max_depth: 40,
            sample_budget: 1 << 20,
            cap_sample_period: 6,
        }
    }
}
