//! Classical Markov and Lagrange spectra.

mod cf;
mod markov;
mod surd;

pub use cf::{
    cf_eval, convergents, lagrange_number, lagrange_with_argmax, periodic_value,
    ContinuedFraction,
};
pub use markov::{
    classical_lagrange_below_3, markov_lagrange_value, markov_periods, markov_route_agreement,
    markov_triples, MarkovTriple,
};
pub use surd::QuadraticSurd;
