//! Classical and dynamical Lagrange/Markov spectra for horseshoes modelled as
//! subshifts of finite type.
//!
//! The crate is organised bottom-up:
//!
//! * [`symbolic`]: alphabets, transition matrices, sequences, the shift
//!   metric, block recodings and entropy.
//! * [`classical`]: continued fractions, quadratic surds, Markov triples and
//!   the classical spectrum below 3.
//! * [`potentials`]: window potentials, the Gauss potential with rigorous
//!   truncation bounds, perturbations and injectivity diagnostics.
//! * [`engine`]: Markov and Lagrange values of orbits, the minimum of the
//!   Markov spectrum via minimum bottleneck cycles, sublevel sets and their
//!   entropy.
//! * [`prooflab`]: executable forms of the combinatorics used to show the
//!   minimum is attained at a periodic orbit.

pub mod classical;
pub mod engine;
pub mod error;
pub mod interval;
pub mod json;
pub mod potentials;
pub mod prooflab;
pub mod scc;
pub mod symbolic;

pub use error::{Error, Result};
pub use interval::{DyadicInterval, Interval, Truth};
