//! Subshifts of finite type and their symbolic machinery.

pub mod distance;
pub mod entropy;
pub mod factors;
pub mod sequence;
pub mod sft;

pub use distance::{bracket, one_sided_distance, sequence_distance};
pub use entropy::{entropy, graph_entropy, EntropyBound};
pub use factors::{factors, subhorseshoe_from_factors, BlockRecoding};
pub use sequence::{
    is_primitive, least_rotation, primitive_period, BiSequence, Direction, OneSidedSequence,
    PeriodicSequence, SymbolView, Word,
};
pub use sft::{Sft, SftDocument, Transitivity};
