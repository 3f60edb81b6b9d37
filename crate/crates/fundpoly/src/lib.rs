//! Analysis of binary linear codes through their Tanner graphs.
//!
//! The crate builds the fundamental polytope and cone of a parity-check
//! matrix in exact rational arithmetic, realizes pseudo-codewords as
//! codewords of finite graph covers, evaluates pseudo-weights and the
//! canonical-completion bound, and runs ML, LP, sum-product and min-sum
//! decoders on the same log-likelihood ratios.

pub mod canonical_completion;
pub mod catalog;
pub mod channels;
pub mod code_model;
pub mod decoders;
mod error;
pub mod fundamental_polytope;
pub mod gf2;
pub mod graph_covers;
mod limits;
pub(crate) mod par;
pub mod pseudoweights;
pub mod rational_geometry;
pub mod regions;

pub use error::{Error, Result};
pub use limits::Limits;
