//! Exact finite Markov categories and the multiset constructions built on
//! them: accumulation, arrangement, draw-and-delete, multinomial and
//! hypergeometric draws, multiset sums and zips, and splitting.

pub mod algebra;
pub mod draws;
pub mod error;
pub mod finstoch;
pub mod laws;
pub mod multiset;
pub mod rat;
pub mod split;
pub mod text;

pub use error::{Error, Result};
pub use finstoch::{ConvexSeries, Dist, FinSet, Kernel, Label, Permutation};
pub use multiset::{Multiset, MultisetSpace};
pub use rat::Rat;
