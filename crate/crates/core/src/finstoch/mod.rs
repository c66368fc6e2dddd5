//! The ambient category: finite sets, exact distributions and stochastic
//! kernels, with tensor, copy/discard, coproducts, uniform states and
//! convex sums.

mod dist;
mod finset;
mod kernel;
mod perm;
mod series;
mod structure;

pub use dist::Dist;
pub(crate) use finset::decode_tuple;
pub use finset::{FinSet, Label};
pub(crate) use kernel::normalize_row;
pub use kernel::{chain, compose, kernel_equal, power, tensor, Kernel, Row};
pub use perm::Permutation;
pub use series::{fractional_series, series_bullet, uniform_state, ConvexSeries};
pub use structure::{
    codiagonal, convex_sum, coproduct_map, coprojection, copy_kernel, copy_pair, cotuple,
    discard_kernel, drop_coordinate, fst, is_deterministic, permutation_kernel, projection_kernel,
    snd, swap,
};

/// `dirac(X, x)`: the point mass at `x`.
pub fn dirac(x: &FinSet, label: &Label) -> crate::Result<Dist> {
    Dist::dirac(x, label)
}

/// `make_finset`: a set of atoms in the given order.
pub fn make_finset<S: AsRef<str>>(labels: &[S]) -> crate::Result<FinSet> {
    FinSet::atoms(labels)
}
