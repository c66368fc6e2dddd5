//! Executable law checks. Each law is a pair of kernels that must agree
//! exactly on every instance of a bounded grid.

mod grid;
mod ops;
mod registry;
mod runner;

pub use grid::{
    grid_permutations, grid_series, instances, make_kernel, Dim, GridSpec, Instance, KernelKind,
};
pub use ops::{perturb, Corruption, Mutation, Ops, Target};
pub use registry::law_registry;
pub use runner::{check_law, run_laws, LawReport, Report};

use crate::error::Result;
use crate::finstoch::Kernel;

/// A law: for every instance, `build` yields two kernels that must be equal.
#[derive(Clone, Copy)]
pub struct Law {
    pub id: &'static str,
    /// The equation, in symbols.
    pub anchor: &'static str,
    pub dims: &'static [Dim],
    pub applies: fn(&Instance) -> bool,
    pub build: fn(&Instance, &Ops) -> Result<(Kernel, Kernel)>,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} [{}]", self.id, self.anchor)
    }
}
