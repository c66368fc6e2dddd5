//! Fixed-size multisets `M[K](X)` as the quotient of `X^K` by all
//! permutations, together with the kernels living on it.

mod kernels;

use std::fmt;

pub use kernels::{
    acc_kernel, arr_kernel, arr_mediated, canonical_section, coequalizes, dd_kernel, dd_mediated,
    del_kernel, epsilon_kernel, flrn_kernel, flrn_mediated, mediate, mset_map, perm_kernel,
    perm_kernel_literal,
};

use crate::error::{Error, Result};
use crate::finstoch::{FinSet, Label};

/// A multiset over `base`, stored as one count per base element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiset {
    base: FinSet,
    counts: Vec<u32>,
}

impl Multiset {
    pub fn new(base: &FinSet, counts: Vec<u32>) -> Result<Multiset> {
        if counts.len() != base.len() {
            return Err(Error::LengthMismatch {
                expected: base.len(),
                got: counts.len(),
            });
        }
        Ok(Multiset {
            base: base.clone(),
            counts,
        })
    }

    /// Builds from `(label, count)` pairs; repeated labels accumulate.
    pub fn from_labels(base: &FinSet, items: &[(Label, u32)]) -> Result<Multiset> {
        let mut counts = vec![0; base.len()];
        for (l, c) in items {
            let i = base
                .index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            counts[i] += c;
        }
        Ok(Multiset {
            base: base.clone(),
            counts,
        })
    }

    pub fn empty(base: &FinSet) -> Multiset {
        Multiset {
            base: base.clone(),
            counts: vec![0; base.len()],
        }
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, i: usize) -> u32 {
        self.counts[i]
    }

    pub fn size(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// Number of distinct elements.
    pub fn support_len(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// The sorted representative sequence, in base order.
    pub fn representative(&self) -> Vec<usize> {
        representative(&self.counts)
    }

    pub fn label(&self) -> Label {
        Label::Bag(
            self.counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (self.base.label(i), c as usize))
                .collect(),
        )
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

pub(crate) fn representative(counts: &[u32]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
        .collect()
}

/// The enumerated carrier `M[K](X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetSpace {
    set: FinSet,
}

impl MultisetSpace {
    pub fn base(&self) -> &FinSet {
        self.set.as_multisets().expect("multiset space").0
    }

    pub fn size(&self) -> usize {
        self.set.as_multisets().expect("multiset space").1
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn as_finset(&self) -> &FinSet {
        &self.set
    }

    pub fn get(&self, i: usize) -> Multiset {
        Multiset {
            base: self.base().clone(),
            counts: self.set.counts_of(i).to_vec(),
        }
    }

    pub fn index_of(&self, m: &Multiset) -> Option<usize> {
        if m.base() != self.base() {
            return None;
        }
        self.set.index_of_counts(m.counts())
    }

    pub fn elements(&self) -> impl Iterator<Item = Multiset> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }
}

/// `M[K](X)`, enumerated in canonical order.
pub fn multiset_space(x: &FinSet, k: usize) -> MultisetSpace {
    MultisetSpace {
        set: FinSet::multisets(x, k),
    }
}

/// Wraps an existing multiset-space carrier.
pub fn space_of(set: &FinSet) -> Result<MultisetSpace> {
    set.expect_multisets()?;
    Ok(MultisetSpace { set: set.clone() })
}

/// `acc` on a single sequence of base indices.
pub fn acc_of_seq(base: &FinSet, seq: &[usize]) -> Result<Multiset> {
    let mut counts = vec![0u32; base.len()];
    for &i in seq {
        if i >= base.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: base.len(),
            });
        }
        counts[i] += 1;
    }
    Ok(Multiset {
        base: base.clone(),
        counts,
    })
}

/// `acc` on a sequence of labels.
pub fn acc_of_labels(base: &FinSet, seq: &[Label]) -> Result<Multiset> {
    let idx = seq
        .iter()
        .map(|l| {
            base.index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    acc_of_seq(base, &idx)
}
