use num_traits::{One, Zero};

use super::finset::{FinSet, Label};
use super::kernel::{normalize_row, Row};
use crate::error::{Error, Result};
use crate::rat::{format_rat, Rat};

/// A finitely supported probability distribution with exact weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist {
    carrier: FinSet,
    support: Row,
}

impl Dist {
    /// One weight per carrier element, in carrier order.
    pub fn new(carrier: &FinSet, weights: Vec<Rat>) -> Result<Dist> {
        if weights.len() != carrier.len() {
            return Err(Error::LengthMismatch {
                expected: carrier.len(),
                got: weights.len(),
            });
        }
        Dist::from_support(carrier, weights.into_iter().enumerate().collect())
    }

    /// Sparse constructor; entries may come in any order.
    pub fn from_support(carrier: &FinSet, entries: Vec<(usize, Rat)>) -> Result<Dist> {
        let mut sum = Rat::zero();
        for (i, w) in &entries {
            if *i >= carrier.len() {
                return Err(Error::IndexOutOfRange {
                    index: *i,
                    len: carrier.len(),
                });
            }
            if *w < Rat::zero() {
                return Err(Error::NegativeWeight(format_rat(w)));
            }
            sum += w;
        }
        if !sum.is_one() {
            return Err(Error::NotNormalized(format_rat(&sum)));
        }
        Ok(Dist::from_support_unchecked(
            carrier,
            normalize_row(entries),
        ))
    }

    pub(crate) fn from_support_unchecked(carrier: &FinSet, support: Row) -> Dist {
        Dist {
            carrier: carrier.clone(),
            support,
        }
    }

    /// Labelled weights; labels must be distinct elements of `carrier`.
    pub fn from_labels(carrier: &FinSet, entries: &[(Label, Rat)]) -> Result<Dist> {
        let mut out = Vec::with_capacity(entries.len());
        let mut seen = vec![false; carrier.len()];
        for (l, w) in entries {
            let i = carrier
                .index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
            out.push((i, w.clone()));
        }
        Dist::from_support(carrier, out)
    }

    /// The point mass at `x`.
    pub fn dirac(carrier: &FinSet, x: &Label) -> Result<Dist> {
        let i = carrier
            .index_of(x)
            .ok_or_else(|| Error::UnknownLabel(x.to_string()))?;
        Ok(Dist::dirac_index(carrier, i))
    }

    pub fn dirac_index(carrier: &FinSet, i: usize) -> Dist {
        assert!(i < carrier.len());
        Dist::from_support_unchecked(carrier, vec![(i, Rat::one())])
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    /// Nonzero entries in carrier order.
    pub fn support(&self) -> &[(usize, Rat)] {
        &self.support
    }

    pub fn weight(&self, i: usize) -> Rat {
        match self.support.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(p) => self.support[p].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Dense weights, one per carrier element.
    pub fn weights(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.carrier.len()];
        for (i, w) in &self.support {
            out[*i] = w.clone();
        }
        out
    }

    pub fn is_point_mass(&self) -> bool {
        self.support.len() == 1
    }
}
