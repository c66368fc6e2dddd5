use num_bigint::BigInt;
use num_traits::One;

use super::dist::Dist;
use super::finset::FinSet;
use super::kernel::{chain, Kernel};
use super::structure::{codiagonal, coproduct_map};
use crate::error::{Error, Result};
use crate::rat::Rat;

/// A convex series `r : 1 → n`: `n` nonnegative weights summing to one.
///
/// Same content as a [`Dist`] over the interpreted number `n`; kept as its
/// own type because it plays the role of mixing coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexSeries(Dist);

impl ConvexSeries {
    pub fn new(weights: Vec<Rat>) -> Result<ConvexSeries> {
        if weights.is_empty() {
            return Err(Error::ZeroSize("a convex series"));
        }
        Ok(ConvexSeries(Dist::new(
            &FinSet::number(weights.len()),
            weights,
        )?))
    }

    pub fn from_dist(d: Dist) -> Result<ConvexSeries> {
        let n = d.carrier().len();
        if d.carrier() != &FinSet::number(n) {
            return Err(Error::TypeMismatch(format!(
                "a convex series lives on a number, not {}",
                d.carrier()
            )));
        }
        Ok(ConvexSeries(d))
    }

    pub fn len(&self) -> usize {
        self.0.carrier().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weight(&self, i: usize) -> Rat {
        self.0.weight(i)
    }

    pub fn weights(&self) -> Vec<Rat> {
        self.0.weights()
    }

    pub fn as_dist(&self) -> &Dist {
        &self.0
    }

    pub fn as_state(&self) -> Kernel {
        Kernel::state(&self.0)
    }
}

/// `unif_n`, the uniform state on the interpreted number `n`.
pub fn uniform_state(n: usize) -> Result<ConvexSeries> {
    if n == 0 {
        return Err(Error::ZeroSize("a uniform state"));
    }
    let w = Rat::new(BigInt::one(), BigInt::from(n));
    ConvexSeries::new(vec![w; n])
}

/// `r • s` over `n·m`, weight `r_i·s_j` at row-major position `(i, j)`.
pub fn series_bullet(r: &ConvexSeries, s: &ConvexSeries) -> ConvexSeries {
    let mut w = Vec::with_capacity(r.len() * s.len());
    for ri in r.weights() {
        for sj in s.weights() {
            w.push(&ri * &sj);
        }
    }
    ConvexSeries::new(w).expect("products of convex series are convex")
}

/// The fractional series `(n_1/n, …, n_k/n)`, built by pushing `unif_n`
/// through the sum of codiagonals `∇_{n_1} + … + ∇_{n_k}`.
pub fn fractional_series(nums: &[usize]) -> Result<ConvexSeries> {
    let n: usize = nums.iter().sum();
    if n == 0 {
        return Err(Error::ZeroSize("a fractional series"));
    }
    let blocks: Vec<FinSet> = nums.iter().map(|&m| FinSet::number(m)).collect();
    let split = FinSet::coproduct(&blocks);
    let codiagonals: Vec<Kernel> = nums.iter().map(|&m| codiagonal(m)).collect();
    let ones = FinSet::coproduct(&vec![FinSet::unit(); nums.len()]);
    let k = FinSet::number(nums.len());
    let composite = chain(&[
        &uniform_state(n)?.as_state(),
        &Kernel::reindex(&FinSet::number(n), &split)?,
        &coproduct_map(&codiagonals),
        &Kernel::reindex(&ones, &k)?,
    ])?;
    ConvexSeries::from_dist(composite.as_dist()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn uniform_weights() {
        assert_eq!(uniform_state(2).unwrap().weights(), vec![rat(1, 2); 2]);
        assert_eq!(uniform_state(1).unwrap().weights(), vec![rat(1, 1)]);
        assert_eq!(uniform_state(6).unwrap().weights(), vec![rat(1, 6); 6]);
        assert!(uniform_state(0).is_err());
    }

    #[test]
    fn bullet_products() {
        let u6 = series_bullet(&uniform_state(2).unwrap(), &uniform_state(3).unwrap());
        assert_eq!(u6, uniform_state(6).unwrap());
        let r = ConvexSeries::new(vec![rat(1, 3), rat(2, 3)]).unwrap();
        let one = uniform_state(1).unwrap();
        assert_eq!(series_bullet(&r, &one), r);
        let s = uniform_state(2).unwrap();
        assert_eq!(
            series_bullet(&r, &s).weights(),
            vec![rat(1, 6), rat(1, 6), rat(1, 3), rat(1, 3)]
        );
        // s • r is the transpose reindexing of r • s.
        let rs = series_bullet(&r, &s).weights();
        let sr = series_bullet(&s, &r).weights();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(rs[i * 2 + j], sr[j * 2 + i]);
            }
        }
    }

    #[test]
    fn fractional_series_values() {
        assert_eq!(
            fractional_series(&[1, 3, 2]).unwrap().weights(),
            vec![rat(1, 6), rat(1, 2), rat(1, 3)]
        );
        assert_eq!(fractional_series(&[1]).unwrap().weights(), vec![rat(1, 1)]);
        assert_eq!(
            fractional_series(&[2, 2]).unwrap(),
            uniform_state(2).unwrap()
        );
        // A zero numerator gives a zero weight, not an error.
        assert_eq!(
            fractional_series(&[0, 1]).unwrap().weights(),
            vec![rat(0, 1), rat(1, 1)]
        );
        assert!(fractional_series(&[0, 0]).is_err());
        assert!(fractional_series(&[]).is_err());
    }
}
