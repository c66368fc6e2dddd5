//! Multinomial and hypergeometric draws.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finstoch::{chain, compose, copy_kernel, power, FinSet, Kernel};
use crate::multiset::{acc_kernel, dd_kernel};
use crate::rat::{binomial, factorial, Rat};

/// `mn[K](f) = acc ∘ f^K ∘ δ[K] : X → M[K](Y)`.
pub fn multinomial_kernel(f: &Kernel, k: usize) -> Kernel {
    chain(&[
        &copy_kernel(f.dom(), k),
        &power(f, k),
        &acc_kernel(f.cod(), k),
    ])
    .expect("well typed")
}

/// Closed form of `mn[K](f)`: `K!/∏φ(y)! · ∏ f(x)(y)^φ(y)`.
pub fn multinomial_closed_form(f: &Kernel, k: usize) -> Kernel {
    let y = f.cod().clone();
    let cod = FinSet::multisets(&y, k);
    let c = cod.clone();
    let src = f.clone();
    let kfact = factorial(k as u64);
    Kernel::lazy(f.dom(), &cod, &[f], move |x| {
        let dense = src.row_dist(x).weights();
        let mut row = Vec::new();
        for j in 0..c.len() {
            let counts = c.counts_of(j);
            let mut w = Rat::one();
            let mut denom = BigInt::one();
            for (p, &m) in dense.iter().zip(counts) {
                if m > 0 {
                    if p.is_zero() {
                        w = Rat::zero();
                        break;
                    }
                    w *= num_traits::pow(p.clone(), m as usize);
                    denom *= factorial(m as u64);
                }
            }
            if !w.is_zero() {
                row.push((j, w * Rat::new(kfact.clone(), denom)));
            }
        }
        row
    })
}

/// Closed form of `hg[L,K] : M[L](X) → M[K](X)`:
/// `∏ C(ψ(x), φ(x)) / C(L, K)`.
pub fn hypergeometric_kernel(x: &FinSet, l: usize, k: usize) -> Result<Kernel> {
    if l < k {
        return Err(Error::TooManyDraws { draws: k, size: l });
    }
    let from = FinSet::multisets(x, l);
    let to = FinSet::multisets(x, k);
    let (src, dst) = (from.clone(), to.clone());
    let total = binomial(l as u64, k as u64);
    Ok(Kernel::lazy(&from, &to, &[], move |i| {
        let urn = src.counts_of(i);
        let mut row = Vec::new();
        for j in 0..dst.len() {
            let draw = dst.counts_of(j);
            if draw.iter().zip(urn).any(|(d, u)| d > u) {
                continue;
            }
            let ways = draw.iter().zip(urn).fold(BigInt::one(), |acc, (&d, &u)| {
                acc * binomial(u as u64, d as u64)
            });
            row.push((j, Rat::new(ways, total.clone())));
        }
        row
    }))
}

/// `hg[L,K]` as `L−K` iterated draw-and-delete steps.
pub fn hypergeometric_composite(x: &FinSet, l: usize, k: usize) -> Result<Kernel> {
    hypergeometric_with(x, l, k, &|x, m| dd_kernel(x, m))
}

/// Iterated draw-and-delete built from a caller-supplied `DD`.
pub fn hypergeometric_with(
    x: &FinSet,
    l: usize,
    k: usize,
    dd: &dyn Fn(&FinSet, usize) -> Kernel,
) -> Result<Kernel> {
    if l < k {
        return Err(Error::TooManyDraws { draws: k, size: l });
    }
    let mut acc = Kernel::identity(&FinSet::multisets(x, l));
    for m in (k..l).rev() {
        acc = compose(&dd(x, m), &acc)?;
    }
    Ok(acc)
}
