//! Splitting sequences and multisets over a coproduct `X + Y`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::msum_kernel;
use crate::error::Result;
use crate::finstoch::{
    chain, coproduct_map, coprojection, cotuple, decode_tuple, tensor, FinSet, Kernel,
};
use crate::multiset::{acc_kernel, mset_map};
use crate::rat::binomial;

/// `C(n+K−1, K)`, the number of size-`K` multisets over `n` elements.
pub fn multichoose(n: usize, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::from(1);
    }
    if n == 0 {
        return BigInt::zero();
    }
    binomial((n + k - 1) as u64, k as u64)
}

fn choose(n: usize, k: usize) -> usize {
    binomial(n as u64, k as u64)
        .to_usize()
        .expect("small binomial")
}

/// Rank of a tag pattern among those with the same number of ones, in
/// ascending order of the bit string read left to right.
fn pattern_rank(bits: &[bool]) -> usize {
    let mut ones = bits.iter().filter(|&&b| b).count();
    let mut rank = 0;
    for (p, &b) in bits.iter().enumerate() {
        if b {
            // Every pattern with a 0 here and the same prefix comes first.
            rank += choose(bits.len() - p - 1, ones);
            ones -= 1;
        }
    }
    rank
}

fn pattern_unrank(k: usize, mut ones: usize, mut rank: usize) -> Vec<bool> {
    let mut bits = Vec::with_capacity(k);
    for p in 0..k {
        let zero_first = choose(k - p - 1, ones);
        if rank < zero_first {
            bits.push(false);
        } else {
            rank -= zero_first;
            bits.push(true);
            ones -= 1;
        }
    }
    bits
}

/// `⊕_i C(K,i)·(X^i ⊗ Y^{K−i})`, blocks ordered by `i = 0..K`.
pub fn lsplit_codomain(x: &FinSet, y: &FinSet, k: usize) -> FinSet {
    let blocks: Vec<FinSet> = (0..=k)
        .map(|i| {
            let piece = FinSet::product(&FinSet::power(x, i), &FinSet::power(y, k - i));
            FinSet::copower(choose(k, i), &piece)
        })
        .collect();
    FinSet::coproduct(&blocks)
}

/// `⊕_i M[i](X) ⊗ M[K−i](Y)`.
pub fn msplit_codomain(x: &FinSet, y: &FinSet, k: usize) -> FinSet {
    let blocks: Vec<FinSet> = (0..=k)
        .map(|i| FinSet::product(&FinSet::multisets(x, i), &FinSet::multisets(y, k - i)))
        .collect();
    FinSet::coproduct(&blocks)
}

/// The list split `(X+Y)^K ≅ ⊕_i C(K,i)·(X^i ⊗ Y^{K−i})`: a sequence goes
/// to the block of its number `i` of `X` entries, the copy indexed by its
/// tag pattern, and the pair of its `X` and `Y` subsequences.
pub fn lsplit(x: &FinSet, y: &FinSet, k: usize) -> Kernel {
    let xy = FinSet::coproduct(&[x.clone(), y.clone()]);
    let dom = FinSet::power(&xy, k);
    let cod = lsplit_codomain(x, y, k);
    let c = cod.clone();
    let (n, m, s) = (x.len(), y.len(), xy.len());
    Kernel::deterministic(&dom, &cod, move |t| {
        let mut coords = vec![0; k];
        decode_tuple(t, s, &mut coords);
        let bits: Vec<bool> = coords.iter().map(|&c| c < n).collect();
        let xs = coords.iter().filter(|&&c| c < n).fold(0, |a, &c| a * n + c);
        let ys = coords
            .iter()
            .filter(|&&c| c >= n)
            .fold(0, |a, &c| a * m + (c - n));
        let i = bits.iter().filter(|&&b| b).count();
        let block = &c.as_coproduct().expect("coproduct")[i];
        let piece = &block.as_coproduct().expect("copower")[0];
        let inner = block.inject(pattern_rank(&bits), piece.pair_index(xs, ys));
        c.inject(i, inner)
    })
}

/// Inverse of [`lsplit`]: interleave the subsequences along the pattern.
pub fn lsplit_inv(x: &FinSet, y: &FinSet, k: usize) -> Kernel {
    let xy = FinSet::coproduct(&[x.clone(), y.clone()]);
    let cod = FinSet::power(&xy, k);
    let dom = lsplit_codomain(x, y, k);
    let d = dom.clone();
    let (n, m) = (x.len(), y.len());
    let target = cod.clone();
    Kernel::deterministic(&dom, &cod, move |idx| {
        let (i, inner) = d.split_tag(idx);
        let block = &d.as_coproduct().expect("coproduct")[i];
        let (copy, pos) = block.split_tag(inner);
        let piece = &block.as_coproduct().expect("copower")[copy];
        let (xs, ys) = piece.split_pair(pos);
        let (mut xv, mut yv) = (vec![0; i], vec![0; k - i]);
        decode_tuple(xs, n, &mut xv);
        decode_tuple(ys, m, &mut yv);
        let (mut xi, mut yi) = (xv.into_iter(), yv.into_iter());
        let seq: Vec<usize> = pattern_unrank(k, i, copy)
            .into_iter()
            .map(|b| {
                if b {
                    xi.next().unwrap()
                } else {
                    n + yi.next().unwrap()
                }
            })
            .collect();
        target.tuple_index(&seq)
    })
}

/// `accs = ⊕_i [acc[i] ⊗ acc[K−i], …]`, one cotuple leg per tag pattern.
pub fn accs_kernel(x: &FinSet, y: &FinSet, k: usize) -> Kernel {
    let legs: Vec<Kernel> = (0..=k)
        .map(|i| {
            let leg = tensor(&acc_kernel(x, i), &acc_kernel(y, k - i));
            cotuple(&vec![leg; choose(k, i)]).expect("same codomain")
        })
        .collect();
    coproduct_map(&legs)
}

/// `msplit : M[K](X+Y) → ⊕_i M[i](X) ⊗ M[K−i](Y)`, separating the `X` and
/// `Y` parts of a multiset.
pub fn msplit(x: &FinSet, y: &FinSet, k: usize) -> Kernel {
    let xy = FinSet::coproduct(&[x.clone(), y.clone()]);
    let dom = FinSet::multisets(&xy, k);
    let cod = msplit_codomain(x, y, k);
    let (d, c) = (dom.clone(), cod.clone());
    let n = x.len();
    Kernel::deterministic(&dom, &cod, move |idx| {
        let counts = d.counts_of(idx);
        let (cx, cy) = counts.split_at(n);
        let i = cx.iter().map(|&v| v as usize).sum::<usize>();
        let block = &c.as_coproduct().expect("coproduct")[i];
        let (mx, my) = block.as_product().expect("product");
        let a = mx.index_of_counts(cx).expect("X part");
        let b = my.index_of_counts(cy).expect("Y part");
        c.inject(i, block.pair_index(a, b))
    })
}

/// `msplit⁻¹ = [+ ∘ (M[i](κ₁) ⊗ M[K−i](κ₂))]_i`.
pub fn msplit_inv(x: &FinSet, y: &FinSet, k: usize) -> Result<Kernel> {
    let parts = [x.clone(), y.clone()];
    let xy = FinSet::coproduct(&parts);
    let (k1, k2) = (coprojection(&parts, 0)?, coprojection(&parts, 1)?);
    let legs = (0..=k)
        .map(|i| {
            chain(&[
                &tensor(&mset_map(&k1, i), &mset_map(&k2, k - i)),
                &msum_kernel(&xy, i, k - i),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    cotuple(&legs)
}
