use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::mzip_with;
use crate::draws::{hypergeometric_with, multinomial_kernel};
use crate::error::Result;
use crate::finstoch::{normalize_row, FinSet, Kernel, Row};
use crate::multiset::{arr_kernel, dd_kernel};
use crate::rat::Rat;

/// Which kernel a [`Mutation`] corrupts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Dd,
    Arr,
    Mn,
}

/// How the target is corrupted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// Move `1/100` of weight away from one entry of one row (or into it,
    /// when the entry is lighter than that). Rows stay normalized.
    Perturb { row: usize, entry: usize },
    /// Draw-and-delete weighting colours by `φ(x)+1` instead of `φ(x)`.
    OffByOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mutation {
    pub target: Target,
    pub corruption: Corruption,
}

impl Mutation {
    pub fn perturb(target: Target, row: usize, entry: usize) -> Mutation {
        Mutation {
            target,
            corruption: Corruption::Perturb { row, entry },
        }
    }
}

/// The kernels laws are built from. Without a mutation these are the
/// module's own definitions; with one, the targeted kernel is corrupted
/// everywhere it occurs.
#[derive(Debug, Clone, Copy, Default)]
pub struct Ops {
    pub mutation: Option<Mutation>,
}

impl Ops {
    pub fn mutated(m: Mutation) -> Ops {
        Ops { mutation: Some(m) }
    }

    fn corrupt(&self, target: Target, k: Kernel) -> Kernel {
        match self.mutation {
            Some(Mutation {
                target: t,
                corruption: Corruption::Perturb { row, entry },
            }) if t == target => perturb(&k, row, entry),
            _ => k,
        }
    }

    pub fn dd(&self, x: &FinSet, k: usize) -> Kernel {
        if self.mutation
            == Some(Mutation {
                target: Target::Dd,
                corruption: Corruption::OffByOne,
            })
        {
            return dd_off_by_one(x, k);
        }
        self.corrupt(Target::Dd, dd_kernel(x, k))
    }

    pub fn arr(&self, x: &FinSet, k: usize) -> Kernel {
        self.corrupt(Target::Arr, arr_kernel(x, k))
    }

    pub fn mn(&self, f: &Kernel, k: usize) -> Kernel {
        self.corrupt(Target::Mn, multinomial_kernel(f, k))
    }

    pub fn mzip(&self, x: &FinSet, y: &FinSet, k: usize) -> Kernel {
        mzip_with(&self.arr(x, k), &self.arr(y, k))
    }

    pub fn hg(&self, x: &FinSet, l: usize, k: usize) -> Result<Kernel> {
        hypergeometric_with(x, l, k, &|x, m| self.dd(x, m))
    }
}

/// Shifts `1/100` of weight in row `row % |dom|` between entry
/// `entry % len` and the next column.
pub fn perturb(k: &Kernel, row: usize, entry: usize) -> Kernel {
    if k.dom().is_empty() || k.cod().len() < 2 {
        return k.clone();
    }
    let r = row % k.dom().len();
    let base = k.clone();
    let cod_len = k.cod().len();
    Kernel::lazy(k.dom(), k.cod(), &[k], move |i| {
        let mut out: Row = base.row(i).clone();
        if i != r {
            return out;
        }
        let delta = Rat::new(BigInt::one(), BigInt::from(100));
        let e = entry % out.len();
        let (col, w) = out[e].clone();
        let next = (col + 1) % cod_len;
        let donor = (0..out.len())
            .filter(|&a| a != e && out[a].1 >= delta)
            .max_by(|&a, &b| out[a].1.cmp(&out[b].1));
        if w >= delta {
            out[e].1 = &w - &delta;
            out.push((next, delta));
        } else if let Some(d) = donor {
            out[d].1 = &out[d].1 - &delta;
            out[e].1 = &w + &delta;
        } else {
            // Every entry is lighter than the step: move all of this one.
            out[e].1 = Rat::from_integer(BigInt::from(0));
            out.push((next, w));
        }
        normalize_row(out)
    })
}

fn dd_off_by_one(x: &FinSet, k: usize) -> Kernel {
    let from = FinSet::multisets(x, k + 1);
    let to = FinSet::multisets(x, k);
    let (src, dst) = (from.clone(), to.clone());
    Kernel::lazy(&from, &to, &[], move |i| {
        let counts = src.counts_of(i);
        let support = counts.iter().filter(|&&c| c > 0).count();
        let total = BigInt::from(k + 1 + support);
        let mut buf = counts.to_vec();
        let mut row = Vec::new();
        for (c, &m) in counts.iter().enumerate() {
            if m == 0 {
                continue;
            }
            buf[c] -= 1;
            let j = dst.index_of_counts(&buf).expect("valid count vector");
            buf[c] += 1;
            row.push((j, Rat::new(BigInt::from(m + 1), total.clone())));
        }
        normalize_row(row)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn perturbation_keeps_rows_stochastic() {
        let x = FinSet::atoms(["a", "b"]).unwrap();
        let dd = dd_kernel(&x, 2);
        let p = perturb(&dd, 1, 0);
        assert_ne!(p, dd);
        for i in 0..p.dom().len() {
            let s: Rat = p.row(i).iter().map(|e| e.1.clone()).sum();
            assert_eq!(s, rat(1, 1));
        }
        let one = FinSet::atoms(["a"]).unwrap();
        assert_eq!(perturb(&dd_kernel(&one, 2), 0, 0), dd_kernel(&one, 2));
        let off = Ops::mutated(Mutation {
            target: Target::Dd,
            corruption: Corruption::OffByOne,
        });
        assert_ne!(off.dd(&x, 2), dd);
        assert_eq!(Ops::default().dd(&x, 2), dd);
    }
}
