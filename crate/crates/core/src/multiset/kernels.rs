use num_bigint::BigInt;
use num_traits::One;

use super::representative;
use crate::error::{Error, Result};
use crate::finstoch::{
    compose, convex_sum, decode_tuple, drop_coordinate, normalize_row, permutation_kernel, power,
    projection_kernel, uniform_state, FinSet, Kernel, Permutation,
};
use crate::rat::{factorial, Rat};

fn encode(coords: &[usize], n: usize) -> usize {
    coords.iter().fold(0, |acc, &c| acc * n + c)
}

/// `acc[K] : X^K → M[K](X)`.
pub fn acc_kernel(x: &FinSet, k: usize) -> Kernel {
    let xk = FinSet::power(x, k);
    let mk = FinSet::multisets(x, k);
    let n = x.len();
    let target = mk.clone();
    Kernel::deterministic(&xk, &mk, move |t| {
        let mut coords = vec![0; k];
        decode_tuple(t, n, &mut coords);
        let mut counts = vec![0u32; n];
        for c in coords {
            counts[c] += 1;
        }
        target.index_of_counts(&counts).expect("valid count vector")
    })
}

/// The section `M[K](X) → X^K` picking the sorted representative of each
/// multiset. It is the tool for building maps out of the quotient.
pub fn canonical_section(x: &FinSet, k: usize) -> Kernel {
    let xk = FinSet::power(x, k);
    let mk = FinSet::multisets(x, k);
    let n = x.len();
    let source = mk.clone();
    Kernel::deterministic(&mk, &xk, move |i| {
        encode(&representative(source.counts_of(i)), n)
    })
}

/// Whether `h : X^K → Z` is invariant under every permutation in `perms`.
pub fn coequalizes(h: &Kernel, perms: &[Permutation]) -> Result<bool> {
    let (x, k) = h.dom().expect_power()?;
    for s in perms {
        if s.size() != k {
            return Err(Error::TypeMismatch(format!(
                "{s} does not act on {}",
                h.dom()
            )));
        }
        if !compose(h, &permutation_kernel(x, s))?.equals(h) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The mediating map `M[K](X) → Z` out of the quotient for a map `h` that
/// coequalizes all permutations. Well-definedness is not checked here; see
/// [`coequalizes`].
pub fn mediate(h: &Kernel) -> Result<Kernel> {
    let (x, k) = h.dom().expect_power()?;
    compose(h, &canonical_section(x, k))
}

/// `perm : X^K → X^K`, by tallying the `K!` rearrangements of each tuple.
pub fn perm_kernel(x: &FinSet, k: usize) -> Kernel {
    let xk = FinSet::power(x, k);
    let n = x.len();
    let perms = Permutation::all(k);
    let kfact = Rat::from_integer(factorial(k as u64));
    Kernel::lazy(&xk, &xk, &[], move |t| {
        let mut coords = vec![0; k];
        decode_tuple(t, n, &mut coords);
        let mut hits: Vec<usize> = perms.iter().map(|s| encode(&s.act(&coords), n)).collect();
        hits.sort_unstable();
        let mut row = Vec::new();
        for chunk in hits.chunk_by(|a, b| a == b) {
            row.push((
                chunk[0],
                Rat::from_integer(BigInt::from(chunk.len())) / &kfact,
            ));
        }
        row
    })
}

/// `perm` as the literal convex sum `Σ_σ unif_{K!}·σ̲`.
pub fn perm_kernel_literal(x: &FinSet, k: usize) -> Kernel {
    let perms: Vec<Kernel> = Permutation::all(k)
        .iter()
        .map(|s| permutation_kernel(x, s))
        .collect();
    let r = uniform_state(perms.len()).expect("K! >= 1");
    convex_sum(&r, &perms).expect("well typed")
}

/// `ε[K] = Σ_i unif_K·π_i : X^K → X`, for `K ≥ 1`.
pub fn epsilon_kernel(x: &FinSet, k: usize) -> Result<Kernel> {
    if k == 0 {
        return Err(Error::ZeroSize("ε[K]"));
    }
    let projections = (1..=k)
        .map(|i| projection_kernel(x, k, i))
        .collect::<Result<Vec<_>>>()?;
    convex_sum(&uniform_state(k)?, &projections)
}

/// `arr : M[K](X) → X^K`, closed form: each multiset is sent uniformly to
/// its distinct arrangements, with weight `∏ φ(x)! / K!` each.
pub fn arr_kernel(x: &FinSet, k: usize) -> Kernel {
    let xk = FinSet::power(x, k);
    let mk = FinSet::multisets(x, k);
    let n = x.len();
    let source = mk.clone();
    let kfact = factorial(k as u64);
    Kernel::lazy(&mk, &xk, &[], move |i| {
        let mut counts = source.counts_of(i).to_vec();
        let stab = counts
            .iter()
            .fold(BigInt::one(), |acc, &c| acc * factorial(c as u64));
        let w = Rat::new(stab, kfact.clone());
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        arrangements(&mut counts, k, &mut cur, &mut |t| out.push(encode(t, n)));
        // Colours are tried in increasing order, so indices come out sorted.
        out.into_iter().map(|j| (j, w.clone())).collect()
    })
}

fn arrangements(
    counts: &mut [u32],
    k: usize,
    cur: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if cur.len() == k {
        emit(cur);
        return;
    }
    for c in 0..counts.len() {
        if counts[c] > 0 {
            counts[c] -= 1;
            cur.push(c);
            arrangements(counts, k, cur, emit);
            cur.pop();
            counts[c] += 1;
        }
    }
}

/// `arr` as the mediating map of `perm`.
pub fn arr_mediated(x: &FinSet, k: usize) -> Kernel {
    mediate(&perm_kernel(x, k)).expect("perm lives on a power")
}

/// `Flrn : M[K](X) → X`, closed form `φ ↦ Σ_x φ(x)/K |x⟩`, for `K ≥ 1`.
pub fn flrn_kernel(x: &FinSet, k: usize) -> Result<Kernel> {
    if k == 0 {
        return Err(Error::ZeroSize("Flrn"));
    }
    let mk = FinSet::multisets(x, k);
    let source = mk.clone();
    let kk = BigInt::from(k);
    Ok(Kernel::lazy(&mk, x, &[], move |i| {
        source
            .counts_of(i)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| (j, Rat::new(BigInt::from(c), kk.clone())))
            .collect()
    }))
}

/// `Flrn` as the mediating map of `ε`.
pub fn flrn_mediated(x: &FinSet, k: usize) -> Result<Kernel> {
    mediate(&epsilon_kernel(x, k)?)
}

/// `del[K] = Σ_i unif_{K+1}·π̂_i : X^{K+1} → X^K`.
pub fn del_kernel(x: &FinSet, k: usize) -> Kernel {
    let drops = (1..=k + 1)
        .map(|i| drop_coordinate(x, k, i))
        .collect::<Result<Vec<_>>>()
        .expect("indices in range");
    convex_sum(&uniform_state(k + 1).expect("K+1 >= 1"), &drops).expect("well typed")
}

/// `DD : M[K+1](X) → M[K](X)`, closed form: remove one ball, colour `x`
/// chosen with probability `φ(x)/(K+1)`.
pub fn dd_kernel(x: &FinSet, k: usize) -> Kernel {
    let from = FinSet::multisets(x, k + 1);
    let to = FinSet::multisets(x, k);
    let (src, dst) = (from.clone(), to.clone());
    let total = BigInt::from(k + 1);
    Kernel::lazy(&from, &to, &[], move |i| {
        let counts = src.counts_of(i);
        let mut buf = counts.to_vec();
        let mut row = Vec::new();
        for (c, &m) in counts.iter().enumerate() {
            if m == 0 {
                continue;
            }
            buf[c] -= 1;
            let j = dst.index_of_counts(&buf).expect("valid count vector");
            buf[c] += 1;
            row.push((j, Rat::new(BigInt::from(m), total.clone())));
        }
        normalize_row(row)
    })
}

/// `DD` as the mediating map of `acc ∘ del`.
pub fn dd_mediated(x: &FinSet, k: usize) -> Kernel {
    let h = compose(&acc_kernel(x, k), &del_kernel(x, k)).expect("well typed");
    mediate(&h).expect("del lives on a power")
}

/// The functor action `M[K](f) : M[K](X) → M[K](Y)`, the mediating map of
/// `acc_Y ∘ f^K`.
pub fn mset_map(f: &Kernel, k: usize) -> Kernel {
    let h = compose(&acc_kernel(f.cod(), k), &power(f, k)).expect("well typed");
    mediate(&h).expect("f^K lives on a power")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finstoch::{copy_kernel, is_deterministic, Label};
    use crate::multiset::{multiset_space, Multiset};
    use crate::rat::rat;

    fn ab() -> FinSet {
        FinSet::atoms(["a", "b"]).unwrap()
    }

    fn ms(x: &FinSet, counts: &[u32]) -> usize {
        FinSet::multisets(x, counts.iter().sum::<u32>() as usize)
            .index_of_counts(counts)
            .unwrap()
    }

    fn tuple(x: &FinSet, names: &[&str]) -> usize {
        FinSet::power(x, names.len())
            .index_of(&Label::Tuple(
                names.iter().map(|n| Label::atom(n)).collect(),
            ))
            .unwrap()
    }

    #[test]
    fn acc_is_a_deterministic_quotient() {
        let x = ab();
        let acc = acc_kernel(&x, 3);
        assert!(is_deterministic(&acc));
        for s in Permutation::all(3) {
            assert_eq!(compose(&acc, &permutation_kernel(&x, &s)).unwrap(), acc);
        }
        // Surjective onto M[3](X).
        let mut hit = vec![false; acc.cod().len()];
        for t in 0..acc.dom().len() {
            hit[acc.row(t)[0].0] = true;
        }
        assert!(hit.into_iter().all(|h| h));
        // K = 1 is a bijection, K = 0 the unique map out of 1.
        let a1 = acc_kernel(&x, 1);
        assert_eq!(a1.row(0)[0].0, 0);
        assert_eq!(a1.row(1)[0].0, 1);
        assert_eq!(acc_kernel(&x, 0).dom().len(), 1);
        assert_eq!(acc_kernel(&x, 0).cod().len(), 1);
    }

    #[test]
    fn perm_rows() {
        let x = ab();
        assert_eq!(perm_kernel(&x, 1), Kernel::identity(&FinSet::power(&x, 1)));
        let p = perm_kernel(&x, 2);
        let abi = tuple(&x, &["a", "b"]);
        let bai = tuple(&x, &["b", "a"]);
        assert_eq!(p.row(abi), &vec![(abi, rat(1, 2)), (bai, rat(1, 2))]);
        for k in 0..=3 {
            assert_eq!(perm_kernel(&x, k), perm_kernel_literal(&x, k), "K = {k}");
        }
        let d3 = copy_kernel(&x, 3);
        assert_eq!(compose(&perm_kernel(&x, 3), &d3).unwrap(), d3);
    }

    #[test]
    fn epsilon_rows() {
        let x = ab();
        assert!(epsilon_kernel(&x, 0).is_err());
        assert_eq!(
            epsilon_kernel(&x, 1).unwrap(),
            Kernel::reindex(&FinSet::power(&x, 1), &x).unwrap()
        );
        let e = epsilon_kernel(&x, 2).unwrap();
        assert_eq!(
            e.row(tuple(&x, &["a", "b"])),
            &vec![(0, rat(1, 2)), (1, rat(1, 2))]
        );
        let abc = FinSet::atoms(["a", "b", "c"]).unwrap();
        assert_eq!(
            compose(&epsilon_kernel(&abc, 3).unwrap(), &copy_kernel(&abc, 3)).unwrap(),
            Kernel::identity(&abc)
        );
    }

    /// Oracle: enumerate all K! orderings of the representative and tally.
    fn arrangement_oracle(x: &FinSet, counts: &[u32]) -> Vec<(usize, Rat)> {
        let rep = representative(counts);
        let k = rep.len();
        let perms = Permutation::all(k);
        let mut tally = std::collections::BTreeMap::<usize, usize>::new();
        for p in &perms {
            *tally.entry(encode(&p.act(&rep), x.len())).or_default() += 1;
        }
        tally
            .into_iter()
            .map(|(j, c)| (j, rat(c as i64, perms.len() as i64)))
            .collect()
    }

    #[test]
    fn arr_closed_form() {
        let x = ab();
        let arr = arr_kernel(&x, 5);
        let row = arr.row(ms(&x, &[2, 3]));
        assert_eq!(row.len(), 10);
        assert!(row.iter().all(|(_, w)| *w == rat(1, 10)));
        assert_eq!(row, &arrangement_oracle(&x, &[2, 3]));
        let arr3 = arr_kernel(&x, 3);
        assert_eq!(
            arr3.row(ms(&x, &[3, 0])),
            &vec![(tuple(&x, &["a", "a", "a"]), rat(1, 1))]
        );
        // K = 1: arr = Flrn = inverse of acc[1], up to X^1 ≅ X.
        let to_x = Kernel::reindex(&FinSet::power(&x, 1), &x).unwrap();
        assert_eq!(
            compose(&to_x, &arr_kernel(&x, 1)).unwrap(),
            flrn_kernel(&x, 1).unwrap()
        );
        assert_eq!(
            compose(&acc_kernel(&x, 1), &arr_kernel(&x, 1)).unwrap(),
            Kernel::identity(&FinSet::multisets(&x, 1))
        );
        for k in 0..=4 {
            assert_eq!(arr_kernel(&x, k), arr_mediated(&x, k));
        }
    }

    #[test]
    fn flrn_rows() {
        let x = ab();
        assert!(flrn_kernel(&x, 0).is_err());
        let f = flrn_kernel(&x, 5).unwrap();
        assert_eq!(
            f.row(ms(&x, &[2, 3])),
            &vec![(0, rat(2, 5)), (1, rat(3, 5))]
        );
        assert_eq!(
            flrn_kernel(&x, 1).unwrap().row(ms(&x, &[1, 0])),
            &vec![(0, rat(1, 1))]
        );
        assert_eq!(
            flrn_kernel(&x, 4).unwrap().row(ms(&x, &[0, 4])),
            &vec![(1, rat(1, 1))]
        );
        for k in 1..=4 {
            assert_eq!(flrn_kernel(&x, k).unwrap(), flrn_mediated(&x, k).unwrap());
        }
    }

    #[test]
    fn del_rows() {
        let x = ab();
        let d0 = del_kernel(&x, 0);
        assert!(d0.rows_are_point_masses());
        assert_eq!(d0.cod().len(), 1);
        let d1 = del_kernel(&x, 1);
        let row = d1.row(tuple(&x, &["a", "b"]));
        assert_eq!(row, &vec![(0, rat(1, 2)), (1, rat(1, 2))]);
        assert_eq!(
            compose(&del_kernel(&x, 2), &copy_kernel(&x, 3)).unwrap(),
            copy_kernel(&x, 2)
        );
    }

    #[test]
    fn dd_rows() {
        let x = ab();
        let dd = dd_kernel(&x, 2);
        assert_eq!(
            dd.row(ms(&x, &[2, 1])),
            &vec![(ms(&x, &[2, 0]), rat(1, 3)), (ms(&x, &[1, 1]), rat(2, 3))]
        );
        let dd0 = dd_kernel(&x, 0);
        assert_eq!(dd0.row(ms(&x, &[1, 0])), &vec![(0, rat(1, 1))]);
        assert_eq!(dd.row(ms(&x, &[3, 0])), &vec![(ms(&x, &[2, 0]), rat(1, 1))]);
        for k in 0..=3 {
            assert_eq!(dd_kernel(&x, k), dd_mediated(&x, k));
        }
        // Interpreted as labels.
        let m = multiset_space(&x, 2);
        let top = dd.row(ms(&x, &[2, 1]));
        assert_eq!(m.get(top[1].0), Multiset::new(&x, vec![1, 1]).unwrap());
    }

    #[test]
    fn quotient_maps_coequalize() {
        let x = FinSet::atoms(["a", "b", "c"]).unwrap();
        for k in 1..=3 {
            let all = Permutation::all(k);
            assert!(coequalizes(&epsilon_kernel(&x, k).unwrap(), &all).unwrap());
            assert!(coequalizes(&perm_kernel(&x, k), &all).unwrap());
            assert!(coequalizes(&acc_kernel(&x, k), &all).unwrap());
        }
        // The identity on X^2 does not.
        let id = Kernel::identity(&FinSet::power(&x, 2));
        assert!(!coequalizes(&id, &Permutation::all(2)).unwrap());
    }

    #[test]
    fn functor_action_on_functions() {
        let x = ab();
        let y = FinSet::atoms(["u"]).unwrap();
        let f = Kernel::deterministic(&x, &y, |_| 0);
        let m = mset_map(&f, 2);
        for i in 0..m.dom().len() {
            assert_eq!(m.row(i), &vec![(0, rat(1, 1))]);
        }
    }
}
