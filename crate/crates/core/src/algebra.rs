//! Sums and zips of multisets, the `K`-fold sum and the graded-monad
//! multiplication.

use crate::error::{Error, Result};
use crate::finstoch::{chain, decode_tuple, tensor, FinSet, Kernel};
use crate::multiset::{acc_kernel, arr_kernel, Multiset};

/// `++ : X^K ⊗ X^L → X^{K+L}`.
pub fn concat_iso(x: &FinSet, k: usize, l: usize) -> Kernel {
    let from = FinSet::product(&FinSet::power(x, k), &FinSet::power(x, l));
    Kernel::reindex(&from, &FinSet::power(x, k + l)).expect("equal sizes")
}

/// Pointwise sum of two multisets over the same base.
pub fn msum(phi: &Multiset, psi: &Multiset) -> Result<Multiset> {
    if phi.base() != psi.base() {
        return Err(Error::TypeMismatch(format!(
            "cannot add multisets over {} and {}",
            phi.base(),
            psi.base()
        )));
    }
    let counts = phi
        .counts()
        .iter()
        .zip(psi.counts())
        .map(|(a, b)| a + b)
        .collect();
    Multiset::new(phi.base(), counts)
}

fn add_counts(out: &mut [u32], add: &[u32], times: u32) {
    for (o, a) in out.iter_mut().zip(add) {
        *o += a * times;
    }
}

/// `+ : M[K](X) ⊗ M[L](X) → M[K+L](X)`, as the deterministic pointwise sum.
pub fn msum_kernel(x: &FinSet, k: usize, l: usize) -> Kernel {
    let (mk, ml) = (FinSet::multisets(x, k), FinSet::multisets(x, l));
    let dom = FinSet::product(&mk, &ml);
    let cod = FinSet::multisets(x, k + l);
    let (d, c) = (dom.clone(), cod.clone());
    Kernel::deterministic(&dom, &cod, move |i| {
        let (a, b) = d.split_pair(i);
        let mut counts = mk.counts_of(a).to_vec();
        add_counts(&mut counts, ml.counts_of(b), 1);
        c.index_of_counts(&counts).expect("sizes add")
    })
}

/// `+` as the composite `acc ∘ ++ ∘ (arr ⊗ arr)`.
pub fn msum_composite(x: &FinSet, k: usize, l: usize) -> Kernel {
    chain(&[
        &tensor(&arr_kernel(x, k), &arr_kernel(x, l)),
        &concat_iso(x, k, l),
        &acc_kernel(x, k + l),
    ])
    .expect("well typed")
}

/// `zip : X^K ⊗ Y^K → (X⊗Y)^K`.
pub fn zip_iso(x: &FinSet, y: &FinSet, k: usize) -> Kernel {
    let (xk, yk) = (FinSet::power(x, k), FinSet::power(y, k));
    let dom = FinSet::product(&xk, &yk);
    let xy = FinSet::product(x, y);
    let cod = FinSet::power(&xy, k);
    let (d, c) = (dom.clone(), cod.clone());
    let (n, m) = (x.len(), y.len());
    Kernel::deterministic(&dom, &cod, move |i| {
        let (a, b) = d.split_pair(i);
        let (mut s, mut t) = (vec![0; k], vec![0; k]);
        decode_tuple(a, n, &mut s);
        decode_tuple(b, m, &mut t);
        let pairs: Vec<usize> = s
            .iter()
            .zip(&t)
            .map(|(&p, &q)| xy.pair_index(p, q))
            .collect();
        c.tuple_index(&pairs)
    })
}

/// `mzip : M[K](X) ⊗ M[K](Y) → M[K](X⊗Y)`, the composite
/// `acc ∘ zip ∘ (arr ⊗ arr)`.
pub fn mzip_kernel(x: &FinSet, y: &FinSet, k: usize) -> Kernel {
    mzip_with(&arr_kernel(x, k), &arr_kernel(y, k))
}

/// `mzip` built from the given arrangement kernels.
pub fn mzip_with(arr_x: &Kernel, arr_y: &Kernel) -> Kernel {
    let (x, k) = arr_x.cod().as_power().expect("arr lands in a power");
    let (y, _) = arr_y.cod().as_power().expect("arr lands in a power");
    chain(&[
        &tensor(arr_x, arr_y),
        &zip_iso(x, y, k),
        &acc_kernel(&FinSet::product(x, y), k),
    ])
    .expect("well typed")
}

/// `Σ_K : (M[L](X))^K → M[K·L](X)`, the `K`-fold pointwise sum.
pub fn ksum_kernel(x: &FinSet, k: usize, l: usize) -> Kernel {
    let ml = FinSet::multisets(x, l);
    let dom = FinSet::power(&ml, k);
    let cod = FinSet::multisets(x, k * l);
    let c = cod.clone();
    let n = x.len();
    let m = ml.len();
    Kernel::deterministic(&dom, &cod, move |i| {
        let mut parts = vec![0; k];
        decode_tuple(i, m, &mut parts);
        let mut counts = vec![0u32; n];
        for p in parts {
            add_counts(&mut counts, ml.counts_of(p), 1);
        }
        c.index_of_counts(&counts).expect("sizes add")
    })
}

/// `μ : M[K](M[L](X)) → M[K·L](X)`, flattening with multiplicities.
pub fn mu_kernel(x: &FinSet, k: usize, l: usize) -> Kernel {
    let ml = FinSet::multisets(x, l);
    let dom = FinSet::multisets(&ml, k);
    let cod = FinSet::multisets(x, k * l);
    let (d, c) = (dom.clone(), cod.clone());
    let n = x.len();
    Kernel::deterministic(&dom, &cod, move |i| {
        let mut counts = vec![0u32; n];
        for (inner, &times) in d.counts_of(i).iter().enumerate() {
            if times > 0 {
                add_counts(&mut counts, ml.counts_of(inner), times);
            }
        }
        c.index_of_counts(&counts).expect("sizes multiply")
    })
}

/// The unit iso `1 ≅ M[K](1)`.
pub fn unit_iso(k: usize) -> Kernel {
    Kernel::reindex(&FinSet::unit(), &FinSet::multisets(&FinSet::unit(), k))
        .expect("both are singletons")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finstoch::{is_deterministic, permutation_kernel, Label, Permutation};
    use crate::multiset::{mset_map, multiset_space};
    use crate::rat::rat;

    fn set(names: &[&str]) -> FinSet {
        FinSet::atoms(names).unwrap()
    }

    fn ms(x: &FinSet, counts: &[u32]) -> Multiset {
        Multiset::new(x, counts.to_vec()).unwrap()
    }

    fn idx(x: &FinSet, counts: &[u32]) -> usize {
        let k = counts.iter().sum::<u32>() as usize;
        FinSet::multisets(x, k).index_of_counts(counts).unwrap()
    }

    #[test]
    fn concat_examples() {
        let x = set(&["a", "b"]);
        let c0 = concat_iso(&x, 0, 2);
        let unitor = Kernel::reindex(c0.dom(), &FinSet::power(&x, 2)).unwrap();
        assert_eq!(c0, unitor);
        let c = concat_iso(&x, 1, 1);
        let a = Label::Tuple(vec![Label::atom("a")]);
        let b = Label::Tuple(vec![Label::atom("b")]);
        let i = c.dom().index_of(&Label::pair(a, b)).unwrap();
        assert_eq!(
            c.cod().label(c.row(i)[0].0).to_string(),
            Label::Tuple(vec![Label::atom("a"), Label::atom("b")]).to_string()
        );
        // (s ++ t) ++ u = s ++ (t ++ u) on all 8 triples.
        let p1 = FinSet::power(&x, 1);
        let left = chain(&[
            &tensor(&concat_iso(&x, 1, 1), &Kernel::identity(&p1)),
            &concat_iso(&x, 2, 1),
        ])
        .unwrap();
        let assoc = Kernel::reindex(
            &FinSet::product(&FinSet::product(&p1, &p1), &p1),
            &FinSet::product(&p1, &FinSet::product(&p1, &p1)),
        )
        .unwrap();
        let right = chain(&[
            &assoc,
            &tensor(&Kernel::identity(&p1), &concat_iso(&x, 1, 1)),
            &concat_iso(&x, 1, 2),
        ])
        .unwrap();
        assert_eq!(left.dom().len(), 8);
        assert_eq!(left, right);
    }

    #[test]
    fn sums() {
        let x = set(&["a", "b"]);
        assert_eq!(
            msum(&ms(&x, &[2, 0]), &ms(&x, &[1, 1])).unwrap(),
            ms(&x, &[3, 1])
        );
        let phi = ms(&x, &[1, 2]);
        assert_eq!(msum(&phi, &Multiset::empty(&x)).unwrap(), phi);
        let psi = ms(&x, &[4, 0]);
        assert_eq!(msum(&phi, &psi).unwrap(), msum(&psi, &phi).unwrap());
        assert!(msum(&phi, &Multiset::empty(&set(&["a"]))).is_err());
        for k in 0..=3 {
            for l in 0..=2 {
                let s = msum_kernel(&x, k, l);
                assert!(is_deterministic(&s));
                assert_eq!(s, msum_composite(&x, k, l), "K={k} L={l}");
            }
        }
        let s = msum_kernel(&x, 2, 2);
        let i = s.dom().pair_index(idx(&x, &[2, 0]), idx(&x, &[1, 1]));
        assert_eq!(s.row(i)[0].0, idx(&x, &[3, 1]));
    }

    #[test]
    fn zip_examples() {
        let x = set(&["a", "b"]);
        let y = set(&["c", "d"]);
        let z = zip_iso(&x, &y, 0);
        assert_eq!((z.dom().len(), z.cod().len()), (1, 1));
        let z2 = zip_iso(&x, &y, 2);
        let tup = |a: &str, b: &str| Label::Tuple(vec![Label::atom(a), Label::atom(b)]);
        let i = z2
            .dom()
            .index_of(&Label::pair(tup("a", "b"), tup("c", "d")))
            .unwrap();
        let out = z2.cod().label(z2.row(i)[0].0);
        assert_eq!(out.to_string(), "((a,c),(b,d))");
        let s = Permutation::transposition(2, 0, 1);
        let lhs = compose(
            &z2,
            &tensor(&permutation_kernel(&x, &s), &permutation_kernel(&y, &s)),
        );
        let xy = FinSet::product(&x, &y);
        let rhs = compose(&permutation_kernel(&xy, &s), &z2);
        assert_eq!(lhs, rhs);
    }

    fn compose(g: &Kernel, f: &Kernel) -> Kernel {
        crate::finstoch::compose(g, f).unwrap()
    }

    #[test]
    fn mzip_examples() {
        let x = set(&["a", "b"]);
        let y = set(&["c", "d"]);
        let z = mzip_kernel(&x, &y, 2);
        let xy = FinSet::product(&x, &y);
        let target = FinSet::multisets(&xy, 2);
        let at = |c: &[u32]| target.index_of_counts(c).unwrap();
        // xy order: (a,c), (a,d), (b,c), (b,d).
        let i = z.dom().pair_index(idx(&x, &[2, 0]), idx(&y, &[2, 0]));
        assert_eq!(z.row(i), &vec![(at(&[2, 0, 0, 0]), rat(1, 1))]);
        let i = z.dom().pair_index(idx(&x, &[1, 1]), idx(&y, &[2, 0]));
        assert_eq!(z.row(i), &vec![(at(&[1, 0, 1, 0]), rat(1, 1))]);
        let i = z.dom().pair_index(idx(&x, &[1, 1]), idx(&y, &[1, 1]));
        let mut want = vec![
            (at(&[1, 0, 0, 1]), rat(1, 2)),
            (at(&[0, 1, 1, 0]), rat(1, 2)),
        ];
        want.sort_by_key(|e| e.0);
        assert_eq!(z.row(i), &want);
    }

    #[test]
    fn ksum_and_mu() {
        let x = set(&["a", "b"]);
        let k1 = ksum_kernel(&x, 1, 2);
        let reidx = Kernel::reindex(k1.dom(), k1.cod()).unwrap();
        assert_eq!(k1, reidx);
        let s = ksum_kernel(&x, 2, 2);
        let i = s.dom().tuple_index(&[idx(&x, &[1, 1]), idx(&x, &[2, 0])]);
        assert_eq!(s.row(i)[0].0, idx(&x, &[3, 1]));
        let s0 = ksum_kernel(&x, 2, 0);
        assert_eq!(s0.cod().len(), 1);
        assert!(s0.rows_are_point_masses());

        let m = mu_kernel(&x, 2, 2);
        let inner = FinSet::multisets(&x, 2);
        let i = m.dom().index_of_counts(&[0, 2, 0]).unwrap();
        assert_eq!(inner.counts_of(1), &[1, 1]);
        assert_eq!(m.row(i)[0].0, idx(&x, &[2, 2]));
        let i = m.dom().index_of_counts(&[1, 1, 0]).unwrap();
        assert_eq!(m.row(i)[0].0, idx(&x, &[3, 1]));
        // μ_{1,K} ∘ acc[1] = id.
        for k in 0..=3 {
            let mk = FinSet::multisets(&x, k);
            let lhs = chain(&[
                &Kernel::reindex(&mk, &FinSet::power(&mk, 1)).unwrap(),
                &acc_kernel(&mk, 1),
                &mu_kernel(&x, 1, k),
            ])
            .unwrap();
            assert_eq!(lhs, Kernel::identity(&mk));
        }
        // μ ∘ acc = Σ_K.
        let mk = multiset_space(&x, 2);
        let lhs = compose(&mu_kernel(&x, 2, 2), &acc_kernel(mk.as_finset(), 2));
        assert_eq!(lhs, ksum_kernel(&x, 2, 2));
    }

    #[test]
    fn unit_iso_is_final() {
        for k in 0..4 {
            let u = unit_iso(k);
            assert_eq!(u.cod().len(), 1);
            let back = Kernel::reindex(u.cod(), u.dom()).unwrap();
            assert_eq!(compose(&back, &u), Kernel::identity(&FinSet::unit()));
        }
        let f = mset_map(&Kernel::identity(&FinSet::unit()), 2);
        assert_eq!(f, Kernel::identity(f.dom()));
    }
}
