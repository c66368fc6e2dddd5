//! Monoidal, comonoid and coproduct structure of the category.

use super::finset::{decode_tuple, FinSet};
use super::kernel::{chain, compose, tensor, Kernel};
use super::perm::Permutation;
use super::series::ConvexSeries;
use crate::error::{Error, Result};

/// The `K`-fold copier `δ[K] : X → X^K`.
pub fn copy_kernel(x: &FinSet, k: usize) -> Kernel {
    let xk = FinSet::power(x, k);
    let n = x.len();
    Kernel::deterministic(x, &xk, move |i| (0..k).fold(0, |acc, _| acc * n + i))
}

/// The binary copier `δ : X → X ⊗ X`.
pub fn copy_pair(x: &FinSet) -> Kernel {
    let xx = FinSet::product(x, x);
    let n = x.len();
    Kernel::deterministic(x, &xx, move |i| i * n + i)
}

/// The unique map `! : X → 1`.
pub fn discard_kernel(x: &FinSet) -> Kernel {
    Kernel::deterministic(x, &FinSet::unit(), |_| 0)
}

/// `∇_n : n → 1`, the codiagonal of the interpreted number.
pub fn codiagonal(n: usize) -> Kernel {
    discard_kernel(&FinSet::number(n))
}

/// `π_i : X^K → X`, one-based `i`.
pub fn projection_kernel(x: &FinSet, k: usize, i: usize) -> Result<Kernel> {
    if i == 0 || i > k {
        return Err(Error::IndexOutOfRange { index: i, len: k });
    }
    let xk = FinSet::power(x, k);
    let n = x.len();
    let shift = (0..k - i).fold(1usize, |acc, _| acc * n);
    Ok(Kernel::deterministic(&xk, x, move |t| (t / shift) % n))
}

/// `π̂_i : X^{K+1} → X^K`, dropping the one-based coordinate `i`.
pub fn drop_coordinate(x: &FinSet, k: usize, i: usize) -> Result<Kernel> {
    if i == 0 || i > k + 1 {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: k + 1,
        });
    }
    let from = FinSet::power(x, k + 1);
    let to = FinSet::power(x, k);
    let n = x.len();
    Ok(Kernel::deterministic(&from, &to, move |t| {
        let mut coords = vec![0; k + 1];
        decode_tuple(t, n, &mut coords);
        coords
            .iter()
            .enumerate()
            .filter(|(p, _)| *p != i - 1)
            .fold(0, |acc, (_, &c)| acc * n + c)
    }))
}

/// `π_1 : X ⊗ Y → X`.
pub fn fst(x: &FinSet, y: &FinSet) -> Kernel {
    let ny = y.len();
    Kernel::deterministic(&FinSet::product(x, y), x, move |p| p / ny)
}

/// `π_2 : X ⊗ Y → Y`.
pub fn snd(x: &FinSet, y: &FinSet) -> Kernel {
    let ny = y.len();
    Kernel::deterministic(&FinSet::product(x, y), y, move |p| p % ny)
}

/// The symmetry `γ : X ⊗ Y → Y ⊗ X`.
pub fn swap(x: &FinSet, y: &FinSet) -> Kernel {
    let (nx, ny) = (x.len(), y.len());
    Kernel::deterministic(&FinSet::product(x, y), &FinSet::product(y, x), move |p| {
        (p % ny) * nx + p / ny
    })
}

/// `σ̲ : X^K → X^K`; output position `i` holds input position `σ(i)`.
pub fn permutation_kernel(x: &FinSet, sigma: &Permutation) -> Kernel {
    let k = sigma.size();
    let xk = FinSet::power(x, k);
    let n = x.len();
    let sigma = sigma.clone();
    Kernel::deterministic(&xk, &xk, move |t| {
        let mut coords = vec![0; k];
        decode_tuple(t, n, &mut coords);
        sigma.act(&coords).iter().fold(0, |acc, &c| acc * n + c)
    })
}

/// The coprojection `κ_tag` into the coproduct of `parts`.
pub fn coprojection(parts: &[FinSet], tag: usize) -> Result<Kernel> {
    let sum = FinSet::coproduct(parts);
    let part = parts.get(tag).ok_or(Error::IndexOutOfRange {
        index: tag,
        len: parts.len(),
    })?;
    let target = sum.clone();
    Ok(Kernel::deterministic(part, &sum, move |i| {
        target.inject(tag, i)
    }))
}

/// `[f_1, …, f_n] : X_1 + … + X_n → Y`.
pub fn cotuple(fs: &[Kernel]) -> Result<Kernel> {
    let cod = fs
        .first()
        .ok_or_else(|| Error::Invalid("cotuple of an empty family".into()))?
        .cod()
        .clone();
    if let Some(bad) = fs.iter().find(|f| f.cod() != &cod) {
        return Err(Error::TypeMismatch(format!(
            "cotuple codomains differ: {cod} vs {}",
            bad.cod()
        )));
    }
    let doms: Vec<FinSet> = fs.iter().map(|f| f.dom().clone()).collect();
    let dom = FinSet::coproduct(&doms);
    let parts: Vec<&Kernel> = fs.iter().collect();
    let fs2 = fs.to_vec();
    let dom2 = dom.clone();
    Ok(Kernel::lazy(&dom, &cod, &parts, move |idx| {
        let (t, i) = dom2.split_tag(idx);
        fs2[t].row(i).clone()
    }))
}

/// `f_1 + … + f_n : X_1 + … + X_n → Y_1 + … + Y_n`.
pub fn coproduct_map(fs: &[Kernel]) -> Kernel {
    let doms: Vec<FinSet> = fs.iter().map(|f| f.dom().clone()).collect();
    let cods: Vec<FinSet> = fs.iter().map(|f| f.cod().clone()).collect();
    let dom = FinSet::coproduct(&doms);
    let cod = FinSet::coproduct(&cods);
    let parts: Vec<&Kernel> = fs.iter().collect();
    let fs2 = fs.to_vec();
    let (dom2, cod2) = (dom.clone(), cod.clone());
    Kernel::lazy(&dom, &cod, &parts, move |idx| {
        let (t, i) = dom2.split_tag(idx);
        fs2[t]
            .row(i)
            .iter()
            .map(|(j, w)| (cod2.inject(t, *j), w.clone()))
            .collect()
    })
}

/// `Σ_i r·f_i`, computed literally as `[f_1, …, f_n] ∘ (n ⊗ X ≅ X + … + X) ∘
/// (r ⊗ id) ∘ (X ≅ 1 ⊗ X)`.
pub fn convex_sum(r: &ConvexSeries, fs: &[Kernel]) -> Result<Kernel> {
    if r.len() != fs.len() {
        return Err(Error::LengthMismatch {
            expected: r.len(),
            got: fs.len(),
        });
    }
    let x = fs[0].dom().clone();
    if let Some(bad) = fs.iter().find(|f| f.dom() != &x || f.cod() != fs[0].cod()) {
        return Err(Error::TypeMismatch(format!(
            "convex sum of differently typed kernels: {:?} vs {bad:?}",
            fs[0]
        )));
    }
    let unit = FinSet::unit();
    let nx = FinSet::product(&FinSet::number(r.len()), &x);
    let blocks = FinSet::coproduct(&vec![x.clone(); r.len()]);
    chain(&[
        &Kernel::reindex(&x, &FinSet::product(&unit, &x))?,
        &tensor(&r.as_state(), &Kernel::identity(&x)),
        &Kernel::reindex(&nx, &blocks)?,
        &cotuple(fs)?,
    ])
}

/// Categorical determinism: `(f ⊗ f) ∘ δ = δ ∘ f`.
pub fn is_deterministic(f: &Kernel) -> bool {
    let lhs = compose(&tensor(f, f), &copy_pair(f.dom())).expect("well typed");
    let rhs = compose(&copy_pair(f.cod()), f).expect("well typed");
    lhs.equals(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finstoch::{uniform_state, Dist, Label};
    use crate::rat::rat;

    fn ab() -> FinSet {
        FinSet::atoms(["a", "b"]).unwrap()
    }

    #[test]
    fn copy_counit_and_discard() {
        let x = FinSet::atoms(["a", "b", "c"]).unwrap();
        let d1 = copy_kernel(&x, 1);
        assert_eq!(
            compose(&projection_kernel(&x, 1, 1).unwrap(), &d1).unwrap(),
            Kernel::identity(&x)
        );
        let d0 = copy_kernel(&x, 0);
        assert_eq!(d0.cod().len(), 1);
        assert!(d0.rows_are_point_masses());
        let d2 = copy_kernel(&ab(), 2);
        assert_eq!(d2.cod().label(d2.row(0)[0].0).to_string(), "(a,a)");
        assert_eq!(
            compose(&projection_kernel(&x, 2, 1).unwrap(), &copy_kernel(&x, 2)).unwrap(),
            Kernel::identity(&x)
        );
    }

    #[test]
    fn discard_shapes() {
        let x = ab();
        let d = discard_kernel(&x);
        assert!(d.rows_are_point_masses());
        assert_eq!(
            discard_kernel(&FinSet::unit()),
            Kernel::identity(&FinSet::unit())
        );
        assert_eq!(discard_kernel(&FinSet::empty()).dom().len(), 0);
        // Discard after anything is discard.
        let fair = Dist::new(&x, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let f = Kernel::constant(&x, &fair);
        assert_eq!(compose(&discard_kernel(&x), &f).unwrap(), d);
    }

    #[test]
    fn projections() {
        let x = ab();
        assert!(projection_kernel(&x, 2, 0).is_err());
        assert!(projection_kernel(&x, 2, 3).is_err());
        let p = projection_kernel(&x, 2, 2).unwrap();
        let ab_idx = p
            .dom()
            .index_of(&Label::Tuple(vec![Label::atom("a"), Label::atom("b")]))
            .unwrap();
        assert_eq!(p.row(ab_idx)[0].0, 1);
        assert_eq!(
            projection_kernel(&x, 1, 1).unwrap(),
            Kernel::reindex(&FinSet::power(&x, 1), &x).unwrap()
        );
    }

    #[test]
    fn permutation_kernels_compose_like_permutations() {
        let x = ab();
        assert_eq!(
            permutation_kernel(&x, &Permutation::identity(2)),
            Kernel::identity(&FinSet::power(&x, 2))
        );
        let sw = permutation_kernel(&x, &Permutation::transposition(2, 0, 1));
        let t = FinSet::power(&x, 2);
        let ab_idx = t
            .index_of(&Label::Tuple(vec![Label::atom("a"), Label::atom("b")]))
            .unwrap();
        assert_eq!(t.label(sw.row(ab_idx)[0].0).to_string(), "(b,a)");
        for s in Permutation::all(3) {
            for u in Permutation::all(3) {
                let lhs =
                    compose(&permutation_kernel(&x, &u), &permutation_kernel(&x, &s)).unwrap();
                assert_eq!(lhs, permutation_kernel(&x, &s.compose(&u)));
            }
        }
    }

    #[test]
    fn cotuples() {
        let one = FinSet::unit();
        let nabla = cotuple(&vec![Kernel::identity(&one); 3]).unwrap();
        assert_eq!(nabla.dom().len(), 3);
        assert!(nabla.rows_are_point_masses());
        let f = Kernel::state(&Dist::new(&ab(), vec![rat(1, 3), rat(2, 3)]).unwrap());
        let single = cotuple(std::slice::from_ref(&f)).unwrap();
        assert_eq!(single.row(0), f.row(0));
        let da = Kernel::state(&Dist::dirac(&ab(), &Label::atom("a")).unwrap());
        let db = Kernel::state(&Dist::dirac(&ab(), &Label::atom("b")).unwrap());
        let c = cotuple(&[da, db]).unwrap();
        assert_eq!(c.row(0), &vec![(0, rat(1, 1))]);
        assert_eq!(c.row(1), &vec![(1, rat(1, 1))]);
        assert!(cotuple(&[]).is_err());
        assert!(cotuple(&[Kernel::identity(&one), Kernel::identity(&ab())]).is_err());
    }

    #[test]
    fn convex_sums() {
        let x = ab();
        let r = uniform_state(2).unwrap();
        let id = Kernel::identity(&x);
        assert_eq!(convex_sum(&r, &[id.clone(), id.clone()]).unwrap(), id);
        let one = FinSet::unit();
        let da = Kernel::state(&Dist::dirac(&x, &Label::atom("a")).unwrap());
        let db = Kernel::state(&Dist::dirac(&x, &Label::atom("b")).unwrap());
        let s = convex_sum(&r, &[da.clone(), db]).unwrap();
        assert_eq!(s.dom(), &one);
        assert_eq!(s.row(0), &vec![(0, rat(1, 2)), (1, rat(1, 2))]);
        assert!(matches!(
            convex_sum(&r, &[da]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn determinism_matches_point_mass_rows() {
        let x = ab();
        let fair = Kernel::state(&Dist::new(&x, vec![rat(1, 2), rat(1, 2)]).unwrap());
        assert!(!is_deterministic(&fair));
        assert!(!fair.rows_are_point_masses());
        let da = Kernel::state(&Dist::dirac(&x, &Label::atom("a")).unwrap());
        assert!(is_deterministic(&da));
        let parts = [x.clone(), FinSet::unit()];
        assert!(is_deterministic(&coprojection(&parts, 0).unwrap()));
        assert!(is_deterministic(&coprojection(&parts, 1).unwrap()));
        assert!(is_deterministic(&swap(&x, &parts[1])));
    }
}
