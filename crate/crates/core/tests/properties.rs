use markov_multisets::algebra::{msum, mzip_kernel};
use markov_multisets::draws::{
    hypergeometric_composite, hypergeometric_kernel, multinomial_closed_form, multinomial_kernel,
};
use markov_multisets::finstoch::{chain, compose, copy_kernel, power};
use markov_multisets::multiset::{acc_kernel, dd_kernel, flrn_kernel, mset_map};
use markov_multisets::rat::rat;
use markov_multisets::{Dist, FinSet, Kernel, Multiset, Rat};
use proptest::prelude::*;

fn set(prefix: &str, n: usize) -> FinSet {
    FinSet::atoms((0..n).map(|i| format!("{prefix}{i}"))).unwrap()
}

/// A kernel `n → m` from small integer weights, each row rescaled to sum 1.
fn kernel_from(prefix: (&str, &str), n: usize, m: usize, raw: &[u8]) -> Kernel {
    let (dom, cod) = (set(prefix.0, n), set(prefix.1, m));
    let rows = (0..n)
        .map(|i| {
            let mut w: Vec<i64> = (0..m)
                .map(|j| i64::from(raw[(i * m + j) % raw.len()] % 5))
                .collect();
            if w.iter().all(|&v| v == 0) {
                w[i % m] = 1;
            }
            let total: i64 = w.iter().sum();
            w.iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(j, &v)| (j, rat(v, total)))
                .collect()
        })
        .collect();
    Kernel::new(&dom, &cod, rows).unwrap()
}

fn arb_kernel() -> impl Strategy<Value = Kernel> {
    (
        1usize..=3,
        1usize..=3,
        prop::collection::vec(any::<u8>(), 9),
    )
        .prop_map(|(n, m, raw)| kernel_from(("x", "y"), n, m, &raw))
}

fn arb_urn(max_colors: usize, max_count: u32) -> impl Strategy<Value = Multiset> {
    prop::collection::vec(0..=max_count, 1..=max_colors)
        .prop_map(|counts| Multiset::new(&set("c", counts.len()), counts).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multinomial_closed_form_agrees(f in arb_kernel(), k in 0usize..=4) {
        prop_assert_eq!(multinomial_kernel(&f, k), multinomial_closed_form(&f, k));
    }

    #[test]
    fn frequency_of_multinomial_is_the_kernel(f in arb_kernel(), k in 1usize..=4) {
        let back = compose(&flrn_kernel(f.cod(), k).unwrap(), &multinomial_kernel(&f, k)).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn draw_delete_shrinks_multinomials(f in arb_kernel(), k in 0usize..=3) {
        let lhs = compose(&dd_kernel(f.cod(), k), &multinomial_kernel(&f, k + 1)).unwrap();
        prop_assert_eq!(lhs, multinomial_kernel(&f, k));
    }

    #[test]
    fn mset_map_is_functorial(raw in prop::collection::vec(any::<u8>(), 9), k in 0usize..=3) {
        let f = kernel_from(("x", "y"), 2, 3, &raw);
        let g = kernel_from(("y", "z"), 3, 2, &raw[3..]);
        prop_assert_eq!(
            mset_map(&compose(&g, &f).unwrap(), k),
            compose(&mset_map(&g, k), &mset_map(&f, k)).unwrap()
        );
    }

    #[test]
    fn hypergeometric_rows_are_distributions(urn in arb_urn(3, 3), draws in 0usize..=4) {
        let x = urn.base().clone();
        let l = urn.size();
        prop_assume!(draws <= l);
        let hg = hypergeometric_kernel(&x, l, draws).unwrap();
        let i = FinSet::multisets(&x, l).index_of_counts(urn.counts()).unwrap();
        let total: Rat = hg.row(i).iter().map(|e| e.1.clone()).sum();
        prop_assert_eq!(total, rat(1, 1));
        prop_assert_eq!(hg, hypergeometric_composite(&x, l, draws).unwrap());
    }

    #[test]
    fn multiset_sum_is_commutative(a in prop::collection::vec(0u32..=3, 3), b in prop::collection::vec(0u32..=3, 3)) {
        let x = set("c", 3);
        let (a, b) = (Multiset::new(&x, a).unwrap(), Multiset::new(&x, b).unwrap());
        let ab = msum(&a, &b).unwrap();
        prop_assert_eq!(&ab, &msum(&b, &a).unwrap());
        prop_assert_eq!(ab.size(), a.size() + b.size());
    }

    #[test]
    fn zips_keep_rows_normalized(nx in 1usize..=2, ny in 1usize..=2, k in 0usize..=3) {
        let z = mzip_kernel(&set("x", nx), &set("y", ny), k);
        for i in 0..z.dom().len() {
            let total: Rat = z.row(i).iter().map(|e| e.1.clone()).sum();
            prop_assert_eq!(total, rat(1, 1));
        }
    }
}

/// The K-fold unit `acc ∘ δ[K]` fails to be natural: for a fair coin
/// `f : 1 → {h, t}` and K = 2, pushing the coin through the multiset
/// functor mixes outcomes, while drawing once and copying cannot.
#[test]
fn kfold_unit_is_not_natural() {
    let one = FinSet::unit();
    let y = FinSet::atoms(["h", "t"]).unwrap();
    let f = Kernel::state(&Dist::new(&y, vec![rat(1, 2), rat(1, 2)]).unwrap());
    let k = 2;
    let unit = |s: &FinSet| chain(&[&copy_kernel(s, k), &acc_kernel(s, k)]).unwrap();
    let via_functor = compose(&mset_map(&f, k), &unit(&one)).unwrap();
    let via_copy = compose(&unit(&y), &f).unwrap();
    assert_eq!(
        via_functor.row_dist(0).weights(),
        vec![rat(1, 4), rat(1, 2), rat(1, 4)]
    );
    assert_eq!(
        via_copy.row_dist(0).weights(),
        vec![rat(1, 2), rat(0, 1), rat(1, 2)]
    );
    assert_ne!(via_functor, via_copy);
    // A deterministic f does commute with the unit.
    let d = Kernel::deterministic(&one, &y, |_| 1);
    assert_eq!(
        compose(&mset_map(&d, k), &unit(&one)).unwrap(),
        compose(&unit(&y), &d).unwrap()
    );
    // f^K ∘ δ[K] on its own is the product state, not the copied one.
    let fk = compose(&power(&f, k), &copy_kernel(&one, k)).unwrap();
    assert_eq!(fk.row(0).len(), 4);
}
