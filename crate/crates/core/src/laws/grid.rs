use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::finstoch::{
    fractional_series, uniform_state, ConvexSeries, Dist, FinSet, Kernel, Permutation,
};
use crate::rat::Rat;

/// The quantified variables a law ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    X,
    Y,
    F,
    G,
    K,
    /// `L` bounded together with `K` by `K·L` and `K+L`.
    L,
    /// `L` as an urn size for a draw of `K`: `K ≤ L`, `L` bounded on its own.
    Urn,
    N,
    Sigma,
    R,
    S,
}

/// The shapes of kernel the grid draws `f` and `g` from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// The order-preserving bijection; only offered when sizes agree.
    Identity,
    Constant,
    Deterministic,
    Generic,
}

impl KernelKind {
    pub const ALL: [KernelKind; 4] = [
        KernelKind::Identity,
        KernelKind::Constant,
        KernelKind::Deterministic,
        KernelKind::Generic,
    ];

    pub fn is_deterministic(self) -> bool {
        matches!(self, KernelKind::Identity | KernelKind::Deterministic)
    }

    fn name(self) -> &'static str {
        match self {
            KernelKind::Identity => "id",
            KernelKind::Constant => "const",
            KernelKind::Deterministic => "det",
            KernelKind::Generic => "generic",
        }
    }
}

const PRIMES: [u64; 16] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];

fn generic_row(i: usize, m: usize, salt: usize) -> Vec<Rat> {
    let scale = if m <= 6 { 1 } else { m as u64 };
    let hole = (i + salt) % m;
    let mut row = vec![Rat::from_integer(BigInt::from(0)); m];
    let mut rest = Rat::one();
    let mut p = i + salt;
    for (j, w) in row.iter_mut().enumerate() {
        if j == hole {
            continue;
        }
        *w = Rat::new(
            BigInt::one(),
            BigInt::from(PRIMES[p % PRIMES.len()] * scale),
        );
        rest -= &*w;
        p += 1;
    }
    row[hole] = rest;
    row
}

/// A kernel `dom → cod` of the given kind. `salt` shifts the entries so
/// that different draws differ.
pub fn make_kernel(kind: KernelKind, dom: &FinSet, cod: &FinSet, salt: usize) -> Option<Kernel> {
    let m = cod.len();
    if m == 0 {
        return (dom.is_empty()).then(|| Kernel::new(dom, cod, vec![]).expect("empty"));
    }
    Some(match kind {
        KernelKind::Identity => Kernel::reindex(dom, cod).ok()?,
        KernelKind::Constant => {
            let d = Dist::new(cod, generic_row(0, m, salt)).expect("normalized");
            Kernel::constant(dom, &d)
        }
        KernelKind::Deterministic => Kernel::deterministic(dom, cod, move |i| (i / 2 + salt) % m),
        KernelKind::Generic => {
            let rows = (0..dom.len())
                .map(|i| Dist::new(cod, generic_row(i, m, salt)).expect("normalized"))
                .collect::<Vec<_>>();
            Kernel::from_dists(dom, &rows).expect("well typed")
        }
    })
}

/// The permutations of size `k` the grid quantifies over.
pub fn grid_permutations(k: usize) -> Vec<Permutation> {
    if k <= 3 {
        return Permutation::all(k);
    }
    let mut out = vec![Permutation::identity(k)];
    for a in 0..k {
        for b in a + 1..k {
            out.push(Permutation::transposition(k, a, b));
        }
    }
    out.push(Permutation::rotation(k));
    out
}

/// The convex series the grid quantifies over, with display names.
pub fn grid_series() -> Vec<(&'static str, ConvexSeries)> {
    vec![
        ("unif_2", uniform_state(2).expect("n > 0")),
        ("unif_3", uniform_state(3).expect("n > 0")),
        ("frac[1,2]", fractional_series(&[1, 2]).expect("n > 0")),
        ("frac[1,3,2]", fractional_series(&[1, 3, 2]).expect("n > 0")),
    ]
}

/// Bounds of the instance grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub max_set: usize,
    pub max_y: usize,
    pub max_k: usize,
    pub max_kl: usize,
    pub max_k_plus_l: usize,
    pub max_urn: usize,
    pub max_n: usize,
    pub max_kln: usize,
    /// Skip an instance when some carrier involved exceeds this size.
    pub span_limit: usize,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            max_set: 3,
            max_y: 2,
            max_k: 4,
            max_kl: 6,
            max_k_plus_l: 5,
            max_urn: 5,
            max_n: 2,
            max_kln: 8,
            span_limit: 20_000,
            seed: 0,
        }
    }
}

impl GridSpec {
    /// The default grid with `|X| ≤ max_set` and `K ≤ max_k`.
    pub fn with_bounds(max_set: usize, max_k: usize) -> GridSpec {
        let d = GridSpec::default();
        GridSpec {
            max_set,
            max_y: d.max_y.min(max_set),
            max_k,
            max_urn: d.max_urn.max(max_k),
            ..d
        }
    }
}

/// One point of the grid, before the sets and kernels are built.
#[derive(Debug, Clone)]
struct Choice {
    x: usize,
    y: usize,
    f: KernelKind,
    g: KernelKind,
    k: usize,
    l: usize,
    n: usize,
    sigma: Option<Permutation>,
    r: usize,
    s: usize,
}

const X_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
const Y_NAMES: [&str; 8] = ["u", "v", "w", "p", "q", "r", "s", "t"];

fn names(pool: &[&'static str], n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            pool.get(i)
                .map_or_else(|| format!("e{i}"), |s| s.to_string())
        })
        .collect()
}

/// The universally quantified data of a law, made concrete.
#[derive(Clone)]
pub struct Instance {
    pub x: FinSet,
    pub y: FinSet,
    /// `f : X → Y`.
    pub f: Kernel,
    /// `g : Y → X`.
    pub g: Kernel,
    pub f_kind: KernelKind,
    pub g_kind: KernelKind,
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub sigma: Permutation,
    pub r: ConvexSeries,
    pub s: ConvexSeries,
    seed: usize,
    desc: String,
}

impl Instance {
    /// `len` kernels `X → Y`; the first is `f`.
    pub fn f_family(&self, len: usize) -> Vec<Kernel> {
        family(&self.f, &self.x, &self.y, len, self.seed)
    }

    /// `len` kernels `Y → X`; the first is `g`.
    pub fn g_family(&self, len: usize) -> Vec<Kernel> {
        family(&self.g, &self.y, &self.x, len, self.seed + 7)
    }

    pub fn describe(&self) -> &str {
        &self.desc
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.desc)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.desc)
    }
}

fn family(first: &Kernel, dom: &FinSet, cod: &FinSet, len: usize, seed: usize) -> Vec<Kernel> {
    let cycle = [
        KernelKind::Generic,
        KernelKind::Deterministic,
        KernelKind::Constant,
    ];
    let mut out = vec![first.clone()];
    for i in 1..len {
        let kind = cycle[(i - 1) % cycle.len()];
        out.push(make_kernel(kind, dom, cod, seed + i).expect("sizes are positive"));
    }
    out
}

/// Enumerates the grid along `dims`; other variables keep fixed defaults.
pub fn instances(spec: &GridSpec, dims: &[Dim]) -> Vec<Instance> {
    let has = |d: Dim| dims.contains(&d);
    let series = grid_series();
    let mut choices = vec![Choice {
        x: 2.min(spec.max_set.max(1)),
        y: 2.min(spec.max_y.max(1)),
        f: KernelKind::Generic,
        g: KernelKind::Generic,
        k: 2.min(spec.max_k),
        l: 1,
        n: 1,
        sigma: None,
        r: 0,
        s: 2,
    }];
    let expand = |choices: Vec<Choice>, f: &dyn Fn(&Choice) -> Vec<Choice>| -> Vec<Choice> {
        choices.iter().flat_map(f).collect()
    };
    if has(Dim::X) {
        choices = expand(choices, &|c| {
            (1..=spec.max_set)
                .map(|x| Choice { x, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::Y) {
        choices = expand(choices, &|c| {
            (1..=spec.max_y)
                .map(|y| Choice { y, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::F) {
        choices = expand(choices, &|c| {
            KernelKind::ALL
                .iter()
                .filter(|&&k| k != KernelKind::Identity || c.x == c.y)
                .map(|&f| Choice { f, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::G) {
        choices = expand(choices, &|c| {
            KernelKind::ALL
                .iter()
                .filter(|&&k| k != KernelKind::Identity || c.x == c.y)
                .map(|&g| Choice { g, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::K) {
        choices = expand(choices, &|c| {
            (0..=spec.max_k)
                .map(|k| Choice { k, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::L) {
        choices = expand(choices, &|c| {
            (0..=spec.max_k)
                .filter(|&l| c.k * l <= spec.max_kl && c.k + l <= spec.max_k_plus_l)
                .map(|l| Choice { l, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::Urn) {
        choices = expand(choices, &|c| {
            (c.k..=spec.max_urn)
                .map(|l| Choice { l, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::N) {
        choices = expand(choices, &|c| {
            (1..=spec.max_n)
                .filter(|&n| c.k * c.l * n <= spec.max_kln)
                .map(|n| Choice { n, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::Sigma) {
        choices = expand(choices, &|c| {
            grid_permutations(c.k)
                .into_iter()
                .map(|p| Choice {
                    sigma: Some(p),
                    ..c.clone()
                })
                .collect()
        });
    }
    if has(Dim::R) {
        choices = expand(choices, &|c| {
            (0..series.len())
                .map(|r| Choice { r, ..c.clone() })
                .collect()
        });
    }
    if has(Dim::S) {
        choices = expand(choices, &|c| {
            (0..series.len())
                .map(|s| Choice { s, ..c.clone() })
                .collect()
        });
    }
    let seed = spec.seed as usize;
    choices
        .into_iter()
        .map(|c| {
            let x = FinSet::atoms(names(&X_NAMES, c.x)).expect("distinct");
            let y = FinSet::atoms(names(&Y_NAMES, c.y)).expect("distinct");
            let f = make_kernel(c.f, &x, &y, seed).expect("positive sizes");
            let g = make_kernel(c.g, &y, &x, seed + 1).expect("positive sizes");
            let sigma = c
                .sigma
                .clone()
                .unwrap_or_else(|| Permutation::identity(c.k));
            let mut desc = Vec::new();
            for (d, text) in [
                (Dim::X, format!("X={x}")),
                (Dim::Y, format!("Y={y}")),
                (Dim::F, format!("f={}", c.f.name())),
                (Dim::G, format!("g={}", c.g.name())),
                (Dim::K, format!("K={}", c.k)),
                (Dim::L, format!("L={}", c.l)),
                (Dim::Urn, format!("L={}", c.l)),
                (Dim::N, format!("N={}", c.n)),
                (Dim::Sigma, format!("σ={sigma}")),
                (Dim::R, format!("r={}", series[c.r].0)),
                (Dim::S, format!("s={}", series[c.s].0)),
            ] {
                if has(d) {
                    desc.push(text);
                }
            }
            Instance {
                f_kind: c.f,
                g_kind: c.g,
                k: c.k,
                l: c.l,
                n: c.n,
                sigma,
                r: series[c.r].1.clone(),
                s: series[c.s].1.clone(),
                seed,
                desc: desc.join(" "),
                x,
                y,
                f,
                g,
            }
        })
        .collect()
}
