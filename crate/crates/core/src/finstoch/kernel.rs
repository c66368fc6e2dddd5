use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::dist::Dist;
use super::finset::FinSet;
use crate::error::{Error, Result};
use crate::rat::{format_rat, Rat};

/// A sparse probability row: `(codomain index, weight)` pairs, strictly
/// increasing in index, with every weight positive.
pub type Row = Vec<(usize, Rat)>;

type RowGen = dyn Fn(usize) -> Row + Send + Sync;

enum Rows {
    Eager(Vec<Row>),
    Lazy {
        cells: OnceLock<Box<[OnceLock<Row>]>>,
        gen: Box<RowGen>,
    },
}

struct Inner {
    dom: FinSet,
    cod: FinSet,
    rows: Rows,
    span: usize,
}

/// A stochastic map `X → Dist(Y)`.
///
/// Kernels are immutable values. Composites built from other kernels
/// compute each row on first access and cache it, so a composite such as
/// `acc ∘ f^K ∘ δ[K]` only ever evaluates the rows it can reach.
#[derive(Clone)]
pub struct Kernel(Arc<Inner>);

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kernel⟨{} → {}⟩", self.dom(), self.cod())
    }
}

pub(crate) fn mul(a: &Rat, b: &Rat) -> Rat {
    if a.is_one() {
        b.clone()
    } else if b.is_one() {
        a.clone()
    } else {
        a * b
    }
}

/// Sorts and merges duplicate indices, dropping zero weights.
pub(crate) fn normalize_row(mut entries: Vec<(usize, Rat)>) -> Row {
    if entries.len() <= 1 {
        entries.retain(|(_, w)| !w.is_zero());
        return entries;
    }
    entries.sort_unstable_by_key(|(i, _)| *i);
    let mut out: Row = Vec::with_capacity(entries.len());
    for (i, w) in entries {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += w,
            _ => out.push((i, w)),
        }
    }
    out.retain(|(_, w)| !w.is_zero());
    out
}

fn check_row(row: &Row, cod: &FinSet) -> Result<()> {
    let mut sum = Rat::zero();
    let mut prev: Option<usize> = None;
    for (j, w) in row {
        if *j >= cod.len() {
            return Err(Error::IndexOutOfRange {
                index: *j,
                len: cod.len(),
            });
        }
        if prev.is_some_and(|p| p >= *j) {
            return Err(Error::Invalid(
                "row indices must be strictly increasing".into(),
            ));
        }
        if *w <= Rat::zero() {
            return Err(Error::NegativeWeight(format_rat(w)));
        }
        prev = Some(*j);
        sum += w;
    }
    if !sum.is_one() {
        return Err(Error::NotNormalized(format_rat(&sum)));
    }
    Ok(())
}

impl Kernel {
    /// Builds a kernel from explicit rows, validating every row.
    pub fn new(dom: &FinSet, cod: &FinSet, rows: Vec<Row>) -> Result<Kernel> {
        if rows.len() != dom.len() {
            return Err(Error::LengthMismatch {
                expected: dom.len(),
                got: rows.len(),
            });
        }
        let rows: Vec<Row> = rows.into_iter().map(normalize_row).collect();
        for r in &rows {
            check_row(r, cod)?;
        }
        Ok(Kernel::eager(dom, cod, rows))
    }

    /// One distribution per domain element.
    pub fn from_dists(dom: &FinSet, dists: &[Dist]) -> Result<Kernel> {
        let cod = match dists.first() {
            Some(d) => d.carrier().clone(),
            None => {
                return Err(Error::Invalid(
                    "cannot infer the codomain of a kernel with no rows".into(),
                ))
            }
        };
        if dists.iter().any(|d| d.carrier() != &cod) {
            return Err(Error::TypeMismatch("rows over different carriers".into()));
        }
        Kernel::new(
            dom,
            &cod,
            dists.iter().map(|d| d.support().to_vec()).collect(),
        )
    }

    pub(crate) fn eager(dom: &FinSet, cod: &FinSet, rows: Vec<Row>) -> Kernel {
        let span = dom.len().max(cod.len());
        Kernel(Arc::new(Inner {
            dom: dom.clone(),
            cod: cod.clone(),
            rows: Rows::Eager(rows),
            span,
        }))
    }

    /// A kernel whose rows are produced on demand by `gen`. `parts` are the
    /// kernels the rows are computed from; they only contribute to `span`.
    pub(crate) fn lazy<F>(dom: &FinSet, cod: &FinSet, parts: &[&Kernel], gen: F) -> Kernel
    where
        F: Fn(usize) -> Row + Send + Sync + 'static,
    {
        let span = parts
            .iter()
            .map(|k| k.span())
            .fold(dom.len().max(cod.len()), usize::max);
        Kernel(Arc::new(Inner {
            dom: dom.clone(),
            cod: cod.clone(),
            rows: Rows::Lazy {
                cells: OnceLock::new(),
                gen: Box::new(gen),
            },
            span,
        }))
    }

    /// A deterministic kernel given by a function on indices.
    pub fn deterministic<F>(dom: &FinSet, cod: &FinSet, f: F) -> Kernel
    where
        F: Fn(usize) -> usize + Send + Sync + 'static,
    {
        Kernel::lazy(dom, cod, &[], move |i| vec![(f(i), Rat::one())])
    }

    pub fn identity(x: &FinSet) -> Kernel {
        Kernel::deterministic(x, x, |i| i)
    }

    /// The order-preserving bijection between two sets of equal size. Under
    /// the canonical orders this realizes unitors, associators, `X^K ⊗ X^L
    /// ≅ X^{K+L}`, `(X^L)^K ≅ X^{K·L}` and `n ⊗ X ≅ X + … + X`.
    pub fn reindex(from: &FinSet, to: &FinSet) -> Result<Kernel> {
        if from.len() != to.len() {
            return Err(Error::TypeMismatch(format!(
                "cannot reindex {from} ({}) as {to} ({})",
                from.len(),
                to.len()
            )));
        }
        Ok(Kernel::deterministic(from, to, |i| i))
    }

    /// The constant kernel `X → Y` with every row equal to `d`.
    pub fn constant(dom: &FinSet, d: &Dist) -> Kernel {
        let row = d.support().to_vec();
        Kernel::lazy(dom, d.carrier(), &[], move |_| row.clone())
    }

    /// A distribution as a kernel out of the unit.
    pub fn state(d: &Dist) -> Kernel {
        Kernel::eager(&FinSet::unit(), d.carrier(), vec![d.support().to_vec()])
    }

    pub fn dom(&self) -> &FinSet {
        &self.0.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.0.cod
    }

    /// Largest carrier touched while building this kernel.
    pub fn span(&self) -> usize {
        self.0.span
    }

    pub fn row(&self, i: usize) -> &Row {
        match &self.0.rows {
            Rows::Eager(rows) => &rows[i],
            Rows::Lazy { cells, gen } => {
                let cells =
                    cells.get_or_init(|| (0..self.0.dom.len()).map(|_| OnceLock::new()).collect());
                cells[i].get_or_init(|| gen(i))
            }
        }
    }

    /// Weight of `j` in row `i`.
    pub fn weight(&self, i: usize, j: usize) -> Rat {
        let row = self.row(i);
        match row.binary_search_by_key(&j, |(k, _)| *k) {
            Ok(p) => row[p].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Row `i` as a distribution over the codomain.
    pub fn row_dist(&self, i: usize) -> Dist {
        Dist::from_support_unchecked(self.cod(), self.row(i).clone())
    }

    /// The distribution of a kernel out of a singleton.
    pub fn as_dist(&self) -> Result<Dist> {
        if self.dom().len() != 1 {
            return Err(Error::TypeMismatch(format!(
                "{:?} is not a state (domain has {} elements)",
                self,
                self.dom().len()
            )));
        }
        Ok(self.row_dist(0))
    }

    /// Forces every row and returns an eagerly stored copy.
    pub fn materialize(&self) -> Kernel {
        let rows = (0..self.dom().len()).map(|i| self.row(i).clone()).collect();
        Kernel::eager(self.dom(), self.cod(), rows)
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn after(&self, f: &Kernel) -> Result<Kernel> {
        compose(self, f)
    }

    /// `g ∘ self`: first `self`, then `g`.
    pub fn then(&self, g: &Kernel) -> Result<Kernel> {
        compose(g, self)
    }

    /// Whether every row is a point mass.
    pub fn rows_are_point_masses(&self) -> bool {
        (0..self.dom().len()).all(|i| {
            let r = self.row(i);
            r.len() == 1 && r[0].1.is_one()
        })
    }

    /// First domain index at which the two kernels differ.
    pub fn first_difference(&self, other: &Kernel) -> Option<usize> {
        (0..self.dom().len()).find(|&i| self.row(i) != other.row(i))
    }

    /// Exact equality: same domain, same codomain and identical rows.
    pub fn equals(&self, other: &Kernel) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.dom() == other.dom()
            && self.cod() == other.cod()
            && self.first_difference(other).is_none()
    }

    /// Renders every nonzero entry, one row per line.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        for i in 0..self.dom().len() {
            s.push_str(&format!("{} ↦ ", self.dom().label(i)));
            let parts: Vec<String> = self
                .row(i)
                .iter()
                .map(|(j, w)| format!("{}:{}", self.cod().label(*j), format_rat(w)))
                .collect();
            s.push_str(&parts.join(", "));
            s.push('\n');
        }
        s
    }
}

impl PartialEq for Kernel {
    fn eq(&self, other: &Kernel) -> bool {
        self.equals(other)
    }
}

/// Exact kernel equality.
pub fn kernel_equal(f: &Kernel, g: &Kernel) -> bool {
    f.equals(g)
}

/// `g ∘ f`, the Chapman–Kolmogorov sum.
pub fn compose(g: &Kernel, f: &Kernel) -> Result<Kernel> {
    if f.cod() != g.dom() {
        return Err(Error::TypeMismatch(format!(
            "cannot compose {g:?} after {f:?}"
        )));
    }
    let (f2, g2) = (f.clone(), g.clone());
    Ok(Kernel::lazy(f.dom(), g.cod(), &[f, g], move |x| {
        let fr = f2.row(x);
        if let [(y, w)] = fr.as_slice() {
            if w.is_one() {
                return g2.row(*y).clone();
            }
        }
        let mut acc = Vec::new();
        for (y, w) in fr {
            for (z, v) in g2.row(*y) {
                acc.push((*z, mul(w, v)));
            }
        }
        normalize_row(acc)
    }))
}

/// Composes a pipeline, applying `stages[0]` first.
pub fn chain(stages: &[&Kernel]) -> Result<Kernel> {
    let (first, rest) = stages
        .split_first()
        .ok_or_else(|| Error::Invalid("empty composition chain".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, k| compose(k, &acc))
}

/// `f ⊗ g`, with row-major pair indexing on both sides.
pub fn tensor(f: &Kernel, g: &Kernel) -> Kernel {
    let dom = FinSet::product(f.dom(), g.dom());
    let cod = FinSet::product(f.cod(), g.cod());
    let (f2, g2) = (f.clone(), g.clone());
    let na = g.dom().len();
    let nb = g.cod().len();
    Kernel::lazy(&dom, &cod, &[f, g], move |idx| {
        let (x, a) = (idx / na, idx % na);
        let gr = g2.row(a);
        let mut out = Vec::with_capacity(f2.row(x).len() * gr.len());
        for (y, w) in f2.row(x) {
            for (b, v) in gr {
                out.push((y * nb + b, mul(w, v)));
            }
        }
        out
    })
}

/// `f^K = f ⊗ … ⊗ f : X^K → Y^K`.
pub fn power(f: &Kernel, k: usize) -> Kernel {
    let dom = FinSet::power(f.dom(), k);
    let cod = FinSet::power(f.cod(), k);
    let f2 = f.clone();
    let nx = f.dom().len();
    let ny = f.cod().len();
    Kernel::lazy(&dom, &cod, &[f], move |idx| {
        let mut coords = vec![0usize; k];
        super::finset::decode_tuple(idx, nx, &mut coords);
        let mut acc: Row = vec![(0, Rat::one())];
        for &c in &coords {
            let r = f2.row(c);
            let mut next = Vec::with_capacity(acc.len() * r.len());
            for (i, w) in &acc {
                for (y, v) in r {
                    next.push((i * ny + y, mul(w, v)));
                }
            }
            acc = next;
        }
        acc
    })
}
