use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// An element name. Composite carriers build composite labels from the
/// labels of their factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(Arc<str>),
    /// Element of a binary product.
    Pair(Box<Label>, Box<Label>),
    /// Element of a coproduct: summand index and inner element.
    Tagged(usize, Box<Label>),
    /// Element of a power `X^K`.
    Tuple(Vec<Label>),
    /// Element of a multiset space: nonzero multiplicities in base order.
    Bag(Vec<(Label, usize)>),
}

impl Label {
    pub fn atom(s: &str) -> Label {
        Label::Atom(Arc::from(s))
    }

    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Tagged(i, l) => write!(f, "[{i}]{l}"),
            Label::Tuple(ls) => {
                f.write_str("(")?;
                for (i, l) in ls.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str(")")
            }
            Label::Bag(items) => {
                if items.is_empty() {
                    return f.write_str("0");
                }
                for (i, (l, c)) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{c}|{l}|")?;
                }
                Ok(())
            }
        }
    }
}

/// Number of count vectors of length `n` summing to `k`, saturating.
pub(crate) fn multichoose_u128(n: usize, k: usize) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    // C(n+k-1, k) computed incrementally; every prefix product is an integer.
    let top = (n + k - 1) as u128;
    let k = k.min(n - 1) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(top - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Enumeration of all size-`k` count vectors over `n` colours, in the
/// canonical order: ascending lexicographic on the sorted representative
/// tuple, which is descending lexicographic on the count vectors.
#[derive(Debug)]
pub(crate) struct MultisetTable {
    width: usize,
    counts: Vec<u32>,
}

impl MultisetTable {
    fn build(n: usize, k: usize, len: usize) -> MultisetTable {
        let mut counts = Vec::with_capacity(len * n);
        let mut cur = vec![0u32; n];
        fn rec(i: usize, rem: usize, cur: &mut [u32], out: &mut Vec<u32>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = rem as u32;
                out.extend_from_slice(cur);
                return;
            }
            for c in (0..=rem).rev() {
                cur[i] = c as u32;
                rec(i + 1, rem - c, cur, out);
            }
        }
        if n == 0 {
            // Only the empty multiset, and only when k == 0; width 0 rows.
        } else {
            rec(0, k, &mut cur, &mut counts);
        }
        MultisetTable { width: n, counts }
    }

    fn row(&self, i: usize) -> &[u32] {
        &self.counts[i * self.width..(i + 1) * self.width]
    }
}

#[derive(Debug)]
enum Shape {
    Atoms {
        labels: Vec<Arc<str>>,
        index: HashMap<Arc<str>, usize>,
    },
    Product(FinSet, FinSet),
    Coproduct {
        parts: Vec<FinSet>,
        offsets: Vec<usize>,
    },
    Power(FinSet, usize),
    Multisets {
        base: FinSet,
        size: usize,
        table: OnceLock<MultisetTable>,
    },
}

#[derive(Debug)]
struct Node {
    shape: Shape,
    len: usize,
}

/// A finite set with a canonical element order.
///
/// Elements are addressed by index. Composite sets (products, coproducts,
/// powers, multiset spaces) keep their structure so that element indices
/// can be decoded without materializing label lists:
///
/// * `X ⊗ Y` is row-major (`x` major, `y` minor);
/// * `X_0 + … + X_n` lists the blocks in order;
/// * `X^K` is a mixed-radix numeral, leftmost position most significant;
/// * `M[K](X)` is ordered by the sorted representative tuple.
///
/// Two sets are equal when they have the same structure, so `X^1` and `X`
/// are distinct objects related by a canonical isomorphism.
#[derive(Clone)]
pub struct FinSet(Arc<Node>);

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.shape {
            Shape::Atoms { labels, .. } => {
                if is_number(labels) {
                    return write!(f, "{}", labels.len());
                }
                f.write_str("{")?;
                for (i, l) in labels.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str(l)?;
                }
                f.write_str("}")
            }
            Shape::Product(a, b) => write!(f, "({a}⊗{b})"),
            Shape::Coproduct { parts, .. } => {
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            Shape::Power(x, k) => write!(f, "{x}^{k}"),
            Shape::Multisets { base, size, .. } => write!(f, "M[{size}]({base})"),
        }
    }
}

fn is_number(labels: &[Arc<str>]) -> bool {
    labels
        .iter()
        .enumerate()
        .all(|(i, l)| l.as_ref() == i.to_string())
}

impl PartialEq for FinSet {
    fn eq(&self, other: &FinSet) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.len != other.0.len {
            return false;
        }
        match (&self.0.shape, &other.0.shape) {
            (Shape::Atoms { labels: a, .. }, Shape::Atoms { labels: b, .. }) => a == b,
            (Shape::Product(a1, b1), Shape::Product(a2, b2)) => a1 == a2 && b1 == b2,
            (Shape::Coproduct { parts: a, .. }, Shape::Coproduct { parts: b, .. }) => a == b,
            (Shape::Power(a, k), Shape::Power(b, l)) => k == l && a == b,
            (
                Shape::Multisets {
                    base: a, size: k, ..
                },
                Shape::Multisets {
                    base: b, size: l, ..
                },
            ) => k == l && a == b,
            _ => false,
        }
    }
}

impl Eq for FinSet {}

impl FinSet {
    fn from_shape(shape: Shape, len: usize) -> FinSet {
        FinSet(Arc::new(Node { shape, len }))
    }

    /// A set of atoms in the given order. Duplicates are rejected; an empty
    /// list gives the initial object.
    pub fn atoms<I, S>(labels: I) -> Result<FinSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out: Vec<Arc<str>> = Vec::new();
        let mut index = HashMap::new();
        for l in labels {
            let l: Arc<str> = Arc::from(l.as_ref());
            if index.insert(l.clone(), out.len()).is_some() {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
            out.push(l);
        }
        let len = out.len();
        Ok(FinSet::from_shape(Shape::Atoms { labels: out, index }, len))
    }

    /// The interpreted number `n = 1 + … + 1`, with atoms `"0"`..`"n-1"`.
    pub fn number(n: usize) -> FinSet {
        FinSet::atoms((0..n).map(|i| i.to_string())).expect("distinct numerals")
    }

    /// The tensor unit, which is also the final object.
    pub fn unit() -> FinSet {
        FinSet::number(1)
    }

    /// The initial object.
    pub fn empty() -> FinSet {
        FinSet::number(0)
    }

    pub fn product(a: &FinSet, b: &FinSet) -> FinSet {
        let len = a.len().saturating_mul(b.len());
        FinSet::from_shape(Shape::Product(a.clone(), b.clone()), len)
    }

    pub fn coproduct(parts: &[FinSet]) -> FinSet {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut len = 0usize;
        for p in parts {
            offsets.push(len);
            len = len.saturating_add(p.len());
        }
        FinSet::from_shape(
            Shape::Coproduct {
                parts: parts.to_vec(),
                offsets,
            },
            len,
        )
    }

    /// The copower `n·Z`: `n` identical blocks.
    pub fn copower(n: usize, z: &FinSet) -> FinSet {
        FinSet::coproduct(&vec![z.clone(); n])
    }

    pub fn power(x: &FinSet, k: usize) -> FinSet {
        let len = (0..k).fold(1usize, |acc, _| acc.saturating_mul(x.len()));
        FinSet::from_shape(Shape::Power(x.clone(), k), len)
    }

    /// The space `M[K](X)` of size-`K` multisets over `x`.
    pub fn multisets(x: &FinSet, k: usize) -> FinSet {
        let len = usize::try_from(multichoose_u128(x.len(), k)).unwrap_or(usize::MAX);
        FinSet::from_shape(
            Shape::Multisets {
                base: x.clone(),
                size: k,
                table: OnceLock::new(),
            },
            len,
        )
    }

    pub fn len(&self) -> usize {
        self.0.len
    }

    pub fn is_empty(&self) -> bool {
        self.0.len == 0
    }

    pub fn same(&self, other: &FinSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn as_product(&self) -> Option<(&FinSet, &FinSet)> {
        match &self.0.shape {
            Shape::Product(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_coproduct(&self) -> Option<&[FinSet]> {
        match &self.0.shape {
            Shape::Coproduct { parts, .. } => Some(parts),
            _ => None,
        }
    }

    pub fn as_power(&self) -> Option<(&FinSet, usize)> {
        match &self.0.shape {
            Shape::Power(x, k) => Some((x, *k)),
            _ => None,
        }
    }

    pub fn as_multisets(&self) -> Option<(&FinSet, usize)> {
        match &self.0.shape {
            Shape::Multisets { base, size, .. } => Some((base, *size)),
            _ => None,
        }
    }

    pub(crate) fn expect_power(&self) -> Result<(&FinSet, usize)> {
        self.as_power()
            .ok_or_else(|| Error::TypeMismatch(format!("{self} is not a power")))
    }

    pub(crate) fn expect_multisets(&self) -> Result<(&FinSet, usize)> {
        self.as_multisets()
            .ok_or_else(|| Error::TypeMismatch(format!("{self} is not a multiset space")))
    }

    // ---- index arithmetic -------------------------------------------------

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        let (_, b) = self.as_product().expect("pair_index on a product");
        i * b.len() + j
    }

    pub fn split_pair(&self, idx: usize) -> (usize, usize) {
        let (_, b) = self.as_product().expect("split_pair on a product");
        (idx / b.len(), idx % b.len())
    }

    pub fn inject(&self, tag: usize, i: usize) -> usize {
        match &self.0.shape {
            Shape::Coproduct { offsets, .. } => offsets[tag] + i,
            _ => panic!("inject on a non-coproduct"),
        }
    }

    pub fn split_tag(&self, idx: usize) -> (usize, usize) {
        match &self.0.shape {
            Shape::Coproduct { parts, offsets } => {
                // Last block whose offset is <= idx and which is nonempty.
                let tag = offsets.partition_point(|&o| o <= idx) - 1;
                let mut t = tag;
                while parts[t].is_empty() {
                    t -= 1;
                }
                (t, idx - offsets[t])
            }
            _ => panic!("split_tag on a non-coproduct"),
        }
    }

    pub fn tuple_index(&self, coords: &[usize]) -> usize {
        let (x, _) = self.as_power().expect("tuple_index on a power");
        let n = x.len();
        coords.iter().fold(0, |acc, &c| acc * n + c)
    }

    pub fn tuple_of(&self, idx: usize) -> Vec<usize> {
        let (x, k) = self.as_power().expect("tuple_of on a power");
        let mut out = vec![0; k];
        decode_tuple(idx, x.len(), &mut out);
        out
    }

    fn table(&self) -> &MultisetTable {
        match &self.0.shape {
            Shape::Multisets { base, size, table } => {
                table.get_or_init(|| MultisetTable::build(base.len(), *size, self.0.len))
            }
            _ => panic!("multiset table on a non-multiset space"),
        }
    }

    /// Count vector of the multiset at `idx`.
    pub fn counts_of(&self, idx: usize) -> &[u32] {
        self.table().row(idx)
    }

    /// Index of a count vector; `None` if its length or total is wrong.
    pub fn index_of_counts(&self, counts: &[u32]) -> Option<usize> {
        let (base, k) = self.as_multisets()?;
        if counts.len() != base.len() || counts.iter().map(|&c| c as usize).sum::<usize>() != k {
            return None;
        }
        Some(rank_counts(counts, k))
    }

    // ---- labels -----------------------------------------------------------

    pub fn label(&self, idx: usize) -> Label {
        assert!(idx < self.len(), "index {idx} out of range for {self}");
        match &self.0.shape {
            Shape::Atoms { labels, .. } => Label::Atom(labels[idx].clone()),
            Shape::Product(a, b) => {
                let (i, j) = self.split_pair(idx);
                Label::pair(a.label(i), b.label(j))
            }
            Shape::Coproduct { parts, .. } => {
                let (t, i) = self.split_tag(idx);
                Label::Tagged(t, Box::new(parts[t].label(i)))
            }
            Shape::Power(x, _) => {
                Label::Tuple(self.tuple_of(idx).into_iter().map(|c| x.label(c)).collect())
            }
            Shape::Multisets { base, .. } => Label::Bag(
                self.counts_of(idx)
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(i, &c)| (base.label(i), c as usize))
                    .collect(),
            ),
        }
    }

    pub fn labels(&self) -> Vec<Label> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        match (&self.0.shape, label) {
            (Shape::Atoms { index, .. }, Label::Atom(s)) => index.get(s).copied(),
            (Shape::Product(a, b), Label::Pair(x, y)) => {
                Some(a.index_of(x)? * b.len() + b.index_of(y)?)
            }
            (Shape::Coproduct { parts, offsets }, Label::Tagged(t, l)) => {
                Some(offsets.get(*t)? + parts[*t].index_of(l)?)
            }
            (Shape::Power(x, k), Label::Tuple(ls)) if ls.len() == *k => {
                let mut acc = 0;
                for l in ls {
                    acc = acc * x.len() + x.index_of(l)?;
                }
                Some(acc)
            }
            (Shape::Multisets { base, .. }, Label::Bag(items)) => {
                let mut counts = vec![0u32; base.len()];
                for (l, c) in items {
                    counts[base.index_of(l)?] += *c as u32;
                }
                self.index_of_counts(&counts)
            }
            _ => None,
        }
    }

    /// Index of an atom given by name, for atom sets.
    pub fn index_of_atom(&self, name: &str) -> Option<usize> {
        match &self.0.shape {
            Shape::Atoms { index, .. } => index.get(name).copied(),
            _ => None,
        }
    }
}

pub(crate) fn decode_tuple(mut idx: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

/// Rank of a count vector in the canonical multiset order.
fn rank_counts(counts: &[u32], k: usize) -> usize {
    let n = counts.len();
    let mut rem = k;
    let mut rank: u128 = 0;
    for (i, &c) in counts.iter().enumerate() {
        let c = c as usize;
        let tail = n - i - 1;
        // Vectors sharing the prefix but with a larger entry here come first.
        for v in (c + 1)..=rem {
            if tail == 0 {
                break;
            }
            rank += multichoose_u128(tail, rem - v);
        }
        rem -= c;
    }
    rank as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> FinSet {
        FinSet::atoms(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn atoms_reject_duplicates() {
        assert!(matches!(
            FinSet::atoms(["a", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert_eq!(FinSet::atoms(Vec::<&str>::new()).unwrap().len(), 0);
        let x = FinSet::atoms(["r", "g", "b"]).unwrap();
        assert_eq!(
            x.labels(),
            vec![Label::atom("r"), Label::atom("g"), Label::atom("b")]
        );
    }

    #[test]
    fn cardinalities() {
        let x = abc();
        let y = FinSet::atoms(["u", "v"]).unwrap();
        assert_eq!(FinSet::product(&x, &y).len(), 6);
        assert_eq!(FinSet::coproduct(&[x.clone(), y.clone()]).len(), 5);
        assert_eq!(FinSet::power(&x, 3).len(), 27);
        assert_eq!(FinSet::power(&x, 0).len(), 1);
        assert_eq!(FinSet::multisets(&x, 2).len(), 6);
        assert_eq!(FinSet::multisets(&x, 0).len(), 1);
        assert_eq!(FinSet::multisets(&FinSet::empty(), 3).len(), 0);
        assert_eq!(FinSet::multisets(&FinSet::empty(), 0).len(), 1);
    }

    #[test]
    fn multiset_order_follows_sorted_representatives() {
        let x = FinSet::atoms(["h", "t"]).unwrap();
        let m = FinSet::multisets(&x, 2);
        let rendered: Vec<String> = m.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(rendered, ["2|h|", "1|h|+1|t|", "2|t|"]);
    }

    #[test]
    fn multiset_rank_inverts_table() {
        for n in 0..5 {
            for k in 0..5 {
                let x = FinSet::number(n);
                let m = FinSet::multisets(&x, k);
                for i in 0..m.len() {
                    let c = m.counts_of(i).to_vec();
                    assert_eq!(m.index_of_counts(&c), Some(i));
                    assert_eq!(c.iter().sum::<u32>() as usize, k);
                }
            }
        }
    }

    #[test]
    fn labels_round_trip_through_index_of() {
        let x = abc();
        let y = FinSet::atoms(["u", "v"]).unwrap();
        let sets = [
            FinSet::product(&x, &y),
            FinSet::coproduct(&[x.clone(), FinSet::empty(), y.clone()]),
            FinSet::power(&y, 3),
            FinSet::multisets(&x, 3),
            FinSet::multisets(&FinSet::product(&x, &y), 2),
        ];
        for s in &sets {
            for i in 0..s.len() {
                assert_eq!(s.index_of(&s.label(i)), Some(i), "{s} at {i}");
            }
        }
    }

    #[test]
    fn coproduct_skips_empty_blocks() {
        let one = FinSet::unit();
        let s = FinSet::coproduct(&[FinSet::empty(), one.clone(), FinSet::empty(), one]);
        assert_eq!(s.split_tag(0), (1, 0));
        assert_eq!(s.split_tag(1), (3, 0));
    }

    #[test]
    fn structural_equality() {
        let x = abc();
        assert_eq!(FinSet::power(&x, 2), FinSet::power(&abc(), 2));
        assert_ne!(FinSet::power(&x, 1), x);
        assert_eq!(FinSet::unit(), FinSet::number(1));
    }
}
