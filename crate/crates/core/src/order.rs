//! Finite preorders, monotone maps and subset images.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result, Side};

/// Largest carrier whose subsets are enumerated exhaustively.
pub const SUBSET_LIMIT: usize = 20;

/// Largest base set whose powerset is materialized as a preorder carrier.
pub const POWERSET_LIMIT: usize = 12;

pub(crate) fn check_capacity(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::CapacityExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Meet,
    Join,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Meet => "meet",
            BoundKind::Join => "join",
        }
    }

    pub fn dual(self) -> Self {
        match self {
            BoundKind::Meet => BoundKind::Join,
            BoundKind::Join => BoundKind::Meet,
        }
    }
}

/// A finite preorder: labelled elements `0..n` with a reflexive, transitive `leq`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    labels: Vec<String>,
    leq: BitMatrix,
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl Preorder {
    /// Builds a preorder from labelled pairs. With `close` set the reflexive-transitive
    /// closure is taken; otherwise the relation must already be a preorder.
    pub fn new<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)], close: bool) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = label_index(&labels)?;
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_owned()))
        };
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            idx_pairs.push((lookup(a)?, lookup(b)?));
        }
        Self::from_index_pairs(labels, &idx_pairs, close)
    }

    pub fn from_index_pairs(labels: Vec<String>, pairs: &[(usize, usize)], close: bool) -> Result<Self> {
        label_index(&labels)?;
        let n = labels.len();
        let mut leq = BitMatrix::new(n, n);
        for &(a, b) in pairs {
            for i in [a, b] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
            }
            leq.set(a, b, true);
        }
        if close {
            for i in 0..n {
                leq.set(i, i, true);
            }
            // Warshall
            for k in 0..n {
                let row_k = leq.row(k).clone();
                for i in 0..n {
                    if leq.get(i, k) {
                        let mut r = leq.row(i).clone();
                        r.union_with(&row_k);
                        for j in r.iter() {
                            leq.set(i, j, true);
                        }
                    }
                }
            }
        }
        Self::from_matrix(labels, leq)
    }

    /// Validates reflexivity and transitivity of an explicit matrix.
    pub fn from_matrix(labels: Vec<String>, leq: BitMatrix) -> Result<Self> {
        label_index(&labels)?;
        let n = labels.len();
        if leq.rows() != n || leq.cols() != n {
            return Err(Error::MapLength {
                expected: n,
                found: leq.rows(),
            });
        }
        for i in 0..n {
            if !leq.get(i, i) {
                return Err(Error::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in leq.row(i).iter() {
                if !leq.row(j).is_subset(leq.row(i)) {
                    let k = leq
                        .row(j)
                        .iter()
                        .find(|&k| !leq.get(i, k))
                        .expect("non-subset row has a witness");
                    return Err(Error::NotTransitive(
                        labels[i].clone(),
                        labels[j].clone(),
                        labels[k].clone(),
                    ));
                }
            }
        }
        Ok(Preorder { labels, leq })
    }

    pub(crate) fn from_fn_unchecked(labels: Vec<String>, f: impl FnMut(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let leq = BitMatrix::from_fn(n, n, f);
        let p = Preorder { labels, leq };
        debug_assert!(p.validate().is_ok(), "from_fn_unchecked produced a non-preorder");
        p
    }

    fn validate(&self) -> Result<()> {
        Self::from_matrix(self.labels.clone(), self.leq.clone()).map(|_| ())
    }

    /// The discrete order (antichain) on `n` elements labelled `0..n`.
    pub fn discrete(n: usize) -> Self {
        Self::from_fn_unchecked(numbered(n), |i, j| i == j)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn_unchecked(numbered(n), |i, j| i <= j)
    }

    /// The powerset of a labelled base set ordered by inclusion. Element `m`
    /// is the subset with bitmask `m`.
    pub fn powerset<S: AsRef<str>>(base: &[S]) -> Result<Self> {
        check_capacity("powerset base", base.len(), POWERSET_LIMIT)?;
        let base: Vec<String> = base.iter().map(|s| s.as_ref().to_owned()).collect();
        label_index(&base)?;
        let n = 1usize << base.len();
        let labels = (0..n)
            .map(|m| subset_label(&base, &BitSet::from_mask(base.len(), m as u64)))
            .collect();
        Ok(Self::from_fn_unchecked(labels, |i, j| i & !j == 0))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.leq
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    #[inline]
    pub fn equiv(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.leq(b, a)
    }

    /// Least index equivalent to `a`.
    pub fn canonical(&self, a: usize) -> usize {
        (0..=a).find(|&b| self.equiv(a, b)).unwrap_or(a)
    }

    /// Same carrier, flipped order.
    pub fn opposite(&self) -> Self {
        Preorder {
            labels: self.labels.clone(),
            leq: self.leq.transpose(),
        }
    }

    /// Ok for posets; otherwise the least pair of distinct equivalent elements.
    pub fn check_poset(&self) -> Result<()> {
        for i in 0..self.len() {
            for j in self.leq.row(i).iter() {
                if j > i && self.leq(j, i) {
                    return Err(Error::NotPoset(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_poset(&self) -> bool {
        self.check_poset().is_ok()
    }

    pub fn lower_bounds(&self, subset: &[usize]) -> BitSet {
        let mut lb = BitSet::full(self.len());
        for &s in subset {
            for x in 0..self.len() {
                if !self.leq(x, s) {
                    lb.remove(x);
                }
            }
        }
        lb
    }

    pub fn upper_bounds(&self, subset: &[usize]) -> BitSet {
        let mut ub = BitSet::full(self.len());
        for &s in subset {
            ub.intersect_with(self.leq.row(s));
        }
        ub
    }

    /// Greatest lower bound (meet) or least upper bound (join) of `subset`,
    /// returned as the least-index representative of its equivalence class.
    pub fn extremum(&self, subset: &[usize], kind: BoundKind) -> Result<usize> {
        for &s in subset {
            if s >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: s,
                    len: self.len(),
                });
            }
        }
        let bounds = match kind {
            BoundKind::Meet => self.lower_bounds(subset),
            BoundKind::Join => self.upper_bounds(subset),
        };
        let found = bounds.iter().find(|&m| {
                bounds.iter().all(|x| match kind {
                    BoundKind::Meet => self.leq(x, m),
                    BoundKind::Join => self.leq(m, x),
                })
        });
        found.ok_or(Error::NoBound { kind: kind.name() })
    }

    pub fn meet(&self, subset: &[usize]) -> Result<usize> {
        self.extremum(subset, BoundKind::Meet)
    }

    pub fn join(&self, subset: &[usize]) -> Result<usize> {
        self.extremum(subset, BoundKind::Join)
    }

    /// Exhaustively checks that every subset has a meet and a join.
    pub fn check_complete_lattice(&self) -> Result<()> {
        check_capacity("preorder carrier", self.len(), SUBSET_LIMIT)?;
        let n = self.len();
        for mask in 0..(1u64 << n) {
            let subset = BitSet::from_mask(n, mask).to_vec();
            for kind in [BoundKind::Meet, BoundKind::Join] {
                if self.extremum(&subset, kind).is_err() {
                    return Err(Error::NotComplete {
                        subset,
                        kind: kind.name(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Pairs `(i, j)` with `i < j` strictly and nothing strictly in between.
    /// Only meaningful for posets.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let strict = |a: usize, b: usize| self.leq(a, b) && !self.leq(b, a);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if strict(i, j) && !(0..n).any(|k| strict(i, k) && strict(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

pub(crate) fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Canonical subset notation: `{}`, `{a}`, `{a,b}`.
pub fn subset_label<S: AsRef<str>>(base: &[S], set: &BitSet) -> String {
    let parts: Vec<&str> = set.iter().map(|i| base[i].as_ref()).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Preserves order.
    Monotone,
    /// Preserves and reflects order.
    Isotone,
}

/// An order-preserving total function between preorders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<Preorder>,
    target: Arc<Preorder>,
    map: Vec<usize>,
}

pub(crate) fn check_total(map: &[usize], source_len: usize, target_len: usize) -> Result<()> {
    if map.len() != source_len {
        return Err(Error::MapLength {
            expected: source_len,
            found: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&t| t >= target_len) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: target_len,
        });
    }
    Ok(())
}

/// Least pair `(a, b)` with `a <= b` in `source` but `map[a] !<= map[b]` in `target`.
pub(crate) fn monotonicity_witness(source: &Preorder, target: &Preorder, map: &[usize]) -> Option<(usize, usize)> {
    (0..source.len()).find_map(|a| {
        source
            .matrix()
            .row(a)
            .iter()
            .find(|&b| !target.leq(map[a], map[b]))
            .map(|b| (a, b))
    })
}

impl MonotoneMap {
    pub fn new(source: Arc<Preorder>, target: Arc<Preorder>, map: Vec<usize>) -> Result<Self> {
        check_total(&map, source.len(), target.len())?;
        if let Some((a, b)) = monotonicity_witness(&source, &target, &map) {
            return Err(Error::NotMonotone {
                side: Side::Left,
                a,
                b,
            });
        }
        Ok(MonotoneMap { source, target, map })
    }

    pub fn identity(p: Arc<Preorder>) -> Self {
        let map = (0..p.len()).collect();
        MonotoneMap {
            source: p.clone(),
            target: p,
            map,
        }
    }

    pub fn source(&self) -> &Arc<Preorder> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Preorder> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn classify(&self) -> MapKind {
        let n = self.source.len();
        let reflects = (0..n).all(|a| {
            (0..n).all(|b| !self.target.leq(self.map[a], self.map[b]) || self.source.leq(a, b))
        });
        if reflects {
            MapKind::Isotone
        } else {
            MapKind::Monotone
        }
    }

    /// The order pulled back along the map: `a <= b` iff `f(a) <= f(b)`.
    pub fn kernel(&self) -> Preorder {
        kernel_of(&self.source, &self.target, &self.map)
    }
}

pub(crate) fn kernel_of(source: &Preorder, target: &Preorder, map: &[usize]) -> Preorder {
    Preorder::from_fn_unchecked(source.labels().to_vec(), |a, b| target.leq(map[a], map[b]))
}

/// A total function between plain finite sets, given by sizes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFunction {
    source_len: usize,
    target_len: usize,
    map: Vec<usize>,
}

impl SetFunction {
    pub fn new(source_len: usize, target_len: usize, map: Vec<usize>) -> Result<Self> {
        check_total(&map, source_len, target_len)?;
        Ok(SetFunction {
            source_len,
            target_len,
            map,
        })
    }

    pub fn identity(n: usize) -> Self {
        SetFunction {
            source_len: n,
            target_len: n,
            map: (0..n).collect(),
        }
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// Diagrammatic composite: apply `self`, then `next`.
    pub fn then(&self, next: &SetFunction) -> Result<SetFunction> {
        if self.target_len != next.source_len {
            return Err(Error::BoundaryMismatch("set function composite"));
        }
        Ok(SetFunction {
            source_len: self.source_len,
            target_len: next.target_len,
            map: self.map.iter().map(|&b| next.map[b]).collect(),
        })
    }

    /// `{ h(a) | a in X }`
    pub fn direct_image(&self, x: &BitSet) -> BitSet {
        debug_assert_eq!(x.universe_len(), self.source_len);
        BitSet::from_indices(self.target_len, x.iter().map(|a| self.map[a]))
    }

    /// `{ a | h(a) in Y }`
    pub fn inverse_image(&self, y: &BitSet) -> BitSet {
        debug_assert_eq!(y.universe_len(), self.target_len);
        BitSet::from_indices(
            self.source_len,
            (0..self.source_len).filter(|&a| y.contains(self.map[a])),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain_in_chain() -> MonotoneMap {
        MonotoneMap::new(Arc::new(Preorder::chain(2)), Arc::new(Preorder::chain(3)), vec![0, 2]).unwrap()
    }

    #[test]
    fn singleton_preorder() {
        let p = Preorder::new(&["x"], &[], true).unwrap();
        assert_eq!(p.matrix().pairs().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn closure_adds_reflexive_pairs() {
        let p = Preorder::new(&["0", "1"], &[("0", "1")], true).unwrap();
        let mut pairs: Vec<_> = p.matrix().pairs().collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn closure_is_transitive() {
        let p = Preorder::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")], true).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn missing_transitive_pair_is_rejected() {
        let err = Preorder::new(
            &["a", "b", "c"],
            &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")],
            false,
        )
        .unwrap_err();
        assert_eq!(err, Error::NotTransitive("a".into(), "b".into(), "c".into()));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Preorder::new(&["a", "a"], &[], true).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(
            Preorder::new(&["a"], &[("a", "z")], true).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
        assert_eq!(
            Preorder::new(&["a"], &[], false).unwrap_err(),
            Error::NotReflexive("a".into())
        );
    }

    #[test]
    fn identity_is_isotone_with_kernel_equal_to_source() {
        let f = MonotoneMap::identity(Arc::new(Preorder::chain(2)));
        assert_eq!(f.classify(), MapKind::Isotone);
        assert_eq!(&f.kernel(), f.source().as_ref());
    }

    #[test]
    fn constant_map_collapses() {
        let f = MonotoneMap::new(Arc::new(Preorder::discrete(2)), Arc::new(Preorder::chain(1)), vec![0, 0]).unwrap();
        assert_eq!(f.classify(), MapKind::Monotone);
        let k = f.kernel();
        assert!(k.leq(0, 1) && k.leq(1, 0));
        assert!(!k.is_poset());
    }

    #[test]
    fn chain_inclusion_is_isotone() {
        let f = chain_in_chain();
        // exhaustive pair check
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(f.source().leq(a, b), f.target().leq(f.apply(a), f.apply(b)));
            }
        }
        assert_eq!(f.classify(), MapKind::Isotone);
    }

    #[test]
    fn non_monotone_map_is_rejected() {
        let err = MonotoneMap::new(Arc::new(Preorder::chain(2)), Arc::new(Preorder::chain(2)), vec![1, 0]).unwrap_err();
        assert!(matches!(err, Error::NotMonotone { a: 0, b: 1, .. }));
    }

    #[test]
    fn extrema() {
        let c2 = Preorder::chain(2);
        assert_eq!(c2.meet(&[]).unwrap(), 1);
        assert_eq!(c2.join(&[]).unwrap(), 0);
        let anti = Preorder::discrete(2);
        assert_eq!(anti.join(&[0, 1]), Err(Error::NoBound { kind: "join" }));
        let p = Preorder::powerset(&["1", "2"]).unwrap();
        assert_eq!(p.meet(&[0b01, 0b10]).unwrap(), 0);
        assert_eq!(p.join(&[0b01, 0b10]).unwrap(), 0b11);
        assert_eq!(p.label(0b11), "{1,2}");
    }

    #[test]
    fn extremum_returns_least_representative() {
        // 0 ≡ 1 both above 2
        let p = Preorder::from_index_pairs(numbered(3), &[(0, 1), (1, 0), (2, 0)], true).unwrap();
        assert_eq!(p.join(&[2]).unwrap(), 2);
        assert_eq!(p.meet(&[]).unwrap(), 0);
        assert_eq!(p.canonical(1), 0);
    }

    #[test]
    fn images() {
        let id = SetFunction::identity(3);
        let x = BitSet::from_indices(3, [0, 2]);
        assert_eq!(id.direct_image(&x), x);
        assert_eq!(id.inverse_image(&x), x);
        let konst = SetFunction::new(3, 2, vec![1, 1, 1]).unwrap();
        assert_eq!(konst.direct_image(&x).to_vec(), vec![1]);
        let collapse = SetFunction::new(2, 1, vec![0, 0]).unwrap();
        assert_eq!(collapse.direct_image(&BitSet::full(2)).to_vec(), vec![0]);
        let h = SetFunction::new(2, 2, vec![0, 0]).unwrap();
        assert!(h.inverse_image(&BitSet::empty(2)).is_empty());
        assert_eq!(h.inverse_image(&BitSet::from_indices(2, [0])).to_vec(), vec![0, 1]);
    }

    #[test]
    fn covers_of_diamond() {
        let p = Preorder::powerset(&["x", "y"]).unwrap();
        let mut c = p.covers();
        c.sort();
        assert_eq!(c, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }
}
