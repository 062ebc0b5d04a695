//! Concept lattices, concept morphisms and theory lattices.
//!
//! A [`ConceptLattice`] is kept in its abstract form: a finite lattice order
//! together with an instance embedding `iota` and a type embedding `tau`. The
//! extent and intent of an element are recovered from the embeddings, so the
//! same type also covers hand-built lattices that are not dense.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::{BitMatrix, BitSet};
use crate::classification::{Axis, Classification, Infomorphism};
use crate::error::{Error, Result};
use crate::galois::{from_function, inverse_image_connection, GaloisConnection};
use crate::order::{check_capacity, check_total, subset_label, BoundKind, Preorder, SetFunction, POWERSET_LIMIT};
use crate::quartet::Quartet;

/// Smaller side of a context whose subsets are closed during enumeration.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalConcept {
    pub extent: BitSet,
    pub intent: BitSet,
}

/// All formal concepts of `a`, sorted by extent.
pub fn concepts(a: &Classification) -> Result<Vec<FormalConcept>> {
    let (side, n) = if a.n_instances() <= a.n_types() {
        (Axis::Instances, a.n_instances())
    } else {
        (Axis::Types, a.n_types())
    };
    check_capacity("smaller side of the context", n, ENUMERATION_LIMIT)?;
    let mut found: Vec<FormalConcept> = (0..1u64 << n)
        .map(|m| {
            let s = BitSet::from_mask(n, m);
            let d = a.derive(side, &s);
            let c = a.derive(side.flip(), &d);
            match side {
                Axis::Instances => FormalConcept { extent: c, intent: d },
                Axis::Types => FormalConcept { extent: d, intent: c },
            }
        })
        .collect();
    found.sort();
    found.dedup();
    Ok(found)
}

impl Axis {
    pub fn flip(self) -> Axis {
        match self {
            Axis::Instances => Axis::Types,
            Axis::Types => Axis::Instances,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    order: Arc<Preorder>,
    instances: Vec<String>,
    types: Vec<String>,
    iota: Vec<usize>,
    tau: Vec<usize>,
    // derived
    extents: Vec<BitSet>,
    intents: Vec<BitSet>,
    context: Classification,
    by_extent: HashMap<BitSet, usize>,
}

/// Elements where one of the density identities fails.
#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct DensityReport {
    /// Elements that are not the join of the instances below them.
    pub join_violations: Vec<usize>,
    /// Elements that are not the meet of the types above them.
    pub meet_violations: Vec<usize>,
}

impl DensityReport {
    pub fn holds(&self) -> bool {
        self.join_violations.is_empty() && self.meet_violations.is_empty()
    }
}

fn check_finite_lattice(p: &Preorder) -> Result<()> {
    p.check_poset()?;
    if p.is_empty() {
        return Err(Error::NotComplete {
            subset: vec![],
            kind: "meet",
        });
    }
    // a finite poset with a top and binary meets is a complete lattice
    p.meet(&[]).map_err(|_| Error::NotComplete {
        subset: vec![],
        kind: "meet",
    })?;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p.meet(&[i, j]).is_err() {
                return Err(Error::NotComplete {
                    subset: vec![i, j],
                    kind: "meet",
                });
            }
        }
    }
    Ok(())
}

impl ConceptLattice {
    /// Builds a lattice from its abstract data. The order must be a finite
    /// lattice; density is not required (see [`ConceptLattice::density_check`]).
    pub fn new<S: AsRef<str>>(order: Preorder, instances: &[S], types: &[S], iota: Vec<usize>, tau: Vec<usize>) -> Result<Self> {
        check_finite_lattice(&order)?;
        check_total(&iota, instances.len(), order.len())?;
        check_total(&tau, types.len(), order.len())?;
        let instances: Vec<String> = instances.iter().map(|s| s.as_ref().to_owned()).collect();
        let types: Vec<String> = types.iter().map(|s| s.as_ref().to_owned()).collect();
        let incidence = BitMatrix::from_fn(instances.len(), types.len(), |x, y| order.leq(iota[x], tau[y]));
        let context = Classification::from_matrix(instances.clone(), types.clone(), incidence)?;
        let n = order.len();
        let extents: Vec<BitSet> = (0..n)
            .map(|c| BitSet::from_indices(instances.len(), (0..instances.len()).filter(|&x| order.leq(iota[x], c))))
            .collect();
        let intents: Vec<BitSet> = (0..n)
            .map(|c| BitSet::from_indices(types.len(), (0..types.len()).filter(|&y| order.leq(c, tau[y]))))
            .collect();
        let mut by_extent = HashMap::with_capacity(n);
        for (c, e) in extents.iter().enumerate() {
            // keep the least element when extents collide (only in non-dense lattices)
            by_extent.entry(e.clone()).or_insert(c);
        }
        Ok(ConceptLattice {
            order: Arc::new(order),
            instances,
            types,
            iota,
            tau,
            extents,
            intents,
            context,
            by_extent,
        })
    }

    /// The concept lattice of a classification, with elements sorted by extent.
    pub fn of(a: &Classification) -> Result<Self> {
        let cs = concepts(a)?;
        let labels: Vec<String> = cs
            .iter()
            .map(|c| {
                format!(
                    "({},{})",
                    subset_label(a.instances(), &c.extent),
                    subset_label(a.types(), &c.intent)
                )
            })
            .collect();
        let order = Preorder::from_matrix(labels, BitMatrix::from_fn(cs.len(), cs.len(), |i, j| cs[i].extent.is_subset(&cs[j].extent)))?;
        let index: HashMap<&BitSet, usize> = cs.iter().enumerate().map(|(i, c)| (&c.extent, i)).collect();
        let iota = (0..a.n_instances())
            .map(|x| index[&a.close(Axis::Instances, &BitSet::from_indices(a.n_instances(), [x]))])
            .collect();
        let tau = (0..a.n_types()).map(|y| index[&a.extent_of(y).clone()]).collect();
        let l = Self::new(order, a.instances(), a.types(), iota, tau)?;
        debug_assert!((0..cs.len()).all(|c| l.extents[c] == cs[c].extent && l.intents[c] == cs[c].intent));
        debug_assert_eq!(&l.context, a);
        Ok(l)
    }

    pub fn order(&self) -> &Arc<Preorder> {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn instances(&self) -> &[String] {
        &self.instances
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    /// Least element containing each instance.
    pub fn iota(&self) -> &[usize] {
        &self.iota
    }

    /// Greatest element having each type.
    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Instances below `c`.
    pub fn extent(&self, c: usize) -> &BitSet {
        &self.extents[c]
    }

    /// Types above `c`.
    pub fn intent(&self, c: usize) -> &BitSet {
        &self.intents[c]
    }

    pub fn concept(&self, c: usize) -> FormalConcept {
        FormalConcept {
            extent: self.extents[c].clone(),
            intent: self.intents[c].clone(),
        }
    }

    pub fn index_of_extent(&self, extent: &BitSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    /// The classification of the lattice: `x ⊨ y` iff `iota(x) <= tau(y)`.
    pub fn classification(&self) -> &Classification {
        &self.context
    }

    pub fn top(&self) -> usize {
        self.order.meet(&[]).expect("lattice has a top")
    }

    pub fn bottom(&self) -> usize {
        self.order.join(&[]).expect("lattice has a bottom")
    }

    /// Meet or join read off the order.
    pub fn bound(&self, subset: &[usize], kind: BoundKind) -> usize {
        self.order.extremum(subset, kind).expect("finite lattice is complete")
    }

    /// Meet or join from the extent and intent formulas, when the resulting
    /// pair names an element of the lattice.
    pub fn bound_by_formula(&self, subset: &[usize], kind: BoundKind) -> Option<usize> {
        let a = &self.context;
        let extent = match kind {
            BoundKind::Meet => {
                let mut e = BitSet::full(self.instances.len());
                for &c in subset {
                    e.intersect_with(&self.extents[c]);
                }
                e
            }
            BoundKind::Join => {
                let mut u = BitSet::empty(self.instances.len());
                for &c in subset {
                    u.union_with(&self.extents[c]);
                }
                a.close(Axis::Instances, &u)
            }
        };
        let intent = match kind {
            BoundKind::Meet => {
                let mut u = BitSet::empty(self.types.len());
                for &c in subset {
                    u.union_with(&self.intents[c]);
                }
                a.close(Axis::Types, &u)
            }
            BoundKind::Join => {
                let mut e = BitSet::full(self.types.len());
                for &c in subset {
                    e.intersect_with(&self.intents[c]);
                }
                e
            }
        };
        self.index_of_extent(&extent).filter(|&c| self.intents[c] == intent)
    }

    /// Formula route first, order route as the fallback.
    pub fn extremum(&self, subset: &[usize], kind: BoundKind) -> usize {
        self.bound_by_formula(subset, kind)
            .unwrap_or_else(|| self.bound(subset, kind))
    }

    /// The join of the instances in `xs`.
    pub fn iota_set(&self, xs: &BitSet) -> usize {
        let image: Vec<usize> = xs.iter().map(|x| self.iota[x]).collect();
        self.bound(&image, BoundKind::Join)
    }

    /// The meet of the types in `ys`.
    pub fn tau_set(&self, ys: &BitSet) -> usize {
        let image: Vec<usize> = ys.iter().map(|y| self.tau[y]).collect();
        self.bound(&image, BoundKind::Meet)
    }

    /// `(X'', X')` looked up among the elements, when present.
    pub fn iota_set_by_formula(&self, xs: &BitSet) -> Option<usize> {
        let closed = self.context.close(Axis::Instances, xs);
        self.index_of_extent(&closed)
            .filter(|&c| self.intents[c] == self.context.derive_instances(xs))
    }

    /// `(Y', Y'')` looked up among the elements, when present.
    pub fn tau_set_by_formula(&self, ys: &BitSet) -> Option<usize> {
        self.index_of_extent(&self.context.derive_types(ys))
            .filter(|&c| self.intents[c] == self.context.close(Axis::Types, ys))
    }

    pub fn subset_generator(&self, side: Axis, subset: &BitSet) -> usize {
        match side {
            Axis::Instances => self.iota_set(subset),
            Axis::Types => self.tau_set(subset),
        }
    }

    /// `extent = ⟨iota, ext⟩ : ℘inst ⇄ L` and `intent = ⟨int, tau⟩ : L ⇄ (℘typ)^op`.
    pub fn extent_intent(&self) -> Result<(GaloisConnection, GaloisConnection)> {
        check_capacity("instances", self.instances.len(), POWERSET_LIMIT)?;
        check_capacity("types", self.types.len(), POWERSET_LIMIT)?;
        let (nx, ny) = (self.instances.len(), self.types.len());
        let insts = Arc::new(Preorder::powerset(&self.instances)?);
        let typs = Arc::new(Preorder::powerset(&self.types)?.opposite());
        let extent = GaloisConnection::new(
            insts,
            self.order.clone(),
            (0..1u64 << nx).map(|m| self.iota_set(&BitSet::from_mask(nx, m))).collect(),
            self.extents.iter().map(|e| e.mask() as usize).collect(),
        )?;
        let intent = GaloisConnection::new(
            self.order.clone(),
            typs,
            self.intents.iter().map(|e| e.mask() as usize).collect(),
            (0..1u64 << ny).map(|m| self.tau_set(&BitSet::from_mask(ny, m))).collect(),
        )?;
        Ok((extent, intent))
    }

    /// The classification read off the lattice.
    pub fn clsn(&self) -> Classification {
        self.context.clone()
    }

    /// Instances and types swapped, order flipped.
    pub fn opposite(&self) -> Result<ConceptLattice> {
        ConceptLattice::new(
            self.order.opposite(),
            &self.types,
            &self.instances,
            self.tau.clone(),
            self.iota.clone(),
        )
    }

    pub fn density_check(&self) -> DensityReport {
        let mut report = DensityReport::default();
        for c in 0..self.len() {
            if !self.order.equiv(self.iota_set(&self.extents[c]), c) {
                report.join_violations.push(c);
            }
            if !self.order.equiv(self.tau_set(&self.intents[c]), c) {
                report.meet_violations.push(c);
            }
        }
        report
    }

    /// The isomorphism between the concept lattice of the lattice's own
    /// classification and the lattice itself.
    pub fn roundtrip_iso(&self) -> Result<RoundTrip> {
        let density = self.density_check();
        if !density.join_violations.is_empty() {
            return Err(Error::NotDense("join"));
        }
        if !density.meet_violations.is_empty() {
            return Err(Error::NotDense("meet"));
        }
        let rebuilt = ConceptLattice::of(&self.context)?;
        let forward: Vec<usize> = (0..rebuilt.len()).map(|k| self.iota_set(rebuilt.extent(k))).collect();
        for k in 0..rebuilt.len() {
            if forward[k] != self.tau_set(rebuilt.intent(k)) {
                return Err(Error::Inconsistent(format!("join and meet generators disagree at concept {k}")));
            }
        }
        let backward: Vec<usize> = (0..self.len())
            .map(|c| {
                rebuilt
                    .index_of_extent(&self.extents[c])
                    .filter(|&k| rebuilt.intent(k) == &self.intents[c])
                    .ok_or_else(|| Error::Inconsistent(format!("element {c} is not a concept of its classification")))
            })
            .collect::<Result<_>>()?;
        let iso = (0..rebuilt.len()).all(|k| backward[forward[k]] == k)
            && (0..self.len()).all(|c| forward[backward[c]] == c)
            && (0..rebuilt.len())
                .all(|i| (0..rebuilt.len()).all(|j| rebuilt.leq(i, j) == self.leq(forward[i], forward[j])));
        if !iso {
            return Err(Error::Inconsistent("round trip maps are not inverse order isomorphisms".into()));
        }
        Ok(RoundTrip {
            rebuilt,
            forward,
            backward,
        })
    }

    /// `int_A = iota ; int_L` and `ext_A = tau ; ext_L` against the lattice's classification.
    pub fn embedding_identities(&self) -> bool {
        (0..self.instances.len()).all(|x| &self.intents[self.iota[x]] == self.context.intent_of(x))
            && (0..self.types.len()).all(|y| &self.extents[self.tau[y]] == self.context.extent_of(y))
    }

    /// Covering pairs of the order, lower element first.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.order.covers()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    /// Concept lattice of the classification read off the original lattice.
    pub rebuilt: ConceptLattice,
    /// Rebuilt concept to original element.
    pub forward: Vec<usize>,
    /// Original element to rebuilt concept.
    pub backward: Vec<usize>,
}

// ---------------------------------------------------------------------------
// theories

/// Type subsets ordered by entailment of their closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoryLattice {
    /// Element `m` is the type subset with bitmask `m`; `Y1 <= Y2` iff `clo(Y1) ⊇ clo(Y2)`.
    pub order: Arc<Preorder>,
    /// `Y ↦ Y''`, as bitmasks.
    pub closure: Vec<usize>,
    /// `⟨int, tau⟩ : L ⇄ th(L)`
    pub lift: GaloisConnection,
    /// `⟨closure, id⟩ : th(L) ⇄ (℘typ)^op`
    pub clsr: GaloisConnection,
}

impl TheoryLattice {
    pub fn entails(&self, y1: usize, y2: usize) -> bool {
        self.order.leq(y1, y2)
    }
}

impl ConceptLattice {
    pub fn theories(&self) -> Result<TheoryLattice> {
        let (_, intent) = self.extent_intent()?;
        let ny = self.types.len();
        let closure: Vec<usize> = (0..1u64 << ny)
            .map(|m| self.intents[self.tau_set(&BitSet::from_mask(ny, m))].mask() as usize)
            .collect();
        let labels = intent.target().labels().to_vec();
        let order = Arc::new(Preorder::from_matrix(
            labels,
            BitMatrix::from_fn(1 << ny, 1 << ny, |a, b| closure[b] & !closure[a] == 0),
        )?);
        if order.matrix() != intent.right_kernel().matrix() {
            return Err(Error::Inconsistent("entailment differs from the kernel of tau".into()));
        }
        let lift = GaloisConnection::new(self.order.clone(), order.clone(), intent.left().to_vec(), intent.right().to_vec())?;
        let clsr = GaloisConnection::new(order.clone(), intent.target().clone(), closure.clone(), (0..1 << ny).collect())?;
        if !lift.compose(&clsr)?.equivalent(&intent) {
            return Err(Error::Inconsistent("lift ; clsr differs from the intent coreflection".into()));
        }
        Ok(TheoryLattice {
            order,
            closure,
            lift,
            clsr,
        })
    }
}

// ---------------------------------------------------------------------------
// concept morphisms

/// A connection `lat(L2) ⇄ lat(L1)` with instance and type maps that it preserves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptMorphism {
    source: Arc<ConceptLattice>,
    target: Arc<ConceptLattice>,
    /// Elements of the target lattice to elements of the source lattice.
    left: Vec<usize>,
    /// Elements of the source lattice to elements of the target lattice.
    right: Vec<usize>,
    inst_map: SetFunction,
    typ_map: SetFunction,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ContinuityReport {
    /// Left map preserves every join.
    pub left_join_continuous: bool,
    /// Right map preserves every meet.
    pub right_meet_continuous: bool,
    pub subsets_checked: usize,
}

impl ConceptMorphism {
    pub fn new(
        source: Arc<ConceptLattice>,
        target: Arc<ConceptLattice>,
        left: Vec<usize>,
        right: Vec<usize>,
        inst_map: Vec<usize>,
        typ_map: Vec<usize>,
    ) -> Result<Self> {
        check_total(&left, target.len(), source.len())?;
        check_total(&right, source.len(), target.len())?;
        let inst_map = SetFunction::new(target.instances.len(), source.instances.len(), inst_map)?;
        let typ_map = SetFunction::new(source.types.len(), target.types.len(), typ_map)?;
        for c2 in 0..target.len() {
            for c1 in 0..source.len() {
                if source.leq(left[c2], c1) != target.leq(c2, right[c1]) {
                    return Err(Error::NotAdjoint { a: c2, b: c1 });
                }
            }
        }
        if let Some(x2) = (0..target.instances.len()).find(|&x2| left[target.iota[x2]] != source.iota[inst_map.apply(x2)]) {
            return Err(Error::InstanceNotPreserved(x2));
        }
        if let Some(y1) = (0..source.types.len()).find(|&y1| right[source.tau[y1]] != target.tau[typ_map.apply(y1)]) {
            return Err(Error::TypeNotPreserved(y1));
        }
        Ok(ConceptMorphism {
            source,
            target,
            left,
            right,
            inst_map,
            typ_map,
        })
    }

    pub fn identity(l: Arc<ConceptLattice>) -> Self {
        let n = l.len();
        ConceptMorphism {
            left: (0..n).collect(),
            right: (0..n).collect(),
            inst_map: SetFunction::identity(l.instances.len()),
            typ_map: SetFunction::identity(l.types.len()),
            source: l.clone(),
            target: l,
        }
    }

    /// The concept morphism between the concept lattices of an infomorphism's ends.
    pub fn from_infomorphism(f: &Infomorphism) -> Result<Self> {
        let a1 = f.source();
        let a2 = f.target();
        let l1 = Arc::new(ConceptLattice::of(a1)?);
        let l2 = Arc::new(ConceptLattice::of(a2)?);
        let inst = f.inst_map();
        let typ = f.typ_map();
        let mut right = Vec::with_capacity(l1.len());
        for c1 in 0..l1.len() {
            let pulled = inst.inverse_image(l1.extent(c1));
            let pushed = a2.derive_types(&typ.direct_image(l1.intent(c1)));
            if pulled != pushed {
                return Err(Error::Inconsistent(format!("inverse image of extent {c1} is not derived from its intent")));
            }
            right.push(l2.index_of_extent(&pulled).ok_or_else(|| Error::Inconsistent("pulled extent is not closed".into()))?);
        }
        let mut left = Vec::with_capacity(l2.len());
        for c2 in 0..l2.len() {
            let pushed = inst.direct_image(l2.extent(c2));
            let pulled = typ.inverse_image(l2.intent(c2));
            if a1.derive_instances(&pushed) != pulled {
                return Err(Error::Inconsistent(format!("image of extent {c2} does not derive to the pulled intent")));
            }
            let c1 = l1
                .index_of_extent(&a1.close(Axis::Instances, &pushed))
                .expect("closed extents are concepts");
            debug_assert_eq!(l1.intent(c1), &pulled);
            left.push(c1);
        }
        ConceptMorphism::new(l1, l2, left, right, inst.map().to_vec(), typ.map().to_vec())
    }

    pub fn source(&self) -> &Arc<ConceptLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ConceptLattice> {
        &self.target
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn inst_map(&self) -> &SetFunction {
        &self.inst_map
    }

    pub fn typ_map(&self) -> &SetFunction {
        &self.typ_map
    }

    /// `⟨left, right⟩ : lat(target) ⇄ lat(source)`
    pub fn adj(&self) -> GaloisConnection {
        GaloisConnection::new(
            self.target.order.clone(),
            self.source.order.clone(),
            self.left.clone(),
            self.right.clone(),
        )
        .expect("validated at construction")
    }

    /// Exhaustive over all subsets of both lattices.
    pub fn continuity(&self) -> Result<ContinuityReport> {
        check_capacity("source lattice", self.source.len(), 16)?;
        check_capacity("target lattice", self.target.len(), 16)?;
        let mut checked = 0;
        let mut left_ok = true;
        for m in 0..1u64 << self.target.len() {
            let s = BitSet::from_mask(self.target.len(), m).to_vec();
            let image: Vec<usize> = s.iter().map(|&c| self.left[c]).collect();
            left_ok &= self.left[self.target.bound(&s, BoundKind::Join)] == self.source.bound(&image, BoundKind::Join);
            checked += 1;
        }
        let mut right_ok = true;
        for m in 0..1u64 << self.source.len() {
            let s = BitSet::from_mask(self.source.len(), m).to_vec();
            let image: Vec<usize> = s.iter().map(|&c| self.right[c]).collect();
            right_ok &= self.right[self.source.bound(&s, BoundKind::Meet)] == self.target.bound(&image, BoundKind::Meet);
            checked += 1;
        }
        Ok(ContinuityReport {
            left_join_continuous: left_ok,
            right_meet_continuous: right_ok,
            subsets_checked: checked,
        })
    }

    /// `⟨dir(inst), adj⟩ : extent(target) ⇒ extent(source)`
    pub fn extent_quartet(&self) -> Result<Quartet> {
        let (e1, _) = self.source.extent_intent()?;
        let (e2, _) = self.target.extent_intent()?;
        let dir = from_function(&self.inst_map, &self.target.instances, &self.source.instances)?;
        Quartet::new(e2, e1, dir, self.adj())
    }

    /// `⟨adj, inv(typ)⟩ : intent(target) ⇒ intent(source)`
    pub fn intent_quartet(&self) -> Result<Quartet> {
        let (_, i1) = self.source.extent_intent()?;
        let (_, i2) = self.target.extent_intent()?;
        let inv = inverse_image_connection(&self.typ_map, &self.source.types, &self.target.types)?;
        Quartet::new(i2, i1, self.adj(), inv)
    }

    /// `th(target) ⇄ th(source)`: left is `closure ; typ⁻¹`, right is `∃typ`.
    pub fn theory_map(&self) -> Result<GaloisConnection> {
        let th1 = self.source.theories()?;
        let th2 = self.target.theories()?;
        let (n1, n2) = (self.source.types.len(), self.target.types.len());
        let left = (0..1usize << n2)
            .map(|m| {
                self.typ_map
                    .inverse_image(&BitSet::from_mask(n2, th2.closure[m] as u64))
                    .mask() as usize
            })
            .collect();
        let right = (0..1usize << n1)
            .map(|m| self.typ_map.direct_image(&BitSet::from_mask(n1, m as u64)).mask() as usize)
            .collect();
        GaloisConnection::new(th2.order, th1.order, left, right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1() -> Classification {
        Classification::new(&["1", "2"], &["a", "b"], &[("1", "a"), ("2", "a"), ("2", "b")]).unwrap()
    }

    fn bs(n: usize, items: &[usize]) -> BitSet {
        BitSet::from_indices(n, items.iter().copied())
    }

    #[test]
    fn concepts_of_fixtures() {
        let e = concepts(&Classification::empty()).unwrap();
        assert_eq!(e.len(), 1);
        let k = concepts(&k1()).unwrap();
        assert_eq!(
            k,
            vec![
                FormalConcept {
                    extent: bs(2, &[1]),
                    intent: bs(2, &[0, 1])
                },
                FormalConcept {
                    extent: bs(2, &[0, 1]),
                    intent: bs(2, &[0])
                },
            ]
        );
        assert_eq!(concepts(&Classification::instance_power(&["x", "y"]).unwrap()).unwrap().len(), 4);
    }

    #[test]
    fn clg_of_k1() {
        let l = ConceptLattice::of(&k1()).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.iota(), &[1, 0]);
        assert_eq!(l.tau(), &[1, 0]);
        assert_eq!(l.order().label(1), "({1,2},{a})");
        assert_eq!(l.clsn(), k1());
        assert!(l.density_check().holds());
        assert!(l.embedding_identities());
        let one = Classification::new(&["x"], &["y"], &[("x", "y")]).unwrap();
        assert_eq!(ConceptLattice::of(&one).unwrap().len(), 1);
    }

    #[test]
    fn power_lattice_is_a_square() {
        let l = ConceptLattice::of(&Classification::instance_power(&["x", "y"]).unwrap()).unwrap();
        assert_eq!(l.covers().len(), 4);
    }

    #[test]
    fn extrema_and_generators() {
        let l = ConceptLattice::of(&k1()).unwrap();
        assert_eq!(l.extremum(&[], BoundKind::Meet), 1);
        assert_eq!(l.extremum(&[0, 1], BoundKind::Meet), 0);
        assert_eq!(l.extremum(&[0, 1], BoundKind::Join), 1);
        assert_eq!(l.bound_by_formula(&[0, 1], BoundKind::Join), Some(1));
        assert_eq!(l.iota_set(&BitSet::empty(2)), l.bottom());
        assert_eq!(l.iota_set(&bs(2, &[0])), 1);
        assert_eq!(l.tau_set(&bs(2, &[0, 1])), 0);
        assert_eq!(l.iota_set_by_formula(&bs(2, &[0])), Some(1));
    }

    #[test]
    fn extent_and_intent_compose_to_derivation() {
        let l = ConceptLattice::of(&k1()).unwrap();
        let (e, i) = l.extent_intent().unwrap();
        assert!(e.classify().reflection);
        assert!(i.classify().coreflection);
        assert!(e.compose(&i).unwrap().equivalent(&k1().derivation().unwrap()));
    }

    #[test]
    fn theories_of_k1() {
        let l = ConceptLattice::of(&k1()).unwrap();
        let th = l.theories().unwrap();
        assert_eq!(th.closure[0b10], 0b11);
        assert_eq!(th.closure[0], 0b01);
        for y in 0..4 {
            assert_eq!(th.closure[y] & y, y);
            assert_eq!(th.closure[th.closure[y]], th.closure[y]);
        }
    }

    #[test]
    fn round_trip_and_opposite() {
        let l = ConceptLattice::of(&k1()).unwrap();
        let rt = l.roundtrip_iso().unwrap();
        assert_eq!(rt.forward, vec![0, 1]);
        assert_eq!(l.opposite().unwrap().clsn(), l.clsn().transpose());
    }

    #[test]
    fn missing_generator_breaks_join_density() {
        // a 3-chain whose only instance sits at the top; types generate every element
        let l = ConceptLattice::new(Preorder::chain(3), &["x"], &["p", "q"], vec![2], vec![0, 1]).unwrap();
        let report = l.density_check();
        assert_eq!(report.join_violations, vec![1]);
        assert!(report.meet_violations.is_empty());
        assert_eq!(l.roundtrip_iso().unwrap_err(), Error::NotDense("join"));
    }

    #[test]
    fn morphisms_from_infomorphisms() {
        let a = Arc::new(k1());
        let id = ConceptMorphism::from_infomorphism(&Infomorphism::identity(a.clone())).unwrap();
        assert_eq!(id, ConceptMorphism::identity(id.source().clone()));
        let eta = ConceptMorphism::from_infomorphism(&Infomorphism::unit(a.clone()).unwrap()).unwrap();
        let top = eta.right()[1];
        assert_eq!(eta.target().extent(top).to_vec(), vec![0, 1]);
        let c = eta.continuity().unwrap();
        assert!(c.left_join_continuous && c.right_meet_continuous);
        assert!(eta.extent_quartet().is_ok());
        assert!(eta.intent_quartet().is_ok());
    }

    #[test]
    fn mutated_right_map_is_rejected() {
        let l = Arc::new(ConceptLattice::of(&k1()).unwrap());
        let err = ConceptMorphism::new(l.clone(), l.clone(), vec![0, 1], vec![0, 0], vec![0, 1], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::NotAdjoint { .. } | Error::TypeNotPreserved(_)), "{err:?}");
    }
}
