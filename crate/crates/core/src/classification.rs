//! Classifications (formal contexts) and infomorphisms between them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::galois::{from_relation, GaloisConnection};
use crate::order::{check_capacity, check_total, subset_label, Preorder, SetFunction, POWERSET_LIMIT};

/// Which side of a classification a subset lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Instances,
    Types,
}

/// Instances, types and an incidence relation with one row per instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Classification {
    instances: Vec<String>,
    types: Vec<String>,
    incidence: BitMatrix,
    columns: BitMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ContextKind {
    /// No two types have the same extent.
    pub extensional: bool,
    /// No two instances have the same intent.
    pub separated: bool,
}

fn unique(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut seen = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if seen.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(seen)
}

fn owned<S: AsRef<str>>(labels: &[S]) -> Vec<String> {
    labels.iter().map(|s| s.as_ref().to_owned()).collect()
}

impl Classification {
    pub fn new<S: AsRef<str>>(instances: &[S], types: &[S], incidence: &[(S, S)]) -> Result<Self> {
        let instances = owned(instances);
        let types = owned(types);
        let xi = unique(&instances)?;
        let yi = unique(&types)?;
        let mut m = BitMatrix::new(instances.len(), types.len());
        for (x, y) in incidence {
            let x = *xi.get(x.as_ref()).ok_or_else(|| Error::UnknownLabel(x.as_ref().to_owned()))?;
            let y = *yi.get(y.as_ref()).ok_or_else(|| Error::UnknownLabel(y.as_ref().to_owned()))?;
            m.set(x, y, true);
        }
        Ok(Self::assemble(instances, types, m))
    }

    pub fn from_matrix(instances: Vec<String>, types: Vec<String>, incidence: BitMatrix) -> Result<Self> {
        unique(&instances)?;
        unique(&types)?;
        if incidence.rows() != instances.len() || incidence.cols() != types.len() {
            return Err(Error::MapLength {
                expected: instances.len() * types.len(),
                found: incidence.rows() * incidence.cols(),
            });
        }
        Ok(Self::assemble(instances, types, incidence))
    }

    fn assemble(instances: Vec<String>, types: Vec<String>, incidence: BitMatrix) -> Self {
        let columns = incidence.transpose();
        Classification {
            instances,
            types,
            incidence,
            columns,
        }
    }

    pub fn empty() -> Self {
        Self::assemble(vec![], vec![], BitMatrix::new(0, 0))
    }

    pub fn instances(&self) -> &[String] {
        &self.instances
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    pub fn n_instances(&self) -> usize {
        self.instances.len()
    }

    pub fn n_types(&self) -> usize {
        self.types.len()
    }

    pub fn incidence(&self) -> &BitMatrix {
        &self.incidence
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.incidence.get(x, y)
    }

    /// Types of instance `x`.
    pub fn intent_of(&self, x: usize) -> &BitSet {
        self.incidence.row(x)
    }

    /// Instances of type `y`.
    pub fn extent_of(&self, y: usize) -> &BitSet {
        self.columns.row(y)
    }

    /// Types shared by every instance in `xs`.
    pub fn derive_instances(&self, xs: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.n_types());
        for x in xs.iter() {
            out.intersect_with(self.incidence.row(x));
        }
        out
    }

    /// Instances having every type in `ys`.
    pub fn derive_types(&self, ys: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.n_instances());
        for y in ys.iter() {
            out.intersect_with(self.columns.row(y));
        }
        out
    }

    pub fn derive(&self, side: Axis, subset: &BitSet) -> BitSet {
        match side {
            Axis::Instances => self.derive_instances(subset),
            Axis::Types => self.derive_types(subset),
        }
    }

    /// Derivation applied twice, on either side.
    pub fn close(&self, side: Axis, subset: &BitSet) -> BitSet {
        match side {
            Axis::Instances => self.derive_types(&self.derive_instances(subset)),
            Axis::Types => self.derive_instances(&self.derive_types(subset)),
        }
    }

    pub fn classify(&self) -> ContextKind {
        let distinct = |m: &BitMatrix| {
            let mut rows: Vec<&BitSet> = (0..m.rows()).map(|i| m.row(i)).collect();
            rows.sort();
            rows.windows(2).all(|w| w[0] != w[1])
        };
        ContextKind {
            extensional: distinct(&self.columns),
            separated: distinct(&self.incidence),
        }
    }

    pub fn transpose(&self) -> Classification {
        Self::assemble(self.types.clone(), self.instances.clone(), self.columns.clone())
    }

    /// Instances are `base`, types are its subsets, incidence is membership.
    pub fn instance_power<S: AsRef<str>>(base: &[S]) -> Result<Self> {
        check_capacity("power classification base", base.len(), POWERSET_LIMIT)?;
        let base = owned(base);
        unique(&base)?;
        let n = base.len();
        let subsets: Vec<String> = (0..1u64 << n).map(|m| subset_label(&base, &BitSet::from_mask(n, m))).collect();
        let m = BitMatrix::from_fn(n, 1 << n, |x, s| s >> x & 1 == 1);
        Ok(Self::assemble(base, subsets, m))
    }

    /// Instances are subsets of `base`, types are `base`, incidence is containment.
    pub fn type_power<S: AsRef<str>>(base: &[S]) -> Result<Self> {
        Ok(Self::instance_power(base)?.transpose())
    }

    /// A preorder read as a classification of its elements by its elements.
    pub fn from_preorder(p: &Preorder) -> Self {
        Self::assemble(p.labels().to_vec(), p.labels().to_vec(), p.matrix().clone())
    }

    /// The derivation connection `℘inst ⇄ (℘typ)^op`.
    pub fn derivation(&self) -> Result<GaloisConnection> {
        from_relation(&self.instances, &self.types, &self.incidence)
    }

    /// Every pair `(X, Y)` with `X' = Y` and `Y' = X`, by brute force over both sides.
    pub fn concepts_brute_force(&self) -> Result<Vec<(BitSet, BitSet)>> {
        check_capacity("instance side", self.n_instances(), 16)?;
        check_capacity("type side", self.n_types(), 16)?;
        let (nx, ny) = (self.n_instances(), self.n_types());
        let mut out = Vec::new();
        for xm in 0..1u64 << nx {
            let xs = BitSet::from_mask(nx, xm);
            let dx = self.derive_instances(&xs);
            for ym in 0..1u64 << ny {
                let ys = BitSet::from_mask(ny, ym);
                if dx == ys && self.derive_types(&ys) == xs {
                    out.push((xs.clone(), ys));
                }
            }
        }
        Ok(out)
    }
}

/// One named law with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LawResult {
    pub law: &'static str,
    pub holds: bool,
}

impl Classification {
    /// The derivation laws on both sides, checked over all subsets.
    ///
    /// The union law is checked for the empty family and for all pairs, which
    /// covers every finite family by induction.
    pub fn derivation_laws(&self) -> Result<Vec<LawResult>> {
        check_capacity("instance side", self.n_instances(), 10)?;
        check_capacity("type side", self.n_types(), 10)?;
        let mut out = Vec::new();
        for side in [Axis::Instances, Axis::Types] {
            let (n, other) = match side {
                Axis::Instances => (self.n_instances(), self.n_types()),
                Axis::Types => (self.n_types(), self.n_instances()),
            };
            let subsets: Vec<BitSet> = (0..1u64 << n).map(|m| BitSet::from_mask(n, m)).collect();
            let derived: Vec<BitSet> = subsets.iter().map(|s| self.derive(side, s)).collect();
            let back = match side {
                Axis::Instances => Axis::Types,
                Axis::Types => Axis::Instances,
            };
            let closed: Vec<BitSet> = derived.iter().map(|d| self.derive(back, d)).collect();
            let antitone = (0..subsets.len()).all(|i| {
                (0..subsets.len()).all(|j| !subsets[i].is_subset(&subsets[j]) || derived[j].is_subset(&derived[i]))
            });
            let extensive = (0..subsets.len()).all(|i| subsets[i].is_subset(&closed[i]));
            let stable = (0..subsets.len()).all(|i| {
                self.derive(side, &closed[i]) == derived[i] && self.derive(back, &self.derive(side, &closed[i])) == closed[i]
            });
            let unions = derived[0] == BitSet::full(other)
                && (0..subsets.len()).all(|i| {
                    (0..subsets.len()).all(|j| {
                        derived[subsets[i].union(&subsets[j]).mask() as usize] == derived[i].intersection(&derived[j])
                    })
                });
            let names: [&'static str; 4] = match side {
                Axis::Instances => [
                    "instance derivation is antitone",
                    "instance closure is extensive",
                    "instance derivation is stable under closure",
                    "instance derivation turns unions into intersections",
                ],
                Axis::Types => [
                    "type derivation is antitone",
                    "type closure is extensive",
                    "type derivation is stable under closure",
                    "type derivation turns unions into intersections",
                ],
            };
            for (law, holds) in names.into_iter().zip([antitone, extensive, stable, unions]) {
                out.push(LawResult { law, holds });
            }
        }
        Ok(out)
    }
}

/// Maps between classifications running in opposite directions: instances
/// backward, types forward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infomorphism {
    source: Arc<Classification>,
    target: Arc<Classification>,
    inst_map: SetFunction,
    typ_map: SetFunction,
}

/// Least `(target instance, source type)` where the fundamental condition fails.
pub fn fundamental_witness(
    source: &Classification,
    target: &Classification,
    inst_map: &[usize],
    typ_map: &[usize],
) -> Result<Option<(usize, usize)>> {
    check_total(inst_map, target.n_instances(), source.n_instances())?;
    check_total(typ_map, source.n_types(), target.n_types())?;
    Ok((0..target.n_instances()).find_map(|x2| {
        (0..source.n_types())
            .find(|&y1| source.holds(inst_map[x2], y1) != target.holds(x2, typ_map[y1]))
            .map(|y1| (x2, y1))
    }))
}

/// `inst⁻¹(ext₁(y)) = ext₂(typ(y))` for every source type.
pub fn ext_naturality(source: &Classification, target: &Classification, inst_map: &[usize], typ_map: &[usize]) -> Result<bool> {
    check_total(inst_map, target.n_instances(), source.n_instances())?;
    check_total(typ_map, source.n_types(), target.n_types())?;
    let inst = SetFunction::new(target.n_instances(), source.n_instances(), inst_map.to_vec())?;
    Ok((0..source.n_types()).all(|y1| &inst.inverse_image(source.extent_of(y1)) == target.extent_of(typ_map[y1])))
}

/// `typ⁻¹(int₂(x)) = int₁(inst(x))` for every target instance.
pub fn int_naturality(source: &Classification, target: &Classification, inst_map: &[usize], typ_map: &[usize]) -> Result<bool> {
    check_total(inst_map, target.n_instances(), source.n_instances())?;
    check_total(typ_map, source.n_types(), target.n_types())?;
    let typ = SetFunction::new(source.n_types(), target.n_types(), typ_map.to_vec())?;
    Ok((0..target.n_instances()).all(|x2| &typ.inverse_image(target.intent_of(x2)) == source.intent_of(inst_map[x2])))
}

impl Infomorphism {
    pub fn new(
        source: Arc<Classification>,
        target: Arc<Classification>,
        inst_map: Vec<usize>,
        typ_map: Vec<usize>,
    ) -> Result<Self> {
        if let Some((instance, typ)) = fundamental_witness(&source, &target, &inst_map, &typ_map)? {
            return Err(Error::FundamentalConditionViolated { instance, typ });
        }
        debug_assert!(ext_naturality(&source, &target, &inst_map, &typ_map).unwrap_or(false));
        debug_assert!(int_naturality(&source, &target, &inst_map, &typ_map).unwrap_or(false));
        let inst_map = SetFunction::new(target.n_instances(), source.n_instances(), inst_map)?;
        let typ_map = SetFunction::new(source.n_types(), target.n_types(), typ_map)?;
        Ok(Infomorphism {
            source,
            target,
            inst_map,
            typ_map,
        })
    }

    pub fn identity(a: Arc<Classification>) -> Self {
        Infomorphism {
            inst_map: SetFunction::identity(a.n_instances()),
            typ_map: SetFunction::identity(a.n_types()),
            source: a.clone(),
            target: a,
        }
    }

    pub fn source(&self) -> &Arc<Classification> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Classification> {
        &self.target
    }

    /// Target instances to source instances.
    pub fn inst_map(&self) -> &SetFunction {
        &self.inst_map
    }

    /// Source types to target types.
    pub fn typ_map(&self) -> &SetFunction {
        &self.typ_map
    }

    /// Runs `self : A1 ⇄ A2` then `next : A2 ⇄ A3`.
    pub fn compose(&self, next: &Infomorphism) -> Result<Infomorphism> {
        if !(Arc::ptr_eq(&self.target, &next.source) || self.target == next.source) {
            return Err(Error::BoundaryMismatch("infomorphism composite"));
        }
        Infomorphism::new(
            self.source.clone(),
            next.target.clone(),
            next.inst_map.then(&self.inst_map)?.map().to_vec(),
            self.typ_map.then(&next.typ_map)?.map().to_vec(),
        )
    }

    /// Same underlying maps and classifications.
    pub fn same_as(&self, other: &Infomorphism) -> bool {
        self.inst_map == other.inst_map && self.typ_map == other.typ_map && self.source == other.source && self.target == other.target
    }

    /// `⟨id, ext⟩ : A ⇄ ǒ(inst A)`
    pub fn unit(a: Arc<Classification>) -> Result<Self> {
        let power = Arc::new(Classification::instance_power(a.instances())?);
        let typ = (0..a.n_types()).map(|y| a.extent_of(y).mask() as usize).collect();
        Infomorphism::new(a.clone(), power, (0..a.n_instances()).collect(), typ)
    }

    /// `⟨int, id⟩ : ô(typ A) ⇄ A`
    pub fn counit(a: Arc<Classification>) -> Result<Self> {
        let power = Arc::new(Classification::type_power(a.types())?);
        let inst = (0..a.n_instances()).map(|x| a.intent_of(x).mask() as usize).collect();
        Infomorphism::new(power, a.clone(), inst, (0..a.n_types()).collect())
    }

    /// `⟨g, g⁻¹⟩ : ǒX1 ⇄ ǒX2` for a function `g : X2 → X1`.
    pub fn instance_power_map<S: AsRef<str>>(g: &SetFunction, x1: &[S], x2: &[S]) -> Result<Self> {
        let p1 = Arc::new(Classification::instance_power(x1)?);
        let p2 = Arc::new(Classification::instance_power(x2)?);
        let n1 = x1.len();
        let typ = (0..1u64 << n1)
            .map(|m| g.inverse_image(&BitSet::from_mask(n1, m)).mask() as usize)
            .collect();
        Infomorphism::new(p1, p2, g.map().to_vec(), typ)
    }

    /// `⟨g⁻¹, g⟩ : ôY1 ⇄ ôY2` for a function `g : Y1 → Y2`.
    pub fn type_power_map<S: AsRef<str>>(g: &SetFunction, y1: &[S], y2: &[S]) -> Result<Self> {
        let p1 = Arc::new(Classification::type_power(y1)?);
        let p2 = Arc::new(Classification::type_power(y2)?);
        let n2 = y2.len();
        let inst = (0..1u64 << n2)
            .map(|m| g.inverse_image(&BitSet::from_mask(n2, m)).mask() as usize)
            .collect();
        Infomorphism::new(p1, p2, inst, g.map().to_vec())
    }

    /// A connection `g : A ⇄ B` read as an infomorphism between the preorders
    /// as classifications, from `B` to `A`: instances move by the left adjoint
    /// and types by the right.
    pub fn from_galois(g: &GaloisConnection) -> Result<Self> {
        Infomorphism::new(
            Arc::new(Classification::from_preorder(g.target())),
            Arc::new(Classification::from_preorder(g.source())),
            g.left().to_vec(),
            g.right().to_vec(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1() -> Classification {
        Classification::new(&["1", "2"], &["a", "b"], &[("1", "a"), ("2", "a"), ("2", "b")]).unwrap()
    }

    fn set(n: usize, items: &[usize]) -> BitSet {
        BitSet::from_indices(n, items.iter().copied())
    }

    #[test]
    fn construction() {
        let e = Classification::new::<&str>(&[], &[], &[]).unwrap();
        assert_eq!(e, Classification::empty());
        assert_eq!(k1().incidence().pairs().count(), 3);
        assert_eq!(
            Classification::new(&["1"], &["a"], &[("1", "z")]).unwrap_err(),
            Error::UnknownLabel("z".into())
        );
        assert_eq!(
            Classification::new(&["1", "1"], &["a"], &[]).unwrap_err(),
            Error::DuplicateLabel("1".into())
        );
    }

    #[test]
    fn derivations_of_k1() {
        let a = k1();
        assert_eq!(a.derive(Axis::Instances, &BitSet::empty(2)).to_vec(), vec![0, 1]);
        assert_eq!(a.derive(Axis::Instances, &set(2, &[0])).to_vec(), vec![0]);
        assert_eq!(a.derive(Axis::Types, &set(2, &[0, 1])).to_vec(), vec![1]);
        assert!(a.derivation_laws().unwrap().iter().all(|l| l.holds));
    }

    #[test]
    fn kinds() {
        assert_eq!(
            k1().classify(),
            ContextKind {
                extensional: true,
                separated: true
            }
        );
        let dup = Classification::new(&["1"], &["a", "b"], &[("1", "a"), ("1", "b")]).unwrap();
        assert!(!dup.classify().extensional);
        let p = Classification::instance_power(&["x", "y", "z"]).unwrap();
        assert!(p.classify().extensional && p.classify().separated);
    }

    #[test]
    fn powers_and_transpose() {
        let p = Classification::instance_power(&["x"]).unwrap();
        assert_eq!(p.types(), &["{}", "{x}"]);
        assert!(!p.holds(0, 0) && p.holds(0, 1));
        let p2 = Classification::instance_power(&["x", "y"]).unwrap();
        assert_eq!((p2.n_instances(), p2.n_types()), (2, 4));
        assert_eq!(p2.transpose(), Classification::type_power(&["x", "y"]).unwrap());
        let t = k1().transpose();
        let mut pairs: Vec<_> = t.incidence().pairs().collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(t.transpose(), k1());
        assert_eq!(Classification::empty().transpose(), Classification::empty());
    }

    #[test]
    fn preorders_as_classifications() {
        let c = Classification::from_preorder(&Preorder::chain(2));
        let mut pairs: Vec<_> = c.incidence().pairs().collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (1, 1)]);
        let d = Classification::from_preorder(&Preorder::discrete(3));
        assert!(d.incidence().pairs().all(|(i, j)| i == j));
        assert_eq!(d.incidence().pairs().count(), 3);
    }

    #[test]
    fn unit_and_counit_of_k1() {
        let a = Arc::new(k1());
        let eta = Infomorphism::unit(a.clone()).unwrap();
        // a ↦ {1,2}, b ↦ {2}
        assert_eq!(eta.typ_map().map(), &[0b11, 0b10]);
        let eps = Infomorphism::counit(a.clone()).unwrap();
        // 1 ↦ {a}, 2 ↦ {a,b}
        assert_eq!(eps.inst_map().map(), &[0b01, 0b11]);
        let empty = Arc::new(Classification::empty());
        let eta = Infomorphism::unit(empty.clone()).unwrap();
        assert_eq!(eta.target().n_types(), 1);
        assert!(Infomorphism::counit(empty).is_ok());
    }

    #[test]
    fn fundamental_condition_witness() {
        let a = Arc::new(k1());
        let err = Infomorphism::new(a.clone(), a.clone(), vec![0, 0], vec![0, 1]).unwrap_err();
        // instance 2 pulled back to 1, which lacks b
        assert_eq!(err, Error::FundamentalConditionViolated { instance: 1, typ: 1 });
        assert!(!ext_naturality(&a, &a, &[0, 0], &[0, 1]).unwrap());
        assert!(!int_naturality(&a, &a, &[0, 0], &[0, 1]).unwrap());
    }

    #[test]
    fn composition_and_naturality_of_unit() {
        let a = Arc::new(k1());
        let id = Infomorphism::identity(a.clone());
        let eta = Infomorphism::unit(a.clone()).unwrap();
        assert!(id.compose(&eta).unwrap().same_as(&eta));
        assert!(eta.compose(&Infomorphism::identity(eta.target().clone())).unwrap().same_as(&eta));
    }

    #[test]
    fn galois_connections_are_infomorphisms() {
        let g = k1().derivation().unwrap();
        let f = Infomorphism::from_galois(&g).unwrap();
        assert_eq!(f.inst_map().map(), g.left());
    }
}
