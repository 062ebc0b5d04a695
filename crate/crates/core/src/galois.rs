//! Galois connections between finite preorders.
//!
//! A connection `A ⇄ B` is a pair of monotone maps, `left: A → B` and
//! `right: B → A`, with `left(a) <= b` iff `a <= right(b)`. Composition is
//! diagrammatic throughout: `g.compose(h)` runs `g` first, so its left adjoint
//! is `h.left ∘ g.left` and its right adjoint is `g.right ∘ h.right`.
//!
//! Pointwise comparisons between connections hold up to equivalence in the
//! relevant preorder, which for posets is plain equality.

use std::sync::Arc;

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result, Side};
use crate::order::{
    check_capacity, check_total, kernel_of, monotonicity_witness, BoundKind, Preorder, SetFunction,
    POWERSET_LIMIT, SUBSET_LIMIT,
};

/// Largest carrier accepted by constructions that materialize new orders.
pub const CARRIER_LIMIT: usize = 1 << POWERSET_LIMIT;

pub(crate) fn same_order(a: &Arc<Preorder>, b: &Arc<Preorder>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisConnection {
    source: Arc<Preorder>,
    target: Arc<Preorder>,
    left: Vec<usize>,
    right: Vec<usize>,
}

/// Output of [`GaloisConnection::closure_interior`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureInterior {
    /// `a ↦ right(left(a))` on the source.
    pub closure: Vec<usize>,
    /// `b ↦ left(right(b))` on the target.
    pub interior: Vec<usize>,
    pub closed: Vec<usize>,
    pub open: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct ConnectionKind {
    pub reflection: bool,
    pub coreflection: bool,
}

/// The first place two connections with the same boundary disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub side: Side,
    pub element: usize,
}

impl GaloisConnection {
    /// Validates monotonicity of both maps and the adjointness condition, exhaustively.
    pub fn new(source: Arc<Preorder>, target: Arc<Preorder>, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        check_total(&left, source.len(), target.len())?;
        check_total(&right, target.len(), source.len())?;
        if let Some((a, b)) = monotonicity_witness(&source, &target, &left) {
            return Err(Error::NotMonotone {
                side: Side::Left,
                a,
                b,
            });
        }
        if let Some((a, b)) = monotonicity_witness(&target, &source, &right) {
            return Err(Error::NotMonotone {
                side: Side::Right,
                a,
                b,
            });
        }
        if let Some((a, b)) = adjointness_witness(&source, &target, &left, &right) {
            return Err(Error::AdjointnessViolated {
                a,
                b,
                left_holds: target.leq(left[a], b),
                right_holds: source.leq(a, right[b]),
            });
        }
        let g = GaloisConnection {
            source,
            target,
            left,
            right,
        };
        debug_assert!((0..g.target.len()).all(|b| g.target.leq(g.left[g.right[b]], b)));
        debug_assert!((0..g.source.len()).all(|a| g.source.leq(a, g.right[g.left[a]])));
        Ok(g)
    }

    /// For maps that are adjoint by construction; validated in debug builds.
    pub(crate) fn new_unchecked(
        source: Arc<Preorder>,
        target: Arc<Preorder>,
        left: Vec<usize>,
        right: Vec<usize>,
    ) -> Self {
        if cfg!(debug_assertions) {
            Self::new(source, target, left, right).expect("connection adjoint by construction")
        } else {
            GaloisConnection {
                source,
                target,
                left,
                right,
            }
        }
    }

    pub fn identity(p: Arc<Preorder>) -> Self {
        let id: Vec<usize> = (0..p.len()).collect();
        GaloisConnection {
            source: p.clone(),
            target: p,
            left: id.clone(),
            right: id,
        }
    }

    pub fn source(&self) -> &Arc<Preorder> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Preorder> {
        &self.target
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn apply_left(&self, a: usize) -> usize {
        self.left[a]
    }

    pub fn apply_right(&self, b: usize) -> usize {
        self.right[b]
    }

    /// `right(left(a))`
    pub fn closure(&self, a: usize) -> usize {
        self.right[self.left[a]]
    }

    /// `left(right(b))`
    pub fn interior(&self, b: usize) -> usize {
        self.left[self.right[b]]
    }

    /// Runs `self` then `next`.
    pub fn compose(&self, next: &GaloisConnection) -> Result<GaloisConnection> {
        if !same_order(&self.target, &next.source) {
            return Err(Error::BoundaryMismatch("composite: target of first is not source of second"));
        }
        let left = self.left.iter().map(|&b| next.left[b]).collect();
        let right = next.right.iter().map(|&b| self.right[b]).collect();
        Ok(Self::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            left,
            right,
        ))
    }

    /// The connection `B^op ⇄ A^op` with the adjoints swapped.
    pub fn opposite(&self) -> GaloisConnection {
        GaloisConnection {
            source: Arc::new(self.target.opposite()),
            target: Arc::new(self.source.opposite()),
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    pub fn closure_interior(&self) -> ClosureInterior {
        let closure: Vec<usize> = (0..self.source.len()).map(|a| self.closure(a)).collect();
        let interior: Vec<usize> = (0..self.target.len()).map(|b| self.interior(b)).collect();
        let closed = (0..self.source.len())
            .filter(|&a| self.source.equiv(a, closure[a]))
            .collect();
        let open = (0..self.target.len())
            .filter(|&b| self.target.equiv(b, interior[b]))
            .collect();
        ClosureInterior {
            closure,
            interior,
            closed,
            open,
        }
    }

    pub fn is_closed(&self, a: usize) -> bool {
        self.source.equiv(a, self.closure(a))
    }

    pub fn is_open(&self, b: usize) -> bool {
        self.target.equiv(b, self.interior(b))
    }

    /// First target element whose interior is not equivalent to it.
    pub fn reflection_witness(&self) -> Option<usize> {
        (0..self.target.len()).find(|&b| !self.is_open(b))
    }

    /// First source element whose closure is not equivalent to it.
    pub fn coreflection_witness(&self) -> Option<usize> {
        (0..self.source.len()).find(|&a| !self.is_closed(a))
    }

    pub fn classify(&self) -> ConnectionKind {
        let kind = ConnectionKind {
            reflection: self.reflection_witness().is_none(),
            coreflection: self.coreflection_witness().is_none(),
        };
        // the right adjoint of a reflection, and the left adjoint of a coreflection, reflect order
        debug_assert!(!kind.reflection || reflects_order(&self.target, &self.source, &self.right));
        debug_assert!(!kind.coreflection || reflects_order(&self.source, &self.target, &self.left));
        kind
    }

    /// First disagreement with `other`, comparing left images up to equivalence
    /// in the target and right images up to equivalence in the source.
    pub fn mismatch(&self, other: &GaloisConnection) -> Result<Option<Mismatch>> {
        if !same_order(&self.source, &other.source) || !same_order(&self.target, &other.target) {
            return Err(Error::BoundaryMismatch("pointwise comparison of connections"));
        }
        if let Some(a) = (0..self.source.len()).find(|&a| !self.target.equiv(self.left[a], other.left[a])) {
            return Ok(Some(Mismatch {
                side: Side::Left,
                element: a,
            }));
        }
        Ok((0..self.target.len())
            .find(|&b| !self.source.equiv(self.right[b], other.right[b]))
            .map(|b| Mismatch {
                side: Side::Right,
                element: b,
            }))
    }

    /// Pointwise equality up to equivalence; false if the boundaries differ.
    pub fn equivalent(&self, other: &GaloisConnection) -> bool {
        matches!(self.mismatch(other), Ok(None))
    }

    /// Kernel of the left adjoint: the source carrier ordered by `left(a1) <= left(a2)`.
    pub fn left_kernel(&self) -> Preorder {
        kernel_of(&self.source, &self.target, &self.left)
    }

    /// Kernel of the right adjoint: the target carrier ordered by `right(b1) <= right(b2)`.
    pub fn right_kernel(&self) -> Preorder {
        kernel_of(&self.target, &self.source, &self.right)
    }
}

fn reflects_order(source: &Preorder, target: &Preorder, map: &[usize]) -> bool {
    (0..source.len()).all(|a| (0..source.len()).all(|b| !target.leq(map[a], map[b]) || source.leq(a, b)))
}

fn adjointness_witness(source: &Preorder, target: &Preorder, left: &[usize], right: &[usize]) -> Option<(usize, usize)> {
    (0..source.len()).find_map(|a| {
        (0..target.len())
            .find(|&b| target.leq(left[a], b) != source.leq(a, right[b]))
            .map(|b| (a, b))
    })
}

// ---------------------------------------------------------------------------
// builders

/// The derivation connection of a relation `R ⊆ X × Y`, from `℘X` to `(℘Y)^op`.
/// Rows of `relation` are indexed by `X`.
pub fn from_relation<S: AsRef<str>>(x_labels: &[S], y_labels: &[S], relation: &BitMatrix) -> Result<GaloisConnection> {
    check_capacity("relation source", x_labels.len(), POWERSET_LIMIT)?;
    check_capacity("relation target", y_labels.len(), POWERSET_LIMIT)?;
    if relation.rows() != x_labels.len() || relation.cols() != y_labels.len() {
        return Err(Error::MapLength {
            expected: x_labels.len(),
            found: relation.rows(),
        });
    }
    let (nx, ny) = (x_labels.len(), y_labels.len());
    let source = Arc::new(Preorder::powerset(x_labels)?);
    let target = Arc::new(Preorder::powerset(y_labels)?.opposite());
    let columns = relation.transpose();
    let left = (0..1usize << nx)
        .map(|m| {
            let mut common = BitSet::full(ny);
            for x in BitSet::from_mask(nx, m as u64).iter() {
                common.intersect_with(relation.row(x));
            }
            common.mask() as usize
        })
        .collect();
    let right = (0..1usize << ny)
        .map(|m| {
            let mut common = BitSet::full(nx);
            for y in BitSet::from_mask(ny, m as u64).iter() {
                common.intersect_with(columns.row(y));
            }
            common.mask() as usize
        })
        .collect();
    Ok(GaloisConnection::new_unchecked(source, target, left, right))
}

/// Direct image connection `℘X₁ ⇄ ℘X₂` of a function: left is `∃h`, right is `h⁻¹`.
pub fn from_function<S: AsRef<str>>(h: &SetFunction, source_labels: &[S], target_labels: &[S]) -> Result<GaloisConnection> {
    check_capacity("function source", h.source_len(), POWERSET_LIMIT)?;
    check_capacity("function target", h.target_len(), POWERSET_LIMIT)?;
    if source_labels.len() != h.source_len() || target_labels.len() != h.target_len() {
        return Err(Error::MapLength {
            expected: h.source_len(),
            found: source_labels.len(),
        });
    }
    let (n1, n2) = (h.source_len(), h.target_len());
    let source = Arc::new(Preorder::powerset(source_labels)?);
    let target = Arc::new(Preorder::powerset(target_labels)?);
    let left = (0..1usize << n1)
        .map(|m| h.direct_image(&BitSet::from_mask(n1, m as u64)).mask() as usize)
        .collect();
    let right = (0..1usize << n2)
        .map(|m| h.inverse_image(&BitSet::from_mask(n2, m as u64)).mask() as usize)
        .collect();
    Ok(GaloisConnection::new_unchecked(source, target, left, right))
}

/// Inverse image connection `(℘X₂)^op ⇄ (℘X₁)^op`: left is `h⁻¹`, right is `∃h`.
pub fn inverse_image_connection<S: AsRef<str>>(
    h: &SetFunction,
    source_labels: &[S],
    target_labels: &[S],
) -> Result<GaloisConnection> {
    Ok(from_function(h, source_labels, target_labels)?.opposite())
}

// ---------------------------------------------------------------------------
// induced lattices

/// Which half of the induced-lattice identities a check belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Reflection,
    Coreflection,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IdentityFailure {
    pub role: Role,
    pub identity: &'static str,
    pub subset: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct InducedLatticeReport {
    pub reflection_checked: bool,
    pub coreflection_checked: bool,
    pub subsets_checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl InducedLatticeReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl GaloisConnection {
    /// Checks the meet and join identities carried by a reflection (on every
    /// target subset) and by a coreflection (on every source subset).
    ///
    /// For a reflection the source must be a complete lattice; for a
    /// coreflection the target must be.
    pub fn check_induced_lattice(&self) -> Result<InducedLatticeReport> {
        let kind = self.classify();
        if !kind.reflection && !kind.coreflection {
            return Err(Error::NotReflection(self.reflection_witness().unwrap_or(0)));
        }
        let mut report = InducedLatticeReport::default();
        if kind.reflection {
            check_capacity("reflection target", self.target.len(), SUBSET_LIMIT)?;
            report.reflection_checked = true;
            // poset source forces a poset target
            if self.source.is_poset() && !self.target.is_poset() {
                report.failures.push(IdentityFailure {
                    role: Role::Reflection,
                    identity: "poset source implies poset target",
                    subset: vec![],
                });
            }
            self.induced_identities(Role::Reflection, &mut report)?;
        }
        if kind.coreflection {
            check_capacity("coreflection source", self.source.len(), SUBSET_LIMIT)?;
            report.coreflection_checked = true;
            if self.target.is_poset() && !self.source.is_poset() {
                report.failures.push(IdentityFailure {
                    role: Role::Coreflection,
                    identity: "poset target implies poset source",
                    subset: vec![],
                });
            }
            self.induced_identities(Role::Coreflection, &mut report)?;
        }
        Ok(report)
    }

    fn induced_identities(&self, role: Role, report: &mut InducedLatticeReport) -> Result<()> {
        // `near` carries the subsets; `far` is the complete lattice they are pushed into.
        let (near, far, push, pull): (&Preorder, &Preorder, &[usize], &[usize]) = match role {
            Role::Reflection => (&self.target, &self.source, &self.right, &self.left),
            Role::Coreflection => (&self.source, &self.target, &self.left, &self.right),
        };
        let n = near.len();
        for mask in 0..(1u64 << n) {
            let subset = BitSet::from_mask(n, mask).to_vec();
            let image: Vec<usize> = subset.iter().map(|&s| push[s]).collect();
            let far_bound = |kind: BoundKind| {
                far.extremum(&image, kind).map_err(|_| Error::NotComplete {
                    subset: image.clone(),
                    kind: kind.name(),
                })
            };
            let far_meet = far_bound(BoundKind::Meet)?;
            let far_join = far_bound(BoundKind::Join)?;
            report.subsets_checked += 1;
            let mut fail = |identity: &'static str| {
                report.failures.push(IdentityFailure {
                    role,
                    identity,
                    subset: subset.clone(),
                })
            };
            let near_meet = near.meet(&subset).ok();
            let near_join = near.join(&subset).ok();
            match role {
                Role::Reflection => {
                    // ⋁B ≡ left(⋁ right[B]),  ⋀B ≡ left(⋀ right[B])
                    if !near_join.is_some_and(|j| near.equiv(j, pull[far_join])) {
                        fail("join B = left(join right[B])");
                    }
                    if !near_meet.is_some_and(|m| near.equiv(m, pull[far_meet])) {
                        fail("meet B = left(meet right[B])");
                    }
                    // right(⋁B) ≡ (⋁ right[B])•,  right(⋀B) ≡ ⋀ right[B]
                    if !near_join.is_some_and(|j| far.equiv(push[j], self.closure(far_join))) {
                        fail("right(join B) = closure(join right[B])");
                    }
                    if !near_meet.is_some_and(|m| far.equiv(push[m], far_meet)) {
                        fail("right(meet B) = meet right[B]");
                    }
                }
                Role::Coreflection => {
                    if !near_meet.is_some_and(|m| near.equiv(m, pull[far_meet])) {
                        fail("meet A = right(meet left[A])");
                    }
                    if !near_join.is_some_and(|j| near.equiv(j, pull[far_join])) {
                        fail("join A = right(join left[A])");
                    }
                    if !near_meet.is_some_and(|m| far.equiv(push[m], self.interior(far_meet))) {
                        fail("left(meet A) = interior(meet left[A])");
                    }
                    if !near_join.is_some_and(|j| far.equiv(push[j], far_join)) {
                        fail("left(join A) = join left[A]");
                    }
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// polar factorization

/// Factorization of a connection through its axis of bipoles: a reflection
/// onto the axis followed by a coreflection out of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarFactorization {
    /// `(closed source element, open target element)`, canonical representatives.
    pub bipoles: Vec<(usize, usize)>,
    pub axis: Arc<Preorder>,
    /// `⟨ξ₀, π₀⟩ : A ⇄ axis`
    pub refl: GaloisConnection,
    /// `⟨π₁, ξ₁⟩ : axis ⇄ B`
    pub corefl: GaloisConnection,
}

impl GaloisConnection {
    pub fn polar_factorize(&self) -> Result<PolarFactorization> {
        check_capacity("connection source", self.source.len(), CARRIER_LIMIT)?;
        check_capacity("connection target", self.target.len(), CARRIER_LIMIT)?;
        let a_canon: Vec<usize> = (0..self.source.len()).map(|a| self.source.canonical(a)).collect();
        let b_canon: Vec<usize> = (0..self.target.len()).map(|b| self.target.canonical(b)).collect();
        // one bipole per equivalence class of closed elements
        let mut bipoles = Vec::new();
        let mut slot = vec![usize::MAX; self.source.len()];
        for a in 0..self.source.len() {
            if a_canon[a] == a && self.is_closed(a) {
                slot[a] = bipoles.len();
                bipoles.push((a, b_canon[self.left[a]]));
            }
        }
        let n = bipoles.len();
        let src = &self.source;
        let axis_order = BitMatrix::from_fn(n, n, |i, j| src.leq(bipoles[i].0, bipoles[j].0));
        let mut labels: Vec<String> = bipoles
            .iter()
            .map(|&(a, b)| format!("({},{})", self.source.label(a), self.target.label(b)))
            .collect();
        let mut dedup = labels.clone();
        dedup.sort();
        dedup.dedup();
        if dedup.len() != labels.len() {
            labels = (0..n).map(|i| format!("bipole{i}")).collect();
        }
        let axis = Arc::new(Preorder::from_matrix(labels, axis_order)?);

        let embed_source: Vec<usize> = (0..self.source.len())
            .map(|a| slot[a_canon[self.closure(a)]])
            .collect();
        let project_source: Vec<usize> = bipoles.iter().map(|&(a, _)| a).collect();
        let project_target: Vec<usize> = bipoles.iter().map(|&(_, b)| b).collect();
        let embed_target: Vec<usize> = (0..self.target.len())
            .map(|b| slot[a_canon[self.right[b]]])
            .collect();
        debug_assert!(embed_source.iter().chain(&embed_target).all(|&i| i < n));

        let refl = GaloisConnection::new(self.source.clone(), axis.clone(), embed_source, project_source)?;
        let corefl = GaloisConnection::new(axis.clone(), self.target.clone(), project_target, embed_target)?;
        let pf = PolarFactorization {
            bipoles,
            axis,
            refl,
            corefl,
        };
        debug_assert!(pf.invariant_violation(self).is_none(), "{:?}", pf.invariant_violation(self));
        Ok(pf)
    }
}

impl PolarFactorization {
    /// Describes the first broken invariant relative to the factored connection, if any.
    pub fn invariant_violation(&self, g: &GaloisConnection) -> Option<String> {
        for (i, &(a, b)) in self.bipoles.iter().enumerate() {
            if !g.is_closed(a) || !g.is_open(b) {
                return Some(format!("bipole {i} is not closed/open"));
            }
            if !g.source.equiv(a, g.right[b]) || !g.target.equiv(b, g.left[a]) {
                return Some(format!("bipole {i} components are not polar"));
            }
        }
        for i in 0..self.bipoles.len() {
            for j in 0..self.bipoles.len() {
                let by_source = g.source.leq(self.bipoles[i].0, self.bipoles[j].0);
                let by_target = g.target.leq(self.bipoles[i].1, self.bipoles[j].1);
                if by_source != by_target || self.axis.leq(i, j) != by_source {
                    return Some(format!("bipolar order disagrees at ({i}, {j})"));
                }
            }
        }
        if let Some(b) = self.refl.reflection_witness() {
            return Some(format!("refl is not a reflection at {b}"));
        }
        if let Some(a) = self.corefl.coreflection_witness() {
            return Some(format!("corefl is not a coreflection at {a}"));
        }
        match self.refl.compose(&self.corefl) {
            Ok(c) if c.equivalent(g) => {}
            _ => return Some("refl then corefl does not reproduce the connection".into()),
        }
        if g.source.is_poset() && g.target.is_poset() && !self.axis.is_poset() {
            return Some("axis of a poset connection is not a poset".into());
        }
        None
    }
}

// ---------------------------------------------------------------------------
// kernel factorization

/// The combined factorization of a connection through the kernels of its
/// adjoints, together with the axis embeddings restricted to those kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelFactorization {
    pub left_kernel: Arc<Preorder>,
    pub right_kernel: Arc<Preorder>,
    /// `⟨id, closure⟩ : A ⇄ ker(left)`
    pub clo: GaloisConnection,
    /// `⟨interior, id⟩ : ker(right) ⇄ B`
    pub int: GaloisConnection,
    /// `⟨left, right⟩ : ker(left) ⇄ B`
    pub lift0: GaloisConnection,
    /// `⟨left, right⟩ : A ⇄ ker(right)`
    pub lift1: GaloisConnection,
    /// `⟨left, right⟩ : ker(left) ⇄ ker(right)`
    pub lift: GaloisConnection,
    pub polar: PolarFactorization,
    /// `⟨ξ₀, π₀⟩ : ker(left) ⇄ axis`
    pub kernel_refl: GaloisConnection,
    /// `⟨π₁, ξ₁⟩ : axis ⇄ ker(right)`
    pub kernel_corefl: GaloisConnection,
}

impl GaloisConnection {
    /// `⟨id, closure⟩ : A ⇄ ker(left)`
    pub fn clo(&self) -> GaloisConnection {
        let ker = Arc::new(self.left_kernel());
        let closure = (0..self.source.len()).map(|a| self.closure(a)).collect();
        Self::new_unchecked(self.source.clone(), ker, (0..self.source.len()).collect(), closure)
    }

    /// `⟨interior, id⟩ : ker(right) ⇄ B`
    pub fn int(&self) -> GaloisConnection {
        let ker = Arc::new(self.right_kernel());
        let interior = (0..self.target.len()).map(|b| self.interior(b)).collect();
        Self::new_unchecked(ker, self.target.clone(), interior, (0..self.target.len()).collect())
    }

    /// The same maps, `ker(left) ⇄ B`.
    pub fn lift0(&self) -> GaloisConnection {
        Self::new_unchecked(Arc::new(self.left_kernel()), self.target.clone(), self.left.clone(), self.right.clone())
    }

    /// The same maps, `A ⇄ ker(right)`.
    pub fn lift1(&self) -> GaloisConnection {
        Self::new_unchecked(self.source.clone(), Arc::new(self.right_kernel()), self.left.clone(), self.right.clone())
    }

    pub fn kernel_factorize(&self) -> Result<KernelFactorization> {
        let polar = self.polar_factorize()?;
        let clo = self.clo();
        let int = self.int();
        let left_kernel = clo.target.clone();
        let right_kernel = int.source.clone();
        let lift0 = GaloisConnection::new(left_kernel.clone(), self.target.clone(), self.left.clone(), self.right.clone())?;
        let lift1 = GaloisConnection::new(self.source.clone(), right_kernel.clone(), self.left.clone(), self.right.clone())?;
        let lift = GaloisConnection::new(left_kernel.clone(), right_kernel.clone(), self.left.clone(), self.right.clone())?;
        Ok(KernelFactorization {
            kernel_refl: GaloisConnection::new(
                left_kernel.clone(),
                polar.axis.clone(),
                polar.refl.left.clone(),
                polar.refl.right.clone(),
            )?,
            kernel_corefl: GaloisConnection::new(
                polar.axis.clone(),
                right_kernel.clone(),
                polar.corefl.left.clone(),
                polar.corefl.right.clone(),
            )?,
            clo,
            int,
            lift0,
            lift1,
            lift,
            left_kernel,
            right_kernel,
            polar,
        })
    }
}

impl KernelFactorization {
    /// Every composition identity of the combined factorization, by name.
    pub fn identities(&self, g: &GaloisConnection) -> Vec<(&'static str, bool)> {
        let eq = |x: Result<GaloisConnection>, y: &GaloisConnection| x.map(|x| x.equivalent(y)).unwrap_or(false);
        let p = &self.polar;
        vec![
            ("refl ; corefl = g", eq(p.refl.compose(&p.corefl), g)),
            ("clo ; kernel_refl = refl", eq(self.clo.compose(&self.kernel_refl), &p.refl)),
            ("kernel_corefl ; int = corefl", eq(self.kernel_corefl.compose(&self.int), &p.corefl)),
            ("kernel_refl ; kernel_corefl = lift", eq(self.kernel_refl.compose(&self.kernel_corefl), &self.lift)),
            ("kernel_refl ; corefl = lift0", eq(self.kernel_refl.compose(&p.corefl), &self.lift0)),
            ("refl ; kernel_corefl = lift1", eq(p.refl.compose(&self.kernel_corefl), &self.lift1)),
            ("clo ; lift0 = g", eq(self.clo.compose(&self.lift0), g)),
            ("clo ; lift = lift1", eq(self.clo.compose(&self.lift), &self.lift1)),
            ("lift1 ; int = g", eq(self.lift1.compose(&self.int), g)),
            ("lift ; int = lift0", eq(self.lift.compose(&self.int), &self.lift0)),
        ]
    }
}

// ---------------------------------------------------------------------------
// diagonal fill-in

/// Given a commuting square `e ; s = r ; m` of connections between posets with
/// `e : A ⇄ B` a reflection and `m : C ⇄ D` a coreflection, returns the unique
/// `h : B ⇄ C` with `e ; h = r` and `h ; m = s`.
pub fn diagonal_fill(
    e: &GaloisConnection,
    m: &GaloisConnection,
    r: &GaloisConnection,
    s: &GaloisConnection,
) -> Result<GaloisConnection> {
    for p in [&e.source, &e.target, &m.source, &m.target] {
        p.check_poset()?;
    }
    if !same_order(&e.source, &r.source)
        || !same_order(&e.target, &s.source)
        || !same_order(&r.target, &m.source)
        || !same_order(&s.target, &m.target)
    {
        return Err(Error::BoundaryMismatch("diagonal fill square"));
    }
    if let Some(b) = e.reflection_witness() {
        return Err(Error::NotReflection(b));
    }
    if let Some(c) = m.coreflection_witness() {
        return Err(Error::NotCoreflection(c));
    }
    let top = e.compose(s)?;
    let bottom = r.compose(m)?;
    if let Some(mm) = top.mismatch(&bottom)? {
        return Err(Error::SquareNotCommuting {
            equation: match mm.side {
                Side::Left => "left adjoints of e;s and r;m",
                Side::Right => "right adjoints of e;s and r;m",
            },
            element: mm.element,
        });
    }
    // left(h) = right(m) ∘ left(s) = left(r) ∘ right(e)
    let left: Vec<usize> = (0..e.target.len()).map(|b| m.right[s.left[b]]).collect();
    // right(h) = left(e) ∘ right(r) = right(s) ∘ left(m)
    let right: Vec<usize> = (0..m.source.len()).map(|c| e.left[r.right[c]]).collect();
    debug_assert!((0..e.target.len()).all(|b| left[b] == r.left[e.right[b]]));
    debug_assert!((0..m.source.len()).all(|c| right[c] == s.right[m.left[c]]));
    let h = GaloisConnection::new(e.target.clone(), m.source.clone(), left, right)?;
    debug_assert!(e.compose(&h).is_ok_and(|x| x.equivalent(r)));
    debug_assert!(h.compose(m).is_ok_and(|x| x.equivalent(s)));
    Ok(h)
}
