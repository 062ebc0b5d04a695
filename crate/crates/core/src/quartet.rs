//! Commuting squares of connections and their factorization through kernels.
//!
//! A quartet `⟨a, b⟩ : g1 ⇒ g2` has vertical sides `g1 : A1 ⇄ B1`,
//! `g2 : A2 ⇄ B2` and horizontal sides `a : A1 ⇄ A2`, `b : B1 ⇄ B2`, with
//! `g1 ; b = a ; g2`.

use crate::error::{Error, Result, Side};
use crate::galois::{same_order, GaloisConnection};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quartet {
    pub g1: GaloisConnection,
    pub g2: GaloisConnection,
    pub a: GaloisConnection,
    pub b: GaloisConnection,
}

impl Quartet {
    pub fn new(g1: GaloisConnection, g2: GaloisConnection, a: GaloisConnection, b: GaloisConnection) -> Result<Self> {
        if !same_order(g1.source(), a.source())
            || !same_order(g1.target(), b.source())
            || !same_order(g2.source(), a.target())
            || !same_order(g2.target(), b.target())
        {
            return Err(Error::BoundaryMismatch("quartet sides"));
        }
        let down_then_across = g1.compose(&b)?;
        let across_then_down = a.compose(&g2)?;
        if let Some(m) = down_then_across.mismatch(&across_then_down)? {
            return Err(Error::SquareNotCommuting {
                equation: match m.side {
                    Side::Left => "left(g1) ; left(b) = left(a) ; left(g2)",
                    Side::Right => "right(g2) ; right(a) = right(b) ; right(g1)",
                },
                element: m.element,
            });
        }
        Ok(Quartet { g1, g2, a, b })
    }

    /// `⟨id, id⟩ : g ⇒ g`
    pub fn identity(g: &GaloisConnection) -> Self {
        Quartet {
            g1: g.clone(),
            g2: g.clone(),
            a: GaloisConnection::identity(g.source().clone()),
            b: GaloisConnection::identity(g.target().clone()),
        }
    }

    /// Stacks `self : g1 ⇒ g2` on top of `below : k1 ⇒ k2`, sharing the middle
    /// side, giving `⟨self.a, below.b⟩ : g1 ; k1 ⇒ g2 ; k2`.
    pub fn paste(&self, below: &Quartet) -> Result<Quartet> {
        if !self.b.equivalent(&below.a) {
            return Err(Error::BoundaryMismatch("pasted quartets do not share a side"));
        }
        Quartet::new(
            self.g1.compose(&below.g1)?,
            self.g2.compose(&below.g2)?,
            self.a.clone(),
            below.b.clone(),
        )
    }

    /// Same sides up to equivalence.
    pub fn equivalent(&self, other: &Quartet) -> bool {
        self.g1.equivalent(&other.g1)
            && self.g2.equivalent(&other.g2)
            && self.a.equivalent(&other.a)
            && self.b.equivalent(&other.b)
    }

    /// `left(b) = right(g1) ; left(a) ; left(g2)` and
    /// `right(b) = right(g2) ; right(a) ; left(g1)`, which hold whenever g1 is a reflection.
    pub fn reflection_special_conditions(&self) -> bool {
        let (g1, g2, a, b) = (&self.g1, &self.g2, &self.a, &self.b);
        let nb1 = g1.target().len();
        let nb2 = g2.target().len();
        (0..nb1).all(|y| {
            b.target()
                .equiv(b.apply_left(y), g2.apply_left(a.apply_left(g1.apply_right(y))))
        }) && (0..nb2).all(|y| {
            b.source()
                .equiv(b.apply_right(y), g1.apply_left(a.apply_right(g2.apply_right(y))))
        })
    }

    /// `left(a) = left(g1) ; left(b) ; right(g2)` and
    /// `right(a) = left(g2) ; right(b) ; right(g1)`, which hold whenever g2 is a coreflection.
    pub fn coreflection_special_conditions(&self) -> bool {
        let (g1, g2, a, b) = (&self.g1, &self.g2, &self.a, &self.b);
        (0..g1.source().len()).all(|x| {
            a.target()
                .equiv(a.apply_left(x), g2.apply_right(b.apply_left(g1.apply_left(x))))
        }) && (0..g2.source().len()).all(|x| {
            a.source()
                .equiv(a.apply_right(x), g1.apply_right(b.apply_right(g2.apply_left(x))))
        })
    }

    fn check_posets(&self) -> Result<()> {
        for p in [self.g1.source(), self.g1.target(), self.g2.source(), self.g2.target()] {
            p.check_poset()?;
        }
        Ok(())
    }

    /// Splits a quartet whose source side `g1` is a reflection into
    /// `⟨a, c⟩ : clo(g1) ⇒ clo(g2)` over `⟨c, b⟩ : lift0(g1) ⇒ lift0(g2)`, where
    /// `c : ker(left g1) ⇄ ker(left g2)` has left `left(a)` and right
    /// `closure(g2) ; right(a)`.
    pub fn factor_reflection(&self) -> Result<QuartetFactorization> {
        self.check_posets()?;
        if let Some(y) = self.g1.reflection_witness() {
            return Err(Error::NotReflection(y));
        }
        let clo1 = self.g1.clo();
        let clo2 = self.g2.clo();
        let right = (0..self.g2.source().len())
            .map(|x| self.a.apply_right(self.g2.closure(x)))
            .collect();
        let c = GaloisConnection::new(clo1.target().clone(), clo2.target().clone(), self.a.left().to_vec(), right)?;
        let upper = Quartet::new(clo1, clo2, self.a.clone(), c.clone())?;
        let lower = Quartet::new(self.g1.lift0(), self.g2.lift0(), c.clone(), self.b.clone())?;
        self.finish(c, upper, lower)
    }

    /// Splits a quartet whose target side `g2` is a coreflection into
    /// `⟨a, d⟩ : lift1(g1) ⇒ lift1(g2)` over `⟨d, b⟩ : int(g1) ⇒ int(g2)`, where
    /// `d : ker(right g1) ⇄ ker(right g2)` has left `interior(g1) ; left(b)` and
    /// right `right(b)`.
    pub fn factor_coreflection(&self) -> Result<QuartetFactorization> {
        self.check_posets()?;
        if let Some(x) = self.g2.coreflection_witness() {
            return Err(Error::NotCoreflection(x));
        }
        let int1 = self.g1.int();
        let int2 = self.g2.int();
        let left = (0..self.g1.target().len())
            .map(|y| self.b.apply_left(self.g1.interior(y)))
            .collect();
        let d = GaloisConnection::new(int1.source().clone(), int2.source().clone(), left, self.b.right().to_vec())?;
        let upper = Quartet::new(self.g1.lift1(), self.g2.lift1(), self.a.clone(), d.clone())?;
        let lower = Quartet::new(int1, int2, d.clone(), self.b.clone())?;
        self.finish(d, upper, lower)
    }

    fn finish(&self, middle: GaloisConnection, upper: Quartet, lower: Quartet) -> Result<QuartetFactorization> {
        let pasted = upper.paste(&lower)?;
        if !pasted.equivalent(self) {
            return Err(Error::Inconsistent("pasted factors differ from the input quartet".into()));
        }
        Ok(QuartetFactorization { middle, upper, lower })
    }
}

/// A quartet split through the kernels of its vertical sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuartetFactorization {
    /// The connection between the kernels.
    pub middle: GaloisConnection,
    pub upper: Quartet,
    pub lower: Quartet,
}
