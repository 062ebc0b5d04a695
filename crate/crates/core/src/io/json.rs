//! JSON encodings of the structures that have no standard text format.
//!
//! Every bundle is plain data with index arrays. Decoding runs the same
//! validation as the library constructors, so a decoded value is always valid.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::classification::{Classification, Infomorphism};
use crate::concept_lattice::{ConceptLattice, ConceptMorphism};
use crate::error::{Error, Result};
use crate::galois::{GaloisConnection, PolarFactorization};
use crate::order::{MonotoneMap, Preorder};
use crate::quartet::Quartet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreorderJson {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
    /// Take the reflexive-transitive closure of `leq` instead of validating it.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub close: bool,
}

impl From<&Preorder> for PreorderJson {
    fn from(p: &Preorder) -> Self {
        PreorderJson {
            elements: p.labels().to_vec(),
            leq: p.matrix().pairs().map(|(a, b)| [a, b]).collect(),
            close: false,
        }
    }
}

impl PreorderJson {
    pub fn decode(&self) -> Result<Preorder> {
        let pairs: Vec<(usize, usize)> = self.leq.iter().map(|&[a, b]| (a, b)).collect();
        Preorder::from_index_pairs(self.elements.clone(), &pairs, self.close)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneMapJson {
    pub source: PreorderJson,
    pub target: PreorderJson,
    pub map: Vec<usize>,
}

impl From<&MonotoneMap> for MonotoneMapJson {
    fn from(f: &MonotoneMap) -> Self {
        MonotoneMapJson {
            source: f.source().as_ref().into(),
            target: f.target().as_ref().into(),
            map: f.map().to_vec(),
        }
    }
}

impl MonotoneMapJson {
    pub fn decode(&self) -> Result<MonotoneMap> {
        MonotoneMap::new(
            Arc::new(self.source.decode()?),
            Arc::new(self.target.decode()?),
            self.map.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionJson {
    pub source: PreorderJson,
    pub target: PreorderJson,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl From<&GaloisConnection> for ConnectionJson {
    fn from(g: &GaloisConnection) -> Self {
        ConnectionJson {
            source: g.source().as_ref().into(),
            target: g.target().as_ref().into(),
            left: g.left().to_vec(),
            right: g.right().to_vec(),
        }
    }
}

impl ConnectionJson {
    pub fn decode(&self) -> Result<GaloisConnection> {
        GaloisConnection::new(
            Arc::new(self.source.decode()?),
            Arc::new(self.target.decode()?),
            self.left.clone(),
            self.right.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarJson {
    pub bipoles: Vec<[usize; 2]>,
    pub axis: PreorderJson,
    pub refl: ConnectionJson,
    pub corefl: ConnectionJson,
}

impl From<&PolarFactorization> for PolarJson {
    fn from(p: &PolarFactorization) -> Self {
        PolarJson {
            bipoles: p.bipoles.iter().map(|&(a, b)| [a, b]).collect(),
            axis: p.axis.as_ref().into(),
            refl: (&p.refl).into(),
            corefl: (&p.corefl).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub instances: Vec<String>,
    pub types: Vec<String>,
    /// `[instance, type]` index pairs.
    pub incidence: Vec<[usize; 2]>,
}

impl From<&Classification> for ContextJson {
    fn from(a: &Classification) -> Self {
        ContextJson {
            instances: a.instances().to_vec(),
            types: a.types().to_vec(),
            incidence: a.incidence().pairs().map(|(x, y)| [x, y]).collect(),
        }
    }
}

impl ContextJson {
    pub fn decode(&self) -> Result<Classification> {
        let (nx, ny) = (self.instances.len(), self.types.len());
        let mut m = BitMatrix::new(nx, ny);
        for &[x, y] in &self.incidence {
            if x >= nx {
                return Err(Error::IndexOutOfRange { index: x, len: nx });
            }
            if y >= ny {
                return Err(Error::IndexOutOfRange { index: y, len: ny });
            }
            m.set(x, y, true);
        }
        Classification::from_matrix(self.instances.clone(), self.types.clone(), m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfomorphismJson {
    pub source: ContextJson,
    pub target: ContextJson,
    pub inst_map: Vec<usize>,
    pub typ_map: Vec<usize>,
}

impl From<&Infomorphism> for InfomorphismJson {
    fn from(f: &Infomorphism) -> Self {
        InfomorphismJson {
            source: f.source().as_ref().into(),
            target: f.target().as_ref().into(),
            inst_map: f.inst_map().map().to_vec(),
            typ_map: f.typ_map().map().to_vec(),
        }
    }
}

impl InfomorphismJson {
    pub fn decode(&self) -> Result<Infomorphism> {
        Infomorphism::new(
            Arc::new(self.source.decode()?),
            Arc::new(self.target.decode()?),
            self.inst_map.clone(),
            self.typ_map.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuartetJson {
    pub g1: ConnectionJson,
    pub g2: ConnectionJson,
    pub a: ConnectionJson,
    pub b: ConnectionJson,
}

impl From<&Quartet> for QuartetJson {
    fn from(q: &Quartet) -> Self {
        QuartetJson {
            g1: (&q.g1).into(),
            g2: (&q.g2).into(),
            a: (&q.a).into(),
            b: (&q.b).into(),
        }
    }
}

impl QuartetJson {
    pub fn decode(&self) -> Result<Quartet> {
        Quartet::new(self.g1.decode()?, self.g2.decode()?, self.a.decode()?, self.b.decode()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptJson {
    pub extent: Vec<usize>,
    pub intent: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub context: ContextJson,
    pub concepts: Vec<ConceptJson>,
    /// Full order relation as `[lower, upper]` pairs.
    pub order: Vec<[usize; 2]>,
    pub iota: Vec<usize>,
    pub tau: Vec<usize>,
}

impl From<&ConceptLattice> for LatticeJson {
    fn from(l: &ConceptLattice) -> Self {
        LatticeJson {
            context: l.classification().into(),
            concepts: (0..l.len())
                .map(|c| ConceptJson {
                    extent: l.extent(c).to_vec(),
                    intent: l.intent(c).to_vec(),
                })
                .collect(),
            order: l.order().matrix().pairs().map(|(a, b)| [a, b]).collect(),
            iota: l.iota().to_vec(),
            tau: l.tau().to_vec(),
        }
    }
}

impl LatticeJson {
    /// Rebuilds the lattice from its order and embeddings, then checks that
    /// the stored context and concepts agree with it.
    pub fn decode(&self) -> Result<ConceptLattice> {
        let context = self.context.decode()?;
        let n = self.concepts.len();
        let mut labels: Vec<String> = self
            .concepts
            .iter()
            .map(|c| {
                let ext: Vec<&str> = c.extent.iter().filter_map(|&x| context.instances().get(x).map(String::as_str)).collect();
                let int: Vec<&str> = c.intent.iter().filter_map(|&y| context.types().get(y).map(String::as_str)).collect();
                format!("({{{}}},{{{}}})", ext.join(","), int.join(","))
            })
            .collect();
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            labels = (0..n).map(|i| format!("c{i}")).collect();
        }
        let pairs: Vec<(usize, usize)> = self.order.iter().map(|&[a, b]| (a, b)).collect();
        let order = Preorder::from_index_pairs(labels, &pairs, false)?;
        let l = ConceptLattice::new(order, context.instances(), context.types(), self.iota.clone(), self.tau.clone())?;
        if l.classification() != &context {
            return Err(Error::Inconsistent("context differs from the one read off the lattice".into()));
        }
        for (c, stored) in self.concepts.iter().enumerate() {
            if l.extent(c).to_vec() != stored.extent || l.intent(c).to_vec() != stored.intent {
                return Err(Error::Inconsistent(format!("concept {c} differs from the one read off the lattice")));
            }
        }
        Ok(l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptMorphismJson {
    pub source: LatticeJson,
    pub target: LatticeJson,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub inst_map: Vec<usize>,
    pub typ_map: Vec<usize>,
}

impl From<&ConceptMorphism> for ConceptMorphismJson {
    fn from(h: &ConceptMorphism) -> Self {
        ConceptMorphismJson {
            source: h.source().as_ref().into(),
            target: h.target().as_ref().into(),
            left: h.left().to_vec(),
            right: h.right().to_vec(),
            inst_map: h.inst_map().map().to_vec(),
            typ_map: h.typ_map().map().to_vec(),
        }
    }
}

impl ConceptMorphismJson {
    pub fn decode(&self) -> Result<ConceptMorphism> {
        ConceptMorphism::new(
            Arc::new(self.source.decode()?),
            Arc::new(self.target.decode()?),
            self.left.clone(),
            self.right.clone(),
            self.inst_map.clone(),
            self.typ_map.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept_lattice::ConceptLattice;

    fn k1() -> Classification {
        Classification::new(&["1", "2"], &["a", "b"], &[("1", "a"), ("2", "a"), ("2", "b")]).unwrap()
    }

    #[test]
    fn connection_round_trip() {
        let g = k1().derivation().unwrap();
        let j = serde_json::to_string(&ConnectionJson::from(&g)).unwrap();
        let back: ConnectionJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.decode().unwrap(), g);
    }

    #[test]
    fn lattice_round_trip() {
        let l = ConceptLattice::of(&k1()).unwrap();
        let j = LatticeJson::from(&l);
        assert_eq!(j.decode().unwrap(), l);
        let mut bad = j.clone();
        bad.concepts[0].extent = vec![0];
        assert!(matches!(bad.decode(), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn closing_a_preorder_bundle() {
        let j: PreorderJson = serde_json::from_str(r#"{"elements":["0","1"],"leq":[[0,1]],"close":true}"#).unwrap();
        assert_eq!(j.decode().unwrap(), Preorder::chain(2));
        let strict: PreorderJson = serde_json::from_str(r#"{"elements":["0","1"],"leq":[[0,1]]}"#).unwrap();
        assert_eq!(strict.decode().unwrap_err(), Error::NotReflexive("0".into()));
    }

    #[test]
    fn infomorphism_round_trip() {
        let f = Infomorphism::unit(Arc::new(k1())).unwrap();
        let j = InfomorphismJson::from(&f);
        assert!(j.decode().unwrap().same_as(&f));
    }
}
