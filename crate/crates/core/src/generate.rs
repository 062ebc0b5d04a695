//! Seeded random structures for property checks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bits::BitMatrix;
use crate::classification::{Classification, Infomorphism};
use crate::error::Result;
use crate::order::SetFunction;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

fn type_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("t{i}")
    }
}

/// A context with the given shape; each incidence holds with probability `density`.
pub fn context_with(rng: &mut Rng8, n_instances: usize, n_types: usize, density: f64) -> Classification {
    let m = BitMatrix::from_fn(n_instances, n_types, |_, _| rng.gen_bool(density));
    Classification::from_matrix(
        (1..=n_instances).map(|i| i.to_string()).collect(),
        (0..n_types).map(type_label).collect(),
        m,
    )
    .expect("generated labels are unique")
}

/// Shape uniform in `0..=max` on both sides, density uniform in `[0.2, 0.8]`.
pub fn context(rng: &mut Rng8, max_instances: usize, max_types: usize) -> Classification {
    let g = rng.gen_range(0..=max_instances);
    let m = rng.gen_range(0..=max_types);
    let d = rng.gen_range(0.2..0.8);
    context_with(rng, g, m, d)
}

pub fn function(rng: &mut Rng8, source_len: usize, target_len: usize) -> SetFunction {
    assert!(source_len == 0 || target_len > 0, "no function into an empty set");
    let map = (0..source_len).map(|_| rng.gen_range(0..target_len)).collect();
    SetFunction::new(source_len, target_len, map).expect("in range")
}

/// A valid infomorphism out of `source` into a fresh context with at most
/// `max` instances and types. The target's columns in the image of the type
/// map are forced by the fundamental condition; the rest are random.
pub fn infomorphism_from(rng: &mut Rng8, source: Arc<Classification>, max: usize) -> Result<Infomorphism> {
    let (n1, m1) = (source.n_instances(), source.n_types());
    let n2 = if n1 == 0 { 0 } else { rng.gen_range(0..=max) };
    let mut m2 = rng.gen_range(0..=max);
    if m1 > 0 && m2 == 0 {
        m2 = 1;
    }
    let inst: Vec<usize> = (0..n2).map(|_| rng.gen_range(0..n1)).collect();
    // types sent to the same target type must agree on every pulled-back instance
    let consistent = |typ: &[usize]| {
        (0..m1).all(|a| (0..m1).all(|b| typ[a] != typ[b] || inst.iter().all(|&x| source.holds(x, a) == source.holds(x, b))))
    };
    let mut typ: Vec<usize> = (0..m1).map(|_| rng.gen_range(0..m2)).collect();
    let mut tries = 0;
    while !consistent(&typ) {
        tries += 1;
        if tries > 20 {
            m2 = m2.max(m1);
            let mut slots: Vec<usize> = (0..m2).collect();
            slots.shuffle(rng);
            typ = slots[..m1].to_vec();
            break;
        }
        typ = (0..m1).map(|_| rng.gen_range(0..m2)).collect();
    }
    let mut forced: Vec<Option<usize>> = vec![None; m2];
    for (y1, &y2) in typ.iter().enumerate() {
        forced[y2].get_or_insert(y1);
    }
    let m = BitMatrix::from_fn(n2, m2, |x2, y2| match forced[y2] {
        Some(y1) => source.holds(inst[x2], y1),
        None => rng.gen_bool(0.5),
    });
    let target = Classification::from_matrix(
        (1..=n2).map(|i| format!("x{i}")).collect(),
        (1..=m2).map(|i| format!("y{i}")).collect(),
        m,
    )?;
    Infomorphism::new(source, Arc::new(target), inst, typ)
}

/// Candidate map pair between two contexts; roughly half are valid.
pub struct Candidate {
    pub source: Arc<Classification>,
    pub target: Arc<Classification>,
    pub inst_map: Vec<usize>,
    pub typ_map: Vec<usize>,
}

/// A valid infomorphism, possibly with one entry of one map changed.
pub fn candidate(rng: &mut Rng8, max: usize) -> Result<Candidate> {
    let a1 = Arc::new(context(rng, max, max));
    let f = infomorphism_from(rng, a1, max)?;
    let mut inst_map = f.inst_map().map().to_vec();
    let mut typ_map = f.typ_map().map().to_vec();
    if rng.gen_bool(0.5) {
        if rng.gen_bool(0.5) && !inst_map.is_empty() {
            let i = rng.gen_range(0..inst_map.len());
            inst_map[i] = rng.gen_range(0..f.source().n_instances());
        } else if !typ_map.is_empty() {
            let i = rng.gen_range(0..typ_map.len());
            typ_map[i] = rng.gen_range(0..f.target().n_types());
        }
    }
    Ok(Candidate {
        source: f.source().clone(),
        target: f.target().clone(),
        inst_map,
        typ_map,
    })
}
