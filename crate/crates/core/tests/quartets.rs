use std::sync::Arc;

use polarity::classification::{Classification, Infomorphism};
use polarity::concept_lattice::ConceptMorphism;
use polarity::error::Error;
use polarity::galois::{inverse_image_connection, GaloisConnection};
use polarity::order::SetFunction;
use polarity::quartet::Quartet;
use polarity::verify::derivation_quartet;

fn k1() -> Arc<Classification> {
    Arc::new(Classification::new(&["1", "2"], &["a", "b"], &[("1", "a"), ("2", "a"), ("2", "b")]).unwrap())
}

#[test]
fn derivation_square_of_the_unit() {
    let eta = Infomorphism::unit(k1()).unwrap();
    let q = derivation_quartet(&eta).unwrap();
    // derivation of K1 is neither a reflection nor a coreflection
    assert!(matches!(q.factor_reflection(), Err(Error::NotReflection(_))));
    // ⟨a, a⟩ : id ⇒ id stacked on top changes nothing
    let top = Quartet::new(
        GaloisConnection::identity(q.a.source().clone()),
        GaloisConnection::identity(q.a.target().clone()),
        q.a.clone(),
        q.a.clone(),
    )
    .unwrap();
    assert!(top.paste(&q).unwrap().equivalent(&q));
}

#[test]
fn swapping_types_breaks_the_square() {
    let a = k1();
    let g = a.derivation().unwrap();
    let swap = SetFunction::new(2, 2, vec![1, 0]).unwrap();
    let b = inverse_image_connection(&swap, a.types(), a.types()).unwrap();
    let id_left = GaloisConnection::identity(g.source().clone());
    let err = Quartet::new(g.clone(), g.clone(), id_left, b).unwrap_err();
    assert!(matches!(err, Error::SquareNotCommuting { .. }), "{err:?}");
}

#[test]
fn identity_factors_are_identities() {
    let g = k1().derivation().unwrap();
    let pf = g.polar_factorize().unwrap();
    let refl = Quartet::identity(&pf.refl).factor_reflection().unwrap();
    assert!(refl.middle.left().iter().enumerate().all(|(i, &j)| i == j));
    let corefl = Quartet::identity(&pf.corefl).factor_coreflection().unwrap();
    assert!(corefl.middle.right().iter().enumerate().all(|(i, &j)| i == j));
}

#[test]
fn intent_quartet_middle_is_the_theory_map() {
    for f in [Infomorphism::unit(k1()).unwrap(), Infomorphism::counit(k1()).unwrap()] {
        let h = ConceptMorphism::from_infomorphism(&f).unwrap();
        let q = h.intent_quartet().unwrap();
        assert!(q.coreflection_special_conditions());
        let d = q.factor_coreflection().unwrap().middle;
        assert!(d.equivalent(&h.theory_map().unwrap()));
        let e = h.extent_quartet().unwrap();
        assert!(e.reflection_special_conditions());
    }
}
