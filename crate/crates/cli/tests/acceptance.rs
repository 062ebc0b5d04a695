//! Acceptance run: one line per criterion with its wall time and budget.
//!
//! Runs under `cargo test`; a failing or over-budget criterion makes the
//! process exit non-zero.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use polarity::bits::BitSet;
use polarity::classification::{ext_naturality, fundamental_witness, int_naturality, Classification, Infomorphism};
use polarity::concept_lattice::{concepts, ConceptLattice, ConceptMorphism};
use polarity::galois::{diagonal_fill, from_function, from_relation, GaloisConnection};
use polarity::generate::{self, Rng8};
use polarity::io::dot::{dot_edges, dot_node_count};
use polarity::io::{emit_cxt, emit_dot, parse_cxt};
use polarity::order::Preorder;
use polarity::quartet::Quartet;
use polarity::verify::{all_fills, derivation_quartet, fixtures};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Fixtures followed by `n` seeded contexts with at most `max` instances and types.
fn corpus(seed: u64, n: usize, max: usize) -> Vec<(String, Classification)> {
    let mut rng = generate::rng(seed);
    let mut out = fixtures();
    for i in 0..n {
        out.push((format!("random context {i}"), generate::context(&mut rng, max, max)));
    }
    out
}

// derivations straight from the incidence, independent of the library
fn common_types(a: &Classification, xs: u64) -> u64 {
    (0..a.n_types())
        .filter(|&y| (0..a.n_instances()).all(|x| xs >> x & 1 == 0 || a.holds(x, y)))
        .fold(0, |m, y| m | 1 << y)
}

fn common_instances(a: &Classification, ys: u64) -> u64 {
    (0..a.n_instances())
        .filter(|&x| (0..a.n_types()).all(|y| ys >> y & 1 == 0 || a.holds(x, y)))
        .fold(0, |m, x| m | 1 << x)
}

fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// `map` is a bijection that preserves and reflects the order.
fn order_iso(p: &Preorder, q: &Preorder, map: &[usize]) -> bool {
    let mut seen = vec![false; q.len()];
    p.len() == q.len()
        && map.len() == p.len()
        && map.iter().all(|&m| m < q.len() && !std::mem::replace(&mut seen[m], true))
        && (0..p.len()).all(|i| (0..p.len()).all(|j| p.leq(i, j) == q.leq(map[i], map[j])))
}

fn criterion_1() -> Check {
    let cases = corpus(1, 200, 6);
    for (name, a) in &cases {
        let (n, m) = (a.n_instances(), a.n_types());
        let mut oracle = Vec::new();
        for xs in 0..1u64 << n {
            for ys in 0..1u64 << m {
                if common_types(a, xs) == ys && common_instances(a, ys) == xs {
                    oracle.push((xs, ys));
                }
            }
        }
        let mut listed: Vec<(u64, u64)> = concepts(a).map_err(err)?.iter().map(|c| (c.extent.mask(), c.intent.mask())).collect();
        listed.sort();
        ensure(listed == oracle, || format!("{name}: {listed:?} vs oracle {oracle:?}"))?;
    }
    Ok(format!("{} contexts", cases.len()))
}

fn criterion_2() -> Check {
    let cases = corpus(1, 200, 6);
    for (name, a) in &cases {
        let l = ConceptLattice::of(a).map_err(err)?;
        ensure(l.clsn() == *a, || format!("{name}: context not recovered"))?;
        let rt = l.roundtrip_iso().map_err(err)?;
        let inverse = rt.forward.iter().enumerate().all(|(i, &j)| rt.backward.get(j) == Some(&i))
            && rt.backward.iter().enumerate().all(|(j, &i)| rt.forward.get(i) == Some(&j));
        ensure(inverse, || format!("{name}: maps are not mutually inverse"))?;
        ensure(order_iso(rt.rebuilt.order(), l.order(), &rt.forward), || format!("{name}: forward map is not an order isomorphism"))?;
        ensure(order_iso(l.order(), rt.rebuilt.order(), &rt.backward), || format!("{name}: backward map is not an order isomorphism"))?;
    }
    Ok(format!("{} contexts", cases.len()))
}

/// Connections over base sets of size at most 4, with the context they came
/// from when built from a relation.
fn small_connections() -> Vec<(String, GaloisConnection, Option<Classification>)> {
    let mut out = Vec::new();
    for (name, a) in corpus(3, 100, 4) {
        let g = from_relation(a.instances(), a.types(), a.incidence()).expect("small relation");
        out.push((name, g, Some(a)));
    }
    let mut rng = generate::rng(3);
    for n1 in 0..=4 {
        for n2 in 0..=4 {
            if n1 > 0 && n2 == 0 {
                continue;
            }
            for k in 0..4 {
                let h = generate::function(&mut rng, n1, n2);
                let l1: Vec<String> = (0..n1).map(|i| format!("s{i}")).collect();
                let l2: Vec<String> = (0..n2).map(|i| format!("t{i}")).collect();
                out.push((format!("function {n1}->{n2} #{k}"), from_function(&h, &l1, &l2).expect("small function"), None));
            }
        }
    }
    out
}

fn criterion_3() -> Check {
    let cases = small_connections();
    let mut axes = 0;
    for (name, g, a) in &cases {
        let pf = g.polar_factorize().map_err(err)?;
        let composite = pf.refl.compose(&pf.corefl).map_err(err)?;
        ensure(composite.equivalent(g), || format!("{name}: refl;corefl differs from the connection"))?;
        ensure(pf.refl.classify().reflection, || format!("{name}: first factor is not a reflection"))?;
        ensure(pf.corefl.classify().coreflection, || format!("{name}: second factor is not a coreflection"))?;
        if let Some(a) = a {
            let l = ConceptLattice::of(a).map_err(err)?;
            let map: Option<Vec<usize>> = pf
                .bipoles
                .iter()
                .map(|&(x, _)| l.index_of_extent(&BitSet::from_mask(a.n_instances(), x as u64)))
                .collect();
            ensure(map.is_some_and(|m| order_iso(&pf.axis, l.order(), &m)), || format!("{name}: axis is not the concept order"))?;
            axes += 1;
        }
    }
    Ok(format!("{} connections, {axes} axes compared with concept orders", cases.len()))
}

fn criterion_4() -> Check {
    let mut checked = 0;
    let mut subsets = 0;
    for (name, g, _) in small_connections() {
        let pf = g.polar_factorize().map_err(err)?;
        if pf.axis.len() > 10 {
            continue;
        }
        for (role, c) in [("reflection", &pf.refl), ("coreflection", &pf.corefl)] {
            let r = c.check_induced_lattice().map_err(err)?;
            ensure(r.holds(), || format!("{name} {role}: {:?}", r.failures))?;
            ensure(r.reflection_checked || r.coreflection_checked, || format!("{name} {role}: nothing checked"))?;
            checked += 1;
            subsets += r.subsets_checked;
        }
    }
    ensure(checked > 0, || "no connection small enough".into())?;
    Ok(format!("{checked} connections, {subsets} subsets"))
}

fn criterion_5() -> Check {
    let mut rng = generate::rng(5);
    let mut squares = 0;
    let mut attempts = 0;
    while squares < 150 && attempts < 2000 {
        attempts += 1;
        let a = Arc::new(generate::context(&mut rng, 3, 3));
        let f = generate::infomorphism_from(&mut rng, a, 3).map_err(err)?;
        let q = derivation_quartet(&f).map_err(err)?;
        let p1 = q.g1.polar_factorize().map_err(err)?;
        let p2 = q.g2.polar_factorize().map_err(err)?;
        if p1.axis.len() > 4 || p2.axis.len() > 4 {
            continue;
        }
        let r = q.a.compose(&p2.refl).map_err(err)?;
        let s = p1.corefl.compose(&q.b).map_err(err)?;
        let h = diagonal_fill(&p1.refl, &p2.corefl, &r, &s).map_err(err)?;
        let tag = || format!("square {squares}");
        ensure(p1.refl.compose(&h).map_err(err)?.equivalent(&r), || format!("{}: e;h differs from r", tag()))?;
        ensure(h.compose(&p2.corefl).map_err(err)?.equivalent(&s), || format!("{}: h;m differs from s", tag()))?;
        let count = all_fills(&p1.refl, &p2.corefl, &r, &s).ok_or_else(|| format!("{}: search space too large", tag()))?;
        ensure(count == 1, || format!("{}: {count} solutions", tag()))?;
        squares += 1;
    }
    ensure(squares >= 100, || format!("only {squares} small squares found"))?;
    Ok(format!("{squares} squares, each with a unique fill"))
}

fn criterion_6() -> Check {
    let cases = corpus(6, 100, 5);
    for (name, a) in &cases {
        for side in 0..2 {
            let (n, d): (usize, &dyn Fn(u64) -> u64) = if side == 0 {
                (a.n_instances(), &|s| common_types(a, s))
            } else {
                (a.n_types(), &|s| common_instances(a, s))
            };
            let dd: &dyn Fn(u64) -> u64 = if side == 0 { &|s| common_instances(a, s) } else { &|s| common_types(a, s) };
            let all_other = if side == 0 { (1u64 << a.n_types()) - 1 } else { (1u64 << a.n_instances()) - 1 };
            ensure(d(0) == all_other, || format!("{name}: derivation of the empty set is not everything"))?;
            for s in 0..1u64 << n {
                ensure(subset(s, dd(d(s))), || format!("{name}: {s:b} not below its closure"))?;
                ensure(d(dd(d(s))) == d(s), || format!("{name}: triple derivation differs at {s:b}"))?;
                for t in 0..1u64 << n {
                    if subset(s, t) {
                        ensure(subset(d(t), d(s)), || format!("{name}: antitonicity fails at {s:b} {t:b}"))?;
                    }
                    ensure(d(s | t) == d(s) & d(t), || format!("{name}: union law fails at {s:b} {t:b}"))?;
                }
                for o in 0..=all_other {
                    ensure(subset(o, d(s)) == subset(s, dd(o)), || format!("{name}: adjunction fails at {s:b} {o:b}"))?;
                }
            }
        }
        let lib = a.derivation_laws().map_err(err)?;
        ensure(lib.iter().all(|l| l.holds), || format!("{name}: library law check disagrees"))?;
        for xs in 0..1u64 << a.n_instances() {
            ensure(a.derive_instances(&BitSet::from_mask(a.n_instances(), xs)).mask() == common_types(a, xs), || format!("{name}: library derivation differs"))?;
        }
        for ys in 0..1u64 << a.n_types() {
            ensure(a.derive_types(&BitSet::from_mask(a.n_types(), ys)).mask() == common_instances(a, ys), || format!("{name}: library derivation differs"))?;
        }
    }
    Ok(format!("{} contexts, both sides", cases.len()))
}

fn criterion_7() -> Check {
    let mut rng = generate::rng(7);
    let (mut valid, mut invalid) = (0, 0);
    for i in 0..500 {
        let c = generate::candidate(&mut rng, 4).map_err(err)?;
        let fc = fundamental_witness(&c.source, &c.target, &c.inst_map, &c.typ_map).map_err(err)?.is_none();
        let en = ext_naturality(&c.source, &c.target, &c.inst_map, &c.typ_map).map_err(err)?;
        let inn = int_naturality(&c.source, &c.target, &c.inst_map, &c.typ_map).map_err(err)?;
        ensure(fc == en && en == inn, || format!("candidate {i}: fundamental {fc}, extent {en}, intent {inn}"))?;
        if fc {
            valid += 1
        } else {
            invalid += 1
        }
    }
    ensure(valid > 0 && invalid > 0, || format!("degenerate mix: {valid} valid, {invalid} invalid"))?;
    Ok(format!("500 candidates, {valid} valid and {invalid} invalid"))
}

/// Identities, units, counits, 50 random infomorphisms and their composites.
fn morphisms() -> Result<Vec<(String, Infomorphism)>, String> {
    let mut rng: Rng8 = generate::rng(8);
    let mut out = Vec::new();
    for (name, a) in fixtures() {
        push_basics(&mut out, &name, Arc::new(a))?;
    }
    for i in 0..50 {
        let a = Arc::new(generate::context(&mut rng, 4, 4));
        let f = generate::infomorphism_from(&mut rng, a.clone(), 4).map_err(err)?;
        let g = generate::infomorphism_from(&mut rng, f.target().clone(), 4).map_err(err)?;
        if i < 10 {
            push_basics(&mut out, &format!("random context {i}"), a)?;
        }
        out.push((format!("composite {i}"), f.compose(&g).map_err(err)?));
        out.push((format!("random infomorphism {i}"), f));
    }
    Ok(out)
}

fn push_basics(out: &mut Vec<(String, Infomorphism)>, name: &str, a: Arc<Classification>) -> Result<(), String> {
    out.push((format!("{name}: identity"), Infomorphism::identity(a.clone())));
    out.push((format!("{name}: unit"), Infomorphism::unit(a.clone()).map_err(err)?));
    out.push((format!("{name}: counit"), Infomorphism::counit(a).map_err(err)?));
    Ok(())
}

fn criterion_8() -> Check {
    let ms = morphisms()?;
    let mut continuity = 0;
    for (name, f) in &ms {
        let h = ConceptMorphism::from_infomorphism(f).map_err(|e| format!("{name}: {e}"))?;
        // rebuilding from raw parts runs the full validation again
        ConceptMorphism::new(
            h.source().clone(),
            h.target().clone(),
            h.left().to_vec(),
            h.right().to_vec(),
            h.inst_map().map().to_vec(),
            h.typ_map().map().to_vec(),
        )
        .map_err(|e| format!("{name}: {e}"))?;
        if h.source().len() <= 12 && h.target().len() <= 12 {
            let c = h.continuity().map_err(err)?;
            ensure(c.left_join_continuous && c.right_meet_continuous, || format!("{name}: continuity fails"))?;
            continuity += 1;
        }
    }
    Ok(format!("{} morphisms, {continuity} checked for continuity", ms.len()))
}

fn pasted_back(q: &Quartet, upper: &Quartet, lower: &Quartet) -> Result<bool, String> {
    // each half must itself be a commuting square
    Quartet::new(upper.g1.clone(), upper.g2.clone(), upper.a.clone(), upper.b.clone()).map_err(err)?;
    Quartet::new(lower.g1.clone(), lower.g2.clone(), lower.a.clone(), lower.b.clone()).map_err(err)?;
    Ok(upper.paste(lower).map_err(err)?.equivalent(q))
}

fn criterion_9() -> Check {
    let ms = morphisms()?;
    let (mut bound, mut skipped) = (0, 0);
    for (name, f) in &ms {
        let h = ConceptMorphism::from_infomorphism(f).map_err(err)?;
        // the quartets live on powersets of the instance and type sets
        let sizes = [f.source().n_instances(), f.source().n_types(), f.target().n_instances(), f.target().n_types()];
        if sizes.iter().any(|&n| n > polarity::order::POWERSET_LIMIT) {
            skipped += 1;
            continue;
        }
        let eq = h.extent_quartet().map_err(|e| format!("{name}: {e}"))?;
        let rf = eq.factor_reflection().map_err(|e| format!("{name}: {e}"))?;
        ensure(pasted_back(&eq, &rf.upper, &rf.lower)?, || format!("{name}: extent factors do not paste back"))?;
        let iq = h.intent_quartet().map_err(|e| format!("{name}: {e}"))?;
        let cf = iq.factor_coreflection().map_err(|e| format!("{name}: {e}"))?;
        ensure(pasted_back(&iq, &cf.upper, &cf.lower)?, || format!("{name}: intent factors do not paste back"))?;

        // middle connection between theory orders, element m being the type subset with mask m
        let (a1, a2) = (f.source(), f.target());
        let typ = f.typ_map();
        for m in 0..1u64 << a2.n_types() {
            let closed = common_types(a2, common_instances(a2, m));
            let expected = typ.inverse_image(&BitSet::from_mask(a2.n_types(), closed)).mask() as usize;
            ensure(cf.middle.apply_left(m as usize) == expected, || format!("{name}: theory map left differs at {m:b}"))?;
        }
        for m in 0..1u64 << a1.n_types() {
            let expected = typ.direct_image(&BitSet::from_mask(a1.n_types(), m)).mask() as usize;
            ensure(cf.middle.apply_right(m as usize) == expected, || format!("{name}: theory map right differs at {m:b}"))?;
        }
        ensure(cf.middle.equivalent(&h.theory_map().map_err(err)?), || format!("{name}: library theory map differs"))?;
        bound += 1;
    }
    ensure(bound > 0, || "every morphism was over capacity".into())?;
    Ok(format!("{bound} morphisms with both quartets factored and theory maps bound, {skipped} skipped over the powerset cap"))
}

fn criterion_10(start: Instant) -> Check {
    let mut rng = generate::rng(10);
    for i in 0..50 {
        let a = generate::context(&mut rng, 6, 6);
        let text = emit_cxt(&a);
        let back = parse_cxt(&text).map_err(err)?;
        ensure(back == a && emit_cxt(&back) == text, || format!("context {i}: CXT round trip differs"))?;
    }
    let k1 = parse_cxt("B\n\n2\n2\n1\n2\na\nb\nX.\nXX\n").map_err(err)?;
    let dot = emit_dot(&ConceptLattice::of(&k1).map_err(err)?);
    ensure(dot_node_count(&dot) == 2 && dot_edges(&dot).len() == 1, || format!("K1 diagram:\n{dot}"))?;
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_polarity"))
            .args(["verify", "--seed", "7"])
            .output()
            .map_err(err)
    };
    let (first, second) = (run()?, run()?);
    ensure(first.status.code() == Some(0), || format!("verify exited with {:?}", first.status.code()))?;
    ensure(first.stdout == second.stdout, || "verify reports differ between runs".into())?;
    let total = start.elapsed();
    ensure(total <= Duration::from_secs(60), || format!("full suite took {total:.1?}"))?;
    Ok(format!("50 CXT round trips, K1 diagram, identical verify reports, suite {:.1?}", total))
}

fn main() {
    // libtest flags such as --nocapture are accepted and ignored
    let start = Instant::now();
    let criteria: Vec<(usize, &str, Option<u64>, Box<dyn Fn() -> Check>)> = vec![
        (1, "concept enumeration matches the brute-force oracle", Some(10), Box::new(criterion_1)),
        (2, "context round trip through the concept lattice", Some(5), Box::new(criterion_2)),
        (3, "polar factorization laws", Some(10), Box::new(criterion_3)),
        (4, "induced lattice identities", None, Box::new(criterion_4)),
        (5, "diagonal fill exists and is unique", Some(20), Box::new(criterion_5)),
        (6, "derivation laws", None, Box::new(criterion_6)),
        (7, "three characterizations of infomorphisms agree", None, Box::new(criterion_7)),
        (8, "concept morphisms of infomorphisms", None, Box::new(criterion_8)),
        (9, "quartet factorizations and the theory map", None, Box::new(criterion_9)),
        (10, "file formats and deterministic verification", None, Box::new(move || criterion_10(start))),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in &criteria {
        let t = Instant::now();
        let result = check();
        let took = t.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(b)) if took > Duration::from_secs(*b) => Err(format!("took {took:.2?}, budget {b}s")),
            (r, _) => r,
        };
        let budget = budget.map_or(String::new(), |b| format!(" (budget {b}s)"));
        match result {
            Ok(detail) => println!("criterion {id:2} PASS {took:>9.2?}{budget}  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:2} FAIL {took:>9.2?}{budget}  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
