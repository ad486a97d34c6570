//! Acceptance gate: one test per criterion, each ending in a single
//! pass line. Everything is exact arithmetic — zero tolerance.

mod common;

use common::{random_matrix, random_rel, random_term_with_cod, random_term_with_dom, rng};
use rand::Rng;
use sigflow::axioms::{
    check_law, law_catalog, pendulum, standard_samples, Binding, PendulumParams, Scope, Verdict,
};
use sigflow::diagram::{build, identity_n, Diagram, GenKind};
use sigflow::exactfield::{parse_scalar, FieldElem, FieldTag};
use sigflow::linrel::{
    as_map, brute_compose, format_rel, rel_compose, rel_dagger, rel_equal, rel_tensor, LinRel,
    Matrix,
};
use sigflow::normalize::{matrix_to_diagram, normalize, relation_to_diagram};
use sigflow::semantics::{eval_mat, eval_rel};
use std::collections::HashSet;

const Q: FieldTag = FieldTag::Q;
const QS: FieldTag = FieldTag::Qs;

fn gf(p: u64) -> FieldTag {
    FieldTag::gfp(p).unwrap()
}

#[test]
fn criterion_1_linear_map_laws_over_three_fields() {
    for tag in [Q, gf(7), QS] {
        for law in law_catalog().iter().filter(|l| l.scope == Scope::Vect) {
            let report = check_law(law, &standard_samples(law, tag), tag);
            for check in &report.checks {
                assert!(
                    matches!(check.verdict, Verdict::Pass),
                    "law {} over {tag:?} with {:?}: {:?}",
                    law.name,
                    check.binding,
                    check.verdict
                );
            }
        }
    }
    println!("criterion 1 (18 linear-map laws over Q, GF(7), Q(s)): pass");
}

#[test]
fn criterion_2_full_catalog_and_negative_control() {
    for law in law_catalog() {
        let report = check_law(&law, &standard_samples(&law, QS), QS);
        assert!(report.all_pass(), "law {} failed over Q(s)", law.name);
    }

    // negative control: corrupt the Frobenius law by replacing its adder
    // with a crossed, one-legged projection — the suite must notice
    let broken_add = build::seq(&build::braid(), &build::pars(vec![build::delete(), build::id()]));
    let lhs = build::seq(
        &build::pars(vec![build::coadd(), build::id()]),
        &build::pars(vec![build::id(), broken_add]),
    );
    let rhs = build::seq(&build::add(), &build::coadd());
    assert_eq!(lhs.signature(), rhs.signature());
    assert!(
        !rel_equal(&eval_rel(&lhs, QS), &eval_rel(&rhs, QS)),
        "corrupted law was not detected"
    );
    println!("criterion 2 (all 45 laws over Q(s); corrupted law fails): pass");
}

#[test]
fn criterion_3_matrix_standard_forms_round_trip() {
    let mut r = rng(0xC3);
    for tag in [Q, QS] {
        for _ in 0..100 {
            let rows = r.gen_range(0..=4);
            let cols = r.gen_range(0..=4);
            let a = random_matrix(&mut r, tag, rows, cols);
            let back = eval_mat(&matrix_to_diagram(&a), tag).expect("standard form is a map");
            assert_eq!(back, a, "round trip changed a {rows}x{cols} matrix over {tag:?}");
        }
    }

    // the worked 2x3 example, with exact generator counts: one fan-out
    // cluster per input, one gain per entry, two addition clusters
    let entries = [[3, 7, 2], [9, 1, 0]];
    let a = Matrix::from_rows(
        Q,
        3,
        entries
            .iter()
            .map(|row| row.iter().map(|&v| FieldElem::from_int(Q, v)).collect())
            .collect(),
    )
    .unwrap();
    let d = matrix_to_diagram(&a);
    assert_eq!(eval_mat(&d, Q).unwrap(), a);
    let dups = d.count_generators(&|k| matches!(k, GenKind::Dup));
    let scales = d.count_generators(&|k| matches!(k, GenKind::Scale(_)));
    let adds = d.count_generators(&|k| matches!(k, GenKind::Add));
    assert_eq!((dups, scales, adds), (3, 6, 4));
    assert_eq!(adds / (3 - 1), 2, "two addition clusters of two adders each");
    println!("criterion 3 (200 random matrices + worked 2x3 example): pass");
}

#[test]
fn criterion_4_relation_prestandard_forms_round_trip() {
    let mut r = rng(0xC4);
    for tag in [Q, gf(5)] {
        for _ in 0..150 {
            let m = r.gen_range(0..=4);
            let n = r.gen_range(0..=4);
            let l = random_rel(&mut r, tag, m, n);
            let back = eval_rel(&relation_to_diagram(&l), tag);
            assert!(rel_equal(&back, &l), "round trip changed a ({m},{n}) relation over {tag:?}");
        }
    }
    println!("criterion 4 (300 random relations round-trip): pass");
}

/// Every subspace of GF(2)^(m+n), as a relation of arity (m, n):
/// enumerate all spanning subsets of at most m+n vectors and dedupe by
/// canonical basis.
fn all_gf2_relations(m: usize, n: usize) -> Vec<LinRel> {
    let tag = gf(2);
    let d = m + n;
    let vectors: Vec<Vec<FieldElem>> = (0..1u32 << d)
        .map(|mask| {
            (0..d).map(|i| FieldElem::from_int(tag, ((mask >> i) & 1) as i64)).collect()
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in 0u32..1 << vectors.len() {
        if subset.count_ones() as usize > d {
            continue;
        }
        let rows: Vec<Vec<FieldElem>> = (0..vectors.len())
            .filter(|i| subset >> i & 1 == 1)
            .map(|i| vectors[i].clone())
            .collect();
        let rel = LinRel::span(tag, m, n, rows).unwrap();
        if seen.insert(format_rel(&rel)) {
            out.push(rel);
        }
    }
    out
}

#[test]
fn criterion_5_composition_matches_brute_force_oracle() {
    // exhaustive over GF(2), all arities up to 2
    for m in 0..=2 {
        for p in 0..=2 {
            for n in 0..=2 {
                let firsts = all_gf2_relations(m, p);
                let seconds = all_gf2_relations(p, n);
                for l1 in &firsts {
                    for l2 in &seconds {
                        let fast = rel_compose(l1, l2).unwrap();
                        let slow = brute_compose(l1, l2).unwrap();
                        assert!(
                            rel_equal(&fast, &slow),
                            "composition mismatch at ({m},{p},{n})"
                        );
                    }
                }
            }
        }
    }
    // random spot checks over GF(3)
    let mut r = rng(0xC5);
    let tag = gf(3);
    for _ in 0..100 {
        let (m, p, n) = (r.gen_range(0..=2), r.gen_range(0..=2), r.gen_range(0..=2));
        let l1 = random_rel(&mut r, tag, m, p);
        let l2 = random_rel(&mut r, tag, p, n);
        let fast = rel_compose(&l1, &l2).unwrap();
        let slow = brute_compose(&l1, &l2).unwrap();
        assert!(rel_equal(&fast, &slow));
    }
    println!("criterion 5 (composition = brute-force oracle, exhaustive GF(2) + random GF(3)): pass");
}

#[test]
fn criterion_6_compact_closed_structure() {
    let z1 = build::seq(
        &build::pars(vec![build::cap(), build::id()]),
        &build::pars(vec![build::id(), build::cup()]),
    );
    let z2 = build::seq(
        &build::pars(vec![build::id(), build::cap()]),
        &build::pars(vec![build::cup(), build::id()]),
    );
    let idr = LinRel::identity(Q, 1);
    assert!(rel_equal(&eval_rel(&z1, Q), &idr));
    assert!(rel_equal(&eval_rel(&z2, Q), &idr));

    let mut r = rng(0xC6);
    for _ in 0..100 {
        let (m, p, n) = (r.gen_range(0..=3), r.gen_range(0..=3), r.gen_range(0..=3));
        let l1 = random_rel(&mut r, Q, m, p);
        let l2 = random_rel(&mut r, Q, p, n);
        // involutive
        assert!(rel_equal(&rel_dagger(&rel_dagger(&l1)), &l1));
        // contravariant on composition
        let daggered_compose = rel_dagger(&rel_compose(&l1, &l2).unwrap());
        let composed_daggers = rel_compose(&rel_dagger(&l2), &rel_dagger(&l1)).unwrap();
        assert!(rel_equal(&daggered_compose, &composed_daggers));
        // monoidal
        assert!(rel_equal(
            &rel_dagger(&rel_tensor(&l1, &l2)),
            &rel_tensor(&rel_dagger(&l1), &rel_dagger(&l2))
        ));
    }
    println!("criterion 6 (zigzags are identities; dagger is involutive, contravariant, monoidal): pass");
}

/// Independent oracle: eliminate F_net and the acceleration from the
/// three cart/pendulum equations by direct field arithmetic, returning
/// (x/F, theta/F).
fn transfer_oracle(p: &PendulumParams) -> (FieldElem, FieldElem) {
    let s = parse_scalar("s", QS).unwrap();
    let s2 = s.mul(&s);
    // M·l·s² − (M+m)·g
    let den = p
        .cart_mass
        .mul(&p.rod_length)
        .mul(&s2)
        .sub(&p.cart_mass.add(&p.bob_mass).mul(&p.gravity));
    let theta = FieldElem::one(QS).neg().div(&den).unwrap();
    // x = (l·s² − g)·θ·(−1)/s² ... from ẍ = (g − l·s²)θ and x = ẍ/s²
    let x = p.rod_length.mul(&s2).sub(&p.gravity).neg().mul(&theta).div(&s2).unwrap();
    (x, theta)
}

#[test]
fn criterion_7_pendulum_reproduction() {
    let tuples = [
        ("2", "1", "10", "1"),
        ("1", "1", "1", "1"),
        ("3", "2", "5", "2"),
        ("1/2", "1/3", "49/5", "2"),
        ("5", "1", "-3", "1/4"),
    ];
    for (cart, bob, grav, rod) in tuples {
        let c = |t: &str| parse_scalar(t, QS).unwrap();
        let params = PendulumParams {
            cart_mass: c(cart),
            bob_mass: c(bob),
            gravity: c(grav),
            rod_length: c(rod),
        };
        let (composite, flattened) = pendulum(&params).unwrap();
        let lc = eval_rel(&composite, QS);
        let lf = eval_rel(&flattened, QS);
        assert!(rel_equal(&lc, &lf), "diagrams disagree at M={cart} m={bob} g={grav} l={rod}");
        let transfer = as_map(&lc).expect("pendulum denotes a map");
        assert_eq!((transfer.rows(), transfer.cols()), (2, 1));
        let (x, theta) = transfer_oracle(&params);
        assert_eq!(transfer.get(0, 0), &x, "x/F mismatch at M={cart}");
        assert_eq!(transfer.get(1, 0), &theta, "theta/F mismatch at M={cart}");
    }
    println!("criterion 7 (pendulum: composite = flattened diagram = elimination oracle): pass");
}

#[test]
fn criterion_8_canonical_equality() {
    let mut r = rng(0xC8);
    let laws = law_catalog();

    // equal-but-distinct pairs: surgically embed the two sides of a
    // random law instance in a shared random context
    for round in 0..100 {
        let (lhs, rhs) = loop {
            let law = &laws[r.gen_range(0..laws.len())];
            let samples: Vec<Binding> = standard_samples(law, Q)
                .into_iter()
                .filter(|b| law.side_holds(b))
                .collect();
            let binding = samples[r.gen_range(0..samples.len())].clone();
            let (lhs, rhs) = law.instantiate(&binding, Q);
            if lhs != rhs {
                break (lhs, rhs);
            }
        };
        let (a, b) = lhs.signature();
        let i = r.gen_range(0..=1);
        let j = r.gen_range(0..=1);
        let pre_layers = r.gen_range(0..=2);
        let post_layers = r.gen_range(0..=2);
        let pre = random_term_with_cod(&mut r, Q, i + a + j, pre_layers);
        let post = random_term_with_dom(&mut r, Q, i + b + j, post_layers);
        let embed = |side: &Diagram| {
            let mid = build::pars(vec![identity_n(i), side.clone(), identity_n(j)]);
            build::seqs(vec![pre.clone(), mid, post.clone()])
        };
        let d1 = embed(&lhs);
        let d2 = embed(&rhs);
        assert_ne!(d1, d2, "surgery produced structurally equal terms in round {round}");
        assert_eq!(
            normalize(&d1, Q),
            normalize(&d2, Q),
            "equal terms normalized differently in round {round}"
        );
    }

    // distinct pairs: same signature, different denotation
    let mut found = 0;
    while found < 100 {
        let m = r.gen_range(0..=3);
        let layers1 = r.gen_range(1..=3);
        let layers2 = r.gen_range(1..=3);
        let t1 = random_term_with_dom(&mut r, Q, m, layers1);
        let t2 = random_term_with_dom(&mut r, Q, m, layers2);
        if t1.cod() != t2.cod() || rel_equal(&eval_rel(&t1, Q), &eval_rel(&t2, Q)) {
            continue;
        }
        assert_ne!(normalize(&t1, Q), normalize(&t2, Q));
        found += 1;
    }
    println!("criterion 8 (100 equal pairs normalize alike; 100 distinct pairs differ): pass");
}
