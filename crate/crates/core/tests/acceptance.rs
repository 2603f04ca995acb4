//! Acceptance suite: one test per top-level criterion, every equality
//! exact, with a pass/fail line per checked case.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use twistcert_core::catalog::{
    classify_klein, named_m, solve_circle, sylow_subgroup, sz_center, CharacterKind, SubgroupSpec,
};
use twistcert_core::character::{
    sz_character_by_cosets, verify_induced_closed_form, ClassFunction,
};
use twistcert_core::group::{Family, FiniteGroup, JordanType};
use twistcert_core::obstruction::{certify, verify_quadruple_product_criterion, Conclusion};
use twistcert_core::rational::{format_rational, int};
use twistcert_core::twist::{
    build_twist, coset_sum, verify_coproduct_identity, verify_twist_axioms, OmegaKind,
};

/// Groups built once per test binary.
fn group(family: Family, q: u32) -> Arc<FiniteGroup> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, u32), Arc<FiniteGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    Arc::clone(
        map.entry((family, q))
            .or_insert_with(|| FiniteGroup::build(family, q).unwrap()),
    )
}

fn induced(family: Family, q: u32) -> Arc<ClassFunction> {
    static CACHE: OnceLock<Mutex<HashMap<(Family, u32), Arc<ClassFunction>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    Arc::clone(map.entry((family, q)).or_insert_with(|| {
        Arc::new(ClassFunction::induced_from_sylow(&group(family, q)).unwrap())
    }))
}

fn pass(criterion: &str, case: &str) {
    println!("[{criterion}] {case}: pass");
}

#[test]
fn criterion_1_induced_characters_match_closed_forms() {
    for (family, qs) in [
        (Family::Sl2, vec![4u32, 5, 7, 8, 9]),
        (Family::Psl2, vec![5, 7, 9, 13]),
        (Family::Sl3, vec![2, 3]),
        (Family::Sz, vec![8]),
    ] {
        for q in qs {
            let chi = induced(family, q);
            verify_induced_closed_form(&chi).unwrap();
            pass("criterion 1", &format!("{}({q}) table", family.name()));
        }
    }

    // Spot degrees for sl3(3): 208 at the identity, 28 on a (2,1)
    // unipotent, 4 on a regular unipotent.
    let g3 = group(Family::Sl3, 3);
    let chi = induced(Family::Sl3, 3);
    assert_eq!(chi.value(g3.identity_index()), &int(208));
    let u21 = g3
        .element_from_int_entries(&[1, 0, 1, 0, 1, 0, 0, 0, 1])
        .unwrap();
    assert_eq!(g3.jordan_type(u21).unwrap(), JordanType::TwoOne);
    assert_eq!(chi.value(u21), &int(28));
    let u3 = g3
        .element_from_int_entries(&[1, 1, 0, 0, 1, 1, 0, 0, 1])
        .unwrap();
    assert_eq!(g3.jordan_type(u3).unwrap(), JordanType::Three);
    assert_eq!(chi.value(u3), &int(4));
    pass("criterion 1", "sl3(3) degrees 208/28/4");

    // Suzuki summary: degree 455, value 7 on nonidentity p-elements,
    // cross-checked element-by-element against the brute-force table.
    let g8 = group(Family::Sz, 8);
    let chi = induced(Family::Sz, 8);
    let summary = sz_character_by_cosets(&g8, Some(&chi)).unwrap();
    assert_eq!(summary.degree, 455);
    assert_eq!(summary.value_on_p, 7);
    pass("criterion 1", "sz(8) coset character 455/7");
}

fn certified_value(family: Family, q: u32, spec: &str) -> (String, Conclusion, bool) {
    let g = group(family, q);
    let spec = SubgroupSpec::parse(family, spec).unwrap();
    let setup = twistcert_core::catalog::build_setup(&g, &spec, None).unwrap();
    let cert = certify(&setup).unwrap();
    assert!(cert.methods_agree);
    let closed_matches = cert
        .closed_form
        .as_ref()
        .map(|cf| cf == &cert.value)
        .unwrap_or(true);
    (
        format_rational(&cert.value),
        cert.conclusion,
        closed_matches,
    )
}

#[test]
fn criterion_2_printed_klein_values() {
    for (q, spec, want) in [(5, "klein:x=2,y=0", "15/4"), (7, "klein:x=2,y=3", "1/4")] {
        let (value, conclusion, closed) = certified_value(Family::Psl2, q, spec);
        assert_eq!(value, want, "psl2({q}) klein");
        assert_eq!(conclusion, Conclusion::Obstructed);
        assert!(closed);
        pass("criterion 2", &format!("psl2({q}) klein -> {want}"));
    }
}

#[test]
fn criterion_3_formula_instantiated_values() {
    let cases: [(Family, u32, &str, &str); 9] = [
        (Family::Sl2, 4, "E=1,g", "135/4"),
        (Family::Sl2, 8, "E=1,g", "3087/4"),
        (Family::Sl2, 9, "E=1,g", "512/9"),
        (Family::Psl2, 9, "E=1,g", "640/27"),
        (Family::Psl2, 9, "klein:x=1,y=1", "125/4"),
        (Family::Psl2, 13, "klein:x=4,y=3", "343/4"),
        (Family::Sl3, 3, "L3", "64/9"),
        (Family::Sl3, 3, "L1", "34496/9"),
        (Family::Sz, 8, "Z2x2", "22295/4"),
    ];
    let mut failures = Vec::new();
    for (family, q, spec, want) in cases {
        let (value, conclusion, closed) = certified_value(family, q, spec);
        let ok = value == want && conclusion == Conclusion::Obstructed && closed;
        let label = format!("{}({q}) {spec}", family.name());
        if ok {
            pass("criterion 3", &format!("{label} -> {want}"));
        } else {
            println!("[criterion 3] {label}: FAIL (expected {want}, computed {value}, closed-form match: {closed})");
            failures.push(format!(
                "{label}: expected {want}, computed {value} \
                 (all three methods agree on the computed value; \
                 closed-form match: {closed}; conclusion: {})",
                conclusion.label()
            ));
        }
    }
    assert!(
        failures.is_empty(),
        "stated value mismatches:\n{}",
        failures.join("\n")
    );
}

#[test]
fn criterion_4_klein_classification() {
    for (q, classes) in [(5u32, 1usize), (7, 2), (11, 1), (13, 1), (17, 2)] {
        let g = group(Family::Psl2, q);
        let classification = classify_klein(&g).unwrap();
        assert_eq!(
            classification.orbits.len(),
            classes,
            "psl2({q}) klein classes"
        );
        let orbit_total: usize = classification.orbits.iter().map(|o| o.size).sum();
        assert_eq!(orbit_total, classification.subgroups.len());
        pass("criterion 4", &format!("psl2({q}) klein classes = {classes}"));
    }
    for q in [7u32, 11] {
        let g = group(Family::Psl2, q);
        let classification = classify_klein(&g).unwrap();
        assert_eq!(
            classification.containing_fixed,
            ((q + 1) / 4) as usize,
            "psl2({q}) klein subgroups containing the fixed involution"
        );
        pass(
            "criterion 4",
            &format!("psl2({q}) containing-fixed = {}", (q + 1) / 4),
        );
    }
}

#[test]
fn criterion_5_structure_counts() {
    // sl3(3): fourteen (2,1)-unipotents in U, centralizer order 54.
    let g = group(Family::Sl3, 3);
    let u = sylow_subgroup(&g).unwrap();
    let mut two_one = Vec::new();
    for &x in u.members() {
        if x != g.identity_index() && g.jordan_type(x).unwrap() == JordanType::TwoOne {
            two_one.push(x);
        }
    }
    assert_eq!(two_one.len(), 14, "sl3(3) type (2,1) count in U");
    let rep = two_one[0];
    let centralizer = (0..g.order() as u32)
        .filter(|&x| g.mul(x, rep) == g.mul(rep, x))
        .count();
    assert_eq!(centralizer, 54, "sl3(3) |C(u)|");
    pass("criterion 5", "sl3(3) counts 14 / 54");

    // sz(8): |Z(U)| = 8, exponent(U) = 4, involutions of U = Z(U)\{1}.
    let g = group(Family::Sz, 8);
    let u = sylow_subgroup(&g).unwrap();
    let z = sz_center(&g).unwrap();
    assert_eq!(z.order(), 8, "sz(8) |Z(U)|");
    assert_eq!(u.exponent(), 4, "sz(8) exponent of U");
    let involutions: Vec<u32> = u
        .members()
        .iter()
        .copied()
        .filter(|&x| x != g.identity_index() && g.element_order(x) == 2)
        .collect();
    let z_nontrivial: Vec<u32> = z
        .members()
        .iter()
        .copied()
        .filter(|&x| x != g.identity_index())
        .collect();
    assert_eq!(involutions, z_nontrivial, "sz(8) involutions = Z(U)\\{{1}}");
    pass("criterion 5", "sz(8) center/exponent/involutions");

    // Circle-solution counts over the prime fields.
    for (q, count) in [(5u32, 4usize), (7, 8), (13, 12)] {
        let g = group(Family::Psl2, q);
        let solutions = solve_circle(g.field()).unwrap();
        assert_eq!(solutions.len(), count, "x^2+y^2=-1 count over GF({q})");
        pass("criterion 5", &format!("circle count over GF({q}) = {count}"));
    }
}

#[test]
fn criterion_6_twist_verifier() {
    // Twist axioms on C2xC2 and C3xC3 for the standard pairing.
    let g5 = group(Family::Psl2, 5);
    let klein = named_m(&g5, &SubgroupSpec::parse(Family::Psl2, "klein:x=2,y=0").unwrap()).unwrap();
    assert!(verify_twist_axioms(
        &build_twist(&klein, OmegaKind::Standard).unwrap()
    ));
    pass("criterion 6", "axioms on C2xC2 (standard)");

    let g9 = group(Family::Psl2, 9);
    let c3c3 = named_m(&g9, &SubgroupSpec::parse(Family::Psl2, "E=1,g").unwrap()).unwrap();
    assert!(verify_twist_axioms(
        &build_twist(&c3c3, OmegaKind::Standard).unwrap()
    ));
    pass("criterion 6", "axioms on C3xC3 (standard)");

    // Twisted-coproduct image identity, invariant across pairings.
    let tau = g5.element_from_int_entries(&[1, 0, 1, 1]).unwrap();
    let chi = ClassFunction::for_kind(&g5, CharacterKind::Phi5).unwrap();
    for kind in [OmegaKind::Standard, OmegaKind::Swapped] {
        let t = build_twist(&klein, kind).unwrap();
        assert!(verify_coproduct_identity(&t, tau, &chi).unwrap(), "{kind:?}");
    }
    pass("criterion 6", "coproduct identity, two pairings");

    // Counit of the double-coset sum.
    let c_tau = coset_sum(&klein, tau).unwrap();
    assert_eq!(c_tau.augmentation(), int(klein.order() as i64));
    pass("criterion 6", "counit of c_tau = |M|");

    // Negative control.
    let corrupted = build_twist(&klein, OmegaKind::CorruptedStandard).unwrap();
    assert!(!verify_twist_axioms(&corrupted));
    pass("criterion 6", "corrupted pairing rejected");
}

#[test]
fn criterion_7_property_smoke() {
    // Field axioms, sampled exhaustively at this scale.
    let g9 = group(Family::Psl2, 9);
    let f = g9.field();
    for a in 0..f.q() {
        for b in 0..f.q() {
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.add(a, b), f.add(b, a));
            for c in 0..f.q() {
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
    pass("criterion 7", "field axioms GF(9)");

    // theta^2 = squaring Frobenius and a -> a*theta(a) bijective on
    // GF(8)*: theta = Fr_{n+1} with n = 1.
    let g8 = group(Family::Sz, 8);
    let f8 = g8.field();
    let theta = |a: u32| f8.frobenius(a, 2);
    let mut image = std::collections::BTreeSet::new();
    for a in 0..f8.q() {
        assert_eq!(theta(theta(a)), f8.mul(a, a), "theta^2 = squaring");
        if a != 0 {
            let v = f8.mul(a, theta(a));
            assert!(image.insert(v), "a*theta(a) collides at {a}");
            if v == 1 {
                assert_eq!(a, 1, "a*theta(a) = 1 forces a = 1");
            }
        }
    }
    assert_eq!(image.len(), (f8.q() - 1) as usize);
    pass("criterion 7", "theta identities on GF(8)");

    // Group closure and character conjugation-invariance, seeded.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let g7 = group(Family::Psl2, 7);
    let chi = induced(Family::Psl2, 7);
    let n = g7.order() as u32;
    for _ in 0..2000 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let ab = g7.mul(a, b);
        assert!(ab < n);
        assert_eq!(chi.value(g7.conj(a, b)), chi.value(b));
    }
    pass("criterion 7", "closure + conjugation invariance (seed 0)");

    // Quadruple-product identity criterion.
    let g5 = group(Family::Psl2, 5);
    let u5 = sylow_subgroup(&g5).unwrap();
    let tau5 = g5.element_from_int_entries(&[0, -1, 1, 0]).unwrap();
    assert!(verify_quadruple_product_criterion(&u5, tau5).unwrap());
    pass("criterion 7", "quadruple-product criterion");

    // Torus conjugation formula on the Klein parameters at q = 7:
    // conjugating M_{(x,y)} by pi(a b; -b a) with a^2+b^2 = 1 lands on
    // M_{((a^2-b^2)x + 2ab y, (a^2-b^2)y - 2ab x)}.
    let f7 = g7.field();
    for (x, y) in [(2u32, 3u32), (3, 2)] {
        let m = named_m(
            &g7,
            &SubgroupSpec::Klein { x, y },
        )
        .unwrap();
        for a in 0..7u32 {
            for b in 0..7u32 {
                if f7.add(f7.mul(a, a), f7.mul(b, b)) != 1 {
                    continue;
                }
                let kappa = g7
                    .element_from_int_entries(&[
                        i64::from(a),
                        i64::from(b),
                        -i64::from(b),
                        i64::from(a),
                    ])
                    .unwrap();
                let mut image: Vec<u32> =
                    m.members().iter().map(|&v| g7.conj(kappa, v)).collect();
                image.sort_unstable();
                let aa = f7.sub(f7.mul(a, a), f7.mul(b, b));
                let two_ab = f7.mul(2, f7.mul(a, b));
                let x2 = f7.add(f7.mul(aa, x), f7.mul(two_ab, y));
                let y2 = f7.sub(f7.mul(aa, y), f7.mul(two_ab, x));
                let target = named_m(&g7, &SubgroupSpec::Klein { x: x2, y: y2 }).unwrap();
                assert_eq!(image, target.members(), "kappa=({a},{b}) on ({x},{y})");
            }
        }
    }
    pass("criterion 7", "torus conjugation formula at q = 7");
}

#[test]
#[ignore = "stretch criterion: run with --ignored (several minutes)"]
fn criterion_8_sz32_enumeration() {
    let g = FiniteGroup::build_with(Family::Sz, 32, 40_000_000, None).unwrap();
    assert_eq!(g.order(), 32 * 32 * 31 * 1025);
    let summary = sz_character_by_cosets(&g, None).unwrap();
    assert_eq!(summary.degree, 31775);
    assert_eq!(summary.value_on_p, 31);
    assert_eq!(summary.p_size, 1 << 20);
    pass("criterion 8", "sz(32) order and coset character");
}
