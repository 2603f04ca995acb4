//! The obstruction computation: `y`, `χ(y²)` by three independent
//! methods, closed-form cross-checks, and the resulting certificate.
//!
//! For a subgroup `M`, a coset representative `tau` with
//! `M ∩ tau M tau⁻¹ = {1}`, and a class function `χ`, the element
//! `y = (1/|M|) Σ_{g ∈ M tau M} χ(g)·g` has the property that `χ(y²)`
//! must be integral over any ring admitting the corresponding Hopf
//! order.  A reduced denominator sharing a factor with `|M|` therefore
//! certifies non-existence.  The three methods — sparse convolution,
//! the literal quadruple sum over `M⁴`, and the fiber rearrangement —
//! are algebraically identical but structurally independent code paths;
//! exact agreement is mandatory.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::algebra::GroupAlgebraVector;
use crate::catalog::{ObstructionSetup, SubgroupSpec};
use crate::character::{m_c_set, ClassFunction};
use crate::group::Family;
use crate::rational::{denominator_gcd, format_rational, ratio};
use crate::subgroup::Subgroup;
use crate::{Error, Rational, Result};

/// Iteration cap for the quadruple loop (`|M|⁴` terms).
pub const QUADLOOP_ITERATION_BOUND: u64 = 100_000_000;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `y = (1/|M|) Σ_{g ∈ M tau M} χ(g)·g`.
///
/// Requires `M ∩ tau M tau⁻¹ = {1}`; the products `u·tau·v` are then
/// pairwise distinct (`|M tau M| = |M|²`), which is asserted.
pub fn compute_y(
    chi: &ClassFunction,
    m: &Subgroup,
    tau: u32,
) -> Result<GroupAlgebraVector<Rational>> {
    let g = chi.group();
    let inter = m.intersect_conjugate(tau);
    if inter != vec![g.identity_index()] {
        return Err(Error::Config(format!(
            "M ∩ tau M tau^-1 has order {}, expected 1",
            inter.len()
        )));
    }
    let scale = ratio(1, m.order() as i64);
    let mut seen = HashSet::with_capacity(m.order() * m.order());
    let mut y = GroupAlgebraVector::zero();
    for &u in m.members() {
        let ut = g.mul(u, tau);
        for &v in m.members() {
            let idx = g.mul(ut, v);
            if !seen.insert(idx) {
                return Err(Error::Invariant(
                    "double coset is not free: |M tau M| < |M|^2".into(),
                ));
            }
            let c = chi.value(idx);
            if !c.is_zero() {
                y.add_term(idx, c * &scale);
            }
        }
    }
    Ok(y)
}

/// `χ(y²)` by squaring `y` with the sparse convolution and pairing
/// against `χ`.
pub fn chi_y2_direct(chi: &ClassFunction, y: &GroupAlgebraVector<Rational>) -> Rational {
    let g = chi.group();
    let square = y.mul(y, g);
    let mut total = Rational::zero();
    for (&idx, c) in square.iter() {
        total += c * chi.value(idx);
    }
    total
}

/// `χ(y²) = (1/|M|²) Σ_{u',u,v',v ∈ M} χ(tau u'u)·χ(tau v'v)·χ(tau u'v tau v'u)`.
///
/// The literal quadruple sum; terms with a vanishing factor are
/// skipped.  Parallel over the outer two indices with exact rational
/// partial sums.
pub fn chi_y2_quadloop(chi: &ClassFunction, m: &Subgroup, tau: u32) -> Result<Rational> {
    let g = chi.group();
    let k = m.order();
    let iterations = (k as u128).pow(4);
    if iterations > u128::from(QUADLOOP_ITERATION_BOUND) {
        return Err(Error::Bound(format!(
            "quadruple loop needs {iterations} iterations, cap is {QUADLOOP_ITERATION_BOUND}"
        )));
    }
    // prods[a*k + b] = tau·m[a]·m[b]; vals holds χ of the same.
    let mem = m.members();
    let mut prods = vec![0u32; k * k];
    for (a, &ma) in mem.iter().enumerate() {
        let ta = g.mul(tau, ma);
        for (b, &mb) in mem.iter().enumerate() {
            prods[a * k + b] = g.mul(ta, mb);
        }
    }
    let vals: Vec<Rational> = prods.iter().map(|&idx| chi.value(idx).clone()).collect();

    let total = (0..k * k)
        .into_par_iter()
        .map(|outer| {
            let u1 = outer / k;
            let u = outer % k;
            let f1 = &vals[u1 * k + u];
            if f1.is_zero() {
                return Rational::zero();
            }
            let mut acc = Rational::zero();
            for v1 in 0..k {
                for v in 0..k {
                    let f2 = &vals[v1 * k + v];
                    if f2.is_zero() {
                        continue;
                    }
                    let f3 = chi.value(g.mul(prods[u1 * k + v], prods[v1 * k + u]));
                    if f3.is_zero() {
                        continue;
                    }
                    acc += f1 * f2 * f3;
                }
            }
            acc
        })
        .reduce(Rational::zero, |a, b| a + b);
    Ok(total * ratio(1, (k * k) as i64))
}

/// `χ(y²) = (1/|M|) Σ_{C,C'} χ(C)·χ(C') Σ_{x ∈ M_C, x' ∈ M_{C'}, v ∈ M}
/// χ(tau·x·x'·v·tau·v⁻¹)`, where `C, C'` range over the nonzero value
/// fibers of `χ` and `M_C = {v ∈ M : tau·v ∈ C}`.
pub fn chi_y2_fiber(chi: &ClassFunction, m: &Subgroup, tau: u32) -> Result<Rational> {
    let g = chi.group();
    let e = g.identity_index();
    for &v in m.members() {
        if g.mul(tau, v) == e {
            return Err(Error::Invariant(
                "tau^-1 lies in M; the identity fiber must stay empty".into(),
            ));
        }
    }
    let decomposition = chi.fibers();
    let sets: Vec<(Rational, Vec<u32>)> = decomposition
        .fibers
        .iter()
        .map(|(value, members)| (value.clone(), m_c_set(m, tau, members)))
        .collect();
    let pairs: Vec<(u32, u32)> = m.members().iter().map(|&v| (v, g.inv(v))).collect();

    let mut total = Rational::zero();
    for (val1, set1) in &sets {
        if set1.is_empty() {
            continue;
        }
        for (val2, set2) in &sets {
            if set2.is_empty() {
                continue;
            }
            let mut inner = Rational::zero();
            for &x in set1 {
                let tx = g.mul(tau, x);
                for &x2 in set2 {
                    let txx = g.mul(tx, x2);
                    for &(v, vinv) in &pairs {
                        let arg = g.mul(g.mul(g.mul(txx, v), tau), vinv);
                        let c = chi.value(arg);
                        if !c.is_zero() {
                            inner += c;
                        }
                    }
                }
            }
            if !inner.is_zero() {
                total += val1 * val2 * inner;
            }
        }
    }
    Ok(total * ratio(1, m.order() as i64))
}

/// The tabulated closed form for a setup, where one exists.
///
/// Setups outside the tabulated cases return `None`; the certificate
/// then rests on the computed value alone.
pub fn closed_form_value(setup: &ObstructionSetup) -> Option<Rational> {
    let g = &setup.group;
    let f = g.field();
    let q = big(i64::from(f.q()));
    let m_order = big(setup.m.order() as i64);
    let one = BigInt::one();
    match (g.family(), &setup.spec) {
        (Family::Sl2, SubgroupSpec::Additive { .. }) => {
            let mut num = (&q - &one).pow(3);
            if f.p() == 2 {
                num *= &q + &one;
            }
            Some(Rational::new(num, m_order))
        }
        (Family::Psl2, SubgroupSpec::Additive { .. }) => {
            let bump = if setup.sqrt_minus4_in_e == Some(true) {
                big(6)
            } else {
                big(4)
            };
            Some(Rational::new((&q - &one).pow(3) * (&q + bump), big(4) * m_order))
        }
        (Family::Psl2, SubgroupSpec::Klein { x, y }) => {
            if f.q() == 5 {
                return Some(ratio(15, 4));
            }
            if f.q() == 7 {
                return Some(ratio(1, 4));
            }
            if f.q() % 4 == 1 && (*x == 0 || *y == 0) {
                // Degenerate circle solution: the main closed form does
                // not apply.  For prime q > 7 the alternate branch
                // gives (q+1)^3 (2-q) / 32.
                if f.m() == 1 && f.p() > 7 {
                    return Some(Rational::new((&q + &one).pow(3) * (big(2) - &q), big(32)));
                }
                return None;
            }
            let n_q = if f.q() % 4 == 1 {
                (&q + &one) / big(2)
            } else {
                (&q - &one) / big(2)
            };
            Some(Rational::new(n_q.pow(3), big(4)))
        }
        (Family::Sl3, SubgroupSpec::Sl3Layer { j }) => {
            if *j == f.p() {
                Some(Rational::new((&q - &one).pow(6), &q * &q))
            } else if *j == 1 {
                let num = (big(2) * &q + &one).pow(2) * (&q - &one).pow(6) * (big(4) * &q - &one);
                Some(Rational::new(num, &q * &q))
            } else {
                None
            }
        }
        (Family::Sz, SubgroupSpec::SzCenterSquare { .. }) => Some(Rational::new(
            (&q - &one).pow(3) * (&q * &q + &one),
            m_order,
        )),
        _ => None,
    }
}

/// Certificate verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Obstructed,
    Inconclusive,
}

impl Conclusion {
    pub fn label(self) -> &'static str {
        match self {
            Conclusion::Obstructed => "obstructed",
            Conclusion::Inconclusive => "inconclusive",
        }
    }
}

/// The three independently computed values of `χ(y²)`.
#[derive(Clone, Debug)]
pub struct MethodValues {
    pub direct: Rational,
    pub quadloop: Rational,
    pub fiber: Rational,
}

impl MethodValues {
    pub fn agree(&self) -> bool {
        self.direct == self.quadloop && self.quadloop == self.fiber
    }
}

/// Echo of the configuration a certificate was computed from.
#[derive(Clone, Debug)]
pub struct SetupSummary {
    pub family: &'static str,
    pub q: u32,
    pub m_spec: String,
    pub m_order: u64,
    pub group_order: u64,
    pub tau_entries: Vec<u32>,
    pub character: &'static str,
    pub lambda: Option<u32>,
    pub xy: Option<(u32, u32)>,
}

impl SetupSummary {
    pub fn of(setup: &ObstructionSetup) -> SetupSummary {
        SetupSummary {
            family: setup.group.family().name(),
            q: setup.group.q(),
            m_spec: setup.spec.canonical_string(),
            m_order: setup.m.order() as u64,
            group_order: setup.group.order() as u64,
            tau_entries: setup.group.matrix(setup.tau).entries(),
            character: setup.character_kind.name(),
            lambda: setup.lambda,
            xy: setup.xy,
        }
    }
}

/// The machine-checkable outcome of one obstruction run.
#[derive(Clone, Debug)]
pub struct ObstructionCertificate {
    pub setup: SetupSummary,
    /// `χ(y²)`, reduced, positive denominator.
    pub value: Rational,
    pub reduced_denominator: BigInt,
    /// `gcd(reduced denominator, |M|)`.
    pub gcd_with_m: u64,
    pub methods: MethodValues,
    pub methods_agree: bool,
    pub closed_form: Option<Rational>,
    pub conclusion: Conclusion,
}

impl ObstructionCertificate {
    /// Deterministic JSON encoding (sorted keys, rationals as strings).
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "setup": {
                "family": self.setup.family,
                "q": self.setup.q,
                "m": self.setup.m_spec,
                "m_order": self.setup.m_order,
                "group_order": self.setup.group_order,
                "tau": self.setup.tau_entries,
                "character": self.setup.character,
                "lambda": self.setup.lambda,
                "xy": self.setup.xy.map(|(x, y)| vec![x, y]),
            },
            "value": format_rational(&self.value),
            "denominator_gcd_with_M": self.gcd_with_m,
            "methods": {
                "direct": format_rational(&self.methods.direct),
                "quadloop": format_rational(&self.methods.quadloop),
                "fiber": format_rational(&self.methods.fiber),
            },
            "closed_form": self.closed_form.as_ref().map(format_rational),
            "conclusion": self.conclusion.label(),
        })
    }
}

/// The verdict rule: obstructed exactly when the reduced denominator
/// shares a factor with `|M|`.
pub fn verdict(value: &Rational, m_order: u64) -> (u64, Conclusion) {
    let gcd = denominator_gcd(value, m_order);
    let gcd = u64::try_from(&gcd).expect("gcd is bounded by |M|");
    let conclusion = if gcd > 1 {
        Conclusion::Obstructed
    } else {
        Conclusion::Inconclusive
    };
    (gcd, conclusion)
}

/// Runs all three methods on a setup and issues the certificate.
///
/// Disagreement between the methods is fatal; a closed-form mismatch is
/// recorded in the certificate (the closed form is reported alongside
/// the computed value) but does not abort.
pub fn certify(setup: &ObstructionSetup) -> Result<ObstructionCertificate> {
    let chi = ClassFunction::for_kind(&setup.group, setup.character_kind)?;
    let y = compute_y(&chi, &setup.m, setup.tau)?;
    let direct = chi_y2_direct(&chi, &y);
    let quadloop = chi_y2_quadloop(&chi, &setup.m, setup.tau)?;
    let fiber = chi_y2_fiber(&chi, &setup.m, setup.tau)?;
    let methods = MethodValues {
        direct: direct.clone(),
        quadloop,
        fiber,
    };
    if !methods.agree() {
        return Err(Error::Invariant(format!(
            "method disagreement: direct {} / quadloop {} / fiber {}",
            format_rational(&methods.direct),
            format_rational(&methods.quadloop),
            format_rational(&methods.fiber),
        )));
    }
    let value = direct;
    debug_assert!(value.denom().is_positive());
    let (gcd_with_m, conclusion) = verdict(&value, setup.m.order() as u64);
    Ok(ObstructionCertificate {
        setup: SetupSummary::of(setup),
        reduced_denominator: value.denom().clone(),
        gcd_with_m,
        methods,
        methods_agree: true,
        closed_form: closed_form_value(setup),
        conclusion,
        value,
    })
}

/// Scans `M⁴` and checks that `tau·u'·v·tau·v'·u = 1` happens exactly
/// when `u'v = 1`, `v'u = 1` and `tau² = 1`.  Requires `tau²` central;
/// returns whether solutions exist (that is, whether `tau² = 1`).
pub fn verify_quadruple_product_criterion(m: &Subgroup, tau: u32) -> Result<bool> {
    let g = m.parent();
    let tau2 = g.mul(tau, tau);
    for x in 0..g.order() as u32 {
        if g.mul(tau2, x) != g.mul(x, tau2) {
            return Err(Error::Config("tau^2 is not central".into()));
        }
    }
    let e = g.identity_index();
    let involutive = tau2 == e;
    let mem = m.members();
    for &u1 in mem {
        let tu1 = g.mul(tau, u1);
        for &v in mem {
            let left = g.mul(tu1, v);
            let u1v_trivial = g.mul(u1, v) == e;
            for &v1 in mem {
                let tv1 = g.mul(g.mul(left, tau), v1);
                for &u in mem {
                    let product = g.mul(tv1, u);
                    let expected = involutive && u1v_trivial && g.mul(v1, u) == e;
                    if (product == e) != expected {
                        return Err(Error::Invariant(
                            "quadruple product identity criterion failed".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(involutive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_setup, CharacterKind};
    use crate::group::FiniteGroup;
    use crate::rational::{int, parse_rational};
    use crate::subgroup::Subgroup;

    fn setup_for(family: Family, q: u32, spec: &str) -> ObstructionSetup {
        let g = FiniteGroup::build(family, q).unwrap();
        let spec = SubgroupSpec::parse(family, spec).unwrap();
        build_setup(&g, &spec, None).unwrap()
    }

    fn assert_certificate(setup: &ObstructionSetup, expected: &str, obstructed: bool) {
        let cert = certify(setup).unwrap();
        let want = parse_rational(expected).unwrap();
        assert_eq!(cert.value, want, "value for {}", cert.setup.m_spec);
        assert!(cert.methods_agree);
        assert_eq!(cert.methods.direct, want);
        assert_eq!(cert.methods.quadloop, want);
        assert_eq!(cert.methods.fiber, want);
        if let Some(cf) = &cert.closed_form {
            assert_eq!(cf, &want, "closed form for {}", cert.setup.m_spec);
        }
        let expected_conclusion = if obstructed {
            Conclusion::Obstructed
        } else {
            Conclusion::Inconclusive
        };
        assert_eq!(cert.conclusion, expected_conclusion);
        if obstructed {
            assert!(cert.gcd_with_m > 1);
        } else {
            assert_eq!(cert.gcd_with_m, 1);
        }
    }

    #[test]
    fn sl2_additive_values() {
        assert_certificate(&setup_for(Family::Sl2, 4, "E=1,g"), "135/4", true);
        assert_certificate(&setup_for(Family::Sl2, 8, "E=1,g"), "3087/4", true);
        assert_certificate(&setup_for(Family::Sl2, 9, "E=1,g"), "512/9", true);
    }

    #[test]
    fn psl2_unipotent_value() {
        let setup = setup_for(Family::Psl2, 9, "E=1,g");
        assert_eq!(setup.sqrt_minus4_in_e, Some(true));
        assert_certificate(&setup, "640/3", true);
    }

    #[test]
    fn psl2_klein_printed_values() {
        assert_certificate(&setup_for(Family::Psl2, 5, "klein:x=2,y=0"), "15/4", true);
        assert_certificate(&setup_for(Family::Psl2, 7, "klein:x=2,y=3"), "1/4", true);
    }

    #[test]
    fn psl2_klein_formula_values() {
        assert_certificate(&setup_for(Family::Psl2, 9, "klein:x=1,y=1"), "125/4", true);
        assert_certificate(&setup_for(Family::Psl2, 11, "klein:x=3,y=1"), "125/4", true);
        assert_certificate(&setup_for(Family::Psl2, 13, "klein:x=4,y=3"), "343/4", true);
        assert_certificate(&setup_for(Family::Psl2, 17, "klein:x=1,y=7"), "729/4", true);
    }

    #[test]
    fn klein_value_does_not_depend_on_the_witness() {
        assert_certificate(&setup_for(Family::Psl2, 13, "klein:x=3,y=4"), "343/4", true);
        assert_certificate(&setup_for(Family::Psl2, 17, "klein:x=5,y=5"), "729/4", true);
    }

    #[test]
    fn sl3_layer_values() {
        assert_certificate(&setup_for(Family::Sl3, 3, "L3"), "64/9", true);
        assert_certificate(&setup_for(Family::Sl3, 3, "L1"), "34496/9", true);
    }

    #[test]
    fn sz_value() {
        assert_certificate(&setup_for(Family::Sz, 8, "Z2x2"), "22295/4", true);
    }

    #[test]
    fn degenerate_circle_solution_regressions() {
        // q = 13, (x, y) = (5, 0): one of the Klein generators becomes
        // diagonal and the alternate closed form applies.
        let setup = setup_for(Family::Psl2, 13, "klein:x=5,y=0");
        assert_eq!(setup.lambda, Some(1));
        let cert = certify(&setup).unwrap();
        assert_eq!(cert.value, parse_rational("-3773/4").unwrap());
        assert_eq!(cert.closed_form, Some(parse_rational("-3773/4").unwrap()));
        assert_eq!(cert.conclusion, Conclusion::Obstructed);

        // q = 5 with the same degeneracy: the value is the integer -27
        // for every admissible lambda, so no denominator obstruction
        // arises and the verdict stays inconclusive.
        let g = FiniteGroup::build(Family::Psl2, 5).unwrap();
        let spec = SubgroupSpec::parse(Family::Psl2, "klein:x=2,y=0").unwrap();
        for lambda in 1..5 {
            let mut setup = build_setup(&g, &spec, None).unwrap();
            setup.character_kind = CharacterKind::PhiQ1;
            setup.lambda = Some(lambda);
            let tau = g
                .element_from_int_entries(&[1, 0, i64::from(lambda), 1])
                .unwrap();
            setup.tau = tau;
            crate::catalog::verify_tau(&setup.m, tau).unwrap();
            let cert = certify(&setup).unwrap();
            assert_eq!(cert.value, int(-27), "lambda = {lambda}");
            assert_eq!(cert.conclusion, Conclusion::Inconclusive);
            assert_eq!(cert.gcd_with_m, 1);
        }
    }

    #[test]
    fn trivial_subgroup_degenerates_to_a_single_term() {
        let g = FiniteGroup::build(Family::Psl2, 5).unwrap();
        let trivial =
            Subgroup::from_members(&g, vec![g.identity_index()], "trivial").unwrap();
        let tau = g.element_from_int_entries(&[1, 1, 0, 1]).unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        let y = compute_y(&chi, &trivial, tau).unwrap();
        assert_eq!(y.support(), vec![tau]);
        assert_eq!(y.coeff(tau), Some(chi.value(tau)));
        let direct = chi_y2_direct(&chi, &y);
        let quadloop = chi_y2_quadloop(&chi, &trivial, tau).unwrap();
        let fiber = chi_y2_fiber(&chi, &trivial, tau).unwrap();
        assert_eq!(direct, quadloop);
        assert_eq!(direct, fiber);
        // chi(tau) = 2 and tau^2 has order 5, so the value is 4·2 = 8.
        assert_eq!(direct, int(8));
        assert_eq!(verdict(&direct, 1), (1, Conclusion::Inconclusive));
    }

    #[test]
    fn verdict_rule() {
        assert_eq!(verdict(&int(5), 4), (1, Conclusion::Inconclusive));
        assert_eq!(
            verdict(&parse_rational("15/4").unwrap(), 4),
            (4, Conclusion::Obstructed)
        );
        assert_eq!(
            verdict(&parse_rational("640/3").unwrap(), 9),
            (3, Conclusion::Obstructed)
        );
        assert_eq!(
            verdict(&parse_rational("1/2").unwrap(), 9),
            (1, Conclusion::Inconclusive)
        );
    }

    #[test]
    fn quadloop_bound_is_enforced() {
        let g = FiniteGroup::build(Family::Sz, 8).unwrap();
        // |G|^4 for the full group blows far past the iteration cap.
        let all = Subgroup::from_members(&g, (0..g.order() as u32).collect(), "G").unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        let err = chi_y2_quadloop(&chi, &all, 0).unwrap_err();
        assert!(matches!(err, Error::Bound(_)));
    }

    #[test]
    fn method_values_agreement_is_checked() {
        let vals = MethodValues {
            direct: int(1),
            quadloop: int(1),
            fiber: int(2),
        };
        assert!(!vals.agree());
    }

    #[test]
    fn quadruple_product_criterion_in_small_setups() {
        // PSL2(5), M = pi(U), tau = pi(0 -1; 1 0): tau is an involution,
        // so solutions are exactly the trivial pairs.
        let g = FiniteGroup::build(Family::Psl2, 5).unwrap();
        let u = crate::catalog::sylow_subgroup(&g).unwrap();
        let tau = g.element_from_int_entries(&[0, -1, 1, 0]).unwrap();
        assert!(verify_quadruple_product_criterion(&u, tau).unwrap());

        // SL2(5): tau^2 = -1 is central but not 1, so no solutions.
        let g = FiniteGroup::build(Family::Sl2, 5).unwrap();
        let u = crate::catalog::sylow_subgroup(&g).unwrap();
        let tau = g.element_from_int_entries(&[0, -1, 1, 0]).unwrap();
        assert!(!verify_quadruple_product_criterion(&u, tau).unwrap());
    }

    #[test]
    fn certificate_json_has_the_fixed_shape() {
        let setup = setup_for(Family::Psl2, 7, "klein:x=2,y=3");
        let cert = certify(&setup).unwrap();
        let value = cert.to_json();
        assert_eq!(value["value"], "1/4");
        assert_eq!(value["conclusion"], "obstructed");
        assert_eq!(value["denominator_gcd_with_M"], 4);
        assert_eq!(value["methods"]["direct"], "1/4");
        assert_eq!(value["methods"]["quadloop"], "1/4");
        assert_eq!(value["methods"]["fiber"], "1/4");
        assert_eq!(value["closed_form"], "1/4");
        assert_eq!(value["setup"]["family"], "psl2");
        assert_eq!(value["setup"]["q"], 7);
        assert_eq!(value["setup"]["m"], "klein:x=2,y=3");
        assert_eq!(value["setup"]["m_order"], 4);
        assert_eq!(value["setup"]["lambda"], 1);
        let text = serde_json::to_string(&value).unwrap();
        assert!(text.starts_with("{\"closed_form\""), "sorted keys: {text}");
    }
}
