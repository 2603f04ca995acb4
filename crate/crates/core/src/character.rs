//! Class functions: the induced character of the Sylow subgroup, the
//! tabulated virtual characters for the Klein setups, fibers and the
//! structural verification of the closed-form character tables.
//!
//! The central object is the character of the permutation representation
//! on `G/U` — the character induced from the trivial character of the
//! distinguished Sylow `p`-subgroup `U`.  It is computed by brute-force
//! counting (`chi(x) = #{g : g^-1 x g ∈ U} / |U|`), after which three
//! structural facts are verified exactly: integrality of every value,
//! vanishing off the set `P` of `p`-elements, and the Frobenius identity
//! `sum_x chi(x) = |G|`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::catalog::CharacterKind;
use crate::group::{sz_tau, sz_u, Family, FiniteGroup, JordanType};
use crate::matrix::Matrix;
use crate::rational::int;
use crate::subgroup::Subgroup;
use crate::{Error, Rational, Result};

/// A dense class function with exact rational values.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Rational>,
    label: String,
}

impl ClassFunction {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    #[inline]
    pub fn value(&self, idx: u32) -> &Rational {
        &self.values[idx as usize]
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }

    /// Builds the class function of the given kind.
    pub fn for_kind(group: &Arc<FiniteGroup>, kind: CharacterKind) -> Result<ClassFunction> {
        match kind {
            CharacterKind::InducedSylow => ClassFunction::induced_from_sylow(group),
            other => ClassFunction::special(group, other),
        }
    }

    /// The character induced from the trivial character of `U`, by the
    /// counting formula, with integrality, support and Frobenius-sum
    /// checks.
    pub fn induced_from_sylow(group: &Arc<FiniteGroup>) -> Result<ClassFunction> {
        let u = crate::catalog::sylow_subgroup(group)?;
        Self::induced_from(group, &u)
    }

    /// The character induced from the trivial character of an arbitrary
    /// subgroup, by the counting formula.
    pub fn induced_from(group: &Arc<FiniteGroup>, sub: &Subgroup) -> Result<ClassFunction> {
        let f = group.field();
        let sub_matrices: Vec<Matrix> = sub.members().iter().map(|&i| group.matrix(i)).collect();
        let mut counts = vec![0u64; group.order()];
        for g in 0..group.order() as u32 {
            let gm = group.matrix(g);
            let gi = gm.inverse(f).expect("group elements are invertible");
            for um in &sub_matrices {
                let t = gm.mul(um, f).mul(&gi, f);
                counts[group.expect_index(&t) as usize] += 1;
            }
        }
        let n = sub.order() as u64;
        let mut values = Vec::with_capacity(counts.len());
        for (idx, &c) in counts.iter().enumerate() {
            if c % n != 0 {
                return Err(Error::Invariant(format!(
                    "induced character count {c} at element {idx} is not divisible by {n}"
                )));
            }
            values.push(int((c / n) as i64));
        }
        let chi = ClassFunction {
            group: Arc::clone(group),
            values,
            label: format!("ind[{}]", sub.label()),
        };
        if sub.label() == "U" {
            for idx in 0..group.order() as u32 {
                let vanishes = chi.value(idx).is_zero();
                if vanishes == group.in_p(idx) {
                    return Err(Error::Invariant(format!(
                        "induced character support disagrees with P at element {idx}"
                    )));
                }
            }
        }
        if chi.sum() != int(group.order() as i64) {
            return Err(Error::Invariant(
                "induced character fails the Frobenius sum identity".into(),
            ));
        }
        Ok(chi)
    }

    /// The tabulated class functions, keyed by element order.
    pub fn special(group: &Arc<FiniteGroup>, kind: CharacterKind) -> Result<ClassFunction> {
        let q = i64::from(group.q());
        let table: BTreeMap<u64, Rational> = match kind {
            CharacterKind::PhiQ1 => {
                if group.family() != Family::Psl2 || group.q() % 4 != 1 {
                    return Err(Error::Config(
                        "phi_q1 applies to psl2 with q = 1 mod 4".into(),
                    ));
                }
                let p = u64::from(group.field().p());
                [
                    (1u64, Rational::new((1 - q * q).into(), 2.into())),
                    (p, Rational::new((q + 1).into(), 2.into())),
                ]
                .into_iter()
                .collect()
            }
            CharacterKind::Phi5 => {
                if group.family() != Family::Psl2 || group.q() != 5 {
                    return Err(Error::Config("phi_5 applies to psl2(5) only".into()));
                }
                [(1u64, int(15)), (2, int(-1)), (3, int(0)), (5, int(0))]
                    .into_iter()
                    .collect()
            }
            CharacterKind::Phi7 => {
                if group.family() != Family::Psl2 || group.q() != 7 {
                    return Err(Error::Config("phi_7 applies to psl2(7) only".into()));
                }
                [
                    (1u64, int(14)),
                    (2, int(2)),
                    (3, int(-1)),
                    (4, int(0)),
                    (7, int(0)),
                ]
                .into_iter()
                .collect()
            }
            CharacterKind::InducedSylow => {
                return Err(Error::Config(
                    "induced_sylow is not a tabulated class function".into(),
                ))
            }
        };
        let mut values = Vec::with_capacity(group.order());
        for idx in 0..group.order() as u32 {
            let o = group.element_order(idx);
            match table.get(&o) {
                Some(v) => values.push(v.clone()),
                None => {
                    if kind == CharacterKind::PhiQ1 {
                        values.push(Rational::zero());
                    } else {
                        return Err(Error::Invariant(format!(
                            "element order {o} missing from the {} table",
                            kind.name()
                        )));
                    }
                }
            }
        }
        Ok(ClassFunction {
            group: Arc::clone(group),
            values,
            label: kind.name().to_string(),
        })
    }

    /// Fibers of the nonzero values: a partition of the support into
    /// level sets, sorted by value.
    pub fn fibers(&self) -> FiberDecomposition {
        let mut map: BTreeMap<Rational, Vec<u32>> = BTreeMap::new();
        for (idx, v) in self.values.iter().enumerate() {
            if !v.is_zero() {
                map.entry(v.clone()).or_default().push(idx as u32);
            }
        }
        debug_assert!(
            !self.value(self.group.identity_index()).is_zero(),
            "class functions in scope do not vanish at 1"
        );
        FiberDecomposition {
            fibers: map.into_iter().collect(),
        }
    }
}

/// The level sets of the nonzero values of a class function.
#[derive(Clone, Debug)]
pub struct FiberDecomposition {
    /// `(value, sorted member indices)`, sorted by value.
    pub fibers: Vec<(Rational, Vec<u32>)>,
}

impl FiberDecomposition {
    /// Total size of all fibers (the support size).
    pub fn support_size(&self) -> usize {
        self.fibers.iter().map(|(_, m)| m.len()).sum()
    }
}

/// The set `M_C = {v ∈ M : tau v ∈ C}` for a value fiber `C`.
pub fn m_c_set(m: &Subgroup, tau: u32, fiber_members: &[u32]) -> Vec<u32> {
    let g = m.parent();
    m.members()
        .iter()
        .copied()
        .filter(|&v| fiber_members.binary_search(&g.mul(tau, v)).is_ok())
        .collect()
}

/// Element-by-element verification of the closed-form table of the
/// induced character; returns the distinct nonzero values with their
/// multiplicities.
pub fn verify_induced_closed_form(chi: &ClassFunction) -> Result<Vec<(Rational, usize)>> {
    let g = chi.group();
    let q = i64::from(g.q());
    for idx in 0..g.order() as u32 {
        let expected = if !g.in_p(idx) {
            Rational::zero()
        } else {
            match g.family() {
                Family::Sl2 => {
                    if idx == g.identity_index() {
                        int(q * q - 1)
                    } else {
                        int(q - 1)
                    }
                }
                Family::Psl2 => {
                    if idx == g.identity_index() {
                        Rational::new((q * q - 1).into(), 2.into())
                    } else {
                        Rational::new((q - 1).into(), 2.into())
                    }
                }
                Family::Sl3 => match g.jordan_type(idx)? {
                    JordanType::One => int((q * q * q - 1) * (q * q - 1)),
                    JordanType::TwoOne => int((2 * q + 1) * (q - 1) * (q - 1)),
                    JordanType::Three => int((q - 1) * (q - 1)),
                },
                Family::Sz => {
                    if idx == g.identity_index() {
                        int((q - 1) * (q * q + 1))
                    } else {
                        int(q - 1)
                    }
                }
            }
        };
        if chi.value(idx) != &expected {
            return Err(Error::Invariant(format!(
                "induced character at element {idx} is {}, closed form expects {}",
                chi.value(idx),
                expected
            )));
        }
    }
    let mut mult: BTreeMap<Rational, usize> = BTreeMap::new();
    for v in chi.values() {
        if !v.is_zero() {
            *mult.entry(v.clone()).or_default() += 1;
        }
    }
    Ok(mult.into_iter().collect())
}

/// Summary of the Suzuki induced-character verification by coset
/// representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SzCharacterSummary {
    pub degree: u64,
    pub value_on_p: u64,
    pub p_size: u64,
    pub group_order: u64,
}

/// Verifies the induced character of a Suzuki group with the
/// representative formula `chi(x) = (q-1) * #{r : r^-1 x r ∈ U}`, where
/// `r` runs over `1` and `{u tau : u ∈ U}` — a transversal of the
/// lower-triangular subgroup `B`, verified pairwise distinct here.  Since
/// `U` is normal in `B` with `|B|/|U| = q - 1`, each representative
/// accounts for a full `B`-coset in the counting formula.
///
/// Elements with `x^4 != 1` are skipped: a conjugate landing in `U` would
/// have order dividing 4, so the count is 0 there.  When `crosscheck` is
/// given, no skipping happens and every value (including zeros) is
/// compared against the supplied brute-force character.
pub fn sz_character_by_cosets(
    g: &Arc<FiniteGroup>,
    crosscheck: Option<&ClassFunction>,
) -> Result<SzCharacterSummary> {
    if g.family() != Family::Sz {
        return Err(Error::Config("coset verification applies to sz only".into()));
    }
    let f = g.field();
    let q = f.q();
    let n = (f.m() - 1) / 2;
    let tau = sz_tau();

    let is_in_u = |m: &Matrix| -> bool {
        let a = m.get(1, 0);
        let b = m.get(3, 1);
        *m == sz_u(f, n, a, b)
    };

    // The lower-triangular subgroup B = TU for the distinctness check.
    let mut b_codes: Vec<u128> = Vec::with_capacity((q as usize - 1) * (q as usize) * q as usize);
    for k in 1..q {
        let t = crate::group::sz_t(f, n, k);
        for a in 0..q {
            for b in 0..q {
                b_codes.push(t.mul(&sz_u(f, n, a, b), f).pack(g.bits()));
            }
        }
    }
    b_codes.sort_unstable();

    let mut reps: Vec<Matrix> = Vec::with_capacity(1 + (q as usize) * q as usize);
    reps.push(Matrix::identity(4));
    for a in 0..q {
        for b in 0..q {
            reps.push(sz_u(f, n, a, b).mul(&tau, f));
        }
    }
    let rep_inverses: Vec<Matrix> = reps
        .iter()
        .map(|r| r.inverse(f).expect("invertible"))
        .collect();
    // Left-coset distinctness: r_i^-1 r_j must avoid B for i != j.
    for (i, ri) in rep_inverses.iter().enumerate() {
        for r in reps.iter().skip(i + 1) {
            let prod = ri.mul(r, f);
            if b_codes.binary_search(&prod.pack(g.bits())).is_ok() {
                return Err(Error::Invariant(
                    "coset representatives are not pairwise distinct".into(),
                ));
            }
        }
    }

    let id = Matrix::identity(4);
    let count_into_u = |x: &Matrix| -> u64 {
        let mut c = 0u64;
        for (r, ri) in reps.iter().zip(&rep_inverses) {
            let t = ri.mul(x, f).mul(r, f);
            if is_in_u(&t) {
                c += 1;
            }
        }
        c
    };

    use rayon::prelude::*;
    let expected_identity = u64::from(q) * u64::from(q) + 1;
    let p_size: u64 = (0..g.order() as u32)
        .into_par_iter()
        .map(|idx| -> Result<u64> {
            let x = g.matrix(idx);
            let two_element = x.pow(4, f) == id;
            if !two_element && crosscheck.is_none() {
                return Ok(0);
            }
            let c = count_into_u(&x);
            let expected = if x == id {
                expected_identity
            } else if two_element {
                1
            } else {
                0
            };
            if c != expected {
                return Err(Error::Invariant(format!(
                    "representative count at element {idx} is {c}, expected {expected}"
                )));
            }
            if let Some(chi) = crosscheck {
                let val = int((u64::from(q - 1) * c) as i64);
                if chi.value(idx) != &val {
                    return Err(Error::Invariant(format!(
                        "coset value disagrees with the brute-force character at {idx}"
                    )));
                }
            }
            Ok(u64::from(two_element))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;

    let degree = u64::from(q - 1) * expected_identity;
    let order = g.order() as u64;
    // Frobenius identity over the verified table.
    if u64::from(q - 1) * (expected_identity + (p_size - 1)) != order {
        return Err(Error::Invariant(
            "coset-verified character fails the Frobenius sum identity".into(),
        ));
    }
    Ok(SzCharacterSummary {
        degree,
        value_on_p: u64::from(q - 1),
        p_size,
        group_order: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_setup, named_m, SubgroupSpec};

    #[test]
    fn induced_character_sl2_5() {
        let g = FiniteGroup::build(Family::Sl2, 5).unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        assert_eq!(chi.value(g.identity_index()), &int(24));
        assert_eq!(chi.sum(), int(120));
        let table = verify_induced_closed_form(&chi).unwrap();
        assert_eq!(table, vec![(int(4), 24), (int(24), 1)]);
    }

    #[test]
    fn induced_character_psl2_7() {
        let g = FiniteGroup::build(Family::Psl2, 7).unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        assert_eq!(chi.value(g.identity_index()), &int(24));
        let table = verify_induced_closed_form(&chi).unwrap();
        assert_eq!(table, vec![(int(3), 48), (int(24), 1)]);
    }

    #[test]
    fn induced_character_sl3_2() {
        let g = FiniteGroup::build(Family::Sl3, 2).unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        let table = verify_induced_closed_form(&chi).unwrap();
        assert_eq!(table, vec![(int(1), 42), (int(5), 21), (int(21), 1)]);
    }

    #[test]
    fn special_characters_fixed_values() {
        let g5 = FiniteGroup::build(Family::Psl2, 5).unwrap();
        let phi5 = ClassFunction::special(&g5, CharacterKind::Phi5).unwrap();
        assert_eq!(phi5.value(g5.identity_index()), &int(15));
        let m = named_m(&g5, &SubgroupSpec::Klein { x: 2, y: 0 }).unwrap();
        for &k in m.members() {
            let expected = if k == g5.identity_index() {
                int(15)
            } else {
                int(-1)
            };
            assert_eq!(phi5.value(k), &expected);
        }

        let g9 = FiniteGroup::build(Family::Psl2, 9).unwrap();
        let phi = ClassFunction::special(&g9, CharacterKind::PhiQ1).unwrap();
        assert_eq!(phi.value(g9.identity_index()), &int(-40));
        let u = g9.element_from_int_entries(&[1, 1, 0, 1]).unwrap();
        assert_eq!(phi.value(u), &int(5));

        assert!(ClassFunction::special(&g5, CharacterKind::Phi7).is_err());
        assert!(ClassFunction::special(&g9, CharacterKind::Phi5).is_err());
    }

    #[test]
    fn phi_q1_vanishes_on_shifted_coset() {
        // For the Klein setups with q in {11, 13, 17} and witnesses with
        // xy != 0: psi(tau v) = 0 and psi((tau v)^2) = 0 for every
        // nonidentity v in M, where psi is the case's class function.
        for (q, x, y) in [(11u32, 3u32, 1u32), (13, 4, 3), (17, 1, 7)] {
            let g = FiniteGroup::build(Family::Psl2, q).unwrap();
            let setup = build_setup(&g, &SubgroupSpec::Klein { x, y }, None).unwrap();
            let psi = ClassFunction::for_kind(&g, setup.character_kind).unwrap();
            for &v in setup.m.members() {
                if v == g.identity_index() {
                    continue;
                }
                let tv = g.mul(setup.tau, v);
                assert!(psi.value(tv).is_zero(), "q={q} psi(tau v)");
                assert!(psi.value(g.mul(tv, tv)).is_zero(), "q={q} psi((tau v)^2)");
            }
        }
    }

    #[test]
    fn fibers_partition_support() {
        let g = FiniteGroup::build(Family::Sl2, 5).unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        let fibers = chi.fibers();
        assert_eq!(fibers.fibers.len(), 2);
        assert_eq!(fibers.support_size(), 25);
        let values: Vec<&Rational> = fibers.fibers.iter().map(|(v, _)| v).collect();
        assert_eq!(values, vec![&int(4), &int(24)]);
    }

    #[test]
    fn m_c_sets_for_sl2_5() {
        let g = FiniteGroup::build(Family::Sl2, 5).unwrap();
        let spec = SubgroupSpec::parse(Family::Sl2, "E=1").unwrap();
        let m = named_m(&g, &spec).unwrap();
        let tau = g.element_from_int_entries(&[0, -1, 1, 0]).unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        let fibers = chi.fibers();
        // Fiber of value 4 = P minus the identity; fiber of 24 = {1}.
        let small = &fibers.fibers[0];
        let big = &fibers.fibers[1];
        assert_eq!(small.0, int(4));
        let mc_small = m_c_set(&m, tau, &small.1);
        let expected = g.element_from_int_entries(&[1, 2, 0, 1]).unwrap();
        assert_eq!(mc_small, vec![expected]);
        let mc_big = m_c_set(&m, tau, &big.1);
        assert!(mc_big.is_empty());
    }

    #[test]
    fn m_c_sets_for_sz8() {
        let g = FiniteGroup::build(Family::Sz, 8).unwrap();
        let setup = build_setup(&g, &SubgroupSpec::SzCenterSquare { rank: 2 }, None).unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        let fibers = chi.fibers();
        assert_eq!(fibers.fibers.len(), 2);
        let (v_small, small) = &fibers.fibers[0];
        let (v_big, big) = &fibers.fibers[1];
        assert_eq!(v_small, &int(7));
        assert_eq!(v_big, &int(455));
        let mc_small = m_c_set(&setup.m, setup.tau, small);
        assert_eq!(mc_small, vec![g.identity_index()]);
        assert!(m_c_set(&setup.m, setup.tau, big).is_empty());
    }

    #[test]
    fn suzuki_coset_verification_crosschecks_at_q8() {
        let g = FiniteGroup::build(Family::Sz, 8).unwrap();
        let chi = ClassFunction::induced_from_sylow(&g).unwrap();
        let summary = sz_character_by_cosets(&g, Some(&chi)).unwrap();
        assert_eq!(
            summary,
            SzCharacterSummary {
                degree: 455,
                value_on_p: 7,
                p_size: 4096,
                group_order: 29120,
            }
        );
    }
}
