//! Named subgroups, coset representatives and obstruction setups.
//!
//! For each group family the engine works with a distinguished Sylow
//! `p`-subgroup `U`, a small abelian subgroup `M` of central type, and a
//! representative `tau` of a free `(M, M)` double coset, i.e. one with
//! `M ∩ tau M tau^{-1} = {1}`.  This module builds those objects from
//! compact textual specs, picks the default `tau` for each case and
//! verifies the freeness requirement, classifies Klein subgroups of
//! `psl2`, and assembles the full [`ObstructionSetup`] consumed by the
//! obstruction engine.

use std::sync::Arc;

use crate::field::FiniteField;
use crate::group::{sz_u, Family, FiniteGroup};
use crate::matrix::Matrix;
use crate::subgroup::{CentralTypeWitness, Subgroup};
use crate::{Error, Result};

/// Textual spec of a named subgroup `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// `E=<t1,t2,...>`: the unipotent subgroup over the additive span of
    /// the listed field codes (`g` abbreviates the field generator).
    /// Valid for `sl2` and `psl2`.
    Additive { basis: Vec<String> },
    /// `L<j>`: the two-generated layer subgroups of the unitriangular
    /// group of `sl3`, `0 <= j <= p`.
    Sl3Layer { j: u32 },
    /// `Z2x2...`: an elementary abelian subgroup of the given rank inside
    /// the center of the Suzuki Sylow 2-subgroup.
    SzCenterSquare { rank: u32 },
    /// `klein:x=..,y=..`: the Klein subgroup of `psl2` attached to a
    /// solution of `x^2 + y^2 = -1`.
    Klein { x: u32, y: u32 },
}

impl SubgroupSpec {
    /// Parses a subgroup spec, accepting an optional `family:` prefix
    /// that must agree with `family` when present.
    pub fn parse(family: Family, input: &str) -> Result<SubgroupSpec> {
        let mut s = input.trim();
        for fam in ["sl2", "psl2", "sl3", "sz"] {
            let prefix = format!("{fam}:");
            // "klein:" is a spec form, not a family prefix.
            if s.len() > prefix.len() && s[..prefix.len()].eq_ignore_ascii_case(&prefix) {
                if fam != family.name() {
                    return Err(Error::Config(format!(
                        "subgroup spec {input:?} names family {fam}, got {}",
                        family.name()
                    )));
                }
                s = &s[prefix.len()..];
                break;
            }
        }
        if let Some(rest) = s.strip_prefix("E=") {
            if !matches!(family, Family::Sl2 | Family::Psl2) {
                return Err(Error::Config(format!(
                    "additive spec {input:?} applies to sl2/psl2 only"
                )));
            }
            let basis: Vec<String> = rest
                .split(',')
                .map(|t| t.trim().to_string())
                .filter(|t| !t.is_empty())
                .collect();
            if basis.is_empty() {
                return Err(Error::Config("empty additive basis".into()));
            }
            return Ok(SubgroupSpec::Additive { basis });
        }
        if let Some(rest) = s.strip_prefix("klein:") {
            if family != Family::Psl2 {
                return Err(Error::Config("klein specs apply to psl2 only".into()));
            }
            let mut x = None;
            let mut y = None;
            for part in rest.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Config(format!("bad klein parameter {part:?}")))?;
                let code: u32 = v.trim().parse().map_err(|_| {
                    Error::Config(format!("klein parameter {part:?} is not a code"))
                })?;
                match k.trim() {
                    "x" => x = Some(code),
                    "y" => y = Some(code),
                    other => {
                        return Err(Error::Config(format!("unknown klein key {other:?}")))
                    }
                }
            }
            let (x, y) = x.zip(y).ok_or_else(|| {
                Error::Config("klein spec needs both x= and y=".into())
            })?;
            return Ok(SubgroupSpec::Klein { x, y });
        }
        if let Some(rest) = s.strip_prefix('L') {
            if family != Family::Sl3 {
                return Err(Error::Config("L specs apply to sl3 only".into()));
            }
            let j: u32 = rest
                .parse()
                .map_err(|_| Error::Config(format!("bad layer index in {input:?}")))?;
            return Ok(SubgroupSpec::Sl3Layer { j });
        }
        if let Some(rest) = s.strip_prefix('Z') {
            if family != Family::Sz {
                return Err(Error::Config("Z specs apply to sz only".into()));
            }
            let parts: Vec<&str> = rest.split('x').collect();
            if parts.is_empty() || parts.iter().any(|&p| p != "2") {
                return Err(Error::Config(format!(
                    "bad center-square spec {input:?}; expected Z2x2[x2x2]"
                )));
            }
            return Ok(SubgroupSpec::SzCenterSquare {
                rank: parts.len() as u32,
            });
        }
        Err(Error::Config(format!("unrecognized subgroup spec {input:?}")))
    }

    /// Canonical textual form used in report echoes.
    pub fn canonical_string(&self) -> String {
        match self {
            SubgroupSpec::Additive { basis } => format!("E={}", basis.join(",")),
            SubgroupSpec::Sl3Layer { j } => format!("L{j}"),
            SubgroupSpec::SzCenterSquare { rank } => {
                format!("Z{}", vec!["2"; *rank as usize].join("x"))
            }
            SubgroupSpec::Klein { x, y } => format!("klein:x={x},y={y}"),
        }
    }
}

/// Resolves a basis token (`g` or a numeric code) to a field code.
fn resolve_token(f: &FiniteField, token: &str) -> Result<u32> {
    if token == "g" {
        if f.m() == 1 {
            return Err(Error::Config(
                "token g requires a proper extension field".into(),
            ));
        }
        return Ok(f.p());
    }
    let code: u32 = token
        .parse()
        .map_err(|_| Error::Config(format!("bad basis token {token:?}")))?;
    if code >= f.q() {
        return Err(Error::Config(format!(
            "basis code {code} out of range for GF({})",
            f.q()
        )));
    }
    Ok(code)
}

/// Additive span of field codes.
pub fn additive_span(f: &FiniteField, basis: &[u32]) -> Vec<u32> {
    let mut span = std::collections::BTreeSet::new();
    span.insert(0u32);
    for &b in basis {
        let current: Vec<u32> = span.iter().copied().collect();
        let mut scaled = b;
        for _ in 1..f.p() {
            for &x in &current {
                span.insert(f.add(x, scaled));
            }
            scaled = f.add(scaled, b);
        }
    }
    span.into_iter().collect()
}

/// Distinguished Sylow `p`-subgroup `U` of each family: upper
/// unitriangular matrices for the linear families, `{u(a, b)}` for `sz`.
pub fn sylow_subgroup(g: &Arc<FiniteGroup>) -> Result<Subgroup> {
    let f = g.field();
    let q = f.q();
    let members: Vec<u32> = match g.family() {
        Family::Sl2 | Family::Psl2 => (0..q)
            .map(|t| {
                let m = Matrix::from_entries(2, &[1, t, 0, 1]).unwrap();
                g.expect_index(&m)
            })
            .collect(),
        Family::Sl3 => {
            let mut out = Vec::with_capacity((q * q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        let m = Matrix::from_entries(3, &[1, a, b, 0, 1, c, 0, 0, 1]).unwrap();
                        out.push(g.expect_index(&m));
                    }
                }
            }
            out
        }
        Family::Sz => {
            let n = (f.m() - 1) / 2;
            let mut out = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    out.push(g.expect_index(&sz_u(f, n, a, b)));
                }
            }
            out
        }
    };
    Subgroup::from_members(g, members, "U")
}

/// Center of the Suzuki Sylow 2-subgroup: `{u(0, b)}`.
pub fn sz_center(g: &Arc<FiniteGroup>) -> Result<Subgroup> {
    if g.family() != Family::Sz {
        return Err(Error::Config("sz_center applies to sz only".into()));
    }
    let f = g.field();
    let n = (f.m() - 1) / 2;
    let members: Vec<u32> = (0..f.q())
        .map(|b| g.expect_index(&sz_u(f, n, 0, b)))
        .collect();
    Subgroup::from_members(g, members, "Z(U)")
}

/// Least non-square code of an odd field.
pub fn least_nonsquare(f: &FiniteField) -> Option<u32> {
    let squares: std::collections::BTreeSet<u32> = (0..f.q()).map(|a| f.mul(a, a)).collect();
    (1..f.q()).find(|c| !squares.contains(c))
}

/// Split torus: diagonal matrices `diag(a, a^{-1})`.
pub fn torus_split(g: &Arc<FiniteGroup>) -> Result<Subgroup> {
    if g.dim() != 2 {
        return Err(Error::Config("torus_split applies to sl2/psl2".into()));
    }
    let f = g.field();
    let members: Vec<u32> = (1..f.q())
        .map(|a| {
            let m = Matrix::from_entries(2, &[a, 0, 0, f.inv(a).unwrap()]).unwrap();
            g.expect_index(&m)
        })
        .collect();
    Subgroup::from_members(g, members, "T")
}

/// Non-split torus built from `d'(a + b zeta) = (a b; eps*b a)` with
/// `eps` the least non-square; `zeta` with `zeta^2 = eps` is never
/// materialized.
pub fn torus_nonsplit(g: &Arc<FiniteGroup>) -> Result<Subgroup> {
    if g.dim() != 2 {
        return Err(Error::Config("torus_nonsplit applies to sl2/psl2".into()));
    }
    let f = g.field();
    if f.q() % 2 == 0 {
        return Err(Error::Config("torus_nonsplit requires odd q".into()));
    }
    let eps = least_nonsquare(f)
        .ok_or_else(|| Error::Invariant("odd field without a non-square".into()))?;
    let mut members = Vec::new();
    for a in 0..f.q() {
        for b in 0..f.q() {
            // Norm condition det = a^2 - eps b^2 = 1.
            if f.sub(f.mul(a, a), f.mul(eps, f.mul(b, b))) == 1 {
                let m = Matrix::from_entries(2, &[a, b, f.mul(eps, b), a]).unwrap();
                members.push(g.expect_index(&m));
            }
        }
    }
    Subgroup::from_members(g, members, "T'")
}

/// Builds the named subgroup `M`.
pub fn named_m(g: &Arc<FiniteGroup>, spec: &SubgroupSpec) -> Result<Subgroup> {
    let f = g.field();
    match spec {
        SubgroupSpec::Additive { basis } => {
            if !matches!(g.family(), Family::Sl2 | Family::Psl2) {
                return Err(Error::Config("additive specs apply to sl2/psl2".into()));
            }
            let codes: Vec<u32> = basis
                .iter()
                .map(|t| resolve_token(f, t))
                .collect::<Result<_>>()?;
            let span = additive_span(f, &codes);
            if span.binary_search(&1).is_err() {
                return Err(Error::Config(
                    "additive subgroup E must contain 1".into(),
                ));
            }
            let members: Vec<u32> = span
                .iter()
                .map(|&t| {
                    let m = Matrix::from_entries(2, &[1, t, 0, 1]).unwrap();
                    g.expect_index(&m)
                })
                .collect();
            Subgroup::from_members(g, members, &format!("U_E[{}]", basis.join(",")))
        }
        SubgroupSpec::Sl3Layer { j } => {
            if g.family() != Family::Sl3 {
                return Err(Error::Config("L specs apply to sl3 only".into()));
            }
            let p = f.p();
            if *j > p {
                return Err(Error::Config(format!(
                    "layer index {j} out of range; expected 0..={p}"
                )));
            }
            let g1 = Matrix::from_entries(3, &[1, 1, 0, 0, 1, 0, 0, 0, 1]).unwrap();
            let g2 = Matrix::from_entries(3, &[1, 0, 1, 0, 1, 0, 0, 0, 1]).unwrap();
            let g3 = Matrix::from_entries(3, &[1, 0, 0, 0, 1, 1, 0, 0, 1]).unwrap();
            let gens = if *j == p {
                vec![g.expect_index(&g2), g.expect_index(&g1)]
            } else {
                let g3g1j = g3.mul(&g1.pow(u64::from(*j), f), f);
                vec![g.expect_index(&g2), g.expect_index(&g3g1j)]
            };
            Ok(Subgroup::closure(g, &gens, &format!("L{j}")))
        }
        SubgroupSpec::SzCenterSquare { rank } => {
            if g.family() != Family::Sz {
                return Err(Error::Config("Z specs apply to sz only".into()));
            }
            if *rank % 2 != 0 || *rank == 0 {
                return Err(Error::Config(
                    "center-square rank must be even and positive".into(),
                ));
            }
            if 1u64 << rank > u64::from(f.q()) {
                return Err(Error::Config(format!(
                    "rank {rank} exceeds the center dimension"
                )));
            }
            let n = (f.m() - 1) / 2;
            let members: Vec<u32> = (0..1u32 << rank)
                .map(|b| g.expect_index(&sz_u(f, n, 0, b)))
                .collect();
            Subgroup::from_members(g, members, &spec.canonical_string())
        }
        SubgroupSpec::Klein { x, y } => {
            if g.family() != Family::Psl2 {
                return Err(Error::Config("klein specs apply to psl2 only".into()));
            }
            if *x >= f.q() || *y >= f.q() {
                return Err(Error::Config("klein parameters out of range".into()));
            }
            let circle = f.add(f.mul(*x, *x), f.mul(*y, *y));
            if circle != f.neg(1) {
                return Err(Error::Config(format!(
                    "klein parameters x={x}, y={y} do not satisfy x^2 + y^2 = -1"
                )));
            }
            let r = Matrix::from_entries(2, &[0, 1, f.neg(1), 0]).unwrap();
            let s = Matrix::from_entries(2, &[*x, *y, *y, f.neg(*x)]).unwrap();
            let k = Subgroup::closure(
                g,
                &[g.expect_index(&r), g.expect_index(&s)],
                &spec.canonical_string(),
            );
            if k.order() != 4 {
                return Err(Error::Invariant(format!(
                    "klein construction produced order {}",
                    k.order()
                )));
            }
            Ok(k)
        }
    }
}

/// Scans for the least unit `lambda` with `lambda`, `lambda*x` and
/// `lambda*y` all avoiding `{2, -2}`; defined for prime fields with
/// `p > 7` (no admissible unit needs to exist below that).
pub fn pick_lambda(f: &FiniteField, x: u32, y: u32) -> Result<u32> {
    let two = f.embed_int(2);
    let minus_two = f.embed_int(-2);
    let bad = |c: u32| c == two || c == minus_two;
    (1..f.q())
        .find(|&l| !bad(l) && !bad(f.mul(l, x)) && !bad(f.mul(l, y)))
        .ok_or_else(|| Error::Invariant("no admissible lambda exists".into()))
}

/// All solutions of `x^2 + y^2 = -1`, sorted by code pair.  The solution
/// count is `q - 1` when `q = 1 mod 4` and `q + 1` otherwise, and is
/// verified.
pub fn solve_circle(f: &FiniteField) -> Result<Vec<(u32, u32)>> {
    if f.q() % 2 == 0 {
        return Err(Error::Config("the circle scan requires odd q".into()));
    }
    let target = f.neg(1);
    let mut out = Vec::new();
    for x in 0..f.q() {
        let xx = f.mul(x, x);
        for y in 0..f.q() {
            if f.add(xx, f.mul(y, y)) == target {
                out.push((x, y));
            }
        }
    }
    let expected = if f.q() % 4 == 1 { f.q() - 1 } else { f.q() + 1 };
    if out.len() != expected as usize {
        return Err(Error::Invariant(format!(
            "circle solution count {} differs from {expected}",
            out.len()
        )));
    }
    Ok(out)
}

/// Conjugacy classification of the Klein subgroups of `psl2(q)`.
#[derive(Clone, Debug)]
pub struct KleinClassification {
    /// All Klein subgroups, each a sorted member-index set, sorted.
    pub subgroups: Vec<Vec<u32>>,
    /// One entry per conjugacy class, by ascending representative.
    pub orbits: Vec<KleinOrbit>,
    /// Index of the reference involution used for the containment count.
    pub fixed_involution: u32,
    /// Number of Klein subgroups containing the reference involution.
    pub containing_fixed: usize,
}

/// One conjugacy class of Klein subgroups.
#[derive(Clone, Debug)]
pub struct KleinOrbit {
    pub representative: Vec<u32>,
    pub size: usize,
}

/// Enumerates every Klein subgroup as a pair of commuting involutions,
/// in parallel with a deterministic sorted merge, then partitions the
/// result into conjugation orbits.
pub fn classify_klein(g: &Arc<FiniteGroup>) -> Result<KleinClassification> {
    if g.family() != Family::Psl2 || g.q() % 2 == 0 {
        return Err(Error::Config(
            "klein classification applies to psl2 with odd q".into(),
        ));
    }
    let involutions: Vec<u32> = (0..g.order() as u32)
        .filter(|&i| i != g.identity_index() && g.element_order(i) == 2)
        .collect();

    use rayon::prelude::*;
    let found: Vec<Vec<u32>> = involutions
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, &a)| {
            let g = Arc::clone(g);
            let involutions = &involutions;
            involutions[i + 1..].iter().filter_map(move |&b| {
                if g.mul(a, b) != g.mul(b, a) {
                    return None;
                }
                let mut k = vec![g.identity_index(), a, b, g.mul(a, b)];
                k.sort_unstable();
                k.dedup();
                (k.len() == 4).then_some(k)
            })
        })
        .collect();
    let subgroups: Vec<Vec<u32>> = {
        let set: std::collections::BTreeSet<Vec<u32>> = found.into_iter().collect();
        set.into_iter().collect()
    };

    let mut assigned = vec![false; subgroups.len()];
    let mut orbits = Vec::new();
    for (i, k) in subgroups.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let orbit = g.conjugate_subgroup_orbit(k);
        for image in &orbit {
            if let Ok(pos) = subgroups.binary_search(image) {
                assigned[pos] = true;
            } else {
                return Err(Error::Invariant(
                    "conjugate of a Klein subgroup is not a Klein subgroup".into(),
                ));
            }
        }
        orbits.push(KleinOrbit {
            representative: k.clone(),
            size: orbit.len(),
        });
    }

    let fixed = g.element_from_int_entries(&[0, 1, -1, 0])?;
    let containing = subgroups
        .iter()
        .filter(|k| k.binary_search(&fixed).is_ok())
        .count();
    Ok(KleinClassification {
        subgroups,
        orbits,
        fixed_involution: fixed,
        containing_fixed: containing,
    })
}

/// An even-dimensional additive subspace of the field containing 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveSubspace {
    pub basis: Vec<u32>,
    pub members: Vec<u32>,
}

/// All even-dimensional `GF(p)`-subspaces of `GF(p^m)` containing 1;
/// these index the central-type `p`-subgroups of the unipotent subgroup
/// up to the choice of basis.
pub fn central_type_subspaces(f: &FiniteField) -> Vec<AdditiveSubspace> {
    let mut all = std::collections::BTreeSet::new();
    let seed = additive_span(f, &[1]);
    let mut queue = vec![seed.clone()];
    all.insert(seed);
    while let Some(s) = queue.pop() {
        for v in 0..f.q() {
            if s.binary_search(&v).is_ok() {
                continue;
            }
            let mut basis = s.clone();
            basis.push(v);
            let bigger = additive_span(f, &basis);
            if all.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let p = u64::from(f.p());
    all.into_iter()
        .filter(|s| {
            let mut dim = 0u32;
            let mut size = 1u64;
            while size < s.len() as u64 {
                size *= p;
                dim += 1;
            }
            dim % 2 == 0 && dim >= 2
        })
        .map(|members| {
            // Greedy basis: least elements that enlarge the span.
            let mut basis: Vec<u32> = vec![1];
            let mut span = additive_span(f, &basis);
            for &v in &members {
                if span.binary_search(&v).is_err() {
                    basis.push(v);
                    span = additive_span(f, &basis);
                }
            }
            AdditiveSubspace { basis, members }
        })
        .collect()
}

/// The class function driving an obstruction setup.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CharacterKind {
    /// The character induced from the trivial character of `U`.
    InducedSylow,
    /// The tabulated virtual character used for `psl2` Klein setups with
    /// `q = 1 mod 4`.
    PhiQ1,
    /// The tabulated class function for `psl2(5)`.
    Phi5,
    /// The tabulated class function for `psl2(7)`.
    Phi7,
}

impl CharacterKind {
    pub fn name(&self) -> &'static str {
        match self {
            CharacterKind::InducedSylow => "induced_sylow",
            CharacterKind::PhiQ1 => "phi_q1",
            CharacterKind::Phi5 => "phi_5",
            CharacterKind::Phi7 => "phi_7",
        }
    }
}

/// A fully assembled obstruction setup.
#[derive(Clone, Debug)]
pub struct ObstructionSetup {
    pub group: Arc<FiniteGroup>,
    pub m: Subgroup,
    pub tau: u32,
    pub character_kind: CharacterKind,
    pub spec: SubgroupSpec,
    pub witness: CentralTypeWitness,
    /// Klein cases: the unit scaling the lower-triangular `tau`.
    pub lambda: Option<u32>,
    /// Klein cases: the circle parameters.
    pub xy: Option<(u32, u32)>,
    /// Additive `psl2` case: whether a square root of -4 lies in `E`.
    pub sqrt_minus4_in_e: Option<bool>,
}

fn default_tau(g: &Arc<FiniteGroup>, spec: &SubgroupSpec, lambda: Option<u32>) -> Result<u32> {
    let f = g.field();
    let m = match (g.family(), spec) {
        (Family::Sl2 | Family::Psl2, SubgroupSpec::Additive { .. }) => {
            Matrix::from_entries(2, &[0, f.neg(1), 1, 0]).unwrap()
        }
        (Family::Psl2, SubgroupSpec::Klein { .. }) => {
            let l = lambda.expect("klein setups fix lambda before tau");
            Matrix::from_entries(2, &[1, 0, l, 1]).unwrap()
        }
        (Family::Sl3, SubgroupSpec::Sl3Layer { j }) => {
            if *j == f.p() {
                Matrix::from_entries(3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]).unwrap()
            } else {
                Matrix::from_entries(3, &[0, 0, f.neg(1), 0, 1, 0, 1, 0, 0]).unwrap()
            }
        }
        (Family::Sz, SubgroupSpec::SzCenterSquare { .. }) => crate::group::sz_tau(),
        _ => {
            return Err(Error::Config(
                "no default tau for this family/spec combination".into(),
            ))
        }
    };
    g.index_of_matrix(&m)
        .ok_or_else(|| Error::Invariant("default tau is not a group element".into()))
}

/// Verifies that `tau` generates a free double coset for `M`.
pub fn verify_tau(m: &Subgroup, tau: u32) -> Result<()> {
    if m.contains(tau) {
        return Err(Error::Invariant("tau lies in M".into()));
    }
    let inter = m.intersect_conjugate(tau);
    if inter != vec![m.parent().identity_index()] {
        return Err(Error::Invariant(format!(
            "M ∩ tau M tau^-1 has order {}, expected 1",
            inter.len()
        )));
    }
    Ok(())
}

/// Assembles the obstruction setup for a named subgroup, choosing the
/// character kind, `lambda` and `tau` per case, and verifying the
/// central-type and free-double-coset requirements.
pub fn build_setup(
    g: &Arc<FiniteGroup>,
    spec: &SubgroupSpec,
    tau_override: Option<&[u32]>,
) -> Result<ObstructionSetup> {
    let f = g.field();
    let m = named_m(g, spec)?;
    let witness = m.central_type()?;
    if !witness.is_central_type() {
        return Err(Error::Config(format!(
            "subgroup {} has invariant factors {:?}; not of central type",
            m.label(),
            witness.invariant_factors
        )));
    }

    let mut lambda = None;
    let mut xy = None;
    let mut sqrt_minus4_in_e = None;
    let character_kind = match (g.family(), spec) {
        (Family::Sl2, SubgroupSpec::Additive { .. }) => CharacterKind::InducedSylow,
        (Family::Psl2, SubgroupSpec::Additive { basis }) => {
            let codes: Vec<u32> = basis
                .iter()
                .map(|t| resolve_token(f, t))
                .collect::<Result<_>>()?;
            let span = additive_span(f, &codes);
            let in_e = f
                .sqrt(f.neg(f.embed_int(4)))
                .map(|r| span.binary_search(&r).is_ok())
                .unwrap_or(false);
            sqrt_minus4_in_e = Some(in_e);
            CharacterKind::InducedSylow
        }
        (Family::Sl3, SubgroupSpec::Sl3Layer { .. }) => CharacterKind::InducedSylow,
        (Family::Sz, SubgroupSpec::SzCenterSquare { .. }) => CharacterKind::InducedSylow,
        (Family::Psl2, SubgroupSpec::Klein { x, y }) => {
            xy = Some((*x, *y));
            let q = f.q();
            let p = f.p();
            if q == 5 {
                lambda = Some(1);
                CharacterKind::Phi5
            } else if q == 7 {
                lambda = Some(1);
                CharacterKind::Phi7
            } else if p == 3 {
                // Least code outside the prime subfield.
                lambda = Some(p);
                CharacterKind::PhiQ1
            } else if p > 7 && f.m() == 1 {
                lambda = Some(pick_lambda(f, *x, *y)?);
                if q % 4 == 1 {
                    CharacterKind::PhiQ1
                } else {
                    CharacterKind::InducedSylow
                }
            } else {
                return Err(Error::Config(format!(
                    "klein case for q = {q} is not covered"
                )));
            }
        }
        _ => {
            return Err(Error::Config(
                "unsupported family/spec combination".into(),
            ))
        }
    };

    let tau = match tau_override {
        Some(entries) => {
            let mt = Matrix::from_entries(g.dim(), entries)?;
            g.index_of_matrix(&mt)
                .ok_or_else(|| Error::Config("tau override is not a group element".into()))?
        }
        None => default_tau(g, spec, lambda)?,
    };
    verify_tau(&m, tau)?;

    Ok(ObstructionSetup {
        group: Arc::clone(g),
        m,
        tau,
        character_kind,
        spec: spec.clone(),
        witness,
        lambda,
        xy,
        sqrt_minus4_in_e,
    })
}

/// `Theta(A) = J (A^{-1})^T J^{-1}`, the outer duality of `sl3`.
pub fn sl3_duality(g: &FiniteGroup, idx: u32) -> u32 {
    let f = g.field();
    let j = sl3_duality_j(f);
    let ji = j.inverse(f).expect("J is invertible");
    let a = g.matrix(idx);
    let at = a.inverse(f).expect("invertible").transpose();
    g.expect_index(&j.mul(&at, f).mul(&ji, f))
}

/// The fixed antidiagonal form used by [`sl3_duality`].
pub fn sl3_duality_j(f: &FiniteField) -> Matrix {
    Matrix::from_entries(3, &[0, 0, 1, 0, f.neg(1), 0, 1, 0, 0]).unwrap()
}
