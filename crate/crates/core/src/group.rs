//! Enumerated matrix groups over finite fields.
//!
//! A [`FiniteGroup`] stores every element as a packed canonical encoding
//! in one sorted vector, so element indices are dense, lookups are binary
//! searches, and the enumeration order is reproducible by construction.
//! For the projective family the canonical representative of `{A, -A}` is
//! the matrix whose entry-code sequence is lexicographically smaller.
//!
//! Families:
//!
//! * `sl2` — determinant-one 2x2 matrices, enumerated by a direct scan;
//! * `psl2` — `sl2` modulo center, canonicalized per element;
//! * `sl3` — determinant-one 3x3 matrices, closure of the transvections;
//! * `sz` — the Suzuki group `Sz(q)`, `q = 2^(2n+1)`, built from its
//!   standard 4x4 generators using the decomposition of the group into
//!   the lower-triangular subgroup `B = TU` and the cell `B tau U`; the
//!   construction is cross-checked against a plain generator closure at
//!   `q = 8` in the test suite, and every build asserts the exact group
//!   order.

use std::path::Path;
use std::sync::{Arc, OnceLock};

use crate::field::FiniteField;
use crate::matrix::{bits_per_entry, Matrix};
use crate::{cache, Error, Result, DEFAULT_ENUMERATION_BOUND};

/// The supported group families.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    Sl2,
    Psl2,
    Sl3,
    Sz,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "sl2" => Ok(Family::Sl2),
            "psl2" => Ok(Family::Psl2),
            "sl3" => Ok(Family::Sl3),
            "sz" => Ok(Family::Sz),
            other => Err(Error::Config(format!(
                "unknown family {other:?}; expected one of sl2, psl2, sl3, sz"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Sl2 => "sl2",
            Family::Psl2 => "psl2",
            Family::Sl3 => "sl3",
            Family::Sz => "sz",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Family::Sl2 | Family::Psl2 => 2,
            Family::Sl3 => 3,
            Family::Sz => 4,
        }
    }

    pub fn projective(&self) -> bool {
        matches!(self, Family::Psl2)
    }

    /// Splits `q` into `(p, m)` and validates it for the family.
    pub fn validate_q(&self, q: u32) -> Result<(u32, u32)> {
        let (p, m) = split_prime_power(q)
            .ok_or_else(|| Error::Config(format!("{q} is not a prime power")))?;
        match self {
            Family::Sl2 | Family::Psl2 | Family::Sl3 => {
                if q < 2 {
                    return Err(Error::Config("q must be at least 2".into()));
                }
            }
            Family::Sz => {
                if p != 2 || m < 3 || m % 2 == 0 {
                    return Err(Error::Config(format!(
                        "sz requires q = 2^(2n+1) with n >= 1, got {q}"
                    )));
                }
            }
        }
        Ok((p, m))
    }

    /// The exact group order.
    pub fn order(&self, q: u64) -> u64 {
        match self {
            Family::Sl2 => q * (q * q - 1),
            Family::Psl2 => q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 },
            Family::Sl3 => q * q * q * (q * q - 1) * (q * q * q - 1),
            Family::Sz => q * q * (q - 1) * (q * q + 1),
        }
    }
}

fn split_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Unipotent Jordan type of a 3x3 unipotent matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JordanType {
    /// The identity, type (1,1,1).
    One,
    /// A single 2-block, type (2,1).
    TwoOne,
    /// A regular unipotent, type (3).
    Three,
}

impl JordanType {
    pub fn label(&self) -> &'static str {
        match self {
            JordanType::One => "(1,1,1)",
            JordanType::TwoOne => "(2,1)",
            JordanType::Three => "(3)",
        }
    }
}

/// An enumerated matrix group with canonical sorted encodings.
#[derive(Debug)]
pub struct FiniteGroup {
    family: Family,
    q: u32,
    field: FiniteField,
    dim: usize,
    bits: u32,
    projective: bool,
    codes: Vec<u128>,
    identity_idx: u32,
    inverse_idx: OnceLock<Vec<u32>>,
    order_divisors: OnceLock<Vec<u64>>,
}

impl FiniteGroup {
    /// Enumerates the group with the default bound and no cache.
    pub fn build(family: Family, q: u32) -> Result<Arc<FiniteGroup>> {
        FiniteGroup::build_with(family, q, DEFAULT_ENUMERATION_BOUND, None)
    }

    /// Enumerates the group, optionally loading from / storing to an
    /// integrity-checked cache directory.
    ///
    /// A cache file that exists but fails verification is a hard error;
    /// the engine never silently recomputes over a corrupt artifact.
    pub fn build_with(
        family: Family,
        q: u32,
        bound: u64,
        cache_dir: Option<&Path>,
    ) -> Result<Arc<FiniteGroup>> {
        let (p, m) = family.validate_q(q)?;
        let expected = family.order(u64::from(q));
        if expected > bound {
            return Err(Error::Bound(format!(
                "{}({q}) has order {expected}, above the enumeration bound {bound}",
                family.name()
            )));
        }
        let field = FiniteField::new(p, m)?;

        let codes = if let Some(dir) = cache_dir {
            match cache::load_group(dir, family, q, field.modulus(), expected)? {
                Some(codes) => codes,
                None => {
                    let codes = enumerate(family, &field)?;
                    cache::store_group(dir, family, q, field.modulus(), &codes)?;
                    codes
                }
            }
        } else {
            enumerate(family, &field)?
        };

        if codes.len() as u64 != expected {
            return Err(Error::Invariant(format!(
                "{}({q}) enumeration produced {} elements, expected {expected}",
                family.name(),
                codes.len()
            )));
        }
        let dim = family.dim();
        let bits = bits_per_entry(field.q());
        let identity = Matrix::identity(dim).pack(bits);
        let identity_idx = codes
            .binary_search(&identity)
            .map_err(|_| Error::Invariant("identity not found in enumeration".into()))?
            as u32;

        Ok(Arc::new(FiniteGroup {
            family,
            q,
            field,
            dim,
            bits,
            projective: family.projective(),
            codes,
            identity_idx,
            inverse_idx: OnceLock::new(),
            order_divisors: OnceLock::new(),
        }))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn order(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &[u128] {
        &self.codes
    }

    pub fn identity_index(&self) -> u32 {
        self.identity_idx
    }

    /// Canonical representative (projective families pick the smaller of
    /// `{A, -A}` by entry-code sequence).
    pub fn canon_matrix(&self, m: Matrix) -> Matrix {
        if self.projective {
            let n = m.neg(&self.field);
            if n < m {
                return n;
            }
        }
        m
    }

    pub fn encode(&self, m: &Matrix) -> u128 {
        self.canon_matrix(*m).pack(self.bits)
    }

    pub fn index_of_code(&self, code: u128) -> Option<u32> {
        self.codes.binary_search(&code).ok().map(|i| i as u32)
    }

    pub fn index_of_matrix(&self, m: &Matrix) -> Option<u32> {
        self.index_of_code(self.encode(m))
    }

    pub fn matrix(&self, idx: u32) -> Matrix {
        Matrix::unpack(self.codes[idx as usize], self.dim, self.bits)
    }

    /// Builds an element from integer entries (reduced into the prime
    /// subfield), erroring when the matrix is not a member.
    pub fn element_from_int_entries(&self, entries: &[i64]) -> Result<u32> {
        let codes: Vec<u32> = entries.iter().map(|&v| self.field.embed_int(v)).collect();
        let m = Matrix::from_entries(self.dim, &codes)?;
        self.index_of_matrix(&m).ok_or_else(|| {
            Error::Config(format!(
                "matrix {entries:?} is not an element of {}({})",
                self.family.name(),
                self.q
            ))
        })
    }

    /// Index of a matrix that must be a member.
    pub fn expect_index(&self, m: &Matrix) -> u32 {
        self.index_of_matrix(m)
            .expect("product of group elements stays in the group")
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = self.matrix(a).mul(&self.matrix(b), &self.field);
        self.expect_index(&prod)
    }

    /// Dense index-to-inverse-index table, built on first use.
    fn inverse_table(&self) -> &[u32] {
        self.inverse_idx.get_or_init(|| {
            use rayon::prelude::*;
            (0..self.codes.len() as u32)
                .into_par_iter()
                .map(|i| {
                    let inv = self
                        .matrix(i)
                        .inverse(&self.field)
                        .expect("group elements are invertible");
                    self.expect_index(&inv)
                })
                .collect()
        })
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse_table()[a as usize]
    }

    /// `g x g^{-1}`.
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        let gm = self.matrix(g);
        let gi = gm.inverse(&self.field).expect("invertible");
        let r = gm.mul(&self.matrix(x), &self.field).mul(&gi, &self.field);
        self.expect_index(&r)
    }

    fn divisors(&self) -> &[u64] {
        self.order_divisors.get_or_init(|| {
            let n = self.codes.len() as u64;
            let mut divs: Vec<u64> = (1..=n).take_while(|d| d * d <= n).flat_map(|d| {
                if n % d == 0 {
                    if d * d == n {
                        vec![d]
                    } else {
                        vec![d, n / d]
                    }
                } else {
                    vec![]
                }
            })
            .collect();
            divs.sort_unstable();
            divs
        })
    }

    /// Multiplicative order, found as the least divisor `d` of `|G|` with
    /// `g^d = 1`.
    pub fn element_order(&self, idx: u32) -> u64 {
        let m = self.matrix(idx);
        let id = Matrix::identity(self.dim);
        for &d in self.divisors() {
            let p = m.pow(d, &self.field);
            let hit = if self.projective {
                p == id || p == id.neg(&self.field)
            } else {
                p == id
            };
            if hit {
                return d;
            }
        }
        unreachable!("element order divides the group order")
    }

    /// Membership in the set `P` of elements lying in some conjugate of
    /// the distinguished Sylow `p`-subgroup `U`:
    ///
    /// * `sl2` — trace 2 (the unipotent elements);
    /// * `psl2` — any representative has trace 2 or -2;
    /// * `sl3` — characteristic polynomial `(x - 1)^3`;
    /// * `sz` — the 2-elements, i.e. `g^4 = 1`.
    pub fn in_p(&self, idx: u32) -> bool {
        let m = self.matrix(idx);
        let f = &self.field;
        match self.family {
            Family::Sl2 => m.trace(f) == f.embed_int(2),
            Family::Psl2 => {
                let t = m.trace(f);
                t == f.embed_int(2) || t == f.embed_int(-2)
            }
            Family::Sl3 => {
                m.trace(f) == f.embed_int(3)
                    && m.principal_minor_sum2(f) == f.embed_int(3)
                    && m.det(f) == 1
            }
            Family::Sz => m.pow(4, f) == Matrix::identity(self.dim),
        }
    }

    /// Jordan type of a unipotent element of `sl3`, read off the rank of
    /// `u - 1`.
    pub fn jordan_type(&self, idx: u32) -> Result<JordanType> {
        if self.family != Family::Sl3 {
            return Err(Error::Config("jordan_type applies to sl3 only".into()));
        }
        if !self.in_p(idx) {
            return Err(Error::Invariant(format!(
                "element {idx} is not unipotent"
            )));
        }
        let m = self.matrix(idx);
        let n = m.sub(&Matrix::identity(self.dim), &self.field);
        match n.rank(&self.field) {
            0 => Ok(JordanType::One),
            1 => Ok(JordanType::TwoOne),
            2 => Ok(JordanType::Three),
            r => Err(Error::Invariant(format!(
                "unipotent 3x3 matrix with rank(u-1) = {r}"
            ))),
        }
    }

    /// Partition of the group into `(M, M)` double cosets.  Each coset is
    /// a sorted index list; cosets appear by ascending least element, so
    /// the representative of each coset is its first entry.
    pub fn double_cosets(&self, m_members: &[u32]) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in 0..self.order() as u32 {
            if seen[g as usize] {
                continue;
            }
            let mut coset = std::collections::BTreeSet::new();
            for &a in m_members {
                let ag = self.mul(a, g);
                for &b in m_members {
                    coset.insert(self.mul(ag, b));
                }
            }
            for &x in &coset {
                seen[x as usize] = true;
            }
            out.push(coset.into_iter().collect());
        }
        out
    }

    /// Orbit of a subgroup (as a sorted member-index set) under
    /// conjugation by the whole group, as a sorted list of sorted sets.
    pub fn conjugate_subgroup_orbit(&self, members: &[u32]) -> Vec<Vec<u32>> {
        let mut orbit = std::collections::BTreeSet::new();
        for g in 0..self.order() as u32 {
            let mut image: Vec<u32> = members.iter().map(|&x| self.conj(g, x)).collect();
            image.sort_unstable();
            orbit.insert(image);
        }
        orbit.into_iter().collect()
    }
}

/// The Suzuki unipotent element `u(a, b)` for `q = 2^(2n+1)`.
pub fn sz_u(f: &FiniteField, n: u32, a: u32, b: u32) -> Matrix {
    let th = |x: u32| f.frobenius(x, n + 1);
    let ta = th(a);
    let mut m = Matrix::identity(4);
    m.set(1, 0, a);
    m.set(2, 0, f.add(f.mul(a, ta), b));
    m.set(2, 1, ta);
    m.set(3, 0, f.add(f.add(f.mul(f.mul(a, a), ta), f.mul(a, b)), th(b)));
    m.set(3, 1, b);
    m.set(3, 2, a);
    m
}

/// The Suzuki torus element `t_k` for a nonzero `k`.
pub fn sz_t(f: &FiniteField, n: u32, k: u32) -> Matrix {
    let frob_n = |x: u32| f.frobenius(x, n);
    let a1 = frob_n(f.mul(k, f.frobenius(k, n + 1)));
    let a2 = frob_n(k);
    let mut m = Matrix::zero(4);
    m.set(0, 0, a1);
    m.set(1, 1, a2);
    m.set(2, 2, f.inv(a2).expect("nonzero"));
    m.set(3, 3, f.inv(a1).expect("nonzero"));
    m
}

/// The Suzuki Weyl representative: ones on the antidiagonal.
pub fn sz_tau() -> Matrix {
    let mut m = Matrix::zero(4);
    for i in 0..4 {
        m.set(i, 3 - i, 1);
    }
    m
}

fn enumerate(family: Family, field: &FiniteField) -> Result<Vec<u128>> {
    let mut codes = match family {
        Family::Sl2 => enumerate_sl2(field, false),
        Family::Psl2 => enumerate_sl2(field, true),
        Family::Sl3 => enumerate_sl3(field),
        Family::Sz => enumerate_sz(field),
    };
    codes.sort_unstable();
    let before = codes.len();
    codes.dedup();
    if family != Family::Psl2 && codes.len() != before {
        return Err(Error::Invariant(format!(
            "{} enumeration emitted duplicate elements",
            family.name()
        )));
    }
    Ok(codes)
}

fn enumerate_sl2(f: &FiniteField, projective: bool) -> Vec<u128> {
    let q = f.q();
    let bits = bits_per_entry(q);
    let mut out = Vec::with_capacity((u64::from(q) * u64::from(q * q - 1)) as usize);
    let mut push = |a: u32, b: u32, c: u32, d: u32| {
        let m = Matrix::from_entries(2, &[a, b, c, d]).unwrap();
        let m = if projective {
            let n = m.neg(f);
            if n < m {
                n
            } else {
                m
            }
        } else {
            m
        };
        out.push(m.pack(bits));
    };
    for a in 0..q {
        for b in 0..q {
            if a != 0 {
                let ai = f.inv(a).unwrap();
                for c in 0..q {
                    let d = f.mul(ai, f.add(1, f.mul(b, c)));
                    push(a, b, c, d);
                }
            } else if b != 0 {
                // det = -bc = 1, so c is determined and d is free.
                let c = f.neg(f.inv(b).unwrap());
                for d in 0..q {
                    push(0, b, c, d);
                }
            }
        }
    }
    out
}

fn enumerate_sl3(f: &FiniteField) -> Vec<u128> {
    let bits = bits_per_entry(f.q());
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for lam in 1..f.q() {
                let mut m = Matrix::identity(3);
                m.set(i, j, lam);
                gens.push(m);
            }
        }
    }
    bfs_closure(f, bits, 3, &gens)
}

/// Plain closure of a generator list under right multiplication.
pub fn bfs_closure(f: &FiniteField, bits: u32, dim: usize, gens: &[Matrix]) -> Vec<u128> {
    let mut seen = std::collections::HashSet::new();
    let id = Matrix::identity(dim);
    seen.insert(id.pack(bits));
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in gens {
            let next = m.mul(g, f);
            if seen.insert(next.pack(bits)) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn enumerate_sz(f: &FiniteField) -> Vec<u128> {
    let q = f.q();
    let n = (f.m() - 1) / 2;
    let bits = bits_per_entry(q);
    let tau = sz_tau();

    // Every unipotent u(a, b) and torus element t_k directly.
    let mut u_all = Vec::with_capacity((q as usize) * (q as usize));
    for a in 0..q {
        for b in 0..q {
            u_all.push(sz_u(f, n, a, b));
        }
    }
    let mut b_all = Vec::with_capacity((q as usize - 1) * u_all.len());
    for k in 1..q {
        let t = sz_t(f, n, k);
        for u in &u_all {
            b_all.push(t.mul(u, f));
        }
    }

    // G = B plus the big cell B tau U.
    let total = b_all.len() * (1 + u_all.len());
    let mut out = Vec::with_capacity(total);
    for b in &b_all {
        out.push(b.pack(bits));
    }
    for b in &b_all {
        let bt = b.mul(&tau, f);
        for u in &u_all {
            out.push(bt.mul(u, f).pack(bits));
        }
    }
    out
}
