//! Finite fields `GF(p^m)` with dense operation tables.
//!
//! Elements are codes `0..q` interpreted as base-`p` digit strings, least
//! significant digit first: code `c` is the polynomial `sum_i d_i x^i`
//! where `c = sum_i d_i p^i`.  The modulus is the canonical irreducible:
//! the monic irreducible of degree `m` whose coefficient tuple (constant
//! term first) is smallest when read as a base-`p` integer.  This is a
//! deterministic table-free convention; it intentionally differs from the
//! Conway-polynomial convention of general computer-algebra systems.
//!
//! All four operations are precomputed as dense tables, so group
//! enumeration and character evaluation reduce to array lookups.

use crate::{Error, Result};

/// Largest field size for which dense tables are built.
pub const DEFAULT_FIELD_BOUND: u64 = 4096;

/// A finite field `GF(p^m)` with dense operation tables.
#[derive(Debug)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    add_t: Vec<u32>,
    mul_t: Vec<u32>,
    neg_t: Vec<u32>,
    inv_t: Vec<u32>,
}

/// An element of a [`FiniteField`], carrying its field reference.
///
/// Arithmetic between elements of different field instances is a
/// programming error and panics; use codes and the field methods on hot
/// paths.
#[derive(Clone, Copy, Debug)]
pub struct FieldElement<'f> {
    field: &'f FiniteField,
    code: u32,
}

mod poly {
    //! Polynomials over `GF(p)` as coefficient vectors, constant first.

    pub fn trim(mut f: Vec<u32>) -> Vec<u32> {
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
        f
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] += u64::from(ai) * u64::from(bj);
            }
        }
        trim(out.iter().map(|&c| (c % u64::from(p)) as u32).collect())
    }

    /// Remainder of `a` modulo the monic polynomial `b`.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        debug_assert_eq!(*b.last().unwrap(), 1, "divisor must be monic");
        let mut r: Vec<u32> = a.to_vec();
        let db = b.len() - 1;
        while r.len() > db && r.len() > 1 {
            let lead = *r.last().unwrap();
            if lead != 0 {
                let shift = r.len() - 1 - db;
                for (k, &bk) in b.iter().enumerate() {
                    let idx = shift + k;
                    let v = (u64::from(r[idx]) + u64::from(p) * u64::from(lead)
                        - u64::from(lead) * u64::from(bk) % u64::from(p))
                        % u64::from(p);
                    r[idx] = v as u32;
                }
            }
            r.pop();
            r = trim(r);
            if r.len() <= db {
                break;
            }
        }
        trim(r)
    }

    pub fn is_zero(f: &[u32]) -> bool {
        f.iter().all(|&c| c == 0)
    }

    /// Irreducibility by exhaustive monic divisor search, adequate for the
    /// small degrees in scope.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 0 || *f.last().unwrap() != 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut g = digits(code, p, d);
                g.push(1);
                if is_zero(&rem(f, &g, p)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push((code % u64::from(p)) as u32);
            code /= u64::from(p);
        }
        out
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The canonical modulus for `GF(p^m)`: for `m = 1` the polynomial `x`;
/// otherwise the first monic irreducible of degree `m` in ascending
/// base-`p` code order of its lower coefficient tuple.
pub fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = u64::from(p).pow(m);
    for code in 0..count {
        let mut f = poly::digits(code, p, m as usize);
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

impl FiniteField {
    /// Builds `GF(p^m)` with the canonical modulus and dense tables.
    pub fn new(p: u32, m: u32) -> Result<FiniteField> {
        FiniteField::with_bound(p, m, DEFAULT_FIELD_BOUND)
    }

    /// Builds `GF(p^m)` rejecting sizes above `bound`.
    pub fn with_bound(p: u32, m: u32, bound: u64) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Config("extension degree must be at least 1".into()));
        }
        let q = u64::from(p).pow(m);
        if q > bound {
            return Err(Error::Bound(format!(
                "field size {q} exceeds the bound {bound}"
            )));
        }
        let q = q as u32;
        let modulus = canonical_modulus(p, m);

        let qs = q as usize;
        let mut add_t = vec![0u32; qs * qs];
        let mut mul_t = vec![0u32; qs * qs];
        let mut neg_t = vec![0u32; qs];
        let mut inv_t = vec![0u32; qs];

        let decode = |c: u32| poly::digits(u64::from(c), p, m as usize);
        let encode = |f: &[u32]| -> u32 {
            let mut c = 0u64;
            for &d in f.iter().rev() {
                c = c * u64::from(p) + u64::from(d);
            }
            c as u32
        };

        for a in 0..q {
            let fa = decode(a);
            let neg: Vec<u32> = fa.iter().map(|&d| (p - d) % p).collect();
            neg_t[a as usize] = encode(&neg);
            for b in a..q {
                let fb = decode(b);
                let sum: Vec<u32> = fa.iter().zip(&fb).map(|(&x, &y)| (x + y) % p).collect();
                let s = encode(&sum);
                add_t[a as usize * qs + b as usize] = s;
                add_t[b as usize * qs + a as usize] = s;
                let prod = poly::rem(&poly::mul(&fa, &fb, p), &modulus, p);
                let mut padded = prod;
                padded.resize(m as usize, 0);
                let pr = encode(&padded);
                mul_t[a as usize * qs + b as usize] = pr;
                mul_t[b as usize * qs + a as usize] = pr;
            }
        }
        for a in 1..q {
            for b in 1..q {
                if mul_t[a as usize * qs + b as usize] == 1 {
                    inv_t[a as usize] = b;
                    break;
                }
            }
            debug_assert_ne!(inv_t[a as usize], 0, "every nonzero element has an inverse");
        }

        Ok(FiniteField {
            p,
            m,
            q,
            modulus,
            add_t,
            mul_t,
            neg_t,
            inv_t,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, length `m + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add_t[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_t[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_t[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse of a nonzero code.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::Invariant("inversion of zero in a finite field".into()));
        }
        Ok(self.inv_t[a as usize])
    }

    /// `a^n` by square-and-multiply.
    pub fn powi(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// The Frobenius power `a^(p^k)`.
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        let mut x = a;
        for _ in 0..k {
            x = self.powi(x, u64::from(self.p));
        }
        x
    }

    /// Smallest code `b` with `b^2 = a`, if `a` is a square.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        (0..self.q).find(|&b| self.mul(b, b) == a)
    }

    /// The image of an integer in the prime subfield.
    pub fn embed_int(&self, n: i64) -> u32 {
        n.rem_euclid(i64::from(self.p)) as u32
    }

    /// Wraps a code as a checked element.
    pub fn element(&self, code: u32) -> Result<FieldElement<'_>> {
        if code >= self.q {
            return Err(Error::Config(format!(
                "code {code} out of range for GF({})",
                self.q
            )));
        }
        Ok(FieldElement { field: self, code })
    }
}

impl<'f> FieldElement<'f> {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &'f FiniteField {
        self.field
    }

    pub fn inv(&self) -> Result<FieldElement<'f>> {
        Ok(FieldElement {
            field: self.field,
            code: self.field.inv(self.code)?,
        })
    }

    pub fn pow(&self, n: u64) -> FieldElement<'f> {
        FieldElement {
            field: self.field,
            code: self.field.powi(self.code, n),
        }
    }

    fn same_field(&self, other: &FieldElement<'f>) {
        assert!(
            std::ptr::eq(self.field, other.field),
            "elements of different field instances"
        );
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.code == other.code
    }
}

impl Eq for FieldElement<'_> {}

impl<'f> std::ops::Add for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn add(self, rhs: Self) -> Self::Output {
        self.same_field(&rhs);
        FieldElement {
            field: self.field,
            code: self.field.add(self.code, rhs.code),
        }
    }
}

impl<'f> std::ops::Sub for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.same_field(&rhs);
        FieldElement {
            field: self.field,
            code: self.field.sub(self.code, rhs.code),
        }
    }
}

impl<'f> std::ops::Mul for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.same_field(&rhs);
        FieldElement {
            field: self.field,
            code: self.field.mul(self.code, rhs.code),
        }
    }
}

impl<'f> std::ops::Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;
    fn neg(self) -> Self::Output {
        FieldElement {
            field: self.field,
            code: self.field.neg(self.code),
        }
    }
}
