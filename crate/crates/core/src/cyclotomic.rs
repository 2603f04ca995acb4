//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] value of order `n` is a polynomial in a primitive
//! `n`-th root of unity `z`, reduced modulo the `n`-th cyclotomic
//! polynomial, with rational coefficients.  Order 1 plays the role of
//! the plain rationals: [`num_traits::Zero`] and [`num_traits::One`]
//! produce order-1 values, and arithmetic silently promotes them into
//! any other order.  Mixing two orders that are both greater than 1 is
//! a programming error and panics.

use std::sync::Mutex;

use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::OnceLock;

use crate::rational::int;
use crate::Rational;

/// Coefficients are stored constant-term first.
type Poly = Vec<Rational>;

fn poly_trim(p: &mut Poly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] += ca * cb;
        }
    }
    poly_trim(&mut out);
    out
}

/// Division with remainder by a nonzero divisor; returns `(quotient, remainder)`.
fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Poly, Poly) {
    assert!(!den.is_empty(), "polynomial division by zero");
    let mut rem: Poly = num.to_vec();
    poly_trim(&mut rem);
    let dd = den.len() - 1;
    let lead = den.last().unwrap();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.last().unwrap() / lead;
        for (i, d) in den.iter().enumerate() {
            let v = &c * d;
            rem[k + i] -= v;
        }
        poly_trim(&mut rem);
        quot[k] = c;
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// The `n`-th cyclotomic polynomial, constant term first.
///
/// Computed from `x^n - 1 = prod over d | n of Phi_d(x)` by dividing out
/// the proper divisors; results are memoized process-wide.
pub fn cyclotomic_polynomial(n: u32) -> Poly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u32, Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![int(-1), int(1)]
    } else {
        // x^n - 1
        let mut num = vec![Rational::zero(); (n + 1) as usize];
        num[0] = int(-1);
        num[n as usize] = int(1);
        let mut den = vec![int(1)];
        for d in 1..n {
            if n % d == 0 {
                den = poly_mul(&den, &cyclotomic_polynomial(d));
            }
        }
        let (quot, rem) = poly_divrem(&num, &den);
        assert!(rem.is_empty(), "cyclotomic recursion must divide exactly");
        quot
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// An element of the `order`-th cyclotomic field.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    /// Exactly `phi(order)` coefficients of `1, z, z^2, ...`.
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn reduce(order: u32, poly: Poly) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        let (_, mut rem) = poly_divrem(&poly, &modulus);
        rem.resize(degree, Rational::zero());
        Cyclotomic {
            order,
            coeffs: rem,
        }
    }

    /// `z^k` for a fixed primitive `order`-th root of unity `z`.
    pub fn zeta(order: u32, k: u64) -> Self {
        assert!(order >= 1, "root of unity needs order >= 1");
        let k = (k % u64::from(order)) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = int(1);
        Self::reduce(order, poly)
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The rational value if this element is a constant, else `None`.
    pub fn constant_value(&self) -> Option<&Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn promote(&self, order: u32) -> Cyclotomic {
        if self.order == order {
            return self.clone();
        }
        match self.constant_value() {
            Some(c) => Self::reduce(order, vec![c.clone()]),
            None => panic!(
                "cannot mix cyclotomic orders {} and {}",
                self.order, order
            ),
        }
    }

    fn common_order(&self, other: &Self) -> u32 {
        if self.order == other.order || other.constant_value().is_some() {
            self.order
        } else if self.constant_value().is_some() {
            other.order
        } else {
            panic!(
                "cannot mix cyclotomic orders {} and {}",
                self.order, other.order
            );
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm
    /// against the (irreducible) cyclotomic modulus.
    pub fn inv(&self) -> Cyclotomic {
        assert!(!self.is_zero(), "inversion of cyclotomic zero");
        if let Some(c) = self.constant_value() {
            let mut out = self.clone();
            out.coeffs[0] = c.recip();
            for c in out.coeffs.iter_mut().skip(1) {
                *c = Rational::zero();
            }
            return out;
        }
        let modulus = cyclotomic_polynomial(self.order);
        // Invariants: r0 = s0 * self (mod modulus), r1 = s1 * self (mod modulus).
        let mut r0: Poly = modulus.clone();
        let mut r1: Poly = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Poly = Vec::new();
        let mut s1: Poly = vec![int(1)];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let qs = poly_mul(&q, &s1);
            let mut s = s0.clone();
            s.resize(s.len().max(qs.len()), Rational::zero());
            for (i, c) in qs.iter().enumerate() {
                s[i] -= c;
            }
            poly_trim(&mut s);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        assert_eq!(r0.len(), 1, "cyclotomic modulus must be coprime to units");
        let scale = r0[0].recip();
        let inv: Poly = s0.iter().map(|c| c * &scale).collect();
        Self::reduce(self.order, inv)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        match (self.constant_value(), other.constant_value()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl std::ops::Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        let order = self.common_order(&rhs);
        let a = self.promote(order);
        let b = rhs.promote(order);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Cyclotomic { order, coeffs }
    }
}

impl std::ops::Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self + (-rhs)
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for c in self.coeffs.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl std::ops::Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        let order = self.common_order(&rhs);
        let a = self.promote(order);
        let b = rhs.promote(order);
        Cyclotomic::reduce(order, poly_mul(&a.coeffs, &b.coeffs))
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::from_rational(int(1))
    }
}
