//! Sparse vectors in a group algebra and its tensor powers.
//!
//! Coefficients are generic over [`Scalar`], instantiated in practice at
//! exact rationals and cyclotomic numbers.  Vectors are sparse ordered
//! maps from element indices (or index pairs/triples) to coefficients;
//! terms that become zero are dropped, so equality of maps is equality
//! of vectors.

use std::collections::BTreeMap;

use crate::group::FiniteGroup;
use crate::scalar::Scalar;

/// A sparse element of the group algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraVector<S: Scalar> {
    coeffs: BTreeMap<u32, S>,
}

impl<S: Scalar> Default for GroupAlgebraVector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> GroupAlgebraVector<S> {
    pub fn zero() -> Self {
        GroupAlgebraVector {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn term(idx: u32, c: S) -> Self {
        let mut v = Self::zero();
        v.add_term(idx, c);
        v
    }

    /// Adds `c` to the coefficient at `idx`, dropping exact zeros.
    pub fn add_term(&mut self, idx: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&idx) {
            None => {
                self.coeffs.insert(idx, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(idx, sum);
                }
            }
        }
    }

    pub fn coeff(&self, idx: u32) -> Option<&S> {
        self.coeffs.get(&idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &S)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Vec<u32> {
        self.coeffs.keys().copied().collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&idx, c) in other.iter() {
            out.add_term(idx, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for (&idx, c) in self.iter() {
            out.add_term(idx, c.clone() * s.clone());
        }
        out
    }

    /// Convolution product in the group algebra.
    pub fn mul(&self, other: &Self, g: &FiniteGroup) -> Self {
        let mut out = Self::zero();
        for (&a, ca) in self.iter() {
            for (&b, cb) in other.iter() {
                out.add_term(g.mul(a, b), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Sum of all coefficients (the augmentation / counit).
    pub fn augmentation(&self) -> S {
        self.coeffs
            .values()
            .fold(S::zero(), |acc, c| acc + c.clone())
    }
}

/// A sparse element of the twofold tensor power.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector<S: Scalar> {
    coeffs: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> Default for TensorVector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> TensorVector<S> {
    pub fn zero() -> Self {
        TensorVector {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, key: (u32, u32), c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&key) {
            None => {
                self.coeffs.insert(key, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(key, sum);
                }
            }
        }
    }

    pub fn coeff(&self, key: (u32, u32)) -> Option<&S> {
        self.coeffs.get(&key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Componentwise product: `(g ⊗ h)(g' ⊗ h') = gg' ⊗ hh'`.
    pub fn mul(&self, other: &Self, g: &FiniteGroup) -> Self {
        let mut out = Self::zero();
        for (&(a1, a2), ca) in self.iter() {
            for (&(b1, b2), cb) in other.iter() {
                out.add_term((g.mul(a1, b1), g.mul(a2, b2)), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero();
        for (&key, c) in self.iter() {
            out.add_term(key, c.clone() * s.clone());
        }
        out
    }

    /// Applies a weight to the left tensor factor and collapses it:
    /// `sum c (g ⊗ h) -> sum c·w(g) h`.  With `w = 1` this is the counit
    /// on the left factor.
    pub fn collapse_left<F: Fn(u32) -> S>(&self, w: F) -> GroupAlgebraVector<S> {
        let mut out = GroupAlgebraVector::zero();
        for (&(a, b), c) in self.iter() {
            out.add_term(b, c.clone() * w(a));
        }
        out
    }

    /// Mirror image of [`TensorVector::collapse_left`].
    pub fn collapse_right<F: Fn(u32) -> S>(&self, w: F) -> GroupAlgebraVector<S> {
        let mut out = GroupAlgebraVector::zero();
        for (&(a, b), c) in self.iter() {
            out.add_term(a, c.clone() * w(b));
        }
        out
    }
}

/// A sparse element of the threefold tensor power.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleTensorVector<S: Scalar> {
    coeffs: BTreeMap<(u32, u32, u32), S>,
}

impl<S: Scalar> Default for TripleTensorVector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> TripleTensorVector<S> {
    pub fn zero() -> Self {
        TripleTensorVector {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, key: (u32, u32, u32), c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&key) {
            None => {
                self.coeffs.insert(key, c);
            }
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.coeffs.insert(key, sum);
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32, u32), &S)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Componentwise product in the threefold tensor power.
    pub fn mul(&self, other: &Self, g: &FiniteGroup) -> Self {
        let mut out = Self::zero();
        for (&(a1, a2, a3), ca) in self.iter() {
            for (&(b1, b2, b3), cb) in other.iter() {
                out.add_term(
                    (g.mul(a1, b1), g.mul(a2, b2), g.mul(a3, b3)),
                    ca.clone() * cb.clone(),
                );
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;
    use crate::rational::{int, ratio};
    use crate::Rational;

    #[test]
    fn zero_terms_are_dropped() {
        let mut v: GroupAlgebraVector<Rational> = GroupAlgebraVector::zero();
        v.add_term(3, int(2));
        v.add_term(3, int(-2));
        assert!(v.is_empty());
        v.add_term(1, ratio(1, 2));
        v.add_term(1, ratio(1, 2));
        assert_eq!(v.coeff(1), Some(&int(1)));
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn convolution_in_a_small_group() {
        let g = crate::group::FiniteGroup::build(Family::Psl2, 5).unwrap();
        let r = g.element_from_int_entries(&[0, 1, -1, 0]).unwrap();
        let e = g.identity_index();
        // (e + r)^2 = e + 2r + r^2 = 2e + 2r since r is an involution.
        let v = {
            let mut v: GroupAlgebraVector<Rational> = GroupAlgebraVector::zero();
            v.add_term(e, int(1));
            v.add_term(r, int(1));
            v
        };
        let sq = v.mul(&v, &g);
        assert_eq!(sq.coeff(e), Some(&int(2)));
        assert_eq!(sq.coeff(r), Some(&int(2)));
        assert_eq!(sq.len(), 2);
        assert_eq!(sq.augmentation(), int(4));
    }

    #[test]
    fn tensor_collapse_is_counit() {
        let g = crate::group::FiniteGroup::build(Family::Psl2, 5).unwrap();
        let e = g.identity_index();
        let r = g.element_from_int_entries(&[0, 1, -1, 0]).unwrap();
        let mut t: TensorVector<Rational> = TensorVector::zero();
        t.add_term((e, r), int(2));
        t.add_term((r, r), int(3));
        let left = t.collapse_left(|_| int(1));
        assert_eq!(left.coeff(r), Some(&int(5)));
        let right = t.collapse_right(|_| int(1));
        assert_eq!(right.coeff(e), Some(&int(2)));
        assert_eq!(right.coeff(r), Some(&int(3)));
    }

    #[test]
    fn triple_tensor_multiplication() {
        let g = crate::group::FiniteGroup::build(Family::Psl2, 5).unwrap();
        let e = g.identity_index();
        let r = g.element_from_int_entries(&[0, 1, -1, 0]).unwrap();
        let mut a: TripleTensorVector<Rational> = TripleTensorVector::zero();
        a.add_term((e, r, e), int(2));
        let mut b: TripleTensorVector<Rational> = TripleTensorVector::zero();
        b.add_term((r, r, e), ratio(1, 2));
        let c = a.mul(&b, &g);
        assert_eq!(c.len(), 1);
        let (&key, coeff) = c.iter().next().unwrap();
        assert_eq!(key, (r, e, e));
        assert_eq!(coeff, &int(1));
    }
}
