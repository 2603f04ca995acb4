//! Small square matrices of finite-field codes.
//!
//! Matrices are at most 4x4 and stored inline as a fixed array of entry
//! codes, row major.  Each matrix packs into a `u128` with a fixed number
//! of bits per entry, most significant entry first, so the numeric order
//! of packed codes equals the lexicographic order of entry sequences —
//! the property the group layer relies on for canonical sorting.

use crate::field::FiniteField;
use crate::{Error, Result};

/// Maximum supported dimension.
pub const MAX_DIM: usize = 4;

/// A square matrix of field codes, row major, dimension at most 4.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matrix {
    dim: u8,
    e: [u32; MAX_DIM * MAX_DIM],
}

/// Bits needed to store one code of `GF(q)`.
pub fn bits_per_entry(q: u32) -> u32 {
    32 - (q - 1).leading_zeros()
}

impl Matrix {
    pub fn zero(dim: usize) -> Matrix {
        assert!((1..=MAX_DIM).contains(&dim), "dimension out of range");
        Matrix {
            dim: dim as u8,
            e: [0; MAX_DIM * MAX_DIM],
        }
    }

    pub fn identity(dim: usize) -> Matrix {
        let mut m = Matrix::zero(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_entries(dim: usize, entries: &[u32]) -> Result<Matrix> {
        if entries.len() != dim * dim {
            return Err(Error::Config(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let mut m = Matrix::zero(dim);
        for (k, &v) in entries.iter().enumerate() {
            m.e[k / dim * MAX_DIM + k % dim] = v;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * MAX_DIM + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.e[i * MAX_DIM + j] = v;
    }

    /// Entries row major as a vector of codes.
    pub fn entries(&self) -> Vec<u32> {
        let d = self.dim();
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                out.push(self.get(i, j));
            }
        }
        out
    }

    #[inline]
    pub fn mul(&self, rhs: &Matrix, f: &FiniteField) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let d = self.dim();
        let mut out = Matrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = 0u32;
                for k in 0..d {
                    acc = f.add(acc, f.mul(self.get(i, k), rhs.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn neg(&self, f: &FiniteField) -> Matrix {
        let d = self.dim();
        let mut out = Matrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, f.neg(self.get(i, j)));
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix, f: &FiniteField) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let d = self.dim();
        let mut out = Matrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, f.sub(self.get(i, j), rhs.get(i, j)));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim();
        let mut out = Matrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn trace(&self, f: &FiniteField) -> u32 {
        let mut acc = 0u32;
        for i in 0..self.dim() {
            acc = f.add(acc, self.get(i, i));
        }
        acc
    }

    /// Row-reduces a working copy; returns (rank, optional inverse image).
    fn gauss(&self, f: &FiniteField, with_inverse: bool) -> (usize, Option<Matrix>) {
        let d = self.dim();
        let mut a = *self;
        let mut inv = Matrix::identity(d);
        let mut rank = 0usize;
        for col in 0..d {
            let pivot = (rank..d).find(|&r| a.get(r, col) != 0);
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                for j in 0..d {
                    let (x, y) = (a.get(rank, j), a.get(pivot, j));
                    a.set(rank, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(rank, j), inv.get(pivot, j));
                    inv.set(rank, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let scale = f.inv(a.get(rank, col)).expect("pivot is nonzero");
            for j in 0..d {
                a.set(rank, j, f.mul(a.get(rank, j), scale));
                inv.set(rank, j, f.mul(inv.get(rank, j), scale));
            }
            for r in 0..d {
                if r == rank || a.get(r, col) == 0 {
                    continue;
                }
                let factor = a.get(r, col);
                for j in 0..d {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(factor, a.get(rank, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(factor, inv.get(rank, j))));
                }
            }
            rank += 1;
        }
        if with_inverse && rank == d {
            (rank, Some(inv))
        } else {
            (rank, None)
        }
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.gauss(f, false).0
    }

    pub fn inverse(&self, f: &FiniteField) -> Result<Matrix> {
        match self.gauss(f, true) {
            (_, Some(inv)) => Ok(inv),
            _ => Err(Error::Invariant("matrix is singular".into())),
        }
    }

    pub fn det(&self, f: &FiniteField) -> u32 {
        let d = self.dim();
        match d {
            1 => self.get(0, 0),
            2 => f.sub(
                f.mul(self.get(0, 0), self.get(1, 1)),
                f.mul(self.get(0, 1), self.get(1, 0)),
            ),
            _ => {
                // Cofactor expansion along the first row; fine for d <= 4.
                let mut acc = 0u32;
                for j in 0..d {
                    let entry = self.get(0, j);
                    if entry == 0 {
                        continue;
                    }
                    let mut minor = Matrix::zero(d - 1);
                    for r in 1..d {
                        let mut cc = 0;
                        for c in 0..d {
                            if c == j {
                                continue;
                            }
                            minor.set(r - 1, cc, self.get(r, c));
                            cc += 1;
                        }
                    }
                    let term = f.mul(entry, minor.det(f));
                    acc = if j % 2 == 0 {
                        f.add(acc, term)
                    } else {
                        f.sub(acc, term)
                    };
                }
                acc
            }
        }
    }

    /// Sum of the principal 2x2 minors (the second elementary symmetric
    /// function of the eigenvalues).
    pub fn principal_minor_sum2(&self, f: &FiniteField) -> u32 {
        let d = self.dim();
        let mut acc = 0u32;
        for i in 0..d {
            for j in i + 1..d {
                let m = f.sub(
                    f.mul(self.get(i, i), self.get(j, j)),
                    f.mul(self.get(i, j), self.get(j, i)),
                );
                acc = f.add(acc, m);
            }
        }
        acc
    }

    pub fn pow(&self, mut n: u64, f: &FiniteField) -> Matrix {
        let mut base = *self;
        let mut acc = Matrix::identity(self.dim());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            n >>= 1;
        }
        acc
    }

    /// Packs entries row major into a `u128`, most significant entry first.
    pub fn pack(&self, bits: u32) -> u128 {
        let d = self.dim();
        debug_assert!(bits as usize * d * d <= 128);
        let mut code = 0u128;
        for i in 0..d {
            for j in 0..d {
                code = (code << bits) | u128::from(self.get(i, j));
            }
        }
        code
    }

    pub fn unpack(code: u128, dim: usize, bits: u32) -> Matrix {
        let mut m = Matrix::zero(dim);
        let mask = (1u128 << bits) - 1;
        let mut c = code;
        for i in (0..dim).rev() {
            for j in (0..dim).rev() {
                m.set(i, j, (c & mask) as u32);
                c >>= bits;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_per_entry_matches_field_sizes() {
        assert_eq!(bits_per_entry(2), 1);
        assert_eq!(bits_per_entry(4), 2);
        assert_eq!(bits_per_entry(5), 3);
        assert_eq!(bits_per_entry(8), 3);
        assert_eq!(bits_per_entry(9), 4);
        assert_eq!(bits_per_entry(13), 4);
        assert_eq!(bits_per_entry(32), 5);
        assert_eq!(bits_per_entry(49), 6);
    }

    #[test]
    fn pack_round_trips_and_preserves_lex_order() {
        let f = FiniteField::new(5, 1).unwrap();
        let a = Matrix::from_entries(2, &[0, 1, 4, 0]).unwrap();
        let b = Matrix::from_entries(2, &[0, 2, 1, 1]).unwrap();
        let bits = bits_per_entry(f.q());
        assert_eq!(Matrix::unpack(a.pack(bits), 2, bits), a);
        assert_eq!(Matrix::unpack(b.pack(bits), 2, bits), b);
        // a < b lexicographically on entries, so packed codes agree.
        assert!(a.pack(bits) < b.pack(bits));
        assert!(a < b);
    }

    #[test]
    fn multiplication_and_inverse() {
        let f = FiniteField::new(7, 1).unwrap();
        let a = Matrix::from_entries(2, &[1, 2, 3, 4]).unwrap();
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&inv, &f), Matrix::identity(2));
        assert_eq!(inv.mul(&a, &f), Matrix::identity(2));
        let singular = Matrix::from_entries(2, &[1, 2, 2, 4]).unwrap();
        assert!(singular.inverse(&f).is_err());
        assert_eq!(singular.rank(&f), 1);
    }

    #[test]
    fn determinant_and_trace() {
        let f = FiniteField::new(5, 1).unwrap();
        let a = Matrix::from_entries(3, &[1, 2, 0, 0, 1, 3, 0, 0, 1]).unwrap();
        assert_eq!(a.det(&f), 1);
        assert_eq!(a.trace(&f), 3);
        let b = Matrix::from_entries(3, &[2, 0, 0, 0, 3, 0, 0, 0, 1]).unwrap();
        assert_eq!(b.det(&f), 1);
        assert_eq!(b.principal_minor_sum2(&f), f.embed_int(2 * 3 + 2 + 3));
    }

    #[test]
    fn power_matches_repeated_multiplication() {
        let f = FiniteField::new(5, 1).unwrap();
        let a = Matrix::from_entries(2, &[1, 1, 0, 1]).unwrap();
        let mut acc = Matrix::identity(2);
        for n in 0..12u64 {
            assert_eq!(a.pow(n, &f), acc);
            acc = acc.mul(&a, &f);
        }
    }

    #[test]
    fn four_by_four_round_trip() {
        let f = FiniteField::new(2, 3).unwrap();
        let bits = bits_per_entry(f.q());
        let entries: Vec<u32> = (0..16).map(|k| k % 8).collect();
        let m = Matrix::from_entries(4, &entries).unwrap();
        assert_eq!(Matrix::unpack(m.pack(bits), 4, bits), m);
        assert_eq!(m.entries(), entries);
    }
}
