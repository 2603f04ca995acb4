//! Subgroups of an enumerated group, abelian invariants, central type.
//!
//! A [`Subgroup`] is a sorted list of member indices into its parent
//! group.  For abelian subgroups the invariant-factor decomposition is
//! computed by repeatedly splitting off a cyclic factor of maximal order;
//! a subgroup is of *central type* in the sense used by the obstruction
//! engine when the invariant factors pair up as `(d, d, e, e, ...)`,
//! i.e. the subgroup is isomorphic to `E x E` for some abelian `E`.  Such
//! subgroups carry a nondegenerate pairing and hence a cocycle twist.

use std::sync::Arc;

use crate::group::FiniteGroup;
use crate::{Error, Result};

/// Full closure verification is performed up to this many products.
const VERIFY_PRODUCT_CAP: usize = 1_000_000;

/// A subgroup given by sorted member indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<u32>,
    generators: Vec<u32>,
    label: String,
}

/// Outcome of the central-type test on an abelian subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralTypeWitness {
    /// Invariant factors in ascending divisibility order.
    pub invariant_factors: Vec<u64>,
    /// Whether the factors pair up as `(d, d, e, e, ...)`.
    pub paired: bool,
}

impl CentralTypeWitness {
    /// Central type in the operative sense: nontrivial and paired.
    pub fn is_central_type(&self) -> bool {
        self.paired && !self.invariant_factors.is_empty()
    }
}

impl Subgroup {
    /// Closure of a generator list.
    pub fn closure(parent: &Arc<FiniteGroup>, generators: &[u32], label: &str) -> Subgroup {
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(parent.identity_index());
        let mut frontier: Vec<u32> = vec![parent.identity_index()];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let next = parent.mul(x, g);
                if seen.insert(next) {
                    frontier.push(next);
                }
            }
        }
        Subgroup {
            parent: Arc::clone(parent),
            members: seen.into_iter().collect(),
            generators: generators.to_vec(),
            label: label.to_string(),
        }
    }

    /// Wraps an explicit member list, verifying that it contains the
    /// identity and is closed under multiplication (exhaustively up to
    /// [`VERIFY_PRODUCT_CAP`] products, by strided sampling beyond).
    pub fn from_members(
        parent: &Arc<FiniteGroup>,
        mut members: Vec<u32>,
        label: &str,
    ) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.binary_search(&parent.identity_index()).is_err() {
            return Err(Error::Invariant(format!(
                "subgroup {label:?} does not contain the identity"
            )));
        }
        let n = members.len();
        let stride = (n * n / VERIFY_PRODUCT_CAP).max(1);
        let mut k = 0usize;
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                k += 1;
                if stride > 1 && k % stride != 0 {
                    continue;
                }
                let _ = (i, j);
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::Invariant(format!(
                        "member list {label:?} is not closed under multiplication"
                    )));
                }
            }
        }
        Ok(Subgroup {
            parent: Arc::clone(parent),
            members,
            generators: Vec::new(),
            label: label.to_string(),
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, idx: u32) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                if self.parent.mul(a, b) != self.parent.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Least common multiple of the member orders.
    pub fn exponent(&self) -> u64 {
        self.members
            .iter()
            .map(|&m| self.parent.element_order(m))
            .fold(1, num_integer::lcm)
    }

    /// Local multiplication table on member positions.
    fn local_table(&self) -> Vec<Vec<usize>> {
        let n = self.members.len();
        let mut t = vec![vec![0usize; n]; n];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                let prod = self.parent.mul(a, b);
                t[i][j] = self
                    .members
                    .binary_search(&prod)
                    .expect("subgroup is closed");
            }
        }
        t
    }

    /// Invariant factors of an abelian subgroup, ascending.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        if !self.is_abelian() {
            return Err(Error::Invariant(format!(
                "subgroup {:?} is not abelian",
                self.label
            )));
        }
        let identity = self
            .members
            .binary_search(&self.parent.identity_index())
            .expect("identity is a member");
        Ok(abstract_invariant_factors(&self.local_table(), identity))
    }

    /// Central-type witness for an abelian subgroup.
    pub fn central_type(&self) -> Result<CentralTypeWitness> {
        let inv = self.invariant_factors()?;
        let paired = inv.len() % 2 == 0
            && inv.chunks_exact(2).all(|pair| pair[0] == pair[1]);
        Ok(CentralTypeWitness {
            invariant_factors: inv,
            paired,
        })
    }

    /// Intersection with the conjugate subgroup `t S t^{-1}`.
    pub fn intersect_conjugate(&self, t: u32) -> Vec<u32> {
        let mut conj: Vec<u32> = self
            .members
            .iter()
            .map(|&m| self.parent.conj(t, m))
            .collect();
        conj.sort_unstable();
        self.members
            .iter()
            .copied()
            .filter(|m| conj.binary_search(m).is_ok())
            .collect()
    }
}

/// Invariant factors of an abelian group presented by a multiplication
/// table, by splitting off a maximal-order cyclic factor and recursing on
/// the quotient.
fn abstract_invariant_factors(table: &[Vec<usize>], identity: usize) -> Vec<u64> {
    let n = table.len();
    if n == 1 {
        return vec![];
    }
    let order_of = |x: usize| -> u64 {
        let mut k = 1u64;
        let mut cur = x;
        while cur != identity {
            cur = table[cur][x];
            k += 1;
        }
        k
    };
    let (best, e) = (0..n)
        .map(|x| (x, order_of(x)))
        .max_by_key(|&(x, o)| (o, std::cmp::Reverse(x)))
        .expect("nonempty");

    // The cyclic subgroup generated by the maximal-order element.
    let mut cyc = vec![identity];
    let mut cur = best;
    while cur != identity {
        cyc.push(cur);
        cur = table[cur][best];
    }
    cyc.sort_unstable();

    // Quotient cosets, keyed by sorted member tuple.
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &c in &cyc {
            coset_of[table[x][c]] = id;
        }
        reps.push(x);
    }
    let m = reps.len();
    let mut qtable = vec![vec![0usize; m]; m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            qtable[i][j] = coset_of[table[a][b]];
        }
    }
    let q_identity = coset_of[identity];
    let mut inv = abstract_invariant_factors(&qtable, q_identity);
    inv.push(e);
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    #[test]
    fn closure_of_unipotent_generators_sl2() {
        let g = FiniteGroup::build(Family::Sl2, 5).unwrap();
        let u = g.element_from_int_entries(&[1, 1, 0, 1]).unwrap();
        let s = Subgroup::closure(&g, &[u], "U");
        assert_eq!(s.order(), 5);
        assert!(s.is_abelian());
        assert_eq!(s.invariant_factors().unwrap(), vec![5]);
        assert_eq!(s.exponent(), 5);
        let w = s.central_type().unwrap();
        assert!(!w.paired);
        assert!(!w.is_central_type());
    }

    #[test]
    fn klein_subgroup_is_central_type() {
        let g = FiniteGroup::build(Family::Psl2, 5).unwrap();
        let r = g.element_from_int_entries(&[0, 1, -1, 0]).unwrap();
        let s = g.element_from_int_entries(&[2, 0, 0, -2]).unwrap();
        let k = Subgroup::closure(&g, &[r, s], "klein");
        assert_eq!(k.order(), 4);
        let w = k.central_type().unwrap();
        assert_eq!(w.invariant_factors, vec![2, 2]);
        assert!(w.is_central_type());
        assert_eq!(k.exponent(), 2);
    }

    #[test]
    fn field_square_subgroup_of_sl2_9() {
        // The additive group of GF(9) inside the unipotent subgroup:
        // invariant factors (3, 3), central type.
        let g = FiniteGroup::build(Family::Sl2, 9).unwrap();
        let u1 = g.element_from_int_entries(&[1, 1, 0, 1]).unwrap();
        let ug = {
            let m = crate::matrix::Matrix::from_entries(2, &[1, 3, 0, 1]).unwrap();
            g.index_of_matrix(&m).unwrap()
        };
        let s = Subgroup::closure(&g, &[u1, ug], "U");
        assert_eq!(s.order(), 9);
        let w = s.central_type().unwrap();
        assert_eq!(w.invariant_factors, vec![3, 3]);
        assert!(w.is_central_type());
    }

    #[test]
    fn nonabelian_subgroup_rejects_invariants() {
        let g = FiniteGroup::build(Family::Psl2, 5).unwrap();
        let r = g.element_from_int_entries(&[0, 1, -1, 0]).unwrap();
        let u = g.element_from_int_entries(&[1, 1, 0, 1]).unwrap();
        let s = Subgroup::closure(&g, &[r, u], "big");
        assert!(!s.is_abelian());
        assert!(s.invariant_factors().is_err());
    }

    #[test]
    fn from_members_checks_closure_and_identity() {
        let g = FiniteGroup::build(Family::Psl2, 5).unwrap();
        let r = g.element_from_int_entries(&[0, 1, -1, 0]).unwrap();
        assert!(Subgroup::from_members(&g, vec![r], "no-id").is_err());
        let e = g.identity_index();
        assert!(Subgroup::from_members(&g, vec![e, r], "ok").is_ok());
        let u = g.element_from_int_entries(&[1, 1, 0, 1]).unwrap();
        assert!(Subgroup::from_members(&g, vec![e, r, u], "open").is_err());
    }

    #[test]
    fn intersect_conjugate_detects_trivial_intersection() {
        let g = FiniteGroup::build(Family::Psl2, 5).unwrap();
        let u = g.element_from_int_entries(&[1, 1, 0, 1]).unwrap();
        let s = Subgroup::closure(&g, &[u], "U");
        let tau = g.element_from_int_entries(&[0, 1, -1, 0]).unwrap();
        let inter = s.intersect_conjugate(tau);
        assert_eq!(inter, vec![g.identity_index()]);
    }
}
