//! Finite groups as multiplication tables, and identification of small
//! groups by a structural fingerprint.

use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CayleyError {
    #[error("table is not square")]
    NotSquare,
    #[error("row or column {0} is not a permutation of the labels")]
    NotLatin(usize),
    #[error("label 0 is not a two-sided identity")]
    NoIdentity,
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("subset is not closed under multiplication and inverse")]
    NotSubgroup,
    #[error("group order {0} is outside the identification catalog (1..=24)")]
    OrderOutsideCatalog(usize),
}

/// A finite group as its multiplication table on labels `0..order`, with
/// label 0 the identity. `table[a * order + b]` is the product `a * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    table: Vec<u32>,
}

impl CayleyTable {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<CayleyTable, CayleyError> {
        let order = rows.len();
        let mut table = Vec::with_capacity(order * order);
        for row in &rows {
            if row.len() != order {
                return Err(CayleyError::NotSquare);
            }
            table.extend_from_slice(row);
        }
        let t = CayleyTable { order, table };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<u32>) -> CayleyTable {
        debug_assert_eq!(table.len(), order * order);
        CayleyTable { order, table }
    }

    pub fn validate(&self) -> Result<(), CayleyError> {
        let n = self.order;
        if self.table.len() != n * n {
            return Err(CayleyError::NotSquare);
        }
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                let r = self.mul(a, b);
                let c = self.mul(b, a);
                if r >= n || row_seen[r] {
                    return Err(CayleyError::NotLatin(a));
                }
                if c >= n || col_seen[c] {
                    return Err(CayleyError::NotLatin(a));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(CayleyError::NoIdentity);
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| self.mul(a, b) == 0 && self.mul(b, a) == 0) {
                return Err(CayleyError::NoInverse(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(CayleyError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == 0)
            .expect("every element has an inverse")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted (element order, count) pairs.
    pub fn order_multiset(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for a in 0..self.order {
            *counts.entry(self.element_order(a)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |e, a| num_integer::lcm(e, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center_order(&self) -> usize {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count()
    }

    /// Number of distinct squares g*g.
    pub fn squares_count(&self) -> usize {
        let squares: std::collections::BTreeSet<usize> =
            (0..self.order).map(|a| self.mul(a, a)).collect();
        squares.len()
    }

    /// Smallest subgroup containing `seed`, as sorted labels.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut members = vec![0usize];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                members.push(s);
                queue.push(s);
            }
        }
        // Closure under multiplication; inverses come for free in a finite
        // group.
        let mut changed = true;
        while changed {
            changed = false;
            let snapshot = members.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    let p = self.mul(a, b);
                    if !in_set[p] {
                        in_set[p] = true;
                        members.push(p);
                        changed = true;
                    }
                }
            }
        }
        let _ = queue;
        members.sort_unstable();
        members
    }

    /// Derived subgroup: closure of all commutators.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut commutators = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(
                    self.mul(self.inv(a), self.inv(b)),
                    self.mul(a, b),
                );
                commutators.push(c);
            }
        }
        self.subgroup_closure(&commutators)
    }

    pub fn is_subgroup(&self, labels: &[usize]) -> bool {
        let set: std::collections::BTreeSet<usize> = labels.iter().copied().collect();
        if !set.contains(&0) || set.len() != labels.len() {
            return false;
        }
        labels.iter().all(|&a| {
            set.contains(&self.inv(a)) && labels.iter().all(|&b| set.contains(&self.mul(a, b)))
        })
    }

    /// True iff the subgroup `labels` is normal: g s g^-1 stays inside for
    /// every g in the group and s in the subgroup.
    pub fn is_normal_in(&self, labels: &[usize]) -> Result<bool, CayleyError> {
        if !self.is_subgroup(labels) {
            return Err(CayleyError::NotSubgroup);
        }
        let set: std::collections::BTreeSet<usize> = labels.iter().copied().collect();
        for g in 0..self.order {
            for &s in labels {
                let conj = self.mul(self.mul(g, s), self.inv(g));
                if !set.contains(&conj) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Quotient by a normal subgroup; cosets are labelled in order of their
    /// smallest element, so the identity coset is 0.
    pub fn quotient(&self, normal: &[usize]) -> Result<CayleyTable, CayleyError> {
        if !self.is_normal_in(normal)? {
            return Err(CayleyError::NotSubgroup);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for a in 0..self.order {
            if coset_of[a] != usize::MAX {
                continue;
            }
            let label = reps.len();
            for &h in normal {
                coset_of[self.mul(h, a)] = label;
            }
            reps.push(a);
        }
        let k = reps.len();
        let mut table = vec![0u32; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * k + j] = coset_of[self.mul(a, b)] as u32;
            }
        }
        Ok(CayleyTable::from_flat_unchecked(k, table))
    }

    /// Conjugates the table by a relabelling of the underlying set; the
    /// identity is renormalized back to label 0.
    pub fn relabel(&self, perm: &Permutation) -> CayleyTable {
        assert_eq!(perm.degree(), self.order);
        let n = self.order;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm.apply(a) * n + perm.apply(b)] = perm.apply(self.mul(a, b)) as u32;
            }
        }
        let mut t = CayleyTable { order: n, table };
        // Swap the relocated identity back to label 0.
        let e = (0..n)
            .find(|&x| (0..n).all(|y| t.mul(x, y) == y))
            .expect("identity exists");
        if e != 0 {
            let swap: Vec<usize> = (0..n)
                .map(|x| if x == 0 { e } else if x == e { 0 } else { x })
                .collect();
            let p = Permutation::from_images(swap).unwrap();
            let mut table2 = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    table2[p.apply(a) * n + p.apply(b)] = p.apply(t.mul(a, b)) as u32;
                }
            }
            t = CayleyTable { order: n, table: table2 };
        }
        t
    }

    /// Multiplication table of the group generated by permutations, with
    /// elements ordered by BFS discovery (identity first).
    pub fn from_permutations(gens: &[Permutation]) -> CayleyTable {
        let degree = gens.first().map(|g| g.degree()).unwrap_or(1);
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);
        let mut head = 0;
        while head < elements.len() {
            let p = elements[head].clone();
            head += 1;
            for g in gens {
                let q = p.then(g);
                if !index.contains_key(&q) {
                    index.insert(q.clone(), elements.len());
                    elements.push(q);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let p = elements[a].then(&elements[b]);
                table[a * n + b] = index[&p] as u32;
            }
        }
        CayleyTable::from_flat_unchecked(n, table)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            abelian: self.is_abelian(),
            order_multiset: self.order_multiset(),
            center_order: self.center_order(),
            derived_order: self.derived_subgroup().len(),
            exponent: self.exponent(),
            squares: self.squares_count(),
        }
    }

    /// Export: order on the first line, then the table rows.
    pub fn export_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Structural fingerprint separating all isomorphism classes of groups of
/// order <= 24. The distinct-squares count is needed on top of the order
/// statistics: at order 16 two pairs of non-isomorphic groups share the
/// order multiset, center order, derived order, and exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub abelian: bool,
    pub order_multiset: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: usize,
    pub squares: usize,
}

/// An identified isomorphism type from the small-group catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub order: usize,
    pub name: String,
    pub fingerprint: Fingerprint,
}

/// Identifies the isomorphism type of a group of order <= 24.
pub fn identify(t: &CayleyTable) -> Result<IsoClass, CayleyError> {
    if t.order() == 0 || t.order() > 24 {
        return Err(CayleyError::OrderOutsideCatalog(t.order()));
    }
    let fp = t.fingerprint();
    let name = crate::catalog::lookup(t.order(), &fp)
        .unwrap_or_else(|| panic!("fingerprint not in catalog for order {}", t.order()));
    Ok(IsoClass {
        order: t.order(),
        name,
        fingerprint: fp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> CayleyTable {
        CayleyTable::from_rows(vec![
            vec![0, 1, 2, 3],
            vec![1, 2, 3, 0],
            vec![2, 3, 0, 1],
            vec![3, 0, 1, 2],
        ])
        .unwrap()
    }

    #[test]
    fn validates_z4() {
        let t = z4();
        assert_eq!(t.element_order(1), 4);
        assert_eq!(t.exponent(), 4);
        assert!(t.is_abelian());
        assert_eq!(t.inv(1), 3);
    }

    #[test]
    fn rejects_non_latin() {
        let err = CayleyTable::from_rows(vec![vec![0, 0], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, CayleyError::NotLatin(_)));
    }

    #[test]
    fn rejects_broken_identity() {
        let err = CayleyTable::from_rows(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, CayleyError::NoIdentity);
    }

    #[test]
    fn s3_from_permutations() {
        let s = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let c = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let t = CayleyTable::from_permutations(&[s, c]);
        assert_eq!(t.order(), 6);
        assert!(!t.is_abelian());
        assert_eq!(t.center_order(), 1);
        assert_eq!(t.derived_subgroup().len(), 3);
        assert_eq!(t.validate(), Ok(()));
    }

    #[test]
    fn whole_group_is_normal() {
        let t = z4();
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(t.is_normal_in(&all), Ok(true));
    }

    #[test]
    fn quotient_of_z4_by_z2() {
        let t = z4();
        let q = t.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.validate(), Ok(()));
    }

    #[test]
    fn subset_must_be_subgroup() {
        let t = z4();
        assert_eq!(t.is_normal_in(&[0, 1]), Err(CayleyError::NotSubgroup));
    }
}
