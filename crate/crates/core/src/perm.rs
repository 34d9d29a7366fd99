//! Permutations of {0..n-1} and group order via Schreier-Sims.

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("images do not form a bijection on 0..{degree}")]
    NotBijective { degree: usize },
}

/// A permutation given by its image array: `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijective { degree: n });
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Composition in action order: `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &j)| *i != j).map(|(i, _)| i)
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

struct Orbit {
    /// `transversal[x]` maps the base point to `x` when `x` is in the orbit.
    transversal: Vec<Option<Permutation>>,
    points: Vec<usize>,
}

/// Base and strong generating set. Strong generators are kept in one list
/// with their level: the number of leading base points they fix. The
/// generating set of level i is every strong generator of level >= i.
struct StabChain {
    degree: usize,
    bases: Vec<usize>,
    gens: Vec<(Permutation, usize)>,
    orbits: Vec<Orbit>,
}

impl StabChain {
    fn new(degree: usize) -> StabChain {
        StabChain {
            degree,
            bases: Vec::new(),
            gens: Vec::new(),
            orbits: Vec::new(),
        }
    }

    fn level_gens(&self, level: usize) -> Vec<Permutation> {
        self.gens
            .iter()
            .filter(|(_, l)| *l >= level)
            .map(|(g, _)| g.clone())
            .collect()
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let base = self.bases[level];
        let gens = self.level_gens(level);
        let mut transversal = vec![None; self.degree];
        transversal[base] = Some(Permutation::identity(self.degree));
        let mut points = vec![base];
        let mut head = 0;
        while head < points.len() {
            let x = points[head];
            head += 1;
            for g in &gens {
                let y = g.apply(x);
                if transversal[y].is_none() {
                    let u = transversal[x].as_ref().unwrap().then(g);
                    transversal[y] = Some(u);
                    points.push(y);
                }
            }
        }
        self.orbits[level] = Orbit {
            transversal,
            points,
        };
    }

    /// Reduces `g` through transversals starting at `from`; returns the
    /// residue and the level where sifting stopped.
    fn sift(&self, from: usize, g: Permutation) -> (Permutation, usize) {
        let mut h = g;
        let mut i = from;
        while i < self.bases.len() {
            let x = h.apply(self.bases[i]);
            match &self.orbits[i].transversal[x] {
                None => return (h, i),
                Some(u) => h = h.then(&u.inverse()),
            }
            i += 1;
        }
        (h, i)
    }

    /// Inserts a non-identity strong generator and rebuilds the orbits it
    /// participates in. Returns its level.
    fn insert(&mut self, g: Permutation) -> usize {
        debug_assert!(!g.is_identity());
        let mut level = 0;
        while level < self.bases.len() && g.apply(self.bases[level]) == self.bases[level] {
            level += 1;
        }
        if level == self.bases.len() {
            let base = g.first_moved().expect("non-identity moves a point");
            self.bases.push(base);
            self.orbits.push(Orbit {
                transversal: Vec::new(),
                points: Vec::new(),
            });
        }
        self.gens.push((g, level));
        for i in (0..=level).rev() {
            self.rebuild_orbit(i);
        }
        level
    }

    /// Finds a Schreier generator of `level` that does not sift to the
    /// identity through the deeper chain, if one exists.
    fn closure_defect(&self, level: usize) -> Option<Permutation> {
        let gens = self.level_gens(level);
        for &x in &self.orbits[level].points {
            let u_x = self.orbits[level].transversal[x].as_ref().unwrap();
            for g in &gens {
                let y = g.apply(x);
                let u_y = self.orbits[level].transversal[y].as_ref().unwrap();
                let schreier = u_x.then(g).then(&u_y.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (residue, _) = self.sift(level + 1, schreier);
                if !residue.is_identity() {
                    return Some(residue);
                }
            }
        }
        None
    }

    /// Verifies closure from the deepest level up, inserting residues as
    /// strong generators until every level is closed.
    fn complete(&mut self) {
        if self.bases.is_empty() {
            return;
        }
        let mut level = self.bases.len() - 1;
        loop {
            match self.closure_defect(level) {
                Some(residue) => {
                    // The residue fixes the first `level + 1` base points,
                    // so its insertion level is deeper; re-verify from there.
                    level = self.insert(residue);
                }
                None => {
                    if level == 0 {
                        return;
                    }
                    level -= 1;
                }
            }
        }
    }

    fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for orbit in &self.orbits {
            order *= BigUint::from(orbit.points.len());
        }
        order
    }
}

/// Order of the permutation group generated by `gens`, using a
/// base-and-strong-generators chain with a deterministic base.
pub fn group_order(gens: &[Permutation]) -> BigUint {
    let mut chain = match gens.first() {
        None => return BigUint::one(),
        Some(g) => StabChain::new(g.degree()),
    };
    for g in gens {
        assert_eq!(g.degree(), gens[0].degree(), "mixed degrees");
        if !g.is_identity() {
            chain.insert(g.clone());
        }
    }
    chain.complete();
    chain.order()
}

#[cfg(test)]
pub(crate) fn naive_closure_order(gens: &[Permutation]) -> usize {
    use std::collections::HashSet;
    let degree = match gens.first() {
        None => return 1,
        Some(g) => g.degree(),
    };
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = vec![Permutation::identity(degree)];
    seen.insert(queue[0].clone());
    while let Some(p) = queue.pop() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn identity_generators_give_order_one() {
        assert_eq!(group_order(&[Permutation::identity(5)]), 1u32.into());
        assert_eq!(group_order(&[]), 1u32.into());
    }

    #[test]
    fn seven_cycle_has_order_seven() {
        let c = perm(&[1, 2, 3, 4, 5, 6, 0]);
        assert_eq!(group_order(&[c]), 7u32.into());
    }

    #[test]
    fn symmetric_group_four() {
        let s = perm(&[1, 0, 2, 3]);
        let c = perm(&[1, 2, 3, 0]);
        assert_eq!(group_order(&[s, c]), 24u32.into());
    }

    #[test]
    fn alternating_group_four() {
        let a = perm(&[1, 2, 0, 3]); // (0 1 2)
        let b = perm(&[0, 2, 3, 1]); // (1 2 3)
        assert_eq!(group_order(&[a, b]), 12u32.into());
    }

    #[test]
    fn order_of_permutation() {
        assert_eq!(perm(&[1, 0, 3, 2]).order(), 2);
        assert_eq!(perm(&[1, 2, 0, 4, 3]).order(), 6);
    }

    #[test]
    fn matches_naive_closure_on_random_sets() {
        // Deterministic xorshift so the test is reproducible.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut checked = 0;
        while checked < 40 {
            let degree = 3 + (next() % 6) as usize; // 3..=8
            let n_gens = 1 + (next() % 3) as usize;
            let gens: Vec<Permutation> = (0..n_gens)
                .map(|_| {
                    let mut images: Vec<usize> = (0..degree).collect();
                    for i in (1..degree).rev() {
                        let j = (next() % (i as u64 + 1)) as usize;
                        images.swap(i, j);
                    }
                    Permutation { images }
                })
                .collect();
            let naive = naive_closure_order(&gens);
            if naive > 200 {
                continue;
            }
            assert_eq!(group_order(&gens), naive.into());
            checked += 1;
        }
    }
}
