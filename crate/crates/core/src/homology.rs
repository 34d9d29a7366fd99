//! Abelianization of finitely presented groups: relation matrices, abelian
//! invariants, and the canonical map onto the abelianization.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::matrix::IntMatrix;
use crate::presentation::Presentation;

/// A finitely generated abelian group: free rank plus invariant factors
/// d1 | d2 | ... with every di >= 2. The representation is unique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Convenience for tests and manifests: torsion as u64 values.
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| u64::try_from(d).expect("torsion factor fits in u64"))
            .collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z{d}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators().len(), p.n_generators());
    for (i, r) in p.relators().iter().enumerate() {
        for l in r.letters() {
            let j = l.generator();
            let delta = if l.is_inverse() { -1 } else { 1 };
            let v = m.get(i, j) + BigInt::from(delta);
            m.set(i, j, v);
        }
    }
    m
}

/// Invariants of the abelianization of the presented group.
pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let diag = relation_matrix(p).smith_normal_form();
    let rank = diag.len();
    AbelianInvariants {
        free_rank: p.n_generators() - rank,
        torsion: diag
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_biguint().expect("SNF diagonal is positive"))
            .collect(),
    }
}

/// The canonical map of a presented group onto its abelianization, with
/// each generator's image in the coordinates of the invariant decomposition.
pub struct AbelianizationMap {
    pub invariants: AbelianInvariants,
    /// Per generator: (value mod d for each torsion factor, free coords).
    pub images: Vec<(Vec<BigUint>, Vec<BigInt>)>,
}

pub fn abelianization_map(p: &Presentation) -> AbelianizationMap {
    let m = relation_matrix(p);
    let (diag, v) = m.smith_normal_form_with_transform();
    let rank = diag.len();
    let n = p.n_generators();
    let torsion_cols: Vec<(usize, BigUint)> = diag
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_one())
        .map(|(j, d)| (j, d.to_biguint().unwrap()))
        .collect();
    let images = (0..n)
        .map(|i| {
            let torsion = torsion_cols
                .iter()
                .map(|(j, d)| {
                    let val = v.get(i, *j);
                    let modulus = BigInt::from(d.clone());
                    let mut r = val % &modulus;
                    if r.is_negative() {
                        r += &modulus;
                    }
                    r.to_biguint().unwrap()
                })
                .collect();
            let free = (rank..n).map(|j| v.get(i, j).clone()).collect();
            (torsion, free)
        })
        .collect();
    AbelianizationMap {
        invariants: AbelianInvariants {
            free_rank: n - rank,
            torsion: torsion_cols.into_iter().map(|(_, d)| d).collect(),
        },
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;

    fn invariants(text: &str) -> (usize, Vec<u64>) {
        let p = parse_presentation(text).unwrap();
        let inv = abelian_invariants(&p);
        (inv.free_rank, inv.torsion_u64())
    }

    #[test]
    fn cyclic_seven() {
        assert_eq!(invariants("< z | z^7 >"), (0, vec![7]));
    }

    #[test]
    fn free_group_rank_two() {
        assert_eq!(invariants("< a, b | >"), (2, vec![]));
    }

    #[test]
    fn klein_four() {
        assert_eq!(invariants("< a, b | a^2, b^2, a b a^-1 b^-1 >"), (0, vec![2, 2]));
    }

    #[test]
    fn s3_abelianizes_to_z2() {
        assert_eq!(invariants("< a, b | a^2, b^3, (a b)^2 >"), (0, vec![2]));
    }

    #[test]
    fn infinite_dihedral() {
        assert_eq!(invariants("< a, b | a^2, b^2 >"), (0, vec![2, 2]));
    }

    #[test]
    fn relator_reordering_and_inversion_do_not_matter() {
        let a = invariants("< a, b | a^2, b^3, (a b)^2 >");
        let b = invariants("< a, b | b^3, (a b)^2, a^2 >");
        let c = invariants("< a, b | a^-2, b^3, (b^-1 a^-1)^2 >");
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn display_forms() {
        let p = parse_presentation("< a, b | a^2 >").unwrap();
        assert_eq!(abelian_invariants(&p).to_string(), "Z x Z2");
        let free = parse_presentation("< a, b | >").unwrap();
        assert_eq!(abelian_invariants(&free).to_string(), "Z^2");
        let t = parse_presentation("< a | a >").unwrap();
        assert_eq!(abelian_invariants(&t).to_string(), "1");
    }

    #[test]
    fn abelianization_map_of_klein_four() {
        let p = parse_presentation("< a, b | a^2, b^2, a b a^-1 b^-1 >").unwrap();
        let map = abelianization_map(&p);
        assert_eq!(map.invariants.torsion_u64(), vec![2, 2]);
        assert_eq!(map.invariants.free_rank, 0);
        // The two generator images must span (Z2)^2.
        let imgs: Vec<Vec<u64>> = map
            .images
            .iter()
            .map(|(t, _)| t.iter().map(|x| u64::try_from(x).unwrap()).collect())
            .collect();
        assert_ne!(imgs[0], vec![0, 0]);
        assert_ne!(imgs[1], vec![0, 0]);
        assert_ne!(imgs[0], imgs[1]);
    }
}
