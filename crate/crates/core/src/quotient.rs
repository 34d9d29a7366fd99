//! Reconstruction of N(H)/H as a multiplication table from a coset table.
//!
//! N(H)/H acts regularly on the H-fixed cosets of G/H, so multiplying two
//! fixed cosets through transversal words yields a well-defined group table
//! without ever solving the word problem.

use crate::cayley::CayleyTable;
use crate::coset::CosetTable;

/// Multiplication table of N(H)/H on the fixed cosets of `t`.
///
/// Label `i` is the i-th fixed coset in ascending coset order; label 0 is
/// coset 0 (the subgroup itself). For a normal subgroup this is the full
/// quotient G/H of order `t.index()`.
pub fn quotient_on_fixed(t: &CosetTable) -> CayleyTable {
    let fixed = t.fixed_cosets();
    let reps = t.representatives();
    let mut label_of = vec![usize::MAX; t.index()];
    for (label, &coset) in fixed.iter().enumerate() {
        label_of[coset] = label;
    }
    let k = fixed.len();
    let mut table = vec![0u32; k * k];
    for (i, &ci) in fixed.iter().enumerate() {
        for (j, &cj) in fixed.iter().enumerate() {
            let product = t.trace(ci, &reps[cj]);
            let label = label_of[product];
            assert!(
                label != usize::MAX,
                "product of fixed cosets {ci} and {cj} left the fixed set"
            );
            table[i * k + j] = label as u32;
        }
    }
    let table = CayleyTable::from_flat_unchecked(k, table);
    debug_assert_eq!(table.validate(), Ok(()));
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::identify;
    use crate::coset::{todd_coxeter, EnumerationLimits};
    use crate::parse::parse_presentation;
    use crate::word::Word;

    #[test]
    fn quotient_of_cyclic_by_trivial_is_the_group() {
        let p = parse_presentation("< z | z^7 >").unwrap();
        let t = todd_coxeter(&p, &[], &EnumerationLimits::default()).unwrap();
        let q = quotient_on_fixed(&t);
        assert_eq!(q.order(), 7);
        assert_eq!(identify(&q).unwrap().name, "Z7");
    }

    #[test]
    fn self_normalizing_subgroup_gives_trivial_quotient() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(0)], &EnumerationLimits::default()).unwrap();
        let q = quotient_on_fixed(&t);
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn s3_quotient_by_normal_z3() {
        let p = parse_presentation("< a, b | a^2, b^3, (a b)^2 >").unwrap();
        let t = todd_coxeter(&p, &[Word::generator(1)], &EnumerationLimits::default()).unwrap();
        let q = quotient_on_fixed(&t);
        assert_eq!(q.order(), 2);
        assert_eq!(identify(&q).unwrap().name, "Z2");
    }
}
