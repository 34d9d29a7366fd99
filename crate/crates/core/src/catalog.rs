//! Catalog of all isomorphism classes of groups of order <= 24, built from
//! explicit constructions and keyed by structural fingerprint.

use once_cell::sync::Lazy;

use crate::cayley::{CayleyTable, Fingerprint};
use crate::perm::Permutation;

/// Known number of isomorphism classes for each order 1..=24.
pub(crate) const CLASS_COUNTS: [usize; 24] = [
    1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15,
];

pub(crate) fn cyclic(n: usize) -> CayleyTable {
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    CayleyTable::from_flat_unchecked(n, table)
}

pub(crate) fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for xa in 0..na {
        for xb in 0..nb {
            for ya in 0..na {
                for yb in 0..nb {
                    let x = xa * nb + xb;
                    let y = ya * nb + yb;
                    table[x * n + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
                }
            }
        }
    }
    CayleyTable::from_flat_unchecked(n, table)
}

/// `Z_n ⋊ Z_m` with the generator of `Z_m` acting by `a -> a^t`.
pub(crate) fn semidirect_cyclic(n: usize, m: usize, t: usize) -> CayleyTable {
    // Powers of the twist; t^m must be the identity action.
    let mut tp = vec![1usize; m + 1];
    for j in 1..=m {
        tp[j] = (tp[j - 1] * t) % n;
    }
    assert_eq!(tp[m] % n, 1 % n, "t^m != 1 mod n");
    let size = n * m;
    let mut table = vec![0u32; size * size];
    for i in 0..n {
        for j in 0..m {
            for i2 in 0..n {
                for j2 in 0..m {
                    let x = j * n + i;
                    let y = j2 * n + i2;
                    let ri = (i + i2 * tp[j]) % n;
                    let rj = (j + j2) % m;
                    table[x * size + y] = (rj * n + ri) as u32;
                }
            }
        }
    }
    CayleyTable::from_flat_unchecked(size, table)
}

/// Dicyclic group of order 4n: `a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1`.
pub(crate) fn dicyclic(n: usize) -> CayleyTable {
    let two_n = 2 * n;
    let size = 4 * n;
    let label = |k: usize, e: usize| e * two_n + k;
    let mut table = vec![0u32; size * size];
    for k in 0..two_n {
        for e in 0..2 {
            for k2 in 0..two_n {
                for e2 in 0..2 {
                    let (rk, re) = if e == 0 {
                        ((k + k2) % two_n, e2)
                    } else if e2 == 0 {
                        ((k + two_n - k2) % two_n, 1)
                    } else {
                        ((k + two_n - k2 + n) % two_n, 0)
                    };
                    table[label(k, e) * size + label(k2, e2)] = label(rk, re) as u32;
                }
            }
        }
    }
    CayleyTable::from_flat_unchecked(size, table)
}

/// `(Z_f1 x Z_f2 x ...) ⋊ Z_m` with the generator of `Z_m` acting by the
/// integer matrix `mat` (rows index output coordinates).
pub(crate) fn semidirect_abelian(factors: &[usize], m: usize, mat: &[Vec<usize>]) -> CayleyTable {
    let dim = factors.len();
    let a_size: usize = factors.iter().product();
    let size = a_size * m;
    let encode = |v: &[usize]| -> usize {
        let mut idx = 0;
        for i in (0..dim).rev() {
            idx = idx * factors[i] + v[i];
        }
        idx
    };
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut v = vec![0; dim];
        for i in 0..dim {
            v[i] = idx % factors[i];
            idx /= factors[i];
        }
        v
    };
    let apply = |v: &[usize]| -> Vec<usize> {
        (0..dim)
            .map(|i| {
                let mut acc = 0;
                for j in 0..dim {
                    acc += mat[i][j] * v[j];
                }
                acc % factors[i]
            })
            .collect()
    };
    // mat^m must act as the identity.
    for unit in 0..dim {
        let mut v = vec![0; dim];
        v[unit] = 1;
        let mut w = v.clone();
        for _ in 0..m {
            w = apply(&w);
        }
        assert_eq!(v, w, "matrix order does not divide m");
    }
    let mut table = vec![0u32; size * size];
    for ai in 0..a_size {
        for j in 0..m {
            let v = decode(ai);
            for ai2 in 0..a_size {
                for j2 in 0..m {
                    let mut v2 = decode(ai2);
                    for _ in 0..j {
                        v2 = apply(&v2);
                    }
                    let sum: Vec<usize> =
                        (0..dim).map(|i| (v[i] + v2[i]) % factors[i]).collect();
                    let x = j * a_size + ai;
                    let y = j2 * a_size + ai2;
                    table[x * size + y] = (((j + j2) % m) * a_size + encode(&sum)) as u32;
                }
            }
        }
    }
    CayleyTable::from_flat_unchecked(size, table)
}

/// Central product `D4 ∘ Z4`: quotient of `D4 x Z4` by the diagonal central
/// subgroup of order 2.
fn central_product_d4_z4() -> CayleyTable {
    let d4 = semidirect_cyclic(4, 2, 3);
    let z4 = cyclic(4);
    let prod = direct_product(&d4, &z4);
    // r^2 has label 2 in d4 (j=0, i=2); pair (r^2, 2) has label 2*4 + 2.
    let center_elt = 2 * 4 + 2;
    let sub = prod.subgroup_closure(&[center_elt]);
    assert_eq!(sub.len(), 2);
    prod.quotient(&sub).expect("central subgroup is normal")
}

/// `SL(2,3)`: 2x2 matrices over F_3 of determinant 1.
fn sl2_3() -> CayleyTable {
    let mut mats: Vec<[usize; 4]> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if (3 + a * d % 3 - b * c % 3) % 3 == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let id = [1, 0, 0, 1];
    mats.sort_unstable();
    let pos = mats.iter().position(|m| *m == id).unwrap();
    mats.swap(0, pos);
    mats[1..].sort_unstable();
    assert_eq!(mats.len(), 24);
    let index = |m: &[usize; 4]| mats.iter().position(|x| x == m).unwrap();
    let mut table = vec![0u32; 24 * 24];
    for (i, x) in mats.iter().enumerate() {
        for (j, y) in mats.iter().enumerate() {
            let prod = [
                (x[0] * y[0] + x[1] * y[2]) % 3,
                (x[0] * y[1] + x[1] * y[3]) % 3,
                (x[2] * y[0] + x[3] * y[2]) % 3,
                (x[2] * y[1] + x[3] * y[3]) % 3,
            ];
            table[i * 24 + j] = index(&prod) as u32;
        }
    }
    CayleyTable::from_flat_unchecked(24, table)
}

fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images.to_vec()).unwrap()
}

/// The remaining order-24 group `(Z6 x Z2) ⋊ Z2`: generated by an order-3
/// element, an order-4 element inverting it, and an order-2 element
/// inverting the order-4 one.
fn g_z6z2_z2() -> CayleyTable {
    let z = perm(&[1, 2, 0, 3, 4, 5, 6]);
    let r = perm(&[0, 2, 1, 4, 5, 6, 3]);
    let s = perm(&[0, 1, 2, 3, 6, 5, 4]);
    let t = CayleyTable::from_permutations(&[z, r, s]);
    assert_eq!(t.order(), 24);
    t
}

fn abelian(factors: &[usize]) -> CayleyTable {
    let mut t = cyclic(factors[0]);
    for &f in &factors[1..] {
        t = direct_product(&t, &cyclic(f));
    }
    t
}

fn abelian_name(factors: &[usize]) -> String {
    factors
        .iter()
        .map(|f| format!("Z{f}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// Every isomorphism class of groups of order 1..=24, as (name, table).
pub(crate) fn all_groups() -> Vec<(String, CayleyTable)> {
    let mut out: Vec<(String, CayleyTable)> = Vec::new();
    let mut ab = |factors: &[usize]| (abelian_name(factors), abelian(factors));

    // Abelian groups by invariant factor lists.
    let abelian_lists: &[&[usize]] = &[
        &[1],
        &[2],
        &[3],
        &[4],
        &[2, 2],
        &[5],
        &[6],
        &[7],
        &[8],
        &[4, 2],
        &[2, 2, 2],
        &[9],
        &[3, 3],
        &[10],
        &[11],
        &[12],
        &[6, 2],
        &[13],
        &[14],
        &[15],
        &[16],
        &[8, 2],
        &[4, 4],
        &[4, 2, 2],
        &[2, 2, 2, 2],
        &[17],
        &[18],
        &[6, 3],
        &[19],
        &[20],
        &[10, 2],
        &[21],
        &[22],
        &[23],
        &[24],
        &[12, 2],
        &[6, 2, 2],
    ];
    for list in abelian_lists {
        out.push(ab(list));
    }

    let s3 = semidirect_cyclic(3, 2, 2);
    let d4 = semidirect_cyclic(4, 2, 3);
    let q8 = dicyclic(2);
    let a4 = CayleyTable::from_permutations(&[perm(&[1, 2, 0, 3]), perm(&[1, 0, 3, 2])]);
    let dic3 = dicyclic(3);
    let z2 = cyclic(2);
    let z3 = cyclic(3);
    let swap = vec![vec![0, 1], vec![1, 0]];
    let neg_id3 = vec![vec![2, 0], vec![0, 2]];

    let nonabelian: Vec<(String, CayleyTable)> = vec![
        ("S3".into(), s3.clone()),
        ("D4".into(), d4.clone()),
        ("Q8".into(), q8.clone()),
        ("D5".into(), semidirect_cyclic(5, 2, 4)),
        ("A4".into(), a4.clone()),
        ("D6".into(), semidirect_cyclic(6, 2, 5)),
        ("Dic3".into(), dic3.clone()),
        ("D7".into(), semidirect_cyclic(7, 2, 6)),
        ("D8".into(), semidirect_cyclic(8, 2, 7)),
        ("SD16".into(), semidirect_cyclic(8, 2, 3)),
        ("Q16".into(), dicyclic(4)),
        ("M4(2)".into(), semidirect_cyclic(8, 2, 5)),
        ("D4xZ2".into(), direct_product(&d4, &z2)),
        ("Q8xZ2".into(), direct_product(&q8, &z2)),
        ("D4oZ4".into(), central_product_d4_z4()),
        ("Z4:Z4".into(), semidirect_cyclic(4, 4, 3)),
        ("(Z2xZ2):Z4".into(), semidirect_abelian(&[2, 2], 4, &swap)),
        ("D9".into(), semidirect_cyclic(9, 2, 8)),
        ("Z3xS3".into(), direct_product(&z3, &s3)),
        ("Dih(Z3xZ3)".into(), semidirect_abelian(&[3, 3], 2, &neg_id3)),
        ("D10".into(), semidirect_cyclic(10, 2, 9)),
        ("Dic5".into(), dicyclic(5)),
        ("F20".into(), semidirect_cyclic(5, 4, 2)),
        ("Z7:Z3".into(), semidirect_cyclic(7, 3, 2)),
        ("D11".into(), semidirect_cyclic(11, 2, 10)),
        (
            "S4".into(),
            CayleyTable::from_permutations(&[perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]),
        ),
        ("A4xZ2".into(), direct_product(&a4, &z2)),
        ("SL(2,3)".into(), sl2_3()),
        ("D12".into(), semidirect_cyclic(12, 2, 11)),
        ("Dic6".into(), dicyclic(6)),
        ("Z3:Z8".into(), semidirect_cyclic(3, 8, 2)),
        ("Z3xD4".into(), direct_product(&z3, &d4)),
        ("Z3xQ8".into(), direct_product(&z3, &q8)),
        ("S3xZ4".into(), direct_product(&s3, &cyclic(4))),
        ("S3xZ2xZ2".into(), direct_product(&s3, &abelian(&[2, 2]))),
        ("Dic3xZ2".into(), direct_product(&dic3, &z2)),
        ("(Z6xZ2):Z2".into(), g_z6z2_z2()),
    ];
    out.extend(nonabelian);
    out
}

static CATALOG: Lazy<Vec<(usize, Fingerprint, String)>> = Lazy::new(|| {
    let groups = all_groups();
    let mut entries: Vec<(usize, Fingerprint, String)> = groups
        .iter()
        .map(|(name, t)| (t.order(), t.fingerprint(), name.clone()))
        .collect();
    entries.sort_by(|a, b| (a.0, &a.2).cmp(&(b.0, &b.2)));
    // The catalog must be complete and fingerprint-separated; both are
    // structural facts about groups of order <= 24 checked here once.
    for order in 1..=24 {
        let n = entries.iter().filter(|(o, _, _)| *o == order).count();
        assert_eq!(
            n, CLASS_COUNTS[order - 1],
            "catalog holds {n} groups of order {order}"
        );
    }
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if entries[i].0 == entries[j].0 && entries[i].1 == entries[j].1 {
                panic!(
                    "fingerprint collision at order {}: {} vs {}",
                    entries[i].0, entries[i].2, entries[j].2
                );
            }
        }
    }
    entries
});

pub(crate) fn lookup(order: usize, fp: &Fingerprint) -> Option<String> {
    CATALOG
        .iter()
        .find(|(o, f, _)| *o == order && f == fp)
        .map(|(_, _, name)| name.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_and_separates() {
        // Force the lazy build; its internal asserts check class counts and
        // fingerprint uniqueness.
        assert_eq!(CATALOG.len(), 74);
    }

    #[test]
    fn every_catalog_table_is_a_group() {
        for (name, t) in all_groups() {
            assert_eq!(t.validate(), Ok(()), "{name} is not a valid group table");
        }
    }

    #[test]
    fn a4_fingerprint() {
        let a4 = all_groups()
            .into_iter()
            .find(|(n, _)| n == "A4")
            .unwrap()
            .1;
        assert_eq!(a4.order_multiset(), vec![(1, 1), (2, 3), (3, 8)]);
        assert_eq!(a4.derived_subgroup().len(), 4);
        assert!(!a4.is_abelian());
    }

    #[test]
    fn squares_count_separates_order_16_pairs() {
        let groups = all_groups();
        let get = |name: &str| {
            groups
                .iter()
                .find(|(n, _)| n == name)
                .unwrap()
                .1
                .fingerprint()
        };
        let q8z2 = get("Q8xZ2");
        let z4z4 = get("Z4:Z4");
        assert_eq!(q8z2.order_multiset, z4z4.order_multiset);
        assert_eq!(q8z2.center_order, z4z4.center_order);
        assert_eq!(q8z2.derived_order, z4z4.derived_order);
        assert_eq!(q8z2.exponent, z4z4.exponent);
        assert_ne!(q8z2.squares, z4z4.squares);

        let pauli = get("D4oZ4");
        let v4z4 = get("(Z2xZ2):Z4");
        assert_eq!(pauli.order_multiset, v4z4.order_multiset);
        assert_ne!(pauli.squares, v4z4.squares);
    }

    #[test]
    fn identify_names_standard_groups() {
        use crate::cayley::identify;
        assert_eq!(identify(&cyclic(1)).unwrap().name, "Z1");
        assert_eq!(identify(&cyclic(7)).unwrap().name, "Z7");
        assert_eq!(identify(&abelian(&[2, 2])).unwrap().name, "Z2xZ2");
        assert_eq!(identify(&semidirect_cyclic(7, 3, 2)).unwrap().name, "Z7:Z3");
        assert_eq!(identify(&dicyclic(2)).unwrap().name, "Q8");
        let err = identify(&cyclic(25)).unwrap_err();
        assert!(matches!(err, crate::cayley::CayleyError::OrderOutsideCatalog(25)));
    }
}
