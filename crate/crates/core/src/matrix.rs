//! Exact integer matrices and Smith normal form.
//!
//! Entries are arbitrary-precision: intermediate growth during elimination
//! is unbounded even when inputs and outputs are small.

use num_bigint::BigInt;
use num_traits::Signed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major plain-text export, one row per line.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Nonzero diagonal of the Smith normal form: d1 | d2 | ... | dr, all
    /// positive.
    pub fn smith_normal_form(&self) -> Vec<BigInt> {
        self.clone().snf_in_place(None)
    }

    /// Smith normal form together with the accumulated column transform V:
    /// if D = U * self * V with U, V unimodular, the i-th row of V is the
    /// image of the i-th standard basis vector in the new coordinates.
    pub fn smith_normal_form_with_transform(&self) -> (Vec<BigInt>, IntMatrix) {
        let mut v = IntMatrix::identity(self.cols);
        let diag = self.clone().snf_in_place(Some(&mut v));
        (diag, v)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] -= q * row[b]
    fn row_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.get(b, j);
            let v = self.get(a, j) - delta;
            self.set(a, j, v);
        }
    }

    /// col[a] -= q * col[b]
    fn col_axpy(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.get(i, b);
            let v = self.get(i, a) - delta;
            self.set(i, a, v);
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, a);
            self.set(i, a, v);
        }
    }

    /// Pivot strategy: repeatedly bring the entry of least absolute value
    /// to the corner, clear its row and column by Euclidean steps, then fix
    /// the divisibility chain.
    fn snf_in_place(mut self, mut transform: Option<&mut IntMatrix>) -> Vec<BigInt> {
        let mut diag: Vec<BigInt> = Vec::new();
        let mut k = 0usize;
        'outer: while k < self.rows.min(self.cols) {
            // Least-absolute-value nonzero entry in the trailing submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..self.rows {
                for j in k..self.cols {
                    if self.get(i, j).is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if self.get(i, j).abs() < self.get(pi, pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            if let Some(v) = transform.as_deref_mut() {
                v.swap_cols(k, pj);
            }

            // Clear column k by Euclidean row steps; any nonzero remainder
            // is strictly smaller than the pivot, so re-select.
            for i in k + 1..self.rows {
                if self.get(i, k).is_zero() {
                    continue;
                }
                let q = self.get(i, k) / self.get(k, k);
                self.row_axpy(i, k, &q);
                if !self.get(i, k).is_zero() {
                    continue 'outer;
                }
            }
            // Clear row k by Euclidean column steps.
            for j in k + 1..self.cols {
                if self.get(k, j).is_zero() {
                    continue;
                }
                let q = self.get(k, j) / self.get(k, k);
                self.col_axpy(j, k, &q);
                if let Some(v) = transform.as_deref_mut() {
                    v.col_axpy(j, k, &q);
                }
                if !self.get(k, j).is_zero() {
                    continue 'outer;
                }
            }
            // Divisibility: the pivot must divide the rest of the
            // submatrix; otherwise fold an offending row in and redo.
            for i in k + 1..self.rows {
                for j in k + 1..self.cols {
                    if (self.get(i, j) % self.get(k, k)).is_zero() {
                        continue;
                    }
                    let minus_one = BigInt::from(-1);
                    self.row_axpy(k, i, &minus_one);
                    continue 'outer;
                }
            }
            if self.get(k, k).is_negative() {
                self.negate_col(k);
                if let Some(v) = transform.as_deref_mut() {
                    v.negate_col(k);
                }
            }
            diag.push(self.get(k, k).clone());
            k += 1;
        }
        diag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn snf_i64(rows: Vec<Vec<i64>>) -> Vec<i64> {
        IntMatrix::from_rows(rows)
            .smith_normal_form()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn diagonal_matrix() {
        assert_eq!(snf_i64(vec![vec![2, 0], vec![0, 2]]), vec![2, 2]);
    }

    #[test]
    fn two_by_two_with_unit() {
        // gcd of entries 1, |det| 2, so divisors are 1, 2.
        assert_eq!(snf_i64(vec![vec![1, 2], vec![3, 4]]), vec![1, 2]);
    }

    #[test]
    fn zero_matrix_has_empty_diagonal() {
        assert_eq!(snf_i64(vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn rectangular() {
        assert_eq!(snf_i64(vec![vec![2, 4, 4]]), vec![2]);
        assert_eq!(snf_i64(vec![vec![6], vec![4]]), vec![2]);
    }

    #[test]
    fn divisibility_fix_is_applied() {
        // diag(2, 3) has SNF (1, 6).
        assert_eq!(snf_i64(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn transform_maps_lattice_to_diagonal() {
        let m = IntMatrix::from_rows(vec![vec![2, 1], vec![0, 3]]);
        let (diag, v) = m.smith_normal_form_with_transform();
        assert_eq!(diag.len(), 2);
        // V must be unimodular: |det| = 1 for the 2x2 case.
        let det = v.get(0, 0) * v.get(1, 1) - v.get(0, 1) * v.get(1, 0);
        assert_eq!(det.abs(), BigInt::from(1));
    }

    /// Brute-force k-th determinantal divisor: gcd of all k x k minors.
    fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in combos(n, k - 1) {
                    if rest.iter().all(|&r| r > first) {
                        let mut c = vec![first];
                        c.append(&mut rest);
                        out.push(c);
                    }
                }
            }
            out
        }
        fn det(m: &IntMatrix, rs: &[usize], cs: &[usize]) -> BigInt {
            if rs.len() == 1 {
                return m.get(rs[0], cs[0]).clone();
            }
            let mut acc = BigInt::zero();
            for (i, &r) in rs.iter().enumerate() {
                let sub_rs: Vec<usize> = rs.iter().copied().filter(|&x| x != r).collect();
                let minor = det(m, &sub_rs, &cs[1..]);
                let term = m.get(r, cs[0]) * minor;
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let mut g = BigInt::zero();
        for rs in combos(m.rows(), k) {
            for cs in combos(m.cols(), k) {
                g = num_integer::gcd(g.clone(), det(m, &rs, &cs));
            }
        }
        g.abs()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// SNF diagonal entries are the quotients of determinantal divisors.
        #[test]
        fn matches_determinantal_divisors(
            rows in 1usize..=4, cols in 1usize..=4,
            seed in proptest::collection::vec(-9i64..=9, 16),
        ) {
            let m = IntMatrix::from_rows(
                (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect(),
            );
            let diag = m.smith_normal_form();
            let mut prod = BigInt::from(1);
            for (k, d) in diag.iter().enumerate() {
                prod *= d;
                prop_assert_eq!(&prod, &determinantal_divisor(&m, k + 1),
                    "divisor mismatch at k={}", k + 1);
            }
            // Rank: the (r+1)-st determinantal divisor vanishes.
            if diag.len() < rows.min(cols) {
                prop_assert_eq!(determinantal_divisor(&m, diag.len() + 1), BigInt::zero());
            }
            // Divisibility chain.
            for w in diag.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }

        /// SNF is invariant under row/column permutations and adding an
        /// integer multiple of one row to another.
        #[test]
        fn metamorphic_invariance(
            seed in proptest::collection::vec(-9i64..=9, 16),
            swap_a in 0usize..4, swap_b in 0usize..4,
            addsrc in 0usize..4, adddst in 0usize..4, mult in -3i64..=3,
        ) {
            let m = IntMatrix::from_rows(
                (0..4).map(|i| (0..4).map(|j| seed[i * 4 + j]).collect()).collect(),
            );
            let baseline = m.smith_normal_form();

            let mut swapped = m.clone();
            swapped.swap_rows(swap_a, swap_b);
            swapped.swap_cols(swap_b, swap_a);
            prop_assert_eq!(swapped.smith_normal_form(), baseline.clone());

            if addsrc != adddst {
                let mut added = m.clone();
                let q = BigInt::from(-mult);
                added.row_axpy(adddst, addsrc, &q);
                prop_assert_eq!(added.smith_normal_form(), baseline);
            }
        }
    }
}
