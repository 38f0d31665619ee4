//! Dense matrices over exact rationals: submatrix extraction, exact rank,
//! and an exact positive-semidefiniteness test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_zero_pm1, rat, Rational};

/// Sorted, duplicate-free sequence of 0-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Builds an index set from arbitrary order; duplicates are rejected.
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("duplicate index in index set"));
        }
        Ok(IndexSet(indices))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// The full set {0, .., n-1}.
    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Vec<usize> {
        s.0
    }
}

/// Dense rectangular matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| crate::scalar::format_exact(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Input(format!(
                "matrix payload has {} entries, expected {}x{} = {}",
                data.len(),
                rows,
                cols,
                rows * cols
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Integer literal constructor; panics on ragged input.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| rat(v))).collect();
        ExactMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|v| !v.is_negative())
    }

    pub fn entries_zero_pm1(&self) -> bool {
        self.data.iter().all(is_zero_pm1)
    }

    pub fn diagonal_is_zero(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| self.get(i, i).is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entry-wise absolute value.
    pub fn abs(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).abs())
    }

    /// Submatrix with rows indexed by `row_set` and columns by `col_set`,
    /// in index order.
    pub fn submatrix(&self, row_set: &IndexSet, col_set: &IndexSet) -> Result<Self> {
        if row_set.max().is_some_and(|m| m >= self.rows) {
            return Err(Error::input("row index out of range"));
        }
        if col_set.max().is_some_and(|m| m >= self.cols) {
            return Err(Error::input("column index out of range"));
        }
        let mut data = Vec::with_capacity(row_set.len() * col_set.len());
        for i in row_set.iter() {
            for j in col_set.iter() {
                data.push(self.get(i, j).clone());
            }
        }
        Ok(ExactMatrix {
            rows: row_set.len(),
            cols: col_set.len(),
            data,
        })
    }

    /// Per-row integer rescaling: returns `(B, d)` where `d[i]` is the lcm of
    /// row i's denominators and `B = diag(d) * self` has integer entries.
    pub(crate) fn clear_denominators(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut scaled = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut d = BigInt::from(1);
            for j in 0..self.cols {
                d = d.lcm(self.get(i, j).denom());
            }
            let row: Vec<BigInt> = (0..self.cols)
                .map(|j| {
                    let e = self.get(i, j);
                    e.numer() * (&d / e.denom())
                })
                .collect();
            scaled.push(row);
            scales.push(d);
        }
        (scaled, scales)
    }

    /// Classical linear-algebra rank, computed exactly by fraction-free
    /// (Bareiss) elimination on the row-rescaled integer matrix.
    pub fn rank_exact(&self) -> usize {
        let (mut a, _) = self.clear_denominators();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        let mut prev = BigInt::from(1);
        let mut col = 0usize;
        while rank < rows && col < cols {
            let pivot_row = (rank..rows).find(|&i| !a[i][col].is_zero());
            let Some(p) = pivot_row else {
                col += 1;
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..rows {
                for j in col + 1..cols {
                    // Bareiss one-step update; division by the previous
                    // pivot is exact by Sylvester's identity.
                    let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                    debug_assert!((&num % &prev).is_zero());
                    a[i][j] = num / &prev;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Exact positive-semidefiniteness test for symmetric matrices:
    /// pivoted Schur-complement recursion over rationals.
    ///
    /// Errors on non-square or non-symmetric input.
    pub fn psd_check(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::input("psd check requires a square matrix"));
        }
        if !self.is_symmetric() {
            return Err(Error::input("psd check requires a symmetric matrix"));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        Ok(psd_recursive(&mut a))
    }
}

fn psd_recursive(a: &mut Vec<Vec<Rational>>) -> bool {
    let n = a.len();
    if n == 0 {
        return true;
    }
    if (0..n).all(|i| a[i][i].is_zero()) {
        // Zero diagonal forces a zero matrix: a nonzero off-diagonal entry
        // would violate a_ii * a_jj >= a_ij^2.
        return a.iter().all(|row| row.iter().all(|v| v.is_zero()));
    }
    // Pivot on the largest diagonal entry (lowest index on ties). If it is
    // not strictly positive, some diagonal entry is negative.
    let pivot = (0..n).reduce(|best, i| if a[i][i] > a[best][best] { i } else { best });
    let p = pivot.unwrap();
    if !a[p][p].is_positive() {
        return false;
    }
    a.swap(0, p);
    for row in a.iter_mut() {
        row.swap(0, p);
    }
    let d = a[0][0].clone();
    let mut schur: Vec<Vec<Rational>> = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut row = Vec::with_capacity(n - 1);
        for j in 1..n {
            row.push(&a[i][j] - &a[i][0] * &a[0][j] / &d);
        }
        schur.push(row);
    }
    psd_recursive(&mut schur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use proptest::prelude::*;

    /// Independent oracle: plain Gaussian elimination over rationals.
    fn rank_gauss(m: &ExactMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..m.rows()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..m.rows() {
                let factor = &a[i][col] / &a[rank][col];
                for j in col..m.cols() {
                    let v = &a[i][j] - &factor * &a[rank][j];
                    a[i][j] = v;
                }
            }
            rank += 1;
            if rank == m.rows() {
                break;
            }
        }
        rank
    }

    pub(crate) fn matrix_b() -> ExactMatrix {
        ExactMatrix::from_int_rows(&[
            &[0, 0, 1, -1],
            &[0, 0, 1, 1],
            &[1, 1, 0, 1],
            &[-1, 1, 1, 0],
        ])
    }

    #[test]
    fn index_set_rejects_duplicates() {
        assert!(IndexSet::new(vec![2, 1, 2]).is_err());
        assert_eq!(IndexSet::new(vec![2, 0, 1]).unwrap().as_slice(), &[0, 1, 2]);
    }

    #[test]
    fn submatrix_principal_of_b() {
        let b = matrix_b();
        let s = IndexSet::new(vec![1, 2, 3]).unwrap();
        let sub = b.submatrix(&s, &s).unwrap();
        assert_eq!(
            sub,
            ExactMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
        );
    }

    #[test]
    fn submatrix_full_is_identity_operation() {
        let b = matrix_b();
        let all = IndexSet::full(4);
        assert_eq!(b.submatrix(&all, &all).unwrap(), b);
    }

    #[test]
    fn submatrix_leading_of_b() {
        let b = matrix_b();
        let s = IndexSet::new(vec![0, 1, 2]).unwrap();
        assert_eq!(
            b.submatrix(&s, &s).unwrap(),
            ExactMatrix::from_int_rows(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]])
        );
    }

    #[test]
    fn submatrix_out_of_range() {
        let b = matrix_b();
        let s = IndexSet::new(vec![4]).unwrap();
        assert!(b.submatrix(&s, &IndexSet::empty()).is_err());
    }

    #[test]
    fn rank_basics() {
        assert_eq!(ExactMatrix::identity(3).rank_exact(), 3);
        assert_eq!(ExactMatrix::zeros(4, 4).rank_exact(), 0);
        assert_eq!(ExactMatrix::zeros(0, 0).rank_exact(), 0);
        // det(B) = 4, so B has full rank. Cross-checked by the Gauss oracle.
        let b = matrix_b();
        assert_eq!(rank_gauss(&b), 4);
        assert_eq!(b.rank_exact(), 4);
    }

    #[test]
    fn rank_of_rational_matrix() {
        let m = ExactMatrix::from_fn(2, 3, |i, j| ratio((i + j) as i64, 2));
        assert_eq!(m.rank_exact(), rank_gauss(&m));
    }

    #[test]
    fn psd_small_cases() {
        let yes = ExactMatrix::from_int_rows(&[&[2, 1], &[1, 2]]);
        assert!(yes.psd_check().unwrap());
        let no = ExactMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert!(!no.psd_check().unwrap());
        assert!(ExactMatrix::zeros(3, 3).psd_check().unwrap());
        let neg = ExactMatrix::from_int_rows(&[&[-1]]);
        assert!(!neg.psd_check().unwrap());
    }

    #[test]
    fn psd_gram_example() {
        // G * G^T for G = [[1,2],[0,1],[3,-1]].
        let g = ExactMatrix::from_int_rows(&[&[1, 2], &[0, 1], &[3, -1]]);
        let gram = ExactMatrix::from_fn(3, 3, |i, j| {
            (0..2).map(|k| g.get(i, k) * g.get(j, k)).sum()
        });
        assert!(gram.psd_check().unwrap());
    }

    #[test]
    fn psd_rejects_bad_input() {
        assert!(ExactMatrix::zeros(2, 3).psd_check().is_err());
        let asym = ExactMatrix::from_int_rows(&[&[1, 2], &[0, 1]]);
        assert!(asym.psd_check().is_err());
    }

    #[test]
    fn psd_zero_diag_nonzero_row_rejected_deep() {
        // Needs the recursion: first pivot is fine, the trailing block has a
        // zero diagonal but nonzero off-diagonal entries.
        let m = ExactMatrix::from_int_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert!(!m.psd_check().unwrap());
    }

    fn small_matrix(n: usize, seed: u64) -> ExactMatrix {
        let mut state = seed;
        ExactMatrix::from_fn(n, n, |_, _| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            rat(((state >> 33) % 7) as i64 - 3)
        })
    }

    #[test]
    fn rank_matches_gauss_oracle_on_random_matrices() {
        for n in 1..=8 {
            for seed in 0..40 {
                let m = small_matrix(n, seed * 31 + n as u64);
                assert_eq!(m.rank_exact(), rank_gauss(&m), "n={n} seed={seed}");
            }
        }
    }

    proptest! {
        // Gram matrices are PSD by construction, and every principal
        // submatrix of a PSD matrix is PSD.
        #[test]
        fn gram_matrices_are_psd(entries in proptest::collection::vec(-4i64..=4, 1..=16)) {
            let n = (entries.len() as f64).sqrt() as usize;
            if n == 0 { return Ok(()); }
            let g = ExactMatrix::from_fn(n, n, |i, j| rat(entries[i * n + j]));
            let gram = ExactMatrix::from_fn(n, n, |i, j| {
                (0..n).map(|k| g.get(i, k) * g.get(j, k)).sum()
            });
            prop_assert!(gram.psd_check().unwrap());
            if n > 1 {
                let s = IndexSet::new((0..n).step_by(2).collect()).unwrap();
                let principal = gram.submatrix(&s, &s).unwrap();
                prop_assert!(principal.psd_check().unwrap());
            }
        }

        // PSD status is invariant under simultaneous row/column permutation.
        #[test]
        fn psd_permutation_invariant(seed in 0u64..500, n in 1usize..=5, rot in 0usize..5) {
            let m = small_matrix(n, seed);
            let sym = ExactMatrix::from_fn(n, n, |i, j| m.get(i, j) + m.get(j, i));
            let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
            let permuted = ExactMatrix::from_fn(n, n, |i, j| sym.get(perm[i], perm[j]).clone());
            prop_assert_eq!(sym.psd_check().unwrap(), permuted.psd_check().unwrap());
        }
    }
}
