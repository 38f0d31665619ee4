//! Exact matrix permanents.
//!
//! The workhorse is a Ryser inclusion-exclusion kernel with Gray-code column
//! updates, generic over the coefficient ring so the same code computes
//! scalar permanents (over i128 or BigInt) and permanental polynomials
//! (over integer polynomials). A brute-force permutation sum is kept as an
//! independent oracle.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, IndexSet};
use crate::scalar::Rational;

/// Largest order accepted by the brute-force oracle by default.
pub const NAIVE_CAP_DEFAULT: usize = 9;

/// Hard cap for the inclusion-exclusion kernel; O(2^n * n) exact scalar
/// operations stop being practical past this.
pub const MAX_PERMANENT_N: usize = 30;

/// Minimal ring interface for the inclusion-exclusion kernel.
pub(crate) trait KernelRing: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn is_zero_value(&self) -> bool;
}

impl KernelRing for BigInt {
    fn ring_zero() -> Self {
        BigInt::zero()
    }
    fn ring_one() -> Self {
        BigInt::one()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl KernelRing for i128 {
    fn ring_zero() -> Self {
        0
    }
    fn ring_one() -> Self {
        1
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero_value(&self) -> bool {
        *self == 0
    }
}

impl KernelRing for Rational {
    fn ring_zero() -> Self {
        Rational::zero()
    }
    fn ring_one() -> Self {
        Rational::one()
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// Ryser's formula in the Nijenhuis-Wilf form,
///   per(A) = (-1)^n * sum over nonempty S of (-1)^|S| * prod_i r_i(S),
/// where r_i(S) is row i's sum over the columns in S. Subsets are walked in
/// Gray-code order so each step adjusts every row sum by a single entry.
pub(crate) fn ryser_kernel<T: KernelRing>(n: usize, entries: &[T]) -> T {
    debug_assert_eq!(entries.len(), n * n);
    if n == 0 {
        return T::ring_one();
    }
    let mut total = T::ring_zero();
    let mut row_sums = vec![T::ring_zero(); n];
    let mut subset_size = 0usize;
    for g in 1u64..(1u64 << n) {
        let j = g.trailing_zeros() as usize;
        let added = (g ^ (g >> 1)) >> j & 1 == 1;
        if added {
            subset_size += 1;
            for i in 0..n {
                row_sums[i].add_assign_ref(&entries[i * n + j]);
            }
        } else {
            subset_size -= 1;
            for i in 0..n {
                row_sums[i].sub_assign_ref(&entries[i * n + j]);
            }
        }
        if row_sums.iter().any(T::is_zero_value) {
            continue;
        }
        let mut prod = row_sums[0].clone();
        for r in &row_sums[1..] {
            prod = prod.mul_ref(r);
        }
        if (n - subset_size) % 2 == 0 {
            total.add_assign_ref(&prod);
        } else {
            total.sub_assign_ref(&prod);
        }
    }
    total
}

/// Permutation-sum recursion with zero pruning; the oracle the fast kernel
/// is checked against.
fn naive_kernel<T: KernelRing>(n: usize, entries: &[T]) -> T {
    fn rec<T: KernelRing>(
        n: usize,
        entries: &[T],
        row: usize,
        used: &mut [bool],
        prefix: &T,
        acc: &mut T,
    ) {
        if row == n {
            acc.add_assign_ref(prefix);
            return;
        }
        for col in 0..n {
            if used[col] || entries[row * n + col].is_zero_value() {
                continue;
            }
            used[col] = true;
            let next = prefix.mul_ref(&entries[row * n + col]);
            rec(n, entries, row + 1, used, &next, acc);
            used[col] = false;
        }
    }
    let mut acc = T::ring_zero();
    let mut used = vec![false; n];
    rec(n, entries, 0, &mut used, &T::ring_one(), &mut acc);
    acc
}

fn require_square(a: &ExactMatrix, what: &str) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::Input(format!(
            "{what} requires a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(a.rows())
}

fn integer_entries(a: &ExactMatrix) -> Vec<BigInt> {
    let n = a.rows();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(a.get(i, j).numer().clone());
        }
    }
    out
}

/// Whether the Gray-code accumulation fits i128 with margin: every partial
/// product is bounded by prod_i max(1, sum_j |a_ij|) and at most 2^n such
/// terms accumulate.
fn fits_i128(n: usize, entries: &[BigInt]) -> bool {
    let mut bound = BigInt::one() << n;
    for i in 0..n {
        let row_abs: BigInt = entries[i * n..(i + 1) * n].iter().map(|v| v.abs()).sum();
        bound *= row_abs.max(BigInt::one());
    }
    bound < BigInt::from(i128::MAX / 4)
}

/// Exact permanent by direct permutation enumeration. Refuses orders above
/// `cap`; this operation exists to check the fast kernel, not to be fast.
pub fn permanent_naive_capped(a: &ExactMatrix, cap: usize) -> Result<Rational> {
    let n = require_square(a, "permanent")?;
    if n > cap {
        return Err(Error::Resource(format!(
            "brute-force permanent refused for n={n} > cap {cap}"
        )));
    }
    if a.is_integer() {
        let entries = integer_entries(a);
        Ok(Rational::from_integer(naive_kernel(n, &entries)))
    } else {
        let entries: Vec<Rational> = (0..n * n)
            .map(|k| a.get(k / n, k % n).clone())
            .collect();
        Ok(naive_kernel(n, &entries))
    }
}

/// [`permanent_naive_capped`] with the default cap of 9.
pub fn permanent_naive(a: &ExactMatrix) -> Result<Rational> {
    permanent_naive_capped(a, NAIVE_CAP_DEFAULT)
}

/// Exact permanent via the inclusion-exclusion kernel, O(2^n * n) scalar
/// operations. Rational inputs are handled by per-row denominator clearing:
/// per(diag(d) A) = (prod d_i) per(A).
pub fn permanent(a: &ExactMatrix) -> Result<Rational> {
    let n = require_square(a, "permanent")?;
    if n > MAX_PERMANENT_N {
        return Err(Error::Resource(format!(
            "permanent cap is n <= {MAX_PERMANENT_N}, got {n}"
        )));
    }
    if a.is_integer() {
        let entries = integer_entries(a);
        let value = if fits_i128(n, &entries) {
            let small: Vec<i128> = entries
                .iter()
                .map(|v| i128::try_from(v).expect("bounded by fits_i128"))
                .collect();
            BigInt::from(ryser_kernel(n, &small))
        } else {
            ryser_kernel(n, &entries)
        };
        return Ok(Rational::from_integer(value));
    }
    let (scaled, scales) = a.clear_denominators();
    let entries: Vec<BigInt> = scaled.into_iter().flatten().collect();
    let value = ryser_kernel(n, &entries);
    let denom: BigInt = scales.into_iter().product();
    Ok(Rational::new(value, denom))
}

/// Permanent of the submatrix `A[I, J]`; requires |I| = |J|. The empty
/// submatrix has permanent 1.
pub fn permanent_sub(a: &ExactMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<Rational> {
    if rows.len() != cols.len() {
        return Err(Error::Input(format!(
            "permanent_sub needs |I| = |J|, got {} and {}",
            rows.len(),
            cols.len()
        )));
    }
    permanent(&a.submatrix(rows, cols)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use proptest::prelude::*;

    fn matrix_b() -> ExactMatrix {
        ExactMatrix::from_int_rows(&[
            &[0, 0, 1, -1],
            &[0, 0, 1, 1],
            &[1, 1, 0, 1],
            &[-1, 1, 1, 0],
        ])
    }

    #[test]
    fn naive_examples() {
        let nilpotent = ExactMatrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(permanent_naive(&nilpotent).unwrap(), rat(0));
        assert_eq!(permanent_naive(&ExactMatrix::identity(4)).unwrap(), rat(1));
        let ones = ExactMatrix::from_fn(3, 3, |_, _| rat(1));
        assert_eq!(permanent_naive(&ones).unwrap(), rat(6));
    }

    #[test]
    fn naive_respects_cap() {
        let big = ExactMatrix::identity(10);
        assert!(matches!(permanent_naive(&big), Err(Error::Resource(_))));
        assert_eq!(permanent_naive_capped(&big, 10).unwrap(), rat(1));
    }

    #[test]
    fn non_square_rejected() {
        let m = ExactMatrix::zeros(2, 3);
        assert!(matches!(permanent(&m), Err(Error::Input(_))));
        assert!(matches!(permanent_naive(&m), Err(Error::Input(_))));
    }

    #[test]
    fn permanent_of_b_and_its_principal_submatrix() {
        let b = matrix_b();
        assert_eq!(permanent(&b).unwrap(), rat(0));
        let s = IndexSet::new(vec![1, 2, 3]).unwrap();
        assert_eq!(permanent_sub(&b, &s, &s).unwrap(), rat(2));
    }

    #[test]
    fn permanent_of_negative_triangle() {
        // Brute force over all 6 permutations gives -2.
        let t = ExactMatrix::from_int_rows(&[&[0, 1, 1], &[1, 0, -1], &[1, -1, 0]]);
        assert_eq!(permanent_naive(&t).unwrap(), rat(-2));
        assert_eq!(permanent(&t).unwrap(), rat(-2));
    }

    #[test]
    fn permanent_sub_edge_cases() {
        let b = matrix_b();
        let empty = IndexSet::empty();
        assert_eq!(permanent_sub(&b, &empty, &empty).unwrap(), rat(1));
        // per [[1,-1],[1,1]] = 1*1 + (-1)*1 = 0
        let i = IndexSet::new(vec![0, 1]).unwrap();
        let j = IndexSet::new(vec![2, 3]).unwrap();
        assert_eq!(permanent_sub(&b, &i, &j).unwrap(), rat(0));
        let uneven = IndexSet::new(vec![0]).unwrap();
        assert!(permanent_sub(&b, &uneven, &empty).is_err());
    }

    #[test]
    fn rational_entries_are_exact() {
        let m = ExactMatrix::from_fn(2, 2, |i, j| ratio(1, (1 + i + j) as i64));
        // per [[1, 1/2], [1/2, 1/3]] = 1/3 + 1/4 = 7/12
        assert_eq!(permanent(&m).unwrap(), ratio(7, 12));
        assert_eq!(permanent_naive(&m).unwrap(), ratio(7, 12));
    }

    #[test]
    fn empty_matrix_has_permanent_one() {
        let m = ExactMatrix::zeros(0, 0);
        assert_eq!(permanent(&m).unwrap(), rat(1));
        assert_eq!(permanent_naive(&m).unwrap(), rat(1));
    }

    #[test]
    fn kernel_cap_enforced() {
        let m = ExactMatrix::identity(31);
        assert!(matches!(permanent(&m), Err(Error::Resource(_))));
    }

    #[test]
    fn big_integer_path_matches_i128_path() {
        // Entries large enough to overflow the i128 bound check at n = 8.
        let m = ExactMatrix::from_fn(8, 8, |i, j| {
            rat(((i * 8 + j) as i64 % 13 - 6) * 1_000_000_000_000_000)
        });
        let entries = integer_entries(&m);
        assert!(!fits_i128(8, &entries));
        let fast = permanent(&m).unwrap();
        let slow = permanent_naive_capped(&m, 8).unwrap();
        assert_eq!(fast, slow);
    }

    fn arb_matrix(max_n: usize) -> impl Strategy<Value = ExactMatrix> {
        (1..=max_n)
            .prop_flat_map(|n| {
                proptest::collection::vec(-2i64..=2, n * n).prop_map(move |vals| {
                    ExactMatrix::from_fn(n, n, |i, j| rat(vals[i * n + j]))
                })
            })
    }

    proptest! {
        #[test]
        fn kernel_matches_oracle(m in arb_matrix(6)) {
            prop_assert_eq!(permanent(&m).unwrap(), permanent_naive(&m).unwrap());
        }

        #[test]
        fn transpose_invariance(m in arb_matrix(5)) {
            prop_assert_eq!(permanent(&m).unwrap(), permanent(&m.transpose()).unwrap());
        }

        // per(PAQ) = per(A) for permutations, per(DAD) = per(A) for +-1 D.
        #[test]
        fn permutation_and_signing_invariance(m in arb_matrix(5), rot in 0usize..5, mask in 0u32..32) {
            let n = m.rows();
            let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
            let permuted = ExactMatrix::from_fn(n, n, |i, j| m.get(perm[i], perm[j]).clone());
            prop_assert_eq!(permanent(&permuted).unwrap(), permanent(&m).unwrap());

            let d: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let signed = ExactMatrix::from_fn(n, n, |i, j| m.get(i, j) * rat(d[i] * d[j]));
            prop_assert_eq!(permanent(&signed).unwrap(), permanent(&m).unwrap());
        }
    }
}
