//! Permanental polynomials and permanental nullity.
//!
//! The canonical polynomial here is monic: per(xI - A), which equals
//! (-1)^n per(A - xI). Root multiplicities are unchanged by the sign
//! normalization, so the nullity is convention-independent. The fast route
//! runs the inclusion-exclusion permanent kernel over degree-1 integer
//! polynomials; the slow route sums principal-submatrix permanents and is
//! kept as a correctness oracle.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, IndexSet};
use crate::permanent::{permanent, ryser_kernel, KernelRing};
use crate::scalar::{format_exact, Rational};

/// Cap for the polynomial-entry kernel.
pub const MAX_POLY_N: usize = 20;

/// Cap for the principal-sums route: it computes C(n,i) submatrix
/// permanents per coefficient, so it is oracle-grade only.
pub const MAX_PRINCIPAL_SUMS_N: usize = 14;

/// Dense univariate polynomial with exact coefficients, stored leading
/// first: `coefficient(i)` is b_i, the coefficient of x^(degree - i).
/// A permanental polynomial of an n x n matrix has exactly n + 1 slots
/// and b_0 = 1 under the monic normalization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

impl UnivariatePoly {
    /// Builds from coefficients in descending powers; must be non-empty.
    pub fn from_descending(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        UnivariatePoly { coeffs }
    }

    pub fn from_descending_i64(coeffs: &[i64]) -> Self {
        Self::from_descending(coeffs.iter().map(|&c| crate::scalar::rat(c)).collect())
    }

    /// Formal degree (slot count minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// b_i, the coefficient of x^(degree - i).
    pub fn coefficient(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of x^power.
    pub fn coeff_of_power(&self, power: usize) -> Rational {
        if power > self.degree() {
            Rational::zero()
        } else {
            self.coeffs[self.degree() - power].clone()
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }

    /// Multiplicity of zero as a root: the number of trailing zero
    /// coefficients.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .rev()
            .take_while(|c| c.is_zero())
            .count()
    }

    /// Index of the last nonzero coefficient, if any.
    pub fn last_nonzero_index(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Same polynomial scaled by (-1)^degree: converts between the monic
    /// normalization per(xI - A) and the raw per(A - xI).
    pub fn with_raw_sign(&self) -> Self {
        if self.degree() % 2 == 0 {
            self.clone()
        } else {
            UnivariatePoly {
                coeffs: self.coeffs.iter().map(|c| -c).collect(),
            }
        }
    }

    /// Space-separated coefficient list, leading first.
    pub fn coefficient_list(&self) -> String {
        self.coeffs
            .iter()
            .map(format_exact)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.degree();
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = deg - i;
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let coeff_str = if mag.is_one() && power > 0 {
                String::new()
            } else if mag.is_integer() {
                format_exact(&mag)
            } else {
                format!("({})", format_exact(&mag))
            };
            match power {
                0 => write!(f, "{}", if coeff_str.is_empty() { "1".into() } else { coeff_str })?,
                1 => write!(f, "{coeff_str}x")?,
                _ => write!(f, "{coeff_str}x^{power}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense integer polynomial for the kernel, stored ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            IntPoly(Vec::new())
        } else {
            IntPoly(vec![c])
        }
    }

    fn linear(c0: BigInt, c1: BigInt) -> Self {
        let mut p = IntPoly(vec![c0, c1]);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }
}

impl KernelRing for IntPoly {
    fn ring_zero() -> Self {
        IntPoly(Vec::new())
    }
    fn ring_one() -> Self {
        IntPoly::constant(BigInt::one())
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        if rhs.0.len() > self.0.len() {
            self.0.resize(rhs.0.len(), BigInt::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
        self.trim();
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        if rhs.0.len() > self.0.len() {
            self.0.resize(rhs.0.len(), BigInt::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
        self.trim();
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.0.is_empty() || rhs.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly(out)
    }
    fn is_zero_value(&self) -> bool {
        self.0.is_empty()
    }
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

/// Monic permanental polynomial per(xI - A), computed by running the
/// inclusion-exclusion kernel over degree-1 polynomial entries. Rational
/// matrices are row-rescaled to integers first and the coefficients divided
/// back at the end.
pub fn perm_poly(a: &ExactMatrix) -> Result<UnivariatePoly> {
    let n = require_square(a, "permanental polynomial")?;
    if n > MAX_POLY_N {
        return Err(Error::Resource(format!(
            "permanental polynomial cap is n <= {MAX_POLY_N}, got {n}"
        )));
    }
    // Row i of (xI - A), scaled by d_i: off-diagonal -d_i*a_ij, diagonal
    // d_i*x - d_i*a_ii. The result is (prod d_i) * per(xI - A).
    let (scaled, scales) = a.clear_denominators();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let c0 = -&scaled[i][j];
            if i == j {
                entries.push(IntPoly::linear(c0, scales[i].clone()));
            } else {
                entries.push(IntPoly::constant(c0));
            }
        }
    }
    let product: BigInt = scales.into_iter().product();
    let raw = ryser_kernel(n, &entries);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for (power, c) in raw.0.into_iter().enumerate() {
        coeffs[n - power] = Rational::new(c, product.clone());
    }
    debug_assert!(coeffs[0].is_one(), "monic normalization failed");
    Ok(UnivariatePoly::from_descending(coeffs))
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c);
        // Advance to the next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// The same polynomial as [`perm_poly`], assembled coefficient-by-
/// coefficient from principal submatrix permanents:
/// b_i = (-1)^i * sum over |S| = i of per(A[S,S]).
pub fn perm_poly_principal_sums(a: &ExactMatrix) -> Result<UnivariatePoly> {
    let n = require_square(a, "permanental polynomial")?;
    if n > MAX_PRINCIPAL_SUMS_N {
        return Err(Error::Resource(format!(
            "principal-sums route cap is n <= {MAX_PRINCIPAL_SUMS_N}, got {n}"
        )));
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut sum = Rational::zero();
        let mut failure: Option<Error> = None;
        for_each_combination(n, i, |subset| {
            if failure.is_some() {
                return;
            }
            let s = IndexSet::new(subset.to_vec()).expect("combinations are sorted");
            match a.submatrix(&s, &s).and_then(|sub| permanent(&sub)) {
                Ok(p) => sum += p,
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if i % 2 == 1 {
            sum = -sum;
        }
        coeffs.push(sum);
    }
    Ok(UnivariatePoly::from_descending(coeffs))
}

/// Permanental nullity: the multiplicity of zero as a root of the
/// permanental polynomial, i.e. n minus the index of the last nonzero b_i.
pub fn perm_nullity(a: &ExactMatrix) -> Result<usize> {
    let poly = perm_poly(a)?;
    Ok(poly.zero_root_multiplicity())
}
