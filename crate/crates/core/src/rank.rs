//! Permanental rank: the largest k such that some k x k submatrix has a
//! nonzero permanent.
//!
//! The search runs downward from a bipartite-matching upper bound on the
//! support. For nonnegative matrices the bound itself is the answer (no
//! cancellation can occur), which gives the fast path.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, IndexSet};
use crate::permanent::permanent_sub;
use crate::scalar::Rational;

/// Permanental rank with a certifying witness submatrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermRankResult {
    pub rank: usize,
    pub witness_rows: IndexSet,
    pub witness_cols: IndexSet,
    /// Nonzero for rank > 0; the empty submatrix has permanent 1.
    pub witness_permanent: Rational,
}

/// Directed support graph of a square matrix: arc i -> j iff A(i,j) != 0.
#[derive(Clone, Debug)]
pub struct SupportDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl SupportDigraph {
    pub fn from_matrix(a: &ExactMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::input("support digraph requires a square matrix"));
        }
        let n = a.rows();
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !a.get(i, j).is_zero() {
                    arcs.push((i, j));
                }
            }
        }
        Ok(SupportDigraph { n, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Maximum number of arcs inducing in-degree and out-degree at most one
    /// at every vertex; equals the bipartite matching bound on the support.
    pub fn max_degree_constrained_arcs(&self) -> usize {
        let adj = adjacency_from_arcs(self.n, self.n, &self.arcs);
        matching_size(self.n, &adj)
    }
}

fn adjacency_from_arcs(rows: usize, _cols: usize, arcs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); rows];
    for &(i, j) in arcs {
        adj[i].push(j);
    }
    adj
}

/// Kuhn's augmenting-path matching; `adj[i]` lists the columns reachable
/// from row i. Returns the maximum matching size.
fn matching_size(cols: usize, adj: &[Vec<usize>]) -> usize {
    fn try_augment(
        row: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        matched_col: &mut [Option<usize>],
    ) -> bool {
        for &col in &adj[row] {
            if seen[col] {
                continue;
            }
            seen[col] = true;
            if matched_col[col].is_none()
                || try_augment(matched_col[col].unwrap(), adj, seen, matched_col)
            {
                matched_col[col] = Some(row);
                return true;
            }
        }
        false
    }

    let mut matched_col = vec![None; cols];
    let mut size = 0;
    for row in 0..adj.len() {
        let mut seen = vec![false; cols];
        if try_augment(row, adj, &mut seen, &mut matched_col) {
            size += 1;
        }
    }
    size
}

/// Maximum bipartite matching between rows and columns joined where
/// A(i,j) != 0. An upper bound on the permanental rank of any matrix, and
/// exactly the permanental rank for nonnegative matrices.
pub fn support_matching_bound(a: &ExactMatrix) -> usize {
    let mut adj = vec![Vec::new(); a.rows()];
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if !a.get(i, j).is_zero() {
                adj[i].push(j);
            }
        }
    }
    matching_size(a.cols(), &adj)
}

/// Fast path for nonnegative matrices, where the matching bound is the rank.
pub fn perm_rank_nonnegative(a: &ExactMatrix) -> Result<usize> {
    if !a.is_nonnegative() {
        return Err(Error::input(
            "nonnegative fast path called with a negative entry present",
        ));
    }
    Ok(support_matching_bound(a))
}

struct Combinations {
    n: usize,
    k: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            k,
            current: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let (n, k) = (self.n, self.k);
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] != i + n - k {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Support bitmasks per row (matrix dimensions are capped well below 64).
fn support_masks(a: &ExactMatrix) -> Vec<u64> {
    (0..a.rows())
        .map(|i| {
            let mut m = 0u64;
            for j in 0..a.cols() {
                if !a.get(i, j).is_zero() {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect()
}

/// Matching size of the submatrix support restricted to `rows`/`cols`,
/// used to prune candidate index pairs before any permanent is computed.
fn submatrix_matching(masks: &[u64], rows: &[usize], cols: &[usize]) -> usize {
    let adj: Vec<Vec<usize>> = rows
        .iter()
        .map(|&i| {
            cols.iter()
                .enumerate()
                .filter(|&(_, &j)| masks[i] >> j & 1 == 1)
                .map(|(pos, _)| pos)
                .collect()
        })
        .collect();
    matching_size(cols.len(), &adj)
}

/// Exact permanental rank by downward search from the matching bound.
///
/// For each k from the bound down to 1, candidate row/column sets are
/// enumerated in lexicographic order (I-major), pairs whose support cannot
/// carry a full matching are pruned, and the first pair with a nonzero
/// permanent is returned. With `principal_only` the search is restricted to
/// I = J, which by itself suffices for positive semi-definite matrices.
pub fn perm_rank_exact(a: &ExactMatrix, principal_only: bool) -> Result<PermRankResult> {
    if principal_only && !a.is_square() {
        return Err(Error::input(
            "principal-only rank requires a square matrix",
        ));
    }
    let bound = support_matching_bound(a);
    let masks = support_masks(a);
    for k in (1..=bound).rev() {
        for rows in Combinations::new(a.rows(), k) {
            if principal_only {
                if submatrix_matching(&masks, &rows, &rows) < k {
                    continue;
                }
                if let Some(result) = try_pair(a, &rows, &rows)? {
                    return Ok(result);
                }
            } else {
                for cols in Combinations::new(a.cols(), k) {
                    if submatrix_matching(&masks, &rows, &cols) < k {
                        continue;
                    }
                    if let Some(result) = try_pair(a, &rows, &cols)? {
                        return Ok(result);
                    }
                }
            }
        }
    }
    Ok(PermRankResult {
        rank: 0,
        witness_rows: IndexSet::empty(),
        witness_cols: IndexSet::empty(),
        witness_permanent: Rational::from_integer(1.into()),
    })
}

fn try_pair(a: &ExactMatrix, rows: &[usize], cols: &[usize]) -> Result<Option<PermRankResult>> {
    let i = IndexSet::new(rows.to_vec()).expect("combinations are sorted");
    let j = IndexSet::new(cols.to_vec()).expect("combinations are sorted");
    let p = permanent_sub(a, &i, &j)?;
    if p.is_zero() {
        return Ok(None);
    }
    Ok(Some(PermRankResult {
        rank: rows.len(),
        witness_rows: i,
        witness_cols: j,
        witness_permanent: p,
    }))
}
