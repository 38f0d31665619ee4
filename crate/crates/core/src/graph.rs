//! Signed graphs: balance with certificates, switching, cycle parity, and
//! conversion to and from {0, +-1} symmetric matrices.

use std::collections::VecDeque;
use std::fmt;
use std::ops::ControlFlow;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{rat, Rational};

/// Default cap on enumerated simple cycles before a resource error.
pub const DEFAULT_CYCLE_CAP: usize = 4_000_000;

/// Edge sign.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn from_scalar(r: &Rational) -> Option<Sign> {
        if r.is_one() {
            Some(Sign::Positive)
        } else if (-r).is_one() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// Vector of +-1 vertex labels used for switching (diagonal similarity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingVector(Vec<Sign>);

impl SwitchingVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        SwitchingVector(signs)
    }

    pub fn all_positive(n: usize) -> Self {
        SwitchingVector(vec![Sign::Positive; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Sign {
        self.0[v]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }
}

/// Outcome of balance detection, with a checkable certificate either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Balance {
    /// A switching vector D with D(u) * D(v) = sigma(u,v) on every edge.
    Balanced(SwitchingVector),
    /// A cycle (vertex sequence, closed implicitly) with an odd number of
    /// negative edges.
    Unbalanced(Vec<usize>),
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced(_))
    }
}

/// Classification of the multiset of simple-cycle signs.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CycleParity {
    Acyclic,
    AllPositive,
    AllNegative,
    Mixed,
}

impl CycleParity {
    pub fn as_str(self) -> &'static str {
        match self {
            CycleParity::Acyclic => "acyclic",
            CycleParity::AllPositive => "all_positive",
            CycleParity::AllNegative => "all_negative",
            CycleParity::Mixed => "mixed",
        }
    }

    /// Uniform cycle parity: every cycle has the same parity of negative
    /// edges (vacuously true for forests).
    pub fn is_uniform(self) -> bool {
        !matches!(self, CycleParity::Mixed)
    }
}

/// Simple undirected graph with +-1 edge signs; no loops, no parallel
/// edges. Edges are stored with u < v, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<(usize, usize, Sign)>,
}

impl SignedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, Sign)>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v, s) in edges {
            if u == v {
                return Err(Error::Input(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            normalized.push((a, b, s));
        }
        normalized.sort_unstable_by_key(|&(u, v, _)| (u, v));
        if normalized.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::input("parallel edge"));
        }
        Ok(SignedGraph { n, edges: normalized })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, Sign)] {
        &self.edges
    }

    pub fn sign_of(&self, u: usize, v: usize) -> Option<Sign> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by_key(&(a, b), |&(x, y, _)| (x, y))
            .ok()
            .map(|idx| self.edges[idx].2)
    }

    /// Neighbor lists sorted by vertex index.
    pub fn adjacency(&self) -> Vec<Vec<(usize, Sign)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, s) in &self.edges {
            adj[u].push((v, s));
            adj[v].push((u, s));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(w, _)| w);
        }
        adj
    }

    /// Reads a signed graph off a {0,+-1} symmetric matrix with zero
    /// diagonal. Anything else is rejected.
    pub fn from_matrix(a: &ExactMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::input("adjacency matrix must be square"));
        }
        if !a.is_symmetric() {
            return Err(Error::input("adjacency matrix must be symmetric"));
        }
        if !a.diagonal_is_zero() {
            return Err(Error::input(
                "adjacency matrix must have a zero diagonal (loops are not modeled)",
            ));
        }
        let n = a.rows();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let e = a.get(u, v);
                if e.is_zero() {
                    continue;
                }
                let sign = Sign::from_scalar(e).ok_or_else(|| {
                    Error::Input(format!(
                        "entry ({u},{v}) = {} is not in {{0, 1, -1}}",
                        crate::scalar::format_exact(e)
                    ))
                })?;
                edges.push((u, v, sign));
            }
        }
        Ok(SignedGraph { n, edges })
    }

    /// Signed adjacency matrix.
    pub fn to_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.n, self.n);
        for &(u, v, s) in &self.edges {
            m.set(u, v, rat(s.value()));
            m.set(v, u, rat(s.value()));
        }
        m
    }

    /// 0/1 adjacency matrix of the same edge set.
    pub fn underlying_unsigned(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.n, self.n);
        for &(u, v, _) in &self.edges {
            m.set(u, v, rat(1));
            m.set(v, u, rat(1));
        }
        m
    }

    /// Balance detection by breadth-first label propagation. Balanced
    /// graphs yield a switching vector; unbalanced graphs yield a negative
    /// cycle assembled from the BFS tree plus the contradicting edge.
    pub fn balance(&self) -> Balance {
        let adj = self.adjacency();
        let mut label = vec![None; self.n];
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        for root in 0..self.n {
            if label[root].is_some() {
                continue;
            }
            label[root] = Some(Sign::Positive);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let lu = label[u].unwrap();
                for &(v, s) in &adj[u] {
                    let expected = lu.mul(s);
                    match label[v] {
                        None => {
                            label[v] = Some(expected);
                            parent[v] = Some(u);
                            queue.push_back(v);
                        }
                        Some(lv) if lv == expected => {}
                        Some(_) => {
                            return Balance::Unbalanced(tree_cycle(&parent, u, v));
                        }
                    }
                }
            }
        }
        let d = label.into_iter().map(|l| l.unwrap()).collect();
        Balance::Balanced(SwitchingVector::new(d))
    }

    pub fn is_balanced(&self) -> bool {
        self.balance().is_balanced()
    }

    /// Switched graph: sigma'(u,v) = D(u) * sigma(u,v) * D(v). An
    /// involution: switching twice with the same D restores the graph.
    pub fn switch(&self, d: &SwitchingVector) -> Result<SignedGraph> {
        if d.len() != self.n {
            return Err(Error::Input(format!(
                "switching vector length {} does not match {} vertices",
                d.len(),
                self.n
            )));
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v, s)| (u, v, d.get(u).mul(s).mul(d.get(v))))
            .collect();
        Ok(SignedGraph { n: self.n, edges })
    }

    /// Product of edge signs along a closed vertex sequence. Returns None if
    /// some consecutive pair is not an edge.
    pub fn cycle_sign(&self, cycle: &[usize]) -> Option<Sign> {
        if cycle.len() < 3 {
            return None;
        }
        let mut sign = Sign::Positive;
        for i in 0..cycle.len() {
            let s = self.sign_of(cycle[i], cycle[(i + 1) % cycle.len()])?;
            sign = sign.mul(s);
        }
        Some(sign)
    }

    /// Enumerates every simple cycle exactly once: cycles are rooted at
    /// their minimum vertex and oriented so the second vertex is smaller
    /// than the last. The callback may stop the walk early.
    pub fn for_each_simple_cycle(
        &self,
        mut f: impl FnMut(&[usize], Sign) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let adj = self.adjacency();
        let mut path = Vec::new();
        let mut on_path = vec![false; self.n];
        for root in 0..self.n {
            path.clear();
            path.push(root);
            on_path[root] = true;
            extend_cycle_search(&adj, root, &mut path, &mut on_path, Sign::Positive, &mut f)?;
            on_path[root] = false;
        }
        ControlFlow::Continue(())
    }

    /// Classifies the multiset of simple-cycle signs, enumerating at most
    /// `cap` cycles before giving up with a resource error.
    pub fn cycle_parity_class_capped(&self, cap: usize) -> Result<CycleParity> {
        let mut seen_positive = false;
        let mut seen_negative = false;
        let mut count = 0usize;
        let flow = self.for_each_simple_cycle(|_, sign| {
            count += 1;
            if count > cap {
                return ControlFlow::Break(());
            }
            match sign {
                Sign::Positive => seen_positive = true,
                Sign::Negative => seen_negative = true,
            }
            if seen_positive && seen_negative {
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            if seen_positive && seen_negative {
                return Ok(CycleParity::Mixed);
            }
            return Err(Error::Resource(format!(
                "cycle enumeration exceeded cap of {cap}"
            )));
        }
        Ok(match (seen_positive, seen_negative) {
            (false, false) => CycleParity::Acyclic,
            (true, false) => CycleParity::AllPositive,
            (false, true) => CycleParity::AllNegative,
            (true, true) => CycleParity::Mixed,
        })
    }

    pub fn cycle_parity_class(&self) -> Result<CycleParity> {
        self.cycle_parity_class_capped(DEFAULT_CYCLE_CAP)
    }
}

fn extend_cycle_search(
    adj: &[Vec<(usize, Sign)>],
    root: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    path_sign: Sign,
    f: &mut impl FnMut(&[usize], Sign) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let u = *path.last().unwrap();
    for &(v, s) in &adj[u] {
        if v == root && path.len() >= 3 {
            // Canonical orientation: second vertex below last vertex.
            if path[1] < path[path.len() - 1] {
                f(path, path_sign.mul(s))?;
            }
            continue;
        }
        if v <= root || on_path[v] {
            continue;
        }
        path.push(v);
        on_path[v] = true;
        extend_cycle_search(adj, root, path, on_path, path_sign.mul(s), f)?;
        on_path[v] = false;
        path.pop();
    }
    ControlFlow::Continue(())
}

/// Cycle through BFS-tree paths from u and v up to their meeting point,
/// closed by the edge (u, v).
fn tree_cycle(parent: &[Option<usize>], u: usize, v: usize) -> Vec<usize> {
    let chain = |mut x: usize| {
        let mut out = vec![x];
        while let Some(p) = parent[x] {
            out.push(p);
            x = p;
        }
        out
    };
    let up = chain(u);
    let vp = chain(v);
    // Trim the common tail above the lowest common ancestor.
    let mut i = up.len();
    let mut j = vp.len();
    while i > 1 && j > 1 && up[i - 2] == vp[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = up[..i].to_vec();
    cycle.extend(vp[..j - 1].iter().rev());
    cycle
}

/// D A D for a +-1 diagonal D: the matrix-level form of switching, valid
/// for any square matrix.
pub fn diag_similar(a: &ExactMatrix, d: &SwitchingVector) -> Result<ExactMatrix> {
    if !a.is_square() {
        return Err(Error::input("diagonal similarity requires a square matrix"));
    }
    if d.len() != a.rows() {
        return Err(Error::Input(format!(
            "switching vector length {} does not match matrix order {}",
            d.len(),
            a.rows()
        )));
    }
    Ok(ExactMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        a.get(i, j) * rat(d.get(i).value() * d.get(j).value())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle(signs: [Sign; 3]) -> SignedGraph {
        SignedGraph::new(
            3,
            vec![(0, 1, signs[0]), (0, 2, signs[1]), (1, 2, signs[2])],
        )
        .unwrap()
    }

    fn graph_of_b() -> SignedGraph {
        let b = ExactMatrix::from_int_rows(&[
            &[0, 0, 1, -1],
            &[0, 0, 1, 1],
            &[1, 1, 0, 1],
            &[-1, 1, 1, 0],
        ]);
        SignedGraph::from_matrix(&b).unwrap()
    }

    #[test]
    fn from_matrix_reads_edges() {
        let g = graph_of_b();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(
            g.edges(),
            &[
                (0, 2, Sign::Positive),
                (0, 3, Sign::Negative),
                (1, 2, Sign::Positive),
                (1, 3, Sign::Positive),
                (2, 3, Sign::Positive),
            ]
        );
    }

    #[test]
    fn from_matrix_validation() {
        let zero = ExactMatrix::zeros(3, 3);
        assert_eq!(SignedGraph::from_matrix(&zero).unwrap().edge_count(), 0);
        let neg_edge = ExactMatrix::from_int_rows(&[&[0, -1], &[-1, 0]]);
        let g = SignedGraph::from_matrix(&neg_edge).unwrap();
        assert_eq!(g.edges(), &[(0, 1, Sign::Negative)]);

        let loopy = ExactMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        assert!(SignedGraph::from_matrix(&loopy).is_err());
        let asym = ExactMatrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        assert!(SignedGraph::from_matrix(&asym).is_err());
        let big = ExactMatrix::from_int_rows(&[&[0, 2], &[2, 0]]);
        assert!(SignedGraph::from_matrix(&big).is_err());
    }

    #[test]
    fn graph_matrix_roundtrip() {
        let g = graph_of_b();
        assert_eq!(SignedGraph::from_matrix(&g.to_matrix()).unwrap(), g);
    }

    #[test]
    fn balance_of_triangles() {
        // (+,-,-): cycle sign +, balanced.
        let b = triangle([Sign::Positive, Sign::Negative, Sign::Negative]);
        let Balance::Balanced(d) = b.balance() else {
            panic!("expected balanced");
        };
        for &(u, v, s) in b.edges() {
            assert_eq!(d.get(u).mul(d.get(v)), s);
        }
        // (+,+,-): cycle sign -, unbalanced with the triangle as witness.
        let u = triangle([Sign::Positive, Sign::Positive, Sign::Negative]);
        let Balance::Unbalanced(cycle) = u.balance() else {
            panic!("expected unbalanced");
        };
        assert_eq!(u.cycle_sign(&cycle), Some(Sign::Negative));
    }

    #[test]
    fn balance_of_graph_b() {
        let g = graph_of_b();
        let Balance::Unbalanced(cycle) = g.balance() else {
            panic!("graph of B contains the negative cycle 0-2-3");
        };
        assert_eq!(g.cycle_sign(&cycle), Some(Sign::Negative));
    }

    #[test]
    fn switching_examples() {
        let c3 = triangle([Sign::Positive, Sign::Positive, Sign::Positive]);
        assert_eq!(c3.switch(&SwitchingVector::all_positive(3)).unwrap(), c3);

        let d = SwitchingVector::new(vec![Sign::Positive, Sign::Negative, Sign::Positive]);
        let switched = c3.switch(&d).unwrap();
        assert_eq!(
            switched.edges(),
            &[
                (0, 1, Sign::Negative),
                (0, 2, Sign::Positive),
                (1, 2, Sign::Negative),
            ]
        );
        assert_eq!(switched.switch(&d).unwrap(), c3);
        assert!(c3.switch(&SwitchingVector::all_positive(2)).is_err());
    }

    #[test]
    fn balanced_certificate_switches_to_all_positive() {
        let g = triangle([Sign::Positive, Sign::Negative, Sign::Negative]);
        let Balance::Balanced(d) = g.balance() else {
            panic!();
        };
        let switched = g.switch(&d).unwrap();
        assert!(switched.edges().iter().all(|&(_, _, s)| s == Sign::Positive));
        // Matrix form: D A_sigma D equals the underlying adjacency.
        let m = diag_similar(&g.to_matrix(), &d).unwrap();
        assert_eq!(m, g.underlying_unsigned());
    }

    #[test]
    fn parity_examples() {
        let forest = SignedGraph::new(4, vec![(0, 1, Sign::Negative), (2, 3, Sign::Positive)])
            .unwrap();
        assert_eq!(forest.cycle_parity_class().unwrap(), CycleParity::Acyclic);

        let neg = triangle([Sign::Positive, Sign::Positive, Sign::Negative]);
        assert_eq!(neg.cycle_parity_class().unwrap(), CycleParity::AllNegative);

        assert_eq!(
            graph_of_b().cycle_parity_class().unwrap(),
            CycleParity::Mixed
        );
    }

    #[test]
    fn cycle_enumeration_counts() {
        // Triangle: one cycle. K4: 4 triangles + 3 squares = 7.
        let c3 = triangle([Sign::Positive; 3]);
        let mut count = 0;
        c3.for_each_simple_cycle(|cycle, sign| {
            assert_eq!(cycle.len(), 3);
            assert_eq!(sign, Sign::Positive);
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 1);

        let mut edges = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((u, v, Sign::Positive));
            }
        }
        let k4 = SignedGraph::new(4, edges).unwrap();
        let mut count = 0;
        k4.for_each_simple_cycle(|_, _| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 7);
    }

    #[test]
    fn cycle_cap_is_enforced() {
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v, Sign::Positive));
            }
        }
        let k6 = SignedGraph::new(6, edges).unwrap();
        assert!(matches!(
            k6.cycle_parity_class_capped(3),
            Err(Error::Resource(_))
        ));
        assert_eq!(
            k6.cycle_parity_class().unwrap(),
            CycleParity::AllPositive
        );
    }

    #[test]
    fn underlying_unsigned_is_entrywise_abs() {
        let g = graph_of_b();
        assert_eq!(g.underlying_unsigned(), g.to_matrix().abs());
        let single = SignedGraph::new(2, vec![(0, 1, Sign::Negative)]).unwrap();
        assert_eq!(
            single.underlying_unsigned(),
            ExactMatrix::from_int_rows(&[&[0, 1], &[1, 0]])
        );
        let edgeless = SignedGraph::new(3, vec![]).unwrap();
        assert_eq!(edgeless.underlying_unsigned(), ExactMatrix::zeros(3, 3));
    }

    #[test]
    fn graph_validation() {
        assert!(SignedGraph::new(3, vec![(1, 1, Sign::Positive)]).is_err());
        assert!(SignedGraph::new(2, vec![(0, 2, Sign::Positive)]).is_err());
        assert!(SignedGraph::new(
            3,
            vec![(0, 1, Sign::Positive), (1, 0, Sign::Negative)]
        )
        .is_err());
    }

    // Balance and cycle parity are independent algorithms; they must agree:
    // balanced <=> parity in {Acyclic, AllPositive}.
    #[test]
    fn balance_agrees_with_parity_on_all_small_graphs() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let m = pairs.len();
            // All sign patterns over all edge subsets is too much; sweep
            // edge subsets with signs derived from a rolling pattern.
            for subset in 0..(1u32 << m) {
                for sign_seed in [0u32, 0b1010101, 0b1100110, u32::MAX] {
                    let edges: Vec<(usize, usize, Sign)> = pairs
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| subset >> k & 1 == 1)
                        .map(|(k, &(u, v))| {
                            let s = if sign_seed >> (k % 7) & 1 == 1 {
                                Sign::Negative
                            } else {
                                Sign::Positive
                            };
                            (u, v, s)
                        })
                        .collect();
                    let g = SignedGraph::new(n, edges).unwrap();
                    let balanced = g.is_balanced();
                    let parity = g.cycle_parity_class().unwrap();
                    let expected =
                        matches!(parity, CycleParity::Acyclic | CycleParity::AllPositive);
                    assert_eq!(balanced, expected, "n={n} subset={subset:b}");
                    // Switching never changes any cycle sign, so parity is
                    // switching-invariant.
                    let d = SwitchingVector::new(
                        (0..n)
                            .map(|i| {
                                if (subset >> (i % 5)) & 1 == 1 {
                                    Sign::Negative
                                } else {
                                    Sign::Positive
                                }
                            })
                            .collect(),
                    );
                    let switched = g.switch(&d).unwrap();
                    assert_eq!(switched.cycle_parity_class().unwrap(), parity);
                }
            }
        }
    }
}
