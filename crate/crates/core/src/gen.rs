//! Seeded generators for the matrix and signed-graph classes the theorems
//! address, plus the built-in worked examples.
//!
//! Generation is a pure function of (config, seed): the draw order below is
//! fixed and, together with the splitmix64 stream, forms the reproducibility
//! contract. Class membership is never assumed downstream; the verification
//! harness recomputes every class predicate from the instance itself.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::matrix::ExactMatrix;
use crate::rng::SplitMix64;
use crate::scalar::{rat, ratio, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Symmetric {0,+-1} matrix with zero diagonal (a signed adjacency).
    Pm1Symmetric,
    /// Symmetric matrix with entries in {0, 1, .., bound}.
    NonnegSymmetric,
    /// Gram matrix G * G^T of a random integer n x r matrix.
    GramPsd,
    /// Switching class of a random unsigned graph: sigma(u,v) = D(u)D(v).
    BalancedSigned,
    /// Random signed graph adjusted to contain a negative cycle.
    UnbalancedSigned,
    /// Cactus whose every cycle carries exactly one negative edge.
    UniformOddParity,
}

impl GenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GenKind::Pm1Symmetric => "pm1_symmetric",
            GenKind::NonnegSymmetric => "nonneg_symmetric",
            GenKind::GramPsd => "gram_psd",
            GenKind::BalancedSigned => "balanced_signed",
            GenKind::UnbalancedSigned => "unbalanced_signed",
            GenKind::UniformOddParity => "uniform_odd_parity",
        }
    }

    pub fn produces_graph(self) -> bool {
        matches!(
            self,
            GenKind::BalancedSigned | GenKind::UnbalancedSigned | GenKind::UniformOddParity
        )
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm1_symmetric" => Ok(GenKind::Pm1Symmetric),
            "nonneg_symmetric" => Ok(GenKind::NonnegSymmetric),
            "gram_psd" => Ok(GenKind::GramPsd),
            "balanced_signed" => Ok(GenKind::BalancedSigned),
            "unbalanced_signed" => Ok(GenKind::UnbalancedSigned),
            "uniform_odd_parity" => Ok(GenKind::UniformOddParity),
            other => Err(Error::Input(format!(
                "unknown generator kind `{other}` (expected one of: pm1_symmetric, \
                 nonneg_symmetric, gram_psd, balanced_signed, unbalanced_signed, \
                 uniform_odd_parity)"
            ))),
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Generator configuration. `density` is an exact probability in [0, 1];
/// for `uniform_odd_parity` it is reused as the cycle-vs-pendant block
/// preference. `entry_bound` applies to nonneg_symmetric entries and
/// gram_psd factor entries; `inner_dim` is gram_psd's r (default n).
#[derive(Clone, Debug)]
pub struct GenConfig {
    pub kind: GenKind,
    pub n: usize,
    pub density: Rational,
    pub entry_bound: u64,
    pub inner_dim: Option<usize>,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenConfig {
            kind,
            n,
            density: ratio(1, 2),
            entry_bound: 2,
            inner_dim: None,
            seed,
        }
    }

    pub fn with_density(mut self, density: Rational) -> Self {
        self.density = density;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn density_ratio(&self) -> Result<(u64, u64)> {
        if self.density < rat(0) || self.density > rat(1) {
            return Err(Error::input("density must lie in [0, 1]"));
        }
        let num = self.density.numer().to_u64();
        let den = self.density.denom().to_u64();
        match (num, den) {
            (Some(n), Some(d)) if d > 0 => Ok((n, d)),
            _ => Err(Error::input("density numerator/denominator too large")),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::input("generator needs n >= 1"));
        }
        self.density_ratio()?;
        if matches!(
            self.kind,
            GenKind::UnbalancedSigned | GenKind::UniformOddParity
        ) && self.n < 3
        {
            return Err(Error::Input(format!(
                "{} needs n >= 3 to contain a cycle",
                self.kind
            )));
        }
        if matches!(self.kind, GenKind::NonnegSymmetric | GenKind::GramPsd)
            && self.entry_bound == 0
        {
            return Err(Error::input("entry bound must be >= 1"));
        }
        Ok(())
    }
}

/// A generated instance: matrix kinds produce matrices, graph kinds signed
/// graphs.
#[derive(Clone, Debug)]
pub enum Generated {
    Matrix(ExactMatrix),
    Graph(SignedGraph),
}

impl Generated {
    /// Every instance has a matrix view; graphs give their signed adjacency.
    pub fn into_matrix(self) -> ExactMatrix {
        match self {
            Generated::Matrix(m) => m,
            Generated::Graph(g) => g.to_matrix(),
        }
    }

    pub fn as_graph(&self) -> Option<&SignedGraph> {
        match self {
            Generated::Graph(g) => Some(g),
            Generated::Matrix(_) => None,
        }
    }
}

pub fn generate(cfg: &GenConfig) -> Result<Generated> {
    cfg.validate()?;
    let (dnum, dden) = cfg.density_ratio()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let n = cfg.n;
    Ok(match cfg.kind {
        GenKind::Pm1Symmetric => {
            let mut m = ExactMatrix::zeros(n, n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.next_ratio(dnum, dden) {
                        let val = if rng.next_sign_is_negative() { -1 } else { 1 };
                        m.set(u, v, rat(val));
                        m.set(v, u, rat(val));
                    }
                }
            }
            Generated::Matrix(m)
        }
        GenKind::NonnegSymmetric => {
            let mut m = ExactMatrix::zeros(n, n);
            for u in 0..n {
                for v in u..n {
                    if rng.next_ratio(dnum, dden) {
                        let val = 1 + rng.next_below(cfg.entry_bound) as i64;
                        m.set(u, v, rat(val));
                        m.set(v, u, rat(val));
                    }
                }
            }
            Generated::Matrix(m)
        }
        GenKind::GramPsd => {
            let r = cfg.inner_dim.unwrap_or(n);
            let bound = cfg.entry_bound as i64;
            let mut factor = vec![vec![0i64; r]; n];
            for row in factor.iter_mut() {
                for cell in row.iter_mut() {
                    if rng.next_ratio(dnum, dden) {
                        let mag = 1 + rng.next_below(bound as u64) as i64;
                        *cell = if rng.next_sign_is_negative() { -mag } else { mag };
                    }
                }
            }
            let m = ExactMatrix::from_fn(n, n, |i, j| {
                rat((0..r).map(|k| factor[i][k] * factor[j][k]).sum())
            });
            Generated::Matrix(m)
        }
        GenKind::BalancedSigned => {
            let mut base = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.next_ratio(dnum, dden) {
                        base.push((u, v));
                    }
                }
            }
            let d: Vec<Sign> = (0..n)
                .map(|_| {
                    if rng.next_sign_is_negative() {
                        Sign::Negative
                    } else {
                        Sign::Positive
                    }
                })
                .collect();
            let edges = base
                .into_iter()
                .map(|(u, v)| (u, v, d[u].mul(d[v])))
                .collect();
            Generated::Graph(SignedGraph::new(n, edges)?)
        }
        GenKind::UnbalancedSigned => Generated::Graph(gen_unbalanced(&mut rng, n, dnum, dden)?),
        GenKind::UniformOddParity => Generated::Graph(gen_odd_cactus(&mut rng, n, dnum, dden)?),
    })
}

fn random_sign(rng: &mut SplitMix64) -> Sign {
    if rng.next_sign_is_negative() {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

fn gen_unbalanced(rng: &mut SplitMix64, n: usize, dnum: u64, dden: u64) -> Result<SignedGraph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_ratio(dnum, dden) {
                edges.push((u, v, random_sign(rng)));
            }
        }
    }
    // Guarantee a cycle: complete the triangle on {0,1,2} if needed.
    let mut g = SignedGraph::new(n, edges)?;
    if g.cycle_parity_class()? == crate::graph::CycleParity::Acyclic {
        let mut edges = g.edges().to_vec();
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            if g.sign_of(u, v).is_none() {
                edges.push((u, v, random_sign(rng)));
            }
        }
        g = SignedGraph::new(n, edges)?;
    }
    // Guarantee imbalance: make some cycle negative by flipping one of its
    // edges.
    if let crate::graph::Balance::Balanced(_) = g.balance() {
        let mut cycle = Vec::new();
        g.for_each_simple_cycle(|path, _| {
            cycle = path.to_vec();
            std::ops::ControlFlow::Break(())
        });
        let (a, b) = (cycle[0], cycle[1]);
        let edges = g
            .edges()
            .iter()
            .map(|&(u, v, s)| {
                if (u, v) == (a.min(b), a.max(b)) {
                    (u, v, s.mul(Sign::Negative))
                } else {
                    (u, v, s)
                }
            })
            .collect();
        g = SignedGraph::new(n, edges)?;
    }
    Ok(g)
}

/// Cactus whose blocks are cycles (each with exactly one negative edge) or
/// pendant edges; blocks meet in at most one vertex, so the simple cycles
/// are exactly the cycle blocks and every one of them is negative.
fn gen_odd_cactus(rng: &mut SplitMix64, n: usize, dnum: u64, dden: u64) -> Result<SignedGraph> {
    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    let mut used = 1usize; // vertex 0 starts the graph
    let mut first_block = true;
    while used < n {
        let remaining = n - used;
        let want_cycle = remaining >= 2 && (first_block || rng.next_ratio(dnum, dden));
        if want_cycle {
            // Cycle of length in [3, remaining + 1] through one existing
            // attach vertex and L - 1 fresh ones.
            let max_len = (remaining + 1).min(8);
            let len = 3 + rng.next_below((max_len - 2) as u64) as usize;
            let attach = rng.next_below(used as u64) as usize;
            let mut cycle = vec![attach];
            cycle.extend(used..used + len - 1);
            used += len - 1;
            let neg_pos = rng.next_below(len as u64) as usize;
            for i in 0..len {
                let sign = if i == neg_pos { Sign::Negative } else { Sign::Positive };
                edges.push((cycle[i], cycle[(i + 1) % len], sign));
            }
            first_block = false;
        } else {
            let attach = rng.next_below(used as u64) as usize;
            edges.push((attach, used, random_sign(rng)));
            used += 1;
        }
    }
    SignedGraph::new(n, edges)
}

/// Built-in worked examples, by their published names.
pub fn example_matrix(name: &str) -> Result<ExactMatrix> {
    match name {
        "example_gen" => Ok(ExactMatrix::from_int_rows(&[&[0, 1], &[0, 0]])),
        "matrix_B" => Ok(ExactMatrix::from_int_rows(&[
            &[0, 0, 1, -1],
            &[0, 0, 1, 1],
            &[1, 1, 0, 1],
            &[-1, 1, 1, 0],
        ])),
        other => Err(Error::Input(format!(
            "unknown example `{other}` (expected `example_gen` or `matrix_B`)"
        ))),
    }
}
