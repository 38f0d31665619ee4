//! Sachs subgraphs of signed graphs: streaming enumeration, the signed
//! coefficient sums s_i, their even/odd split E_i / O_i, and the
//! rank-nullity criterion E_k != O_k.
//!
//! A Sachs subgraph is a vertex-disjoint collection of single edges and
//! cycles. On i vertices it contributes (-1)^i (-1)^(c^-) 2^c to s_i, where
//! c counts cycles and c^- counts negative cycles; s_i equals the
//! coefficient b_i of the permanental polynomial of the signed adjacency.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::rank::perm_rank_exact;
use crate::scalar::Rational;

/// One component of a Sachs subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SachsComponent {
    Edge(usize, usize),
    /// Cycle as a vertex sequence (length >= 3), implicitly closed.
    Cycle(Vec<usize>),
}

/// A vertex-disjoint collection of edges and cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SachsSubgraph {
    pub components: Vec<SachsComponent>,
    pub cycle_count: usize,
    pub negative_cycle_count: usize,
    pub vertex_count: usize,
}

/// The order-k Sachs sums split by negative-cycle parity. Both sums carry
/// the (-1)^k prefactor, and s = E - O is the polynomial coefficient b_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EkOkResult {
    pub order: usize,
    pub even_sum: Rational,
    pub odd_sum: Rational,
    pub coefficient: Rational,
}

struct SachsSearch<F> {
    adj: Vec<Vec<(usize, Sign)>>,
    order: usize,
    decided: Vec<bool>,
    decided_count: usize,
    used_count: usize,
    components: Vec<SachsComponent>,
    cycle_count: usize,
    negative_cycle_count: usize,
    emit: F,
}

impl<F: FnMut(&SachsSubgraph) -> ControlFlow<()>> SachsSearch<'_, F> {
    fn run(&mut self) -> ControlFlow<()> {
        if self.used_count == self.order {
            let subgraph = SachsSubgraph {
                components: self.components.clone(),
                cycle_count: self.cycle_count,
                negative_cycle_count: self.negative_cycle_count,
                vertex_count: self.used_count,
            };
            return (self.emit)(&subgraph);
        }
        let n = self.adj.len();
        // Not enough undecided vertices left to reach the target order.
        if self.used_count + (n - self.decided_count) < self.order {
            return ControlFlow::Continue(());
        }
        let Some(v) = (0..n).find(|&v| !self.decided[v]) else {
            return ControlFlow::Continue(());
        };

        // Exclude v.
        self.decided[v] = true;
        self.decided_count += 1;
        self.run()?;
        self.decided[v] = false;
        self.decided_count -= 1;

        // Cover v with an edge to a higher undecided neighbor. (Every
        // undecided vertex is above v, v being the lowest.)
        if self.used_count + 2 <= self.order {
            let neighbors: Vec<usize> = self.adj[v]
                .iter()
                .map(|&(w, _)| w)
                .filter(|&w| !self.decided[w])
                .collect();
            for w in neighbors {
                self.decided[v] = true;
                self.decided[w] = true;
                self.decided_count += 2;
                self.used_count += 2;
                self.components.push(SachsComponent::Edge(v, w));
                self.run()?;
                self.components.pop();
                self.decided[v] = false;
                self.decided[w] = false;
                self.decided_count -= 2;
                self.used_count -= 2;
            }
        }

        // Cover v with a cycle through undecided vertices. Canonical
        // orientation (second vertex < last vertex) emits each cycle once.
        if self.used_count + 3 <= self.order {
            let mut path = vec![v];
            let mut on_path = vec![false; n];
            on_path[v] = true;
            self.grow_cycle(v, &mut path, &mut on_path, Sign::Positive)?;
        }
        ControlFlow::Continue(())
    }

    fn grow_cycle(
        &mut self,
        anchor: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        path_sign: Sign,
    ) -> ControlFlow<()> {
        let u = *path.last().unwrap();
        let candidates: Vec<(usize, Sign)> = self.adj[u].clone();
        for (w, s) in candidates {
            if w == anchor && path.len() >= 3 {
                if path[1] < path[path.len() - 1] {
                    let cycle_sign = path_sign.mul(s);
                    let negative = cycle_sign.is_negative();
                    for &x in path.iter() {
                        self.decided[x] = true;
                    }
                    self.decided_count += path.len();
                    self.used_count += path.len();
                    self.cycle_count += 1;
                    self.negative_cycle_count += usize::from(negative);
                    self.components.push(SachsComponent::Cycle(path.clone()));
                    self.run()?;
                    self.components.pop();
                    self.negative_cycle_count -= usize::from(negative);
                    self.cycle_count -= 1;
                    for &x in path.iter() {
                        self.decided[x] = false;
                    }
                    self.decided_count -= path.len();
                    self.used_count -= path.len();
                }
                continue;
            }
            if w <= anchor || on_path[w] || self.decided[w] {
                continue;
            }
            if path.len() + 1 + self.used_count > self.order {
                continue;
            }
            path.push(w);
            on_path[w] = true;
            self.grow_cycle(anchor, path, on_path, path_sign.mul(s))?;
            on_path[w] = false;
            path.pop();
        }
        ControlFlow::Continue(())
    }

    fn new(graph: &SignedGraph, order: usize, emit: F) -> SachsSearch<'_, F> {
        SachsSearch {
            adj: graph.adjacency(),
            graph,
            order,
            decided: vec![false; graph.vertex_count()],
            decided_count: 0,
            used_count: 0,
            components: Vec::new(),
            cycle_count: 0,
            negative_cycle_count: 0,
            emit,
        }
    }
}

/// Streams every Sachs subgraph on exactly `order` vertices, each once.
pub fn for_each_sachs(
    graph: &SignedGraph,
    order: usize,
    emit: impl FnMut(&SachsSubgraph) -> ControlFlow<()>,
) -> Result<()> {
    if order > graph.vertex_count() {
        return Err(Error::Input(format!(
            "sachs order {order} exceeds vertex count {}",
            graph.vertex_count()
        )));
    }
    let mut search = SachsSearch::new(graph, order, emit);
    let _ = search.run();
    Ok(())
}

/// Collects the order-k Sachs subgraphs; intended for small cases.
pub fn sachs_subgraphs(graph: &SignedGraph, order: usize) -> Result<Vec<SachsSubgraph>> {
    let mut out = Vec::new();
    for_each_sachs(graph, order, |s| {
        out.push(s.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// E_k, O_k and s_k = E_k - O_k in one streaming pass.
pub fn ek_ok(graph: &SignedGraph, order: usize) -> Result<EkOkResult> {
    let mut even = BigInt::zero();
    let mut odd = BigInt::zero();
    for_each_sachs(graph, order, |s| {
        let weight = BigInt::from(1) << s.cycle_count;
        if s.negative_cycle_count % 2 == 0 {
            even += weight;
        } else {
            odd += weight;
        }
        ControlFlow::Continue(())
    })?;
    if order % 2 == 1 {
        even = -even;
        odd = -odd;
    }
    let even_sum = Rational::from_integer(even);
    let odd_sum = Rational::from_integer(odd);
    let coefficient = &even_sum - &odd_sum;
    Ok(EkOkResult {
        order,
        even_sum,
        odd_sum,
        coefficient,
    })
}

/// s_k = (-1)^k sum over Sachs subgraphs of (-1)^(c^-) 2^c.
pub fn sachs_coefficient(graph: &SignedGraph, order: usize) -> Result<Rational> {
    Ok(ek_ok(graph, order)?.coefficient)
}

/// The E_k != O_k criterion evaluated at k = rho_per of the signed
/// adjacency. `identity_holds` is exactly the truth of rho + eta = n.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub rank: usize,
    pub ek_ok: EkOkResult,
    pub identity_holds: bool,
}

pub fn criterion_report(graph: &SignedGraph) -> Result<CriterionReport> {
    let rank = perm_rank_exact(&graph.to_matrix(), false)?.rank;
    let ek = ek_ok(graph, rank)?;
    let identity_holds = ek.even_sum != ek.odd_sum;
    Ok(CriterionReport {
        rank,
        ek_ok: ek,
        identity_holds,
    })
}
