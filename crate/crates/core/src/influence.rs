//! Positive-opinion influence, set influence, the spread objective σ, and
//! marginal gains.
//!
//! Pairwise influence is `Inf(u,v) = Pr(Pos)(u) · m^Ω(u,v)({I})` in the
//! opinion model, or the bare edge mass in the belief-only baseline, with
//! `Inf(v,v) = 1` on the diagonal and zero across non-edges. The influence a
//! seed set S exerts on a node v sums two-hop relays through v's
//! in-neighborhood:
//!
//! ```text
//! set_influence(S, v) = 1                               if v ∈ S
//!                     = Σ_{u∈S} Σ_{x∈D_IN(v)∪{v}} Inf(u,x)·Inf(x,v)  else
//! ```
//!
//! and σ(S) totals that over all nodes. Two marginal-gain variants are
//! provided: the exact difference σ(S∪{x})−σ(S) (computed incrementally, the
//! default for seed selection) and the literal two-hop formula
//! `1 + Σ_{v∈V∖S} g(x,v)`, which keeps the self term and skips the
//! correction for S's influence on x, so it differs from the exact gain in
//! general.

use thiserror::Error;

use crate::graph::{SocialGraph, UserId};
use crate::scalar::Real;

/// Which pairwise influence measure drives the objective.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfluenceMode {
    /// `Inf(u,v) = Pr(Pos)(u) · m^Ω(u,v)({I})`.
    OpinionPositive,
    /// `Inf(u,v) = m^Ω(u,v)({I})` — the belief-model baseline.
    BeliefOnly,
}

/// Which marginal-gain formula seed selection uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GainFormula {
    /// σ(S∪{x}) − σ(S), the true increment of the objective.
    Exact,
    /// The literal two-hop gain `1 + Σ_{v∈V∖S} g(x,v)`.
    TwoHop,
}

#[derive(Debug, Error, PartialEq)]
pub enum InfluenceError {
    #[error("candidate node {0} is already in the seed set")]
    AlreadySelected(usize),
}

/// Read-only influence lens over a scored graph: fixes the mode and caches
/// pairwise `Inf` values on edges in both adjacency directions.
pub struct InfluenceView<'g, T: Real> {
    graph: &'g SocialGraph<T>,
    mode: InfluenceMode,
    /// Per target v: (source u, Inf(u,v)) sorted by u.
    in_edges: Vec<Vec<(usize, T)>>,
    /// Per source u: (target v, Inf(u,v)) sorted by v.
    out_edges: Vec<Vec<(usize, T)>>,
}

impl<'g, T: Real> InfluenceView<'g, T> {
    pub fn new(graph: &'g SocialGraph<T>, mode: InfluenceMode) -> Self {
        let n = graph.n();
        let mut in_edges: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        let mut out_edges: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        for (u, v, data) in graph.edges_iter() {
            let inf = match mode {
                InfluenceMode::OpinionPositive => graph.opinion(u).p_pos * data.influence,
                InfluenceMode::BeliefOnly => data.influence,
            };
            in_edges[v.0].push((u.0, inf));
            out_edges[u.0].push((v.0, inf));
        }
        // edges_iter is (u, v)-ordered, so out lists are already sorted and
        // in lists sort cheaply.
        for list in &mut in_edges {
            list.sort_unstable_by_key(|&(u, _)| u);
        }
        InfluenceView {
            graph,
            mode,
            in_edges,
            out_edges,
        }
    }

    pub fn graph(&self) -> &'g SocialGraph<T> {
        self.graph
    }

    pub fn mode(&self) -> InfluenceMode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Pairwise influence with the diagonal convention `Inf(v,v) = 1`.
    pub fn influence(&self, u: UserId, v: UserId) -> T {
        if u == v {
            return T::one();
        }
        match self.out_edges[u.0].binary_search_by_key(&v.0, |&(t, _)| t) {
            Ok(idx) => self.out_edges[u.0][idx].1,
            Err(_) => T::zero(),
        }
    }

    /// Off-diagonal pairwise influence (zero for non-edges).
    pub fn positive_influence(&self, u: UserId, v: UserId) -> T {
        debug_assert_ne!(u, v, "the diagonal is fixed at 1 by definition");
        self.influence(u, v)
    }

    /// The inner double-sum term of the set-influence formula:
    /// `g(u,v) = Σ_{x∈D_IN(v)∪{v}} Inf(u,x)·Inf(x,v)`.
    pub fn relayed_influence(&self, u: UserId, v: UserId) -> T {
        // The x = v term contributes Inf(u,v)·Inf(v,v) = Inf(u,v).
        let mut total = self.influence(u, v);
        for &(x, inf_xv) in &self.in_edges[v.0] {
            total += self.influence(u, UserId(x)) * inf_xv;
        }
        total
    }

    /// Influence the seed set exerts on `v`: 1 for members, otherwise the
    /// sum of relayed influences from each seed.
    pub fn set_influence(&self, seeds: &[UserId], v: UserId) -> T {
        if seeds.contains(&v) {
            return T::one();
        }
        let mut total = T::zero();
        for &u in seeds {
            total += self.relayed_influence(u, v);
        }
        total
    }

    /// The spread objective σ(S) = Σ_{v∈V} set_influence(S, v).
    pub fn sigma(&self, seeds: &[UserId]) -> T {
        let mut member = vec![false; self.n()];
        for &s in seeds {
            member[s.0] = true;
        }
        let mut total = T::zero();
        for &u in seeds {
            let row = self.dense_row(u);
            for (v, &selected) in member.iter().enumerate() {
                if !selected {
                    total += self.row_relayed(&row, v);
                }
            }
        }
        let selected = member.iter().filter(|&&m| m).count();
        total + T::from_usize(selected).expect("small count converts")
    }

    /// Exact marginal gain σ(S∪{x}) − σ(S), computed incrementally as
    /// `1 + Σ_{v∉S∪{x}} g(x,v) − Σ_{u∈S} g(u,x)`.
    pub fn marginal_gain_exact(&self, seeds: &[UserId], x: UserId) -> Result<T, InfluenceError> {
        if seeds.contains(&x) {
            return Err(InfluenceError::AlreadySelected(x.0));
        }
        let mut member = vec![false; self.n()];
        for &s in seeds {
            member[s.0] = true;
        }
        let row = self.dense_row(x);
        let mut gain = T::one();
        for (v, &selected) in member.iter().enumerate() {
            if v != x.0 && !selected {
                gain += self.row_relayed(&row, v);
            }
        }
        for &u in seeds {
            gain = gain - self.relayed_influence(u, x);
        }
        Ok(gain)
    }

    /// The literal two-hop gain `1 + Σ_{v∈V∖S} g(x,v)` (self term included,
    /// no correction for the seeds' influence on x).
    pub fn marginal_gain_two_hop(&self, seeds: &[UserId], x: UserId) -> Result<T, InfluenceError> {
        if seeds.contains(&x) {
            return Err(InfluenceError::AlreadySelected(x.0));
        }
        let mut member = vec![false; self.n()];
        for &s in seeds {
            member[s.0] = true;
        }
        let row = self.dense_row(x);
        let mut gain = T::one();
        for (v, &selected) in member.iter().enumerate() {
            if !selected {
                gain += self.row_relayed(&row, v);
            }
        }
        Ok(gain)
    }

    /// Gain under the configured formula.
    pub fn marginal_gain(
        &self,
        seeds: &[UserId],
        x: UserId,
        formula: GainFormula,
    ) -> Result<T, InfluenceError> {
        match formula {
            GainFormula::Exact => self.marginal_gain_exact(seeds, x),
            GainFormula::TwoHop => self.marginal_gain_two_hop(seeds, x),
        }
    }

    /// Dense influence row for source `u`, with the diagonal set to 1 so the
    /// row encodes `Inf(u,·)` exactly.
    fn dense_row(&self, u: UserId) -> Vec<T> {
        let mut row = vec![T::zero(); self.n()];
        for &(v, inf) in &self.out_edges[u.0] {
            row[v] = inf;
        }
        row[u.0] = T::one();
        row
    }

    /// `g(u,v)` evaluated against a precomputed dense row for `u`.
    fn row_relayed(&self, row: &[T], v: usize) -> T {
        let mut total = row[v];
        for &(x, inf_xv) in &self.in_edges[v] {
            total += row[x] * inf_xv;
        }
        total
    }
}
