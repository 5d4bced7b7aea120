//! Reference solvers that share nothing with the reduction pipeline beyond the graph
//! type: exact-cover backtracking over closed neighbourhoods, and plain subset
//! enumeration for tiny graphs.

use thiserror::Error;

use crate::instance::{verify_ed, Instance, Solution};
use crate::vertex_set::{Vertex, VertexSet};

/// Subset enumeration is capped at this many vertices.
pub const ENUMERATION_LIMIT: usize = 16;

/// Above this many vertices the backtracking oracle may take very long.
pub const RECOMMENDED_ORACLE_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration supports at most {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
}

/// Which uncovered vertex the exact-cover search branches on next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BranchOrder {
    /// Lowest-indexed uncovered vertex.
    LowestIndex,
    /// Uncovered vertex with the fewest admissible dominators.
    #[default]
    FailFirst,
}

/// Minimum finite-weight efficient dominating set, or `None` if there is none.
pub fn brute_force_wed(inst: &Instance) -> Option<Solution> {
    brute_force_wed_with(inst, BranchOrder::default())
}

pub fn brute_force_wed_with(inst: &Instance, order: BranchOrder) -> Option<Solution> {
    let g = inst.graph();
    let n = g.n();
    let closed: Vec<VertexSet> = (0..n).map(|v| g.closed_neighborhood(v)).collect();
    let weight: Vec<Option<u64>> = (0..n).map(|v| inst.weights().get(v).finite()).collect();
    let mut search = Search {
        closed: &closed,
        weight: &weight,
        order,
        covered: VertexSet::new(n),
        chosen: Vec::new(),
        best: None,
    };
    search.run(0);
    search.best.map(|(total_weight, members)| Solution {
        members: VertexSet::from_vertices(n, members),
        total_weight,
    })
}

struct Search<'a> {
    closed: &'a [VertexSet],
    weight: &'a [Option<u64>],
    order: BranchOrder,
    covered: VertexSet,
    chosen: Vec<Vertex>,
    best: Option<(u64, Vec<Vertex>)>,
}

impl Search<'_> {
    fn admissible(&self, u: Vertex) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.closed[u].iter().filter_map(move |d| {
            let w = self.weight[d]?;
            (!self.closed[d].intersects(&self.covered)).then_some((d, w))
        })
    }

    fn pick(&self) -> Option<Vertex> {
        let n = self.closed.len();
        let mut uncovered = (0..n).filter(|&u| !self.covered.contains(u));
        match self.order {
            BranchOrder::LowestIndex => uncovered.next(),
            BranchOrder::FailFirst => uncovered.min_by_key(|&u| self.admissible(u).count()),
        }
    }

    fn run(&mut self, total: u64) {
        let Some(u) = self.pick() else {
            if self.best.as_ref().is_none_or(|(b, _)| total < *b) {
                self.best = Some((total, self.chosen.clone()));
            }
            return;
        };
        let options: Vec<(Vertex, u64)> = self.admissible(u).collect();
        for (d, w) in options {
            let next = total.saturating_add(w);
            if self.best.as_ref().is_some_and(|(b, _)| next >= *b) {
                continue;
            }
            self.covered.union_with(&self.closed[d]);
            self.chosen.push(d);
            self.run(next);
            self.chosen.pop();
            self.covered.difference_with(&self.closed[d]);
        }
    }
}

/// Every efficient dominating set whose members all have finite weight,
/// in ascending order of their bit masks.
pub fn enumerate_eds(inst: &Instance) -> Result<Vec<VertexSet>, OracleError> {
    let n = inst.n();
    if n > ENUMERATION_LIMIT {
        return Err(OracleError::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let d = VertexSet::from_vertices(n, (0..n).filter(|i| mask >> i & 1 == 1));
        if verify_ed(inst, &d).is_valid() {
            out.push(d);
        }
    }
    Ok(out)
}
