use crate::error::GraphError;
use crate::graph::Graph;
use crate::vertex_set::{Vertex, VertexSet};
use crate::weight::{Weight, WeightMap};

/// A graph together with its vertex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    weights: WeightMap,
}

impl Instance {
    pub fn new(graph: Graph, weights: WeightMap) -> Result<Self, GraphError> {
        if weights.len() != graph.n() {
            return Err(GraphError::WeightCount {
                weights: weights.len(),
                n: graph.n(),
            });
        }
        Ok(Self { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let weights = WeightMap::unit(graph.n());
        Self { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &WeightMap {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Same graph, weight of `v` replaced.
    pub fn with_weight(&self, v: Vertex, w: Weight) -> Self {
        let mut weights = self.weights.clone();
        weights.set(v, w);
        Self {
            graph: self.graph.clone(),
            weights,
        }
    }
}

/// A verified efficient dominating set and its total finite weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub members: VertexSet,
    pub total_weight: u64,
}

/// Outcome of checking a candidate set against the efficient-domination condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid {
        weight: u64,
    },
    /// `vertex` is dominated `count` times (0 or at least 2).
    Miscounted {
        vertex: Vertex,
        count: usize,
    },
    /// `vertex` is a member with weight ∞.
    InfiniteMember {
        vertex: Vertex,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

/// Checks that every vertex has exactly one member of `d` in its closed neighbourhood
/// and that every member has finite weight. Reports the smallest offending vertex.
pub fn verify_ed(inst: &Instance, d: &VertexSet) -> Verdict {
    verify_ed_within(inst.graph(), inst.weights(), &inst.graph().vertices(), d)
}

/// [`verify_ed`] on the induced subgraph `g[region]`; `d` must lie inside `region`.
pub fn verify_ed_within(
    g: &Graph,
    weights: &WeightMap,
    region: &VertexSet,
    d: &VertexSet,
) -> Verdict {
    for u in region {
        let mut count = g.neighbors(u).intersection_len(d);
        if d.contains(u) {
            count += 1;
        }
        if count != 1 {
            return Verdict::Miscounted { vertex: u, count };
        }
    }
    let mut total = 0u64;
    for x in d {
        match weights.get(x) {
            Weight::Finite(w) => total = total.saturating_add(w),
            Weight::Infinite => return Verdict::InfiniteMember { vertex: x },
        }
    }
    Verdict::Valid { weight: total }
}
