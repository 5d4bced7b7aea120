//! Immutable undirected simple graphs with bit-set adjacency, plus the structural
//! queries the reduction pipeline is built from.

use std::collections::VecDeque;

use crate::error::GraphError;
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![VertexSet::new(n); n],
            m: 0,
        }
    }

    /// Builds a graph from 0-based edges, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from 0-based edges, silently ignoring duplicates.
    pub fn from_edges_lossy(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u != v && u < n && v < n && !g.adj[u].contains(v) {
                g.adj[u].insert(v);
                g.adj[v].insert(u);
                g.m += 1;
            }
        }
        g
    }

    pub(crate) fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.m += 1;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v]
    }

    /// `N[v]`.
    pub fn closed_neighborhood(&self, v: Vertex) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// The subgraph induced by `s`, relabelled to `0..|s|` in ascending order.
    /// Returns the graph and the map from new ids to old ids.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<Vertex>) {
        let old: Vec<Vertex> = s.to_vec();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::empty(old.len());
        for (i, &u) in old.iter().enumerate() {
            for v in self.adj[u].intersection(s).iter() {
                let j = new_id[v];
                if j > i {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                    g.m += 1;
                }
            }
        }
        (g, old)
    }
}

/// Breadth-first distance levels `N_0(v), N_1(v), …` of a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceLevels {
    root: Vertex,
    levels: Vec<VertexSet>,
    unreachable: VertexSet,
}

impl DistanceLevels {
    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn levels(&self) -> &[VertexSet] {
        &self.levels
    }

    /// `N_i(v)`; empty beyond the last level.
    pub fn level(&self, i: usize) -> VertexSet {
        self.levels
            .get(i)
            .cloned()
            .unwrap_or_else(|| VertexSet::new(self.unreachable.capacity()))
    }

    /// Index of the deepest nonempty level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Vertices of the searched region not reachable from the root.
    pub fn unreachable(&self) -> &VertexSet {
        &self.unreachable
    }

    pub fn reachable(&self) -> VertexSet {
        let mut s = VertexSet::new(self.unreachable.capacity());
        for l in &self.levels {
            s.union_with(l);
        }
        s
    }
}

pub fn distance_levels(g: &Graph, v: Vertex) -> Result<DistanceLevels, GraphError> {
    distance_levels_within(g, v, &g.vertices())
}

/// Distance levels of `v` in the induced subgraph `g[region]`.
pub fn distance_levels_within(
    g: &Graph,
    v: Vertex,
    region: &VertexSet,
) -> Result<DistanceLevels, GraphError> {
    g.check_vertex(v)?;
    if !region.contains(v) {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let mut seen = VertexSet::new(g.n());
    seen.insert(v);
    let mut frontier = VertexSet::new(g.n());
    frontier.insert(v);
    let mut levels = Vec::new();
    while !frontier.is_empty() {
        let mut next = VertexSet::new(g.n());
        for u in &frontier {
            next.union_with(g.neighbors(u));
        }
        next.intersect_with(region);
        next.difference_with(&seen);
        seen.union_with(&next);
        levels.push(std::mem::replace(&mut frontier, next));
    }
    Ok(DistanceLevels {
        root: v,
        levels,
        unreachable: region.difference(&seen),
    })
}

/// Connected components of `g[s]`, ordered by their smallest vertex.
pub fn connected_components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    let mut rest = s.clone();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    while let Some(start) = rest.first() {
        let mut comp = VertexSet::new(g.n());
        comp.insert(start);
        rest.remove(start);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let fresh = g.neighbors(u).intersection(&rest);
            for w in &fresh {
                comp.insert(w);
                queue.push_back(w);
            }
            rest.difference_with(&fresh);
        }
        out.push(comp);
    }
    out
}

/// Members `u` of `s` adjacent to every other member of `s`.
pub fn universal_vertices(g: &Graph, s: &VertexSet) -> VertexSet {
    let need = s.len();
    let mut out = VertexSet::new(g.n());
    for u in s {
        if g.neighbors(u).intersection_len(s) + 1 == need {
            out.insert(u);
        }
    }
    out
}

/// How a vertex outside a set relates to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetAdjacency {
    NoContact,
    Joins,
    Distinguishes,
}

pub fn set_adjacency(g: &Graph, x: Vertex, s: &VertexSet) -> Result<SetAdjacency, GraphError> {
    g.check_vertex(x)?;
    if s.contains(x) {
        return Err(GraphError::VertexInSet(x));
    }
    Ok(classify_contact(g, x, s))
}

#[inline]
pub(crate) fn classify_contact(g: &Graph, x: Vertex, s: &VertexSet) -> SetAdjacency {
    let hits = g.neighbors(x).intersection_len(s);
    if hits == 0 {
        SetAdjacency::NoContact
    } else if hits == s.len() {
        SetAdjacency::Joins
    } else {
        SetAdjacency::Distinguishes
    }
}

pub fn is_clique(g: &Graph, s: &VertexSet) -> bool {
    let need = s.len();
    s.iter()
        .all(|u| g.neighbors(u).intersection_len(s) + 1 == need)
}
