//! Input-class checks: induced-P6 search and unipolar partition validation.

use crate::error::GraphError;
use crate::graph::Graph;
use crate::vertex_set::{Vertex, VertexSet};

const P6_LEN: usize = 6;

/// Finds six vertices inducing exactly the path `v1 v2 … v6`, or `None` if `g` is P6-free.
///
/// Grows induced paths one endpoint at a time: the next vertex must be a neighbour of
/// the current endpoint and outside the closed neighbourhoods of all earlier vertices.
pub fn find_induced_p6(g: &Graph) -> Option<[Vertex; P6_LEN]> {
    let mut path = Vec::with_capacity(P6_LEN);
    for start in 0..g.n() {
        path.push(start);
        let blocked = VertexSet::new(g.n());
        if extend(g, &mut path, &blocked) {
            return Some(path.try_into().expect("path has six vertices"));
        }
        path.pop();
    }
    None
}

/// `blocked` is the union of `N[p]` over every path vertex except the endpoint.
fn extend(g: &Graph, path: &mut Vec<Vertex>, blocked: &VertexSet) -> bool {
    if path.len() == P6_LEN {
        return true;
    }
    let last = *path.last().expect("nonempty path");
    let mut candidates = g.neighbors(last).difference(blocked);
    // the previous vertex is adjacent to `last` but already on the path
    if path.len() >= 2 {
        candidates.remove(path[path.len() - 2]);
    }
    if candidates.is_empty() {
        return false;
    }
    let mut next_blocked = blocked.clone();
    next_blocked.union_with(&g.closed_neighborhood(last));
    for x in &candidates {
        path.push(x);
        if extend(g, path, &next_blocked) {
            return true;
        }
        path.pop();
    }
    false
}

pub fn is_p6_free(g: &Graph) -> bool {
    find_induced_p6(g).is_none()
}

/// Outcome of [`check_unipolar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnipolarVerdict {
    Valid,
    /// Two vertices of the clique side that are not adjacent.
    NonEdgeInB(Vertex, Vertex),
    /// An induced path `x - y - z` inside the clique-union side.
    P3InA(Vertex, Vertex, Vertex),
}

/// Checks that `g[b]` is complete and `g[a]` is a disjoint union of cliques.
pub fn check_unipolar(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
) -> Result<UnipolarVerdict, GraphError> {
    if a.capacity() != g.n()
        || b.capacity() != g.n()
        || a.intersects(b)
        || a.union(b) != g.vertices()
    {
        return Err(GraphError::NotAPartition);
    }
    for u in b {
        let missing = b.difference(g.neighbors(u));
        if let Some(v) = missing.iter().find(|&v| v != u) {
            return Ok(UnipolarVerdict::NonEdgeInB(u.min(v), u.max(v)));
        }
    }
    for y in a {
        let nbrs = g.neighbors(y).intersection(a);
        for x in &nbrs {
            // any neighbour of y non-adjacent to x closes an induced P3
            let far = nbrs.difference(g.neighbors(x));
            if let Some(z) = far.iter().find(|&z| z != x) {
                return Ok(UnipolarVerdict::P3InA(x, y, z));
            }
        }
    }
    Ok(UnipolarVerdict::Valid)
}
