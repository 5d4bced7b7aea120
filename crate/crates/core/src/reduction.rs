//! Join-reduction and component-reduction: turning the distance-level view of a
//! branch into unipolar instances.
//!
//! Throughout, `B` is a set of weight-∞ vertices that must each be dominated exactly
//! once from the `A` side, and `A` is split into its connected components, each of
//! which must contain at least one member of the dominating set.

use thiserror::Error;

use crate::error::{ClassViolation, SolveError};
use crate::graph::{
    classify_contact, connected_components, is_clique, universal_vertices, Graph, SetAdjacency,
};
use crate::unipolar::UnipolarInstance;
use crate::vertex_set::{Vertex, VertexSet};
use crate::weight::WeightMap;

/// Why a branch has no finite-weight efficient dominating set.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Infeasible {
    #[error("vertex {b} joins two components (containing {first} and {second})")]
    DoubleJoin {
        b: Vertex,
        first: Vertex,
        second: Vertex,
    },
    #[error("joined component containing {0} has no universal vertex")]
    NoUniversal(Vertex),
    #[error("component containing {0} has no finite-weight vertex")]
    NoCandidate(Vertex),
    #[error("vertex {0} has no finite-weight neighbour left to dominate it")]
    Undominatable(Vertex),
    #[error("forced vertex {0} has weight ∞")]
    ForcedInfinite(Vertex),
    #[error("vertex {0} is adjacent to two forced vertices")]
    DoublyForced(Vertex),
    #[error("forced vertices {0} and {1} are adjacent")]
    AdjacentForced(Vertex, Vertex),
    #[error("edge {z}-{y} between the anchor's neighbourhood and the rest of its component")]
    AnchorSeparation { z: Vertex, y: Vertex },
    #[error("vertices {b1} and {b2} together cover at least three cliques")]
    TripleCover { b1: Vertex, b2: Vertex },
}

/// Early exit from a reduction step: either the branch is infeasible or the
/// computation cannot continue.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Halt {
    #[error("infeasible: {0}")]
    Infeasible(#[from] Infeasible),
    #[error(transparent)]
    Error(#[from] SolveError),
}

impl From<ClassViolation> for Halt {
    fn from(c: ClassViolation) -> Self {
        Halt::Error(SolveError::ClassViolation(c))
    }
}

/// Connected pieces of the `A` side, each tagged with whether it is a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSet {
    components: Vec<VertexSet>,
    clique_flags: Vec<bool>,
}

impl ComponentSet {
    /// Components of `g[a]`, ordered by smallest vertex.
    pub fn of(g: &Graph, a: &VertexSet) -> Self {
        Self::from_components(g, connected_components(g, a))
    }

    /// Wraps already-separated pieces, sorting them by smallest vertex.
    pub fn from_components(g: &Graph, mut components: Vec<VertexSet>) -> Self {
        components.retain(|c| !c.is_empty());
        components.sort_by_key(|c| c.first());
        let clique_flags = components.iter().map(|c| is_clique(g, c)).collect();
        Self {
            components,
            clique_flags,
        }
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    pub fn is_clique(&self, i: usize) -> bool {
        self.clique_flags[i]
    }

    pub fn union(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for c in &self.components {
            s.union_with(c);
        }
        s
    }

    /// Index of the component holding `v`.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.components.iter().position(|c| c.contains(v))
    }

    pub fn non_cliques(&self) -> impl Iterator<Item = (usize, &VertexSet)> {
        self.components
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.clique_flags[*i])
    }

    pub fn cliques(&self) -> impl Iterator<Item = (usize, &VertexSet)> {
        self.components
            .iter()
            .enumerate()
            .filter(|(i, _)| self.clique_flags[*i])
    }
}

/// State after join-reduction reached its fixpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinReduction {
    pub surviving_b: VertexSet,
    pub components: ComponentSet,
    pub weights: WeightMap,
    /// `B` vertices dropped for having a join, plus non-universal vertices cut from joined components.
    pub removed: VertexSet,
    pub rounds: usize,
}

/// Removes every `B` vertex that has a join to a component of `A`.
///
/// A joined component can only contain one dominating vertex, which must then be
/// universal for it, so the component shrinks to its universal vertices; the joining
/// vertex's neighbours in other components become weight ∞. Shrinking can create new
/// joins, so the pass repeats until no surviving `B` vertex joins any component.
/// Minimum finite weight subject to `B ∩ D = ∅` is unchanged.
pub fn join_reduction(
    g: &Graph,
    weights: &WeightMap,
    b: &VertexSet,
    comps: &ComponentSet,
) -> Result<JoinReduction, Halt> {
    if let Some(x) = b.iter().find(|&x| weights.is_finite(x)) {
        return Err(SolveError::Precondition(format!("B vertex {x} has finite weight")).into());
    }
    let mut surviving = b.clone();
    let mut parts = comps.components.clone();
    let mut flags = comps.clique_flags.clone();
    let mut weights = weights.clone();
    let mut removed = VertexSet::new(g.n());
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        for x in b {
            if !surviving.contains(x) {
                continue;
            }
            let mut joined = parts
                .iter()
                .enumerate()
                .filter(|(_, c)| classify_contact(g, x, c) == SetAdjacency::Joins)
                .map(|(i, _)| i);
            let Some(i) = joined.next() else { continue };
            if let Some(j) = joined.next() {
                return Err(Infeasible::DoubleJoin {
                    b: x,
                    first: parts[i].first().unwrap_or(x),
                    second: parts[j].first().unwrap_or(x),
                }
                .into());
            }
            if !flags[i] {
                let universal = universal_vertices(g, &parts[i]);
                if universal.is_empty() {
                    return Err(Infeasible::NoUniversal(parts[i].first().unwrap_or(x)).into());
                }
                removed.union_with(&parts[i].difference(&universal));
                parts[i] = universal;
                flags[i] = true;
            }
            for (j, c) in parts.iter().enumerate() {
                if j != i {
                    weights.exclude_all(&g.neighbors(x).intersection(c));
                }
            }
            surviving.remove(x);
            removed.insert(x);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    Ok(JoinReduction {
        surviving_b: surviving,
        components: ComponentSet {
            components: parts,
            clique_flags: flags,
        },
        weights,
        removed,
        rounds,
    })
}

/// A `B` vertex contacting an inclusion-maximal family of the given components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BStar {
    pub vertex: Option<Vertex>,
    /// Indices (into the input list) of components `vertex` does not contact.
    pub uncontacted: Vec<usize>,
}

/// Picks the `B` vertex contacting the most of `comps` (smallest id on ties); a
/// maximum-size contact family is inclusion-maximal.
pub fn find_b_star(g: &Graph, b: &VertexSet, comps: &[VertexSet]) -> BStar {
    let best = b
        .iter()
        .map(|x| {
            (
                x,
                comps
                    .iter()
                    .filter(|c| g.neighbors(x).intersects(c))
                    .count(),
            )
        })
        .max_by(|(x1, c1), (x2, c2)| c1.cmp(c2).then(x2.cmp(x1)));
    match best {
        None => BStar {
            vertex: None,
            uncontacted: (0..comps.len()).collect(),
        },
        Some((x, _)) => BStar {
            vertex: Some(x),
            uncontacted: (0..comps.len())
                .filter(|&i| !g.neighbors(x).intersects(&comps[i]))
                .collect(),
        },
    }
}

/// A component that no surviving `B` vertex touches, to be solved on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubInstance {
    pub region: VertexSet,
    pub weights: WeightMap,
}

pub fn decoupled_components(weights: &WeightMap, uncontacted: &[VertexSet]) -> Vec<SubInstance> {
    uncontacted
        .iter()
        .map(|c| SubInstance {
            region: c.clone(),
            weights: weights.clone(),
        })
        .collect()
}

/// Split of the anchor's component around the anchor `q*` and the vertex `b*` it dominates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZwyPartition {
    /// `N[q*] ∩ Q1`
    pub z: VertexSet,
    /// `Q1 ∩ N(b*) ∖ Z`
    pub w: VertexSet,
    /// `Q1 ∖ (Z ∪ W)`
    pub y: VertexSet,
    pub q_star: Vertex,
    pub b_star: Vertex,
}

pub fn zwy_partition(
    g: &Graph,
    q1: &VertexSet,
    q_star: Vertex,
    b_star: Vertex,
) -> Result<ZwyPartition, SolveError> {
    g.check_vertex(q_star)?;
    g.check_vertex(b_star)?;
    if !q1.contains(q_star) {
        return Err(SolveError::Precondition(format!(
            "anchor {q_star} is not in its component"
        )));
    }
    if q1.contains(b_star) || !g.has_edge(b_star, q_star) {
        return Err(SolveError::Precondition(format!(
            "{b_star} is not an outside neighbour of {q_star}"
        )));
    }
    let z = g.closed_neighborhood(q_star).intersection(q1);
    let w = q1.intersection(g.neighbors(b_star)).difference(&z);
    let y = q1.difference(&z).difference(&w);
    Ok(ZwyPartition {
        z,
        w,
        y,
        q_star,
        b_star,
    })
}

/// Universal vertices of every component of `g[s]`, or the first component without one.
fn universal_pieces(g: &Graph, s: &VertexSet) -> Result<Vec<VertexSet>, Infeasible> {
    connected_components(g, s)
        .into_iter()
        .map(|k| {
            let u = universal_vertices(g, &k);
            if u.is_empty() {
                Err(Infeasible::NoUniversal(
                    k.first().expect("nonempty component"),
                ))
            } else {
                Ok(u)
            }
        })
        .collect()
}

/// Builds the unipolar instance for anchor `q_star`, the dominator of `b_star`.
///
/// `comps` and `weights` are the join-reduced `A` side, `b` the surviving `B`, and
/// `forced` the vertices already committed (trivial components). Every non-clique
/// component other than the anchor's must be contacted by `b_star`.
///
/// Vertices that can no longer enter the solution are dropped from the residual
/// instance instead of carried with weight ∞: the anchor's closed neighbourhood in
/// its component, `W`, `b_star`'s neighbours in other non-clique components, and the
/// non-universal vertices of every piece. Each of them either has a fixed dominator
/// or meets every residual clique in all or none of its vertices, so its domination
/// count does not depend on which residual candidates are chosen; the caller
/// re-verifies assembled solutions on the full graph.
pub fn component_reduction<'g>(
    g: &'g Graph,
    weights: &WeightMap,
    b: &VertexSet,
    b_star: Vertex,
    q_star: Vertex,
    comps: &ComponentSet,
    forced: &VertexSet,
) -> Result<UnipolarInstance<'g>, Halt> {
    if !weights.is_finite(q_star) {
        return Err(SolveError::Precondition(format!("anchor {q_star} has weight ∞")).into());
    }
    let home = comps.position(q_star).ok_or_else(|| {
        SolveError::Precondition(format!("anchor {q_star} outside the component set"))
    })?;
    let q1 = &comps.components()[home];
    let split = zwy_partition(g, q1, q_star, b_star)?;

    for z in &split.z {
        if let Some(y) = g.neighbors(z).intersection(&split.y).first() {
            return Err(Infeasible::AnchorSeparation { z, y }.into());
        }
    }

    let mut weights = weights.clone();
    let mut forced = forced.clone();
    forced.insert(q_star);
    weights.exclude_all(&split.z.difference(&forced));
    weights.exclude_all(&split.w);

    let mut cliques = universal_pieces(g, &split.y)?;
    for (i, q) in comps.non_cliques() {
        if i == home {
            continue;
        }
        let plus = g.neighbors(b_star).intersection(q);
        weights.exclude_all(&plus);
        let rest = q.difference(&plus);
        if rest.is_empty() {
            return Err(Infeasible::NoCandidate(q.first().expect("nonempty component")).into());
        }
        cliques.extend(universal_pieces(g, &rest)?);
    }
    for (i, k) in comps.cliques() {
        if i != home && !k.is_subset(&forced) {
            cliques.push(k.clone());
        }
    }

    // singletons are committed outright
    let (single, cliques): (Vec<_>, Vec<_>) = cliques.into_iter().partition(|c| c.len() == 1);
    for s in &single {
        forced.union_with(s);
    }
    if let Some(f) = forced.iter().find(|&f| !weights.is_finite(f)) {
        return Err(Infeasible::ForcedInfinite(f).into());
    }

    let mut clique_union = VertexSet::new(g.n());
    for c in &cliques {
        clique_union.union_with(c);
    }
    let mut b_rest = b.clone();
    for x in b {
        let hits = g.neighbors(x).intersection_len(&forced);
        if hits > 1 {
            return Err(Infeasible::DoublyForced(x).into());
        }
        if hits == 1 {
            weights.exclude_all(&g.neighbors(x).intersection(&clique_union));
            b_rest.remove(x);
        }
    }
    Ok(UnipolarInstance::new(g, b_rest, cliques, forced, weights)?)
}
