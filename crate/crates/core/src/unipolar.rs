//! Weighted efficient domination on unipolar instances: a weight-∞ side `B` that
//! must be dominated from a side made of pairwise non-adjacent cliques.
//!
//! After normalisation a good vertex `b*` of the overtake dag is dominated by some
//! anchor `a*`; once `a*` is fixed, every other clique loses its `N(b*)` part, at most
//! three cliques stay distinguished by `B`, and the rest take a cheapest vertex.

use crate::error::{ClassViolation, SolveError};
use crate::generate::UnipolarPartition;
use crate::graph::{classify_contact, is_clique, Graph, SetAdjacency};
use crate::instance::{verify_ed_within, Instance, Solution, Verdict};
use crate::reduction::{join_reduction, ComponentSet, Halt, Infeasible};
use crate::vertex_set::{Vertex, VertexSet};
use crate::weight::WeightMap;

/// Most distinguished cliques an anchor branch may leave.
pub const MAX_DISTINGUISHED: usize = 3;

/// Overtake relations needed for an edge of the overtake graph.
pub const OVERTAKE_THRESHOLD: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipolarInstance<'g> {
    pub graph: &'g Graph,
    pub b: VertexSet,
    pub cliques: Vec<VertexSet>,
    pub forced: VertexSet,
    pub weights: WeightMap,
}

impl<'g> UnipolarInstance<'g> {
    /// Checks that `b` is weight ∞, the cliques are cliques, and that cliques and
    /// forced vertices are pairwise disjoint, non-adjacent, and disjoint from `b`.
    pub fn new(
        graph: &'g Graph,
        b: VertexSet,
        cliques: Vec<VertexSet>,
        forced: VertexSet,
        weights: WeightMap,
    ) -> Result<Self, SolveError> {
        let bad = |msg: String| Err(SolveError::Precondition(msg));
        if weights.len() != graph.n() || b.capacity() != graph.n() || forced.capacity() != graph.n()
        {
            return bad("set or weight sizes differ from the graph".into());
        }
        if let Some(x) = b.iter().find(|&x| weights.is_finite(x)) {
            return bad(format!("B vertex {x} has finite weight"));
        }
        let mut seen = b.clone();
        let mut a_side = VertexSet::new(graph.n());
        let singles: Vec<VertexSet> = forced
            .iter()
            .map(|f| VertexSet::from_vertices(graph.n(), [f]))
            .collect();
        for c in cliques.iter().chain(&singles) {
            if c.capacity() != graph.n() || c.is_empty() || !is_clique(graph, c) {
                return bad(format!("{c:?} is not a nonempty clique"));
            }
            if c.intersects(&seen) {
                return bad(format!("{c:?} overlaps another part"));
            }
            for v in c {
                if graph.neighbors(v).intersects(&a_side) {
                    return bad(format!("{v} is adjacent to another clique"));
                }
            }
            seen.union_with(c);
            a_side.union_with(c);
        }
        Ok(Self {
            graph,
            b,
            cliques,
            forced,
            weights,
        })
    }

    /// A generated unipolar graph with its clique side `B` excluded from the solution.
    pub fn from_partition(
        inst: &'g Instance,
        part: &UnipolarPartition,
    ) -> Result<Self, SolveError> {
        let mut weights = inst.weights().clone();
        weights.exclude_all(&part.b);
        Self::new(
            inst.graph(),
            part.b.clone(),
            part.cliques.clone(),
            VertexSet::new(inst.n()),
            weights,
        )
    }

    /// `B`, all cliques, and the forced vertices.
    pub fn region(&self) -> VertexSet {
        let mut r = self.b.union(&self.forced);
        for c in &self.cliques {
            r.union_with(c);
        }
        r
    }
}

/// `b2` overtakes `b1` on clique `k`: it distinguishes the part of `k` outside `N(b1)`,
/// which has at least two vertices.
pub fn overtakes(g: &Graph, b1: Vertex, b2: Vertex, k: &VertexSet) -> bool {
    let rest = k.difference(g.neighbors(b1));
    rest.len() >= 2 && classify_contact(g, b2, &rest) == SetAdjacency::Distinguishes
}

/// Directed graph on `B` with `b1 → b2` iff `b2` overtakes `b1` on at least three
/// nontrivial cliques.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvertakeGraph {
    nodes: Vec<Vertex>,
    succ: Vec<Vec<usize>>,
}

impl OvertakeGraph {
    pub fn nodes(&self) -> &[Vertex] {
        &self.nodes
    }

    pub fn successors(&self, b: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let i = self.index(b);
        i.into_iter()
            .flat_map(move |i| self.succ[i].iter().map(|&j| self.nodes[j]))
    }

    pub fn out_degree(&self, b: Vertex) -> usize {
        self.index(b).map_or(0, |i| self.succ[i].len())
    }

    pub fn has_edge(&self, b1: Vertex, b2: Vertex) -> bool {
        self.successors(b1).any(|x| x == b2)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(move |(i, s)| s.iter().map(move |&j| (self.nodes[i], self.nodes[j])))
    }

    fn index(&self, b: Vertex) -> Option<usize> {
        self.nodes.binary_search(&b).ok()
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.nodes.len()];
        for s in &self.succ {
            for &j in s {
                indeg[j] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..indeg.len()).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = stack.pop() {
            seen += 1;
            for &j in &self.succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        seen == self.nodes.len()
    }
}

pub fn build_overtake_graph(g: &Graph, b: &VertexSet, cliques: &[VertexSet]) -> OvertakeGraph {
    let nodes = b.to_vec();
    let nontrivial: Vec<&VertexSet> = cliques.iter().filter(|k| k.len() >= 2).collect();
    let succ = nodes
        .iter()
        .map(|&b1| {
            (0..nodes.len())
                .filter(|&j| {
                    let b2 = nodes[j];
                    b2 != b1
                        && nontrivial
                            .iter()
                            .filter(|k| overtakes(g, b1, b2, k))
                            .count()
                            >= OVERTAKE_THRESHOLD
                })
                .collect()
        })
        .collect();
    OvertakeGraph { nodes, succ }
}

/// Smallest node without outgoing edges; `None` only for an empty graph.
pub fn good_vertex(h: &OvertakeGraph) -> Result<Option<Vertex>, ClassViolation> {
    if h.nodes.is_empty() {
        return Ok(None);
    }
    if let Some(i) = (0..h.nodes.len()).find(|&i| h.succ[i].is_empty()) {
        return Ok(Some(h.nodes[i]));
    }
    // every node has a successor: walking from node 0 must revisit a node on a cycle
    let mut visited = vec![false; h.nodes.len()];
    let mut i = 0;
    while !visited[i] {
        visited[i] = true;
        i = h.succ[i][0];
    }
    Err(ClassViolation::OvertakeCycle(h.nodes[i]))
}

/// Splits clique indices into those no `B` vertex distinguishes (`c1`) and the rest (`c2`).
pub fn classify_components(
    g: &Graph,
    cliques: &[VertexSet],
    b: &VertexSet,
) -> (Vec<usize>, Vec<usize>) {
    (0..cliques.len()).partition(|&i| {
        b.iter()
            .all(|x| classify_contact(g, x, &cliques[i]) != SetAdjacency::Distinguishes)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnchorOutcome {
    Infeasible(Infeasible),
    /// More than [`MAX_DISTINGUISHED`] cliques stayed distinguished.
    TooManyDistinguished,
    /// No candidate tuple dominated the residual instance exactly.
    NoTuple,
    Accepted {
        weight: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorBranch {
    pub b_star: Vertex,
    pub a_star: Vertex,
    pub reduced_cliques: Vec<VertexSet>,
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    pub outcome: AnchorOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UnipolarReport {
    pub solution: Option<Solution>,
    /// Set when normalisation alone proved infeasibility.
    pub infeasible: Option<Infeasible>,
    pub overtake: Option<OvertakeGraph>,
    pub good_vertex: Option<Vertex>,
    pub anchors: Vec<AnchorBranch>,
}

#[derive(Clone)]
struct State {
    b: VertexSet,
    cliques: Vec<VertexSet>,
    forced: VertexSet,
    weights: WeightMap,
}

impl State {
    fn clique_union(&self) -> VertexSet {
        let mut u = VertexSet::new(self.weights.len());
        for c in &self.cliques {
            u.union_with(c);
        }
        u
    }
}

/// Repeats until stable: drop ∞ vertices from cliques (a singleton becomes forced),
/// settle `B` vertices seeing a forced vertex, and eliminate joins. Ends with the
/// necessary conditions that every `B` vertex still has a candidate neighbour and
/// that no two `B` vertices cover three cliques between them.
fn normalize(g: &Graph, st: &mut State) -> Result<(), Halt> {
    loop {
        let mut changed = false;
        let mut kept = Vec::with_capacity(st.cliques.len());
        for c in std::mem::take(&mut st.cliques) {
            let f = st.weights.finite_in(&c);
            changed |= f.len() != c.len();
            match f.len() {
                0 => {
                    return Err(Infeasible::NoCandidate(c.first().expect("nonempty clique")).into())
                }
                1 => {
                    st.forced.union_with(&f);
                    changed = true;
                }
                _ => kept.push(f),
            }
        }
        st.cliques = kept;
        for f in &st.forced {
            if !st.weights.is_finite(f) {
                return Err(Infeasible::ForcedInfinite(f).into());
            }
            if let Some(h) = g.neighbors(f).intersection(&st.forced).first() {
                return Err(Infeasible::AdjacentForced(f.min(h), f.max(h)).into());
            }
        }
        let union = st.clique_union();
        for x in &st.b.clone() {
            match g.neighbors(x).intersection_len(&st.forced) {
                0 => {}
                1 => {
                    st.weights.exclude_all(&g.neighbors(x).intersection(&union));
                    st.b.remove(x);
                    changed = true;
                }
                _ => return Err(Infeasible::DoublyForced(x).into()),
            }
        }
        if changed {
            continue;
        }
        let comps = ComponentSet::from_components(g, st.cliques.clone());
        let jr = join_reduction(g, &st.weights, &st.b, &comps)?;
        if jr.surviving_b == st.b {
            break;
        }
        st.b = jr.surviving_b;
        st.weights = jr.weights;
        st.cliques = jr.components.components().to_vec();
    }
    let union = st.clique_union();
    if let Some(x) = st.b.iter().find(|&x| !g.neighbors(x).intersects(&union)) {
        return Err(Infeasible::Undominatable(x).into());
    }
    let b = st.b.to_vec();
    for (i, &b1) in b.iter().enumerate() {
        for &b2 in &b[i + 1..] {
            let both = g.neighbors(b1).union(g.neighbors(b2));
            if st.cliques.iter().filter(|k| k.is_subset(&both)).count() >= 3 {
                return Err(Infeasible::TripleCover { b1, b2 }.into());
            }
        }
    }
    Ok(())
}

fn cheapest(weights: &WeightMap, k: &VertexSet) -> Vertex {
    k.iter()
        .min_by_key(|&v| (weights.get(v), v))
        .expect("normalised cliques are nonempty")
}

pub fn solve_unipolar(inst: &UnipolarInstance) -> Result<Option<Solution>, SolveError> {
    Ok(solve_unipolar_traced(inst)?.solution)
}

/// Like [`solve_unipolar`], also returning the overtake graph and every anchor branch.
pub fn solve_unipolar_traced(inst: &UnipolarInstance) -> Result<UnipolarReport, SolveError> {
    let g = inst.graph;
    let region = inst.region();
    let check = |d: &VertexSet| match verify_ed_within(g, &inst.weights, &region, d) {
        Verdict::Valid { weight } => Some(weight),
        _ => None,
    };
    let mut report = UnipolarReport::default();
    let mut st = State {
        b: inst.b.clone(),
        cliques: inst.cliques.clone(),
        forced: inst.forced.clone(),
        weights: inst.weights.clone(),
    };
    match normalize(g, &mut st) {
        Ok(()) => {}
        Err(Halt::Infeasible(r)) => {
            report.infeasible = Some(r);
            return Ok(report);
        }
        Err(Halt::Error(e)) => return Err(e),
    }

    if st.b.is_empty() {
        let mut d = st.forced.clone();
        for k in &st.cliques {
            d.insert(cheapest(&st.weights, k));
        }
        report.solution = check(&d).map(|total_weight| Solution {
            members: d,
            total_weight,
        });
        return Ok(report);
    }

    let h = build_overtake_graph(g, &st.b, &st.cliques);
    let b_star = good_vertex(&h)?.expect("B is nonempty");
    report.overtake = Some(h);
    report.good_vertex = Some(b_star);

    let anchors = g.neighbors(b_star).intersection(&st.clique_union());
    for a_star in &anchors {
        let mut br = st.clone();
        br.forced.insert(a_star);
        br.cliques.retain(|c| !c.contains(a_star));
        for c in &br.cliques {
            br.weights.exclude_all(&c.intersection(g.neighbors(b_star)));
        }
        let mut branch = AnchorBranch {
            b_star,
            a_star,
            reduced_cliques: Vec::new(),
            c1: Vec::new(),
            c2: Vec::new(),
            outcome: AnchorOutcome::NoTuple,
        };
        match normalize(g, &mut br) {
            Ok(()) => {}
            Err(Halt::Infeasible(r)) => {
                branch.outcome = AnchorOutcome::Infeasible(r);
                report.anchors.push(branch);
                continue;
            }
            Err(Halt::Error(e)) => return Err(e),
        }
        let (c1, c2) = classify_components(g, &br.cliques, &br.b);
        branch.reduced_cliques = br.cliques.clone();
        branch.c1 = c1;
        branch.c2 = c2;
        if branch.c2.len() > MAX_DISTINGUISHED {
            branch.outcome = AnchorOutcome::TooManyDistinguished;
            report.anchors.push(branch);
            continue;
        }
        let mut base = br.forced.clone();
        for &i in &branch.c1 {
            base.insert(cheapest(&br.weights, &br.cliques[i]));
        }
        let choices: Vec<Vec<Vertex>> = branch.c2.iter().map(|&i| br.cliques[i].to_vec()).collect();
        let mut best_here: Option<(u64, VertexSet)> = None;
        let mut pick = vec![0usize; choices.len()];
        'tuples: loop {
            let mut d = base.clone();
            for (c, &p) in choices.iter().zip(&pick) {
                d.insert(c[p]);
            }
            if let Some(w) = check(&d) {
                if best_here.as_ref().is_none_or(|(bw, _)| w < *bw) {
                    best_here = Some((w, d));
                }
            }
            for i in (0..pick.len()).rev() {
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    continue 'tuples;
                }
                pick[i] = 0;
            }
            break;
        }
        if let Some((w, d)) = best_here {
            branch.outcome = AnchorOutcome::Accepted { weight: w };
            if report.solution.as_ref().is_none_or(|s| w < s.total_weight) {
                report.solution = Some(Solution {
                    members: d,
                    total_weight: w,
                });
            }
        }
        report.anchors.push(branch);
    }
    Ok(report)
}
