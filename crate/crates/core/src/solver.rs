//! Top-level search: branch on the closed neighbourhood of a minimum-degree vertex,
//! reduce each branch to unipolar instances, and keep the cheapest verified result.

use rayon::prelude::*;

use crate::error::{ClassViolation, SolveError};
use crate::graph::{connected_components, distance_levels_within, Graph};
use crate::instance::{verify_ed, verify_ed_within, Instance, Solution, Verdict};
use crate::reduction::{
    component_reduction, decoupled_components, find_b_star, join_reduction, ComponentSet, Halt,
    Infeasible,
};
use crate::unipolar::{solve_unipolar_traced, AnchorOutcome, UnipolarInstance};
use crate::vertex_set::{Vertex, VertexSet};
use crate::weight::WeightMap;

/// Distance level whose nonemptiness rules out P6-freeness.
const FORBIDDEN_LEVEL: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Evaluate the top-level branches of each component on the rayon pool.
    pub parallel: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Solved,
    NoEd,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    /// Minimum degree of the input graph.
    pub min_degree: usize,
    /// Root branches run, including those of decoupled sub-instances.
    pub branches: usize,
    /// Anchor branches run inside the unipolar solver.
    pub anchor_branches: usize,
    /// Join and component reductions performed.
    pub reductions: usize,
    /// Anchor branches discarded for leaving too many distinguished cliques.
    pub distinguished_rejections: usize,
}

impl SolverStats {
    fn absorb(&mut self, other: &SolverStats) {
        self.branches += other.branches;
        self.anchor_branches += other.anchor_branches;
        self.reductions += other.reductions;
        self.distinguished_rejections += other.distinguished_rejections;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverReport {
    pub status: SolveStatus,
    pub solution: Option<Solution>,
    pub stats: SolverStats,
}

pub fn solve_wed(inst: &Instance) -> Result<SolverReport, SolveError> {
    solve_wed_with(inst, &SolverOptions::default())
}

/// Solves each connected component and returns their union.
///
/// A returned solution is always an efficient dominating set of `inst`; `NoEd` and
/// class violations are only meaningful for P6-free inputs.
pub fn solve_wed_with(inst: &Instance, opts: &SolverOptions) -> Result<SolverReport, SolveError> {
    let g = inst.graph();
    let mut stats = SolverStats {
        min_degree: g.vertices().iter().map(|v| g.degree(v)).min().unwrap_or(0),
        ..SolverStats::default()
    };
    let mut members = VertexSet::new(g.n());
    for comp in connected_components(g, &g.vertices()) {
        match solve_connected_with(g, &comp, inst.weights(), opts, &mut stats)? {
            Some(s) => members.union_with(&s.members),
            None => {
                return Ok(SolverReport {
                    status: SolveStatus::NoEd,
                    solution: None,
                    stats,
                })
            }
        }
    }
    match verify_ed(inst, &members) {
        Verdict::Valid { weight } => Ok(SolverReport {
            status: SolveStatus::Solved,
            solution: Some(Solution {
                members,
                total_weight: weight,
            }),
            stats,
        }),
        v => Err(SolveError::Precondition(format!(
            "assembled set failed verification: {v:?}"
        ))),
    }
}

/// Cheapest efficient dominating set of the connected region `region` under `weights`.
pub fn solve_connected(
    g: &Graph,
    region: &VertexSet,
    weights: &WeightMap,
    stats: &mut SolverStats,
) -> Result<Option<Solution>, SolveError> {
    solve_connected_with(g, region, weights, &SolverOptions::default(), stats)
}

fn solve_connected_with(
    g: &Graph,
    region: &VertexSet,
    weights: &WeightMap,
    opts: &SolverOptions,
    stats: &mut SolverStats,
) -> Result<Option<Solution>, SolveError> {
    let Some(v0) = region
        .iter()
        .min_by_key(|&v| (g.neighbors(v).intersection_len(region), v))
    else {
        return Ok(Some(Solution {
            members: region.clone(),
            total_weight: 0,
        }));
    };
    let roots: Vec<Vertex> = g
        .closed_neighborhood(v0)
        .intersection(region)
        .iter()
        .filter(|&v| weights.is_finite(v))
        .collect();

    let run = |v: Vertex| {
        let mut local = SolverStats::default();
        solve_branch(g, region, weights, v, &mut local).map(|s| (s, local))
    };
    let results: Vec<Result<(Option<Solution>, SolverStats), SolveError>> = if opts.parallel {
        roots.par_iter().map(|&v| run(v)).collect()
    } else {
        let mut out = Vec::with_capacity(roots.len());
        for &v in &roots {
            let r = run(v);
            let failed = r.is_err();
            out.push(r);
            if failed {
                break;
            }
        }
        out
    };

    let mut best: Option<Solution> = None;
    for r in results {
        let (sol, local) = r?;
        stats.absorb(&local);
        if let Some(s) = sol {
            if best
                .as_ref()
                .is_none_or(|b| s.total_weight < b.total_weight)
            {
                best = Some(s);
            }
        }
    }
    Ok(best)
}

fn solve_region(
    g: &Graph,
    region: &VertexSet,
    weights: &WeightMap,
    stats: &mut SolverStats,
) -> Result<Option<VertexSet>, SolveError> {
    let mut members = VertexSet::new(g.n());
    for comp in connected_components(g, region) {
        match solve_connected(g, &comp, weights, stats)? {
            Some(s) => members.union_with(&s.members),
            None => return Ok(None),
        }
    }
    Ok(Some(members))
}

/// Cheapest efficient dominating set of `g[region]` containing `v`.
pub fn solve_branch(
    g: &Graph,
    region: &VertexSet,
    weights: &WeightMap,
    v: Vertex,
    stats: &mut SolverStats,
) -> Result<Option<Solution>, SolveError> {
    if !weights.is_finite(v) {
        return Err(SolveError::Precondition(format!(
            "branch root {v} has weight ∞"
        )));
    }
    stats.branches += 1;
    let levels = distance_levels_within(g, v, region)?;
    if let Some(far) = levels.level(FORBIDDEN_LEVEL).first() {
        return Err(ClassViolation::DistanceLevel {
            root: v,
            vertex: far,
            distance: FORBIDDEN_LEVEL,
        }
        .into());
    }
    match branch_inner(
        g,
        region,
        weights,
        v,
        &levels.level(1),
        &levels.level(2),
        stats,
    ) {
        Ok(s) => Ok(s),
        Err(Halt::Infeasible(_)) => Ok(None),
        Err(Halt::Error(e)) => Err(e),
    }
}

fn branch_inner(
    g: &Graph,
    region: &VertexSet,
    weights: &WeightMap,
    v: Vertex,
    n1: &VertexSet,
    n2: &VertexSet,
    stats: &mut SolverStats,
) -> Result<Option<Solution>, Halt> {
    // levels three and four
    let mut a = region.difference(n1).difference(n2);
    a.remove(v);

    let mut w = weights.clone();
    w.exclude_all(n1);
    w.exclude_all(n2);

    stats.reductions += 1;
    let jr = join_reduction(g, &w, n2, &ComponentSet::of(g, &a))?;
    let w = jr.weights;
    let b = jr.surviving_b;
    let comps = jr.components;

    let mut forced = VertexSet::new(g.n());
    for c in comps.components() {
        if c.len() == 1 {
            forced.union_with(c);
        }
    }
    let a_union = comps.union(g.n());
    for c in comps.components() {
        if w.finite_in(c).is_empty() {
            return Err(Infeasible::NoCandidate(c.first().expect("nonempty component")).into());
        }
    }
    if let Some(x) = b.iter().find(|&x| {
        w.finite_in(&g.neighbors(x).intersection(&a_union))
            .is_empty()
    }) {
        return Err(Infeasible::Undominatable(x).into());
    }

    let (contacted, lone): (Vec<&VertexSet>, Vec<&VertexSet>) = comps
        .non_cliques()
        .map(|(_, c)| c)
        .partition(|c| b.iter().any(|x| g.neighbors(x).intersects(c)));
    let mut base = VertexSet::new(g.n());
    base.insert(v);
    let lone_sets: Vec<VertexSet> = lone.into_iter().cloned().collect();
    for sub in decoupled_components(&w, &lone_sets) {
        match solve_region(g, &sub.region, &sub.weights, stats)? {
            Some(d) => base.union_with(&d),
            None => return Ok(None),
        }
    }
    // decoupled pieces are settled; the rest of the branch ignores them
    let mut kept: Vec<VertexSet> = comps
        .components()
        .iter()
        .filter(|c| !lone_sets.contains(c))
        .cloned()
        .collect();
    kept.retain(|c| !c.is_empty());
    let comps = ComponentSet::from_components(g, kept);

    let assemble =
        |uni: &UnipolarInstance, stats: &mut SolverStats| -> Result<Option<Solution>, SolveError> {
            let report = solve_unipolar_traced(uni)?;
            stats.anchor_branches += report.anchors.len();
            stats.distinguished_rejections += report
                .anchors
                .iter()
                .filter(|a| a.outcome == AnchorOutcome::TooManyDistinguished)
                .count();
            let Some(s) = report.solution else {
                return Ok(None);
            };
            let d = s.members.union(&base);
            Ok(match verify_ed_within(g, weights, region, &d) {
                Verdict::Valid { weight } => Some(Solution {
                    members: d,
                    total_weight: weight,
                }),
                _ => None,
            })
        };

    if contacted.is_empty() {
        let cliques: Vec<VertexSet> = comps
            .cliques()
            .map(|(_, c)| c.clone())
            .filter(|c| c.len() > 1)
            .collect();
        let uni = UnipolarInstance::new(g, b, cliques, forced, w)?;
        return Ok(assemble(&uni, stats)?);
    }

    let targets: Vec<VertexSet> = contacted.into_iter().cloned().collect();
    let star = find_b_star(g, &b, &targets);
    let b_star = star
        .vertex
        .expect("some B vertex contacts a remaining component");
    if let Some(&i) = star.uncontacted.first() {
        let other = b
            .iter()
            .find(|&x| g.neighbors(x).intersects(&targets[i]))
            .expect("component is contacted");
        return Err(ClassViolation::IncomparableContacts {
            b1: b_star,
            b2: other,
        }
        .into());
    }

    let mut best: Option<Solution> = None;
    let anchors = w.finite_in(&g.neighbors(b_star).intersection(&comps.union(g.n())));
    for q_star in &anchors {
        stats.reductions += 1;
        let uni = match component_reduction(g, &w, &b, b_star, q_star, &comps, &forced) {
            Ok(u) => u,
            Err(Halt::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        };
        if let Some(s) = assemble(&uni, stats)? {
            if best
                .as_ref()
                .is_none_or(|b| s.total_weight < b.total_weight)
            {
                best = Some(s);
            }
        }
    }
    Ok(best)
}
