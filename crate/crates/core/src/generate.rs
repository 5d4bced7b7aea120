//! Seeded instance generators for test corpora and benchmarks.
//!
//! All generators draw from a `ChaCha8Rng` seeded with `seed`, so identical
//! parameters give identical instances on every platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::instance::Instance;
use crate::recognition::is_p6_free;
use crate::vertex_set::{Vertex, VertexSet};
use crate::weight::{Weight, WeightMap};

/// Resampling attempts before a filtered generator gives up.
pub const RESAMPLE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Plain G(n, p); may contain induced P6.
    Gnp,
    /// G(n, p) resampled until P6-free.
    GnpFiltered,
    /// A clique `B` plus disjoint cliques `A` with random `B–A` edges of probability `p`.
    Unipolar,
    /// Random union/join composition; `p` is the probability of a join.
    Cograph,
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gnp" => Ok(GenKind::Gnp),
            "gnp-filtered" => Ok(GenKind::GnpFiltered),
            "unipolar" => Ok(GenKind::Unipolar),
            "cograph" => Ok(GenKind::Cograph),
            _ => Err(format!("unknown generator kind `{s}`")),
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::Gnp => "gnp",
            GenKind::GnpFiltered => "gnp-filtered",
            GenKind::Unipolar => "unipolar",
            GenKind::Cograph => "cograph",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub kind: GenKind,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    /// Inclusive range of finite weights.
    pub weight_range: (u64, u64),
    /// Fraction of vertices whose weight is set to ∞.
    pub inf_fraction: f64,
    /// Unipolar: size of the clique side. Defaults to `n / 3`.
    pub b_size: Option<usize>,
    /// Unipolar: fixed size for every `A` clique. Defaults to random sizes in `1..=4`.
    pub clique_size: Option<usize>,
    /// Unipolar: resample until P6-free.
    pub p6_free: bool,
    /// Cograph: force a join at the top so the graph is connected.
    pub connected: bool,
}

impl GenParams {
    pub fn new(kind: GenKind, n: usize, p: f64, seed: u64) -> Self {
        Self {
            kind,
            n,
            p,
            seed,
            weight_range: (1, 1),
            inf_fraction: 0.0,
            b_size: None,
            clique_size: None,
            p6_free: false,
            connected: false,
        }
    }

    pub fn weights(mut self, lo: u64, hi: u64, inf_fraction: f64) -> Self {
        self.weight_range = (lo, hi);
        self.inf_fraction = inf_fraction;
        self
    }
}

/// The unipolar partition a generator built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipolarPartition {
    pub b: VertexSet,
    pub cliques: Vec<VertexSet>,
}

impl UnipolarPartition {
    pub fn a(&self) -> VertexSet {
        let mut a = self.b.clone();
        a.clear();
        for c in &self.cliques {
            a.union_with(c);
        }
        a
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generated {
    pub instance: Instance,
    pub partition: Option<UnipolarPartition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("n must be at least 1")]
    Empty,
    #[error("probability {0} outside [0, 1]")]
    Probability(String),
    #[error("no {kind} instance with n = {n} found in {attempts} attempts")]
    ResampleCap {
        kind: GenKind,
        n: usize,
        attempts: usize,
    },
    #[error("unipolar clique side of {b} vertices exceeds n = {n}")]
    CliqueSide { b: usize, n: usize },
}

pub fn gen_instance(params: &GenParams) -> Result<Generated, GenError> {
    if params.n == 0 {
        return Err(GenError::Empty);
    }
    for x in [params.p, params.inf_fraction] {
        if !(0.0..=1.0).contains(&x) {
            return Err(GenError::Probability(x.to_string()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n;
    let (graph, partition) = match params.kind {
        GenKind::Gnp => (gnp(&mut rng, n, params.p), None),
        GenKind::GnpFiltered => (resample(params, &mut rng, |r| gnp(r, n, params.p))?, None),
        GenKind::Unipolar => {
            let b = params.b_size.unwrap_or(n / 3);
            if b > n {
                return Err(GenError::CliqueSide { b, n });
            }
            let mut attempt = || unipolar(&mut rng, n, b, params.clique_size, params.p);
            if params.p6_free {
                let mut found = None;
                for _ in 0..RESAMPLE_CAP {
                    let (g, part) = attempt();
                    if is_p6_free(&g) {
                        found = Some((g, Some(part)));
                        break;
                    }
                }
                found.ok_or(GenError::ResampleCap {
                    kind: params.kind,
                    n,
                    attempts: RESAMPLE_CAP,
                })?
            } else {
                let (g, part) = attempt();
                (g, Some(part))
            }
        }
        GenKind::Cograph => (cograph(&mut rng, n, params.p, params.connected), None),
    };
    let weights = random_weights(&mut rng, n, params.weight_range, params.inf_fraction);
    let instance = Instance::new(graph, weights).expect("weights sized to the graph");
    Ok(Generated {
        instance,
        partition,
    })
}

fn resample(
    params: &GenParams,
    rng: &mut ChaCha8Rng,
    mut make: impl FnMut(&mut ChaCha8Rng) -> Graph,
) -> Result<Graph, GenError> {
    for _ in 0..RESAMPLE_CAP {
        let g = make(rng);
        if is_p6_free(&g) {
            return Ok(g);
        }
    }
    Err(GenError::ResampleCap {
        kind: params.kind,
        n: params.n,
        attempts: RESAMPLE_CAP,
    })
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_lossy(n, edges)
}

fn unipolar(
    rng: &mut ChaCha8Rng,
    n: usize,
    b_size: usize,
    clique_size: Option<usize>,
    p: f64,
) -> (Graph, UnipolarPartition) {
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(rng);
    let b: Vec<Vertex> = label[..b_size].to_vec();
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    let mut rest = &label[b_size..];
    while !rest.is_empty() {
        let size = clique_size
            .unwrap_or_else(|| rng.gen_range(1..=4))
            .clamp(1, rest.len());
        cliques.push(rest[..size].to_vec());
        rest = &rest[size..];
    }
    let mut edges = Vec::new();
    for (i, &u) in b.iter().enumerate() {
        for &v in &b[i + 1..] {
            edges.push((u, v));
        }
    }
    for c in &cliques {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                edges.push((u, v));
            }
        }
    }
    for &u in &b {
        for c in &cliques {
            for &v in c {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
    }
    let partition = UnipolarPartition {
        b: VertexSet::from_vertices(n, b),
        cliques: cliques
            .into_iter()
            .map(|c| VertexSet::from_vertices(n, c))
            .collect(),
    };
    (Graph::from_edges_lossy(n, edges), partition)
}

fn cograph(rng: &mut ChaCha8Rng, n: usize, p_join: f64, connected: bool) -> Graph {
    let mut label: Vec<Vertex> = (0..n).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    compose(rng, &label, p_join, connected, &mut edges);
    Graph::from_edges_lossy(n, edges)
}

fn compose(
    rng: &mut ChaCha8Rng,
    vs: &[Vertex],
    p_join: f64,
    force_join: bool,
    edges: &mut Vec<(Vertex, Vertex)>,
) {
    if vs.len() <= 1 {
        return;
    }
    let cut = rng.gen_range(1..vs.len());
    let (left, right) = vs.split_at(cut);
    if force_join || rng.gen_bool(p_join) {
        for &u in left {
            for &v in right {
                edges.push((u, v));
            }
        }
    }
    compose(rng, left, p_join, false, edges);
    compose(rng, right, p_join, false, edges);
}

fn random_weights(
    rng: &mut ChaCha8Rng,
    n: usize,
    (lo, hi): (u64, u64),
    inf_fraction: f64,
) -> WeightMap {
    let (lo, hi) = (lo.min(hi), lo.max(hi));
    WeightMap::from_vec(
        (0..n)
            .map(|_| {
                if inf_fraction > 0.0 && rng.gen_bool(inf_fraction) {
                    Weight::Infinite
                } else {
                    Weight::Finite(rng.gen_range(lo..=hi))
                }
            })
            .collect(),
    )
}
