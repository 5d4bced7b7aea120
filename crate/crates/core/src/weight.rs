use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, IndexMut};
use std::str::FromStr;

use crate::vertex_set::{Vertex, VertexSet};

/// A vertex weight in `ℕ ∪ {∞}`.
///
/// `Infinite` marks a vertex that may not belong to any efficient dominating set.
/// It orders above every finite weight and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    Finite(u64),
    Infinite,
}

impl Weight {
    pub const ZERO: Weight = Weight::Finite(0);

    #[inline]
    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    #[inline]
    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Infinite => None,
        }
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::Finite(1)
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Weight::Finite(a), Weight::Finite(b)) => a.cmp(b),
            (Weight::Finite(_), Weight::Infinite) => Ordering::Less,
            (Weight::Infinite, Weight::Finite(_)) => Ordering::Greater,
            (Weight::Infinite, Weight::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Finite(a), Weight::Finite(b)) => match a.checked_add(b) {
                Some(s) => Weight::Finite(s),
                None => Weight::Infinite,
            },
            _ => Weight::Infinite,
        }
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, Add::add)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWeightError(pub String);

impl fmt::Display for ParseWeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid weight `{}`", self.0)
    }
}

impl std::error::Error for ParseWeightError {}

impl FromStr for Weight {
    type Err = ParseWeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Weight::Infinite);
        }
        s.parse::<u64>()
            .map(Weight::Finite)
            .map_err(|_| ParseWeightError(s.to_string()))
    }
}

/// One weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMap {
    weights: Vec<Weight>,
}

impl WeightMap {
    /// Every vertex gets weight 1.
    pub fn unit(n: usize) -> Self {
        Self {
            weights: vec![Weight::Finite(1); n],
        }
    }

    pub fn from_vec(weights: Vec<Weight>) -> Self {
        Self { weights }
    }

    pub fn from_finite(weights: &[u64]) -> Self {
        Self {
            weights: weights.iter().map(|&w| Weight::Finite(w)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Weight {
        self.weights[v]
    }

    #[inline]
    pub fn is_finite(&self, v: Vertex) -> bool {
        self.weights[v].is_finite()
    }

    pub fn set(&mut self, v: Vertex, w: Weight) {
        self.weights[v] = w;
    }

    pub fn exclude(&mut self, v: Vertex) {
        self.weights[v] = Weight::Infinite;
    }

    pub fn exclude_all(&mut self, s: &VertexSet) {
        for v in s {
            self.weights[v] = Weight::Infinite;
        }
    }

    /// The finite-weight members of `s`.
    pub fn finite_in(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s {
            if !self.weights[v].is_finite() {
                out.remove(v);
            }
        }
        out
    }

    pub fn total(&self, s: &VertexSet) -> Weight {
        s.iter().map(|v| self.weights[v]).sum()
    }

    pub fn as_slice(&self) -> &[Weight] {
        &self.weights
    }
}

impl Index<Vertex> for WeightMap {
    type Output = Weight;

    fn index(&self, v: Vertex) -> &Weight {
        &self.weights[v]
    }
}

impl IndexMut<Vertex> for WeightMap {
    fn index_mut(&mut self, v: Vertex) -> &mut Weight {
        &mut self.weights[v]
    }
}
