//! Odd-expansion certificates: branch trees, a witness 2-coloring and
//! optional per-pair connector edges, plus the verifier and the canonical
//! text encoding.

mod codec;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use crate::graph::Edge;

pub use codec::{parse_model, serialize_model, Certificate, ParseError};
pub use verify::{verify_odd_expansion, verify_with, Clause, Failure, Verdict, VerifyOptions};

/// Flag attached to models built outside the hypotheses of the result they
/// implement (for instance a strong product with an order-1 factor).
pub const FLAG_OUTSIDE_PRECONDITIONS: &str = "outside-theorem-preconditions";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    One,
    Two,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::One => Color::Two,
            Color::Two => Color::One,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Color::One => 1,
            Color::Two => 2,
        }
    }

    pub fn from_u8(c: u8) -> Option<Color> {
        match c {
            1 => Some(Color::One),
            2 => Some(Color::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Partial map from vertex ids to colors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WitnessColoring(BTreeMap<usize, Color>);

impl WitnessColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.0.get(&v).copied()
    }

    pub fn set(&mut self, v: usize, c: Color) {
        self.0.insert(v, c);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Color)> + '_ {
        self.0.iter().map(|(&v, &c)| (v, c))
    }

    /// Every color swapped.
    pub fn flipped(&self) -> Self {
        self.iter().map(|(v, c)| (v, c.flip())).collect()
    }

    pub fn extend(&mut self, other: &WitnessColoring) {
        self.0.extend(other.iter());
    }
}

impl FromIterator<(usize, Color)> for WitnessColoring {
    fn from_iter<I: IntoIterator<Item = (usize, Color)>>(iter: I) -> Self {
        WitnessColoring(iter.into_iter().collect())
    }
}

/// A branch set together with the tree edges that hold it together.
///
/// Vertex lists are kept sorted and edges normalized to `(min, max)` in
/// sorted order; duplicates are preserved so the verifier can reject them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchTree {
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl BranchTree {
    pub fn new(
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        vertices.sort_unstable();
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        edges.sort_unstable();
        BranchTree { vertices, edges }
    }

    pub fn singleton(v: usize) -> Self {
        BranchTree {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    /// A path visiting `vertices` in the given order.
    pub fn path(vertices: &[usize]) -> Self {
        BranchTree::new(
            vertices.iter().copied(),
            vertices.windows(2).map(|w| (w[0], w[1])),
        )
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Map from a tree pair `(i, j)`, `i < j`, to a host edge `(u, v)` with
/// `u` in tree `i` and `v` in tree `j`.
pub type Connectors = BTreeMap<(usize, usize), Edge>;

/// A certificate that the host graph contains `K_r` as an odd minor,
/// with `r = trees.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OddExpansionModel {
    pub trees: Vec<BranchTree>,
    pub coloring: WitnessColoring,
    pub connectors: Option<Connectors>,
    pub flags: Vec<String>,
}

impl OddExpansionModel {
    pub fn new(trees: Vec<BranchTree>, coloring: WitnessColoring) -> Self {
        OddExpansionModel {
            trees,
            coloring,
            connectors: None,
            flags: Vec::new(),
        }
    }

    pub fn with_connectors(mut self, connectors: Connectors) -> Self {
        self.connectors = Some(connectors);
        self
    }

    pub fn clique_order(&self) -> usize {
        self.trees.len()
    }

    /// Same trees and connectors with every color swapped.
    pub fn color_swapped(&self) -> Self {
        OddExpansionModel {
            coloring: self.coloring.flipped(),
            ..self.clone()
        }
    }

    pub fn has_flag(&self, flag: &str) -> bool {
        self.flags.iter().any(|f| f == flag)
    }

    pub fn add_flag(&mut self, flag: &str) {
        if !self.has_flag(flag) {
            self.flags.push(flag.to_string());
            self.flags.sort();
        }
    }

    /// Index of the tree holding each vertex, for vertices below `n`.
    pub fn owners(&self, n: usize) -> Vec<Option<usize>> {
        let mut owner = vec![None; n];
        for (i, t) in self.trees.iter().enumerate() {
            for &v in t.vertices() {
                if v < n && owner[v].is_none() {
                    owner[v] = Some(i);
                }
            }
        }
        owner
    }
}
