//! Certificate-emitting constructions of odd clique minors in graph products.
//!
//! Every public constructor returns an [`OddExpansionModel`] that passes
//! [`verify_odd_expansion`] on the product it targets; most also store their
//! connector edges so the certificate can be checked in strict mode.
//!
//! Inside this module, index conventions follow the usual 1-based
//! `u_1, …, u_s` / `v_1, …, v_t` labels only where a table of explicit vertices
//! is transcribed; the conversion to 0-based host ids happens once, in a
//! local helper next to the table.

mod best;
mod cartesian;
mod direct;
mod grid;
mod strong;

use thiserror::Error;

use crate::graph::{Edge, Graph, ProductVertex};
use crate::model::{
    verify_odd_expansion, BranchTree, Color, Connectors, OddExpansionModel, Verdict,
    WitnessColoring,
};

pub use best::{best_lower_bound, BestBound};
pub use cartesian::{cartesian_complete_model, cartesian_lift, hamming_model, BaseModel};
pub use direct::{
    direct_general_model, direct_k3_model, direct_k3_upper_bound, ConnectorEntry, K3_CONNECTORS,
    K3_CONNECTORS_PRINTED,
};
pub use grid::{product_grid_forest, witness_product_coloring, Cell, GridForest, GridMode};
pub use strong::{star_model, strong_model, StrongKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{requirement} (got {got})")]
    Parameter { requirement: String, got: String },
    #[error("{which} factor model does not verify: {verdict}")]
    InvalidFactor {
        which: &'static str,
        verdict: Verdict,
    },
    #[error("base model does not verify on the complete-graph product: {0}")]
    InvalidBase(Verdict),
    #[error("vertex {vertex} has no color in the {which} factor coloring")]
    ColoringMissing { which: &'static str, vertex: usize },
    #[error("factor order mismatch: {0}")]
    OrderMismatch(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub(crate) fn param_error(requirement: &str, got: impl Into<String>) -> ConstructionError {
    ConstructionError::Parameter {
        requirement: requirement.to_string(),
        got: got.into(),
    }
}

/// `n` singleton trees, all colored 1: the canonical odd expansion of `K_n` in itself.
pub fn identity_model(n: usize) -> OddExpansionModel {
    let trees = (0..n).map(BranchTree::singleton).collect();
    let coloring = (0..n).map(|v| (v, Color::One)).collect();
    let connectors = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| ((i, j), (i, j))))
        .collect();
    OddExpansionModel::new(trees, coloring).with_connectors(connectors)
}

/// Builds the K_3 model carried by an odd cycle `v_0 … v_{2k}`: the singleton
/// `{v_0}` and the two halves of the rest, colored so the three joints are
/// monochromatic.
pub fn odd_cycle_model(cycle: &[usize]) -> Option<OddExpansionModel> {
    let len = cycle.len();
    if len < 3 || len.is_multiple_of(2) {
        return None;
    }
    let k = len / 2;
    let first = &cycle[1..=k];
    let second = &cycle[k + 1..];
    let mut coloring = WitnessColoring::new();
    coloring.set(cycle[0], Color::One);
    for (i, &v) in first.iter().enumerate() {
        coloring.set(v, if i % 2 == 0 { Color::One } else { Color::Two });
    }
    for (i, &v) in second.iter().rev().enumerate() {
        coloring.set(v, if i % 2 == 0 { Color::One } else { Color::Two });
    }
    let connectors = [
        ((0, 1), (cycle[0], cycle[1])),
        ((0, 2), (cycle[0], cycle[len - 1])),
        ((1, 2), (cycle[k], cycle[k + 1])),
    ]
    .into_iter()
    .collect();
    Some(
        OddExpansionModel::new(
            vec![
                BranchTree::singleton(cycle[0]),
                BranchTree::path(first),
                BranchTree::path(second),
            ],
            coloring,
        )
        .with_connectors(connectors),
    )
}

pub(crate) fn require_valid(
    host: &Graph,
    model: &OddExpansionModel,
    which: &'static str,
) -> Result<(), ConstructionError> {
    match verify_odd_expansion(host, model) {
        Verdict::Pass { .. } => Ok(()),
        verdict => Err(ConstructionError::InvalidFactor { which, verdict }),
    }
}

/// Lexicographically least monochromatic host edge `(u, v)` with `u` in tree
/// `i` and `v` in tree `j`, among endpoints accepted by `accept`.
pub(crate) fn least_monochromatic_edge(
    host: &Graph,
    model: &OddExpansionModel,
    i: usize,
    j: usize,
    accept: impl Fn(usize, usize) -> bool,
) -> Option<Edge> {
    let target = &model.trees[j];
    for &u in model.trees[i].vertices() {
        let cu = model.coloring.get(u)?;
        for &v in host.neighbors(u) {
            if target.contains(v) && model.coloring.get(v) == Some(cu) && accept(u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

/// Connector edges of a verified model: the stored ones, or for models
/// without stored connectors the least monochromatic edge of each pair.
pub(crate) fn resolve_connectors(
    host: &Graph,
    model: &OddExpansionModel,
) -> Result<Connectors, ConstructionError> {
    if let Some(c) = &model.connectors {
        return Ok(c.clone());
    }
    let r = model.clique_order();
    let mut out = Connectors::new();
    for i in 0..r {
        for j in i + 1..r {
            let e = least_monochromatic_edge(host, model, i, j, |_, _| true).ok_or_else(|| {
                ConstructionError::Internal(format!(
                    "no monochromatic edge between trees {i} and {j}"
                ))
            })?;
            out.insert((i, j), e);
        }
    }
    Ok(out)
}

/// The connector for an unordered pair, oriented so the first endpoint lies
/// in tree `i`.
pub(crate) fn oriented(conn: &Connectors, i: usize, j: usize) -> Edge {
    if i < j {
        conn[&(i, j)]
    } else {
        let (u, v) = conn[&(j, i)];
        (v, u)
    }
}

/// Relabels a model on `A * B` as a model on `B * A` by swapping coordinates.
/// Valid for products symmetric under the swap (Cartesian, direct, strong).
pub fn swap_coordinates(
    model: &OddExpansionModel,
    first: usize,
    second: usize,
) -> OddExpansionModel {
    let map = |x: usize| {
        let p = ProductVertex::unflat(x, second);
        ProductVertex::new(p.b, p.a).flat(first)
    };
    OddExpansionModel {
        trees: model
            .trees
            .iter()
            .map(|t| {
                BranchTree::new(
                    t.vertices().iter().map(|&v| map(v)),
                    t.edges().iter().map(|&(u, v)| (map(u), map(v))),
                )
            })
            .collect(),
        coloring: model.coloring.iter().map(|(v, c)| (map(v), c)).collect(),
        connectors: model.connectors.as_ref().map(|c| {
            c.iter()
                .map(|(&k, &(u, v))| (k, (map(u), map(v))))
                .collect()
        }),
        flags: model.flags.clone(),
    }
}
