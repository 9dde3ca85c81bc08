//! Exact odd Hadwiger numbers of small graphs by exhaustive search.

mod search;

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::constructions::{odd_cycle_model, resolve_connectors};
use crate::graph::{is_bipartite, odd_cycle, Graph};
use crate::model::{
    verify_with, BranchTree, Color, OddExpansionModel, VerifyOptions, WitnessColoring,
};
use search::{Chosen, Control, Engine, Outcome, Signs};

/// Largest instance the search accepts regardless of budget; the connected
/// set table grows like `2^n`.
pub const HARD_VERTEX_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub time_limit: Duration,
    pub node_limit: u64,
    /// Worker threads for the fan-out over the first branch set.
    pub jobs: usize,
    /// Forces a single worker.
    pub strict: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 16,
            time_limit: Duration::from_secs(60),
            node_limit: 100_000_000,
            jobs: 1,
            strict: false,
        }
    }
}

impl SearchBudget {
    /// Budget for long confirmation runs on up to 20 vertices.
    pub fn extended() -> Self {
        SearchBudget {
            max_vertices: 20,
            time_limit: Duration::from_secs(6 * 3600),
            node_limit: u64::MAX,
            ..Self::default()
        }
    }

    fn jobs(&self) -> usize {
        if self.strict {
            1
        } else {
            self.jobs.max(1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("graph has {n} vertices, above the search limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("clique order must be at least 1")]
    InvalidOrder,
    #[error("search budget exhausted while testing K_{order} ({nodes} nodes)")]
    Timeout { order: usize, nodes: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactStatus {
    Exact,
    LowerBoundOnly,
    Timeout,
}

impl fmt::Display for ExactStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExactStatus::Exact => "EXACT",
            ExactStatus::LowerBoundOnly => "LOWER_BOUND",
            ExactStatus::Timeout => "TIMEOUT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub status: ExactStatus,
    /// Order of `certificate`.
    pub value: usize,
    pub certificate: OddExpansionModel,
    /// For exact results, the order shown absent.
    pub refutation_order: Option<usize>,
    pub nodes: u64,
}

const STRICT: VerifyOptions = VerifyOptions {
    require_connectors: true,
};

fn check_size(g: &Graph, budget: &SearchBudget) -> Result<(), OracleError> {
    let max = budget.max_vertices.min(HARD_VERTEX_CAP);
    if g.order() > max {
        return Err(OracleError::TooLarge { n: g.order(), max });
    }
    Ok(())
}

fn singleton_model(v: usize) -> OddExpansionModel {
    OddExpansionModel::new(
        vec![BranchTree::singleton(v)],
        [(v, Color::One)].into_iter().collect(),
    )
    .with_connectors(Default::default())
}

fn edge_model(u: usize, v: usize) -> OddExpansionModel {
    OddExpansionModel::new(
        vec![BranchTree::singleton(u), BranchTree::singleton(v)],
        [(u, Color::One), (v, Color::One)].into_iter().collect(),
    )
    .with_connectors([((0, 1), (u, v))].into_iter().collect())
}

/// Turns a search hit into a certificate: flips each set per its sign,
/// takes a BFS tree over bichromatic edges, and picks least connectors.
fn build_model(
    g: &Graph,
    engine: &Engine,
    chosen: &[Chosen],
    signs: &Signs,
) -> Result<OddExpansionModel, OracleError> {
    let mut trees = Vec::with_capacity(chosen.len());
    let mut coloring = WitnessColoring::new();
    for (i, c) in chosen.iter().enumerate() {
        let one = if signs.sign[i] == 0 {
            c.class.c1
        } else {
            c.class.c2
        };
        let start = c.mask.trailing_zeros() as usize;
        let mut reach = 1u64 << start;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut edges = Vec::new();
        while let Some(u) = queue.pop_front() {
            let opposite = if one >> u & 1 == 1 {
                c.mask & !one
            } else {
                one
            };
            let mut next = engine.adj[u] & opposite & !reach;
            reach |= next;
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                edges.push((u, w));
                queue.push_back(w);
            }
        }
        let mut m = c.mask;
        let mut vertices = Vec::new();
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            vertices.push(v);
            coloring.set(
                v,
                if one >> v & 1 == 1 {
                    Color::One
                } else {
                    Color::Two
                },
            );
        }
        trees.push(BranchTree::new(vertices, edges));
    }
    let mut model = OddExpansionModel::new(trees, coloring);
    let connectors =
        resolve_connectors(g, &model).map_err(|e| OracleError::Internal(e.to_string()))?;
    model.connectors = Some(connectors);
    let verdict = verify_with(g, &model, STRICT);
    if !verdict.is_pass() {
        return Err(OracleError::Internal(format!(
            "search produced an invalid model: {verdict}"
        )));
    }
    Ok(model)
}

fn engine_for(g: &Graph) -> Engine {
    Engine::new(
        g.adjacency_masks()
            .expect("size checked against the hard cap"),
    )
}

fn find(
    g: &Graph,
    engine: &Engine,
    r: usize,
    ctl: &Control,
    budget: &SearchBudget,
) -> Result<Option<OddExpansionModel>, OracleError> {
    match engine.search(r, ctl, budget.jobs()) {
        Outcome::Found(chosen, signs) => build_model(g, engine, &chosen, &signs).map(Some),
        Outcome::Absent => Ok(None),
        Outcome::Timeout => Err(OracleError::Timeout {
            order: r,
            nodes: ctl.nodes(),
        }),
    }
}

/// An odd `K_r` model in `g`, or `None` once the search space is exhausted.
pub fn has_odd_clique_minor(
    g: &Graph,
    r: usize,
    budget: &SearchBudget,
) -> Result<Option<OddExpansionModel>, OracleError> {
    if r == 0 {
        return Err(OracleError::InvalidOrder);
    }
    check_size(g, budget)?;
    if r > g.order() {
        return Ok(None);
    }
    let ctl = Control::new(Instant::now() + budget.time_limit, budget.node_limit);
    find(g, &engine_for(g), r, &ctl, budget)
}

/// The odd Hadwiger number of `g`: fast paths for edgeless and bipartite
/// graphs, then deepening from `K_4` on top of an odd-cycle `K_3`.
pub fn odd_hadwiger(g: &Graph, budget: &SearchBudget) -> Result<ExactResult, OracleError> {
    if g.order() == 0 {
        return Err(OracleError::EmptyGraph);
    }
    let exact = |certificate: OddExpansionModel, refuted: usize, nodes: u64| ExactResult {
        status: ExactStatus::Exact,
        value: certificate.clique_order(),
        certificate,
        refutation_order: Some(refuted),
        nodes,
    };
    if g.size() == 0 {
        return Ok(exact(singleton_model(0), 2, 0));
    }
    if is_bipartite(g).is_some() {
        let (u, v) = g.edges()[0];
        return Ok(exact(edge_model(u, v), 3, 0));
    }
    let cycle = odd_cycle(g).ok_or_else(|| OracleError::Internal("no odd cycle".into()))?;
    let mut best = odd_cycle_model(&cycle).expect("odd cycle");
    if check_size(g, budget).is_err() {
        return Ok(ExactResult {
            status: ExactStatus::LowerBoundOnly,
            value: best.clique_order(),
            certificate: best,
            refutation_order: None,
            nodes: 0,
        });
    }
    let engine = engine_for(g);
    let ctl = Control::new(Instant::now() + budget.time_limit, budget.node_limit);
    let mut r = 4;
    loop {
        if r > g.order() {
            return Ok(exact(best, r, ctl.nodes()));
        }
        match find(g, &engine, r, &ctl, budget) {
            Ok(Some(m)) => best = m,
            Ok(None) => return Ok(exact(best, r, ctl.nodes())),
            Err(OracleError::Timeout { nodes, .. }) => {
                return Ok(ExactResult {
                    status: ExactStatus::Timeout,
                    value: best.clique_order(),
                    certificate: best,
                    refutation_order: None,
                    nodes,
                })
            }
            Err(e) => return Err(e),
        }
        r += 1;
    }
}
