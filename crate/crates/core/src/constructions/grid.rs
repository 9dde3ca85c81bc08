use std::collections::BTreeMap;

use super::{oriented, require_valid, resolve_connectors, ConstructionError};
use crate::graph::{product, spanning_tree, Edge, Graph, ProductKind, ProductVertex};
use crate::model::{BranchTree, Color, Connectors, OddExpansionModel, WitnessColoring};

/// Colors `(u, v)` with 1 when the factor colors of `u` and `v` agree and
/// with 2 otherwise. Ids are flattened with `second_order = |V(H)|`.
pub fn witness_product_coloring(
    first: &WitnessColoring,
    second: &WitnessColoring,
    domain: impl IntoIterator<Item = ProductVertex>,
    second_order: usize,
) -> Result<WitnessColoring, ConstructionError> {
    let mut out = WitnessColoring::new();
    for pv in domain {
        let cg = first.get(pv.a).ok_or(ConstructionError::ColoringMissing {
            which: "first",
            vertex: pv.a,
        })?;
        let ch = second.get(pv.b).ok_or(ConstructionError::ColoringMissing {
            which: "second",
            vertex: pv.b,
        })?;
        out.set(
            pv.flat(second_order),
            if cg == ch { Color::One } else { Color::Two },
        );
    }
    Ok(out)
}

/// Grid coordinates `(i, j)` of a cell.
pub type Cell = (usize, usize);

/// Which product hosts the grid. The cells and coloring do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    Cartesian,
    Strong,
}

impl GridMode {
    pub fn kind(self) -> ProductKind {
        match self {
            GridMode::Cartesian => ProductKind::Cartesian,
            GridMode::Strong => ProductKind::Strong,
        }
    }
}

/// Cell `(i, j)` is a spanning tree of `S_i □ T_j` inside the product of the
/// factor hosts; cells sharing a row or column are joined by a stored
/// monochromatic cross edge.
#[derive(Debug, Clone)]
pub struct GridForest {
    pub s: usize,
    pub t: usize,
    pub mode: GridMode,
    /// `|V(H)|`, the flattening radix of the host.
    pub second_order: usize,
    /// Row-major: cell `(i, j)` at index `i * t + j`.
    pub cells: Vec<BranchTree>,
    pub coloring: WitnessColoring,
    /// Keyed by `((i, j), (i', j'))` with the first cell lexicographically
    /// smaller; the edge starts in the first cell.
    pub cross_edges: BTreeMap<(Cell, Cell), Edge>,
    pub first_connectors: Connectors,
    pub second_connectors: Connectors,
}

impl GridForest {
    pub fn cell(&self, i: usize, j: usize) -> &BranchTree {
        &self.cells[i * self.t + j]
    }

    /// The stored cross edge between two cells, oriented to start in `a`.
    pub fn cross_edge(&self, a: (usize, usize), b: (usize, usize)) -> Option<Edge> {
        if a < b {
            self.cross_edges.get(&(a, b)).copied()
        } else {
            self.cross_edges.get(&(b, a)).map(|&(u, v)| (v, u))
        }
    }
}

fn local_tree_graph(tree: &BranchTree) -> Graph {
    let vs = tree.vertices();
    let idx = |v: usize| vs.binary_search(&v).expect("tree edge inside tree");
    Graph::new(
        vs.len(),
        tree.edges().iter().map(|&(u, v)| (idx(u), idx(v))),
    )
    .expect("verified tree is simple")
}

pub fn product_grid_forest(
    g: &Graph,
    mg: &OddExpansionModel,
    h: &Graph,
    mh: &OddExpansionModel,
    mode: GridMode,
) -> Result<GridForest, ConstructionError> {
    require_valid(g, mg, "first")?;
    require_valid(h, mh, "second")?;
    let first_connectors = resolve_connectors(g, mg)?;
    let second_connectors = resolve_connectors(h, mh)?;
    let (s, t) = (mg.clique_order(), mh.clique_order());
    let nh = h.order();
    let flat = |a: usize, b: usize| ProductVertex::new(a, b).flat(nh);

    let mut cells = Vec::with_capacity(s * t);
    let mut domain = Vec::new();
    for si in &mg.trees {
        let sg = local_tree_graph(si);
        for tj in &mh.trees {
            let tg = local_tree_graph(tj);
            let local = product(ProductKind::Cartesian, &sg, &tg);
            let all: Vec<usize> = (0..local.order()).collect();
            let edges = spanning_tree(&local, &all)
                .map_err(|e| ConstructionError::Internal(format!("cell is not connected: {e}")))?;
            let lift = |x: usize| {
                let p = ProductVertex::unflat(x, tj.len());
                flat(si.vertices()[p.a], tj.vertices()[p.b])
            };
            cells.push(BranchTree::new(
                all.iter().map(|&x| lift(x)),
                edges.iter().map(|&(x, y)| (lift(x), lift(y))),
            ));
            for &a in si.vertices() {
                for &b in tj.vertices() {
                    domain.push(ProductVertex::new(a, b));
                }
            }
        }
    }
    let coloring = witness_product_coloring(&mg.coloring, &mh.coloring, domain, nh)?;

    // Same row: lift the second factor's connector through the least vertex of S_i.
    // Same column: lift the first factor's connector through the least vertex of T_j.
    let mut cross_edges = BTreeMap::new();
    for i in 0..s {
        let u = mg.trees[i].vertices()[0];
        for j in 0..t {
            for j2 in j + 1..t {
                let (y, y2) = oriented(&second_connectors, j, j2);
                cross_edges.insert(((i, j), (i, j2)), (flat(u, y), flat(u, y2)));
            }
        }
    }
    for j in 0..t {
        let v = mh.trees[j].vertices()[0];
        for i in 0..s {
            for i2 in i + 1..s {
                let (x, x2) = oriented(&first_connectors, i, i2);
                cross_edges.insert(((i, j), (i2, j)), (flat(x, v), flat(x2, v)));
            }
        }
    }

    Ok(GridForest {
        s,
        t,
        mode,
        second_order: nh,
        cells,
        coloring,
        cross_edges,
        first_connectors,
        second_connectors,
    })
}
