use std::collections::BTreeMap;

use super::{
    identity_model, oriented, param_error, product_grid_forest, resolve_connectors,
    ConstructionError, GridMode,
};
use crate::graph::{complete, product, Graph, ProductKind, ProductVertex};
use crate::model::{
    verify_odd_expansion, BranchTree, Color, Connectors, OddExpansionModel, Verdict,
    WitnessColoring,
};

/// An odd expansion of `K_m` in `K_s □ K_t`, verified on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseModel {
    s: usize,
    t: usize,
    model: OddExpansionModel,
}

impl BaseModel {
    pub fn new(s: usize, t: usize, model: OddExpansionModel) -> Result<Self, ConstructionError> {
        if s == 0 || t == 0 {
            return Err(param_error("s >= 1 and t >= 1", format!("s={s}, t={t}")));
        }
        match verify_odd_expansion(&Self::host(s, t), &model) {
            Verdict::Pass { .. } => Ok(BaseModel { s, t, model }),
            verdict => Err(ConstructionError::InvalidBase(verdict)),
        }
    }

    /// The identity model of `K_s □ K_t` when one side is trivial, so the
    /// product is itself complete.
    pub fn trivial(s: usize, t: usize) -> Result<Self, ConstructionError> {
        if s.min(t) != 1 {
            return Err(param_error("min(s, t) = 1", format!("s={s}, t={t}")));
        }
        Self::new(s, t, identity_model(s.max(t)))
    }

    pub fn host(s: usize, t: usize) -> Graph {
        let ks = complete(s).expect("s >= 1");
        let kt = complete(t).expect("t >= 1");
        product(ProductKind::Cartesian, &ks, &kt)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn model(&self) -> &OddExpansionModel {
        &self.model
    }

    pub fn clique_order(&self) -> usize {
        self.model.clique_order()
    }
}

/// `K_{s+t-2}` in `K_s □ K_t`: singletons `(0, k)` for `k < t-1`, then for each
/// row `i >= 1` a star centered at `(i, t-1)` over the rest of the row.
/// Centers are colored 2 and all other vertices 1.
pub fn cartesian_complete_model(s: usize, t: usize) -> Result<BaseModel, ConstructionError> {
    if s < 2 || t < 2 {
        return Err(param_error("s >= 2 and t >= 2", format!("s={s}, t={t}")));
    }
    let id = |i: usize, j: usize| ProductVertex::new(i, j).flat(t);
    let mut trees = Vec::with_capacity(s + t - 2);
    let mut coloring = WitnessColoring::new();
    for k in 0..t - 1 {
        trees.push(BranchTree::singleton(id(0, k)));
        coloring.set(id(0, k), Color::One);
    }
    for i in 1..s {
        let center = id(i, t - 1);
        let leaves: Vec<usize> = (0..t - 1).map(|j| id(i, j)).collect();
        coloring.set(center, Color::Two);
        for &l in &leaves {
            coloring.set(l, Color::One);
        }
        trees.push(BranchTree::new(
            std::iter::once(center).chain(leaves.iter().copied()),
            leaves.iter().map(|&l| (center, l)),
        ));
    }

    let star = |i: usize| t - 1 + (i - 1);
    let mut connectors = Connectors::new();
    for k in 0..t - 1 {
        for k2 in k + 1..t - 1 {
            connectors.insert((k, k2), (id(0, k), id(0, k2)));
        }
        for i in 1..s {
            connectors.insert((k, star(i)), (id(0, k), id(i, k)));
        }
    }
    for i in 1..s {
        for i2 in i + 1..s {
            connectors.insert((star(i), star(i2)), (id(i, t - 1), id(i2, t - 1)));
        }
    }
    BaseModel::new(
        s,
        t,
        OddExpansionModel::new(trees, coloring).with_connectors(connectors),
    )
}

/// Lifts a base model on `K_s □ K_t` through the grid forest of two factor
/// models, giving a model of the same order on `G □ H`.
pub fn cartesian_lift(
    g: &Graph,
    mg: &OddExpansionModel,
    h: &Graph,
    mh: &OddExpansionModel,
    base: &BaseModel,
) -> Result<OddExpansionModel, ConstructionError> {
    if mg.clique_order() != base.s || mh.clique_order() != base.t {
        return Err(ConstructionError::OrderMismatch(format!(
            "factor orders ({}, {}) but base is on K_{} □ K_{}",
            mg.clique_order(),
            mh.clique_order(),
            base.s,
            base.t
        )));
    }
    let grid = product_grid_forest(g, mg, h, mh, GridMode::Cartesian)?;
    let base_connectors = resolve_connectors(&BaseModel::host(base.s, base.t), &base.model)?;
    let cell_of = |x: usize| {
        let p = ProductVertex::unflat(x, base.t);
        (p.a, p.b)
    };
    let cross = |x: usize, y: usize| {
        grid.cross_edge(cell_of(x), cell_of(y)).ok_or_else(|| {
            ConstructionError::Internal(format!(
                "base edge {:?}-{:?} is not a Cartesian edge",
                cell_of(x),
                cell_of(y)
            ))
        })
    };

    let mut trees = Vec::with_capacity(base.clique_order());
    let mut coloring = WitnessColoring::new();
    for rk in &base.model.trees {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for &x in rk.vertices() {
            let (i, j) = cell_of(x);
            let cell = grid.cell(i, j);
            let flip = base.model.coloring.get(x) == Some(Color::Two);
            for &v in cell.vertices() {
                let c = grid.coloring.get(v).expect("grid colors every cell vertex");
                coloring.set(v, if flip { c.flip() } else { c });
            }
            vertices.extend_from_slice(cell.vertices());
            edges.extend_from_slice(cell.edges());
        }
        for &(x, y) in rk.edges() {
            edges.push(cross(x, y)?);
        }
        trees.push(BranchTree::new(vertices, edges));
    }

    let mut connectors = BTreeMap::new();
    for &(k, k2) in base_connectors.keys() {
        let (x, y) = oriented(&base_connectors, k, k2);
        connectors.insert((k, k2), cross(x, y)?);
    }
    Ok(OddExpansionModel::new(trees, coloring).with_connectors(connectors))
}

/// `K_{d(n-2)+2}` in the `d`-fold Cartesian power of `K_n`, built by lifting
/// one coordinate at a time.
pub fn hamming_model(n: usize, d: usize) -> Result<OddExpansionModel, ConstructionError> {
    if n < 2 || d < 1 {
        return Err(param_error("n >= 2 and d >= 1", format!("n={n}, d={d}")));
    }
    let kn = complete(n).expect("n >= 2");
    let id = identity_model(n);
    let mut host = kn.clone();
    let mut model = id.clone();
    for _ in 1..d {
        let base = cartesian_complete_model(model.clique_order(), n)?;
        model = cartesian_lift(&host, &model, &kn, &id, &base)?;
        host = product(ProductKind::Cartesian, &host, &kn);
    }
    Ok(model)
}
