use super::{oriented, param_error, product_grid_forest, ConstructionError, GridMode};
use crate::graph::{Graph, ProductKind, ProductVertex};
use crate::model::{
    BranchTree, Color, Connectors, OddExpansionModel, WitnessColoring, FLAG_OUTSIDE_PRECONDITIONS,
};

/// Host product for [`strong_model`]. The lexicographic product contains the
/// strong one, so both receive the same certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrongKind {
    Strong,
    Lexicographic,
}

impl StrongKind {
    pub fn product_kind(self) -> ProductKind {
        match self {
            StrongKind::Strong => ProductKind::Strong,
            StrongKind::Lexicographic => ProductKind::Lexicographic,
        }
    }
}

/// `K_{st}` in `G ⊠ H` (and hence in `G ∘ H`): every grid cell is a tree.
pub fn strong_model(
    g: &Graph,
    mg: &OddExpansionModel,
    h: &Graph,
    mh: &OddExpansionModel,
    _kind: StrongKind,
) -> Result<OddExpansionModel, ConstructionError> {
    let grid = product_grid_forest(g, mg, h, mh, GridMode::Strong)?;
    let (s, t) = (grid.s, grid.t);
    let nh = grid.second_order;
    let mut connectors = Connectors::new();
    for a in 0..s * t {
        let pa = (a / t, a % t);
        for b in a + 1..s * t {
            let pb = (b / t, b % t);
            let edge = match grid.cross_edge(pa, pb) {
                Some(e) => e,
                None => {
                    let (x, x2) = oriented(&grid.first_connectors, pa.0, pb.0);
                    let (y, y2) = oriented(&grid.second_connectors, pa.1, pb.1);
                    (
                        ProductVertex::new(x, y).flat(nh),
                        ProductVertex::new(x2, y2).flat(nh),
                    )
                }
            };
            connectors.insert((a, b), edge);
        }
    }
    let mut model = OddExpansionModel::new(grid.cells, grid.coloring).with_connectors(connectors);
    if s < 2 || t < 2 {
        model.add_flag(FLAG_OUTSIDE_PRECONDITIONS);
    }
    Ok(model)
}

/// Odd clique model in `S_r ⊠ S_t` (centers have id 0 in each star) of order
/// `r + 1` when `r = t` and `min(r, t) + 2` otherwise.
pub fn star_model(r: usize, t: usize) -> Result<OddExpansionModel, ConstructionError> {
    if r < 1 || t < 1 {
        return Err(param_error("r >= 1 and t >= 1", format!("r={r}, t={t}")));
    }
    let (small, large) = (r.min(t), r.max(t));
    // (x, y) with x in the smaller star and y in the larger one.
    let id = |x: usize, y: usize| {
        if r <= t {
            ProductVertex::new(x, y).flat(t + 1)
        } else {
            ProductVertex::new(y, x).flat(t + 1)
        }
    };
    let mut trees = Vec::new();
    let mut coloring = WitnessColoring::new();
    for i in 1..=small {
        trees.push(BranchTree::path(&[id(i, 0), id(i, i), id(0, i)]));
        coloring.set(id(i, 0), Color::Two);
        coloring.set(id(i, i), Color::One);
        coloring.set(id(0, i), Color::Two);
    }
    let mut extra = vec![id(0, 0)];
    if large > small {
        extra.push(id(0, large));
    }
    for &v in &extra {
        trees.push(BranchTree::singleton(v));
        coloring.set(v, Color::Two);
    }

    let mut connectors = Connectors::new();
    for i in 1..=small {
        for i2 in i + 1..=small {
            connectors.insert((i - 1, i2 - 1), (id(i, 0), id(0, i2)));
        }
        for (k, &v) in extra.iter().enumerate() {
            connectors.insert((i - 1, small + k), (id(i, 0), v));
        }
    }
    if extra.len() == 2 {
        connectors.insert((small, small + 1), (extra[0], extra[1]));
    }
    Ok(OddExpansionModel::new(trees, coloring).with_connectors(connectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{identity_model, odd_cycle_model};
    use crate::graph::{complete, cycle, product, star};
    use crate::model::{verify_with, VerifyOptions};

    const STRICT: VerifyOptions = VerifyOptions {
        require_connectors: true,
    };

    #[test]
    fn complete_factors_fill_the_product() {
        let k2 = complete(2).unwrap();
        let id = identity_model(2);
        let m = strong_model(&k2, &id, &k2, &id, StrongKind::Strong).unwrap();
        assert_eq!(m.clique_order(), 4);
        assert!(verify_with(&complete(4).unwrap(), &m, STRICT).is_pass());
        assert!(m.flags.is_empty());
    }

    #[test]
    fn cycles_give_nine() {
        let c5 = cycle(5).unwrap();
        let m5 = odd_cycle_model(&[0, 1, 2, 3, 4]).unwrap();
        let m = strong_model(&c5, &m5, &c5, &m5, StrongKind::Strong).unwrap();
        assert_eq!(m.clique_order(), 9);
        for kind in [ProductKind::Strong, ProductKind::Lexicographic] {
            assert!(verify_with(&product(kind, &c5, &c5), &m, STRICT).is_pass());
        }
        let lex = strong_model(&c5, &m5, &c5, &m5, StrongKind::Lexicographic).unwrap();
        assert_eq!(lex, m);
    }

    #[test]
    fn order_one_factor_is_flagged() {
        let c5 = cycle(5).unwrap();
        let m5 = odd_cycle_model(&[0, 1, 2, 3, 4]).unwrap();
        let k1 = complete(1).unwrap();
        let m = strong_model(&c5, &m5, &k1, &identity_model(1), StrongKind::Strong).unwrap();
        assert_eq!(m.clique_order(), 3);
        assert!(m.has_flag(FLAG_OUTSIDE_PRECONDITIONS));
        let host = product(ProductKind::Strong, &c5, &k1);
        assert!(verify_with(&host, &m, STRICT).is_pass());
    }

    #[test]
    fn star_orders() {
        for r in 1..=6 {
            for t in 1..=6 {
                let m = star_model(r, t).unwrap();
                let expected = if r == t { r + 1 } else { r.min(t) + 2 };
                assert_eq!(m.clique_order(), expected, "S_{r} x S_{t}");
                let host = product(ProductKind::Strong, &star(r).unwrap(), &star(t).unwrap());
                assert!(verify_with(&host, &m, STRICT).is_pass(), "S_{r} x S_{t}");
            }
        }
        assert!(star_model(0, 3).is_err());
    }
}
