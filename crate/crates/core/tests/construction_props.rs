//! Every construction verifies on its host, with the stated order.

use oddhadwiger::constructions::{
    cartesian_complete_model, cartesian_lift, direct_general_model, direct_k3_model,
    direct_k3_upper_bound, hamming_model, odd_cycle_model, product_grid_forest, star_model,
    strong_model, BaseModel, GridMode, StrongKind,
};
use oddhadwiger::graph::{complete, cycle, hamming, product, star, Graph, ProductKind};
use oddhadwiger::model::{serialize_model, verify_with, OddExpansionModel, VerifyOptions};
use proptest::prelude::*;

const STRICT: VerifyOptions = VerifyOptions {
    require_connectors: true,
};

fn k(n: usize) -> Graph {
    complete(n).unwrap()
}

fn assert_strict(host: &Graph, m: &OddExpansionModel) {
    let opts = VerifyOptions {
        require_connectors: m.connectors.is_some(),
    };
    let v = verify_with(host, m, opts);
    assert!(v.is_pass(), "{v}");
}

/// An odd cycle or a clique, with its identity or cycle model.
fn factor(code: usize) -> (Graph, OddExpansionModel) {
    match code {
        0..=3 => {
            let n = code + 1;
            (k(n), oddhadwiger::constructions::identity_model(n))
        }
        _ => {
            let n = 2 * (code - 4) + 5;
            let c: Vec<usize> = (0..n).collect();
            (cycle(n).unwrap(), odd_cycle_model(&c).unwrap())
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cartesian_complete_orders(s in 2..12usize, t in 2..12usize) {
        let b = cartesian_complete_model(s, t).unwrap();
        prop_assert_eq!(b.model().clique_order(), s + t - 2);
        assert_strict(&BaseModel::host(s, t), b.model());
    }

    #[test]
    fn direct_k3_orders(t in 6..40usize) {
        let m = direct_k3_model(t).unwrap();
        prop_assert_eq!(m.clique_order(), t + 2);
        prop_assert_eq!(direct_k3_upper_bound(t), m.clique_order());
        let v = verify_with(&product(ProductKind::Direct, &k(t), &k(3)), &m, STRICT);
        prop_assert!(v.is_pass(), "{}", v);
    }

    #[test]
    fn direct_general_orders(t in 4..10usize, s in 3..13usize) {
        let m = direct_general_model(t, s).unwrap();
        prop_assert_eq!(m.clique_order(), t * (s / 3));
        let v = verify_with(&product(ProductKind::Direct, &k(t), &k(s)), &m, STRICT);
        prop_assert!(v.is_pass(), "{}", v);
    }

    #[test]
    fn star_orders(r in 1..9usize, t in 1..9usize) {
        let m = star_model(r, t).unwrap();
        let want = if r == t { r + 1 } else { r.min(t) + 2 };
        prop_assert_eq!(m.clique_order(), want);
        assert_strict(&product(ProductKind::Strong, &star(r).unwrap(), &star(t).unwrap()), &m);
    }

    #[test]
    fn hamming_orders(n in 2..6usize, d in 1..4usize) {
        let m = hamming_model(n, d).unwrap();
        prop_assert_eq!(m.clique_order(), d * (n - 2) + 2);
        assert_strict(&hamming(n, d).unwrap(), &m);
    }

    #[test]
    fn strong_and_lift_on_factor_pairs(a in 0..7usize, b in 0..7usize) {
        let (g, mg) = factor(a);
        let (h, mh) = factor(b);
        let (s, t) = (mg.clique_order(), mh.clique_order());
        for kind in [StrongKind::Strong, StrongKind::Lexicographic] {
            let m = strong_model(&g, &mg, &h, &mh, kind).unwrap();
            prop_assert_eq!(m.clique_order(), s * t);
            assert_strict(&product(kind.product_kind(), &g, &h), &m);
        }
        let base = if s.min(t) >= 2 {
            cartesian_complete_model(s, t).unwrap()
        } else {
            BaseModel::trivial(s, t).unwrap()
        };
        let lifted = cartesian_lift(&g, &mg, &h, &mh, &base).unwrap();
        prop_assert_eq!(lifted.clique_order(), base.clique_order());
        assert_strict(&product(ProductKind::Cartesian, &g, &h), &lifted);
    }

    #[test]
    fn grid_cells_proper_and_cross_edges_monochromatic(a in 0..7usize, b in 0..7usize, strong in any::<bool>()) {
        let (g, mg) = factor(a);
        let (h, mh) = factor(b);
        let mode = if strong { GridMode::Strong } else { GridMode::Cartesian };
        let grid = product_grid_forest(&g, &mg, &h, &mh, mode).unwrap();
        let host = product(mode.kind(), &g, &h);
        for cell in &grid.cells {
            for &(u, v) in cell.edges() {
                prop_assert!(host.has_edge(u, v));
                prop_assert_ne!(grid.coloring.get(u), grid.coloring.get(v));
            }
        }
        for i in 0..grid.s {
            for j in 0..grid.t {
                for i2 in 0..grid.s {
                    for j2 in 0..grid.t {
                        if (i, j) >= (i2, j2) || (i != i2 && j != j2) {
                            continue;
                        }
                        let (u, v) = grid.cross_edge((i, j), (i2, j2)).unwrap();
                        prop_assert!(grid.cell(i, j).contains(u));
                        prop_assert!(grid.cell(i2, j2).contains(v));
                        prop_assert!(host.has_edge(u, v));
                        prop_assert_eq!(grid.coloring.get(u), grid.coloring.get(v));
                    }
                }
            }
        }
    }
}

#[test]
fn constructions_are_deterministic() {
    let host = product(ProductKind::Direct, &k(9), &k(3));
    let a = serialize_model(&direct_k3_model(9).unwrap(), &host.content_hash());
    let b = serialize_model(&direct_k3_model(9).unwrap(), &host.content_hash());
    assert_eq!(a, b);
    let (c5, m5) = factor(4);
    let x = strong_model(&c5, &m5, &c5, &m5, StrongKind::Strong).unwrap();
    let y = strong_model(&c5, &m5, &c5, &m5, StrongKind::Strong).unwrap();
    assert_eq!(serialize_model(&x, "h"), serialize_model(&y, "h"));
}

#[test]
fn direct_k3_tree_sizes() {
    for t in 7..=14 {
        let m = direct_k3_model(t).unwrap();
        let sizes: Vec<usize> = m.trees.iter().map(|tr| tr.len()).collect();
        assert_eq!(
            sizes.iter().filter(|&&n| n == 2).count(),
            6,
            "t={t}: {sizes:?}"
        );
        assert!(sizes.iter().all(|&n| n == 2 || n == 3), "t={t}: {sizes:?}");
    }
}
