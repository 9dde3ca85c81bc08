use super::{least_monochromatic_edge, param_error, ConstructionError};
use crate::graph::{complete, product, Edge, ProductKind, ProductVertex};
use crate::model::{BranchTree, Color, Connectors, OddExpansionModel, WitnessColoring};

/// One connector of the `Z_1..Z_8` table: the tree pair `(a, b)` and the edge
/// `(i, j)(i', j')` with `(i, j)` in `Z_a`. Everything is 1-based.
pub type ConnectorEntry = ((usize, usize), (usize, usize), (usize, usize));

/// The connector table for `K_t × K_3` exactly as printed. Its `Z_2` row names
/// `(2, 2)`, which lies in `Z_1`; see [`K3_CONNECTORS`].
pub const K3_CONNECTORS_PRINTED: [ConnectorEntry; 28] = [
    ((1, 2), (1, 1), (3, 2)),
    ((1, 3), (2, 2), (3, 1)),
    ((1, 4), (2, 2), (3, 3)),
    ((1, 5), (1, 1), (5, 3)),
    ((1, 6), (1, 1), (5, 2)),
    ((1, 7), (1, 1), (2, 3)),
    ((1, 8), (1, 1), (6, 2)),
    ((2, 3), (3, 2), (1, 3)),
    ((2, 4), (2, 2), (3, 3)),
    ((2, 5), (2, 2), (4, 2)),
    ((2, 6), (2, 2), (6, 3)),
    ((2, 7), (2, 2), (1, 2)),
    ((2, 8), (2, 2), (4, 3)),
    ((3, 4), (1, 3), (4, 1)),
    ((3, 5), (3, 1), (4, 2)),
    ((3, 6), (1, 3), (5, 2)),
    ((3, 7), (3, 1), (1, 2)),
    ((3, 8), (1, 3), (6, 2)),
    ((4, 5), (4, 1), (5, 3)),
    ((4, 6), (4, 1), (5, 2)),
    ((4, 7), (4, 1), (2, 3)),
    ((4, 8), (4, 1), (6, 2)),
    ((5, 6), (4, 2), (6, 3)),
    ((5, 7), (4, 2), (5, 1)),
    ((5, 8), (5, 3), (6, 2)),
    ((6, 7), (6, 3), (5, 1)),
    ((6, 8), (5, 2), (7, 1)),
    ((7, 8), (5, 1), (4, 3)),
];

/// [`K3_CONNECTORS_PRINTED`] with the `Z_2` endpoint `(2, 2)` replaced by `(2, 1)`,
/// the color-2 vertex of `Z_2`. This is the table the construction uses.
pub const K3_CONNECTORS: [ConnectorEntry; 28] = [
    ((1, 2), (1, 1), (3, 2)),
    ((1, 3), (2, 2), (3, 1)),
    ((1, 4), (2, 2), (3, 3)),
    ((1, 5), (1, 1), (5, 3)),
    ((1, 6), (1, 1), (5, 2)),
    ((1, 7), (1, 1), (2, 3)),
    ((1, 8), (1, 1), (6, 2)),
    ((2, 3), (3, 2), (1, 3)),
    ((2, 4), (2, 1), (3, 3)),
    ((2, 5), (2, 1), (4, 2)),
    ((2, 6), (2, 1), (6, 3)),
    ((2, 7), (2, 1), (1, 2)),
    ((2, 8), (2, 1), (4, 3)),
    ((3, 4), (1, 3), (4, 1)),
    ((3, 5), (3, 1), (4, 2)),
    ((3, 6), (1, 3), (5, 2)),
    ((3, 7), (3, 1), (1, 2)),
    ((3, 8), (1, 3), (6, 2)),
    ((4, 5), (4, 1), (5, 3)),
    ((4, 6), (4, 1), (5, 2)),
    ((4, 7), (4, 1), (2, 3)),
    ((4, 8), (4, 1), (6, 2)),
    ((5, 6), (4, 2), (6, 3)),
    ((5, 7), (4, 2), (5, 1)),
    ((5, 8), (5, 3), (6, 2)),
    ((6, 7), (6, 3), (5, 1)),
    ((6, 8), (5, 2), (7, 1)),
    ((7, 8), (5, 1), (4, 3)),
];

/// 1-based `(u_i, v_j)` to the flat id in `K_t × K_s`.
fn vid(s: usize, (i, j): (usize, usize)) -> usize {
    ProductVertex::new(i - 1, j - 1).flat(s)
}

/// Path trees in 1-based coordinates with one prescribed color each; the
/// remaining colors alternate along the path.
struct PathBuilder {
    s: usize,
    trees: Vec<BranchTree>,
    coloring: WitnessColoring,
}

impl PathBuilder {
    fn new(s: usize) -> Self {
        PathBuilder {
            s,
            trees: Vec::new(),
            coloring: WitnessColoring::new(),
        }
    }

    fn push(&mut self, path: &[(usize, usize)], at: usize, color: Color) {
        let ids: Vec<usize> = path.iter().map(|&p| vid(self.s, p)).collect();
        for (k, &v) in ids.iter().enumerate() {
            let c = if (k + at).is_multiple_of(2) {
                color
            } else {
                color.flip()
            };
            self.coloring.set(v, c);
        }
        self.trees.push(BranchTree::path(&ids));
    }
}

fn connector_error(a: usize, b: usize) -> ConstructionError {
    ConstructionError::Internal(format!("no admissible connector between trees {a} and {b}"))
}

fn path_ends(tree: &BranchTree) -> Vec<usize> {
    tree.vertices()
        .iter()
        .copied()
        .filter(|&v| {
            tree.edges()
                .iter()
                .filter(|&&(a, b)| a == v || b == v)
                .count()
                <= 1
        })
        .collect()
}

fn path_middle(tree: &BranchTree) -> Option<usize> {
    let ends = path_ends(tree);
    tree.vertices().iter().copied().find(|v| !ends.contains(v))
}

/// `K_{t+2}` in `K_t × K_3` for `t >= 6`.
///
/// Colors follow the one-per-tree prescriptions except on `Z_6`, where
/// `(u_5, v_2)` gets color 1 so that the tabulated connectors through it are
/// monochromatic.
pub fn direct_k3_model(t: usize) -> Result<OddExpansionModel, ConstructionError> {
    if t < 6 {
        return Err(param_error("t >= 6", format!("t={t}")));
    }
    use Color::{One, Two};
    let mut b = PathBuilder::new(3);
    b.push(&[(1, 1), (2, 2)], 0, One);
    b.push(&[(2, 1), (3, 2)], 0, Two);
    b.push(&[(1, 3), (3, 1)], 0, One);
    b.push(&[(3, 3), (4, 1)], 1, One);
    b.push(&[(4, 2), (5, 3)], 1, One);
    b.push(&[(5, 2), (6, 3)], 0, One);
    b.push(&[(1, 2), (2, 3), (5, 1)], 1, One);
    if t == 6 {
        b.push(&[(6, 1), (4, 3), (6, 2)], 1, Two);
    } else {
        b.push(&[(7, 1), (4, 3), (6, 2)], 1, Two);
    }
    for i in 9..=t + 1 {
        if i % 2 == 1 {
            b.push(&[(i - 1, 2), (i - 3, 1), (i - 2, 3)], 1, Two);
        } else {
            b.push(&[(i - 1, 1), (i - 3, 2), (i - 2, 3)], 1, Two);
        }
    }
    if t >= 7 {
        if (t + 2) % 2 == 1 {
            b.push(&[(t, 2), (t - 1, 1), (t, 3)], 1, Two);
        } else {
            b.push(&[(t, 1), (t - 1, 2), (t, 3)], 1, Two);
        }
    }
    let model = OddExpansionModel::new(b.trees, b.coloring);
    let host = product(
        ProductKind::Direct,
        &complete(t).expect("t >= 6"),
        &complete(3).expect("3 >= 1"),
    );

    let mut connectors = Connectors::new();
    for &((a, bb), x, y) in &K3_CONNECTORS {
        let y = if t == 6 && (a, bb) == (6, 8) {
            (6, 1)
        } else {
            y
        };
        connectors.insert((a - 1, bb - 1), (vid(3, x), vid(3, y)));
    }
    let r = model.clique_order();
    let color = |v: usize| model.coloring.get(v);
    for p in 8..r {
        let ends = path_ends(&model.trees[p]);
        for a in 0..8 {
            // Both endpoints colored 1, the path side at an end.
            let e = least_monochromatic_edge(&host, &model, a, p, |u, v| {
                color(u) == Some(One) && ends.contains(&v)
            })
            .ok_or_else(|| connector_error(a, p))?;
            connectors.insert((a, p), e);
        }
        for q in p + 1..r {
            // Tree index p holds Z_{p+1}: same parity joins ends, otherwise middles.
            let e = if p % 2 == q % 2 {
                let q_ends = path_ends(&model.trees[q]);
                least_monochromatic_edge(&host, &model, p, q, |u, v| {
                    ends.contains(&u) && q_ends.contains(&v) && color(u) == Some(One)
                })
            } else {
                let (m, m2) = (path_middle(&model.trees[p]), path_middle(&model.trees[q]));
                m.zip(m2).filter(|&(u, v)| host.has_edge(u, v))
            }
            .ok_or_else(|| connector_error(p, q))?;
            connectors.insert((p, q), e);
        }
    }
    Ok(model.with_connectors(connectors))
}

/// Upper bound on `oh(K_t × K_3)` from counting singleton and single-edge
/// trees: the maximum of `⌊(3t - 2D - S)/3⌋ + D + S` over `S <= 3` and
/// `D <= 6 - 2S`.
pub fn direct_k3_upper_bound(t: usize) -> usize {
    let mut best = 0;
    for s in 0..=3usize {
        for d in 0..=6 - 2 * s {
            let room = (3 * t).saturating_sub(2 * d + s);
            best = best.max(room / 3 + d + s);
        }
    }
    best
}

/// `K_{t⌊s/3⌋}` in `K_t × K_s` for `t >= 4`, `s >= 3`, using the first
/// `3⌊s/3⌋` columns as disjoint triangles. Tree `Z_{i,ℓ}` (1-based) has index
/// `(ℓ - 1) t + (i - 1)`.
pub fn direct_general_model(t: usize, s: usize) -> Result<OddExpansionModel, ConstructionError> {
    if t < 4 || s < 3 {
        return Err(param_error("t >= 4 and s >= 3", format!("t={t}, s={s}")));
    }
    let blocks = s / 3;
    let col = |j: usize, l: usize| j + 3 * (l - 1);
    let mut paths: Vec<Vec<(usize, usize)>> = Vec::with_capacity(t * blocks);
    for i in 1..=t {
        paths.push(match i {
            1 => vec![(1, 1)],
            2 => vec![(3, 1), (2, 2)],
            3 => vec![(3, 3)],
            4 => vec![(2, 1), (1, 2), (4, 3)],
            _ => vec![(i - 1, 1), (i - 2, 2), (i, 3)],
        });
    }
    for l in 2..=blocks {
        for i in 1..=t {
            paths.push(match i {
                1 => vec![(1, col(3, l)), (t, col(1, l - 1)), (t - 1, col(2, l - 1))],
                2 => vec![(t, col(2, l - 1)), (1, col(1, l)), (2, col(3, l))],
                _ => vec![(i, col(3, l)), (i - 2, col(2, l)), (i - 1, col(1, l))],
            });
        }
    }

    let mut trees = Vec::with_capacity(paths.len());
    let mut coloring = WitnessColoring::new();
    for (k, p) in paths.iter().enumerate() {
        let ids: Vec<usize> = p.iter().map(|&x| vid(s, x)).collect();
        for (pos, &v) in ids.iter().enumerate() {
            let end = pos == 0 || pos + 1 == ids.len();
            let c = if k == 1 {
                // Z_{2,1} = (u_3, v_1) - (u_2, v_2)
                if pos == 1 {
                    Color::One
                } else {
                    Color::Two
                }
            } else if end {
                Color::One
            } else {
                Color::Two
            };
            coloring.set(v, c);
        }
        trees.push(BranchTree::path(&ids));
    }
    let model = OddExpansionModel::new(trees, coloring);
    let host = product(
        ProductKind::Direct,
        &complete(t).expect("t >= 4"),
        &complete(s).expect("s >= 3"),
    );

    let r = model.clique_order();
    let group = [0usize, 1, 2];
    let key = [vid(s, (1, 1)), vid(s, (2, 2)), vid(s, (3, 3))];
    let ends: Vec<Vec<usize>> = model.trees.iter().map(path_ends).collect();
    let color = |v: usize| model.coloring.get(v);
    let mut connectors = Connectors::new();
    for a in 0..r {
        for b in a + 1..r {
            let e: Option<Edge> = if group.contains(&b) {
                least_monochromatic_edge(&host, &model, a, b, |_, _| true)
            } else if group.contains(&a) {
                if (a, b) == (1, t + 1) {
                    Some((vid(s, (3, 1)), vid(s, (1, col(1, 2)))))
                } else {
                    least_monochromatic_edge(&host, &model, a, b, |u, v| {
                        u == key[a] && ends[b].contains(&v) && color(v) == Some(Color::One)
                    })
                }
            } else {
                let (m, m2) = (path_middle(&model.trees[a]), path_middle(&model.trees[b]));
                match m.zip(m2) {
                    Some((u, v)) if host.has_edge(u, v) => Some((u, v)),
                    _ => least_monochromatic_edge(&host, &model, a, b, |u, v| {
                        ends[a].contains(&u) && ends[b].contains(&v) && color(u) == Some(Color::One)
                    }),
                }
            };
            connectors.insert((a, b), e.ok_or_else(|| connector_error(a, b))?);
        }
    }
    Ok(model.with_connectors(connectors))
}
