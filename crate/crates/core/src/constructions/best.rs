use super::{
    cartesian_complete_model, cartesian_lift, direct_general_model, direct_k3_model,
    odd_cycle_model, require_valid, star_model, strong_model, swap_coordinates, BaseModel,
    ConstructionError, StrongKind,
};
use crate::graph::{odd_cycle, product, star, Graph, ProductKind};
use crate::model::{BranchTree, Color, Connectors, OddExpansionModel, WitnessColoring};

/// Result of [`best_lower_bound`]. Lacking a construction is an outcome, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BestBound {
    Constructed {
        order: usize,
        model: OddExpansionModel,
        /// Theorem id of the construction that produced `model`.
        via: &'static str,
    },
    NoConstruction {
        reason: String,
    },
}

impl BestBound {
    pub fn order(&self) -> Option<usize> {
        match self {
            BestBound::Constructed { order, .. } => Some(*order),
            BestBound::NoConstruction { .. } => None,
        }
    }

    pub fn model(&self) -> Option<&OddExpansionModel> {
        match self {
            BestBound::Constructed { model, .. } => Some(model),
            BestBound::NoConstruction { .. } => None,
        }
    }
}

fn constructed(model: OddExpansionModel, via: &'static str) -> BestBound {
    BestBound::Constructed {
        order: model.clique_order(),
        model,
        via,
    }
}

/// Keeps the first candidate of maximal order.
fn pick(candidates: Vec<BestBound>) -> Option<BestBound> {
    let mut best: Option<BestBound> = None;
    for c in candidates {
        if best.as_ref().and_then(BestBound::order) < c.order() {
            best = Some(c);
        }
    }
    best
}

/// Order 3 from an odd cycle of the host, else order 2 from any edge.
fn degenerate(host: &Graph) -> Option<BestBound> {
    if let Some(m) = odd_cycle(host).and_then(|c| odd_cycle_model(&c)) {
        return Some(constructed(m, "odd-cycle"));
    }
    let &(u, v) = host.edges().first()?;
    let coloring: WitnessColoring = [(u, Color::One), (v, Color::One)].into_iter().collect();
    let connectors: Connectors = [((0, 1), (u, v))].into_iter().collect();
    Some(constructed(
        OddExpansionModel::new(
            vec![BranchTree::singleton(u), BranchTree::singleton(v)],
            coloring,
        )
        .with_connectors(connectors),
        "edge",
    ))
}

/// The largest odd clique model the implemented constructions give on
/// `G * H` from the factor models.
pub fn best_lower_bound(
    g: &Graph,
    mg: &OddExpansionModel,
    h: &Graph,
    mh: &OddExpansionModel,
    kind: ProductKind,
) -> Result<BestBound, ConstructionError> {
    require_valid(g, mg, "first")?;
    require_valid(h, mh, "second")?;
    let (s, t) = (mg.clique_order(), mh.clique_order());
    let mut candidates = Vec::new();
    match kind {
        ProductKind::Cartesian => {
            let base = if s.min(t) >= 2 {
                cartesian_complete_model(s, t)?
            } else {
                BaseModel::trivial(s, t)?
            };
            candidates.push(constructed(
                cartesian_lift(g, mg, h, mh, &base)?,
                "cartesian-lift",
            ));
        }
        ProductKind::Strong | ProductKind::Lexicographic => {
            let sk = if kind == ProductKind::Strong {
                StrongKind::Strong
            } else {
                StrongKind::Lexicographic
            };
            candidates.push(constructed(strong_model(g, mg, h, mh, sk)?, "strong"));
            let (r, q) = (g.order() - 1, h.order() - 1);
            if r >= 1
                && q >= 1
                && star(r).ok().as_ref() == Some(g)
                && star(q).ok().as_ref() == Some(h)
            {
                candidates.push(constructed(star_model(r, q)?, "stars"));
            }
        }
        ProductKind::Direct => {
            let (n, m) = (g.order(), h.order());
            if g.is_complete() && h.is_complete() {
                if m == 3 && n >= 6 {
                    candidates.push(constructed(direct_k3_model(n)?, "direct-k3"));
                }
                if n == 3 && m >= 6 {
                    let swapped = swap_coordinates(&direct_k3_model(m)?, m, 3);
                    candidates.push(constructed(swapped, "direct-k3"));
                }
                if n >= 4 && m >= 3 {
                    candidates.push(constructed(direct_general_model(n, m)?, "direct-general"));
                }
                if m >= 4 && n >= 3 {
                    let swapped = swap_coordinates(&direct_general_model(m, n)?, m, n);
                    candidates.push(constructed(swapped, "direct-general"));
                }
            }
        }
    }
    let host = product(kind, g, h);
    candidates.extend(degenerate(&host));
    Ok(
        pick(candidates).unwrap_or_else(|| BestBound::NoConstruction {
            reason: format!("the {} product has no edges", kind.name()),
        }),
    )
}
