use std::fmt;
use std::str::FromStr;

use super::{Edge, Graph};

/// A vertex of a two-factor product. Flattens to `a * |V(H)| + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductVertex {
    pub a: usize,
    pub b: usize,
}

impl ProductVertex {
    pub fn new(a: usize, b: usize) -> Self {
        ProductVertex { a, b }
    }

    pub fn flat(self, second_order: usize) -> usize {
        self.a * second_order + self.b
    }

    pub fn unflat(id: usize, second_order: usize) -> Self {
        ProductVertex {
            a: id / second_order,
            b: id % second_order,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Cartesian,
    Direct,
    Lexicographic,
    Strong,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [
        ProductKind::Cartesian,
        ProductKind::Direct,
        ProductKind::Lexicographic,
        ProductKind::Strong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Direct => "direct",
            ProductKind::Lexicographic => "lexicographic",
            ProductKind::Strong => "strong",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cartesian" => Ok(ProductKind::Cartesian),
            "direct" | "tensor" => Ok(ProductKind::Direct),
            "lexicographic" | "lex" => Ok(ProductKind::Lexicographic),
            "strong" => Ok(ProductKind::Strong),
            other => Err(format!("unknown product kind `{other}`")),
        }
    }
}

fn cartesian_edges(g: &Graph, h: &Graph, out: &mut Vec<Edge>) {
    let nh = h.order();
    for a in 0..g.order() {
        for &(b, b2) in h.edges() {
            out.push((a * nh + b, a * nh + b2));
        }
    }
    for &(a, a2) in g.edges() {
        for b in 0..nh {
            out.push((a * nh + b, a2 * nh + b));
        }
    }
}

fn direct_edges(g: &Graph, h: &Graph, out: &mut Vec<Edge>) {
    let nh = h.order();
    for &(a, a2) in g.edges() {
        for &(b, b2) in h.edges() {
            out.push((a * nh + b, a2 * nh + b2));
            out.push((a * nh + b2, a2 * nh + b));
        }
    }
}

/// The product `g * h` on `|V(g)|·|V(h)|` vertices under [`ProductVertex::flat`].
pub fn product(kind: ProductKind, g: &Graph, h: &Graph) -> Graph {
    let nh = h.order();
    let mut edges = Vec::new();
    match kind {
        ProductKind::Cartesian => cartesian_edges(g, h, &mut edges),
        ProductKind::Direct => direct_edges(g, h, &mut edges),
        ProductKind::Strong => {
            cartesian_edges(g, h, &mut edges);
            direct_edges(g, h, &mut edges);
        }
        ProductKind::Lexicographic => {
            for a in 0..g.order() {
                for &(b, b2) in h.edges() {
                    edges.push((a * nh + b, a * nh + b2));
                }
            }
            for &(a, a2) in g.edges() {
                for b in 0..nh {
                    for b2 in 0..nh {
                        edges.push((a * nh + b, a2 * nh + b2));
                    }
                }
            }
        }
    }
    // Cartesian and direct edge sets are disjoint, so no duplicates arise.
    Graph::new(g.order() * nh, edges).expect("product edges are simple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, star};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn small_products() {
        let k2 = complete(2).unwrap();
        let c4 = product(ProductKind::Cartesian, &k2, &k2);
        assert_eq!(c4.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let m = product(ProductKind::Direct, &k2, &k2);
        assert_eq!(m.edges(), &[(0, 3), (1, 2)]);
    }

    #[test]
    fn strong_and_lex_of_cliques_are_cliques() {
        let k3 = complete(3).unwrap();
        for kind in [ProductKind::Strong, ProductKind::Lexicographic] {
            let p = product(kind, &k3, &k3);
            assert_eq!(p.order(), 9);
            assert_eq!(p.size(), 36);
            assert!(p.is_complete());
        }
    }

    #[test]
    fn flattening_round_trips() {
        for id in 0..35 {
            let pv = ProductVertex::unflat(id, 7);
            assert_eq!(pv.flat(7), id);
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs: Vec<Edge> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
                let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    fn edge_set(g: &Graph) -> BTreeSet<Edge> {
        g.edges().iter().copied().collect()
    }

    fn swapped(g: &Graph, ng: usize, nh: usize) -> BTreeSet<Edge> {
        g.edges()
            .iter()
            .map(|&(x, y)| {
                let (px, py) = (ProductVertex::unflat(x, nh), ProductVertex::unflat(y, nh));
                let (u, v) = (px.b * ng + px.a, py.b * ng + py.a);
                (u.min(v), u.max(v))
            })
            .collect()
    }

    /// Direct check of each product definition over all vertex pairs.
    fn by_definition(kind: ProductKind, g: &Graph, h: &Graph) -> BTreeSet<Edge> {
        let nh = h.order();
        let n = g.order() * nh;
        let mut out = BTreeSet::new();
        for x in 0..n {
            for y in x + 1..n {
                let (p, q) = (ProductVertex::unflat(x, nh), ProductVertex::unflat(y, nh));
                let ga = g.has_edge(p.a, q.a);
                let hb = h.has_edge(p.b, q.b);
                let cart = (p.a == q.a && hb) || (p.b == q.b && ga);
                let adj = match kind {
                    ProductKind::Cartesian => cart,
                    ProductKind::Direct => ga && hb,
                    ProductKind::Strong => cart || (ga && hb),
                    ProductKind::Lexicographic => ga || (p.a == q.a && hb),
                };
                if adj {
                    out.insert((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn named_family_products_match_definition() {
        let gs = [
            complete(3).unwrap(),
            star(3).unwrap(),
            cycle(5).unwrap(),
            path(4).unwrap(),
        ];
        for g in &gs {
            for h in &gs {
                for kind in ProductKind::ALL {
                    assert_eq!(edge_set(&product(kind, g, h)), by_definition(kind, g, h));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn strong_is_union_and_inside_lex(g in arb_graph(5), h in arb_graph(5)) {
            let cart = edge_set(&product(ProductKind::Cartesian, &g, &h));
            let dir = edge_set(&product(ProductKind::Direct, &g, &h));
            let strong = edge_set(&product(ProductKind::Strong, &g, &h));
            let lex = edge_set(&product(ProductKind::Lexicographic, &g, &h));
            let union: BTreeSet<Edge> = cart.union(&dir).copied().collect();
            prop_assert_eq!(&strong, &union);
            prop_assert!(strong.is_subset(&lex));
        }

        #[test]
        fn commutative_up_to_swap(g in arb_graph(4), h in arb_graph(4)) {
            for kind in [ProductKind::Cartesian, ProductKind::Direct, ProductKind::Strong] {
                let gh = product(kind, &g, &h);
                let hg = product(kind, &h, &g);
                prop_assert_eq!(swapped(&gh, g.order(), h.order()), edge_set(&hg));
            }
        }

        #[test]
        fn products_match_definition(g in arb_graph(4), h in arb_graph(4)) {
            for kind in ProductKind::ALL {
                prop_assert_eq!(edge_set(&product(kind, &g, &h)), by_definition(kind, &g, &h));
            }
        }
    }
}
