use std::fmt;

use super::OddExpansionModel;
use crate::graph::{Edge, Graph};

/// The certificate clause a failing model violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    Disjointness,
    TreeShape,
    EdgeMembership,
    ColoringMissing,
    Properness,
    ConnectorMissing,
    ConnectorInvalid,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::Disjointness => "disjointness",
            Clause::TreeShape => "tree_shape",
            Clause::EdgeMembership => "edge_membership",
            Clause::ColoringMissing => "coloring_missing",
            Clause::Properness => "properness",
            Clause::ConnectorMissing => "connector_missing",
            Clause::ConnectorInvalid => "connector_invalid",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// First violated clause with the trees, vertices and edges that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub clause: Clause,
    pub trees: Vec<usize>,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    pub detail: String,
}

impl Failure {
    fn new(clause: Clause, trees: Vec<usize>, detail: impl Into<String>) -> Self {
        Failure {
            clause,
            trees,
            vertices: Vec::new(),
            edges: Vec::new(),
            detail: detail.into(),
        }
    }

    fn vertex(mut self, v: usize) -> Self {
        self.vertices.push(v);
        self
    }

    fn edge(mut self, e: Edge) -> Self {
        self.edges.push(e);
        self
    }
}

impl fmt::Display for Failure {
    /// One machine-readable line, `FAIL <clause> ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FAIL {}", self.clause)?;
        match self.trees.as_slice() {
            [] => {}
            [t] => write!(f, " tree={t}")?,
            [a, b] => write!(f, " pair=({a},{b})")?,
            more => write!(f, " trees={more:?}")?,
        }
        if !self.vertices.is_empty() {
            let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
            write!(f, " vertices=[{}]", vs.join(","))?;
        }
        if !self.edges.is_empty() {
            let es: Vec<String> = self
                .edges
                .iter()
                .map(|(u, v)| format!("({u},{v})"))
                .collect();
            write!(f, " edges=[{}]", es.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass { order: usize },
    Fail(Failure),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            Verdict::Fail(f) => Some(f),
            Verdict::Pass { .. } => None,
        }
    }

    pub fn clause(&self) -> Option<Clause> {
        self.failure().map(|f| f.clause)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { order } => write!(f, "PASS order={order}"),
            Verdict::Fail(fail) => fail.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Fail with `connector_missing` when the model stores no connectors.
    pub require_connectors: bool,
}

/// Checks `model` against `host` with default options.
pub fn verify_odd_expansion(host: &Graph, model: &OddExpansionModel) -> Verdict {
    verify_with(host, model, VerifyOptions::default())
}

/// Checks run in a fixed order and the first failure is reported:
/// disjointness, tree shape, edge membership, coloring totality,
/// properness, connectors.
pub fn verify_with(host: &Graph, model: &OddExpansionModel, opts: VerifyOptions) -> Verdict {
    match check(host, model, opts) {
        Ok(()) => Verdict::Pass {
            order: model.clique_order(),
        },
        Err(f) => Verdict::Fail(f),
    }
}

fn check(host: &Graph, model: &OddExpansionModel, opts: VerifyOptions) -> Result<(), Failure> {
    let n = host.order();
    let trees = &model.trees;
    if trees.is_empty() {
        return Err(Failure::new(
            Clause::TreeShape,
            vec![],
            "model has no branch trees",
        ));
    }

    // Disjointness. Vertices outside the host are left for the shape check.
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, t) in trees.iter().enumerate() {
        for &v in t.vertices() {
            if v >= n {
                continue;
            }
            match owner[v] {
                Some(j) if j != i => {
                    return Err(Failure::new(
                        Clause::Disjointness,
                        vec![j, i],
                        format!("vertex {v} lies in trees {j} and {i}"),
                    )
                    .vertex(v));
                }
                _ => owner[v] = Some(i),
            }
        }
    }

    // Tree shape.
    for (i, t) in trees.iter().enumerate() {
        let vs = t.vertices();
        if vs.is_empty() {
            return Err(Failure::new(
                Clause::TreeShape,
                vec![i],
                "tree has no vertices",
            ));
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= n) {
            return Err(Failure::new(
                Clause::TreeShape,
                vec![i],
                format!("vertex {v} is not a host vertex"),
            )
            .vertex(v));
        }
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Failure::new(
                Clause::TreeShape,
                vec![i],
                format!("vertex {} listed twice", w[0]),
            )
            .vertex(w[0]));
        }
        if let Some(&e) = t
            .edges()
            .iter()
            .find(|&&(u, v)| u == v || !t.contains(u) || !t.contains(v))
        {
            return Err(Failure::new(
                Clause::TreeShape,
                vec![i],
                "tree edge leaves the tree's vertex set",
            )
            .edge(e));
        }
        if t.edges().len() + 1 != vs.len() {
            return Err(Failure::new(
                Clause::TreeShape,
                vec![i],
                format!("{} vertices but {} edges", vs.len(), t.edges().len()),
            ));
        }
        // |E| = |V| - 1 plus connectivity makes it a tree.
        let mut dsu = Dsu::new(vs.len());
        let idx = |v: usize| vs.binary_search(&v).unwrap();
        for &(u, v) in t.edges() {
            if !dsu.union(idx(u), idx(v)) {
                return Err(
                    Failure::new(Clause::TreeShape, vec![i], "tree edges contain a cycle")
                        .edge((u, v)),
                );
            }
        }
    }

    // Edge membership.
    for (i, t) in trees.iter().enumerate() {
        if let Some(&e) = t.edges().iter().find(|&&(u, v)| !host.has_edge(u, v)) {
            return Err(Failure::new(
                Clause::EdgeMembership,
                vec![i],
                "tree edge is not a host edge",
            )
            .edge(e));
        }
    }

    // Coloring totality on used vertices, and no colors off the host.
    for (i, t) in trees.iter().enumerate() {
        if let Some(&v) = t
            .vertices()
            .iter()
            .find(|&&v| model.coloring.get(v).is_none())
        {
            return Err(Failure::new(
                Clause::ColoringMissing,
                vec![i],
                format!("vertex {v} has no color"),
            )
            .vertex(v));
        }
    }
    if let Some((v, _)) = model.coloring.iter().find(|&(v, _)| v >= n) {
        return Err(Failure::new(
            Clause::ColoringMissing,
            vec![],
            format!("colored vertex {v} is not a host vertex"),
        )
        .vertex(v));
    }

    let color = |v: usize| model.coloring.get(v).expect("checked above");

    // Properness: tree edges must be bichromatic.
    for (i, t) in trees.iter().enumerate() {
        if let Some(&e) = t.edges().iter().find(|&&(u, v)| color(u) == color(v)) {
            return Err(Failure::new(
                Clause::Properness,
                vec![i],
                format!("tree edge is monochromatic (color {})", color(e.0)),
            )
            .edge(e));
        }
    }

    let r = trees.len();
    match &model.connectors {
        Some(conn) => {
            for i in 0..r {
                for j in i + 1..r {
                    let Some(&(u, v)) = conn.get(&(i, j)) else {
                        return Err(Failure::new(
                            Clause::ConnectorMissing,
                            vec![i, j],
                            "no connector stored for this pair",
                        ));
                    };
                    let reason = if owner.get(u).copied().flatten() != Some(i) {
                        Some(format!("endpoint {u} is not in tree {i}"))
                    } else if owner.get(v).copied().flatten() != Some(j) {
                        Some(format!("endpoint {v} is not in tree {j}"))
                    } else if !host.has_edge(u, v) {
                        Some("connector is not a host edge".to_string())
                    } else if color(u) != color(v) {
                        Some("connector is not monochromatic".to_string())
                    } else {
                        None
                    };
                    if let Some(reason) = reason {
                        return Err(
                            Failure::new(Clause::ConnectorInvalid, vec![i, j], reason).edge((u, v))
                        );
                    }
                }
            }
            if let Some((&(i, j), &e)) = conn.iter().find(|(&(i, j), _)| i >= j || j >= r) {
                return Err(Failure::new(
                    Clause::ConnectorInvalid,
                    vec![i, j],
                    "connector keyed by a pair that is not i < j < r",
                )
                .edge(e));
            }
        }
        None if opts.require_connectors && r > 1 => {
            return Err(Failure::new(
                Clause::ConnectorMissing,
                vec![0, 1],
                "certificate stores no connectors",
            ));
        }
        None => {
            let mut joined = vec![false; r * r];
            for (i, t) in trees.iter().enumerate() {
                for &u in t.vertices() {
                    let cu = color(u);
                    for &w in host.neighbors(u) {
                        if let Some(j) = owner[w] {
                            if j > i && color(w) == cu {
                                joined[i * r + j] = true;
                            }
                        }
                    }
                }
            }
            for i in 0..r {
                for j in i + 1..r {
                    if !joined[i * r + j] {
                        return Err(Failure::new(
                            Clause::ConnectorMissing,
                            vec![i, j],
                            "no monochromatic host edge joins these trees",
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let next = self.0[y];
            self.0[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}
