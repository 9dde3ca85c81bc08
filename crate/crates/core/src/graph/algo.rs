use std::collections::VecDeque;

use super::{Edge, Graph, GraphError};

/// Two sides of a bipartition; the side holding each component's lowest
/// vertex is `first`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// BFS 2-coloring. Each component is rooted at its lowest id.
pub fn is_bipartite(g: &Graph) -> Option<Bipartition> {
    let n = g.order();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            let s = side[v].unwrap();
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!s);
                        queue.push_back(w);
                    }
                    Some(t) if t == s => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for (v, s) in side.into_iter().enumerate() {
        if s == Some(false) {
            first.push(v);
        } else {
            second.push(v);
        }
    }
    Some(Bipartition { first, second })
}

/// Some odd cycle as a vertex sequence, found from a BFS layering.
pub fn odd_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    let mut depth = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if depth[w] % 2 == depth[v] % 2 {
                    // Walk both endpoints up to their lowest common ancestor.
                    let (mut a, mut b) = (v, w);
                    let (mut left, mut right) = (vec![a], vec![b]);
                    while a != b {
                        if depth[a] >= depth[b] {
                            a = parent[a];
                            left.push(a);
                        } else {
                            b = parent[b];
                            right.push(b);
                        }
                    }
                    // Both lists end at the common ancestor.
                    right.pop();
                    left.reverse();
                    left.extend(right);
                    return Some(left);
                }
            }
        }
    }
    None
}

/// Connected components, each sorted, ordered by lowest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// BFS spanning tree of the subgraph induced by `vertices`, rooted at the
/// lowest id with neighbors taken in ascending order. Edges come back sorted.
pub fn spanning_tree(g: &Graph, vertices: &[usize]) -> Result<Vec<Edge>, GraphError> {
    let n = g.order();
    let mut inside = vec![false; n];
    for &v in vertices {
        if v >= n || inside[v] {
            return Err(GraphError::BadVertex(v));
        }
        inside[v] = true;
    }
    let root = *vertices.iter().min().ok_or(GraphError::EmptyVertexSet)?;
    let mut reached = vec![false; n];
    reached[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if inside[w] && !reached[w] {
                reached[w] = true;
                edges.push((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }
    if let Some(&lost) = vertices.iter().filter(|&&v| !reached[v]).min() {
        return Err(GraphError::Disconnected(lost));
    }
    edges.sort_unstable();
    Ok(edges)
}
