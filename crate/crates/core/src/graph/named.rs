use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    Star,
    Cycle,
    Path,
    Hamming,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Hamming => "hamming",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete" | "K" => Ok(Family::Complete),
            "star" | "S" => Ok(Family::Star),
            "cycle" | "C" => Ok(Family::Cycle),
            "path" | "P" => Ok(Family::Path),
            "hamming" | "H" => Ok(Family::Hamming),
            other => Err(format!("unknown graph family `{other}`")),
        }
    }
}

fn param_error(family: Family, reason: impl Into<String>) -> GraphError {
    GraphError::Parameter {
        family: family.name().to_string(),
        reason: reason.into(),
    }
}

/// Builds a member of a named family.
///
/// Numbering: `star(k)` has its center at 0 and leaves `1..=k`; `cycle(n)` and
/// `path(n)` follow `0-1-…-(n-1)`; `hamming(n, d)` numbers a d-tuple
/// `(x_1, …, x_d)` in mixed radix `n` with `x_d` least significant, which is
/// exactly the flattening of the iterated product `((K_n □ K_n) □ …) □ K_n`.
pub fn make_named_graph(family: Family, params: &[usize]) -> Result<Graph, GraphError> {
    let expect = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(param_error(
                family,
                format!("expected {k} parameter(s), got {}", params.len()),
            ))
        }
    };
    match family {
        Family::Complete => {
            expect(1)?;
            let n = params[0];
            if n < 1 {
                return Err(param_error(family, "n must be at least 1"));
            }
            Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Family::Star => {
            expect(1)?;
            let k = params[0];
            Graph::new(k + 1, (1..=k).map(|v| (0, v)))
        }
        Family::Cycle => {
            expect(1)?;
            let n = params[0];
            if n < 3 {
                return Err(param_error(family, "n must be at least 3"));
            }
            Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
        }
        Family::Path => {
            expect(1)?;
            let n = params[0];
            if n < 1 {
                return Err(param_error(family, "n must be at least 1"));
            }
            Graph::new(n, (1..n).map(|v| (v - 1, v)))
        }
        Family::Hamming => {
            expect(2)?;
            let (n, d) = (params[0], params[1]);
            if n < 1 || d < 1 {
                return Err(param_error(family, "n and d must be at least 1"));
            }
            let total = n
                .checked_pow(d as u32)
                .filter(|&t| t <= 1 << 20)
                .ok_or_else(|| param_error(family, "n^d is too large"))?;
            let mut edges = Vec::new();
            for x in 0..total {
                let mut place = 1;
                for _ in 0..d {
                    let digit = (x / place) % n;
                    for other in digit + 1..n {
                        edges.push((x, x + (other - digit) * place));
                    }
                    place *= n;
                }
            }
            Graph::new(total, edges)
        }
    }
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    make_named_graph(Family::Complete, &[n])
}

pub fn star(k: usize) -> Result<Graph, GraphError> {
    make_named_graph(Family::Star, &[k])
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    make_named_graph(Family::Cycle, &[n])
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    make_named_graph(Family::Path, &[n])
}

pub fn hamming(n: usize, d: usize) -> Result<Graph, GraphError> {
    make_named_graph(Family::Hamming, &[n, d])
}
