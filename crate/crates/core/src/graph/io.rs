use super::{Graph, GraphError};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

fn two_numbers(line_no: usize, line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line_no, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| parse_err(line_no, format!("`{tok}` is not a non-negative integer")))
    };
    let a = next("first number")?;
    let b = next("second number")?;
    if let Some(extra) = it.next() {
        return Err(parse_err(line_no, format!("unexpected token `{extra}`")));
    }
    Ok((a, b))
}

/// Reads the `n m` / `u v` edge-list format. Blank lines and lines starting
/// with `#` are skipped; edges may appear in any order.
pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (n, m) = two_numbers(hl, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hl;
    for (no, line) in lines {
        last_line = no;
        let (u, v) = two_numbers(no, line)?;
        if u >= n || v >= n {
            return Err(parse_err(no, format!("endpoint out of range 0..{n}")));
        }
        if u == v {
            return Err(parse_err(no, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    Graph::new(n, edges).map_err(|e| parse_err(last_line, e.to_string()))
}

/// Decodes one graph6 string (optionally prefixed by `>>graph6<<`).
pub fn parse_graph6(s: &str) -> Result<Graph, GraphError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |msg: &str| parse_err(1, format!("graph6: {msg}"));
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside the printable range 63..=126"));
    }
    let sextet = |i: usize| -> Result<usize, GraphError> {
        bytes
            .get(i)
            .map(|&b| (b - 63) as usize)
            .ok_or_else(|| bad("truncated size field"))
    };
    let (n, mut pos) = match bytes.first() {
        None => return Err(bad("empty string")),
        Some(&126) if bytes.get(1) == Some(&126) => {
            let mut n = 0;
            for i in 2..8 {
                n = (n << 6) | sextet(i)?;
            }
            (n, 8)
        }
        Some(&126) => {
            let mut n = 0;
            for i in 1..4 {
                n = (n << 6) | sextet(i)?;
            }
            (n, 4)
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(bad(&format!(
            "expected {need} data bytes for {n} vertices, found {}",
            bytes.len() - pos
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    let mut current = 0usize;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                current = (bytes[pos] - 63) as usize;
                pos += 1;
            }
            if current & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::new(n, edges)
}

/// Encodes a graph as graph6.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bit += 1;
            if bit == 6 {
                out.push(acc + 63);
                acc = 0;
                bit = 0;
            }
        }
    }
    if bit > 0 {
        out.push((acc << (6 - bit)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
