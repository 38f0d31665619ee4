//! Text formats: dense matrices, coordinate (Matrix Market style) matrices,
//! and signed-graph edge lists.
//!
//! Vertex and coordinate indices are 1-based in files, matching the sparse
//! matrix convention; the API and JSON output are 0-based throughout.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::matrix::ExactMatrix;
use crate::scalar::{format_exact, parse_exact, rat};

/// Dense format: first line `rows cols`, then rows*cols whitespace-separated
/// exact entries in row-major order (`p/q` for rationals). Lines starting
/// with `#` or `%` are comments.
pub fn parse_dense_matrix(text: &str) -> Result<ExactMatrix> {
    let mut tokens = content_tokens(text);
    let rows = next_dim(&mut tokens, "rows")?;
    let cols = next_dim(&mut tokens, "cols")?;
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        let tok = tokens
            .next()
            .ok_or_else(|| Error::input("matrix payload shorter than rows*cols"))?;
        data.push(parse_exact(tok)?);
    }
    if tokens.next().is_some() {
        return Err(Error::input("trailing tokens after matrix payload"));
    }
    ExactMatrix::new(rows, cols, data)
}

/// Canonical dense text; round-trips exactly through [`parse_dense_matrix`].
pub fn format_dense_matrix(m: &ExactMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_exact(m.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Coordinate format with a `%%MatrixMarket matrix coordinate <field>
/// <symmetry>` header: field is integer/real/pattern, symmetry is
/// general/symmetric. Entries are 1-based `i j value` triplets (`i j` for
/// pattern) and must be distinct; symmetric files store the lower triangle.
pub fn parse_coordinate_matrix(text: &str) -> Result<ExactMatrix> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::input("empty coordinate file"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() < 5 || !head[0].eq_ignore_ascii_case("%%MatrixMarket") {
        return Err(Error::input("missing %%MatrixMarket header"));
    }
    if !head[1].eq_ignore_ascii_case("matrix") || !head[2].eq_ignore_ascii_case("coordinate") {
        return Err(Error::input(
            "only `matrix coordinate` Matrix Market files are supported",
        ));
    }
    let pattern = match head[3].to_ascii_lowercase().as_str() {
        "integer" | "real" => false,
        "pattern" => true,
        other => {
            return Err(Error::Input(format!(
                "unsupported field type `{other}` (integer, real, or pattern)"
            )))
        }
    };
    let symmetric = match head[4].to_ascii_lowercase().as_str() {
        "general" => false,
        "symmetric" => true,
        other => {
            return Err(Error::Input(format!(
                "unsupported symmetry `{other}` (general or symmetric)"
            )))
        }
    };

    let mut body = lines.filter(|l| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let dims = body
        .next()
        .ok_or_else(|| Error::input("missing dimensions line"))?;
    let d: Vec<&str> = dims.split_whitespace().collect();
    if d.len() != 3 {
        return Err(Error::input("dimensions line must be `rows cols nnz`"));
    }
    let rows: usize = parse_dim(d[0], "rows")?;
    let cols: usize = parse_dim(d[1], "cols")?;
    let nnz: usize = parse_dim(d[2], "nnz")?;

    let mut m = ExactMatrix::zeros(rows, cols);
    let mut seen = HashSet::new();
    let mut count = 0usize;
    for line in body {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let expected = if pattern { 2 } else { 3 };
        if parts.len() != expected {
            return Err(Error::Input(format!(
                "coordinate line `{line}` needs {expected} fields"
            )));
        }
        let i = parse_dim(parts[0], "row index")?;
        let j = parse_dim(parts[1], "column index")?;
        if i == 0 || j == 0 || i > rows || j > cols {
            return Err(Error::Input(format!(
                "coordinate ({i},{j}) out of range for {rows}x{cols}"
            )));
        }
        let value = if pattern {
            rat(1)
        } else {
            parse_exact(parts[2])?
        };
        if !seen.insert((i, j)) {
            return Err(Error::Input(format!("duplicate coordinate ({i},{j})")));
        }
        m.set(i - 1, j - 1, value.clone());
        if symmetric && i != j {
            m.set(j - 1, i - 1, value);
        }
        count += 1;
    }
    if count != nnz {
        return Err(Error::Input(format!(
            "header declares {nnz} entries, file has {count}"
        )));
    }
    Ok(m)
}

/// Graph format: first line `n m`, then m lines `u v s` with 1-based
/// u < v and s one of `+`, `-`, `+1`, `-1`.
pub fn parse_graph(text: &str) -> Result<SignedGraph> {
    let mut lines = text.lines().filter(|l| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#') && !t.starts_with('%')
    });
    let head = lines.next().ok_or_else(|| Error::input("empty graph file"))?;
    let h: Vec<&str> = head.split_whitespace().collect();
    if h.len() != 2 {
        return Err(Error::input("graph header must be `n m`"));
    }
    let n = parse_dim(h[0], "vertex count")?;
    let m = parse_dim(h[1], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::input("fewer edge lines than declared"))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Input(format!("edge line `{line}` needs `u v s`")));
        }
        let u = parse_dim(parts[0], "vertex")?;
        let v = parse_dim(parts[1], "vertex")?;
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::Input(format!("edge ({u},{v}) out of range, n={n}")));
        }
        if u >= v {
            return Err(Error::Input(format!(
                "edge ({u},{v}) must satisfy u < v (1-based)"
            )));
        }
        let sign = match parts[2] {
            "+" | "+1" => Sign::Positive,
            "-" | "-1" => Sign::Negative,
            other => {
                return Err(Error::Input(format!(
                    "bad sign `{other}` (use +, -, +1, -1)"
                )))
            }
        };
        edges.push((u - 1, v - 1, sign));
    }
    if lines.next().is_some() {
        return Err(Error::input("trailing lines after declared edges"));
    }
    SignedGraph::new(n, edges)
}

/// Canonical graph text; round-trips exactly through [`parse_graph`].
pub fn format_graph(g: &SignedGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v, s) in g.edges() {
        out.push_str(&format!("{} {} {}\n", u + 1, v + 1, s));
    }
    out
}

/// Either matrix text form, by sniffing: a `%%MatrixMarket` header selects
/// the coordinate parser, anything else the dense parser.
pub fn parse_matrix_text(text: &str) -> Result<ExactMatrix> {
    if text.trim_start().starts_with("%%") {
        parse_coordinate_matrix(text)
    } else {
        parse_dense_matrix(text)
    }
}

/// A file that may hold a graph or a matrix, for commands that accept both.
/// The graph parser is tried first (its `u v s` lines cannot parse as
/// scalars), then the matrix forms.
pub fn parse_graph_or_matrix(text: &str) -> Result<SignedGraph> {
    if text.trim_start().starts_with("%%") {
        return SignedGraph::from_matrix(&parse_coordinate_matrix(text)?);
    }
    match parse_graph(text) {
        Ok(g) => Ok(g),
        Err(graph_err) => match parse_dense_matrix(text) {
            Ok(m) => SignedGraph::from_matrix(&m),
            Err(_) => Err(graph_err),
        },
    }
}

/// Matrix from any supported input, converting a graph file to its signed
/// adjacency when needed.
pub fn parse_matrix_or_graph(text: &str) -> Result<ExactMatrix> {
    if text.trim_start().starts_with("%%") {
        return parse_coordinate_matrix(text);
    }
    match parse_dense_matrix(text) {
        Ok(m) => Ok(m),
        Err(dense_err) => match parse_graph(text) {
            Ok(g) => Ok(g.to_matrix()),
            Err(_) => Err(dense_err),
        },
    }
}

fn content_tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .filter(|l| {
            let t = l.trim_start();
            !t.starts_with('#') && !t.starts_with('%')
        })
        .flat_map(|l| l.split_whitespace())
}

fn next_dim<'a>(tokens: &mut impl Iterator<Item = &'a str>, what: &str) -> Result<usize> {
    let tok = tokens
        .next()
        .ok_or_else(|| Error::Input(format!("missing {what}")))?;
    parse_dim(tok, what)
}

fn parse_dim(tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Input(format!("bad {what} `{tok}`")))
}

/// Coordinate text for a matrix (general integer/real form, 1-based).
pub fn format_coordinate_matrix(m: &ExactMatrix) -> String {
    let field = if m.is_integer() { "integer" } else { "real" };
    let mut entries = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.get(i, j).is_zero() {
                entries.push(format!("{} {} {}", i + 1, j + 1, format_exact(m.get(i, j))));
            }
        }
    }
    let mut out = format!(
        "%%MatrixMarket matrix coordinate {field} general\n{} {} {}\n",
        m.rows(),
        m.cols(),
        entries.len()
    );
    for e in entries {
        out.push_str(&e);
        out.push('\n');
    }
    out
}
