//! Plain-text problem files.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! graph <n> <m>
//! e <u> <v> [<w>]      (exactly m lines, 0-based vertices, weight 1 if omitted)
//! ```
//!
//! TSP files:
//!
//! ```text
//! tsp <n>
//! <n rows of n whitespace-separated distances>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::path::Path;

use qaoa_core::{Graph, TspInstance};

#[derive(Debug, Clone, PartialEq)]
pub enum FormatError {
    Io(String),
    Syntax { line: usize, message: String },
    Validation(String),
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Io(m) => write!(f, "{m}"),
            FormatError::Syntax { line, message } => write!(f, "line {line}: {message}"),
            FormatError::Validation(m) => write!(f, "invalid instance: {m}"),
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemFile {
    Graph(Graph),
    Tsp(TspInstance),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found `{token}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = data_lines(text);
    let (line, header) = lines.next().ok_or_else(|| syntax(0, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        ["graph", n, m] => (
            number::<usize>(n, line, "vertex count")?,
            number::<usize>(m, line, "edge count")?,
        ),
        _ => return Err(syntax(line, "expected `graph <n> <m>`")),
    };
    let mut edges = Vec::with_capacity(m);
    let mut last_line = line;
    for (line, text) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(syntax(line, format!("more than the declared {m} edges")));
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let (u, v, w) = match fields.as_slice() {
            ["e", u, v] => (u, v, None),
            ["e", u, v, w] => (u, v, Some(w)),
            _ => return Err(syntax(line, "expected `e <u> <v> [<w>]`")),
        };
        let u = number::<usize>(u, line, "vertex index")?;
        let v = number::<usize>(v, line, "vertex index")?;
        let w = match w {
            Some(w) => number::<f64>(w, line, "edge weight")?,
            None => 1.0,
        };
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(syntax(
            last_line,
            format!("declared {m} edges but found {}", edges.len()),
        ));
    }
    Graph::new(n, edges).map_err(|e| FormatError::Validation(e.to_string()))
}

pub fn parse_tsp(text: &str) -> Result<TspInstance, FormatError> {
    let mut lines = data_lines(text);
    let (line, header) = lines.next().ok_or_else(|| syntax(0, "empty file"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["tsp", n] => number::<usize>(n, line, "city count")?,
        _ => return Err(syntax(line, "expected `tsp <n>`")),
    };
    let mut costs = Vec::with_capacity(n * n);
    let mut rows = 0;
    let mut last_line = line;
    for (line, text) in lines {
        last_line = line;
        if rows == n {
            return Err(syntax(line, format!("more than {n} matrix rows")));
        }
        let row: Vec<&str> = text.split_whitespace().collect();
        if row.len() != n {
            return Err(syntax(line, format!("expected {n} entries, found {}", row.len())));
        }
        for token in row {
            costs.push(number::<f64>(token, line, "distance")?);
        }
        rows += 1;
    }
    if rows != n {
        return Err(syntax(last_line, format!("expected {n} matrix rows, found {rows}")));
    }
    TspInstance::new(n, costs).map_err(|e| FormatError::Validation(e.to_string()))
}

/// Parses either format, chosen by the header keyword.
pub fn parse_problem(text: &str) -> Result<ProblemFile, FormatError> {
    match data_lines(text).next() {
        Some((_, l)) if l.starts_with("graph") => parse_graph(text).map(ProblemFile::Graph),
        Some((_, l)) if l.starts_with("tsp") => parse_tsp(text).map(ProblemFile::Tsp),
        Some((line, _)) => Err(syntax(line, "expected a `graph` or `tsp` header")),
        None => Err(syntax(0, "empty file")),
    }
}

pub fn read_problem_file(path: &Path) -> Result<ProblemFile, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FormatError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text)
}

/// Canonical text form accepted by [`parse_graph`]; weights are always written.
pub fn graph_to_text(graph: &Graph) -> String {
    let mut out = format!("graph {} {}\n", graph.num_vertices(), graph.edges().len());
    for e in graph.edges() {
        writeln!(out, "e {} {} {:?}", e.u, e.v, e.w).expect("writing to a String");
    }
    out
}

/// Canonical text form accepted by [`parse_tsp`].
pub fn tsp_to_text(instance: &TspInstance) -> String {
    let n = instance.num_cities();
    let mut out = format!("tsp {n}\n");
    for row in instance.entries().chunks(n) {
        let cells: Vec<String> = row.iter().map(|d| format!("{d:?}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
