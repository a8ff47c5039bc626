//! Text formats for ideals (`.ideal`) and graphs (`.graph`).
//!
//! ```text
//! # an ideal
//! vars: x1 x2 x3
//! x1 x2
//! x2 x3
//! ```
//!
//! ```text
//! # a graph; the vertices line is needed only for isolated vertices
//! vertices: a b c d
//! a b
//! b c
//! ```

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::ideals::{MonomialIdeal, VariableUniverse};

/// Non-empty lines with comments stripped, numbered from one.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix(key)?.strip_prefix(':').map(str::trim)
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut lines = content_lines(text);
    let (line, first) = lines.next().ok_or_else(|| Error::parse(0, "missing `vars:` line"))?;
    let names = header(first, "vars").ok_or_else(|| Error::parse(line, "first line must be `vars: ...`"))?;
    let universe = VariableUniverse::new(names.split_whitespace()).map_err(|e| at_line(line, e))?;
    let mut seen = BTreeSet::new();
    let mut gens = Vec::new();
    for (line, text) in lines {
        let m = universe.parse_monomial(text).map_err(|e| at_line(line, e))?;
        if !seen.insert(m) {
            return Err(Error::parse(line, format!("duplicate generator `{text}`")));
        }
        gens.push(m);
    }
    MonomialIdeal::new(universe, gens)
}

pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("vars: {}\n", ideal.universe().names().join(" "));
    for g in ideal.generator_strings() {
        out.push_str(&g);
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut names: Vec<String> = Vec::new();
    let mut declared = false;
    let mut raw_edges: Vec<(usize, String, String)> = Vec::new();
    for (i, (line, text)) in content_lines(text).enumerate() {
        if let Some(list) = header(text, "vertices") {
            if i != 0 {
                return Err(Error::parse(line, "`vertices:` must be the first line"));
            }
            names = list.split_whitespace().map(str::to_string).collect();
            declared = true;
            continue;
        }
        let parts: Vec<&str> = text.split_whitespace().collect();
        let [u, v] = parts[..] else {
            return Err(Error::parse(line, "an edge line has exactly two vertices"));
        };
        for w in [u, v] {
            if !names.iter().any(|n| n == w) {
                if declared {
                    return Err(Error::parse(line, format!("unknown vertex `{w}`")));
                }
                names.push(w.to_string());
            }
        }
        raw_edges.push((line, u.to_string(), v.to_string()));
    }
    let universe = VariableUniverse::new(names.iter()).map_err(|e| at_line(1, e))?;
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for (line, u, v) in raw_edges {
        let (a, b) = (universe.index_of(&u)?, universe.index_of(&v)?);
        if a == b {
            return Err(Error::parse(line, format!("loop at `{u}`")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::parse(line, format!("duplicate edge `{u} {v}`")));
        }
        edges.push((a, b));
    }
    Graph::new(universe, &edges)
}

pub fn format_graph(g: &Graph) -> String {
    let u = g.universe();
    let mut out = format!("vertices: {}\n", u.names().join(" "));
    for &(a, b) in g.edges() {
        out.push_str(&format!("{} {}\n", u.name(a), u.name(b)));
    }
    out
}

/// A parsed input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Ideal(MonomialIdeal),
    Graph(Graph),
}

/// Parse by extension, falling back to the first content line.
pub fn parse_input(path: &Path, text: &str) -> Result<Input> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("ideal") => parse_ideal(text).map(Input::Ideal),
        Some("graph") => parse_graph(text).map(Input::Graph),
        _ => {
            let is_ideal = content_lines(text).next().is_some_and(|(_, l)| header(l, "vars").is_some());
            if is_ideal {
                parse_ideal(text).map(Input::Ideal)
            } else {
                parse_graph(text).map(Input::Graph)
            }
        }
    }
}
