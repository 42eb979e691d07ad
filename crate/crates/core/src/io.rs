//! Text formats for graphs and vertex labels.
//!
//! Edge list (0-based, canonical output):
//!
//! ```text
//! p 3 3
//! 0 1
//! 0 2
//! 1 2
//! ```
//!
//! DIMACS (1-based, `c` lines are comments):
//!
//! ```text
//! p edge 3 3
//! e 1 2
//! ```
//!
//! Label sidecar: one `id<TAB>layer<TAB>branch<TAB>unit<TAB>position` row per vertex.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generators::VertexLabel;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(Error::domain(format!("unknown graph format {other:?}"))),
        }
    }
}

fn parse_num(token: &str, line: usize, what: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("{what} {token:?} is not a non-negative integer")))
}

struct EdgeCollector {
    order: usize,
    edges: Vec<(usize, usize)>,
    seen: HashSet<(usize, usize)>,
}

impl EdgeCollector {
    fn add(&mut self, u: usize, v: usize, line: usize) -> Result<()> {
        if u >= self.order || v >= self.order {
            return Err(Error::parse(line, format!("edge ({u}, {v}) out of range for order {}", self.order)));
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(line, format!("duplicate edge ({u}, {v})")));
        }
        self.edges.push((u, v));
        Ok(())
    }
}

pub fn read_graph(reader: impl BufRead, format: Format) -> Result<Graph> {
    let mut header: Option<(usize, EdgeCollector)> = None;
    let mut last_line = 0;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = line?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() || (format == Format::Dimacs && tokens[0] == "c") {
            continue;
        }
        match (&mut header, tokens[0]) {
            (None, "p") => {
                let (order, edges) = match (format, tokens.as_slice()) {
                    (Format::EdgeList, [_, n, m]) => (n, m),
                    (Format::Dimacs, [_, _, n, m]) => (n, m),
                    _ => return Err(Error::parse(lineno, "malformed header line")),
                };
                let order = parse_num(order, lineno, "order")?;
                let edges = parse_num(edges, lineno, "edge count")?;
                header = Some((
                    edges,
                    EdgeCollector {
                        order,
                        edges: Vec::with_capacity(edges),
                        seen: HashSet::with_capacity(edges),
                    },
                ));
            }
            (None, _) => return Err(Error::parse(lineno, "expected a header line starting with 'p'")),
            (Some(_), "p") => return Err(Error::parse(lineno, "second header line")),
            (Some((_, collector)), _) => {
                let (u, v) = match (format, tokens.as_slice()) {
                    (Format::EdgeList, [u, v]) => (parse_num(u, lineno, "vertex")?, parse_num(v, lineno, "vertex")?),
                    (Format::Dimacs, ["e", u, v]) => {
                        let (u, v) = (parse_num(u, lineno, "vertex")?, parse_num(v, lineno, "vertex")?);
                        if u == 0 || v == 0 {
                            return Err(Error::parse(lineno, "DIMACS vertices are 1-based"));
                        }
                        (u - 1, v - 1)
                    }
                    _ => return Err(Error::parse(lineno, format!("malformed edge line {line:?}"))),
                };
                collector.add(u, v, lineno)?;
            }
        }
    }
    let (declared, collector) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing header line"))?;
    if collector.edges.len() != declared {
        return Err(Error::parse(
            last_line,
            format!("header declares {declared} edges but {} were listed", collector.edges.len()),
        ));
    }
    Graph::from_edges(collector.order, collector.edges)
}

pub fn read_graph_str(text: &str, format: Format) -> Result<Graph> {
    read_graph(text.as_bytes(), format)
}

pub fn graph_to_string(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::EdgeList => {
            let _ = writeln!(out, "p {} {}", g.order(), g.edge_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        Format::Dimacs => {
            let _ = writeln!(out, "p edge {} {}", g.order(), g.edge_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "e {} {}", u + 1, v + 1);
            }
        }
    }
    out
}

pub fn write_graph(g: &Graph, format: Format, mut writer: impl Write) -> Result<()> {
    writer.write_all(graph_to_string(g, format).as_bytes())?;
    Ok(())
}

/// TSV label sidecar; empty when the graph carries no labels.
pub fn labels_to_string(g: &Graph) -> String {
    let mut out = String::new();
    for (id, l) in g.labels().unwrap_or_default().iter().enumerate() {
        let _ = writeln!(out, "{id}\t{}\t{}\t{}\t{}", l.layer, l.branch, l.unit, l.position);
    }
    out
}

pub fn read_labels(reader: impl BufRead) -> Result<Vec<(usize, VertexLabel)>> {
    let mut rows = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(Error::parse(lineno, format!("expected 5 tab-separated fields, got {}", fields.len())));
        }
        let mut nums = [0usize; 5];
        for (slot, field) in nums.iter_mut().zip(&fields) {
            *slot = parse_num(field.trim(), lineno, "field")?;
        }
        rows.push((nums[0], VertexLabel::new(nums[1], nums[2], nums[3], nums[4])));
    }
    Ok(rows)
}
