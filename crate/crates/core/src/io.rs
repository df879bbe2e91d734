//! Text serialization for colored graphs.
//!
//! Format: a header line `n r`, then one line `u v color` per edge with
//! 0-based vertex ids and 1-based colors. An uncolored graph is written with
//! `r = 0` in the header and `color = 0` on every edge line.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::graph::{Color, ColoredGraph, Edge, Graph, Vertex};
use crate::{Error, Result};

/// Writes `cg` in the line-oriented text format. Edges are emitted in sorted
/// canonical order so output is a deterministic function of the graph.
pub fn write_colored<W: Write>(mut w: W, cg: &ColoredGraph) -> Result<()> {
    writeln!(w, "{} {}", cg.graph().n(), cg.r())?;
    for (i, e) in cg.graph().edges().iter().enumerate() {
        writeln!(w, "{} {} {}", e.u(), e.v(), cg.colors()[i])?;
    }
    Ok(())
}

/// Writes an uncolored graph (`r = 0`, every edge line ends in `0`).
pub fn write_graph<W: Write>(w: W, g: &Graph) -> Result<()> {
    let cg = ColoredGraph::uncolored(g.clone());
    write_colored(w, &cg)
}

/// Parses the text format. Accepts any ASCII-whitespace separation.
pub fn read_colored<R: BufRead>(r: R) -> Result<ColoredGraph> {
    let mut lines = r.lines().enumerate();
    let (n, colors_r) = loop {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "missing header".into() })?;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut it = trimmed.split_ascii_whitespace();
        let n = parse_field::<usize>(it.next(), lineno + 1, "vertex count")?;
        let cr = parse_field::<Color>(it.next(), lineno + 1, "color count")?;
        if it.next().is_some() {
            return Err(Error::Parse { line: lineno + 1, msg: "trailing tokens in header".into() });
        }
        break (n, cr);
    };

    let mut edges: Vec<Edge> = Vec::new();
    let mut colors: Vec<Color> = Vec::new();
    for (lineno, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut it = trimmed.split_ascii_whitespace();
        let u = parse_field::<Vertex>(it.next(), lineno + 1, "endpoint")?;
        let v = parse_field::<Vertex>(it.next(), lineno + 1, "endpoint")?;
        let c = parse_field::<Color>(it.next(), lineno + 1, "color")?;
        if it.next().is_some() {
            return Err(Error::Parse { line: lineno + 1, msg: "trailing tokens".into() });
        }
        if (u as usize) >= n || (v as usize) >= n {
            return Err(Error::Parse { line: lineno + 1, msg: format!("endpoint out of range for n={n}") });
        }
        if u == v {
            return Err(Error::Parse { line: lineno + 1, msg: "self-loop".into() });
        }
        if colors_r == 0 && c != 0 {
            return Err(Error::Parse { line: lineno + 1, msg: "nonzero color in uncolored file".into() });
        }
        if colors_r > 0 && (c == 0 || c > colors_r) {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("color {c} outside 1..={colors_r}"),
            });
        }
        edges.push(Edge::new(u, v));
        colors.push(c);
    }

    // Re-sort into canonical edge order, carrying colors along.
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| edges[i]);
    let sorted_edges: Vec<Edge> = order.iter().map(|&i| edges[i]).collect();
    let sorted_colors: Vec<Color> = order.iter().map(|&i| colors[i]).collect();
    for w in sorted_edges.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidInput(format!(
                "duplicate edge {} {}",
                w[0].u(),
                w[0].v()
            )));
        }
    }
    let g = Graph::from_sorted_dedup(n, sorted_edges);
    if colors_r == 0 {
        Ok(ColoredGraph::uncolored(g))
    } else {
        ColoredGraph::new(g, sorted_colors, colors_r)
    }
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("bad {what}: {tok:?}") })
}

pub fn read_colored_file(path: &Path) -> Result<ColoredGraph> {
    let f = std::fs::File::open(path)?;
    read_colored(std::io::BufReader::new(f))
}

pub fn write_colored_file(path: &Path, cg: &ColoredGraph) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_colored(std::io::BufWriter::new(f), cg)
}

pub fn write_graph_file(path: &Path, g: &Graph) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_graph(std::io::BufWriter::new(f), g)
}
