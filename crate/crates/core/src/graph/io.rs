//! DIMACS-like edge lists: `p <n> <m>`, then `m` lines `e <u> <v>` with
//! 1-indexed endpoints. Lines starting with `c` are comments.

use std::fmt::Write as _;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tok = raw.split_whitespace();
        let Some(kind) = tok.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if graph.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                let rest: Vec<&str> = tok.collect();
                // `p <n> <m>`, also accepting a format word as in `p edge <n> <m>`
                let nums = match rest.as_slice() {
                    [n, m] => [*n, *m],
                    [_, n, m] => [*n, *m],
                    _ => return Err(Error::parse(line, "expected `p <n> <m>`")),
                };
                let n = parse_count(nums[0], line)?;
                declared_m = parse_count(nums[1], line)?;
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "edge before the problem line"))?;
                let ends: Vec<&str> = tok.collect();
                let [u, v] = ends.as_slice() else {
                    return Err(Error::parse(line, "expected `e <u> <v>`"));
                };
                let u = parse_vertex(u, g.n(), line)?;
                let v = parse_vertex(v, g.n(), line)?;
                if u == v {
                    return Err(Error::parse(line, format!("loop at vertex {}", u + 1)));
                }
                if !g
                    .add_edge(u, v)
                    .map_err(|e| Error::parse(line, e.to_string()))?
                {
                    return Err(Error::parse(
                        line,
                        format!("duplicate edge {{{}, {}}}", u + 1, v + 1),
                    ));
                }
            }
            other => {
                return Err(Error::parse(line, format!("unknown line type `{other}`")));
            }
        }
    }
    let g = graph.ok_or_else(|| Error::parse(0, "missing problem line `p <n> <m>`"))?;
    if g.m() != declared_m {
        return Err(Error::parse(
            0,
            format!("problem line declares {declared_m} edges, found {}", g.m()),
        ));
    }
    Ok(g)
}

fn parse_count(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("`{s}` is not a nonnegative integer")))
}

fn parse_vertex(s: &str, n: usize, line: usize) -> Result<usize> {
    let v = parse_count(s, line)?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn read_dimacs(path: impl AsRef<Path>) -> Result<Graph> {
    parse_dimacs(&std::fs::read_to_string(path)?)
}

/// Serializes a loopless graph; edges are written in lexicographic order.
pub fn write_dimacs(g: &Graph) -> Result<String> {
    if g.has_loops() {
        return Err(Error::invalid("edge-list format cannot carry loops"));
    }
    let mut out = String::new();
    writeln!(out, "p {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    Ok(out)
}
