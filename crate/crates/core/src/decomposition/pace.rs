//! PACE 2017 `.td` files:
//!
//! ```text
//! s td <#bags> <max-bag-size> <n>
//! b <bag-id> <v1> <v2> ...
//! <i> <j>
//! ```
//!
//! Bag ids and vertices are 1-indexed; `c` lines are comments.

use std::fmt::Write as _;
use std::path::Path;

use super::TreeDecomposition;
use crate::error::{Error, Result};

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let max_bag = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    writeln!(out, "s td {} {} {}", td.num_bags(), max_bag, n).unwrap();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for &v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in td.tree_edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Parses a `.td` file, returning the decomposition and the declared
/// vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tok: Vec<&str> = raw.split_whitespace().collect();
        let Some(&first) = tok.first() else { continue };
        match first {
            "c" => {}
            "s" => {
                if header.is_some() {
                    return Err(Error::parse(line, "second solution line"));
                }
                let [_, "td", nb, mb, n] = tok.as_slice() else {
                    return Err(Error::parse(
                        line,
                        "expected `s td <#bags> <max-bag-size> <n>`",
                    ));
                };
                let h = (num(nb, line)?, num(mb, line)?, num(n, line)?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            "b" => {
                let (_, _, n) = header.ok_or_else(|| Error::parse(line, "bag before header"))?;
                let id = num(
                    tok.get(1)
                        .ok_or_else(|| Error::parse(line, "missing bag id"))?,
                    line,
                )?;
                if id == 0 || id > bags.len() {
                    return Err(Error::parse(line, format!("bag id {id} out of range")));
                }
                if bags[id - 1].is_some() {
                    return Err(Error::parse(line, format!("bag {id} defined twice")));
                }
                let mut bag = Vec::new();
                for t in &tok[2..] {
                    let v = num(t, line)?;
                    if v == 0 || v > n {
                        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
                    }
                    bag.push(v - 1);
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                if header.is_none() {
                    return Err(Error::parse(line, "tree edge before header"));
                }
                let [a, b] = tok.as_slice() else {
                    return Err(Error::parse(line, "expected a tree edge `<i> <j>`"));
                };
                let (a, b) = (num(a, line)?, num(b, line)?);
                if a == 0 || b == 0 || a > bags.len() || b > bags.len() {
                    return Err(Error::parse(
                        line,
                        format!("tree edge {a} {b} out of range"),
                    ));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, max_bag, n) = header.ok_or_else(|| Error::parse(0, "missing `s td` line"))?;
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(0, format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    let td = TreeDecomposition::new(bags, edges);
    let actual = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    if actual != max_bag {
        return Err(Error::parse(
            0,
            format!("header declares max bag size {max_bag}, found {actual}"),
        ));
    }
    Ok((td, n))
}

fn num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("`{s}` is not a nonnegative integer")))
}

pub fn read_td(path: impl AsRef<Path>) -> Result<(TreeDecomposition, usize)> {
    parse_td(&std::fs::read_to_string(path)?)
}
