//! PACE `.gr` graphs and `.td` tree decompositions.
//!
//! Both formats use 1-based vertex numbers on disk and 0-based indices in memory.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::ordering::TreeDecomposition;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    match tok {
        None => err(line, format!("missing {what}")),
        Some(t) => t
            .parse()
            .or_else(|_| err(line, format!("{what} '{t}' is not a non-negative integer"))),
    }
}

/// Lines that carry data, numbered from 1, with comments and blanks skipped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

pub fn parse_gr(text: &str) -> Result<Graph, ParseError> {
    let mut lines = data_lines(text);
    let (hline, header) = match lines.next() {
        Some(h) => h,
        None => return err(text.lines().count().max(1), "missing 'p tw <n> <m>' header"),
    };
    let mut toks = header.split_whitespace();
    if toks.next() != Some("p") || toks.next() != Some("tw") {
        return err(hline, format!("malformed header '{header}', expected 'p tw <n> <m>'"));
    }
    let n = number(toks.next(), hline, "vertex count")?;
    let m = number(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return err(hline, "trailing tokens after header");
    }
    if n > MAX_VERTICES {
        return err(
            hline,
            format!("{n} vertices exceed the supported maximum of {MAX_VERTICES}"),
        );
    }
    let mut g = Graph::new(n).expect("checked vertex count");
    let mut seen = 0usize;
    let mut last_line = hline;
    for (ln, l) in lines {
        last_line = ln;
        if l.starts_with('p') {
            return err(ln, "duplicate header");
        }
        let mut toks = l.split_whitespace();
        let u = number(toks.next(), ln, "endpoint")?;
        let v = number(toks.next(), ln, "endpoint")?;
        if toks.next().is_some() {
            return err(ln, "edge line has more than two endpoints");
        }
        for w in [u, v] {
            if w == 0 || w > n {
                return err(ln, format!("endpoint {w} out of range 1..={n}"));
            }
        }
        if u == v {
            return err(ln, format!("self-loop on vertex {u}"));
        }
        g.add_edge(u - 1, v - 1).expect("checked endpoints");
        seen += 1;
    }
    if seen != m {
        return err(
            last_line,
            format!("header declares {m} edges but {seen} edge lines follow"),
        );
    }
    Ok(g)
}

pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag.iter() {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.tree_edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Parses a `.td` file and returns the decomposition with the declared vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize), ParseError> {
    let mut lines = data_lines(text);
    let (hline, header) = match lines.next() {
        Some(h) => h,
        None => return err(1, "missing 's td' header"),
    };
    let mut toks = header.split_whitespace();
    if toks.next() != Some("s") || toks.next() != Some("td") {
        return err(hline, format!("malformed header '{header}'"));
    }
    let nbags = number(toks.next(), hline, "bag count")?;
    let max_bag = number(toks.next(), hline, "maximum bag size")?;
    let n = number(toks.next(), hline, "vertex count")?;
    if n > MAX_VERTICES {
        return err(
            hline,
            format!("{n} vertices exceed the supported maximum of {MAX_VERTICES}"),
        );
    }
    let mut bags = vec![None; nbags];
    let mut tree_edges = Vec::new();
    for (ln, l) in lines {
        let mut toks = l.split_whitespace().peekable();
        if toks.peek() == Some(&"b") {
            toks.next();
            let id = number(toks.next(), ln, "bag id")?;
            if id == 0 || id > nbags {
                return err(ln, format!("bag id {id} out of range 1..={nbags}"));
            }
            if bags[id - 1].is_some() {
                return err(ln, format!("bag {id} declared twice"));
            }
            let mut bag = VertexSet::EMPTY;
            for t in toks {
                let v = number(Some(t), ln, "vertex")?;
                if v == 0 || v > n {
                    return err(ln, format!("vertex {v} out of range 1..={n}"));
                }
                bag.insert(v - 1);
            }
            if bag.len() > max_bag {
                return err(ln, format!("bag {id} larger than the declared maximum {max_bag}"));
            }
            bags[id - 1] = Some(bag);
        } else {
            let a = number(toks.next(), ln, "bag id")?;
            let b = number(toks.next(), ln, "bag id")?;
            for x in [a, b] {
                if x == 0 || x > nbags {
                    return err(ln, format!("bag id {x} out of range 1..={nbags}"));
                }
            }
            tree_edges.push((a - 1, b - 1));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.ok_or(())
                .or_else(|_| err(hline, format!("bag {} never declared", i + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((TreeDecomposition { bags, tree_edges }, n))
}
