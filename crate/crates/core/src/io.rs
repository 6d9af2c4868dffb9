//! Line-based text formats for graphs and groups.
//!
//! Graph file:
//! ```text
//! # optional comments
//! n 4
//! 0 1
//! 1 2
//! ```
//! Group file:
//! ```text
//! degree 4
//! 1 2 3 0
//! 1 0 2 3
//! ```
//! Blank lines and lines starting with `#` are ignored. Writers emit the
//! canonical form: edges and generators sorted lexicographically.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::Group;
use crate::perm::Permutation;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<usize> {
    let (line, text) = lines
        .next()
        .ok_or_else(|| Error::parse(1, format!("missing `{key} <count>` header")))?;
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return Err(Error::parse(line, format!("expected `{key} <count>`")));
    }
    let value = parts
        .next()
        .ok_or_else(|| Error::parse(line, format!("missing value after `{key}`")))?;
    if parts.next().is_some() {
        return Err(Error::parse(line, "trailing tokens"));
    }
    let n: usize = value
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {key} `{value}`")))?;
    if n == 0 {
        return Err(Error::parse(line, format!("{key} must be positive")));
    }
    Ok(n)
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(line, format!("invalid integer `{t}`")))
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "n")?;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (line, text) in lines {
        let nums = numbers(line, text)?;
        let [u, v] = nums[..] else {
            return Err(Error::parse(line, "expected an edge `u v`"));
        };
        if u >= n || v >= n {
            return Err(Error::parse(line, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(Error::parse(line, format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    Graph::new(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses a group file; no generator lines means the trivial group.
pub fn parse_group(text: &str) -> Result<Group> {
    let mut lines = content_lines(text);
    let degree = header(&mut lines, "degree")?;
    let mut gens = Vec::new();
    for (line, text) in lines {
        let images = numbers(line, text)?;
        if images.len() != degree {
            return Err(Error::parse(
                line,
                format!("expected {degree} images, found {}", images.len()),
            ));
        }
        let p = Permutation::new(images)
            .map_err(|_| Error::parse(line, "images do not form a permutation"))?;
        gens.push(p);
    }
    if gens.is_empty() {
        return Ok(Group::trivial(degree));
    }
    Group::build(&gens)
}

pub fn write_group(g: &Group) -> String {
    write_generators(g.degree(), g.generators())
}

pub fn write_generators(degree: usize, gens: &[Permutation]) -> String {
    let mut sorted: Vec<&Permutation> = gens.iter().filter(|p| !p.is_identity()).collect();
    sorted.sort();
    sorted.dedup();
    let mut out = format!("degree {degree}\n");
    for p in sorted {
        let line: Vec<String> = p.images().iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn graph_round_trip_is_canonical() {
        let text = "# square\nn 4\n2 3\n0 1\n\n3 0\n1 2\n";
        let g = parse_graph(text).unwrap();
        let canon = write_graph(&g);
        assert_eq!(canon, "n 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(parse_graph(&canon).unwrap(), g);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        assert_eq!(line_of(parse_graph("n 3\n0 1\n1 1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph("n 3\n0 1\n# c\n1 0\n").unwrap_err()), 4);
        assert_eq!(line_of(parse_graph("n 3\n0 5\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("n 3\n0 x\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph("vertices 3\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph("n 3\n0 1 2\n").unwrap_err()), 2);
    }

    #[test]
    fn group_round_trip_is_canonical() {
        let text = "degree 4\n1 0 2 3\n1 2 3 0\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.order_u64(), Some(24));
        let canon = write_group(&g);
        assert_eq!(canon, "degree 4\n1 0 2 3\n1 2 3 0\n");
        let again = parse_group("degree 4\n1 2 3 0\n1 0 2 3\n").unwrap();
        assert_eq!(write_group(&again), canon);
        assert!(parse_group("degree 3\n").unwrap().is_trivial());
    }

    #[test]
    fn group_errors_carry_line_numbers() {
        assert_eq!(line_of(parse_group("degree 3\n0 0 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_group("degree 3\n\n0 1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_group("").unwrap_err()), 1);
    }
}
