// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Plain-text formats.
//!
//! Graph files start with a header line `n m` followed by `m` edge lines
//! `u v` (written with `u < v`). Colouring files hold one `u v c` line per
//! edge, in any order. Reduction reports hold a `K k` line and the sections
//! `GRAPH`, `LAYOUT` and `EDGEMAP`. In every format lines starting with `#`
//! and blank lines are ignored.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::colouring::{Colour, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::hardness::{build_claw_free_instance, Reduction};

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<const N: usize>(line: usize, text: &str, what: &str) -> Result<[usize; N]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != N {
        return Err(Error::Malformed {
            line,
            message: format!("expected {what}, found {text:?}"),
        });
    }
    let mut out = [0usize; N];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field.parse().map_err(|_| Error::Malformed {
            line,
            message: format!("expected {what}, found {text:?}"),
        })?;
    }
    Ok(out)
}

fn checked_edge(line: usize, n: usize, a: Vertex, b: Vertex) -> Result<Edge> {
    for x in [a, b] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n }.at_line(line));
        }
    }
    Edge::new(a, b).map_err(|e| e.at_line(line))
}

fn parse_graph_lines<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    last_line: usize,
) -> Result<Graph> {
    let (header_line, header) = lines.next().ok_or(Error::Malformed {
        line: last_line,
        message: "missing header \"n m\"".into(),
    })?;
    let [n, m] = numbers::<2>(header_line, header, "header \"n m\"")?;
    let mut edges = BTreeSet::new();
    for _ in 0..m {
        let (line, text) = lines.next().ok_or(Error::Malformed {
            line: last_line,
            message: format!("expected {m} edges, found {}", edges.len()),
        })?;
        let [a, b] = numbers::<2>(line, text, "edge \"u v\"")?;
        let e = checked_edge(line, n, a, b)?;
        if !edges.insert(e) {
            return Err(Error::MultiEdge(e).at_line(line));
        }
    }
    Ok(Graph::from_sorted_edges(n, edges.into_iter().collect()))
}

/// Parses the edge-list graph format.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let last_line = text.lines().count().max(1);
    let mut lines = content_lines(text);
    let g = parse_graph_lines(&mut lines, last_line)?;
    if let Some((line, extra)) = lines.next() {
        return Err(Error::Malformed {
            line,
            message: format!("unexpected line after {} edges: {extra:?}", g.edge_count()),
        });
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

/// Parses `u v c` lines into a colouring with palette `k`. Range and
/// completeness are left to validation against a graph.
pub fn parse_colouring(text: &str, k: usize) -> Result<EdgeColouring> {
    let mut c = EdgeColouring::new(k);
    for (line, content) in content_lines(text) {
        let [a, b, colour] = numbers::<3>(line, content, "colouring line \"u v c\"")?;
        let e = Edge::new(a, b).map_err(|e| e.at_line(line))?;
        if c.get(e).is_some() {
            return Err(Error::Malformed {
                line,
                message: format!("edge {e} coloured twice"),
            });
        }
        c.set(e, colour as Colour);
    }
    Ok(c)
}

pub fn write_colouring(c: &EdgeColouring) -> String {
    let mut out = String::new();
    for (e, colour) in c.iter() {
        let _ = writeln!(out, "{} {} {}", e.u(), e.v(), colour);
    }
    out
}

fn join(ids: &[Vertex]) -> String {
    ids.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Serialises a reduction so that it can be re-verified independently.
pub fn write_reduction_report(r: &Reduction) -> String {
    let mut out = String::from("# claw-free reduction report\n");
    let _ = writeln!(out, "K {}", r.k);
    out.push_str("GRAPH\n");
    out.push_str(&write_graph(&r.result));
    out.push_str("LAYOUT\n");
    out.push_str("# source: ports | primed | hub | first clique | second clique\n");
    for g in &r.gadgets {
        let _ = writeln!(
            out,
            "{}: {} | {} | {} | {}-{} | {}-{}",
            g.source,
            join(&g.ports),
            join(&g.primed),
            g.hub,
            g.first_clique[0],
            g.first_clique[g.first_clique.len() - 1],
            g.second_clique[0],
            g.second_clique[g.second_clique.len() - 1],
        );
    }
    out.push_str("EDGEMAP\n");
    for (src, img) in &r.edge_map {
        let _ = writeln!(out, "{} {} -> {} {}", src.u(), src.v(), img.u(), img.v());
    }
    out
}

fn inconsistent(message: impl Into<String>) -> Error {
    Error::InvalidParameter(format!(
        "reduction report is inconsistent: {}",
        message.into()
    ))
}

/// Reads a reduction report and re-derives the reduction from the source
/// graph it describes; every section must agree with the re-derivation.
pub fn parse_reduction_report(text: &str) -> Result<Reduction> {
    let last_line = text.lines().count().max(1);
    let mut lines = content_lines(text).peekable();

    let (line, k_line) = lines.next().ok_or(Error::Malformed {
        line: last_line,
        message: "empty report".into(),
    })?;
    let k = match k_line.strip_prefix("K ") {
        Some(rest) => numbers::<1>(line, rest, "\"K k\"")?[0],
        None => {
            return Err(Error::Malformed {
                line,
                message: format!("expected \"K k\", found {k_line:?}"),
            })
        }
    };
    expect_section(&mut lines, "GRAPH", last_line)?;
    let result = parse_graph_lines(&mut lines, last_line)?;
    expect_section(&mut lines, "LAYOUT", last_line)?;
    let mut layout = Vec::new();
    while let Some(&(line, text)) = lines.peek() {
        if text == "EDGEMAP" {
            break;
        }
        lines.next();
        layout.push((line, text.to_string()));
    }
    expect_section(&mut lines, "EDGEMAP", last_line)?;
    let mut pairs = Vec::new();
    let mut images = Vec::new();
    for (line, text) in lines {
        let Some((left, right)) = text.split_once("->") else {
            return Err(Error::Malformed {
                line,
                message: format!("expected \"u v -> a b\", found {text:?}"),
            });
        };
        let [u, v] = numbers::<2>(line, left, "source edge \"u v\"")?;
        let [a, b] = numbers::<2>(line, right, "image edge \"a b\"")?;
        pairs.push((u, v));
        images.push(Edge::new(a, b).map_err(|e| e.at_line(line))?);
    }

    let source = Graph::new(layout.len(), &pairs)?;
    let rebuilt = build_claw_free_instance(&source, k)?;
    if rebuilt.result != result {
        return Err(inconsistent("GRAPH differs from the gadget construction"));
    }
    let expected_layout: Vec<String> = write_reduction_report(&rebuilt)
        .lines()
        .skip_while(|l| *l != "LAYOUT")
        .skip(1)
        .take_while(|l| *l != "EDGEMAP")
        .filter(|l| !l.starts_with('#'))
        .map(str::to_string)
        .collect();
    for ((line, got), want) in layout.iter().zip(&expected_layout) {
        if got.split_whitespace().ne(want.split_whitespace()) {
            return Err(inconsistent(format!("LAYOUT line {line} differs")));
        }
    }
    if layout.len() != expected_layout.len() {
        return Err(inconsistent("LAYOUT has the wrong number of gadgets"));
    }
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let src = Edge::new(u, v)?;
        let idx = source
            .edges()
            .binary_search(&src)
            .expect("source built from pairs");
        if rebuilt.image(idx) != images[i] {
            return Err(inconsistent(format!("EDGEMAP entry for {src} differs")));
        }
    }
    Ok(rebuilt)
}

fn expect_section<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    name: &str,
    last_line: usize,
) -> Result<()> {
    match lines.next() {
        Some((_, text)) if text == name => Ok(()),
        Some((line, text)) => Err(Error::Malformed {
            line,
            message: format!("expected section {name}, found {text:?}"),
        }),
        None => Err(Error::Malformed {
            line: last_line,
            message: format!("missing section {name}"),
        }),
    }
}
