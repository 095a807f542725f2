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

//! Reference implementations used as test oracles. They work on raw edge
//! lists and share no code with the library solvers.

#![allow(dead_code)]

use edgecolour::{Graph, Vertex};

/// Edges of `g` as plain pairs.
pub fn pairs(g: &Graph) -> Vec<(Vertex, Vertex)> {
    g.edges().iter().map(|e| (e.u(), e.v())).collect()
}

/// Colours the line graph of `edges` with `k` colours by DSATUR
/// backtracking. Returns a colour in `0..k` per edge.
pub fn line_graph_colouring(n: usize, edges: &[(Vertex, Vertex)], k: usize) -> Option<Vec<usize>> {
    let m = edges.len();
    if m == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let mut conflicts = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                conflicts[i].push(j);
                conflicts[j].push(i);
            }
        }
    }
    let mut state = Dsatur {
        n,
        edges,
        conflicts,
        k,
        colour: vec![None; m],
        at_vertex: vec![vec![false; k]; n],
    };
    if state.solve(0) {
        Some(state.colour.into_iter().map(|c| c.unwrap()).collect())
    } else {
        None
    }
}

struct Dsatur<'a> {
    n: usize,
    edges: &'a [(Vertex, Vertex)],
    conflicts: Vec<Vec<usize>>,
    k: usize,
    colour: Vec<Option<usize>>,
    at_vertex: Vec<Vec<bool>>,
}

impl Dsatur<'_> {
    fn forbidden(&self, e: usize) -> Vec<bool> {
        let (a, b) = self.edges[e];
        (0..self.k)
            .map(|c| self.at_vertex[a][c] || self.at_vertex[b][c])
            .collect()
    }

    // Each colour class is a matching, so colour c can still take at most
    // half of the vertices that miss c and have an uncoloured edge.
    fn capacity_ok(&self) -> bool {
        let mut open = vec![false; self.n];
        let mut remaining = 0;
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if self.colour[e].is_none() {
                open[a] = true;
                open[b] = true;
                remaining += 1;
            }
        }
        let mut capacity = 0;
        for c in 0..self.k {
            let free = (0..self.n)
                .filter(|&v| open[v] && !self.at_vertex[v][c])
                .count();
            capacity += free / 2;
        }
        capacity >= remaining
    }

    fn solve(&mut self, used: usize) -> bool {
        let mut pick: Option<(usize, usize, usize)> = None;
        for e in 0..self.edges.len() {
            if self.colour[e].is_some() {
                continue;
            }
            let forbidden = self.forbidden(e);
            let saturation = forbidden.iter().filter(|&&f| f).count();
            let open = self.conflicts[e]
                .iter()
                .filter(|&&f| self.colour[f].is_none())
                .count();
            if pick.is_none_or(|(_, s, o)| (saturation, open) > (s, o)) {
                pick = Some((e, saturation, open));
            }
        }
        let Some((e, _, _)) = pick else {
            return true;
        };
        if !self.capacity_ok() {
            return false;
        }
        let forbidden = self.forbidden(e);
        let (a, b) = self.edges[e];
        // unused colours are interchangeable, so only the first is tried
        let limit = (used + 1).min(self.k);
        for (c, &blocked) in forbidden.iter().enumerate().take(limit) {
            if blocked {
                continue;
            }
            self.colour[e] = Some(c);
            self.at_vertex[a][c] = true;
            self.at_vertex[b][c] = true;
            if self.solve(used.max(c + 1)) {
                return true;
            }
            self.colour[e] = None;
            self.at_vertex[a][c] = false;
            self.at_vertex[b][c] = false;
        }
        false
    }
}

/// Smallest k for which the line graph of `g` is k-colourable. The edges
/// at one vertex form a clique there, so the search starts at the largest
/// vertex degree.
pub fn brute_chromatic_index(g: &Graph) -> usize {
    let edges = pairs(g);
    let mut degree = vec![0; g.vertex_count()];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    (degree.into_iter().max().unwrap_or(0)..)
        .find(|&k| line_graph_colouring(g.vertex_count(), &edges, k).is_some())
        .unwrap()
}

/// Whether `colours[i]` for edge `i` of `edges` is a proper colouring.
pub fn is_proper(edges: &[(Vertex, Vertex)], colours: &[usize]) -> bool {
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if (a == c || a == d || b == c || b == d) && colours[i] == colours[j] {
                return false;
            }
        }
    }
    true
}

/// Whether `g` contains `h` as an induced subgraph, by trying every
/// injective map.
pub fn brute_contains_induced(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, map: &mut Vec<Vertex>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == h.vertex_count() {
            return true;
        }
        for x in g.vertices() {
            if used[x] {
                continue;
            }
            if (0..i).all(|j| h.has_edge(i, j) == g.has_edge(x, map[j])) {
                used[x] = true;
                map.push(x);
                if extend(g, h, map, used) {
                    return true;
                }
                map.pop();
                used[x] = false;
            }
        }
        false
    }
    extend(g, h, &mut Vec::new(), &mut vec![false; g.vertex_count()])
}

/// Every labelled graph on `n` vertices.
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let slots: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let count = 1u64 << slots.len();
    (0..count).map(move |mask| {
        let chosen: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        Graph::new(n, &chosen).unwrap()
    })
}

/// Whether `set` is connected and dominates `g`, checked directly.
pub fn is_connected_dominating(g: &Graph, set: &[Vertex]) -> bool {
    if set.is_empty() {
        return false;
    }
    let dominated = g
        .vertices()
        .all(|v| set.contains(&v) || g.neighbours(v).iter().any(|u| set.contains(u)));
    let mut seen = vec![set[0]];
    let mut i = 0;
    while i < seen.len() {
        let x = seen[i];
        for &y in set {
            if g.has_edge(x, y) && !seen.contains(&y) {
                seen.push(y);
            }
        }
        i += 1;
    }
    dominated && seen.len() == set.len()
}

/// Length (in vertices) of the longest induced path of `g`, by subsets.
pub fn longest_induced_path(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16);
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let len = mask.count_ones() as usize;
        if len <= best {
            continue;
        }
        let subset: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let (sub, _) = g.induced_subgraph(&subset).unwrap();
        if sub.is_path() {
            best = len;
        }
    }
    best
}

/// Graphs on `min_n..=max_n` vertices with independently chosen edges.
pub fn arb_graph(min_n: usize, max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut chosen = Vec::new();
                let mut i = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if bits[i] {
                            chosen.push((a, b));
                        }
                        i += 1;
                    }
                }
                Graph::new(n, &chosen).unwrap()
            },
        )
    })
}
