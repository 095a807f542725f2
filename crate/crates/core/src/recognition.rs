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

//! Induced-subgraph detection and the forbidden-graph case analysis.
//!
//! [`contains_induced`] is the generic exact matcher. Claws and induced
//! paths have dedicated scans ([`is_claw_free`], [`is_pt_free`]) that do not
//! go through it, so the two routes can be checked against each other.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Outcome of an H-freeness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Freeness {
    Free,
    /// An induced copy was found. For the generic matcher entry `i` is the
    /// image of vertex `i` of H; claw witnesses list the centre first;
    /// path witnesses are in path order.
    Contains(Vec<Vertex>),
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }

    pub fn witness(&self) -> Option<&[Vertex]> {
        match self {
            Freeness::Free => None,
            Freeness::Contains(w) => Some(w),
        }
    }
}

/// Row-per-vertex adjacency bitset for O(1) adjacency queries.
pub(crate) struct AdjacencyBits {
    words: usize,
    bits: Vec<u64>,
}

impl AdjacencyBits {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for e in g.edges() {
            let (a, b) = e.ends();
            bits[a * words + b / 64] |= 1 << (b % 64);
            bits[b * words + a / 64] |= 1 << (a % 64);
        }
        AdjacencyBits { words, bits }
    }

    #[inline]
    pub(crate) fn has(&self, a: Vertex, b: Vertex) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }
}

/// Searches for an induced copy of `h` in `g`.
///
/// Returns an injective map `V(h) -> V(g)` (indexed by h-vertex) that
/// preserves adjacency and non-adjacency, or `None`. Exact backtracking;
/// pattern vertices are matched in order of descending degree, ties by id.
pub fn contains_induced(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    let nh = h.vertex_count();
    let ng = g.vertex_count();
    if nh > ng {
        return None;
    }
    let mut order: Vec<Vertex> = h.vertices().collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(h.degree(x)), x));

    let matcher = Matcher {
        g,
        h,
        g_adj: AdjacencyBits::new(g),
        h_adj: AdjacencyBits::new(h),
        order,
    };
    let mut map = vec![usize::MAX; nh];
    let mut used = vec![false; ng];
    if matcher.extend(0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

struct Matcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    g_adj: AdjacencyBits,
    h_adj: AdjacencyBits,
    order: Vec<Vertex>,
}

impl Matcher<'_> {
    fn extend(&self, depth: usize, map: &mut [Vertex], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let hv = self.order[depth];
        let need_deg = self.h.degree(hv);
        let need_non = self.h.vertex_count() - 1 - need_deg;
        let ng = self.g.vertex_count();

        // anchor on an already-placed neighbour when there is one
        let anchor = self.order[..depth]
            .iter()
            .copied()
            .find(|&prev| self.h_adj.has(hv, prev));
        let all: Vec<Vertex>;
        let candidates: &[Vertex] = match anchor {
            Some(prev) => self.g.neighbours(map[prev]),
            None => {
                all = (0..ng).collect();
                &all
            }
        };

        for &gv in candidates {
            if used[gv] {
                continue;
            }
            let deg = self.g.degree(gv);
            if deg < need_deg || ng - 1 - deg < need_non {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&prev| self.h_adj.has(hv, prev) == self.g_adj.has(gv, map[prev]));
            if !consistent {
                continue;
            }
            map[hv] = gv;
            used[gv] = true;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            used[gv] = false;
            map[hv] = usize::MAX;
        }
        false
    }
}

/// Checks a claimed induced embedding of `h` into `g`.
pub fn is_induced_embedding(g: &Graph, h: &Graph, map: &[Vertex]) -> bool {
    if map.len() != h.vertex_count() || map.iter().any(|&x| x >= g.vertex_count()) {
        return false;
    }
    let mut sorted = map.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    h.vertices()
        .all(|a| (a + 1..h.vertex_count()).all(|b| h.has_edge(a, b) == g.has_edge(map[a], map[b])))
}

/// Isomorphism test via the induced matcher on equal-sized graphs.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && contains_induced(a, b).is_some()
}

pub fn is_h_free(g: &Graph, h: &Graph) -> Freeness {
    match contains_induced(g, h) {
        Some(map) => Freeness::Contains(map),
        None => Freeness::Free,
    }
}

/// Claw-freeness by scanning each neighbourhood for an independent triple.
/// The witness is `[centre, a, b, c]`.
pub fn is_claw_free(g: &Graph) -> Freeness {
    let adj = AdjacencyBits::new(g);
    for centre in g.vertices() {
        let nb = g.neighbours(centre);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if adj.has(a, b) {
                    continue;
                }
                for &c in &nb[j + 1..] {
                    if !adj.has(a, c) && !adj.has(b, c) {
                        return Freeness::Contains(vec![centre, a, b, c]);
                    }
                }
            }
        }
    }
    Freeness::Free
}

/// P_t-freeness by direct induced-path search. The witness lists the path
/// in order. For `t == 0` every graph contains the empty path.
pub fn is_pt_free(g: &Graph, t: usize) -> Freeness {
    if t == 0 {
        return Freeness::Contains(Vec::new());
    }
    let adj = AdjacencyBits::new(g);
    let mut path = Vec::with_capacity(t);
    let mut on_path = vec![false; g.vertex_count()];
    for start in g.vertices() {
        path.push(start);
        on_path[start] = true;
        if grow_induced_path(g, &adj, t, &mut path, &mut on_path) {
            return Freeness::Contains(path);
        }
        on_path[start] = false;
        path.pop();
    }
    Freeness::Free
}

fn grow_induced_path(
    g: &Graph,
    adj: &AdjacencyBits,
    t: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
) -> bool {
    if path.len() == t {
        return true;
    }
    let last = *path.last().expect("path is non-empty");
    for &y in g.neighbours(last) {
        if on_path[y] {
            continue;
        }
        // y may touch only the current end of the path
        if path[..path.len() - 1].iter().any(|&p| adj.has(p, y)) {
            continue;
        }
        path.push(y);
        on_path[y] = true;
        if grow_induced_path(g, adj, t, path, on_path) {
            return true;
        }
        on_path[y] = false;
        path.pop();
    }
    false
}

/// Which side of the dichotomy a forbidden graph H falls on, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HClassification {
    /// H has a cycle; `cycle` is a shortest one, in cyclic order.
    ContainsCycle { cycle: Vec<Vertex> },
    /// H is a forest with a vertex of degree at least three.
    ForestWithDegree3Vertex {
        centre: Vertex,
        neighbours: [Vertex; 3],
    },
    /// H is a disjoint union of paths. Every H-free graph is P_t-free for
    /// `t = path_bound`.
    LinearForest {
        paths: Vec<Vec<Vertex>>,
        vertex_count: usize,
        path_bound: usize,
    },
}

impl HClassification {
    pub fn case_name(&self) -> &'static str {
        match self {
            HClassification::ContainsCycle { .. } => "ContainsCycle",
            HClassification::ForestWithDegree3Vertex { .. } => "ForestWithDegree3Vertex",
            HClassification::LinearForest { .. } => "LinearForest",
        }
    }

    pub fn cycle_length(&self) -> Option<usize> {
        match self {
            HClassification::ContainsCycle { cycle } => Some(cycle.len()),
            _ => None,
        }
    }

    /// `(components, t)` for a linear forest.
    pub fn linear_forest_params(&self) -> Option<(usize, usize)> {
        match self {
            HClassification::LinearForest {
                paths, path_bound, ..
            } => Some((paths.len(), *path_bound)),
            _ => None,
        }
    }

    /// The coarser `components * |V(H)|` path bound, also sound.
    pub fn coarse_path_bound(&self) -> Option<usize> {
        match self {
            HClassification::LinearForest {
                paths,
                vertex_count,
                ..
            } => Some(paths.len() * vertex_count),
            _ => None,
        }
    }

    /// Whether k-edge colouring (k >= 3) is tractable on H-free graphs.
    pub fn is_tractable(&self) -> bool {
        matches!(self, HClassification::LinearForest { .. })
    }

    pub fn complexity_statement(&self) -> String {
        match self {
            HClassification::LinearForest { path_bound, .. } => format!(
                "polynomial-time solvable for every k >= 3 (H-free graphs are P_{path_bound}-free, so \
                 connected instances with maximum degree k have bounded size)"
            ),
            HClassification::ContainsCycle { cycle } => format!(
                "NP-complete for every k >= 3, even for k-regular H-free graphs \
                 (H-free graphs include all C_{}-free graphs)",
                cycle.len()
            ),
            HClassification::ForestWithDegree3Vertex { .. } => {
                "NP-complete for every k >= 3, even for k-regular H-free graphs \
                 (H-free graphs include all claw-free graphs)"
                    .to_string()
            }
        }
    }
}

/// `|V(H)| + 2(components - 1)`: the length of a path that contains the
/// linear forest as an induced subgraph when its paths are laid out with
/// two-vertex gaps.
pub fn linear_forest_path_bound(vertex_count: usize, components: usize) -> usize {
    vertex_count + 2 * components.saturating_sub(1)
}

pub fn classify_h(h: &Graph) -> Result<HClassification> {
    if h.vertex_count() == 0 {
        return Err(Error::EmptyForbiddenGraph);
    }
    if let Some(cycle) = shortest_cycle(h) {
        return Ok(HClassification::ContainsCycle { cycle });
    }
    if let Some(centre) = h.vertices().find(|&x| h.degree(x) >= 3) {
        let nb = h.neighbours(centre);
        return Ok(HClassification::ForestWithDegree3Vertex {
            centre,
            neighbours: [nb[0], nb[1], nb[2]],
        });
    }
    let paths: Vec<Vec<Vertex>> = h
        .connected_components()
        .into_iter()
        .map(|comp| {
            let start = comp
                .iter()
                .copied()
                .find(|&x| h.degree(x) <= 1)
                .expect("acyclic component has an end");
            walk_path(h, start)
        })
        .collect();
    let path_bound = linear_forest_path_bound(h.vertex_count(), paths.len());
    Ok(HClassification::LinearForest {
        paths,
        vertex_count: h.vertex_count(),
        path_bound,
    })
}

fn walk_path(h: &Graph, start: Vertex) -> Vec<Vertex> {
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = h.neighbours(cur).iter().find(|&&y| y != prev) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    path
}

/// A shortest cycle in cyclic order, or `None` for forests. Shortest
/// cycles are always induced.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut best: Option<(usize, Vertex, Vertex, Vec<Vertex>)> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in g.vertices() {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbours(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y && parent[y] != x {
                    let len = dist[x] + dist[y] + 1;
                    if best.as_ref().is_none_or(|b| len < b.0) {
                        best = Some((len, x, y, parent.clone()));
                    }
                }
            }
        }
    }
    // at a root achieving the girth the two tree paths meet only at the root
    let (len, x, y, parent) = best?;
    let to_root = |mut v: Vertex| {
        let mut chain = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            chain.push(v);
        }
        chain
    };
    let mut cycle = to_root(x);
    cycle.reverse();
    let mut back = to_root(y);
    back.pop();
    cycle.extend(back);
    debug_assert_eq!(cycle.len(), len);
    Some(cycle)
}
