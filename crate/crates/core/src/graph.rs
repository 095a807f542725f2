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

//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Edges are stored in canonical form
//! (`u < v`), sorted, and every edge has a stable index into
//! [`Graph::edges`] that the colouring code uses as its key.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An unordered vertex pair stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    u: Vertex,
    v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Edge> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::Loop(a)),
        }
    }

    pub fn u(self) -> Vertex {
        self.u
    }

    pub fn v(self) -> Vertex {
        self.v
    }

    pub fn ends(self) -> (Vertex, Vertex) {
        (self.u, self.v)
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: Vertex) -> Vertex {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    // sorted neighbour lists
    adj: Vec<Vec<Vertex>>,
    // incident edge indices, in the same order as `adj`
    incident: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub max_degree: usize,
    pub min_degree: usize,
    pub is_regular: bool,
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated
    /// edges. Pairs may be given in either orientation.
    pub fn new(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut seen = BTreeSet::new();
        for &(a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            let e = Edge::new(a, b)?;
            if !seen.insert(e) {
                return Err(Error::MultiEdge(e));
            }
        }
        Ok(Graph::from_sorted_edges(n, seen.into_iter().collect()))
    }

    /// Builds from canonical, sorted, duplicate-free, in-range edges.
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<Edge>) -> Graph {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut g = Graph {
            n,
            edges,
            adj,
            incident: Vec::new(),
        };
        g.incident = (0..n)
            .map(|x| {
                g.adj[x]
                    .iter()
                    .map(|&y| g.edge_index(x, y).expect("edge present"))
                    .collect()
            })
            .collect();
        g
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted_edges(n, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Edges in canonical sorted order; positions are the edge indices.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbours(&self, x: Vertex) -> &[Vertex] {
        &self.adj[x]
    }

    /// Indices of the edges at `x`, aligned with [`Graph::neighbours`].
    pub fn incident_edges(&self, x: Vertex) -> &[usize] {
        &self.incident[x]
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.adj[x].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n && b < self.n && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let e = Edge::new(a, b).ok()?;
        self.edges.binary_search(&e).ok()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let max_degree = self.max_degree();
        let min_degree = self.adj.iter().map(Vec::len).min().unwrap_or(0);
        DegreeProfile {
            max_degree,
            min_degree,
            is_regular: max_degree == min_degree,
        }
    }

    pub fn is_regular_of_degree(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    /// The subgraph induced by `subset`, relabelled `0..|subset|` by
    /// ascending original id. The second value maps new ids to old ones.
    pub fn induced_subgraph(&self, subset: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let mut keep: Vec<Vertex> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&x| x >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: self.n,
            });
        }
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &x) in keep.iter().enumerate() {
            new_id[x] = i;
        }
        let mut edges = Vec::new();
        for &x in &keep {
            for &y in &self.adj[x] {
                if x < y && new_id[y] != usize::MAX {
                    edges.push(Edge {
                        u: new_id[x],
                        v: new_id[y],
                    });
                }
            }
        }
        edges.sort_unstable();
        Ok((Graph::from_sorted_edges(keep.len(), edges), keep))
    }

    /// The line graph. Vertex `i` of the result stands for `self.edges()[i]`,
    /// which is also what the returned map records.
    pub fn line_graph(&self) -> (Graph, Vec<Edge>) {
        let mut edges = Vec::new();
        for x in self.vertices() {
            let inc = &self.incident[x];
            for (i, &a) in inc.iter().enumerate() {
                for &b in &inc[i + 1..] {
                    edges.push(Edge {
                        u: a.min(b),
                        v: a.max(b),
                    });
                }
            }
        }
        // two distinct simple edges share at most one endpoint
        edges.sort_unstable();
        (
            Graph::from_sorted_edges(self.edges.len(), edges),
            self.edges.clone(),
        )
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for root in self.vertices() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            let mut comp = Vec::new();
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Connected, with the empty graph counted as not connected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.connected_components().len() == 1
    }

    /// Whether `subset` induces a connected subgraph. The empty set does not.
    pub fn is_connected_subset(&self, subset: &[Vertex]) -> bool {
        let Some(&start) = subset.first() else {
            return false;
        };
        let mut inside = vec![false; self.n];
        for &x in subset {
            inside[x] = true;
        }
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        reached == subset.iter().collect::<BTreeSet<_>>().len()
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            u: e.u + shift,
            v: e.v + shift,
        }));
        Graph::from_sorted_edges(self.n + other.n, edges)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in self.vertices() {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push(Edge { u, v });
                }
            }
        }
        Graph::from_sorted_edges(self.n, edges)
    }

    /// True iff the graph is isomorphic to the path on its vertex count.
    pub fn is_path(&self) -> bool {
        self.n >= 1
            && self.edges.len() + 1 == self.n
            && self.max_degree() <= 2
            && self.is_connected()
    }
}

/// Shorthand for [`Graph::new`].
pub fn build_graph(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Graph> {
    Graph::new(n, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn triangle_has_degree_two_everywhere() {
        let g = build_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.vertices().all(|x| g.degree(x) == 2));
    }

    #[test]
    fn edgeless_graph() {
        let g = build_graph(2, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.connected_components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            build_graph(4, &[(0, 1), (0, 1)]),
            Err(Error::MultiEdge(Edge::new(0, 1).unwrap()))
        );
        assert_eq!(
            build_graph(4, &[(1, 0), (0, 1)]).unwrap_err().to_string(),
            "multi-edge 0-1"
        );
        assert_eq!(build_graph(3, &[(2, 2)]), Err(Error::Loop(2)));
        assert!(build_graph(3, &[(0, 3)])
            .unwrap_err()
            .to_string()
            .contains("vertex out of range"));
    }

    #[test]
    fn degree_profiles() {
        let p = named::complete(4).degree_profile();
        assert_eq!((p.max_degree, p.min_degree, p.is_regular), (3, 3, true));
        let p = named::star(3).degree_profile();
        assert_eq!((p.max_degree, p.min_degree, p.is_regular), (3, 1, false));
        let p = Graph::empty(0).degree_profile();
        assert_eq!((p.max_degree, p.min_degree, p.is_regular), (0, 0, true));
    }

    #[test]
    fn induced_subgraphs() {
        let (p, map) = named::cycle(5).induced_subgraph(&[3, 1, 2]).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(p, named::path(3));
        let (k3, _) = named::complete(5).induced_subgraph(&[0, 2, 4]).unwrap();
        assert_eq!(k3, named::complete(3));
        let (side, _) = named::complete_bipartite(4, 4)
            .induced_subgraph(&[0, 1, 2, 3])
            .unwrap();
        assert_eq!(side, Graph::empty(4));
        assert!(matches!(
            named::cycle(5).induced_subgraph(&[5]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn line_graphs() {
        assert_eq!(named::path(3).line_graph().0, named::path(2));
        assert_eq!(named::complete(3).line_graph().0, named::complete(3));
        let (l, map) = named::star(3).line_graph();
        assert_eq!(l, named::complete(3));
        assert_eq!(map, named::star(3).edges());
        assert_eq!(Graph::empty(4).line_graph().0, Graph::empty(0));
    }

    #[test]
    fn components() {
        let g = named::path(2).disjoint_union(&named::path(2));
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(named::cycle(6).connected_components().len(), 1);
        assert_eq!(Graph::empty(3).connected_components().len(), 3);
    }
}
