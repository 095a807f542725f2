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

//! Standard graph families used throughout tests and examples.

use crate::graph::{Edge, Graph, Vertex};

fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    let mut edges: Vec<Edge> = pairs
        .into_iter()
        .map(|(a, b)| Edge::new(a, b).expect("family generators never emit loops"))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::from_sorted_edges(n, edges)
}

/// K_n.
pub fn complete(n: usize) -> Graph {
    from_pairs(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// P_n, vertices in path order.
pub fn path(n: usize) -> Graph {
    from_pairs(n, (1..n).map(|v| (v - 1, v)))
}

/// C_n for n >= 3, vertices in cyclic order.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    from_pairs(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// K_{a,b} with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    from_pairs(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

/// K_{1,s} with centre 0.
pub fn star(s: usize) -> Graph {
    complete_bipartite(1, s)
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    from_pairs(10, outer.chain(spokes).chain(inner))
}

/// A centre (vertex 0) with one pendant path per entry of `legs`.
pub fn spider(legs: &[usize]) -> Graph {
    let n = 1 + legs.iter().sum::<usize>();
    let mut pairs = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            pairs.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    from_pairs(n, pairs)
}

/// Disjoint union of paths with the given vertex counts.
pub fn linear_forest(sizes: &[usize]) -> Graph {
    sizes
        .iter()
        .fold(Graph::empty(0), |acc, &s| acc.disjoint_union(&path(s)))
}
