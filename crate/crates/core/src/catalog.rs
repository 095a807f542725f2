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

//! Isomorphism-free catalogues of small graphs.
//!
//! Graphs are grown one vertex at a time. Every graph on n vertices is an
//! (n-1)-vertex graph plus one vertex, and every connected graph on n >= 2
//! vertices has a vertex whose removal leaves it connected, so extending
//! each catalogued graph by every possible neighbourhood reaches all
//! graphs of the class as long as the filter is closed under deleting such
//! a vertex (any hereditary property qualifies). Duplicates are removed with
//! a colour-refinement invariant followed by an exact isomorphism test.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::graph::{Edge, Graph};
use crate::recognition::are_isomorphic;

/// Largest order the catalogue will build.
pub const MAX_ORDER: usize = 12;

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// An isomorphism invariant from iterated colour refinement, seeded with
/// degrees and per-vertex triangle counts.
pub fn refinement_invariant(g: &Graph) -> u64 {
    let mut colours: Vec<u64> = g
        .vertices()
        .map(|v| {
            let nb = g.neighbours(v);
            let triangles = nb
                .iter()
                .enumerate()
                .map(|(i, &a)| nb[i + 1..].iter().filter(|&&b| g.has_edge(a, b)).count())
                .sum::<usize>();
            hash_of(&(nb.len(), triangles))
        })
        .collect();
    for _ in 0..g.vertex_count() {
        let next: Vec<u64> = g
            .vertices()
            .map(|v| {
                let mut around: Vec<u64> = g.neighbours(v).iter().map(|&u| colours[u]).collect();
                around.sort_unstable();
                hash_of(&(colours[v], around))
            })
            .collect();
        colours = next;
    }
    colours.sort_unstable();
    hash_of(&(g.vertex_count(), g.edge_count(), colours))
}

/// Non-isomorphic graphs with 1..=`max_order` vertices satisfying `keep`,
/// grouped by order (`result[n - 1]` holds the n-vertex graphs).
///
/// With `connected` set only connected graphs are produced. `keep` must be
/// hereditary for the result to be complete.
pub fn graphs_up_to_iso(
    max_order: usize,
    connected: bool,
    keep: impl Fn(&Graph) -> bool,
) -> Vec<Vec<Graph>> {
    assert!(
        max_order <= MAX_ORDER,
        "catalogue limited to {MAX_ORDER} vertices"
    );
    let mut levels: Vec<Vec<Graph>> = Vec::new();
    if max_order == 0 {
        return levels;
    }
    let single = Graph::empty(1);
    levels.push(if keep(&single) {
        vec![single]
    } else {
        Vec::new()
    });
    for n in 2..=max_order {
        let mut level: Vec<Graph> = Vec::new();
        let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
        let first_mask = usize::from(connected);
        for parent in &levels[n - 2] {
            for mask in first_mask..1usize << (n - 1) {
                let mut edges: Vec<Edge> = parent.edges().to_vec();
                edges.extend(
                    (0..n - 1)
                        .filter(|&u| mask >> u & 1 == 1)
                        .map(|u| Edge::new(u, n - 1).expect("distinct")),
                );
                edges.sort_unstable();
                let child = Graph::from_sorted_edges(n, edges);
                if !keep(&child) {
                    continue;
                }
                let key = refinement_invariant(&child);
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().any(|&i| are_isomorphic(&level[i], &child)) {
                    continue;
                }
                bucket.push(level.len());
                level.push(child);
            }
        }
        levels.push(level);
    }
    levels
}
