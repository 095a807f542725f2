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

//! Seeded random instances.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Restarts allowed before [`gen_k_regular`] gives up.
pub const REGULAR_RETRY_CAP: usize = 10_000;

/// The generator used for every seeded construction in the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random simple k-regular graph on n vertices, reproducible per seed.
///
/// Pairing model: each vertex contributes k points and points are matched
/// one pair at a time, never pairing two points that would form a loop or
/// repeat an edge. If the remaining points admit no such pair the attempt
/// restarts from scratch.
pub fn gen_k_regular(n: usize, k: usize, seed: u64) -> Result<Graph> {
    if (n * k) % 2 == 1 || (k >= n && !(n == 0 && k == 0)) {
        return Err(Error::InfeasibleDegreeSequence { n, k });
    }
    let mut rng = rng_from_seed(seed);
    for _ in 0..REGULAR_RETRY_CAP {
        if let Some(edges) = try_pairing(n, k, &mut rng) {
            return Ok(Graph::from_sorted_edges(n, edges.into_iter().collect()));
        }
    }
    Err(Error::GenerationFailed {
        attempts: REGULAR_RETRY_CAP,
    })
}

fn try_pairing(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Option<BTreeSet<Edge>> {
    let mut points: Vec<Vertex> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    points.shuffle(rng);
    let mut edges = BTreeSet::new();
    while let Some(a) = points.pop() {
        let fits = |b: Vertex| b != a && !edges.contains(&Edge::new(a, b).expect("distinct"));
        // a few blind draws first, then an exact scan
        let mut pick = None;
        for _ in 0..16 {
            let j = rng.gen_range(0..points.len());
            if fits(points[j]) {
                pick = Some(j);
                break;
            }
        }
        if pick.is_none() {
            let options: Vec<usize> = (0..points.len()).filter(|&j| fits(points[j])).collect();
            if options.is_empty() {
                return None;
            }
            pick = Some(options[rng.gen_range(0..options.len())]);
        }
        let b = points.swap_remove(pick.expect("chosen"));
        edges.insert(Edge::new(a, b).expect("distinct"));
    }
    Some(edges)
}

/// An Erdős–Rényi graph G(n, p).
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(Edge::new(u, v).expect("distinct"));
            }
        }
    }
    Graph::from_sorted_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn forced_k5() {
        for seed in 0..5 {
            assert_eq!(gen_k_regular(5, 4, seed).unwrap(), named::complete(5));
        }
    }

    #[test]
    fn cubic_on_six() {
        let g = gen_k_regular(6, 3, 1).unwrap();
        let p = g.degree_profile();
        assert_eq!((p.max_degree, p.min_degree, p.is_regular), (3, 3, true));
    }

    #[test]
    fn infeasible_sequences() {
        assert_eq!(
            gen_k_regular(5, 3, 0),
            Err(Error::InfeasibleDegreeSequence { n: 5, k: 3 })
        );
        assert!(gen_k_regular(4, 4, 0).is_err());
        assert_eq!(gen_k_regular(3, 0, 0).unwrap(), Graph::empty(3));
    }

    #[test]
    fn reproducible_per_seed() {
        assert_eq!(
            gen_k_regular(20, 5, 42).unwrap(),
            gen_k_regular(20, 5, 42).unwrap()
        );
        let a = gen_k_regular(40, 3, 1).unwrap();
        let b = gen_k_regular(40, 3, 2).unwrap();
        assert!(a.is_regular_of_degree(3) && b.is_regular_of_degree(3));
        assert_ne!(a, b);
    }

    #[test]
    fn dense_regular_graphs() {
        for (n, k) in [(8, 6), (9, 6), (10, 6), (7, 6), (12, 10)] {
            assert!(gen_k_regular(n, k, 3).unwrap().is_regular_of_degree(k));
        }
    }
}
