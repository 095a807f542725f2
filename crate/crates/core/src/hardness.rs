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

//! Claw-free hardness gadgets.
//!
//! [`kneven_colouring`] produces a k-edge-colouring of K_k (k even) whose
//! vertices split into pairs that miss a common colour, one colour per pair.
//! [`build_claw_free_instance`] replaces each vertex of a k-regular graph by
//! a gadget made of two k-cliques and a hub, giving a k-regular claw-free
//! graph that is k-edge-colourable exactly when the source is.
//! [`lift_colouring`] and [`extract_colouring`] move colourings across.
//!
//! # Gadget layout
//!
//! Source vertex `v` owns the id block `v*(2k+1) .. (v+1)*(2k+1)`. With
//! `l = k/2` and `base = v*(2k+1)`:
//!
//! | ids                         | role                                  |
//! |-----------------------------|---------------------------------------|
//! | `base + 2i`, `i < l`        | port `v_{i+1}` in the first clique    |
//! | `base + 2i + 1`, `i < l`    | primed `v'_{i+1}` in the first clique |
//! | `base + k + 2i`, `i < l`    | port `v_{l+i+1}` in the second clique |
//! | `base + k + 2i + 1`, `i < l`| primed `v'_{l+i+1}`                   |
//! | `base + 2k`                 | hub `w`                               |
//!
//! Each clique is the contiguous range of `k` ids. The edges at `v`, sorted
//! by neighbour id, are carried by ports `v_1, v_2, ...` in that order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::colouring::{
    exact_with_blocked, missed_colours, validate_colouring, Colour, EdgeColouring, ExactOutcome,
    Validation,
};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::named;
use crate::recognition::is_claw_free;

const KNEVEN_SEARCH_BUDGET: u64 = 50_000_000;

/// A k-edge-colouring of K_k with paired missed colours.
///
/// Pair `i` is `pairs[i]`; both its vertices miss exactly
/// `pair_missed[i]`, and no other vertex misses that colour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuredKkColouring {
    pub k: usize,
    pub colouring: EdgeColouring,
    pub pairs: Vec<(Vertex, Vertex)>,
    pub pair_missed: Vec<Colour>,
}

impl StructuredKkColouring {
    /// Verifies every structural property, independent of how the colouring
    /// was produced.
    pub fn check(&self) -> Result<()> {
        let k = self.k;
        let fail = |msg: String| {
            Err(Error::Invariant(format!(
                "structured K_{k} colouring: {msg}"
            )))
        };
        let kk = named::complete(k);
        if self.colouring.k() != k {
            return fail(format!("colouring uses palette {}", self.colouring.k()));
        }
        if let Validation::Conflict(c) = validate_colouring(&kk, &self.colouring)? {
            return fail(format!("not proper at vertex {}", c.vertex));
        }
        if self.pairs.len() != k / 2 || self.pair_missed.len() != k / 2 {
            return fail("wrong number of pairs".into());
        }
        let mut covered = vec![false; k];
        for &(a, b) in &self.pairs {
            for x in [a, b] {
                if x >= k || covered[x] {
                    return fail(format!("pairs do not partition the vertices (vertex {x})"));
                }
                covered[x] = true;
            }
        }
        let mut missers: BTreeMap<Colour, Vec<Vertex>> = BTreeMap::new();
        for v in 0..k {
            let missed = missed_colours(&kk, &self.colouring, v)?;
            if missed.len() != 1 {
                return fail(format!("vertex {v} misses {} colours", missed.len()));
            }
            missers.entry(*missed.first().unwrap()).or_default().push(v);
        }
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            let colour = self.pair_missed[i];
            let mut expected = vec![a, b];
            expected.sort_unstable();
            if missers.get(&colour) != Some(&expected) {
                return fail(format!(
                    "colour {colour} is missed by {:?}, expected exactly pair {i}",
                    missers.get(&colour)
                ));
            }
        }
        Ok(())
    }

    /// Colour of the edge `ab` of K_k.
    pub fn colour(&self, a: Vertex, b: Vertex) -> Colour {
        self.colouring.colour_of(a, b).expect("complete graph edge")
    }
}

/// Builds the structured colouring of K_k for even `k >= 2`.
///
/// Pair `i` is `(2i, 2i+1)`. Colours `1..=k/2` form perfect matchings and
/// colour `k/2 + 1 + i` is the one missed by pair `i`.
///
/// For `k ≡ 2 (mod 4)` the colouring is assembled from a near-1-factorization
/// of the complete graph on the `k/2` pairs: every near-perfect matching of
/// pairs yields one class made of parallel edges (missing the unmatched pair)
/// and one perfect class made of crossing edges plus the unmatched pair's own
/// edge. For `k ≡ 0 (mod 4)` the number of pairs is even, no
/// near-1-factorization of the pairs exists, and the colouring is found by
/// the exact search with each pair's missed colour forbidden at its vertices.
pub fn kneven_colouring(k: usize) -> Result<StructuredKkColouring> {
    if k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    let half = k / 2;
    let pairs: Vec<(Vertex, Vertex)> = (0..half).map(|i| (2 * i, 2 * i + 1)).collect();
    let pair_missed: Vec<Colour> = (0..half).map(|i| half + 1 + i).collect();

    let colouring = if half % 2 == 1 {
        pair_factorization_colouring(k)
    } else {
        let mut blocked = vec![0u64; k];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            blocked[a] = 1 << (pair_missed[i] - 1);
            blocked[b] = 1 << (pair_missed[i] - 1);
        }
        match exact_with_blocked(&named::complete(k), k, &blocked, KNEVEN_SEARCH_BUDGET)? {
            ExactOutcome::Colourable { colouring, .. } => colouring,
            other => {
                return Err(Error::ConstructionFailed(format!(
                    "no structured colouring of K_{k} found ({} nodes)",
                    other.nodes()
                )))
            }
        }
    };

    let structured = StructuredKkColouring {
        k,
        colouring,
        pairs,
        pair_missed,
    };
    structured.check()?;
    Ok(structured)
}

/// Explicit construction for an odd number of pairs.
fn pair_factorization_colouring(k: usize) -> EdgeColouring {
    let half = k / 2;
    debug_assert!(half % 2 == 1);
    let mut c = EdgeColouring::new(k);
    let mut put = |a: Vertex, b: Vertex, colour: Colour| {
        c.set(Edge::new(a, b).expect("distinct"), colour);
    };
    for i in 0..half {
        let perfect = i + 1;
        let near = half + 1 + i;
        // round-robin near-perfect matching of the pairs, leaving pair i out
        for j in 1..=(half - 1) / 2 {
            let p = (i + j) % half;
            let q = (i + half - j) % half;
            put(2 * p, 2 * q, near);
            put(2 * p + 1, 2 * q + 1, near);
            put(2 * p, 2 * q + 1, perfect);
            put(2 * p + 1, 2 * q, perfect);
        }
        put(2 * i, 2 * i + 1, perfect);
    }
    c
}

/// The vertices of gadget H(v).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gadget {
    pub source: Vertex,
    /// `v_1 .. v_k`; the first half lies in the first clique.
    pub ports: Vec<Vertex>,
    /// `v'_1 .. v'_k`, aligned with `ports`.
    pub primed: Vec<Vertex>,
    pub hub: Vertex,
    pub first_clique: Vec<Vertex>,
    pub second_clique: Vec<Vertex>,
}

impl Gadget {
    fn at(source: Vertex, k: usize) -> Gadget {
        let base = source * (2 * k + 1);
        let half = k / 2;
        let mut ports = Vec::with_capacity(k);
        let mut primed = Vec::with_capacity(k);
        for offset in [0, k] {
            for i in 0..half {
                ports.push(base + offset + 2 * i);
                primed.push(base + offset + 2 * i + 1);
            }
        }
        Gadget {
            source,
            ports,
            primed,
            hub: base + 2 * k,
            first_clique: (base..base + k).collect(),
            second_clique: (base + k..base + 2 * k).collect(),
        }
    }
}

/// The claw-free instance built from a k-regular source graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    #[serde(skip)]
    pub source: Graph,
    pub k: usize,
    #[serde(skip)]
    pub result: Graph,
    pub gadgets: Vec<Gadget>,
    /// `(source edge, result edge)` in source edge order.
    pub edge_map: Vec<(Edge, Edge)>,
}

impl Reduction {
    /// Gadget-side image of source edge index `e`.
    pub fn image(&self, e: usize) -> Edge {
        self.edge_map[e].1
    }

    /// Re-checks the structural invariants of the result graph.
    pub fn check(&self) -> Result<()> {
        let k = self.k;
        let n = self.source.vertex_count();
        let g = &self.result;
        if g.vertex_count() != n * (2 * k + 1) {
            return Err(Error::Invariant(format!(
                "reduction has {} vertices, expected {}",
                g.vertex_count(),
                n * (2 * k + 1)
            )));
        }
        if g.edge_count() != n * k * k + n * k / 2 {
            return Err(Error::Invariant(format!(
                "reduction has {} edges, expected {}",
                g.edge_count(),
                n * k * k + n * k / 2
            )));
        }
        if let Some(v) = g.vertices().find(|&v| g.degree(v) != k) {
            return Err(Error::Invariant(format!(
                "reduction vertex {v} has degree {}",
                g.degree(v)
            )));
        }
        if let Some(w) = is_claw_free(g).witness() {
            return Err(Error::Invariant(format!("reduction contains a claw {w:?}")));
        }
        let mut port_use = vec![0usize; g.vertex_count()];
        for (i, &(src, img)) in self.edge_map.iter().enumerate() {
            if self.source.edges()[i] != src || !g.has_edge(img.u(), img.v()) {
                return Err(Error::Invariant(format!(
                    "edge map entry {i} is inconsistent"
                )));
            }
            port_use[img.u()] += 1;
            port_use[img.v()] += 1;
        }
        for gadget in &self.gadgets {
            for &p in &gadget.ports {
                if port_use[p] != 1 {
                    return Err(Error::Invariant(format!(
                        "port {p} carries {} mapped edges",
                        port_use[p]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Replaces every vertex of the k-regular graph `g` by its gadget and
/// realises each source edge as an edge between two ports.
pub fn build_claw_free_instance(g: &Graph, k: usize) -> Result<Reduction> {
    if k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    if k < 4 {
        return Err(Error::KTooSmall { k, min: 4 });
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) != k) {
        return Err(Error::RegularityViolated {
            vertex: v,
            degree: g.degree(v),
            k,
        });
    }
    let gadgets: Vec<Gadget> = g.vertices().map(|v| Gadget::at(v, k)).collect();
    let mut edges = Vec::with_capacity(g.vertex_count() * k * k + g.edge_count());
    for gadget in &gadgets {
        for clique in [&gadget.first_clique, &gadget.second_clique] {
            for (i, &a) in clique.iter().enumerate() {
                for &b in &clique[i + 1..] {
                    edges.push(Edge::new(a, b)?);
                }
            }
        }
        for &p in &gadget.primed {
            edges.push(Edge::new(p, gadget.hub)?);
        }
    }
    let port_of = |v: Vertex, towards: Vertex| -> Vertex {
        let pos = g
            .neighbours(v)
            .binary_search(&towards)
            .expect("adjacent in source");
        gadgets[v].ports[pos]
    };
    let mut edge_map = Vec::with_capacity(g.edge_count());
    for &e in g.edges() {
        let (u, v) = e.ends();
        let image = Edge::new(port_of(u, v), port_of(v, u))?;
        edges.push(image);
        edge_map.push((e, image));
    }
    edges.sort_unstable();
    let reduction = Reduction {
        source: g.clone(),
        k,
        result: Graph::from_sorted_edges(g.vertex_count() * (2 * k + 1), edges),
        gadgets,
        edge_map,
    };
    reduction.check()?;
    Ok(reduction)
}

/// Turns a proper k-edge-colouring of the source into one of the result.
///
/// Mapped edges keep their colour. In each clique the structured colouring
/// of K_k is renamed so that pair `i`'s missed colour becomes the colour of
/// the mapped edge at port `i`; the primed partner then also misses that
/// colour and its hub edge takes it.
pub fn lift_colouring(r: &Reduction, c: &EdgeColouring) -> Result<EdgeColouring> {
    let k = r.k;
    let source_colouring = c.clone().with_k(k);
    match validate_colouring(&r.source, &source_colouring) {
        Ok(Validation::Proper) => {}
        Ok(Validation::Conflict(conflict)) => {
            return Err(Error::InvalidSourceColouring(format!(
                "edges {} and {} share colour {} at vertex {}",
                conflict.first, conflict.second, conflict.colour, conflict.vertex
            )))
        }
        Err(e) => return Err(Error::InvalidSourceColouring(e.to_string())),
    }
    let structured = kneven_colouring(k)?;
    let half = k / 2;
    let mut lifted = EdgeColouring::new(k);
    for (i, &(src, img)) in r.edge_map.iter().enumerate() {
        debug_assert_eq!(r.source.edges()[i], src);
        lifted.set(img, source_colouring.get(src).expect("validated"));
    }
    for (v, gadget) in r.gadgets.iter().enumerate() {
        let pendant: Vec<Colour> = r
            .source
            .neighbours(v)
            .iter()
            .map(|&u| source_colouring.colour_of(u, v).expect("validated"))
            .collect();
        for (side, clique) in [&gadget.first_clique, &gadget.second_clique]
            .into_iter()
            .enumerate()
        {
            let targets = &pendant[side * half..(side + 1) * half];
            let rename = colour_renaming(&structured, targets);
            for a in 0..k {
                for b in a + 1..k {
                    let colour = rename[structured.colour(a, b)];
                    lifted.set(Edge::new(clique[a], clique[b])?, colour);
                }
            }
            for (i, &colour) in targets.iter().enumerate() {
                let primed = gadget.primed[side * half + i];
                lifted.set(Edge::new(primed, gadget.hub)?, colour);
            }
        }
    }
    match validate_colouring(&r.result, &lifted)? {
        Validation::Proper => Ok(lifted),
        Validation::Conflict(conflict) => Err(Error::Invariant(format!(
            "lifted colouring conflicts at vertex {}",
            conflict.vertex
        ))),
    }
}

/// A bijection on `1..=k` (indexed by old colour) sending pair `i`'s missed
/// colour to `targets[i]` and the remaining colours, in order, onto the
/// remaining targets.
fn colour_renaming(s: &StructuredKkColouring, targets: &[Colour]) -> Vec<Colour> {
    let k = s.k;
    let mut rename = vec![0; k + 1];
    let mut taken = vec![false; k + 1];
    for (i, &target) in targets.iter().enumerate() {
        rename[s.pair_missed[i]] = target;
        taken[target] = true;
    }
    let mut spare = (1..=k).filter(|&c| !taken[c]);
    for (old, slot) in rename.iter_mut().enumerate().skip(1) {
        if !s.pair_missed.contains(&old) {
            *slot = spare.next().expect("bijection");
        }
    }
    rename
}

/// Restricts a proper k-edge-colouring of the result to the mapped edges.
///
/// Within a gadget, a hub colour that no port of the same clique carries
/// would need a perfect matching on the k - 1 remaining clique vertices, so
/// each side's hub colours are exactly its port colours and the restriction
/// is proper. The output is validated regardless.
pub fn extract_colouring(r: &Reduction, c: &EdgeColouring) -> Result<EdgeColouring> {
    let k = r.k;
    let target = c.clone().with_k(k);
    match validate_colouring(&r.result, &target) {
        Ok(Validation::Proper) => {}
        Ok(Validation::Conflict(conflict)) => {
            return Err(Error::InvalidTargetColouring(format!(
                "edges {} and {} share colour {} at vertex {}",
                conflict.first, conflict.second, conflict.colour, conflict.vertex
            )))
        }
        Err(e) => return Err(Error::InvalidTargetColouring(e.to_string())),
    }
    let mut extracted = EdgeColouring::new(k);
    for &(src, img) in &r.edge_map {
        extracted.set(src, target.get(img).expect("validated"));
    }
    match validate_colouring(&r.source, &extracted) {
        Ok(Validation::Proper) => Ok(extracted),
        Ok(Validation::Conflict(conflict)) => Err(Error::ExtractionSoundness(format!(
            "restricted colouring conflicts at source vertex {}",
            conflict.vertex
        ))),
        Err(e) => Err(Error::ExtractionSoundness(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::{exact_k_edge_colourable, DEFAULT_BUDGET};

    #[test]
    fn k2_single_edge() {
        let s = kneven_colouring(2).unwrap();
        assert_eq!(s.pairs, vec![(0, 1)]);
        assert_eq!(s.colour(0, 1), 1);
        assert_eq!(s.pair_missed, vec![2]);
    }

    #[test]
    fn k4_class_shapes() {
        let s = kneven_colouring(4).unwrap();
        let mut sizes: Vec<usize> = (1..=4)
            .map(|c| s.colouring.iter().filter(|&(_, x)| x == c).count())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2]);
        // the class missed by one pair is the other pair's edge
        for (i, &(a, b)) in s.pairs.iter().enumerate() {
            let (c, d) = s.pairs[1 - i];
            assert_eq!(s.colour(c, d), s.pair_missed[i]);
            assert_ne!(s.colour(a, b), s.pair_missed[i]);
        }
    }

    #[test]
    fn k6_has_three_perfect_classes() {
        let s = kneven_colouring(6).unwrap();
        let perfect = (1..=6)
            .filter(|&c| s.colouring.iter().filter(|&(_, x)| x == c).count() == 3)
            .count();
        assert_eq!(perfect, 3);
    }

    #[test]
    fn kneven_rejects_bad_k() {
        assert_eq!(kneven_colouring(5), Err(Error::OddK(5)));
        assert!(matches!(kneven_colouring(0), Err(Error::KTooSmall { .. })));
    }

    #[test]
    fn checker_catches_tampering() {
        let mut s = kneven_colouring(6).unwrap();
        s.pair_missed.swap(0, 1);
        assert!(s.check().is_err());
        let mut s = kneven_colouring(6).unwrap();
        let e = Edge::new(0, 1).unwrap();
        let c = s.colouring.get(e).unwrap();
        s.colouring.set(e, c % 6 + 1);
        assert!(s.check().is_err());
    }

    #[test]
    fn k5_gadget_sizes() {
        let r = build_claw_free_instance(&named::complete(5), 4).unwrap();
        assert_eq!(r.result.vertex_count(), 45);
        assert_eq!(r.result.edge_count(), 90);
        assert!(r.result.is_regular_of_degree(4));
        assert!(is_claw_free(&r.result).is_free());
    }

    #[test]
    fn k44_gadget_sizes() {
        let r = build_claw_free_instance(&named::complete_bipartite(4, 4), 4).unwrap();
        assert_eq!(r.result.vertex_count(), 72);
        assert_eq!(r.result.edge_count(), 8 * 16 + 16);
    }

    #[test]
    fn reduction_preconditions() {
        assert!(matches!(
            build_claw_free_instance(&named::complete(4), 4),
            Err(Error::RegularityViolated { .. })
        ));
        assert!(matches!(
            build_claw_free_instance(&named::cycle(4), 2),
            Err(Error::KTooSmall { k: 2, .. })
        ));
        assert_eq!(
            build_claw_free_instance(&named::complete(4), 3),
            Err(Error::OddK(3))
        );
    }

    #[test]
    fn port_assignment_follows_neighbour_order() {
        let g = named::complete(5);
        let r = build_claw_free_instance(&g, 4).unwrap();
        // edge 0-1: port 1 of gadget 0 (neighbour index 0) and port 1 of gadget 1
        let img = r.image(g.edge_index(0, 1).unwrap());
        assert_eq!(
            img,
            Edge::new(r.gadgets[0].ports[0], r.gadgets[1].ports[0]).unwrap()
        );
        // edge 3-4: gadget 3's last port, gadget 4's last port
        let img = r.image(g.edge_index(3, 4).unwrap());
        assert_eq!(
            img,
            Edge::new(r.gadgets[3].ports[3], r.gadgets[4].ports[3]).unwrap()
        );
    }

    #[test]
    fn lift_and_extract_round_trip() {
        let g = named::complete_bipartite(4, 4);
        let r = build_claw_free_instance(&g, 4).unwrap();
        let c = exact_k_edge_colourable(&g, 4, DEFAULT_BUDGET)
            .unwrap()
            .colouring()
            .unwrap()
            .clone();
        let lifted = lift_colouring(&r, &c).unwrap();
        assert!(validate_colouring(&r.result, &lifted).unwrap().is_proper());
        assert_eq!(extract_colouring(&r, &lifted).unwrap(), c);
    }

    #[test]
    fn transfers_reject_improper_input() {
        let g = named::complete_bipartite(4, 4);
        let r = build_claw_free_instance(&g, 4).unwrap();
        let mono = EdgeColouring::from_edge_vec(&g, 4, &vec![1; g.edge_count()]);
        assert!(matches!(
            lift_colouring(&r, &mono),
            Err(Error::InvalidSourceColouring(_))
        ));

        let c = exact_k_edge_colourable(&g, 4, DEFAULT_BUDGET)
            .unwrap()
            .colouring()
            .unwrap()
            .clone();
        let mut lifted = lift_colouring(&r, &c).unwrap();
        let clique_edge =
            Edge::new(r.gadgets[0].first_clique[0], r.gadgets[0].first_clique[1]).unwrap();
        let old = lifted.get(clique_edge).unwrap();
        lifted.set(clique_edge, old % 4 + 1);
        assert!(matches!(
            extract_colouring(&r, &lifted),
            Err(Error::InvalidTargetColouring(_))
        ));
    }
}
