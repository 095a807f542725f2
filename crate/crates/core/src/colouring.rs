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

//! Edge colourings: validation, the exact k-edge-colourability search,
//! the constructive (Δ+1)-colouring, and the chromatic index.
//!
//! Colours are `1..=k` throughout the public API.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::rng_from_seed;
use crate::graph::{Edge, Graph, Vertex};

pub type Colour = usize;

/// Default decision-node budget for the exact search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// An assignment of colours `1..=k` to edges. Properness is not assumed;
/// see [`validate_colouring`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeColouring {
    k: usize,
    colours: BTreeMap<Edge, Colour>,
}

impl EdgeColouring {
    pub fn new(k: usize) -> Self {
        EdgeColouring {
            k,
            colours: BTreeMap::new(),
        }
    }

    pub fn from_map(k: usize, colours: BTreeMap<Edge, Colour>) -> Self {
        EdgeColouring { k, colours }
    }

    /// Colours listed in the order of `g.edges()`.
    pub fn from_edge_vec(g: &Graph, k: usize, colours: &[Colour]) -> Self {
        assert_eq!(colours.len(), g.edge_count());
        EdgeColouring {
            k,
            colours: g
                .edges()
                .iter()
                .copied()
                .zip(colours.iter().copied())
                .collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn set(&mut self, edge: Edge, colour: Colour) {
        self.colours.insert(edge, colour);
    }

    pub fn get(&self, edge: Edge) -> Option<Colour> {
        self.colours.get(&edge).copied()
    }

    pub fn colour_of(&self, a: Vertex, b: Vertex) -> Option<Colour> {
        Edge::new(a, b).ok().and_then(|e| self.get(e))
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Colour)> + '_ {
        self.colours.iter().map(|(&e, &c)| (e, c))
    }

    /// Distinct colours actually used.
    pub fn colours_used(&self) -> BTreeSet<Colour> {
        self.colours.values().copied().collect()
    }

    /// Applies `f` to every colour.
    pub fn map_colours(&self, f: impl Fn(Colour) -> Colour) -> Self {
        EdgeColouring {
            k: self.k,
            colours: self.colours.iter().map(|(&e, &c)| (e, f(c))).collect(),
        }
    }

    pub fn as_map(&self) -> &BTreeMap<Edge, Colour> {
        &self.colours
    }
}

/// Two equally coloured edges meeting at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub vertex: Vertex,
    pub first: Edge,
    pub second: Edge,
    pub colour: Colour,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Validation {
    Proper,
    Conflict(Conflict),
}

impl Validation {
    pub fn is_proper(&self) -> bool {
        matches!(self, Validation::Proper)
    }
}

/// Checks that `c` colours exactly the edges of `g` with colours in
/// `1..=c.k()` and that no two edges at a vertex share a colour.
///
/// Missing edges, foreign edges and out-of-range colours are errors; an
/// improper but complete colouring is reported as [`Validation::Conflict`]
/// at the smallest offending vertex.
pub fn validate_colouring(g: &Graph, c: &EdgeColouring) -> Result<Validation> {
    for (e, colour) in c.iter() {
        if !g.has_edge(e.u(), e.v()) {
            return Err(Error::UnknownEdge(e));
        }
        if colour == 0 || colour > c.k() {
            return Err(Error::ColourOutOfRange {
                edge: e,
                colour,
                k: c.k(),
            });
        }
    }
    if let Some(&e) = g.edges().iter().find(|&&e| c.get(e).is_none()) {
        return Err(Error::IncompleteColouring(e));
    }
    for x in g.vertices() {
        let mut seen: BTreeMap<Colour, Edge> = BTreeMap::new();
        for &y in g.neighbours(x) {
            let e = Edge::new(x, y)?;
            let colour = c.get(e).expect("checked complete");
            if let Some(&first) = seen.get(&colour) {
                return Ok(Validation::Conflict(Conflict {
                    vertex: x,
                    first,
                    second: e,
                    colour,
                }));
            }
            seen.insert(colour, e);
        }
    }
    Ok(Validation::Proper)
}

/// Colours in `1..=k` that appear on no edge at `v`.
pub fn missed_colours(g: &Graph, c: &EdgeColouring, v: Vertex) -> Result<BTreeSet<Colour>> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        });
    }
    if let Validation::Conflict(conflict) = validate_colouring(g, c)? {
        return Err(Error::InvalidColouring(format!(
            "edges {} and {} share colour {} at vertex {}",
            conflict.first, conflict.second, conflict.colour, conflict.vertex
        )));
    }
    let mut missed: BTreeSet<Colour> = (1..=c.k()).collect();
    for &y in g.neighbours(v) {
        missed.remove(&c.colour_of(v, y).expect("complete"));
    }
    Ok(missed)
}

/// Result of the exact search. `nodes` counts colour assignments tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Colourable {
        colouring: EdgeColouring,
        nodes: u64,
    },
    /// The search space was exhausted: no proper k-edge-colouring exists.
    NotColourable {
        nodes: u64,
    },
    BudgetExceeded {
        nodes: u64,
    },
}

impl ExactOutcome {
    pub fn colouring(&self) -> Option<&EdgeColouring> {
        match self {
            ExactOutcome::Colourable { colouring, .. } => Some(colouring),
            _ => None,
        }
    }

    pub fn is_colourable(&self) -> bool {
        matches!(self, ExactOutcome::Colourable { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, ExactOutcome::NotColourable { .. })
    }

    pub fn nodes(&self) -> u64 {
        match self {
            ExactOutcome::Colourable { nodes, .. }
            | ExactOutcome::NotColourable { nodes }
            | ExactOutcome::BudgetExceeded { nodes } => *nodes,
        }
    }
}

/// Decides whether `g` has a proper k-edge-colouring by exhaustive search.
///
/// A "no" is only reported when the search completed, so it is a proof.
/// Running out of `budget` decision nodes is reported separately.
pub fn exact_k_edge_colourable(g: &Graph, k: usize, budget: u64) -> Result<ExactOutcome> {
    exact_with_blocked(g, k, &vec![0; g.vertex_count()], budget)
}

/// The exact search with some colours forbidden at some vertices.
/// `blocked[v]` is a bitmask over colours, bit `c - 1` for colour `c`.
pub(crate) fn exact_with_blocked(
    g: &Graph,
    k: usize,
    blocked: &[u64],
    budget: u64,
) -> Result<ExactOutcome> {
    if k == 0 {
        return Err(Error::ZeroColours);
    }
    if g.edge_count() == 0 {
        return Ok(ExactOutcome::Colourable {
            colouring: EdgeColouring::new(k),
            nodes: 0,
        });
    }
    if g.max_degree() > k {
        return Ok(ExactOutcome::NotColourable { nodes: 0 });
    }
    if k > 64 {
        return Err(Error::TooManyColours(k));
    }
    // Geometrically growing node caps. Even phases break ties between
    // equally constrained edges by index, odd phases by a seeded
    // permutation. Each phase is a complete search, so exhausting one
    // proves "no".
    let mut spent = 0u64;
    let mut cap = RESTART_BASE;
    for phase in 0u64.. {
        let phase_budget = cap.min(budget - spent);
        let rank = edge_rank(g.edge_count(), phase);
        let mut search = Search::new(g, k, blocked, phase_budget, rank);
        let step = search.run();
        spent += search.nodes;
        match step {
            Step::Found => {
                let colours: Vec<Colour> = search.colour.iter().map(|&c| c as Colour).collect();
                return Ok(ExactOutcome::Colourable {
                    colouring: EdgeColouring::from_edge_vec(g, k, &colours),
                    nodes: spent,
                });
            }
            Step::Exhausted => return Ok(ExactOutcome::NotColourable { nodes: spent }),
            Step::OutOfBudget if spent >= budget => {
                return Ok(ExactOutcome::BudgetExceeded { nodes: spent })
            }
            Step::OutOfBudget => cap = cap.saturating_mul(2),
        }
    }
    unreachable!("phases end by success, exhaustion or budget")
}

/// Node cap of the first search phase.
const RESTART_BASE: u64 = 20_000;

/// Final tie-break among equally constrained edges: edge index in even
/// phases, a seeded permutation in odd ones.
fn edge_rank(m: usize, phase: u64) -> Vec<u32> {
    let mut rank: Vec<u32> = (0..m as u32).collect();
    if phase % 2 == 1 {
        rank.shuffle(&mut rng_from_seed(phase));
    }
    rank
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

/// Backtracking state. Colour `c` is bit `c - 1` in every mask; `colour`
/// holds 0 for uncoloured edges.
struct Search<'a> {
    g: &'a Graph,
    k: usize,
    all: u64,
    ends: Vec<(Vertex, Vertex)>,
    colour: Vec<u8>,
    used: Vec<u64>,
    coloured_at: Vec<usize>,
    // vertices whose degree plus blocked colours equals k must see every colour
    saturated: Vec<bool>,
    // colours blocked nowhere are interchangeable until first use
    interchangeable: u64,
    usage: Vec<usize>,
    uncoloured: usize,
    nodes: u64,
    budget: u64,
    rank: Vec<u32>,
    uf: Vec<usize>,
    comp_need: Vec<u32>,
    comp_slack: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize, blocked: &[u64], budget: u64, rank: Vec<u32>) -> Self {
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let used: Vec<u64> = blocked.iter().map(|b| b & all).collect();
        let any_blocked = used.iter().fold(0, |acc, b| acc | b);
        let saturated = g
            .vertices()
            .map(|v| g.degree(v) + used[v].count_ones() as usize == k)
            .collect();
        let n = g.vertex_count();
        Search {
            g,
            k,
            all,
            ends: g.edges().iter().map(|e| e.ends()).collect(),
            colour: vec![0; g.edge_count()],
            used,
            coloured_at: vec![0; n],
            saturated,
            interchangeable: all & !any_blocked,
            usage: vec![0; k + 1],
            uncoloured: g.edge_count(),
            nodes: 0,
            budget,
            rank,
            uf: vec![0; n],
            comp_need: vec![0; n],
            comp_slack: vec![false; n],
        }
    }

    fn assign(&mut self, e: usize, c: usize) {
        let (a, b) = self.ends[e];
        self.colour[e] = c as u8;
        let bit = 1u64 << (c - 1);
        self.used[a] |= bit;
        self.used[b] |= bit;
        self.coloured_at[a] += 1;
        self.coloured_at[b] += 1;
        self.usage[c] += 1;
        self.uncoloured -= 1;
    }

    fn unassign(&mut self, e: usize) {
        let (a, b) = self.ends[e];
        let c = self.colour[e] as usize;
        let bit = 1u64 << (c - 1);
        self.used[a] &= !bit;
        self.used[b] &= !bit;
        self.coloured_at[a] -= 1;
        self.coloured_at[b] -= 1;
        self.usage[c] -= 1;
        self.colour[e] = 0;
        self.uncoloured += 1;
    }

    fn available(&self, e: usize) -> u64 {
        let (a, b) = self.ends[e];
        self.all & !(self.used[a] | self.used[b])
    }

    fn run(&mut self) -> Step {
        // any proper colouring can be renamed so that the edges at one
        // maximum-degree vertex carry 1, 2, ..., deg
        if self.interchangeable == self.all {
            let root = self
                .g
                .vertices()
                .max_by_key(|&v| (self.g.degree(v), Reverse(v)))
                .expect("graph has edges");
            let incident = self.g.incident_edges(root).to_vec();
            for (i, e) in incident.into_iter().enumerate() {
                self.assign(e, i + 1);
            }
        }
        if !self.feasible() {
            return Step::Exhausted;
        }
        self.descend()
    }

    /// Most constrained uncoloured edge: fewest available colours, then
    /// most coloured incident edges, then largest degree sum, then rank.
    fn select(&self) -> Option<(usize, u64)> {
        type Key = (u32, Reverse<usize>, Reverse<usize>, u32);
        let mut best: Option<(usize, u64, Key)> = None;
        for e in 0..self.ends.len() {
            if self.colour[e] != 0 {
                continue;
            }
            let avail = self.available(e);
            let (a, b) = self.ends[e];
            let key = (
                avail.count_ones(),
                Reverse(self.coloured_at[a] + self.coloured_at[b]),
                Reverse(self.g.degree(a) + self.g.degree(b)),
                self.rank[e],
            );
            if best.as_ref().is_none_or(|(_, _, k)| key < *k) {
                best = Some((e, avail, key));
                if avail == 0 {
                    break;
                }
            }
        }
        best.map(|(e, avail, _)| (e, avail))
    }

    fn descend(&mut self) -> Step {
        let Some((e, avail)) = self.select() else {
            return Step::Found;
        };
        let mut fresh_tried = false;
        let mut rest = avail;
        while rest != 0 {
            let c = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            let bit = 1u64 << (c - 1);
            if self.interchangeable & bit != 0 && self.usage[c] == 0 {
                if fresh_tried {
                    continue;
                }
                fresh_tried = true;
            }
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            self.assign(e, c);
            if self.feasible() {
                match self.descend() {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
            self.unassign(e);
        }
        Step::Exhausted
    }

    /// Necessary conditions for extending the partial colouring.
    fn feasible(&mut self) -> bool {
        if self.uncoloured == 0 {
            return true;
        }
        let n = self.g.vertex_count();
        // each vertex must have enough distinct colours for its open edges
        for v in 0..n {
            let open = self.g.degree(v) - self.coloured_at[v];
            if open == 0 {
                continue;
            }
            let mut union = 0u64;
            for &e in self.g.incident_edges(v) {
                if self.colour[e] == 0 {
                    union |= self.available(e);
                }
            }
            if (union.count_ones() as usize) < open {
                return false;
            }
        }
        // each colour class is a matching: open edges cannot exceed the
        // number of further edges every class can still take
        let mut capacity = 0usize;
        for c in 1..=self.k {
            let bit = 1u64 << (c - 1);
            let free = (0..n)
                .filter(|&v| self.used[v] & bit == 0 && self.coloured_at[v] < self.g.degree(v))
                .count();
            capacity += free / 2;
        }
        if capacity < self.uncoloured {
            return false;
        }
        // a saturated vertex still missing colour c must get c from an open
        // edge; within a component of such edges with no other vertex able
        // to absorb c, the needy vertices must pair up
        for c in 1..=self.k {
            let bit = 1u64 << (c - 1);
            for v in 0..n {
                self.uf[v] = v;
                self.comp_need[v] = 0;
                self.comp_slack[v] = false;
            }
            for e in 0..self.ends.len() {
                if self.colour[e] != 0 {
                    continue;
                }
                let (a, b) = self.ends[e];
                if (self.used[a] | self.used[b]) & bit != 0 {
                    continue;
                }
                let ra = find(&mut self.uf, a);
                let rb = find(&mut self.uf, b);
                if ra != rb {
                    self.uf[ra] = rb;
                }
                for x in [a, b] {
                    if !self.saturated[x] {
                        self.comp_slack[x] = true;
                    }
                }
            }
            for v in 0..n {
                let r = find(&mut self.uf, v);
                if self.saturated[v] && self.used[v] & bit == 0 {
                    self.comp_need[r] += 1;
                }
                if self.comp_slack[v] && r != v {
                    self.comp_slack[r] = true;
                }
            }
            for v in 0..n {
                if self.uf[v] == v && self.comp_need[v] % 2 == 1 && !self.comp_slack[v] {
                    return false;
                }
            }
        }
        true
    }
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

/// A proper (Δ+1)-edge-colouring built by fan rotation and alternating
/// path inversion. The returned colouring has `k = Δ + 1`.
pub fn vizing_colouring(g: &Graph) -> Result<EdgeColouring> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let palette = g.max_degree() + 1;
    let mut state = FanColouring::new(g, palette);
    for e in 0..g.edge_count() {
        state.insert(e);
    }
    let colours: Vec<Colour> = state
        .colour
        .iter()
        .map(|c| c.expect("every edge coloured") + 1)
        .collect();
    Ok(EdgeColouring::from_edge_vec(g, palette, &colours))
}

/// Working state for the (Δ+1) construction; colours are `0..palette`.
struct FanColouring<'a> {
    g: &'a Graph,
    palette: usize,
    colour: Vec<Option<usize>>,
    // at[v][c] = edge of colour c at v
    at: Vec<Vec<Option<usize>>>,
}

impl<'a> FanColouring<'a> {
    fn new(g: &'a Graph, palette: usize) -> Self {
        FanColouring {
            g,
            palette,
            colour: vec![None; g.edge_count()],
            at: vec![vec![None; palette]; g.vertex_count()],
        }
    }

    fn is_free(&self, v: Vertex, c: usize) -> bool {
        self.at[v][c].is_none()
    }

    fn free_colour(&self, v: Vertex) -> usize {
        (0..self.palette)
            .find(|&c| self.is_free(v, c))
            .expect("degree < palette leaves a free colour")
    }

    fn set(&mut self, e: usize, c: Option<usize>) {
        let (a, b) = self.g.edges()[e].ends();
        if let Some(old) = self.colour[e] {
            self.at[a][old] = None;
            self.at[b][old] = None;
        }
        if let Some(new) = c {
            self.at[a][new] = Some(e);
            self.at[b][new] = Some(e);
        }
        self.colour[e] = c;
    }

    fn edge_between(&self, a: Vertex, b: Vertex) -> usize {
        self.g.edge_index(a, b).expect("adjacent")
    }

    fn is_fan(&self, u: Vertex, fan: &[Vertex]) -> bool {
        fan.windows(2)
            .all(|w| self.colour[self.edge_between(u, w[1])].is_some_and(|c| self.is_free(w[0], c)))
    }

    fn insert(&mut self, e: usize) {
        let (u, v) = self.g.edges()[e].ends();

        // maximal fan at u starting with the uncoloured edge uv
        let mut fan = vec![v];
        let mut in_fan = vec![false; self.g.vertex_count()];
        in_fan[v] = true;
        loop {
            let last = *fan.last().expect("non-empty");
            let next = self.g.neighbours(u).iter().copied().find(|&x| {
                !in_fan[x]
                    && self.colour[self.edge_between(u, x)].is_some_and(|c| self.is_free(last, c))
            });
            match next {
                Some(x) => {
                    in_fan[x] = true;
                    fan.push(x);
                }
                None => break,
            }
        }

        let c = self.free_colour(u);
        let d = self.free_colour(*fan.last().expect("non-empty"));

        // invert the cd-path starting at u (its first edge has colour d)
        if c != d {
            let mut path = Vec::new();
            let mut cur = u;
            let mut want = d;
            while let Some(edge) = self.at[cur][want] {
                path.push(edge);
                cur = self.g.edges()[edge].other(cur);
                want = if want == d { c } else { d };
            }
            for &edge in &path {
                self.set(edge, None);
            }
            for (i, &edge) in path.iter().enumerate() {
                // path alternates d, c, d, ...; swap
                self.set(edge, Some(if i % 2 == 0 { c } else { d }));
            }
        }

        let w = (0..fan.len())
            .find(|&i| self.is_free(fan[i], d) && self.is_fan(u, &fan[..=i]))
            .expect("a fan prefix ending at a vertex missing d exists");

        // rotate the prefix and close it with d
        for i in 0..w {
            let next_colour = self.colour[self.edge_between(u, fan[i + 1])];
            let here = self.edge_between(u, fan[i]);
            self.set(self.edge_between(u, fan[i + 1]), None);
            self.set(here, next_colour);
        }
        let last = self.edge_between(u, fan[w]);
        self.set(last, Some(d));
    }
}

/// Chromatic index with a certificate colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticIndex {
    pub value: usize,
    pub max_degree: usize,
    pub colouring: EdgeColouring,
    /// Nodes spent by the exact search at k = Δ.
    pub nodes: u64,
}

impl ChromaticIndex {
    /// Class one means chromatic index Δ.
    pub fn is_class_one(&self) -> bool {
        self.value == self.max_degree
    }
}

/// Decides between Δ and Δ+1: exact search at k = Δ, falling back to the
/// constructive colouring when the search refutes Δ.
pub fn chromatic_index(g: &Graph, budget: u64) -> Result<ChromaticIndex> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let delta = g.max_degree();
    match exact_k_edge_colourable(g, delta, budget)? {
        ExactOutcome::Colourable { colouring, nodes } => Ok(ChromaticIndex {
            value: delta,
            max_degree: delta,
            colouring,
            nodes,
        }),
        ExactOutcome::NotColourable { nodes } => Ok(ChromaticIndex {
            value: delta + 1,
            max_degree: delta,
            colouring: vizing_colouring(g)?,
            nodes,
        }),
        ExactOutcome::BudgetExceeded { nodes } => Err(Error::Undecided { delta, nodes }),
    }
}
