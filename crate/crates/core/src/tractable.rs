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

//! The tractable side: bounded instances for P_t-free graphs.
//!
//! A connected P_t-free graph of maximum degree k has at most `f(k, t)`
//! vertices, where `f(k, t) = 2(k+1)` for `t <= 4` and
//! `f(k, t) = max(f(k, t-2)(k+1), (t-2)(k+1))` otherwise. The bound comes
//! from dominating sets: a graph of maximum degree k dominated by p vertices
//! has at most p(k+1) vertices, connected P_4-free graphs are dominated by
//! two vertices, and a minimum connected dominating set of a connected
//! P_t-free graph induces a P_{t-2}-free graph or P_{t-2} itself.

use serde::Serialize;

use crate::colouring::{exact_k_edge_colourable, vizing_colouring, EdgeColouring, ExactOutcome};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::recognition::{is_pt_free, Freeness};

/// Largest graph the exhaustive dominating-set searches accept.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 64;

/// Above this size the structure check inspects one minimum connected
/// dominating set instead of all of them.
pub const ALL_MCDS_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeBound {
    pub k: usize,
    pub t: usize,
    /// Saturates at `u128::MAX`.
    pub value: u128,
}

/// Evaluates `f(k, t)`.
pub fn size_bound(k: usize, t: usize) -> SizeBound {
    let step = k as u128 + 1;
    let mut value = 2 * step;
    // odd and even t recurse through separate chains down to t <= 4
    let mut s = if t.is_multiple_of(2) { 6 } else { 5 };
    while s <= t {
        value = value.saturating_mul(step).max((s as u128 - 2) * step);
        s += 2;
    }
    SizeBound { k, t, value }
}

/// A set of at most `MAX_EXHAUSTIVE_VERTICES` vertices as a bitmask.
type Mask = u64;

fn closed_neighbourhoods(g: &Graph) -> Vec<Mask> {
    g.vertices()
        .map(|v| {
            g.neighbours(v)
                .iter()
                .fold(1 << v, |acc, &u| acc | (1 << u))
        })
        .collect()
}

fn mask_vertices(mask: Mask) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

fn mask_is_connected(closed: &[Mask], set: Mask) -> bool {
    if set == 0 {
        return false;
    }
    let mut reached = 1 << set.trailing_zeros();
    loop {
        let grown = mask_vertices(reached)
            .into_iter()
            .fold(reached, |acc, v| acc | (closed[v] & set));
        if grown == reached {
            return reached == set;
        }
        reached = grown;
    }
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order
/// until it returns `false`.
fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(Mask) -> bool) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let mask = idx.iter().fold(0, |acc, &i| acc | (1 << i));
        if !visit(mask) {
            return;
        }
        let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_exhaustive_size(g: &Graph) -> Result<()> {
    if g.vertex_count() > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "exhaustive search supports at most {MAX_EXHAUSTIVE_VERTICES} vertices, got {}",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// All minimum connected dominating sets, or only the first one in
/// lexicographic order when `first_only` is set.
fn min_connected_dominating_sets(g: &Graph, first_only: bool) -> Result<Vec<Vec<Vertex>>> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    check_exhaustive_size(g)?;
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.vertex_count();
    let closed = closed_neighbourhoods(g);
    let everything: Mask = if n == 64 { Mask::MAX } else { (1 << n) - 1 };
    for size in 1..=n {
        let mut found = Vec::new();
        for_each_subset(n, size, |set| {
            let dominated = mask_vertices(set).iter().fold(0, |acc, &v| acc | closed[v]);
            if dominated == everything && mask_is_connected(&closed, set) {
                found.push(mask_vertices(set));
                if first_only {
                    return false;
                }
            }
            true
        });
        if !found.is_empty() {
            return Ok(found);
        }
    }
    unreachable!("the whole vertex set of a connected graph is a connected dominating set")
}

/// A smallest connected dominating set, the lexicographically first among
/// those of minimum size. Exhaustive; meant for small graphs.
pub fn min_connected_dominating_set(g: &Graph) -> Result<Vec<Vertex>> {
    Ok(min_connected_dominating_sets(g, true)?.remove(0))
}

/// Every minimum connected dominating set, in lexicographic order.
pub fn all_min_connected_dominating_sets(g: &Graph) -> Result<Vec<Vec<Vertex>>> {
    min_connected_dominating_sets(g, false)
}

/// A dominating set with at most `p` vertices, if one exists.
pub fn dominating_set_at_most(g: &Graph, p: usize) -> Result<Option<Vec<Vertex>>> {
    check_exhaustive_size(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let closed = closed_neighbourhoods(g);
    let everything: Mask = if n == 64 { Mask::MAX } else { (1 << n) - 1 };
    for size in 1..=p.min(n) {
        let mut hit = None;
        for_each_subset(n, size, |set| {
            let dominated = mask_vertices(set).iter().fold(0, |acc, &v| acc | closed[v]);
            if dominated == everything {
                hit = Some(mask_vertices(set));
                return false;
            }
            true
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Outcome of checking `|V| <= p(k+1)` for a graph of maximum degree at
/// most k dominated by at most p vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BoundCheck {
    Holds,
    /// Preconditions met but the bound fails; never expected.
    Fails,
    /// A precondition does not hold, so the statement is vacuous.
    PreconditionUnmet(String),
}

impl BoundCheck {
    /// True unless the bound was actually violated.
    pub fn holds(&self) -> bool {
        !matches!(self, BoundCheck::Fails)
    }
}

pub fn dominating_size_bound_holds(g: &Graph, p: usize, k: usize) -> Result<BoundCheck> {
    if g.max_degree() > k {
        return Ok(BoundCheck::PreconditionUnmet(format!(
            "maximum degree {} exceeds {k}",
            g.max_degree()
        )));
    }
    if dominating_set_at_most(g, p)?.is_none() {
        return Ok(BoundCheck::PreconditionUnmet(format!(
            "no dominating set of size at most {p}"
        )));
    }
    if g.vertex_count() <= p * (k + 1) {
        Ok(BoundCheck::Holds)
    } else {
        Ok(BoundCheck::Fails)
    }
}

/// Why an instance is a no-instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NoReason {
    /// Some vertex has more than k edges.
    DegreeExceedsK { vertex: Vertex, degree: usize },
    /// A component with maximum degree k was refuted exhaustively.
    Refuted { component: Vec<Vertex> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PtFreeVerdict {
    Yes(EdgeColouring),
    No(NoReason),
    InputNotPtFree { witness: Vec<Vertex> },
}

/// Decides k-edge colourability of a P_t-free graph component by
/// component: low-degree components are coloured constructively, components
/// with a vertex of degree above k are rejected, and the remaining ones are
/// bounded by `f(k, t)` and settled by exact search.
pub fn decide_pt_free(g: &Graph, k: usize, t: usize, budget: u64) -> Result<PtFreeVerdict> {
    if k < 3 {
        return Err(Error::KTooSmall { k, min: 3 });
    }
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    if let Freeness::Contains(witness) = is_pt_free(g, t) {
        return Ok(PtFreeVerdict::InputNotPtFree { witness });
    }
    if let Some(vertex) = g.vertices().find(|&v| g.degree(v) > k) {
        return Ok(PtFreeVerdict::No(NoReason::DegreeExceedsK {
            vertex,
            degree: g.degree(vertex),
        }));
    }
    let bound = size_bound(k, t);
    let mut merged = EdgeColouring::new(k);
    for component in g.connected_components() {
        let (sub, map) = g.induced_subgraph(&component)?;
        if sub.edge_count() == 0 {
            continue;
        }
        let part = if sub.max_degree() < k {
            vizing_colouring(&sub)?
        } else {
            if sub.vertex_count() as u128 > bound.value {
                return Err(Error::SizeBoundViolated {
                    size: sub.vertex_count(),
                    k,
                    t,
                    bound: bound.value,
                });
            }
            match exact_k_edge_colourable(&sub, k, budget)? {
                ExactOutcome::Colourable { colouring, .. } => colouring,
                ExactOutcome::NotColourable { .. } => {
                    return Ok(PtFreeVerdict::No(NoReason::Refuted { component }))
                }
                ExactOutcome::BudgetExceeded { nodes } => {
                    return Err(Error::BudgetExceeded { nodes })
                }
            }
        };
        for (e, colour) in part.iter() {
            merged.set(Edge::new(map[e.u()], map[e.v()])?, colour);
        }
    }
    Ok(PtFreeVerdict::Yes(merged))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CdsStructureReport {
    /// Whether every inspected set passed.
    pub holds: bool,
    pub sets_checked: usize,
    /// False when only one minimum set was inspected (large graphs).
    pub exhaustive: bool,
    /// The first failing set, if any.
    pub counterexample: Option<Vec<Vertex>>,
}

/// Checks that minimum connected dominating sets of a connected P_t-free
/// graph induce a P_{t-2}-free graph or a P_{t-2}. All minimum sets are
/// inspected up to `ALL_MCDS_LIMIT` vertices, one set beyond that.
pub fn min_cds_structure_check(g: &Graph, t: usize) -> Result<CdsStructureReport> {
    if t < 4 {
        return Err(Error::InvalidParameter(format!(
            "t must be at least 4, got {t}"
        )));
    }
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if let Freeness::Contains(witness) = is_pt_free(g, t) {
        return Err(Error::NotPathFree { t, witness });
    }
    let exhaustive = g.vertex_count() <= ALL_MCDS_LIMIT;
    let sets = if exhaustive {
        all_min_connected_dominating_sets(g)?
    } else {
        vec![min_connected_dominating_set(g)?]
    };
    let mut report = CdsStructureReport {
        holds: true,
        sets_checked: sets.len(),
        exhaustive,
        counterexample: None,
    };
    for set in sets {
        let (inner, _) = g.induced_subgraph(&set)?;
        let ok = is_pt_free(&inner, t - 2).is_free()
            || (inner.vertex_count() == t - 2 && inner.is_path());
        if !ok {
            report.holds = false;
            report.counterexample = Some(set);
            break;
        }
    }
    Ok(report)
}
