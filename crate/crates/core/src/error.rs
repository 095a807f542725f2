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

use thiserror::Error;

use crate::graph::{Edge, Vertex};

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit can report.
///
/// The variants fall into three groups: malformed input (graphs, colourings,
/// parameters), non-answers from bounded searches, and internal invariant
/// violations that indicate a bug rather than a property of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertex out of range: {vertex} (n = {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("multi-edge {0}")]
    MultiEdge(Edge),

    #[error("incomplete colouring: edge {0} has no colour")]
    IncompleteColouring(Edge),
    #[error("colour out of range: edge {edge} has colour {colour}, allowed 1..={k}")]
    ColourOutOfRange { edge: Edge, colour: usize, k: usize },
    #[error("colouring mentions edge {0} which is not in the graph")]
    UnknownEdge(Edge),
    #[error("invalid colouring: {0}")]
    InvalidColouring(String),
    #[error("no edges to colour")]
    NoEdges,
    #[error("k must be at least 1")]
    ZeroColours,
    #[error("k = {0} exceeds the exact solver's limit of 64 colours")]
    TooManyColours(usize),

    #[error("budget exceeded after {nodes} decision nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("undecided between {delta} and {}: budget exceeded after {nodes} decision nodes", delta + 1)]
    Undecided { delta: usize, nodes: u64 },

    #[error("empty forbidden graph")]
    EmptyForbiddenGraph,
    #[error("graph not connected")]
    NotConnected,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is not P_{t}-free: induced path {witness:?}")]
    NotPathFree { t: usize, witness: Vec<Vertex> },

    #[error("k must be even, got {0}")]
    OddK(usize),
    #[error("k must be at least {min}, got {k}")]
    KTooSmall { k: usize, min: usize },
    #[error("regularity violated: vertex {vertex} has degree {degree}, expected {k}")]
    RegularityViolated {
        vertex: Vertex,
        degree: usize,
        k: usize,
    },
    #[error("invalid source colouring: {0}")]
    InvalidSourceColouring(String),
    #[error("invalid target colouring: {0}")]
    InvalidTargetColouring(String),
    #[error("extraction soundness violated: {0}")]
    ExtractionSoundness(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("size bound violated: component with {size} vertices exceeds f({k},{t}) = {bound}")]
    SizeBoundViolated {
        size: usize,
        k: usize,
        t: usize,
        bound: u128,
    },

    #[error("infeasible degree sequence: n = {n}, k = {k}")]
    InfeasibleDegreeSequence { n: usize, k: usize },
    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that signal a bug in this crate rather than bad input
    /// or an exhausted budget.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::ExtractionSoundness(_)
                | Error::ConstructionFailed(_)
                | Error::SizeBoundViolated { .. }
                | Error::Invariant(_)
        )
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Undecided { .. })
    }

    pub(crate) fn at_line(self, line: usize) -> Error {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}
