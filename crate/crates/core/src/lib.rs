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

//! Edge colouring on H-free graphs.
//!
//! The crate provides the pieces needed to decide k-edge colourability
//! across hereditary graph classes defined by one forbidden induced
//! subgraph H:
//!
//! * [`graph`]: simple graphs and structural primitives;
//! * [`recognition`]: induced-subgraph search, claw- and path-freeness, and
//!   the classification of H;
//! * [`colouring`]: validation, exact search, the (Δ+1) construction and the
//!   chromatic index;
//! * [`hardness`]: the structured colouring of K_k and the claw-free gadget
//!   reduction with colouring transfer in both directions;
//! * [`tractable`]: size bounds and the decision procedure for P_t-free
//!   graphs, plus minimum connected dominating sets;
//! * [`format`](mod@format) and [`generate`]: text formats and random instances.

pub mod catalog;
pub mod colouring;
pub mod error;
pub mod format;
pub mod generate;
pub mod graph;
pub mod hardness;
pub mod named;
pub mod recognition;
pub mod tractable;

pub use colouring::{Colour, EdgeColouring};
pub use error::{Error, Result};
pub use graph::{build_graph, Edge, Graph, Vertex};
