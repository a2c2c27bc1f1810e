//! Induced-universal graphs for families of sparse graphs.
//!
//! The crate builds host graphs that contain every member of a given family
//! as an induced subgraph, and checks such claims by brute force:
//!
//! * [`graph`]: graphs, induced embeddings, graph6, small generators.
//! * [`decomp`]: path decompositions and their nice form.
//! * [`coloring`]: almost-equitable colorings with a small deletion set.
//! * [`design`]: edge-disjoint clique packings.
//! * [`universal`]: the host constructions and a verifier.
//! * [`bounds`]: closed-form size bounds.
//! * [`oracle`]: exhaustive searches used as ground truth on tiny inputs.


// Float guards are written `!(x > a)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod bounds;
pub mod coloring;
pub mod decomp;
pub mod design;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod universal;

pub use error::{Error, Result};
pub use graph::{FamilySpec, Graph, GraphBuilder, VertexMap};
pub use par::Execution;
