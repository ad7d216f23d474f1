/*!
Construction, refinement and auditing of tree-decompositions of small graphs.

The crate is organised around a handful of cooperating modules:

- [`graph`]: simple undirected graphs over dense integer ids, generators,
  component queries, isomorph-free enumeration of small graphs.
- [`flow`]: vertex-disjoint path packings via unit-capacity max-flow.
- [`minor`]: minor and subdivision testing with explicit witnesses.
- [`decomp`]: the tree-decomposition type, validation, bag-size profiles,
  and normalisation.
- [`exact`]: exact treewidth / pathwidth by subset dynamic programming.
- [`refine`]: breakability / reducibility of bags, the split and reduce
  steps, and the fixpoint refinement engine.
- [`planar`]: combinatorial embeddings, triangulation, and the
  bounded-treewidth classification of refined bags.
- [`layered`]: BFS layerings, the tree-cotree decomposition, and the
  square-root-width constructions built on top of layered decompositions.
- [`gadget`]: the fan construction that turns a drawing with at most one
  crossing per edge into a certified bounded-treewidth instance.
- [`io`]: the text formats (.gr, .td, .layers, .draw, .sset).
- [`suites`]: the named audit corpora run by the CLI and the acceptance
  tests.

All operations are deterministic: identical inputs, flags and seeds yield
identical outputs.
*/

use thiserror::Error;

pub mod decomp;
pub mod exact;
pub mod flow;
pub mod gadget;
pub mod graph;
pub mod io;
pub mod layered;
pub mod limits;
pub mod minor;
pub mod planar;
pub mod refine;
pub mod suites;

#[derive(Debug, Error)]
pub enum Error {
    #[error("instance too large: {what} has size {size}, cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use decomp::{BagProfile, TreeDecomposition, Violation};
pub use flow::PathBundle;
pub use gadget::{Drawing, Fan, GadgetReport, GadgetResult, Planarization, VertexKind};
pub use graph::Graph;
pub use layered::{Layering, Peel, UnionPathReport, UnionWidthReport};
pub use minor::{MinorWitness, SubdivisionWitness};
pub use planar::{Embedding, NonSeparableClass};
pub use refine::{BagCheck, BagReport, RefineLevel, Separation, StepKind, StepRecord};
pub use suites::SuiteOutcome;
