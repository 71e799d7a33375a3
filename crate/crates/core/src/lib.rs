//! Decomposability of Leavitt path algebras of finite directed multigraphs.
//!
//! Graphs carry parallel-edge bundles of finite or infinite multiplicity.
//! The crate decides whether the algebra splits as a direct sum of two
//! nonzero ideals, decomposes it into indecomposable quotient graphs, names
//! the standard families among the pieces, and checks results with an exact
//! computation inside finite-dimensional algebras.
//!
//! ```
//! use lpa_core::{decide, fixtures, Verdict};
//!
//! let g = fixtures::e1();
//! assert!(matches!(decide(&g).unwrap(), Verdict::Decomposable { .. }));
//! ```

pub mod cli;
pub mod compatibility;
pub mod decision;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod graph;
pub mod hsat;
pub mod oracle;
pub mod quotient;
pub mod recognizer;

pub use compatibility::{count_compatible_paths, is_compatible_bundle, PathCount};
pub use decision::{decide, decide_row_finite, Verdict};
pub use error::{Error, Result};
pub use exec::Parallelism;
pub use graph::{canonical_form, parse_graph, CanonicalCode, EdgeBundle, Graph, Multiplicity, VertexKind, VertexSet};
pub use hsat::{breaking_vertices, enumerate_hsat, hsat_closure, join, meet, AdmissiblePair};
pub use oracle::{dimension, ideal_span, verify_direct_sum, DirectSumReport};
pub use quotient::{components, decompose, quotient_graph, DecompositionTree};
pub use recognizer::{describe_decomposition, recognize, AlgebraDescriptor};

/// Environment variable overriding the hereditary-saturated enumeration limit.
pub const MAX_VERTICES_ENV: &str = "LPA_MAX_VERTICES";

/// Size limits and execution strategy shared by the analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Largest graph whose hereditary saturated sets are enumerated.
    pub max_enumeration_vertices: usize,
    /// Largest graph given a canonical form.
    pub max_canonical_vertices: usize,
    pub parallelism: Parallelism,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_enumeration_vertices: hsat::DEFAULT_ENUMERATION_LIMIT,
            max_canonical_vertices: graph::DEFAULT_CANONICAL_LIMIT,
            parallelism: Parallelism::default(),
        }
    }
}

impl Config {
    /// Defaults, with the enumeration limit taken from `LPA_MAX_VERTICES`
    /// when it holds a number.
    pub fn from_env() -> Self {
        let mut cfg = Config::default();
        if let Some(n) = std::env::var(MAX_VERTICES_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            cfg.max_enumeration_vertices = n;
        }
        cfg
    }
}
