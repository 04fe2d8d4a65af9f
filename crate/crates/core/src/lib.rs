//! Deterministic single-source shortest paths on directed graphs with
//! non-negative real weights, using bounded multi-source recursion with
//! pivot selection and a block-based partial-sorting frontier.
//!
//! ```
//! use ssspx_core::{solve, Graph, SolveConfig};
//!
//! let g = Graph::from_tuples(3, &[(0, 1, 2.0), (1, 2, 0.5)])?;
//! let sol = solve(&g, 0, &SolveConfig::default())?;
//! assert_eq!(sol.dist, vec![Some(0.0), Some(2.0), Some(2.5)]);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod bmssp;
pub mod dstruct;
pub mod graph;
pub mod harness;
pub mod labels;
pub mod oracle;
pub mod pivots;
pub mod scratch;
pub mod treepart;

pub use bmssp::{solve, FallbackMode, Solution, SolveConfig, SolveError};
pub use graph::{Edge, Graph, GraphError};
pub use labels::{Bound, DistLabel, Vertex};
