//! Exact tools for resolving-type vertex sets on layered graph families.
//!
//! The crate builds the crystal cubic carbon graph `CCC(n)` and the layer
//! cycle graph `LCG(n, k)`, verifies resolving, doubly resolving and strong
//! resolving sets against an all-pairs distance matrix, solves the three
//! minimisation problems exactly on small instances, and audits the known
//! closed-form values against explicit witness sets and the solvers.
//!
//! ```
//! use mdim::generators::build_lcg;
//! use mdim::graph::apsp;
//! use mdim::resolving::is_resolving;
//! use mdim::witnesses::{lcg_witness, Kind};
//!
//! let g = build_lcg(3, 2).unwrap();
//! let d = apsp(&g).unwrap();
//! let r = lcg_witness(Kind::Resolving, 3, 2).unwrap();
//! assert!(is_resolving(&d, &r).unwrap());
//! ```

pub mod cli;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod resolving;
pub mod solvers;
pub mod witnesses;

pub use error::{Error, Result};
pub use generators::{Family, VertexLabel};
pub use graph::{apsp, bfs_distances, DistanceMatrix, Graph};
pub use resolving::{MmdGraph, OrderedVertexSet};
pub use solvers::{Kind, Method, SolveOptions, SolveResult};
