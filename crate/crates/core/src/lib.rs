//! Min-max star partitioning and min-max indegree orientation.
//!
//! Given a graph with node capacities, [`dfs::minimum_star_coloring`] and
//! [`flow::minimum_star_coloring_flow`] compute an edge coloring in which every
//! edge takes the color of one of its endpoints and the largest number of
//! distinct colors at any node is minimal. [`reductions`] connects this to
//! orienting edges so that the largest indegree is minimal, and [`weighted`]
//! covers the node-weighted versions of both problems.

pub mod coloring;
pub mod dfs;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod reductions;
pub mod weighted;

pub use coloring::{
    ColoringError, IndResult, Objective, Orientation, PartialColoring, SolveError, SolveResult, Star,
    StarDecomposition,
};
pub use dfs::{minimum_star_coloring, preprocess_and_solve, Algorithm};
pub use flow::minimum_star_coloring_flow;
pub use graph::{Graph, GraphBuilder, GraphError, GraphKind, NodeId};
