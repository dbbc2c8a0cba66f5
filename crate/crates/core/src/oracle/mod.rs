//! Ground truth for testing: exhaustive solvers, closed forms for special
//! families, and instance generators.

pub mod brute;
pub mod closed_form;
pub mod generate;

pub use brute::{
    brute_force_kstar, brute_force_xstar, decide_kstar, decide_xstar, enumerate_connected_graphs,
    OracleError, EDGE_LIMIT,
};
pub use closed_form::{closed_form, ClosedForm, Family as ClosedFamily};
pub use generate::{generate, random_capacitated_suite, CapacityRule, Family, GenerateError, GeneratorSpec, WeightRule};
