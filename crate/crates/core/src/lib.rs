//! Densest subgraph discovery.
//!
//! * [`peeling`]: Charikar's greedy peeling and the load-carrying Greedy++.
//! * [`dual`]: weak-duality certificates built from Greedy++ loads.
//! * [`flow`]: push-relabel max flow and an exact solver on top of it.
//! * [`mwu`]: a multiplicative-weights solver for the dual.
//! * [`oracle`]: exhaustive search for small graphs, used as a test oracle.

pub mod dual;
pub mod error;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod mwu;
pub mod oracle;
pub mod peeling;

pub use error::{DenseError, Result};
pub use graph::{parse_edge_list, Density, Edge, Graph, Numerator, ParseOptions};
