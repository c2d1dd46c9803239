//! Maximum flow and the exact densest-subgraph solver built on it.

mod exact;
mod network;
mod push_relabel;

pub use exact::{
    build_feasibility_network, exact_densest, exact_densest_with, feasibility, integer_weights,
    ExactOptions, ExactResult, Feasibility, FeasibilityNetwork, FeasibilityQuery,
};
pub use network::{FlowNetwork, MaxFlow};
pub use push_relabel::max_flow;
