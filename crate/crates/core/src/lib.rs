//! Fuzzy graphs with exact memberships: α-cuts, t-norm edge contraction,
//! crisp property checkers, exact FPED/FPEC solvers and the membership-1
//! embedding of classical edge-modification instances.
//!
//! Memberships are exact decimals, so every threshold test `μ ≥ α` is decided
//! without rounding.

pub mod contraction;
pub mod error;
pub mod graph;
pub mod io;
pub mod label;
pub mod membership;
pub mod properties;
pub mod random;
pub mod reductions;
pub mod solvers;
pub mod suite;
pub mod tnorm;

pub use contraction::{
    contract_edge, contract_set, crisp_contract, delete_edge, graphs_equal, ContractionRecord,
};
pub use error::{Error, Result};
pub use graph::{CrispGraph, FuzzyGraph, ValidationReport, Violation};
pub use label::{EdgeKey, VertexLabel};
pub use membership::{Membership, MembershipLevel};
pub use properties::{Property, PropertySpec};
pub use tnorm::TNorm;
