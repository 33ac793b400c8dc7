//! Exact computations with finite Weyl groups: mixed and quantum Bruhat
//! operators, Yang-Baxter checks, tilted Bruhat orders and the quantum
//! Chevalley formula.

pub mod error;
pub mod exec;
pub mod operators;
pub mod poset;
pub mod quantum_monk;
pub mod random;
pub mod root_system;
pub mod scalars;
pub mod tilted;
pub mod weyl;
pub mod ybe;

pub use error::Error;
pub use root_system::{RootSystem, TypeLabel};
pub use weyl::WeylGroup;
