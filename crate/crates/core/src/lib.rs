//! Algebraic state-space compilation and topological analysis of logical
//! (control) networks and finite transition systems.
//!
//! A network is compiled to `x(t+1) = L u(t) x(t)` with the semi-tensor
//! product, a transition system to the same form with a Boolean `L`. On that
//! representation the crate counts and enumerates cycles, converts control
//! systems into autonomous ones, computes reachability, builds output-based
//! quotient systems and checks output robustness under disturbances.

pub mod attractors;
pub mod export;
pub mod matrix;
pub mod model;
pub mod netdsl;
pub mod reach;
pub mod simulation;

pub use attractors::{AnalysisError, ControlMode, CycleClass, CycleReport};
pub use matrix::{BooleanMatrix, CountMatrix, DeltaVector, LogicalMatrix, MatrixError};
pub use model::{AutonomousTS, DisturbedModel, Labels, ModelError, TransitionSystem};
pub use netdsl::{Network, ParseError, TransitionSpec};
