//! Orthogonal-vectors instances, their gadget graphs, and diameter tooling.

pub mod construction;
pub mod graph;
pub mod ov;
pub mod sat;
pub mod verify;
