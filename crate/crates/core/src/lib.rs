//! Exact and numeric verification of the finite objects behind a
//! codimension-two Urysohn width counterexample: cubical skeleta of ℝ⁵ and
//! their quotients, the taming cocycle and jailcell pairings, the mod-2 Hopf
//! obstruction for circle bundles, δ-separated nets, and space-form volume
//! bounds for macroscopic scalar curvature.

pub mod charclass;
pub mod cli;
pub mod cubical;
pub mod homology;
pub mod matrix;
pub mod nets;
pub mod oracles;
pub mod schwarz;
pub mod spaceform;
