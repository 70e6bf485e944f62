//! The equidistant hypersurface between the integer 2-skeleton `Z₀ ⊂ ℝ⁵` and
//! its dual `Z₁ = Z₀ + u/2`, the taming cocycles on both skeleta, jailcells,
//! ruling spheres and their retraction images, crossing parity along lines of
//! the lattices `Λₙ`, and intrinsic diameters of the ruling spheres.

mod cocycle;
mod diameter;
mod geometry;
mod parity;
mod ruling;

pub use cocycle::{
    all_jailcells, jailcell_chain, psi0, psi0_cochain, skeleton, tau_pullback, tau_pushforward,
    verify_gamma_invariance, GammaReport, JailCell, PairingTable,
};
pub use diameter::{ruling_sphere_diameter, SurfaceGraph};
pub use geometry::{
    coord_distances, dist_to_skeleton, h_value, on_hypersurface, Host, Point5, HALF_U,
};
pub use parity::{
    crossing_parity, line_crossing_parity, line_crossing_parity_with_retry, lambda_direction,
    CrossingReport, DEFAULT_REFINE_DEPTH,
};
pub use ruling::{
    dual_jailcell, retract, retraction_image_chain, taming_pairing, RulingSphereSpec,
};

use thiserror::Error;

use crate::homology::HomologyError;

#[derive(Debug, Error, PartialEq)]
pub enum SchwarzError {
    #[error("invalid cell: axes ({0}, {1}) must satisfy i < j < 5")]
    InvalidCell(usize, usize),
    #[error("sphere center is not the barycenter of its host 2-cell")]
    NotCentered,
    #[error("point lies outside the 1/4-neighbourhood of the skeleton")]
    NotInNeighborhood,
    #[error("retraction image of a face is not a cell of the target skeleton")]
    NonCellularImage,
    #[error("line is not transverse to the hypersurface near t = {0}")]
    NonGenericLine(f64),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}
