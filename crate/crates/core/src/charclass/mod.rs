//! Mod-2 cohomology-ring calculus on finite ring presentations: Wu classes,
//! the Pin⁻ predicate, `Sq²` into the top degree, the mod-2 Hopf obstruction
//! for principal circle bundles, and Urysohn-width bound arithmetic.

mod examples;
mod format;
mod hopf;
mod ring;
mod width;

pub use examples::{bundled, bundled_names, generate, cp2, product, real_projective, sphere, sphere_product, torus};
pub use format::{parse_ring, serialize_ring};
pub use hopf::{
    certify, find_xi, hopf_obstruction, is_pin_minus, sq2_topminus2, wu_class, CircleBundleData,
};
pub use ring::{BasisChange, Class, CohomRing, RingBuilder};
pub use width::{width_lower_bound, Branch, Codim, WidthReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharClassError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cup product is not commutative on {0} ⌣ {1}")]
    NonCommutative(String, String),
    #[error("cup product is not associative on ({0}, {1}, {2})")]
    NonAssociative(String, String, String),
    #[error("Poincaré pairing is degenerate in degree {0}")]
    Degenerate(usize),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("expected a class of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("no class pairs to the top class with e₂: f* is nonzero")]
    FStarNonzero,
    #[error("codimension-two bound requested without a certifying branch")]
    NoCertificate,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
