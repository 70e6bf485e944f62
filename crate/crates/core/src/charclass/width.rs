use serde::Serialize;

use super::CharClassError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Codim {
    One,
    Two,
}

/// Which hypothesis certified a width bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Codimension one, no bundle hypothesis needed.
    Direct,
    /// The bundle projection is nonzero on mod-2 homology.
    FStarNonzero,
    /// The projection is zero on homology but the mod-2 Hopf invariant is not.
    HopfNonzero,
}

/// Lower bound for Urysohn width in codimension one or two.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WidthReport {
    /// Hypersphericity of the base.
    pub hs: f64,
    /// Convexity radius, when the bound is stated in terms of it.
    pub convexity_radius: Option<f64>,
    pub codim: Codim,
    pub bound: f64,
    pub branch: Branch,
}

impl WidthReport {
    /// Replace the bound by a convexity radius `r`.
    pub fn with_convexity_radius(mut self, r: f64) -> Result<Self, CharClassError> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(CharClassError::InvalidInput(format!("convexity radius {r}")));
        }
        self.convexity_radius = Some(r);
        self.bound = r;
        Ok(self)
    }
}

/// `bound = hs / 2`. Codimension two requires a certifying branch.
pub fn width_lower_bound(
    hs: f64,
    codim: Codim,
    certificate: Option<Branch>,
) -> Result<WidthReport, CharClassError> {
    if !(hs >= 0.0 && hs.is_finite()) {
        return Err(CharClassError::InvalidInput(format!("hypersphericity {hs}")));
    }
    let branch = match (codim, certificate) {
        (Codim::One, _) => Branch::Direct,
        (Codim::Two, Some(b @ (Branch::FStarNonzero | Branch::HopfNonzero))) => b,
        (Codim::Two, _) => return Err(CharClassError::NoCertificate),
    };
    Ok(WidthReport {
        hs,
        convexity_radius: None,
        codim,
        bound: hs / 2.0,
        branch,
    })
}
