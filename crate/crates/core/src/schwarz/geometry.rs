/// A point of ℝ⁵.
pub type Point5 = [f64; 5];

/// `u/2 = (½, ½, ½, ½, ½)`.
pub const HALF_U: Point5 = [0.5; 5];

/// Which skeleton: `Z₀` on the integer grid or `Z₁` on the half-shifted grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Host {
    Z0,
    Z1,
}

impl Host {
    pub fn other(self) -> Host {
        match self {
            Host::Z0 => Host::Z1,
            Host::Z1 => Host::Z0,
        }
    }

    /// Grid shift of the host vertices.
    pub fn shift(self) -> f64 {
        match self {
            Host::Z0 => 0.0,
            Host::Z1 => 0.5,
        }
    }

    /// Vertex offset in half-integer units.
    pub fn offset(self) -> [i64; 5] {
        match self {
            Host::Z0 => [0; 5],
            Host::Z1 => [1; 5],
        }
    }
}

/// Per-coordinate distance to the host grid, sorted ascending.
pub fn coord_distances(x: &Point5, host: Host) -> [f64; 5] {
    let s = host.shift();
    let mut d = x.map(|c| {
        let y = c - s;
        (y - y.round()).abs()
    });
    d.sort_by(f64::total_cmp);
    d
}

/// ℓ∞ distance to the host 2-skeleton: the third-smallest coordinate
/// distance, since a point lies on the skeleton iff three coordinates are on
/// the grid.
pub fn dist_to_skeleton(x: &Point5, host: Host) -> f64 {
    coord_distances(x, host)[2]
}

/// `dist(x, Z₀) − dist(x, Z₁)`; negative inside the neighbourhood of `Z₀`.
pub fn h_value(x: &Point5) -> f64 {
    dist_to_skeleton(x, Host::Z0) - dist_to_skeleton(x, Host::Z1)
}

pub fn on_hypersurface(x: &Point5, tol: f64) -> bool {
    (dist_to_skeleton(x, Host::Z0) - 0.25).abs() <= tol
}
