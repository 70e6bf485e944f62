use rand::Rng;
use serde::Serialize;

use super::{h_value, Point5, SchwarzError};

pub const DEFAULT_REFINE_DEPTH: usize = 40;
const TANGENCY_TOL: f64 = 1e-9;
const PERTURBATION: f64 = 1e-3;

/// Period vector `u/2 + 2n·e₅` of the lattice `Λₙ`.
pub fn lambda_direction(n: i64) -> Point5 {
    let mut v = [0.5; 5];
    v[4] += 2.0 * n as f64;
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingReport {
    /// Refined crossing parameters in `[0, 1]`.
    pub crossings: Vec<f64>,
    pub parity: u8,
}

/// Count sign changes of `h(start + t·direction)` over `t ∈ [0, 1]`, refining
/// each bracketed crossing by `depth` bisection steps.
pub fn crossing_parity(
    start: &Point5,
    direction: &Point5,
    samples: usize,
    depth: usize,
) -> Result<CrossingReport, SchwarzError> {
    let at = |t: f64| -> f64 {
        let x: Point5 = std::array::from_fn(|k| start[k] + t * direction[k]);
        h_value(&x)
    };
    let ts: Vec<f64> = (0..=samples).map(|i| i as f64 / samples as f64).collect();
    let hs: Vec<f64> = ts.iter().map(|&t| at(t)).collect();

    for (i, &h) in hs.iter().enumerate() {
        if h.abs() < TANGENCY_TOL {
            // A near-zero sample must sit inside a genuine sign change.
            let before = if i > 0 { hs[i - 1] } else { 0.0 };
            let after = if i < samples { hs[i + 1] } else { 0.0 };
            if h == 0.0 || before * after >= 0.0 {
                return Err(SchwarzError::NonGenericLine(ts[i]));
            }
        }
    }

    let mut crossings = Vec::new();
    for i in 0..samples {
        let (h0, h1) = (hs[i], hs[i + 1]);
        if h0.signum() == h1.signum() {
            continue;
        }
        let (mut lo, mut hi, mut hlo) = (ts[i], ts[i + 1], h0);
        for _ in 0..depth {
            let mid = 0.5 * (lo + hi);
            let hm = at(mid);
            if hm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if hm.signum() == hlo.signum() {
                lo = mid;
                hlo = hm;
            } else {
                hi = mid;
            }
        }
        crossings.push(0.5 * (lo + hi));
    }
    let parity = (crossings.len() % 2) as u8;
    Ok(CrossingReport { crossings, parity })
}

/// Crossing parity along one period of the line through `start` in direction
/// `u/2 + 2n·e₅`.
pub fn line_crossing_parity(
    start: &Point5,
    n: i64,
    samples: usize,
    depth: usize,
) -> Result<u8, SchwarzError> {
    crossing_parity(start, &lambda_direction(n), samples, depth).map(|r| r.parity)
}

/// [`line_crossing_parity`], perturbing the start by up to `10⁻³` per
/// coordinate whenever the line is not transverse. Returns the parity and the
/// number of perturbations used.
pub fn line_crossing_parity_with_retry<R: Rng>(
    start: &Point5,
    n: i64,
    samples: usize,
    depth: usize,
    rng: &mut R,
    max_retries: usize,
) -> Result<(u8, usize), SchwarzError> {
    let mut x = *start;
    let mut retries = 0;
    loop {
        match line_crossing_parity(&x, n, samples, depth) {
            Ok(p) => return Ok((p, retries)),
            Err(SchwarzError::NonGenericLine(_)) if retries < max_retries => {
                retries += 1;
                for c in x.iter_mut() {
                    *c += rng.gen_range(-PERTURBATION..PERTURBATION);
                }
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_line_has_odd_parity() {
        let start = [0.1234567, 0.4567891, 0.7891234, 0.3219876, 0.6543219];
        for n in 1..=3 {
            assert_eq!(line_crossing_parity(&start, n, 2000, DEFAULT_REFINE_DEPTH).unwrap(), 1);
        }
    }

    #[test]
    fn axis_line_inside_neighbourhood_has_even_parity() {
        // Coordinates 2..4 stay within 0.1 of the grid, so h < 0 throughout.
        let start = [0.3, 0.0, 0.0, 0.1, 0.4];
        let r = crossing_parity(&start, &[1.0, 0.0, 0.0, 0.0, 0.0], 1000, 40).unwrap();
        assert_eq!(r.parity, 0);
        assert!(r.crossings.is_empty());
    }

    #[test]
    fn tangent_start_is_non_generic() {
        // Starts exactly on the hypersurface.
        let start = [0.25, 0.25, 0.25, 0.0, 0.0];
        assert!(matches!(
            line_crossing_parity(&start, 1, 1000, 40),
            Err(SchwarzError::NonGenericLine(_))
        ));
    }

    #[test]
    fn crossings_are_roots() {
        let start = [0.0512345, 0.6198765, 0.3712121, 0.9323232, 0.1854545];
        let dir = lambda_direction(2);
        let r = crossing_parity(&start, &dir, 4000, 50).unwrap();
        for &t in &r.crossings {
            let x: Point5 = std::array::from_fn(|k| start[k] + t * dir[k]);
            assert!(h_value(&x).abs() < 1e-9);
        }
    }
}
