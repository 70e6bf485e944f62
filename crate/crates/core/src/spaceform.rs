//! Geodesic ball volumes in simply connected space forms and the inversion
//! that turns a measured ball volume into a macroscopic scalar curvature.
//!
//! Curvatures are scalar curvatures `σ`; the sectional curvature of the
//! model is `σ / (d(d−1))`.

use std::f64::consts::PI;

use thiserror::Error;

pub const QUADRATURE_RTOL: f64 = 1e-10;
pub const MAX_EVALUATIONS: usize = 1_000_000;
pub const SIGMA_TOL: f64 = 1e-8;
pub const INITIAL_BRACKET: f64 = 1e3;
pub const MAX_BRACKET: f64 = 1e9;
/// Factor applied to the fiber-radius threshold so the returned radius sits
/// strictly inside the certified region.
pub const FIBER_SAFETY: f64 = 1.0 - 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceFormError {
    #[error("dimension {0} is not supported here")]
    InvalidDimension(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("radius {radius} exceeds the diameter {max} of the model sphere")]
    RadiusOutOfRange { radius: f64, max: f64 },
    #[error("volume {vol} is outside every model value for σ in [{lo}, {hi}]")]
    BracketExhausted { vol: f64, lo: f64, hi: f64 },
    #[error("quadrature did not converge within {0} evaluations")]
    QuadratureBudget(usize),
    #[error("ball volume overflows f64")]
    Overflow,
}

/// Ball of radius `radius` in the `dim`-dimensional model of scalar curvature `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct SpaceFormQuery {
    pub dim: usize,
    pub sigma: f64,
    pub radius: f64,
}

/// Area of the unit `S^n`.
pub fn sphere_area(n: usize) -> f64 {
    match n {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (n - 1) as f64 * sphere_area(n - 2),
    }
}

/// Volume `ω_d` of the Euclidean unit ball.
pub fn unit_ball_volume(d: usize) -> f64 {
    if d == 0 {
        return 1.0;
    }
    sphere_area(d - 1) / d as f64
}

/// Sectional curvature of the model; zero in dimension one.
pub fn sectional_curvature(d: usize, sigma: f64) -> f64 {
    if d < 2 {
        0.0
    } else {
        sigma / (d * (d - 1)) as f64
    }
}

/// Distance to the antipode on the model sphere, or `∞` when `k ≤ 0`.
pub fn model_diameter(d: usize, sigma: f64) -> f64 {
    let k = sectional_curvature(d, sigma);
    if k > 0.0 {
        PI / k.sqrt()
    } else {
        f64::INFINITY
    }
}

fn sn(k: f64, t: f64) -> f64 {
    if k > 0.0 {
        let s = k.sqrt();
        (s * t).sin() / s
    } else if k < 0.0 {
        let s = (-k).sqrt();
        (s * t).sinh() / s
    } else {
        t
    }
}

fn check(d: usize, sigma: f64, r: f64) -> Result<(), SpaceFormError> {
    if d == 0 {
        return Err(SpaceFormError::InvalidDimension(d));
    }
    if !sigma.is_finite() {
        return Err(SpaceFormError::InvalidInput(format!("σ = {sigma}")));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(SpaceFormError::InvalidInput(format!("radius {r}")));
    }
    Ok(())
}

/// Adaptive Simpson on `[a, b]` to relative tolerance `rtol`.
pub fn integrate(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    rtol: f64,
    budget: usize,
) -> Result<f64, SpaceFormError> {
    struct Ctx<'a, F> {
        f: &'a F,
        evals: usize,
        budget: usize,
    }
    fn rec<F: Fn(f64) -> f64>(
        c: &mut Ctx<'_, F>,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64, SpaceFormError> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        c.evals += 2;
        if c.evals > c.budget {
            return Err(SpaceFormError::QuadratureBudget(c.budget));
        }
        let (flm, frm) = ((c.f)(lm), (c.f)(rm));
        let h = (b - a) / 12.0;
        let left = h * (fa + 4.0 * flm + fm);
        let right = h * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        Ok(rec(c, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
            + rec(c, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
    }

    if a == b {
        return Ok(0.0);
    }
    // Composite estimate to set the absolute scale.
    const PANELS: usize = 64;
    let h = (b - a) / PANELS as f64;
    let samples: Vec<f64> = (0..=2 * PANELS).map(|i| f(a + 0.5 * h * i as f64)).collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(SpaceFormError::Overflow);
    }
    let coarse: f64 = (0..PANELS)
        .map(|p| h / 6.0 * (samples[2 * p] + 4.0 * samples[2 * p + 1] + samples[2 * p + 2]))
        .sum();
    let tol = (rtol * coarse.abs()).max(f64::MIN_POSITIVE) / PANELS as f64;
    let mut ctx = Ctx {
        f: &f,
        evals: samples.len(),
        budget,
    };
    let mut total = 0.0;
    for p in 0..PANELS {
        let (x0, x1) = (a + h * p as f64, a + h * (p + 1) as f64);
        let (f0, fm, f1) = (samples[2 * p], samples[2 * p + 1], samples[2 * p + 2]);
        let whole = h / 6.0 * (f0 + 4.0 * fm + f1);
        total += rec(&mut ctx, x0, x1, f0, fm, f1, whole, tol, 40)?;
    }
    if !total.is_finite() {
        return Err(SpaceFormError::Overflow);
    }
    Ok(total)
}

fn volume_unchecked(d: usize, sigma: f64, r: f64) -> Result<f64, SpaceFormError> {
    if r == 0.0 {
        return Ok(0.0);
    }
    let k = sectional_curvature(d, sigma);
    let p = (d - 1) as i32;
    let integral = integrate(|t| sn(k, t).powi(p), 0.0, r, QUADRATURE_RTOL, MAX_EVALUATIONS)?;
    Ok(sphere_area(d - 1) * integral)
}

/// `V_r^d(σ)`. Errors if the radius runs past the antipode of a spherical model.
pub fn ball_volume(q: SpaceFormQuery) -> Result<f64, SpaceFormError> {
    check(q.dim, q.sigma, q.radius)?;
    let max = model_diameter(q.dim, q.sigma);
    if q.radius > max * (1.0 + 1e-12) {
        return Err(SpaceFormError::RadiusOutOfRange {
            radius: q.radius,
            max,
        });
    }
    volume_unchecked(q.dim, q.sigma, q.radius.min(max))
}

/// Like [`ball_volume`], but a radius past the antipode gives the whole sphere.
pub fn ball_volume_clamped(d: usize, sigma: f64, r: f64) -> Result<f64, SpaceFormError> {
    check(d, sigma, r)?;
    volume_unchecked(d, sigma, r.min(model_diameter(d, sigma)))
}

/// Volume at `σ` as a value on the extended line; overflow maps to `+∞`.
fn volume_extended(d: usize, sigma: f64, r: f64) -> Result<f64, SpaceFormError> {
    match ball_volume_clamped(d, sigma, r) {
        Err(SpaceFormError::Overflow) => Ok(f64::INFINITY),
        other => other,
    }
}

/// The unique `σ` with `V_r^d(σ) = vol`, found by bracketed bisection on the
/// strictly decreasing volume.
pub fn mscal_from_volume(d: usize, vol: f64, r: f64) -> Result<f64, SpaceFormError> {
    if d < 2 {
        return Err(SpaceFormError::InvalidDimension(d));
    }
    if !(vol > 0.0 && vol.is_finite()) {
        return Err(SpaceFormError::InvalidInput(format!("volume {vol}")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(SpaceFormError::InvalidInput(format!("radius {r}")));
    }
    let (mut lo, mut hi) = (-INITIAL_BRACKET, INITIAL_BRACKET);
    while volume_extended(d, lo, r)? < vol {
        if lo.abs() >= MAX_BRACKET {
            return Err(SpaceFormError::BracketExhausted { vol, lo, hi });
        }
        hi = lo;
        lo *= 2.0;
    }
    while volume_extended(d, hi, r)? > vol {
        if hi >= MAX_BRACKET {
            return Err(SpaceFormError::BracketExhausted { vol, lo, hi });
        }
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > SIGMA_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if volume_extended(d, mid, r)? > vol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(mscal(λ^d·vol, λr), λ⁻²·mscal(vol, r))`; the two agree for exact inputs.
pub fn mscal_scaling_check(
    d: usize,
    vol: f64,
    r: f64,
    lambda: f64,
) -> Result<(f64, f64), SpaceFormError> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(SpaceFormError::InvalidInput(format!("scale {lambda}")));
    }
    let scaled = mscal_from_volume(d, lambda.powi(d as i32) * vol, lambda * r)?;
    let base = mscal_from_volume(d, vol, r)?;
    Ok((scaled, base / (lambda * lambda)))
}

/// Inputs for the fiber-radius bound over a `dim`-dimensional base with
/// `Ric ≥ −κ/d`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct FiberBoundInput {
    pub dim: usize,
    pub sigma: f64,
    pub kappa: f64,
}

fn fiber_volumes(input: FiberBoundInput) -> Result<(f64, f64), SpaceFormError> {
    let FiberBoundInput { dim, sigma, kappa } = input;
    if dim == 0 {
        return Err(SpaceFormError::InvalidDimension(dim));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(SpaceFormError::InvalidInput(format!("σ = {sigma} must be positive")));
    }
    if !(kappa >= 0.0 && kappa.is_finite()) {
        return Err(SpaceFormError::InvalidInput(format!("κ = {kappa} must be non-negative")));
    }
    let total = ball_volume_clamped(dim + 1, sigma, 1.0)?;
    let base = ball_volume_clamped(dim, -kappa, 1.0)?;
    Ok((total, base))
}

/// Largest fiber radius (times [`FIBER_SAFETY`]) for which the unit-ball
/// volume comparison certifies `mscal ≥ σ` on the circle-bundle total space.
pub fn fiber_radius_bound(input: FiberBoundInput) -> Result<f64, SpaceFormError> {
    let (total, base) = fiber_volumes(input)?;
    Ok(0.5 * (total / base).min(1.0) * FIBER_SAFETY)
}

/// `ρ < ½` and `2ρ·V^d_{−κ}(1) < V^{d+1}_σ(1)`.
pub fn mscal_certificate(
    d: usize,
    sigma: f64,
    kappa: f64,
    rho: f64,
) -> Result<bool, SpaceFormError> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(SpaceFormError::InvalidInput(format!("ρ = {rho}")));
    }
    let (total, base) = fiber_volumes(FiberBoundInput {
        dim: d,
        sigma,
        kappa,
    })?;
    Ok(rho < 0.5 && rho < 0.5 * total / base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(dim: usize, sigma: f64, radius: f64) -> SpaceFormQuery {
        SpaceFormQuery { dim, sigma, radius }
    }

    fn close(a: f64, b: f64, rtol: f64) -> bool {
        (a - b).abs() <= rtol * b.abs().max(1e-300)
    }

    #[test]
    fn unit_balls() {
        assert!(close(unit_ball_volume(2), PI, 1e-15));
        assert!(close(unit_ball_volume(3), 4.0 * PI / 3.0, 1e-15));
        assert!(close(unit_ball_volume(4), PI * PI / 2.0, 1e-15));
        assert!(close(unit_ball_volume(5), 8.0 * PI * PI / 15.0, 1e-15));
    }

    #[test]
    fn reference_volumes() {
        assert!(close(ball_volume(q(3, 0.0, 1.0)).unwrap(), 4.0 * PI / 3.0, 1e-10));
        assert!(close(ball_volume(q(3, 6.0, PI)).unwrap(), 2.0 * PI * PI, 1e-10));
        // Hyperbolic plane: 2π(cosh r − 1).
        let v = ball_volume(q(2, -2.0, 1.5)).unwrap();
        assert!(close(v, 2.0 * PI * (1.5f64.cosh() - 1.0), 1e-10));
        assert_eq!(ball_volume(q(1, 5.0, 0.3)).unwrap(), 0.6);
    }

    #[test]
    fn radius_out_of_range() {
        assert!(matches!(
            ball_volume(q(3, 6.0, 3.5)),
            Err(SpaceFormError::RadiusOutOfRange { .. })
        ));
        assert!(close(ball_volume_clamped(3, 6.0, 3.5).unwrap(), 2.0 * PI * PI, 1e-10));
    }

    #[test]
    fn small_radius_expansion() {
        let r = 1e-2;
        for d in 2..=5 {
            for sigma in [-6.0, 0.0, 6.0] {
                let ratio = ball_volume(q(d, sigma, r)).unwrap() / (unit_ball_volume(d) * r.powi(d as i32));
                let expected = 1.0 - sigma * r * r / (6.0 * (d + 2) as f64);
                assert!((ratio - expected).abs() < 1e-8, "d={d} σ={sigma}");
            }
        }
    }

    #[test]
    fn taylor_remainder_is_cubic() {
        let resid = |d: usize, sigma: f64, r: f64| {
            let ratio = ball_volume(q(d, sigma, r)).unwrap() / (unit_ball_volume(d) * r.powi(d as i32));
            (ratio - (1.0 - sigma * r * r / (6.0 * (d + 2) as f64))).abs()
        };
        let r = 1e-2;
        for d in 2..=5 {
            for sigma in [-6.0, 0.0, 6.0] {
                let c = resid(d, sigma, 2.0 * r) / (2.0 * r).powi(3);
                assert!(resid(d, sigma, r) <= c.max(1e-3) * r.powi(3), "d={d} σ={sigma}");
            }
        }
    }

    #[test]
    fn mscal_examples() {
        for d in 2..=5 {
            let vol = unit_ball_volume(d) * 1.3f64.powi(d as i32);
            assert!(mscal_from_volume(d, vol, 1.3).unwrap().abs() < 1e-7);
        }
        for sigma in [-5.0, 1.0, 20.0] {
            let vol = ball_volume(q(4, sigma, 1.0)).unwrap();
            assert!((mscal_from_volume(4, vol, 1.0).unwrap() - sigma).abs() < 1e-6);
        }
        assert_eq!(mscal_from_volume(1, 1.0, 1.0), Err(SpaceFormError::InvalidDimension(1)));
        assert!(matches!(
            mscal_from_volume(3, 1e-15, 1.0),
            Err(SpaceFormError::BracketExhausted { .. })
        ));
    }

    #[test]
    fn scaling_examples() {
        let (a, b) = mscal_scaling_check(3, 2.0, 0.8, 1.0).unwrap();
        assert_eq!(a, b);
        let (a, b) = mscal_scaling_check(3, unit_ball_volume(3), 1.0, 2.0).unwrap();
        assert!(a.abs() < 1e-6 && b.abs() < 1e-6);
        let vol = ball_volume(q(4, 3.0, 1.0)).unwrap();
        let (a, b) = mscal_scaling_check(4, vol, 1.0, 0.5).unwrap();
        assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn fiber_radius() {
        let input = FiberBoundInput { dim: 3, sigma: 1.0, kappa: 0.0 };
        let rho = fiber_radius_bound(input).unwrap();
        let total = ball_volume_clamped(4, 1.0, 1.0).unwrap();
        let base = ball_volume_clamped(3, 0.0, 1.0).unwrap();
        assert!(2.0 * rho * base < total);
        assert!(rho < 0.5);
        assert!(mscal_certificate(3, 1.0, 0.0, rho).unwrap());
        let edge = 0.5 * total / base;
        assert!(!mscal_certificate(3, 1.0, 0.0, edge).unwrap());
        assert!(mscal_certificate(3, 1e-6, 0.0, 0.49).unwrap());
        let mut prev = f64::INFINITY;
        for sigma in [1.0, 10.0, 100.0, 1e3, 1e4, 1e5] {
            let rho = fiber_radius_bound(FiberBoundInput { dim: 3, sigma, kappa: 2.0 }).unwrap();
            assert!(rho < prev);
            prev = rho;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn decreasing_in_sigma() {
        for d in 2..=5 {
            let grid: Vec<f64> = (0..50).map(|i| -20.0 + 40.0 * i as f64 / 49.0).collect();
            let vols: Vec<f64> = grid.iter().map(|&s| ball_volume_clamped(d, s, 1.0).unwrap()).collect();
            assert!(vols.windows(2).all(|w| w[1] < w[0]), "d={d}");
        }
    }

    #[test]
    fn increasing_in_radius() {
        for sigma in [-3.0, 0.0] {
            let vols: Vec<f64> = (1..=40).map(|i| ball_volume(q(3, sigma, 0.25 * i as f64)).unwrap()).collect();
            assert!(vols.windows(2).all(|w| w[1] > w[0]));
            assert!(*vols.last().unwrap() > 1e3);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn round_trip(d in 2usize..=6, sigma in -20.0f64..20.0, r in 0.3f64..1.5) {
            let r = r.min(0.99 * model_diameter(d, sigma));
            let vol = ball_volume(q(d, sigma, r)).unwrap();
            let back = mscal_from_volume(d, vol, r).unwrap();
            prop_assert!((back - sigma).abs() < 1e-6, "{} vs {}", back, sigma);
        }

        #[test]
        fn scaling(d in 2usize..=5, sigma in -10.0f64..10.0, lambda in 0.25f64..4.0) {
            let vol = ball_volume_clamped(d, sigma, 1.0).unwrap();
            let (a, b) = mscal_scaling_check(d, vol, 1.0, lambda).unwrap();
            prop_assert!((a - b).abs() < 1e-6 * (1.0 + b.abs()), "{} vs {}", a, b);
        }
    }
}
