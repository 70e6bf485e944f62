use crate::cubical::CubicalCell;
use crate::homology::{evaluate_pairing, Chain2, Cochain2};

use super::{Host, JailCell, Point5, SchwarzError};

const QUARTER: f64 = 0.25;
const EPS: f64 = 1e-12;

/// Handle-collapsing retraction of the `ℓ∞` 1/4-neighbourhood of a skeleton
/// onto the skeleton. Coordinates within 1/4 of the grid are normal to the
/// handle and snap to the grid; the remaining (at most two) coordinates lie in
/// the core band `[¼, ¾]` of a cell and are stretched by 2 onto `[0, 1]`.
pub fn retract(x: &Point5, host: Host) -> Result<Point5, SchwarzError> {
    let s = host.shift();
    let mut out = [0.0; 5];
    let mut tangential = 0;
    for (o, &c) in out.iter_mut().zip(x) {
        let y = c - s;
        let nearest = y.round();
        if (y - nearest).abs() <= QUARTER + EPS {
            *o = nearest + s;
        } else {
            tangential += 1;
            let base = y.floor();
            *o = base + 2.0 * (y - base - QUARTER) + s;
        }
    }
    if tangential > 2 {
        return Err(SchwarzError::NotInNeighborhood);
    }
    Ok(out)
}

/// The polyhedral sphere `{*} × ∂I³`, `I = [−¼, ¼]`, over a host 2-cell.
#[derive(Clone, Debug, PartialEq)]
pub struct RulingSphereSpec {
    pub host: Host,
    /// Host 2-cell, half-integer units.
    pub cell: CubicalCell,
    pub center: Point5,
}

impl RulingSphereSpec {
    /// Sphere at the barycenter of the 2-cell anchored at `anchor` (half
    /// units) spanned by `dirs`.
    pub fn centered(host: Host, anchor: [i64; 5], dirs: [usize; 2]) -> Self {
        let mut center: Point5 = anchor.map(|a| a as f64 / 2.0);
        center[dirs[0]] += 0.5;
        center[dirs[1]] += 0.5;
        Self {
            host,
            cell: CubicalCell::new(anchor.to_vec(), dirs.to_vec()).expect("increasing axes"),
            center,
        }
    }

    pub fn barycenter(&self) -> Point5 {
        let mut b: Point5 = std::array::from_fn(|k| self.cell.anchor[k] as f64 / 2.0);
        for &d in &self.cell.dirs {
            b[d] += 0.5;
        }
        b
    }

    pub fn check_centered(&self) -> Result<(), SchwarzError> {
        let b = self.barycenter();
        if b.iter().zip(&self.center).all(|(p, q)| (p - q).abs() <= EPS) {
            Ok(())
        } else {
            Err(SchwarzError::NotCentered)
        }
    }

    /// The three axes orthogonal to the host cell, increasing.
    pub fn normal_axes(&self) -> [usize; 3] {
        let n: Vec<usize> = (0..5).filter(|a| !self.cell.dirs.contains(a)).collect();
        [n[0], n[1], n[2]]
    }

    /// Grid samples of `∂I³` with `per_edge + 1` points along each face edge.
    pub fn sample_points(&self, per_edge: usize) -> Vec<Point5> {
        let axes = self.normal_axes();
        let step = 2.0 * QUARTER / per_edge as f64;
        let coord = |i: usize| -QUARTER + step * i as f64;
        let mut out = Vec::new();
        for i in 0..=per_edge {
            for j in 0..=per_edge {
                for k in 0..=per_edge {
                    let on_boundary = [i, j, k].iter().any(|&t| t == 0 || t == per_edge);
                    if !on_boundary {
                        continue;
                    }
                    let mut p = self.center;
                    p[axes[0]] += coord(i);
                    p[axes[1]] += coord(j);
                    p[axes[2]] += coord(k);
                    out.push(p);
                }
            }
        }
        out
    }
}

/// The jailcell of the opposite skeleton bounding the unit 3-cube orthogonal
/// to the sphere's host cell and centered at the sphere's center.
pub fn dual_jailcell(sphere: &RulingSphereSpec) -> Result<JailCell, SchwarzError> {
    sphere.check_centered()?;
    let normals = sphere.normal_axes();
    let anchor: [i64; 5] = std::array::from_fn(|k| {
        let twice = (2.0 * sphere.center[k]).round() as i64;
        if normals.contains(&k) {
            twice - 1
        } else {
            twice
        }
    });
    JailCell::new(sphere.host.other(), anchor, normals)
}

fn half_units(p: &Point5) -> Result<[i64; 5], SchwarzError> {
    let mut out = [0; 5];
    for (o, &c) in out.iter_mut().zip(p) {
        let t = 2.0 * c;
        if (t - t.round()).abs() > 1e-9 {
            return Err(SchwarzError::NonCellularImage);
        }
        *o = t.round() as i64;
    }
    Ok(out)
}

/// Displacement between two image corners: `Some((axis, ±1))` for a unit step
/// along one axis, `None` when the corners coincide.
fn unit_step(from: &[i64; 5], to: &[i64; 5]) -> Result<Option<(usize, i64)>, SchwarzError> {
    let diff: Vec<(usize, i64)> = (0..5)
        .map(|k| (k, to[k] - from[k]))
        .filter(|&(_, d)| d != 0)
        .collect();
    match diff.as_slice() {
        [] => Ok(None),
        [(axis, 2)] => Ok(Some((*axis, 1))),
        [(axis, -2)] => Ok(Some((*axis, -1))),
        _ => Err(SchwarzError::NonCellularImage),
    }
}

/// Image of the oriented sphere (outward normal of `{*} × I³`) under the
/// retraction onto `target`, as a cellular 2-chain. Faces whose image is
/// lower-dimensional contribute nothing.
pub fn retraction_image_chain(
    sphere: &RulingSphereSpec,
    target: Host,
) -> Result<Chain2, SchwarzError> {
    sphere.check_centered()?;
    let normals = sphere.normal_axes();
    let mut chain = Vec::new();
    for (p, &axis) in normals.iter().enumerate() {
        let in_face: Vec<usize> = normals.iter().copied().filter(|&a| a != axis).collect();
        let (q1, q2) = (in_face[0], in_face[1]);
        for side in [1.0, -1.0] {
            let face_sign = if p % 2 == 0 { 1 } else { -1 } * if side > 0.0 { 1 } else { -1 };
            let corner = |s1: f64, s2: f64| -> Result<[i64; 5], SchwarzError> {
                let mut x = sphere.center;
                x[axis] += side * QUARTER;
                x[q1] += s1 * QUARTER;
                x[q2] += s2 * QUARTER;
                half_units(&retract(&x, target)?)
            };
            let base = corner(-1.0, -1.0)?;
            let d1 = unit_step(&base, &corner(1.0, -1.0)?)?;
            let d2 = unit_step(&base, &corner(-1.0, 1.0)?)?;
            let (Some((a, s1)), Some((b, s2))) = (d1, d2) else {
                continue;
            };
            if a == b {
                return Err(SchwarzError::NonCellularImage);
            }
            let mut anchor = base.to_vec();
            if s1 < 0 {
                anchor[a] -= 2;
            }
            if s2 < 0 {
                anchor[b] -= 2;
            }
            // The face center must land on the image cell's barycenter.
            let mut mid = sphere.center;
            mid[axis] += side * QUARTER;
            let mid_img = retract(&mid, target)?;
            let expect_mid: Vec<f64> = (0..5)
                .map(|k| {
                    anchor[k] as f64 / 2.0 + if k == a || k == b { 0.5 } else { 0.0 }
                })
                .collect();
            if mid_img
                .iter()
                .zip(&expect_mid)
                .any(|(x, y)| (x - y).abs() > 1e-9)
            {
                return Err(SchwarzError::NonCellularImage);
            }
            let orient = s1 * s2 * if a < b { 1 } else { -1 };
            chain.push((
                CubicalCell {
                    anchor,
                    dirs: vec![a.min(b), a.max(b)],
                },
                face_sign * orient,
            ));
        }
    }
    Ok(chain)
}

/// Pairing of a ruling sphere with the taming cocycle `Ψ = r₀*ψ₀ + r₁*ψ₁`.
/// The own-skeleton retraction collapses the sphere to a point, so the value
/// equals `⟨ψ_other, J^∨⟩` for the dual jailcell `J^∨`.
pub fn taming_pairing(
    sphere: &RulingSphereSpec,
    psi0: &Cochain2,
    psi1: &Cochain2,
) -> Result<i64, SchwarzError> {
    let mut total = 0;
    for (target, psi) in [(Host::Z0, psi0), (Host::Z1, psi1)] {
        let chain = retraction_image_chain(sphere, target)?;
        total += evaluate_pairing(psi, &chain)?;
    }
    Ok(total)
}
