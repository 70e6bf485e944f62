//! Slow, independent reference computations used to cross-check the main
//! implementations. Each one avoids the code path it is meant to check.

use std::f64::consts::PI;

use crate::cubical::LatticeBasis;
use crate::schwarz::{Host, Point5};
use crate::spaceform::{sectional_curvature, sphere_area};

/// ℓ∞ distance from `x` to the 2-skeleton of `host`, minimised over every
/// square with anchor within one grid step of `⌊x⌋` and every axis pair.
pub fn linf_distance_to_skeleton(x: &Point5, host: Host) -> f64 {
    let s = host.shift();
    let base: [f64; 5] = std::array::from_fn(|k| (x[k] - s).floor() + s);
    let mut best = f64::INFINITY;
    for code in 0..243usize {
        let mut anchor = base;
        let mut c = code;
        for a in anchor.iter_mut() {
            *a += (c % 3) as f64 - 1.0;
            c /= 3;
        }
        for i in 0..5 {
            for j in i + 1..5 {
                let mut worst = 0.0f64;
                for k in 0..5 {
                    let (lo, hi) = if k == i || k == j {
                        (anchor[k], anchor[k] + 1.0)
                    } else {
                        (anchor[k], anchor[k])
                    };
                    let gap = if x[k] < lo {
                        lo - x[k]
                    } else if x[k] > hi {
                        x[k] - hi
                    } else {
                        0.0
                    };
                    worst = worst.max(gap);
                }
                best = best.min(worst);
            }
        }
    }
    best
}

/// Rank over GF(2) by inserting rows one at a time into a basis keyed by
/// leading bit.
pub fn gf2_rank_by_rows(rows: &[Vec<bool>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let words = width.div_ceil(64);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; width];
    let mut rank = 0;
    for row in rows {
        let mut v = vec![0u64; words];
        for (j, &b) in row.iter().enumerate() {
            if b {
                v[j / 64] |= 1 << (j % 64);
            }
        }
        while let Some(lead) = (0..width).rev().find(|&j| v[j / 64] >> (j % 64) & 1 == 1) {
            match &basis[lead] {
                Some(b) => v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                None => {
                    basis[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Mod-2 Betti numbers of the `k`-skeleton of the cube grid on the torus
/// `(ℤ/period)^n`, built directly from anchors and direction bitmasks.
pub fn torus_skeleton_betti(n: usize, period: usize, k: usize) -> Vec<usize> {
    let anchors = period.pow(n as u32);
    let masks_of = |p: usize| -> Vec<u32> {
        (0u32..1 << n).filter(|m| m.count_ones() as usize == p).collect()
    };
    let cells: Vec<Vec<(usize, u32)>> = (0..=k)
        .map(|p| {
            masks_of(p)
                .into_iter()
                .flat_map(|m| (0..anchors).map(move |a| (a, m)))
                .collect()
        })
        .collect();
    let index = |p: usize, cell: (usize, u32)| cells[p].iter().position(|c| *c == cell).unwrap();
    let step = |a: usize, axis: usize| -> usize {
        let unit = period.pow(axis as u32);
        let digit = a / unit % period;
        a - digit * unit + (digit + 1) % period * unit
    };
    let mut ranks = vec![0; k + 2];
    for p in 1..=k {
        let rows: Vec<Vec<bool>> = cells[p]
            .iter()
            .map(|&(a, m)| {
                let mut row = vec![false; cells[p - 1].len()];
                for axis in (0..n).filter(|x| m >> x & 1 == 1) {
                    let face = m & !(1 << axis);
                    row[index(p - 1, (a, face))] ^= true;
                    row[index(p - 1, (step(a, axis), face))] ^= true;
                }
                row
            })
            .collect();
        ranks[p] = gf2_rank_by_rows(&rows);
    }
    (0..=k)
        .map(|p| cells[p].len() - ranks[p] - ranks[p + 1])
        .collect()
}

/// Lattice membership by solving `Σ cᵢ gᵢ = v` in floating point from the
/// original generators and checking the coefficients are integers.
pub fn in_lattice_by_solve(v: &[i64], lattice: &LatticeBasis) -> bool {
    let gens = lattice.generators();
    let n = gens.len();
    // Columns are generators: a[r][c] = gens[c][r].
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|r| {
            let mut row: Vec<f64> = (0..n).map(|c| gens[c][r] as f64).collect();
            row.push(v[r] as f64);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        let p = a[col][col];
        if p.abs() < 1e-12 {
            return false;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col] / p;
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    (0..n).all(|r| {
        let c = a[r][n] / a[r][r];
        (c - c.round()).abs() < 1e-9
    })
}

/// Whether `y` is the canonical representative of `x`: it lies in the pivot
/// box and differs from `x` by a lattice vector.
pub fn is_canonical_representative(x: &[i64], y: &[i64], lattice: &LatticeBasis) -> bool {
    let in_box = y.iter().zip(lattice.pivots()).all(|(v, p)| (0..p).contains(v));
    let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    in_box && in_lattice_by_solve(&diff, lattice)
}

/// Closed-form ball volumes in dimensions 2 and 3.
pub fn ball_volume_closed_form(d: usize, sigma: f64, r: f64) -> Option<f64> {
    let k = sectional_curvature(d, sigma);
    let s = k.abs().sqrt();
    match d {
        2 if k > 0.0 => Some(2.0 * PI * (1.0 - (s * r).cos()) / k),
        2 if k < 0.0 => Some(2.0 * PI * ((s * r).cosh() - 1.0) / -k),
        2 => Some(PI * r * r),
        3 if k > 0.0 => Some(PI * (2.0 * s * r - (2.0 * s * r).sin()) / (s * s * s)),
        3 if k < 0.0 => Some(PI * ((2.0 * s * r).sinh() - 2.0 * s * r) / (s * s * s)),
        3 => Some(4.0 * PI / 3.0 * r * r * r),
        _ => None,
    }
}

/// Ball volume by fixed composite Gauss-Legendre (5 nodes per panel).
pub fn ball_volume_gauss(d: usize, sigma: f64, r: f64, panels: usize) -> f64 {
    const NODES: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_888_9),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let k = sectional_curvature(d, sigma);
    let sn = |t: f64| {
        if k > 0.0 {
            (k.sqrt() * t).sin() / k.sqrt()
        } else if k < 0.0 {
            ((-k).sqrt() * t).sinh() / (-k).sqrt()
        } else {
            t
        }
    };
    let h = r / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in NODES {
            total += w * 0.5 * h * sn(mid + 0.5 * h * x).powi(d as i32 - 1);
        }
    }
    sphere_area(d - 1) * total
}

/// Largest δ-separated subset of a circle of circumference `c`.
pub fn circle_max_separated(c: f64, delta: f64) -> usize {
    ((c / delta) * (1.0 + 1e-12)).floor().max(1.0) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::canonicalize;
    use crate::cubical::CubicalCell;
    use crate::homology::ChainComplexGF2;
    use crate::schwarz::{dist_to_skeleton, skeleton};
    use crate::spaceform::{ball_volume, SpaceFormQuery};

    #[test]
    fn brute_distance_matches_formula() {
        let x = [0.1, 0.37, 2.9, -1.2, 0.5];
        for host in [Host::Z0, Host::Z1] {
            assert!((linf_distance_to_skeleton(&x, host) - dist_to_skeleton(&x, host)).abs() < 1e-12);
        }
        assert_eq!(linf_distance_to_skeleton(&[0.0, 0.0, 0.0, 0.3, 0.7], Host::Z0), 0.0);
    }

    #[test]
    fn row_rank() {
        let rows = vec![vec![true, true, false], vec![false, true, true], vec![true, false, true]];
        assert_eq!(gf2_rank_by_rows(&rows), 2);
        assert_eq!(gf2_rank_by_rows(&[]), 0);
    }

    #[test]
    fn torus_betti() {
        assert_eq!(torus_skeleton_betti(1, 3, 1), [1, 1]);
        assert_eq!(torus_skeleton_betti(2, 2, 2), [1, 2, 1]);
        assert_eq!(torus_skeleton_betti(3, 2, 3), [1, 3, 3, 1]);
    }

    #[test]
    fn skeleton_b2_agrees() {
        let oracle = torus_skeleton_betti(5, 2, 2);
        for host in [Host::Z0, Host::Z1] {
            let c = ChainComplexGF2::from_cubical(&skeleton(host, 2)).unwrap();
            assert_eq!(c.betti_numbers(), oracle);
        }
    }

    #[test]
    fn canonical_forms_check_out() {
        let lattices = [
            LatticeBasis::lambda_n(1).unwrap(),
            LatticeBasis::lambda_n(2).unwrap(),
            LatticeBasis::cubic(5, 2).unwrap(),
        ];
        let points = [[3, -7, 11, 0, 5], [-1, -1, -1, -1, -1], [9, 2, 4, 13, -6]];
        for l in &lattices {
            for p in &points {
                let cell = CubicalCell::new(p.to_vec(), vec![]).unwrap();
                let y = canonicalize(&cell, l).anchor;
                assert!(is_canonical_representative(p, &y, l), "{p:?} -> {y:?}");
                let mut off = y.clone();
                off[0] += 1;
                assert!(!is_canonical_representative(p, &off, l));
            }
        }
    }

    #[test]
    fn volume_oracles_agree() {
        for (d, sigma, r) in [(2, 3.0, 1.0), (2, -4.0, 0.7), (3, 6.0, 2.0), (3, -6.0, 1.2), (3, 0.0, 2.0)] {
            let exact = ball_volume_closed_form(d, sigma, r).unwrap();
            let adaptive = ball_volume(SpaceFormQuery { dim: d, sigma, radius: r }).unwrap();
            let gauss = ball_volume_gauss(d, sigma, r, 200);
            assert!((adaptive / exact - 1.0).abs() < 1e-10, "{d} {sigma} {r}");
            assert!((gauss / exact - 1.0).abs() < 1e-10, "{d} {sigma} {r}");
        }
    }

    #[test]
    fn circle_packing() {
        assert_eq!(circle_max_separated(1.0, 0.25), 4);
        assert_eq!(circle_max_separated(1.0, 0.3), 3);
        assert_eq!(circle_max_separated(1.0, 2.0), 1);
    }
}
