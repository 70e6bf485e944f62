//! Greedy maximal δ-separated nets on flat tori, and the diameter bookkeeping
//! for a round sphere with a thin finger attached.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Consecutive rejected candidates after which the net is declared maximal.
pub const REJECTION_RUN: usize = 100_000;
pub const MIN_DENSITY_SAMPLES: usize = 10_000;
/// Finest refinement level of the candidate grid.
const MAX_LEVEL: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatTorus {
    sides: Vec<f64>,
}

impl FlatTorus {
    pub fn new(sides: Vec<f64>) -> Result<Self, NetError> {
        if sides.is_empty() {
            return Err(NetError::InvalidInput("torus needs at least one side".into()));
        }
        if let Some(s) = sides.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
            return Err(NetError::InvalidInput(format!("side length {s}")));
        }
        Ok(Self { sides })
    }

    pub fn cube(k: usize, side: f64) -> Result<Self, NetError> {
        Self::new(vec![side; k])
    }

    pub fn dim(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[f64] {
        &self.sides
    }

    pub fn volume(&self) -> f64 {
        self.sides.iter().product()
    }

    /// Largest distance between two points.
    pub fn diameter(&self) -> f64 {
        0.5 * self.sides.iter().map(|s| s * s).sum::<f64>().sqrt()
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .zip(&self.sides)
            .map(|((x, y), s)| {
                let mut d = (x - y).abs();
                if d > *s {
                    d = d.rem_euclid(*s);
                }
                let d = d.min(s - d);
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetResult {
    pub points: Vec<Vec<f64>>,
    pub delta: f64,
    pub seed: u64,
    /// Candidates drawn from the stream, accepted or not.
    pub candidates: usize,
}

/// Seeded dyadic refinement of the torus: level `L` is the `2^L`-per-axis
/// grid, shifted by a random offset, with a random XOR scramble of the grid
/// digits and coarse-to-fine order inside each level.
struct CandidateStream {
    sides: Vec<f64>,
    shift: Vec<f64>,
    masks: Vec<u64>,
    level: u32,
    index: u64,
}

impl CandidateStream {
    fn new(sides: &[f64], seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Dyadic shifts keep grid coordinates exact on power-of-two sides.
        let shift = sides
            .iter()
            .map(|_| (rng.gen::<u32>() >> 2) as f64 / (1u64 << 30) as f64)
            .collect();
        let masks = sides.iter().map(|_| rng.gen::<u64>()).collect();
        Self {
            sides: sides.to_vec(),
            shift,
            masks,
            level: 0,
            index: 0,
        }
    }

    fn level_size(&self) -> Option<u64> {
        1u64.checked_shl(self.level * self.sides.len() as u32)
    }
}

impl CandidateStream {
    /// Writes the next candidate into `out`; `false` once the finest level is exhausted.
    fn fill(&mut self, out: &mut [f64]) -> bool {
        let k = self.sides.len();
        loop {
            let Some(size) = self.level_size().filter(|_| self.level <= MAX_LEVEL) else {
                return false;
            };
            if self.index >= size {
                self.level += 1;
                self.index = 0;
                continue;
            }
            let m = self.index;
            self.index += 1;
            let level = self.level;
            let inv_scale = (-(level as f64)).exp2();
            // Deal the bits of m round-robin to the axes, reversed so that
            // coarse offsets come first.
            let mut all_even = level > 0;
            for (a, slot) in out.iter_mut().enumerate() {
                let mut c = 0u64;
                for b in 0..level {
                    if m >> (b as usize * k + a) & 1 == 1 {
                        c |= 1 << (level - 1 - b);
                    }
                }
                let scrambled = if level == 0 { 0 } else { c ^ (self.masks[a] >> (64 - level)) };
                all_even &= scrambled & 1 == 0;
                let mut unit = self.shift[a] + scrambled as f64 * inv_scale;
                if unit >= 1.0 {
                    unit -= 1.0;
                }
                *slot = unit * self.sides[a];
            }
            // Points of the previous level have every coordinate even.
            if !all_even {
                return true;
            }
        }
    }
}

/// Dense bins of width at least `δ`, so any neighbour within `δ` lies in an
/// adjacent bin.
struct SpatialHash<'a> {
    torus: &'a FlatTorus,
    bins: Vec<usize>,
    cells: Vec<Vec<usize>>,
    offsets: Vec<Vec<usize>>,
    home: Vec<usize>,
    choice: Vec<usize>,
}

/// Largest number of bins allocated; coarser bins are used beyond it.
const MAX_BINS: usize = 1 << 22;

impl<'a> SpatialHash<'a> {
    fn new(torus: &'a FlatTorus, delta: f64) -> Self {
        let mut bins: Vec<usize> = torus
            .sides()
            .iter()
            .map(|s| ((s / delta).floor() as usize).max(1))
            .collect();
        while bins.iter().product::<usize>() > MAX_BINS {
            let widest = (0..bins.len()).max_by_key(|&a| bins[a]).unwrap();
            bins[widest] = bins[widest].div_ceil(2);
        }
        let total = bins.iter().product();
        // Per-axis neighbour bin choices, deduplicated for narrow axes.
        let offsets = bins
            .iter()
            .map(|&n| {
                let mut c: Vec<usize> = [n - 1, 0, 1].iter().map(|o| o % n).collect();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Self {
            torus,
            bins,
            cells: vec![Vec::new(); total],
            offsets,
            home: vec![0; torus.dim()],
            choice: vec![0; torus.dim()],
        }
    }

    fn bin(&self, x: f64, axis: usize) -> usize {
        let n = self.bins[axis];
        (((x / self.torus.sides()[axis]) * n as f64).floor() as i64).rem_euclid(n as i64) as usize
    }

    fn insert(&mut self, x: &[f64], id: usize) {
        let mut key = 0;
        for (a, &v) in x.iter().enumerate() {
            key = key * self.bins[a] + self.bin(v, a);
        }
        self.cells[key].push(id);
    }

    /// Calls `f` on each id in the 3^k block of bins around `x` until it
    /// returns `false`; returns whether every call returned `true`.
    fn all_neighbours(&mut self, x: &[f64], mut f: impl FnMut(usize) -> bool) -> bool {
        let k = x.len();
        for a in 0..k {
            self.home[a] = self.bin(x[a], a);
            self.choice[a] = 0;
        }
        loop {
            let mut key = 0;
            for a in 0..k {
                let n = self.bins[a];
                key = key * n + (self.home[a] + self.offsets[a][self.choice[a]]) % n;
            }
            if !self.cells[key].iter().all(|&i| f(i)) {
                return false;
            }
            let mut a = k;
            loop {
                if a == 0 {
                    return true;
                }
                a -= 1;
                self.choice[a] += 1;
                if self.choice[a] < self.offsets[a].len() {
                    break;
                }
                self.choice[a] = 0;
            }
        }
    }
}

fn check_delta(torus: &FlatTorus, delta: f64) -> Result<(), NetError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(NetError::InvalidInput(format!("δ = {delta}")));
    }
    let _ = torus;
    Ok(())
}

/// Accept each candidate at distance `≥ δ` from all accepted points, until
/// [`REJECTION_RUN`] candidates in a row are rejected.
pub fn greedy_maximal_net(torus: &FlatTorus, delta: f64, seed: u64) -> Result<NetResult, NetError> {
    check_delta(torus, delta)?;
    let mut stream = CandidateStream::new(torus.sides(), seed);
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut candidates = 0;
    let mut x = vec![0.0; torus.dim()];
    if delta > torus.diameter() {
        stream.fill(&mut x);
        points.push(x);
        return Ok(NetResult {
            points,
            delta,
            seed,
            candidates: 1,
        });
    }
    let mut hash = SpatialHash::new(torus, delta);
    let mut run = 0;
    while stream.fill(&mut x) {
        candidates += 1;
        let clear = hash.all_neighbours(&x, |i| torus.distance(&points[i], &x) >= delta);
        if clear {
            hash.insert(&x, points.len());
            points.push(x.clone());
            run = 0;
        } else {
            run += 1;
            if run >= REJECTION_RUN {
                break;
            }
        }
    }
    Ok(NetResult {
        points,
        delta,
        seed,
        candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetReport {
    pub points: usize,
    pub samples: usize,
    /// Pairs `(i, j, distance)` closer than `δ`.
    pub sparsity_violations: Vec<(usize, usize, f64)>,
    /// Sampled points farther than `δ` from every net point.
    pub density_violations: Vec<Vec<f64>>,
}

impl NetReport {
    pub fn passed(&self) -> bool {
        self.sparsity_violations.is_empty() && self.density_violations.is_empty()
    }
}

/// Exact pairwise separation plus density on `samples` uniform points drawn
/// from a generator seeded by `sample_seed`.
pub fn verify_net(
    result: &NetResult,
    torus: &FlatTorus,
    samples: usize,
    sample_seed: u64,
) -> Result<NetReport, NetError> {
    check_delta(torus, result.delta)?;
    if samples < MIN_DENSITY_SAMPLES {
        return Err(NetError::InvalidInput(format!(
            "{samples} density samples, need at least {MIN_DENSITY_SAMPLES}"
        )));
    }
    if let Some(p) = result.points.iter().find(|p| p.len() != torus.dim()) {
        return Err(NetError::InvalidInput(format!("point of dimension {}", p.len())));
    }
    let delta = result.delta;
    let pts = &result.points;
    let mut sparsity_violations = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = torus.distance(&pts[i], &pts[j]);
            if d < delta {
                sparsity_violations.push((i, j, d));
            }
        }
    }
    let mut hash = SpatialHash::new(torus, delta);
    for (i, p) in pts.iter().enumerate() {
        hash.insert(p, i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    let mut density_violations = Vec::new();
    for _ in 0..samples {
        let x: Vec<f64> = torus.sides().iter().map(|s| rng.gen::<f64>() * s).collect();
        let covered = !hash.all_neighbours(&x, |i| torus.distance(&pts[i], &x) > delta);
        if !covered {
            density_violations.push(x);
        }
    }
    Ok(NetReport {
        points: pts.len(),
        samples,
        sparsity_violations,
        density_violations,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FingerDiameter {
    pub sphere_radius: f64,
    pub delta: f64,
    pub bound: f64,
    pub below_three_halves: bool,
}

/// Diameter bound `π·r + 2δ + δ/25` for a round 2-sphere of radius `r` with a
/// finger of length `δ` and girth allowance `δ/25`.
pub fn construction1_diameter(sphere_radius: f64, delta: f64) -> Result<FingerDiameter, NetError> {
    if !(sphere_radius > 0.0 && sphere_radius.is_finite()) {
        return Err(NetError::InvalidInput(format!("sphere radius {sphere_radius}")));
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(NetError::InvalidInput(format!("δ = {delta}")));
    }
    let bound = PI * sphere_radius + 2.0 * delta + delta / 25.0;
    Ok(FingerDiameter {
        sphere_radius,
        delta,
        bound,
        below_three_halves: bound < 1.5,
    })
}
