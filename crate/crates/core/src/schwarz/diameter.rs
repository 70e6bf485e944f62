use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Half-side of the cube `I³`, `I = [−¼, ¼]`.
const HALF_SIDE: f64 = 0.25;

/// In-face edges join grid points whose offset `(a, b)` is primitive with
/// `|a|, |b| ≤ REACH`; this bounds the directional bias of the graph metric
/// by about 1.3%.
const REACH: i64 = 3;

/// Weighted graph on a regular grid over the surface of the cube `∂I³`.
///
/// Each face carries a `(subdiv + 1)²` grid; grid points on cube edges are
/// shared between faces, so paths cross from face to face through them. Edge
/// weights are Euclidean segment lengths inside a face, which are exact
/// surface lengths, so graph distances overestimate intrinsic distances.
pub struct SurfaceGraph {
    subdiv: usize,
    index: Vec<u32>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

#[derive(PartialEq)]
struct State {
    dist: f64,
    node: u32,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl SurfaceGraph {
    pub fn new(subdiv: usize) -> Self {
        assert!(subdiv >= 1);
        let s = subdiv;
        let side = s + 1;
        let lin = |p: [usize; 3]| (p[0] * side + p[1]) * side + p[2];

        let mut index = vec![u32::MAX; side * side * side];
        let mut count = 0u32;
        for i in 0..side {
            for j in 0..side {
                for k in 0..side {
                    if [i, j, k].iter().any(|&c| c == 0 || c == s) {
                        index[lin([i, j, k])] = count;
                        count += 1;
                    }
                }
            }
        }

        let steps: Vec<(i64, i64)> = (-REACH..=REACH)
            .flat_map(|a| (-REACH..=REACH).map(move |b| (a, b)))
            .filter(|&(a, b)| (a > 0 || (a == 0 && b > 0)) && gcd(a, b) == 1)
            .collect();
        let h = 2.0 * HALF_SIDE / s as f64;

        let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); count as usize];
        for axis in 0..3 {
            let (p, q) = match axis {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            for level in [0, s] {
                for u in 0..side {
                    for v in 0..side {
                        for &(a, b) in &steps {
                            let (u2, v2) = (u as i64 + a, v as i64 + b);
                            if u2 < 0 || v2 < 0 || u2 > s as i64 || v2 > s as i64 {
                                continue;
                            }
                            let mut x = [0; 3];
                            x[axis] = level;
                            x[p] = u;
                            x[q] = v;
                            let mut y = x;
                            y[p] = u2 as usize;
                            y[q] = v2 as usize;
                            let (ix, iy) = (index[lin(x)], index[lin(y)]);
                            let w = h * ((a * a + b * b) as f64).sqrt();
                            adj[ix as usize].push((iy, w));
                            adj[iy as usize].push((ix, w));
                        }
                    }
                }
            }
        }

        let mut offsets = Vec::with_capacity(adj.len() + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for list in adj {
            for (t, w) in list {
                targets.push(t);
                weights.push(w);
            }
            offsets.push(targets.len());
        }
        Self {
            subdiv,
            index,
            offsets,
            targets,
            weights,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Vertex at integer grid coordinates in `[0, subdiv]³`, if on the surface.
    pub fn vertex(&self, p: [usize; 3]) -> Option<u32> {
        let side = self.subdiv + 1;
        if p.iter().any(|&c| c > self.subdiv) {
            return None;
        }
        let id = self.index[(p[0] * side + p[1]) * side + p[2]];
        (id != u32::MAX).then_some(id)
    }

    /// Single-source shortest path lengths.
    pub fn distances_from(&self, source: u32) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.vertex_count()];
        let mut heap = BinaryHeap::new();
        dist[source as usize] = 0.0;
        heap.push(State {
            dist: 0.0,
            node: source,
        });
        while let Some(State { dist: d, node }) = heap.pop() {
            if d > dist[node as usize] {
                continue;
            }
            let n = node as usize;
            for e in self.offsets[n]..self.offsets[n + 1] {
                let t = self.targets[e] as usize;
                let nd = d + self.weights[e];
                if nd < dist[t] {
                    dist[t] = nd;
                    heap.push(State {
                        dist: nd,
                        node: t as u32,
                    });
                }
            }
        }
        dist
    }

    pub fn eccentricity(&self, source: u32) -> f64 {
        self.distances_from(source)
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Graph diameter. The cube's symmetry group acts transitively on
    /// faces and each face's dihedral group reduces sources to the triangle
    /// `0 ≤ j ≤ i ≤ subdiv/2` of one face.
    pub fn diameter(&self) -> f64 {
        let half = self.subdiv.div_ceil(2);
        let mut best: f64 = 0.0;
        for i in 0..=half {
            for j in 0..=i {
                let v = self.vertex([i, j, 0]).expect("bottom face vertex");
                best = best.max(self.eccentricity(v));
            }
        }
        best
    }
}

/// Estimated intrinsic diameter of the polyhedral sphere `∂[−¼, ¼]³`.
pub fn ruling_sphere_diameter(subdiv: usize) -> f64 {
    SurfaceGraph::new(subdiv).diameter()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_count_matches_surface_grid() {
        let s = 8;
        let g = SurfaceGraph::new(s);
        assert_eq!(g.vertex_count(), (s + 1).pow(3) - (s - 1).pow(3));
    }

    #[test]
    fn adjacent_grid_points_are_one_step_apart() {
        let g = SurfaceGraph::new(8);
        let a = g.vertex([0, 0, 0]).unwrap();
        let b = g.vertex([1, 0, 0]).unwrap();
        assert!((g.distances_from(a)[b as usize] - 0.5 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn opposite_corners_match_unfolding() {
        // The unfolded corner-to-corner geodesic crosses the middle of a cube
        // edge along (2, 1) steps, so the graph reproduces √5/2 exactly.
        let g = SurfaceGraph::new(8);
        let a = g.vertex([0, 0, 0]).unwrap();
        let b = g.vertex([8, 8, 8]).unwrap();
        let d = g.distances_from(a)[b as usize];
        assert!((d - 0.5 * 5f64.sqrt()).abs() < 1e-12, "{d}");
    }
}
