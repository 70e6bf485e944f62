use std::collections::BTreeSet;

use serde::Serialize;

use crate::cubical::{build_skeleton, subsets, CubicalCell, CubicalComplex, LatticeBasis};
use crate::homology::{evaluate_pairing, Chain2, Coefficients, Cochain2};

use super::{Host, SchwarzError};

/// The 2-skeleton of `host` modulo `(period·ℤ)⁵`.
pub fn skeleton(host: Host, period: i64) -> CubicalComplex {
    let lattice = LatticeBasis::cubic(5, period).expect("cubic lattice has full rank");
    build_skeleton(5, 2, &lattice, &host.offset()).expect("valid skeleton parameters")
}

/// The taming cocycle on `Z₀` at the square spanned from the integer point
/// `v` along axes `i < j` (0-based):
///
/// * `0` when `j` is the fifth axis,
/// * `v₂ + v₃ + v₄ + v₅ mod 2` on the `(1, 2)`-squares,
/// * `v₄ + v₅ mod 2` otherwise.
pub fn psi0(v: &[i64; 5], i: usize, j: usize) -> Result<i64, SchwarzError> {
    if i >= j || j >= 5 {
        return Err(SchwarzError::InvalidCell(i, j));
    }
    Ok(if j == 4 {
        0
    } else if (i, j) == (0, 1) {
        (v[1] + v[2] + v[3] + v[4]).rem_euclid(2)
    } else {
        (v[3] + v[4]).rem_euclid(2)
    })
}

/// `ψ₀` as an integer cochain on a `Z₀` quotient complex.
pub fn psi0_cochain(complex: &CubicalComplex) -> Cochain2 {
    assert!(
        complex.offset().iter().all(|x| x % 2 == 0),
        "ψ₀ lives on the integer skeleton"
    );
    Cochain2::from_fn(complex, Coefficients::Integer, |c| {
        let v: [i64; 5] = std::array::from_fn(|k| c.anchor[k] / 2);
        psi0(&v, c.dirs[0], c.dirs[1]).expect("2-cells have increasing axes")
    })
}

const HALF_U_UNITS: [i64; 5] = [1; 5];

/// `ψ₁ = ψ₀ ∘ τ⁻¹` on the dual skeleton, where `τ(x) = x + u/2`.
pub fn tau_pullback(psi0: &Cochain2, z1: &CubicalComplex) -> Cochain2 {
    let minus: Vec<i64> = HALF_U_UNITS.iter().map(|x| -x).collect();
    Cochain2::from_fn(z1, psi0.mode(), |c| {
        psi0.get(&c.translated(&minus))
            .expect("τ⁻¹ maps Z₁ cells onto Z₀ cells")
    })
}

/// `ψ₁ ∘ τ` on the integer skeleton; inverse of [`tau_pullback`].
pub fn tau_pushforward(psi1: &Cochain2, z0: &CubicalComplex) -> Cochain2 {
    Cochain2::from_fn(z0, psi1.mode(), |c| {
        psi1.get(&c.translated(&HALF_U_UNITS))
            .expect("τ maps Z₀ cells onto Z₁ cells")
    })
}

/// Boundary of a unit 3-cube with vertices on the host grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct JailCell {
    pub host: Host,
    /// Minimal corner, half-integer units.
    pub anchor: [i64; 5],
    /// Strictly increasing 0-based axes.
    pub axes: [usize; 3],
}

impl JailCell {
    pub fn new(host: Host, anchor: [i64; 5], axes: [usize; 3]) -> Result<Self, SchwarzError> {
        if !(axes[0] < axes[1] && axes[1] < axes[2] && axes[2] < 5) {
            return Err(SchwarzError::InvalidCell(axes[0], axes[2]));
        }
        let parity = host.offset()[0];
        assert!(
            anchor.iter().all(|x| x.rem_euclid(2) == parity),
            "jailcell anchor must be a vertex of its host"
        );
        Ok(Self { host, anchor, axes })
    }
}

/// `Σ_cyclic (v + e_k; i, j) − (v; i, j)` over the cyclic permutations of
/// the axes. Squares are reported with increasing axes; a transposed pair
/// carries the orientation sign.
pub fn jailcell_chain(j: &JailCell) -> Chain2 {
    let [a, b, c] = j.axes;
    let mut chain = Vec::with_capacity(6);
    for (p, q, r) in [(a, b, c), (b, c, a), (c, a, b)] {
        let (lo, hi, orient) = if p < q { (p, q, 1) } else { (q, p, -1) };
        let square = |anchor: Vec<i64>| CubicalCell {
            anchor,
            dirs: vec![lo, hi],
        };
        let mut far = j.anchor.to_vec();
        far[r] += 2;
        chain.push((square(far), orient));
        chain.push((square(j.anchor.to_vec()), -orient));
    }
    chain
}

/// Every jailcell of a quotient complex: one per vertex coset and axis triple.
pub fn all_jailcells(complex: &CubicalComplex, host: Host) -> Vec<JailCell> {
    let mut out = Vec::new();
    for axes in subsets(5, 3) {
        for v in complex.cells(0) {
            let anchor: [i64; 5] = std::array::from_fn(|k| v.anchor[k]);
            out.push(JailCell::new(host, anchor, [axes[0], axes[1], axes[2]]).expect("valid triple"));
        }
    }
    out
}

/// Pairing of a cochain with every jailcell of a complex.
#[derive(Clone, Debug, Serialize)]
pub struct PairingTable {
    pub entries: Vec<(JailCell, i64)>,
}

impl PairingTable {
    pub fn compute(
        psi: &Cochain2,
        complex: &CubicalComplex,
        host: Host,
    ) -> Result<Self, SchwarzError> {
        let entries = all_jailcells(complex, host)
            .into_iter()
            .map(|j| {
                let value = evaluate_pairing(psi, &jailcell_chain(&j))?;
                Ok((j, value))
            })
            .collect::<Result<Vec<_>, SchwarzError>>()?;
        Ok(Self { entries })
    }

    pub fn all_unit(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.abs() == 1)
    }

    pub fn count(&self, value: i64) -> usize {
        self.entries.iter().filter(|(_, v)| *v == value).count()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GammaReport {
    pub checked: usize,
    /// `(cell, generator index)` with `ψ(c + γ) ≠ ψ(c)`.
    pub violations: Vec<(CubicalCell, usize)>,
}

impl GammaReport {
    pub fn is_invariant(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violating_cells(&self) -> BTreeSet<CubicalCell> {
        self.violations.iter().map(|(c, _)| c.clone()).collect()
    }
}

/// Check `ψ(c + γ) = ψ(c)` for every cell of `psi` and every generator of
/// `Γ = (2ℤ)⁴ ⊕ ⟨u⟩`.
pub fn verify_gamma_invariance(psi: &Cochain2) -> GammaReport {
    let gamma = LatticeBasis::gamma();
    let mut report = GammaReport::default();
    for (cell, value) in psi.iter() {
        for (g, shift) in gamma.generators().iter().enumerate() {
            report.checked += 1;
            let moved = psi
                .get(&cell.translated(shift))
                .expect("Γ preserves the skeleton");
            if moved != value {
                report.violations.push((cell.clone(), g));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi0_cases() {
        assert_eq!(psi0(&[0, 0, 0, 0, 0], 0, 4).unwrap(), 0);
        assert_eq!(psi0(&[0, 1, 0, 0, 0], 0, 1).unwrap(), 1);
        assert_eq!(psi0(&[0, 0, 0, 1, 0], 1, 2).unwrap(), 1);
        assert_eq!(psi0(&[1, 0, 0, 0, 1], 0, 1).unwrap(), 1);
        assert_eq!(psi0(&[0, 1, 1, 0, 0], 0, 1).unwrap(), 0);
        assert!(psi0(&[0; 5], 2, 2).is_err());
        assert!(psi0(&[0; 5], 3, 1).is_err());
    }

    #[test]
    fn jailcell_chain_shape() {
        let j = JailCell::new(Host::Z0, [0; 5], [0, 2, 3]).unwrap();
        let chain = jailcell_chain(&j);
        assert_eq!(chain.len(), 6);
        assert_eq!(chain.iter().filter(|(_, s)| *s == 1).count(), 3);
        assert_eq!(chain.iter().filter(|(_, s)| *s == -1).count(), 3);
        // Cyclic form agrees with the cube boundary convention.
        let cube = CubicalCell::new(vec![0; 5], vec![0, 2, 3]).unwrap();
        let mut a = cube.faces();
        let mut b = chain.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn pairing_on_125_jailcell_at_origin() {
        let z0 = skeleton(Host::Z0, 2);
        let psi = psi0_cochain(&z0);
        let j = JailCell::new(Host::Z0, [0; 5], [0, 1, 4]).unwrap();
        assert_eq!(evaluate_pairing(&psi, &jailcell_chain(&j)).unwrap(), 1);
    }

    #[test]
    fn tau_round_trip() {
        let z0 = skeleton(Host::Z0, 2);
        let z1 = skeleton(Host::Z1, 2);
        let p0 = psi0_cochain(&z0);
        let p1 = tau_pullback(&p0, &z1);
        assert_eq!(tau_pushforward(&p1, &z0), p0);
    }

    #[test]
    fn corrupted_cochain_reports_its_orbit() {
        let z0 = skeleton(Host::Z0, 2);
        let mut psi = psi0_cochain(&z0);
        let target = z0.cells(2)[17].clone();
        let old = psi.get(&target).unwrap();
        psi.set(&target, 1 - old).unwrap();
        let report = verify_gamma_invariance(&psi);
        let partner = z0.canonical(&target.translated(&[2; 5]));
        let expected: BTreeSet<CubicalCell> = [target, partner].into_iter().collect();
        assert_eq!(report.violating_cells(), expected);
    }
}
