use crate::matrix::BitMatrix;

use super::ring::{Class, CohomRing};
use super::CharClassError;

/// Second Wu class `v₂ = w₂ + w₁²`.
pub fn wu_class(ring: &CohomRing) -> Class {
    ring.w2().add(&ring.cup(ring.w1(), ring.w1()))
}

pub fn is_pin_minus(ring: &CohomRing) -> bool {
    wu_class(ring).is_zero()
}

/// `Sq²` on `H^{d−2}`, which is cup product with `v₂`.
pub fn sq2_topminus2(ring: &CohomRing, x: &Class) -> Result<Class, CharClassError> {
    let expected = ring.dim().checked_sub(2).ok_or(CharClassError::DegreeMismatch {
        expected: 2,
        found: ring.dim(),
    })?;
    if x.degree != expected || x.coeffs.len() != ring.rank(expected) {
        return Err(CharClassError::DegreeMismatch {
            expected,
            found: x.degree,
        });
    }
    Ok(ring.cup(&wu_class(ring), x))
}

/// Principal circle bundle over the ring's manifold.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleBundleData {
    /// Mod-2 Euler class.
    pub e2: Class,
    pub fiber_radius: f64,
    /// Connection form label; carried for reporting only.
    pub connection: String,
}

impl CircleBundleData {
    pub fn new(ring: &CohomRing, e2: Class, fiber_radius: f64) -> Result<Self, CharClassError> {
        if e2.degree != 2 || e2.coeffs.len() != ring.rank(2) {
            return Err(CharClassError::DegreeMismatch {
                expected: 2,
                found: e2.degree,
            });
        }
        if !(fiber_radius > 0.0 && fiber_radius.is_finite()) {
            return Err(CharClassError::InvalidInput(format!(
                "fiber radius must be positive, got {fiber_radius}"
            )));
        }
        Ok(Self {
            e2,
            fiber_radius,
            connection: "theta".into(),
        })
    }
}

/// Some `ξ ∈ H^{d−2}` with `ξ ⌣ e₂` equal to the top class. Among the
/// solutions, one with `v₂ ⌣ ξ = 0` is returned when it exists, so the
/// obstruction does not depend on the chosen basis.
pub fn find_xi(ring: &CohomRing, bundle: &CircleBundleData) -> Result<Class, CharClassError> {
    let degree = ring.dim().checked_sub(2).ok_or(CharClassError::DegreeMismatch {
        expected: 2,
        found: ring.dim(),
    })?;
    let n = ring.rank(degree);
    let v2 = wu_class(ring);
    let pairing = |class: &Class, i: usize| ring.evaluate(&ring.cup(&ring.basis(degree, i), class));
    let both = BitMatrix::from_fn(2, n, |r, i| pairing(if r == 0 { &bundle.e2 } else { &v2 }, i));
    let euler = BitMatrix::from_fn(1, n, |_, i| pairing(&bundle.e2, i));
    let coeffs = both
        .solve(&[true, false])
        .or_else(|| euler.solve(&[true]))
        .ok_or(CharClassError::FStarNonzero)?;
    Ok(Class { degree, coeffs })
}

/// Whether `(v₂ + e₂) ⌣ ξ` is nonzero in the top degree.
pub fn hopf_obstruction(
    ring: &CohomRing,
    bundle: &CircleBundleData,
    xi: &Class,
) -> Result<bool, CharClassError> {
    let correction = sq2_topminus2(ring, xi)?;
    let main = ring.cup(&bundle.e2, xi);
    Ok(ring.evaluate(&correction.add(&main)))
}

/// The branch that certifies the codimension-two width bound, if any.
pub fn certify(
    ring: &CohomRing,
    bundle: &CircleBundleData,
) -> Result<Option<super::Branch>, CharClassError> {
    match find_xi(ring, bundle) {
        Ok(xi) => Ok(hopf_obstruction(ring, bundle, &xi)?.then_some(super::Branch::HopfNonzero)),
        Err(CharClassError::FStarNonzero) => Ok(Some(super::Branch::FStarNonzero)),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charclass::{cp2, product, real_projective, sphere, sphere_product, torus};

    fn bundle(ring: &CohomRing, e2: Class) -> CircleBundleData {
        CircleBundleData::new(ring, e2, 0.1).unwrap()
    }

    #[test]
    fn wu_examples() {
        for d in 1..6 {
            assert!(wu_class(&sphere(d)).is_zero());
        }
        let c = cp2();
        assert_eq!(wu_class(&c), c.basis(2, 0));
        assert!(is_pin_minus(&torus(3)));
        assert!(!is_pin_minus(&c));
        for d in 3..7 {
            assert!(is_pin_minus(&sphere_product(d)));
        }
        // w₂ = w₁² on RP² cancels.
        assert!(is_pin_minus(&real_projective(2)));
        assert!(!is_pin_minus(&real_projective(4)));
    }

    #[test]
    fn sq2_examples() {
        let c = cp2();
        let top = c.basis(4, 0);
        assert_eq!(sq2_topminus2(&c, &c.basis(2, 0)).unwrap(), top);
        assert!(sq2_topminus2(&c, &c.zero(2)).unwrap().is_zero());
        let s = sphere_product(4);
        for i in 0..s.rank(2) {
            assert!(sq2_topminus2(&s, &s.basis(2, i)).unwrap().is_zero());
        }
        assert!(matches!(
            sq2_topminus2(&c, &c.basis(0, 0)),
            Err(CharClassError::DegreeMismatch { expected: 2, found: 0 })
        ));
    }

    #[test]
    fn find_xi_examples() {
        let s = sphere(2);
        let b = bundle(&s, s.basis(2, 0));
        let xi = find_xi(&s, &b).unwrap();
        assert_eq!(xi, s.unit());
        assert!(hopf_obstruction(&s, &b, &xi).unwrap());

        let zero = bundle(&s, s.zero(2));
        assert_eq!(find_xi(&s, &zero), Err(CharClassError::FStarNonzero));

        let c = cp2();
        let b = bundle(&c, c.basis(2, 0));
        let xi = find_xi(&c, &b).unwrap();
        assert_eq!(xi, c.basis(2, 0));
        assert!(!hopf_obstruction(&c, &b, &xi).unwrap());
        assert_eq!(certify(&c, &b).unwrap(), None);
    }

    #[test]
    fn pin_minus_reduces_to_euler_pairing() {
        let rings = [
            sphere_product(4),
            sphere_product(5),
            torus(4),
            product(&sphere(2), &torus(2)),
        ];
        for ring in rings {
            assert!(is_pin_minus(&ring));
            for mask in 0..(1u32 << ring.rank(2)) {
                let e2 = Class {
                    degree: 2,
                    coeffs: (0..ring.rank(2)).map(|i| mask >> i & 1 == 1).collect(),
                };
                let b = bundle(&ring, e2.clone());
                match find_xi(&ring, &b) {
                    Ok(xi) => {
                        assert!(ring.evaluate(&ring.cup(&e2, &xi)));
                        assert!(hopf_obstruction(&ring, &b, &xi).unwrap());
                    }
                    Err(e) => assert_eq!(e, CharClassError::FStarNonzero),
                }
            }
        }
    }
}

#[cfg(test)]
mod invariance {
    use proptest::prelude::*;

    use super::*;
    use crate::charclass::{bundled, bundled_names, BasisChange};

    /// `P · L · U` with unit-triangular `L`, `U` and a cyclic row shift `P`.
    fn invertible(n: usize, bits: &mut impl Iterator<Item = bool>, shift: usize) -> BitMatrix {
        let l = BitMatrix::from_fn(n, n, |i, j| i == j || (j < i && bits.next().unwrap()));
        let u = BitMatrix::from_fn(n, n, |i, j| i == j || (j > i && bits.next().unwrap()));
        let lu = l.mul(&u).unwrap();
        BitMatrix::from_fn(n, n, |i, j| lu.get((i + shift) % n.max(1), j))
    }

    fn change_for(ring: &CohomRing, seed_bits: &[bool], shift: usize) -> BasisChange {
        let mut bits = seed_bits.iter().copied().cycle();
        let d = ring.dim();
        let mats = (0..=d)
            .map(|p| {
                let n = ring.rank(p);
                if p == 0 || p == d {
                    BitMatrix::identity(n)
                } else {
                    invertible(n, &mut bits, shift + p)
                }
            })
            .collect();
        BasisChange::new(mats).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn obstruction_survives_basis_change(
            bits in proptest::collection::vec(any::<bool>(), 64),
            shift in 0usize..8,
        ) {
            for name in bundled_names() {
                let ring = bundled(name).unwrap();
                if ring.dim() < 2 {
                    continue;
                }
                let change = change_for(&ring, &bits, shift);
                let moved = ring.change_basis(&change).unwrap();
                prop_assert_eq!(is_pin_minus(&moved), is_pin_minus(&ring));
                prop_assert_eq!(change.apply(&wu_class(&ring)), wu_class(&moved));
                for mask in 0..(1u32 << ring.rank(2)) {
                    let e2 = Class {
                        degree: 2,
                        coeffs: (0..ring.rank(2)).map(|i| mask >> i & 1 == 1).collect(),
                    };
                    let before = CircleBundleData::new(&ring, e2.clone(), 1.0).unwrap();
                    let after = CircleBundleData::new(&moved, change.apply(&e2), 1.0).unwrap();
                    prop_assert_eq!(
                        certify(&ring, &before).unwrap(),
                        certify(&moved, &after).unwrap(),
                        "{} e2={}", name, e2
                    );
                }
            }
        }
    }
}
