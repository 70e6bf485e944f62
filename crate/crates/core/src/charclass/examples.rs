//! Generators for the standard example rings and the bundled data files.

use crate::cubical::{binomial, subsets};

use super::format::parse_ring;
use super::ring::{Class, CohomRing, RingBuilder};
use super::CharClassError;

/// `H*(S^d)`, `d ≥ 1`.
pub fn sphere(d: usize) -> CohomRing {
    assert!(d >= 1, "sphere dimension must be positive");
    let mut b = RingBuilder::new(&format!("s{d}"), d).basis(0, vec!["1".into()]);
    b = b.basis(d, vec!["s".into()]);
    b.build().expect("sphere ring is valid")
}

/// `H*(T^k)`: an exterior algebra, basis = subsets in lexicographic order.
pub fn torus(k: usize) -> CohomRing {
    assert!(k >= 1, "torus dimension must be positive");
    let label = |s: &[usize]| -> String {
        if s.is_empty() {
            "1".into()
        } else {
            s.iter().map(|i| format!("x{}", i + 1)).collect()
        }
    };
    let by_degree: Vec<Vec<Vec<usize>>> = (0..=k).map(|p| subsets(k, p)).collect();
    let mut b = RingBuilder::new(&format!("t{k}"), k);
    for (p, sets) in by_degree.iter().enumerate() {
        b = b.basis(p, sets.iter().map(|s| label(s)).collect());
    }
    for p in 1..=k {
        for q in p..=k - p {
            for (i, s) in by_degree[p].iter().enumerate() {
                for (j, t) in by_degree[q].iter().enumerate() {
                    if s.iter().any(|x| t.contains(x)) {
                        continue;
                    }
                    let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
                    u.sort_unstable();
                    let idx = by_degree[p + q].iter().position(|w| *w == u).unwrap();
                    b = b.product((p, i), (q, j), Class::basis(p + q, binomial(k, p + q), idx));
                }
            }
        }
    }
    b.build().expect("torus ring is valid")
}

/// `H*(RP^n) = ℤ₂[x]/x^{n+1}` with total Stiefel-Whitney class `(1+x)^{n+1}`.
pub fn real_projective(n: usize) -> CohomRing {
    assert!(n >= 1, "projective dimension must be positive");
    truncated_polynomial(&format!("rp{n}"), n, 1, "x", binomial(n + 1, 1) % 2 == 1, binomial(n + 1, 2) % 2 == 1)
}

/// `H*(CP²) = ℤ₂[a]/a³`, `w₂ = 3a = a`.
pub fn cp2() -> CohomRing {
    truncated_polynomial("cp2", 4, 2, "a", false, true)
}

fn truncated_polynomial(name: &str, d: usize, step: usize, gen: &str, w1: bool, w2: bool) -> CohomRing {
    let mut b = RingBuilder::new(name, d);
    for p in (0..=d).step_by(step) {
        let label = match p / step {
            0 => "1".to_string(),
            1 => gen.to_string(),
            e => format!("{gen}{e}"),
        };
        b = b.basis(p, vec![label]);
    }
    for p in (step..=d).step_by(step) {
        for q in (p..=d - p).step_by(step) {
            b = b.product((p, 0), (q, 0), Class::basis(p + q, 1, 0));
        }
    }
    if step == 1 {
        b = b.w1(Class {
            degree: 1,
            coeffs: vec![w1],
        });
    }
    if d >= 2 && 2 % step == 0 {
        b = b.w2(Class {
            degree: 2,
            coeffs: vec![w2],
        });
    }
    b.build().expect("truncated polynomial ring is valid")
}

/// Position of `a.i ⊗ b.j` inside degree `a.degree + b.degree` of `A ⊗ B`.
fn tensor_index(a: &CohomRing, bring: &CohomRing, p: usize, i: usize, q: usize, j: usize) -> usize {
    let offset: usize = (0..p).map(|r| a.rank(r) * bring.rank(p + q - r)).sum();
    offset + i * bring.rank(q) + j
}

fn tensor_rank(a: &CohomRing, b: &CohomRing, k: usize) -> usize {
    (0..=k).map(|p| a.rank(p) * b.rank(k - p)).sum()
}

/// `x ⊗ y` as a class of `A ⊗ B`.
pub(crate) fn tensor_class(a: &CohomRing, b: &CohomRing, x: &Class, y: &Class) -> Class {
    let degree = x.degree + y.degree;
    let mut out = Class::zero(degree, tensor_rank(a, b, degree));
    for i in x.support() {
        for j in y.support() {
            out.coeffs[tensor_index(a, b, x.degree, i, y.degree, j)] ^= true;
        }
    }
    out
}

/// Künneth product `A ⊗ B` with Whitney-sum characteristic classes.
pub fn product(a: &CohomRing, b: &CohomRing) -> CohomRing {
    let d = a.dim() + b.dim();
    let mut builder = RingBuilder::new(&format!("{}x{}", a.name(), b.name()), d);
    let mut refs: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); d + 1];
    for (k, slot) in refs.iter_mut().enumerate() {
        for p in 0..=k.min(a.dim()) {
            let q = k - p;
            if q > b.dim() {
                continue;
            }
            for i in 0..a.rank(p) {
                for j in 0..b.rank(q) {
                    slot.push((p, i, q, j));
                }
            }
        }
    }
    for (k, slot) in refs.iter().enumerate() {
        let labels = slot
            .iter()
            .map(|&(p, i, q, j)| match (p, q) {
                (0, 0) => "1".to_string(),
                _ => format!("{}*{}", a.labels(p)[i], b.labels(q)[j]),
            })
            .collect();
        builder = builder.basis(k, labels);
    }
    for k in 1..=d {
        for l in k..=d - k {
            for (s, &(p1, i1, q1, j1)) in refs[k].iter().enumerate() {
                for (t, &(p2, i2, q2, j2)) in refs[l].iter().enumerate() {
                    if k == l && t < s {
                        continue;
                    }
                    let x = a.cup_basis(p1, i1, p2, i2);
                    let y = b.cup_basis(q1, j1, q2, j2);
                    let z = tensor_class(a, b, &x, &y);
                    if !z.is_zero() {
                        builder = builder.product((k, s), (l, t), z);
                    }
                }
            }
        }
    }
    let (ua, ub) = (a.unit(), b.unit());
    let w1 = tensor_class(a, b, a.w1(), &ub).add(&tensor_class(a, b, &ua, b.w1()));
    let w2 = tensor_class(a, b, a.w2(), &ub)
        .add(&tensor_class(a, b, a.w1(), b.w1()))
        .add(&tensor_class(a, b, &ua, b.w2()));
    builder.w1(w1).w2(w2).build().expect("product of valid rings is valid")
}

/// `H*(S² × S^{d−2})`, `d ≥ 3`.
pub fn sphere_product(d: usize) -> CohomRing {
    assert!(d >= 3, "S² × S^(d−2) needs d ≥ 3");
    product(&sphere(2), &sphere(d - 2))
}

const BUNDLED: &[(&str, &str)] = &[
    ("s2", include_str!("../../data/s2.ring")),
    ("s4", include_str!("../../data/s4.ring")),
    ("t3", include_str!("../../data/t3.ring")),
    ("t4", include_str!("../../data/t4.ring")),
    ("cp2", include_str!("../../data/cp2.ring")),
    ("rp2", include_str!("../../data/rp2.ring")),
    ("rp4", include_str!("../../data/rp4.ring")),
    ("s2xs2", include_str!("../../data/s2xs2.ring")),
    ("s2xs3", include_str!("../../data/s2xs3.ring")),
    ("cp2xt2", include_str!("../../data/cp2xt2.ring")),
    ("rp2xrp2", include_str!("../../data/rp2xrp2.ring")),
];

pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// Parse one of the ring files shipped with the crate.
pub fn bundled(name: &str) -> Result<CohomRing, CharClassError> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CharClassError::InvalidInput(format!("no bundled ring `{name}`")))?;
    parse_ring(text)
}

/// Generator behind each bundled file.
pub fn generate(name: &str) -> Option<CohomRing> {
    Some(match name {
        "s2" => sphere(2),
        "s4" => sphere(4),
        "t3" => torus(3),
        "t4" => torus(4),
        "cp2" => cp2(),
        "rp2" => real_projective(2),
        "rp4" => real_projective(4),
        "s2xs2" => sphere_product(4),
        "s2xs3" => sphere_product(5),
        "cp2xt2" => product(&cp2(), &torus(2)),
        "rp2xrp2" => product(&real_projective(2), &real_projective(2)),
        _ => return None,
    })
}
