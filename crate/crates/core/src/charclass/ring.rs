use std::collections::BTreeMap;
use std::fmt;

use crate::matrix::BitMatrix;

use super::CharClassError;

/// A homogeneous element of `H^degree(M; ℤ₂)` in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Class {
    pub degree: usize,
    pub coeffs: Vec<bool>,
}

impl Class {
    pub fn zero(degree: usize, dim: usize) -> Self {
        Self {
            degree,
            coeffs: vec![false; dim],
        }
    }

    pub fn basis(degree: usize, dim: usize, index: usize) -> Self {
        let mut c = Self::zero(degree, dim);
        c.coeffs[index] = true;
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&b| !b)
    }

    /// Sum of classes of the same degree.
    pub fn add(&self, other: &Class) -> Class {
        assert_eq!(self.degree, other.degree, "adding classes of different degree");
        Class {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

/// `p.i` terms joined by ` + `, or `0`.
impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.support().map(|i| format!("{}.{i}", self.degree)).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Finite presentation of `H*(M; ℤ₂)` for a closed `d`-manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomRing {
    name: String,
    dim: usize,
    labels: Vec<Vec<String>>,
    /// `cup[p][q][i * dim_q + j]` = coordinates of `p.i ⌣ q.j` in degree `p + q`.
    cup: Vec<Vec<Vec<Vec<bool>>>>,
    w1: Class,
    w2: Class,
    top: usize,
}

impl CohomRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Manifold dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.labels.get(degree).map_or(0, Vec::len)
    }

    pub fn labels(&self, degree: usize) -> &[String] {
        &self.labels[degree]
    }

    pub fn w1(&self) -> &Class {
        &self.w1
    }

    pub fn w2(&self) -> &Class {
        &self.w2
    }

    /// Index of the top generator in degree `d`.
    pub fn top_index(&self) -> usize {
        self.top
    }

    pub fn unit(&self) -> Class {
        Class::basis(0, 1, 0)
    }

    pub fn zero(&self, degree: usize) -> Class {
        Class::zero(degree, self.rank(degree))
    }

    pub fn basis(&self, degree: usize, index: usize) -> Class {
        Class::basis(degree, self.rank(degree), index)
    }

    /// Product of basis elements; zero above the top degree.
    pub fn cup_basis(&self, p: usize, i: usize, q: usize, j: usize) -> Class {
        if p + q > self.dim {
            return Class::zero(p + q, 0);
        }
        Class {
            degree: p + q,
            coeffs: self.cup[p][q][i * self.rank(q) + j].clone(),
        }
    }

    pub fn cup(&self, x: &Class, y: &Class) -> Class {
        let degree = x.degree + y.degree;
        let mut out = Class::zero(degree, self.rank(degree));
        if degree > self.dim {
            return out;
        }
        for i in x.support() {
            for j in y.support() {
                out = out.add(&self.cup_basis(x.degree, i, y.degree, j));
            }
        }
        out
    }

    /// Evaluation on the fundamental class: the top-generator coordinate.
    pub fn evaluate(&self, x: &Class) -> bool {
        x.degree == self.dim && x.coeffs[self.top]
    }

    /// `H^k × H^{d−k} → ℤ₂` as a `rank(k) × rank(d−k)` matrix.
    pub fn poincare_matrix(&self, k: usize) -> BitMatrix {
        let dual = self.dim - k;
        BitMatrix::from_fn(self.rank(k), self.rank(dual), |i, j| {
            self.cup_basis(k, i, dual, j).coeffs[self.top]
        })
    }

    pub fn basis_ref(&self, degree: usize, index: usize) -> String {
        format!("{degree}.{index}")
    }

    fn validate(&self) -> Result<(), CharClassError> {
        let d = self.dim;
        if self.rank(0) != 1 || self.rank(d) != 1 {
            return Err(CharClassError::InvalidRing(
                "H⁰ and the top degree must be one-dimensional".into(),
            ));
        }
        if self.top != 0 {
            return Err(CharClassError::InvalidRing("top generator must be d.0".into()));
        }
        for (class, degree) in [(&self.w1, 1), (&self.w2, 2)] {
            if class.degree != degree || class.coeffs.len() != self.rank(degree) {
                return Err(CharClassError::InvalidRing(format!(
                    "w{degree} is not a degree-{degree} class"
                )));
            }
        }
        let refs: Vec<(usize, usize)> = (0..=d)
            .flat_map(|p| (0..self.rank(p)).map(move |i| (p, i)))
            .collect();
        for &(p, i) in &refs {
            if self.cup_basis(0, 0, p, i) != self.basis(p, i) {
                return Err(CharClassError::InvalidRing(format!(
                    "0.0 does not act as the unit on {p}.{i}"
                )));
            }
        }
        for &(p, i) in &refs {
            for &(q, j) in &refs {
                if p + q > d {
                    continue;
                }
                if self.cup_basis(p, i, q, j) != self.cup_basis(q, j, p, i) {
                    return Err(CharClassError::NonCommutative(
                        self.basis_ref(p, i),
                        self.basis_ref(q, j),
                    ));
                }
                for &(r, k) in &refs {
                    if p + q + r > d {
                        continue;
                    }
                    let (a, b, c) = (self.basis(p, i), self.basis(q, j), self.basis(r, k));
                    if self.cup(&self.cup(&a, &b), &c) != self.cup(&a, &self.cup(&b, &c)) {
                        return Err(CharClassError::NonAssociative(
                            self.basis_ref(p, i),
                            self.basis_ref(q, j),
                            self.basis_ref(r, k),
                        ));
                    }
                }
            }
        }
        for k in 0..=d {
            if self.rank(k) != self.rank(d - k) || self.poincare_matrix(k).inverse().is_none() {
                return Err(CharClassError::Degenerate(k));
            }
        }
        Ok(())
    }

    /// Re-present the ring in a new basis. Row `i` of `change.matrix(p)` gives
    /// the new basis element `p.i` in old coordinates.
    pub fn change_basis(&self, change: &BasisChange) -> Result<CohomRing, CharClassError> {
        let mut b = RingBuilder::new(&self.name, self.dim);
        for p in 0..=self.dim {
            b = b.basis(p, self.labels[p].iter().map(|l| format!("{l}'")).collect());
        }
        for p in 1..=self.dim {
            for q in p..=self.dim - p {
                for i in 0..self.rank(p) {
                    for j in 0..self.rank(q) {
                        let x = change.new_basis_element(p, i);
                        let y = change.new_basis_element(q, j);
                        b = b.product((p, i), (q, j), change.apply(&self.cup(&x, &y)));
                    }
                }
            }
        }
        b.w1(change.apply(&self.w1))
            .w2(change.apply(&self.w2))
            .build()
    }
}

/// Invertible per-degree GF(2) basis change.
#[derive(Clone, Debug)]
pub struct BasisChange {
    forward: Vec<BitMatrix>,
    /// `(Pᵀ)⁻¹`, mapping old coordinates to new ones.
    coords: Vec<BitMatrix>,
}

impl BasisChange {
    /// `matrices[p]` must be invertible; degrees 0 and `d` must be identity so
    /// the unit and the top generator are preserved.
    pub fn new(matrices: Vec<BitMatrix>) -> Result<Self, CharClassError> {
        let last = matrices.len().saturating_sub(1);
        let mut coords = Vec::with_capacity(matrices.len());
        for (p, m) in matrices.iter().enumerate() {
            if (p == 0 || p == last) && *m != BitMatrix::identity(m.rows()) {
                return Err(CharClassError::InvalidInput(format!(
                    "degree {p} basis must stay fixed"
                )));
            }
            let inv = m.transpose().inverse().ok_or_else(|| {
                CharClassError::InvalidInput(format!("degree {p} matrix is singular"))
            })?;
            coords.push(inv);
        }
        Ok(Self {
            forward: matrices,
            coords,
        })
    }

    fn new_basis_element(&self, p: usize, i: usize) -> Class {
        let m = &self.forward[p];
        Class {
            degree: p,
            coeffs: (0..m.cols()).map(|j| m.get(i, j)).collect(),
        }
    }

    /// Coordinates of a class in the new basis.
    pub fn apply(&self, x: &Class) -> Class {
        Class {
            degree: x.degree,
            coeffs: self.coords[x.degree].mul_vec(&x.coeffs),
        }
    }
}

type BasisRef = (usize, usize);

/// Incremental ring construction; unit products and mirrored products are
/// filled in and the result is validated on [`RingBuilder::build`].
#[derive(Clone, Debug)]
pub struct RingBuilder {
    name: String,
    dim: usize,
    labels: Vec<Vec<String>>,
    products: BTreeMap<(BasisRef, BasisRef), Class>,
    w1: Option<Class>,
    w2: Option<Class>,
}

impl RingBuilder {
    pub fn new(name: &str, dim: usize) -> Self {
        Self {
            name: name.to_string(),
            dim,
            labels: vec![Vec::new(); dim + 1],
            products: BTreeMap::new(),
            w1: None,
            w2: None,
        }
    }

    pub fn basis(mut self, degree: usize, labels: Vec<String>) -> Self {
        self.labels[degree] = labels;
        self
    }

    pub fn product(mut self, a: BasisRef, b: BasisRef, result: Class) -> Self {
        self.products.insert((a, b), result);
        self
    }

    pub fn w1(mut self, c: Class) -> Self {
        self.w1 = Some(c);
        self
    }

    pub fn w2(mut self, c: Class) -> Self {
        self.w2 = Some(c);
        self
    }

    pub(crate) fn has_product(&self, a: BasisRef, b: BasisRef) -> bool {
        self.products.contains_key(&(a, b))
    }

    pub fn build(self) -> Result<CohomRing, CharClassError> {
        let d = self.dim;
        let rank = |p: usize| self.labels.get(p).map_or(0, Vec::len);
        let name_of = |(p, i): BasisRef| format!("{p}.{i}");
        for (&(a, b), result) in &self.products {
            if a.0 > d || b.0 > d || a.1 >= rank(a.0) || b.1 >= rank(b.0) {
                return Err(CharClassError::InvalidRing(format!(
                    "product {} ⌣ {} refers to a missing basis element",
                    name_of(a),
                    name_of(b)
                )));
            }
            if result.degree != a.0 + b.0 || result.coeffs.len() != rank(result.degree) {
                return Err(CharClassError::InvalidRing(format!(
                    "product {} ⌣ {} has the wrong degree",
                    name_of(a),
                    name_of(b)
                )));
            }
            if let Some(mirror) = self.products.get(&(b, a)) {
                if mirror != result {
                    return Err(CharClassError::NonCommutative(name_of(a), name_of(b)));
                }
            }
        }
        let mut cup = vec![vec![Vec::new(); d + 1]; d + 1];
        for p in 0..=d {
            for q in 0..=d - p {
                let mut table = Vec::with_capacity(rank(p) * rank(q));
                for i in 0..rank(p) {
                    for j in 0..rank(q) {
                        let entry = if p == 0 && rank(0) == 1 {
                            Class::basis(q, rank(q), j)
                        } else if q == 0 && rank(0) == 1 {
                            Class::basis(p, rank(p), i)
                        } else {
                            self.products
                                .get(&((p, i), (q, j)))
                                .or_else(|| self.products.get(&((q, j), (p, i))))
                                .cloned()
                                .unwrap_or_else(|| Class::zero(p + q, rank(p + q)))
                        };
                        table.push(entry.coeffs);
                    }
                }
                cup[p][q] = table;
            }
        }
        // Explicit unit products must agree with the unit action.
        for (&(a, b), result) in &self.products {
            if a.0 == 0 || b.0 == 0 {
                let expected = if a.0 == 0 { b } else { a };
                if *result != Class::basis(expected.0, rank(expected.0), expected.1) {
                    return Err(CharClassError::InvalidRing(format!(
                        "{} ⌣ {} contradicts the unit",
                        name_of(a),
                        name_of(b)
                    )));
                }
            }
        }
        let ring = CohomRing {
            w1: self.w1.unwrap_or_else(|| Class::zero(1, rank(1))),
            w2: self.w2.unwrap_or_else(|| Class::zero(2, rank(2))),
            name: self.name,
            dim: d,
            labels: self.labels,
            cup,
            top: 0,
        };
        ring.validate()?;
        Ok(ring)
    }
}
