use crate::cubical::CubicalComplex;
use crate::matrix::BitMatrix;

use super::HomologyError;

/// Graded GF(2) chain complex: `boundaries[j]` is `∂_{j+1} : C_{j+1} → C_j`.
#[derive(Clone, Debug)]
pub struct ChainComplexGF2 {
    dims: Vec<usize>,
    boundaries: Vec<BitMatrix>,
}

impl ChainComplexGF2 {
    pub fn new(dims: Vec<usize>, boundaries: Vec<BitMatrix>) -> Result<Self, HomologyError> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(HomologyError::InvalidDegree(boundaries.len()));
        }
        for (j, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[j] || b.cols() != dims[j + 1] {
                return Err(HomologyError::InvalidDegree(j + 1));
            }
        }
        for j in 1..boundaries.len() {
            let prod = boundaries[j - 1]
                .mul(&boundaries[j])
                .map_err(|_| HomologyError::InvalidDegree(j))?;
            if !prod.is_zero() {
                return Err(HomologyError::NotAComplex(j + 1));
            }
        }
        Ok(Self { dims, boundaries })
    }

    pub fn from_cubical(complex: &CubicalComplex) -> Result<Self, HomologyError> {
        let boundaries = (1..=complex.max_degree())
            .map(|d| {
                complex
                    .boundary_matrix(d)
                    .map(|m| m.to_gf2())
                    .map_err(|_| HomologyError::InvalidDegree(d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(complex.cell_counts(), boundaries)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    /// `∂_degree`, or `None` outside `1..=top`.
    pub fn boundary(&self, degree: usize) -> Option<&BitMatrix> {
        degree.checked_sub(1).and_then(|j| self.boundaries.get(j))
    }

    pub fn boundary_rank(&self, degree: usize) -> usize {
        self.boundary(degree).map_or(0, BitMatrix::rank)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.top_degree() + 1)
            .map(|d| self.boundary_rank(d))
            .collect();
        (0..=self.top_degree())
            .map(|d| self.dims[d] - ranks[d] - ranks[d + 1])
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// `dim ker ∂_degree − rank ∂_{degree+1}` over GF(2).
pub fn betti_gf2(complex: &ChainComplexGF2, degree: usize) -> Result<usize, HomologyError> {
    if degree > complex.top_degree() {
        return Err(HomologyError::InvalidDegree(degree));
    }
    let kernel = complex.dim(degree) - complex.boundary_rank(degree);
    Ok(kernel - complex.boundary_rank(degree + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{build_skeleton, LatticeBasis};

    fn torus(n: usize, period: i64) -> ChainComplexGF2 {
        let c = build_skeleton(n, n, &LatticeBasis::cubic(n, period).unwrap(), &vec![0; n]).unwrap();
        ChainComplexGF2::from_cubical(&c).unwrap()
    }

    #[test]
    fn circle_betti() {
        let c = torus(1, 1);
        assert_eq!(c.betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn torus_betti() {
        assert_eq!(torus(2, 1).betti_numbers(), vec![1, 2, 1]);
        assert_eq!(torus(2, 3).betti_numbers(), vec![1, 2, 1]);
        assert_eq!(torus(3, 2).betti_numbers(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn euler_characteristic_matches_betti() {
        for c in [torus(2, 2), torus(3, 2)] {
            let chi: i64 = c
                .betti_numbers()
                .iter()
                .enumerate()
                .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(chi, c.euler_characteristic());
        }
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = BitMatrix::from_fn(1, 1, |_, _| true);
        let d2 = BitMatrix::from_fn(1, 1, |_, _| true);
        assert_eq!(
            ChainComplexGF2::new(vec![1, 1, 1], vec![d1, d2]).unwrap_err(),
            HomologyError::NotAComplex(2)
        );
    }

    #[test]
    fn degree_out_of_range() {
        assert!(betti_gf2(&torus(1, 1), 2).is_err());
    }
}
