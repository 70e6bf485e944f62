use std::collections::BTreeMap;

use crate::cubical::{CubicalCell, CubicalComplex, LatticeBasis};

use super::HomologyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integer,
    Mod2,
}

/// Formal integer combination of cells.
pub type Chain2 = Vec<(CubicalCell, i64)>;

/// An integer 2-cochain on a quotient cubical complex. Lookups canonicalise
/// cells modulo the host lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    lattice: LatticeBasis,
    values: BTreeMap<CubicalCell, i64>,
    mode: Coefficients,
}

impl Cochain2 {
    pub fn zero(complex: &CubicalComplex, mode: Coefficients) -> Self {
        Self::from_fn(complex, mode, |_| 0)
    }

    pub fn from_fn(
        complex: &CubicalComplex,
        mode: Coefficients,
        f: impl Fn(&CubicalCell) -> i64,
    ) -> Self {
        let values = complex.cells(2).iter().map(|c| (c.clone(), f(c))).collect();
        Self {
            lattice: complex.lattice().clone(),
            values,
            mode,
        }
    }

    pub fn mode(&self) -> Coefficients {
        self.mode
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CubicalCell, i64)> {
        self.values.iter().map(|(c, &v)| (c, v))
    }

    pub fn get(&self, cell: &CubicalCell) -> Option<i64> {
        let canon = crate::cubical::canonicalize(cell, &self.lattice);
        self.values.get(&canon).copied()
    }

    pub fn set(&mut self, cell: &CubicalCell, value: i64) -> Result<(), HomologyError> {
        let canon = crate::cubical::canonicalize(cell, &self.lattice);
        match self.values.get_mut(&canon) {
            Some(v) => {
                *v = value;
                Ok(())
            }
            None => Err(HomologyError::UnknownCell(cell.clone())),
        }
    }

    /// `PSI <cell-id> <value>` lines in canonical cell order.
    pub fn to_text(&self) -> String {
        self.values
            .iter()
            .map(|(c, v)| format!("PSI {c} {v}\n"))
            .collect()
    }

    /// Read values for the 2-cells of `complex`; every 2-cell must be listed.
    pub fn parse(
        text: &str,
        complex: &CubicalComplex,
        mode: Coefficients,
    ) -> Result<Self, HomologyError> {
        let mut out = Self::from_fn(complex, mode, |_| 0);
        let mut seen = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let perr = |msg: String| HomologyError::Parse { line: i + 1, msg };
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 || f[0] != "PSI" {
                return Err(perr("expected `PSI <cell-id> <value>`".into()));
            }
            let cell: CubicalCell = f[1].parse().map_err(|e| perr(format!("{e}")))?;
            let value: i64 = f[2].parse().map_err(|e| perr(format!("{e}")))?;
            if !complex.contains(&cell) {
                return Err(HomologyError::UnknownCell(cell));
            }
            out.set(&cell, value)?;
            seen.insert(complex.canonical(&cell), ());
        }
        if let Some(missing) = complex.cells(2).iter().find(|c| !seen.contains_key(*c)) {
            return Err(HomologyError::IncompleteCochain(missing.clone()));
        }
        Ok(out)
    }
}

/// True iff `δψ` vanishes on every 3-cell of `complex` (reduced mod 2 in
/// [`Coefficients::Mod2`] mode). A complex without 3-cells is vacuous.
pub fn is_cocycle(psi: &Cochain2, complex: &CubicalComplex) -> Result<bool, HomologyError> {
    for c in complex.cells(2) {
        if psi.get(c).is_none() {
            return Err(HomologyError::IncompleteCochain(c.clone()));
        }
    }
    for cube in complex.cells(3) {
        let mut total = 0i64;
        for (face, sign) in cube.faces() {
            let v = psi
                .get(&face)
                .ok_or_else(|| HomologyError::IncompleteCochain(face.clone()))?;
            total += sign * v;
        }
        let vanishes = match psi.mode {
            Coefficients::Integer => total == 0,
            Coefficients::Mod2 => total.rem_euclid(2) == 0,
        };
        if !vanishes {
            return Ok(false);
        }
    }
    Ok(true)
}

/// ℤ-linear extension of `psi` to a 2-chain.
pub fn evaluate_pairing(psi: &Cochain2, chain: &[(CubicalCell, i64)]) -> Result<i64, HomologyError> {
    let mut total = 0i64;
    for (cell, coeff) in chain {
        let v = psi
            .get(cell)
            .ok_or_else(|| HomologyError::UnknownCell(cell.clone()))?;
        total += coeff * v;
    }
    Ok(match psi.mode {
        Coefficients::Integer => total,
        Coefficients::Mod2 => total.rem_euclid(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::{build_skeleton, LatticeBasis};

    fn three_torus() -> CubicalComplex {
        build_skeleton(3, 3, &LatticeBasis::cubic(3, 2).unwrap(), &[0; 3]).unwrap()
    }

    #[test]
    fn zero_cochain_is_cocycle() {
        let c = three_torus();
        assert!(is_cocycle(&Cochain2::zero(&c, Coefficients::Integer), &c).unwrap());
    }

    #[test]
    fn single_square_indicator_is_not_cocycle() {
        let c = three_torus();
        let target = c.cells(2)[0].clone();
        let psi = Cochain2::from_fn(&c, Coefficients::Integer, |x| i64::from(*x == target));
        assert!(!is_cocycle(&psi, &c).unwrap());
        // Coboundary is nonzero on exactly the two cubes having that square as a face.
        let hits = c
            .cells(3)
            .iter()
            .filter(|cube| {
                cube.faces()
                    .iter()
                    .map(|(f, s)| s * psi.get(f).unwrap())
                    .sum::<i64>()
                    != 0
            })
            .count();
        assert_eq!(hits, 2);
    }

    #[test]
    fn pairing_basics() {
        let c = three_torus();
        let psi = Cochain2::from_fn(&c, Coefficients::Integer, |x| x.anchor[0] + 1);
        assert_eq!(evaluate_pairing(&psi, &[]).unwrap(), 0);
        let cell = c.cells(2)[5].clone();
        assert_eq!(evaluate_pairing(&psi, &[(cell.clone(), 1)]).unwrap(), psi.get(&cell).unwrap());
        let stray = CubicalCell::new(vec![1, 0, 0], vec![0, 1]).unwrap();
        assert!(matches!(
            evaluate_pairing(&psi, &[(stray, 1)]),
            Err(HomologyError::UnknownCell(_))
        ));
    }

    #[test]
    fn text_round_trip_and_incomplete() {
        let c = three_torus();
        let psi = Cochain2::from_fn(&c, Coefficients::Integer, |x| (x.anchor[1] / 2) - 1);
        let text = psi.to_text();
        assert_eq!(Cochain2::parse(&text, &c, Coefficients::Integer).unwrap(), psi);
        let partial: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(matches!(
            Cochain2::parse(&partial, &c, Coefficients::Integer),
            Err(HomologyError::IncompleteCochain(_))
        ));
    }
}
