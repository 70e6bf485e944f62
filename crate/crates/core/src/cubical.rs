//! Cubical lattice complexes and their quotients by full-rank lattices.
//!
//! All coordinates are stored in half-integer units: the integer point
//! `(1, 0, 0)` is stored as `[2, 0, 0]` and the midpoint `u/2` of the unit
//! cube as `[1, 1, 1]`. A unit edge therefore has length 2 in storage units.
//! Axes are 0-based throughout the API and 1-based in the text format.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubicalError {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid degree {degree} (allowed range {min}..={max})")]
    InvalidDegree { degree: usize, min: usize, max: usize },
    #[error("invalid cell: {0}")]
    InvalidCell(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A full-rank lattice given by `n` generator rows in half-integer units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    generators: Vec<Vec<i64>>,
    /// Upper-triangular basis of the same lattice with positive pivots.
    hermite: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn new(generators: Vec<Vec<i64>>) -> Result<Self, CubicalError> {
        let n = generators.len();
        if n == 0 {
            return Err(CubicalError::InvalidLattice("no generators".into()));
        }
        if generators.iter().any(|g| g.len() != n) {
            return Err(CubicalError::InvalidLattice(format!(
                "expected {n} generators of length {n}"
            )));
        }
        let hermite = hermite_rows(&generators)
            .ok_or_else(|| CubicalError::InvalidLattice("generators are rank deficient".into()))?;
        Ok(Self { generators, hermite })
    }

    /// `(period·ℤ)^n`, with `period` in integer units.
    pub fn cubic(n: usize, period: i64) -> Result<Self, CubicalError> {
        Self::new(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { 2 * period } else { 0 }).collect())
                .collect(),
        )
    }

    /// `(2nℤ)^4 ⊕ ⟨u/2 + 2n·e₅⟩` in ℝ⁵.
    pub fn lambda_n(n: i64) -> Result<Self, CubicalError> {
        let mut rows: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..5).map(|j| if i == j { 4 * n } else { 0 }).collect())
            .collect();
        rows.push(vec![1, 1, 1, 1, 1 + 4 * n]);
        Self::new(rows)
    }

    /// `(2ℤ)^4 ⊕ ⟨u/2⟩` in ℝ⁵.
    pub fn lambda() -> Self {
        let mut rows: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..5).map(|j| if i == j { 4 } else { 0 }).collect())
            .collect();
        rows.push(vec![1; 5]);
        Self::new(rows).expect("Λ has full rank")
    }

    /// `(2ℤ)^4 ⊕ ⟨u⟩`, the index-two subgroup of Λ preserving each skeleton.
    pub fn gamma() -> Self {
        let mut rows: Vec<Vec<i64>> = (0..4)
            .map(|i| (0..5).map(|j| if i == j { 4 } else { 0 }).collect())
            .collect();
        rows.push(vec![2; 5]);
        Self::new(rows).expect("Γ has full rank")
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Diagonal of the triangular basis; the canonical fundamental domain is
    /// the box `∏ [0, pivot_i)`.
    pub fn pivots(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.hermite[i][i]).collect()
    }

    /// `|det|` of the generator matrix, in half-units.
    pub fn covolume(&self) -> i64 {
        self.pivots().iter().product()
    }

    /// True when every generator is an integer translation, i.e. the lattice
    /// maps the integer vertex grid to itself.
    pub fn preserves_grid(&self) -> bool {
        self.generators.iter().flatten().all(|x| x % 2 == 0)
    }

    /// Reduce `x` to the unique coset representative in the fundamental box.
    pub fn reduce(&self, x: &[i64]) -> Vec<i64> {
        let mut out = x.to_vec();
        for (i, row) in self.hermite.iter().enumerate() {
            let q = out[i].div_euclid(row[i]);
            if q != 0 {
                for (o, r) in out.iter_mut().zip(row).skip(i) {
                    *o -= q * r;
                }
            }
        }
        out
    }

    /// True when `x` lies in the lattice.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.reduce(x).iter().all(|&c| c == 0)
    }
}

/// Integer row reduction to an upper-triangular basis with positive pivots.
fn hermite_rows(generators: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = generators.len();
    let mut rows: Vec<Vec<i64>> = generators.to_vec();
    for col in 0..n {
        // Euclid on column `col` among rows col..n.
        loop {
            let pivot = (col..n)
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs())?;
            rows.swap(col, pivot);
            let mut done = true;
            for r in col + 1..n {
                if rows[r][col] != 0 {
                    let q = rows[r][col].div_euclid(rows[col][col]);
                    for c in col..n {
                        rows[r][c] -= q * rows[col][c];
                    }
                    if rows[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[col][col] < 0 {
            for c in col..n {
                rows[col][c] = -rows[col][c];
            }
        }
    }
    Some(rows)
}

/// A coordinate cube: anchor (minimal corner) plus increasing axis list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicalCell {
    pub anchor: Vec<i64>,
    pub dirs: Vec<usize>,
}

impl CubicalCell {
    pub fn new(anchor: Vec<i64>, dirs: Vec<usize>) -> Result<Self, CubicalError> {
        if dirs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CubicalError::InvalidCell(format!(
                "directions {dirs:?} are not strictly increasing"
            )));
        }
        if dirs.last().is_some_and(|&d| d >= anchor.len()) {
            return Err(CubicalError::InvalidCell(format!(
                "direction out of range for dimension {}",
                anchor.len()
            )));
        }
        Ok(Self { anchor, dirs })
    }

    pub fn degree(&self) -> usize {
        self.dirs.len()
    }

    /// Faces with their incidence signs. The face across the `p`-th listed
    /// direction at the far end carries `(-1)^p`, the near end the opposite.
    pub fn faces(&self) -> Vec<(CubicalCell, i64)> {
        let mut out = Vec::with_capacity(2 * self.dirs.len());
        for (p, &d) in self.dirs.iter().enumerate() {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            let mut dirs = self.dirs.clone();
            dirs.remove(p);
            let mut far = self.anchor.clone();
            far[d] += 2;
            out.push((
                CubicalCell {
                    anchor: far,
                    dirs: dirs.clone(),
                },
                sign,
            ));
            out.push((
                CubicalCell {
                    anchor: self.anchor.clone(),
                    dirs,
                },
                -sign,
            ));
        }
        out
    }

    pub fn translated(&self, by: &[i64]) -> CubicalCell {
        CubicalCell {
            anchor: self.anchor.iter().zip(by).map(|(a, b)| a + b).collect(),
            dirs: self.dirs.clone(),
        }
    }
}

/// `anchor:dirs` with comma-separated half-unit anchor and 1-based axes,
/// e.g. `0,2,0,0,0:1,2`. Vertices have an empty axis list.
impl fmt::Display for CubicalCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", join(&self.anchor), join_axes(&self.dirs))
    }
}

impl serde::Serialize for CubicalCell {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for CubicalCell {
    type Err = CubicalError;

    fn from_str(s: &str) -> Result<Self, CubicalError> {
        let bad = |m: &str| CubicalError::InvalidCell(format!("{s:?}: {m}"));
        let (anchor, dirs) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let anchor = parse_list(anchor).map_err(|e| bad(&e))?;
        let dirs = parse_axes(dirs).map_err(|e| bad(&e))?;
        CubicalCell::new(anchor, dirs)
    }
}

/// Canonical representative of `cell` modulo `lattice`.
pub fn canonicalize(cell: &CubicalCell, lattice: &LatticeBasis) -> CubicalCell {
    CubicalCell {
        anchor: lattice.reduce(&cell.anchor),
        dirs: cell.dirs.clone(),
    }
}

/// The k-skeleton of the cubical structure on `offset + ℤⁿ`, modulo a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalComplex {
    n: usize,
    k: usize,
    lattice: LatticeBasis,
    offset: Vec<i64>,
    cells: Vec<Vec<CubicalCell>>,
    index: Vec<HashMap<CubicalCell, usize>>,
}

/// Build the quotient `k`-skeleton of the cubical grid `offset + ℤⁿ`.
pub fn build_skeleton(
    n: usize,
    k: usize,
    lattice: &LatticeBasis,
    offset: &[i64],
) -> Result<CubicalComplex, CubicalError> {
    if k > n {
        return Err(CubicalError::InvalidDegree {
            degree: k,
            min: 0,
            max: n,
        });
    }
    if lattice.dim() != n || offset.len() != n {
        return Err(CubicalError::InvalidLattice(format!(
            "ambient dimension {n} does not match lattice ({}) or offset ({})",
            lattice.dim(),
            offset.len()
        )));
    }
    if !lattice.preserves_grid() {
        return Err(CubicalError::InvalidLattice(
            "translations do not preserve the integer vertex grid".into(),
        ));
    }
    let vertices = vertex_representatives(lattice, offset);
    let mut cells = Vec::with_capacity(k + 1);
    for degree in 0..=k {
        let mut list = Vec::new();
        for dirs in subsets(n, degree) {
            for v in &vertices {
                list.push(CubicalCell {
                    anchor: v.clone(),
                    dirs: dirs.clone(),
                });
            }
        }
        list.sort();
        cells.push(list);
    }
    Ok(CubicalComplex::from_parts(
        n,
        k,
        lattice.clone(),
        offset.to_vec(),
        cells,
    ))
}

/// Grid points `≡ offset (mod 2)` inside the canonical fundamental box.
fn vertex_representatives(lattice: &LatticeBasis, offset: &[i64]) -> Vec<Vec<i64>> {
    let pivots = lattice.pivots();
    let mut out = vec![Vec::new()];
    for (i, &p) in pivots.iter().enumerate() {
        let start = offset[i].rem_euclid(2);
        let mut next = Vec::new();
        for prefix in &out {
            let mut x = start;
            while x < p {
                let mut v: Vec<i64> = prefix.clone();
                v.push(x);
                next.push(v);
                x += 2;
            }
        }
        out = next;
    }
    out
}

/// All strictly increasing `size`-subsets of `0..n`, in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl CubicalComplex {
    fn from_parts(
        n: usize,
        k: usize,
        lattice: LatticeBasis,
        offset: Vec<i64>,
        cells: Vec<Vec<CubicalCell>>,
    ) -> Self {
        let index = cells
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        Self {
            n,
            k,
            lattice,
            offset,
            cells,
            index,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.k
    }

    pub fn lattice(&self) -> &LatticeBasis {
        &self.lattice
    }

    pub fn offset(&self) -> &[i64] {
        &self.offset
    }

    pub fn cells(&self, degree: usize) -> &[CubicalCell] {
        self.cells.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Number of vertex cosets, `covolume / 2ⁿ`.
    pub fn vertex_count(&self) -> usize {
        self.cells[0].len()
    }

    pub fn canonical(&self, cell: &CubicalCell) -> CubicalCell {
        canonicalize(cell, &self.lattice)
    }

    /// Position of the canonical form of `cell` in its degree list.
    pub fn index_of(&self, cell: &CubicalCell) -> Option<usize> {
        self.index
            .get(cell.degree())?
            .get(&self.canonical(cell))
            .copied()
    }

    pub fn contains(&self, cell: &CubicalCell) -> bool {
        self.index_of(cell).is_some()
    }

    /// Signed boundary matrix `∂_degree`, rows = (degree−1)-cells,
    /// columns = degree-cells. Coinciding faces in the quotient accumulate.
    pub fn boundary_matrix(&self, degree: usize) -> Result<IntMatrix, CubicalError> {
        if degree == 0 || degree > self.k {
            return Err(CubicalError::InvalidDegree {
                degree,
                min: 1,
                max: self.k,
            });
        }
        let cols = &self.cells[degree];
        let mut m = IntMatrix::zeros(self.cells[degree - 1].len(), cols.len());
        for (j, cell) in cols.iter().enumerate() {
            for (face, sign) in cell.faces() {
                let i = self
                    .index_of(&face)
                    .expect("complex is closed under taking faces");
                m[(i, j)] += sign;
            }
        }
        Ok(m)
    }

    /// Line-oriented text form; see [`parse_complex`].
    pub fn to_text(&self) -> String {
        let mut s = format!("CUBICAL {} {}\n", self.n, self.k);
        for g in self.lattice.generators() {
            s.push_str(&format!("LATTICE {}\n", join(g)));
        }
        s.push_str(&format!("OFFSET {}\n", join(&self.offset)));
        for (degree, list) in self.cells.iter().enumerate() {
            for c in list {
                let dirs = if c.dirs.is_empty() {
                    "-".to_string()
                } else {
                    join_axes(&c.dirs)
                };
                s.push_str(&format!("CELL {degree} {} {dirs}\n", join(&c.anchor)));
            }
        }
        s
    }
}

/// Parse the text form written by [`CubicalComplex::to_text`]:
///
/// ```text
/// CUBICAL <n> <k>
/// LATTICE <row, comma-separated half-units>     (n lines)
/// OFFSET <half-units>
/// CELL <degree> <anchor> <1-based axes or ->
/// ```
///
/// The cell list must be exactly the canonical cell set of the skeleton the
/// header describes.
pub fn parse_complex(text: &str) -> Result<CubicalComplex, CubicalError> {
    let perr = |line: usize, msg: String| CubicalError::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut lattice_rows = Vec::new();
    let mut offset: Option<Vec<i64>> = None;
    let mut cells: Vec<(usize, CubicalCell, usize)> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "CUBICAL" => {
                if fields.len() != 3 {
                    return Err(perr(lineno, "expected `CUBICAL <n> <k>`".into()));
                }
                let n = fields[1].parse().map_err(|e| perr(lineno, format!("{e}")))?;
                let k = fields[2].parse().map_err(|e| perr(lineno, format!("{e}")))?;
                header = Some((n, k));
            }
            "LATTICE" if fields.len() == 2 => {
                lattice_rows.push(parse_list(fields[1]).map_err(|e| perr(lineno, e))?)
            }
            "OFFSET" if fields.len() == 2 => {
                offset = Some(parse_list(fields[1]).map_err(|e| perr(lineno, e))?)
            }
            "CELL" if fields.len() == 4 => {
                let degree: usize = fields[1].parse().map_err(|e| perr(lineno, format!("{e}")))?;
                let anchor = parse_list(fields[2]).map_err(|e| perr(lineno, e))?;
                let dirs = if fields[3] == "-" {
                    Vec::new()
                } else {
                    parse_axes(fields[3]).map_err(|e| perr(lineno, e))?
                };
                let cell = CubicalCell::new(anchor, dirs)
                    .map_err(|e| perr(lineno, e.to_string()))?;
                if cell.degree() != degree {
                    return Err(perr(lineno, "degree does not match axis count".into()));
                }
                cells.push((degree, cell, lineno));
            }
            other => return Err(perr(lineno, format!("unrecognised record {other:?}"))),
        }
    }
    let (n, k) = header.ok_or_else(|| perr(last_line, "missing CUBICAL header".into()))?;
    let offset = offset.ok_or_else(|| perr(last_line, "missing OFFSET line".into()))?;
    if lattice_rows.len() != n {
        return Err(perr(
            last_line,
            format!("expected {n} LATTICE rows, found {}", lattice_rows.len()),
        ));
    }
    let lattice = LatticeBasis::new(lattice_rows)?;
    let complex = build_skeleton(n, k, &lattice, &offset)?;
    let mut seen: Vec<Vec<bool>> = complex
        .cell_counts()
        .iter()
        .map(|&c| vec![false; c])
        .collect();
    for (degree, cell, lineno) in &cells {
        if *degree > k || cell.anchor.len() != n {
            return Err(perr(*lineno, "cell does not fit the header".into()));
        }
        if complex.canonical(cell) != *cell {
            return Err(perr(*lineno, format!("cell {cell} is not canonical")));
        }
        let idx = complex
            .index_of(cell)
            .ok_or_else(|| perr(*lineno, format!("cell {cell} is not in the skeleton")))?;
        if std::mem::replace(&mut seen[*degree][idx], true) {
            return Err(perr(*lineno, format!("duplicate cell {cell}")));
        }
    }
    if let Some((degree, _)) = seen
        .iter()
        .enumerate()
        .find(|(_, s)| s.iter().any(|&b| !b))
    {
        return Err(perr(
            last_line,
            format!("missing cells of degree {degree} (file truncated?)"),
        ));
    }
    Ok(complex)
}

pub(crate) fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn join_axes(v: &[usize]) -> String {
    v.iter()
        .map(|a| (a + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}")))
        .collect()
}

fn parse_axes(s: &str) -> Result<Vec<usize>, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(a) if a >= 1 => Ok(a - 1),
            _ => Err(format!("bad axis {t:?}")),
        })
        .collect()
}
