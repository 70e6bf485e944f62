//! Dense integer matrices and bit-packed GF(2) matrices.
//!
//! Both types are small, row-major and exact. Integer products use checked
//! arithmetic; GF(2) rows are packed into `u64` words so row additions are
//! word-wise XORs.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Row-major matrix of `i64` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatrixError::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn diagonal(diag: &[i64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Count of nonzero entries in column `j`.
    pub fn column_support(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self[(i, j)] != 0).count()
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.checked_mul(rhs[(k, j)]).ok_or(MatrixError::Overflow)?;
                    out[(i, j)] = out[(i, j)].checked_add(prod).ok_or(MatrixError::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// Reduction mod 2.
    pub fn to_gf2(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)] & 1 != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Tab-separated signed integers, one row per line.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            s.push_str(&line.join("\t"));
            s.push('\n');
        }
        s
    }

    pub fn from_tsv(text: &str) -> Result<Self, MatrixError> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split('\t')
                .map(|t| {
                    t.trim().parse::<i64>().map_err(|e| MatrixError::Parse {
                        line: lineno + 1,
                        msg: format!("bad integer {t:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Self::from_rows(&rows)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

const WORD: usize = 64;

/// Bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(WORD);
        Self {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.data[i * self.words + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / WORD] ^= 1u64 << (j % WORD);
    }

    /// `row[dst] += row[src]`.
    fn add_row(&mut self, src: usize, dst: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..out.words {
                        out.data[i * out.words + w] ^= rhs.data[k * rhs.words + w];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).filter(|&j| v[j] && self.get(i, j)).count() % 2 == 1)
            .collect()
    }

    /// Reduced row echelon form by column-major pivoting: columns are scanned
    /// left to right and the first remaining row with a 1 becomes the pivot.
    /// Returns the pivot column of each nonzero row.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            self.swap_rows(p, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.add_row(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// Basis of the right null space `{x : Ax = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![false; self.cols];
            x[free] = true;
            for (row, &p) in pivots.iter().enumerate() {
                if m.get(row, free) {
                    x[p] = true;
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Solve `Ax = b`; free variables are set to zero.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = BitMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, n + i, true);
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p != n - 1) {
            return None;
        }
        Some(BitMatrix::from_fn(n, n, |i, j| aug.get(i, n + j)))
    }

    /// Tab-separated 0/1 entries, one row per line.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let line: Vec<&str> = (0..self.cols)
                .map(|j| if self.get(i, j) { "1" } else { "0" })
                .collect();
            s.push_str(&line.join("\t"));
            s.push('\n');
        }
        s
    }
}

impl FromStr for BitMatrix {
    type Err = MatrixError;

    fn from_str(text: &str) -> Result<Self, MatrixError> {
        let mut rows: Vec<Vec<bool>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split('\t')
                .map(|t| match t.trim() {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    other => Err(MatrixError::Parse {
                        line: lineno + 1,
                        msg: format!("expected 0 or 1, got {other:?}"),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(MatrixError::Parse {
                        line: lineno + 1,
                        msg: "ragged row".into(),
                    });
                }
            }
            rows.push(row);
        }
        let cols = rows.first().map_or(0, Vec::len);
        Ok(BitMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel_are_consistent() {
        let m = BitMatrix::from_fn(3, 5, |i, j| (i + j) % 2 == 0 || j == 4);
        let k = m.kernel();
        assert_eq!(m.rank() + k.len(), 5);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|&b| !b));
        }
    }

    #[test]
    fn solve_rejects_inconsistent_system() {
        let m = BitMatrix::from_fn(2, 2, |_, j| j == 0);
        assert!(m.solve(&[true, false]).is_none());
        assert_eq!(m.solve(&[true, true]), Some(vec![true, false]));
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMatrix::from_fn(3, 3, |i, j| j >= i);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(3));
        assert!(BitMatrix::zeros(2, 2).inverse().is_none());
    }

    #[test]
    fn tsv_round_trip() {
        let m = BitMatrix::from_fn(4, 70, |i, j| (i * 7 + j) % 3 == 0);
        assert_eq!(m.to_tsv().parse::<BitMatrix>().unwrap(), m);
        let z = IntMatrix::from_rows(&[vec![1, -2], vec![0, 7]]).unwrap();
        assert_eq!(IntMatrix::from_tsv(&z.to_tsv()).unwrap(), z);
    }

    #[test]
    fn checked_mul_reports_overflow() {
        let big = IntMatrix::diagonal(&[i64::MAX]);
        assert_eq!(big.checked_mul(&IntMatrix::diagonal(&[2])), Err(MatrixError::Overflow));
    }

    #[test]
    fn bad_tsv_names_line() {
        let err = "0\t1\n1\tx\n".parse::<BitMatrix>().unwrap_err();
        assert!(matches!(err, MatrixError::Parse { line: 2, .. }));
    }
}
