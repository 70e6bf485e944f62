use crate::matrix::IntMatrix;

use super::HomologyError;

/// Requests above this size are rejected rather than risking coefficient blowup.
pub const SNF_MAX_DIM: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Diagonal `d₁ | d₂ | …`, positive, then zeros, length `min(rows, cols)`.
    pub factors: Vec<i64>,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero invariant factors.
    pub fn nonzero(&self) -> &[i64] {
        &self.factors[..self.rank]
    }
}

fn ck(x: Option<i64>) -> Result<i64, HomologyError> {
    x.ok_or(HomologyError::Overflow)
}

pub fn smith_normal_form(matrix: &IntMatrix) -> Result<SmithForm, HomologyError> {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    if rows > SNF_MAX_DIM || cols > SNF_MAX_DIM {
        return Err(HomologyError::TooLarge {
            rows,
            cols,
            max: SNF_MAX_DIM,
        });
    }
    let mut a = matrix.clone();
    let n = rows.min(cols);
    let mut factors = vec![0; n];
    let mut t = 0;
    while t < n {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a[(i, j)];
                if v != 0 && best.is_none_or(|(bi, bj)| v.unsigned_abs() < a[(bi, bj)].unsigned_abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);

        let mut clean = true;
        let p = a[(t, t)];
        for i in t + 1..rows {
            let q = a[(i, t)] / p;
            if q != 0 {
                for j in t..cols {
                    a[(i, j)] = ck(a[(i, j)].checked_sub(ck(q.checked_mul(a[(t, j)]))?))?;
                }
            }
            clean &= a[(i, t)] == 0;
        }
        for j in t + 1..cols {
            let q = a[(t, j)] / p;
            if q != 0 {
                for i in t..rows {
                    a[(i, j)] = ck(a[(i, j)].checked_sub(ck(q.checked_mul(a[(i, t)]))?))?;
                }
            }
            clean &= a[(t, j)] == 0;
        }
        if !clean {
            // A smaller remainder appeared; pick a new pivot.
            continue;
        }
        // Enforce divisibility of the trailing block by the pivot.
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[(i, j)] % p != 0);
        if let Some((i, _)) = offender {
            for j in t..cols {
                a[(t, j)] = ck(a[(t, j)].checked_add(a[(i, j)]))?;
            }
            continue;
        }
        factors[t] = ck(p.checked_abs())?;
        t += 1;
    }
    Ok(SmithForm { factors, rank: t })
}

fn swap_rows(a: &mut IntMatrix, r1: usize, r2: usize) {
    if r1 != r2 {
        for j in 0..a.cols() {
            let tmp = a[(r1, j)];
            a[(r1, j)] = a[(r2, j)];
            a[(r2, j)] = tmp;
        }
    }
}

fn swap_cols(a: &mut IntMatrix, c1: usize, c2: usize) {
    if c1 != c2 {
        for i in 0..a.rows() {
            let tmp = a[(i, c1)];
            a[(i, c1)] = a[(i, c2)];
            a[(i, c2)] = tmp;
        }
    }
}
