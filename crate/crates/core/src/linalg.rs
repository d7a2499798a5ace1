//! Dense linear algebra over a table-driven GF(2^e).

use crate::error::{Error, Result};
use crate::gf2e::{Fe, FieldCtx};

/// Row-major dense matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let data: Vec<Fe> = rows
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), cols))
            .flatten()
            .collect();
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Fe]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    /// Columns `cols` of every row, as the rows of the result's transpose.
    pub fn select_columns_transposed(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(cols.len(), self.rows);
        for (i, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                out.data[i * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }
}

/// v · M for a row vector v.
pub fn vec_mat(f: &FieldCtx, v: &[Fe], m: &Matrix) -> Result<Vec<Fe>> {
    if v.len() != m.rows() {
        return Err(Error::LengthMismatch {
            expected: m.rows(),
            got: v.len(),
        });
    }
    let mut out = vec![Fe::ZERO; m.cols()];
    let kernel = f.has_tables().then(|| LogKernel::new(f));
    let mut logs = Vec::with_capacity(m.cols());
    for (coef, row) in v.iter().zip(m.iter_rows()) {
        if let (Some(k), Some(lc)) = (&kernel, f.log(*coef)) {
            k.to_logs(f, row, &mut logs);
            k.axpy(&mut out, &logs, lc);
        } else if !coef.is_zero() {
            for (o, &x) in out.iter_mut().zip(row) {
                *o += f.mul(*coef, x);
            }
        }
    }
    Ok(out)
}

pub fn dot(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| acc + f.mul(x, y))
}

/// Branch-free row updates in the log domain. Zero is given the log
/// 2·order; the exp table is tripled with a zero upper third, so
/// exp[lc + log(0)] = 0 for every real log lc < order.
struct LogKernel {
    exp: Vec<u32>,
    zero_log: u32,
}

impl LogKernel {
    fn new(f: &FieldCtx) -> Self {
        let order = f.order() as usize;
        let mut exp = vec![0u32; 3 * order];
        for (i, e) in exp[..2 * order].iter_mut().enumerate() {
            *e = f.exp(i % order).0;
        }
        LogKernel {
            exp,
            zero_log: 2 * order as u32,
        }
    }

    fn to_logs(&self, f: &FieldCtx, row: &[Fe], out: &mut Vec<u32>) {
        out.clear();
        out.extend(row.iter().map(|&a| f.log(a).unwrap_or(self.zero_log)));
    }

    /// dst += g^lc · src, with src given by discrete logs and lc < order.
    #[inline]
    fn axpy(&self, dst: &mut [Fe], src_logs: &[u32], lc: u32) {
        let exp = &self.exp[lc as usize..];
        for (d, &ls) in dst.iter_mut().zip(src_logs) {
            d.0 ^= exp[ls as usize];
        }
    }
}

/// Columns per elimination panel.
const PANEL: usize = 48;

/// Forward elimination restricted to the first `pivot_cols` columns. Pivot
/// rows are normalized to a leading 1. Returns the pivot column of each of
/// the leading rows.
///
/// Blocked: pivots are found a panel of columns at a time, updating only the
/// panel, with each multiplier parked in the entry it eliminates. The columns
/// right of the panel are then updated in one pass per row, so each row is
/// streamed once per panel instead of once per pivot.
fn forward_eliminate(f: &FieldCtx, m: &mut Matrix, pivot_cols: usize) -> Vec<usize> {
    assert!(f.has_tables(), "elimination requires log tables");
    let cols = m.cols;
    let kernel = LogKernel::new(f);
    let mut pivots = Vec::new();
    let mut next = 0;
    let mut col = 0;
    let mut logs: Vec<Vec<u32>> = Vec::new();
    while col < pivot_cols && next < m.rows {
        let end = (col + PANEL).min(pivot_cols);
        let first = next;
        let mut panel: Vec<(usize, Fe)> = Vec::new();
        for c in col..end {
            if next == m.rows {
                break;
            }
            let Some(p) = (next..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(next, p);
            let inv = f.inv(m.get(next, c)).expect("nonzero pivot");
            for v in &mut m.row_mut(next)[c..end] {
                *v = f.mul(*v, inv);
            }
            let (head, tail) = m.data.split_at_mut((next + 1) * cols);
            let piv = &head[next * cols..];
            for row in tail.chunks_mut(cols) {
                let v = row[c];
                if v.is_zero() {
                    continue;
                }
                for j in c + 1..end {
                    row[j] += f.mul(v, piv[j]);
                }
            }
            panel.push((c, inv));
            pivots.push(c);
            next += 1;
        }
        logs.clear();
        for r in first..m.rows {
            let row = &mut m.data[r * cols..(r + 1) * cols];
            let before = (r - first).min(panel.len());
            for (t, &(pc, _)) in panel[..before].iter().enumerate() {
                if let Some(lc) = f.log(row[pc]) {
                    kernel.axpy(&mut row[end..], &logs[t], lc);
                }
                row[pc] = Fe::ZERO;
            }
            if r - first < panel.len() {
                let inv = panel[r - first].1;
                for v in &mut row[end..] {
                    *v = f.mul(*v, inv);
                }
                let mut l = Vec::with_capacity(cols - end);
                kernel.to_logs(f, &row[end..], &mut l);
                logs.push(l);
            }
        }
        col = end;
    }
    pivots
}

/// Exact rank by Gaussian elimination.
pub fn rank(f: &FieldCtx, m: &Matrix) -> usize {
    let mut work = m.clone();
    let cols = work.cols;
    forward_eliminate(f, &mut work, cols).len()
}

/// Reduced row echelon form and its pivot columns.
pub fn reduced_row_echelon(f: &FieldCtx, m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut work = m.clone();
    let cols = work.cols;
    let pivots = forward_eliminate(f, &mut work, cols);
    let kernel = LogKernel::new(f);
    let mut logs = Vec::with_capacity(cols);
    for (r, &c) in pivots.iter().enumerate().rev() {
        kernel.to_logs(f, &work.row(r)[c..], &mut logs);
        for above in 0..r {
            let row = &mut work.data[above * cols..(above + 1) * cols];
            if let Some(lc) = f.log(row[c]) {
                kernel.axpy(&mut row[c..], &logs, lc);
            }
        }
    }
    (work, pivots)
}

/// Solves x · A = b for x, where A is `k × s` (typically s >= k).
///
/// Fails with [`Error::RankDeficient`] when A has rank < k (x is not unique)
/// and with [`Error::InconsistentWord`] when no x exists.
pub fn solve_left(f: &FieldCtx, a: &Matrix, b: &[Fe]) -> Result<Vec<Fe>> {
    let (k, s) = (a.rows(), a.cols());
    if b.len() != s {
        return Err(Error::LengthMismatch {
            expected: s,
            got: b.len(),
        });
    }
    // Transposed system Aᵀ xᵀ = bᵀ as an s × (k + 1) augmented matrix.
    let mut aug = Matrix::zeros(s, k + 1);
    for (i, &bi) in b.iter().enumerate() {
        for j in 0..k {
            aug.data[i * (k + 1) + j] = a.get(j, i);
        }
        aug.data[i * (k + 1) + k] = bi;
    }
    solve_augmented(f, aug, k)
}

/// Solves A xᵀ = bᵀ given the augmented matrix [A | b] with `unknowns` columns in A.
pub fn solve_augmented(f: &FieldCtx, mut aug: Matrix, unknowns: usize) -> Result<Vec<Fe>> {
    let pivots = forward_eliminate(f, &mut aug, unknowns);
    let rank = pivots.len();
    if (rank..aug.rows).any(|r| !aug.get(r, unknowns).is_zero()) {
        return Err(Error::InconsistentWord);
    }
    if rank < unknowns {
        return Err(Error::RankDeficient {
            rank,
            needed: unknowns,
        });
    }
    // Pivot i sits in column i once the rank is full.
    let mut x = vec![Fe::ZERO; unknowns];
    for i in (0..unknowns).rev() {
        let row = aug.row(i);
        let mut acc = row[unknowns];
        for j in i + 1..unknowns {
            acc += f.mul(row[j], x[j]);
        }
        x[i] = acc;
    }
    Ok(x)
}
