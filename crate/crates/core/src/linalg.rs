//! Dense exact linear algebra over a [`FieldCtx`].
//!
//! Vectors are rows; kernels are right null spaces returned as row bases.
//! Pivoting always takes the first nonzero entry, so every result is
//! deterministic.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FFElement, FieldCtx};

#[derive(Clone, PartialEq, Eq)]
pub struct FFMatrix {
    ctx: FieldCtx,
    rows: usize,
    cols: usize,
    data: Vec<FFElement>,
}

/// Output of [`FFMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FFMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FFMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<Vec<u64>> = self.row(i).iter().map(|e| self.ctx.coeffs(e)).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl FFMatrix {
    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        FFMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries from `ctx`.
    pub fn from_rows(ctx: &FieldCtx, rows: Vec<Vec<FFElement>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            for e in &row {
                ctx.check(e)?;
            }
            data.extend(row);
        }
        Ok(FFMatrix {
            ctx: ctx.clone(),
            rows: r,
            cols,
            data,
        })
    }

    pub fn from_fn(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FFElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        FFMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose entries are given as nested little-endian coefficient
    /// arrays over GF(p), the JSON interchange form.
    pub fn from_coeff_arrays(ctx: &FieldCtx, arrays: &[Vec<Vec<u64>>]) -> Result<Self> {
        let cols = arrays.first().map_or(0, Vec::len);
        let rows = arrays
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| ctx.from_coeffs(c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ctx, rows, cols)
    }

    pub fn to_coeff_arrays(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.ctx.coeffs(e)).collect())
            .collect()
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FFElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FFElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FFElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[FFElement]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FFElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        *e == self.ctx.one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> FFMatrix {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn map(&self, f: impl Fn(&FFElement) -> FFElement) -> FFMatrix {
        FFMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entry-wise q^e-power Frobenius.
    pub fn frobenius(&self, e: usize) -> FFMatrix {
        if e.is_multiple_of(self.ctx.m()) {
            return self.clone();
        }
        let map = self.ctx.frobenius_map(e);
        self.map(|x| map.apply(x))
    }

    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = FFMatrix::zeros(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = ctx.add(&out.data[idx], &ctx.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FFElement]) -> Result<Vec<FFElement>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = vec![ctx.zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            ctx.check(c)?;
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                *o = ctx.add(o, &ctx.mul(c, x));
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &FFMatrix) -> Result<FFMatrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "stacking {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FFMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> FFMatrix {
        Self::from_fn(&self.ctx, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j]).clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> FFMatrix {
        Self::from_fn(&self.ctx, rows.len(), self.cols, |i, j| {
            self.get(rows[i], j).clone()
        })
    }

    fn same_field(&self, other: &FFMatrix) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[target] -= f * row[source], touching columns from `from` on.
    fn eliminate(&mut self, target: usize, source: usize, f: &FFElement, from: usize) {
        let ctx = &self.ctx;
        let c = self.cols;
        for j in from..c {
            let s = &self.data[source * c + j];
            if s.is_zero() {
                continue;
            }
            let v = ctx.sub(&self.data[target * c + j], &ctx.mul(f, s));
            self.data[target * c + j] = v;
        }
    }

    fn scale_row(&mut self, i: usize, f: &FFElement, from: usize) {
        let c = self.cols;
        for j in from..c {
            self.data[i * c + j] = self.ctx.mul(&self.data[i * c + j], f);
        }
    }

    /// Reduced row-echelon form, rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pr);
            let inv = m.ctx.inv(m.get(rank, col)).expect("pivot is nonzero");
            m.scale_row(rank, &inv, col);
            for i in 0..m.rows {
                if i != rank && !m.get(i, col).is_zero() {
                    let f = m.get(i, col).clone();
                    m.eliminate(i, rank, &f, col);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pr);
            let inv = m.ctx.inv(m.get(rank, col)).expect("pivot is nonzero");
            for i in rank + 1..m.rows {
                if !m.get(i, col).is_zero() {
                    let f = m.ctx.mul(m.get(i, col), &inv);
                    m.eliminate(i, rank, &f, col);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rows of the reduced echelon form that are nonzero: a canonical basis of
    /// the row space.
    pub fn row_space_basis(&self) -> FFMatrix {
        let r = self.rref();
        let idx: Vec<usize> = (0..r.rank).collect();
        r.matrix.select_rows(&idx)
    }

    /// Basis of `{x : M x^T = 0}`, one vector per row.
    pub fn kernel(&self) -> FFMatrix {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let ctx = &self.ctx;
        let mut basis = FFMatrix::zeros(ctx, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.set(k, f, ctx.one());
            for (row, &pc) in r.pivots.iter().enumerate() {
                basis.set(k, pc, ctx.neg(r.matrix.get(row, f)));
            }
        }
        debug_assert_eq!(basis.nrows() + r.rank, self.cols, "rank-nullity");
        basis
    }

    pub fn inverse(&self) -> Result<FFMatrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = FFMatrix::from_fn(&self.ctx, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.ctx.one()
            } else {
                self.ctx.zero()
            }
        });
        let r = aug.rref();
        if r.pivots.iter().take_while(|&&c| c < n).count() < n {
            return Err(Error::Singular);
        }
        Ok(FFMatrix::from_fn(&self.ctx, n, n, |i, j| {
            r.matrix.get(i, n + j).clone()
        }))
    }

    /// Whether `v` lies in the row space.
    pub fn contains_row(&self, v: &[FFElement]) -> Result<bool> {
        let vm = FFMatrix::from_rows(&self.ctx, vec![v.to_vec()], self.cols)?;
        Ok(self.vstack(&vm)?.rank() == self.rank())
    }

    pub fn same_row_space(&self, other: &FFMatrix) -> Result<bool> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("different column counts".into()));
        }
        Ok(self.row_space_basis() == other.row_space_basis())
    }
}

/// dim(rowspace(A) ∩ rowspace(B)) = rank A + rank B - rank [A; B].
pub fn intersection_dim(a: &FFMatrix, b: &FFMatrix) -> Result<usize> {
    let stacked = a.vstack(b)?;
    Ok(a.rank() + b.rank() - stacked.rank())
}

/// Explicit basis of rowspace(A) ∩ rowspace(B).
///
/// Solves u·A = v·B through the kernel of [A; -B]^T and maps each solution to
/// u·A; the result is returned in reduced echelon form.
pub fn intersection_basis(a: &FFMatrix, b: &FFMatrix) -> Result<FFMatrix> {
    let ctx = a.ctx();
    let neg_b = b.map(|x| ctx.neg(x));
    let system = a.vstack(&neg_b)?.transpose();
    let sols = system.kernel();
    let ra = a.nrows();
    let mut rows = Vec::with_capacity(sols.nrows());
    for s in sols.rows() {
        rows.push(a.vec_mul(&s[..ra])?);
    }
    let span = FFMatrix::from_rows(ctx, rows, a.ncols())?;
    Ok(span.row_space_basis())
}
