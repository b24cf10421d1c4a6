//! Symmetric congruence reduction of a trace-form Gram matrix to the identity.
//!
//! Given a nonsingular symmetric M over GF(q) (stored inside the big field),
//! find E over GF(q) with E·M·Eᵀ = I. Rows of E are vectors, A = E·M·Eᵀ is
//! maintained alongside, and every step is a simultaneous row/column
//! operation on A.

use crate::error::{Error, Result};
use crate::field::{FFElement, FieldCtx};
use crate::linalg::FFMatrix;

struct Congruence<'a> {
    ctx: &'a FieldCtx,
    a: Vec<Vec<FFElement>>,
    t: Vec<Vec<FFElement>>,
}

impl<'a> Congruence<'a> {
    fn new(gram: &'a FFMatrix) -> Self {
        let ctx = gram.ctx();
        let m = gram.nrows();
        Congruence {
            ctx,
            a: gram.rows().map(|r| r.to_vec()).collect(),
            t: FFMatrix::identity(ctx, m)
                .rows()
                .map(|r| r.to_vec())
                .collect(),
        }
    }

    fn dim(&self) -> usize {
        self.a.len()
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.t.swap(i, j);
        self.a.swap(i, j);
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
    }

    /// v_target += c * v_source
    fn add_multiple(&mut self, target: usize, source: usize, c: &FFElement) {
        if c.is_zero() {
            return;
        }
        let ctx = self.ctx;
        let m = self.dim();
        let src_t = self.t[source].clone();
        for (x, s) in self.t[target].iter_mut().zip(&src_t) {
            *x = ctx.add(x, &ctx.mul(c, s));
        }
        let src_row = self.a[source].clone();
        for j in 0..m {
            self.a[target][j] = ctx.add(&self.a[target][j], &ctx.mul(c, &src_row[j]));
        }
        for i in 0..m {
            let v = ctx.mul(c, &self.a[i][source]);
            self.a[i][target] = ctx.add(&self.a[i][target], &v);
        }
    }

    fn scale(&mut self, i: usize, s: &FFElement) {
        let ctx = self.ctx;
        let m = self.dim();
        for x in self.t[i].iter_mut() {
            *x = ctx.mul(x, s);
        }
        for j in 0..m {
            self.a[i][j] = ctx.mul(&self.a[i][j], s);
        }
        for j in 0..m {
            self.a[j][i] = ctx.mul(&self.a[j][i], s);
        }
    }

    /// Orthogonalize everything after `t` against the vector at `t`.
    fn clear_below(&mut self, t: usize) -> Result<()> {
        let ctx = self.ctx;
        let d_inv = ctx.inv(&self.a[t][t])?;
        for j in t + 1..self.dim() {
            if !self.a[j][t].is_zero() {
                let c = ctx.neg(&ctx.mul(&self.a[j][t], &d_inv));
                self.add_multiple(j, t, &c);
            }
        }
        Ok(())
    }

    fn into_matrix(self) -> Result<FFMatrix> {
        let m = self.dim();
        FFMatrix::from_rows(self.ctx, self.t, m)
    }
}

pub(crate) fn congruence_to_identity(gram: &FFMatrix) -> Result<FFMatrix> {
    if gram.nrows() != gram.ncols() {
        return Err(Error::ShapeMismatch("Gram matrix must be square".into()));
    }
    let ctx = gram.ctx();
    let mut c = Congruence::new(gram);
    if ctx.characteristic() == 2 {
        reduce_even(&mut c)?;
    } else {
        reduce_odd(&mut c)?;
    }
    let e = c.into_matrix()?;
    let check = e.mul(gram)?.mul(&e.transpose())?;
    if !check.is_identity() {
        return Err(Error::FactorizationFailed(
            "E·M·Eᵀ is not the identity".into(),
        ));
    }
    Ok(e)
}

/// Characteristic 2. The trace form satisfies Tr(a²) = Tr(a)², so it is not
/// alternating and some vector has nonzero norm. Normalize such vectors and
/// split them off; if the remainder becomes alternating, a hyperbolic pair
/// (w₁, w₂) is absorbed together with a previous unit vector u into the
/// orthonormal triple u+w₁, u+w₂, u+w₁+w₂.
fn reduce_even(c: &mut Congruence) -> Result<()> {
    let ctx = c.ctx;
    let m = c.dim();
    let mut t = 0;
    while t < m {
        if let Some(j) = (t..m).find(|&j| !c.a[j][j].is_zero()) {
            c.swap(t, j);
            let root = ctx
                .sqrt_in_subfield(&c.a[t][t])
                .ok_or_else(|| Error::FactorizationFailed("no square root in GF(q)".into()))?;
            c.scale(t, &ctx.inv(&root)?);
            c.clear_below(t)?;
            t += 1;
            continue;
        }
        // remaining block is alternating
        if t == 0 {
            return Err(Error::FactorizationFailed(
                "form is alternating; it cannot be congruent to the identity".into(),
            ));
        }
        let partner = (t + 1..m)
            .find(|&j| !c.a[t][j].is_zero())
            .ok_or_else(|| Error::FactorizationFailed("Gram matrix is singular".into()))?;
        c.swap(t + 1, partner);
        let s = ctx.inv(&c.a[t][t + 1])?;
        c.scale(t + 1, &s);
        for j in t + 2..m {
            let c1 = c.a[j][t + 1].clone();
            let c2 = c.a[j][t].clone();
            c.add_multiple(j, t, &c1);
            c.add_multiple(j, t + 1, &c2);
        }
        let u = t - 1;
        let (tu, w1, w2) = (c.t[u].clone(), c.t[t].clone(), c.t[t + 1].clone());
        let sum = |x: &[FFElement], y: &[FFElement]| -> Vec<FFElement> {
            x.iter().zip(y).map(|(a, b)| ctx.add(a, b)).collect()
        };
        c.t[u] = sum(&tu, &w1);
        c.t[t] = sum(&tu, &w2);
        c.t[t + 1] = sum(&c.t[u].clone(), &w2);
        for i in [u, t, t + 1] {
            for j in [u, t, t + 1] {
                c.a[i][j] = if i == j { ctx.one() } else { ctx.zero() };
            }
        }
        t += 2;
    }
    Ok(())
}

/// Odd characteristic: diagonalize, then normalize the diagonal. Squares are
/// scaled to 1; non-squares are paired and each pair diag(a, b) is taken to
/// diag(1, 1) using x, y with a·x² + b·y² = 1.
fn reduce_odd(c: &mut Congruence) -> Result<()> {
    let ctx = c.ctx;
    let m = c.dim();
    for t in 0..m {
        if c.a[t][t].is_zero() {
            if let Some(j) = (t + 1..m).find(|&j| !c.a[j][j].is_zero()) {
                c.swap(t, j);
            } else if let Some(j) = (t + 1..m).find(|&j| !c.a[t][j].is_zero()) {
                // a_tt + 2 a_tj + a_jj = 2 a_tj != 0
                c.add_multiple(t, j, &ctx.one());
            } else {
                return Err(Error::FactorizationFailed("Gram matrix is singular".into()));
            }
        }
        c.clear_below(t)?;
    }

    let mut non_squares = Vec::new();
    for i in 0..m {
        let d = c.a[i][i].clone();
        match ctx.sqrt_in_subfield(&d) {
            Some(r) => c.scale(i, &ctx.inv(&r)?),
            None => non_squares.push(i),
        }
    }
    if non_squares.len() % 2 == 1 {
        return Err(Error::FactorizationFailed(
            "discriminant is not a square".into(),
        ));
    }
    for pair in non_squares.chunks(2) {
        let (i, j) = (pair[0], pair[1]);
        let a = c.a[i][i].clone();
        let b = c.a[j][j].clone();
        let one = ctx.one();
        let b_inv = ctx.inv(&b)?;
        let (x, y) = ctx
            .subfield_elements()
            .find_map(|x| {
                let rest = ctx.mul(&ctx.sub(&one, &ctx.mul(&a, &ctx.square(&x))), &b_inv);
                ctx.sqrt_in_subfield(&rest).map(|y| (x, y))
            })
            .ok_or_else(|| Error::FactorizationFailed("a·x² + b·y² = 1 has no solution".into()))?;
        // v_i' = x v_i + y v_j, v_j' = (-b y v_i + a x v_j) / sqrt(ab)
        let root_ab = ctx
            .sqrt_in_subfield(&ctx.mul(&a, &b))
            .ok_or_else(|| Error::FactorizationFailed("ab is not a square".into()))?;
        let s = ctx.inv(&root_ab)?;
        let ci = ctx.mul(&ctx.neg(&ctx.mul(&b, &y)), &s);
        let cj = ctx.mul(&ctx.mul(&a, &x), &s);
        let (vi, vj) = (c.t[i].clone(), c.t[j].clone());
        c.t[i] = vi
            .iter()
            .zip(&vj)
            .map(|(u, v)| ctx.add(&ctx.mul(&x, u), &ctx.mul(&y, v)))
            .collect();
        c.t[j] = vi
            .iter()
            .zip(&vj)
            .map(|(u, v)| ctx.add(&ctx.mul(&ci, u), &ctx.mul(&cj, v)))
            .collect();
        c.a[i][i] = ctx.one();
        c.a[j][j] = ctx.one();
    }
    Ok(())
}
