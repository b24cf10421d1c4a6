//! Bases of GF(q^m) over GF(q): Moore matrices, trace duals and self-dual
//! bases.

mod congruence;

use crate::error::{Error, Result};
use crate::field::{FFElement, FieldCtx};
use crate::linalg::FFMatrix;

/// An ordered basis (α₁, …, α_m) of GF(q^m) over GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVec {
    ctx: FieldCtx,
    elems: Vec<FFElement>,
}

impl BasisVec {
    /// Validates that `elems` has m entries and a nonsingular Moore matrix.
    pub fn new(ctx: &FieldCtx, elems: Vec<FFElement>) -> Result<Self> {
        let m = ctx.m();
        if elems.len() != m {
            return Err(Error::ShapeMismatch(format!(
                "{} elements for a basis of length {m}",
                elems.len()
            )));
        }
        for e in &elems {
            ctx.check(e)?;
        }
        let b = BasisVec {
            ctx: ctx.clone(),
            elems,
        };
        if b.moore_matrix(m)?.rank() != m {
            return Err(Error::NotABasis {
                q: ctx.q().unwrap_or(u128::MAX),
            });
        }
        Ok(b)
    }

    /// {1, g, …, g^(m-1)} for the field generator g.
    pub fn power_basis(ctx: &FieldCtx) -> Self {
        let g = ctx.generator();
        let mut elems = Vec::with_capacity(ctx.m());
        let mut cur = ctx.one();
        for _ in 0..ctx.m() {
            elems.push(cur.clone());
            cur = ctx.mul(&cur, &g);
        }
        BasisVec {
            ctx: ctx.clone(),
            elems,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn elems(&self) -> &[FFElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// r×m matrix whose i-th row is the basis raised to q^i.
    pub fn moore_matrix(&self, rows: usize) -> Result<FFMatrix> {
        let m = self.elems.len();
        if rows == 0 || rows > m {
            return Err(Error::RowCountOutOfRange { rows, m });
        }
        let mut out = Vec::with_capacity(rows);
        let mut cur = self.elems.clone();
        for _ in 0..rows {
            let next = cur.iter().map(|a| self.ctx.frob(a, 1)).collect();
            out.push(std::mem::replace(&mut cur, next));
        }
        FFMatrix::from_rows(&self.ctx, out, m)
    }

    /// Gram matrix of the trace form, Tr(αᵢαⱼ), entries in GF(q).
    pub fn gram_matrix(&self) -> FFMatrix {
        let ctx = &self.ctx;
        let m = self.elems.len();
        let mut g = FFMatrix::zeros(ctx, m, m);
        for i in 0..m {
            for j in i..m {
                let t = ctx.trace_linear(&ctx.mul(&self.elems[i], &self.elems[j]));
                g.set(j, i, t.clone());
                g.set(i, j, t);
            }
        }
        g
    }

    pub fn is_self_dual(&self) -> bool {
        self.gram_matrix().is_identity()
    }

    /// The trace-dual basis β, Tr(αᵢβⱼ) = δᵢⱼ, read off the inverse Moore
    /// matrix: Moore(β)ᵀ = Moore(α)⁻¹, so βⱼ is entry (j, 0) of the inverse.
    pub fn dual_basis(&self) -> Result<BasisVec> {
        let m = self.elems.len();
        let inv = self.moore_matrix(m)?.inverse()?;
        let elems: Vec<FFElement> = (0..m).map(|j| inv.get(j, 0).clone()).collect();
        let dual = BasisVec {
            ctx: self.ctx.clone(),
            elems,
        };
        let ctx = &self.ctx;
        for (i, a) in self.elems.iter().enumerate() {
            for (j, b) in dual.elems.iter().enumerate() {
                let expected = if i == j { ctx.one() } else { ctx.zero() };
                if ctx.trace_linear(&ctx.mul(a, b)) != expected {
                    return Err(Error::InternalInvariantViolation(format!(
                        "Tr(α{i}·β{j}) is not δ"
                    )));
                }
            }
        }
        Ok(dual)
    }

    /// Coordinates of x over GF(q) in this basis: cᵢ = Tr(x·βᵢ).
    pub fn coordinates(&self, x: &FFElement, dual: &BasisVec) -> Vec<FFElement> {
        dual.elems
            .iter()
            .map(|b| self.ctx.trace_linear(&self.ctx.mul(x, b)))
            .collect()
    }

    /// αᵢ = Σⱼ Eᵢⱼ βⱼ for a matrix E over GF(q).
    pub fn transform(&self, e: &FFMatrix) -> Result<BasisVec> {
        let elems = (0..e.nrows())
            .map(|i| {
                e.row(i)
                    .iter()
                    .zip(&self.elems)
                    .fold(self.ctx.zero(), |acc, (c, b)| {
                        self.ctx.add(&acc, &self.ctx.mul(c, b))
                    })
            })
            .collect();
        BasisVec::new(&self.ctx, elems)
    }
}

/// A self-dual basis of GF(q^m) over GF(q) exists iff q is even or q and m
/// are both odd.
pub fn self_dual_exists(q: u64, m: usize) -> bool {
    q.is_multiple_of(2) || m % 2 == 1
}

/// A self-dual basis together with the data that produced it.
#[derive(Clone, Debug)]
pub struct SelfDualConstruction {
    /// Starting basis β.
    pub start: BasisVec,
    /// Gram matrix M of β.
    pub gram: FFMatrix,
    /// E over GF(q) with E·M·Eᵀ = I.
    pub transform: FFMatrix,
    /// α = E·β, with Tr(αᵢαⱼ) = δᵢⱼ.
    pub basis: BasisVec,
}

/// A self-dual basis starting from the power basis.
///
/// The output is deterministic for a given field but self-dual bases are
/// not unique; only Tr(αᵢαⱼ) = δᵢⱼ is guaranteed.
pub fn self_dual_basis(ctx: &FieldCtx) -> Result<BasisVec> {
    Ok(self_dual_basis_from(&BasisVec::power_basis(ctx))?.basis)
}

pub fn self_dual_basis_from(start: &BasisVec) -> Result<SelfDualConstruction> {
    let ctx = start.ctx();
    let q = ctx.q();
    let exists = match q.and_then(|q| u64::try_from(q).ok()) {
        Some(q) => self_dual_exists(q, ctx.m()),
        None => ctx.characteristic() == 2 || ctx.m() % 2 == 1,
    };
    if !exists {
        return Err(Error::NoSelfDualBasis {
            q: q.unwrap_or(u128::MAX),
            m: ctx.m(),
        });
    }
    let gram = start.gram_matrix();
    let transform = congruence::congruence_to_identity(&gram)?;
    let basis = start.transform(&transform)?;
    if !basis.is_self_dual() {
        return Err(Error::FactorizationFailed(
            "constructed basis fails the Gram identity".into(),
        ));
    }
    Ok(SelfDualConstruction {
        start: start.clone(),
        gram,
        transform,
        basis,
    })
}
