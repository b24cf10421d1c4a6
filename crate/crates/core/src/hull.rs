//! e-Galois hulls Hull_e(C) = C ∩ C^{⊥e} of Gabidulin codes.
//!
//! Three independent routes to the hull dimension are kept side by side: the
//! closed form [`hull_dim_formula`], the rank of G stacked on the closed-form
//! dual generator, and the intersection with a dual computed from the kernel
//! of G. The last two are compared on every call to [`hull_dim_oracle`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gabidulin::{galois_ip, DualConvention, GabidulinCode};
use crate::linalg::{intersection_basis, intersection_dim, FFMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    /// Hull = {0}.
    #[serde(rename = "LCD")]
    Lcd,
    /// Hull = C with dim C < dim C^{⊥e}.
    #[serde(rename = "self-orthogonal-proper")]
    SelfOrthogonalProper,
    /// Hull = C = C^{⊥e}.
    #[serde(rename = "self-dual")]
    SelfDual,
    /// Hull = C^{⊥e} with dim C^{⊥e} < dim C.
    #[serde(rename = "dual-containing")]
    DualContaining,
    #[serde(rename = "generic")]
    Generic,
}

impl Classification {
    pub const ALL: [Classification; 5] = [
        Classification::Lcd,
        Classification::SelfOrthogonalProper,
        Classification::SelfDual,
        Classification::DualContaining,
        Classification::Generic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Lcd => "LCD",
            Classification::SelfOrthogonalProper => "self-orthogonal-proper",
            Classification::SelfDual => "self-dual",
            Classification::DualContaining => "dual-containing",
            Classification::Generic => "generic",
        }
    }

    /// Hull = C (proper or not).
    pub fn is_self_orthogonal(self) -> bool {
        matches!(
            self,
            Classification::SelfOrthogonalProper | Classification::SelfDual
        )
    }

    /// Classification of a length-m, dimension-k code with hull dimension `dim`.
    pub fn from_dims(m: usize, k: usize, dim: usize) -> Classification {
        if dim == 0 {
            Classification::Lcd
        } else if dim == k && k == m - k {
            Classification::SelfDual
        } else if dim == k {
            Classification::SelfOrthogonalProper
        } else if dim == m - k {
            Classification::DualContaining
        } else {
            Classification::Generic
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Classification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Classification::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown classification '{s}'")))
    }
}

/// Closed-form hull dimension of G_k(α) for a self-dual basis α:
/// min(m−k, e) for e ≤ k and min(m−e, k) for e > k.
pub fn hull_dim_formula(m: usize, k: usize, e: usize) -> Result<usize> {
    if k == 0 || k >= m {
        return Err(Error::OutOfRange(format!(
            "k = {k} outside 1..={}",
            m.saturating_sub(1)
        )));
    }
    if e >= m {
        return Err(Error::OutOfRange(format!("e = {e} outside 0..={}", m - 1)));
    }
    Ok(if e <= k {
        (m - k).min(e)
    } else {
        (m - e).min(k)
    })
}

fn dual_gen(code: &GabidulinCode, e: usize, conv: DualConvention) -> Result<FFMatrix> {
    code.galois_dual_gen_with(e, conv)
}

/// m − rank [G; G^{⊥e}], cross-checked against the intersection with the
/// kernel-derived dual.
pub fn hull_dim_oracle(code: &GabidulinCode, e: usize) -> Result<usize> {
    hull_dim_oracle_with(code, e, DualConvention::Theorem)
}

pub fn hull_dim_oracle_with(code: &GabidulinCode, e: usize, conv: DualConvention) -> Result<usize> {
    let g = code.generator();
    let stacked = g.vstack(&dual_gen(code, e, conv)?)?;
    let dim = code.m() - stacked.rank();
    let oracle_dual = code.galois_dual_oracle_with(e, conv)?;
    let cross = intersection_dim(g, &oracle_dual)?;
    if cross != dim {
        return Err(Error::InternalInvariantViolation(format!(
            "hull dimension {dim} from the stacked rank but {cross} from the kernel dual (e = {e})"
        )));
    }
    Ok(dim)
}

/// Rows spanning C ∩ C^{⊥e}, in reduced echelon form.
pub fn hull_basis(code: &GabidulinCode, e: usize) -> Result<FFMatrix> {
    hull_basis_with(code, e, DualConvention::Theorem)
}

pub fn hull_basis_with(code: &GabidulinCode, e: usize, conv: DualConvention) -> Result<FFMatrix> {
    let g = code.generator();
    let dual = code.galois_dual_oracle_with(e, conv)?;
    let basis = intersection_basis(g, &dual)?;
    let ctx = code.ctx();
    for x in basis.rows() {
        if !g.contains_row(x)? {
            return Err(Error::InternalInvariantViolation(
                "hull vector outside the code".into(),
            ));
        }
        for y in g.rows() {
            let ip = match conv {
                DualConvention::Theorem => galois_ip(ctx, y, x, e)?,
                DualConvention::Preliminaries => galois_ip(ctx, x, y, e)?,
            };
            if !ip.is_zero() {
                return Err(Error::InternalInvariantViolation(
                    "hull vector is not e-orthogonal to the code".into(),
                ));
            }
        }
    }
    Ok(basis)
}

pub fn classify(code: &GabidulinCode, e: usize) -> Result<Classification> {
    let dim = hull_dim_oracle(code, e)?;
    Ok(Classification::from_dims(code.m(), code.k(), dim))
}

/// G·Gᵀ is nonsingular: the Euclidean LCD criterion.
pub fn euclidean_lcd_test(code: &GabidulinCode) -> Result<bool> {
    let g = code.generator();
    Ok(g.mul(&g.transpose())?.rank() == code.k())
}

/// k = m/2 and G·(G^(q^(m/2)))ᵀ = 0: the Hermitian self-duality criterion.
pub fn hermitian_self_dual_test(code: &GabidulinCode) -> Result<bool> {
    let m = code.m();
    if m % 2 == 1 {
        return Err(Error::OddLength(m));
    }
    let g = code.generator();
    let bar = g.frobenius(m / 2);
    Ok(2 * code.k() == m && g.mul(&bar.transpose())?.is_zero())
}

/// (Euclidean LCD, Hermitian self-dual) from the G·Gᵀ criteria.
pub fn gg_transpose_tests(code: &GabidulinCode) -> Result<(bool, bool)> {
    Ok((euclidean_lcd_test(code)?, hermitian_self_dual_test(code)?))
}

/// One (code, e) instance: formula, oracle and classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullReport {
    pub p: u64,
    pub h: usize,
    pub m: usize,
    pub k: usize,
    pub e: usize,
    pub dim_formula: usize,
    pub dim_oracle: usize,
    pub agree: bool,
    pub classification: Classification,
    /// The closed form is only claimed for self-dual bases under the
    /// second-slot dual convention.
    pub formula_applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull_basis: Option<Vec<Vec<Vec<u64>>>>,
}

impl HullReport {
    pub fn compute(
        code: &GabidulinCode,
        e: usize,
        conv: DualConvention,
        with_basis: bool,
    ) -> Result<HullReport> {
        let (m, k) = (code.m(), code.k());
        let dim_formula = hull_dim_formula(m, k, e)?;
        let dim_oracle = hull_dim_oracle_with(code, e, conv)?;
        let hull_basis = if with_basis {
            let b = hull_basis_with(code, e, conv)?;
            if b.nrows() != dim_oracle {
                return Err(Error::InternalInvariantViolation(format!(
                    "hull basis has {} rows, expected {dim_oracle}",
                    b.nrows()
                )));
            }
            Some(b.to_coeff_arrays())
        } else {
            None
        };
        let ctx = code.ctx();
        Ok(HullReport {
            p: ctx.characteristic(),
            h: ctx.subfield_degree(),
            m,
            k,
            e,
            dim_formula,
            dim_oracle,
            agree: dim_formula == dim_oracle,
            classification: Classification::from_dims(m, k, dim_oracle),
            formula_applicable: conv == DualConvention::Theorem && code.basis().is_self_dual(),
            hull_basis,
        })
    }

    /// q = p^h, if it fits.
    pub fn q(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.h as u32)
    }
}

#[cfg(test)]
mod tests;
