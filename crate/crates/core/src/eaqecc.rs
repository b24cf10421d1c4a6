//! Entanglement-assisted quantum code parameters [[n, k, d; c]] obtained from
//! the hull dimension of a Gabidulin code.
//!
//! An [n, k, d] MDS code over GF(q^m) with ℓ-dimensional hull yields an
//! [[n, k − ℓ, d; n − k − ℓ]] EAQECC; for G_k(α) this is
//! [[m, k − ℓ, m − k + 1; m − k − ℓ]]. The construction itself is not built,
//! only the parameters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::self_dual_exists;
use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::hull::hull_dim_formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccParams {
    pub n: usize,
    pub k_q: usize,
    pub d: usize,
    pub c: usize,
    /// 2d = n − k_q + 2 + c.
    pub meets_singleton_with_equality: bool,
    /// d ≤ n/2 + 1, the range in which the bound 2d ≤ n − k_q + 2 + c is
    /// known to hold.
    pub regime_validated: bool,
    pub m: usize,
    pub k: usize,
    pub hull_dim: usize,
}

impl fmt::Display for EaqeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}, {}; {}]]", self.n, self.k_q, self.d, self.c)
    }
}

pub fn derive_params(m: usize, k: usize, hull_dim: usize) -> Result<EaqeccParams> {
    if k == 0 || k >= m {
        return Err(Error::DimensionOutOfRange {
            k,
            m: m.saturating_sub(1),
        });
    }
    let max = k.min(m - k);
    if hull_dim > max {
        return Err(Error::InvalidHullDim { hull_dim, max });
    }
    let (n, k_q, d, c) = (m, k - hull_dim, m - k + 1, m - k - hull_dim);
    let meets = 2 * d == n - k_q + 2 + c;
    if 2 * d > n - k_q + 2 + c {
        return Err(Error::InternalInvariantViolation(format!(
            "[[{n}, {k_q}, {d}; {c}]] violates 2d ≤ n − k + 2 + c"
        )));
    }
    Ok(EaqeccParams {
        n,
        k_q,
        d,
        c,
        meets_singleton_with_equality: meets,
        regime_validated: 2 * d <= n + 2,
        m,
        k,
        hull_dim,
    })
}

/// ⌊(b + m)/(b + 1)⌋ with b = q^e. Whenever b ≥ m − 1 the value is 1, which
/// covers every b too large for u128.
pub fn grs_threshold(q: u64, e: usize, m: usize) -> u128 {
    let m = m as u128;
    match u32::try_from(e)
        .ok()
        .and_then(|e| (q as u128).checked_pow(e))
    {
        Some(b) if b < m.saturating_sub(1) => (b + m) / (b + 1),
        _ => {
            if m == 0 {
                0
            } else {
                1
            }
        }
    }
}

/// One row of a parameter table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EaqeccRow {
    pub p: u64,
    pub m: usize,
    pub e: usize,
    pub k: usize,
    pub hull_dim: usize,
    pub n: usize,
    pub k_q: usize,
    pub d: usize,
    pub c: usize,
    pub singleton_equality: bool,
    pub regime_validated: bool,
    pub exceeds_grs_threshold: bool,
    pub grs_threshold: u128,
    /// GF(q) = GF(p^h) is the base field of the code alphabet GF(q^m).
    pub h: usize,
}

impl EaqeccRow {
    pub fn params(&self) -> EaqeccParams {
        EaqeccParams {
            n: self.n,
            k_q: self.k_q,
            d: self.d,
            c: self.c,
            meets_singleton_with_equality: self.singleton_equality,
            regime_validated: self.regime_validated,
            m: self.m,
            k: self.k,
            hull_dim: self.hull_dim,
        }
    }
}

/// Parameters of the EAQECC from G_k(α) ⊂ GF(q^m)^m with α self-dual and
/// the e-Galois hull.
pub fn table_row(q: u64, m: usize, e: usize, k: usize) -> Result<EaqeccRow> {
    let (p, h) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if !self_dual_exists(q, m) {
        return Err(Error::NoSelfDualBasis { q: q as u128, m });
    }
    let hull_dim = hull_dim_formula(m, k, e)?;
    let params = derive_params(m, k, hull_dim)?;
    let threshold = grs_threshold(q, e, m);
    Ok(EaqeccRow {
        p,
        m,
        e,
        k,
        hull_dim,
        n: params.n,
        k_q: params.k_q,
        d: params.d,
        c: params.c,
        singleton_equality: params.meets_singleton_with_equality,
        regime_validated: params.regime_validated,
        exceeds_grs_threshold: k as u128 > threshold,
        grs_threshold: threshold,
        h: h as usize,
    })
}

/// (q, m, e) with an inclusive range of k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSpec {
    pub q: u64,
    pub m: usize,
    pub e: usize,
    pub k_min: usize,
    pub k_max: usize,
}

/// The four families (q, m, e, k-range) of the reference parameter table.
pub const TABLE1: [TableSpec; 4] = [
    TableSpec {
        q: 2,
        m: 100,
        e: 2,
        k_min: 21,
        k_max: 98,
    },
    TableSpec {
        q: 2,
        m: 100,
        e: 2,
        k_min: 98,
        k_max: 99,
    },
    TableSpec {
        q: 3,
        m: 67,
        e: 40,
        k_min: 2,
        k_max: 27,
    },
    TableSpec {
        q: 3,
        m: 67,
        e: 40,
        k_min: 27,
        k_max: 39,
    },
];

pub fn table_generate(specs: &[TableSpec]) -> Result<Vec<EaqeccRow>> {
    let mut rows = Vec::new();
    for s in specs {
        if s.k_min > s.k_max {
            return Err(Error::OutOfRange(format!(
                "empty k range {}..={}",
                s.k_min, s.k_max
            )));
        }
        for k in s.k_min..=s.k_max {
            rows.push(table_row(s.q, s.m, s.e, k)?);
        }
    }
    Ok(rows)
}
