//! Exhaustive audit of the hull formula over every small field that has a
//! self-dual basis.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{self_dual_basis, self_dual_exists};
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx};
use crate::gabidulin::{DualConvention, GabidulinCode, DEFAULT_MINOR_BUDGET};
use crate::hull::{hermitian_self_dual_test, hull_dim_oracle, Classification, HullReport};

pub const DEFAULT_MAX_FIELD_ORDER: u128 = 1 << 20;

/// Which fields and checks a sweep covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Only fields with q^m at most this.
    pub max_field_order: u128,
    /// Cap on k×k minors per MDS check; larger codes are reported as not
    /// verified.
    pub max_minors: u128,
    /// Restrict to these base fields q; all prime powers when `None`.
    pub q: Option<Vec<u64>>,
    pub m_min: usize,
    pub m_max: Option<usize>,
    pub check_mds: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_field_order: DEFAULT_MAX_FIELD_ORDER,
            max_minors: DEFAULT_MINOR_BUDGET,
            q: None,
            m_min: 2,
            m_max: None,
            check_mds: true,
        }
    }
}

/// (p, h, m): GF(p^(hm)) over GF(p^h).
pub type FieldSpec = (u64, usize, usize);

/// Every (p, h, m) with m ≥ 2, a self-dual basis, and q^m within the budget,
/// sorted.
pub fn admissible_fields(config: &SweepConfig) -> Vec<FieldSpec> {
    let max = config.max_field_order;
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while (p as u128) * (p as u128) <= max {
        if is_prime(p) {
            let mut q = p as u128;
            let mut h = 1;
            while q * q <= max {
                let mut order = q * q;
                let mut m = 2;
                while order <= max {
                    let wanted_q = config
                        .q
                        .as_ref()
                        .is_none_or(|qs| qs.iter().any(|&x| x as u128 == q));
                    let in_range = m >= config.m_min && config.m_max.is_none_or(|mx| m <= mx);
                    if wanted_q && in_range && self_dual_exists(q as u64, m) {
                        out.push((p, h, m));
                    }
                    order *= q;
                    m += 1;
                }
                q *= p as u128;
                h += 1;
            }
        }
        p += 1;
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MdsStatus {
    Verified,
    Failed,
    NotVerified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCheck {
    pub p: u64,
    pub h: usize,
    pub m: usize,
    pub k: usize,
    pub mds: MdsStatus,
}

/// A self-dual code under the Hermitian product (e = m/2) found for a given
/// field, with both verification routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianWitness {
    pub p: u64,
    pub h: usize,
    pub m: usize,
    pub k: usize,
    pub e: usize,
    pub oracle_dim: usize,
    pub gg_test: bool,
}

impl HermitianWitness {
    pub fn verified(&self) -> bool {
        self.oracle_dim == self.k && 2 * self.k == self.m && self.gg_test
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub fields: usize,
    pub instances: usize,
    pub disagreements: usize,
    pub classification_counts: BTreeMap<Classification, usize>,
    pub corollary_violations: Vec<String>,
    pub mds_verified: usize,
    pub mds_failed: usize,
    pub mds_not_verified: usize,
    /// Euclidean (e = 0) self-dual instances over even q.
    pub euclidean_self_dual_even_q: usize,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
            && self.corollary_violations.is_empty()
            && self.mds_failed == 0
            && self.euclidean_self_dual_even_q == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub reports: Vec<HullReport>,
    pub codes: Vec<CodeCheck>,
    pub summary: SweepSummary,
}

/// Consequences of the hull formula that must hold for a self-dual basis:
/// LCD exactly at e = 0; for k ≤ m − k, self-orthogonal exactly when
/// k ≤ e ≤ m − k; for k = m/2, self-dual exactly at e = m/2.
pub fn corollary_violations(r: &HullReport) -> Vec<String> {
    let (m, k, e) = (r.m, r.k, r.e);
    let c = r.classification;
    let mut out = Vec::new();
    let tag = format!("(p={}, h={}, m={m}, k={k}, e={e})", r.p, r.h);
    if (c == Classification::Lcd) != (e == 0) {
        out.push(format!("LCD iff e = 0 fails at {tag}: {c}"));
    }
    if k <= m - k && c.is_self_orthogonal() != (k <= e && e <= m - k) {
        out.push(format!(
            "self-orthogonal iff k <= e <= m-k fails at {tag}: {c}"
        ));
    }
    if 2 * k == m && (c == Classification::SelfDual) != (2 * e == m) {
        out.push(format!("self-dual iff e = m/2 fails at {tag}: {c}"));
    }
    out
}

struct FieldOutcome {
    reports: Vec<HullReport>,
    codes: Vec<CodeCheck>,
}

fn sweep_field(spec: FieldSpec, config: &SweepConfig) -> Result<FieldOutcome> {
    let (p, h, m) = spec;
    let ctx = FieldCtx::extension(p, h, m, None)?;
    let alpha = self_dual_basis(&ctx)?;
    let per_k: Vec<Result<(Vec<HullReport>, CodeCheck)>> = (1..m)
        .into_par_iter()
        .map(|k| {
            let code = GabidulinCode::new(alpha.clone(), k)?;
            let reports = (0..m)
                .map(|e| HullReport::compute(&code, e, DualConvention::Theorem, false))
                .collect::<Result<Vec<_>>>()?;
            let mds = if !config.check_mds {
                MdsStatus::NotVerified
            } else {
                match code.is_mds(config.max_minors) {
                    Ok(true) => MdsStatus::Verified,
                    Ok(false) => MdsStatus::Failed,
                    Err(Error::TooLarge { .. }) => MdsStatus::NotVerified,
                    Err(err) => return Err(err),
                }
            };
            Ok((reports, CodeCheck { p, h, m, k, mds }))
        })
        .collect();
    let mut reports = Vec::new();
    let mut codes = Vec::new();
    for r in per_k {
        let (rs, c) = r?;
        reports.extend(rs);
        codes.push(c);
    }
    Ok(FieldOutcome { reports, codes })
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    let fields = admissible_fields(config);
    let outcomes = fields
        .par_iter()
        .map(|&f| sweep_field(f, config))
        .collect::<Result<Vec<_>>>()?;
    let mut reports: Vec<HullReport> = Vec::new();
    let mut codes: Vec<CodeCheck> = Vec::new();
    for o in outcomes {
        reports.extend(o.reports);
        codes.extend(o.codes);
    }
    reports.sort_by_key(|r| (r.p, r.h, r.m, r.k, r.e));
    codes.sort_by_key(|c| (c.p, c.h, c.m, c.k));

    let mut summary = SweepSummary {
        fields: fields.len(),
        instances: reports.len(),
        ..SweepSummary::default()
    };
    for r in &reports {
        if !r.agree {
            summary.disagreements += 1;
        }
        *summary
            .classification_counts
            .entry(r.classification)
            .or_default() += 1;
        summary.corollary_violations.extend(corollary_violations(r));
        if r.p == 2 && r.e == 0 && r.classification == Classification::SelfDual {
            summary.euclidean_self_dual_even_q += 1;
        }
    }
    for c in &codes {
        match c.mds {
            MdsStatus::Verified => summary.mds_verified += 1,
            MdsStatus::Failed => summary.mds_failed += 1,
            MdsStatus::NotVerified => summary.mds_not_verified += 1,
        }
    }
    Ok(SweepResult {
        reports,
        codes,
        summary,
    })
}

/// Builds G_{m/2}(α) over GF(q^m) with α self-dual and checks that it is
/// self-dual for the e = m/2 product, by the rank oracle and by
/// G·(G^(q^(m/2)))ᵀ = 0.
pub fn hermitian_self_dual_witness(p: u64, h: usize, m: usize) -> Result<HermitianWitness> {
    if m % 2 == 1 {
        return Err(Error::OddLength(m));
    }
    let ctx = FieldCtx::extension(p, h, m, None)?;
    let code = GabidulinCode::new(self_dual_basis(&ctx)?, m / 2)?;
    let e = m / 2;
    Ok(HermitianWitness {
        p,
        h,
        m,
        k: m / 2,
        e,
        oracle_dim: hull_dim_oracle(&code, e)?,
        gg_test: hermitian_self_dual_test(&code)?,
    })
}
