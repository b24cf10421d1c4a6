//! Gabidulin codes G_k(α): the row space of the k×m Moore matrix of a basis
//! α of GF(q^m) over GF(q).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basis::BasisVec;
use crate::error::{Error, Result};
use crate::field::{FFElement, FieldCtx, Poly};
use crate::linalg::FFMatrix;

/// Default cap on the number of k×k minors examined by [`GabidulinCode::is_mds`].
pub const DEFAULT_MINOR_BUDGET: u128 = 100_000;

/// Which argument of x ·_e y the dual vectors occupy.
///
/// `Theorem`: C^{⊥e} = {y : x ·_e y = 0 for all x ∈ C} = (C^⊥)^(q^(m−e)),
/// whose generator is H^(q^(m−e)). `Preliminaries`: dual vectors in the first
/// slot, C^{⊥e} = (C^⊥)^(q^e). The two agree for e = 0 and e = m/2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DualConvention {
    #[default]
    Theorem,
    Preliminaries,
}

impl FromStr for DualConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "theorem" => Ok(DualConvention::Theorem),
            "preliminaries" => Ok(DualConvention::Preliminaries),
            other => Err(Error::Parse(format!(
                "unknown dual convention '{other}' (expected theorem or preliminaries)"
            ))),
        }
    }
}

impl fmt::Display for DualConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualConvention::Theorem => "theorem",
            DualConvention::Preliminaries => "preliminaries",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GabidulinCode {
    basis: BasisVec,
    k: usize,
    generator: FFMatrix,
    /// Full Moore matrix of the trace-dual basis β; row j is β^(q^j).
    dual_powers: FFMatrix,
}

impl GabidulinCode {
    pub fn new(basis: BasisVec, k: usize) -> Result<Self> {
        let m = basis.len();
        if k == 0 || k > m {
            return Err(Error::DimensionOutOfRange { k, m });
        }
        let generator = basis.moore_matrix(k)?;
        let dual_powers = basis.dual_basis()?.moore_matrix(m)?;
        Ok(GabidulinCode {
            basis,
            k,
            generator,
            dual_powers,
        })
    }

    pub fn basis(&self) -> &BasisVec {
        &self.basis
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.basis.ctx()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.basis.len()
    }

    pub fn generator(&self) -> &FFMatrix {
        &self.generator
    }

    /// The trace-dual basis β.
    pub fn dual_basis(&self) -> &[FFElement] {
        self.dual_powers.row(0)
    }

    /// Matrix whose rows are β^(q^j) for the given exponents (taken mod m).
    fn dual_rows(&self, exponents: impl Iterator<Item = usize>) -> FFMatrix {
        let m = self.m();
        let idx: Vec<usize> = exponents.map(|j| j % m).collect();
        self.dual_powers.select_rows(&idx)
    }

    fn require_proper(&self) -> Result<()> {
        if self.k == self.m() {
            Err(Error::FullDimension { m: self.m() })
        } else {
            Ok(())
        }
    }

    /// H with rows β^(q^k), …, β^(q^(m−1)).
    pub fn parity_check(&self) -> Result<FFMatrix> {
        self.require_proper()?;
        let h = self.dual_rows(self.k..self.m());
        if !self.generator.mul(&h.transpose())?.is_zero() {
            return Err(Error::InternalInvariantViolation("G·Hᵀ is not zero".into()));
        }
        Ok(h)
    }

    /// Closed-form generator of C^{⊥e}.
    pub fn galois_dual_gen(&self, e: usize) -> Result<FFMatrix> {
        self.galois_dual_gen_with(e, DualConvention::Theorem)
    }

    pub fn galois_dual_gen_with(&self, e: usize, conv: DualConvention) -> Result<FFMatrix> {
        self.require_proper()?;
        let (m, k) = (self.m(), self.k);
        let e = e % m;
        let shift = match conv {
            DualConvention::Theorem => m - e,
            DualConvention::Preliminaries => e,
        };
        let d = self.dual_rows((k..m).map(|j| j + shift));
        let orthogonal = match conv {
            DualConvention::Theorem => self.generator.mul(&d.frobenius(e).transpose())?,
            DualConvention::Preliminaries => d.mul(&self.generator.frobenius(e).transpose())?,
        };
        if !orthogonal.is_zero() {
            return Err(Error::InternalInvariantViolation(format!(
                "dual generator is not e-orthogonal to the code (e = {e})"
            )));
        }
        Ok(d)
    }

    /// Basis of C^{⊥e} computed from the kernel of G, without the closed form.
    pub fn galois_dual_oracle(&self, e: usize) -> Result<FFMatrix> {
        self.galois_dual_oracle_with(e, DualConvention::Theorem)
    }

    pub fn galois_dual_oracle_with(&self, e: usize, conv: DualConvention) -> Result<FFMatrix> {
        self.require_proper()?;
        let m = self.m();
        let e = e % m;
        Ok(match conv {
            // G·(x^(q^e))ᵀ = 0: solve for z = x^(q^e), then x = z^(q^(m−e))
            DualConvention::Theorem => self.generator.kernel().frobenius(m - e),
            // G^(q^e)·xᵀ = 0
            DualConvention::Preliminaries => self.generator.frobenius(e).kernel(),
        })
    }

    /// msg · G.
    pub fn encode(&self, msg: &[FFElement]) -> Result<Vec<FFElement>> {
        if msg.len() != self.k {
            return Err(Error::ShapeMismatch(format!(
                "message of length {} for a code of dimension {}",
                msg.len(),
                self.k
            )));
        }
        self.generator.vec_mul(msg)
    }

    /// Every k×k minor of G is nonsingular.
    ///
    /// Fails with `TooLarge` when binomial(m, k) exceeds `budget`.
    pub fn is_mds(&self, budget: u128) -> Result<bool> {
        generator_is_mds(&self.generator, budget)
    }

    /// Rank of a codeword over GF(q): expand each coordinate in the basis α
    /// and take the rank of the resulting m×m matrix.
    pub fn rank_weight(&self, word: &[FFElement]) -> Result<usize> {
        let ctx = self.ctx();
        let dual = self.dual_basis();
        let rows = word
            .iter()
            .map(|c| {
                dual.iter()
                    .map(|b| ctx.trace_linear(&ctx.mul(c, b)))
                    .collect()
            })
            .collect();
        Ok(FFMatrix::from_rows(ctx, rows, self.m())?.rank())
    }

    /// Minimum rank distance by enumerating all nonzero codewords; only for
    /// codes with at most `budget` codewords.
    pub fn min_rank_distance(&self, budget: u128) -> Result<usize> {
        let ctx = self.ctx();
        let order = ctx.order().ok_or(Error::TooLarge {
            count: u128::MAX,
            budget,
        })?;
        let count = order.checked_pow(self.k as u32).ok_or(Error::TooLarge {
            count: u128::MAX,
            budget,
        })?;
        if count > budget {
            return Err(Error::TooLarge { count, budget });
        }
        let elems = all_elements(ctx);
        let mut best = self.m();
        for idx in 1..count {
            let mut rest = idx;
            let msg: Vec<FFElement> = (0..self.k)
                .map(|_| {
                    let e = elems[(rest % order) as usize].clone();
                    rest /= order;
                    e
                })
                .collect();
            best = best.min(self.rank_weight(&self.encode(&msg)?)?);
        }
        Ok(best)
    }

    pub fn to_json(&self) -> CodeJson {
        let ctx = self.ctx();
        CodeJson {
            p: ctx.characteristic(),
            h: ctx.subfield_degree(),
            m: self.m(),
            modulus: ctx.modulus().coeffs().to_vec(),
            basis: self.basis.elems().iter().map(|a| ctx.coeffs(a)).collect(),
            k: self.k,
        }
    }

    pub fn from_json(json: &CodeJson) -> Result<Self> {
        if json.p < 2 {
            return Err(Error::NotPrime(json.p));
        }
        if let Some(&value) = json.modulus.iter().find(|&&c| c >= json.p) {
            return Err(Error::CoefficientOutOfRange { value, p: json.p });
        }
        let modulus = Poly::new(json.p, json.modulus.clone());
        let ctx = FieldCtx::extension(json.p, json.h, json.m, Some(modulus))?;
        let elems = json
            .basis
            .iter()
            .map(|c| ctx.from_coeffs(c))
            .collect::<Result<Vec<_>>>()?;
        GabidulinCode::new(BasisVec::new(&ctx, elems)?, json.k)
    }
}

/// Serialized form of a code; field elements and the modulus are coefficient
/// lists, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub p: u64,
    pub h: usize,
    pub m: usize,
    pub modulus: Vec<u64>,
    pub basis: Vec<Vec<u64>>,
    pub k: usize,
}

/// binomial(n, r), saturating at u128::MAX.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// All-minors MDS test for an arbitrary k×n generator matrix: every set of
/// k columns is linearly independent.
///
/// Column sets are visited depth first, so each prefix is reduced once and
/// shared by all of its extensions.
pub fn generator_is_mds(g: &FFMatrix, budget: u128) -> Result<bool> {
    let (k, n) = (g.nrows(), g.ncols());
    let count = binomial(n, k);
    if count > budget {
        return Err(Error::TooLarge { count, budget });
    }
    let columns: Vec<Vec<FFElement>> = (0..n)
        .map(|j| (0..k).map(|i| g.get(i, j).clone()).collect())
        .collect();
    let mut search = ColumnSearch {
        ctx: g.ctx(),
        k,
        columns: &columns,
        reduced: Vec::with_capacity(k),
    };
    Ok(search.all_independent(0))
}

struct ColumnSearch<'a> {
    ctx: &'a FieldCtx,
    k: usize,
    columns: &'a [Vec<FFElement>],
    /// Echelon vectors of the chosen prefix with their pivot positions; each
    /// pivot entry is 1 and the vectors are reduced against earlier pivots.
    reduced: Vec<(usize, Vec<FFElement>)>,
}

impl ColumnSearch<'_> {
    /// Whether every extension of the current prefix by columns from `start`
    /// on to k columns is independent.
    fn all_independent(&mut self, start: usize) -> bool {
        let depth = self.reduced.len();
        if depth == self.k {
            return true;
        }
        let remaining = self.k - depth;
        for j in start..=self.columns.len() - remaining {
            let Some(v) = self.reduce(&self.columns[j]) else {
                return false;
            };
            self.reduced.push(v);
            let ok = self.all_independent(j + 1);
            self.reduced.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn reduce(&self, col: &[FFElement]) -> Option<(usize, Vec<FFElement>)> {
        let ctx = self.ctx;
        let mut v = col.to_vec();
        for (pivot, b) in &self.reduced {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x = ctx.sub(x, &ctx.mul(&c, y));
            }
        }
        let pivot = v.iter().position(|x| !x.is_zero())?;
        let inv = ctx.inv(&v[pivot]).ok()?;
        for x in v.iter_mut() {
            *x = ctx.mul(x, &inv);
        }
        Some((pivot, v))
    }
}

/// x ·_e y = Σ xᵢ·yᵢ^(q^e).
pub fn galois_ip(ctx: &FieldCtx, x: &[FFElement], y: &[FFElement], e: usize) -> Result<FFElement> {
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch(format!(
            "vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    let frob = ctx.frobenius_map(e);
    x.iter().zip(y).try_fold(ctx.zero(), |acc, (a, b)| {
        let t = ctx.try_mul(a, &frob.apply(b))?;
        ctx.try_add(&acc, &t)
    })
}

/// Every element of a small field, indexed by its coefficient vector read as
/// a base-p number (constant term least significant).
pub(crate) fn all_elements(ctx: &FieldCtx) -> Vec<FFElement> {
    let p = ctx.characteristic();
    let n = ctx.degree();
    let order = ctx.order().expect("field too large to enumerate") as u64;
    (0..order)
        .map(|mut i| {
            let c: Vec<u64> = (0..n)
                .map(|_| {
                    let d = i % p;
                    i /= p;
                    d
                })
                .collect();
            ctx.from_coeffs(&c).expect("coefficients are reduced mod p")
        })
        .collect()
}
