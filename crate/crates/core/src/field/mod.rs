//! Exact arithmetic in GF(p^n) with a distinguished subfield GF(q), q = p^h.
//!
//! Elements are stored in a polynomial basis over GF(p). For p = 2 the
//! coefficients are bit-packed into 64-bit words, otherwise each coefficient
//! occupies one word. The subfield GF(q) is not a separate type: its elements
//! are the fixed points of the q-power Frobenius inside GF(p^n), with a
//! coercion to an h-coefficient form when a compact representation is needed.

mod poly;
pub(crate) mod prime;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use smallvec::SmallVec;

pub use poly::Poly;
pub use prime::{is_prime, prime_power};

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 2]>;

/// An element of some GF(p^n).
///
/// The element does not own a reference to its field; arithmetic goes
/// through [`FieldCtx`]. A small tag derived from the field's characteristic
/// and modulus is carried along so that elements of different fields never
/// compare equal and mixed-field operations are caught.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFElement {
    tag: u32,
    words: Words,
}

impl FFElement {
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FFElement{:?}", self.words.as_slice())
    }
}

/// Immutable descriptor of GF(p^n) together with its subfield GF(q), q = p^h.
///
/// Cloning is cheap; all precomputed tables live behind an `Arc`.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    n: usize,
    h: usize,
    modulus: Poly,
    tag: u32,
    binary: bool,
    words: usize,
    /// modulus bits for p = 2
    modulus_bits: Vec<u64>,
    /// for p = 2 and n <= 64: entry t is t(x)·x^n mod f, for deg t < 8
    reduce_table: Vec<u64>,
    /// images of x^i under a -> a^p
    frob_p: Vec<FFElement>,
    /// images of x^i under a -> a^q
    frob_q: Vec<FFElement>,
    /// Tr(x^i) into GF(q)
    monomial_traces: Vec<FFElement>,
    /// Tr(x^i) when q = p, as scalars
    monomial_trace_scalars: Vec<u64>,
    subfield: Subfield,
}

/// GF(p)-basis of GF(q) inside GF(p^n) plus the data needed to coerce a
/// Frobenius-fixed element into coordinates over that basis.
struct Subfield {
    basis: Vec<FFElement>,
    pivots: Vec<usize>,
    transform: Vec<Vec<u64>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.h == other.inner.h
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.inner.p)
            .field("n", &self.inner.n)
            .field("h", &self.inner.h)
            .field("modulus", &self.inner.modulus.to_text("x"))
            .finish()
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) over GF({}^{}) mod {}",
            self.inner.p, self.inner.n, self.inner.p, self.inner.h, self.inner.modulus
        )
    }
}

impl FieldCtx {
    /// Builds GF(p^n) over its prime field (q = p).
    ///
    /// Without an explicit modulus the least irreducible polynomial is used,
    /// see [`Poly::least_irreducible`].
    pub fn new(p: u64, n: usize, modulus: Option<Poly>) -> Result<Self> {
        Self::with_subfield(p, 1, n, modulus)
    }

    /// Builds GF(q^m) with q = p^h, i.e. GF(p^n) for n = h*m, with GF(q) as
    /// the distinguished subfield.
    pub fn extension(p: u64, h: usize, m: usize, modulus: Option<Poly>) -> Result<Self> {
        if h == 0 || m == 0 {
            return Err(Error::OutOfRange("h and m must be positive".into()));
        }
        Self::with_subfield(p, h, h * m, modulus)
    }

    /// Same field, different distinguished subfield GF(p^h).
    pub fn relative_to(&self, h: usize) -> Result<Self> {
        Self::with_subfield(
            self.inner.p,
            h,
            self.inner.n,
            Some(self.inner.modulus.clone()),
        )
    }

    fn with_subfield(p: u64, h: usize, n: usize, modulus: Option<Poly>) -> Result<Self> {
        if !prime::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::OutOfRange(
                "extension degree must be positive".into(),
            ));
        }
        if h == 0 || !n.is_multiple_of(h) {
            return Err(Error::InvalidSubfield { h, n });
        }
        let modulus = match modulus {
            Some(f) => {
                if f.characteristic() != p {
                    return Err(Error::InvalidModulus(format!("{f} is not over GF({p})")));
                }
                if f.degree() != Some(n) || !f.is_monic() {
                    return Err(Error::InvalidModulus(format!(
                        "{f} is not monic of degree {n}"
                    )));
                }
                if !f.is_irreducible() {
                    return Err(Error::ReducibleModulus(f.to_text("x")));
                }
                f
            }
            None => Poly::least_irreducible(p, n),
        };
        let tag = {
            let mut hasher = std::collections::hash_map::DefaultHasher::new();
            modulus.hash(&mut hasher);
            hasher.finish() as u32
        };
        let binary = p == 2;
        let words = if binary { n.div_ceil(64) } else { n };
        let modulus_bits = if binary {
            let mut bits = vec![0u64; (n + 1).div_ceil(64)];
            for (i, &c) in modulus.coeffs().iter().enumerate() {
                if c == 1 {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        } else {
            Vec::new()
        };
        let reduce_table = if binary && n <= 64 {
            reduction_table(&modulus_bits, n)
        } else {
            Vec::new()
        };
        let mut inner = Inner {
            p,
            n,
            h,
            modulus,
            tag,
            binary,
            words,
            modulus_bits,
            reduce_table,
            frob_p: Vec::new(),
            frob_q: Vec::new(),
            monomial_traces: Vec::new(),
            monomial_trace_scalars: Vec::new(),
            subfield: Subfield {
                basis: Vec::new(),
                pivots: Vec::new(),
                transform: Vec::new(),
            },
        };
        // x -> x^p as a GF(p)-linear map, column i = (x^i)^p
        let ctx0 = FieldCtx {
            inner: Arc::new(clone_shell(&inner)),
        };
        let xp = ctx0.pow(&ctx0.generator(), p as u128);
        let mut cols = Vec::with_capacity(n);
        let mut acc = ctx0.one();
        for _ in 0..n {
            cols.push(acc.clone());
            acc = ctx0.mul(&acc, &xp);
        }
        inner.frob_p = cols;
        let ctx1 = FieldCtx {
            inner: Arc::new(clone_shell_with(&inner)),
        };
        inner.frob_q = (0..n)
            .map(|i| {
                let mut v = ctx1.monomial(i);
                for _ in 0..h {
                    v = ctx1.frob_p(&v);
                }
                v
            })
            .collect();
        let ctx2 = FieldCtx {
            inner: Arc::new(clone_shell_with(&inner)),
        };
        let traces = (0..n)
            .map(|i| ctx2.trace(&ctx2.monomial(i)))
            .collect::<Result<Vec<_>>>()?;
        if h == 1 {
            inner.monomial_trace_scalars = traces.iter().map(|t| ctx2.coeff(t, 0)).collect();
        }
        inner.monomial_traces = traces;
        inner.subfield = build_subfield(&ctx2, &inner.monomial_traces)?;
        Ok(FieldCtx {
            inner: Arc::new(inner),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    /// Extension degree n over GF(p).
    pub fn degree(&self) -> usize {
        self.inner.n
    }

    /// Subfield degree h (q = p^h).
    pub fn subfield_degree(&self) -> usize {
        self.inner.h
    }

    /// Relative degree m = n / h.
    pub fn m(&self) -> usize {
        self.inner.n / self.inner.h
    }

    /// q = p^h, if it fits in 128 bits.
    pub fn q(&self) -> Option<u128> {
        (self.inner.p as u128).checked_pow(self.inner.h as u32)
    }

    /// |GF(p^n)|, if it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        (self.inner.p as u128).checked_pow(self.inner.n as u32)
    }

    pub fn modulus(&self) -> &Poly {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FFElement {
        FFElement {
            tag: self.inner.tag,
            words: SmallVec::from_elem(0, self.inner.words),
        }
    }

    pub fn one(&self) -> FFElement {
        self.from_u64(1)
    }

    /// The constant `c mod p`.
    pub fn from_u64(&self, c: u64) -> FFElement {
        let mut z = self.zero();
        let c = c % self.inner.p;
        if c != 0 {
            z.words[0] = c;
        }
        z
    }

    /// The residue class of x, i.e. the root of the modulus.
    pub fn generator(&self) -> FFElement {
        self.monomial(1)
    }

    /// x^i reduced mod the modulus.
    pub fn monomial(&self, i: usize) -> FFElement {
        if i < self.inner.n {
            let mut z = self.zero();
            self.set_coeff(&mut z, i, 1);
            z
        } else {
            self.reduce_poly(&Poly::monomial(self.inner.p, i))
        }
    }

    /// Element from little-endian coefficients over GF(p); at most n entries.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FFElement> {
        if coeffs.len() > self.inner.n {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.inner.n
            )));
        }
        let mut z = self.zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.inner.p {
                return Err(Error::CoefficientOutOfRange {
                    value: c,
                    p: self.inner.p,
                });
            }
            self.set_coeff(&mut z, i, c);
        }
        Ok(z)
    }

    /// The n little-endian coefficients of `a` over GF(p).
    pub fn coeffs(&self, a: &FFElement) -> Vec<u64> {
        (0..self.inner.n).map(|i| self.coeff(a, i)).collect()
    }

    pub fn coeff(&self, a: &FFElement, i: usize) -> u64 {
        if self.inner.binary {
            (a.words[i / 64] >> (i % 64)) & 1
        } else {
            a.words[i]
        }
    }

    fn set_coeff(&self, a: &mut FFElement, i: usize, c: u64) {
        if self.inner.binary {
            let bit = 1u64 << (i % 64);
            if c & 1 == 1 {
                a.words[i / 64] |= bit;
            } else {
                a.words[i / 64] &= !bit;
            }
        } else {
            a.words[i] = c;
        }
    }

    /// Reduces an arbitrary polynomial over GF(p) into the field.
    pub fn reduce_poly(&self, f: &Poly) -> FFElement {
        let r = if f.characteristic() == self.inner.p {
            f.rem(&self.inner.modulus)
        } else {
            Poly::new(self.inner.p, f.coeffs().to_vec()).rem(&self.inner.modulus)
        };
        let mut z = self.zero();
        for (i, &c) in r.coeffs().iter().enumerate() {
            self.set_coeff(&mut z, i, c);
        }
        z
    }

    pub fn to_poly(&self, a: &FFElement) -> Poly {
        Poly::new(self.inner.p, self.coeffs(a))
    }

    /// Parses an element in either polynomial text (`1+x^3`) or
    /// coefficient-list (`[1,0,0,1]`) form; the result is reduced mod the
    /// field modulus.
    pub fn parse_element(&self, text: &str) -> Result<FFElement> {
        Ok(self.reduce_poly(&Poly::parse(text, self.inner.p)?))
    }

    /// Ascending polynomial text in the variable `var`, e.g. `1 + ω^3`.
    pub fn format_element(&self, a: &FFElement, var: &str) -> String {
        let terms: Vec<String> = (0..self.inner.n)
            .filter_map(|i| {
                let c = self.coeff(a, i);
                (c != 0).then(|| poly::term(c, i, var))
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Whether `a` was produced by this field (or one sharing its modulus).
    pub fn contains(&self, a: &FFElement) -> bool {
        a.tag == self.inner.tag && a.words.len() == self.inner.words
    }

    pub fn check(&self, a: &FFElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    #[inline]
    fn assert_member(&self, a: &FFElement) {
        assert!(self.contains(a), "element does not belong to {self}");
    }

    // ---- arithmetic -------------------------------------------------------

    /// Sum of two elements.
    ///
    /// # Panics
    /// If either operand belongs to another field; see [`FieldCtx::try_add`].
    pub fn add(&self, a: &FFElement, b: &FFElement) -> FFElement {
        self.assert_member(a);
        self.assert_member(b);
        let words = if self.inner.binary {
            if self.inner.words == 1 {
                let mut w = Words::new();
                w.push(a.words[0] ^ b.words[0]);
                return FFElement {
                    tag: self.inner.tag,
                    words: w,
                };
            }
            a.words.iter().zip(&b.words).map(|(x, y)| x ^ y).collect()
        } else {
            let p = self.inner.p;
            a.words
                .iter()
                .zip(&b.words)
                .map(|(&x, &y)| prime::add(x, y, p))
                .collect()
        };
        FFElement {
            tag: self.inner.tag,
            words,
        }
    }

    pub fn neg(&self, a: &FFElement) -> FFElement {
        self.assert_member(a);
        if self.inner.binary {
            return a.clone();
        }
        let p = self.inner.p;
        FFElement {
            tag: self.inner.tag,
            words: a.words.iter().map(|&x| prime::neg(x, p)).collect(),
        }
    }

    pub fn sub(&self, a: &FFElement, b: &FFElement) -> FFElement {
        self.assert_member(a);
        self.assert_member(b);
        if self.inner.binary {
            return self.add(a, b);
        }
        let p = self.inner.p;
        FFElement {
            tag: self.inner.tag,
            words: a
                .words
                .iter()
                .zip(&b.words)
                .map(|(&x, &y)| prime::sub(x, y, p))
                .collect(),
        }
    }

    /// Product of two elements.
    ///
    /// # Panics
    /// If either operand belongs to another field; see [`FieldCtx::try_mul`].
    pub fn mul(&self, a: &FFElement, b: &FFElement) -> FFElement {
        self.assert_member(a);
        self.assert_member(b);
        if self.inner.binary {
            self.mul_binary(a, b)
        } else {
            self.mul_odd(a, b)
        }
    }

    pub fn square(&self, a: &FFElement) -> FFElement {
        self.mul(a, a)
    }

    /// `c * a` for a prime-field scalar `c`.
    pub fn scale(&self, a: &FFElement, c: u64) -> FFElement {
        self.assert_member(a);
        let p = self.inner.p;
        let c = c % p;
        if self.inner.binary {
            return if c == 0 { self.zero() } else { a.clone() };
        }
        FFElement {
            tag: self.inner.tag,
            words: a.words.iter().map(|&x| prime::mul(x, c, p)).collect(),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: &FFElement) -> Result<FFElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = self
            .to_poly(a)
            .inv_mod(&self.inner.modulus)
            .ok_or_else(|| {
                Error::InternalInvariantViolation("nonzero element without inverse".into())
            })?;
        Ok(self.reduce_poly(&inv))
    }

    pub fn div(&self, a: &FFElement, b: &FFElement) -> Result<FFElement> {
        self.check(a)?;
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn try_add(&self, a: &FFElement, b: &FFElement) -> Result<FFElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_sub(&self, a: &FFElement, b: &FFElement) -> Result<FFElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub(a, b))
    }

    pub fn try_mul(&self, a: &FFElement, b: &FFElement) -> Result<FFElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_neg(&self, a: &FFElement) -> Result<FFElement> {
        self.check(a)?;
        Ok(self.neg(a))
    }

    pub fn pow(&self, a: &FFElement, mut exp: u128) -> FFElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn mul_binary(&self, a: &FFElement, b: &FFElement) -> FFElement {
        let n = self.inner.n;
        if self.inner.words == 1 {
            // product has at most 2n-1 <= 127 bits; reduce 8 high bits at a time
            let mut prod = clmul(a.words[0], b.words[0]);
            let table = &self.inner.reduce_table;
            let high_bits = n - 1;
            let mut j = high_bits.div_ceil(8);
            while j > 0 {
                j -= 1;
                let shift = n + 8 * j;
                let t = ((prod >> shift) & 0xff) as usize;
                if t != 0 {
                    prod ^= (t as u128) << shift;
                    prod ^= (table[t] as u128) << (8 * j);
                }
            }
            let mut words = Words::new();
            words.push(prod as u64);
            return FFElement {
                tag: self.inner.tag,
                words,
            };
        }
        let w = self.inner.words;
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * w + 1);
        for (wi, &word) in a.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let i = wi * 64 + bits.trailing_zeros() as usize;
                xor_shifted(&mut prod, &b.words, i);
                bits &= bits - 1;
            }
        }
        for d in (n..=2 * n - 2).rev() {
            if (prod[d / 64] >> (d % 64)) & 1 == 1 {
                xor_shifted(&mut prod, &self.inner.modulus_bits, d - n);
            }
        }
        FFElement {
            tag: self.inner.tag,
            words: prod[..w].iter().copied().collect(),
        }
    }

    fn mul_odd(&self, a: &FFElement, b: &FFElement) -> FFElement {
        let n = self.inner.n;
        let p = self.inner.p;
        let mut acc: SmallVec<[u64; 32]> = SmallVec::from_elem(0, 2 * n - 1);
        for (i, &x) in a.words.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.words.iter().enumerate() {
                if y != 0 {
                    acc[i + j] = prime::add(acc[i + j], prime::mul(x, y, p), p);
                }
            }
        }
        let f = self.inner.modulus.coeffs();
        for d in (n..2 * n - 1).rev() {
            let c = acc[d];
            if c == 0 {
                continue;
            }
            for (i, &fi) in f[..n].iter().enumerate() {
                if fi != 0 {
                    let idx = d - n + i;
                    acc[idx] = prime::sub(acc[idx], prime::mul(c, fi, p), p);
                }
            }
        }
        FFElement {
            tag: self.inner.tag,
            words: acc[..n].iter().copied().collect(),
        }
    }

    /// Applies the GF(p)-linear map with the given images of x^i.
    fn apply_linear(&self, cols: &[FFElement], a: &FFElement) -> FFElement {
        self.assert_member(a);
        let mut out = self.zero();
        if self.inner.binary {
            for (wi, &word) in a.words.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let i = wi * 64 + bits.trailing_zeros() as usize;
                    for (o, c) in out.words.iter_mut().zip(&cols[i].words) {
                        *o ^= c;
                    }
                    bits &= bits - 1;
                }
            }
        } else {
            let p = self.inner.p;
            for (i, &c) in a.words.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (o, &v) in out.words.iter_mut().zip(&cols[i].words) {
                    *o = prime::add(*o, prime::mul(c, v, p), p);
                }
            }
        }
        out
    }

    // ---- Frobenius and trace ----------------------------------------------

    /// a^p.
    pub fn frob_p(&self, a: &FFElement) -> FFElement {
        self.apply_linear(&self.inner.frob_p, a)
    }

    /// a^(q^e), with e reduced mod m.
    pub fn frob(&self, a: &FFElement, e: usize) -> FFElement {
        let e = e % self.m();
        let mut v = a.clone();
        for _ in 0..e {
            v = self.apply_linear(&self.inner.frob_q, &v);
        }
        v
    }

    /// Precomputes a -> a^(q^e) as a single linear map, for applying the same
    /// power to many elements.
    pub fn frobenius_map(&self, e: usize) -> FrobeniusMap {
        let e = e % self.m();
        let cols = (0..self.inner.n)
            .map(|i| self.frob(&self.monomial(i), e))
            .collect();
        FrobeniusMap {
            ctx: self.clone(),
            cols,
        }
    }

    /// Relative trace Tr(a) = sum of a^(q^i) for i < m, an element of GF(q).
    ///
    /// The sum is checked to be fixed by the q-Frobenius.
    pub fn trace(&self, a: &FFElement) -> Result<FFElement> {
        self.check(a)?;
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.m() {
            cur = self.apply_linear(&self.inner.frob_q, &cur);
            acc = self.add(&acc, &cur);
        }
        if self.apply_linear(&self.inner.frob_q, &acc) != acc {
            return Err(Error::InternalInvariantViolation(
                "trace value is not fixed by the Frobenius".into(),
            ));
        }
        Ok(acc)
    }

    /// The trace computed from the precomputed traces of the monomials; agrees
    /// with [`FieldCtx::trace`] and is much cheaper in large fields.
    pub fn trace_linear(&self, a: &FFElement) -> FFElement {
        self.assert_member(a);
        let p = self.inner.p;
        if self.inner.h == 1 {
            let s = &self.inner.monomial_trace_scalars;
            let c = if self.inner.binary {
                let mut parity = 0u32;
                for (wi, &w) in a.words.iter().enumerate() {
                    let mut mask = 0u64;
                    for b in 0..64 {
                        let i = wi * 64 + b;
                        if i < s.len() && s[i] == 1 {
                            mask |= 1 << b;
                        }
                    }
                    parity ^= (w & mask).count_ones() & 1;
                }
                parity as u64
            } else {
                a.words
                    .iter()
                    .zip(s)
                    .fold(0, |acc, (&x, &t)| prime::add(acc, prime::mul(x, t, p), p))
            };
            return self.from_u64(c);
        }
        self.apply_linear(&self.inner.monomial_traces, a)
    }

    // ---- subfield GF(q) ---------------------------------------------------

    pub fn in_subfield(&self, a: &FFElement) -> bool {
        self.contains(a) && self.apply_linear(&self.inner.frob_q, a) == *a
    }

    /// GF(p)-basis of GF(q) used for coercion; the first element is 1.
    pub fn subfield_basis(&self) -> &[FFElement] {
        &self.inner.subfield.basis
    }

    /// Coordinates of a GF(q) element over [`FieldCtx::subfield_basis`].
    pub fn subfield_coords(&self, a: &FFElement) -> Result<Vec<u64>> {
        self.check(a)?;
        let sub = &self.inner.subfield;
        let p = self.inner.p;
        let a_coeffs = self.coeffs(a);
        let d: Vec<u64> = sub.pivots.iter().map(|&c| a_coeffs[c]).collect();
        let h = self.inner.h;
        let coords: Vec<u64> = (0..h)
            .map(|j| {
                (0..h).fold(0, |acc, r| {
                    prime::add(acc, prime::mul(d[r], sub.transform[r][j], p), p)
                })
            })
            .collect();
        if self.from_subfield_coords(&coords)? != *a {
            return Err(Error::NotInSubfield(self.q().unwrap_or(u128::MAX)));
        }
        Ok(coords)
    }

    pub fn from_subfield_coords(&self, coords: &[u64]) -> Result<FFElement> {
        if coords.len() != self.inner.h {
            return Err(Error::ShapeMismatch(format!(
                "{} subfield coordinates, expected {}",
                coords.len(),
                self.inner.h
            )));
        }
        let mut acc = self.zero();
        for (c, b) in coords.iter().zip(&self.inner.subfield.basis) {
            acc = self.add(&acc, &self.scale(b, *c));
        }
        Ok(acc)
    }

    /// All elements of GF(q), lazily, in lexicographic order of their
    /// subfield coordinates (first coordinate varying fastest).
    pub fn subfield_elements(&self) -> impl Iterator<Item = FFElement> + '_ {
        let h = self.inner.h;
        let p = self.inner.p;
        let mut counter = vec![0u64; h];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let e = self.from_subfield_coords(&counter).expect("h coordinates");
            let mut i = 0;
            loop {
                if i == h {
                    done = true;
                    break;
                }
                counter[i] += 1;
                if counter[i] < p {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
            Some(e)
        })
    }

    /// Whether a GF(q) element is a square in GF(q).
    pub fn is_square_in_subfield(&self, a: &FFElement) -> bool {
        if a.is_zero() || self.inner.p == 2 {
            return true;
        }
        let q = self.q().expect("q fits in 128 bits");
        self.pow(a, (q - 1) / 2) == self.one()
    }

    /// A square root in GF(q) of a GF(q) element, if one exists.
    ///
    /// Characteristic 2 uses a^(2^(n-1)); odd q uses a^((q+1)/4) when
    /// q = 3 mod 4 and Tonelli-Shanks otherwise.
    pub fn sqrt_in_subfield(&self, a: &FFElement) -> Option<FFElement> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if self.inner.p == 2 {
            let mut r = a.clone();
            for _ in 0..self.inner.n - 1 {
                r = self.frob_p(&r);
            }
            return Some(r);
        }
        if !self.is_square_in_subfield(a) {
            return None;
        }
        let q = self.q()?;
        let root = if q % 4 == 3 {
            self.pow(a, (q + 1) / 4)
        } else {
            self.tonelli_shanks(a, q)?
        };
        (self.square(&root) == *a).then_some(root)
    }

    fn tonelli_shanks(&self, a: &FFElement, q: u128) -> Option<FFElement> {
        let one = self.one();
        let minus_one = self.neg(&one);
        let (mut t, mut s) = (q - 1, 0u32);
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self
            .subfield_elements()
            .find(|z| !z.is_zero() && self.pow(z, (q - 1) / 2) == minus_one)?;
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        while tt != one {
            let mut i = 0;
            let mut probe = tt.clone();
            while probe != one {
                probe = self.square(&probe);
                i += 1;
                if i == m {
                    return None;
                }
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }
}

/// A precomputed q^e-power Frobenius.
#[derive(Clone)]
pub struct FrobeniusMap {
    ctx: FieldCtx,
    cols: Vec<FFElement>,
}

impl FrobeniusMap {
    pub fn apply(&self, a: &FFElement) -> FFElement {
        self.ctx.apply_linear(&self.cols, a)
    }
}

fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for (i, &s) in src.iter().enumerate() {
        if s == 0 {
            continue;
        }
        dst[i + ws] ^= s << bs;
        if bs != 0 && i + ws + 1 < dst.len() {
            dst[i + ws + 1] ^= s >> (64 - bs);
        }
    }
}

/// t(x)·x^n mod f for every t of degree below 8, f given by its bits.
fn reduction_table(modulus_bits: &[u64], n: usize) -> Vec<u64> {
    let f = modulus_bits[0] as u128 | (modulus_bits.get(1).copied().unwrap_or(0) as u128) << 64;
    let top = 1u128 << n;
    // x^(n+i) mod f for i < 8
    let mut powers = [0u128; 8];
    let mut r = f ^ top;
    for slot in powers.iter_mut() {
        *slot = r;
        r <<= 1;
        if r & top != 0 {
            r ^= f;
        }
    }
    (0..256usize)
        .map(|t| {
            (0..8)
                .filter(|i| t >> i & 1 == 1)
                .fold(0u128, |acc, i| acc ^ powers[i]) as u64
        })
        .collect()
}

/// Carry-less product of two 64-bit polynomials over GF(2).
#[inline]
fn clmul(x: u64, y: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the CPU feature was just detected.
            return unsafe { clmul_pclmul(x, y) };
        }
    }
    clmul_portable(x, y)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse2")]
unsafe fn clmul_pclmul(x: u64, y: u64) -> u128 {
    use std::arch::x86_64::{__m128i, _mm_clmulepi64_si128, _mm_cvtsi64_si128};
    let a = _mm_cvtsi64_si128(x as i64);
    let b = _mm_cvtsi64_si128(y as i64);
    let r = _mm_clmulepi64_si128(a, b, 0);
    // SAFETY: __m128i and u128 have the same size; x86 is little-endian.
    unsafe { std::mem::transmute::<__m128i, u128>(r) }
}

fn clmul_portable(x: u64, y: u64) -> u128 {
    // 4-bit window over x
    let y = y as u128;
    let mut table = [0u128; 16];
    for t in 1..16 {
        table[t] = (0..4)
            .filter(|i| t >> i & 1 == 1)
            .fold(0, |acc, i| acc ^ (y << i));
    }
    let mut prod = 0u128;
    let mut shift = 0;
    let mut bits = x;
    while bits != 0 {
        prod ^= table[(bits & 0xf) as usize] << shift;
        bits >>= 4;
        shift += 4;
    }
    prod
}

fn clone_shell(inner: &Inner) -> Inner {
    Inner {
        p: inner.p,
        n: inner.n,
        h: inner.h,
        modulus: inner.modulus.clone(),
        tag: inner.tag,
        binary: inner.binary,
        words: inner.words,
        modulus_bits: inner.modulus_bits.clone(),
        reduce_table: inner.reduce_table.clone(),
        frob_p: Vec::new(),
        frob_q: Vec::new(),
        monomial_traces: Vec::new(),
        monomial_trace_scalars: Vec::new(),
        subfield: Subfield {
            basis: Vec::new(),
            pivots: Vec::new(),
            transform: Vec::new(),
        },
    }
}

fn clone_shell_with(inner: &Inner) -> Inner {
    let mut shell = clone_shell(inner);
    shell.frob_p = inner.frob_p.clone();
    shell.frob_q = inner.frob_q.clone();
    shell
}

/// Picks a GF(p)-basis of GF(q) starting from 1 and extending with the
/// traces of the monomials (the trace onto GF(q) is surjective).
fn build_subfield(ctx: &FieldCtx, traces: &[FFElement]) -> Result<Subfield> {
    let p = ctx.inner.p;
    let n = ctx.inner.n;
    let h = ctx.inner.h;
    let mut basis = vec![ctx.one()];
    let mut rows = vec![ctx.coeffs(&ctx.one())];
    for t in traces {
        if basis.len() == h {
            break;
        }
        let mut candidate = rows.clone();
        candidate.push(ctx.coeffs(t));
        let (_, _, piv) = prime::rref_with_transform(&candidate, n, p);
        if piv.len() == candidate.len() {
            rows = candidate;
            basis.push(t.clone());
        }
    }
    if basis.len() != h {
        return Err(Error::InternalInvariantViolation(format!(
            "trace image has dimension {} < {h}",
            basis.len()
        )));
    }
    let (_, transform, pivots) = prime::rref_with_transform(&rows, n, p);
    Ok(Subfield {
        basis,
        pivots,
        transform,
    })
}

#[cfg(test)]
mod tests;
