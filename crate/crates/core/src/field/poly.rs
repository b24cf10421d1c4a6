//! Dense polynomials over GF(p), used for moduli, irreducibility testing and
//! the text formats accepted on the command line.

use std::fmt;

use super::prime;
use crate::error::{Error, Result};

/// A polynomial over GF(p), coefficients little-endian with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u64,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Builds a polynomial, reducing every coefficient mod `p`.
    pub fn new(p: u64, coeffs: impl Into<Vec<u64>>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut poly = Poly { p, coeffs };
        poly.trim();
        poly
    }

    pub fn zero(p: u64) -> Self {
        Poly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Poly::new(p, vec![1])
    }

    /// The monomial `x^d`.
    pub fn monomial(p: u64, d: usize) -> Self {
        let mut c = vec![0; d + 1];
        c[d] = 1;
        Poly { p, coeffs: c }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c: Vec<u64> = (0..len)
            .map(|i| prime::add(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Poly::new(self.p, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c: Vec<u64> = (0..len)
            .map(|i| prime::sub(self.coeff(i), other.coeff(i), self.p))
            .collect();
        Poly::new(self.p, c)
    }

    pub fn scale(&self, s: u64) -> Poly {
        Poly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&c| prime::mul(c, s, self.p))
                .collect::<Vec<_>>(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = prime::add(c[i + j], prime::mul(a, b, p), p);
            }
        }
        Poly::new(p, c)
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let p = self.p;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = prime::inv(divisor.coeffs[dd], p).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for d in (dd..rem.len()).rev() {
            let c = rem[d];
            if c == 0 {
                continue;
            }
            let f = prime::mul(c, lead_inv, p);
            quot[d - dd] = f;
            for (i, &m) in divisor.coeffs.iter().enumerate() {
                let idx = d - dd + i;
                rem[idx] = prime::sub(rem[idx], prime::mul(f, m, p), p);
            }
        }
        rem.truncate(dd);
        (Poly::new(p, quot), Poly::new(p, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Poly {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut exp: u128, modulus: &Poly) -> Poly {
        let mut base = self.rem(modulus);
        let mut acc = Poly::one(self.p).rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            exp >>= 1;
        }
        acc
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    fn make_monic(self) -> Poly {
        match self.coeffs.last() {
            None => self,
            Some(&lead) => {
                let s = prime::inv(lead, self.p).expect("nonzero");
                self.scale(s)
            }
        }
    }

    /// Inverse of `self` modulo `modulus` via the extended Euclidean algorithm.
    pub fn inv_mod(&self, modulus: &Poly) -> Option<Poly> {
        let p = self.p;
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut t0, mut t1) = (Poly::zero(p), Poly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let s = prime::inv(r0.coeffs[0], p)?;
        Some(t0.scale(s).rem(modulus))
    }

    /// Deterministic irreducibility test: `gcd(x^(p^i) - x, f) = 1` for
    /// `1 <= i <= n/2`, and `x^(p^n) = x mod f`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        if self.coeffs[0] == 0 {
            return false;
        }
        let p = self.p;
        let x = Poly::monomial(p, 1);
        let mut xp = x.clone();
        for i in 1..=n {
            xp = xp.pow_mod(p as u128, self);
            if i <= n / 2 && xp.sub(&x).gcd(self).degree() != Some(0) {
                return false;
            }
        }
        xp == x.rem(self)
    }

    /// The lexicographically least monic irreducible polynomial of degree `n`
    /// over GF(p), comparing coefficient tuples `(c_0, c_1, ..., c_{n-1})`
    /// from the constant term upward.
    pub fn least_irreducible(p: u64, n: usize) -> Poly {
        assert!(n >= 1);
        if n == 1 {
            return Poly::monomial(p, 1);
        }
        // c_0 = 0 makes x a factor, so the search starts at c_0 = 1.
        let mut tuple = vec![0u64; n];
        tuple[0] = 1;
        loop {
            let mut c = tuple.clone();
            c.push(1);
            let candidate = Poly::new(p, c);
            if candidate.is_irreducible() {
                return candidate;
            }
            // increment with c_{n-1} as the least significant digit
            let mut i = n - 1;
            loop {
                tuple[i] += 1;
                if tuple[i] < p {
                    break;
                }
                tuple[i] = 0;
                i = i
                    .checked_sub(1)
                    .expect("an irreducible polynomial always exists");
            }
        }
    }

    /// Parses `"x^4+x+1"`-style text or a little-endian list `"[1,1,0,0,1]"`.
    ///
    /// The variable may be written `x`, `w` or `ω`; coefficients may carry a
    /// sign, and `2*x^3`, `2x^3` are both accepted.
    pub fn parse(text: &str, p: u64) -> Result<Poly> {
        let t = text.trim();
        if t.starts_with('[') {
            return parse_list(t, p);
        }
        parse_terms(t, p)
    }

    /// Descending text form, e.g. `x^4 + x + 1`.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            parts.push(term(c, i, var));
        }
        parts.join(" + ")
    }

    /// Little-endian list form, e.g. `[1,1,0,0,1]`.
    pub fn to_list(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(","))
    }
}

pub(crate) fn term(c: u64, i: usize, var: &str) -> String {
    match (i, c) {
        (0, c) => c.to_string(),
        (1, 1) => var.to_string(),
        (1, c) => format!("{c}*{var}"),
        (i, 1) => format!("{var}^{i}"),
        (i, c) => format!("{c}*{var}^{i}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

fn parse_list(t: &str, p: u64) -> Result<Poly> {
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {t:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Poly::zero(p));
    }
    let coeffs = inner
        .split(',')
        .map(|s| {
            let v: u64 = s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
            if v >= p {
                return Err(Error::CoefficientOutOfRange { value: v, p });
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(p, coeffs))
}

fn parse_terms(t: &str, p: u64) -> Result<Poly> {
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut negative = false;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            negative ^= chars[i] == '-';
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            i += 1;
        }
        let tok: String = chars[start..i].iter().collect();
        if tok.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {t:?}")));
        }
        let (c, d) = parse_term(&tok, p)?;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, 0);
        }
        let c = if negative { prime::neg(c, p) } else { c };
        coeffs[d] = prime::add(coeffs[d], c, p);
    }
    Ok(Poly::new(p, coeffs))
}

fn parse_term(tok: &str, p: u64) -> Result<(u64, usize)> {
    let bad = || Error::Parse(format!("bad term {tok:?}"));
    let var_pos = tok.find(['x', 'w', 'ω']);
    let Some(vp) = var_pos else {
        let v: u64 = tok.parse().map_err(|_| bad())?;
        return Ok((v % p, 0));
    };
    let coef_part = tok[..vp].trim_end_matches('*');
    let c = if coef_part.is_empty() {
        1
    } else {
        coef_part.parse::<u64>().map_err(|_| bad())? % p
    };
    let var_len = tok[vp..].chars().next().map(char::len_utf8).unwrap_or(1);
    let rest = &tok[vp + var_len..];
    let d = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<usize>()
            .map_err(|_| bad())?
    };
    Ok((c, d))
}
