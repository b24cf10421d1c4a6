//! Word-sized prime field arithmetic.

#[inline]
pub(crate) fn add(a: u64, b: u64, p: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= p {
        s.wrapping_sub(p)
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

#[inline]
pub(crate) fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn mul(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        (a * b) % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub(crate) fn pow(mut base: u64, mut exp: u128, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub(crate) fn inv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &sp in &SMALL {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Splits a prime power `q = p^h` into `(p, h)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut h = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p, h))
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    if is_prime(n) {
        return n;
    }
    let mut f = 3;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return f;
        }
        f += 2;
    }
    n
}

/// Row reduction over GF(p) that also records the accumulated row transform.
///
/// Returns `(reduced, transform, pivots)` with `transform * input = reduced`.
pub(crate) fn rref_with_transform(
    rows: &[Vec<u64>],
    cols: usize,
    p: u64,
) -> (Vec<Vec<u64>>, Vec<Vec<u64>>, Vec<usize>) {
    let r = rows.len();
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let mut t: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..r).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        t.swap(rank, pr);
        let s = inv(a[rank][c], p).expect("pivot is nonzero");
        for x in a[rank].iter_mut().chain(t[rank].iter_mut()) {
            *x = mul(*x, s, p);
        }
        for i in 0..r {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = sub(a[i][j], mul(f, a[rank][j], p), p);
                }
                for j in 0..r {
                    t[i][j] = sub(t[i][j], mul(f, t[rank][j], p), p);
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == r {
            break;
        }
    }
    (a, t, pivots)
}
