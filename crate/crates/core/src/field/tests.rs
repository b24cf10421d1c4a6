use proptest::prelude::*;

use super::*;

fn gf16() -> FieldCtx {
    FieldCtx::new(2, 4, Some(Poly::parse("x^4+x+1", 2).unwrap())).unwrap()
}

fn all_elements(ctx: &FieldCtx) -> Vec<FFElement> {
    let p = ctx.characteristic();
    let n = ctx.degree();
    let total = ctx.order().unwrap() as u64;
    (0..total)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(n);
            for _ in 0..n {
                c.push(idx % p);
                idx /= p;
            }
            ctx.from_coeffs(&c).unwrap()
        })
        .collect()
}

#[test]
fn make_gf16_with_explicit_modulus() {
    let ctx = gf16();
    assert_eq!(ctx.degree(), 4);
    assert_eq!(ctx.order(), Some(16));
    assert_eq!(ctx.modulus().to_text("x"), "x^4 + x + 1");
}

#[test]
fn make_prime_field() {
    let ctx = FieldCtx::new(2, 1, None).unwrap();
    assert_eq!(ctx.modulus().coeffs(), &[0, 1]);
    assert_eq!(all_elements(&ctx).len(), 2);
    assert_eq!(ctx.mul(&ctx.one(), &ctx.one()), ctx.one());
    assert_eq!(ctx.generator(), ctx.zero());
}

#[test]
fn default_quadratic_modulus_over_gf3_is_least_irreducible() {
    // oracle: enumerate all 9 monic quadratics x^2 + c1 x + c0 in the
    // order (c0, c1), keep the first without a root in GF(3)
    let mut expected = None;
    'outer: for c0 in 0..3u64 {
        for c1 in 0..3u64 {
            let has_root = (0..3u64).any(|x| (x * x + c1 * x + c0) % 3 == 0);
            if !has_root {
                expected = Some(vec![c0, c1, 1]);
                break 'outer;
            }
        }
    }
    let ctx = FieldCtx::new(3, 2, None).unwrap();
    assert_eq!(ctx.modulus().coeffs(), expected.unwrap().as_slice());
}

#[test]
fn construction_errors() {
    assert_eq!(FieldCtx::new(4, 2, None).unwrap_err(), Error::NotPrime(4));
    let reducible = Poly::parse("x^4+x^2+1", 2).unwrap();
    assert!(matches!(
        FieldCtx::new(2, 4, Some(reducible)),
        Err(Error::ReducibleModulus(_))
    ));
    let wrong_degree = Poly::parse("x^3+x+1", 2).unwrap();
    assert!(matches!(
        FieldCtx::new(2, 4, Some(wrong_degree)),
        Err(Error::InvalidModulus(_))
    ));
    assert!(matches!(
        FieldCtx::extension(2, 3, 0, None),
        Err(Error::OutOfRange(_))
    ));
    assert!(matches!(
        FieldCtx::new(2, 4, None).unwrap().relative_to(3),
        Err(Error::InvalidSubfield { h: 3, n: 4 })
    ));
}

#[test]
fn default_modulus_is_deterministic() {
    for (p, n) in [(2, 8), (3, 5), (5, 3), (2, 100)] {
        let a = FieldCtx::new(p, n, None).unwrap();
        let b = FieldCtx::new(p, n, None).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert!(a.modulus().is_irreducible());
    }
}

#[test]
fn omega_cubed_times_omega() {
    let ctx = gf16();
    let w = ctx.generator();
    let w3 = ctx.pow(&w, 3);
    assert_eq!(ctx.mul(&w3, &w), ctx.add(&w, &ctx.one()));
}

#[test]
fn inverse_of_omega_is_omega_14() {
    let ctx = gf16();
    let w = ctx.generator();
    let w14 = ctx.pow(&w, 14);
    assert_eq!(ctx.inv(&w).unwrap(), w14);
    // exhaustive: w14 is the only element whose product with w is 1
    let hits: Vec<_> = all_elements(&ctx)
        .into_iter()
        .filter(|x| ctx.mul(&w, x) == ctx.one())
        .collect();
    assert_eq!(hits, vec![w14]);
}

#[test]
fn inverse_of_zero_fails() {
    let ctx = gf16();
    assert_eq!(ctx.inv(&ctx.zero()), Err(Error::DivisionByZero));
}

#[test]
fn mixed_fields_are_rejected() {
    let a = gf16();
    let b = FieldCtx::new(3, 2, None).unwrap();
    assert_eq!(a.try_add(&a.one(), &b.one()), Err(Error::FieldMismatch));
    assert_eq!(a.try_mul(&b.one(), &a.one()), Err(Error::FieldMismatch));
    assert_eq!(a.inv(&b.one()), Err(Error::FieldMismatch));
    assert_ne!(a.one(), b.one());
}

#[test]
fn additive_inverse_exhaustive() {
    for ctx in [
        gf16(),
        FieldCtx::new(3, 3, None).unwrap(),
        FieldCtx::new(7, 2, None).unwrap(),
    ] {
        for a in all_elements(&ctx) {
            assert!(ctx.add(&a, &ctx.neg(&a)).is_zero());
            assert_eq!(ctx.sub(&a, &a), ctx.zero());
        }
    }
}

#[test]
fn frobenius_order_is_m() {
    let ctx = FieldCtx::extension(2, 2, 3, None).unwrap();
    for a in all_elements(&ctx) {
        assert_eq!(ctx.frob(&a, ctx.m()), a);
        assert_eq!(ctx.frob(&a, 0), a);
    }
}

#[test]
fn frob_squares_in_gf16() {
    let ctx = gf16();
    let w = ctx.generator();
    assert_eq!(ctx.frob(&w, 2), ctx.add(&w, &ctx.one()));
}

#[test]
fn frob_matches_exponentiation_in_gf9() {
    let ctx = FieldCtx::new(3, 2, None).unwrap();
    for g in all_elements(&ctx) {
        assert_eq!(ctx.frob(&g, 1), ctx.pow(&g, 3));
    }
}

#[test]
fn frobenius_map_matches_repeated_frob() {
    let ctx = FieldCtx::extension(3, 1, 5, None).unwrap();
    for e in 0..7 {
        let map = ctx.frobenius_map(e);
        for a in all_elements(&ctx).into_iter().step_by(7) {
            assert_eq!(map.apply(&a), ctx.frob(&a, e));
        }
    }
}

#[test]
fn traces_in_gf16() {
    let ctx = gf16();
    let w = ctx.generator();
    assert_eq!(ctx.trace(&ctx.pow(&w, 3)).unwrap(), ctx.one());
    assert_eq!(ctx.trace(&w).unwrap(), ctx.zero());
    assert_eq!(ctx.trace(&ctx.zero()).unwrap(), ctx.zero());
    assert_eq!(ctx.trace(&ctx.one()).unwrap(), ctx.from_u64(4));
    let ctx3 = FieldCtx::new(3, 5, None).unwrap();
    assert_eq!(ctx3.trace(&ctx3.one()).unwrap(), ctx3.from_u64(5));
}

#[test]
fn linear_trace_agrees_with_direct_trace() {
    for ctx in [
        gf16(),
        FieldCtx::extension(2, 2, 2, None).unwrap(),
        FieldCtx::extension(3, 2, 3, None).unwrap(),
        FieldCtx::new(5, 3, None).unwrap(),
    ] {
        for a in all_elements(&ctx).into_iter().take(800) {
            assert_eq!(ctx.trace_linear(&a), ctx.trace(&a).unwrap());
        }
    }
}

#[test]
fn trace_is_subfield_linear() {
    let ctx = FieldCtx::extension(2, 2, 3, None).unwrap();
    let sub: Vec<_> = ctx.subfield_elements().collect();
    assert_eq!(sub.len(), 4);
    let elems = all_elements(&ctx);
    for c in &sub {
        for a in elems.iter().step_by(5) {
            for b in elems.iter().step_by(11) {
                let lhs = ctx.trace(&ctx.add(&ctx.mul(c, a), b)).unwrap();
                let rhs = ctx.add(&ctx.mul(c, &ctx.trace(a).unwrap()), &ctx.trace(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn frobenius_additivity_exhaustive_small_fields() {
    for ctx in [
        FieldCtx::new(2, 8, None).unwrap(),
        FieldCtx::extension(2, 2, 4, None).unwrap(),
        FieldCtx::new(3, 5, None).unwrap(),
        FieldCtx::new(5, 3, None).unwrap(),
    ] {
        let elems = all_elements(&ctx);
        assert!(elems.len() <= 256);
        let frobs: Vec<_> = elems.iter().map(|a| ctx.frob(a, 1)).collect();
        for (a, fa) in elems.iter().zip(&frobs) {
            for (b, fb) in elems.iter().zip(&frobs) {
                assert_eq!(ctx.frob(&ctx.add(a, b), 1), ctx.add(fa, fb));
            }
        }
    }
}

#[test]
fn fermat_exhaustive_up_to_2_16() {
    for ctx in [
        FieldCtx::new(2, 16, None).unwrap(),
        FieldCtx::new(3, 10, None).unwrap(),
        FieldCtx::new(251, 2, None).unwrap(),
    ] {
        let order = ctx.order().unwrap();
        assert!(order <= 1 << 16);
        for a in all_elements(&ctx).into_iter().filter(|a| !a.is_zero()) {
            assert_eq!(ctx.pow(&a, order - 1), ctx.one());
        }
    }
}

#[test]
fn subfield_coordinates_round_trip() {
    let ctx = FieldCtx::extension(3, 2, 3, None).unwrap();
    let sub: Vec<_> = ctx.subfield_elements().collect();
    assert_eq!(sub.len(), 9);
    for (i, s) in sub.iter().enumerate() {
        assert!(ctx.in_subfield(s));
        let c = ctx.subfield_coords(s).unwrap();
        assert_eq!(c, vec![(i % 3) as u64, (i / 3) as u64]);
        assert_eq!(ctx.from_subfield_coords(&c).unwrap(), *s);
    }
    let outside = ctx.generator();
    assert!(!ctx.in_subfield(&outside));
    assert!(matches!(
        ctx.subfield_coords(&outside),
        Err(Error::NotInSubfield(9))
    ));
}

#[test]
fn subfield_square_roots() {
    // q = 3, 7 take the (q+1)/4 path; q = 5, 9, 13, 25 use Tonelli-Shanks
    for (p, h, m) in [
        (3, 1, 3),
        (7, 1, 3),
        (5, 1, 3),
        (3, 2, 3),
        (13, 1, 3),
        (5, 2, 1),
    ] {
        let ctx = FieldCtx::extension(p, h, m, None).unwrap();
        let sub: Vec<_> = ctx.subfield_elements().collect();
        let squares: std::collections::HashSet<_> = sub.iter().map(|a| ctx.square(a)).collect();
        for a in &sub {
            match ctx.sqrt_in_subfield(a) {
                Some(r) => {
                    assert_eq!(ctx.square(&r), *a);
                    assert!(ctx.in_subfield(&r));
                }
                None => assert!(!squares.contains(a)),
            }
            assert_eq!(ctx.is_square_in_subfield(a), squares.contains(a));
        }
    }
    let ctx = FieldCtx::extension(2, 3, 2, None).unwrap();
    for a in ctx.subfield_elements() {
        let r = ctx.sqrt_in_subfield(&a).unwrap();
        assert_eq!(ctx.square(&r), a);
        assert!(ctx.in_subfield(&r));
    }
}

#[test]
fn parse_and_format_elements() {
    let ctx = gf16();
    let a = ctx.parse_element("1+w^3").unwrap();
    assert_eq!(a, ctx.from_coeffs(&[1, 0, 0, 1]).unwrap());
    assert_eq!(ctx.format_element(&a, "ω"), "1 + ω^3");
    assert_eq!(
        ctx.parse_element("x^4").unwrap(),
        ctx.parse_element("x+1").unwrap()
    );
    assert_eq!(ctx.parse_element("[0,1]").unwrap(), ctx.generator());
    assert_eq!(ctx.format_element(&ctx.zero(), "x"), "0");
}

fn coeff_strategy(p: u64, n: usize) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0..p, n)
}

proptest! {
    #[test]
    fn ring_axioms_gf2_100(a in coeff_strategy(2, 100), b in coeff_strategy(2, 100), c in coeff_strategy(2, 100)) {
        let ctx = big_binary();
        let (a, b, c) = (ctx.from_coeffs(&a).unwrap(), ctx.from_coeffs(&b).unwrap(), ctx.from_coeffs(&c).unwrap());
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
        prop_assert_eq!(ctx.mul(&a, &ctx.add(&b, &c)), ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c)));
        prop_assert_eq!(ctx.frob(&ctx.add(&a, &b), 1), ctx.add(&ctx.frob(&a, 1), &ctx.frob(&b, 1)));
        prop_assert_eq!(ctx.frob(&a, 1), ctx.square(&a));
        prop_assert_eq!(ctx.trace_linear(&a), ctx.trace(&a).unwrap());
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
        }
    }

    #[test]
    fn ring_axioms_gf3_15(a in coeff_strategy(3, 15), b in coeff_strategy(3, 15), c in coeff_strategy(3, 15)) {
        let ctx = FieldCtx::new(3, 15, None).unwrap();
        let (a, b, c) = (ctx.from_coeffs(&a).unwrap(), ctx.from_coeffs(&b).unwrap(), ctx.from_coeffs(&c).unwrap());
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
        prop_assert_eq!(ctx.mul(&a, &ctx.add(&b, &c)), ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c)));
        prop_assert_eq!(ctx.frob(&a, 1), ctx.pow(&a, 3));
        prop_assert_eq!(ctx.pow(&a, 14_348_907), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
        }
    }
}

fn big_binary() -> FieldCtx {
    use std::sync::OnceLock;
    static CTX: OnceLock<FieldCtx> = OnceLock::new();
    CTX.get_or_init(|| FieldCtx::new(2, 100, None).unwrap())
        .clone()
}

#[test]
fn carryless_product_paths_agree() {
    let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..2000 {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        let y = x.rotate_left(29) ^ 0x5555;
        let mut naive = 0u128;
        for i in 0..64 {
            if x >> i & 1 == 1 {
                naive ^= (y as u128) << i;
            }
        }
        assert_eq!(super::clmul(x, y), naive);
        assert_eq!(super::clmul_portable(x, y), naive);
    }
}
