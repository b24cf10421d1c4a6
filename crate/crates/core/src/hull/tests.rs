use super::*;
use crate::basis::{self_dual_basis, BasisVec};
use crate::field::{FieldCtx, Poly};

fn worked_code() -> GabidulinCode {
    let ctx = FieldCtx::new(2, 4, Some(Poly::parse("x^4+x+1", 2).unwrap())).unwrap();
    let elems = ["1+w^3", "w+w^3", "w^2+w^3", "w+w^2+w^3"]
        .iter()
        .map(|s| ctx.parse_element(s).unwrap())
        .collect();
    GabidulinCode::new(BasisVec::new(&ctx, elems).unwrap(), 2).unwrap()
}

fn self_dual_code(p: u64, h: usize, m: usize, k: usize) -> GabidulinCode {
    let ctx = FieldCtx::extension(p, h, m, None).unwrap();
    GabidulinCode::new(self_dual_basis(&ctx).unwrap(), k).unwrap()
}

#[test]
fn formula_values() {
    assert_eq!(hull_dim_formula(4, 2, 1), Ok(1));
    assert_eq!(hull_dim_formula(4, 2, 3), Ok(1));
    for m in 2..12 {
        for k in 1..m {
            assert_eq!(hull_dim_formula(m, k, 0), Ok(0));
        }
    }
    assert!(matches!(
        hull_dim_formula(4, 0, 0),
        Err(Error::OutOfRange(_))
    ));
    assert!(matches!(
        hull_dim_formula(4, 4, 0),
        Err(Error::OutOfRange(_))
    ));
    assert!(matches!(
        hull_dim_formula(4, 2, 4),
        Err(Error::OutOfRange(_))
    ));
}

/// The code has rows α^(q^i), i < k, and its dual has rows α^(q^j) for
/// j ∈ {k−e, …, m−e−1} mod m; the Moore rows are independent, so the hull
/// dimension is the number of shared exponents.
#[test]
fn formula_matches_exponent_overlap_count() {
    for m in 2..40usize {
        for k in 1..m {
            for e in 0..m {
                let code_exps: Vec<usize> = (0..k).collect();
                let shared = (k..m)
                    .map(|j| (j + m - e) % m)
                    .filter(|j| code_exps.contains(j))
                    .count();
                assert_eq!(hull_dim_formula(m, k, e), Ok(shared), "m={m} k={k} e={e}");
            }
        }
    }
}

#[test]
fn worked_example_dimensions() {
    let code = worked_code();
    let dims: Vec<usize> = (0..4).map(|e| hull_dim_oracle(&code, e).unwrap()).collect();
    assert_eq!(dims, vec![0, 1, 2, 1]);
    assert_eq!(classify(&code, 0), Ok(Classification::Lcd));
    assert_eq!(classify(&code, 1), Ok(Classification::Generic));
    assert_eq!(classify(&code, 2), Ok(Classification::SelfDual));
    assert_eq!(classify(&code, 3), Ok(Classification::Generic));
}

#[test]
fn worked_example_hull_bases() {
    let code = worked_code();
    assert_eq!(hull_basis(&code, 0).unwrap().nrows(), 0);
    let b2 = hull_basis(&code, 2).unwrap();
    assert_eq!(b2.nrows(), 2);
    assert!(b2.same_row_space(code.generator()).unwrap());
    for e in 0..4 {
        let b = hull_basis(&code, e).unwrap();
        assert_eq!(b.nrows(), hull_dim_oracle(&code, e).unwrap());
        for x in b.rows() {
            for y in code.generator().rows() {
                assert!(galois_ip(code.ctx(), y, x, e).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn worked_example_gg_transpose() {
    let code = worked_code();
    let g = code.generator();
    assert!(g.mul(&g.transpose()).unwrap().is_identity());
    assert!(g.mul(&g.frobenius(2).transpose()).unwrap().is_zero());
    assert_eq!(gg_transpose_tests(&code), Ok((true, true)));
    let k1 = GabidulinCode::new(code.basis().clone(), 1).unwrap();
    assert_eq!(hermitian_self_dual_test(&k1), Ok(false));
    let odd = self_dual_code(2, 1, 3, 1);
    assert_eq!(hermitian_self_dual_test(&odd), Err(Error::OddLength(3)));
    assert_eq!(euclidean_lcd_test(&odd), Ok(true));
}

#[test]
fn gf27_one_dimensional_matches_formula() {
    let code = self_dual_code(3, 1, 3, 1);
    for e in 0..3 {
        assert_eq!(
            hull_dim_oracle(&code, e).unwrap(),
            hull_dim_formula(3, 1, e).unwrap()
        );
    }
}

#[test]
fn gf64_self_orthogonal_range() {
    let code = self_dual_code(2, 1, 6, 2);
    assert_eq!(hull_dim_oracle(&code, 3), Ok(2));
    assert_eq!(classify(&code, 3), Ok(Classification::SelfOrthogonalProper));
    assert_eq!(classify(&code, 4), Ok(Classification::SelfOrthogonalProper));
    assert_eq!(classify(&code, 5), Ok(Classification::Generic));
    let wide = self_dual_code(2, 1, 6, 4);
    assert_eq!(classify(&wide, 2), Ok(Classification::DualContaining));
}

#[test]
fn from_dims_cases() {
    assert_eq!(Classification::from_dims(6, 3, 0), Classification::Lcd);
    assert_eq!(Classification::from_dims(6, 3, 3), Classification::SelfDual);
    assert_eq!(
        Classification::from_dims(6, 2, 2),
        Classification::SelfOrthogonalProper
    );
    assert_eq!(
        Classification::from_dims(6, 4, 2),
        Classification::DualContaining
    );
    assert_eq!(Classification::from_dims(6, 3, 1), Classification::Generic);
    for c in Classification::ALL {
        assert_eq!(c.as_str().parse::<Classification>(), Ok(c));
        assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{c}\""));
    }
}

#[test]
fn reports_serialize_and_flag_applicability() {
    let code = worked_code();
    let r = HullReport::compute(&code, 2, DualConvention::Theorem, true).unwrap();
    assert!(r.agree && r.formula_applicable);
    assert_eq!(r.hull_basis.as_ref().map(Vec::len), Some(2));
    let text = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<HullReport>(&text).unwrap(), r);

    let ctx = code.ctx().clone();
    let power = GabidulinCode::new(BasisVec::power_basis(&ctx), 2).unwrap();
    let r = HullReport::compute(&power, 1, DualConvention::Theorem, false).unwrap();
    assert!(!r.formula_applicable);
    let r = HullReport::compute(&code, 1, DualConvention::Preliminaries, true).unwrap();
    assert!(!r.formula_applicable);
    assert_eq!(r.hull_basis.as_ref().map(Vec::len), Some(r.dim_oracle));
}

#[test]
fn oracle_agrees_with_formula_on_small_self_dual_fields() {
    for (p, h, m) in [
        (2u64, 1usize, 2usize),
        (2, 1, 5),
        (2, 1, 7),
        (2, 2, 4),
        (3, 1, 5),
        (5, 1, 3),
        (7, 1, 3),
    ] {
        for k in 1..m {
            let code = self_dual_code(p, h, m, k);
            for e in 0..m {
                assert_eq!(
                    hull_dim_oracle(&code, e).unwrap(),
                    hull_dim_formula(m, k, e).unwrap(),
                    "({p},{h},{m}) k={k} e={e}"
                );
            }
        }
    }
}
