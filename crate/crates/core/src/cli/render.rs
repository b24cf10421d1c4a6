//! Text rendering of field elements and matrices.
//!
//! Over GF(2^m)/GF(2) elements are written as polynomials in ω, as in hand
//! computations; otherwise as coefficient vectors, constant term first.

use crate::field::{FFElement, FieldCtx};
use crate::linalg::FFMatrix;

pub fn element(ctx: &FieldCtx, a: &FFElement) -> String {
    if ctx.characteristic() == 2 && ctx.subfield_degree() == 1 {
        ctx.format_element(a, "ω")
    } else {
        coeff_list(&ctx.coeffs(a))
    }
}

/// An element of the subfield GF(q): an integer for q = p, otherwise its
/// coordinates over GF(p).
pub fn sub_element(ctx: &FieldCtx, a: &FFElement) -> String {
    match ctx.subfield_coords(a) {
        Ok(c) if c.len() == 1 => c[0].to_string(),
        Ok(c) => coeff_list(&c),
        Err(_) => element(ctx, a),
    }
}

pub fn coeff_list(c: &[u64]) -> String {
    let items: Vec<String> = c.iter().map(u64::to_string).collect();
    format!("[{}]", items.join(","))
}

pub fn matrix(m: &FFMatrix, f: impl Fn(&FieldCtx, &FFElement) -> String) -> String {
    let ctx = m.ctx();
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|r| r.iter().map(|x| f(ctx, x)).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str("  ( ");
        out.push_str(&padded.join(" | "));
        out.push_str(" )\n");
    }
    if m.nrows() == 0 {
        out.push_str("  (empty)\n");
    }
    out
}

/// GF(q) entries as subfield coordinates, for JSON.
pub fn sub_matrix_coords(m: &FFMatrix) -> Vec<Vec<Vec<u64>>> {
    let ctx = m.ctx();
    m.rows()
        .map(|r| {
            r.iter()
                .map(|x| ctx.subfield_coords(x).unwrap_or_else(|_| ctx.coeffs(x)))
                .collect()
        })
        .collect()
}
