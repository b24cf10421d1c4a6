use std::fmt::Write as _;

use serde::Serialize;

use super::render::{self, coeff_list, element, sub_element};
use super::{CliError, DualGenArgs, FieldArgs, HullArgs, Outcome, SweepArgs, TableArgs};
use crate::basis::{self_dual_basis, self_dual_basis_from, BasisVec};
use crate::eaqecc::{table_generate, EaqeccRow, TableSpec, TABLE1};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Poly};
use crate::gabidulin::{DualConvention, GabidulinCode};
use crate::hull::{euclidean_lcd_test, hermitian_self_dual_test, Classification, HullReport};
use crate::report::{to_csv_string, to_json_string, HullCsvRow};
use crate::sweep::{hermitian_self_dual_witness, run_sweep, HermitianWitness, SweepConfig};

/// Parses `3`, `0..3`, `0..=3` (both inclusive) and comma-separated
/// combinations, checking every value against `lo..=hi`.
pub(crate) fn parse_list(text: &str, lo: usize, hi: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("'{s}' is not a non-negative integer")))
        };
        let (a, b) = match part.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(part)?;
                (v, v)
            }
        };
        if a > b {
            return Err(Error::OutOfRange(format!("empty range {part}")));
        }
        if a < lo || b > hi {
            return Err(Error::OutOfRange(format!("{part} is outside {lo}..={hi}")));
        }
        out.extend(a..=b);
    }
    if out.is_empty() {
        return Err(Error::OutOfRange(format!("no values in '{text}'")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn build_field(args: &FieldArgs) -> Result<FieldCtx> {
    let modulus = args
        .modulus
        .as_deref()
        .map(|text| Poly::parse(text, args.p))
        .transpose()?;
    FieldCtx::extension(args.p, args.h, args.m, modulus)
}

fn parse_basis(ctx: &FieldCtx, text: &str) -> Result<BasisVec> {
    let text = text.trim();
    let elems = if text.starts_with('[') {
        let lists: Vec<Vec<u64>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("basis: {e}")))?;
        lists
            .iter()
            .map(|c| ctx.from_coeffs(c))
            .collect::<Result<Vec<_>>>()?
    } else {
        text.split(';')
            .map(|s| ctx.parse_element(s.trim()))
            .collect::<Result<Vec<_>>>()?
    };
    BasisVec::new(ctx, elems)
}

fn code_basis(args: &FieldArgs, ctx: &FieldCtx) -> Result<BasisVec> {
    match &args.basis {
        Some(text) => parse_basis(ctx, text),
        None => self_dual_basis(ctx),
    }
}

#[derive(Serialize)]
struct FieldJson {
    p: u64,
    h: usize,
    m: usize,
    modulus: Vec<u64>,
    modulus_text: String,
}

fn field_json(ctx: &FieldCtx) -> FieldJson {
    FieldJson {
        p: ctx.characteristic(),
        h: ctx.subfield_degree(),
        m: ctx.m(),
        modulus: ctx.modulus().coeffs().to_vec(),
        modulus_text: ctx.modulus().to_text("x"),
    }
}

fn field_line(ctx: &FieldCtx) -> String {
    let (p, h, m) = (ctx.characteristic(), ctx.subfield_degree(), ctx.m());
    let base = if h == 1 {
        format!("GF({p})")
    } else {
        format!("GF({p}^{h})")
    };
    format!(
        "field: GF({p}^{}) over {base}, m = {m}, modulus {}\n",
        h * m,
        ctx.modulus().to_text("x")
    )
}

// ---- selfdual-basis -------------------------------------------------------

#[derive(Serialize)]
struct TraceCheck {
    i: usize,
    j: usize,
    trace: Vec<u64>,
    expected: bool,
}

#[derive(Serialize)]
struct SelfDualJson {
    field: FieldJson,
    start_basis: Vec<Vec<u64>>,
    gram: Vec<Vec<Vec<u64>>>,
    transform: Vec<Vec<Vec<u64>>>,
    basis: Vec<Vec<u64>>,
    trace_checks: Vec<TraceCheck>,
    gram_is_identity: bool,
}

#[derive(Serialize)]
struct BasisCsvRow {
    i: usize,
    coefficients: String,
    element: String,
}

pub(crate) fn selfdual_basis(args: &FieldArgs) -> Result<Outcome, CliError> {
    let ctx = build_field(args)?;
    let start = match &args.basis {
        Some(text) => parse_basis(&ctx, text)?,
        None => BasisVec::power_basis(&ctx),
    };
    let c = self_dual_basis_from(&start)?;
    let m = ctx.m();
    // Tr(αᵢαⱼ) through the direct trace, independent of the Gram route
    let mut checks = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let t = ctx.trace(&ctx.mul(&c.basis.elems()[i], &c.basis.elems()[j]))?;
            let expected = t == if i == j { ctx.one() } else { ctx.zero() };
            checks.push((i, j, t, expected));
        }
    }
    let all_ok = checks.iter().all(|c| c.3);
    let identity = c.basis.is_self_dual();

    let mut text = field_line(&ctx);
    let _ = writeln!(text, "starting basis:");
    for (i, b) in start.elems().iter().enumerate() {
        let _ = writeln!(text, "  b{} = {}", i + 1, element(&ctx, b));
    }
    let _ = writeln!(text, "Gram matrix M = (Tr(b_i b_j)):");
    text.push_str(&render::matrix(&c.gram, sub_element));
    let _ = writeln!(text, "transform E with E M E^T = I:");
    text.push_str(&render::matrix(&c.transform, sub_element));
    let _ = writeln!(text, "self-dual basis a = E b:");
    for (i, a) in c.basis.elems().iter().enumerate() {
        let _ = writeln!(text, "  a{} = {}", i + 1, element(&ctx, a));
    }
    let _ = writeln!(text, "trace checks:");
    for (i, j, t, ok) in &checks {
        let _ = writeln!(
            text,
            "  Tr(a{} a{}) = {}{}",
            i + 1,
            j + 1,
            sub_element(&ctx, t),
            if *ok { "" } else { "  MISMATCH" }
        );
    }
    let _ = writeln!(
        text,
        "Gram(a) = I_{m}: {}",
        if identity && all_ok { "yes" } else { "no" }
    );

    let json = SelfDualJson {
        field: field_json(&ctx),
        start_basis: start.elems().iter().map(|a| ctx.coeffs(a)).collect(),
        gram: render::sub_matrix_coords(&c.gram),
        transform: render::sub_matrix_coords(&c.transform),
        basis: c.basis.elems().iter().map(|a| ctx.coeffs(a)).collect(),
        trace_checks: checks
            .iter()
            .map(|(i, j, t, ok)| TraceCheck {
                i: *i,
                j: *j,
                trace: ctx.subfield_coords(t).unwrap_or_else(|_| ctx.coeffs(t)),
                expected: *ok,
            })
            .collect(),
        gram_is_identity: identity,
    };
    let rows: Vec<BasisCsvRow> = c
        .basis
        .elems()
        .iter()
        .enumerate()
        .map(|(i, a)| BasisCsvRow {
            i: i + 1,
            coefficients: coeff_list(&ctx.coeffs(a)),
            element: element(&ctx, a),
        })
        .collect();
    Ok(Outcome {
        text,
        json: to_json_string(&json)? + "\n",
        csv: Some(to_csv_string(&rows)?),
        note: None,
        verified: identity && all_ok,
    })
}

// ---- hull / classify ------------------------------------------------------

fn ranges(args: &HullArgs) -> Result<(Vec<usize>, Vec<usize>)> {
    let m = args.field.m;
    if m < 2 {
        return Err(Error::OutOfRange(format!("m = {m}: codes need m >= 2")));
    }
    let ks = match &args.k {
        Some(t) => parse_list(t, 1, m - 1)?,
        None => (1..m).collect(),
    };
    let es = match &args.e {
        Some(t) => parse_list(t, 0, m - 1)?,
        None => (0..m).collect(),
    };
    Ok((ks, es))
}

pub(crate) fn hull(args: &HullArgs) -> Result<Outcome, CliError> {
    let ctx = build_field(&args.field)?;
    let basis = code_basis(&args.field, &ctx)?;
    let (ks, es) = ranges(args)?;
    let mut reports = Vec::new();
    for &k in &ks {
        let code = GabidulinCode::new(basis.clone(), k)?;
        for &e in &es {
            reports.push(HullReport::compute(
                &code,
                e,
                args.dual_convention,
                args.with_basis,
            )?);
        }
    }
    let verified = reports.iter().all(|r| r.agree || !r.formula_applicable);

    let mut text = field_line(&ctx);
    let _ = writeln!(
        text,
        "basis self-dual: {}; dual convention: {}",
        if basis.is_self_dual() {
            "yes"
        } else {
            "no (formula not claimed)"
        },
        args.dual_convention
    );
    for r in &reports {
        let _ = writeln!(
            text,
            "k={} e={}  formula={}  oracle={}  {}  {}",
            r.k,
            r.e,
            r.dim_formula,
            r.dim_oracle,
            if r.agree { "agree" } else { "DIFFER" },
            r.classification
        );
        if let Some(rows) = &r.hull_basis {
            for row in rows {
                let elems: Vec<String> = row
                    .iter()
                    .map(|c| {
                        ctx.from_coeffs(c)
                            .map(|a| element(&ctx, &a))
                            .unwrap_or_default()
                    })
                    .collect();
                let _ = writeln!(text, "    ( {} )", elems.join(" | "));
            }
        }
    }
    let csv_rows: Vec<HullCsvRow> = reports.iter().map(HullCsvRow::from).collect();
    Ok(Outcome {
        text,
        json: to_json_string(&reports)? + "\n",
        csv: Some(to_csv_string(&csv_rows)?),
        note: None,
        verified,
    })
}

#[derive(Serialize)]
struct ClassifyRow {
    p: u64,
    h: usize,
    m: usize,
    k: usize,
    e: usize,
    dim_oracle: usize,
    classification: Classification,
    euclidean_lcd: bool,
    hermitian_self_dual: Option<bool>,
    consistent: bool,
}

pub(crate) fn classify(args: &HullArgs) -> Result<Outcome, CliError> {
    let ctx = build_field(&args.field)?;
    let basis = code_basis(&args.field, &ctx)?;
    let (ks, es) = ranges(args)?;
    let m = ctx.m();
    let mut rows = Vec::new();
    for &k in &ks {
        let code = GabidulinCode::new(basis.clone(), k)?;
        let lcd = euclidean_lcd_test(&code)?;
        let herm = match hermitian_self_dual_test(&code) {
            Ok(b) => Some(b),
            Err(Error::OddLength(_)) => None,
            Err(e) => return Err(e.into()),
        };
        for &e in &es {
            let r = HullReport::compute(&code, e, args.dual_convention, false)?;
            let c = r.classification;
            // the G·Gᵀ criteria must agree with the rank oracle
            let mut consistent = true;
            if e == 0 && args.dual_convention == DualConvention::Theorem {
                consistent &= (c == Classification::Lcd) == lcd;
            }
            if let Some(hsd) = herm.filter(|_| 2 * e == m) {
                consistent &= (c == Classification::SelfDual) == hsd;
            }
            rows.push(ClassifyRow {
                p: r.p,
                h: r.h,
                m,
                k,
                e,
                dim_oracle: r.dim_oracle,
                classification: c,
                euclidean_lcd: lcd,
                hermitian_self_dual: herm,
                consistent,
            });
        }
    }
    let mut text = field_line(&ctx);
    for r in &rows {
        let herm = match r.hermitian_self_dual {
            Some(b) => b.to_string(),
            None => "n/a".into(),
        };
        let _ = writeln!(
            text,
            "k={} e={}  hull={}  {}  (GG^T nonsingular: {}, Hermitian self-dual: {}){}",
            r.k,
            r.e,
            r.dim_oracle,
            r.classification,
            r.euclidean_lcd,
            herm,
            if r.consistent { "" } else { "  INCONSISTENT" }
        );
    }
    Ok(Outcome {
        text,
        json: to_json_string(&rows)? + "\n",
        csv: Some(to_csv_string(&rows)?),
        note: None,
        verified: rows.iter().all(|r| r.consistent),
    })
}

// ---- dual-gen -------------------------------------------------------------

#[derive(Serialize)]
struct DualGenJson {
    field: FieldJson,
    k: usize,
    e: usize,
    convention: DualConvention,
    generator: Vec<Vec<Vec<u64>>>,
    dual_generator: Vec<Vec<Vec<u64>>>,
    kernel_route_basis: Vec<Vec<Vec<u64>>>,
    row_spaces_equal: bool,
}

#[derive(Serialize)]
struct MatrixCsvRow {
    matrix: &'static str,
    row: usize,
    col: usize,
    value: String,
}

pub(crate) fn dual_gen(args: &DualGenArgs) -> Result<Outcome, CliError> {
    let ctx = build_field(&args.field)?;
    let basis = code_basis(&args.field, &ctx)?;
    let m = ctx.m();
    if args.e >= m {
        return Err(Error::OutOfRange(format!("e = {} outside 0..={}", args.e, m - 1)).into());
    }
    let code = GabidulinCode::new(basis, args.k)?;
    let d = code.galois_dual_gen_with(args.e, args.dual_convention)?;
    let o = code.galois_dual_oracle_with(args.e, args.dual_convention)?;
    let equal = d.same_row_space(&o)?;

    let mut text = field_line(&ctx);
    let _ = writeln!(text, "generator G (k = {}):", args.k);
    text.push_str(&render::matrix(code.generator(), element));
    let _ = writeln!(
        text,
        "generator of the {}-Galois dual ({} convention):",
        args.e, args.dual_convention
    );
    text.push_str(&render::matrix(&d, element));
    let _ = writeln!(
        text,
        "matches the kernel route: {}",
        if equal { "yes" } else { "no" }
    );

    let mut csv_rows = Vec::new();
    for (name, mat) in [("generator", code.generator()), ("dual_generator", &d)] {
        for (i, row) in mat.rows().enumerate() {
            for (j, x) in row.iter().enumerate() {
                csv_rows.push(MatrixCsvRow {
                    matrix: name,
                    row: i,
                    col: j,
                    value: element(&ctx, x),
                });
            }
        }
    }
    let json = DualGenJson {
        field: field_json(&ctx),
        k: args.k,
        e: args.e,
        convention: args.dual_convention,
        generator: code.generator().to_coeff_arrays(),
        dual_generator: d.to_coeff_arrays(),
        kernel_route_basis: o.to_coeff_arrays(),
        row_spaces_equal: equal,
    };
    Ok(Outcome {
        text,
        json: to_json_string(&json)? + "\n",
        csv: Some(to_csv_string(&csv_rows)?),
        note: None,
        verified: equal,
    })
}

// ---- verify-sweep ---------------------------------------------------------

#[derive(Serialize)]
struct SweepJson<'a> {
    config: &'a SweepConfig,
    summary: &'a crate::sweep::SweepSummary,
    hermitian_witnesses: &'a [HermitianWitness],
    codes: &'a [crate::sweep::CodeCheck],
    reports: &'a [HullReport],
}

pub(crate) fn verify_sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    let mut config = SweepConfig {
        max_field_order: args.max_field_order,
        max_minors: args.max_minors,
        check_mds: !args.no_mds,
        ..SweepConfig::default()
    };
    if let Some(q) = &args.q {
        let qs = parse_list(q, 2, usize::MAX)?;
        config.q = Some(qs.into_iter().map(|q| q as u64).collect());
    }
    if let Some(m) = &args.m {
        let ms = parse_list(m, 2, usize::MAX)?;
        config.m_min = ms[0];
        config.m_max = ms.last().copied();
    }
    let result = run_sweep(&config)?;
    let witnesses = [2, 4, 6]
        .into_iter()
        .map(|m| hermitian_self_dual_witness(2, 1, m))
        .collect::<Result<Vec<_>>>()?;
    let s = &result.summary;
    let passed = s.passed() && witnesses.iter().all(HermitianWitness::verified);

    let mut text = String::new();
    let _ = writeln!(text, "fields: {}", s.fields);
    let _ = writeln!(text, "instances (field, k, e): {}", s.instances);
    let _ = writeln!(text, "formula/oracle disagreements: {}", s.disagreements);
    let counts: Vec<String> = s
        .classification_counts
        .iter()
        .map(|(c, n)| format!("{c} {n}"))
        .collect();
    let _ = writeln!(text, "classifications: {}", counts.join(", "));
    let _ = writeln!(
        text,
        "corollary violations: {}",
        s.corollary_violations.len()
    );
    for v in &s.corollary_violations {
        let _ = writeln!(text, "  {v}");
    }
    let _ = writeln!(
        text,
        "MDS: {} verified, {} failed, {} not verified (budget {} minors)",
        s.mds_verified, s.mds_failed, s.mds_not_verified, config.max_minors
    );
    let _ = writeln!(
        text,
        "Euclidean self-dual codes over even q: {}",
        s.euclidean_self_dual_even_q
    );
    let ws: Vec<String> = witnesses
        .iter()
        .map(|w| format!("m={} {}", w.m, if w.verified() { "ok" } else { "FAILED" }))
        .collect();
    let _ = writeln!(
        text,
        "Hermitian self-dual codes over GF(2^m), k = e = m/2: {}",
        ws.join(", ")
    );
    let _ = writeln!(text, "result: {}", if passed { "PASS" } else { "FAIL" });

    let json = SweepJson {
        config: &config,
        summary: s,
        hermitian_witnesses: &witnesses,
        codes: &result.codes,
        reports: &result.reports,
    };
    let csv_rows: Vec<HullCsvRow> = result.reports.iter().map(HullCsvRow::from).collect();
    Ok(Outcome {
        note: Some(text.clone()),
        text,
        json: to_json_string(&json)? + "\n",
        csv: Some(to_csv_string(&csv_rows)?),
        verified: passed,
    })
}

// ---- eaqecc-table ---------------------------------------------------------

fn parse_row_spec(text: &str) -> Result<Vec<TableSpec>> {
    let parts: Vec<&str> = text.splitn(4, ',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "row '{text}': expected q,m,e,k-range"
        )));
    }
    let int = |s: &str| {
        s.parse::<u64>()
            .map_err(|_| Error::Parse(format!("row '{text}': '{s}' is not an integer")))
    };
    let (q, m, e) = (
        int(parts[0])?,
        int(parts[1])? as usize,
        int(parts[2])? as usize,
    );
    let ks = parse_list(parts[3], 1, m.saturating_sub(1))?;
    Ok(ks
        .into_iter()
        .map(|k| TableSpec {
            q,
            m,
            e,
            k_min: k,
            k_max: k,
        })
        .collect())
}

pub(crate) fn eaqecc_table(args: &TableArgs) -> Result<Outcome, CliError> {
    let mut specs: Vec<TableSpec> = Vec::new();
    if args.paper_table1 {
        specs.extend(TABLE1);
    }
    for r in &args.row {
        specs.extend(parse_row_spec(r)?);
    }
    match (args.q, args.m, args.e, &args.k) {
        (Some(q), Some(m), Some(e), Some(k)) => {
            specs.extend(parse_row_spec(&format!("{q},{m},{e},{k}"))?);
        }
        (None, None, None, None) => {}
        _ => {
            return Err(CliError::Usage(
                "a single instance needs all of --q, --m, --e and --k".into(),
            ))
        }
    }
    if specs.is_empty() {
        return Err(CliError::Usage(
            "nothing to tabulate: give --paper-table1, --row or --q/--m/--e/--k".into(),
        ));
    }
    let rows = table_generate(&specs)?;
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(text, "{}", row_text(r));
    }
    Ok(Outcome {
        text,
        json: to_json_string(&rows)? + "\n",
        csv: Some(to_csv_string(&rows)?),
        note: None,
        verified: rows.iter().all(|r| r.singleton_equality),
    })
}

fn row_text(r: &EaqeccRow) -> String {
    let q = if r.h == 1 {
        r.p.to_string()
    } else {
        format!("{}^{}", r.p, r.h)
    };
    format!(
        "q={q} m={} e={} k={}  hull={}  [[{}, {}, {}; {}]]_{{{q}^{}}}  threshold={} exceeds={}  singleton-equality={}  regime-validated={}",
        r.m,
        r.e,
        r.k,
        r.hull_dim,
        r.n,
        r.k_q,
        r.d,
        r.c,
        r.m,
        r.grs_threshold,
        r.exceeds_grs_threshold,
        r.singleton_equality,
        r.regime_validated
    )
}
