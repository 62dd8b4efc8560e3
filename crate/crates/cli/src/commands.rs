//! Subcommand implementations. Each returns the text to print or a [`CliError`].

use std::fmt;

use grassqh::degree_zero::{
    classify as classify_verdict, closed_form_charpoly, closed_form_matrix, degree_zero_element, laurent_shift,
    laurent_substitute, laurent_target, mult_matrix, orbit_decomposition, AVariant,
};
use grassqh::diagram::{graded_basis, GrContext};
use grassqh::exactfield::{char_poly, Field, FieldCtx, Rationals, SquareMatrix};
use grassqh::gelfand_cetlin::{find_critical_point, gc_map, quaternionic_frame, random_frame, GcValues};
use grassqh::presentation::{EvContext, IdealReport};
use grassqh::qh::QhElement;
use grassqh::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

/// A failed invocation: bad input (exit 1) or a computation that could not finish (exit 2).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(e) => write!(f, "computation error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

pub type CliResult = Result<String, CliError>;

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn parse_ctx(k: u32, n: u32) -> Result<GrContext, CliError> {
    GrContext::new(k, n).map_err(usage)
}

pub fn parse_field(s: &str) -> Result<FieldCtx, CliError> {
    s.parse().map_err(usage)
}

fn to_json(v: &impl Serialize) -> CliResult {
    serde_json::to_string_pretty(v).map_err(|e| CliError::Usage(e.to_string()))
}

fn element_output<F: Field>(e: &QhElement<F>, json: bool) -> CliResult {
    if json {
        let terms: Vec<_> = e
            .terms()
            .iter()
            .map(|(m, c)| json!({"q": m.q, "diagram": m.diagram.to_string(), "coefficient": e.field().format(c)}))
            .collect();
        to_json(&json!({"result": e.to_string(), "terms": terms}))
    } else {
        Ok(e.to_string())
    }
}

fn product_in<F: Field>(ctx: &GrContext, f: &F, a: &str, b: &str, json: bool) -> CliResult {
    let a = QhElement::parse(ctx, f, a).map_err(usage)?;
    let b = QhElement::parse(ctx, f, b).map_err(usage)?;
    element_output(&a.product(&b)?, json)
}

/// `product k n FIELD A B`.
pub fn product(k: u32, n: u32, field: &str, a: &str, b: &str, json: bool) -> CliResult {
    let ctx = parse_ctx(k, n)?;
    match parse_field(field)? {
        FieldCtx::Rationals(q) => product_in(&ctx, &q, a, b, json),
        FieldCtx::Finite(f) => product_in(&ctx, &f, a, b, json),
    }
}

fn pieri_in<F: Field>(ctx: &GrContext, f: &F, j: u32, elem: &str, row: bool, json: bool) -> CliResult {
    let e = QhElement::parse(ctx, f, elem).map_err(usage)?;
    let limit = if row { ctx.cols() } else { ctx.k() };
    if j == 0 || j > limit {
        return Err(CliError::Usage(format!("j must lie in 1..={limit}")));
    }
    let out = if row { e.transposed_pieri_multiply(j)? } else { e.pieri_multiply(j)? };
    element_output(&out, json)
}

/// `pieri k n FIELD j ELEM`: x_j ∗ ELEM, or the single-row class with `--row`.
pub fn pieri(k: u32, n: u32, field: &str, j: u32, elem: &str, row: bool, json: bool) -> CliResult {
    let ctx = parse_ctx(k, n)?;
    match parse_field(field)? {
        FieldCtx::Rationals(q) => pieri_in(&ctx, &q, j, elem, row, json),
        FieldCtx::Finite(f) => pieri_in(&ctx, &f, j, elem, row, json),
    }
}

fn map_matrix<F: Field>(f: &F, m: &SquareMatrix<<Rationals as Field>::Elem>) -> Result<SquareMatrix<F::Elem>, CliError> {
    let entries = m
        .entries()
        .iter()
        .map(|c| f.from_rational(c).ok_or_else(|| CliError::Usage("denominator vanishes in field".into())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SquareMatrix::new(m.size(), entries)?)
}

fn matrix_in<F: Field>(n: u32, f: &F, variant: AVariant, json: bool) -> CliResult {
    let q = Rationals;
    let a = degree_zero_element(n, f, variant)?;
    let ctx = *a.ctx();
    let m = mult_matrix(&a, n as i64 - 2)?;
    let pi = char_poly(f, &m);
    let closed = closed_form_charpoly(n)?;
    let closed_in_f = closed
        .map_coeffs(f, |c| f.from_rational(c))
        .ok_or_else(|| CliError::Usage("denominator vanishes in field".into()))?;
    let laurent_holds = laurent_substitute(&closed, laurent_shift(n))? == laurent_target(n)?;
    let (matrix_matches, charpoly_matches) = match variant {
        AVariant::Primary => (m == map_matrix(f, &closed_form_matrix(n)?)?, pi == closed_in_f),
        AVariant::Shifted => {
            // the shifted element acts by I − M
            let expected = closed_form_matrix(n)?;
            let shifted = SquareMatrix::identity(&q, expected.size()).add(&expected.scale(&q.from_i64(-1), &q), &q);
            let cp = char_poly(&q, &shifted).map_coeffs(f, |c| f.from_rational(c));
            (m == map_matrix(f, &shifted)?, cp.as_ref() == Some(&pi))
        }
    };
    let basis: Vec<String> = graded_basis(&ctx, n as i64 - 2).iter().map(|b| format!("σ[{}]", b.diagram)).collect();
    let rows = m.format(f);
    let pi_text = pi.format_var(f, "y");
    if json {
        return to_json(&json!({
            "n": n,
            "field": field_name(f),
            "variant": format!("{variant:?}"),
            "basis": basis,
            "matrix": rows,
            "charPoly": pi_text,
            "closedFormCharPoly": closed.format_var(&q, "y"),
            "matrixMatchesClosedForm": matrix_matches,
            "charPolyMatchesClosedForm": charpoly_matches,
            "laurentIdentityHolds": laurent_holds,
        }));
    }
    let mut out = format!("basis of QH^{} for Gr(2,{n}): {}\n", n - 2, basis.join(", "));
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for r in &rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&format!("[ {} ]\n", cells.join("  ")));
    }
    out.push_str(&format!("char poly det(M - yI) = {pi_text}\n"));
    out.push_str(&format!("matrix matches closed form: {matrix_matches}\n"));
    out.push_str(&format!("char poly matches closed form: {charpoly_matches}\n"));
    out.push_str(&format!("Laurent identity holds: {laurent_holds}"));
    Ok(out)
}

fn field_name<F: Field>(f: &F) -> String {
    match (f.characteristic(), f.order()) {
        (0, _) => "Q".into(),
        (p, Some(q)) if q == p => format!("GF({p})"),
        (p, Some(q)) => format!("GF({p}^{})", q.ilog(p)),
        (p, None) => format!("char {p}"),
    }
}

/// `matrix n FIELD`.
pub fn matrix(n: u32, field: &str, variant: AVariant, json: bool) -> CliResult {
    if n < 3 {
        return Err(CliError::Usage("n must be at least 3".into()));
    }
    match parse_field(field)? {
        FieldCtx::Rationals(q) => matrix_in(n, &q, variant, json),
        FieldCtx::Finite(f) => matrix_in(n, &f, variant, json),
    }
}

/// `classify k n CHAR`; always JSON.
pub fn classify(k: u32, n: u32, ch: &str) -> CliResult {
    parse_ctx(k, n)?;
    let ch: u64 = ch.parse().map_err(|_| CliError::Usage(format!("CHAR must be 0 or a prime, got {ch:?}")))?;
    let verdict = classify_verdict(k, n, ch).map_err(|e| match e {
        Error::NotPrime(_) => usage(e),
        other => CliError::Compute(other),
    })?;
    to_json(&verdict)
}

/// `orbits n p`.
pub fn orbits(n: u64, p: u64, json: bool) -> CliResult {
    let o = orbit_decomposition(n, p).map_err(usage)?;
    if json {
        return to_json(&json!({"n": n, "p": p, "orbitCount": o.count(), "sizes": o.sizes(), "orbits": o.orbits}));
    }
    let mut out = format!("{} orbits of {{a,-a}} -> {{{p}a,-{p}a}} mod {n}\n", o.count());
    for orbit in &o.orbits {
        let parts: Vec<String> = orbit.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
        out.push_str(&format!("size {}: {}\n", orbit.len(), parts.join(" -> ")));
    }
    Ok(out.trim_end().to_string())
}

/// Result of `evcheck`.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvReport {
    pub k: u32,
    pub n: u32,
    pub field: String,
    pub splitting_field: String,
    pub xi: String,
    pub multiplicity_bound: u32,
    pub multisets: Vec<IdealReport>,
    pub pairs_checked: usize,
    pub multiplicative_failures: usize,
    pub degree_zero_in_root_subfield: bool,
    pub passed: bool,
}

/// Ideal vanishing at every admissible multiset, ev_J(a∗b) = ev_J(a)ev_J(b) on random
/// homogeneous pairs, and degree-zero images lying in 𝐅(ζ).
pub fn ev_report<K: Field>(
    ev: &EvContext<K>,
    base: &str,
    samples: usize,
    seed: u64,
    in_root_subfield: impl Fn(&K::Elem) -> bool,
) -> Result<EvReport, Error> {
    let ctx = *ev.ctx();
    let f = ev.field();
    let js = ev.admissible_multisets();
    let multisets = js.iter().map(|j| ev.verify_ideal_vanishing(j)).collect::<Result<Vec<_>, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = ctx.dim() as i64;
    let mut failures = 0;
    let mut evaluators = js.iter().map(|j| ev.evaluator(j)).collect::<Result<Vec<_>, _>>()?;
    for t in 0..samples {
        let a = QhElement::random_homogeneous(&ctx, f, rng.random_range(0..=top), &mut rng);
        let b = QhElement::random_homogeneous(&ctx, f, rng.random_range(0..=top), &mut rng);
        let ab = a.product(&b)?;
        let e = &mut evaluators[t % js.len()];
        if e.eval(&ab)? != f.mul(&e.eval(&a)?, &e.eval(&b)?) {
            failures += 1;
        }
    }
    let mut in_subfield = true;
    for e in &mut evaluators {
        for b in graded_basis(&ctx, 0) {
            let v = e.sigma(&b.diagram)?;
            in_subfield &= in_root_subfield(&v);
        }
    }
    let passed = multisets.iter().all(|r| r.passed) && failures == 0 && in_subfield;
    Ok(EvReport {
        k: ctx.k(),
        n: ctx.n(),
        field: base.to_string(),
        splitting_field: field_name(f),
        xi: f.format(ev.xi()),
        multiplicity_bound: ev.multiplicity_bound(),
        multisets,
        pairs_checked: samples,
        multiplicative_failures: failures,
        degree_zero_in_root_subfield: in_subfield,
        passed,
    })
}

/// Runs the evaluation checks over the splitting field of `field`.
pub fn evaluation_report(ctx: &GrContext, field: &FieldCtx, samples: usize, seed: u64) -> Result<EvReport, Error> {
    let name = field.to_string();
    match field {
        FieldCtx::Rationals(_) => {
            let ev = EvContext::rational(ctx);
            ev_report(&ev, &name, samples, seed, |a| ev.in_root_subfield(a))
        }
        FieldCtx::Finite(ff) => {
            let ev = EvContext::finite(ctx, ff)?;
            ev_report(&ev, &name, samples, seed, |a| ev.in_root_subfield(a))
        }
    }
}

/// `evcheck k n FIELD`; always JSON.
pub fn evcheck(k: u32, n: u32, field: &str, samples: usize, seed: u64) -> CliResult {
    let ctx = parse_ctx(k, n)?;
    let field = parse_field(field)?;
    to_json(&evaluation_report(&ctx, &field, samples, seed)?)
}

fn frame_values(ctx: &GrContext, seed: u64, quaternionic: bool) -> Result<GcValues, Error> {
    let frame = if quaternionic { quaternionic_frame(ctx, seed)? } else { random_frame(ctx, seed)? };
    gc_map(&frame)
}

/// `gc map k n`: 𝔷 for `count` seeded frames starting at `seed`, as JSON or CSV.
pub fn gc_map_batch(k: u32, n: u32, seed: u64, count: usize, quaternionic: bool, csv_out: bool) -> CliResult {
    let ctx = parse_ctx(k, n)?;
    if quaternionic && (k % 2 == 1 || n % 2 == 1) {
        return Err(CliError::Usage("--quaternionic needs k and n even".into()));
    }
    let batch = (0..count as u64)
        .map(|s| frame_values(&ctx, seed + s, quaternionic).map(|v| (seed + s, v)))
        .collect::<Result<Vec<_>, _>>()?;
    if csv_out {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["seed".to_string()];
        header.extend(batch.first().map(|(_, v)| v.labels()).unwrap_or_default());
        header.push("max_violation".into());
        w.write_record(&header).map_err(|e| CliError::Usage(e.to_string()))?;
        for (s, v) in &batch {
            let mut rec = vec![s.to_string()];
            rec.extend(v.values.iter().map(|x| format!("{x:.15}")));
            rec.push(format!("{:e}", v.max_violation()));
            w.write_record(&rec).map_err(|e| CliError::Usage(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(String::from_utf8_lossy(&bytes).trim_end().to_string());
    }
    let frames: Vec<_> = batch
        .iter()
        .map(|(s, v)| {
            let values: serde_json::Map<_, _> =
                v.labels().into_iter().zip(&v.values).map(|(l, x)| (l, json!(x))).collect();
            let mut obj = json!({"seed": s, "values": values, "maxViolation": v.max_violation()});
            if k >= 2 && n - k >= 2 {
                obj["z12MinusZ21"] = json!(v.get(1, 2) - v.get(2, 1));
            }
            obj
        })
        .collect();
    to_json(&json!({"k": k, "n": n, "quaternionic": quaternionic, "frames": frames}))
}

/// `gc critical k n --tol T`; always JSON.
pub fn gc_critical(k: u32, n: u32, tol: f64) -> CliResult {
    let ctx = parse_ctx(k, n)?;
    if !(tol > 0.0) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {tol}")));
    }
    to_json(&find_critical_point(&ctx, tol)?)
}
