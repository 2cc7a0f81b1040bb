use std::fmt::Write as _;

use quivermag::verify::CHECK_INVERSE;
use quivermag::{
    default_max_degree, enumerate_paths, euler_form, ext_table, magnitude, parse_any, verify_with_cartan,
    BoundQuiver, CheckOutcome, ExtTable, GrothClass, MagnitudeEvidence, MagnitudeResult,
    Matrix, PathBasis, VerificationReport, VerifyStatus,
};
use serde_json::{json, Value};

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INFINITE: u8 = 3;
pub const EXIT_UNRESOLVED: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
}

/// What a subcommand produced: the JSON result, its text rendering, and the
/// exit code it asks for.
pub struct Output {
    pub result: Value,
    pub text: String,
    pub warnings: Vec<String>,
    pub exit: u8,
}

impl Output {
    fn ok(result: Value, text: String) -> Self {
        Output { result, text, warnings: Vec::new(), exit: 0 }
    }
}

pub fn load_quiver(path: &str, text: &str) -> Result<BoundQuiver, CliError> {
    parse_any(text).map_err(|e| CliError::input(format!("{path}: {e}")))
}

pub fn load_matrix(path: &str, text: &str) -> Result<Matrix, CliError> {
    let m: Matrix = text.parse().map_err(|e| CliError::input(format!("{path}: {e}")))?;
    if m.rows() == 0 {
        return Err(CliError::input(format!("{path}: matrix has no rows")));
    }
    Ok(m)
}

fn basis(bq: BoundQuiver) -> Result<PathBasis, CliError> {
    enumerate_paths(bq).map_err(|e| CliError { code: EXIT_INFINITE, message: e.to_string() })
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("results serialize")
}

pub fn parse(bq: BoundQuiver) -> Output {
    let q = bq.quiver();
    let text = format!(
        "{bq}\n{} vertices, {} arrows, {} relations, {}\n",
        q.num_vertices(),
        q.num_arrows(),
        bq.relations().len(),
        if bq.is_finite_dimensional() { "finite-dimensional" } else { "infinite-dimensional" }
    );
    let mut out = Output::ok(
        json!({
            "quiver": to_json(&bq.to_json()),
            "finite_dimensional": bq.is_finite_dimensional(),
        }),
        text,
    );
    if let Some(cycle) = bq.infinite_cycle() {
        out.warnings.push(format!(
            "algebra is infinite-dimensional: `{}` can be repeated",
            cycle.display(q)
        ));
    }
    out
}

pub fn cartan(bq: BoundQuiver) -> Result<Output, CliError> {
    let pb = basis(bq)?;
    let z = pb.cartan_matrix();
    let det = z.determinant().expect("square");
    let vertices = pb.bound_quiver().quiver().vertices().to_vec();
    let text = format!(
        "vertices: {}\ndim A = {}\nZ =\n{z}det Z = {det}\n",
        vertices.join(" "),
        pb.total_dim()
    );
    Ok(Output::ok(
        json!({
            "vertices": vertices,
            "dimension": pb.total_dim(),
            "cartan": to_json(&z),
            "determinant": quivermag::linalg::fmt_rational(&det),
        }),
        text,
    ))
}

fn resolved_ext(pb: &PathBasis, max_degree: Option<usize>) -> ExtTable {
    ext_table(pb, max_degree.unwrap_or_else(|| default_max_degree(pb)))
}

fn unresolved_warning(ext: &ExtTable) -> String {
    format!(
        "global dimension not reached within max degree {}; Ext beyond it is unknown",
        ext.max_degree
    )
}

pub fn ext(bq: BoundQuiver, max_degree: Option<usize>) -> Result<Output, CliError> {
    let pb = basis(bq)?;
    let ext = resolved_ext(&pb, max_degree);
    let vertices = pb.bound_quiver().quiver().vertices().to_vec();

    let mut text = format!("global dimension: {}\n", ext.global_dimension);
    for (n, table) in ext.entries.iter().enumerate() {
        if n > 0 && table.iter().flatten().all(|&d| d == 0) {
            continue;
        }
        let _ = writeln!(text, "Ext^{n}(S_i, S_j), rows i, columns j:");
        text.push_str(&Matrix::from_i64(
            &table.iter().map(|r| r.iter().map(|&d| d as i64).collect::<Vec<_>>()).collect::<Vec<_>>(),
        )
        .to_string());
    }
    let mut out = Output::ok(
        json!({
            "vertices": vertices,
            "max_degree": ext.max_degree,
            "global_dimension": to_json(&ext.global_dimension),
            "ext": ext.entries,
        }),
        text,
    );
    if !ext.is_complete() {
        out.warnings.push(unresolved_warning(&ext));
    }
    Ok(out)
}

fn magnitude_text(m: &MagnitudeResult) -> String {
    let mut text = match &m.value {
        Some(v) => format!("magnitude = {}\n", quivermag::linalg::fmt_rational(v)),
        None => "magnitude undefined\n".to_string(),
    };
    let vec = |v: &[quivermag::Rational]| {
        v.iter().map(quivermag::linalg::fmt_rational).collect::<Vec<_>>().join(" ")
    };
    match &m.evidence {
        MagnitudeEvidence::Inverse { inverse } => {
            let _ = write!(text, "route: sum of the entries of Z^-1\nZ^-1 =\n{inverse}");
        }
        MagnitudeEvidence::Weighting { weighting, coweighting } => {
            let _ = write!(
                text,
                "route: Z is singular; weighting and coweighting\nweighting   w = [{}]\ncoweighting v = [{}]\n",
                vec(weighting),
                vec(coweighting)
            );
        }
        MagnitudeEvidence::Failure { reason, .. } => {
            let _ = writeln!(text, "reason: {reason}");
        }
    }
    text
}

fn magnitude_warnings(m: &MagnitudeResult) -> Vec<String> {
    match &m.evidence {
        MagnitudeEvidence::Failure { reason, .. } => vec![format!("magnitude undefined: {reason}")],
        _ => Vec::new(),
    }
}

pub fn magnitude_cmd(bq: BoundQuiver, max_degree: Option<usize>) -> Result<Output, CliError> {
    let pb = basis(bq)?;
    let z = pb.cartan_matrix();
    let m = magnitude(&z).expect("square");
    let ext = resolved_ext(&pb, max_degree);
    let all = GrothClass::all_simples(pb.num_vertices());
    let chi = euler_form(&all, &all, &ext).ok();

    let mut text = magnitude_text(&m);
    if let Some(chi) = chi {
        let _ = writeln!(text, "chi(S, S) = {chi}");
    }
    let mut out = Output::ok(
        json!({
            "magnitude": to_json(&m),
            "euler_characteristic": chi,
            "global_dimension": to_json(&ext.global_dimension),
        }),
        text,
    );
    out.warnings = magnitude_warnings(&m);
    if !ext.is_complete() {
        out.warnings.push(unresolved_warning(&ext));
    }
    Ok(out)
}

pub fn verify(
    bq: BoundQuiver,
    max_degree: Option<usize>,
    cartan: Option<Matrix>,
) -> Result<Output, CliError> {
    let pb = basis(bq)?;
    let ext = resolved_ext(&pb, max_degree);
    let overridden = cartan.is_some();
    let z = cartan.unwrap_or_else(|| pb.cartan_matrix());
    let report = verify_with_cartan(&pb, &ext, z).map_err(|e| CliError::input(e.to_string()))?;

    let mut out = Output::ok(to_json(&report), verify_text(&report));
    if overridden {
        out.warnings.push("Cartan matrix supplied by the user, not computed from the quiver".into());
    }
    out.warnings.extend(magnitude_warnings(&report.magnitude));
    out.exit = match report.status {
        VerifyStatus::Passed => 0,
        VerifyStatus::Failed => EXIT_CHECK_FAILED,
        VerifyStatus::Unresolved => {
            out.warnings.push(unresolved_warning(&ext));
            EXIT_UNRESOLVED
        }
    };
    Ok(out)
}

fn verify_text(r: &VerificationReport) -> String {
    let mut text = format!(
        "dim A = {}, global dimension {}, max degree {}\nZ =\n{}det Z = {}\n",
        r.dimension,
        r.global_dimension,
        r.max_degree,
        r.cartan,
        quivermag::linalg::fmt_rational(&r.determinant)
    );
    if let Some(e) = &r.euler_matrix {
        let _ = write!(text, "E =\n{e}");
    }
    text.push_str(&magnitude_text(&r.magnitude));
    if let Some(chi) = r.euler_characteristic {
        let _ = writeln!(text, "chi(S, S) = {chi}");
    }
    for c in &r.checks {
        let tag = match c.outcome {
            CheckOutcome::Passed => "PASS",
            CheckOutcome::Failed => "FAIL",
            CheckOutcome::Skipped => "SKIP",
        };
        let _ = writeln!(text, "{tag}  {}: {}", c.name, c.detail);
    }
    let status = match r.status {
        VerifyStatus::Passed => "all checks passed",
        VerifyStatus::Failed if r.check(CHECK_INVERSE).map(|c| c.outcome) == Some(CheckOutcome::Failed) => {
            "FAILED: Z^-1 differs from the Euler matrix"
        }
        VerifyStatus::Failed => "FAILED",
        VerifyStatus::Unresolved => "unresolved: global dimension not reached",
    };
    let _ = writeln!(text, "{status}");
    text
}

pub fn paths(
    bq: BoundQuiver,
    from: Option<&str>,
    to: Option<&str>,
    count_only: bool,
) -> Result<Output, CliError> {
    let pb = basis(bq)?;
    let q = pb.bound_quiver().quiver().clone();
    let resolve = |id: Option<&str>| -> Result<Vec<usize>, CliError> {
        match id {
            None => Ok((0..q.num_vertices()).collect()),
            Some(id) => q
                .vertex_index(id)
                .map(|v| vec![v])
                .ok_or_else(|| CliError::input(format!("unknown vertex `{id}`"))),
        }
    };
    let (sources, targets) = (resolve(from)?, resolve(to)?);

    let mut pairs = Vec::new();
    let mut text = String::new();
    let mut total = 0;
    for &s in &sources {
        for &t in &targets {
            let listed: Vec<String> = pb.between(s, t).map(|p| p.display(&q)).collect();
            total += listed.len();
            let (sid, tid) = (&q.vertices()[s], &q.vertices()[t]);
            if count_only {
                let _ = writeln!(text, "{sid} -> {tid}: {}", listed.len());
                pairs.push(json!({ "from": sid, "to": tid, "count": listed.len() }));
            } else {
                if !listed.is_empty() || (from.is_some() && to.is_some()) {
                    let _ = writeln!(text, "{sid} -> {tid}: [{}]", listed.join(", "));
                }
                pairs.push(json!({ "from": sid, "to": tid, "count": listed.len(), "paths": listed }));
            }
        }
    }
    if from.is_none() || to.is_none() {
        let _ = writeln!(text, "{total} paths");
    }
    Ok(Output::ok(json!({ "pairs": pairs, "total": total }), text))
}

pub fn matrix_magnitude(z: Matrix) -> Result<Output, CliError> {
    let m = magnitude(&z).map_err(|e| CliError::input(e.to_string()))?;
    let det = z.determinant().expect("square");
    let text = format!(
        "Z =\n{z}det Z = {}\n{}",
        quivermag::linalg::fmt_rational(&det),
        magnitude_text(&m)
    );
    let mut out = Output::ok(
        json!({
            "matrix": to_json(&z),
            "determinant": quivermag::linalg::fmt_rational(&det),
            "magnitude": to_json(&m),
        }),
        text,
    );
    out.warnings = magnitude_warnings(&m);
    Ok(out)
}
