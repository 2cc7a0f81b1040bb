//! Machine-checked identities relating the Cartan matrix, the Euler matrix and
//! magnitude.

use serde::Serialize;

use crate::euler::{
    euler_form, euler_matrix, is_unimodular, magnitude, GrothClass, MagnitudeResult,
};
use crate::linalg::{LinalgError, Matrix, Rational};
use crate::paths::{enumerate_paths, InfiniteDimensional, PathBasis};
use crate::quiver::BoundQuiver;
use crate::resolution::{default_max_degree, ext_table, ExtTable, GlobalDimension};
use crate::serde_q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: CheckOutcome,
    pub detail: String,
}

pub const CHECK_INVERSE: &str = "cartan_inverse_is_euler_matrix";
pub const CHECK_MAGNITUDE: &str = "magnitude_equals_euler_characteristic";
pub const CHECK_UNIMODULAR: &str = "cartan_unimodular";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyStatus {
    Passed,
    Failed,
    /// No check failed, but some were skipped because the global dimension
    /// was not confirmed finite within the degree bound.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub status: VerifyStatus,
    pub vertices: Vec<String>,
    pub dimension: usize,
    pub max_degree: usize,
    pub cartan: Matrix,
    #[serde(with = "serde_q")]
    pub determinant: Rational,
    pub global_dimension: GlobalDimension,
    pub euler_matrix: Option<Matrix>,
    /// `chi(S, S)` with `S` the sum of all simples.
    pub euler_characteristic: Option<i64>,
    pub magnitude: MagnitudeResult,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs every check on a finite-dimensional bound quiver. `max_degree`
/// defaults to the dimension of the algebra.
pub fn verify(
    bq: BoundQuiver,
    max_degree: Option<usize>,
) -> Result<VerificationReport, InfiniteDimensional> {
    let pb = enumerate_paths(bq)?;
    let bound = max_degree.unwrap_or_else(|| default_max_degree(&pb));
    let ext = ext_table(&pb, bound);
    Ok(report(&pb, &ext, pb.cartan_matrix()).expect("Cartan matrix is square"))
}

/// Like [`verify`], but checks a caller-supplied matrix in place of the
/// Cartan matrix against the Euler data computed from resolutions.
pub fn verify_with_cartan(
    pb: &PathBasis,
    ext: &ExtTable,
    cartan: Matrix,
) -> Result<VerificationReport, LinalgError> {
    let n = pb.num_vertices();
    if (cartan.rows(), cartan.cols()) != (n, n) {
        return Err(LinalgError::DimensionMismatch(format!(
            "expected a {n}x{n} matrix, got {}x{}",
            cartan.rows(),
            cartan.cols()
        )));
    }
    report(pb, ext, cartan)
}

fn report(pb: &PathBasis, ext: &ExtTable, z: Matrix) -> Result<VerificationReport, LinalgError> {
    let n = pb.num_vertices();
    let determinant = z.determinant()?;
    let mag = magnitude(&z)?;
    let euler = euler_matrix(ext).ok();
    let all = GrothClass::all_simples(n);
    let chi = euler_form(&all, &all, ext).ok();

    let checks = match (&euler, chi) {
        (Some(e), Some(chi)) => {
            let ze = &z * e;
            let ez = e * &z;
            let inverse = if ze.is_identity() && ez.is_identity() {
                pass(CHECK_INVERSE, "Z*E = E*Z = I")
            } else {
                fail(
                    CHECK_INVERSE,
                    format!(
                        "Z*E is{} the identity, E*Z is{} the identity",
                        if ze.is_identity() { "" } else { " not" },
                        if ez.is_identity() { "" } else { " not" }
                    ),
                )
            };
            let chi_q = crate::linalg::rational(chi);
            let magnitude_check = match &mag.value {
                Some(v) if *v == chi_q => pass(CHECK_MAGNITUDE, format!("magnitude = chi(S,S) = {chi}")),
                Some(v) => fail(CHECK_MAGNITUDE, format!("magnitude {v} != chi(S,S) = {chi}")),
                None => fail(CHECK_MAGNITUDE, format!("magnitude undefined, chi(S,S) = {chi}")),
            };
            let unimodular = if is_unimodular(&determinant) {
                pass(CHECK_UNIMODULAR, format!("det Z = {determinant}"))
            } else {
                fail(CHECK_UNIMODULAR, format!("det Z = {determinant}"))
            };
            vec![inverse, magnitude_check, unimodular]
        }
        _ => {
            let why = format!(
                "global dimension not confirmed finite within max degree {} ({})",
                ext.max_degree, ext.global_dimension
            );
            [CHECK_INVERSE, CHECK_MAGNITUDE, CHECK_UNIMODULAR]
                .iter()
                .map(|name| Check {
                    name: name.to_string(),
                    outcome: CheckOutcome::Skipped,
                    detail: why.clone(),
                })
                .collect()
        }
    };

    let status = if checks.iter().any(|c| c.outcome == CheckOutcome::Failed) {
        VerifyStatus::Failed
    } else if checks.iter().any(|c| c.outcome == CheckOutcome::Skipped) {
        VerifyStatus::Unresolved
    } else {
        VerifyStatus::Passed
    };

    Ok(VerificationReport {
        status,
        vertices: pb.bound_quiver().quiver().vertices().to_vec(),
        dimension: pb.total_dim(),
        max_degree: ext.max_degree,
        cartan: z,
        determinant,
        global_dimension: ext.global_dimension,
        euler_matrix: euler,
        euler_characteristic: chi,
        magnitude: mag,
        checks,
    })
}

fn pass(name: &str, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        outcome: CheckOutcome::Passed,
        detail: detail.into(),
    }
}

fn fail(name: &str, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        outcome: CheckOutcome::Failed,
        detail: detail.into(),
    }
}
