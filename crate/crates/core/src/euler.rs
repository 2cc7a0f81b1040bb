//! Euler form, Euler matrix, Grothendieck-group classes and magnitude.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linalg::{rational, LinalgError, Matrix, Rational};
use crate::paths::PathBasis;
use crate::resolution::ExtTable;
use crate::serde_q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EulerError {
    #[error("Ext table is incomplete (global dimension {0}); the alternating sum cannot be truncated")]
    IncompleteExt(String),
    #[error("class has {got} coefficients, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("weight d_{index} = {value} is not positive")]
    NonPositiveWeight { index: usize, value: i64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A class in the Grothendieck group, written in the basis of simples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrothClass(pub Vec<i64>);

impl GrothClass {
    pub fn simple(n: usize, i: usize) -> Self {
        GrothClass((0..n).map(|k| i64::from(k == i)).collect())
    }

    /// The class of `S = sum_i S_i`.
    pub fn all_simples(n: usize) -> Self {
        GrothClass(vec![1; n])
    }

    /// The class of a module with the given dimension vector; simples are
    /// one-dimensional, so composition multiplicities are the dimensions.
    pub fn of_dims(dims: &[usize]) -> Self {
        GrothClass(dims.iter().map(|&d| d as i64).collect())
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
}

fn require_complete(ext: &ExtTable) -> Result<(), EulerError> {
    if ext.is_complete() {
        Ok(())
    } else {
        Err(EulerError::IncompleteExt(ext.global_dimension.to_string()))
    }
}

/// `chi(x, y) = sum_{i,j} x_i y_j sum_n (-1)^n dim Ext^n(S_i, S_j)`.
pub fn euler_form(x: &GrothClass, y: &GrothClass, ext: &ExtTable) -> Result<i64, EulerError> {
    require_complete(ext)?;
    let n = ext.num_vertices();
    for c in [x, y] {
        if c.0.len() != n {
            return Err(EulerError::Length {
                expected: n,
                got: c.0.len(),
            });
        }
    }
    let mut total = 0;
    for (i, &xi) in x.0.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.0.iter().enumerate() {
            if yj != 0 {
                total += xi * yj * ext.alternating_sum(i, j);
            }
        }
    }
    Ok(total)
}

/// `E[i][j] = chi(S_j, S_i)`.
pub fn euler_matrix(ext: &ExtTable) -> Result<Matrix, EulerError> {
    require_complete(ext)?;
    let n = ext.num_vertices();
    let mut e = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            e.set(i, j, rational(ext.alternating_sum(j, i)));
        }
    }
    Ok(e)
}

/// `[P_j]` in the simple basis: column `j` of the Cartan matrix.
pub fn class_of_projective(pb: &PathBasis, j: usize) -> GrothClass {
    GrothClass((0..pb.num_vertices()).map(|k| pb.count(j, k) as i64).collect())
}

/// `[S_j]` in the projective basis: column `j` of the Euler matrix.
pub fn simple_in_projective_basis(euler: &Matrix, j: usize) -> Vec<Rational> {
    euler.column(j)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MagnitudeStatus {
    Invertible,
    Weighted,
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MagnitudeEvidence {
    Inverse {
        inverse: Matrix,
    },
    Weighting {
        #[serde(with = "serde_q::vec")]
        weighting: Vec<Rational>,
        #[serde(with = "serde_q::vec")]
        coweighting: Vec<Rational>,
    },
    Failure {
        reason: String,
        #[serde(with = "serde_q::opt_vec")]
        weighting: Option<Vec<Rational>>,
        #[serde(with = "serde_q::opt_vec")]
        coweighting: Option<Vec<Rational>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagnitudeResult {
    pub status: MagnitudeStatus,
    #[serde(with = "serde_q::opt")]
    pub value: Option<Rational>,
    pub evidence: MagnitudeEvidence,
}

/// Magnitude of a square matrix: the sum of the entries of its inverse, or,
/// for singular matrices, the common total of a weighting `Z w = 1` and a
/// coweighting `v^T Z = 1^T` when both exist.
pub fn magnitude(z: &Matrix) -> Result<MagnitudeResult, LinalgError> {
    if let Some(inverse) = z.invert()? {
        return Ok(MagnitudeResult {
            status: MagnitudeStatus::Invertible,
            value: Some(inverse.sum_entries()),
            evidence: MagnitudeEvidence::Inverse { inverse },
        });
    }
    let (weighting, coweighting) = weightings(z)?;
    let sum = |v: &Vec<Rational>| v.iter().fold(Rational::zero(), |a, x| a + x);
    let result = match (weighting, coweighting) {
        (Some(w), Some(v)) if sum(&w) == sum(&v) => MagnitudeResult {
            status: MagnitudeStatus::Weighted,
            value: Some(sum(&w)),
            evidence: MagnitudeEvidence::Weighting {
                weighting: w,
                coweighting: v,
            },
        },
        (w, v) => {
            let reason = match (&w, &v) {
                (None, None) => "singular matrix with neither a weighting nor a coweighting",
                (Some(_), None) => "singular matrix with a weighting but no coweighting",
                (None, Some(_)) => "singular matrix with a coweighting but no weighting",
                (Some(_), Some(_)) => "weighting and coweighting totals disagree",
            };
            MagnitudeResult {
                status: MagnitudeStatus::Undefined,
                value: None,
                evidence: MagnitudeEvidence::Failure {
                    reason: reason.to_string(),
                    weighting: w,
                    coweighting: v,
                },
            }
        }
    };
    Ok(result)
}

/// Solutions of `Z w = 1` and `Z^T v = 1`, each with free variables zero.
pub fn weightings(z: &Matrix) -> Result<(Option<Vec<Rational>>, Option<Vec<Rational>>), LinalgError> {
    if !z.is_square() {
        return Err(LinalgError::NotSquare {
            rows: z.rows(),
            cols: z.cols(),
        });
    }
    let ones = Matrix::ones(z.rows(), 1);
    let w = z.solve(&ones)?.map(|m| m.column(0));
    let v = z.transpose().solve(&ones)?.map(|m| m.column(0));
    Ok((w, v))
}

/// `sum_{i,j} E[i][j] / (d_i d_j)`.
pub fn weighted_euler_sum(euler: &Matrix, d: &[i64]) -> Result<Rational, EulerError> {
    if !euler.is_square() {
        return Err(LinalgError::NotSquare {
            rows: euler.rows(),
            cols: euler.cols(),
        }
        .into());
    }
    if d.len() != euler.rows() {
        return Err(EulerError::Length {
            expected: euler.rows(),
            got: d.len(),
        });
    }
    if let Some((index, &value)) = d.iter().enumerate().find(|(_, x)| !x.is_positive()) {
        return Err(EulerError::NonPositiveWeight { index, value });
    }
    let inv: Vec<Rational> = d.iter().map(|&x| rational(x).recip()).collect();
    let mut total = Rational::zero();
    for i in 0..euler.rows() {
        for j in 0..euler.cols() {
            let e = euler.get(i, j);
            if !e.is_zero() {
                total += e * &inv[i] * &inv[j];
            }
        }
    }
    Ok(total)
}

/// `chi([P_i], [S_j])` for all `i, j`, as an integer matrix.
pub fn duality_pairing(pb: &PathBasis, ext: &ExtTable) -> Result<Vec<Vec<i64>>, EulerError> {
    let n = pb.num_vertices();
    (0..n)
        .map(|i| {
            let p = class_of_projective(pb, i);
            (0..n)
                .map(|j| euler_form(&p, &GrothClass::simple(n, j), ext))
                .collect()
        })
        .collect()
}

/// Unimodular means invertible over the integers.
pub fn is_unimodular(det: &Rational) -> bool {
    det.is_integer() && det.abs().is_one()
}
