//! Minimal projective resolutions and the table of Ext dimensions between
//! simple modules.
//!
//! For a minimal resolution `... -> Q_1 -> Q_0 -> X -> 0` every differential
//! lands in the radical, so applying `Hom(-, S_j)` kills all of them and
//! `dim Ext^n(X, S_j)` is the multiplicity of `P_j` in `Q_n`.

use serde::Serialize;

use crate::linalg::Matrix;
use crate::paths::PathBasis;
use crate::representation::{projective_cover, ModuleMap, Representation};

#[derive(Debug, Clone)]
pub struct MinimalResolution {
    pub resolved: Representation,
    /// `terms[n] = Q_n`.
    pub terms: Vec<Representation>,
    /// `multiplicities[n][k]` copies of `P_k` in `Q_n`.
    pub multiplicities: Vec<Vec<usize>>,
    /// `Q_0 -> X`; absent when `X = 0`.
    pub augmentation: Option<ModuleMap>,
    /// `differentials[n - 1] = d_n : Q_n -> Q_{n-1}` for `n >= 1`.
    pub differentials: Vec<ModuleMap>,
    /// True when the last syzygy computed was zero.
    pub complete: bool,
}

/// Iterates projective covers of syzygies, computing at most the terms
/// `Q_0 ..= Q_max_degree`.
pub fn minimal_projective_resolution(
    pb: &PathBasis,
    m: &Representation,
    max_degree: usize,
) -> MinimalResolution {
    let mut res = MinimalResolution {
        resolved: m.clone(),
        terms: Vec::new(),
        multiplicities: Vec::new(),
        augmentation: None,
        differentials: Vec::new(),
        complete: false,
    };
    let mut syzygy = m.clone();
    let mut inclusion: Option<ModuleMap> = None;
    for _ in 0..=max_degree {
        if syzygy.is_zero() {
            break;
        }
        res.multiplicities.push(syzygy.top());
        let (cover, eps) = projective_cover(pb, &syzygy);
        match &inclusion {
            None => res.augmentation = Some(eps.clone()),
            Some(incl) => res
                .differentials
                .push(incl.compose(&eps).expect("cover maps onto the syzygy")),
        }
        let (ker, incl) = eps.kernel();
        res.terms.push(cover);
        syzygy = ker;
        inclusion = Some(incl);
    }
    res.complete = syzygy.is_zero();
    res
}

impl MinimalResolution {
    /// Length `N` of a complete resolution (`None` if incomplete, `Some(0)`
    /// for the zero module as well as for projectives).
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }

    /// Every consecutive composite vanishes and ranks add up to term
    /// dimensions, so the complex is exact (at `X` too, where the augmentation
    /// must be onto).
    pub fn is_exact(&self) -> bool {
        let Some(eps) = &self.augmentation else {
            return self.terms.is_empty() && self.resolved.is_zero();
        };
        if eps.rank() != self.resolved.total_dim() {
            return false;
        }
        let mut prev_rank = eps.rank();
        let mut prev_map = eps;
        for (n, term) in self.terms.iter().enumerate() {
            let next = self.differentials.get(n);
            let next_rank = match next {
                Some(d) => {
                    if !prev_map.compose(d).map(|c| c.is_zero()).unwrap_or(false) {
                        return false;
                    }
                    d.rank()
                }
                // the top term is only pinned down when nothing is left over
                None if self.complete => 0,
                None => return true,
            };
            if prev_rank + next_rank != term.total_dim() {
                return false;
            }
            if let Some(d) = next {
                prev_rank = next_rank;
                prev_map = d;
            }
        }
        true
    }

    /// Each differential `d_n` (n >= 1) has image inside `rad Q_{n-1}`.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().enumerate().all(|(k, d)| {
            let (rad, incl) = self.terms[k].radical();
            (0..rad.dims().len()).all(|v| {
                let r = incl.block(v);
                let both = r.hcat(d.block(v)).expect("same codomain");
                both.rank() == r.cols()
            })
        })
    }

    /// For a complete resolution, `sum_n (-1)^n dim Q_n = dim X` vertex-wise.
    /// Incomplete resolutions make no claim and return `None`.
    pub fn grothendieck_identity(&self) -> Option<bool> {
        if !self.complete {
            return None;
        }
        let n = self.resolved.dims().len();
        let mut acc = vec![0i64; n];
        for (deg, term) in self.terms.iter().enumerate() {
            let sign = if deg % 2 == 0 { 1 } else { -1 };
            for (a, &d) in acc.iter_mut().zip(term.dims()) {
                *a += sign * d as i64;
            }
        }
        Some(
            acc.iter()
                .zip(self.resolved.dims())
                .all(|(&a, &d)| a == d as i64),
        )
    }

    /// Matrix of a differential at one vertex, mainly for display.
    pub fn differential_block(&self, n: usize, v: usize) -> Option<&Matrix> {
        self.differentials.get(n.checked_sub(1)?).map(|d| d.block(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GlobalDimension {
    Finite(usize),
    /// Some simple still had a nonzero syzygy at the degree bound.
    AtLeast(usize),
}

impl GlobalDimension {
    pub fn is_finite(&self) -> bool {
        matches!(self, GlobalDimension::Finite(_))
    }
}

impl std::fmt::Display for GlobalDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlobalDimension::Finite(d) => write!(f, "{d}"),
            GlobalDimension::AtLeast(d) => write!(f, ">= {d}"),
        }
    }
}

/// `entries[n][i][j] = dim Ext^n(S_i, S_j)` for `n = 0 ..= max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    pub entries: Vec<Vec<Vec<usize>>>,
    pub global_dimension: GlobalDimension,
    pub max_degree: usize,
}

impl ExtTable {
    pub fn from_resolutions(resolutions: &[MinimalResolution], max_degree: usize) -> Self {
        let n = resolutions.len();
        let mut entries = vec![vec![vec![0; n]; n]; max_degree + 1];
        for (i, res) in resolutions.iter().enumerate() {
            for (deg, mult) in res.multiplicities.iter().enumerate() {
                entries[deg][i].clone_from(mult);
            }
        }
        let global_dimension = if resolutions.iter().all(|r| r.complete) {
            GlobalDimension::Finite(
                resolutions
                    .iter()
                    .filter_map(MinimalResolution::length)
                    .max()
                    .unwrap_or(0),
            )
        } else {
            GlobalDimension::AtLeast(max_degree)
        };
        ExtTable {
            entries,
            global_dimension,
            max_degree,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.global_dimension.is_finite()
    }

    pub fn num_vertices(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> usize {
        self.entries.get(n).map_or(0, |m| m[i][j])
    }

    /// `sum_n (-1)^n dim Ext^n(S_i, S_j)` over the computed degrees.
    pub fn alternating_sum(&self, i: usize, j: usize) -> i64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(n, m)| if n % 2 == 0 { m[i][j] as i64 } else { -(m[i][j] as i64) })
            .sum()
    }
}

/// Minimal resolutions of every simple module.
pub fn simple_resolutions(pb: &PathBasis, max_degree: usize) -> Vec<MinimalResolution> {
    (0..pb.num_vertices())
        .map(|i| {
            let s = Representation::simple(pb.bound_quiver().clone(), i);
            minimal_projective_resolution(pb, &s, max_degree)
        })
        .collect()
}

pub fn ext_table(pb: &PathBasis, max_degree: usize) -> ExtTable {
    ExtTable::from_resolutions(&simple_resolutions(pb, max_degree), max_degree)
}

/// The default degree bound, `dim_K A`.
pub fn default_max_degree(pb: &PathBasis) -> usize {
    pb.total_dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate_paths;
    use crate::quiver::parse_quiver;

    fn basis(text: &str) -> PathBasis {
        enumerate_paths(parse_quiver(text).unwrap()).unwrap()
    }

    const A2: &str = "quiver { vertices: 1 2; arrows: a: 1 -> 2; }";
    const BOUND: &str = "quiver { vertices: 1 2 3; arrows: a: 1 -> 2; b: 2 -> 3; relations: b*a; }";
    const TRI: &str = "quiver { vertices: 1 2 3; arrows: a: 1 -> 2; b: 2 -> 3; c: 3 -> 1; \
                       relations: c*b*a, a*c*b, b*a*c; }";

    fn check(res: &MinimalResolution) {
        assert!(res.is_exact());
        assert!(res.is_minimal());
        if res.complete {
            assert_eq!(res.grothendieck_identity(), Some(true));
        }
    }

    #[test]
    fn resolution_of_s1_over_a2() {
        let pb = basis(A2);
        let s1 = Representation::simple(pb.bound_quiver().clone(), 0);
        let res = minimal_projective_resolution(&pb, &s1, 5);
        assert_eq!(res.multiplicities, vec![vec![1, 0], vec![0, 1]]);
        assert!(res.complete);
        assert_eq!(res.length(), Some(1));
        check(&res);
    }

    #[test]
    fn resolution_with_relation_has_length_two() {
        let pb = basis(BOUND);
        let s1 = Representation::simple(pb.bound_quiver().clone(), 0);
        let res = minimal_projective_resolution(&pb, &s1, 5);
        assert_eq!(
            res.multiplicities,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert!(res.complete);
        check(&res);
        assert!(res.differential_block(2, 2).is_some());
    }

    #[test]
    fn projectives_resolve_in_degree_zero() {
        let pb = basis(BOUND);
        for i in 0..3 {
            let res = minimal_projective_resolution(&pb, &pb.projective_module(i), 0);
            assert!(res.complete);
            assert_eq!(res.terms.len(), 1);
            check(&res);
        }
    }

    #[test]
    fn zero_module_has_empty_resolution() {
        let pb = basis(A2);
        let res = minimal_projective_resolution(&pb, &Representation::zero(pb.bound_quiver().clone()), 3);
        assert!(res.complete);
        assert!(res.terms.is_empty());
        assert_eq!(res.length(), Some(0));
        check(&res);
    }

    #[test]
    fn degree_bound_cuts_off() {
        let pb = basis(A2);
        let s1 = Representation::simple(pb.bound_quiver().clone(), 0);
        let res = minimal_projective_resolution(&pb, &s1, 0);
        assert!(!res.complete);
        assert_eq!(res.grothendieck_identity(), None);
        assert!(res.is_exact());
    }

    #[test]
    fn ext_tables() {
        let ext = ext_table(&basis(A2), 3);
        assert_eq!(ext.entries[0], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(ext.entries[1], vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(ext.global_dimension, GlobalDimension::Finite(1));

        let ext = ext_table(&basis(BOUND), 5);
        assert_eq!(ext.get(2, 0, 2), 1);
        let nonzero2: usize = ext.entries[2].iter().flatten().sum();
        assert_eq!(nonzero2, 1);
        assert_eq!(ext.global_dimension, GlobalDimension::Finite(2));

        let ext = ext_table(&basis("quiver { vertices: 1 2 3; }"), 2);
        assert_eq!(ext.entries[0], vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(ext.entries[1..].iter().flatten().flatten().all(|&x| x == 0));
        assert_eq!(ext.global_dimension, GlobalDimension::Finite(0));
    }

    #[test]
    fn truncated_cycle_is_periodic() {
        let pb = basis(TRI);
        let bound = default_max_degree(&pb);
        let ext = ext_table(&pb, bound);
        assert_eq!(ext.global_dimension, GlobalDimension::AtLeast(9));
        for res in simple_resolutions(&pb, 4) {
            check(&res);
            assert!(!res.complete);
            // P_1 <- P_2 <- P_1 <- P_2 ... : each term a single projective
            assert!(res.multiplicities.iter().all(|m| m.iter().sum::<usize>() == 1));
        }
    }

    #[test]
    fn loop_algebra_is_periodic() {
        // K[x]/(x^2): S resolves by P <- P <- P ...
        let pb = basis("quiver { vertices: 1; arrows: x: 1 -> 1; relations: x*x; }");
        let ext = ext_table(&pb, 4);
        assert_eq!(ext.global_dimension, GlobalDimension::AtLeast(4));
        assert!(ext.entries.iter().all(|m| m[0][0] == 1));
    }
}
