//! Finite-dimensional modules as quiver representations, and module maps
//! between them.
//!
//! A representation assigns a vector space `K^dims[v]` to each vertex and a
//! `dims[target] x dims[source]` matrix to each arrow. Every relation must
//! act as zero.

use std::sync::Arc;

use crate::linalg::{Matrix, Rational};
use crate::paths::PathBasis;
use crate::quiver::BoundQuiver;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepresentationError {
    #[error("expected {expected} entries, got {got}")]
    Count { expected: usize, got: usize },
    #[error("matrix for `{arrow}` is {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape {
        arrow: String,
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("relation `{0}` does not act as zero")]
    Relation(String),
    #[error("map is not a module homomorphism: square for `{0}` does not commute")]
    NotNatural(String),
    #[error("module maps are not composable")]
    NotComposable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<BoundQuiver>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(
        quiver: Arc<BoundQuiver>,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self, RepresentationError> {
        let q = quiver.quiver();
        if dims.len() != q.num_vertices() {
            return Err(RepresentationError::Count {
                expected: q.num_vertices(),
                got: dims.len(),
            });
        }
        if maps.len() != q.num_arrows() {
            return Err(RepresentationError::Count {
                expected: q.num_arrows(),
                got: maps.len(),
            });
        }
        for (arrow, m) in q.arrows().iter().zip(&maps) {
            let (want_rows, want_cols) = (dims[arrow.target], dims[arrow.source]);
            if (m.rows(), m.cols()) != (want_rows, want_cols) {
                return Err(RepresentationError::Shape {
                    arrow: arrow.label.clone(),
                    rows: m.rows(),
                    cols: m.cols(),
                    want_rows,
                    want_cols,
                });
            }
        }
        let rep = Representation { quiver, dims, maps };
        for r in rep.quiver.relations() {
            if !rep.path_action(&r.arrows, r.source).is_zero() {
                return Err(RepresentationError::Relation(r.display(rep.quiver.quiver())));
            }
        }
        Ok(rep)
    }

    pub fn zero(quiver: Arc<BoundQuiver>) -> Self {
        let q = quiver.quiver();
        let maps = q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation {
            dims: vec![0; q.num_vertices()],
            maps,
            quiver,
        }
    }

    /// The simple module `S_i`: one-dimensional at `i`, zero elsewhere.
    pub fn simple(quiver: Arc<BoundQuiver>, i: usize) -> Self {
        let q = quiver.quiver();
        let dims: Vec<usize> = (0..q.num_vertices()).map(|v| usize::from(v == i)).collect();
        let maps = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Representation {
            quiver,
            dims,
            maps,
        }
    }

    pub fn direct_sum(quiver: Arc<BoundQuiver>, parts: &[Representation]) -> Self {
        let q = quiver.quiver();
        let dims = (0..q.num_vertices())
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = (0..q.num_arrows())
            .map(|a| {
                let blocks: Vec<Matrix> = parts.iter().map(|p| p.maps[a].clone()).collect();
                Matrix::block_diag(&blocks)
            })
            .collect();
        Representation {
            quiver,
            dims,
            maps,
        }
    }

    pub fn bound_quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Matrix of the path with the given traversal-order arrows, starting at
    /// `source`.
    pub fn path_action(&self, arrows: &[usize], source: usize) -> Matrix {
        arrows.iter().fold(Matrix::identity(self.dims[source]), |acc, &a| {
            &self.maps[a] * &acc
        })
    }

    /// At each vertex, the sum of the images of the incoming arrow maps, as a
    /// matrix whose columns span it (possibly redundantly).
    fn radical_spanning(&self, v: usize) -> Matrix {
        let q = self.quiver.quiver();
        q.incoming(v)
            .fold(Matrix::zeros(self.dims[v], 0), |acc, a| {
                acc.hcat(&self.maps[a]).expect("incoming maps land in the vertex space")
            })
    }

    /// The radical, i.e. the sum of the images of all arrow maps, with its
    /// inclusion.
    pub fn radical(&self) -> (Representation, ModuleMap) {
        let bases = (0..self.dims.len())
            .map(|v| {
                let span = self.radical_spanning(v);
                let cols = span.pivot_columns();
                let columns: Vec<_> = cols.iter().map(|&c| span.column(c)).collect();
                Matrix::from_columns(self.dims[v], &columns)
            })
            .collect();
        self.subrepresentation(bases)
    }

    /// Multiplicity of each simple in the top `M / rad M`.
    pub fn top(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|v| self.dims[v] - self.radical_spanning(v).rank())
            .collect()
    }

    /// Subrepresentation spanned at each vertex by the columns of `bases[v]`,
    /// which must be linearly independent and closed under the arrow maps.
    pub fn subrepresentation(&self, bases: Vec<Matrix>) -> (Representation, ModuleMap) {
        let q = self.quiver.quiver();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let image = &self.maps[a] * &bases[arrow.source];
                bases[arrow.target]
                    .solve(&image)
                    .expect("bases have matching dimensions")
                    .expect("subspaces are closed under the arrow maps")
            })
            .collect();
        let sub = Representation {
            quiver: self.quiver.clone(),
            dims,
            maps,
        };
        let inclusion = ModuleMap {
            domain: sub.clone(),
            codomain: self.clone(),
            blocks: bases,
        };
        (sub, inclusion)
    }
}

/// A module homomorphism, given by one matrix per vertex
/// (`codomain.dims[v] x domain.dims[v]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    domain: Representation,
    codomain: Representation,
    blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn new(
        domain: Representation,
        codomain: Representation,
        blocks: Vec<Matrix>,
    ) -> Result<Self, RepresentationError> {
        if blocks.len() != domain.dims.len() {
            return Err(RepresentationError::Count {
                expected: domain.dims.len(),
                got: blocks.len(),
            });
        }
        let f = ModuleMap {
            domain,
            codomain,
            blocks,
        };
        if let Some(label) = f.naturality_failure() {
            return Err(RepresentationError::NotNatural(label));
        }
        Ok(f)
    }

    pub fn identity(m: &Representation) -> Self {
        ModuleMap {
            domain: m.clone(),
            codomain: m.clone(),
            blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn domain(&self) -> &Representation {
        &self.domain
    }

    pub fn codomain(&self) -> &Representation {
        &self.codomain
    }

    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    /// Label of the first arrow whose square fails to commute (or has the
    /// wrong shape), if any.
    pub fn naturality_failure(&self) -> Option<String> {
        let q = self.domain.quiver.quiver();
        for (v, b) in self.blocks.iter().enumerate() {
            if (b.rows(), b.cols()) != (self.codomain.dims[v], self.domain.dims[v]) {
                return Some(format!("vertex {}", q.vertices()[v]));
            }
        }
        q.arrows().iter().enumerate().find_map(|(a, arrow)| {
            let left = &self.blocks[arrow.target] * &self.domain.maps[a];
            let right = &self.codomain.maps[a] * &self.blocks[arrow.source];
            (left != right).then(|| arrow.label.clone())
        })
    }

    pub fn is_natural(&self) -> bool {
        self.naturality_failure().is_none()
    }

    pub fn rank_at(&self, v: usize) -> usize {
        self.blocks[v].rank()
    }

    pub fn rank(&self) -> usize {
        (0..self.blocks.len()).map(|v| self.rank_at(v)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap, RepresentationError> {
        if first.codomain.dims != self.domain.dims {
            return Err(RepresentationError::NotComposable);
        }
        Ok(ModuleMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&first.blocks)
                .map(|(g, f)| g * f)
                .collect(),
        })
    }

    /// Kernel with its inclusion into the domain.
    pub fn kernel(&self) -> (Representation, ModuleMap) {
        let bases = self
            .blocks
            .iter()
            .zip(&self.domain.dims)
            .map(|(b, &d)| Matrix::from_columns(d, &b.kernel_basis()))
            .collect();
        self.domain.subrepresentation(bases)
    }
}

/// Projective cover `P -> m` with `P = sum_i P_i^{t_i}`, `t = top(m)`.
///
/// Generators are the unit vectors completing a basis of `rad m` at each
/// vertex; a copy of `P_i` sends the path `p` to `m(p)` applied to its
/// generator.
pub fn projective_cover(pb: &PathBasis, m: &Representation) -> (Representation, ModuleMap) {
    let n = m.dims.len();
    let mut generators: Vec<(usize, Vec<Rational>)> = Vec::new();
    for v in 0..n {
        let span = m.radical_spanning(v);
        let with_units = span
            .hcat(&Matrix::identity(m.dims[v]))
            .expect("same row count");
        for c in with_units.pivot_columns() {
            if c >= span.cols() {
                generators.push((v, with_units.column(c)));
            }
        }
    }

    let parts: Vec<Representation> = generators
        .iter()
        .map(|&(v, _)| pb.projective_module(v))
        .collect();
    let cover = Representation::direct_sum(m.quiver.clone(), &parts);

    let mut columns: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); n];
    for (v, gen) in &generators {
        // images of the basis paths from v, parents computed first
        let mut image: Vec<Option<Vec<Rational>>> = vec![None; pb.total_dim()];
        for &p in pb.paths_from(*v) {
            let val = match pb.parent(p) {
                None => gen.clone(),
                Some(par) => {
                    let last = *pb.path(p).arrows.last().expect("non-idempotent has arrows");
                    m.maps[last].mul_vec(image[par].as_ref().expect("parent precedes child"))
                }
            };
            image[p] = Some(val);
        }
        for (target, cols) in columns.iter_mut().enumerate() {
            for &p in pb.pair_indices(*v, target) {
                cols.push(image[p].take().expect("computed above"));
            }
        }
    }
    let blocks = columns
        .iter()
        .enumerate()
        .map(|(v, cols)| Matrix::from_columns(m.dims[v], cols))
        .collect();
    let surjection = ModuleMap {
        domain: cover.clone(),
        codomain: m.clone(),
        blocks,
    };
    debug_assert!(surjection.is_natural());
    (cover, surjection)
}
