//! The path basis of a monomial bound-quiver algebra and its Cartan matrix.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::One;

use crate::automaton::ROOT;
use crate::linalg::{rational, Matrix, Rational};
use crate::quiver::{BoundQuiver, Path};
use crate::representation::Representation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("algebra is infinite-dimensional: the cycle `{cycle}` can be repeated without meeting a relation")]
pub struct InfiniteDimensional {
    pub cycle: String,
}

/// All paths that avoid every relation as a factor, grouped by endpoints.
///
/// Within each `(source, target)` pair paths are ordered by length, then by
/// their arrow labels in traversal order.
#[derive(Debug, Clone)]
pub struct PathBasis {
    quiver: Arc<BoundQuiver>,
    paths: Vec<Path>,
    /// `by_pair[source * n + target]` lists indices into `paths`.
    by_pair: Vec<Vec<usize>>,
    /// Position of each path inside its pair list.
    slot: Vec<usize>,
    /// The path with its last arrow removed; `None` for idempotents.
    parent: Vec<Option<usize>>,
    /// Paths from each source, parents before children.
    from_source: Vec<Vec<usize>>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

/// Enumerates the basis by breadth-first extension, carrying the relation
/// automaton state along each path.
pub fn enumerate_paths(bq: impl Into<Arc<BoundQuiver>>) -> Result<PathBasis, InfiniteDimensional> {
    let bq: Arc<BoundQuiver> = bq.into();
    if let Some(cycle) = bq.infinite_cycle() {
        return Err(InfiniteDimensional {
            cycle: cycle.display(bq.quiver()),
        });
    }
    let q = bq.quiver();
    let n = q.num_vertices();
    let ac = bq.automaton();
    let out: Vec<Vec<usize>> = (0..n).map(|v| q.outgoing(v).collect()).collect();

    let mut found: Vec<(Path, Option<usize>)> = Vec::new();
    for s in 0..n {
        let mut queue = VecDeque::new();
        found.push((Path::trivial(s), None));
        queue.push_back((found.len() - 1, ROOT));
        while let Some((idx, state)) = queue.pop_front() {
            let at = found[idx].0.target;
            for &a in &out[at] {
                let next = ac.next(state, a);
                if ac.is_dead(next) {
                    continue;
                }
                let mut p = found[idx].0.clone();
                p.arrows.push(a);
                p.target = q.arrow(a).target;
                found.push((p, Some(idx)));
                queue.push_back((found.len() - 1, next));
            }
        }
    }

    // sort into (source, target, length, labels) order and remap parents
    let key = |p: &Path| {
        (
            p.source,
            p.target,
            p.len(),
            p.labels(q).into_iter().map(String::from).collect::<Vec<_>>(),
        )
    };
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_cached_key(|&i| key(&found[i].0));
    let mut new_pos = vec![0; found.len()];
    for (new, &old) in order.iter().enumerate() {
        new_pos[old] = new;
    }
    let mut paths = Vec::with_capacity(found.len());
    let mut parent = Vec::with_capacity(found.len());
    for &old in &order {
        paths.push(found[old].0.clone());
        parent.push(found[old].1.map(|p| new_pos[p]));
    }

    let mut by_pair = vec![Vec::new(); n * n];
    let mut slot = vec![0; paths.len()];
    let mut from_source = vec![Vec::new(); n];
    let mut index = HashMap::with_capacity(paths.len());
    for (i, p) in paths.iter().enumerate() {
        let list = &mut by_pair[p.source * n + p.target];
        slot[i] = list.len();
        list.push(i);
        index.insert((p.source, p.arrows.clone()), i);
    }
    let mut by_len: Vec<usize> = (0..paths.len()).collect();
    by_len.sort_by_key(|&i| paths[i].len());
    for i in by_len {
        from_source[paths[i].source].push(i);
    }

    Ok(PathBasis {
        quiver: bq,
        paths,
        by_pair,
        slot,
        parent,
        from_source,
        index,
    })
}

impl PathBasis {
    pub fn bound_quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    /// dim_K A.
    pub fn total_dim(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, idx: usize) -> &Path {
        &self.paths[idx]
    }

    /// Basis paths from `source` to `target`.
    pub fn between(&self, source: usize, target: usize) -> impl Iterator<Item = &Path> + '_ {
        self.pair_indices(source, target)
            .iter()
            .map(move |&i| &self.paths[i])
    }

    pub fn count(&self, source: usize, target: usize) -> usize {
        self.pair_indices(source, target).len()
    }

    pub(crate) fn pair_indices(&self, source: usize, target: usize) -> &[usize] {
        &self.by_pair[source * self.num_vertices() + target]
    }

    pub(crate) fn parent(&self, idx: usize) -> Option<usize> {
        self.parent[idx]
    }

    pub(crate) fn paths_from(&self, source: usize) -> &[usize] {
        &self.from_source[source]
    }

    /// Index of the basis path with these arrows, or `None` if it is zero in
    /// the algebra (or not a path).
    pub fn lookup(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }

    /// Hom/Cartan matrix: entry `(i, j)` counts basis paths from `j` to `i`,
    /// which is dim Hom(P_i, P_j).
    pub fn cartan_matrix(&self) -> Matrix {
        let n = self.num_vertices();
        let mut z = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                z.set(i, j, rational(self.count(j, i) as i64));
            }
        }
        z
    }

    /// The indecomposable projective `P_i`: at vertex `k` it is spanned by the
    /// basis paths `i -> k`, and an arrow `a` acts by `p -> a p`.
    pub fn projective_module(&self, i: usize) -> Representation {
        let q = self.quiver.quiver();
        let n = q.num_vertices();
        let dims: Vec<usize> = (0..n).map(|k| self.count(i, k)).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut m = Matrix::zeros(dims[arrow.target], dims[arrow.source]);
                for (col, &p) in self.pair_indices(i, arrow.source).iter().enumerate() {
                    let mut ext = self.paths[p].arrows.clone();
                    ext.push(a);
                    if let Some(t) = self.lookup(i, &ext) {
                        m.set(self.slot[t], col, Rational::one());
                    }
                }
                m
            })
            .collect();
        Representation::new(self.quiver.clone(), dims, maps)
            .expect("projective modules satisfy the relations")
    }
}
