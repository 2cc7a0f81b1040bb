#![allow(dead_code)]

use quivermag::{parse_quiver, BoundQuiver, Matrix, Quiver};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BOUND_EXAMPLE: &str =
    "quiver { vertices: 1 2 3; arrows: a: 1 -> 2; b: 2 -> 3; relations: b*a; }";

/// Single `n`-cycle with every path of length `n` set to zero.
pub fn truncated_cycle(n: usize) -> BoundQuiver {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let arrows: Vec<String> = (0..n)
        .map(|i| format!("{}: {} -> {};", labels[i], i + 1, (i + 1) % n + 1))
        .collect();
    let relations: Vec<String> = (0..n)
        .map(|start| {
            let mut seq: Vec<&str> = (0..n).map(|k| labels[(start + k) % n].as_str()).collect();
            seq.reverse();
            seq.join("*")
        })
        .collect();
    let text = format!(
        "quiver {{ vertices: {}; arrows: {} relations: {}; }}",
        vertices.join(" "),
        arrows.join(" "),
        relations.join(", ")
    );
    parse_quiver(&text).unwrap()
}

/// Acyclic quiver with up to `max_vertices` vertices and `max_arrows` arrows:
/// a hidden random topological order decides orientation, vertex declaration
/// order is shuffled independently.
pub fn random_acyclic(rng: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> BoundQuiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = if n == 1 { 0 } else { rng.gen_range(0..=max_arrows) };
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows = (0..m).map(|k| {
        let (mut s, mut t) = (rng.gen_range(0..n), rng.gen_range(0..n - 1));
        if t >= s {
            t += 1;
        }
        if rank[s] > rank[t] {
            std::mem::swap(&mut s, &mut t);
        }
        (format!("a{k}"), names[s].clone(), names[t].clone())
    });
    let arrows: Vec<_> = arrows.collect();
    BoundQuiver::without_relations(Quiver::new(names, arrows).unwrap())
}

pub fn corpus(seed: u64, count: usize) -> Vec<BoundQuiver> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_acyclic(&mut rng, 8, 12)).collect()
}

/// Random quiver (cycles allowed) with random monomial relations.
pub fn random_bound(rng: &mut ChaCha8Rng, max_vertices: usize, max_arrows: usize) -> BoundQuiver {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_arrows);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> = (0..m)
        .map(|k| {
            (
                format!("a{k}"),
                names[rng.gen_range(0..n)].clone(),
                names[rng.gen_range(0..n)].clone(),
            )
        })
        .collect();
    let quiver = Quiver::new(names, arrows.clone()).unwrap();
    let mut relations = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        if m == 0 {
            break;
        }
        // random walk of length 2..=4
        let len = rng.gen_range(2..=4);
        let mut walk = vec![rng.gen_range(0..m)];
        while walk.len() < len {
            let at = quiver.arrow(*walk.last().unwrap()).target;
            let next: Vec<usize> = quiver.outgoing(at).collect();
            if next.is_empty() {
                break;
            }
            walk.push(*next.choose(rng).unwrap());
        }
        if walk.len() >= 2 {
            relations.push(walk.iter().map(|&a| quiver.arrow(a).label.clone()).collect());
        }
    }
    BoundQuiver::new(quiver, relations).unwrap()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] as i128 * cofactor_det(&minor)
        })
        .sum()
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect())
        .collect()
}

pub fn to_matrix(m: &[Vec<i64>]) -> Matrix {
    Matrix::from_i64(m)
}

/// All relation-avoiding paths, found by naive depth-first extension with a
/// substring test against every relation. Paths are traversal-order arrow
/// lists; `max_len` caps the search.
pub fn naive_paths(bq: &BoundQuiver, max_len: usize) -> Vec<(usize, Vec<usize>)> {
    let q = bq.quiver();
    let rels: Vec<Vec<usize>> = bq.relations().iter().map(|r| r.arrows.clone()).collect();
    let avoids = |w: &[usize]| {
        rels.iter()
            .all(|r| !w.windows(r.len()).any(|win| win == r.as_slice()))
    };
    let mut out = Vec::new();
    for s in 0..q.num_vertices() {
        let mut stack = vec![(s, Vec::<usize>::new())];
        while let Some((at, word)) = stack.pop() {
            out.push((s, word.clone()));
            if word.len() == max_len {
                continue;
            }
            for a in 0..q.num_arrows() {
                if q.arrow(a).source == at {
                    let mut w = word.clone();
                    w.push(a);
                    if avoids(&w) {
                        stack.push((q.arrow(a).target, w));
                    }
                }
            }
        }
    }
    out
}

/// Pigeonhole bound on the length of a relation-avoiding path in a
/// finite-dimensional algebra.
pub fn path_length_bound(bq: &BoundQuiver) -> usize {
    let total: usize = bq.relations().iter().map(|r| r.len()).sum();
    bq.num_vertices() * (1 + total)
}

/// Number of paths from `i` to `j` in an acyclic quiver by dynamic
/// programming over the adjacency counts.
pub fn count_paths_acyclic(q: &Quiver, i: usize, j: usize) -> u64 {
    let n = q.num_vertices();
    let mut memo = vec![None; n];
    fn go(q: &Quiver, v: usize, j: usize, memo: &mut Vec<Option<u64>>) -> u64 {
        if let Some(x) = memo[v] {
            return x;
        }
        let mut total = u64::from(v == j);
        for a in q.outgoing(v).collect::<Vec<_>>() {
            total += go(q, q.arrow(a).target, j, memo);
        }
        memo[v] = Some(total);
        total
    }
    go(q, i, j, &mut memo)
}

/// Whether some relation-avoiding path of length `len` exists. Tracks the set
/// of last `k - 1` arrows of surviving paths (`k` = longest relation) and tests
/// each extension against every relation by substring comparison.
pub fn long_path_exists(bq: &BoundQuiver, len: usize) -> bool {
    use std::collections::BTreeSet;
    let q = bq.quiver();
    let rels: Vec<Vec<usize>> = bq.relations().iter().map(|r| r.arrows.clone()).collect();
    let keep = rels.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1);
    // (current vertex, trailing window)
    let mut frontier: BTreeSet<(usize, Vec<usize>)> =
        (0..q.num_vertices()).map(|v| (v, Vec::new())).collect();
    for _ in 0..len {
        let mut next = BTreeSet::new();
        for (at, window) in &frontier {
            for a in 0..q.num_arrows() {
                if q.arrow(a).source != *at {
                    continue;
                }
                let mut w = window.clone();
                w.push(a);
                if rels.iter().any(|r| w.ends_with(r)) {
                    continue;
                }
                if w.len() > keep {
                    w.remove(0);
                }
                next.insert((q.arrow(a).target, w));
            }
        }
        if next.is_empty() {
            return false;
        }
        frontier = next;
    }
    true
}
