//! h-vectors of simple polytopes: indegree histograms of the edge graph
//! oriented by a generic linear objective, and the triangular transforms
//! between f- and h-vectors.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::closed_forms::binomial;
use crate::error::{Error, Result};
use crate::faces::{edge_graph, EdgeGraph, FVector};
use crate::model::HPolytope;

/// `h_i` = number of vertices with indegree `i`, for `i = 0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HVector(pub Vec<i128>);

impl HVector {
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, i: usize) -> i128 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[i128] {
        &self.0
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

/// Redraws allowed before [`indegree_hvector`] gives up on finding a generic
/// objective.
pub const MAX_REDRAWS: usize = 64;

fn draw_objective(rng: &mut ChaCha8Rng, d: usize) -> Vec<Rational> {
    (0..d).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-(1i64 << 31)..(1i64 << 31))))).collect()
}

/// First objective drawn for `seed`: integer entries in `[-2^31, 2^31)`.
pub fn objective_for_seed(seed: u64, d: usize) -> Vec<Rational> {
    draw_objective(&mut ChaCha8Rng::seed_from_u64(seed), d)
}

/// Objective values at each vertex, or `None` if some edge is level.
fn vertex_values(graph: &EdgeGraph, c: &[Rational]) -> Option<Vec<Rational>> {
    let values: Vec<Rational> = graph.vertices.iter().map(|v| v.dot(c)).collect();
    graph.edges.iter().all(|&(u, v)| values[u] != values[v]).then_some(values)
}

/// Orients every edge towards the endpoint with larger objective value and
/// counts, for each vertex, the edges pointing into it.
pub fn indegrees(graph: &EdgeGraph, values: &[Rational]) -> Vec<usize> {
    let mut indeg = vec![0; graph.vertices.len()];
    for &(u, v) in &graph.edges {
        if values[u] < values[v] {
            indeg[v] += 1;
        } else {
            indeg[u] += 1;
        }
    }
    indeg
}

/// The generic objective drawn for `seed` on this graph, together with its
/// vertex values.
pub fn generic_objective(graph: &EdgeGraph, d: usize, seed: u64) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REDRAWS {
        let c = draw_objective(&mut rng, d);
        if let Some(values) = vertex_values(graph, &c) {
            return Ok((c, values));
        }
    }
    Err(Error::RedrawLimit(MAX_REDRAWS))
}

pub fn indegree_hvector(p: &HPolytope, seed: u64) -> Result<HVector> {
    let graph = edge_graph(p)?;
    let d = p.dim();
    if graph.tight_sets.iter().any(|t| t.len() != d) {
        return Err(Error::NotSimple);
    }
    let (_, values) = generic_objective(&graph, d, seed)?;
    let mut h = vec![0i128; d + 1];
    for k in indegrees(&graph, &values) {
        h[k] += 1;
    }
    Ok(HVector(h))
}

/// `h_i = sum_{k=i}^d (-1)^(k-i) C(k, i) f_k`
pub fn h_from_f(f: &FVector) -> Result<HVector> {
    let d = f.dim();
    (0..=d)
        .map(|i| {
            (i..=d).try_fold(0i128, |acc, k| {
                let term = binomial(k as i64, i as i64)?.checked_mul(f.get(k)).ok_or(Error::Overflow("h_from_f"))?;
                let signed = if (k - i) % 2 == 0 { term } else { -term };
                acc.checked_add(signed).ok_or(Error::Overflow("h_from_f"))
            })
        })
        .collect::<Result<_>>()
        .map(HVector)
}

/// `f_k = sum_{r=k}^d C(r, k) h_r`
pub fn f_from_h(h: &HVector) -> Result<FVector> {
    let d = h.dim();
    (0..=d)
        .map(|k| {
            (k..=d).try_fold(0i128, |acc, r| {
                binomial(r as i64, k as i64)?
                    .checked_mul(h.get(r))
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("f_from_h"))
            })
        })
        .collect::<Result<_>>()
        .map(FVector)
}

/// True iff the indegree h-vector agrees for every seed and matches the
/// transform of `f`.
pub fn objective_independence_check(p: &HPolytope, seeds: &[u64], f: &FVector) -> Result<bool> {
    let expected = h_from_f(f)?;
    for &s in seeds {
        if indegree_hvector(p, s)? != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One coordinate of an upper-bound comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UbtEntry {
    pub index: usize,
    pub h_polytope: i128,
    pub h_dual_cyclic: i128,
    pub holds: bool,
    pub equality: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UbtReport {
    pub n: usize,
    pub d: usize,
    pub entries: Vec<UbtEntry>,
}

impl UbtReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equality)
    }
}

/// Compares `h(P)` with `h(c*(n, d))` coordinate by coordinate.
pub fn compare_with_dual_cyclic(h: &HVector, n: usize) -> Result<UbtReport> {
    let d = h.dim();
    let f_cyclic = crate::closed_forms::f_vector_dual_cyclic(n, d)?;
    let h_cyclic = h_from_f(&f_cyclic)?;
    let entries = (0..=d)
        .map(|i| UbtEntry {
            index: i,
            h_polytope: h.get(i),
            h_dual_cyclic: h_cyclic.get(i),
            holds: h.get(i) <= h_cyclic.get(i),
            equality: h.get(i) == h_cyclic.get(i),
        })
        .collect();
    Ok(UbtReport { n, d, entries })
}

/// `h(P) <= h(c*(n, d))` for a simple polytope with `n` nonredundant rows.
pub fn strengthened_ubt_check(p: &HPolytope, n: usize, seed: u64) -> Result<UbtReport> {
    let redundant = p.redundant_constraints()?;
    if !redundant.is_empty() {
        return Err(Error::Redundant(redundant));
    }
    compare_with_dual_cyclic(&indegree_hvector(p, seed)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::convex_polygon;

    #[test]
    fn simplex_transform() {
        let h = h_from_f(&FVector(vec![4, 6, 4, 1])).unwrap();
        assert_eq!(h, HVector(vec![1, 1, 1, 1]));
        assert_eq!(f_from_h(&h).unwrap(), FVector(vec![4, 6, 4, 1]));
    }

    #[test]
    fn point_is_identity() {
        assert_eq!(h_from_f(&FVector(vec![1])).unwrap(), HVector(vec![1]));
    }

    #[test]
    fn product_of_quadrilaterals() {
        let f = FVector(vec![64, 192, 240, 160, 60, 12, 1]);
        assert_eq!(h_from_f(&f).unwrap(), HVector(vec![1, 6, 15, 20, 15, 6, 1]));
        let back = f_from_h(&HVector(vec![1, 6, 15, 20, 15, 6, 1])).unwrap();
        assert_eq!((back.get(0), back.get(5)), (64, 12));
    }

    #[test]
    fn pentagon_indegrees() {
        let p = convex_polygon(5).unwrap();
        for seed in 0..4 {
            assert_eq!(indegree_hvector(&p, seed).unwrap(), HVector(vec![1, 3, 1]));
        }
    }

    #[test]
    fn hexagon_independent_of_objective() {
        let p = convex_polygon(6).unwrap();
        assert!(objective_independence_check(&p, &[0, 1, 2, 3, 4], &FVector(vec![6, 6, 1])).unwrap());
        assert_eq!(indegree_hvector(&p, 9).unwrap(), HVector(vec![1, 4, 1]));
    }

    #[test]
    fn simplex_indegrees() {
        // x, y, z >= 0, x + y + z <= 1
        let p = HPolytope::parse("4 3\n-1 0 0 0\n0 -1 0 0\n0 0 -1 0\n1 1 1 1\n").unwrap();
        assert_eq!(indegree_hvector(&p, 3).unwrap(), HVector(vec![1, 1, 1, 1]));
    }

    #[test]
    fn non_simple_rejected() {
        let pyramid = HPolytope::parse("5 3\n0 0 -1 0\n2 0 1 2\n-2 0 1 0\n0 2 1 2\n0 -2 1 0\n").unwrap();
        assert_eq!(indegree_hvector(&pyramid, 0), Err(Error::NotSimple));
    }

    #[test]
    fn seeded_objectives_are_deterministic() {
        assert_eq!(objective_for_seed(7, 4), objective_for_seed(7, 4));
        assert_ne!(objective_for_seed(7, 4), objective_for_seed(8, 4));
    }
}
