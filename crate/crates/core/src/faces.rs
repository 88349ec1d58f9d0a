//! Brute-force face enumeration of pointed H-polyhedra.
//!
//! Faces are identified by their closed tight sets, so unbounded faces of
//! pointed polyhedra are counted the same way as bounded ones. Everything here
//! is exact and deliberately naive: it is the reference the closed forms are
//! checked against.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::arith::{solve_square, RatVector, Rational};
use crate::error::{Error, Result};
use crate::geometry::{self, face_witness, rank_of};
use crate::model::HPolytope;

/// A nonempty face of a polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// All constraints tight on the whole face, sorted. Two faces are the same
    /// face iff their tight sets agree.
    pub tight_set: Vec<usize>,
    pub dim: usize,
    /// A point of the face's relative interior.
    pub witness: RatVector,
    /// Indices into the sorted vertex list of the vertices lying on the face.
    /// For unbounded faces this is not a full description of the face.
    pub vertex_ids: Vec<usize>,
}

/// Face counts `f_0, ..., f_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<i128>);

impl FVector {
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, k: usize) -> i128 {
        self.0[k]
    }

    pub fn as_slice(&self) -> &[i128] {
        &self.0
    }

    /// `sum_{k=0}^{d-1} (-1)^k f_k`
    pub fn proper_alternating_sum(&self) -> i128 {
        self.0[..self.dim()].iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f } else { -f }).sum()
    }

    /// The Euler relation for a bounded polytope:
    /// `sum_{k=0}^{d-1} (-1)^k f_k = 1 - (-1)^d`.
    pub fn satisfies_euler_bounded(&self) -> bool {
        let d = self.dim() as i128;
        self.proper_alternating_sum() == 1 - if d % 2 == 0 { 1 } else { -1 }
    }

    /// The Euler relation for an unbounded pointed polyhedron, whose faces
    /// (including itself) have alternating sum zero.
    pub fn satisfies_euler_unbounded(&self) -> bool {
        self.0.iter().enumerate().map(|(k, &f)| if k % 2 == 0 { f } else { -f }).sum::<i128>() == 0
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(", "))
    }
}

/// Size limits for [`face_lattice`]. The defaults keep runs at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_constraints: usize,
    pub max_dim: usize,
    /// Upper bound on the number of candidate tight sets tested with an LP.
    pub max_candidates: Option<usize>,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self { max_constraints: 24, max_dim: 7, max_candidates: None }
    }
}

impl EnumerationLimits {
    pub fn unlimited() -> Self {
        Self { max_constraints: usize::MAX, max_dim: usize::MAX, max_candidates: None }
    }
}

fn require_pointed(p: &HPolytope) -> Result<()> {
    if geometry::is_pointed(p) {
        Ok(())
    } else {
        Err(Error::NotPointed)
    }
}

fn require_bounded(p: &HPolytope) -> Result<()> {
    if !geometry::is_feasible(p) {
        return Err(Error::Infeasible);
    }
    if !geometry::is_bounded(p) {
        return Err(Error::Unbounded);
    }
    Ok(())
}

/// Every vertex with its full tight set, sorted by coordinates.
///
/// Solves each `d`-subset of rows with a nonsingular coefficient block and
/// keeps the feasible solutions.
pub fn enumerate_vertices(p: &HPolytope) -> Result<Vec<(RatVector, Vec<usize>)>> {
    require_pointed(p)?;
    let d = p.dim();
    let found: Vec<Vec<Rational>> = (0..p.num_constraints())
        .combinations(d)
        .par_bridge()
        .filter_map(|rows| {
            let a: Vec<&[Rational]> = rows.iter().map(|&i| p.constraint(i).coeffs().as_slice()).collect();
            let b: Vec<Rational> = rows.iter().map(|&i| p.constraint(i).rhs().clone()).collect();
            solve_square(&a, &b).filter(|x| p.contains(x))
        })
        .collect();
    let unique: BTreeMap<RatVector, ()> = found.into_iter().map(|x| (RatVector::new(x), ())).collect();
    Ok(unique
        .into_keys()
        .map(|x| {
            let tight = p.tight_at(x.as_slice());
            (x, tight)
        })
        .collect())
}

/// All nonempty faces, including the polyhedron itself, sorted by dimension
/// and then by tight set.
///
/// Starting from the whole polyhedron, each known face is intersected with
/// every constraint not already tight on it; the resulting candidate is tested
/// for nonemptiness with an exact LP and replaced by its closed tight set.
/// Every face is reachable this way because any face is obtained from a larger
/// one by adding one of its own tight constraints at a time.
pub fn face_lattice(p: &HPolytope, limits: EnumerationLimits) -> Result<Vec<Face>> {
    let (n, d) = (p.num_constraints(), p.dim());
    if n > limits.max_constraints || d > limits.max_dim {
        return Err(Error::CapExceeded(format!(
            "face enumeration is limited to n <= {} and d <= {} (got n = {n}, d = {d})",
            limits.max_constraints, limits.max_dim
        )));
    }
    require_pointed(p)?;
    let root = face_witness(p, &[]).ok_or(Error::Infeasible)?;

    let mut seen: HashSet<Vec<usize>> = HashSet::from([root.closed.clone()]);
    let mut tried: HashSet<Vec<usize>> = HashSet::new();
    let mut found = vec![root.clone()];
    let mut frontier = vec![root];
    let mut evaluated = 0usize;

    while !frontier.is_empty() {
        let mut candidates = Vec::new();
        for face in &frontier {
            for j in 0..n {
                if face.closed.binary_search(&j).is_ok() {
                    continue;
                }
                let mut cand = face.closed.clone();
                cand.insert(cand.partition_point(|&i| i < j), j);
                if tried.insert(cand.clone()) {
                    candidates.push(cand);
                }
            }
        }
        evaluated += candidates.len();
        if let Some(cap) = limits.max_candidates {
            if evaluated > cap {
                return Err(Error::CapExceeded(format!("more than {cap} candidate tight sets")));
            }
        }
        let mut next: Vec<_> = candidates.par_iter().filter_map(|cand| face_witness(p, cand)).collect();
        next.sort_by(|a, b| a.closed.cmp(&b.closed));
        next.retain(|w| seen.insert(w.closed.clone()));
        found.extend(next.iter().cloned());
        frontier = next;
    }

    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|w| Face {
            dim: d - rank_of(p, w.closed.iter().copied()),
            tight_set: w.closed,
            witness: w.point,
            vertex_ids: Vec::new(),
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.tight_set).cmp(&(b.dim, &b.tight_set)));

    let mut vertices: Vec<(RatVector, Vec<usize>)> =
        faces.iter().filter(|f| f.dim == 0).map(|f| (f.witness.clone(), f.tight_set.clone())).collect();
    vertices.sort();
    for face in &mut faces {
        face.vertex_ids = vertices
            .iter()
            .enumerate()
            .filter(|(_, (_, tight))| is_subset(&face.tight_set, tight))
            .map(|(i, _)| i)
            .collect();
    }
    Ok(faces)
}

fn is_subset(small: &[usize], large: &[usize]) -> bool {
    small.iter().all(|x| large.binary_search(x).is_ok())
}

pub fn f_vector_of(faces: &[Face], d: usize) -> FVector {
    let mut counts = vec![0i128; d + 1];
    for f in faces {
        counts[f.dim] += 1;
    }
    FVector(counts)
}

pub fn f_vector(p: &HPolytope) -> Result<FVector> {
    f_vector_with(p, EnumerationLimits::default())
}

pub fn f_vector_with(p: &HPolytope, limits: EnumerationLimits) -> Result<FVector> {
    Ok(f_vector_of(&face_lattice(p, limits)?, p.dim()))
}

/// Number of unordered facet pairs meeting in a `(d-2)`-face.
pub fn facet_adjacency_count(p: &HPolytope) -> Result<usize> {
    require_bounded(p)?;
    let redundant = p.redundant_constraints()?;
    if !redundant.is_empty() {
        return Err(Error::Redundant(redundant));
    }
    let d = p.dim();
    Ok((0..p.num_constraints())
        .tuple_combinations()
        .collect::<Vec<(usize, usize)>>()
        .par_iter()
        .filter(|&&(i, j)| match face_witness(p, &[i, j]) {
            Some(w) => d >= 2 && rank_of(p, w.closed.iter().copied()) == 2,
            None => false,
        })
        .count())
}

/// Vertices and edges of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGraph {
    pub vertices: Vec<RatVector>,
    pub tight_sets: Vec<Vec<usize>>,
    /// Pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl EdgeGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Two vertices span an edge iff the constraints tight at both have rank
/// `d - 1`. That common tight set is closed, so its rank fixes the dimension of
/// the smallest face containing both.
pub fn edge_graph(p: &HPolytope) -> Result<EdgeGraph> {
    require_bounded(p)?;
    let d = p.dim();
    let (vertices, tight_sets): (Vec<_>, Vec<_>) = enumerate_vertices(p)?.into_iter().unzip();
    let tight_ref = &tight_sets;
    let mut edges: Vec<(usize, usize)> = (0..vertices.len())
        .tuple_combinations()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|&(u, v)| {
            let common = tight_ref[u].iter().copied().filter(|i| tight_ref[v].binary_search(i).is_ok());
            rank_of(p, common) + 1 == d
        })
        .collect();
    edges.sort_unstable();
    Ok(EdgeGraph { vertices, tight_sets, edges })
}

/// True iff every vertex is tight on exactly `d` constraints.
pub fn is_simple(p: &HPolytope) -> Result<bool> {
    require_bounded(p)?;
    Ok(enumerate_vertices(p)?.iter().all(|(_, tight)| tight.len() == p.dim()))
}
