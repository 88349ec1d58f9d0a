//! LP-backed predicates on H-polyhedra: feasibility, boundedness, pointedness
//! and relative-interior witnesses for faces.

use num_traits::{One, Signed, Zero};

use crate::arith::{rank_of_rows, RatVector, Rational};
use crate::lp::{LinearProgram, LpOutcome};
use crate::model::HPolytope;

pub fn is_feasible(p: &HPolytope) -> bool {
    let mut lp = LinearProgram::new(p.dim());
    for c in p.constraints() {
        lp.add_le(c.coeffs().as_slice().to_vec(), c.rhs().clone());
    }
    !matches!(lp.solve(), LpOutcome::Infeasible)
}

/// True iff the coefficient matrix has full column rank, i.e. the lineality
/// space is trivial.
pub fn is_pointed(p: &HPolytope) -> bool {
    rank_of(p, 0..p.num_constraints()) == p.dim()
}

pub(crate) fn rank_of(p: &HPolytope, rows: impl IntoIterator<Item = usize>) -> usize {
    let rows = rows.into_iter().map(|i| p.constraint(i).coeffs().as_slice().to_vec()).collect();
    rank_of_rows(rows, p.dim())
}

/// True iff the recession cone `{y : A y <= 0}` is `{0}`. Decided by `2d` LPs
/// over the cone intersected with the box `[-1, 1]^d`.
pub fn is_bounded(p: &HPolytope) -> bool {
    let d = p.dim();
    let mut base = LinearProgram::new(d);
    for c in p.constraints() {
        base.add_le(c.coeffs().as_slice().to_vec(), Rational::zero());
    }
    for i in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[i] = Rational::one();
        base.add_le(e.clone(), Rational::one());
        e[i] = -Rational::one();
        base.add_le(e, Rational::one());
    }
    (0..d).all(|i| {
        [Rational::one(), -Rational::one()].into_iter().all(|sign| {
            let mut objective = vec![Rational::zero(); d];
            objective[i] = sign;
            match base.clone().maximize(objective).solve() {
                LpOutcome::Optimal { value, .. } => value.is_zero(),
                _ => unreachable!("the boxed recession cone is a nonempty polytope"),
            }
        })
    })
}

/// A nonempty face `{x in P : a_i x = b_i for i in tight}` described by its
/// closed tight set and a point in its relative interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceWitness {
    /// Every constraint that holds with equality on the whole face, sorted.
    pub closed: Vec<usize>,
    /// Satisfies exactly the constraints in `closed` with equality.
    pub point: RatVector,
}

/// Builds the LP `max t` over the face, with `a_j x + t <= b_j` for every
/// `j` in `strict` and `t <= 1`. Variable `d` is `t`.
fn slack_lp(p: &HPolytope, equal: &[bool], strict: &[usize]) -> LinearProgram {
    let d = p.dim();
    let mut objective = vec![Rational::zero(); d + 1];
    objective[d] = Rational::one();
    let mut lp = LinearProgram::new(d + 1).maximize(objective);
    for (i, c) in p.constraints().iter().enumerate() {
        let mut row = c.coeffs().as_slice().to_vec();
        row.push(Rational::zero());
        if equal[i] {
            lp.add_eq(row, c.rhs().clone());
        } else {
            if strict.contains(&i) {
                row[d] = Rational::one();
            }
            lp.add_le(row, c.rhs().clone());
        }
    }
    let mut cap = vec![Rational::zero(); d + 1];
    cap[d] = Rational::one();
    lp.add_le(cap, Rational::one());
    lp
}

fn solve_slack(lp: &LinearProgram) -> Option<(Rational, Vec<Rational>)> {
    match lp.solve() {
        LpOutcome::Optimal { value, mut point } => {
            point.pop();
            Some((value, point))
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("slack variable is capped"),
    }
}

/// Closure and relative-interior witness of the face cut out by `tight`, or
/// `None` if that face is empty.
pub fn face_witness(p: &HPolytope, tight: &[usize]) -> Option<FaceWitness> {
    let n = p.num_constraints();
    let mut equal = vec![false; n];
    for &i in tight {
        equal[i] = true;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| !equal[i]).collect();

    // `t` is free, so the LP is feasible whenever the equalities are; a
    // negative optimum means the face is empty.
    let (best, point) = solve_slack(&slack_lp(p, &equal, &rest))?;
    if best.is_negative() {
        return None;
    }
    if best.is_positive() || rest.is_empty() {
        return Some(FaceWitness { closed: tight_sorted(&equal), point: RatVector::new(point) });
    }

    // Some constraint outside `tight` is implied to hold with equality. Test
    // each one separately and average the witnesses of the ones that can be
    // made strict.
    let mut witnesses = Vec::new();
    for &j in &rest {
        let (s, x) = solve_slack(&slack_lp(p, &equal, &[j])).expect("face is nonempty");
        if s.is_positive() {
            witnesses.push(x);
        }
    }
    for &j in &rest {
        let strict = witnesses.iter().any(|x| p.constraint(j).slack(x).is_positive());
        if !strict {
            equal[j] = true;
        }
    }
    let point = if witnesses.is_empty() {
        point
    } else {
        let k = Rational::from_integer(witnesses.len().into());
        (0..p.dim()).map(|c| witnesses.iter().map(|x| &x[c]).sum::<Rational>() / &k).collect()
    };
    Some(FaceWitness { closed: tight_sorted(&equal), point: RatVector::new(point) })
}

fn tight_sorted(equal: &[bool]) -> Vec<usize> {
    equal.iter().enumerate().filter(|(_, &e)| e).map(|(i, _)| i).collect()
}

/// A point of the face cut out by `tight` that is strict on every constraint
/// not implied to be tight there; `None` if the face is empty.
pub fn relative_interior_point(p: &HPolytope, tight: &[usize]) -> Option<RatVector> {
    face_witness(p, tight).map(|w| w.point)
}
