//! Randomized round-trip and algebraic identities.

use li2poly::arith::{affine_rank, parse_rational, rat, solve_linear_system};
use li2poly::hvector::{f_from_h, h_from_f};
use li2poly::{Constraint, HPolytope, HVector, RatMatrix, RatVector, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn nonzero_row(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), d)
        .prop_filter("nonzero row", |r| r.iter().any(|x| *x != Rational::from_integer(0.into())))
}

fn system() -> impl Strategy<Value = HPolytope> {
    (1usize..=5).prop_flat_map(|d| {
        prop::collection::vec((nonzero_row(d), rational()), 1..=8).prop_map(move |rows| {
            let constraints = rows.into_iter().map(|(a, b)| Constraint::new(RatVector::new(a), b).unwrap()).collect();
            HPolytope::new(d, constraints).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn rationals_print_and_parse_back(x in rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn hrep_text_round_trips(p in system(), label in "[a-z][a-z ]{0,12}[a-z]") {
        let p = p.with_label(0, label);
        let text = p.to_hrep();
        let back = HPolytope::parse(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_hrep(), text);
    }

    #[test]
    fn h_and_f_transforms_are_inverse(h in prop::collection::vec(-1000i128..1000, 1..=10)) {
        let h = HVector(h);
        let f = f_from_h(&h).unwrap();
        prop_assert_eq!(h_from_f(&f).unwrap(), h);
    }

    #[test]
    fn solved_system_reproduces_rhs(
        (rows, x) in (1usize..=5).prop_flat_map(|d| {
            (prop::collection::vec(prop::collection::vec(rational(), d), d), prop::collection::vec(rational(), d))
        })
    ) {
        let d = x.len();
        let m = RatMatrix::from_rows(rows, d).unwrap();
        let x = RatVector::new(x);
        let rhs = m.mul_vec(&x);
        match solve_linear_system(&m, &rhs) {
            Some(y) => prop_assert_eq!(&m.mul_vec(&y), &rhs),
            None => prop_assert!(m.rank() < d),
        }
        if m.rank() == d {
            prop_assert_eq!(solve_linear_system(&m, &rhs), Some(x));
        }
    }

    #[test]
    fn affine_rank_ignores_translation_and_order(
        (points, shift) in (1usize..=4).prop_flat_map(|d| {
            (prop::collection::vec(prop::collection::vec(rational(), d), 1..=6), prop::collection::vec(rational(), d))
        })
    ) {
        let pts: Vec<RatVector> = points.iter().cloned().map(RatVector::new).collect();
        let moved: Vec<RatVector> = points
            .iter()
            .rev()
            .map(|p| RatVector::new(p.iter().zip(&shift).map(|(a, b)| a + b).collect()))
            .collect();
        let r = affine_rank(&pts).unwrap();
        prop_assert_eq!(affine_rank(&moved).unwrap(), r);
        prop_assert!(r < pts.len() && r <= shift.len());
    }
}
