//! Exact rational realizations of the polytopes studied here: convex polygons,
//! the product-of-polygons family `P*(n, d)`, the dual cyclic polytope
//! `c*(n, d)` and the prism over a polygon.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, RatVector, Rational};
use crate::error::{Error, Result};
use crate::model::{Constraint, Family, HPolytope};

/// A polygon placed on the coordinate pair `(first, second)` of an ambient
/// space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonSpec {
    pub m: usize,
    pub variable_pair: (usize, usize),
}

impl PolygonSpec {
    pub fn new(m: usize, variable_pair: (usize, usize)) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidArgument(format!("a polygon needs at least 3 sides, got {m}")));
        }
        if variable_pair.0 >= variable_pair.1 {
            return Err(Error::InvalidArgument("polygon variable pair must be increasing".into()));
        }
        Ok(Self { m, variable_pair })
    }

    /// The polygon's edge constraints in `R^ambient`, in cyclic order.
    pub fn constraints(&self, ambient: usize) -> Result<Vec<Constraint>> {
        let (i, j) = self.variable_pair;
        if j >= ambient {
            return Err(Error::InvalidArgument(format!("variable {j} outside dimension {ambient}")));
        }
        polygon_rows(self.m)
            .into_iter()
            .map(|(a, b, rhs)| {
                let mut coeffs = vec![Rational::zero(); ambient];
                coeffs[i] = a;
                coeffs[j] = b;
                Constraint::new(RatVector::new(coeffs), rhs)
            })
            .collect()
    }
}

/// Vertices of the `m`-gon in counterclockwise order: rational points of the
/// unit circle `((1 - t^2)/(1 + t^2), 2t/(1 + t^2))` for consecutive integers
/// `t`, followed by `(-1, 0)`.
pub fn polygon_vertices(m: usize) -> Vec<(Rational, Rational)> {
    let lo = -(((m - 1) / 2) as i64);
    let hi = (m - 1).div_ceil(2) as i64 - 1;
    let mut pts: Vec<(Rational, Rational)> = (lo..=hi)
        .map(|t| {
            let den = int(1 + t * t);
            (int(1 - t * t) / &den, int(2 * t) / den)
        })
        .collect();
    pts.push((int(-1), int(0)));
    debug_assert_eq!(pts.len(), m);
    pts
}

/// Edge rows `(a, b, rhs)` meaning `a x + b y <= rhs`, scaled to coprime
/// integers and oriented to contain the vertex centroid.
fn polygon_rows(m: usize) -> Vec<(Rational, Rational, Rational)> {
    let pts = polygon_vertices(m);
    let k = Rational::from_integer(BigInt::from(m));
    let cx = pts.iter().map(|p| &p.0).sum::<Rational>() / &k;
    let cy = pts.iter().map(|p| &p.1).sum::<Rational>() / &k;
    (0..m)
        .map(|e| {
            let (p, q) = (&pts[e], &pts[(e + 1) % m]);
            let mut a = &q.1 - &p.1;
            let mut b = &p.0 - &q.0;
            let mut rhs = &a * &p.0 + &b * &p.1;
            if &a * &cx + &b * &cy > rhs {
                a = -a;
                b = -b;
                rhs = -rhs;
            }
            let [a, b, rhs] = primitive_integer_row([a, b, rhs]);
            (a, b, rhs)
        })
        .collect()
}

/// Scales a row by a positive factor so its entries are coprime integers.
fn primitive_integer_row<const N: usize>(row: [Rational; N]) -> [Rational; N] {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd.abs() };
    let mut out = ints.into_iter().map(|x| Rational::from_integer(x / &gcd));
    std::array::from_fn(|_| out.next().unwrap())
}

pub fn convex_polygon(m: usize) -> Result<HPolytope> {
    let spec = PolygonSpec::new(m, (0, 1))?;
    Ok(HPolytope::new(2, spec.constraints(2)?)?.with_family(Family::Polygon { m }))
}

/// Checks the divisibility assumption for `P*(n, d)` and returns the number of
/// edges of each polygon.
pub fn pstar_polygon_size(n: usize, d: usize) -> Result<usize> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("P*(n,d) needs d >= 2, got d = {d}")));
    }
    let pairs = d / 2;
    let target = if d.is_multiple_of(2) { n } else { n.saturating_sub(1) };
    if target % pairs != 0 || target / pairs < 3 {
        return Err(Error::Divisibility { n, d, divisor: pairs, target });
    }
    Ok(target / pairs)
}

/// `P*(n, d)`: one `n/(d/2)`-gon on each coordinate pair `(x_{2i-1}, x_{2i})`.
/// For odd `d` this is `P*(n-1, d-1)` with a free last coordinate plus the
/// single row `x_d >= 0`, which is an unbounded pointed polyhedron.
pub fn pstar(n: usize, d: usize) -> Result<HPolytope> {
    let m = pstar_polygon_size(n, d)?;
    let mut rows = Vec::with_capacity(n);
    for pair in 0..d / 2 {
        rows.extend(PolygonSpec::new(m, (2 * pair, 2 * pair + 1))?.constraints(d)?);
    }
    if d % 2 == 1 {
        let mut coeffs = RatVector::zeros(d);
        coeffs[d - 1] = int(-1);
        rows.push(Constraint::new(coeffs, Rational::zero())?);
    }
    Ok(HPolytope::new(d, rows)?.with_family(Family::Pstar { n, d }))
}

/// Moment-curve point `(t, t^2, ..., t^d)`.
fn moment_point(t: i64, d: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(d);
    let mut power = BigInt::one();
    for _ in 0..d {
        power *= t;
        out.push(Rational::from_integer(power.clone()));
    }
    out
}

/// Polar of the cyclic polytope on `t = 1..n`, centred at the vertex centroid:
/// rows `(m(t_i) - c) · y <= 1`.
pub fn dual_cyclic(n: usize, d: usize) -> Result<HPolytope> {
    if d < 2 || n <= d {
        return Err(Error::InvalidArgument(format!("dual cyclic polytope needs n > d >= 2, got n = {n}, d = {d}")));
    }
    let points: Vec<Vec<Rational>> = (1..=n as i64).map(|t| moment_point(t, d)).collect();
    let k = Rational::from_integer(BigInt::from(n));
    let centroid: Vec<Rational> = (0..d).map(|c| points.iter().map(|p| &p[c]).sum::<Rational>() / &k).collect();
    let rows = points
        .into_iter()
        .map(|p| {
            let coeffs = p.into_iter().zip(&centroid).map(|(x, c)| x - c).collect();
            Constraint::new(RatVector::new(coeffs), Rational::one())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HPolytope::new(d, rows)?.with_family(Family::DualCyclic { n, d }))
}

/// `(n-2)`-gon on `(x_1, x_2)` times the segment `0 <= x_3 <= 1`.
pub fn prism3(n: usize) -> Result<HPolytope> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("prism3 needs n >= 5, got {n}")));
    }
    let mut rows = PolygonSpec::new(n - 2, (0, 1))?.constraints(3)?;
    rows.push(Constraint::new(RatVector::from_i64(&[0, 0, -1]), Rational::zero())?);
    rows.push(Constraint::new(RatVector::from_i64(&[0, 0, 1]), Rational::one())?);
    Ok(HPolytope::new(3, rows)?.with_family(Family::Prism3 { n }))
}

/// Rebuilds the polytope a family tag names.
pub fn build(family: Family) -> Result<HPolytope> {
    match family {
        Family::Polygon { m } => convex_polygon(m),
        Family::Pstar { n, d } => pstar(n, d),
        Family::DualCyclic { n, d } => dual_cyclic(n, d),
        Family::Prism3 { n } => prism3(n),
    }
}
