//! Exact rational scalars, dense vectors and matrices, and the small amount of
//! linear algebra the enumerators need (square solves and rank).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `p`, `-p` or `p/q` with `q > 0`. Anything else (decimals, explicit
/// `+` signs, zero or negative denominators) is rejected.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
        let digits = match s.strip_prefix('-') {
            Some(rest) if allow_sign => rest,
            Some(_) => return None,
            None => s,
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }

    let bad = || format!("malformed rational {token:?}");
    match token.split_once('/') {
        None => parse_int(token, true).map(Rational::from_integer).ok_or_else(bad),
        Some((p, q)) => {
            let p = parse_int(p, true).ok_or_else(bad)?;
            let q = parse_int(q, false).ok_or_else(bad)?;
            if q.is_zero() {
                return Err(format!("zero denominator in {token:?}"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Dense vector of rationals. The length is fixed at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self(entries)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![Rational::zero(); len])
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&v| int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.0.get(i)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        dot(&self.0, other)
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

impl Index<usize> for RatVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RatVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Dense row-major matrix of rationals with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidArgument(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Self { rows: nrows, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Rational> {
        (r < self.rows && c < self.cols).then(|| &self.data[r * self.cols + c])
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        assert!(r < self.rows, "row {r} out of bounds for {} rows", self.rows);
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &RatVector) -> RatVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        RatVector::new((0..self.rows).map(|r| dot(self.row(r), v.as_slice())).collect())
    }

    pub fn rank(&self) -> usize {
        let rows = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rank_of_rows(rows, self.cols)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        self.get(r, c).unwrap_or_else(|| panic!("index ({r}, {c}) out of bounds for {}x{}", self.rows, self.cols))
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Rank by Gaussian elimination on a scratch copy.
pub(crate) fn rank_of_rows(mut rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &prow[col];
            for c in col..cols {
                if !prow[c].is_zero() {
                    let delta = &factor * &prow[c];
                    row[c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Solves `m x = rhs` for square `m`. Returns `None` when `m` is singular.
pub fn solve_linear_system(m: &RatMatrix, rhs: &RatVector) -> Option<RatVector> {
    assert_eq!(m.rows(), m.cols(), "solve_linear_system needs a square matrix");
    assert_eq!(m.rows(), rhs.len(), "right-hand side has the wrong length");
    let rows: Vec<&[Rational]> = (0..m.rows()).map(|r| m.row(r)).collect();
    solve_square(&rows, rhs.as_slice()).map(RatVector::new)
}

pub(crate) fn solve_square(rows: &[&[Rational]], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.to_vec();
            r.push(b.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col][col..].iter_mut().filter(|x| !x.is_zero()) {
            *x *= &inv;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Dimension of the affine hull of `points`; `0` for a single point.
pub fn affine_rank(points: &[RatVector]) -> Result<usize> {
    let first = points.first().ok_or_else(|| Error::InvalidArgument("affine_rank of an empty point list".into()))?;
    let dim = first.len();
    if let Some(bad) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::InvalidArgument(format!("point of dimension {} mixed with dimension {dim}", bad.len())));
    }
    let diffs = points[1..].iter().map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect()).collect();
    Ok(rank_of_rows(diffs, dim))
}
