//! Closed-form face counts and bounds, evaluated exactly.
//!
//! Binomials with out-of-range arguments are zero, so every sum below can be
//! written over its nominal range and truncates itself. Counts are `i128` with
//! checked arithmetic; bounds with fractional parts are [`Rational`].

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rational};
use crate::constructors::pstar_polygon_size;
use crate::error::{Error, Result};
use crate::faces::FVector;

/// `C(a, b)`, zero unless `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> Result<i128> {
    if b < 0 || b > a {
        return Ok(0);
    }
    let b = b.min(a - b);
    let mut acc: i128 = 1;
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul((a - i) as i128).ok_or(Error::Overflow("binomial"))? / (i as i128 + 1);
    }
    Ok(acc)
}

fn rational(x: i128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn ceil_half(d: usize) -> usize {
    d.div_ceil(2)
}

fn check_dual_cyclic_range(n: usize, d: usize, k: usize) -> Result<()> {
    if d < 1 || d >= n || k > d {
        return Err(Error::InvalidArgument(format!(
            "dual cyclic counts need 0 <= k <= d < n, got n = {n}, d = {d}, k = {k}"
        )));
    }
    Ok(())
}

/// Number of `k`-faces of the dual cyclic polytope `c*(n, d)`:
///
/// `sum_{r=min(k,ceil(d/2))}^{ceil(d/2)-1} C(n-d-1+r, r) C(r, k)
///  + sum_{r=max(k,ceil(d/2))}^{d} C(n-r-1, d-r) C(r, k)`
pub fn fk_dual_cyclic(n: usize, d: usize, k: usize) -> Result<i128> {
    check_dual_cyclic_range(n, d, k)?;
    let (n, d, k) = (n as i64, d as i64, k as i64);
    let half = ceil_half(d as usize) as i64;
    let mut total: i128 = 0;
    for r in k.min(half)..half {
        total += binomial(n - d - 1 + r, r)? * binomial(r, k)?;
    }
    for r in k.max(half)..=d {
        total += binomial(n - r - 1, d - r)? * binomial(r, k)?;
    }
    if k >= half {
        assert_eq!(total, binomial(n, d - k)?, "two-sum formula disagrees with C(n, d-k)");
    }
    Ok(total)
}

/// `C(n - ceil(d/2), n - d) + C(n - floor(d/2) - 1, n - d)`
pub fn f0_dual_cyclic(n: usize, d: usize) -> Result<i128> {
    check_dual_cyclic_range(n, d, 0)?;
    let (n, d) = (n as i64, d as i64);
    Ok(binomial(n - (d + 1) / 2, n - d)? + binomial(n - d / 2 - 1, n - d)?)
}

pub fn f_vector_dual_cyclic(n: usize, d: usize) -> Result<FVector> {
    (0..=d).map(|k| fk_dual_cyclic(n, d, k)).collect::<Result<_>>().map(FVector)
}

fn checked_pow(base: usize, exp: usize) -> Result<i128> {
    (base as i128).checked_pow(exp as u32).ok_or(Error::Overflow("power"))
}

/// Number of `k`-faces of `P*(n, d)`.
///
/// Even `d`: `sum_r C(d/2, r) C(d/2 - r, d - k - 2r) (n/(d/2))^(d-k-r)` for
/// `r` from `max(0, d/2 - k)` to `d/2 - floor(k/2)`, where `r` counts the
/// polygons contributing two consecutive edges. Odd `d` with `0 < k < d`:
/// `f_{k-1} + f_k` of `P*(n-1, d-1)`; `f_0` is the base vertex count and
/// `f_d = 1`. Odd-`d` counts include the unbounded faces.
pub fn fk_pstar(n: usize, d: usize, k: usize) -> Result<i128> {
    let m = pstar_polygon_size(n, d)?;
    if k > d {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds d = {d}")));
    }
    if d % 2 == 1 {
        return match k {
            0 => fk_pstar(n - 1, d - 1, 0),
            k if k == d => Ok(1),
            k => Ok(fk_pstar(n - 1, d - 1, k - 1)? + fk_pstar(n - 1, d - 1, k)?),
        };
    }
    let half = d / 2;
    let lo = half.saturating_sub(k);
    let hi = half - k / 2;
    let mut total: i128 = 0;
    for r in lo..=hi {
        let Some(rest) = (d - k).checked_sub(2 * r) else { continue };
        let term = binomial(half as i64, r as i64)?
            .checked_mul(binomial((half - r) as i64, rest as i64)?)
            .and_then(|t| t.checked_mul(checked_pow(m, d - k - r).ok()?))
            .ok_or(Error::Overflow("fk_pstar"))?;
        total += term;
    }
    Ok(total)
}

pub fn f_vector_pstar(n: usize, d: usize) -> Result<FVector> {
    (0..=d).map(|k| fk_pstar(n, d, k)).collect::<Result<_>>().map(FVector)
}

/// Prism over an `(n-2)`-gon: `(2n - 4, 3n - 6, n, 1)`.
pub fn f_vector_prism3(n: usize) -> Result<FVector> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("prism3 needs n >= 5, got {n}")));
    }
    let n = n as i128;
    Ok(FVector(vec![2 * n - 4, 3 * n - 6, n, 1]))
}

/// Table entries `(P*(n, d), c*(n, d))` for the dominant term of `f_k` when
/// `d` is small against `n`.
pub fn leading_terms(n: usize, d: usize, k: usize) -> Result<(Rational, Rational)> {
    if d < 2 || k > d || n <= d {
        return Err(Error::InvalidArgument(format!(
            "leading terms need 2 <= d < n and k <= d, got n = {n}, d = {d}, k = {k}"
        )));
    }
    let (ni, di, ki) = (n as i64, d as i64, k as i64);
    let lo = di / 2;
    let hi = (di + 1) / 2;
    let b = |a: i64, c: i64| binomial(a, c).map(rational);
    let ratio_pow = |num: i64, den: i64, exp: i64| -> Rational { num_traits::pow(rat(num, den), exp as usize) };
    if d.is_multiple_of(2) {
        let base = ratio_pow(ni, lo, lo);
        if ki <= lo {
            Ok((b(lo, ki)? * base, b(lo, ki)? * b(ni - lo - 1, lo)?))
        } else {
            Ok((b(lo, di - ki)? * ratio_pow(ni, lo, di - ki), b(ni - ki - 1, di - ki)?))
        }
    } else if ki <= lo {
        let p = (b(lo, ki)? + b(lo, ki + 1)?) * ratio_pow(ni - 1, lo, lo);
        Ok((p, b(hi, ki)? * b(ni - hi - 1, lo)?))
    } else {
        Ok((b(lo, di - ki)? * ratio_pow(ni - 1, lo, di - ki), b(ni - ki - 1, di - ki)?))
    }
}

/// `C(n, 2) - C(n', 2) / C(d, 2) + n'`, an upper bound on the number of
/// adjacent facet pairs of an LI(2) polytope with `n` nonredundant rows of
/// which `n'` have two variables.
pub fn adjacency_bound(n: usize, n_prime: usize, d: usize) -> Result<Rational> {
    if d < 4 {
        return Err(Error::InvalidArgument(format!("the adjacency bound needs d >= 4, got {d}")));
    }
    if n_prime > n {
        return Err(Error::InvalidArgument(format!("n' = {n_prime} exceeds n = {n}")));
    }
    let (n, np, d) = (n as i64, n_prime as i64, d as i64);
    Ok(rational(binomial(n, 2)?) - rational(binomial(np, 2)?) / rational(binomial(d, 2)?) + rational(np as i128))
}

/// Both readings of the strengthened per-dimension bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDeficitBound {
    pub k: usize,
    pub fk_dual_cyclic: i128,
    /// `C(n', 2)/C(d, 2) - n'`, the deficit carried through the h-vector chain.
    pub deficit: Rational,
    /// `f_k(c*) - C(d-2, k) * deficit`
    pub bound: Rational,
    /// `f_k(c*) - C(d-2, k) * (C(n', 2)/C(d, 2) + n')`, the displayed form.
    pub literal_bound: Rational,
    /// The deficit is not positive, so the bound says nothing beyond `f_k(c*)`.
    pub vacuous: bool,
}

pub fn face_deficit_bound(n: usize, n_prime: usize, d: usize, k: usize) -> Result<FaceDeficitBound> {
    if d < 4 || k + 2 > d || n_prime > n || n <= d {
        return Err(Error::InvalidArgument(format!(
            "the strengthened bound needs d >= 4, k <= d - 2, n' <= n and n > d (got n = {n}, n' = {n_prime}, d = {d}, k = {k})"
        )));
    }
    let fk = fk_dual_cyclic(n, d, k)?;
    let np = n_prime as i64;
    let share = rational(binomial(np, 2)?) / rational(binomial(d as i64, 2)?);
    let deficit = &share - rational(np as i128);
    let weight = rational(binomial(d as i64 - 2, k as i64)?);
    let bound = rational(fk) - &weight * &deficit;
    let literal_bound = rational(fk) - &weight * (share + rational(np as i128));
    let vacuous = deficit <= Rational::zero();
    Ok(FaceDeficitBound { k, fk_dual_cyclic: fk, deficit, bound, literal_bound, vacuous })
}

/// A closed-form bound compared against an enumerated count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: String,
    #[serde(
        serialize_with = "crate::report::serialize_rational",
        deserialize_with = "crate::report::deserialize_rational"
    )]
    pub formula_value: Rational,
    pub oracle_value: Option<i128>,
    pub satisfied: bool,
}

impl BoundReport {
    /// `oracle <= bound`
    pub fn upper(quantity: impl Into<String>, formula_value: Rational, oracle_value: i128) -> Self {
        let satisfied = rational(oracle_value) <= formula_value;
        Self { quantity: quantity.into(), formula_value, oracle_value: Some(oracle_value), satisfied }
    }
}

/// `27183/10000`, a rational upper bound on `e`.
pub fn e_upper() -> Rational {
    rat(27183, 10000)
}

/// Growth factor envelope for `f_k(c*) / f_k(P*)`: `e^floor(d/2)` below
/// `ceil(d/2)`, `e^(d-k)` from there on, with `e` replaced by [`e_upper`].
pub fn exponential_threshold(d: usize, k: usize) -> Rational {
    let exp = if k < ceil_half(d) { d / 2 } else { d - k };
    num_traits::pow(e_upper(), exp)
}

pub const DEFAULT_RATIO_SLACK: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRow {
    pub n: usize,
    pub fk_dual_cyclic: i128,
    pub fk_pstar: i128,
    pub ratio: Rational,
    pub threshold: Rational,
    /// `ratio / threshold`, the part the exponential envelope does not explain.
    pub residue: Rational,
    pub within_threshold: bool,
    pub within_slack: bool,
}

pub fn ratio_report(d: usize, n_list: &[usize], k: usize, slack: i64) -> Result<Vec<RatioRow>> {
    let threshold = exponential_threshold(d, k);
    let slack = Rational::from_integer(BigInt::from(slack));
    n_list
        .iter()
        .map(|&n| {
            let fp = fk_pstar(n, d, k)?;
            let fc = fk_dual_cyclic(n, d, k)?;
            let ratio = rational(fc) / rational(fp);
            let residue = &ratio / &threshold;
            Ok(RatioRow {
                n,
                fk_dual_cyclic: fc,
                fk_pstar: fp,
                within_threshold: ratio <= threshold,
                within_slack: ratio <= &threshold * &slack,
                threshold: threshold.clone(),
                residue,
                ratio,
            })
        })
        .collect()
}

/// Counts `d`-subsets of `{1..n}` satisfying Gale's evenness condition: any
/// two non-members enclose an even number of members.
pub fn gale_evenness_facet_count(n: usize, d: usize) -> Result<u64> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgument(format!("Gale evenness needs n > d >= 1, got n = {n}, d = {d}")));
    }
    let count = (0..n)
        .combinations(d)
        .filter(|subset| {
            let mut member = vec![false; n];
            for &i in subset {
                member[i] = true;
            }
            let mut run: Option<usize> = None;
            for &m in &member {
                if m {
                    run = run.map(|r| r + 1);
                } else {
                    if run.is_some_and(|r| r % 2 == 1) {
                        return false;
                    }
                    run = Some(0);
                }
            }
            true
        })
        .count();
    Ok(count as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(5, -1).unwrap(), 0);
        assert_eq!(binomial(5, 6).unwrap(), 0);
        assert_eq!(binomial(-3, 1).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(60, 30).unwrap(), 118264581564861424);
    }

    #[test]
    fn dual_cyclic_examples() {
        assert_eq!(fk_dual_cyclic(8, 4, 0).unwrap(), 20);
        assert_eq!(fk_dual_cyclic(8, 4, 1).unwrap(), 40);
        assert_eq!(f_vector_dual_cyclic(6, 3).unwrap(), FVector(vec![8, 12, 6, 1]));
        for (n, d) in [(7, 3), (9, 5), (20, 6)] {
            assert_eq!(fk_dual_cyclic(n, d, d).unwrap(), 1);
            assert_eq!(fk_dual_cyclic(n, d, d - 1).unwrap(), n as i128);
            assert_eq!(fk_dual_cyclic(n, d, 0).unwrap(), f0_dual_cyclic(n, d).unwrap());
        }
        assert!(fk_dual_cyclic(4, 4, 0).is_err());
        assert!(fk_dual_cyclic(8, 4, 5).is_err());
    }

    #[test]
    fn pstar_examples() {
        assert_eq!(fk_pstar(12, 6, 4).unwrap(), 60);
        assert_eq!(fk_pstar(12, 6, 0).unwrap(), 64);
        assert_eq!(fk_pstar(12, 6, 1).unwrap(), 192);
        assert_eq!(fk_pstar(13, 7, 1).unwrap(), 256);
        assert_eq!(f_vector_pstar(12, 6).unwrap(), FVector(vec![64, 192, 240, 160, 60, 12, 1]));
        assert!(matches!(fk_pstar(10, 6, 0), Err(Error::Divisibility { .. })));
    }

    #[test]
    fn leading_term_examples() {
        assert_eq!(leading_terms(12, 6, 2).unwrap().0, rational(192));
        assert_eq!(leading_terms(12, 6, 5).unwrap().0, rational(12));
        for n in [8, 9, 20] {
            assert_eq!(leading_terms(n, 4, 3).unwrap().1, rational(n as i128 - 4));
        }
    }

    #[test]
    fn adjacency_bound_examples() {
        assert_eq!(adjacency_bound(12, 12, 6).unwrap(), rat(368, 5));
        assert_eq!(adjacency_bound(8, 6, 4).unwrap(), rat(63, 2));
        assert_eq!(adjacency_bound(15, 0, 5).unwrap(), rational(105));
        assert!(adjacency_bound(12, 12, 3).is_err());
    }

    #[test]
    fn face_deficit_examples() {
        let small = face_deficit_bound(12, 12, 6, 4).unwrap();
        assert_eq!(small.deficit, rat(66, 15) - rational(12));
        assert!(small.vacuous);
        assert!(small.bound > rational(small.fk_dual_cyclic));

        let big = face_deficit_bound(60, 60, 4, 2).unwrap();
        assert_eq!(big.deficit, rational(235));
        assert_eq!(big.bound, rational(fk_dual_cyclic(60, 4, 2).unwrap() - 235));
        assert!(!big.vacuous);

        let none = face_deficit_bound(20, 0, 6, 3).unwrap();
        assert_eq!(none.bound, rational(fk_dual_cyclic(20, 6, 3).unwrap()));
    }

    #[test]
    fn ratio_examples() {
        let rows = ratio_report(4, &[40], 0, DEFAULT_RATIO_SLACK).unwrap();
        assert_eq!(rows[0].ratio, rat(37, 20));
        assert_eq!((rows[0].fk_dual_cyclic, rows[0].fk_pstar), (740, 400));
        for row in ratio_report(2, &[5, 9, 17], 0, DEFAULT_RATIO_SLACK).unwrap() {
            assert!(row.ratio.is_one());
        }
        assert!(exponential_threshold(4, 0) < rat(739, 100));
    }

    #[test]
    fn gale_examples() {
        assert_eq!(gale_evenness_facet_count(8, 4).unwrap(), 20);
        assert_eq!(gale_evenness_facet_count(6, 3).unwrap(), 8);
        for d in 2..7 {
            assert_eq!(gale_evenness_facet_count(d + 1, d).unwrap(), d as u64 + 1);
        }
    }
}
