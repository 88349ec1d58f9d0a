//! H-representation data model, the plain-text file format, redundancy
//! detection and the LI(2) structural profile.
//!
//! File format: UTF-8, whitespace separated. Lines whose first non-blank
//! character is `#` are comments. The first data line is `n d`; it is followed
//! by exactly `n` rows of `d + 1` rationals (coefficients, then right-hand
//! side) meaning `coeffs · x <= rhs`. Two comment forms carry metadata:
//! `# family: pstar n=12 d=6` and `# label: 3 some text`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::arith::{parse_rational, RatVector, Rational};
use crate::error::{Error, Result};
use crate::geometry;
use crate::lp::{LinearProgram, LpOutcome};

/// One inequality `coeffs · x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    coeffs: RatVector,
    rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: RatVector, rhs: Rational) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("constraint has an all-zero coefficient vector".into()));
        }
        Ok(Self { coeffs, rhs })
    }

    pub fn coeffs(&self) -> &RatVector {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `rhs - coeffs · x`
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.rhs - self.coeffs.dot(x)
    }

    pub fn nonzero_vars(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, _)| i).collect()
    }
}

/// The families this crate knows how to build. Carried in `# family:` comments
/// so formula-based counts can be looked up for a file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Polygon { m: usize },
    Pstar { n: usize, d: usize },
    DualCyclic { n: usize, d: usize },
    Prism3 { n: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Polygon { m } => write!(f, "polygon n={m}"),
            Family::Pstar { n, d } => write!(f, "pstar n={n} d={d}"),
            Family::DualCyclic { n, d } => write!(f, "dualcyclic n={n} d={d}"),
            Family::Prism3 { n } => write!(f, "prism3 n={n}"),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut words = s.split_whitespace();
        let name = words.next().ok_or("empty family tag")?;
        let mut n = None;
        let mut d = None;
        for w in words {
            let (key, value) = w.split_once('=').ok_or_else(|| format!("bad family field {w:?}"))?;
            let value: usize = value.parse().map_err(|_| format!("bad number in {w:?}"))?;
            match key {
                "n" => n = Some(value),
                "d" => d = Some(value),
                _ => return Err(format!("unknown family field {key:?}")),
            }
        }
        let need = |v: Option<usize>, k: &str| v.ok_or_else(|| format!("family {name} needs {k}="));
        Ok(match name {
            "polygon" => Family::Polygon { m: need(n, "n")? },
            "pstar" => Family::Pstar { n: need(n, "n")?, d: need(d, "d")? },
            "dualcyclic" => Family::DualCyclic { n: need(n, "n")?, d: need(d, "d")? },
            "prism3" => Family::Prism3 { n: need(n, "n")? },
            other => return Err(format!("unknown family {other:?}")),
        })
    }
}

/// `{x in R^d : A x <= b}` with the rows kept in their given order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    constraints: Vec<Constraint>,
    labels: Vec<Option<String>>,
    family: Option<Family>,
}

impl HPolytope {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if let Some((i, c)) = constraints.iter().enumerate().find(|(_, c)| c.dim() != dim) {
            return Err(Error::InvalidArgument(format!(
                "constraint {i} has {} coefficients in dimension {dim}",
                c.dim()
            )));
        }
        let labels = vec![None; constraints.len()];
        Ok(Self { dim, constraints, labels, family: None })
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    pub fn with_label(mut self, index: usize, label: impl Into<String>) -> Self {
        self.labels[index] = Some(label.into());
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constraint(&self, i: usize) -> &Constraint {
        &self.constraints[i]
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels[i].as_deref()
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// A copy with row `i` of the result equal to row `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.constraints.len());
        Self {
            dim: self.dim,
            constraints: order.iter().map(|&i| self.constraints[i].clone()).collect(),
            labels: order.iter().map(|&i| self.labels[i].clone()).collect(),
            family: self.family,
        }
    }

    /// Embeds into `R^new_dim` by appending zero coefficients.
    pub fn lift(&self, new_dim: usize) -> Self {
        assert!(new_dim >= self.dim);
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = c.coeffs.as_slice().to_vec();
                coeffs.resize(new_dim, Rational::zero());
                Constraint { coeffs: RatVector::new(coeffs), rhs: c.rhs.clone() }
            })
            .collect();
        Self { dim: new_dim, constraints, labels: self.labels.clone(), family: None }
    }

    pub fn push(&mut self, constraint: Constraint) -> Result<()> {
        if constraint.dim() != self.dim {
            return Err(Error::InvalidArgument("constraint dimension mismatch".into()));
        }
        self.constraints.push(constraint);
        self.labels.push(None);
        Ok(())
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| !c.slack(x).is_negative())
    }

    /// Indices of constraints tight at `x`.
    pub fn tight_at(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.constraints.len()).filter(|&i| self.constraints[i].slack(x).is_zero()).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_hrep(text)
    }

    pub fn to_hrep(&self) -> String {
        serialize_hrep(self)
    }

    pub fn li2_profile(&self) -> Li2Profile {
        li2_profile(self)
    }

    pub fn redundant_constraints(&self) -> Result<Vec<usize>> {
        redundant_constraints(self)
    }
}

pub fn parse_hrep(text: &str) -> Result<HPolytope> {
    let err = |line: usize, message: String| Error::Parse { line, message };

    let mut family = None;
    let mut labels: Vec<(usize, usize, String)> = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<Constraint> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(tag) = comment.strip_prefix("family:") {
                family = Some(tag.trim().parse::<Family>().map_err(|m| err(line_no, m))?);
            } else if let Some(rest) = comment.strip_prefix("label:") {
                let rest = rest.trim();
                let (index, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let index = index.parse().map_err(|_| err(line_no, format!("bad label index {index:?}")))?;
                labels.push((line_no, index, text.trim().to_string()));
            }
            continue;
        }

        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((n, d)) = header else {
            let parse_pos = |t: &str| t.parse::<usize>().ok().filter(|&v| v > 0);
            match tokens.as_slice() {
                [n, d] => match (parse_pos(n), parse_pos(d)) {
                    (Some(n), Some(d)) => header = Some((n, d)),
                    _ => return Err(err(line_no, "header must be two positive integers `n d`".into())),
                },
                _ => return Err(err(line_no, "missing `n d` header".into())),
            }
            continue;
        };
        if rows.len() == n {
            return Err(err(line_no, format!("trailing data after {n} constraint rows")));
        }
        if tokens.len() != d + 1 {
            return Err(err(
                line_no,
                format!("expected {} entries ({d} coefficients and a right-hand side), found {}", d + 1, tokens.len()),
            ));
        }
        let values = tokens
            .iter()
            .map(|t| parse_rational(t))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|m| err(line_no, m))?;
        let (coeffs, rhs) = values.split_at(d);
        let c = Constraint::new(RatVector::new(coeffs.to_vec()), rhs[0].clone())
            .map_err(|e| err(line_no, e.to_string()))?;
        rows.push(c);
    }

    let Some((n, d)) = header else {
        return Err(err(last_line.max(1), "missing `n d` header".into()));
    };
    if rows.len() != n {
        return Err(err(last_line.max(1), format!("expected {n} constraint rows, found {}", rows.len())));
    }
    let mut poly = HPolytope::new(d, rows)?;
    for (line_no, index, text) in labels {
        if index >= n {
            return Err(err(line_no, format!("label index {index} out of range")));
        }
        poly.labels[index] = Some(text);
    }
    poly.family = family;
    Ok(poly)
}

pub fn serialize_hrep(p: &HPolytope) -> String {
    use std::fmt::Write;

    let mut out = String::new();
    if let Some(family) = p.family {
        writeln!(out, "# family: {family}").unwrap();
    }
    for (i, label) in p.labels.iter().enumerate() {
        if let Some(label) = label {
            writeln!(out, "# label: {i} {label}").unwrap();
        }
    }
    writeln!(out, "{} {}", p.num_constraints(), p.dim).unwrap();
    for c in &p.constraints {
        let mut first = true;
        for x in c.coeffs.iter().chain(std::iter::once(&c.rhs)) {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// How the rows of a system distribute over variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Li2Profile {
    pub is_li2: bool,
    /// Rows with exactly two nonzero coefficients.
    pub n_prime: usize,
    /// `n_ij` for each unordered variable pair `(i, j)`, `i < j`.
    pub pair_counts: BTreeMap<(usize, usize), usize>,
    pub single_var_count: usize,
    /// Rows with more than two nonzero coefficients.
    pub dense_count: usize,
}

pub fn li2_profile(p: &HPolytope) -> Li2Profile {
    let mut pair_counts = BTreeMap::new();
    let mut single_var_count = 0;
    let mut dense_count = 0;
    for c in &p.constraints {
        match c.nonzero_vars().as_slice() {
            [_] => single_var_count += 1,
            [i, j] => *pair_counts.entry((*i, *j)).or_insert(0) += 1,
            _ => dense_count += 1,
        }
    }
    Li2Profile {
        is_li2: dense_count == 0,
        n_prime: pair_counts.values().sum(),
        pair_counts,
        single_var_count,
        dense_count,
    }
}

/// Constraints whose removal leaves the solution set unchanged.
///
/// Rows are tested from the highest index down against the rows still kept, so
/// of two identical rows the lower index survives.
pub fn redundant_constraints(p: &HPolytope) -> Result<Vec<usize>> {
    if !geometry::is_feasible(p) {
        return Err(Error::Infeasible);
    }
    if !geometry::is_bounded(p) {
        return Err(Error::Unbounded);
    }
    let n = p.num_constraints();
    let mut kept = vec![true; n];
    for i in (0..n).rev() {
        let target = &p.constraints[i];
        let mut lp = LinearProgram::new(p.dim).maximize(target.coeffs.as_slice().to_vec());
        for (j, c) in p.constraints.iter().enumerate() {
            if j != i && kept[j] {
                lp.add_le(c.coeffs.as_slice().to_vec(), c.rhs.clone());
            }
        }
        let redundant = match lp.solve() {
            LpOutcome::Optimal { value, .. } => value <= target.rhs,
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => unreachable!("a subsystem of a feasible system is feasible"),
        };
        if redundant {
            kept[i] = false;
        }
    }
    Ok((0..n).filter(|&i| !kept[i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    pub(crate) fn unit_square() -> HPolytope {
        HPolytope::parse("4 2\n1 0 1\n-1 0 0\n0 1 1\n0 -1 0\n").unwrap()
    }

    #[test]
    fn parses_small_system() {
        let p = HPolytope::parse("2 2\n1 0 1\n0 1 1").unwrap();
        assert_eq!((p.num_constraints(), p.dim()), (2, 2));
        assert_eq!(p.constraint(1).coeffs(), &RatVector::from_i64(&[0, 1]));
    }

    #[test]
    fn parses_fraction_entries() {
        let p = HPolytope::parse("# a comment\n1 1\n1/3 -2/6\n").unwrap();
        assert_eq!(p.constraint(0).coeffs()[0], rat(1, 3));
        assert_eq!(p.constraint(0).rhs(), &rat(-1, 3));
    }

    #[test]
    fn missing_rhs_reports_line() {
        let e = HPolytope::parse("# c\n2 2\n1 0 1\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e:?}");
    }

    #[test]
    fn other_parse_errors() {
        assert!(matches!(HPolytope::parse("1 0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(HPolytope::parse(""), Err(Error::Parse { .. })));
        assert!(matches!(HPolytope::parse("1 1\n1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(HPolytope::parse("1 1\n1 1\n1 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(HPolytope::parse("2 1\n1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(HPolytope::parse("1 1\n0 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn serializes_lowest_terms_without_unit_denominators() {
        let c = Constraint::new(RatVector::new(vec![rat(2, 4), int(3)]), rat(-6, 2)).unwrap();
        let p = HPolytope::new(2, vec![c]).unwrap();
        assert_eq!(p.to_hrep(), "1 2\n1/2 3 -3\n");
    }

    #[test]
    fn metadata_round_trips() {
        let p = unit_square().with_family(Family::Polygon { m: 4 }).with_label(2, "top edge");
        let q = HPolytope::parse(&p.to_hrep()).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.label(2), Some("top edge"));
    }

    #[test]
    fn family_tags() {
        for f in [
            Family::Pstar { n: 12, d: 6 },
            Family::DualCyclic { n: 8, d: 4 },
            Family::Prism3 { n: 8 },
            Family::Polygon { m: 5 },
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert!("cube n=3".parse::<Family>().is_err());
        assert!("pstar n=3".parse::<Family>().is_err());
    }

    #[test]
    fn redundancy_duplicate_keeps_lowest() {
        let mut p = unit_square();
        p.push(p.constraint(2).clone()).unwrap();
        assert_eq!(p.redundant_constraints().unwrap(), vec![4]);
    }

    #[test]
    fn redundancy_loose_bound() {
        let mut p = unit_square();
        p.push(Constraint::new(RatVector::from_i64(&[1, 0]), int(5)).unwrap()).unwrap();
        assert_eq!(p.redundant_constraints().unwrap(), vec![4]);
        assert!(unit_square().redundant_constraints().unwrap().is_empty());
    }

    #[test]
    fn redundancy_needs_bounded_feasible_input() {
        let half = HPolytope::parse("1 2\n-1 0 0\n").unwrap();
        assert_eq!(half.redundant_constraints(), Err(Error::Unbounded));
        let empty = HPolytope::parse("2 1\n1 0\n-1 -1\n").unwrap();
        assert_eq!(empty.redundant_constraints(), Err(Error::Infeasible));
    }

    #[test]
    fn profile_counts() {
        let p = HPolytope::parse("3 3\n1 1 0 1\n0 0 1 1\n1 1 1 1\n").unwrap();
        let prof = p.li2_profile();
        assert!(!prof.is_li2);
        assert_eq!((prof.n_prime, prof.single_var_count, prof.dense_count), (1, 1, 1));
        assert_eq!(prof.pair_counts.get(&(0, 1)), Some(&1));
    }
}
