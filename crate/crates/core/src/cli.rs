//! The `li2poly` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error,
//! 3 input error. Machine output goes to stdout, messages to stderr.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::arith::Rational;
use crate::closed_forms::{self, DEFAULT_RATIO_SLACK};
use crate::constructors;
use crate::error::Error;
use crate::faces::{self, EnumerationLimits};
use crate::geometry;
use crate::hvector;
use crate::model::{Family, HPolytope};
use crate::report::{self, decimal, VerifyOptions, VerifyReport, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "li2poly", version, about = "Exact face counts for LI(2) polytopes and dual cyclic polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the H-representation of a family member.
    Construct {
        #[arg(value_enum)]
        family: FamilyKind,
        #[command(flatten)]
        size: Size,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the f-vector of an H-representation file.
    Fvector {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Enumerate)]
        method: Method,
        /// Cap on the number of candidate faces tested during enumeration.
        #[arg(long, value_name = "M")]
        max_subsets: Option<usize>,
    },
    /// Compute the h-vector of a simple polytope by counting indegrees.
    Hvector {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds to run, starting at --seed.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        repeat: u64,
    },
    /// Enumerate a family member and check it against every closed form.
    Verify {
        #[arg(value_enum)]
        family: FamilyKind,
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        json: bool,
        #[arg(long, value_name = "M")]
        max_subsets: Option<usize>,
        /// Leave wall-clock timing out of the output.
        #[arg(long)]
        no_timing: bool,
    },
    /// Report the LI(2) structure, feasibility, boundedness and redundant rows.
    Profile {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Closed-form tables.
    #[command(subcommand)]
    Report(ReportCommand),
}

#[derive(Subcommand, Debug)]
enum ReportCommand {
    /// Ratio f_k(c*(n,d)) / f_k(P*(n,d)) over a range of n.
    Ratio {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_start: usize,
        #[arg(long)]
        n_end: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long)]
        csv: bool,
        /// Add a decimal rendering of the ratio with this many places.
        #[arg(long, value_name = "PLACES")]
        decimal: Option<usize>,
        /// Factor allowed on top of the exponential envelope.
        #[arg(long, default_value_t = DEFAULT_RATIO_SLACK)]
        slack: i64,
    },
    /// Adjacency and per-dimension face bounds for given n, n' and d.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        n_prime: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Args, Debug)]
struct Size {
    /// Number of constraints (polygon: number of sides).
    #[arg(long)]
    n: usize,
    /// Dimension; implied for polygon and prism3.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyKind {
    Pstar,
    Dualcyclic,
    Prism3,
    Polygon,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Enumerate,
    Formula,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Construct { family, size, out } => construct(family, &size, out.as_deref()),
        Command::Fvector { input, method, max_subsets } => fvector(&input, method, max_subsets),
        Command::Hvector { input, seed, repeat } => hvector_cmd(&input, seed, repeat),
        Command::Verify { family, size, json, max_subsets, no_timing } => {
            verify(family, &size, json, max_subsets, no_timing)
        }
        Command::Profile { input } => profile(&input),
        Command::Report(ReportCommand::Ratio { d, k, n_start, n_end, step, csv, decimal, slack }) => {
            ratio(d, k, (n_start, n_end, step), csv, decimal, slack)
        }
        Command::Report(ReportCommand::Bounds { n, n_prime, d }) => bounds(n, n_prime, d),
    }
}

fn family_of(kind: FamilyKind, size: &Size) -> std::result::Result<Family, Failure> {
    let fixed = |dim: usize, name: &str| match size.d {
        Some(d) if d != dim => Err(Failure::Usage(format!("{name} is {dim}-dimensional, got --d {d}"))),
        _ => Ok(()),
    };
    let need_d = || size.d.ok_or_else(|| Failure::Usage("--d is required for this family".into()));
    Ok(match kind {
        FamilyKind::Pstar => Family::Pstar { n: size.n, d: need_d()? },
        FamilyKind::Dualcyclic => Family::DualCyclic { n: size.n, d: need_d()? },
        FamilyKind::Prism3 => {
            fixed(3, "prism3")?;
            Family::Prism3 { n: size.n }
        }
        FamilyKind::Polygon => {
            fixed(2, "polygon")?;
            Family::Polygon { m: size.n }
        }
    })
}

fn read_polytope(path: &Path) -> std::result::Result<HPolytope, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    HPolytope::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("report values serialize"));
}

fn limits(max_subsets: Option<usize>) -> EnumerationLimits {
    EnumerationLimits { max_candidates: max_subsets, ..EnumerationLimits::default() }
}

fn construct(kind: FamilyKind, size: &Size, out: Option<&Path>) -> Outcome {
    let p = constructors::build(family_of(kind, size)?)?;
    let text = p.to_hrep();
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn fvector(input: &Path, method: Method, max_subsets: Option<usize>) -> Outcome {
    let p = read_polytope(input)?;
    let f = match method {
        Method::Enumerate => faces::f_vector_with(&p, limits(max_subsets))?,
        Method::Formula => {
            let family = p.family().ok_or_else(|| {
                Failure::Input(format!("{}: the formula method needs a '# family:' comment", input.display()))
            })?;
            let (_, d) = report::family_dims(family);
            if d != p.dim() {
                return Err(Failure::Input(format!(
                    "{}: family tag '{family}' does not match dimension {}",
                    input.display(),
                    p.dim()
                )));
            }
            report::formula_f_vector(family)?
        }
    };
    let method = match method {
        Method::Enumerate => "enumerate",
        Method::Formula => "formula",
    };
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "method": method,
        "n": p.num_constraints(),
        "d": p.dim(),
        "f": f,
    }));
    Ok(EXIT_OK)
}

fn hvector_cmd(input: &Path, seed: u64, repeat: u64) -> Outcome {
    let p = read_polytope(input)?;
    if !geometry::is_bounded(&p) {
        return Err(if geometry::is_feasible(&p) { Error::Unbounded } else { Error::Infeasible }.into());
    }
    let redundant = p.redundant_constraints()?;
    if !redundant.is_empty() {
        return Err(Error::Redundant(redundant).into());
    }
    let runs = (seed..seed + repeat)
        .map(|s| hvector::indegree_hvector(&p, s).map(|h| (s, h)))
        .collect::<crate::Result<Vec<_>>>()?;
    let first = runs[0].1.clone();
    let agree = runs.iter().all(|(_, h)| *h == first);
    let ubt = hvector::compare_with_dual_cyclic(&first, p.num_constraints())?;
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "n": p.num_constraints(),
        "d": p.dim(),
        "runs": runs.iter().map(|(s, h)| json!({ "seed": s, "h": h })).collect::<Vec<_>>(),
        "agree": agree,
        "symmetric": first.is_symmetric(),
        "ubt": {
            "holds": ubt.holds(),
            "all_equal": ubt.all_equal(),
            "h_dual_cyclic": ubt.entries.iter().map(|e| e.h_dual_cyclic).collect::<Vec<_>>(),
        },
    }));
    Ok(if agree { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn verify(kind: FamilyKind, size: &Size, as_json: bool, max_subsets: Option<usize>, no_timing: bool) -> Outcome {
    let family = family_of(kind, size)?;
    let options = VerifyOptions { limits: limits(max_subsets), timing: !no_timing, ..VerifyOptions::default() };
    let r = report::verify(family, &options)?;
    if as_json {
        print_json(&r);
    } else {
        print!("{}", render_report(&r));
    }
    Ok(if r.pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn render_report(r: &VerifyReport) -> String {
    let or_dash = |h: &Option<hvector::HVector>| h.as_ref().map_or("-".to_string(), |h| h.to_string());
    let mut out = format!("{} n={} d={}: {}\n", r.family, r.n, r.d, if r.pass { "PASS" } else { "FAIL" });
    out += &format!("  bounded        {}\n", r.bounded);
    out += &format!("  f enumerated   {}\n", r.f_enumerated);
    out += &format!("  f formula      {}\n", r.f_formula);
    out += &format!("  h indegree     {}\n", or_dash(&r.h_indegree));
    out += &format!("  h from f       {}\n", or_dash(&r.h_from_f));
    for (name, value) in &r.checks {
        let shown = match value {
            Some(true) => "pass",
            Some(false) => "FAIL",
            None => "n/a",
        };
        out += &format!("  check {name:<28}{shown}\n");
    }
    for b in &r.bounds {
        let oracle = b.oracle_value.map_or("-".into(), |v| v.to_string());
        out += &format!(
            "  bound {:<28}{oracle} <= {} ({})\n",
            b.quantity,
            b.formula_value,
            match (b.satisfied, b.quantity.ends_with("_literal")) {
                (true, _) => "ok",
                (false, true) => "fails, informational",
                (false, false) => "violated",
            }
        );
    }
    if let Some(ms) = r.timing_ms {
        out += &format!("  time           {ms} ms\n");
    }
    out
}

fn profile(input: &Path) -> Outcome {
    let p = read_polytope(input)?;
    let profile = p.li2_profile();
    let feasible = geometry::is_feasible(&p);
    let bounded = feasible && geometry::is_bounded(&p);
    let redundant = if !feasible {
        None
    } else {
        match p.redundant_constraints() {
            Ok(r) => Some(r),
            Err(Error::Unbounded) => None,
            Err(e) => return Err(e.into()),
        }
    };
    if let Some(r) = redundant.as_ref().filter(|r| !r.is_empty()) {
        eprintln!(
            "warning: rows {} are redundant; bounds that count constraints assume a nonredundant system",
            r.iter().join(", ")
        );
    }
    let pairs: Vec<Value> =
        profile.pair_counts.iter().map(|(&(i, j), &c)| json!({ "vars": [i, j], "count": c })).collect();
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "n": p.num_constraints(),
        "d": p.dim(),
        "family": p.family().map(|f| f.to_string()),
        "li2": profile.is_li2,
        "n_prime": profile.n_prime,
        "single_var_count": profile.single_var_count,
        "dense_count": profile.dense_count,
        "pair_counts": pairs,
        "feasible": feasible,
        "bounded": bounded,
        "redundant": redundant,
    }));
    Ok(EXIT_OK)
}

fn ratio(d: usize, k: usize, range: (usize, usize, usize), csv: bool, places: Option<usize>, slack: i64) -> Outcome {
    let (start, end, step) = range;
    if step == 0 || start > end {
        return Err(Failure::Usage("need --step > 0 and --n-start <= --n-end".into()));
    }
    if slack < 1 {
        return Err(Failure::Usage("--slack must be at least 1".into()));
    }
    let ns: Vec<usize> = (start..=end).step_by(step).collect();
    let rows = closed_forms::ratio_report(d, &ns, k, slack)?;
    let show = |x: &Rational| x.to_string();
    if csv {
        let mut header = "n,fk_dual_cyclic,fk_pstar,ratio,threshold,residue,within_threshold,within_slack".to_string();
        if places.is_some() {
            header += ",ratio_decimal";
        }
        println!("{header}");
        for r in &rows {
            let mut line = format!(
                "{},{},{},{},{},{},{},{}",
                r.n,
                r.fk_dual_cyclic,
                r.fk_pstar,
                show(&r.ratio),
                show(&r.threshold),
                show(&r.residue),
                r.within_threshold,
                r.within_slack
            );
            if let Some(p) = places {
                line += &format!(",{}", decimal(&r.ratio, p));
            }
            println!("{line}");
        }
    } else {
        let json_rows: Vec<Value> = rows
            .iter()
            .map(|r| {
                let mut row = json!({
                    "n": r.n,
                    "fk_dual_cyclic": r.fk_dual_cyclic,
                    "fk_pstar": r.fk_pstar,
                    "ratio": show(&r.ratio),
                    "threshold": show(&r.threshold),
                    "residue": show(&r.residue),
                    "within_threshold": r.within_threshold,
                    "within_slack": r.within_slack,
                });
                if let Some(p) = places {
                    row["ratio_decimal"] = json!(decimal(&r.ratio, p));
                }
                row
            })
            .collect();
        print_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "d": d,
            "k": k,
            "slack": slack,
            "rows": json_rows,
        }));
    }
    Ok(if rows.iter().all(|r| r.within_slack) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn bounds(n: usize, n_prime: usize, d: usize) -> Outcome {
    let adjacency = closed_forms::adjacency_bound(n, n_prime, d)?;
    let all_pairs = closed_forms::binomial(n as i64, 2)?;
    let per_k = (0..=d.saturating_sub(2))
        .map(|k| {
            closed_forms::face_deficit_bound(n, n_prime, d, k).map(|b| {
                json!({
                    "k": b.k,
                    "fk_dual_cyclic": b.fk_dual_cyclic,
                    "deficit": b.deficit.to_string(),
                    "bound": b.bound.to_string(),
                    "literal_bound": b.literal_bound.to_string(),
                    "vacuous": b.vacuous,
                })
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    print_json(&json!({
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "n_prime": n_prime,
        "d": d,
        "adjacency_bound": adjacency.to_string(),
        "adjacency_bound_vacuous": adjacency >= Rational::from_integer(all_pairs.into()),
        "face_bounds": per_k,
    }));
    Ok(EXIT_OK)
}
