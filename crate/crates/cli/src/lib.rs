//! The `gacalc` command line. [`run`] takes the argument vector and two
//! writers and returns the process exit code, so tests can drive it
//! without spawning processes.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 bad input.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gacalc_core::expr::{self, ExprError};
use gacalc_core::linalg::Matrix;
use gacalc_core::pga3d::{self, Plane, PointP};
use gacalc_core::verify::{self, Config, Status};
use gacalc_core::{playfair, structure};
use gacalc_core::{Algebra, Blade, Complement, Multivector, QuadraticForm, Rational, Scalar, Vector};

/// Environment variable consulted when neither `--algebra` nor `--gram` is
/// given.
pub const ALGEBRA_ENV: &str = "GACALC_ALGEBRA";

#[derive(Parser, Debug)]
#[command(name = "gacalc", version, about = "Calculator for degenerate Clifford algebras")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// `pga3` or a signature `p,q,r` (degenerate generators come first).
    #[arg(long, global = true, visible_alias = "signature", conflicts_with = "gram")]
    algebra: Option<String>,
    /// File holding a symmetric gram matrix, one row per line.
    #[arg(long, global = true)]
    gram: Option<PathBuf>,
    /// Exact rationals or 64-bit floats (`check` is always exact).
    #[arg(long, global = true, value_enum, default_value_t = Mode::Float)]
    scalars: Mode,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rational,
    Float,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Split an element into its part at a point and its part at infinity.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Point coordinates; the origin by default.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// The plane through a point parallel to a given plane (3,0,1 only).
    Parallel {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Plane coefficients `v0,v1,v2,v3` of `v0 + v1·x + v2·y + v3·z = 0`.
        #[arg(long, allow_hyphen_values = true)]
        plane: String,
    },
    /// Dihedral angle between two planes (3,0,1 only).
    Angle {
        #[arg(long, allow_hyphen_values = true)]
        plane1: String,
        #[arg(long, allow_hyphen_values = true)]
        plane2: String,
    },
    /// Two-sided inverse.
    Inv {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Commutator `½(BX − XB)`.
    Cmt {
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Write a unit as `r·(1 + tail·e0)`.
    Units {
        #[arg(long = "decompose", allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Commutator structure constants on the bivectors.
    LieTable,
    /// Run verification suites in exact arithmetic.
    Check {
        /// `all` or a suite name.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = Config::default().samples)]
        samples: usize,
        #[arg(long, default_value_t = Config::default().seed)]
        seed: u64,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Res<T = ()> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.cmd {
        Cmd::Check { .. } => check(&cli, out),
        _ => match cli.opts.scalars {
            Mode::Rational => dispatch::<Rational>(&cli, out),
            Mode::Float => dispatch::<f64>(&cli, out),
        },
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn algebra<S: Scalar>(opts: &Opts) -> Res<Arc<Algebra<S>>> {
    if let Some(path) = &opts.gram {
        return Ok(Algebra::new(read_gram(path)?)?);
    }
    let spec = match &opts.algebra {
        Some(s) => s.clone(),
        None => std::env::var(ALGEBRA_ENV).unwrap_or_else(|_| "pga3".into()),
    };
    if spec.trim() == "pga3" {
        return Ok(Algebra::pga3());
    }
    let parts: Vec<usize> = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| format!("algebra `{spec}` is neither `pga3` nor `p,q,r`"))?;
    match parts[..] {
        [p, q, r] => Ok(Algebra::from_signature(p, q, r)?),
        _ => Err(Failure::Usage(format!("algebra `{spec}` is neither `pga3` nor `p,q,r`"))),
    }
}

/// Rows of scalars separated by whitespace or commas; `#` starts a comment.
fn read_gram<S: Scalar>(path: &Path) -> Res<QuadraticForm<S>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut rows = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let row: Vec<S> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| S::parse_literal(s).ok_or_else(|| format!("{}:{}: bad entry `{s}`", path.display(), ln + 1)))
            .collect::<std::result::Result<_, _>>()?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Failure::Usage(format!("{}: gram matrix must be square", path.display())));
    }
    Ok(QuadraticForm::new(Matrix::from_rows(&rows))?)
}

fn scalars<S: Scalar>(src: &str, what: &str, n: usize) -> Res<Vec<S>> {
    let vals: Vec<S> = src
        .split(',')
        .map(|s| S::parse_literal(s.trim()).ok_or_else(|| format!("{what}: bad number `{}`", s.trim())))
        .collect::<std::result::Result<_, _>>()?;
    if vals.len() != n {
        return Err(Failure::Usage(format!("{what}: expected {n} comma-separated numbers, got {}", vals.len())));
    }
    Ok(vals)
}

fn parse<S: Scalar>(src: &str, alg: &Arc<Algebra<S>>) -> Res<Multivector<S>> {
    expr::parse_eval(src, alg).map_err(|e: ExprError| Failure::Usage(e.to_string()))
}

fn complement<S: Scalar>(alg: &Arc<Algebra<S>>, point: Option<&str>) -> Res<Complement<S>> {
    match point {
        None => Ok(alg.coordinate_complement()?),
        Some(_) if !alg.has_identity_basis() => {
            Err(Failure::Usage("--point needs an algebra given in a diagonal basis".into()))
        }
        Some(p) => Ok(alg.complement_at_point(&scalars(p, "--point", alg.dim().saturating_sub(1))?)?),
    }
}

fn require_pga3<S: Scalar>(alg: &Arc<Algebra<S>>) -> Res {
    if alg.has_identity_basis() && alg.e0() == Some(0) && alg.label() == "3,0,1" {
        Ok(())
    } else {
        Err(Failure::Usage("this command works in the 3,0,1 algebra only".into()))
    }
}

fn emit(out: &mut dyn Write, json: bool, text: String, value: Value) -> Res {
    if json {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn dispatch<S: Scalar>(cli: &Cli, out: &mut dyn Write) -> Res {
    let alg = algebra::<S>(&cli.opts)?;
    let json = cli.opts.json;
    let terms = |x: &Multivector<S>| expr::to_json(x)["terms"].clone();
    match &cli.cmd {
        Cmd::Eval { expr: src } => {
            let x = parse(src, &alg)?;
            emit(out, json, expr::print(&x), expr::to_json(&x))
        }
        Cmd::Inv { expr: src } => {
            let x = structure::inverse(&parse(src, &alg)?)?;
            emit(out, json, expr::print(&x), expr::to_json(&x))
        }
        Cmd::Cmt { b, x } => {
            let c = structure::commutator(&parse(b, &alg)?, &parse(x, &alg)?)?;
            emit(out, json, expr::print(&c), expr::to_json(&c))
        }
        Cmd::Decompose { expr: src, point } => {
            let x = parse(src, &alg)?;
            let comp = complement(&alg, point.as_deref())?;
            let split = playfair::decompose(&x, &comp)?;
            let ideal = split.ideal_part();
            let text = format!(
                "at_point: {}\nat_infinity: {}\ncofactor: {}",
                expr::print(&split.at_w),
                expr::print(&ideal),
                expr::print(&split.ideal_cofactor)
            );
            let value = json!({
                "at_point": terms(&split.at_w),
                "at_infinity": terms(&ideal),
                "cofactor": terms(&split.ideal_cofactor),
                "algebra": alg.label(),
            });
            emit(out, json, text, value)
        }
        Cmd::Units { expr: src, point } => {
            let x = parse(src, &alg)?;
            let comp = complement(&alg, point.as_deref())?;
            let d = structure::unit_decompose(&x, &comp)?;
            let text = format!("r: {}\ntail: {}", expr::print(&d.r), expr::print(&d.tail));
            let value = json!({ "r": terms(&d.r), "tail": terms(&d.tail), "algebra": alg.label() });
            emit(out, json, text, value)
        }
        Cmd::Parallel { point, plane } => {
            require_pga3(&alg)?;
            let p = scalars::<S>(point, "--point", 3)?;
            let plane = Plane::new(Vector(scalars(plane, "--plane", 4)?))?;
            let point = PointP::new(p[0].clone(), p[1].clone(), p[2].clone());
            let par = pga3d::parallel_through(&point, &plane);
            let mv = par.to_multivector(&alg)?;
            let text = format!("plane: {par}\nvector: {}", expr::print(&mv));
            let coeffs: Vec<String> = par.vector().coords().iter().map(|c| c.to_string()).collect();
            emit(out, json, text, json!({ "plane": coeffs, "vector": terms(&mv) }))
        }
        Cmd::Angle { plane1, plane2 } => {
            require_pga3(&alg)?;
            let u = Plane::<S>::new(Vector(scalars(plane1, "--plane1", 4)?))?;
            let v = Plane::<S>::new(Vector(scalars(plane2, "--plane2", 4)?))?;
            let theta = pga3d::dihedral_angle(&u, &v);
            let text = format!("{theta} rad ({}°)", theta.to_degrees());
            emit(out, json, text, json!({ "radians": theta, "degrees": theta.to_degrees() }))
        }
        Cmd::LieTable => lie_table(&alg, json, out),
        Cmd::Check { .. } => unreachable!("handled in run"),
    }
}

fn lie_table<S: Scalar>(alg: &Arc<Algebra<S>>, json: bool, out: &mut dyn Write) -> Res {
    let n = alg.dim();
    let (basis, names): (Vec<Multivector<S>>, Vec<String>) = if alg.label() == "3,0,1" && alg.has_identity_basis() {
        // The se(3) ordering: rotations, then translations.
        [("e23", 2, 3, 1), ("e31", 1, 3, -1), ("e12", 1, 2, 1), ("e01", 0, 1, 1), ("e02", 0, 2, 1), ("e03", 0, 3, 1)]
            .iter()
            .map(|&(name, i, j, s)| {
                (Multivector::from_blade(alg, Blade::from_indices(&[i, j]), S::from_i64(s)), name.to_string())
            })
            .unzip()
    } else {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let b = alg.input_blade(Blade::from_indices(&[i, j]));
                let name = expr::print(&b);
                let name = if b.len() > 1 { format!("({name})") } else { name };
                (b, name)
            })
            .unzip()
    };
    let table = structure::lie_structure_table(alg, &basis)?;
    if json {
        let constants: Vec<Vec<Vec<String>>> = table
            .constants
            .iter()
            .map(|row| row.iter().map(|c| c.iter().map(|v| v.to_string()).collect()).collect())
            .collect();
        writeln!(out, "{}", json!({ "basis": names, "constants": constants, "algebra": alg.label() }))?;
        return Ok(());
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            writeln!(out, "[{}, {}] = {}", names[i], names[j], combination(&names, table.bracket(i, j)))?;
        }
    }
    Ok(())
}

/// `Σ c_k·name_k` in the calculator's text style.
fn combination<S: Scalar>(names: &[String], coeffs: &[S]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(coeffs).filter(|(_, c)| !c.is_negligible()) {
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn check(cli: &Cli, out: &mut dyn Write) -> Res {
    let Cmd::Check { suite, samples, seed, list } = &cli.cmd else { unreachable!() };
    if *list {
        for s in verify::SUITES {
            writeln!(out, "{:<24} {}", s.name, s.statement)?;
        }
        return Ok(());
    }
    let alg = algebra::<Rational>(&cli.opts)?;
    let chosen: Vec<_> = if suite == "all" {
        verify::SUITES.iter().collect()
    } else {
        vec![verify::find(suite).ok_or_else(|| format!("unknown suite `{suite}`; try --list"))?]
    };
    let reports = verify::run_all(&chosen, &alg, Config { seed: *seed, samples: *samples });
    let mut failed = false;
    let mut rows = Vec::new();
    for r in &reports {
        failed |= r.status == Status::Fail;
        if cli.opts.json {
            rows.push(
                json!({ "suite": r.name, "status": format!("{:?}", r.status).to_uppercase(), "detail": r.detail }),
            );
        } else {
            writeln!(out, "{r}")?;
        }
    }
    if cli.opts.json {
        writeln!(out, "{}", Value::Array(rows))?;
    }
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}
