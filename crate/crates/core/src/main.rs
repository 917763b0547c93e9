use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use nashkit::cartan::{
    adapted_basis, cartan_split, iwasawa_kan, iwasawa_kan_in, maximal_abelian, polar_kak, restricted_roots,
    RootDatum,
};
use nashkit::error::ErrorCategory;
use nashkit::explog::{self, Domain};
use nashkit::jordan::{additive_jordan, classify, multiplicative_jordan, sn_split, Setting};
use nashkit::json::{
    algebra_from_json, algebra_to_json, class_to_json, default_tol, error_to_json, mat_to_json, matrix_from_json,
    matrix_to_json, mats_to_json, rows_to_json, triple_to_json, vector_to_json, AlgebraInput, JsonScalar,
};
use nashkit::liealg::{levi_complement, radical, unipotent_radical, LieAlgebra, Rep, SeriesKind};
use nashkit::replica::replica;
use nashkit::selftest::selftest;
use nashkit::triangularize::{engel_flag, split_triangularize, EigenPick, Flag};
use nashkit::{Matrix, NashError, Result, Q};

#[derive(Parser)]
#[command(name = "nashkit", version, about = "Structure theory of real matrix groups and matrix Lie algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Read every input as exact rationals (floats are converted exactly).
    #[arg(long, global = true, conflicts_with = "approx")]
    exact: bool,
    /// Read every input as floating point.
    #[arg(long, global = true)]
    approx: bool,
    /// Relative tolerance for floating inputs (requires --approx).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON (the only output format).
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Elliptic / hyperbolic / unipotent decomposition.
    Jordan {
        #[arg(long, value_enum, default_value_t = JordanMode::Mul)]
        mode: JordanMode,
        #[arg(long, value_enum)]
        setting: Option<SettingArg>,
        input: PathBuf,
    },
    /// Semisimple + nilpotent splitting.
    Snsplit { input: PathBuf },
    /// Element class predicates.
    Classify {
        #[arg(long, value_enum, default_value_t = SettingArg::Group)]
        setting: SettingArg,
        input: PathBuf,
    },
    /// Exponential and logarithm on the standard domains.
    Explog {
        #[arg(value_enum)]
        op: ExpLogOp,
        #[arg(long, value_enum)]
        domain: DomainArg,
        input: PathBuf,
    },
    /// Lie algebra structure.
    Lie {
        #[arg(value_enum)]
        op: LieOp,
        /// Series kind for `series`.
        #[arg(long, value_enum, default_value_t = SeriesArg::Derived)]
        kind: SeriesArg,
        /// Representation for `trace-form`.
        #[arg(long, value_enum, default_value_t = RepArg::Natural)]
        rep: RepArg,
        input: PathBuf,
    },
    /// Invariant flags of nilpotent and split solvable algebras.
    Flag {
        #[arg(value_enum)]
        op: FlagOp,
        input: PathBuf,
    },
    /// Cartan decomposition, restricted roots, KAK and KAN.
    Cartan {
        #[arg(value_enum)]
        op: CartanOp,
        /// Algebra file (for `split` and `roots`, or to orient `kan`).
        #[arg(long)]
        algebra: Option<PathBuf>,
        input: Option<PathBuf>,
    },
    /// Replica of a hyperbolic or unipotent element.
    Replica { input: PathBuf },
    /// Run every acceptance criterion.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum JordanMode {
    Mul,
    Add,
}

#[derive(Clone, Copy, ValueEnum)]
enum SettingArg {
    Group,
    Algebra,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpLogOp {
    Exp,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Nilpotent,
    Hyperbolic,
    Exponential,
}

#[derive(Clone, Copy, ValueEnum)]
enum LieOp {
    Close,
    Series,
    Radical,
    TraceForm,
    Reductive,
    UnipotentRadical,
    Levi,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Derived,
    LowerCentral,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepArg {
    Natural,
    Adjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlagOp {
    Engel,
    Split,
}

#[derive(Clone, Copy, ValueEnum)]
enum CartanOp {
    Split,
    Roots,
    Kak,
    Kan,
}

impl From<SettingArg> for Setting {
    fn from(s: SettingArg) -> Self {
        match s {
            SettingArg::Group => Setting::Group,
            SettingArg::Algebra => Setting::Algebra,
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Track {
    Exact,
    Approx,
    Auto,
}

struct Ctx {
    track: Track,
    tol: f64,
}

impl Ctx {
    fn from_global(g: &Global) -> Result<Self> {
        if g.tol.is_some() && !g.approx {
            return Err(NashError::MalformedInput("--tol is only valid with --approx".into()));
        }
        let tol = match g.tol {
            Some(t) if t.is_finite() && t >= 0.0 => t,
            Some(t) => return Err(NashError::MalformedInput(format!("invalid tolerance {t}"))),
            None => default_tol()?,
        };
        let track = if g.exact {
            Track::Exact
        } else if g.approx {
            Track::Approx
        } else {
            Track::Auto
        };
        Ok(Ctx { track, tol })
    }

    fn coerce(&self, m: Matrix) -> Matrix {
        match self.track {
            Track::Exact => Matrix::Exact(<Q as nashkit::linalg::Linalg>::unwrap(&m)),
            Track::Approx => Matrix::Approx { m: m.to_f64(), tol: self.tol },
            Track::Auto => m,
        }
    }

    fn matrix(&self, path: &Path) -> Result<Matrix> {
        Ok(self.coerce(matrix_from_json(&read_json(path)?, self.tol)?))
    }

    fn algebra(&self, path: &Path) -> Result<(usize, AlgebraInput, bool)> {
        let (n, input) = algebra_from_json(&read_json(path)?, self.tol)?;
        let exact = match self.track {
            Track::Exact => true,
            Track::Approx => false,
            Track::Auto => input.all_exact(),
        };
        Ok((n, input, exact))
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| NashError::MalformedInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| NashError::MalformedInput(format!("{}: {e}", path.display())))
}

fn jordan(ctx: &Ctx, mode: JordanMode, setting: Option<SettingArg>, input: &Path) -> Result<Value> {
    let x = ctx.matrix(input)?;
    let (triple, default_setting) = match mode {
        JordanMode::Mul => (multiplicative_jordan(&x)?, Setting::Group),
        JordanMode::Add => (additive_jordan(&x)?, Setting::Algebra),
    };
    let setting = setting.map_or(default_setting, Setting::from);
    let mut out = triple_to_json(&triple);
    out.insert("class".into(), class_to_json(&classify(&x, setting)?));
    Ok(Value::Object(out))
}

fn explog_cmd(ctx: &Ctx, op: ExpLogOp, domain: DomainArg, input: &Path) -> Result<Value> {
    let x = ctx.matrix(input)?;
    let domain = match domain {
        DomainArg::Nilpotent => Domain::Nilpotent,
        DomainArg::Hyperbolic => Domain::Hyperbolic,
        DomainArg::Exponential => Domain::Exponential,
    };
    let r = match op {
        ExpLogOp::Exp => explog::exp(&x, domain)?,
        ExpLogOp::Log => explog::log(&x, domain)?,
    };
    Ok(json!({ "result": matrix_to_json(&r) }))
}

fn subspace_json<T: JsonScalar>(basis: &[nashkit::Mat<T>]) -> Value {
    json!({ "dim": basis.len(), "basis": mats_to_json(basis) })
}

fn lie_generic<T: JsonScalar>(g: &LieAlgebra<T>, op: LieOp, kind: SeriesArg, rep: RepArg) -> Result<Value> {
    Ok(match op {
        LieOp::Close => {
            let mut v = algebra_to_json(g);
            v["dim"] = json!(g.dim());
            v
        }
        LieOp::Series => {
            let (kind, name) = match kind {
                SeriesArg::Derived => (SeriesKind::Derived, "derived"),
                SeriesArg::LowerCentral => (SeriesKind::LowerCentral, "lower-central"),
            };
            let terms: Vec<Value> = g.series(kind).iter().map(|t| subspace_json(t)).collect();
            json!({ "kind": name, "terms": terms })
        }
        LieOp::TraceForm => {
            let (rep, name) = match rep {
                RepArg::Natural => (Rep::Natural, "natural"),
                RepArg::Adjoint => (Rep::Adjoint, "adjoint"),
            };
            let gram = g.trace_form(rep).gram;
            let rank = T::rank(&gram, g.tol());
            json!({ "rep": name, "gram": rows_to_json(&gram), "rank": rank, "nondegenerate": rank == g.dim() })
        }
        LieOp::Reductive => json!({ "reductive": g.is_reductive() }),
        LieOp::Radical | LieOp::UnipotentRadical | LieOp::Levi => return Err(NashError::ExactRequired),
    })
}

fn lie_exact(g: &LieAlgebra<Q>, op: LieOp, kind: SeriesArg, rep: RepArg) -> Result<Value> {
    Ok(match op {
        LieOp::Radical => subspace_json(&radical(g)?),
        LieOp::UnipotentRadical => subspace_json(&unipotent_radical(g)?),
        LieOp::Levi => {
            let d = levi_complement(g)?;
            json!({ "levi": subspace_json(&d.levi), "unipotent": subspace_json(&d.unipotent) })
        }
        _ => lie_generic(g, op, kind, rep)?,
    })
}

fn lie(ctx: &Ctx, op: LieOp, kind: SeriesArg, rep: RepArg, input: &Path) -> Result<Value> {
    let (n, alg, exact) = ctx.algebra(input)?;
    if exact {
        lie_exact(&alg.build::<Q>(n, ctx.tol)?, op, kind, rep)
    } else {
        lie_generic(&alg.build::<f64>(n, ctx.tol)?, op, kind, rep)
    }
}

fn flag_json<T: JsonScalar>(flag: &Flag<T>, change: Option<&nashkit::Mat<T>>) -> Value {
    let stages: Vec<Value> = flag
        .stages
        .iter()
        .map(|s| json!({ "dim": s.len(), "basis": s.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>() }))
        .collect();
    let change = change.cloned().unwrap_or_else(|| flag.basis_matrix());
    json!({ "complete": flag.complete, "stages": stages, "change_of_basis": mat_to_json(&change) })
}

fn flag_on<T: JsonScalar + EigenPick>(g: &LieAlgebra<T>, op: FlagOp) -> Result<Value> {
    match op {
        FlagOp::Engel => Ok(flag_json(&engel_flag(g)?, None)),
        FlagOp::Split => {
            let (p, flag) = split_triangularize(g)?;
            Ok(flag_json(&flag, Some(&p)))
        }
    }
}

fn flag(ctx: &Ctx, op: FlagOp, input: &Path) -> Result<Value> {
    let (n, alg, exact) = ctx.algebra(input)?;
    if !exact {
        return flag_on(&alg.build::<f64>(n, ctx.tol)?, op);
    }
    match flag_on(&alg.build::<Q>(n, ctx.tol)?, op) {
        // Real but irrational eigenvalues: retry on the floating track.
        Err(NashError::IrrationalSpectrum) if ctx.track == Track::Auto => {
            flag_on(&alg.build::<f64>(n, ctx.tol)?, op)
        }
        other => other,
    }
}

fn roots_json<T: JsonScalar>(rd: &RootDatum<T>) -> Value {
    json!({
        "a": subspace_json(&rd.a_basis),
        "roots": rd.roots.iter().map(|r| vector_to_json(r)).collect::<Vec<_>>(),
        "root_spaces": rd.root_spaces.iter().map(|s| subspace_json(s)).collect::<Vec<_>>(),
        "zero_space": subspace_json(&rd.zero_space),
        "positive": rd.positive,
    })
}

fn cartan_on<T: JsonScalar + EigenPick>(g: &LieAlgebra<T>, op: CartanOp) -> Result<Value> {
    let split = cartan_split(g)?;
    match op {
        CartanOp::Split => Ok(json!({ "k": subspace_json(&split.k_basis), "p": subspace_json(&split.p_basis) })),
        _ => {
            let a = maximal_abelian(&split);
            Ok(roots_json(&restricted_roots(g, &a)?))
        }
    }
}

fn adapted<T: EigenPick>(g: &LieAlgebra<T>) -> Result<nashkit::Mat<f64>> {
    let split = cartan_split(g)?;
    let a = maximal_abelian(&split);
    Ok(adapted_basis(&restricted_roots(g, &a)?))
}

fn cartan(ctx: &Ctx, op: CartanOp, algebra: Option<&Path>, input: Option<&Path>) -> Result<Value> {
    let missing = |what: &str| NashError::MalformedInput(format!("cartan {what} needs an input file"));
    match op {
        CartanOp::Split | CartanOp::Roots => {
            let path = algebra.or(input).ok_or_else(|| missing("split/roots"))?;
            let (n, alg, exact) = ctx.algebra(path)?;
            if exact {
                cartan_on(&alg.build::<Q>(n, ctx.tol)?, op)
            } else {
                cartan_on(&alg.build::<f64>(n, ctx.tol)?, op)
            }
        }
        CartanOp::Kak => {
            let x = ctx.matrix(input.ok_or_else(|| missing("kak"))?)?;
            let (k, big_x) = polar_kak(&x)?;
            Ok(json!({ "k": matrix_to_json(&k), "x": matrix_to_json(&big_x) }))
        }
        CartanOp::Kan => {
            let x = ctx.matrix(input.ok_or_else(|| missing("kan"))?)?;
            let t = match algebra {
                None => iwasawa_kan(&x)?,
                Some(path) => {
                    let (n, alg, exact) = ctx.algebra(path)?;
                    if n != x.n() {
                        return Err(NashError::DimensionMismatch("algebra and matrix differ in size".into()));
                    }
                    let b = if exact { adapted(&alg.build::<Q>(n, ctx.tol)?)? } else { adapted(&alg.build::<f64>(n, ctx.tol)?)? };
                    iwasawa_kan_in(&x, &b)?
                }
            };
            Ok(json!({ "k": mat_to_json(&t.k), "a": mat_to_json(&t.a), "n": mat_to_json(&t.n) }))
        }
    }
}

fn replica_cmd(ctx: &Ctx, input: &Path) -> Result<Value> {
    let d = replica(&ctx.matrix(input)?)?;
    let mut out = Map::new();
    out.insert("kind".into(), serde_json::to_value(d.kind).expect("plain enum"));
    out.insert("dimension".into(), json!(d.dimension));
    out.insert("lattice".into(), json!(d.relation_lattice));
    out.insert("eigenvalues".into(), vector_to_json(&d.eigenvalues));
    if let Some(g) = &d.generator {
        out.insert("generator".into(), matrix_to_json(g));
    }
    Ok(Value::Object(out))
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    let ctx = Ctx::from_global(&cli.global)?;
    let v = match &cli.command {
        Command::Jordan { mode, setting, input } => jordan(&ctx, *mode, *setting, input)?,
        Command::Snsplit { input } => {
            let (s, n) = sn_split(&ctx.matrix(input)?)?;
            json!({ "s": matrix_to_json(&s), "n": matrix_to_json(&n) })
        }
        Command::Classify { setting, input } => class_to_json(&classify(&ctx.matrix(input)?, (*setting).into())?),
        Command::Explog { op, domain, input } => explog_cmd(&ctx, *op, *domain, input)?,
        Command::Lie { op, kind, rep, input } => lie(&ctx, *op, *kind, *rep, input)?,
        Command::Flag { op, input } => flag(&ctx, *op, input)?,
        Command::Cartan { op, algebra, input } => cartan(&ctx, *op, algebra.as_deref(), input.as_deref())?,
        Command::Replica { input } => replica_cmd(&ctx, input)?,
        Command::Selftest => {
            let report = selftest(cli.global.seed);
            eprint!("{}", report.summary());
            let passed = report.passed;
            return Ok((serde_json::to_value(&report).expect("plain struct"), passed));
        }
    };
    Ok((v, true))
}

fn emit(v: &Value) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not an error worth reporting.
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((v, ok)) => {
            emit(&v);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            emit(&error_to_json(&e));
            ExitCode::from(match e.category() {
                ErrorCategory::Input => 2,
                ErrorCategory::Precondition => 3,
                ErrorCategory::Numerical => 4,
            })
        }
    }
}
