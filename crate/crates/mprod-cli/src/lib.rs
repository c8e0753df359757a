//! `mprod`: compute, verify, and solve with generalized tensor inverses
//! under the M-product.
//!
//! Exit codes: 0 success (including law checks whose hypotheses do not
//! hold), 1 input or precondition error, 2 residual above tolerance, 3 a law
//! whose hypotheses hold but whose conclusion fails.

pub mod formats;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mprod_core::laws::{GdOrderVariant, OrderDirection};
use mprod_core::solver::{self, SolveRequest};
use mprod_core::tensor::{identity_tensor, m_product, rel_residual};
use mprod_core::{
    ginv, laws, InverseFamily, MprodError, Result, ToleranceConfig, TransformMatrix,
};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_LAW_FAILURE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "mprod",
    version,
    about = "Generalized inverses of complex order-3 tensors under the M-product"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute an inverse and write it as a tensor file.
    Compute(ComputeArgs),
    /// Check a candidate tensor against an inverse's defining equations.
    Verify(VerifyArgs),
    /// Solve A ⋆ X = B for the selected inverse family.
    Solve(SolveArgs),
    /// Print the tensor index.
    Index(IndexArgs),
    /// Evaluate a product or additive law: hypotheses, then conclusion.
    Laws(LawsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComputeKind {
    Gd,
    Gdmp,
    Gdstar,
    Mp,
    Drazin,
    Inverse,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum VerifyKind {
    Gd,
    Gdmp,
    Gdstar,
    Mp,
    Drazin,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyKind {
    Gd,
    Gdmp,
    Gdstar,
}

impl From<FamilyKind> for InverseFamily {
    fn from(k: FamilyKind) -> Self {
        match k {
            FamilyKind::Gd => InverseFamily::Gd,
            FamilyKind::Gdmp => InverseFamily::Gdmp,
            FamilyKind::Gdstar => InverseFamily::GdStar,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MPreset {
    /// Identity transform: the facewise product.
    Identity,
    /// Normalized DFT of size η3: the classical t-product.
    Dft,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LawCheck {
    ReverseOrder,
    ForwardOrder,
    Additive,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GdVariantArg {
    /// Hypotheses on A⋆B² and B²⋆A plus projector commutation.
    SquareCommute,
    /// Hypotheses on A⋆B = B⋆A plus projector commutation.
    Commute,
}

#[derive(Args)]
pub struct MArgs {
    /// Transform matrix file (JSON, square, sized to the tensor depth).
    #[arg(long, value_name = "FILE", conflicts_with = "m_preset")]
    pub m: Option<PathBuf>,
    /// Built-in transform instead of a file.
    #[arg(long, value_enum, value_name = "PRESET")]
    pub m_preset: Option<MPreset>,
}

#[derive(Args)]
pub struct TolArgs {
    /// Relative residual tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Singular-value cutoff factor for rank decisions.
    #[arg(long, default_value_t = 1e-12)]
    pub rank_tol: f64,
    /// Suppress summary lines and diagnostics; reports are still emitted.
    #[arg(long)]
    pub quiet: bool,
}

impl TolArgs {
    fn config(&self) -> ToleranceConfig {
        ToleranceConfig {
            rank_tol_factor: self.rank_tol,
            residual_tol: self.tol,
            ..Default::default()
        }
    }
}

#[derive(Args)]
pub struct ComputeArgs {
    /// Which inverse to compute.
    #[arg(long, value_enum)]
    pub kind: ComputeKind,
    /// Input tensor file.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Where to write the result tensor.
    #[arg(long, value_name = "FILE")]
    pub output: PathBuf,
    #[command(flatten)]
    pub m: MArgs,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which defining system to check.
    #[arg(long, value_enum)]
    pub kind: VerifyKind,
    /// The tensor the candidate is supposed to invert.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// The candidate inverse.
    #[arg(long, value_name = "FILE")]
    pub candidate: PathBuf,
    #[command(flatten)]
    pub m: MArgs,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Args)]
pub struct SolveArgs {
    /// Inverse family that shapes the solution.
    #[arg(long, value_enum)]
    pub kind: FamilyKind,
    /// Coefficient tensor A.
    #[arg(long, value_name = "FILE")]
    pub a: PathBuf,
    /// Right-hand side B.
    #[arg(long, value_name = "FILE")]
    pub b: PathBuf,
    /// Optional free tensor Z selecting a member of the solution family.
    #[arg(long, value_name = "FILE")]
    pub z: Option<PathBuf>,
    /// Where to write the solution X.
    #[arg(long, value_name = "FILE")]
    pub output: PathBuf,
    #[command(flatten)]
    pub m: MArgs,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Args)]
pub struct IndexArgs {
    /// Input tensor file (square slices).
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub m: MArgs,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Args)]
pub struct LawsArgs {
    /// Which law family to evaluate.
    #[arg(long, value_enum)]
    pub check: LawCheck,
    /// Inverse family the law speaks about.
    #[arg(long, value_enum)]
    pub kind: FamilyKind,
    /// First tensor.
    #[arg(long, value_name = "FILE")]
    pub a: PathBuf,
    /// Second tensor.
    #[arg(long, value_name = "FILE")]
    pub b: PathBuf,
    /// Hypothesis set for GD reverse-order checks.
    #[arg(long, value_enum, default_value = "commute")]
    pub variant: GdVariantArg,
    #[command(flatten)]
    pub m: MArgs,
    #[command(flatten)]
    pub tol: TolArgs,
}

fn load_transform(margs: &MArgs, depth: usize) -> Result<TransformMatrix> {
    match (&margs.m, margs.m_preset) {
        (Some(path), None) => {
            let mat = formats::load_matrix(path)?;
            if mat.nrows() != depth || mat.ncols() != depth {
                return Err(MprodError::DimensionMismatch(format!(
                    "transform matrix is {}x{} but the tensor depth is {depth}",
                    mat.nrows(),
                    mat.ncols()
                )));
            }
            TransformMatrix::new(mat)
        }
        (None, Some(MPreset::Identity)) => Ok(TransformMatrix::identity(depth)),
        (None, Some(MPreset::Dft)) => Ok(TransformMatrix::dft(depth)),
        _ => Err(MprodError::ContractViolation(
            "exactly one of --m or --m-preset is required".into(),
        )),
    }
}

fn kind_name(kind: ComputeKind) -> &'static str {
    match kind {
        ComputeKind::Gd => "gd",
        ComputeKind::Gdmp => "gdmp",
        ComputeKind::Gdstar => "gdstar",
        ComputeKind::Mp => "mp",
        ComputeKind::Drazin => "drazin",
        ComputeKind::Inverse => "inverse",
    }
}

fn cmd_compute(args: &ComputeArgs) -> Result<i32> {
    let tol = args.tol.config();
    tol.validate()?;
    let a = formats::load_tensor(&args.input)?;
    let m = load_transform(&args.m, a.depth())?;

    let x = match args.kind {
        ComputeKind::Gd => ginv::gd_inverse(&a, &m, &tol)?,
        ComputeKind::Gdmp => ginv::gdmp_inverse(&a, &m, &tol)?,
        ComputeKind::Gdstar => ginv::gdstar_inverse(&a, &m, &tol)?,
        ComputeKind::Mp => ginv::mp_inverse(&a, &m, &tol)?,
        ComputeKind::Drazin => ginv::drazin_inverse(&a, &m, &tol)?,
        ComputeKind::Inverse => ginv::tensor_inverse(&a, &m, &tol)?,
    };

    let report = match args.kind {
        ComputeKind::Gd => laws::verify_gd(&a, &x, &m, &tol)?,
        ComputeKind::Gdmp => laws::verify_gdmp(&a, &x, &m, &tol)?,
        ComputeKind::Gdstar => laws::verify_gdstar(&a, &x, &m, &tol)?,
        ComputeKind::Mp => laws::verify_mp(&a, &x, &m, &tol)?,
        ComputeKind::Drazin => laws::verify_drazin(&a, &x, &m, &tol)?,
        ComputeKind::Inverse => {
            let id = identity_tensor(a.nrows(), a.depth(), &m)?;
            let mut rep = mprod_core::ResidualReport::new(tol.residual_tol);
            rep.push("A*X = I", rel_residual(&m_product(&a, &x, &m)?, &id));
            rep.push("X*A = I", rel_residual(&m_product(&x, &a, &m)?, &id));
            rep
        }
    };

    let index = if a.nrows() == a.ncols() {
        Some(ginv::tensor_index(&a, &m, &tol)?)
    } else {
        None
    };

    let name = format!("{} inverse", kind_name(args.kind));
    formats::save_tensor(&args.output, &x, Some(name))?;

    if !args.tol.quiet {
        let (n1, n2, n3) = a.dims();
        let k = index.map_or("-".to_string(), |k| k.to_string());
        println!(
            "{} inverse of {n1}x{n2}x{n3} tensor: index {k}, max residual {:.3e}",
            kind_name(args.kind),
            report.max_residual()
        );
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_NUMERICAL })
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let tol = args.tol.config();
    tol.validate()?;
    let a = formats::load_tensor(&args.input)?;
    let x = formats::load_tensor(&args.candidate)?;
    let m = load_transform(&args.m, a.depth())?;

    let report = match args.kind {
        VerifyKind::Gd => laws::verify_gd(&a, &x, &m, &tol)?,
        VerifyKind::Gdmp => laws::verify_gdmp(&a, &x, &m, &tol)?,
        VerifyKind::Gdstar => laws::verify_gdstar(&a, &x, &m, &tol)?,
        VerifyKind::Mp => laws::verify_mp(&a, &x, &m, &tol)?,
        VerifyKind::Drazin => laws::verify_drazin(&a, &x, &m, &tol)?,
    };

    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(if report.pass { EXIT_OK } else { EXIT_NUMERICAL })
}

fn cmd_solve(args: &SolveArgs) -> Result<i32> {
    let tol = args.tol.config();
    tol.validate()?;
    let a = formats::load_tensor(&args.a)?;
    let b = formats::load_tensor(&args.b)?;
    let z = args.z.as_ref().map(|p| formats::load_tensor(p)).transpose()?;
    let m = load_transform(&args.m, a.depth())?;

    let req = SolveRequest { a, b, z, kind: args.kind.into() };
    let result = solver::solve(&req, &m, &tol)?;
    formats::save_tensor(&args.output, &result.x, Some("solution".into()))?;

    if !args.tol.quiet {
        println!("residual = {:.6e}", result.residual);
        let gap = solver::rhs_consistency_gap(&req, &m, &tol)?;
        eprintln!("rhs consistency gap = {gap:.6e} (0 means A*X = B itself is solved)");
    }
    Ok(if result.residual <= tol.residual_tol {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    })
}

fn cmd_index(args: &IndexArgs) -> Result<i32> {
    let tol = args.tol.config();
    tol.validate()?;
    let a = formats::load_tensor(&args.input)?;
    let m = load_transform(&args.m, a.depth())?;
    println!("{}", ginv::tensor_index(&a, &m, &tol)?);
    Ok(EXIT_OK)
}

fn cmd_laws(args: &LawsArgs) -> Result<i32> {
    let tol = args.tol.config();
    tol.validate()?;
    let a = formats::load_tensor(&args.a)?;
    let b = formats::load_tensor(&args.b)?;
    let m = load_transform(&args.m, a.depth())?;

    let outcome = match (args.check, args.kind) {
        (LawCheck::Additive, kind) => {
            laws::check_additive_law(&a, &b, &m, &tol, kind.into())?
        }
        (LawCheck::ReverseOrder, FamilyKind::Gd) => {
            let variant = match args.variant {
                GdVariantArg::SquareCommute => GdOrderVariant::SquareCommute,
                GdVariantArg::Commute => GdOrderVariant::Commute,
            };
            laws::check_gd_reverse_order(&a, &b, &m, &tol, variant)?
        }
        (LawCheck::ForwardOrder, FamilyKind::Gd) => {
            laws::check_gd_reverse_order(&a, &b, &m, &tol, GdOrderVariant::Forward)?
        }
        (LawCheck::ReverseOrder, FamilyKind::Gdmp) => {
            laws::check_gdmp_product_laws(&a, &b, &m, &tol, OrderDirection::Reverse)?
        }
        (LawCheck::ForwardOrder, FamilyKind::Gdmp) => {
            laws::check_gdmp_product_laws(&a, &b, &m, &tol, OrderDirection::Forward)?
        }
        (LawCheck::ReverseOrder, FamilyKind::Gdstar) => {
            laws::check_gdstar_product_laws(&a, &b, &m, &tol, OrderDirection::Reverse)?
        }
        (LawCheck::ForwardOrder, FamilyKind::Gdstar) => {
            laws::check_gdstar_product_laws(&a, &b, &m, &tol, OrderDirection::Forward)?
        }
    };

    println!("{}", serde_json::to_string(&outcome).expect("outcome serializes"));
    Ok(if outcome.applicable && !outcome.conclusion.pass {
        EXIT_LAW_FAILURE
    } else {
        EXIT_OK
    })
}

fn exit_code_for(e: &MprodError) -> i32 {
    match e {
        MprodError::NumericalFailure(_) => EXIT_NUMERICAL,
        _ => EXIT_INPUT,
    }
}

/// Parses the process arguments and runs the selected command, returning the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here; keep their conventional exit 0
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Index(args) => cmd_index(args),
        Command::Laws(args) => cmd_laws(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
