//! `curvature` command-line tool: tensor files, validation, spectra, checks
//! and demonstrations. Exit codes: 0 pass, 1 fail, 2 usage or precondition
//! error.

pub mod render;
pub mod spectrum;
pub mod tensor_file;

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use curvature_core::checks::{self, CheckOptions, CheckReport, CurvatureRef, Verdict};
use curvature_core::operators::{jacobi, jacobi_kplane, szabo};
use curvature_core::space::{complex_combination, complexify, sample_kplane, sample_null, NullMode};
use curvature_core::tensors::{self, SymBilinear, SymTrilinear};
use curvature_core::{ComplexVector, Curv4, Curv5, SignatureSpace};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spectrum::SpectrumReport;
use crate::tensor_file::{Metadata, Storage, Tensor, TensorFile};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "curvature",
    version,
    about = "Curvature tensors, Jacobi and Szabó operators on signature (p,q) spaces"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct a tensor and write it as a tensor file.
    Generate(GenerateArgs),
    /// Check the symmetry identities of a tensor file.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = tensors::DEFAULT_VALIDATION_TOL)]
        tol: f64,
    },
    /// Spectral fingerprint of the Jacobi / Szabó operator at a vector or on a random k-plane.
    Spectrum(SpectrumArgs),
    /// Sampled property check.
    Check(CheckArgs),
    /// Demonstrations of limit and expansion arguments.
    Demo(DemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    ConstantCurvature,
    FromBilinear,
    NablaForms,
    /// Nonzero derivative tensor with nilpotent Szabó operators (p, q >= 2).
    #[value(alias = "paper-example")]
    NilpotentSzabo,
    RandomCurv4,
    RandomCurv5,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GenerateKind,
    /// Signature as `p,q`.
    #[arg(long, value_parser = parse_signature)]
    pub signature: SignatureSpace,
    /// Sectional curvature for constant-curvature.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Symmetric form: m diagonal entries or m*m row-major entries.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub phi: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Add this multiple of a random valid tensor normalised to max |component| = 1.
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Option<f64>,
    #[arg(long, value_enum, default_value_t = Storage::Dense)]
    pub storage: Storage,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub file: PathBuf,
    /// Real part of the vector.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "kplane")]
    pub at: Option<Vec<f64>>,
    /// Imaginary part of the vector.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "at")]
    pub at_imag: Option<Vec<f64>>,
    /// Dimension of a random non-degenerate plane (Jacobi only).
    #[arg(long)]
    pub kplane: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Einstein,
    Kstein,
    Osserman,
    Szabo,
    NullNilpotent,
    NullTrace2,
    ConstantCurvature,
    SzaboZero,
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = checks::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Relative tolerance.
    #[arg(long, env = "CURVATURE_TOL", default_value_t = checks::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SamplingArgs {
    fn options(&self) -> CheckOptions {
        CheckOptions::new(self.samples, self.tol, self.seed)
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub check: CheckKind,
    pub file: PathBuf,
    /// Order for kstein / plane dimension for osserman.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoKind {
    NullLimit,
    BoostCoefficients,
    VanishingOrder,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(value_enum)]
    pub demo: DemoKind,
    pub file: PathBuf,
    /// null-limit: null vector x1 (real part). vanishing-order: null vector x.
    #[arg(long, alias = "x1", value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,
    #[arg(long, alias = "x1-imag", value_delimiter = ',', allow_hyphen_values = true)]
    pub x_imag: Option<Vec<f64>>,
    /// null-limit: partner x2. vanishing-order: direction y.
    #[arg(long, alias = "x2", value_delimiter = ',', allow_hyphen_values = true)]
    pub y: Option<Vec<f64>>,
    #[arg(long, alias = "x2-imag", value_delimiter = ',', allow_hyphen_values = true)]
    pub y_imag: Option<Vec<f64>>,
    /// null-limit: plane dimension. vanishing-order: trace power.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// null-limit: trace power.
    #[arg(long, default_value_t = 2)]
    pub power: usize,
    /// null-limit: t sequence. vanishing-order: t grid.
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    /// boost-coefficients: slot indices.
    #[arg(long, default_value_t = 2)]
    pub i: usize,
    #[arg(long, default_value_t = 2)]
    pub j: usize,
    /// boost-coefficients: angle grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub theta: Option<Vec<f64>>,
    #[command(flatten)]
    pub sampling: SamplingArgs,
}

fn parse_signature(s: &str) -> Result<SignatureSpace, String> {
    let (p, q) = s.split_once(',').ok_or("expected `p,q`")?;
    let p: usize = p.trim().parse().map_err(|e| format!("p: {e}"))?;
    let q: usize = q.trim().parse().map_err(|e| format!("q: {e}"))?;
    SignatureSpace::new(p, q).map_err(|e| e.to_string())
}

/// A rendered report plus the exit code implied by its verdict.
pub struct Outcome {
    pub command: &'static str,
    pub text: String,
    pub structured: String,
    pub exit: i32,
}

impl Outcome {
    fn check(command: &'static str, report: &CheckReport) -> Self {
        Self {
            command,
            text: render::check_text(report),
            structured: render::structured(command, report),
            exit: if report.verdict == Verdict::Pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            },
        }
    }
}

/// Executes a parsed command line, writing the report, and returns the exit code.
pub fn run(cli: &Cli) -> anyhow::Result<i32> {
    let outcome = execute(&cli.command)?;
    let rendered = match cli.format {
        Format::Text => &outcome.text,
        Format::Structured => &outcome.structured,
    };
    match &cli.output {
        Some(path) => {
            std::fs::write(path, rendered).with_context(|| format!("cannot write {}", path.display()))?;
            if cli.format == Format::Structured {
                print!("{}", outcome.text);
            }
        }
        None => print!("{rendered}"),
    }
    Ok(outcome.exit)
}

pub fn execute(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Generate(args) => generate(args),
        Command::Validate { file, tol } => {
            let tf = TensorFile::read(file)?;
            let report = match &tf.tensor {
                Tensor::Curv4(r) => r.validate(*tol),
                Tensor::Curv5(t) => t.validate(*tol),
            };
            Ok(Outcome {
                command: "validate",
                text: render::validation_text(&report),
                structured: render::structured("validate", &report),
                exit: if report.passed { EXIT_PASS } else { EXIT_FAIL },
            })
        }
        Command::Spectrum(args) => spectrum(args),
        Command::Check(args) => check(args),
        Command::Demo(args) => demo(args),
    }
}

fn generate(args: &GenerateArgs) -> anyhow::Result<Outcome> {
    let s = args.signature;
    let m = s.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let phi = args.phi.as_deref().map(|v| bilinear_from_list(v, m)).transpose()?;
    let mut tensor = match args.kind {
        GenerateKind::ConstantCurvature => Tensor::Curv4(tensors::constant_curvature(&s, args.c)),
        GenerateKind::FromBilinear => {
            let phi = phi.context("from-bilinear requires --phi")?;
            Tensor::Curv4(tensors::from_bilinear(&s, &phi)?)
        }
        GenerateKind::NablaForms => {
            let cubic = SymTrilinear::random(m, &mut rng);
            let quadratic = phi.unwrap_or_else(|| SymBilinear::random(m, &mut rng));
            Tensor::Curv5(tensors::nabla_from_forms(&s, &cubic, &quadratic)?)
        }
        GenerateKind::NilpotentSzabo => Tensor::Curv5(tensors::nilpotent_szabo_example(&s)?),
        GenerateKind::RandomCurv4 => Tensor::Curv4(tensors::random_curv4(&s, &mut rng)?),
        GenerateKind::RandomCurv5 => Tensor::Curv5(tensors::random_curv5(&s, &mut rng)?),
    };
    if let Some(eps) = args.perturb {
        tensor = match tensor {
            Tensor::Curv4(r) => {
                let n = tensors::random_curv4(&s, &mut rng)?;
                Tensor::Curv4(r.try_add(&n.scaled(eps / n.max_abs()))?)
            }
            Tensor::Curv5(t) => {
                let n = tensors::random_curv5(&s, &mut rng)?;
                Tensor::Curv5(t.try_add(&n.scaled(eps / n.max_abs()))?)
            }
        };
    }
    let kind_name = args
        .kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let file = TensorFile {
        tensor,
        storage: args.storage,
        metadata: Some(Metadata {
            name: Some(kind_name.clone()),
            provenance: Some(format!(
                "generate {kind_name} --signature {},{} --seed {}{}",
                s.p(),
                s.q(),
                args.seed,
                args.perturb.map(|e| format!(" --perturb {e}")).unwrap_or_default()
            )),
        }),
    };
    file.write(&args.out)?;
    let report = match &file.tensor {
        Tensor::Curv4(r) => r.validate(tensors::DEFAULT_VALIDATION_TOL),
        Tensor::Curv5(t) => t.validate(tensors::DEFAULT_VALIDATION_TOL),
    };
    Ok(Outcome {
        command: "generate",
        text: format!("wrote {}\n{}", args.out.display(), render::validation_text(&report)),
        structured: render::structured("generate", &report),
        exit: if report.passed { EXIT_PASS } else { EXIT_FAIL },
    })
}

fn bilinear_from_list(v: &[f64], m: usize) -> anyhow::Result<SymBilinear> {
    if v.len() == m {
        Ok(SymBilinear::diagonal(v))
    } else if v.len() == m * m {
        Ok(SymBilinear::from_matrix(&DMatrix::from_row_slice(m, m, v))?)
    } else {
        bail!(
            "--phi: expected {m} diagonal or {} row-major entries, found {}",
            m * m,
            v.len()
        )
    }
}

fn vector_arg(space: &SignatureSpace, name: &str, re: &[f64], im: Option<&[f64]>) -> anyhow::Result<ComplexVector> {
    let m = space.dim();
    if re.len() != m {
        bail!("--{name}: expected {m} components, found {}", re.len());
    }
    let re = DVector::from_column_slice(re);
    match im {
        None => Ok(complexify(&re)),
        Some(im) if im.len() == m => Ok(complex_combination(&re, &DVector::from_column_slice(im))),
        Some(im) => bail!("--{name}-imag: expected {m} components, found {}", im.len()),
    }
}

fn is_real(v: &ComplexVector) -> bool {
    v.iter().all(|z| z.im == 0.0)
}

fn spectrum(args: &SpectrumArgs) -> anyhow::Result<Outcome> {
    let tf = TensorFile::read(&args.file)?;
    let s = *tf.tensor.space();
    let report = match (&args.at, args.kplane, &tf.tensor) {
        (Some(re), None, tensor) => {
            let x = vector_arg(&s, "at", re, args.at_imag.as_deref())?;
            let (name, real) = match tensor {
                Tensor::Curv4(_) => ("jacobi", is_real(&x)),
                Tensor::Curv5(_) => ("szabo", is_real(&x)),
            };
            if real {
                let xr = x.map(|z| z.re);
                let op = match tensor {
                    Tensor::Curv4(r) => jacobi(r, &xr)?,
                    Tensor::Curv5(t) => szabo(t, &xr)?,
                };
                SpectrumReport::new(name, None, &[xr], &op)
            } else {
                let op = match tensor {
                    Tensor::Curv4(r) => jacobi(r, &x)?,
                    Tensor::Curv5(t) => szabo(t, &x)?,
                };
                SpectrumReport::new(name, None, &[x], &op)
            }
        }
        (None, Some(k), Tensor::Curv4(r)) => {
            if k == 0 || k >= s.dim() {
                bail!("--kplane: requires 1 <= k <= m-1 (m = {})", s.dim());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let plane = sample_kplane(&s, k, &mut rng)?;
            let op = jacobi_kplane(r, &plane)?;
            SpectrumReport::new("jacobi_kplane", Some(args.seed), plane.frame(), &op)
        }
        (None, Some(_), Tensor::Curv5(_)) => bail!("--kplane applies to curv4 tensors only"),
        _ => bail!("spectrum requires --at <vector> or --kplane <k>"),
    };
    Ok(Outcome {
        command: "spectrum",
        text: render::spectrum_text(&report),
        structured: render::structured("spectrum", &report),
        exit: EXIT_PASS,
    })
}

fn curv4<'a>(t: &'a Tensor, what: &str) -> anyhow::Result<&'a Curv4> {
    match t {
        Tensor::Curv4(r) => Ok(r),
        Tensor::Curv5(_) => bail!("{what} requires a curv4 tensor file"),
    }
}

fn curv5<'a>(t: &'a Tensor, what: &str) -> anyhow::Result<&'a Curv5> {
    match t {
        Tensor::Curv5(t) => Ok(t),
        Tensor::Curv4(_) => bail!("{what} requires a curv5 tensor file"),
    }
}

fn either(t: &Tensor) -> CurvatureRef<'_> {
    match t {
        Tensor::Curv4(r) => CurvatureRef::Curv4(r),
        Tensor::Curv5(t) => CurvatureRef::Curv5(t),
    }
}

fn check(args: &CheckArgs) -> anyhow::Result<Outcome> {
    let tf = TensorFile::read(&args.file)?;
    let t = &tf.tensor;
    let opts = args.sampling.options();
    let report = match args.check {
        CheckKind::Einstein => checks::check_einstein(curv4(t, "einstein")?, &opts)?,
        CheckKind::Kstein => checks::check_kstein(curv4(t, "kstein")?, args.k, &opts)?,
        CheckKind::Osserman => checks::check_osserman(curv4(t, "osserman")?, args.k, &opts)?,
        CheckKind::Szabo => checks::check_szabo_property(curv5(t, "szabo")?, &opts)?,
        CheckKind::NullNilpotent => checks::check_null_nilpotent(either(t), &opts)?,
        CheckKind::NullTrace2 => checks::check_null_trace2(curv4(t, "null-trace2")?, &opts)?,
        CheckKind::ConstantCurvature => checks::detect_constant_curvature(curv4(t, "constant-curvature")?, &opts)?,
        CheckKind::SzaboZero => checks::check_szabo_zero_implies_flat(curv5(t, "szabo-zero")?, &opts)?,
    };
    Ok(Outcome::check("check", &report))
}

/// Null vector from the arguments, or a seeded complex (else real) null draw.
fn null_or_sample<R: Rng>(
    space: &SignatureSpace,
    name: &str,
    re: Option<&[f64]>,
    im: Option<&[f64]>,
    rng: &mut R,
) -> anyhow::Result<ComplexVector> {
    match re {
        Some(re) => vector_arg(space, name, re, im),
        None => {
            let mode = if space.p() >= 2 || space.q() >= 2 {
                NullMode::Complex
            } else {
                NullMode::Real
            };
            Ok(sample_null(space, mode, rng)?)
        }
    }
}

fn vector_or_sample<R: Rng>(
    space: &SignatureSpace,
    name: &str,
    re: Option<&[f64]>,
    im: Option<&[f64]>,
    rng: &mut R,
) -> anyhow::Result<ComplexVector> {
    match re {
        Some(re) => vector_arg(space, name, re, im),
        None => Ok(complexify(&DVector::from_fn(space.dim(), |_, _| {
            rng.random_range(-1.0..1.0)
        }))),
    }
}

fn demo(args: &DemoArgs) -> anyhow::Result<Outcome> {
    let tf = TensorFile::read(&args.file)?;
    let s = *tf.tensor.space();
    let opts = args.sampling.options();
    // the check itself seeds from `seed`; default vectors use a separate stream
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(0x5eed));
    let report = match args.demo {
        DemoKind::NullLimit => {
            let r = curv4(&tf.tensor, "null-limit")?;
            let x1 = null_or_sample(&s, "x", args.x.as_deref(), args.x_imag.as_deref(), &mut rng)?;
            let x2 = vector_or_sample(&s, "y", args.y.as_deref(), args.y_imag.as_deref(), &mut rng)?;
            checks::null_limit_demo(r, &x1, &x2, args.k, args.power, args.t.as_deref(), &opts)?
        }
        DemoKind::BoostCoefficients => {
            let t = curv5(&tf.tensor, "boost-coefficients")?;
            checks::boost_coefficients(t, args.i, args.j, args.theta.as_deref())?
        }
        DemoKind::VanishingOrder => {
            let x = null_or_sample(&s, "x", args.x.as_deref(), args.x_imag.as_deref(), &mut rng)?;
            let y = vector_or_sample(&s, "y", args.y.as_deref(), args.y_imag.as_deref(), &mut rng)?;
            checks::check_vanishing_order(either(&tf.tensor), &x, &y, args.k, args.t.as_deref(), opts.tol)?
        }
    };
    Ok(Outcome::check("demo", &report))
}
