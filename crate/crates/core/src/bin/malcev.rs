use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use malcev::bundle::{read_bundle, report_record, to_canonical_string, write_bundle, AlgebraBundle, BundleError, EmbeddingSpec};
use malcev::cayley_dickson::{build_m7, build_m7_over, build_sample_coordinates, M7Variant};
use malcev::factorization::{
    check_annihilator_hypothesis, coordinatize_module, kronecker_factorize, verify_embedding, Embedding, FactorizationError,
};
use malcev::involution::{
    canonical_form_m7, factorize_with_involution, induced_form, induced_involution, j_admissibility, verify_involution,
    InvolutionError,
};
use malcev::module_theory::{adjoint_restriction, decompose_into_irreducibles, verify_module, DecomposeError, Representation};
use malcev::structure::{grassmann_envelope, is_simple};
use malcev::{parse_rational, verify_h_variety, verify_malcev, AlgebraError, QReport, Report, Status, Witness, Q};

#[derive(Parser)]
#[command(name = "malcev", version, about = "Exact checks and factorizations for Malcev (super)algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a bundle for a standard algebra.
    #[command(subcommand)]
    Build(Build),
    /// Run identity and structure checks on an algebra bundle.
    Check {
        file: PathBuf,
        #[arg(long)]
        malcev: bool,
        #[arg(long)]
        h_variety: bool,
        #[arg(long)]
        simple: bool,
    },
    /// Split the host, viewed as a module over the embedded algebra, into regular components.
    Decompose {
        file: PathBuf,
        /// Bundle whose `embedding` field is used (defaults to FILE).
        #[arg(long)]
        embedding: Option<PathBuf>,
    },
    /// Recover the coordinate algebra U with host = M7 ⊗ U.
    Factorize {
        file: PathBuf,
        #[arg(long)]
        embedding: Option<PathBuf>,
        /// Bundle whose `involution` field is used; requires --form.
        #[arg(long, requires = "form")]
        involution: Option<PathBuf>,
        /// Bundle whose `form` field is used; requires --involution.
        #[arg(long, requires = "involution")]
        form: Option<PathBuf>,
        /// Write the recovered U bundle here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the M7(U)-module M7(W) from a U-module W.
    Coordinatize {
        u_file: PathBuf,
        w_file: PathBuf,
        /// Write the module bundle here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the super-Malcev check with the check on a Grassmann envelope.
    Envelope {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        generators: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Build {
    /// M7, or M7 ⊗ U for a sample coordinate algebra U.
    M7 {
        #[command(flatten)]
        params: M7Params,
        /// field, dual, split-quadratic, dual-odd, truncated:N or grassmann:N
        #[arg(long)]
        coords: Option<String>,
        /// Also store the induced form and the involution a ⊗ u ↦ -a ⊗ u.
        #[arg(long)]
        with_involution: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A sample coordinate algebra.
    Coords {
        kind: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The regular module of an algebra bundle.
    Regular {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct M7Params {
    #[arg(long, default_value = "split")]
    variant: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    gamma: String,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Emitter {
    command: &'static str,
    reports: Vec<QReport>,
}

impl Emitter {
    fn report(&mut self, r: QReport) {
        println!("{}", report_record(&r));
        self.reports.push(r);
    }

    fn bundle(&self, name: &str, b: &AlgebraBundle, out: Option<&Path>) -> Result<(), BundleError> {
        let doc: serde_json::Value = serde_json::from_str(&to_canonical_string(b)).expect("canonical text is JSON");
        println!("{}", serde_json::json!({ "type": "bundle", "name": name, "bundle": doc }));
        if let Some(path) = out {
            write_bundle(b, path)?;
        }
        Ok(())
    }
}

fn parse_params(p: &M7Params) -> Result<(M7Variant, Q), InputError> {
    let variant = p.variant.parse().map_err(|_| InputError(format!("unknown variant `{}`", p.variant)))?;
    let gamma = parse_rational(&p.gamma).ok_or_else(|| InputError(format!("`{}` is not an exact rational", p.gamma)))?;
    Ok((variant, gamma))
}

fn load_algebra(path: &Path) -> Result<(AlgebraBundle, malcev::QAlgebra), InputError> {
    let b = read_bundle(path)?;
    let a = b.to_algebra()?;
    Ok((b, a))
}

fn load_embedding(own: &AlgebraBundle, other: Option<&Path>) -> Result<Embedding<Q>, InputError> {
    match other {
        Some(p) => Ok(read_bundle(p)?.to_embedding()?),
        None => Ok(own.to_embedding()?),
    }
}

fn failure(check: &str, indices: Vec<usize>, description: String) -> QReport {
    Report::fail(check, 0, Witness { indices, defect: Vec::new(), description })
}

fn factorization_failure(e: FactorizationError) -> Result<QReport, InputError> {
    let indices = match &e {
        FactorizationError::CentroidViolation { generator, i, j } => vec![*generator, *i, *j],
        FactorizationError::NotClosed { i, j }
        | FactorizationError::NotSupercommutative { i, j }
        | FactorizationError::IsoCheckFailed { i, j } => vec![*i, *j],
        FactorizationError::NotAssociative { i, j, k } => vec![*i, *j, *k],
        FactorizationError::DimensionMismatch { host, coordinates } => vec![*host, *coordinates],
        FactorizationError::HypothesisViolated(_) | FactorizationError::Mismatch(_) => Vec::new(),
        FactorizationError::Algebra(a) => return Err(InputError(a.to_string())),
    };
    Ok(failure("factorize", indices, e.to_string()))
}

fn run_build(cmd: Build) -> Result<(), InputError> {
    let (bundle, out) = match cmd {
        Build::M7 { params, coords, with_involution, out } => {
            let (variant, gamma) = parse_params(&params)?;
            let u = match &coords {
                Some(kind) => Some(build_sample_coordinates::<Q>(kind)?),
                None => None,
            };
            let algebra = match &u {
                Some(u) => build_m7_over(variant, &gamma, u)?,
                None => build_m7(variant, &gamma)?,
            };
            let mut b = AlgebraBundle::from_algebra(&algebra);
            if variant == M7Variant::Division {
                b.gamma = Some(gamma.clone());
            }
            if let Some(u) = &u {
                b.embedding = Some(EmbeddingSpec::from_embedding(&Embedding::into_tensor(variant, gamma.clone(), u)?));
                if with_involution {
                    let f = induced_form(&canonical_form_m7(variant, &gamma)?, u)?;
                    b.form = Some(f.gram);
                    b.involution = Some(induced_involution(u));
                }
            } else {
                b.embedding = Some(EmbeddingSpec::from_embedding(&Embedding::identity(variant, gamma.clone())?));
                if with_involution {
                    b.form = Some(canonical_form_m7(variant, &gamma)?.gram);
                    b.involution = Some(malcev::Matrix::identity(7).scale(&-Q::from_integer(1.into())));
                }
            }
            (b, out)
        }
        Build::Coords { kind, out } => (AlgebraBundle::from_algebra(&build_sample_coordinates::<Q>(&kind)?), out),
        Build::Regular { file, out } => {
            let (_, a) = load_algebra(&file)?;
            (AlgebraBundle::from_representation(&Representation::regular(&a)), out)
        }
    };
    match out {
        Some(path) => write_bundle(&bundle, path)?,
        None => print!("{}", to_canonical_string(&bundle)),
    }
    Ok(())
}

fn run(command: Command, em: &mut Emitter) -> Result<(), InputError> {
    match command {
        Command::Build(_) => unreachable!("handled before reports are emitted"),
        Command::Check { file, malcev, h_variety, simple } => {
            let (_, a) = load_algebra(&file)?;
            let none = !(malcev || h_variety || simple);
            if malcev || none {
                em.report(verify_malcev(&a));
            }
            if h_variety {
                em.report(verify_h_variety(&a));
            }
            if simple {
                em.report(is_simple(&a));
            }
        }
        Command::Decompose { file, embedding } => {
            let (b, host) = load_algebra(&file)?;
            let emb = load_embedding(&b, embedding.as_deref())?;
            let r = verify_embedding(&host, &emb);
            let ok = r.passed();
            em.report(r);
            if !ok {
                return Ok(());
            }
            let rep = adjoint_restriction(&host, &emb)?;
            let start = std::time::Instant::now();
            let report = match decompose_into_irreducibles(&rep) {
                Ok(d) => {
                    let mut r = Report::pass("decompose", d.components.len());
                    for (n, c) in d.components.iter().enumerate() {
                        let (v, x, y) = c.witness;
                        r = r.with_note(format!(
                            "component {n}: parity {}, alpha({}, e{}, e{})",
                            c.parity,
                            rep.carrier_labels[v],
                            x + 1,
                            y + 1
                        ));
                    }
                    r
                }
                Err(DecomposeError::HypothesisViolated { witness }) => Report::fail(
                    "decompose",
                    0,
                    Witness {
                        indices: Vec::new(),
                        defect: witness,
                        description: "carrier vector annihilated by the acting algebra".into(),
                    },
                ),
                Err(DecomposeError::Intertwining { component, x }) => failure(
                    "decompose",
                    vec![component, x],
                    format!("component {component} does not intertwine basis element {x}"),
                ),
                Err(DecomposeError::Algebra(e)) => return Err(e.into()),
                Err(e) => failure("decompose", Vec::new(), e.to_string()),
            };
            em.report(report.timed(start.elapsed()));
        }
        Command::Factorize { file, embedding, involution, form, out } => {
            let (b, host) = load_algebra(&file)?;
            let emb = load_embedding(&b, embedding.as_deref())?;
            for r in [verify_embedding(&host, &emb), check_annihilator_hypothesis(&host, &emb)] {
                let ok = r.passed();
                em.report(r);
                if !ok {
                    return Ok(());
                }
            }
            let start = std::time::Instant::now();
            let result = match (involution, form) {
                (Some(s), Some(f)) => {
                    let sigma = read_bundle(s)?.to_involution()?;
                    let form = read_bundle(f)?.to_form()?;
                    em.report(verify_involution(&host, &sigma));
                    em.report(j_admissibility(&host, &sigma));
                    match factorize_with_involution(&host, &emb, &sigma, &form) {
                        Ok(inv) => {
                            em.report(
                                Report::pass("symmetric-coordinates", inv.adjoints.len())
                                    .with_note(format!("skew part has dimension {}", inv.skew.len())),
                            );
                            Ok(inv.result)
                        }
                        Err(InvolutionError::Factorization(e)) => Err(e),
                        Err(InvolutionError::NotSymmetric(i)) => {
                            em.report(failure("symmetric-coordinates", vec![i], format!("operator {i} of U is not symmetric")));
                            return Ok(());
                        }
                        Err(InvolutionError::NotInvolution(_) | InvolutionError::NotJAdmissible(_)) => return Ok(()),
                        Err(e) => return Err(e.into()),
                    }
                }
                _ => kronecker_factorize(&host, &emb),
            };
            match result {
                Ok(res) => {
                    let (even, odd) = res.graded_dims();
                    em.report(
                        Report::pass("factorize", res.operators.len())
                            .with_note(format!("dim U = {} ({even}|{odd})", res.dim_u()))
                            .timed(start.elapsed()),
                    );
                    em.bundle("U", &AlgebraBundle::from_algebra(&res.u), out.as_deref())?;
                }
                Err(e) => em.report(factorization_failure(e)?.timed(start.elapsed())),
            }
        }
        Command::Coordinatize { u_file, w_file, out } => {
            let (_, u) = load_algebra(&u_file)?;
            let w = read_bundle(&w_file)?.to_representation(&u)?;
            let start = std::time::Instant::now();
            match coordinatize_module(&u, &w) {
                Ok(c) => {
                    em.report(
                        Report::pass("coordinatize", c.module.carrier_dim())
                            .with_note(format!("M7(U) has dimension {}", c.m7u.dim()))
                            .timed(start.elapsed()),
                    );
                    em.report(verify_module(&c.module, false));
                    em.bundle("module", &AlgebraBundle::from_representation(&c.module), out.as_deref())?;
                }
                Err(e @ (AlgebraError::ModuleHypothesis(_) | AlgebraError::CoordinateAlgebra(_))) => {
                    em.report(failure("coordinatize", Vec::new(), e.to_string()).timed(start.elapsed()))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Envelope { file, generators, out } => {
            if !(1..=8).contains(&generators) {
                return Err(InputError("--generators must be between 1 and 8".into()));
            }
            let (_, a) = load_algebra(&file)?;
            let direct = verify_malcev(&a);
            let env = grassmann_envelope(&a, generators);
            let mut lifted = verify_malcev(&env);
            lifted.check = "envelope-malcev".into();
            lifted = lifted.with_note(format!("envelope dimension {}", env.dim()));
            let agree = direct.passed() == lifted.passed();
            em.report(direct);
            em.report(lifted);
            em.report(if agree {
                Report::pass("envelope-consistency", 1)
            } else {
                failure("envelope-consistency", Vec::new(), "direct and envelope checks disagree".into())
            });
            if let Some(path) = out {
                write_bundle(&AlgebraBundle::from_algebra(&env), path)?;
            }
        }
    }
    Ok(())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Build(_) => "build",
        Command::Check { .. } => "check",
        Command::Decompose { .. } => "decompose",
        Command::Factorize { .. } => "factorize",
        Command::Coordinatize { .. } => "coordinatize",
        Command::Envelope { .. } => "envelope",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Build(b) = cli.command {
        return match run_build(b) {
            Ok(()) => ExitCode::SUCCESS,
            Err(InputError(msg)) => {
                eprintln!("malcev build: {msg}");
                ExitCode::from(2)
            }
        };
    }
    let mut em = Emitter { command: command_name(&cli.command), reports: Vec::new() };
    if let Err(InputError(msg)) = run(cli.command, &mut em) {
        eprintln!("malcev {}: {msg}", em.command);
        return ExitCode::from(2);
    }
    let count = |s: Status| em.reports.iter().filter(|r| r.status == s).count();
    let (passed, failed, errors) = (count(Status::Pass), count(Status::Fail), count(Status::Error));
    eprintln!("malcev {}: {} checks, {passed} passed, {failed} failed, {errors} undecided", em.command, em.reports.len());
    for r in em.reports.iter().filter(|r| !r.passed()) {
        let detail = r.witness.as_ref().map(|w| w.description.clone()).unwrap_or_else(|| r.notes.join("; "));
        eprintln!("  {} {}: {detail}", r.status.as_str(), r.check);
    }
    if failed > 0 {
        ExitCode::from(1)
    } else if errors > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
