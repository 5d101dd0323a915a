//! Batch command line around the SPPT toolkit.
//!
//! Exit codes: 0 = analysis completed (verdicts are data, not errors),
//! 1 = conjecture violation found or state not representable,
//! 2 = usage or input error.
//!
//! The environment variable `SPPT_TOL` overrides the factorization residual
//! tolerance (a decimal number, default 1e-8).

mod complexparse;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sppt_core::channel::StateChannel;
use sppt_core::factor::{canonical_factorize, SamplerKind};
use sppt_core::harness::{run_conjecture, HarnessConfig};
use sppt_core::io::{self, FactorFile, MatrixFile};
use sppt_core::{Error, FamilySpec, Tolerance};

use complexparse::{parse_complex_matrix, parse_real_list};

#[derive(Parser)]
#[command(
    name = "sppt",
    about = "Construct, analyze, factorize, and conjecture-test bipartite states \
             with strong positive partial transpose",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named family state and write it as a matrix file.
    Gen(GenArgs),
    /// Report PPT, SPPT (along the canonical factorization), and the
    /// realignment value of a matrix file.
    Verdict { input: PathBuf },
    /// Sample SPPT states and test the separability conjecture with the
    /// realignment criterion.
    Conjecture(ConjectureArgs),
    /// Entanglement-breaking diagnostics for the channel induced by a state.
    Channel { input: PathBuf },
    /// Extract the canonical block upper-triangular factor of a state.
    Factorize {
        input: PathBuf,
        /// Output path for the factor file.
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: FamilyCommand,
    /// Output path for the matrix file.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Werner state on N (x) N: p * antisymmetric + (1-p) * I/N^2.
    Werner {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0, conflicts_with = "maximally_mixed")]
        p: f64,
        /// Shorthand for p = 0.
        #[arg(long)]
        maximally_mixed: bool,
    },
    /// Isotropic state on N (x) N: p * P+ + (1-p) * I/N^2.
    Isotropic {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0, conflicts_with = "maximally_mixed")]
        p: f64,
        /// Shorthand for p = 0.
        #[arg(long)]
        maximally_mixed: bool,
    },
    /// 2 (x) 2 circulant state from two PSD 2x2 matrices.
    #[command(name = "circulant-2x2")]
    Circulant2x2 {
        /// 2x2 complex matrix, rows separated by ';', entries by ','
        /// (example: "1, 0.2+0.1i; 0.2-0.1i, 1").
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Two-qubit orthogonally invariant state with a + b + c = 1.
    #[command(name = "orthogonally-invariant")]
    OrthogonallyInvariant {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        c: f64,
    },
    /// One-parameter 2 (x) 4 PPT-entangled family, b in [0, 1].
    #[command(name = "horodecki-2x4")]
    Horodecki2x4 {
        #[arg(long)]
        b: f64,
    },
    /// One-parameter 3 (x) 3 PPT-entangled family, a in [0, 1].
    #[command(name = "horodecki-3x3")]
    Horodecki3x3 {
        #[arg(long)]
        a: f64,
    },
    /// N (x) N diagonal-class state from a PSD matrix a and positive
    /// coefficients b_ij.
    #[command(name = "diagonal-class")]
    DiagonalClass {
        #[arg(long)]
        n: usize,
        /// NxN complex matrix (rows ';', entries ',').
        #[arg(long)]
        a: String,
        /// N(N-1) positive reals for the pairs (i, j), i != j, row-major.
        #[arg(long)]
        b: String,
    },
    /// N (x) N circulant state from N PSD shift matrices.
    Circulant {
        #[arg(long)]
        n: usize,
        /// One NxN complex matrix per cyclic shift; repeat N times.
        #[arg(long = "shift")]
        shifts: Vec<String>,
    },
}

#[derive(Args)]
struct ConjectureArgs {
    /// Dimension of subsystem A.
    #[arg(short, long)]
    m: usize,
    /// Dimension of subsystem B.
    #[arg(short, long)]
    n: usize,
    #[arg(long)]
    count: usize,
    /// One of: commuting, hermitian, normal-2xn (M = 2 only).
    #[arg(long, default_value = "commuting")]
    sampler: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path; without it the report JSON goes to stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match tolerance_from_env() {
        Ok(tol) => tol,
        Err(message) => return usage_error(&message),
    };
    match run(cli, &tol) {
        Ok(code) => code,
        Err(CliError { message, code }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotRepresentable { .. } => 1,
            _ => 2,
        };
        Self {
            message: e.to_string(),
            code,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self {
            message: e.to_string(),
            code: 2,
        }
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn tolerance_from_env() -> Result<Tolerance, String> {
    match std::env::var("SPPT_TOL") {
        Ok(raw) => {
            let value: f64 = raw
                .trim()
                .parse()
                .map_err(|_| format!("SPPT_TOL must be a decimal number, got {raw:?}"))?;
            Tolerance::with_residual_tol(value).map_err(|e| e.to_string())
        }
        Err(_) => Ok(Tolerance::default()),
    }
}

fn run(cli: Cli, tol: &Tolerance) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen(args) => cmd_gen(args, tol),
        Command::Verdict { input } => cmd_verdict(&input, tol),
        Command::Conjecture(args) => cmd_conjecture(args, tol),
        Command::Channel { input } => cmd_channel(&input, tol),
        Command::Factorize { input, output } => cmd_factorize(&input, &output, tol),
    }
}

fn cmd_gen(args: GenArgs, tol: &Tolerance) -> Result<ExitCode, CliError> {
    let output = args
        .output
        .ok_or_else(|| CliError::usage("gen requires --output <path>"))?;
    let (spec, params) = family_from_command(args.family)?;
    let state = spec.state(tol)?;

    let mut metadata = BTreeMap::new();
    metadata.insert("family".to_string(), spec.family_id().to_string());
    for (key, value) in params {
        metadata.insert(format!("param.{key}"), value);
    }
    let file = MatrixFile::from_state(&state, metadata);
    io::write_json_file(&output, &file)?;
    let (m, n) = spec.dims();
    println!(
        "wrote {} ({m} (x) {n} state, family {})",
        output.display(),
        spec.family_id()
    );
    Ok(ExitCode::SUCCESS)
}

type Params = Vec<(&'static str, String)>;

fn family_from_command(cmd: FamilyCommand) -> Result<(FamilySpec, Params), CliError> {
    Ok(match cmd {
        FamilyCommand::Werner { n, p, maximally_mixed } => {
            let p = if maximally_mixed { 0.0 } else { p };
            (
                FamilySpec::Werner { n, p },
                vec![("n", n.to_string()), ("p", p.to_string())],
            )
        }
        FamilyCommand::Isotropic { n, p, maximally_mixed } => {
            let p = if maximally_mixed { 0.0 } else { p };
            (
                FamilySpec::Isotropic { n, p },
                vec![("n", n.to_string()), ("p", p.to_string())],
            )
        }
        FamilyCommand::Circulant2x2 { a, b } => {
            let spec = FamilySpec::Circulant2x2 {
                a: parse_complex_matrix(&a, 2).map_err(CliError::usage)?,
                b: parse_complex_matrix(&b, 2).map_err(CliError::usage)?,
            };
            (spec, vec![("a", a), ("b", b)])
        }
        FamilyCommand::OrthogonallyInvariant { a, b, c } => (
            FamilySpec::OrthogonallyInvariant { a, b, c },
            vec![
                ("a", a.to_string()),
                ("b", b.to_string()),
                ("c", c.to_string()),
            ],
        ),
        FamilyCommand::Horodecki2x4 { b } => (
            FamilySpec::Horodecki2x4 { b },
            vec![("b", b.to_string())],
        ),
        FamilyCommand::Horodecki3x3 { a } => (
            FamilySpec::Horodecki3x3 { a },
            vec![("a", a.to_string())],
        ),
        FamilyCommand::DiagonalClass { n, a, b } => {
            let spec = FamilySpec::DiagonalClass {
                n,
                a: parse_complex_matrix(&a, n).map_err(CliError::usage)?,
                b: parse_real_list(&b).map_err(CliError::usage)?,
            };
            (spec, vec![("n", n.to_string()), ("a", a), ("b", b)])
        }
        FamilyCommand::Circulant { n, shifts } => {
            if shifts.len() != n {
                return Err(CliError::usage(format!(
                    "circulant on {n} (x) {n} needs exactly {n} --shift matrices, got {}",
                    shifts.len()
                )));
            }
            let parsed = shifts
                .iter()
                .map(|s| parse_complex_matrix(s, n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::usage)?;
            let params = vec![("n", n.to_string()), ("shifts", shifts.join(" | "))];
            (FamilySpec::CirculantNxN { n, shifts: parsed }, params)
        }
    })
}

fn cmd_verdict(input: &Path, tol: &Tolerance) -> Result<ExitCode, CliError> {
    let file: MatrixFile = io::read_json_file(input)?;
    let state = file.to_state(tol)?;
    println!("dims: {} (x) {}", state.dim_a(), state.dim_b());
    println!("trace: {}", state.trace());

    let (class, min_eig) = state.ppt_class(tol)?;
    println!(
        "PPT: {} (min eigenvalue of partial transpose = {min_eig:.6e}{})",
        if class.as_bool() { "yes" } else { "no" },
        if class == sppt_core::PptClass::Marginal {
            ", marginal"
        } else {
            ""
        }
    );

    match canonical_factorize(&state, tol) {
        Ok(factor) => {
            let verdict = factor.sppt_verdict(tol);
            println!(
                "SPPT: {} (along canonical factorization; max defect = {:.6e}, threshold = {:.6e})",
                if verdict.is_sppt { "yes" } else { "no" },
                verdict.max_defect,
                verdict.threshold
            );
            println!(
                "conditions: max residual = {:.6e} over {} condition(s)",
                verdict.conditions_max(),
                verdict.condition_residuals.len()
            );
        }
        Err(Error::NotRepresentable { i, j, residual }) => {
            println!(
                "SPPT: no (not representable along canonical factorization: \
                 block ({i}, {j}) residual = {residual:.6e})"
            );
        }
        Err(e) => return Err(e.into()),
    }

    let realignment = state.realignment_value(tol)?;
    println!(
        "realignment: {realignment:.9} ({})",
        if realignment > 1.0 + tol.residual_tol {
            "> 1: certifies entanglement"
        } else {
            "<= 1: inconclusive"
        }
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_conjecture(args: ConjectureArgs, tol: &Tolerance) -> Result<ExitCode, CliError> {
    let sampler = SamplerKind::parse(&args.sampler)
        .filter(|k| *k != SamplerKind::Generic)
        .ok_or_else(|| {
            CliError::usage(format!(
                "unknown sampler {:?}; expected commuting, hermitian, or normal-2xn",
                args.sampler
            ))
        })?;
    if args.count < 1 {
        return Err(CliError::usage("count must be at least 1"));
    }
    let cfg = HarnessConfig {
        dim_a: args.m,
        dim_b: args.n,
        count: args.count,
        sampler,
        master_seed: args.seed,
        tolerance: *tol,
    };
    let report = run_conjecture(&cfg)?;

    match &args.output {
        Some(path) => {
            io::write_json_file(path, &report)?;
            println!(
                "samples: {}, violations: {}, max realignment = {:.9}, \
                 min eigenvalue of partial transposes = {:.3e}, max sppt defect = {:.3e}",
                report.sample_count,
                report.aggregate.violations,
                report.aggregate.max_realignment,
                report.aggregate.min_eigenvalue,
                report.aggregate.max_sppt_defect
            );
            println!("report written to {}", path.display());
        }
        None => print!("{}", io::to_json(&report)?),
    }

    if report.has_violations() {
        eprintln!(
            "conjecture violation: {} sample(s) exceeded realignment 1 + {:.1e}; \
             seeds are recorded in the report",
            report.aggregate.violations,
            tol.residual_tol
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_channel(input: &Path, tol: &Tolerance) -> Result<ExitCode, CliError> {
    let file: MatrixFile = io::read_json_file(input)?;
    let state = file.to_state(tol)?;
    let channel = StateChannel::new(state);
    let report = channel.eb_report(tol)?;
    println!(
        "channel: M_{} -> M_{}",
        channel.dim_in(),
        channel.dim_out()
    );
    println!("CP: {}", if report.cp { "yes" } else { "no" });
    println!("TP defect: {:.6e}", report.tp_defect);
    println!(
        "Choi PPT: {} (min eigenvalue of partial transpose = {:.6e})",
        if report.choi_ppt { "yes" } else { "no" },
        report.choi_min_eig_pt
    );
    println!("Choi realignment: {:.9}", report.choi_realignment);
    println!("EB: {}", report.status.label());
    Ok(ExitCode::SUCCESS)
}

fn cmd_factorize(input: &Path, output: &Path, tol: &Tolerance) -> Result<ExitCode, CliError> {
    let file: MatrixFile = io::read_json_file(input)?;
    let state = file.to_state(tol)?;
    match canonical_factorize(&state, tol) {
        Ok(factor) => {
            let rebuilt = factor.assemble_state();
            let residual = rebuilt.matrix().max_abs_diff(state.matrix());
            let factor_file = FactorFile::from_factor(&factor, residual);
            io::write_json_file(output, &factor_file)?;
            println!(
                "wrote {} (reconstruction residual = {residual:.6e})",
                output.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::NotRepresentable { i, j, residual }) => {
            eprintln!(
                "not representable: block ({i}, {j}) leaves residual {residual:.6e} \
                 outside the row space of its diagonal block"
            );
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}
