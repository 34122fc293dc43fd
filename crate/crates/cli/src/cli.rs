//! Command-line definitions and dispatch.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use toric_csm::chow::ChowPresentation;
use toric_csm::csm::{self, CsmOptions};
use toric_csm::fan::Fan;
use toric_csm::linalg::determinant;
use toric_csm::poly::{GradedClass, Monomial};

use crate::bench::{self, BenchOptions};
use crate::error::CliError;
use crate::fanfile::{parse_fan_file, FanFile};
use crate::report::{
    Check, ChowReport, ChowSummary, FanSummary, OutputReport, PresentationDetail, Timing,
    ValidationReport,
};
use crate::spec::FanSpec;

#[derive(Debug, Parser)]
#[command(
    name = "toric-csm",
    version,
    about = "Chern-Schwartz-MacPherson classes of complete simplicial toric varieties"
)]
pub struct Cli {
    /// Worker threads for the library (default: all cores). Output does not
    /// depend on this.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the c_SM class and Euler characteristic
    Csm(CsmArgs),
    /// Print only the Euler characteristic
    Euler(EulerArgs),
    /// Print the Chow ring presentation and its graded dimensions
    Chow(ChowArgs),
    /// Check a fan and cross-check the computation
    Validate(ValidateArgs),
    /// Run the timing table
    Bench(BenchArgs),
}

/// Exactly one of `--fan`, `--builder`, `--product`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FanSource {
    /// Fan file (TOML)
    #[arg(long, value_name = "FILE")]
    pub fan: Option<PathBuf>,

    /// Built-in fan: pn=N, hirzebruch=R, wps=q0,q1,... (or A*B for a product)
    #[arg(long, value_name = "SPEC")]
    pub builder: Option<String>,

    /// Product of built-in fans
    #[arg(long, value_name = "SPEC", num_args = 2..)]
    pub product: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct FanArgs {
    #[command(flatten)]
    pub source: FanSource,

    /// Only check structure (lengths, indices, simpliciality); skip
    /// primitivity, coverage and the wall condition
    #[arg(long)]
    pub trust_input: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Maximal cone whose variables are eliminated, e.g. 0,3 (default: the
    /// lexicographically smallest)
    #[arg(long, value_name = "I1,...,IN", value_delimiter = ',')]
    pub elim_cone: Option<Vec<usize>>,

    /// Compute every multiplicity with a Hermite normal form, even for smooth fans
    #[arg(long)]
    pub force_hnf: bool,

    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CsmArgs {
    #[command(flatten)]
    pub fan: FanArgs,
    #[command(flatten)]
    pub compute: ComputeArgs,
    /// Only sum the maximal cones; the report then has no c_SM class
    #[arg(long)]
    pub euler_only: bool,
}

#[derive(Debug, Args)]
pub struct EulerArgs {
    #[command(flatten)]
    pub fan: FanArgs,
    #[command(flatten)]
    pub compute: ComputeArgs,
    /// Implied; accepted for symmetry with `csm`
    #[arg(long, hide = true)]
    pub euler_only: bool,
}

#[derive(Debug, Args)]
pub struct ChowArgs {
    #[command(flatten)]
    pub fan: FanArgs,
    /// Maximal cone whose variables are eliminated
    #[arg(long, value_name = "I1,...,IN", value_delimiter = ',')]
    pub elim_cone: Option<Vec<usize>>,
    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub fan: FanArgs,
    /// Repeat the Chow ring checks with this many randomly chosen elimination cones
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub random_checks: usize,
    /// Seed for the random choices
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Run only this fan (repeatable); the default suite otherwise
    #[arg(long, value_name = "SPEC")]
    pub only: Vec<String>,
    /// Only the Euler-characteristic columns
    #[arg(long)]
    pub euler_only: bool,
    /// Skip the forced-Hermite-form columns
    #[arg(long)]
    pub skip_forced: bool,
    /// Machine-readable output
    #[arg(long)]
    pub json: bool,
}

impl FanArgs {
    pub fn load(&self) -> Result<Fan, CliError> {
        let s = &self.source;
        match (&s.fan, &s.builder, &s.product) {
            (Some(path), None, None) => parse_fan_file(path, self.trust_input),
            (None, Some(spec), None) => spec.parse::<FanSpec>()?.build(),
            (None, None, Some(specs)) => {
                let factors = specs
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<FanSpec>, _>>()?;
                FanSpec::product_of(factors).build()
            }
            _ => Err(CliError::Usage(
                "give exactly one of --fan, --builder, --product".into(),
            )),
        }
    }
}

fn emit<T: Serialize>(
    out: &mut dyn Write,
    json: bool,
    value: &T,
    human: impl FnOnce() -> String,
) -> Result<(), CliError> {
    if json {
        serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
        writeln!(out)?;
    } else {
        write!(out, "{}", human())?;
    }
    Ok(())
}

fn build_chow(
    fan: &Fan,
    elim: &Option<Vec<usize>>,
) -> Result<(ChowPresentation, std::time::Duration), CliError> {
    let start = Instant::now();
    let chow = ChowPresentation::build(fan, elim.as_deref())?;
    Ok((chow, start.elapsed()))
}

fn run_csm(args: &CsmArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let fan = args.fan.load()?;
    let (chow, chow_time) = build_chow(&fan, &args.compute.elim_cone)?;
    let opts = CsmOptions {
        force_hnf: args.compute.force_hnf,
    };
    let start = Instant::now();
    let (result, euler) = if args.euler_only {
        (None, csm::euler_characteristic(&fan, &chow, true, opts)?)
    } else {
        let r = csm::compute(&fan, &chow, opts)?;
        let euler = r.euler.clone();
        (Some(r), euler)
    };
    let timing = Timing::new(chow_time, start.elapsed());
    let report = OutputReport::new(&fan, &chow, result.as_ref(), &euler, opts, timing)?;
    emit(out, args.compute.json, &report, || report.render_human())
}

#[derive(Serialize)]
struct EulerReport {
    euler: String,
}

fn run_euler(args: &EulerArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let fan = args.fan.load()?;
    let (chow, _) = build_chow(&fan, &args.compute.elim_cone)?;
    let opts = CsmOptions {
        force_hnf: args.compute.force_hnf,
    };
    let euler = csm::euler_characteristic(&fan, &chow, true, opts)?;
    let report = EulerReport {
        euler: euler.to_string(),
    };
    emit(out, args.compute.json, &report, || format!("{euler}\n"))
}

fn run_chow(args: &ChowArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let fan = args.fan.load()?;
    let (chow, chow_time) = build_chow(&fan, &args.elim_cone)?;
    let report = ChowReport {
        fan: FanSummary::new(&fan, false)?,
        chow: ChowSummary::new(&chow),
        presentation: PresentationDetail::new(&chow),
        chow_ring_seconds: chow_time.as_secs_f64(),
    };
    emit(out, args.json, &report, || report.render_human())
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_owned(),
        passed,
        detail: detail.into(),
    }
}

/// Quantities that must not depend on the elimination cone.
#[derive(PartialEq, Eq, Debug)]
struct Invariants {
    euler: BigInt,
    graded_dimensions: Vec<usize>,
    /// degree of `x_sigma` for every maximal cone sigma
    point_degrees: Vec<BigRational>,
}

fn invariants(fan: &Fan, elim: Option<&[usize]>) -> Result<Invariants, CliError> {
    let chow = ChowPresentation::build(fan, elim)?;
    let point_degrees = fan
        .max_cones()
        .iter()
        .map(|c| {
            chow.degree(&GradedClass::term(
                Monomial::from_vars(c.rays()),
                BigRational::from_integer(1.into()),
            ))
        })
        .collect();
    Ok(Invariants {
        euler: csm::euler_characteristic(fan, &chow, false, CsmOptions::default())?,
        graded_dimensions: chow.graded_dimensions(),
        point_degrees,
    })
}

fn run_validate(args: &ValidateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let fan = args.fan.load()?;
    let mut checks = vec![check(
        "construction",
        true,
        if args.fan.trust_input {
            "structural checks passed (trusted input)"
        } else {
            "rays primitive, cones simplicial of full dimension, every ray used, walls shared by two cones"
        },
    )];
    let mut input_failure = None;
    if args.fan.trust_input {
        let file = FanFile::from_fan(&fan)?;
        match file.into_fan(false) {
            Ok(_) => checks.push(check("full validation", true, "passed")),
            Err(e) => {
                checks.push(check("full validation", false, e.to_string()));
                input_failure = Some(e);
            }
        }
    }

    let mut bad = Vec::new();
    for c in fan.max_cones() {
        let hnf = fan.multiplicity(c)?;
        let det = determinant(&fan.ray_matrix(c.rays()))?.abs();
        if hnf != det {
            bad.push(format!("{:?}: hnf {hnf}, det {det}", c.rays()));
        }
    }
    checks.push(if bad.is_empty() {
        check(
            "multiplicities",
            true,
            "Hermite form agrees with |det| on every maximal cone",
        )
    } else {
        check("multiplicities", false, bad.join("; "))
    });

    if input_failure.is_none() {
        let base = invariants(&fan, None)?;
        let cones = fan.max_cones().len();
        let h_sum: usize = base.graded_dimensions.iter().sum();
        checks.push(check(
            "h-vector",
            h_sum == cones,
            format!(
                "graded dimensions {:?} sum to {h_sum}, {cones} maximal cones",
                base.graded_dimensions
            ),
        ));
        checks.push(check(
            "euler",
            base.euler == BigInt::from(cones),
            format!("degree of c_SM is {}, {cones} maximal cones", base.euler),
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for _ in 0..args.random_checks {
            let cone = fan
                .max_cones()
                .choose(&mut rng)
                .expect("a validated fan has maximal cones");
            let other = invariants(&fan, Some(cone.rays()))?;
            checks.push(check(
                &format!("elimination cone {:?}", cone.rays()),
                other == base,
                if other == base {
                    "Euler characteristic, graded dimensions and degrees unchanged".to_owned()
                } else {
                    format!("{other:?} differs from {base:?}")
                },
            ));
        }
    }

    let report = ValidationReport {
        fan: FanSummary::new(&fan, true)?,
        cone_counts: (1..=fan.dim()).map(|d| fan.cones(d).len()).collect(),
        checks,
        seed: (args.random_checks > 0).then_some(args.seed),
    };
    emit(out, args.json, &report, || report.render_human())?;
    if let Some(e) = input_failure {
        return Err(e);
    }
    if !report.passed() {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        return Err(toric_csm::Error::InconsistentFanData(format!(
            "failed checks: {}",
            failed.join(", ")
        ))
        .into());
    }
    Ok(())
}

fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let opts = BenchOptions {
        only: args
            .only
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?,
        euler_only: args.euler_only,
        skip_forced: args.skip_forced,
    };
    let report = bench::run(&opts)?;
    emit(out, args.json, &report, || report.render_human())
}

/// Runs a parsed command line, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Csm(a) => run_csm(a, out),
        Command::Euler(a) => run_euler(a, out),
        Command::Chow(a) => run_chow(a, out),
        Command::Validate(a) => run_validate(a, out),
        Command::Bench(a) => run_bench(a, out),
    }
}

/// Parses `args` (including the program name) and runs them, returning the
/// process exit code. Reports go to `out`, diagnostics to `err`.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successful runs printed to stdout
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 1;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    if let Some(n) = cli.threads {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
