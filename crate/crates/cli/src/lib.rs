//! The `qaoa` command-line tool: problem files in, JSON results out.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 runtime error, 3 when
//! `verify` finds a failing check.

pub mod formats;
pub mod report;

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use qaoa_core::ansatz::MAX_TRANSITION_BASIS;
use qaoa_core::oracle::{brute_force, catalog_entry, instance_catalog};
use qaoa_core::problems::{tsp_phase_diagonal, MAX_FEASIBLE};
use qaoa_core::vqa::{depth_sweep, vqa_loop};
use qaoa_core::{
    Ansatz, AnsatzSpec, EvaluationMode, InitialState, MaxBisection, MaxCut, MixerKind,
    OptimizerConfig, OptimizerMethod, PhaseKind, Problem, ProblemInstance, QaoaError,
    SimulationMode, Tsp,
};

use formats::{graph_to_text, read_problem_file, tsp_to_text, ProblemFile};
use report::{emit, OracleOut, SolveReport, SweepReport};

#[derive(Debug, Parser)]
#[command(name = "qaoa", version, about = "Simulate and optimize QAOA circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize the angles and report the best run.
    Solve(SolveArgs),
    /// Check the transition condition, feasibility and phase identities.
    Verify(VerifyArgs),
    /// Optimize at every depth from 1 to --p-max.
    Sweep(SweepArgs),
    /// Brute-force statistics of the problem.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Maxcut,
    Maxbis,
    Tsp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    NelderMead,
    Grid,
    GridNelderMead,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["problem", "catalog"])))]
pub struct ProblemArgs {
    /// Graph or TSP problem file.
    #[arg(long, value_name = "PATH")]
    pub problem: Option<PathBuf>,
    /// Built-in instance name.
    #[arg(long, value_name = "NAME")]
    pub catalog: Option<String>,
    /// Problem family; graph files default to maxcut.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Print the parsed problem in canonical file form and exit.
    #[arg(long)]
    pub dump_problem: bool,
}

fn parse_name<T>(s: &str) -> Result<T, String>
where
    T: FromStr,
    T::Err: fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct AnsatzArgs {
    /// transverse, xy-ring, xy-ring-product, xy-clique, grover, tsp-swap or tsp-partial-swap.
    #[arg(long, value_parser = parse_name::<MixerKind>)]
    pub mixer: Option<MixerKind>,
    /// cost, zz or tsp-g.
    #[arg(long, value_parser = parse_name::<PhaseKind>)]
    pub phase: Option<PhaseKind>,
    /// plus, dicke:K, perm:C0,C1,... or perm-superposition.
    #[arg(long, value_parser = parse_name::<InitialState>)]
    pub init: Option<InitialState>,
    /// dense or subspace.
    #[arg(long, value_parser = parse_name::<SimulationMode>)]
    pub mode: Option<SimulationMode>,
    /// Number of layers.
    #[arg(short = 'p', long = "depth", default_value_t = 1)]
    pub depth: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizerArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::GridNelderMead)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
    /// Relative objective spread treated as converged.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Random simplex starts for p >= 2.
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    /// Grid points per angle axis.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// Optimize the sample mean over this many shots instead of the exact expectation.
    #[arg(long, conflicts_with = "exact")]
    pub shots: Option<usize>,
    /// Optimize the exact expectation (the default).
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Brute-force the optimum and report the approximation ratio.
    #[arg(long)]
    pub oracle: bool,
    /// Write the JSON result here instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub ansatz: AnsatzArgs,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub ansatz: AnsatzArgs,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    /// Largest depth.
    #[arg(long)]
    pub p_max: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub ansatz: AnsatzArgs,
    /// Mixer angle for the transition check.
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub beta: f64,
    /// Mixer applications allowed per transition; defaults to the instance size.
    #[arg(long)]
    pub r_max: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
    ChecksFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::ChecksFailed => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
            CliError::ChecksFailed => write!(f, "verification failed"),
        }
    }
}

/// Setup errors are the caller's fault unless they are resource limits.
fn setup_error(e: QaoaError) -> CliError {
    match e {
        QaoaError::Resource(_) => CliError::Runtime(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn runtime_error(e: impl fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::ChecksFailed) {
                eprintln!("{e}");
            }
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Oracle(a) => oracle(a),
    }
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Maxcut => "maxcut",
        KindArg::Maxbis => "maxbis",
        KindArg::Tsp => "tsp",
    }
}

fn graph_problem(graph: qaoa_core::Graph, kind: KindArg) -> Result<ProblemInstance, CliError> {
    match kind {
        KindArg::Maxcut => Ok(MaxCut::new(graph).into()),
        KindArg::Maxbis => Ok(MaxBisection::new(graph).map_err(setup_error)?.into()),
        KindArg::Tsp => Err(CliError::Usage("a graph cannot be read as a tsp instance".into())),
    }
}

/// Resolves the problem source to a display name and an instance.
pub fn load_problem(args: &ProblemArgs) -> Result<(String, ProblemInstance), CliError> {
    if let Some(name) = &args.catalog {
        let entry = catalog_entry(name).ok_or_else(|| {
            let names: Vec<&str> = instance_catalog().iter().map(|e| e.name).collect();
            CliError::Usage(format!("unknown catalog instance `{name}` (known: {})", names.join(", ")))
        })?;
        let problem = match (args.kind, entry.problem.graph()) {
            (None, _) => entry.problem,
            (Some(kind), _) if kind_name(kind) == entry.problem.kind().to_string() => entry.problem,
            (Some(kind), Some(graph)) => graph_problem(graph.clone(), kind)?,
            (Some(kind), None) => {
                return Err(CliError::Usage(format!(
                    "catalog instance `{name}` is a tsp instance, not {}",
                    kind_name(kind)
                )))
            }
        };
        return Ok((name.clone(), problem));
    }
    let path = args
        .problem
        .as_ref()
        .ok_or_else(|| CliError::Usage("one of --problem or --catalog is required".into()))?;
    let parsed = read_problem_file(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let problem = match parsed {
        ProblemFile::Graph(g) => graph_problem(g, args.kind.unwrap_or(KindArg::Maxcut))?,
        ProblemFile::Tsp(t) => match args.kind {
            None | Some(KindArg::Tsp) => Tsp::new(t).map_err(setup_error)?.into(),
            Some(kind) => {
                return Err(CliError::Usage(format!(
                    "{} holds a tsp instance, not {}",
                    path.display(),
                    kind_name(kind)
                )))
            }
        },
    };
    Ok((path.display().to_string(), problem))
}

/// Canonical file text for `problem`.
pub fn canonical_text(problem: &ProblemInstance) -> String {
    match problem {
        ProblemInstance::MaxCut(p) => graph_to_text(p.graph()),
        ProblemInstance::MaxBisection(p) => graph_to_text(p.graph()),
        ProblemInstance::Tsp(t) => tsp_to_text(t.instance()),
    }
}

/// Loads the problem; `None` means the canonical form was printed instead.
fn prepare_problem(args: &ProblemArgs) -> Result<Option<(String, ProblemInstance)>, CliError> {
    let (name, problem) = load_problem(args)?;
    if args.dump_problem {
        print!("{}", canonical_text(&problem));
        return Ok(None);
    }
    Ok(Some((name, problem)))
}

/// The designated ansatz of `problem` with any flag overrides, validated.
pub fn build_spec(args: &AnsatzArgs, problem: &ProblemInstance) -> Result<AnsatzSpec, CliError> {
    let mut spec = AnsatzSpec::designated(problem, args.depth);
    if let Some(m) = args.mixer {
        spec.mixer = m;
        if m == MixerKind::TransverseField {
            spec.mode = SimulationMode::Dense;
        }
    }
    if let Some(p) = args.phase {
        spec.phase = p;
        if p == PhaseKind::ZzGates && problem.kind() == qaoa_core::ProblemKind::MaxCut {
            spec.mode = SimulationMode::Dense;
        }
    }
    if let Some(i) = &args.init {
        spec.initial = i.clone();
    }
    if let Some(mode) = args.mode {
        spec.mode = mode;
    }
    spec.validate(problem).map_err(setup_error)?;
    Ok(spec)
}

pub fn build_config(args: &OptimizerArgs) -> Result<OptimizerConfig, CliError> {
    let config = OptimizerConfig {
        method: match args.method {
            MethodArg::NelderMead => OptimizerMethod::NelderMead,
            MethodArg::Grid => OptimizerMethod::Grid,
            MethodArg::GridNelderMead => OptimizerMethod::GridThenNelderMead,
        },
        max_iter: args.max_iter,
        tolerance: args.tol,
        restarts: args.restarts,
        grid_resolution: args.grid,
        seed: args.seed,
        evaluation_mode: match args.shots {
            Some(shots) => EvaluationMode::Sampled { shots },
            None => EvaluationMode::Exact,
        },
        ..OptimizerConfig::default()
    };
    config.validate().map_err(setup_error)?;
    Ok(config)
}

fn solve(args: &SolveArgs) -> Result<(), CliError> {
    let Some((name, problem)) = prepare_problem(&args.problem)? else {
        return Ok(());
    };
    let spec = build_spec(&args.ansatz, &problem)?;
    let config = build_config(&args.optimizer)?;
    let report = if args.optimizer.oracle {
        Some(brute_force(&problem).map_err(runtime_error)?)
    } else {
        None
    };
    let run = vqa_loop(&spec, &problem, &config, report.as_ref()).map_err(runtime_error)?;
    let sampled = args.optimizer.shots.is_some();
    emit(&SolveReport::new(&name, &problem, &run, sampled), args.optimizer.out.as_deref())
        .map_err(runtime_error)
}

fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    if args.p_max == 0 {
        return Err(CliError::Usage("--p-max must be at least 1".into()));
    }
    let Some((name, problem)) = prepare_problem(&args.problem)? else {
        return Ok(());
    };
    let spec = build_spec(&args.ansatz, &problem)?;
    let config = build_config(&args.optimizer)?;
    let report = if args.optimizer.oracle {
        Some(brute_force(&problem).map_err(runtime_error)?)
    } else {
        None
    };
    let result =
        depth_sweep(&spec, &problem, &config, args.p_max, report.as_ref()).map_err(runtime_error)?;
    let sampled = args.optimizer.shots.is_some();
    let out = SweepReport {
        runs: result
            .runs
            .iter()
            .map(|r| SolveReport::new(&name, &problem, r, sampled))
            .collect(),
        monotone: result.monotone,
    };
    emit(&out, args.optimizer.out.as_deref()).map_err(runtime_error)
}

fn oracle(args: &OracleArgs) -> Result<(), CliError> {
    let Some((name, problem)) = prepare_problem(&args.problem)? else {
        return Ok(());
    };
    let report = brute_force(&problem).map_err(runtime_error)?;
    emit(&OracleOut::new(&name, &problem, &report), args.out.as_deref()).map_err(runtime_error)
}

/// One row of the `verify` table.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Leakage tolerance and the number of mixer angles swept by `verify`.
pub const LEAKAGE_TOLERANCE: f64 = 1e-12;
pub const LEAKAGE_ANGLES: usize = 16;
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

/// Runs the transition, leakage and phase-identity checks.
pub fn run_checks(
    spec: &AnsatzSpec,
    problem: &ProblemInstance,
    beta: f64,
    r_max: usize,
) -> Result<Vec<CheckOutcome>, CliError> {
    let count = problem.feasible_count();
    if count > MAX_TRANSITION_BASIS {
        return Err(CliError::Runtime(format!(
            "{count} feasible states exceeds the verification budget of {MAX_TRANSITION_BASIS}"
        )));
    }
    let ansatz = Ansatz::new(spec, problem).map_err(setup_error)?;
    let reachable = ansatz.transition_condition(beta, r_max).map_err(runtime_error)?;
    let mut checks = vec![CheckOutcome {
        name: "transition_condition",
        passed: reachable,
        detail: format!("{count} feasible states, beta={beta}, r_max={r_max}"),
    }];

    let dense = Ansatz::new(&spec.with_mode(SimulationMode::Dense), problem).map_err(runtime_error)?;
    let mut worst: f64 = 0.0;
    for k in 0..LEAKAGE_ANGLES {
        let b = k as f64 * 2.0 * PI / LEAKAGE_ANGLES as f64;
        let mut state = dense.initial_state().clone();
        dense.apply_mixer(&mut state, b).map_err(runtime_error)?;
        worst = worst.max(dense.leakage(&state));
    }
    checks.push(CheckOutcome {
        name: "feasibility_leakage",
        passed: worst < LEAKAGE_TOLERANCE,
        detail: format!("max leakage {worst:e} over {LEAKAGE_ANGLES} mixer angles"),
    });

    let (deviation, what) = phase_identity_deviation(problem)?;
    checks.push(CheckOutcome {
        name: "phase_identity",
        passed: deviation < IDENTITY_TOLERANCE,
        detail: format!("{what}, max deviation {deviation:e}"),
    });
    Ok(checks)
}

fn phase_identity_deviation(problem: &ProblemInstance) -> Result<(f64, &'static str), CliError> {
    if problem.feasible_count() > MAX_FEASIBLE {
        return Err(CliError::Runtime("feasible set too large to enumerate".into()));
    }
    let basis = problem.feasible_basis().map_err(runtime_error)?;
    let mut worst: f64 = 0.0;
    match problem {
        ProblemInstance::Tsp(t) => {
            let diagonal = tsp_phase_diagonal(t).map_err(runtime_error)?;
            let inst = t.instance();
            let n = inst.num_cities() as f64;
            for (&z, &g) in basis.iter().zip(diagonal.values()) {
                let cost = problem.cost(z).map_err(runtime_error)?;
                let closed = 4.0 * cost + (n - 4.0) * inst.total_cost();
                worst = worst.max((g - closed).abs());
            }
            Ok((worst, "H_TSP = 4C + (n-4) sum d"))
        }
        _ => {
            let graph = problem.graph().expect("cut problems carry a graph");
            for &z in &basis {
                let cut = problem.cost(z).map_err(runtime_error)?;
                worst = worst.max((graph.zz_eigenvalue(z) - (graph.total_weight() - 2.0 * cut)).abs());
            }
            Ok((worst, "sum w ZZ = W - 2C"))
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<(), CliError> {
    let Some((_, problem)) = prepare_problem(&args.problem)? else {
        return Ok(());
    };
    let spec = build_spec(&args.ansatz, &problem)?;
    let r_max = args.r_max.unwrap_or_else(|| problem.size());
    if r_max == 0 {
        return Err(CliError::Usage("--r-max must be at least 1".into()));
    }
    let checks = run_checks(&spec, &problem, args.beta, r_max)?;
    println!("{:<22} {:<6} detail", "check", "result");
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        println!("{:<22} {:<6} {}", c.name, status, c.detail);
    }
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}
