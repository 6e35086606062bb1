//! CLI for the quadrupole / screw-dislocation bound-state solver.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 physics precondition
//! failure (bound condition / confinement), 3 validation tolerance
//! failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qdefect::oracle::{solve, RadialGrid};
use qdefect::params::{QuantumNumbers, RadialProblem, ScalarPotential, SystemParams};
use qdefect::spectrum::{self, eigenfunction, unbound_advisory};
use qdefect::sweep::{emit_csv, emit_plot, run_sweep, SweepSpec, SweptParam};
use qdefect::Error;

mod config;

const VALIDATE_TOL: f64 = 1e-6;
const OUT_DIR_ENV: &str = "QDEFECT_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "qdefect",
    about = "Bound states of an electric quadrupole in a screw-dislocated medium",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form energy level for one (n, l).
    Spectrum(PhysArgs),
    /// Sample the normalized radial eigenfunction to CSV.
    Wavefunction(WavefunctionArgs),
    /// Cross-check closed-form energies against the finite-difference solver.
    Validate(ValidateArgs),
    /// Sweep one parameter and emit CSV (and optionally an SVG plot).
    Sweep(SweepArgs),
}

/// Physics flags shared by every subcommand. All optional so a config
/// file can supply defaults; explicit flags win.
#[derive(Args, Clone)]
struct PhysArgs {
    /// Field configuration: 1 (no potential) or 2 (with V = C1 rho^2 + C2/rho^2 + C3).
    #[arg(long)]
    case: Option<u8>,
    /// Particle mass (natural units), m > 0.
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
    /// Quadrupole constant Q.
    #[arg(long = "Q", allow_hyphen_values = true)]
    q: Option<f64>,
    /// Linear electric charge density.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Magnetic-field constant.
    #[arg(long = "Cm", allow_hyphen_values = true)]
    cm: Option<f64>,
    /// Screw-dislocation parameter beta = b_z / 2 pi.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Wave number along the defect axis.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    /// Angular momentum quantum number (any integer).
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i32>,
    /// Radial quantum number, n >= 0.
    #[arg(long)]
    n: Option<u32>,
    /// Case-2 potential coefficient C1 (rho^2 term).
    #[arg(long = "C1", allow_hyphen_values = true)]
    c1: Option<f64>,
    /// Case-2 potential coefficient C2 (1/rho^2 term).
    #[arg(long = "C2", allow_hyphen_values = true)]
    c2: Option<f64>,
    /// Case-2 potential coefficient C3 (constant term).
    #[arg(long = "C3", allow_hyphen_values = true)]
    c3: Option<f64>,
    /// Optional key=value file supplying defaults for any flag above.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    phys: PhysArgs,
    /// Outer sampling radius (default: past the classical turning point).
    #[arg(long)]
    rho_max: Option<f64>,
    /// Number of sample points.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    phys: PhysArgs,
    /// Highest radial quantum number to check.
    #[arg(long, default_value_t = 3)]
    n_max: u32,
    /// Override the coarsest grid size.
    #[arg(long)]
    grid_points: Option<usize>,
    /// Override the number of refinement levels.
    #[arg(long)]
    levels: Option<usize>,
    /// Test hook: feed the oracle (only) a different beta.
    #[arg(long, hide = true, allow_hyphen_values = true)]
    oracle_beta: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    phys: PhysArgs,
    /// Parameter to sweep: Q, Cm, beta, lambda, k, C1, C2 or C3.
    #[arg(long)]
    param: String,
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    /// Number of sweep points (inclusive endpoints).
    #[arg(long, default_value_t = 26)]
    steps: usize,
    /// Comma-separated n values, one curve each.
    #[arg(long, default_value = "1,2,3", value_delimiter = ',')]
    levels: Vec<u32>,
    /// CSV output path.
    #[arg(long)]
    csv: PathBuf,
    /// Optional SVG plot path.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Also run the finite-difference solver at every valid point.
    #[arg(long)]
    verify: bool,
}

/// Fully resolved run configuration.
struct RunConfig {
    case: u8,
    params: SystemParams,
    potential: Option<ScalarPotential>,
    qn: QuantumNumbers,
}

fn resolve(phys: &PhysArgs) -> Result<RunConfig, CliError> {
    let file = match &phys.config {
        Some(path) => config::load(path).map_err(CliError::Usage)?,
        None => config::FileConfig::default(),
    };
    let case = phys.case.or(file.case).unwrap_or(1);
    if case != 1 && case != 2 {
        return Err(CliError::Usage(format!("--case must be 1 or 2, got {case}")));
    }
    let c_given = phys.c1.is_some() || phys.c2.is_some() || phys.c3.is_some();
    if case == 1 && c_given {
        return Err(CliError::Usage(
            "--C1/--C2/--C3 apply to --case 2 only".into(),
        ));
    }
    let pick = |flag: Option<f64>, key: &str, default: f64| -> f64 {
        flag.or_else(|| file.get(key)).unwrap_or(default)
    };
    let params = SystemParams::new(
        pick(phys.m, "m", 1.0),
        pick(phys.q, "Q", 1.0),
        pick(phys.lambda, "lambda", 0.0),
        pick(phys.cm, "Cm", 1.0),
        pick(phys.beta, "beta", 0.0),
        pick(phys.k, "k", 0.0),
    )
    .map_err(CliError::from)?;
    let potential = if case == 2 {
        Some(
            ScalarPotential::new(
                pick(phys.c1, "C1", 0.0),
                pick(phys.c2, "C2", 0.0),
                pick(phys.c3, "C3", 0.0),
            )
            .map_err(CliError::from)?,
        )
    } else {
        None
    };
    let qn = QuantumNumbers::new(
        phys.n.or(file.n).unwrap_or(0),
        phys.l.or(file.l).unwrap_or(0),
    );
    Ok(RunConfig { case, params, potential, qn })
}

/// Error carrying its process exit code.
enum CliError {
    Usage(String),
    Physics(Error),
    Validation(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundConditionViolated { .. }
            | Error::NoConfinement
            | Error::AllPointsInvalid => CliError::Physics(e),
            Error::InvalidParameter(_) => CliError::Usage(e.to_string()),
            Error::Io { .. } | Error::Parse { .. } => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl CliError {
    fn report(self) -> ExitCode {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            CliError::Physics(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
            CliError::Validation(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
            CliError::Io(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

/// Resolve `path` against QDEFECT_OUT_DIR when it is relative.
fn out_path(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

// 17 significant digits: round-trip exact for f64.
fn full(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_spectrum(args: &PhysArgs) -> Result<(), CliError> {
    let cfg = resolve(args)?;
    let c = qdefect::effective_couplings(&cfg.params, cfg.potential.as_ref(), cfg.qn)?;
    let e = spectrum::energy(&cfg.params, cfg.potential.as_ref(), cfg.qn)?;
    let big_l = c.angular_index();
    let shape = 1.0 + 2.0 * cfg.qn.n as f64 + big_l;
    let shape_name = if cfg.case == 1 { "delta" } else { "tau" };
    let advisory = unbound_advisory(&cfg.params, cfg.potential.as_ref(), cfg.qn);
    println!("case              {}", cfg.case);
    println!("n                 {}", cfg.qn.n);
    println!("l                 {}", cfg.qn.l);
    println!("energy            {}", full(e));
    println!("{shape_name:<17} {}", full(shape));
    println!("Omega             {}", full(c.omega));
    println!("L                 {}", full(big_l));
    println!("bound_condition   satisfied (L^2 = {})", full(c.lsq));
    println!("unbound_advisory  {}", if advisory { "yes" } else { "no" });
    Ok(())
}

fn cmd_wavefunction(args: &WavefunctionArgs) -> Result<(), CliError> {
    let cfg = resolve(&args.phys)?;
    let psi = eigenfunction(&cfg.params, cfg.potential.as_ref(), cfg.qn, true)?;
    let sol = &psi.solution;
    let omega = sol.laguerre_arg_scale;
    let big_l = sol.laguerre_index;
    let rho_max = args.rho_max.unwrap_or_else(|| {
        // Classical turning point of the top of this state plus a few
        // Gaussian widths.
        let eps = 2.0 * omega * (2.0 * cfg.qn.n as f64 + 1.0 + big_l);
        (eps.sqrt() / omega) + 5.0 / omega.sqrt()
    });
    if !(rho_max > 0.0) || args.samples < 2 {
        return Err(CliError::Usage("need rho_max > 0 and samples >= 2".into()));
    }
    let mut out = String::from("rho,psi,density\n");
    for i in 0..args.samples {
        let rho = rho_max * i as f64 / (args.samples - 1) as f64;
        let v = psi.eval(rho);
        out.push_str(&format!("{rho},{v},{}\n", v * v * rho));
    }
    match &args.out {
        Some(path) => {
            let path = out_path(path);
            std::fs::write(&path, out)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        None => print!("{out}"),
    }
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), CliError> {
    let cfg = resolve(&args.phys)?;
    let count = args.n_max as usize + 1;

    let oracle_params = match args.oracle_beta {
        Some(beta) => SystemParams { beta, ..cfg.params },
        None => cfg.params,
    };
    let problem = RadialProblem::new(&oracle_params, cfg.potential.as_ref(), cfg.qn)?;
    let mut grid = RadialGrid::for_problem(&problem, count);
    if let Some(p) = args.grid_points {
        grid.points = p;
        grid.rho_min = grid.rho_max / (p as f64 + 1.0);
    }
    if let Some(l) = args.levels {
        grid.refinement_levels = l;
    }
    let oracle = solve(&problem, &grid, count)?;

    println!("n   E_analytic              E_oracle                rel_err      order");
    let mut worst: Option<(u32, f64)> = None;
    for n in 0..count {
        let q = QuantumNumbers::new(n as u32, cfg.qn.l);
        let e_a = spectrum::energy(&cfg.params, cfg.potential.as_ref(), q)?;
        let e_o = oracle.energies[n];
        let rel = (e_o - e_a).abs() / e_a.abs().max(f64::MIN_POSITIVE);
        println!(
            "{:<3} {:<23} {:<23} {:<12.3e} {:.3}",
            n,
            full(e_a),
            full(e_o),
            rel,
            oracle.observed_order[n]
        );
        if worst.map_or(true, |(_, w)| rel > w) {
            worst = Some((n as u32, rel));
        }
    }
    if let Some((n, rel)) = worst {
        if rel >= VALIDATE_TOL {
            return Err(CliError::Validation(format!(
                "worst offender n = {n}: rel_err = {rel:.3e} >= {VALIDATE_TOL:e}"
            )));
        }
        println!("max rel_err {rel:.3e} (n = {n}) < {VALIDATE_TOL:e}");
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let cfg = resolve(&args.phys)?;
    let swept: SweptParam = args.param.parse()?;
    let spec = SweepSpec {
        swept,
        from: args.from,
        to: args.to,
        steps: args.steps,
        levels: args.levels.clone(),
        base: cfg.params,
        potential: cfg.potential,
        l: cfg.qn.l,
        verify: args.verify,
    };
    if !(spec.from < spec.to) {
        return Err(CliError::Usage(format!(
            "sweep range must satisfy from < to, got [{}, {}]",
            spec.from, spec.to
        )));
    }
    let rows = run_sweep(&spec)?;
    let csv_path = out_path(&args.csv);
    emit_csv(&rows, &csv_path)?;
    if let Some(plot) = &args.plot {
        emit_plot(&rows, &out_path(plot))?;
    }
    let gaps = rows
        .iter()
        .filter(|r| r.status != qdefect::sweep::RowStatus::Ok)
        .count();
    let max_rel = rows.iter().filter_map(|r| r.rel_err).fold(f64::NAN, f64::max);
    if args.verify && max_rel.is_finite() {
        println!(
            "wrote {} rows ({} gaps) to {}; max rel_err {max_rel:.3e}",
            rows.len(),
            gaps,
            csv_path.display()
        );
    } else {
        println!(
            "wrote {} rows ({} gaps) to {}",
            rows.len(),
            gaps,
            csv_path.display()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let result = match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Wavefunction(args) => cmd_wavefunction(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}
