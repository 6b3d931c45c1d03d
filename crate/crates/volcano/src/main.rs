use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use volcano::config::{ExpansionValue, RunConfig};
use volcano::output::{self, Format, UnitsReport};
use volcano::{grid, parallel, CliError, Result, RunManifest};
use volcano_core::fd::{cross_validate, OracleMode};
use volcano_core::spectrum::analyze;
use volcano_core::units::{delta_e_for_wavelength, UnitContext, ELECTRON_MASS};
use volcano_core::{Param, PotentialSpec, Precision};

/// Bound-state spectra of cosh-sech potentials by the asymptotic iteration method.
#[derive(Parser, Debug)]
#[command(name = "volcano", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "tsv")]
    csv: bool,
    #[arg(long, global = true)]
    tsv: bool,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = parallel::JOBS_ENV)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
}

#[derive(Args, Debug, Default)]
struct SolverArgs {
    /// Number of iterations.
    #[arg(long)]
    k: Option<usize>,
    /// Expansion point: valley, max, or a value of u = sinh x.
    #[arg(long, allow_hyphen_values = true)]
    u0: Option<String>,
    #[arg(long, value_enum)]
    precision: Option<PrecisionArg>,
    /// Jet order beyond the k + 2 minimum.
    #[arg(long)]
    extra_order: Option<usize>,
    #[arg(long)]
    tol_converge: Option<f64>,
    #[arg(long)]
    tol_imag: Option<f64>,
    /// Energy window for candidate roots.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
    /// Largest gap between two states reported as a near-degenerate pair.
    #[arg(long)]
    pair_threshold: Option<f64>,
    /// Report the transition across the barrier top in physical units.
    #[arg(long)]
    wavelength: bool,
    /// Length scale in angstrom.
    #[arg(long)]
    x0: Option<f64>,
    /// Particle mass in kg.
    #[arg(long)]
    mass: Option<f64>,
}

impl SolverArgs {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            k: self.k,
            u0: self.u0.clone().map(ExpansionValue::Name),
            precision: self.precision.map(|p| match p {
                PrecisionArg::Double => Precision::Double,
                PrecisionArg::Extended => Precision::Extended,
            }),
            extra_order: self.extra_order,
            tol_converge: self.tol_converge,
            tol_imag: self.tol_imag,
            window: self.window.as_ref().map(|w| (w[0], w[1])),
            pair_threshold: self.pair_threshold,
            x0: self.x0,
            mass: self.mass,
            wavelength: self.wavelength.then_some(true),
            ..RunConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectrum at one parameter point, e.g. `solve 'coshsech(a=3,b=1)'`.
    Solve {
        spec: Option<String>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Bound states along a line in parameter space.
    Sweep {
        spec: Option<String>,
        #[arg(long)]
        param: Param,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Gap of the near-degenerate pair at E = -0.25 against the damping c.
    Split {
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        /// Comma list or log:FROM:TO:COUNT, optionally prefixed with `0+`.
        #[arg(long)]
        c_grid: Option<String>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Compare the solver with a finite-difference diagonalization.
    Oracle {
        spec: Option<String>,
        /// Half width of the box.
        #[arg(long = "L")]
        half_width: Option<f64>,
        /// Interior grid points.
        #[arg(long = "N")]
        points: Option<usize>,
        /// Number of FD levels to compute.
        #[arg(long)]
        levels: Option<usize>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Photon wavelength for a dimensionless energy difference.
    Units {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "lambda")]
        de: Option<f64>,
        /// Invert: the energy difference for this wavelength in um.
        #[arg(long, conflicts_with = "de", allow_hyphen_values = true)]
        lambda: Option<f64>,
        #[arg(long)]
        x0: Option<f64>,
        #[arg(long)]
        mass: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("volcano: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn parse_spec(text: Option<&str>) -> Result<PotentialSpec> {
    let text = text.ok_or_else(|| CliError::Usage("no potential given, e.g. 'coshsech(a=3,b=1)'".into()))?;
    text.parse().map_err(CliError::from)
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    let file = match &g.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let format = if g.csv {
        Format::Csv
    } else if g.tsv {
        Format::Tsv
    } else {
        Format::Json
    };
    let command_line: Vec<String> = std::env::args().skip(1).collect();
    let out = g.output.as_deref();
    let manifest = |input: Option<String>, config: serde_json::Value| {
        RunManifest::new(command_line.clone(), input, &config).with_output(out)
    };

    match &cli.command {
        Command::Solve { spec, solver } => {
            let cfg = solver.to_config().over(&file);
            let spec = parse_spec(spec.as_deref().or(cfg.spec.as_deref()))?;
            let opts = cfg.analysis_options()?;
            opts.config_for(&spec).validate()?;
            let report = analyze(&spec, &opts)?;
            let m = manifest(Some(spec.to_string()), json!({ "analysis": opts }));
            output::emit(
                &output::render(format, &m, &report, || output::solve_table(&report))?,
                out,
            )
        }
        Command::Sweep {
            spec,
            param,
            from,
            to,
            steps,
            solver,
        } => {
            let cfg = solver.to_config().over(&file);
            let spec = parse_spec(spec.as_deref().or(cfg.spec.as_deref()))?;
            let opts = cfg.analysis_options()?;
            opts.config_for(&spec).validate()?;
            let values = grid::linspace(*from, *to, *steps)?;
            let rows = parallel::sweep(&spec, *param, &values, &opts, g.jobs.or(cfg.jobs))?;
            let m = manifest(
                Some(spec.to_string()),
                json!({ "analysis": opts, "param": param, "from": from, "to": to, "steps": steps }),
            );
            output::emit(&output::render(format, &m, &rows, || output::sweep_table(&rows))?, out)
        }
        Command::Split { a, b, c_grid, solver } => {
            let cfg = solver.to_config().over(&file);
            let opts = cfg.analysis_options()?;
            let cs = match c_grid {
                Some(text) => grid::parse_c_grid(text)?,
                None => grid::default_c_grid(),
            };
            let probe = PotentialSpec::modified(*a, *b, cs[0])?;
            opts.config_for(&probe).validate()?;
            let rows = parallel::splitting_curve(*a, *b, &cs, &opts, g.jobs.or(cfg.jobs))?;
            let m = manifest(None, json!({ "analysis": opts, "a": a, "b": b, "c_grid": cs }));
            output::emit(&output::render(format, &m, &rows, || output::split_table(&rows))?, out)
        }
        Command::Oracle {
            spec,
            half_width,
            points,
            levels,
            solver,
        } => {
            let flags = RunConfig {
                half_width: *half_width,
                points: *points,
                levels: *levels,
                ..solver.to_config()
            };
            let cfg = flags.over(&file);
            let spec = parse_spec(spec.as_deref().or(cfg.spec.as_deref()))?;
            let opts = cfg.analysis_options()?;
            let oracle = cfg.oracle_options()?;
            let solver_cfg = opts.config_for(&spec);
            solver_cfg.validate()?;
            let cv = cross_validate(&spec, &solver_cfg, &oracle)?;
            if cv.mode == OracleMode::Advisory {
                eprintln!(
                    "ADVISORY: {spec} is unbounded below. The lowest FD levels are bound to the box walls \
                     and move with L; only truncation-stable levels are compared."
                );
            }
            for c in &cv.comparisons {
                match (c.fd, c.rel_dev) {
                    (Some(fd), Some(rel)) => eprintln!(
                        "aim {:>14.8}  fd {:>14.8}  rel {:>9.2e}  {}",
                        c.aim,
                        fd,
                        rel,
                        if c.agrees { "agree" } else { "DIFFER" }
                    ),
                    _ => eprintln!("aim {:>14.8}  no stable FD level", c.aim),
                }
            }
            let m = manifest(Some(spec.to_string()), json!({ "analysis": opts, "oracle": oracle }));
            output::emit(&output::render(format, &m, &cv, || output::oracle_table(&cv))?, out)
        }
        Command::Units { de, lambda, x0, mass } => {
            let cfg = RunConfig {
                x0: *x0,
                mass: *mass,
                ..RunConfig::default()
            }
            .over(&file);
            let ctx = UnitContext::new(cfg.x0.unwrap_or(10.0), cfg.mass.unwrap_or(ELECTRON_MASS))?;
            let delta_e = match (de, lambda) {
                (Some(d), _) => *d,
                (None, Some(l)) => delta_e_for_wavelength(*l, &ctx)?,
                (None, None) => return Err(CliError::Usage("give --de or --lambda".into())),
            };
            let report = UnitsReport::new(delta_e, &ctx)?;
            let m = manifest(None, json!({ "units": ctx }));
            output::emit(&output::render(format, &m, &report, || report.table())?, out)
        }
    }
}
