use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use daqc_harness::csv::{write_text, Table};
use daqc_harness::device::{
    impedance_report, linear_grid, reference_circuit, rwa_report, spectrum_preset, spectrum_report, RwaCase,
};
use daqc_harness::lattice::{compile_report, fidelity_experiment, mean_fidelity_experiment, timing_table};
use daqc_harness::{ExperimentConfig, HarnessError, InitialStateSpec, Result};

/// Digital-analog simulation experiments for a charge-qubit/SQUID chain.
#[derive(Parser)]
#[command(name = "daqc", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random initial states.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// `key = value` configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct LatticeArgs {
    /// Sites per row.
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    /// Dimensionless simulated time 𝒜t.
    #[arg(long)]
    at: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Lowest four charge-qubit levels over a gate-charge grid.
    Spectrum {
        /// coupled-even, coupled-gamma4, coupled-ej4, qubit1 or qubit2.
        #[arg(long)]
        preset: Option<String>,
        /// E_J in units of E_C.
        #[arg(long)]
        ej: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        ng_min: f64,
        #[arg(long, default_value_t = 1.0)]
        ng_max: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Subtract the ground level from every column.
        #[arg(long)]
        transitions: bool,
    },
    /// SQUID to qubit impedance ratio over external flux.
    Impedance {
        /// E_Js/2π in GHz.
        #[arg(long, default_value_t = 50.0)]
        ejs_ghz: f64,
        /// SQUID capacitance in fF.
        #[arg(long, default_value_t = 12.0)]
        cs: f64,
        #[arg(long, default_value_t = 0.0)]
        phi_min: f64,
        #[arg(long, default_value_t = 1.5)]
        phi_max: f64,
        #[arg(long, default_value_t = 61)]
        points: usize,
    },
    /// Lab-frame versus rotating-frame populations for the drive scenarios.
    RwaCheck {
        /// two-qubit, three-qubit, exchange, pair, control or all. With `all`, --out is a directory.
        #[arg(long, default_value = "all")]
        case: String,
        /// RK4 step in ns.
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, default_value_t = 0.05)]
        sample_every: f64,
    },
    /// Compile a lattice into analog blocks and export the schedule.
    Compile {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Include the on-site interaction.
        #[arg(long)]
        coulomb: bool,
        /// On-site strength relative to 𝒜.
        #[arg(long)]
        onsite: Option<f64>,
    },
    /// Fidelity of compiled against exact evolution along the 𝒜t grid.
    Simulate {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Comma-separated Trotter step counts.
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<usize>>,
        /// e.g. `up@1,1;up@2,2`, `ghz-pair` or `random(7)`.
        #[arg(long)]
        initial: Option<String>,
        #[arg(long)]
        time_samples: Option<usize>,
    },
    /// Endpoint fidelity over seeded random initial states.
    Benchmark {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Number of random states.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<usize>>,
    },
    /// Hardware durations per Trotter step count.
    Timing {
        /// Comma-separated lattice widths.
        #[arg(long, value_delimiter = ',')]
        cols: Option<Vec<usize>>,
        #[arg(long)]
        at: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        steps: Option<Vec<usize>>,
        /// A·g1/2π in GHz.
        #[arg(long)]
        drive_ghz: Option<f64>,
    },
}

fn load_config(common: &Common) -> Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if common.out.is_some() {
        cfg.out.clone_from(&common.out);
    }
    Ok(cfg)
}

fn apply_lattice(cfg: &mut ExperimentConfig, l: &LatticeArgs) {
    if let Some(c) = l.cols {
        cfg.cols = c;
    }
    if let Some(r) = l.rows {
        cfg.rows = r;
    }
    if let Some(at) = l.at {
        cfg.hopping_time = at;
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| HarnessError::Io { path: "<stdout>".into(), source }),
    }
}

fn emit_table(out: Option<&Path>, t: &Table) -> Result<()> {
    emit(out, &t.render())
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = load_config(&cli.common)?;
    let out = cfg.out.clone();
    let out = out.as_deref();
    match cli.command {
        Command::Spectrum { preset, ej, gamma, ng_min, ng_max, points, transitions } => {
            let (e_j, gamma, transitions) = match (preset, ej) {
                (Some(name), None) => {
                    let p = spectrum_preset(&name)
                        .ok_or_else(|| HarnessError::Argument(format!("unknown spectrum preset `{name}`")))?;
                    (p.e_j, p.gamma, p.transitions || transitions)
                }
                (None, Some(e_j)) => (e_j, gamma, transitions),
                _ => return Err(HarnessError::Argument("give exactly one of --preset and --ej".into())),
            };
            let grid = linear_grid(ng_min, ng_max, points)?;
            emit_table(out, &spectrum_report(e_j, 1.0, gamma, &grid, transitions)?)
        }
        Command::Impedance { ejs_ghz, cs, phi_min, phi_max, points } => {
            let mut p = reference_circuit();
            p.e_js = std::f64::consts::TAU * ejs_ghz;
            p.c_s = cs;
            emit_table(out, &impedance_report(&p, &linear_grid(phi_min, phi_max, points)?)?)
        }
        Command::RwaCheck { case, dt, sample_every } => {
            let cases: Vec<RwaCase> =
                if case.eq_ignore_ascii_case("all") { RwaCase::ALL.to_vec() } else { vec![case.parse()?] };
            for c in &cases {
                let report = rwa_report(*c, dt, sample_every)?;
                eprint!("{}", report.summary());
                let target = match (out, cases.len()) {
                    (Some(dir), n) if n > 1 => Some(dir.join(format!("{c}.csv"))),
                    (o, _) => o.map(Path::to_path_buf),
                };
                emit_table(target.as_deref(), &report.table())?;
            }
            Ok(())
        }
        Command::Compile { lattice, steps, coulomb, onsite } => {
            apply_lattice(&mut cfg, &lattice);
            cfg.coulomb |= coulomb;
            if let Some(u) = onsite {
                cfg.onsite = u;
            }
            let report = compile_report(&cfg, steps)?;
            eprint!("lattice={}x{} {}", cfg.cols, cfg.rows, report.summary());
            emit(out, &report.export)
        }
        Command::Simulate { lattice, steps, initial, time_samples } => {
            apply_lattice(&mut cfg, &lattice);
            if let Some(s) = steps {
                cfg.steps = s;
            }
            if let Some(k) = time_samples {
                cfg.time_samples = k;
            }
            if let Some(i) = initial {
                cfg.initial = Some(i.parse::<InitialStateSpec>()?);
            }
            let spec = cfg.initial.clone().ok_or_else(|| HarnessError::Argument("simulate needs --initial".into()))?;
            let psi0 = spec.build(&cfg.lattice()?)?;
            let report = fidelity_experiment(&cfg, &psi0)?;
            eprint!("initial={spec}\n{}", report.summary_table().render());
            emit_table(out, &report.table())
        }
        Command::Benchmark { lattice, random, steps } => {
            apply_lattice(&mut cfg, &lattice);
            if let Some(m) = random {
                cfg.samples = m;
            }
            if let Some(s) = steps {
                cfg.steps = s;
            }
            let report = mean_fidelity_experiment(&cfg)?;
            eprint!("seed={} samples={}\n{}", cfg.seed, cfg.samples, report.summary_table().render());
            emit_table(out, &report.table())
        }
        Command::Timing { cols, at, steps, drive_ghz } => {
            let widths = cols.unwrap_or_else(|| vec![cfg.cols]);
            let steps = steps.unwrap_or_else(|| cfg.steps.clone());
            let t = timing_table(&widths, at.unwrap_or(cfg.hopping_time), &steps, drive_ghz.unwrap_or(cfg.drive_ghz))?;
            emit_table(out, &t)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
