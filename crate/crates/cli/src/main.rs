use std::f64::consts::PI;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::json;
use torus_recovery::intervals::{
    enumerate_arrangements, gen_polygon_counterexample, recover_intervals_extended, recover_intervals_minimal,
    Arrangement,
};
use torus_recovery::planar::{
    build_omega, recover_max_k, recover_peeling, recover_search_report, sufficiency_probe, MultiplicityProfile,
    OmegaKind, OmegaSet,
};
use torus_recovery::prony::prony_recover;
use torus_recovery::rng::substream;
use torus_recovery::torus::{
    forward_coeffs_1d, forward_coeffs_2d, forward_coeffs_intervals, CoeffTable1D, CoeffTable2D, IntervalUnion,
    Measure1D, Measure2D,
};
use torus_recovery::{PlanarError, ToleranceConfig};
use torus_recovery_cli::{
    gen_random_instance, report_csv, run_roundtrip, to_json, CliError, ExperimentSpec, Format, InstanceKind, Mode,
};

#[derive(Parser)]
#[command(name = "torus-recover", version, about = "Fourier recovery of arcs and point masses on the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Tolerances {
    #[arg(long)]
    tol_root: Option<f64>,
    #[arg(long)]
    tol_residual: Option<f64>,
    #[arg(long)]
    tol_match: Option<f64>,
    #[arg(long)]
    tol_rank: Option<f64>,
}

impl Tolerances {
    fn resolve(&self) -> Result<ToleranceConfig, CliError> {
        let d = ToleranceConfig::default();
        let tol = ToleranceConfig {
            root_tol: self.tol_root.unwrap_or(d.root_tol),
            residual_tol: self.tol_residual.unwrap_or(d.residual_tol),
            match_tol: self.tol_match.unwrap_or(d.match_tol),
            rank_tol: self.tol_rank.unwrap_or(d.rank_tol),
        };
        tol.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(tol)
    }
}

#[derive(Args, Clone)]
struct Io {
    /// Input file; stdin when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OmegaChoice {
    MaxK,
    Sufficient,
    Triangle,
}

impl From<OmegaChoice> for OmegaKind {
    fn from(c: OmegaChoice) -> Self {
        match c {
            OmegaChoice::MaxK => OmegaKind::MaxK,
            OmegaChoice::Sufficient => OmegaKind::Sufficient,
            OmegaChoice::Triangle => OmegaKind::Triangle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum IntervalMode {
    Extended,
    Minimal,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlanarMode {
    MaxK,
    Peeling,
    Search,
}

#[derive(Subcommand)]
enum Command {
    /// Random instance with N masses or arcs.
    Gen {
        #[arg(long, value_enum)]
        kind: InstanceKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.02)]
        separation: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier coefficients of a measure or interval union.
    Transform {
        #[arg(long, value_enum)]
        kind: InstanceKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        /// Frequency set for 2D measures.
        #[arg(long, value_enum, default_value = "sufficient")]
        omega: OmegaChoice,
        /// Frequency set file for 2D measures; overrides --omega.
        #[arg(long)]
        omega_in: Option<PathBuf>,
        /// Intervals: coefficients on 0..=N (minimal) or 0..=2N (extended).
        #[arg(long, value_enum, default_value = "extended")]
        mode: IntervalMode,
        #[command(flatten)]
        io: Io,
    },
    /// Point masses on the circle from coefficients on -N..=N.
    RecoverMasses1d {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        tol: Tolerances,
        #[command(flatten)]
        io: Io,
    },
    /// Interval union from coefficients on 0..=2N or 0..=N.
    RecoverIntervals {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "extended")]
        mode: IntervalMode,
        #[arg(long, default_value_t = 50)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: Tolerances,
        #[command(flatten)]
        io: Io,
    },
    /// Point masses on the 2-torus.
    #[command(name = "recover-2d")]
    Recover2d {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "search")]
        mode: PlanarMode,
        /// Multiplicity profile file, required for peeling.
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[command(flatten)]
        tol: Tolerances,
        #[command(flatten)]
        io: Io,
    },
    /// Frequency set.
    Omega {
        #[arg(long, value_enum)]
        omega: OmegaChoice,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two N-arc unions with equal coefficients on 1..2N-1.
    Counterexample {
        #[arg(long)]
        n: usize,
        /// Rotation in radians, in (0, pi/N); defaults to pi/(2N).
        #[arg(long)]
        theta: Option<f64>,
        /// Index into the sorted list of arrangements; the default is the
        /// alternating arrangement.
        #[arg(long)]
        arrangement: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank test of a frequency set on random 2N-point sets.
    Probe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "triangle")]
        omega: OmegaChoice,
        #[arg(long)]
        omega_in: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: Tolerances,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate, transform, recover and compare, over many seeded trials.
    Roundtrip {
        #[arg(long, value_enum, default_value = "masses1d")]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0.02)]
        separation: f64,
        #[arg(long, default_value_t = 50)]
        budget: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include per-trial wall time.
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        tol: Tolerances,
        /// Experiment spec file; replaces the flags above.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_json<T: DeserializeOwned>(path: Option<&PathBuf>) -> Result<T, CliError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        })?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn omega_for(choice: OmegaChoice, file: Option<&PathBuf>, n: usize, k: Option<usize>) -> Result<OmegaSet, CliError> {
    match file {
        Some(p) => read_json(Some(p)),
        None => build_omega(choice.into(), n, k).map_err(|e| CliError::Usage(e.to_string())),
    }
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage("N must be at least 1".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Gen {
            kind,
            n,
            seed,
            separation,
            out,
        } => {
            let v = gen_random_instance(kind, n, seed, separation)?;
            write_out(out.as_ref(), &to_json(&v)?)?;
        }
        Command::Transform {
            kind,
            n,
            k,
            omega,
            omega_in,
            mode,
            io,
        } => {
            let ni = n as i64;
            let text = match kind {
                InstanceKind::Masses1d => {
                    let mu: Measure1D = read_json(io.input.as_ref())?;
                    to_json(&forward_coeffs_1d(&mu, -ni..=ni))?
                }
                InstanceKind::Intervals => {
                    let e: IntervalUnion = read_json(io.input.as_ref())?;
                    let top = match mode {
                        IntervalMode::Extended => 2 * ni,
                        IntervalMode::Minimal => ni,
                    };
                    to_json(&forward_coeffs_intervals(&e, 0..=top))?
                }
                InstanceKind::Masses2d => {
                    let mu: Measure2D = read_json(io.input.as_ref())?;
                    let omega = omega_for(omega, omega_in.as_ref(), n, k)?;
                    to_json(&forward_coeffs_2d(&mu, omega.freqs()))?
                }
            };
            write_out(io.out.as_ref(), &text)?;
        }
        Command::RecoverMasses1d { n, tol, io } => {
            check_n(n)?;
            let tol = tol.resolve()?;
            let t: CoeffTable1D = read_json(io.input.as_ref())?;
            let mu = prony_recover(&t, n, &tol).map_err(CliError::recovery)?;
            write_out(io.out.as_ref(), &to_json(&mu)?)?;
        }
        Command::RecoverIntervals {
            n,
            mode,
            budget,
            seed,
            tol,
            io,
        } => {
            check_n(n)?;
            let tol = tol.resolve()?;
            let t: CoeffTable1D = read_json(io.input.as_ref())?;
            let e = match mode {
                IntervalMode::Extended => recover_intervals_extended(&t, n, &tol),
                IntervalMode::Minimal => recover_intervals_minimal(&t, n, &tol, budget, &mut substream(seed, 0)),
            }
            .map_err(CliError::recovery)?;
            write_out(io.out.as_ref(), &to_json(&e)?)?;
        }
        Command::Recover2d {
            n,
            k,
            mode,
            profile,
            budget,
            tol,
            io,
        } => {
            check_n(n)?;
            let tol = tol.resolve()?;
            let t: CoeffTable2D = read_json(io.input.as_ref())?;
            let result = match mode {
                PlanarMode::MaxK => {
                    let k = k.ok_or_else(|| CliError::Usage("max-k needs --k".into()))?;
                    recover_max_k(&t, n, k, &tol)
                }
                PlanarMode::Peeling => {
                    let path = profile.ok_or_else(|| CliError::Usage("peeling needs --profile".into()))?;
                    let p: MultiplicityProfile = read_json(Some(&path))?;
                    recover_peeling(&t, n, &p, &tol)
                }
                PlanarMode::Search => recover_search_report(&t, n, &tol, budget).map(|r| {
                    eprintln!(
                        "{} candidate x, {} profiles tried, {} passing",
                        r.candidates.len(),
                        r.profiles_tried,
                        r.passing
                    );
                    r.measure
                }),
            };
            match result {
                Ok(mu) => write_out(io.out.as_ref(), &to_json(&mu)?)?,
                Err(PlanarError::Ambiguous(w)) => {
                    write_out(io.out.as_ref(), &to_json(&json!({ "ambiguous": w }))?)?;
                    return Err(CliError::Recovery("data fit two different measures".into()));
                }
                Err(e) => return Err(CliError::recovery(e)),
            }
        }
        Command::Omega { omega, n, k, out } => {
            let set = build_omega(omega.into(), n, k).map_err(|e| CliError::Usage(e.to_string()))?;
            write_out(out.as_ref(), &to_json(&set)?)?;
        }
        Command::Counterexample {
            n,
            theta,
            arrangement,
            out,
        } => {
            let theta = theta.unwrap_or(PI / (2.0 * n as f64));
            let arr = match arrangement {
                None => Arrangement::first(n),
                Some(i) => {
                    let all = enumerate_arrangements(n);
                    let count = all.len();
                    all.into_iter()
                        .nth(i)
                        .ok_or_else(|| CliError::Usage(format!("arrangement {i} out of range (0..{count})")))?
                }
            };
            let (e, f) = gen_polygon_counterexample(n, theta, &arr).map_err(|e| CliError::Usage(e.to_string()))?;
            let m = 2 * n as i64;
            let (a, b) = (forward_coeffs_intervals(&e, 0..=m), forward_coeffs_intervals(&f, 0..=m));
            let gap = |nu: i64| (a.get(nu).unwrap_or_default() - b.get(nu).unwrap_or_default()).norm();
            let low = (1..m).map(gap).fold(0.0, f64::max);
            let v = json!({
                "N": n,
                "theta": theta,
                "arrangement": arr,
                "first": e,
                "second": f,
                "max_gap_below_2N": low,
                "gap_at_2N": gap(m),
            });
            write_out(out.as_ref(), &to_json(&v)?)?;
        }
        Command::Probe {
            n,
            k,
            omega,
            omega_in,
            trials,
            seed,
            tol,
            out,
        } => {
            check_n(n)?;
            let tol = tol.resolve()?;
            let set = omega_for(omega, omega_in.as_ref(), n, k)?;
            let report =
                sufficiency_probe(&set, n, trials, &mut substream(seed, 0), &tol).map_err(|e| CliError::Usage(e.to_string()))?;
            write_out(out.as_ref(), &to_json(&report)?)?;
        }
        Command::Roundtrip {
            mode,
            n,
            k,
            seed,
            trials,
            separation,
            budget,
            format,
            timing,
            tol,
            input,
            out,
        } => {
            let spec = match &input {
                Some(p) => read_json(Some(p))?,
                None => ExperimentSpec {
                    command: "roundtrip".into(),
                    mode,
                    n,
                    k,
                    seed,
                    trials,
                    separation,
                    budget,
                    tolerances: tol.resolve()?,
                    input: None,
                    output: out.as_ref().map(|p| p.display().to_string()),
                    format,
                    timing,
                },
            };
            let report = run_roundtrip(&spec)?;
            let text = match spec.format {
                Format::Json => to_json(&report)?,
                Format::Csv => report_csv(&report),
            };
            let target = out.or_else(|| spec.output.as_ref().map(PathBuf::from));
            write_out(target.as_ref(), &text)?;
            eprintln!("{}/{} trials passed", report.passed, spec.trials);
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
