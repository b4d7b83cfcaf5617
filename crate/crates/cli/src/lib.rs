//! Experiment plumbing behind the `torus-recover` binary: instance
//! generation, round-trip trials, and report encoding.

use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use torus_recovery::intervals::{recover_intervals_extended, recover_intervals_minimal};
use torus_recovery::par::map_indexed;
use torus_recovery::planar::{
    build_omega, lemma_rows, recover_max_k, recover_peeling, recover_search, MultiplicityProfile, OmegaKind,
};
use torus_recovery::prony::prony_recover;
use torus_recovery::rng::{substream, Rng};
use torus_recovery::sampling::{
    random_fiber_sizes, random_interval_union, random_measure_1d, random_measure_2d_with_fibers, AmplitudeRange,
};
use torus_recovery::torus::{
    forward_coeffs_1d, forward_coeffs_2d, forward_coeffs_intervals, IntervalUnion, Measure1D, Measure2D,
};
use torus_recovery::ToleranceConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed input: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("recovery failed: {0}")]
    Recovery(String),
}

impl CliError {
    /// 1 for recovery failures, 2 for usage and I/O problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Recovery(_) => 1,
            _ => 2,
        }
    }

    pub fn recovery(e: impl std::fmt::Display) -> Self {
        CliError::Recovery(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Intervals,
    Masses1d,
    Masses2d,
}

/// Round-trip pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Prony on `-N..=N`.
    Masses1d,
    /// Arcs from coefficients on `0..=2N`.
    IntervalsExtended,
    /// Arcs from coefficients on `0..=N`.
    IntervalsMinimal,
    /// Point masses with at most `k` per vertical line.
    MaxK,
    /// Point masses with a known multiplicity profile.
    Peeling,
    /// Point masses on the sufficient set, profile unknown.
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

fn check_separation(n: usize, separation: f64) -> Result<(), CliError> {
    if !(separation > 0.0 && separation * 2.0 * (n as f64) < 1.0) {
        return Err(CliError::Usage(format!(
            "separation {separation} is infeasible for N = {n}: need 0 < separation * 2N < 1"
        )));
    }
    Ok(())
}

/// Output of [`gen_random_instance`]; serializes as the wrapped object.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Instance {
    Intervals(IntervalUnion),
    Masses1d(Measure1D),
    Masses2d(Measure2D),
}

/// A random object with `n` masses or arcs, pairwise at least `separation`
/// apart, drawn from the stream for `seed`.
pub fn gen_random_instance(kind: InstanceKind, n: usize, seed: u64, separation: f64) -> Result<Instance, CliError> {
    if n == 0 {
        return Err(CliError::Usage("N must be at least 1".into()));
    }
    check_separation(n, separation)?;
    let mut rng = substream(seed, 0);
    let amps = AmplitudeRange::default();
    let v = match kind {
        InstanceKind::Masses1d => {
            Instance::Masses1d(random_measure_1d(&mut rng, n, separation, amps).map_err(usage)?)
        }
        InstanceKind::Intervals => {
            Instance::Intervals(random_interval_union(&mut rng, n, separation).map_err(usage)?)
        }
        InstanceKind::Masses2d => {
            let sizes = random_fiber_sizes(&mut rng, n, n);
            Instance::Masses2d(random_measure_2d_with_fibers(&mut rng, &sizes, separation, amps).map_err(usage)?)
        }
    };
    Ok(v)
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Everything that determines a round-trip run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub command: String,
    pub mode: Mode,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub k: Option<usize>,
    pub seed: u64,
    pub trials: usize,
    pub separation: f64,
    pub budget: usize,
    pub tolerances: ToleranceConfig,
    #[serde(default)]
    pub input: Option<String>,
    #[serde(default)]
    pub output: Option<String>,
    pub format: Format,
    /// Record wall time per trial; reports are then no longer byte-stable.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        self.tolerances.validate().map_err(usage)?;
        if self.n == 0 {
            return Err(CliError::Usage("N must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(CliError::Usage("trials must be at least 1".into()));
        }
        check_separation(self.n, self.separation)?;
        if self.mode == Mode::MaxK {
            let k = self.k.ok_or_else(|| CliError::Usage("max-k needs --k".into()))?;
            if k == 0 || k > self.n {
                return Err(CliError::Usage(format!("k = {k} must lie in 1..=N")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub instance_id: String,
    /// `pass`, `fail` (recovered but too far from the truth) or `error`.
    pub status: &'static str,
    pub distance: Option<f64>,
    pub residual: Option<f64>,
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub spec: ExperimentSpec,
    pub passed: usize,
    pub failed: usize,
    pub records: Vec<TrialRecord>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub const CSV_COLUMNS: [&str; 6] = ["trial", "instance_id", "status", "distance", "residual", "wall_time_s"];

/// Outcome of one trial: distance to the truth and forward residual, or an
/// error message.
type TrialOutcome = Result<(f64, f64), String>;

fn trial(spec: &ExperimentSpec, rng: &mut Rng) -> TrialOutcome {
    let n = spec.n;
    let ni = n as i64;
    let tol = &spec.tolerances;
    let sep = spec.separation;
    let amps = AmplitudeRange::default();
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match spec.mode {
        Mode::Masses1d => {
            let k = rng.random_range(1..=n);
            let mu = random_measure_1d(rng, k, sep, amps).map_err(|e| err(&e))?;
            let t = forward_coeffs_1d(&mu, -ni..=ni);
            let got = prony_recover(&t, n, tol).map_err(|e| err(&e))?;
            Ok((got.distance(&mu), forward_coeffs_1d(&got, -ni..=ni).max_deviation(&t)))
        }
        Mode::IntervalsExtended | Mode::IntervalsMinimal => {
            let arcs = rng.random_range(1..=n);
            let e = random_interval_union(rng, arcs, sep).map_err(|e| err(&e))?;
            let top = if spec.mode == Mode::IntervalsExtended { 2 * ni } else { ni };
            let t = forward_coeffs_intervals(&e, 0..=top);
            let got = if spec.mode == Mode::IntervalsExtended {
                recover_intervals_extended(&t, n, tol)
            } else {
                recover_intervals_minimal(&t, n, tol, spec.budget, rng)
            }
            .map_err(|e| err(&e))?;
            Ok((got.distance(&e), forward_coeffs_intervals(&got, 0..=top).max_deviation(&t)))
        }
        Mode::MaxK | Mode::Peeling | Mode::Search => {
            let total = rng.random_range(1..=n);
            let max_part = if spec.mode == Mode::MaxK { spec.k.unwrap_or(1) } else { total };
            let sizes = random_fiber_sizes(rng, total, max_part);
            let mu = random_measure_2d_with_fibers(rng, &sizes, sep, amps).map_err(|e| err(&e))?;
            let freqs = match spec.mode {
                Mode::MaxK => build_omega(OmegaKind::MaxK, n, spec.k).map_err(|e| err(&e))?.freqs().to_vec(),
                Mode::Peeling => lemma_rows(n),
                _ => build_omega(OmegaKind::Sufficient, n, None).map_err(|e| err(&e))?.freqs().to_vec(),
            };
            let t = forward_coeffs_2d(&mu, &freqs);
            let got = match spec.mode {
                Mode::MaxK => recover_max_k(&t, n, spec.k.unwrap_or(1), tol),
                Mode::Peeling => recover_peeling(&t, n, &MultiplicityProfile::from_measure(&mu), tol),
                _ => recover_search(&t, n, tol, spec.budget),
            }
            .map_err(|e| err(&e))?;
            Ok((got.distance(&mu), forward_coeffs_2d(&got, &freqs).max_deviation(&t)))
        }
    }
}

fn mode_name(mode: Mode) -> String {
    serde_json::to_value(mode)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

/// Runs `spec.trials` independent trials, trial `i` on substream `i` of
/// `spec.seed`. A trial passes when recovery succeeds within `match_tol`
/// of the generating instance. Error messages go to stderr.
pub fn run_roundtrip(spec: &ExperimentSpec) -> Result<Report, CliError> {
    spec.validate()?;
    let outcomes = map_indexed(spec.trials, |i| {
        let mut rng = substream(spec.seed, i as u64);
        let start = Instant::now();
        let out = trial(spec, &mut rng);
        (out, start.elapsed().as_secs_f64())
    });
    let mode = mode_name(spec.mode);
    let mut records = Vec::with_capacity(spec.trials);
    let mut passed = 0;
    for (i, (out, secs)) in outcomes.into_iter().enumerate() {
        let (status, distance, residual) = match out {
            Ok((d, r)) if d <= spec.tolerances.match_tol => ("pass", Some(d), Some(r)),
            Ok((d, r)) => ("fail", Some(d), Some(r)),
            Err(msg) => {
                eprintln!("trial {i}: {msg}");
                ("error", None, None)
            }
        };
        passed += usize::from(status == "pass");
        records.push(TrialRecord {
            trial: i,
            instance_id: format!("{mode}-{:016x}-{i}", spec.seed),
            status,
            distance,
            residual,
            wall_time_s: spec.timing.then_some(secs),
        });
    }
    Ok(Report {
        spec: spec.clone(),
        passed,
        failed: spec.trials - passed,
        records,
    })
}

/// Same shortest round-trip form as the JSON reports; empty when absent.
fn cell(v: Option<f64>) -> String {
    v.and_then(|x| serde_json::to_string(&x).ok()).unwrap_or_default()
}

pub fn report_csv(report: &Report) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for r in &report.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.trial,
            r.instance_id,
            r.status,
            cell(r.distance),
            cell(r.residual),
            cell(r.wall_time_s)
        );
    }
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(mode: Mode) -> ExperimentSpec {
        ExperimentSpec {
            command: "roundtrip".into(),
            mode,
            n: 3,
            k: Some(1),
            seed: 11,
            trials: 4,
            separation: 0.05,
            budget: 50,
            tolerances: ToleranceConfig::default(),
            input: None,
            output: None,
            format: Format::Json,
            timing: false,
        }
    }

    #[test]
    fn every_mode_round_trips() {
        for mode in [
            Mode::Masses1d,
            Mode::IntervalsExtended,
            Mode::IntervalsMinimal,
            Mode::MaxK,
            Mode::Peeling,
            Mode::Search,
        ] {
            let r = run_roundtrip(&spec(mode)).unwrap();
            assert!(r.all_passed(), "{mode:?}: {:?}", r.records);
        }
    }

    #[test]
    fn csv_header_is_fixed() {
        let r = run_roundtrip(&spec(Mode::Masses1d)).unwrap();
        let csv = report_csv(&r);
        assert!(csv.starts_with("trial,instance_id,status,distance,residual,wall_time_s\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn instance_generation() {
        let a = gen_random_instance(InstanceKind::Masses1d, 3, 7, 0.05).unwrap();
        assert_eq!(a, gen_random_instance(InstanceKind::Masses1d, 3, 7, 0.05).unwrap());
        assert!(matches!(
            gen_random_instance(InstanceKind::Intervals, 2, 1, 0.4),
            Err(CliError::Usage(_))
        ));
        let Instance::Masses2d(mu) = gen_random_instance(InstanceKind::Masses2d, 2, 1, 0.05).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(mu.len(), 2);
        let (p, q) = (&mu.masses()[0], &mu.masses()[1]);
        assert!(p.position_distance(q) >= 0.05);
    }
}
