//! Scenario runs: initial data, Picard solve, stepper cross-check, archives
//! and sweeps.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::config::{band_pairs, coupling_l, AmplitudeMode, DataKind, RunConfig, Scenario};
use super::data::{member_seed, random_band_limited};
use super::report::{write_jsonl, write_norm_csv, NormRow};
use super::tolerances;
use crate::error::{Error, Result};
use crate::field::SpectralField4;
use crate::function_spaces::{fbm_norm, make_homogeneous_data};
use crate::solver::{rescale_variables, uniform_times, write_archive, ContractionReport, ExponentialStepper, Solver, Trajectory};

/// Outcome of one Picard run; non-convergence is a value, not an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub scenario: Scenario,
    pub omega: f64,
    pub brunt: f64,
    pub alpha: f64,
    pub amplitude: f64,
    pub converged: bool,
    pub report: Option<ContractionReport>,
    /// Iterate distances when the iteration failed to converge.
    pub failed_distances: Vec<f64>,
    /// `X_r` distance between the Picard solution and the exponential stepper.
    pub cross_check: Option<f64>,
    pub max_divergence: f64,
    pub max_asymmetry: f64,
    /// `2 ||y|| (1 + slack)` bound holds.
    pub norm_bound_ok: bool,
}

/// Unit-amplitude initial data for a configuration: velocity and
/// temperature drawn at random (or homogeneous), then rescaled.
pub fn initial_data(cfg: &RunConfig, seed: u64) -> Result<SpectralField4> {
    let grid = cfg.grid.spec()?;
    let raw = match cfg.data.kind {
        DataKind::Random => random_band_limited(&grid, cfg.data.band, seed)?,
        DataKind::Homogeneous => {
            let degree = cfg.data.degree.unwrap_or(cfg.norm.s - 3.0 + (3.0 - cfg.norm.mu) / cfg.norm.q);
            make_homogeneous_data(degree, &cfg.norm, &grid)?
        }
    };
    match cfg.scenario {
        Scenario::Fbcs => {
            let u = [raw.component(0), raw.component(1), raw.component(2)];
            rescale_variables([&u[0], &u[1], &u[2]], &raw.component(3), &cfg.physics)
        }
        Scenario::NsCoriolis | Scenario::NsCritical => {
            let mut v = raw;
            v.comps[3].iter_mut().for_each(|c| *c = num_complex::Complex64::new(0.0, 0.0));
            Ok(v)
        }
    }
}

pub fn build_solver(cfg: &RunConfig) -> Result<Solver> {
    Solver::new(cfg.grid.spec()?, cfg.physics, cfg.dynamics(), cfg.convention, cfg.norm)
}

/// `K` measured on the free evolution: `||B(y, y)|| / ||y||^2`.
pub fn measure_k(solver: &Solver, v0: &SpectralField4, times: &[f64]) -> Result<(f64, f64)> {
    let y = solver.free_evolution(v0, times)?;
    let yn = solver.xr_norm(&y)?;
    if yn == 0.0 {
        return Ok((0.0, 0.0));
    }
    let k = solver.xr_norm(&solver.bilinear(&y, &y)?)? / (yn * yn);
    Ok((k, yn))
}

/// Initial data scaled per the amplitude mode.
pub fn scaled_initial_data(cfg: &RunConfig, solver: &Solver, seed: u64) -> Result<(SpectralField4, f64)> {
    let v = initial_data(cfg, seed)?;
    let amp = match cfg.data.amplitude_mode {
        AmplitudeMode::Absolute => cfg.data.amplitude,
        AmplitudeMode::Contraction => {
            let times = uniform_times(cfg.time.horizon, cfg.time.steps)?;
            let (k, yn) = measure_k(solver, &v, &times)?;
            if k == 0.0 || yn == 0.0 {
                cfg.data.amplitude
            } else {
                cfg.data.amplitude / (4.0 * k * yn)
            }
        }
    };
    Ok((v.scaled(amp), amp))
}

/// Picard solve plus optional stepper cross-check for prepared data.
pub fn solve_prepared(cfg: &RunConfig, solver: &Solver, v0: &SpectralField4, amplitude: f64, cross_check: bool) -> Result<(Option<Trajectory>, RunOutcome)> {
    let times = uniform_times(cfg.time.horizon, cfg.time.steps)?;
    let p = solver.params();
    let mut out = RunOutcome {
        scenario: cfg.scenario,
        omega: p.omega,
        brunt: p.brunt,
        alpha: p.alpha,
        amplitude,
        converged: false,
        report: None,
        failed_distances: Vec::new(),
        cross_check: None,
        max_divergence: 0.0,
        max_asymmetry: 0.0,
        norm_bound_ok: false,
    };
    match solver.picard_solve_on(v0, &times, cfg.time.tol, cfg.time.max_iter) {
        Ok((v, rep)) => {
            out.converged = true;
            out.norm_bound_ok = rep.final_norm <= 2.0 * rep.y_norm * (1.0 + tolerances::FINAL_NORM_SLACK);
            out.max_divergence = v.max_divergence_defect();
            out.max_asymmetry = v.max_conjugate_defect();
            if cross_check {
                let stepper = ExponentialStepper::new(&solver.op, times[1] - times[0], cfg.time.scheme)?;
                let w = stepper.run(v0, &times, p)?;
                out.cross_check = Some(solver.xr_norm(&v.sub(&w)?)?);
            }
            out.report = Some(rep);
            Ok((Some(v), out))
        }
        Err(Error::NonConvergence { distances }) => {
            out.failed_distances = distances;
            Ok((None, out))
        }
        Err(e) => Err(e),
    }
}

/// Per-snapshot FBM and coefficient-`l^2` norms.
pub fn norm_rows(solver: &Solver, traj: &Trajectory) -> Result<Vec<NormRow>> {
    traj.times
        .iter()
        .zip(&traj.fields)
        .map(|(&t, f)| {
            Ok(NormRow { time: t, fbm: fbm_norm(f, &solver.norm, &solver.partition)?, l2: f.coeff_l2(), divergence: f.divergence_defect() })
        })
        .collect()
}

/// Files written by [`run_scenario`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFiles {
    pub archive: Option<PathBuf>,
    pub report: PathBuf,
    pub norms: Option<PathBuf>,
}

/// Full single run: data, solve, cross-check, archive and reports under
/// `cfg.out_dir`.
pub fn run_scenario(config: &RunConfig) -> Result<(RunOutcome, ScenarioFiles)> {
    let cfg = config.normalized();
    cfg.validate()?;
    let solver = build_solver(&cfg)?;
    let (v0, amp) = scaled_initial_data(&cfg, &solver, cfg.seed)?;
    let (traj, outcome) = solve_prepared(&cfg, &solver, &v0, amp, true)?;
    std::fs::create_dir_all(&cfg.out_dir)?;
    let mut files = ScenarioFiles { archive: None, report: cfg.out_dir.join("report.jsonl"), norms: None };
    if let Some(traj) = &traj {
        let rows = norm_rows(&solver, traj)?;
        let norms = rows.iter().map(|r| serde_json::to_value(r)).collect::<std::result::Result<Vec<_>, _>>()?;
        let extra = json!({"seed": cfg.seed, "scenario": cfg.scenario, "norm": cfg.norm, "convention": cfg.convention, "outcome": outcome});
        files.archive = Some(write_archive(&cfg.out_dir.join("trajectory"), traj, norms, extra)?);
        let csv = cfg.out_dir.join("norms.csv");
        write_norm_csv(&csv, &rows)?;
        files.norms = Some(csv);
    }
    write_jsonl(&files.report, &[json!({"kind": "run", "seed": cfg.seed, "outcome": outcome})])?;
    Ok((outcome, files))
}

/// Uniformity sweep summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub runs: Vec<RunOutcome>,
    pub all_converged: bool,
    /// Largest final norm over the band runs.
    pub common_bound: f64,
    /// `(max - min) / max` of the final norms.
    pub spread: f64,
    /// Same for `final_norm / ||y||`.
    pub normalized_spread: f64,
}

/// Runs one fixed initial field `v0` (built and scaled with the first
/// pair's parameters) over `(omega, brunt)` pairs.
pub fn run_band_sweep(config: &RunConfig, pairs: &[(f64, f64)]) -> Result<SweepSummary> {
    let cfg = config.normalized();
    cfg.validate()?;
    if pairs.is_empty() {
        return Err(Error::Config("sweep needs at least one parameter pair".into()));
    }
    let at = |(omega, brunt): (f64, f64)| RunConfig { physics: crate::symbols::PhysParams { omega, brunt, ..cfg.physics }, ..cfg.clone() };
    let first = at(pairs[0]);
    let (v0, amp) = scaled_initial_data(&first, &build_solver(&first)?, cfg.seed)?;
    let mut runs = Vec::with_capacity(pairs.len());
    for &pair in pairs {
        let c = at(pair);
        runs.push(solve_prepared(&c, &build_solver(&c)?, &v0, amp, false)?.1);
    }
    Ok(summarize(runs))
}

fn summarize(runs: Vec<RunOutcome>) -> SweepSummary {
    let finals: Vec<f64> = runs.iter().filter_map(|r| r.report.as_ref().map(|x| x.final_norm)).collect();
    let normalized: Vec<f64> = runs.iter().filter_map(|r| r.report.as_ref().map(|x| x.final_norm / x.y_norm)).collect();
    let spread = |v: &[f64]| {
        let max = v.iter().copied().fold(0.0, f64::max);
        let min = v.iter().copied().fold(f64::INFINITY, f64::min);
        if max > 0.0 {
            (max - min) / max
        } else {
            0.0
        }
    };
    SweepSummary {
        all_converged: runs.iter().all(|r| r.converged),
        common_bound: finals.iter().copied().fold(0.0, f64::max),
        spread: spread(&finals),
        normalized_spread: spread(&normalized),
        runs,
    }
}

/// Continuous-dependence measurement for `v0` and `v0 + delta w0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DependenceReport {
    pub distance: f64,
    pub data_distance: f64,
    pub ratio: f64,
    pub k_emp: f64,
    pub epsilon: f64,
    /// `(1 - 4 K eps)^{-1}`.
    pub bound: f64,
    pub holds: bool,
}

pub fn continuous_dependence(config: &RunConfig) -> Result<DependenceReport> {
    let cfg = config.normalized();
    cfg.validate()?;
    let solver = build_solver(&cfg)?;
    let (v0, amp) = scaled_initial_data(&cfg, &solver, cfg.seed)?;
    let w0 = initial_data(&cfg, member_seed(cfg.seed, 7))?.scaled(amp);
    let v1 = v0.axpy(cfg.sweep.perturbation, &w0)?;
    let times = uniform_times(cfg.time.horizon, cfg.time.steps)?;
    let (a, ra) = solver.picard_solve_on(&v0, &times, cfg.time.tol, cfg.time.max_iter)?;
    let (b, rb) = solver.picard_solve_on(&v1, &times, cfg.time.tol, cfg.time.max_iter)?;
    let ya = solver.free_evolution(&v0, &times)?;
    let yb = solver.free_evolution(&v1, &times)?;
    let distance = solver.xr_norm(&a.sub(&b)?)?;
    let data_distance = solver.xr_norm(&ya.sub(&yb)?)?;
    let k_emp = ra.k_emp.max(rb.k_emp);
    let epsilon = ra.y_norm.max(rb.y_norm);
    let denom = 1.0 - 4.0 * k_emp * epsilon;
    let bound = if denom > 0.0 { 1.0 / denom } else { f64::INFINITY };
    let ratio = distance / data_distance;
    Ok(DependenceReport {
        distance,
        data_distance,
        ratio,
        k_emp,
        epsilon,
        bound,
        holds: denom > 0.0 && ratio <= bound * (1.0 + tolerances::DEPENDENCE_SLACK),
    })
}

/// Sweep driven by the configuration: explicit `(omega, brunt)` lists or
/// band pairs, repeated for every listed `alpha` and amplitude, plus the
/// continuous-dependence check. Results go to `out_dir/sweep.jsonl`.
pub fn run_sweep(config: &RunConfig) -> Result<(Vec<SweepSummary>, Option<DependenceReport>, PathBuf)> {
    let cfg = config.normalized();
    cfg.validate()?;
    let pairs: Vec<(f64, f64)> = if cfg.sweep.omegas.is_empty() {
        band_pairs(cfg.physics.gravity, cfg.sweep.band_pairs)
    } else {
        cfg.sweep.omegas.iter().copied().zip(cfg.sweep.brunts.iter().copied()).collect()
    };
    let alphas = if cfg.sweep.alphas.is_empty() { vec![cfg.physics.alpha] } else { cfg.sweep.alphas.clone() };
    let amps = if cfg.sweep.amplitudes.is_empty() { vec![cfg.data.amplitude] } else { cfg.sweep.amplitudes.clone() };
    let mut summaries = Vec::new();
    let mut lines = Vec::new();
    for &alpha in &alphas {
        for &amplitude in &amps {
            let mut c = cfg.clone();
            c.physics.alpha = alpha;
            c.data.amplitude = amplitude;
            let s = run_band_sweep(&c, &pairs)?;
            lines.push(json!({
                "kind": "sweep",
                "alpha": alpha,
                "amplitude": amplitude,
                "pairs": pairs.len(),
                "in_band": pairs.iter().filter(|(o, b)| coupling_l(*o, *b, cfg.physics.gravity) == 2.0).count(),
                "summary": s,
            }));
            summaries.push(s);
        }
    }
    let dep = if cfg.scenario == Scenario::Fbcs { Some(continuous_dependence(&cfg)?) } else { None };
    if let Some(d) = &dep {
        lines.push(json!({"kind": "continuous_dependence", "report": d}));
    }
    std::fs::create_dir_all(&cfg.out_dir)?;
    let path = cfg.out_dir.join("sweep.jsonl");
    write_jsonl(&path, &lines)?;
    Ok((summaries, dep, path))
}

/// Convenience for reading a report back.
pub fn read_jsonl(path: &Path) -> Result<Vec<serde_json::Value>> {
    super::report::read_jsonl(path)
}
