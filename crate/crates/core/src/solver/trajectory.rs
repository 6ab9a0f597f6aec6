use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::SpectralField4;
use crate::grid::GridSpec;
use crate::snapshot::{read_snapshot, write_snapshot};
use crate::symbols::PhysParams;

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub fields: Vec<SpectralField4>,
    pub params: PhysParams,
}

/// `n + 1` equispaced nodes on `[0, horizon]`.
pub fn uniform_times(horizon: f64, steps: usize) -> Result<Vec<f64>> {
    if !(horizon > 0.0 && horizon.is_finite()) || steps == 0 {
        return Err(Error::InvalidParameter(format!("need horizon > 0 and steps >= 1, got {horizon}, {steps}")));
    }
    Ok((0..=steps).map(|i| horizon * i as f64 / steps as f64).collect())
}

impl Trajectory {
    pub fn new(times: Vec<f64>, fields: Vec<SpectralField4>, params: PhysParams) -> Result<Self> {
        if times.is_empty() || times.len() != fields.len() {
            return Err(Error::InvalidParameter(format!(
                "trajectory needs matching nonempty times and fields ({} vs {})",
                times.len(),
                fields.len()
            )));
        }
        if times[0] != 0.0 || times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("times must start at 0 and increase".into()));
        }
        let g = fields[0].grid;
        if fields.iter().any(|f| f.grid != g) {
            return Err(Error::GridMismatch);
        }
        Ok(Self { times, fields, params })
    }

    pub fn zeros(grid: GridSpec, times: Vec<f64>, params: PhysParams) -> Result<Self> {
        let fields = vec![SpectralField4::zeros(grid); times.len()];
        Self::new(times, fields, params)
    }

    pub fn grid(&self) -> GridSpec {
        self.fields[0].grid
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &SpectralField4 {
        self.fields.last().expect("nonempty trajectory")
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self { times: self.times.clone(), fields: self.fields.iter().map(|f| f.scaled(a)).collect(), params: self.params }
    }

    pub fn same_nodes(&self, other: &Self) -> Result<()> {
        if self.times != other.times {
            return Err(Error::InvalidParameter("trajectories use different time grids".into()));
        }
        if self.grid() != other.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `self + a * other` node by node.
    pub fn axpy(&self, a: f64, other: &Self) -> Result<Self> {
        self.same_nodes(other)?;
        let fields = self.fields.iter().zip(&other.fields).map(|(x, y)| x.axpy(a, y)).collect::<Result<Vec<_>>>()?;
        Ok(Self { times: self.times.clone(), fields, params: self.params })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(-1.0, other)
    }

    pub fn max_divergence_defect(&self) -> f64 {
        self.fields.iter().map(|f| f.divergence_defect()).fold(0.0, f64::max)
    }

    pub fn max_conjugate_defect(&self) -> f64 {
        self.fields.iter().map(|f| f.conjugate_symmetry_defect()).fold(0.0, f64::max)
    }

    pub fn real_flag_consistent(&self) -> bool {
        let r = self.fields[0].real_valued;
        self.fields.iter().all(|f| f.real_valued == r)
    }

    /// Largest per-node coefficient difference.
    pub fn max_abs_difference(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.fields.iter().map(|f| f.max_abs()).fold(0.0, f64::max))
    }
}

/// Manifest stored next to the snapshot files of an archive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub params: PhysParams,
    pub grid: GridSpec,
    pub times: Vec<f64>,
    pub files: Vec<String>,
    /// Free-form per-snapshot norms (e.g. FBM and L^2).
    pub norms: Vec<serde_json::Value>,
    /// Free-form run metadata (seed, convergence report, ...).
    pub extra: serde_json::Value,
}

pub const MANIFEST_NAME: &str = "manifest.json";

pub fn write_archive(dir: &Path, traj: &Trajectory, norms: Vec<serde_json::Value>, extra: serde_json::Value) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let mut files = Vec::with_capacity(traj.len());
    for (i, (t, f)) in traj.times.iter().zip(&traj.fields).enumerate() {
        let name = format!("snap_{i:05}.sf4");
        write_snapshot(&dir.join(&name), f, *t)?;
        files.push(name);
    }
    let manifest = Manifest { params: traj.params, grid: traj.grid(), times: traj.times.clone(), files, norms, extra };
    let path = dir.join(MANIFEST_NAME);
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)?)?;
    Ok(path)
}

pub fn read_archive(dir: &Path) -> Result<(Trajectory, Manifest)> {
    let manifest: Manifest = serde_json::from_str(&std::fs::read_to_string(dir.join(MANIFEST_NAME))?)?;
    let mut fields = Vec::with_capacity(manifest.files.len());
    for (name, t) in manifest.files.iter().zip(&manifest.times) {
        let (f, time) = read_snapshot(&dir.join(name))?;
        if time != *t {
            return Err(Error::Snapshot(format!("{name}: time {time} disagrees with manifest {t}")));
        }
        fields.push(f);
    }
    let traj = Trajectory::new(manifest.times.clone(), fields, manifest.params)?;
    Ok((traj, manifest))
}
