//! JSON-lines and CSV writers.

use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::estimates::EstimateReport;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormRow {
    pub time: f64,
    pub fbm: f64,
    pub l2: f64,
    pub divergence: f64,
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_jsonl(path: &Path) -> Result<Vec<serde_json::Value>> {
    let r = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

pub fn write_norm_csv(path: &Path, rows: &[NormRow]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "time,fbm,l2,divergence")?;
    for r in rows {
        writeln!(w, "{:.17e},{:.17e},{:.17e},{:.17e}", r.time, r.fbm, r.l2, r.divergence)?;
    }
    w.flush()?;
    Ok(())
}

/// One row per estimate: id, constant, coarse constant, drift, verdict.
pub fn write_estimate_csv(path: &Path, reports: &[EstimateReport]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "id,constant,coarse_constant,drift,raw_max,samples,verdict")?;
    for r in reports {
        writeln!(
            w,
            "{},{:.12e},{:.12e},{:.6e},{:.12e},{},{}",
            r.id,
            r.constant,
            r.coarse_constant,
            r.drift,
            r.raw_max,
            r.samples,
            if r.passed() { "pass" } else { "fail" }
        )?;
    }
    w.flush()?;
    Ok(())
}

/// Human-readable digest of a JSON-lines report.
pub fn summarize_jsonl(lines: &[serde_json::Value]) -> Vec<String> {
    lines
        .iter()
        .map(|v| {
            if let Some(id) = v.get("id").and_then(|x| x.as_str()) {
                format!(
                    "{id:<10} C = {:.6e}  drift = {:.3e}  {}",
                    v["constant"].as_f64().unwrap_or(f64::NAN),
                    v["drift"].as_f64().unwrap_or(f64::NAN),
                    v["verdict"].as_str().unwrap_or("?")
                )
            } else if let Some(err) = v.get("max_error").and_then(|x| x.as_f64()) {
                format!("symbols    convention = {}  samples = {}  max error = {err:.3e}", v["convention"], v["samples"])
            } else if let Some(kind) = v.get("kind").and_then(|x| x.as_str()) {
                match kind {
                    "run" => {
                        let o = &v["outcome"];
                        format!(
                            "run        converged = {}  final = {}  y = {}  cross-check = {}",
                            o["converged"], o["report"]["final_norm"], o["report"]["y_norm"], o["cross_check"]
                        )
                    }
                    "sweep" => {
                        let s = &v["summary"];
                        format!(
                            "sweep      alpha = {}  pairs = {}  all converged = {}  spread = {}",
                            v["alpha"], v["pairs"], s["all_converged"], s["spread"]
                        )
                    }
                    "continuous_dependence" => {
                        let r = &v["report"];
                        format!("dependence ratio = {}  bound = {}  holds = {}", r["ratio"], r["bound"], r["holds"])
                    }
                    other => format!("{other}"),
                }
            } else {
                v.to_string()
            }
        })
        .collect()
}
