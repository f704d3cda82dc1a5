//! Seeded Monte Carlo estimation of `P(directed G_n has a Hamiltonian decomposition)`.
//!
//! Trial `t` at size `n` uses the sampling seed [`trial_seed`]`(master, n, t)`,
//! so any single trial can be replayed on its own. Trials run on the current
//! rayon pool; only integer success counts are aggregated, so reports do not
//! depend on the schedule.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::directify_edges;
use crate::hamdec::decide;
use crate::hamdec::Decision;
use crate::model::GeneralGraphon;
use crate::sampler::sample_graph_sequential;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `splitmix64(splitmix64(master ^ splitmix64(n)) ^ splitmix64(trial ^ C))`
/// with `C = 0xD1B54A32D192ED03`.
pub fn trial_seed(master: u64, n: usize, trial: usize) -> u64 {
    let a = splitmix64(master ^ splitmix64(n as u64));
    splitmix64(a ^ splitmix64(trial as u64 ^ 0xD1B5_4A32_D192_ED03))
}

/// Wilson score interval for `successes` out of `trials`, clamped to [0, 1].
pub fn wilson_interval(successes: usize, trials: usize, z: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub trials: usize,
    pub successes: usize,
    pub frequency: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Wall-clock seconds for the row.
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub graphon_id: String,
    pub master_seed: u64,
    pub rows: Vec<ExperimentRow>,
}

/// Outcome of a single trial.
pub fn run_trial(g: &GeneralGraphon, n: usize, master: u64, trial: usize) -> Result<bool> {
    let sample = sample_graph_sequential(g, n, trial_seed(master, n, trial))?;
    let d = directify_edges(sample.n, &sample.edges);
    Ok(matches!(decide(&d), Decision::Yes(_)))
}

pub fn run_experiment(
    g: &GeneralGraphon,
    graphon_id: &str,
    n_list: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidTrials);
    }
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Error::InvalidN);
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let start = Instant::now();
        let successes = (0..trials)
            .into_par_iter()
            .map(|t| run_trial(g, n, seed, t).map(usize::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        let (ci_low, ci_high) = wilson_interval(successes, trials, Z_95);
        rows.push(ExperimentRow {
            n,
            trials,
            successes,
            frequency: successes as f64 / trials as f64,
            ci_low,
            ci_high,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(ExperimentReport {
        graphon_id: graphon_id.to_owned(),
        master_seed: seed,
        rows,
    })
}

pub const CSV_HEADER: &str = "n,trials,successes,frequency,ci_low,ci_high,seconds";

impl ExperimentReport {
    /// CSV with the fixed header. The `seconds` column is left empty unless
    /// `with_timing` is set, so that untimed output is reproducible byte for byte.
    pub fn to_csv(&self, with_timing: bool) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let seconds = if with_timing {
                format!("{:.6}", r.seconds)
            } else {
                String::new()
            };
            let _ = writeln!(
                s,
                "{},{},{},{:.6},{:.6},{:.6},{}",
                r.n, r.trials, r.successes, r.frequency, r.ci_low, r.ci_high, seconds
            );
        }
        s
    }

    /// Line plot of frequency against `n`, with the confidence band.
    pub fn to_svg(&self) -> String {
        const W: f64 = 640.0;
        const H: f64 = 400.0;
        const M: f64 = 50.0;
        let n_min = self.rows.iter().map(|r| r.n).min().unwrap_or(0) as f64;
        let n_max = self.rows.iter().map(|r| r.n).max().unwrap_or(1) as f64;
        let span = if n_max > n_min { n_max - n_min } else { 1.0 };
        let px = |n: usize| M + (n as f64 - n_min) / span * (W - 2.0 * M);
        let py = |f: f64| H - M - f * (H - 2.0 * M);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<line x1="{M}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/><line x1="{M}" y1="{M}" x2="{M}" y2="{y0}" stroke="black"/>"#,
            y0 = H - M,
            x1 = W - M
        );
        for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let _ = writeln!(
                s,
                r#"<text x="{x}" y="{y:.1}" font-size="11" text-anchor="end">{tick}</text>"#,
                x = M - 6.0,
                y = py(tick) + 4.0
            );
        }
        for r in &self.rows {
            let _ = writeln!(
                s,
                r#"<line x1="{x:.1}" y1="{lo:.1}" x2="{x:.1}" y2="{hi:.1}" stroke="steelblue" stroke-width="2" opacity="0.5"/><text x="{x:.1}" y="{ty}" font-size="11" text-anchor="middle">{n}</text>"#,
                x = px(r.n),
                lo = py(r.ci_low),
                hi = py(r.ci_high),
                ty = H - M + 16.0,
                n = r.n
            );
        }
        let points: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("{:.1},{:.1}", px(r.n), py(r.frequency)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
            points.join(" ")
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="steelblue"/>"#,
                px(r.n),
                py(r.frequency)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="20" font-size="13" text-anchor="middle">decomposition frequency vs n ({id}, seed {seed})</text>"#,
            x = W / 2.0,
            id = self.graphon_id,
            seed = self.master_seed
        );
        s.push_str("</svg>\n");
        s
    }
}
