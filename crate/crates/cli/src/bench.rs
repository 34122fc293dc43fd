//! Benchmark harness.
//!
//! Each row is one fan; the columns are the time to build the Chow ring
//! presentation, and then separately the time for the c_SM class and for the
//! Euler characteristic alone, each on the smooth fast path and with a
//! Hermite form forced for every cone. Every timed run starts from a freshly
//! built fan so no multiplicity cache carries over between columns. Class
//! columns exclude the Chow ring time; add the two for a total.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use toric_csm::chow::ChowPresentation;
use toric_csm::csm::{self, CsmOptions};

use crate::error::CliError;
use crate::spec::FanSpec;

/// The rows run when no `--only` is given.
pub const DEFAULT_SUITE: &[&str] = &[
    "pn=6",
    "pn=5*pn=6",
    "pn=5*pn=8",
    "hirzebruch=1",
    "hirzebruch=5",
    "hirzebruch=10",
    "wps=1,1,2",
    "wps=1,1,3",
    "wps=1,2,3,5",
];

#[derive(Clone, Debug, Default)]
pub struct BenchOptions {
    /// Rows to run; the default suite when empty.
    pub only: Vec<FanSpec>,
    /// Only the Euler-characteristic columns.
    pub euler_only: bool,
    /// Skip the forced-Hermite-form columns.
    pub skip_forced: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub spec: String,
    pub name: String,
    pub dim: usize,
    pub rays: usize,
    pub max_cones: usize,
    pub smooth: bool,
    pub euler: String,
    pub chow_seconds: f64,
    pub csm: Option<f64>,
    pub euler_only: Option<f64>,
    pub csm_forced_hnf: Option<f64>,
    pub euler_only_forced_hnf: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

fn timed<T>(f: impl FnOnce() -> Result<T, CliError>) -> Result<(T, Duration), CliError> {
    let start = Instant::now();
    let value = f()?;
    Ok((value, start.elapsed()))
}

/// Times one column on a fresh fan and presentation; returns the class time.
fn column(
    spec: &FanSpec,
    euler_only: bool,
    force_hnf: bool,
) -> Result<(BigInt, Duration), CliError> {
    let fan = spec.build()?;
    let chow = ChowPresentation::build(&fan, None)?;
    let opts = CsmOptions { force_hnf };
    timed(|| Ok(csm::euler_characteristic(&fan, &chow, euler_only, opts)?))
}

pub fn run_row(spec: &FanSpec, opts: &BenchOptions) -> Result<BenchRow, CliError> {
    let fan = spec.build()?;
    let (chow, chow_time) = timed(|| Ok(ChowPresentation::build(&fan, None)?))?;
    drop(chow);

    let mut euler: Option<BigInt> = None;
    let mut run = |euler_only: bool, forced: bool| -> Result<Option<f64>, CliError> {
        if (opts.euler_only && !euler_only) || (opts.skip_forced && forced) {
            return Ok(None);
        }
        let (chi, t) = column(spec, euler_only, forced)?;
        match &euler {
            Some(prev) if *prev != chi => {
                return Err(CliError::Fan {
                    context: format!("{spec}: "),
                    source: toric_csm::Error::InconsistentFanData(format!(
                        "Euler characteristic {chi} disagrees with {prev} from another column"
                    )),
                })
            }
            _ => euler = Some(chi),
        }
        Ok(Some(t.as_secs_f64()))
    };
    let csm = run(false, false)?;
    let euler_fast = run(true, false)?;
    let csm_forced = run(false, true)?;
    let euler_forced = run(true, true)?;

    Ok(BenchRow {
        spec: spec.to_string(),
        name: fan.name().unwrap_or_default().to_owned(),
        dim: fan.dim(),
        rays: fan.num_rays(),
        max_cones: fan.max_cones().len(),
        smooth: fan.is_smooth(),
        euler: euler
            .expect("the Euler-only fast column always runs")
            .to_string(),
        chow_seconds: chow_time.as_secs_f64(),
        csm,
        euler_only: euler_fast,
        csm_forced_hnf: csm_forced,
        euler_only_forced_hnf: euler_forced,
    })
}

pub fn run(opts: &BenchOptions) -> Result<BenchReport, CliError> {
    let specs = if opts.only.is_empty() {
        DEFAULT_SUITE
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<FanSpec>, _>>()?
    } else {
        opts.only.clone()
    };
    let rows = specs
        .iter()
        .map(|s| run_row(s, opts))
        .collect::<Result<_, _>>()?;
    Ok(BenchReport { rows })
}

fn cell(t: Option<f64>) -> String {
    t.map_or_else(|| "-".to_owned(), |t| format!("{t:.3}"))
}

impl BenchReport {
    pub fn render_human(&self) -> String {
        let header = [
            "fan",
            "rays",
            "cones",
            "smooth",
            "chi",
            "chow (s)",
            "csm (s)",
            "euler (s)",
            "csm hnf (s)",
            "euler hnf (s)",
        ];
        let body: Vec<[String; 10]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.name.clone(),
                    r.rays.to_string(),
                    r.max_cones.to_string(),
                    if r.smooth { "yes" } else { "no" }.to_owned(),
                    r.euler.clone(),
                    format!("{:.3}", r.chow_seconds),
                    cell(r.csm),
                    cell(r.euler_only),
                    cell(r.csm_forced_hnf),
                    cell(r.euler_only_forced_hnf),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &body {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[&str]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(widths)
                .enumerate()
                .map(|(i, (c, w))| {
                    if i == 0 {
                        format!("{c:<w$}")
                    } else {
                        format!("{c:>w$}")
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &header);
        for row in &body {
            let cells: Vec<&str> = row.iter().map(String::as_str).collect();
            line(&mut out, &cells);
        }
        let _ = writeln!(
            out,
            "class columns exclude the chow ring time; '-' marks a skipped column"
        );
        out
    }
}
