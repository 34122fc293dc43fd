//! Reports printed by the subcommands.
//!
//! Every report is a serde structure. `--json` prints it with serde_json; the
//! human form is rendered from the very same value, so both carry identical
//! mathematical content.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use toric_csm::chow::ChowPresentation;
use toric_csm::csm::{self, CsmOptions, CsmResult};
use toric_csm::fan::Fan;

use crate::error::CliError;
use crate::fanfile::FanFile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSummary {
    pub rays: Vec<usize>,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanSummary {
    pub name: Option<String>,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<ConeSummary>,
    pub smooth: bool,
}

impl FanSummary {
    /// `with_multiplicities` computes (and caches) the multiplicity of every
    /// maximal cone; otherwise they are reported as 1 for smooth fans and
    /// left as "?" for singular ones.
    pub fn new(fan: &Fan, with_multiplicities: bool) -> Result<Self, CliError> {
        let file = FanFile::from_fan(fan)?;
        let smooth = fan.is_smooth();
        let max_cones = fan
            .max_cones()
            .iter()
            .map(|c| {
                let multiplicity = if with_multiplicities {
                    fan.multiplicity(c)?.to_string()
                } else if smooth {
                    "1".to_owned()
                } else {
                    "?".to_owned()
                };
                Ok(ConeSummary {
                    rays: c.rays().to_vec(),
                    multiplicity,
                })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(FanSummary {
            name: file.name,
            dim: file.dim,
            rays: file.rays,
            max_cones,
            smooth,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChowSummary {
    pub eliminated_variables: Vec<usize>,
    pub kept_variables: Vec<usize>,
    pub graded_dimensions: Vec<usize>,
    /// `deg(b) = 1 / (coefficient * multiplicity)` for the top basis monomial.
    pub top_monomial: String,
    pub degree_reference_cone: Vec<usize>,
    pub degree_of_top_monomial: String,
}

impl ChowSummary {
    pub fn new(chow: &ChowPresentation) -> Self {
        let top = chow.top_monomial().clone();
        let deg = chow.degree(&toric_csm::poly::GradedClass::term(
            top.clone(),
            num_rational::BigRational::from_integer(1.into()),
        ));
        ChowSummary {
            eliminated_variables: chow.elimination_cone().to_vec(),
            kept_variables: chow.kept_variables().to_vec(),
            graded_dimensions: chow.graded_dimensions(),
            top_monomial: top.to_string(),
            degree_reference_cone: chow.calibration().reference_cone.clone(),
            degree_of_top_monomial: deg.to_string(),
        }
    }
}

/// The full presentation, printed by the `chow` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDetail {
    pub stanley_reisner: Vec<String>,
    pub linear_relations: Vec<String>,
    pub substitution: BTreeMap<String, String>,
    pub basis: Vec<Vec<String>>,
}

impl PresentationDetail {
    pub fn new(chow: &ChowPresentation) -> Self {
        let mono = |s: &[usize]| toric_csm::poly::Monomial::from_vars(s).to_string();
        PresentationDetail {
            stanley_reisner: chow.nonfaces().iter().map(|s| mono(s)).collect(),
            linear_relations: chow
                .linear_forms()
                .iter()
                .map(ToString::to_string)
                .collect(),
            substitution: chow
                .substitution()
                .iter()
                .map(|(v, c)| (format!("x{v}"), c.to_string()))
                .collect(),
            basis: (0..=chow.dim())
                .map(|d| chow.basis(d).iter().map(ToString::to_string).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplicityMode {
    /// smooth fan, no Hermite forms computed
    SmoothFastPath,
    /// one Hermite form per cone, cached
    CachedHnf,
    /// a fresh Hermite form for every cone
    ForcedHnf,
}

impl MultiplicityMode {
    pub fn for_run(fan: &Fan, opts: CsmOptions) -> Self {
        if csm::smooth_fast_path(fan, opts) {
            MultiplicityMode::SmoothFastPath
        } else if opts.force_hnf {
            MultiplicityMode::ForcedHnf
        } else {
            MultiplicityMode::CachedHnf
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MultiplicityMode::SmoothFastPath => "smooth-fast-path",
            MultiplicityMode::CachedHnf => "cached-hnf",
            MultiplicityMode::ForcedHnf => "forced-hnf",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub chow_ring_seconds: f64,
    pub class_seconds: f64,
}

impl Timing {
    pub fn new(chow: Duration, class: Duration) -> Self {
        Timing {
            chow_ring_seconds: chow.as_secs_f64(),
            class_seconds: class.as_secs_f64(),
        }
    }
}

/// Report of the `csm` subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputReport {
    pub fan: FanSummary,
    pub chow: ChowSummary,
    /// `None` for Euler-only runs.
    pub csm: Option<String>,
    /// Reduced contribution of the cones of each dimension.
    pub per_dimension: Option<BTreeMap<usize, String>>,
    pub euler: String,
    pub multiplicities: MultiplicityMode,
    pub timing: Timing,
}

impl OutputReport {
    pub fn new(
        fan: &Fan,
        chow: &ChowPresentation,
        result: Option<&CsmResult>,
        euler: &BigInt,
        opts: CsmOptions,
        timing: Timing,
    ) -> Result<Self, CliError> {
        let mode = MultiplicityMode::for_run(fan, opts);
        Ok(OutputReport {
            // multiplicities come from the cache filled by a cached run, or
            // are recomputed here for a forced one
            fan: FanSummary::new(fan, mode != MultiplicityMode::SmoothFastPath)?,
            chow: ChowSummary::new(chow),
            csm: result.map(|r| r.csm_class.to_string()),
            per_dimension: result.map(|r| {
                r.per_dim_contributions
                    .iter()
                    .map(|(d, c)| (*d, c.to_string()))
                    .collect()
            }),
            euler: euler.to_string(),
            multiplicities: mode,
            timing,
        })
    }
}

fn list(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn render_vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn render_fan_summary(out: &mut String, fan: &FanSummary) {
    let _ = writeln!(out, "fan: {}", fan.name.as_deref().unwrap_or("(unnamed)"));
    let _ = writeln!(out, "  dimension: {}", fan.dim);
    let _ = writeln!(out, "  rays ({}):", fan.rays.len());
    for (i, r) in fan.rays.iter().enumerate() {
        let _ = writeln!(out, "    x{i}: {}", render_vector(r));
    }
    let _ = writeln!(out, "  maximal cones ({}):", fan.max_cones.len());
    for c in &fan.max_cones {
        let _ = writeln!(out, "    {} mult {}", list(&c.rays), c.multiplicity);
    }
    let _ = writeln!(out, "  smooth: {}", fan.smooth);
}

pub fn render_chow_summary(out: &mut String, chow: &ChowSummary) {
    let _ = writeln!(out, "chow ring:");
    let _ = writeln!(
        out,
        "  eliminated variables: {}",
        list(&chow.eliminated_variables)
    );
    let _ = writeln!(out, "  kept variables: {}", list(&chow.kept_variables));
    let _ = writeln!(
        out,
        "  graded dimensions: {}",
        list(&chow.graded_dimensions)
    );
    let _ = writeln!(
        out,
        "  degree: deg({}) = {} (reference cone {})",
        chow.top_monomial,
        chow.degree_of_top_monomial,
        list(&chow.degree_reference_cone)
    );
}

pub fn render_presentation(out: &mut String, p: &PresentationDetail) {
    let _ = writeln!(
        out,
        "stanley-reisner generators ({}):",
        p.stanley_reisner.len()
    );
    for g in &p.stanley_reisner {
        let _ = writeln!(out, "  {g}");
    }
    let _ = writeln!(out, "linear relations ({}):", p.linear_relations.len());
    for g in &p.linear_relations {
        let _ = writeln!(out, "  {g}");
    }
    let _ = writeln!(out, "substitution:");
    for (v, c) in &p.substitution {
        let _ = writeln!(out, "  {v} -> {c}");
    }
    let _ = writeln!(out, "basis:");
    for (d, b) in p.basis.iter().enumerate() {
        let _ = writeln!(out, "  degree {d}: {}", b.join(", "));
    }
}

pub fn render_timing(out: &mut String, t: &Timing) {
    let _ = writeln!(
        out,
        "timing: chow ring {:.3}s, class {:.3}s",
        t.chow_ring_seconds, t.class_seconds
    );
}

impl OutputReport {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        render_fan_summary(&mut out, &self.fan);
        render_chow_summary(&mut out, &self.chow);
        if let Some(csm) = &self.csm {
            let _ = writeln!(out, "c_SM: {csm}");
        }
        if let Some(parts) = &self.per_dimension {
            let _ = writeln!(out, "per-dimension contributions:");
            for (d, c) in parts {
                let _ = writeln!(out, "  dim {d}: {c}");
            }
        }
        let _ = writeln!(out, "euler characteristic: {}", self.euler);
        let _ = writeln!(out, "multiplicities: {}", self.multiplicities.as_str());
        render_timing(&mut out, &self.timing);
        out
    }
}

/// Report of the `chow` subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChowReport {
    pub fan: FanSummary,
    pub chow: ChowSummary,
    pub presentation: PresentationDetail,
    pub chow_ring_seconds: f64,
}

impl ChowReport {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        render_fan_summary(&mut out, &self.fan);
        render_chow_summary(&mut out, &self.chow);
        render_presentation(&mut out, &self.presentation);
        let _ = writeln!(out, "timing: chow ring {:.3}s", self.chow_ring_seconds);
        out
    }
}

/// Outcome of one check run by `validate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Report of the `validate` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub fan: FanSummary,
    pub cone_counts: Vec<usize>,
    pub checks: Vec<Check>,
    pub seed: Option<u64>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        render_fan_summary(&mut out, &self.fan);
        let _ = writeln!(out, "cones per dimension: {}", list(&self.cone_counts));
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        for c in &self.checks {
            let verdict = if c.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "{verdict} {}: {}", c.name, c.detail);
        }
        out
    }
}
