//! The fan file format.
//!
//! A fan file is TOML with three required keys and one optional one:
//!
//! ```toml
//! name = "Hirzebruch H_5"        # optional
//! dim = 2
//! rays = [[1, 0], [0, 1], [-1, 5], [0, -1]]
//! max_cones = [[0, 1], [1, 2], [2, 3], [3, 0]]
//! ```
//!
//! Ray indices in `max_cones` are 0-based and refer to positions in `rays`.
//! Rays must be primitive. Completeness is only checked through the wall
//! condition.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use toric_csm::fan::Fan;
use toric_csm::Error;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanFile {
    pub fn from_fan(fan: &Fan) -> Result<Self, CliError> {
        let rays = fan
            .rays()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.generator()
                    .coords()
                    .iter()
                    .map(|c| {
                        i64::try_from(c).map_err(|_| {
                            CliError::Usage(format!(
                                "ray {i} has a coordinate too large for the file format"
                            ))
                        })
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Ok(FanFile {
            name: fan.name().map(str::to_owned),
            dim: fan.dim(),
            rays,
            max_cones: fan.max_cones().iter().map(|c| c.rays().to_vec()).collect(),
        })
    }

    pub fn to_toml(&self) -> String {
        // toml renders nested arrays of integers without surprises
        toml::to_string(self).expect("fan file serializes")
    }

    pub fn into_fan(self, trust_input: bool) -> Result<Fan, CliError> {
        let rays: Vec<Vec<BigInt>> = self
            .rays
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let built = if trust_input {
            Fan::new_trusted(self.dim, rays, self.max_cones)
        } else {
            Fan::new(self.dim, rays, self.max_cones)
        };
        let fan = built.map_err(|source| CliError::Fan {
            context: field_context(&source),
            source,
        })?;
        Ok(match self.name {
            Some(name) => fan.with_name(name),
            None => fan,
        })
    }
}

/// Names the offending field for a validation error, e.g. `rays[3]: `.
fn field_context(e: &Error) -> String {
    match e {
        Error::RayNotPrimitive { index, .. }
        | Error::ZeroRay { index }
        | Error::RayWrongLength { index, .. }
        | Error::UnusedRay { index } => format!("rays[{index}]: "),
        Error::DuplicateRay { second, .. } => format!("rays[{second}]: "),
        Error::MaxConeWrongDimension { index, .. } => format!("max_cones[{index}]: "),
        Error::RayIndexOutOfRange { cone, .. } => format!("max_cones[{cone}]: "),
        Error::DuplicateMaxCone { second, .. } => format!("max_cones[{second}]: "),
        Error::NoMaxCones | Error::NotSimplicial(_) | Error::NotComplete { .. } => {
            "max_cones: ".into()
        }
        Error::ZeroDimension => "dim: ".into(),
        _ => String::new(),
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

/// Parses fan-file text. `origin` names the source in diagnostics.
pub fn parse_fan_str(text: &str, origin: &str, trust_input: bool) -> Result<Fan, CliError> {
    let file: FanFile = toml::from_str(text).map_err(|e| {
        let location = e
            .span()
            .map(|s| {
                let (l, c) = line_col(text, s.start);
                format!("{origin}:{l}:{c}")
            })
            .unwrap_or_else(|| origin.to_owned());
        CliError::Parse {
            origin: location,
            message: e.message().trim_end().to_owned(),
        }
    })?;
    file.into_fan(trust_input).map_err(|e| match e {
        CliError::Fan { context, source } => CliError::Fan {
            context: format!("{origin}: {context}"),
            source,
        },
        other => other,
    })
}

pub fn parse_fan_file(path: &Path, trust_input: bool) -> Result<Fan, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_fan_str(&text, &path.display().to_string(), trust_input)
}

pub fn render_fan(fan: &Fan) -> Result<String, CliError> {
    Ok(FanFile::from_fan(fan)?.to_toml())
}
