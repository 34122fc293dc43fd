//! Textual descriptions of built-in fans.
//!
//! | spec            | fan                                  |
//! |-----------------|--------------------------------------|
//! | `pn=N`          | projective space `P^N`               |
//! | `hirzebruch=R`  | Hirzebruch surface `H_R`             |
//! | `wps=q0,q1,...` | weighted projective space            |
//! | `A*B`           | product of the fans `A` and `B`      |
//!
//! The short forms `P^N`, `H_R` and `P(q0,q1,...)` are accepted as well, so
//! a fan's display name can be fed back in.

use std::fmt;
use std::str::FromStr;

use toric_csm::fan::{hirzebruch, product, projective_space, weighted_projective, Fan};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanSpec {
    Projective(usize),
    Hirzebruch(u64),
    Weighted(Vec<u64>),
    Product(Vec<FanSpec>),
}

impl FanSpec {
    pub fn build(&self) -> Result<Fan, CliError> {
        Ok(match self {
            FanSpec::Projective(n) => projective_space(*n)?,
            FanSpec::Hirzebruch(r) => hirzebruch(*r)?,
            FanSpec::Weighted(q) => weighted_projective(q)?,
            FanSpec::Product(factors) => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| CliError::Usage("empty product".into()))?
                    .build()?;
                it.try_fold(first, |acc, f| {
                    product(&acc, &f.build()?).map_err(CliError::from)
                })?
            }
        })
    }

    pub fn product_of(factors: Vec<FanSpec>) -> FanSpec {
        let flat = factors
            .into_iter()
            .flat_map(|f| match f {
                FanSpec::Product(inner) => inner,
                other => vec![other],
            })
            .collect::<Vec<_>>();
        if flat.len() == 1 {
            flat.into_iter().next().unwrap()
        } else {
            FanSpec::Product(flat)
        }
    }
}

impl fmt::Display for FanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanSpec::Projective(n) => write!(f, "pn={n}"),
            FanSpec::Hirzebruch(r) => write!(f, "hirzebruch={r}"),
            FanSpec::Weighted(q) => {
                let q: Vec<String> = q.iter().map(u64::to_string).collect();
                write!(f, "wps={}", q.join(","))
            }
            FanSpec::Product(factors) => {
                let parts: Vec<String> = factors.iter().map(FanSpec::to_string).collect();
                f.write_str(&parts.join("*"))
            }
        }
    }
}

fn bad(spec: &str, why: &str) -> CliError {
    CliError::Usage(format!("bad fan spec `{spec}`: {why}"))
}

fn parse_weights(spec: &str, list: &str) -> Result<Vec<u64>, CliError> {
    list.split(',')
        .map(|w| {
            w.trim()
                .parse::<u64>()
                .map_err(|_| bad(spec, "weights must be non-negative integers"))
        })
        .collect()
}

fn parse_factor(spec: &str) -> Result<FanSpec, CliError> {
    let s = spec.trim();
    let number = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| bad(spec, "expected an integer"))
    };
    if let Some((key, value)) = s.split_once('=') {
        return match key.trim().to_ascii_lowercase().as_str() {
            "pn" | "p" | "projective" => Ok(FanSpec::Projective(number(value)? as usize)),
            "hirzebruch" | "h" => Ok(FanSpec::Hirzebruch(number(value)?)),
            "wps" | "weighted" => Ok(FanSpec::Weighted(parse_weights(spec, value)?)),
            other => Err(bad(spec, &format!("unknown builder `{other}`"))),
        };
    }
    if let Some(n) = s.strip_prefix("P^") {
        return Ok(FanSpec::Projective(number(n)? as usize));
    }
    if let Some(r) = s.strip_prefix("H_") {
        return Ok(FanSpec::Hirzebruch(number(r)?));
    }
    if let Some(inner) = s.strip_prefix("P(").and_then(|t| t.strip_suffix(')')) {
        return Ok(FanSpec::Weighted(parse_weights(spec, inner)?));
    }
    Err(bad(
        spec,
        "expected pn=N, hirzebruch=R, wps=q0,q1,... or a product A*B",
    ))
}

impl FromStr for FanSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // `x` is accepted as a product sign only between spaces, so that
        // display names such as "P^2 x P^3" parse back
        let factors = s
            .split('*')
            .flat_map(|part| part.split(" x "))
            .map(parse_factor)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FanSpec::product_of(factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_form() {
        assert_eq!("pn=3".parse::<FanSpec>().unwrap(), FanSpec::Projective(3));
        assert_eq!("P^3".parse::<FanSpec>().unwrap(), FanSpec::Projective(3));
        assert_eq!(
            "hirzebruch=5".parse::<FanSpec>().unwrap(),
            FanSpec::Hirzebruch(5)
        );
        assert_eq!("H_5".parse::<FanSpec>().unwrap(), FanSpec::Hirzebruch(5));
        assert_eq!(
            "wps=1,2,3,5".parse::<FanSpec>().unwrap(),
            FanSpec::Weighted(vec![1, 2, 3, 5])
        );
        assert_eq!(
            "P(1,1,2)".parse::<FanSpec>().unwrap(),
            FanSpec::Weighted(vec![1, 1, 2])
        );
        assert_eq!(
            "pn=5*pn=6".parse::<FanSpec>().unwrap(),
            FanSpec::Product(vec![FanSpec::Projective(5), FanSpec::Projective(6)])
        );
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "pn=2",
            "hirzebruch=10",
            "wps=1,1,3",
            "pn=1*hirzebruch=2*wps=1,1,2",
        ] {
            let spec: FanSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn fan_names_parse_back() {
        for s in [
            "pn=2*pn=3",
            "hirzebruch=4",
            "wps=1,1,2",
            "pn=1*hirzebruch=1",
        ] {
            let fan = s.parse::<FanSpec>().unwrap().build().unwrap();
            let again: FanSpec = fan.name().unwrap().parse().unwrap();
            assert_eq!(again.build().unwrap(), fan);
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "pn=", "pn=-1", "torus=3", "wps=1,x", "Q^2"] {
            let err = s.parse::<FanSpec>().unwrap_err();
            assert_eq!(err.exit_code(), 1, "{s}");
        }
        let err = "wps=2,4".parse::<FanSpec>().unwrap().build().unwrap_err();
        assert!(err.to_string().starts_with("unsupported weights"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }
}
