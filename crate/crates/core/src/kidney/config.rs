use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::blood::{blood_type_compatible, AboType};
use crate::error::ConfigError;

/// Shipped default parameters.
pub const DEFAULT_CONFIG: &str = include_str!("../../config/saidman_default.conf");

#[derive(Clone, Debug, PartialEq)]
pub struct PraLevel {
    pub name: String,
    pub probability: f64,
    /// Probability of a positive crossmatch against a random donor.
    pub sensitization: f64,
}

/// How the two crossmatch probabilities of a swap combine into an edge
/// probability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeRule {
    Product,
    Min,
}

impl EdgeRule {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeRule::Product => "product",
            EdgeRule::Min => "min",
        }
    }
}

impl FromStr for EdgeRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "product" => Ok(EdgeRule::Product),
            "min" => Ok(EdgeRule::Min),
            _ => Err(format!("unknown edge rule `{s}` (expected product or min)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    /// Indexed by [`AboType::index`].
    pub abo: [f64; 4],
    pub wife_probability: f64,
    pub pra: Vec<PraLevel>,
    pub wife_crossmatch_factor: f64,
    pub edge_rule: EdgeRule,
    pub probability_floor: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        DEFAULT_CONFIG.parse().expect("shipped config is valid")
    }
}

fn number(line: usize, key: &str, s: &str) -> Result<f64, ConfigError> {
    s.parse::<f64>().map_err(|_| ConfigError::Parse {
        line,
        message: format!("`{key}` expects a number, got `{s}`"),
    })
}

impl FromStr for GeneratorConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let mut abo = [None; 4];
        let mut wife = None;
        let mut pra = Vec::new();
        let mut factor = None;
        let mut rule = None;
        let mut floor = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Parse {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(t) = key.strip_prefix("abo.") {
                let t: AboType = t.parse().map_err(|message| ConfigError::Parse { line, message })?;
                abo[t.index()] = Some(number(line, key, value)?);
            } else if let Some(name) = key.strip_prefix("pra.") {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let [p, s] = parts[..] else {
                    return Err(ConfigError::Parse {
                        line,
                        message: format!("`{key}` expects `<probability> <sensitization>`"),
                    });
                };
                pra.push(PraLevel {
                    name: name.to_string(),
                    probability: number(line, key, p)?,
                    sensitization: number(line, key, s)?,
                });
            } else {
                match key {
                    "wife_probability" => wife = Some(number(line, key, value)?),
                    "wife_crossmatch_factor" => factor = Some(number(line, key, value)?),
                    "probability_floor" => floor = Some(number(line, key, value)?),
                    "edge_rule" => {
                        rule = Some(
                            value
                                .parse()
                                .map_err(|message| ConfigError::Parse { line, message })?,
                        )
                    }
                    _ => {
                        return Err(ConfigError::Parse {
                            line,
                            message: format!("unknown key `{key}`"),
                        })
                    }
                }
            }
        }
        let mut abo_out = [0.0; 4];
        for t in AboType::ALL {
            abo_out[t.index()] = abo[t.index()].ok_or_else(|| ConfigError::Missing(format!("abo.{t}")))?;
        }
        if pra.is_empty() {
            return Err(ConfigError::Missing("pra.<level>".into()));
        }
        let cfg = GeneratorConfig {
            abo: abo_out,
            wife_probability: wife.ok_or_else(|| ConfigError::Missing("wife_probability".into()))?,
            pra,
            wife_crossmatch_factor: factor
                .ok_or_else(|| ConfigError::Missing("wife_crossmatch_factor".into()))?,
            edge_rule: rule.ok_or_else(|| ConfigError::Missing("edge_rule".into()))?,
            probability_floor: floor
                .ok_or_else(|| ConfigError::Missing("probability_floor".into()))?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn unit(name: &str, x: f64) -> Result<(), ConfigError> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(ConfigError::Invalid(format!("{name} = {x} is outside [0, 1]")))
    }
}

impl GeneratorConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        std::fs::read_to_string(path)?.parse()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for t in AboType::ALL {
            unit(&format!("abo.{t}"), self.abo[t.index()])?;
        }
        let total: f64 = self.abo.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ConfigError::Invalid(format!("abo frequencies sum to {total}")));
        }
        unit("wife_probability", self.wife_probability)?;
        unit("wife_crossmatch_factor", self.wife_crossmatch_factor)?;
        for level in &self.pra {
            unit(&format!("pra.{} probability", level.name), level.probability)?;
            unit(&format!("pra.{} sensitization", level.name), level.sensitization)?;
        }
        let total: f64 = self.pra.iter().map(|l| l.probability).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ConfigError::Invalid(format!("pra probabilities sum to {total}")));
        }
        if !(self.probability_floor > 0.0 && self.probability_floor <= 1.0) {
            return Err(ConfigError::Invalid(format!(
                "probability_floor = {} must lie in (0, 1]",
                self.probability_floor
            )));
        }
        // Every blood-type combination must be able to show up incompatible.
        let positive_xm = self.pra.iter().any(|l| {
            l.probability > 0.0 && (l.sensitization > 0.0 || self.wife_crossmatch_factor < 1.0)
        });
        for p in AboType::ALL {
            for d in AboType::ALL {
                let present = self.abo[p.index()] > 0.0 && self.abo[d.index()] > 0.0;
                if present && blood_type_compatible(p, d) && !positive_xm {
                    return Err(ConfigError::Invalid(format!(
                        "pairs of type {p}/{d} can never be incompatible"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical `key = value` form; parsing it gives back `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in AboType::ALL {
            writeln!(out, "abo.{t} = {}", self.abo[t.index()]).unwrap();
        }
        writeln!(out, "wife_probability = {}", self.wife_probability).unwrap();
        for l in &self.pra {
            writeln!(out, "pra.{} = {} {}", l.name, l.probability, l.sensitization).unwrap();
        }
        writeln!(out, "wife_crossmatch_factor = {}", self.wife_crossmatch_factor).unwrap();
        writeln!(out, "edge_rule = {}", self.edge_rule.as_str()).unwrap();
        writeln!(out, "probability_floor = {}", self.probability_floor).unwrap();
        out
    }

    /// SHA-256 of the canonical text, in hex. Comments and layout of the
    /// source file do not affect it.
    pub fn hash(&self) -> String {
        Sha256::digest(self.to_text().as_bytes())
            .iter()
            .fold(String::new(), |mut s, b| {
                write!(s, "{b:02x}").unwrap();
                s
            })
    }
}
