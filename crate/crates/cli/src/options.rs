use std::fs;
use std::path::Path;

use levelcut::AlphaGrid;
use serde::Serialize;

use crate::CliError;

/// How the α-grid was requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GridSpec {
    /// Chosen per verb from the inputs.
    Auto,
    Uniform {
        levels: usize,
    },
    File {
        path: String,
    },
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        match text.parse::<usize>() {
            Ok(levels) if levels >= 2 => Ok(Self::Uniform { levels }),
            Ok(levels) => Err(CliError::Usage(format!(
                "--grid needs at least 2 levels, got {levels}"
            ))),
            Err(_) => Ok(Self::File {
                path: text.to_string(),
            }),
        }
    }

    /// Explicit grid, or `None` for [`GridSpec::Auto`].
    pub fn resolve(&self) -> Result<Option<AlphaGrid<f64>>, CliError> {
        match self {
            Self::Auto => Ok(None),
            Self::Uniform { levels } => Ok(Some(AlphaGrid::uniform(*levels)?)),
            Self::File { path } => {
                let text =
                    fs::read_to_string(Path::new(path)).map_err(|e| CliError::read(path, e))?;
                let levels: Vec<f64> = serde_json::from_str(&text).map_err(|e| {
                    CliError::Usage(format!(
                        "grid file {path}: expected a JSON array of levels ({e})"
                    ))
                })?;
                Ok(Some(AlphaGrid::new(levels)?))
            }
        }
    }
}

/// `geom:K0:K1` for `2^-k`, `k = K0..=K1`, or a comma-separated list of offsets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaGrid {
    pub spec: String,
    pub deltas: Vec<f64>,
}

impl DeltaGrid {
    pub const DEFAULT: &'static str = "geom:2:20";

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::Usage(format!("--delta-grid {text:?}: {why}"));
        let deltas: Vec<f64> = if let Some(rest) = text.strip_prefix("geom:") {
            let (a, b) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected geom:K0:K1"))?;
            let (a, b): (i32, i32) = (
                a.trim().parse().map_err(|_| bad("bad exponent"))?,
                b.trim().parse().map_err(|_| bad("bad exponent"))?,
            );
            if a > b || a < 0 || b > 60 {
                return Err(bad("exponents must satisfy 0 <= K0 <= K1 <= 60"));
            }
            (a..=b).map(|k| 2f64.powi(-k)).collect()
        } else {
            text.split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|_| bad("expected numbers")))
                .collect::<Result<_, _>>()?
        };
        if deltas.is_empty() || deltas.iter().any(|&d| !(d > 0.0 && d <= 1.0)) {
            return Err(bad("offsets must lie in (0, 1]"));
        }
        Ok(Self {
            spec: text.to_string(),
            deltas,
        })
    }
}
