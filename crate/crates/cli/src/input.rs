use std::fs;

use levelcut::io::{Decoded, Document};
use levelcut::{AlphaGrid, Fuzzy1D, FuzzyBody2D, FuzzyNumber};
use serde_json::Value;

use crate::CliError;

/// One decoded argument, remembering where it came from.
#[derive(Debug, Clone)]
pub struct Input {
    pub source: String,
    pub kind: &'static str,
    pub value: Decoded<f64>,
}

impl Input {
    pub fn number(&self) -> Result<&Fuzzy1D<f64>, CliError> {
        match &self.value {
            Decoded::Number(u) => Ok(u),
            Decoded::Body(_) => Err(CliError::Usage(format!(
                "{}: expected a fuzzy number, got body2d",
                self.source
            ))),
        }
    }

    pub fn body(&self) -> Option<&FuzzyBody2D<f64>> {
        match &self.value {
            Decoded::Body(b) => Some(b),
            Decoded::Number(_) => None,
        }
    }
}

fn label(arg: &str) -> String {
    if arg.starts_with('{') || arg.starts_with('[') {
        "<inline>".to_string()
    } else {
        arg.to_string()
    }
}

/// Reads an argument: inline JSON when it starts with `{` or `[`, a file path otherwise.
/// A JSON array yields one input per element.
pub fn load(arg: &str) -> Result<Vec<Input>, CliError> {
    let source = label(arg);
    let text = if arg.starts_with('{') || arg.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::read(arg, e))?
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::parse(&source, e))?;
    let docs = match value {
        Value::Array(items) => items
            .into_iter()
            .enumerate()
            .map(|(i, v)| (format!("{source}[{i}]"), v))
            .collect(),
        other => vec![(source, other)],
    };
    docs.into_iter()
        .map(|(source, v)| {
            let doc: Document<f64> =
                serde_json::from_value(v).map_err(|e| CliError::parse(&source, e))?;
            let kind = doc.kind();
            let value = doc.decode().map_err(|e| CliError::Invalid {
                origin: source.clone(),
                error: e,
            })?;
            Ok(Input {
                source,
                kind,
                value,
            })
        })
        .collect()
}

pub fn load_all<'a>(args: impl IntoIterator<Item = &'a String>) -> Result<Vec<Input>, CliError> {
    let mut out = Vec::new();
    for a in args {
        out.extend(load(a)?);
    }
    Ok(out)
}

/// Default report grid: 101 uniform levels, the nodes of sampled inputs, and levels
/// `c ± 10^-k` (`k = 2..=6`) around every declared jump or breakpoint of a curve input.
pub fn auto_grid(numbers: &[&Fuzzy1D<f64>]) -> AlphaGrid<f64> {
    let mut extra = Vec::new();
    for u in numbers {
        match u.as_sampled() {
            Some(s) => extra.extend_from_slice(s.grid().levels()),
            None => {
                for c in u.critical_levels() {
                    extra.push(c);
                    for k in 2..=6 {
                        let h = 10f64.powi(-k);
                        extra.extend([c - h, c + h]);
                    }
                }
            }
        }
    }
    AlphaGrid::uniform(101)
        .expect("valid size")
        .with_levels(extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_arrays() {
        let one = load(r#"{"type":"counterexample-un","n":3}"#).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].kind, "counterexample-un");
        let many = load(r#"[{"type":"counterexample-limit"},{"type":"counterexample-un","n":1}]"#)
            .unwrap();
        assert_eq!(many.len(), 2);
        assert_eq!(many[1].source, "<inline>[1]");
    }

    #[test]
    fn errors_name_the_problem() {
        let e = load(r#"{"type":"counterexample-un","n":0}"#).unwrap_err();
        assert!(e.to_string().contains("bad sequence index 0"), "{e}");
        assert!(load("/nonexistent/file.json").is_err());
        assert!(load("{not json").is_err());
    }

    #[test]
    fn auto_grid_clusters_at_third() {
        let limit = load(r#"{"type":"counterexample-limit"}"#).unwrap();
        let g = auto_grid(&[limit[0].number().unwrap()]);
        assert_eq!(g.len(), 101 + 11);
        assert!(g.levels().contains(&(1.0 / 3.0 + 1e-6)));
    }
}
