//! JSON documents for numbers and bodies, tagged by `"type"`.
//!
//! ```json
//! {"type":"sampled1d","alphas":[0,1],"lower":[0,0.5],"upper":[1,0.5]}
//! {"type":"counterexample-un","n":3}
//! {"type":"counterexample-limit"}
//! {"type":"body2d","alphas":[0,1],"directions":4,"support":[[1,1,1,1],[0,0,0,0]]}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::body::{ConvexBody2D, FuzzyBody2D};
use crate::counterexample::{make_limit, make_un};
use crate::error::Error;
use crate::grid::AlphaGrid;
use crate::repr::{Fuzzy1D, SampledFuzzy1D};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Invalid(#[from] Error),
    #[error("expected a {expected} document, got {got}")]
    WrongKind {
        expected: &'static str,
        got: &'static str,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
#[serde(bound(deserialize = "S: Scalar"))]
pub enum Document<S> {
    #[serde(rename = "sampled1d")]
    Sampled1D {
        alphas: Vec<S>,
        lower: Vec<S>,
        upper: Vec<S>,
    },
    CounterexampleUn {
        n: i64,
    },
    CounterexampleLimit,
    #[serde(rename = "body2d")]
    Body2D {
        alphas: Vec<S>,
        directions: usize,
        support: Vec<Vec<S>>,
    },
}

/// A validated document.
#[derive(Debug, Clone)]
pub enum Decoded<S: Scalar> {
    Number(Fuzzy1D<S>),
    Body(FuzzyBody2D<S>),
}

impl<S: Scalar> Document<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Sampled1D { .. } => "sampled1d",
            Self::CounterexampleUn { .. } => "counterexample-un",
            Self::CounterexampleLimit => "counterexample-limit",
            Self::Body2D { .. } => "body2d",
        }
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(
            self,
            Self::CounterexampleUn { .. } | Self::CounterexampleLimit
        )
    }

    pub fn decode(self) -> Result<Decoded<S>, Error> {
        match self {
            Self::Sampled1D {
                alphas,
                lower,
                upper,
            } => {
                let grid = AlphaGrid::new(alphas)?;
                Ok(Decoded::Number(
                    SampledFuzzy1D::new(grid, lower, upper)?.into(),
                ))
            }
            Self::CounterexampleUn { n } => {
                let index = usize::try_from(n).map_err(|_| Error::BadIndex(n))?;
                make_un(index)
                    .map(|u| Decoded::Number(u.into()))
                    .map_err(|_| Error::BadIndex(n))
            }
            Self::CounterexampleLimit => Ok(Decoded::Number(make_limit().into())),
            Self::Body2D {
                alphas,
                directions,
                support,
            } => {
                let grid = AlphaGrid::new(alphas)?;
                let bodies = support
                    .into_iter()
                    .enumerate()
                    .map(|(index, values)| {
                        if values.len() != directions {
                            return Err(Error::LengthMismatch {
                                expected: directions,
                                got: values.len(),
                            });
                        }
                        ConvexBody2D::new(values).map_err(|e| match e {
                            Error::InvalidBody { reason, .. } => {
                                Error::InvalidBody { index, reason }
                            }
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Decoded::Body(FuzzyBody2D::new(grid, bodies)?))
            }
        }
    }
}

impl<S: Scalar> From<&SampledFuzzy1D<S>> for Document<S> {
    fn from(u: &SampledFuzzy1D<S>) -> Self {
        Self::Sampled1D {
            alphas: u.grid().levels().to_vec(),
            lower: u.lower().to_vec(),
            upper: u.upper().to_vec(),
        }
    }
}

impl<S: Scalar> From<&FuzzyBody2D<S>> for Document<S> {
    fn from(b: &FuzzyBody2D<S>) -> Self {
        Self::Body2D {
            alphas: b.grid().levels().to_vec(),
            directions: b.directions(),
            support: b
                .bodies()
                .iter()
                .map(|k| k.support_values().to_vec())
                .collect(),
        }
    }
}

pub fn parse_document<S: Scalar>(text: &str) -> Result<Document<S>, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_decoded<S: Scalar>(text: &str) -> Result<Decoded<S>, IoError> {
    Ok(parse_document(text)?.decode()?)
}

pub fn read_number<S: Scalar>(text: &str) -> Result<Fuzzy1D<S>, IoError> {
    match read_decoded(text)? {
        Decoded::Number(u) => Ok(u),
        Decoded::Body(_) => Err(IoError::WrongKind {
            expected: "fuzzy number",
            got: "body2d",
        }),
    }
}

pub fn read_body<S: Scalar>(text: &str) -> Result<FuzzyBody2D<S>, IoError> {
    match read_decoded(text)? {
        Decoded::Body(b) => Ok(b),
        Decoded::Number(_) => Err(IoError::WrongKind {
            expected: "body2d",
            got: "fuzzy number",
        }),
    }
}

pub fn write_sampled<S: Scalar>(u: &SampledFuzzy1D<S>) -> String {
    serde_json::to_string(&Document::from(u)).expect("sampled document serializes")
}
