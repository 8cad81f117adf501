use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real scalar used throughout the crate: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into this scalar.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal out of scalar range")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count out of scalar range")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub(crate) fn third<S: Scalar>() -> S {
    S::one() / S::lit(3.0)
}

pub(crate) fn max_of<S: Scalar>(a: S, b: S) -> S {
    if b > a {
        b
    } else {
        a
    }
}
