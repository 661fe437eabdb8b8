//! The three Hubble-type target classes.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Galaxy morphology class. Declaration order is the canonical tie-breaking
/// order used by every classifier and report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GalaxyClass {
    Elliptical,
    Spiral,
    Irregular,
}

/// All classes in canonical order.
pub const ALL_CLASSES: [GalaxyClass; 3] = [
    GalaxyClass::Elliptical,
    GalaxyClass::Spiral,
    GalaxyClass::Irregular,
];

impl GalaxyClass {
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        ALL_CLASSES.get(index).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            GalaxyClass::Elliptical => "elliptical",
            GalaxyClass::Spiral => "spiral",
            GalaxyClass::Irregular => "irregular",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "elliptical" => Ok(GalaxyClass::Elliptical),
            "spiral" => Ok(GalaxyClass::Spiral),
            "irregular" => Ok(GalaxyClass::Irregular),
            other => Err(Error::InvalidParameter(format!(
                "unknown class label {other:?} (expected elliptical, spiral or irregular)"
            ))),
        }
    }
}

impl fmt::Display for GalaxyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
