//! Depth-scaling taxonomy of surveyed algorithms and its alignment with the
//! volumetric classes.
//!
//! A depth estimate `O(n^p · log^q n)` is assigned class `max(⌈p⌉, 1)` when
//! there is no logarithmic factor and `⌊p⌋ + 1` when there is one. The
//! adjusted assignment raises pure `n`, `n²` and `n³` estimates by one class
//! to leave room for routing overhead, except when the estimate counts gates
//! or operations, which already overstate depth.

mod scaling;
mod tables;

pub mod reference;

pub use scaling::{Exponent, ScalingDescriptor, ScalingForm};
pub use tables::{
    marginals, tabulate, tabulate_adjustments, AdjustmentRow, ClassTable, ClassTableRow, Marginals,
    TabulationMode,
};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::protocol::VolumetricClass;
use crate::{Error, Result};

macro_rules! named_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal $(| $alias:literal)*),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim() {
                    $($text $(| $alias)* => Ok($name::$variant),)+
                    other => Err(Error::Parse(alloc::format!(
                        concat!("unknown ", stringify!($name), " `{}`"),
                        other
                    ))),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

named_enum! {
    /// What a published resource estimate actually counts.
    EstimateType {
        GateDepth => "gate-depth" | "depth",
        GateCountOrOperations => "gate-count" | "operations" | "gate-count-operations",
        RuntimeOrTimeComplexity => "runtime" | "time-complexity" | "runtime-time-complexity",
    }
}

named_enum! {
    Era {
        Nisq => "nisq" | "NISQ",
        FaultTolerant => "ft" | "FT" | "fault-tolerant",
    }
}

named_enum! {
    ApplicationArea {
        MachineLearning => "machine-learning",
        Optimization => "optimization",
        ManyBodyPhysicsChemistry => "many-body-physics-chemistry",
        QuantumDataHiding => "quantum-data-hiding",
        NumericalSolvers => "numerical-solvers",
        Other => "other",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgorithmRecord {
    pub id: String,
    pub scaling: ScalingDescriptor,
    pub estimate_type: EstimateType,
    pub era: Era,
    /// Sorted, without duplicates, never empty.
    pub application_areas: Vec<ApplicationArea>,
    pub note: String,
}

impl AlgorithmRecord {
    pub fn new(
        id: impl Into<String>,
        scaling: ScalingDescriptor,
        estimate_type: EstimateType,
        era: Era,
        mut application_areas: Vec<ApplicationArea>,
    ) -> Result<Self> {
        application_areas.sort();
        application_areas.dedup();
        if application_areas.is_empty() {
            return Err(Error::Domain("an algorithm needs at least one application area".into()));
        }
        Ok(AlgorithmRecord {
            id: id.into(),
            scaling,
            estimate_type,
            era,
            application_areas,
            note: String::new(),
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// Class of a depth estimate before any adjustment.
pub fn classify_initial(s: &ScalingDescriptor) -> Result<VolumetricClass> {
    let p = s.poly_degree;
    let k = if s.polylog_degree == 0 {
        p.ceil().max(1)
    } else {
        p.floor() + 1
    };
    if k > 5 {
        return Err(Error::Unsupported(alloc::format!("{s} lies above QV-5")));
    }
    VolumetricClass::new(k)
}

/// True for the pure `n`, `n²`, `n³` estimates that sit exactly on a class
/// boundary.
pub fn is_boundary(s: &ScalingDescriptor) -> bool {
    s.polylog_degree == 0 && s.poly_degree.as_integer().is_some_and(|p| (1..=3).contains(&p))
}

/// Class after the overhead adjustment.
pub fn classify_adjusted(s: &ScalingDescriptor, estimate: EstimateType) -> Result<VolumetricClass> {
    let initial = classify_initial(s)?;
    if is_boundary(s) && estimate != EstimateType::GateCountOrOperations {
        Ok(initial.raised().unwrap_or(initial))
    } else {
        Ok(initial)
    }
}
