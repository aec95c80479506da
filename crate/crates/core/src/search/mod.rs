//! Bounded model search: enumeration, countermodels and property suites.

mod battery;
mod countermodel;
mod definiteness;
mod enumerate;
pub mod pool;
mod suites;

use serde::Serialize;
use thiserror::Error;

pub use countermodel::{
    find_birelational_countermodel, find_countermodel, Countermodel, SearchOutcome, Semantics,
};
pub use definiteness::{definiteness_instances, id, omni, DefinitenessItem};
pub use enumerate::{is_rooted, ModelRef, ModelSpace, SpaceSize, MAX_CLASSES, MAX_ENUM_INDIVIDUALS, MAX_ENUM_WORLDS};
pub use suites::{
    check_link_suite, exhibit_targets, run_property_suite, InstanceResult, Outcome, SuiteId, SuiteOptions, SuiteReport, Verdict,
    SUITES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("bound {0} must be positive")]
    NonPositive(&'static str),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("predicate {pred} has arity {arity}, above the cap {cap}")]
    ArityCap { pred: String, arity: usize, cap: usize },
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("{0}")]
    Formula(String),
}

/// Restrictions on the relations of enumerated frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum FrameRestriction {
    #[default]
    Any,
    /// `leqG` is the identity.
    GIdentity,
    /// Both relations are the identity.
    Identity,
}

/// Bounds on the model space and on the formula pools.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_worlds: usize,
    /// Size of the universe; every domain is a nonempty subset of it.
    pub max_domain: usize,
    pub max_pool_depth: usize,
    /// Depth of the plural pool.
    pub plural_depth: usize,
    pub max_arity: usize,
    pub min_worlds: usize,
    pub frames: FrameRestriction,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_worlds: 3,
            max_domain: 2,
            max_pool_depth: 2,
            plural_depth: 2,
            max_arity: 2,
            min_worlds: 1,
            frames: FrameRestriction::Any,
        }
    }
}

impl SearchBounds {
    pub fn check(&self) -> Result<(), SearchError> {
        for (name, v) in [
            ("max_worlds", self.max_worlds),
            ("max_domain", self.max_domain),
            ("max_pool_depth", self.max_pool_depth),
            ("max_arity", self.max_arity),
            ("min_worlds", self.min_worlds),
        ] {
            if v == 0 {
                return Err(SearchError::NonPositive(name));
            }
        }
        Ok(())
    }
}
