//! Picture fuzzy numbers with closed, t-norm based interactional operations.
//!
//! * [`pfn`]: the number type and its orders.
//! * [`tnorm`]: strict t-norm families through additive generators.
//! * [`interact`]: binary, n-ary, scalar and power laws that never leave the
//!   PFN set.
//! * [`aggregate`]: PFIWA/PFIWG and their ordered variants.
//! * [`legacy`]: older PFN operators kept for closure auditing.
//! * [`mcdm`]: decision problems, ranking and parameter sweeps.
//! * [`sampling`]: seeded random PFN generation.

pub mod aggregate;
pub mod error;
pub mod interact;
pub mod legacy;
pub mod mcdm;
pub mod pfn;
pub mod sampling;
pub mod tnorm;

pub use aggregate::{closed_form, pfiowa, pfiowg, pfiwa, pfiwg, AggregationOp, ClosedFormKind, Weights};
pub use error::{Error, Result};
pub use interact::{complement, n_ary_add, n_ary_mul, pfn_add, pfn_mul, pfn_pow, scalar_mul};
pub use legacy::{closure_check, ClosureInputs, ClosureReport};
pub use mcdm::{DecisionProblem, RankingResult, SweepTable};
pub use pfn::{join_w, meet_w, LegacyTriple, Pfn, ScoreProfile, WangOrdering, EPS_SUM};
pub use tnorm::{GeneratorValue, TnormFamily};
