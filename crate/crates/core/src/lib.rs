//! Exact maximin-share fairness for agents with unequal entitlements.
//!
//! - [`mms`]: the `l`-out-of-`d` maximin share of a multiset of item values.
//! - [`dominance`]: whether one `(l, d)` condition implies another for every
//!   instance, with an identical-items counterexample when it does not.
//! - [`pairs`]: the finite, minimal set of conditions an agent with
//!   entitlement `a` has to check when there are `m` items.
//! - [`fairness`]: the ordinal, weighted and bipartite maximin criteria,
//!   allocation audits and a scan comparing them.
//!
//! All arithmetic is exact: item values are `u64` with overflow-checked
//! totals and entitlements are arbitrary-precision rationals.

pub mod dominance;
pub mod entitlement;
pub mod error;
pub mod fairness;
pub mod instance;
pub mod mms;
pub mod pair;
pub mod pairs;
pub mod partition;
pub mod rational;

pub use dominance::{
    bundle_size_reduction_applies, corollary_case, decompose, dominates, non_dominance_witness, CorollaryCase,
    Decomposition,
};
pub use entitlement::EntitlementVector;
pub use error::{Error, Result};
pub use fairness::{
    audit, audit_with, bmms_value, is_omms_fair, omms_requirements, wmms_value, Allocation, Criteria,
    FairnessReport,
};
pub use instance::{canonicalize, Instance, Value};
pub use mms::{min_l_union, mms, mms_cardinality, mms_with_limits, MmsResult, SearchLimits};
pub use pair::Pair;
pub use pairs::{candidate_pairs, filtration_trace, non_dominated_pairs, PairSet, Removal};
pub use partition::PartitionAssignment;
pub use rational::{rational_floor_mul, Rational};

/// Version string recorded in CLI run records.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
