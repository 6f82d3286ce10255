//! Checkers for the threshold and weight claims. Each produces a [`VerificationReport`]
//! whose verdict can be recomputed from the bounds it records.
//!
//! Statistical checks never report a violation unless it survives a
//! 4-standard-error margin; exact checks use rational arithmetic or rigorous
//! enclosures.

mod lemmas;
mod report;
mod rm;
mod thresholds;

pub use lemmas::{verify_area_bound, verify_margulis_russo, verify_nu_bound, verify_tz_identity};
pub use report::{
    combine, float, float_range, Bounds, Check, Intermediate, Relation, ValueKind, Verdict,
    VerificationReport,
};
pub use rm::{
    ratiorm_default_rs, rmbounds_default_ts, rmbounds_t_min, verify_ratiorm, verify_rmbounds,
    verify_rmcapacity_preconditions, Epsilon,
};
pub use thresholds::{
    compute_gamma, spread_coordinates, verify_bitcapacity, verify_bittoblock, verify_straightshot,
    BitCapacityConfig, BitToBlockConfig, GammaSource, GammaTerm, GammaValue, NoiseLevel,
};
