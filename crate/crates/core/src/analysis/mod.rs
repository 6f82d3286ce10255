//! Threshold curves f_r(p): exact weight tables, Monte Carlo estimates and
//! threshold inversion.
//!
//! f_r(p) is the probability that a p-noisy erasure pattern covers a
//! subcode of dimension at least r. Block error is the r = 1 curve: the
//! pattern covers a **nonzero** codeword. The bit-error curve of coordinate
//! i is Pr[i in supp S_C(x)].

mod montecarlo;
mod output;
mod table;
mod threshold;

pub use montecarlo::{mc_bit_error, mc_fr, CurveEstimate, McConfig, MonteCarlo};
pub use output::{curve_csv, CURVE_CSV_HEADER};
pub use table::{
    exact_fr, exact_fr_rational, exact_h_expectation, exact_integral_gap, exact_weight_table,
    fr_derivative_rational, HTable, WeightTable,
};
pub(crate) use threshold::theta_with;
pub use threshold::{
    estimate_pstar, estimate_theta, exact_theta, transition_width, BisectionConfig,
    ThresholdEstimate, TransitionWidth,
};
