//! Numerical asymptotics: sequence acceleration, growth fitters, diagonal
//! and saddle-point analysis, and large-order predictions.

mod diagonal;
mod fit;
mod large_degree;
mod saddle;
mod sequence;

pub use diagonal::{diagonal_action_extract, diagonal_prediction, diagonal_term, gen_diag_polys, DiagPolySet};
pub use fit::{
    estimate_action_from_fg, fit_exponential_rate, fit_log_exponent, fit_power_exponent, Estimate, GrowthFit,
    PowerMethod, Trace,
};
pub use large_degree::{hurwitz_large_degree_prediction, xp_large_degree_prediction, xp_tower_prediction};
pub use saddle::{
    fit_line, free_energy_sum, free_energy_truncated, saddle_linear_fit, saddle_point_prediction, saddle_scan,
    LineFit, Peak, SaddleFit, SaddleScan,
};
pub use sequence::{richardson, SequenceSample};
