//! Monte-Carlo evaluation with explicit confidence intervals, plus the
//! two-valued instance and the self-bounding check used to validate the
//! concentration arguments.

mod adversarial;
mod bounds;
mod sampling;
mod self_bounding;

pub use adversarial::{adversarial_instance, adversarial_mean_law, AdversarialStrategy};
pub use bounds::{
    bernstein_half_width, bernstein_sample_size, hoeffding_half_width, hoeffding_sample_size,
};
pub use sampling::{
    convergence_trace, estimate_crn, estimate_e_mu, estimate_e_mu_with, estimate_strategy_value,
    estimate_strategy_value_with, sample_columns, write_trace_csv, BoundFamily, CrnEstimate,
    EstimateReport, DEFAULT_DELTA, E_MU_LABEL,
};
pub use self_bounding::{subset_matching_numbers, verify_self_bounding, SELF_BOUNDING_EDGE_CAP};
