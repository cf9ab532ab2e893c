//! Recurrence classification, absorption deficits and optimal initial states.

mod optimize;
mod recurrence;

pub use optimize::{
    affine_coefficients, bloch_ball_samples, halton, optimal_initial_state, OptimalStates, DEGENERATE_TOL,
};
pub use recurrence::{
    absorption_deficit, eigencomponent_weights, recurrence_classify, scalar_return_integral, state_return_integral,
    Classification, IntegralValue, RecurrenceVerdict, EDGE_TOL, WEIGHT_TOL,
};
