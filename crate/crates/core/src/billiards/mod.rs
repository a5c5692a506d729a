//! Outer billiards on convex tables and their far-field dynamics.

mod far_field;
mod gauge;
mod table;

pub use far_field::{
    absolute_time, far_field_curve, far_field_error, far_field_flow, AbsoluteTimeReport, FarFieldCurve, FarFieldError,
    FlowTrajectory,
};
pub use gauge::{minkowski_length, UnitBall};
pub use table::{
    outer_billiard_step, outer_billiard_step_detailed, tangency_residual, ConvexTable, Step, EXTERIOR_MARGIN,
    TANGENCY_TOL,
};
