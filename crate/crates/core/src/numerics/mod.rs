//! Numerical machinery shared by the kernels: safeguarded root solving,
//! finite-difference partials, the frozen sound-speed oracle, the generic
//! convexity audit and the three-parameter least-squares solver.

mod fd;
mod lsq;
mod oracle;
mod root;

pub use fd::{derivative, partial, DENSITY_STEP_FLOOR, PRESSURE_STEP_FLOOR, RELATIVE_STEP, TEMPERATURE_STEP_FLOOR};
pub use lsq::{lsq_fit_3, LsqFit, CVT_COLUMN_SCALE, MAX_CONDITION};
pub use oracle::{
    convexity_audit_fd, maxwell_residual, sound_speed_fd_oracle, surface_partials, ConvexityReport, FnSurface,
    SoundSpeedOracle, SurfacePartials, ThermoSurface,
};
pub use root::{solve_monotone, RootSolution};
