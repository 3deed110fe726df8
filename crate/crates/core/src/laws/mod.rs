//! Experiment harness: exact isometry checks, convergence sweeps and the
//! Dirichlet Monte Carlo estimate, with tabular CSV output.

mod dirichlet;
mod isometry;
mod sweeps;
mod table;

pub use dirichlet::{
    derive_seed, dirichlet_grid, polya_dirichlet_check, polya_dirichlet_mc, polya_validity,
    Distance, DistanceKind, GridConfig, McConfig, McEstimate, PolyaDirichletReport,
};
pub use isometry::{isometry_check, IsometryReport, Urn};
pub use sweeps::{
    coefficient_limit_probe, default_draw_schedule, large_draw_sweep, large_urn_sweep,
    DrawSweepConfig, UrnSweepConfig, DEFAULT_URN_SCHEDULE,
};
pub use table::{Check, SweepReport, SweepRow, SweepTable, Value};
