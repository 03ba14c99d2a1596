//! Kontsevich–Zorich cocycle over the `SL(2,Z)` orbit of a square-tiled surface.

mod action;
mod cf;
mod homology;
pub mod intmat;
mod lyapunov;
mod orbit;

pub use action::{
    automorphism_action, automorphism_zero_block, check_action, generator_action, perm_action, sl2_mul,
    ActionChecks, Generator, HomologyAction, Sl2,
};
pub use cf::{cf_digits, cf_expansion, GaussDigits};
pub use homology::{homology_model, HomologyModel};
pub use lyapunov::{
    estimate_on_orbit, lyapunov_estimate, write_trace_csv, Block, LyapunovConfig, LyapunovEstimate, TraceRow,
};
pub use orbit::{orbit, Orbit, Transition};
