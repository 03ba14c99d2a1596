//! Cyclic covers of the pillowcase with totally degenerate Kontsevich–Zorich
//! spectrum.
//!
//! - [`cyclic`]: exact eigenspace and rank-bound arithmetic for `M_N(a)`.
//! - [`search`]: sweep over cover parameters up to equivalence.
//! - [`flat`]: slit model of the cover, orientability, square-tiled surface.
//! - [`cocycle`]: integral homology of origamis, the `SL(2,Z)` action and
//!   Monte-Carlo Lyapunov exponents.

pub mod cocycle;
pub mod cyclic;
mod error;
pub mod exec;
pub mod flat;
pub mod search;

pub use error::{Error, ParamError, Result};
pub use exec::Execution;
