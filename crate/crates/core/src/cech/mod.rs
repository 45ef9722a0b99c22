//! Čech cochains on an abstract nerve and the cocycle conditions satisfied by
//! GL(1|1) transition data and glued Higgs fields.
//!
//! Cochain values are constant elements of Λ on each simplex. A nerve only
//! records which intersections are non-empty, so every check here is the
//! pointwise algebraic identity on the listed simplices.

mod cochain;
mod higgs;
mod nerve;
mod transition;

pub use cochain::{coboundary, cup_product, solve_coboundary, Cochain, CoboundarySolution};
pub use higgs::{gl_higgs_constraints, sl_higgs_obstruction, GlHiggsOutcome, HiggsCechData, SlObstruction};
pub use nerve::{Nerve, Simplex};
pub use transition::{
    check_gl_cocycle, check_sl_cocycle, cocycle_residuals, two_cocycle_g, two_cocycle_value, CocycleResidual, Mode,
    TransitionData,
};
