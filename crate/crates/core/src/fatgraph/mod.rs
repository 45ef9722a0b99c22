//! Trivalent fatgraphs and SL(1|1) / SU(1|1) graph connections.
//!
//! A connection assigns group coordinates `(h, α, β)` to each edge read along
//! its preferred direction. Vertex rescalings are gauge transformations
//! `g_e ↦ r_t⁻¹ g_e r_h`, so holonomies around loops based at `w` only see
//! `r_w`.

mod connection;
mod graph;

pub use connection::{
    constrained_dims, free_dims, rescaling_element, GraphConnection, Normalization, PunctureReport, RealForm,
    RescaleKind, REALITY_TOL,
};
pub use graph::{BoundaryCycle, FatGraph, OrientedEdge};

use alloc::format;

use crate::error::{Error, Result};

/// Closed-form moduli dimensions `(even, odd)` for genus `g` with `s ≥ 1`
/// punctures: `2g+2s−1 | 4g+2s−2` unconstrained and `2g | 4g` with trivial
/// boundary holonomy. The SU form keeps the even count and halves the odd one.
pub fn moduli_dims(genus: usize, punctures: usize, constrained: bool, su: bool) -> Result<(usize, usize)> {
    if punctures == 0 || 2 * genus + punctures < 3 {
        return Err(Error::InvalidInput(format!(
            "(g, s) = ({genus}, {punctures}) needs s ≥ 1 and 2g − 2 + s > 0"
        )));
    }
    let (g, s) = (genus, punctures);
    Ok(match (constrained, su) {
        (false, false) => (2 * g + 2 * s - 1, 4 * g + 2 * s - 2),
        (false, true) => (2 * g + 2 * s - 1, 2 * g + s - 1),
        (true, false) => (2 * g, 4 * g),
        (true, true) => (2 * g, 2 * g),
    })
}
