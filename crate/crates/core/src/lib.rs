//! Exact computational toolkit for GL(1|1) Higgs-bundle data.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is built on
//! [`grassmann::GrassmannElement`], a sparse element of a finitely generated
//! Grassmann algebra with complex coefficients, and on the (1|1)×(1|1)
//! supermatrices of [`supergroup`]. On top of those sit Čech cocycle checks
//! on abstract nerves ([`cech`]), a polynomial calculus for the Hitchin
//! equations on a chart ([`hitchin`]), graph connections on trivalent
//! fatgraphs ([`fatgraph`]) and the gl(1|1) Garnier and Gaudin systems
//! ([`integrable`]).
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cech;
pub mod error;
pub mod fatgraph;
pub mod grassmann;
pub mod hitchin;
pub mod integrable;
mod linalg;
pub mod report;
pub mod sample;
pub mod selftest;
pub mod supergroup;

#[cfg(test)]
mod proptests;

pub use error::{Error, Result};
pub use grassmann::{ConjugationTable, GrassmannElement, Parity};
pub use report::{Check, Report};
pub use supergroup::{GroupCoords, HiggsEigenData, SuperMatrix11};
