//! Exact-arithmetic effective cone computations for blowups of products of
//! projective spaces, with a table catalog, a cone-method pipeline, and
//! weak-Fano / log-Fano / Mori-dream-space certificates.

pub mod baselocus;
pub mod cli;
pub mod catalog;
pub mod error;
pub mod fano;
pub mod io;
pub mod lattice;
pub mod pipeline;
pub mod transfer;
pub mod exactcone;
mod num;

pub use error::{Error, Result};
pub use exactcone::{Cone, Containment, IntVector, SetComparison};
