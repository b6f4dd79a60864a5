//! Exact algorithms for algebraic power series: implicitization from a
//! truncated expansion, reduction to a Henselian fixed-point equation, and
//! coefficient formulas and Newton lifting for the resulting root.

pub mod algebra;
pub mod combinat;
pub mod error;
pub mod expansion;
pub mod fixtures;
pub mod flajolet_soria;
pub mod henselization;
pub mod io;
pub mod linalg;
pub mod newton_oracle;
pub mod wilczynski;

pub use error::{Error, Result};
