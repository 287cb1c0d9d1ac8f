//! Quasimap vertex functions of quiver varieties: exact symbolic algebra,
//! fixed-point combinatorics, vertex series and saddle-point (Bethe) equations.

pub mod symbolic;
pub mod combinat;
pub mod ktheory;
pub mod vertex;
pub mod bethe;
pub mod checks;
