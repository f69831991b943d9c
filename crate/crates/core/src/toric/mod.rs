//! Toric varieties from fans: κ, the Gorenstein index, discrepancies,
//! resolution by stellar subdivision, strata data, the lattice-sum formula
//! and the shed volume.

mod boxpoints;
pub mod corpus;
mod fan;
mod kappa;
pub mod lattice;
mod resolve;
mod sums;
mod triangulate;

pub use boxpoints::{box_points, BoxPoint};
pub use fan::{Facet, Fan};
pub use kappa::{discrepancy_of, Kappa};
pub use resolve::{independence_check, resolve, IndependenceCheck, stellar_subdivide, toric_strata_datum, Resolution, Strategy};
pub use sums::{shed_volume, stringy_betti_lattice_sum};
pub use triangulate::{triangulate, Triangulation};

pub(crate) use fan::combinations;
pub(crate) use triangulate::triangulate_cone;
