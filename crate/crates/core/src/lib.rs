//! Exact wall-and-chamber computations for O'Grady-type Mukai vectors on a
//! K3 surface with Picard group generated by an ample class `H`, `H^2 = 2d`.
//!
//! Everything is computed over arbitrary-precision integers and rationals:
//! Mukai lattice arithmetic ([`mukai`]), Pell and constrained lattice solvers
//! ([`quadratic`]), saturated wall lattices and the wall taxonomy
//! ([`lattice`], [`classify`]), movable and nef cones of `M_H(2,0,-2)`
//! ([`cones`]), and the `(s,t)` slice of the stability manifold together with
//! the local Bayer-Macrì map ([`slice`]). [`report`] and [`svg`] turn results
//! into JSON reports and diagrams.

pub mod arith;
pub mod classify;
pub mod cones;
pub mod config;
mod error;
pub mod lattice;
pub mod mukai;
pub mod quadratic;
pub mod report;
pub mod slice;
pub mod svg;

pub use classify::{classify_wall, effectivity_sign, ConeMembership, WallClassification, WallKind, Witness, WitnessLabel};
pub use cones::{movable_cone, nef_cone, ns_gram, orthogonal_ray, square_zero_class, ConeRay, ConeResult};
pub use error::{Error, Result};
pub use lattice::{make_wall_lattice, WallLattice};
pub use mukai::{exp_twist, is_ogrady_type, pairing, primitive_decompose, spherical_reflect, MukaiVector, PrimitiveDecomposition, Surface};
pub use quadratic::{brute_force_oracle, pell_fundamental, pell_general, solve_constrained_classes, ClassQuery, PellSolution};
pub use slice::{bm_ray, central_charge, enumerate_walls, numerical_wall, BMImage, SlicePoint, WallCurve, WallRecord, WallShape, Window};

/// Version string embedded in report headers.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
