//! Gromov width of closed monotone symplectic manifolds with a semifree
//! Hamiltonian circle action whose maximum is an isolated fixed point.
//!
//! The width is read off the fixed-point data: it is the gap between the
//! largest and the second largest critical value of the normalized moment map.
//! Fixed-point data can be given directly, generated for Grassmannians, built
//! as products, or derived from a Delzant polytope and a subcircle of its torus.

pub mod circle_action;
pub mod grassmannian;
pub mod lattice;
pub mod polytope;
pub mod rational;
pub mod seidel;
pub mod toric;

pub use circle_action::{
    gradient_sphere_invariants, gromov_width, normalize_moment, product_action, ActionData,
    ActionError, CheckOutcome, FixedComponent, Hypothesis, Provenance, RawComponent,
    SphereInvariants, WidthError, WidthReport, Witness,
};
pub use grassmannian::{grassmannian_action, GrassmannianError, GrassmannianSpec};
pub use lattice::{
    extend_to_basis, pairing, primitive_direction, quotient_order, LatticeError, LatticeVector,
};
pub use polytope::{DelzantPolytope, EdgeSegment, HalfSpace, PolytopeError, VertexFigure};
pub use rational::Rational;
pub use seidel::{
    degree_check, seidel_structure, SeidelEntry, SeidelError, SeidelStatus, SeidelStructure,
};
pub use toric::{
    edge_cross_check, isotropy_report, toric_action, toric_width, vertex_weights, EdgeCheck,
    FaceIsotropy, IsotropyReport, SubcircleSpec, ToricError,
};
