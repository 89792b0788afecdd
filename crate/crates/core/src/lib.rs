//! Lower bounds for the surface area of foams from the positions of their
//! vertices.
//!
//! Every vertex of a foam whose faces have mean curvature at most `h` carries
//! a guaranteed amount of surface area around it. Given candidate vertex
//! positions this crate finds the largest total that a family of disjoint
//! balls can certify (the *extrinsic vertex area*), evaluates the closed-form
//! bounds that follow from it, and checks meshes against the underlying
//! disc-area inequality and Plateau's angle rules.
//!
//! ```
//! use foambound::{eva, Domain, Point, PointSet};
//!
//! let points = PointSet::new(vec![
//!     Point::new(0.0, 0.0, 0.0),
//!     Point::new(-1.0, 0.0, 0.0),
//!     Point::new(2.0, 0.0, 0.0),
//! ])?;
//! let domain = Domain::axis_box(Point::new(-10.0, -4.0, -4.0), Point::new(10.0, 4.0, 4.0))?;
//! let best = eva(&points, &domain, 0.0)?;
//! assert_eq!(best.radii, vec![0.0, 1.0, 2.0]);
//! # Ok::<(), foambound::Error>(())
//! ```
//!
//! All numerical code is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix `f64`.

// NaN has to fail every `!(x > 0)` style guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod eva;
pub mod geometry;
pub mod instance;
pub mod meshcheck;
pub mod polytope;
pub mod scalar;
pub mod sum;

pub use bounds::{
    a0, a0_vertex, compact_foam_bounds, cost_lower_bound, kelvin_cell_bound, kelvin_slicing_bound, main_theorem_bound,
    pressure_lower_bound, CompactFoamBounds, CostInput, KelvinCellBound, MainBoundInput, PressureInput,
};
pub use error::{Error, ErrorKind, Result};
pub use eva::{
    convexity_certified, eva, eva_a_algorithm1, eva_a_algorithm1_matrix, eva_a_exact, eva_a_exact_matrix, eva_value,
    maximize_eva, EvaAMethod, EvaObjective, DEFAULT_MAX_EXACT_N,
};
pub use geometry::{
    boundary_distance, build_distance_matrix, pairwise_distance, r_max, reduce_distance_matrix, DensityClass, HalfSpace,
};
pub use instance::Instance;
pub use meshcheck::{clipped_area, plateau_angle_check, verify_main_inequality, DiscProbe};
pub use polytope::{build_h_polytope, enumerate_vertices, enumerate_vertices_active_set, Constraint};
pub use scalar::{theta_edge, theta_face, theta_v_pi, theta_vertex, Real};

pub type Point = geometry::Point3<f64>;
pub type PointSet = geometry::PointSet<f64>;
pub type Domain = geometry::Domain<f64>;
pub type DistanceMatrix = geometry::DistanceMatrix<f64>;
pub type ReducedDistanceMatrix = geometry::ReducedDistanceMatrix<f64>;
pub type HPolytope = polytope::HPolytope<f64>;
pub type VertexSet = polytope::VertexSet<f64>;
pub type EvaResult = eva::EvaResult<f64>;
pub type EvaAResult = eva::EvaAResult<f64>;
pub type FoamMesh = meshcheck::FoamMesh<f64>;
pub type AngleReport = meshcheck::AngleReport;
pub type MainInequalityReport = meshcheck::MainInequalityReport<f64>;

/// Single-precision aliases.
pub mod f32 {
    pub type Point = crate::geometry::Point3<f32>;
    pub type PointSet = crate::geometry::PointSet<f32>;
    pub type Domain = crate::geometry::Domain<f32>;
    pub type DistanceMatrix = crate::geometry::DistanceMatrix<f32>;
    pub type FoamMesh = crate::meshcheck::FoamMesh<f32>;
}
