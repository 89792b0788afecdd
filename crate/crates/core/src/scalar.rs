//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable by the geometry, polytope and bound routines.
///
/// Tolerances are tied to the precision of the type so that the same code
/// path works for both `f32` and `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
    + 'static
{
    /// Absolute feasibility tolerance for unit-scaled constraint systems.
    fn feasibility_tol() -> Self;

    /// Relative tolerance used to merge coincident polytope vertices.
    fn dedup_tol() -> Self;

    /// Converts an `f64` literal. Panics only for values the type cannot hold.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    #[inline]
    fn feasibility_tol() -> Self {
        1e-9
    }
    #[inline]
    fn dedup_tol() -> Self {
        1e-7
    }
}

impl Real for f32 {
    #[inline]
    fn feasibility_tol() -> Self {
        1e-4
    }
    #[inline]
    fn dedup_tol() -> Self {
        1e-3
    }
}

/// Density of a vertex point, `3/π · arccos(-1/3)`.
#[inline]
pub fn theta_vertex<T: Real>() -> T {
    T::lit(3.0) / T::PI() * (-T::one() / T::lit(3.0)).acos()
}

/// Density of an edge point.
#[inline]
pub fn theta_edge<T: Real>() -> T {
    T::lit(1.5)
}

/// Density of a face point.
#[inline]
pub fn theta_face<T: Real>() -> T {
    T::one()
}

/// `θ_v · π = 3 · arccos(-1/3)`, the unit in which vertex areas are reported.
#[inline]
pub fn theta_v_pi<T: Real>() -> T {
    T::lit(3.0) * (-T::one() / T::lit(3.0)).acos()
}

/// Tetrahedral angle `arccos(-1/3)` in degrees.
pub fn tetrahedral_angle_deg() -> f64 {
    (-1.0f64 / 3.0).acos().to_degrees()
}
