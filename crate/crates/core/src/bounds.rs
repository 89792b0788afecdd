//! Closed-form area, cost and pressure bounds.

use crate::error::{Error, Result};
use crate::scalar::{theta_vertex, Real};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MainBoundInput<T> {
    /// Density of the probe point.
    pub theta: T,
    /// Mean curvature bound of the faces.
    pub h: T,
    /// Radius of the extrinsic disc.
    pub radius: T,
}

/// Lower bound `θ e^{−2hR} π R²` for the area of an extrinsic disc.
pub fn main_theorem_bound<T: Real>(input: MainBoundInput<T>) -> Result<T> {
    let MainBoundInput { theta, h, radius } = input;
    if !(radius > T::zero()) || !radius.is_finite() {
        return Err(Error::InvalidInput(format!(
            "disc radius {radius} must be positive and finite"
        )));
    }
    if !(h >= T::zero()) || !h.is_finite() {
        return Err(Error::InvalidInput(format!(
            "curvature bound {h} must be finite and ≥ 0"
        )));
    }
    if !(theta > T::zero()) || !theta.is_finite() {
        return Err(Error::InvalidInput(format!("density {theta} must be positive")));
    }
    Ok(theta * (-(T::lit(2.0) * h * radius)).exp() * T::PI() * radius * radius)
}

/// Guaranteed area `θ π (d/2)²` around a vertex whose neighbours are at least
/// `d` away.
pub fn a0<T: Real>(d: T, theta: T) -> T {
    let half = d * T::lit(0.5);
    theta * T::PI() * half * half
}

/// [`a0`] with the vertex density.
pub fn a0_vertex<T: Real>(d: T) -> T {
    a0(d, theta_vertex())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompactFoamBounds<T> {
    /// Lower bound on the largest extrinsic radius of the foam.
    pub r_max_lower: T,
    pub area_lower: T,
}

/// Bounds for a compact foam with curvature bound `h > 0`: its extrinsic
/// radius about any point is at least `1/h` and its area at least
/// `θ π / (e² h²)`.
pub fn compact_foam_bounds<T: Real>(theta: T, h: T) -> Result<CompactFoamBounds<T>> {
    if h == T::zero() {
        return Err(Error::NotApplicable("compact foams have h > 0".into()));
    }
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::InvalidInput(format!(
            "curvature bound {h} must be positive and finite"
        )));
    }
    let e2 = T::lit(2.0).exp();
    Ok(CompactFoamBounds {
        r_max_lower: T::one() / h,
        area_lower: theta * T::PI() / (e2 * h * h),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KelvinCellBound<T> {
    /// Discs at the centres of the 8 hexagons, each shared by two cells.
    pub hexagons: T,
    /// Discs at the 24 vertices, each shared by four cells.
    pub vertices: T,
    /// Remainder of the 6 planar squares, each shared by two cells.
    pub squares: T,
    pub total: T,
}

/// Lower bound for the area of one Kelvin cell with edge length `a`.
pub fn kelvin_cell_bound<T: Real>(a: T) -> Result<KelvinCellBound<T>> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(Error::InvalidInput(format!("edge length {a} must be positive")));
    }
    let half = a * T::lit(0.5);
    let disc = T::PI() * half * half;
    let hexagons = T::lit(8.0) * T::lit(0.5) * disc;
    let vertices = T::lit(24.0) * T::lit(0.25) * T::lit(3.0) * (-T::one() / T::lit(3.0)).acos() * half * half;
    let squares = T::lit(6.0) * T::lit(0.5) * (a * a - disc);
    Ok(KelvinCellBound {
        hexagons,
        vertices,
        squares,
        total: hexagons + vertices + squares,
    })
}

/// Slicing bound `6(√(3/2) + 1) a²` for the Kelvin cell, used for comparison.
pub fn kelvin_slicing_bound<T: Real>(a: T) -> T {
    T::lit(6.0) * ((T::lit(1.5)).sqrt() + T::one()) * a * a
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostInput<T> {
    /// Number of cells `n`.
    pub cells: T,
    /// Number of vertices `v_Ω` inside the domain.
    pub vertices: T,
    /// Domain volume.
    pub volume: T,
    /// Minimal extrinsic distance between vertices.
    pub min_distance: T,
}

impl<T: Real> CostInput<T> {
    fn validate(&self) -> Result<()> {
        let ok = self.cells >= T::one()
            && self.vertices >= T::one()
            && self.volume > T::zero()
            && self.min_distance >= T::zero()
            && [self.cells, self.vertices, self.volume, self.min_distance]
                .iter()
                .all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(
                "cost input needs n ≥ 1, v ≥ 1, V > 0, d ≥ 0".into(),
            ))
        }
    }

    /// Vertices per cell.
    pub fn vertices_per_cell(&self) -> T {
        self.vertices / self.cells
    }

    /// Vertex density per unit volume.
    pub fn vertex_density(&self) -> T {
        self.vertices / self.volume
    }
}

/// Lower bound `v̄ ν² A0(d)³` for the cost function `μ`. With `periodic`
/// the vertices-per-cell factor is raised to at least 24.
pub fn cost_lower_bound<T: Real>(input: CostInput<T>, periodic: bool) -> Result<T> {
    input.validate()?;
    let mut vbar = input.vertices_per_cell();
    if periodic {
        vbar = vbar.max(T::lit(24.0));
    }
    let nu = input.vertex_density();
    let a = a0_vertex(input.min_distance);
    Ok(vbar * nu * nu * a * a * a)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PressureInput<T> {
    pub p_ext: T,
    /// Surface tension.
    pub sigma: T,
    /// Vertex density `ν_Ω`.
    pub vertex_density: T,
    pub min_distance: T,
}

/// Lower bound `p_ext + (3/2) σ ν A0(d)` for the cell pressure of a minimal foam.
pub fn pressure_lower_bound<T: Real>(input: PressureInput<T>) -> Result<T> {
    if !(input.sigma >= T::zero()) || !(input.vertex_density >= T::zero()) || !(input.min_distance >= T::zero()) {
        return Err(Error::InvalidInput("σ, ν and d must be nonnegative".into()));
    }
    Ok(input.p_ext + T::lit(1.5) * input.sigma * input.vertex_density * a0_vertex(input.min_distance))
}
