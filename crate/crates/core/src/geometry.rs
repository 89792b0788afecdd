//! Points, domains, and the distance matrices that encode radius constraints.
//!
//! A configuration of candidate vertices `X = {x_1, …, x_N}` inside a domain
//! `Ω` is summarised by the `(N+1)×(N+1)` [`DistanceMatrix`]: pairwise
//! distances plus, in the last row and column, the distance of each point to
//! `∂Ω`. Clipping that matrix against the boundary column and the curvature
//! cap `1/h` yields the [`ReducedDistanceMatrix`], whose off-diagonal entries
//! are the right-hand sides of the radii polytope.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::scalar::{theta_edge, theta_face, theta_vertex, Real};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Point3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn origin() -> Self {
        Point3::new(T::zero(), T::zero(), T::zero())
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    #[inline]
    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn normalized(self) -> Self {
        self * (T::one() / self.norm())
    }

    pub fn midpoint(self, o: Self) -> Self {
        (self + o) * T::lit(0.5)
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn cast<U: Real>(self) -> Point3<U> {
        Point3::new(
            U::lit(self.x.to_f64_lossy()),
            U::lit(self.y.to_f64_lossy()),
            U::lit(self.z.to_f64_lossy()),
        )
    }
}

impl<T: Real> Add for Point3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Point3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Mul<T> for Point3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Local type of a foam point, which fixes its area density.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DensityClass {
    /// Four Plateau borders meet here.
    #[default]
    Vertex,
    /// Interior of a Plateau border (three faces meet).
    Edge,
    /// Interior of a smooth face.
    Face,
}

impl DensityClass {
    pub fn theta<T: Real>(self) -> T {
        match self {
            DensityClass::Vertex => theta_vertex(),
            DensityClass::Edge => theta_edge(),
            DensityClass::Face => theta_face(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DensityClass::Vertex => "vertex",
            DensityClass::Edge => "edge",
            DensityClass::Face => "face",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "vertex" | "v" => Ok(DensityClass::Vertex),
            "edge" | "e" => Ok(DensityClass::Edge),
            "face" | "f" => Ok(DensityClass::Face),
            other => Err(Error::InvalidInput(format!("unknown density class {other:?}"))),
        }
    }
}

/// Relative separation below which two points count as coincident.
const COINCIDENCE_RTOL: f64 = 1e-9;

/// Ordered set of pairwise distinct candidate vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<T> {
    points: Vec<Point3<T>>,
    classes: Vec<DensityClass>,
    labels: Option<Vec<String>>,
}

impl<T: Real> PointSet<T> {
    /// Builds a point set with every point classed as a vertex.
    pub fn new(points: Vec<Point3<T>>) -> Result<Self> {
        let classes = vec![DensityClass::Vertex; points.len()];
        Self::with_classes(points, classes)
    }

    pub fn with_classes(points: Vec<Point3<T>>, classes: Vec<DensityClass>) -> Result<Self> {
        if classes.len() != points.len() {
            return Err(Error::InvalidInput(format!(
                "{} classes for {} points",
                classes.len(),
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(format!("point {i}")));
        }
        let mut diameter = T::zero();
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                diameter = diameter.max(p.distance(*q));
            }
        }
        let threshold = T::lit(COINCIDENCE_RTOL) * diameter;
        for (i, p) in points.iter().enumerate() {
            for (j, q) in points.iter().enumerate().skip(i + 1) {
                let d = p.distance(*q);
                if d <= threshold {
                    return Err(Error::CoincidentPoints {
                        i,
                        j,
                        distance: d.to_f64_lossy(),
                    });
                }
            }
        }
        Ok(PointSet {
            points,
            classes,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} points",
                labels.len(),
                self.points.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point3<T>] {
        &self.points
    }

    pub fn classes(&self) -> &[DensityClass] {
        &self.classes
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Densities `θ_i` of the points, in order.
    pub fn thetas(&self) -> Vec<T> {
        self.classes.iter().map(|c| c.theta()).collect()
    }

    /// Uniformly scaled copy.
    pub fn scaled(&self, factor: T) -> Result<Self> {
        let mut out = Self::with_classes(self.points.iter().map(|&p| p * factor).collect(), self.classes.clone())?;
        out.labels = self.labels.clone();
        Ok(out)
    }
}

/// Half-space `{x : normal · x ≤ offset}` with a unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfSpace<T> {
    pub normal: Point3<T>,
    pub offset: T,
}

/// Region of space in which the candidate vertices live.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain<T> {
    Ball {
        center: Point3<T>,
        radius: T,
    },
    Box {
        min: Point3<T>,
        max: Point3<T>,
    },
    HalfSpaces(Vec<HalfSpace<T>>),
    /// Flat 3-torus with the given edge lengths; it has no boundary.
    Periodic {
        lengths: [T; 3],
    },
    AllSpace,
}

impl<T: Real> Domain<T> {
    pub fn ball(center: Point3<T>, radius: T) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(Error::NonFinite("ball domain".into()));
        }
        if radius <= T::zero() {
            return Err(Error::InvalidDomain(format!("ball radius {radius} must be positive")));
        }
        Ok(Domain::Ball { center, radius })
    }

    pub fn axis_box(min: Point3<T>, max: Point3<T>) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::NonFinite("box domain".into()));
        }
        if !(min.x < max.x && min.y < max.y && min.z < max.z) {
            return Err(Error::InvalidDomain("box min corner must be below max corner".into()));
        }
        Ok(Domain::Box { min, max })
    }

    pub fn half_spaces(planes: Vec<HalfSpace<T>>) -> Result<Self> {
        if planes.is_empty() {
            return Err(Error::InvalidDomain(
                "half-space intersection needs at least one plane".into(),
            ));
        }
        for (k, hs) in planes.iter().enumerate() {
            if !hs.normal.is_finite() || !hs.offset.is_finite() {
                return Err(Error::NonFinite(format!("half-space {k}")));
            }
            if (hs.normal.norm() - T::one()).abs() > T::lit(1e-9).max(T::epsilon() * T::lit(16.0)) {
                return Err(Error::InvalidDomain(format!(
                    "half-space {k} normal is not unit length"
                )));
            }
        }
        Ok(Domain::HalfSpaces(planes))
    }

    pub fn periodic(lengths: [T; 3]) -> Result<Self> {
        if lengths.iter().any(|l| !l.is_finite() || *l <= T::zero()) {
            return Err(Error::InvalidDomain(
                "periodic edge lengths must be positive and finite".into(),
            ));
        }
        Ok(Domain::Periodic { lengths })
    }

    pub fn all_space() -> Self {
        Domain::AllSpace
    }

    /// Characteristic length used for the membership tolerance.
    fn scale(&self) -> T {
        match self {
            Domain::Ball { center, radius } => *radius + center.max_abs(),
            Domain::Box { min, max } => min.max_abs().max(max.max_abs()),
            Domain::HalfSpaces(planes) => planes.iter().fold(T::one(), |acc, hs| acc.max(hs.offset.abs())),
            Domain::Periodic { lengths } => lengths[0].max(lengths[1]).max(lengths[2]),
            Domain::AllSpace => T::one(),
        }
    }

    /// Signed distance to the boundary, positive inside.
    fn signed_clearance(&self, p: Point3<T>) -> T {
        match self {
            Domain::Ball { center, radius } => *radius - p.distance(*center),
            Domain::Box { min, max } => (p.x - min.x)
                .min(max.x - p.x)
                .min(p.y - min.y)
                .min(max.y - p.y)
                .min(p.z - min.z)
                .min(max.z - p.z),
            Domain::HalfSpaces(planes) => planes
                .iter()
                .map(|hs| hs.offset - hs.normal.dot(p))
                .fold(T::infinity(), T::min),
            Domain::Periodic { .. } | Domain::AllSpace => T::infinity(),
        }
    }

    pub fn contains(&self, p: Point3<T>) -> bool {
        p.is_finite() && self.signed_clearance(p) >= -T::lit(1e-12) * self.scale()
    }

    /// Uniformly scaled copy about the origin.
    pub fn scaled(&self, f: T) -> Self {
        match self {
            Domain::Ball { center, radius } => Domain::Ball {
                center: *center * f,
                radius: *radius * f,
            },
            Domain::Box { min, max } => Domain::Box {
                min: *min * f,
                max: *max * f,
            },
            Domain::HalfSpaces(planes) => Domain::HalfSpaces(
                planes
                    .iter()
                    .map(|hs| HalfSpace {
                        normal: hs.normal,
                        offset: hs.offset * f,
                    })
                    .collect(),
            ),
            Domain::Periodic { lengths } => Domain::Periodic {
                lengths: lengths.map(|l| l * f),
            },
            Domain::AllSpace => Domain::AllSpace,
        }
    }

    /// Largest radius for which a ball around any point stays disjoint from
    /// its own periodic translates. Infinite for non-periodic domains.
    pub fn self_image_clearance(&self) -> T {
        match self {
            Domain::Periodic { lengths } => lengths[0].min(lengths[1]).min(lengths[2]) * T::lit(0.5),
            _ => T::infinity(),
        }
    }
}

fn check_member<T: Real>(p: Point3<T>, domain: &Domain<T>, index: usize) -> Result<()> {
    if domain.contains(p) {
        Ok(())
    } else {
        Err(Error::OutsideDomain {
            index,
            excess: (-domain.signed_clearance(p)).to_f64_lossy(),
        })
    }
}

/// Euclidean distance between two domain points; minimum-image distance on a
/// periodic box.
pub fn pairwise_distance<T: Real>(p: Point3<T>, q: Point3<T>, domain: &Domain<T>) -> Result<T> {
    check_member(p, domain, 0)?;
    check_member(q, domain, 1)?;
    Ok(raw_pairwise(p, q, domain))
}

fn raw_pairwise<T: Real>(p: Point3<T>, q: Point3<T>, domain: &Domain<T>) -> T {
    match domain {
        Domain::Periodic { lengths } => {
            let wrap = |d: T, l: T| d - l * (d / l).round();
            let d = p - q;
            Point3::new(wrap(d.x, lengths[0]), wrap(d.y, lengths[1]), wrap(d.z, lengths[2])).norm()
        }
        _ => p.distance(q),
    }
}

/// Distance from an interior point to `∂Ω`; `+∞` for boundaryless domains.
pub fn boundary_distance<T: Real>(p: Point3<T>, domain: &Domain<T>) -> Result<T> {
    check_member(p, domain, 0)?;
    Ok(domain.signed_clearance(p).max(T::zero()))
}

/// `(N+1)×(N+1)` symmetric matrix of pairwise and boundary distances.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Real> DistanceMatrix<T> {
    /// Builds a matrix from explicit rows (size `N+1`). Infinite entries are
    /// allowed only in the boundary row and column.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let size = rows.len();
        if size < 2 {
            return Err(Error::InvalidMatrix("distance matrix needs at least one point".into()));
        }
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidMatrix("distance matrix must be square".into()));
        }
        let n = size - 1;
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v.is_nan() || v < T::zero() {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) = {v} is not a distance")));
                }
                if v.is_infinite() && i < n && j < n {
                    return Err(Error::InvalidMatrix(format!("pairwise entry ({i},{j}) is infinite")));
                }
                if i == j && v != T::zero() {
                    return Err(Error::InvalidMatrix(format!("diagonal entry ({i},{i}) is nonzero")));
                }
                if v != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                entries.push(v);
            }
        }
        Ok(DistanceMatrix { n, entries })
    }

    /// Number of points `N` (the matrix is `(N+1)×(N+1)`).
    pub fn num_points(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * (self.n + 1) + j]
    }

    /// Distance of point `i` to the boundary.
    #[inline]
    pub fn boundary(&self, i: usize) -> T {
        self.get(i, self.n)
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n + 1).map(|r| r.to_vec()).collect()
    }

    /// Matrix of a sub-configuration: rows and columns of the points not in
    /// `indices` are deleted. `indices` must be strictly increasing.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidInput("empty subset".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i >= self.n) {
            return Err(Error::InvalidInput(format!("bad subset indices {indices:?}")));
        }
        let keep: Vec<usize> = indices.iter().copied().chain(std::iter::once(self.n)).collect();
        let mut entries = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            for &j in &keep {
                entries.push(self.get(i, j));
            }
        }
        Ok(DistanceMatrix {
            n: indices.len(),
            entries,
        })
    }
}

/// Distance matrix of `points` in `domain`.
///
/// For periodic domains the boundary column carries the self-image clearance
/// (half the shortest period) instead of `+∞`, so that no ball overlaps its
/// own translate.
pub fn build_distance_matrix<T: Real>(points: &PointSet<T>, domain: &Domain<T>) -> Result<DistanceMatrix<T>> {
    let n = points.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    let pts = points.points();
    for (i, &p) in pts.iter().enumerate() {
        check_member(p, domain, i)?;
    }
    let size = n + 1;
    let mut entries = vec![T::zero(); size * size];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = raw_pairwise(pts[i], pts[j], domain);
            entries[i * size + j] = d;
            entries[j * size + i] = d;
        }
        let b = domain
            .signed_clearance(pts[i])
            .max(T::zero())
            .min(domain.self_image_clearance());
        entries[i * size + n] = b;
        entries[n * size + i] = b;
    }
    Ok(DistanceMatrix { n, entries })
}

/// `N×N` reduced matrix `d_Ω(X)` together with the curvature bound `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDistanceMatrix<T> {
    n: usize,
    entries: Vec<T>,
    h: T,
}

impl<T: Real> ReducedDistanceMatrix<T> {
    /// Wraps explicit entries. For `N > 1` only the off-diagonal entries are
    /// used; for `N = 1` the single entry is the interval length.
    pub fn from_rows(rows: &[Vec<T>], h: T) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(
                "reduced matrix must be square and nonempty".into(),
            ));
        }
        if !(h >= T::zero()) || !h.is_finite() {
            return Err(Error::InvalidInput(format!(
                "curvature bound h = {h} must be finite and ≥ 0"
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let relevant = n == 1 || i != j;
                if relevant && (!v.is_finite() || v < T::zero()) {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i},{j}) = {v} must be finite and ≥ 0"
                    )));
                }
                if v != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
                entries.push(v);
            }
        }
        Ok(ReducedDistanceMatrix { n, entries, h })
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.n + j]
    }

    pub fn h(&self) -> T {
        self.h
    }

    /// `1/h`, or `None` when `h = 0`.
    pub fn r_max(&self) -> Option<T> {
        r_max(self.h)
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Largest entry that constrains a radius (off-diagonal, or the single
    /// entry when `N = 1`).
    pub fn max_constraint(&self) -> T {
        if self.n == 1 {
            return self.entries[0];
        }
        let mut m = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    m = m.max(self.get(i, j));
                }
            }
        }
        m
    }
}

/// `1/h` as a distinguished optional value.
pub fn r_max<T: Real>(h: T) -> Option<T> {
    if h > T::zero() {
        Some(T::one() / h)
    } else {
        None
    }
}

/// Clips the distance matrix against boundary distances and `1/h`.
pub fn reduce_distance_matrix<T: Real>(d: &DistanceMatrix<T>, h: T) -> Result<ReducedDistanceMatrix<T>> {
    if !(h >= T::zero()) || !h.is_finite() {
        return Err(Error::InvalidInput(format!(
            "curvature bound h = {h} must be finite and ≥ 0"
        )));
    }
    let n = d.num_points();
    let cap = r_max(h).unwrap_or_else(T::infinity);
    let mut entries = vec![T::zero(); n * n];
    if n == 1 {
        let v = d.boundary(0).min(cap);
        if !v.is_finite() {
            return Err(Error::Unbounded(
                "single point with no boundary and h = 0: the admissible radius is unbounded".into(),
            ));
        }
        entries[0] = v;
    } else {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = d.get(i, j).min(d.boundary(i)).min(d.boundary(j)).min(cap);
                if !v.is_finite() {
                    return Err(Error::Unbounded(format!("pair ({i},{j}) has no finite constraint")));
                }
                entries[i * n + j] = v;
            }
        }
    }
    Ok(ReducedDistanceMatrix { n, entries, h })
}
