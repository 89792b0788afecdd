//! JSON instance files.
//!
//! A point instance:
//!
//! ```json
//! {"points": [[0,0,0], [-1,0,0]], "classes": ["vertex", "vertex"],
//!  "labels": ["A", "B"],
//!  "domain": {"type": "box", "min": [-10,-4,-4], "max": [10,4,4]},
//!  "h": 0.0}
//! ```
//!
//! Domain types: `ball` (`center`, `radius`), `box` (`min`, `max`),
//! `halfspaces` (`planes: [{normal, offset}]`), `periodic` (`lengths`) and
//! `all`. Alternatively an instance may give `"distance_matrix"` directly,
//! `(N+1)×(N+1)` with `null` standing for `+∞` in the boundary row.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eva::EvaObjective;
use crate::geometry::{build_distance_matrix, DensityClass, DistanceMatrix, Domain, HalfSpace, Point3, PointSet};
use crate::scalar::Real;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainSpec {
    Ball {
        center: [f64; 3],
        radius: f64,
    },
    Box {
        min: [f64; 3],
        max: [f64; 3],
    },
    #[serde(rename = "halfspaces")]
    HalfSpaces {
        planes: Vec<PlaneSpec>,
    },
    Periodic {
        lengths: [f64; 3],
    },
    #[serde(alias = "all_space", alias = "r3")]
    All,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
pub struct PlaneSpec {
    pub normal: [f64; 3],
    pub offset: f64,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_matrix: Option<Vec<Vec<Option<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
}

fn point<T: Real>(a: [f64; 3]) -> Point3<T> {
    Point3::new(T::lit(a[0]), T::lit(a[1]), T::lit(a[2]))
}

impl DomainSpec {
    pub fn build<T: Real>(&self) -> Result<Domain<T>> {
        match self {
            DomainSpec::Ball { center, radius } => Domain::ball(point(*center), T::lit(*radius)),
            DomainSpec::Box { min, max } => Domain::axis_box(point(*min), point(*max)),
            DomainSpec::HalfSpaces { planes } => Domain::half_spaces(
                planes
                    .iter()
                    .map(|p| HalfSpace {
                        normal: point(p.normal),
                        offset: T::lit(p.offset),
                    })
                    .collect(),
            ),
            DomainSpec::Periodic { lengths } => Domain::periodic(lengths.map(T::lit)),
            DomainSpec::All => Ok(Domain::all_space()),
        }
    }
}

/// Either a point configuration in a domain or a precomputed distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance<T> {
    Points {
        points: PointSet<T>,
        domain: Domain<T>,
        h: Option<T>,
    },
    Matrix {
        matrix: DistanceMatrix<T>,
        classes: Vec<DensityClass>,
        h: Option<T>,
    },
}

fn parse_classes(classes: &Option<Vec<String>>, n: usize) -> Result<Vec<DensityClass>> {
    match classes {
        None => Ok(vec![DensityClass::Vertex; n]),
        Some(c) if c.len() != n => Err(Error::InvalidInput(format!("{} classes for {n} points", c.len()))),
        Some(c) => c.iter().map(|s| DensityClass::parse(s)).collect(),
    }
}

impl<T: Real> Instance<T> {
    pub fn from_spec(spec: &InstanceSpec) -> Result<Self> {
        let h = match spec.h {
            Some(h) if !(h >= 0.0) || !h.is_finite() => {
                return Err(Error::InvalidInput(format!(
                    "curvature bound h = {h} must be finite and ≥ 0"
                )))
            }
            other => other.map(T::lit),
        };
        match (&spec.points, &spec.distance_matrix) {
            (Some(_), Some(_)) => Err(Error::InvalidInput(
                "give either points or distance_matrix, not both".into(),
            )),
            (None, None) => Err(Error::InvalidInput("instance needs points or distance_matrix".into())),
            (Some(pts), None) => {
                let domain = spec
                    .domain
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput("point instance needs a domain".into()))?
                    .build()?;
                if let Some(i) = pts.iter().position(|p| p.iter().any(|c| !c.is_finite())) {
                    return Err(Error::NonFinite(format!("point {i}")));
                }
                let classes = parse_classes(&spec.classes, pts.len())?;
                let mut points = PointSet::with_classes(pts.iter().map(|&p| point(p)).collect(), classes)?;
                if let Some(labels) = &spec.labels {
                    points = points.with_labels(labels.clone())?;
                }
                Ok(Instance::Points { points, domain, h })
            }
            (None, Some(rows)) => {
                if spec.domain.is_some() {
                    return Err(Error::InvalidInput("a distance matrix instance takes no domain".into()));
                }
                let rows: Vec<Vec<T>> = rows
                    .iter()
                    .map(|r| r.iter().map(|v| v.map_or(T::infinity(), T::lit)).collect())
                    .collect();
                let matrix = DistanceMatrix::from_rows(&rows)?;
                let classes = parse_classes(&spec.classes, matrix.num_points())?;
                Ok(Instance::Matrix { matrix, classes, h })
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_spec(&serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn num_points(&self) -> usize {
        match self {
            Instance::Points { points, .. } => points.len(),
            Instance::Matrix { matrix, .. } => matrix.num_points(),
        }
    }

    /// Curvature bound stored in the file, if any.
    pub fn h(&self) -> Option<T> {
        match self {
            Instance::Points { h, .. } | Instance::Matrix { h, .. } => *h,
        }
    }

    pub fn classes(&self) -> Vec<DensityClass> {
        match self {
            Instance::Points { points, .. } => points.classes().to_vec(),
            Instance::Matrix { classes, .. } => classes.clone(),
        }
    }

    pub fn labels(&self) -> Option<Vec<String>> {
        match self {
            Instance::Points { points, .. } => points.labels().map(|l| l.to_vec()),
            Instance::Matrix { .. } => None,
        }
    }

    pub fn distance_matrix(&self) -> Result<DistanceMatrix<T>> {
        match self {
            Instance::Points { points, domain, .. } => build_distance_matrix(points, domain),
            Instance::Matrix { matrix, .. } => Ok(matrix.clone()),
        }
    }

    pub fn objective(&self, h: T) -> Result<EvaObjective<T>> {
        EvaObjective::with_weights(self.classes().iter().map(|c| c.theta()).collect(), h)
    }
}

/// Matrix rows as JSON-ready values, `None` for `+∞`.
pub fn matrix_to_json<T: Real>(rows: &[Vec<T>]) -> Vec<Vec<Option<f64>>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|v| if v.is_finite() { Some(v.to_f64_lossy()) } else { None })
                .collect()
        })
        .collect()
}
