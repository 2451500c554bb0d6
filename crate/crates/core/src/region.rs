//! Generalized spheres (spheres and hyperplanes) and the regions they bound.

use crate::error::{Error, Result};
use crate::extgeom::{ExtendedPoint, Vector};

/// Allowed deviation of a stored normal from unit length.
const UNIT_NORMAL_TOL: f64 = 1e-12;

/// A sphere `‖x − c‖ = ρ` or a hyperplane `⟨n, x⟩ = offset` (which passes through ∞).
#[derive(Debug, Clone, PartialEq)]
pub enum GeneralizedSphere {
    Sphere { center: Vector, radius: f64 },
    Hyperplane { normal: Vector, offset: f64 },
}

impl GeneralizedSphere {
    pub fn sphere(center: Vector, radius: f64) -> Result<Self> {
        if center.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate("sphere center"));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::NonPositive { what: "radius", value: radius });
        }
        Ok(Self::Sphere { center, radius })
    }

    /// The hyperplane `⟨normal, x⟩ = offset`; the normal is rescaled to unit length.
    pub fn hyperplane(normal: Vector, offset: f64) -> Result<Self> {
        if normal.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if normal.iter().any(|c| !c.is_finite()) || !offset.is_finite() {
            return Err(Error::NonFiniteCoordinate("hyperplane"));
        }
        let len = normal.norm();
        if len == 0.0 {
            return Err(Error::ZeroNormal);
        }
        if (len - 1.0).abs() <= UNIT_NORMAL_TOL {
            return Ok(Self::Hyperplane { normal, offset });
        }
        Ok(Self::Hyperplane { normal: normal / len, offset: offset / len })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Sphere { center, .. } => center.len(),
            Self::Hyperplane { normal, .. } => normal.len(),
        }
    }

    /// Signed Euclidean distance of `x` to the surface: `‖x − c‖ − ρ` or `⟨n, x⟩ − offset`.
    pub fn level(&self, x: &Vector) -> f64 {
        match self {
            Self::Sphere { center, radius } => (x - center).norm() - radius,
            Self::Hyperplane { normal, offset } => normal.dot(x) - offset,
        }
    }

    /// Whether a point lies on the surface within `tol`; ∞ lies on every hyperplane.
    pub fn passes_through(&self, x: &ExtendedPoint, tol: f64) -> bool {
        match (self, x) {
            (Self::Hyperplane { .. }, ExtendedPoint::Infinity) => true,
            (Self::Sphere { .. }, ExtendedPoint::Infinity) => false,
            (_, ExtendedPoint::Finite(v)) => self.level(v).abs() <= tol,
        }
    }
}

/// Which side of the defining function `level` a region occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `level < 0`: the inside of a sphere, or `⟨n, x⟩ < offset`.
    Negative,
    /// `level > 0`: the outside of a sphere (with ∞), or `⟨n, x⟩ > offset`.
    Positive,
}

impl Side {
    pub fn flip(self) -> Self {
        match self {
            Self::Negative => Self::Positive,
            Self::Positive => Self::Negative,
        }
    }
}

/// One of the two complementary regions bounded by a generalized sphere.
///
/// The exterior of a sphere always contains ∞. A half-space contains ∞ only
/// when closed, since ∞ lies on its boundary hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    surface: GeneralizedSphere,
    side: Side,
    closed: bool,
}

impl Region {
    pub fn new(surface: GeneralizedSphere, side: Side, closed: bool) -> Self {
        Self { surface, side, closed }
    }

    pub fn ball(center: Vector, radius: f64, closed: bool) -> Result<Self> {
        Ok(Self::new(GeneralizedSphere::sphere(center, radius)?, Side::Negative, closed))
    }

    pub fn ball_exterior(center: Vector, radius: f64, closed: bool) -> Result<Self> {
        Ok(Self::new(GeneralizedSphere::sphere(center, radius)?, Side::Positive, closed))
    }

    /// `{x : ⟨normal, x⟩ < offset}`, or `≤` together with ∞ when closed.
    pub fn half_space(normal: Vector, offset: f64, closed: bool) -> Result<Self> {
        Ok(Self::new(GeneralizedSphere::hyperplane(normal, offset)?, Side::Negative, closed))
    }

    pub fn surface(&self) -> &GeneralizedSphere {
        &self.surface
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dim(&self) -> usize {
        self.surface.dim()
    }

    pub fn contains(&self, x: &ExtendedPoint) -> bool {
        match x {
            ExtendedPoint::Infinity => match self.surface {
                GeneralizedSphere::Sphere { .. } => self.side == Side::Positive,
                GeneralizedSphere::Hyperplane { .. } => self.closed,
            },
            ExtendedPoint::Finite(v) => {
                let s = self.surface.level(v);
                match (self.side, self.closed) {
                    (Side::Negative, false) => s < 0.0,
                    (Side::Negative, true) => s <= 0.0,
                    (Side::Positive, false) => s > 0.0,
                    (Side::Positive, true) => s >= 0.0,
                }
            }
        }
    }

    /// The set-theoretic complement in R^n ∪ {∞}.
    pub fn complement(&self) -> Self {
        Self { surface: self.surface.clone(), side: self.side.flip(), closed: !self.closed }
    }

    pub fn with_closed(&self, closed: bool) -> Self {
        Self { closed, ..self.clone() }
    }

    /// Center and radius when the region is a bounded ball.
    pub fn as_ball(&self) -> Option<(&Vector, f64)> {
        match (&self.surface, self.side) {
            (GeneralizedSphere::Sphere { center, radius }, Side::Negative) => Some((center, *radius)),
            _ => None,
        }
    }
}
