//! The general conformal group of R^n ∪ {∞}, built from translations,
//! orthogonal maps, homotheties, and the unit inversion `I(x) = x / ⟨x, x⟩`.
//!
//! A [`ConformalMap`] is a list of primitives applied right to left. Images of
//! points, generalized spheres, and regions are computed exactly from closed
//! forms; no normal-form reduction is attempted.

use crate::error::{Error, Result};
use crate::extgeom::{ExtendedPoint, Matrix, Vector};
pub use crate::region::{GeneralizedSphere, Region, Side};

/// Points this close to the inversion center are sent to ∞.
const POLE_EPS: f64 = 1e-14;
/// Relative tolerance for a sphere passing through the inversion center.
const THROUGH_ORIGIN_REL: f64 = 1e-12;
/// Hyperplanes with smaller offset are taken to pass through the origin.
const PLANE_ORIGIN_EPS: f64 = 1e-14;
const ORTHOGONALITY_TOL: f64 = 1e-10;
/// Minimal separation of a side-tracking witness from the image surface.
const WITNESS_CLEARANCE: f64 = 1e-9;

/// One generator of the conformal group.
#[derive(Debug, Clone, PartialEq)]
pub enum Primitive {
    Translation(Vector),
    Orthogonal(Matrix),
    Homothety(f64),
    /// The unit inversion at the origin.
    Inversion,
}

impl Primitive {
    fn check_dim(&self, dim: usize) -> Result<()> {
        match self {
            Self::Translation(v) if v.len() != dim => {
                Err(Error::DimensionMismatch { expected: dim, found: v.len() })
            }
            Self::Orthogonal(q) if q.nrows() != dim || q.ncols() != dim => {
                Err(Error::DimensionMismatch { expected: dim, found: q.nrows().max(q.ncols()) })
            }
            _ => Ok(()),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::Translation(v) => {
                if v.iter().any(|c| !c.is_finite()) {
                    return Err(Error::NonFiniteCoordinate("translation"));
                }
            }
            Self::Orthogonal(q) => {
                let defect = (q.transpose() * q - Matrix::identity(q.nrows(), q.ncols())).amax();
                if !(defect <= ORTHOGONALITY_TOL) {
                    return Err(Error::NotOrthogonal(defect));
                }
            }
            Self::Homothety(l) => {
                if !(*l > 0.0) || !l.is_finite() {
                    return Err(Error::NonPositive { what: "homothety factor", value: *l });
                }
            }
            Self::Inversion => {}
        }
        Ok(())
    }

    fn inverse(&self) -> Self {
        match self {
            Self::Translation(v) => Self::Translation(-v),
            Self::Orthogonal(q) => Self::Orthogonal(q.transpose()),
            Self::Homothety(l) => Self::Homothety(1.0 / l),
            Self::Inversion => Self::Inversion,
        }
    }

    fn apply(&self, x: &ExtendedPoint, dim: usize) -> ExtendedPoint {
        let v = match x {
            ExtendedPoint::Infinity => {
                return match self {
                    Self::Inversion => ExtendedPoint::origin(dim),
                    _ => ExtendedPoint::Infinity,
                }
            }
            ExtendedPoint::Finite(v) => v,
        };
        match self {
            Self::Translation(t) => ExtendedPoint::Finite(v + t),
            Self::Orthogonal(q) => ExtendedPoint::Finite(q * v),
            Self::Homothety(l) => ExtendedPoint::Finite(v * *l),
            Self::Inversion => {
                let n2 = v.norm_squared();
                if n2.sqrt() <= POLE_EPS {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite(v / n2)
                }
            }
        }
    }

    fn image_sphere(&self, s: &GeneralizedSphere) -> GeneralizedSphere {
        use GeneralizedSphere::{Hyperplane, Sphere};
        match (self, s) {
            (Self::Translation(t), Sphere { center, radius }) => {
                Sphere { center: center + t, radius: *radius }
            }
            (Self::Translation(t), Hyperplane { normal, offset }) => {
                Hyperplane { normal: normal.clone(), offset: offset + normal.dot(t) }
            }
            (Self::Orthogonal(q), Sphere { center, radius }) => {
                Sphere { center: q * center, radius: *radius }
            }
            (Self::Orthogonal(q), Hyperplane { normal, offset }) => {
                let n = q * normal;
                let len = n.norm();
                Hyperplane { normal: n / len, offset: *offset }
            }
            (Self::Homothety(l), Sphere { center, radius }) => {
                Sphere { center: center * *l, radius: radius * l }
            }
            (Self::Homothety(l), Hyperplane { normal, offset }) => {
                Hyperplane { normal: normal.clone(), offset: offset * l }
            }
            (Self::Inversion, Sphere { center, radius }) => {
                let c2 = center.norm_squared();
                let r2 = radius * radius;
                let k = c2 - r2;
                if k.abs() <= THROUGH_ORIGIN_REL * c2.max(r2) {
                    // ⟨c, y⟩ = 1/2 on the image.
                    let len = c2.sqrt();
                    Hyperplane { normal: center / len, offset: 0.5 / len }
                } else {
                    Sphere { center: center / k, radius: radius / k.abs() }
                }
            }
            (Self::Inversion, Hyperplane { normal, offset }) => {
                if offset.abs() <= PLANE_ORIGIN_EPS {
                    Hyperplane { normal: normal.clone(), offset: 0.0 }
                } else {
                    Sphere { center: normal / (2.0 * offset), radius: 0.5 / offset.abs() }
                }
            }
        }
    }
}

/// A finite composition of conformal primitives, applied right to left.
///
/// The empty list is the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalMap {
    dim: usize,
    primitives: Vec<Primitive>,
}

impl ConformalMap {
    pub fn identity(dim: usize) -> Self {
        Self { dim, primitives: Vec::new() }
    }

    pub fn new(dim: usize, primitives: Vec<Primitive>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for p in &primitives {
            p.check_dim(dim)?;
            p.validate()?;
        }
        Ok(Self { dim, primitives })
    }

    pub fn translation(v: Vector) -> Result<Self> {
        Self::new(v.len(), vec![Primitive::Translation(v)])
    }

    pub fn orthogonal(q: Matrix) -> Result<Self> {
        if q.nrows() != q.ncols() {
            return Err(Error::DimensionMismatch { expected: q.nrows(), found: q.ncols() });
        }
        Self::new(q.nrows(), vec![Primitive::Orthogonal(q)])
    }

    pub fn homothety(dim: usize, factor: f64) -> Result<Self> {
        Self::new(dim, vec![Primitive::Homothety(factor)])
    }

    pub fn inversion(dim: usize) -> Self {
        Self { dim, primitives: vec![Primitive::Inversion] }
    }

    /// `x ↦ (x − q) / ‖x − q‖²`, which sends `q` to ∞.
    pub fn inversion_at(q: &Vector) -> Self {
        Self {
            dim: q.len(),
            primitives: vec![Primitive::Inversion, Primitive::Translation(-q)],
        }
    }

    /// Inversion in the sphere `‖x − c‖ = ρ`: `x ↦ c + ρ² (x − c) / ‖x − c‖²`.
    pub fn sphere_inversion(center: &Vector, radius: f64) -> Result<Self> {
        Self::new(
            center.len(),
            vec![
                Primitive::Translation(center.clone()),
                Primitive::Homothety(radius * radius),
                Primitive::Inversion,
                Primitive::Translation(-center),
            ],
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn is_identity(&self) -> bool {
        self.primitives.is_empty()
    }

    fn check_point(&self, x: &ExtendedPoint) -> Result<()> {
        x.check_dim(self.dim)
    }

    fn check_map(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn apply(&self, x: &ExtendedPoint) -> Result<ExtendedPoint> {
        self.check_point(x)?;
        let mut y = x.clone();
        for p in self.primitives.iter().rev() {
            y = p.apply(&y, self.dim);
        }
        Ok(y)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_map(other)?;
        let mut primitives = self.primitives.clone();
        primitives.extend(other.primitives.iter().cloned());
        Ok(Self { dim: self.dim, primitives })
    }

    pub fn inverse(&self) -> Self {
        Self {
            dim: self.dim,
            primitives: self.primitives.iter().rev().map(Primitive::inverse).collect(),
        }
    }

    /// Merges adjacent translations, orthogonal maps, and homotheties, and
    /// cancels adjacent pairs of inversions.
    pub fn simplify(&self) -> Self {
        let mut out: Vec<Primitive> = Vec::with_capacity(self.primitives.len());
        for p in &self.primitives {
            let merged = match (out.last(), p) {
                (Some(Primitive::Translation(a)), Primitive::Translation(b)) => {
                    Some(Some(Primitive::Translation(a + b)))
                }
                (Some(Primitive::Homothety(a)), Primitive::Homothety(b)) => {
                    Some(Some(Primitive::Homothety(a * b)))
                }
                (Some(Primitive::Orthogonal(a)), Primitive::Orthogonal(b)) => {
                    Some(Some(Primitive::Orthogonal(a * b)))
                }
                (Some(Primitive::Inversion), Primitive::Inversion) => Some(None),
                _ => None,
            };
            match merged {
                Some(replacement) => {
                    out.pop();
                    out.extend(replacement);
                }
                None => out.push(p.clone()),
            }
            let trivial = match out.last() {
                Some(Primitive::Translation(t)) => t.iter().all(|c| *c == 0.0),
                Some(Primitive::Homothety(l)) => *l == 1.0,
                _ => false,
            };
            if trivial {
                out.pop();
            }
        }
        Self { dim: self.dim, primitives: out }
    }

    pub fn image_sphere(&self, s: &GeneralizedSphere) -> Result<GeneralizedSphere> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: s.dim() });
        }
        Ok(self.primitives.iter().rev().fold(s.clone(), |acc, p| p.image_sphere(&acc)))
    }

    /// The image of a region; its side is decided by mapping an interior witness.
    pub fn image_region(&self, r: &Region) -> Result<Region> {
        let surface = self.image_sphere(r.surface())?;
        let scale = match &surface {
            GeneralizedSphere::Sphere { radius, .. } => *radius,
            GeneralizedSphere::Hyperplane { .. } => 1.0,
        };
        let mut best: Option<(f64, f64)> = None;
        for w in witnesses(r) {
            let ExtendedPoint::Finite(y) = self.apply(&w)? else {
                continue;
            };
            let level = surface.level(&y);
            let clearance = level.abs() / scale;
            if clearance >= WITNESS_CLEARANCE && best.is_none_or(|(c, _)| clearance > c) {
                best = Some((clearance, level));
            }
        }
        let (_, level) = best.ok_or(Error::Degenerate("no usable witness for region image"))?;
        let side = if level < 0.0 { Side::Negative } else { Side::Positive };
        Ok(Region::new(surface, side, r.is_closed()))
    }
}

/// Deterministic interior witnesses of a region, well away from its surface.
fn witnesses(r: &Region) -> Vec<ExtendedPoint> {
    let dim = r.dim();
    let mut e1 = Vector::zeros(dim);
    e1[0] = 1.0;
    let pts: Vec<Vector> = match (r.surface(), r.side()) {
        (GeneralizedSphere::Sphere { center, radius }, Side::Negative) => vec![
            center.clone(),
            center + &e1 * (0.5 * radius),
            center - &e1 * (0.5 * radius),
        ],
        (GeneralizedSphere::Sphere { center, radius }, Side::Positive) => {
            let mut v = vec![
                center + &e1 * (2.0 * radius),
                center - &e1 * (2.0 * radius),
                center + &e1 * (3.0 * radius),
            ];
            if dim > 1 {
                let mut e2 = Vector::zeros(dim);
                e2[1] = 1.0;
                v.push(center + e2 * (2.0 * radius));
            }
            v
        }
        (GeneralizedSphere::Hyperplane { normal, offset }, side) => {
            let sign = if side == Side::Negative { -1.0 } else { 1.0 };
            let foot = normal * *offset;
            let step = 1.0 + offset.abs();
            (1..=3).map(|k| &foot + normal * (sign * step * k as f64)).collect()
        }
    };
    let mut out: Vec<ExtendedPoint> = pts.into_iter().map(ExtendedPoint::Finite).collect();
    if r.side() == Side::Positive && matches!(r.surface(), GeneralizedSphere::Sphere { .. }) {
        out.push(ExtendedPoint::Infinity);
    }
    out
}
