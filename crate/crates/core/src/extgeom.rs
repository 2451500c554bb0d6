//! Points of the one-point completion of R^n, the chordal metric, cross-ratios,
//! and Apollonian balls.
//!
//! Norm factors involving the point at infinity follow a single convention:
//! `‖∞ − u‖ = 1` for finite `u` and `‖∞ − ∞‖ = 0`. In a cross-ratio the point
//! at infinity enters once in the numerator and once in the denominator, so
//! the convention is consistent with the conformal action.

use std::fmt;

use crate::error::{Error, Result};
use crate::region::{GeneralizedSphere, Region, Side};

pub type Vector = nalgebra::DVector<f64>;
pub type Matrix = nalgebra::DMatrix<f64>;

/// Below this gap from 1 an Apollonian ratio is treated as exactly 1.
const UNIT_RATIO_EPS: f64 = 1e-12;

/// A point of R^n ∪ {∞}.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedPoint {
    Finite(Vector),
    Infinity,
}

impl ExtendedPoint {
    /// Builds a finite point, rejecting empty or non-finite coordinates.
    pub fn finite(coords: impl Into<Vec<f64>>) -> Result<Self> {
        let coords = coords.into();
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate("point"));
        }
        Ok(Self::Finite(Vector::from_vec(coords)))
    }

    /// Wraps an existing vector. Non-finite coordinates are a caller bug.
    pub fn from_vector(v: Vector) -> Self {
        debug_assert!(v.iter().all(|c| c.is_finite()));
        Self::Finite(v)
    }

    pub fn origin(dim: usize) -> Self {
        Self::Finite(Vector::zeros(dim))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Vector> {
        match self {
            Self::Finite(v) => Some(v),
            Self::Infinity => None,
        }
    }

    /// The coordinates, or an error naming `what` when the point is ∞.
    pub fn finite_or(&self, what: &'static str) -> Result<&Vector> {
        self.as_finite().ok_or(Error::InfinitePoint(what))
    }

    /// Dimension of a finite point; `None` for ∞, which lives in every dimension.
    pub fn dim(&self) -> Option<usize> {
        self.as_finite().map(|v| v.len())
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        match self.dim() {
            Some(found) if found != dim => Err(Error::DimensionMismatch { expected: dim, found }),
            _ => Ok(()),
        }
    }
}

impl From<Vector> for ExtendedPoint {
    fn from(v: Vector) -> Self {
        Self::Finite(v)
    }
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => f.write_str("∞"),
            Self::Finite(v) => {
                f.write_str("(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// `‖a − b‖` with the infinity convention.
pub(crate) fn gap(a: &ExtendedPoint, b: &ExtendedPoint) -> f64 {
    match (a, b) {
        (ExtendedPoint::Finite(x), ExtendedPoint::Finite(y)) => (x - y).norm(),
        (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => 0.0,
        _ => 1.0,
    }
}

fn common_dim<'a>(points: impl IntoIterator<Item = &'a ExtendedPoint>) -> Result<Option<usize>> {
    let mut dim = None;
    for p in points {
        if let Some(d) = p.dim() {
            match dim {
                None => dim = Some(d),
                Some(expected) if expected != d => {
                    return Err(Error::DimensionMismatch { expected, found: d })
                }
                _ => {}
            }
        }
    }
    Ok(dim)
}

/// The chordal metric of diameter one on R^n ∪ {∞}.
pub fn chordal_distance(x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    common_dim([x, y])?;
    Ok(match (x, y) {
        (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => 0.0,
        (ExtendedPoint::Infinity, ExtendedPoint::Finite(v))
        | (ExtendedPoint::Finite(v), ExtendedPoint::Infinity) => 1.0 / (1.0 + v.norm_squared()).sqrt(),
        (ExtendedPoint::Finite(a), ExtendedPoint::Finite(b)) => {
            (a - b).norm() / ((1.0 + a.norm_squared()).sqrt() * (1.0 + b.norm_squared()).sqrt())
        }
    })
}

/// A cross-ratio value; always strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CrossRatio(f64);

impl CrossRatio {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn ln(self) -> f64 {
        self.0.ln()
    }
}

/// `[x1, x2; u1, u2] = ‖x2−u1‖·‖x1−u2‖ / (‖x1−u1‖·‖x2−u2‖)`.
///
/// The pairs `{x1, x2}` and `{u1, u2}` must be disjoint.
pub fn cross_ratio(
    x1: &ExtendedPoint,
    x2: &ExtendedPoint,
    u1: &ExtendedPoint,
    u2: &ExtendedPoint,
) -> Result<CrossRatio> {
    common_dim([x1, x2, u1, u2])?;
    let d11 = gap(x1, u1);
    let d22 = gap(x2, u2);
    let d21 = gap(x2, u1);
    let d12 = gap(x1, u2);
    if d11 == 0.0 || d22 == 0.0 || d21 == 0.0 || d12 == 0.0 {
        return Err(Error::SharedPoint);
    }
    // Pair the factors so that equal points cancel exactly.
    Ok(CrossRatio((d21 / d11) * (d12 / d22)))
}

/// The ratio sublevel region `{u : ‖a − u‖ / ‖b − u‖ < α}`.
///
/// For `α < 1` this is an open ball around `a`, for `α > 1` the open exterior
/// of a ball around `b` (containing ∞), and for `α = 1` the open half-space of
/// points nearer to `a` than to `b`.
pub fn apollonian_ball(a: &ExtendedPoint, b: &ExtendedPoint, alpha: f64) -> Result<Region> {
    common_dim([a, b])?;
    let a = a.finite_or("apollonian ball focus")?;
    let b = b.finite_or("apollonian ball focus")?;
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::NonPositive { what: "ratio", value: alpha });
    }
    let sep = (a - b).norm();
    if sep == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    if (alpha - 1.0).abs() <= UNIT_RATIO_EPS {
        let normal = (b - a) / sep;
        let offset = normal.dot(&((a + b) * 0.5));
        let surface = GeneralizedSphere::hyperplane(normal, offset)?;
        return Ok(Region::new(surface, Side::Negative, false));
    }
    let a2 = alpha * alpha;
    let denom = 1.0 - a2;
    let center = (a - b * a2) / denom;
    let radius = alpha * sep / denom.abs();
    let surface = GeneralizedSphere::sphere(center, radius)?;
    let side = if alpha < 1.0 { Side::Negative } else { Side::Positive };
    Ok(Region::new(surface, side, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(c: &[f64]) -> ExtendedPoint {
        ExtendedPoint::finite(c.to_vec()).unwrap()
    }

    #[test]
    fn chordal_examples() {
        let inf = ExtendedPoint::Infinity;
        assert_eq!(chordal_distance(&inf, &p(&[0.0, 0.0])).unwrap(), 1.0);
        assert_eq!(chordal_distance(&p(&[0.3, 2.0]), &p(&[0.3, 2.0])).unwrap(), 0.0);
        let d = chordal_distance(&p(&[1.0, 0.0]), &p(&[0.0, 1.0])).unwrap();
        assert_relative_eq!(d, 2f64.sqrt() / 2.0, max_relative = 1e-15);
        assert_eq!(chordal_distance(&inf, &inf).unwrap(), 0.0);
    }

    #[test]
    fn chordal_rejects_mixed_dimensions() {
        let err = chordal_distance(&p(&[1.0]), &p(&[1.0, 2.0])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 1, found: 2 });
    }

    #[test]
    fn finite_rejects_nan() {
        assert!(ExtendedPoint::finite(vec![f64::NAN]).is_err());
        assert!(ExtendedPoint::finite(Vec::<f64>::new()).is_err());
    }

    #[test]
    fn cross_ratio_examples() {
        let inf = ExtendedPoint::Infinity;
        let cr = cross_ratio(&p(&[1.0]), &p(&[2.0]), &p(&[0.0]), &inf).unwrap();
        assert_eq!(cr.value(), 2.0);

        let x = p(&[0.4, -1.0]);
        let cr = cross_ratio(&x, &x, &p(&[3.0, 1.0]), &p(&[-2.0, 0.5])).unwrap();
        assert_eq!(cr.value(), 1.0);

        let cr = cross_ratio(&p(&[0.0, 0.0]), &p(&[0.5, 0.0]), &p(&[-1.0, 0.0]), &p(&[1.0, 0.0]))
            .unwrap();
        assert_relative_eq!(cr.value(), 3.0, max_relative = 1e-15);
    }

    #[test]
    fn cross_ratio_shared_point_is_an_error() {
        let a = p(&[1.0, 1.0]);
        let b = p(&[0.0, 2.0]);
        assert_eq!(cross_ratio(&a, &b, &a, &p(&[5.0, 5.0])).unwrap_err(), Error::SharedPoint);
        let inf = ExtendedPoint::Infinity;
        assert_eq!(cross_ratio(&inf, &b, &a, &inf).unwrap_err(), Error::SharedPoint);
    }

    #[test]
    fn cross_ratio_infinity_in_one_pair() {
        let inf = ExtendedPoint::Infinity;
        // [∞, x2; u1, u2] = ‖x2−u1‖ / ‖x2−u2‖
        let cr = cross_ratio(&inf, &p(&[3.0]), &p(&[1.0]), &p(&[0.0])).unwrap();
        assert_relative_eq!(cr.value(), 2.0 / 3.0, max_relative = 1e-15);
        let cr = cross_ratio(&inf, &inf, &p(&[1.0]), &p(&[0.0])).unwrap();
        assert_eq!(cr.value(), 1.0);
    }

    #[test]
    fn apollonian_ball_below_one() {
        let r = apollonian_ball(&p(&[0.0, 0.0]), &p(&[1.0, 0.0]), 0.5).unwrap();
        let (c, rho) = r.as_ball().unwrap();
        assert_relative_eq!(c[0], -1.0 / 3.0, max_relative = 1e-15);
        assert_eq!(c[1], 0.0);
        assert_relative_eq!(rho, 2.0 / 3.0, max_relative = 1e-15);
        assert!(r.contains(&p(&[1.0 / 3.0 - 1e-6, 0.0])));
        assert!(!r.contains(&p(&[1.0 / 3.0 + 1e-6, 0.0])));
        assert!(!r.contains(&ExtendedPoint::Infinity));
    }

    #[test]
    fn apollonian_ball_at_one_is_half_space() {
        let r = apollonian_ball(&p(&[0.0, 0.0]), &p(&[2.0, 0.0]), 1.0).unwrap();
        match r.surface() {
            GeneralizedSphere::Hyperplane { normal, offset } => {
                assert_eq!(normal.as_slice(), &[1.0, 0.0]);
                assert_eq!(*offset, 1.0);
            }
            other => panic!("expected a hyperplane, got {other:?}"),
        }
        assert!(r.contains(&p(&[0.999, 7.0])));
        assert!(!r.contains(&p(&[1.001, -3.0])));
        assert!(!r.contains(&ExtendedPoint::Infinity));
    }

    #[test]
    fn apollonian_ball_above_one_contains_infinity() {
        let a = p(&[0.0, 0.0]);
        let b = p(&[1.0, 0.0]);
        let r = apollonian_ball(&a, &b, 3.0).unwrap();
        assert!(r.contains(&ExtendedPoint::Infinity));
        assert!(r.contains(&a));
        assert!(!r.contains(&b));
    }

    #[test]
    fn apollonian_ball_errors() {
        let a = p(&[0.0, 0.0]);
        assert_eq!(apollonian_ball(&a, &a, 0.5).unwrap_err(), Error::CoincidentPoints);
        assert!(apollonian_ball(&a, &p(&[1.0, 0.0]), 0.0).is_err());
        assert!(apollonian_ball(&a, &p(&[1.0, 0.0]), -1.0).is_err());
        assert!(apollonian_ball(&a, &ExtendedPoint::Infinity, 0.5).is_err());
    }
}
