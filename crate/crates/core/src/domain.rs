//! Proper subsets `U` of R^n ∪ {∞} described by their complement, a finite
//! union of closed obstacles, together with the exact supremum queries over
//! that complement.
//!
//! Every query is reduced to a support-function computation on the inverted
//! complement `W(x) = {(u − x) / ‖u − x‖² : u ∈ Uᶜ}`, a finite union of closed
//! balls and points. Under the inversion at `x`, the point at infinity of a
//! complement maps to the origin.

use crate::conformal::{ConformalMap, GeneralizedSphere, Region, Side};
use crate::error::{Error, Result};
use crate::extgeom::{ExtendedPoint, Vector};

/// Strict-containment margin for [`Domain::region_inside`].
pub const CONTAINMENT_TOL: f64 = 1e-12;

/// A closed piece of the complement `Uᶜ`.
#[derive(Debug, Clone, PartialEq)]
pub enum Obstacle {
    /// `{‖x − c‖ ≤ ρ}`.
    ClosedBall { center: Vector, radius: f64 },
    /// `{⟨n, x⟩ ≥ offset} ∪ {∞}`.
    ClosedHalfSpace { normal: Vector, offset: f64 },
    /// `{‖x − c‖ ≥ ρ} ∪ {∞}`.
    ClosedBallExterior { center: Vector, radius: f64 },
    SinglePoint(ExtendedPoint),
}

impl Obstacle {
    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        let GeneralizedSphere::Sphere { center, radius } = GeneralizedSphere::sphere(center, radius)? else {
            unreachable!()
        };
        Ok(Self::ClosedBall { center, radius })
    }

    pub fn ball_exterior(center: Vector, radius: f64) -> Result<Self> {
        let GeneralizedSphere::Sphere { center, radius } = GeneralizedSphere::sphere(center, radius)? else {
            unreachable!()
        };
        Ok(Self::ClosedBallExterior { center, radius })
    }

    /// `{⟨normal, x⟩ ≥ offset} ∪ {∞}`; the normal is rescaled to unit length.
    pub fn half_space(normal: Vector, offset: f64) -> Result<Self> {
        let GeneralizedSphere::Hyperplane { normal, offset } = GeneralizedSphere::hyperplane(normal, offset)? else {
            unreachable!()
        };
        Ok(Self::ClosedHalfSpace { normal, offset })
    }

    pub fn point(p: ExtendedPoint) -> Self {
        Self::SinglePoint(p)
    }

    /// `None` only for the point at infinity.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::ClosedBall { center, .. } | Self::ClosedBallExterior { center, .. } => Some(center.len()),
            Self::ClosedHalfSpace { normal, .. } => Some(normal.len()),
            Self::SinglePoint(p) => p.dim(),
        }
    }

    pub fn contains(&self, x: &ExtendedPoint) -> bool {
        match self {
            Self::SinglePoint(p) => p == x,
            _ => self.region().expect("region obstacle").contains(x),
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Self::ClosedBall { .. } | Self::SinglePoint(ExtendedPoint::Finite(_)))
    }

    /// The obstacle as a closed region; `None` for single points.
    pub fn region(&self) -> Option<Region> {
        let r = match self {
            Self::ClosedBall { center, radius } => Region::new(
                GeneralizedSphere::Sphere { center: center.clone(), radius: *radius },
                Side::Negative,
                true,
            ),
            Self::ClosedBallExterior { center, radius } => Region::new(
                GeneralizedSphere::Sphere { center: center.clone(), radius: *radius },
                Side::Positive,
                true,
            ),
            Self::ClosedHalfSpace { normal, offset } => Region::new(
                GeneralizedSphere::Hyperplane { normal: normal.clone(), offset: *offset },
                Side::Positive,
                true,
            ),
            Self::SinglePoint(_) => return None,
        };
        Some(r)
    }

    /// Converts a closed region back into an obstacle.
    pub fn from_region(r: &Region) -> Result<Self> {
        if !r.is_closed() {
            return Err(Error::Unsupported("obstacles must be closed regions"));
        }
        Ok(match (r.surface(), r.side()) {
            (GeneralizedSphere::Sphere { center, radius }, Side::Negative) => {
                Self::ClosedBall { center: center.clone(), radius: *radius }
            }
            (GeneralizedSphere::Sphere { center, radius }, Side::Positive) => {
                Self::ClosedBallExterior { center: center.clone(), radius: *radius }
            }
            (GeneralizedSphere::Hyperplane { normal, offset }, Side::Positive) => {
                Self::ClosedHalfSpace { normal: normal.clone(), offset: *offset }
            }
            (GeneralizedSphere::Hyperplane { normal, offset }, Side::Negative) => {
                Self::ClosedHalfSpace { normal: -normal, offset: -offset }
            }
        })
    }

    pub fn image(&self, m: &ConformalMap) -> Result<Self> {
        match self {
            Self::SinglePoint(p) => Ok(Self::SinglePoint(m.apply(p)?)),
            _ => Self::from_region(&m.image_region(&self.region().expect("region obstacle"))?),
        }
    }

    /// Euclidean distance from a finite point outside the obstacle.
    pub fn distance_from(&self, x: &Vector) -> f64 {
        let d = match self {
            Self::ClosedBall { center, radius } => (x - center).norm() - radius,
            Self::ClosedBallExterior { center, radius } => radius - (x - center).norm(),
            Self::ClosedHalfSpace { normal, offset } => offset - normal.dot(x),
            Self::SinglePoint(ExtendedPoint::Finite(q)) => (x - q).norm(),
            Self::SinglePoint(ExtendedPoint::Infinity) => f64::INFINITY,
        };
        d.max(0.0)
    }

    /// `sup ‖x − u‖` over the finite points `u` of the obstacle.
    pub fn farthest_from(&self, x: &Vector) -> f64 {
        match self {
            Self::ClosedBall { center, radius } => (x - center).norm() + radius,
            Self::SinglePoint(ExtendedPoint::Finite(q)) => (x - q).norm(),
            Self::SinglePoint(ExtendedPoint::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }

    /// Whether this closed obstacle is contained in `other`.
    ///
    /// Exact for every pair of obstacle kinds; boundary contact is allowed.
    pub fn is_subset_of(&self, other: &Obstacle) -> bool {
        use Obstacle::*;
        let tol = CONTAINMENT_TOL;
        match (self, other) {
            (SinglePoint(p), o) => o.contains(p),
            (_, SinglePoint(_)) => false,
            (ClosedBall { center: c, radius: r }, ClosedBall { center: cc, radius: rr }) => {
                (c - cc).norm() + r <= rr + tol
            }
            (ClosedBall { center: c, radius: r }, ClosedHalfSpace { normal, offset }) => {
                normal.dot(c) - r >= offset - tol
            }
            (ClosedBall { center: c, radius: r }, ClosedBallExterior { center: cc, radius: rr }) => {
                (c - cc).norm() - r >= rr - tol
            }
            (ClosedHalfSpace { normal: n, offset: o }, ClosedHalfSpace { normal: nn, offset: oo }) => {
                (n - nn).norm() <= tol && *o >= oo - tol
            }
            (ClosedHalfSpace { normal, offset }, ClosedBallExterior { center, radius }) => {
                normal.dot(center) + radius <= offset + tol
            }
            (ClosedBallExterior { center: c, radius: r }, ClosedBallExterior { center: cc, radius: rr }) => {
                (c - cc).norm() + rr <= r + tol
            }
            (ClosedHalfSpace { .. } | ClosedBallExterior { .. }, ClosedBall { .. })
            | (ClosedBallExterior { .. }, ClosedHalfSpace { .. }) => false,
        }
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        match self.dim() {
            Some(found) if found != dim => Err(Error::DimensionMismatch { expected: dim, found }),
            _ => Ok(()),
        }
    }
}

/// A closed ball or a point of the inverted complement.
#[derive(Debug, Clone, PartialEq)]
pub enum Piece {
    Ball { center: Vector, radius: f64 },
    Point(Vector),
}

impl Piece {
    fn center_radius(&self) -> (&Vector, f64) {
        match self {
            Self::Ball { center, radius } => (center, *radius),
            Self::Point(q) => (q, 0.0),
        }
    }

    /// `sup ‖p − w‖` over the piece.
    pub fn farthest_from(&self, p: &Vector) -> f64 {
        let (c, r) = self.center_radius();
        (p - c).norm() + r
    }

    /// `(inf, sup)` of `⟨w, h⟩` over the piece.
    pub fn support(&self, h: &Vector) -> (f64, f64) {
        let (c, r) = self.center_radius();
        let mid = c.dot(h);
        let half = r * h.norm();
        (mid - half, mid + half)
    }
}

/// The image `W(x)` of the complement under `u ↦ (u − x) / ‖u − x‖²`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvertedComplement {
    pub pieces: Vec<Piece>,
}

impl InvertedComplement {
    pub fn farthest_from(&self, p: &Vector) -> f64 {
        self.pieces.iter().map(|w| w.farthest_from(p)).fold(0.0, f64::max)
    }

    pub fn support_interval(&self, h: &Vector) -> (f64, f64) {
        self.pieces.iter().map(|w| w.support(h)).fold(
            (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), (a, b)| (lo.min(a), hi.max(b)),
        )
    }

    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.pieces.iter().enumerate() {
            let (ca, ra) = a.center_radius();
            best = best.max(2.0 * ra);
            for b in &self.pieces[i + 1..] {
                let (cb, rb) = b.center_radius();
                best = best.max((ca - cb).norm() + ra + rb);
            }
        }
        best
    }
}

/// An open proper subset `U = (R^n ∪ {∞}) \ ⋃ obstacles`, with a witness point in `U`.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    dim: usize,
    obstacles: Vec<Obstacle>,
    witness: ExtendedPoint,
}

impl Domain {
    pub fn new(dim: usize, obstacles: Vec<Obstacle>, witness: ExtendedPoint) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if obstacles.is_empty() {
            return Err(Error::NoObstacles);
        }
        for o in &obstacles {
            o.check_dim(dim)?;
        }
        witness.check_dim(dim)?;
        if let Some(i) = obstacles.iter().position(|o| o.contains(&witness)) {
            return Err(Error::WitnessInObstacle(i));
        }
        Ok(Self { dim, obstacles, witness })
    }

    /// The open ball `B(center, radius)`.
    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        let dim = center.len();
        let witness = ExtendedPoint::Finite(center.clone());
        Self::new(dim, vec![Obstacle::ball_exterior(center, radius)?], witness)
    }

    /// The complement of the closed ball `B̄(center, radius)`, containing ∞.
    pub fn ball_complement(center: Vector, radius: f64) -> Result<Self> {
        let dim = center.len();
        Self::new(dim, vec![Obstacle::ball(center, radius)?], ExtendedPoint::Infinity)
    }

    /// The open half-space `{⟨normal, x⟩ < offset}`.
    pub fn half_space(normal: Vector, offset: f64) -> Result<Self> {
        let obstacle = Obstacle::half_space(normal, offset)?;
        let Obstacle::ClosedHalfSpace { normal, offset } = &obstacle else { unreachable!() };
        let witness = ExtendedPoint::Finite(normal * (offset - 1.0));
        Self::new(normal.len(), vec![obstacle], witness)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn witness(&self) -> &ExtendedPoint {
        &self.witness
    }

    pub fn contains(&self, x: &ExtendedPoint) -> bool {
        x.dim().is_none_or(|d| d == self.dim) && !self.obstacles.iter().any(|o| o.contains(x))
    }

    fn require(&self, x: &ExtendedPoint, what: &'static str) -> Result<()> {
        x.check_dim(self.dim)?;
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain(what))
        }
    }

    /// The image domain `m(U)`.
    pub fn image(&self, m: &ConformalMap) -> Result<Self> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.dim() });
        }
        let obstacles = self.obstacles.iter().map(|o| o.image(m)).collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, obstacles, m.apply(&self.witness)?)
    }

    /// `W(x)` for a finite `x ∈ U`.
    pub fn inverted_complement(&self, x: &ExtendedPoint) -> Result<InvertedComplement> {
        self.require(x, "inversion center")?;
        let xv = x.finite_or("inversion center")?;
        let inv = ConformalMap::inversion_at(xv);
        let pieces = self
            .obstacles
            .iter()
            .map(|o| match o {
                Obstacle::SinglePoint(q) => match inv.apply(q)? {
                    ExtendedPoint::Finite(w) => Ok(Piece::Point(w)),
                    ExtendedPoint::Infinity => Err(Error::OutsideDomain("inversion center")),
                },
                _ => {
                    let r = o.region().expect("region obstacle");
                    match inv.image_sphere(r.surface())? {
                        // x lies outside the closed obstacle, so the image is the bounded side.
                        GeneralizedSphere::Sphere { center, radius } => Ok(Piece::Ball { center, radius }),
                        GeneralizedSphere::Hyperplane { .. } => Err(Error::OutsideDomain("inversion center")),
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InvertedComplement { pieces })
    }

    /// `sup_{u ∈ Uᶜ} log(‖x2 − u‖ / ‖x1 − u‖)`, with `‖∞ − u‖ = 1`.
    ///
    /// The value may be negative. It is `+∞` only when `x1 = ∞` and the
    /// complement is unbounded.
    pub fn sup_log_ratio(&self, x1: &ExtendedPoint, x2: &ExtendedPoint) -> Result<f64> {
        self.require(x1, "first point")?;
        self.require(x2, "second point")?;
        if x1 == x2 {
            return Ok(0.0);
        }
        match (x1, x2) {
            (ExtendedPoint::Finite(a), ExtendedPoint::Finite(b)) => {
                let w = self.inverted_complement(x1)?;
                let d = b - a;
                let sep2 = d.norm_squared();
                let target = &d / sep2;
                Ok((sep2.sqrt() * w.farthest_from(&target)).ln())
            }
            (ExtendedPoint::Finite(a), ExtendedPoint::Infinity) => {
                let nearest = self.obstacles.iter().map(|o| o.distance_from(a)).fold(f64::INFINITY, f64::min);
                Ok(-nearest.ln())
            }
            (ExtendedPoint::Infinity, ExtendedPoint::Finite(b)) => {
                let farthest = self.obstacles.iter().map(|o| o.farthest_from(b)).fold(0.0, f64::max);
                Ok(farthest.ln())
            }
            (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => Ok(0.0),
        }
    }

    /// `(inf, sup)` of `⟨w, h⟩` over `W(x)`; the width is the Finsler norm of `h`.
    pub fn support_interval(&self, x: &ExtendedPoint, h: &Vector) -> Result<(f64, f64)> {
        if h.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: h.len() });
        }
        if h.iter().all(|c| *c == 0.0) {
            return Err(Error::Degenerate("zero direction"));
        }
        Ok(self.inverted_complement(x)?.support_interval(h))
    }

    /// `sup ‖w1 − w2‖` over `W(x)`, which equals the conformal density at `x`.
    pub fn diameter_of_inverted_complement(&self, x: &ExtendedPoint) -> Result<f64> {
        Ok(self.inverted_complement(x)?.diameter())
    }

    /// Euclidean distance from a finite point of `U` to the complement.
    pub fn distance_to_complement(&self, x: &ExtendedPoint) -> Result<f64> {
        self.require(x, "point")?;
        let v = x.finite_or("point")?;
        Ok(self.obstacles.iter().map(|o| o.distance_from(v)).fold(f64::INFINITY, f64::min))
    }

    /// Whether the closed ball bounded by `r` avoids every obstacle, strictly.
    ///
    /// Tangency counts as not inside.
    pub fn region_inside(&self, r: &Region) -> Result<bool> {
        self.ball_fits(r, CONTAINMENT_TOL)
    }

    /// Whether the open ball `r` lies in `U`; tangency to an obstacle is allowed.
    pub fn open_region_inside(&self, r: &Region) -> Result<bool> {
        let scale = r.as_ball().map_or(1.0, |(c, rho)| 1.0 + c.amax() + rho);
        self.ball_fits(r, -CONTAINMENT_TOL * scale)
    }

    fn ball_fits(&self, r: &Region, margin: f64) -> Result<bool> {
        if r.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: r.dim() });
        }
        let (c, rho) = r.as_ball().ok_or(Error::Unsupported("region_inside needs a bounded ball"))?;
        Ok(self.obstacles.iter().all(|o| match o {
            Obstacle::ClosedBall { center, radius } => (c - center).norm() > rho + radius + margin,
            Obstacle::ClosedHalfSpace { normal, offset } => offset - normal.dot(c) > rho + margin,
            Obstacle::ClosedBallExterior { center, radius } => (c - center).norm() + rho + margin < *radius,
            Obstacle::SinglePoint(ExtendedPoint::Finite(q)) => (q - c).norm() > rho + margin,
            Obstacle::SinglePoint(ExtendedPoint::Infinity) => true,
        }))
    }

    /// `self ⊂ other`, certified when every obstacle of `other` lies inside an
    /// obstacle of `self`.
    pub fn is_subset_of(&self, other: &Domain) -> bool {
        self.dim == other.dim
            && other.obstacles.iter().all(|o| self.obstacles.iter().any(|s| o.is_subset_of(s)))
    }

    /// The single obstacle, when the complement is one generalized closed ball.
    pub fn single_region_obstacle(&self) -> Option<&Obstacle> {
        match self.obstacles.as_slice() {
            [o @ (Obstacle::ClosedBall { .. } | Obstacle::ClosedBallExterior { .. } | Obstacle::ClosedHalfSpace { .. })] => {
                Some(o)
            }
            _ => None,
        }
    }

    /// The open region `U` when it is bounded by a single generalized sphere.
    pub fn as_region(&self) -> Option<Region> {
        self.single_region_obstacle().map(|o| o.region().expect("region obstacle").complement())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v(c: &[f64]) -> Vector {
        Vector::from_column_slice(c)
    }

    fn p(c: &[f64]) -> ExtendedPoint {
        ExtendedPoint::Finite(v(c))
    }

    fn unit_disk() -> Domain {
        Domain::ball(v(&[0.0, 0.0]), 1.0).unwrap()
    }

    #[test]
    fn construction_checks_witness() {
        let err = Domain::new(2, vec![Obstacle::ball(v(&[0.0, 0.0]), 1.0).unwrap()], p(&[0.5, 0.0]));
        assert_eq!(err.unwrap_err(), Error::WitnessInObstacle(0));
        assert_eq!(Domain::new(2, vec![], p(&[0.0, 0.0])).unwrap_err(), Error::NoObstacles);
        let mixed = Domain::new(2, vec![Obstacle::point(p(&[1.0]))], p(&[0.0, 0.0]));
        assert!(matches!(mixed, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn membership() {
        let outside = Domain::ball_complement(v(&[0.0, 0.0]), 1.0).unwrap();
        assert!(outside.contains(&p(&[2.0, 0.0])));
        assert!(outside.contains(&ExtendedPoint::Infinity));
        assert!(!outside.contains(&p(&[1.0, 0.0])));
        assert!(!unit_disk().contains(&ExtendedPoint::Infinity));
        let half = Domain::half_space(v(&[1.0, 0.0]), 2.0).unwrap();
        assert!(!half.contains(&ExtendedPoint::Infinity));
        assert!(half.contains(&p(&[1.9, 100.0])));
    }

    #[test]
    fn inverted_complement_examples() {
        let w = unit_disk().inverted_complement(&p(&[0.0, 0.0])).unwrap();
        assert_eq!(w.pieces, vec![Piece::Ball { center: v(&[0.0, 0.0]), radius: 1.0 }]);

        let d = Domain::ball_complement(v(&[3.0, 0.0]), 1.0).unwrap();
        let w = d.inverted_complement(&p(&[0.0, 0.0])).unwrap();
        let Piece::Ball { center, radius } = &w.pieces[0] else { panic!() };
        assert_relative_eq!(center[0], 0.375, max_relative = 1e-15);
        assert_relative_eq!(*radius, 0.125, max_relative = 1e-15);

        let d = Domain::new(2, vec![Obstacle::point(p(&[1.0, 0.0]))], p(&[0.0, 0.0])).unwrap();
        let w = d.inverted_complement(&p(&[0.0, 0.0])).unwrap();
        assert_eq!(w.pieces, vec![Piece::Point(v(&[1.0, 0.0]))]);
    }

    #[test]
    fn inverted_complement_errors() {
        assert_eq!(
            unit_disk().inverted_complement(&p(&[2.0, 0.0])).unwrap_err(),
            Error::OutsideDomain("inversion center")
        );
        let outside = Domain::ball_complement(v(&[0.0, 0.0]), 1.0).unwrap();
        assert_eq!(
            outside.inverted_complement(&ExtendedPoint::Infinity).unwrap_err(),
            Error::InfinitePoint("inversion center")
        );
    }

    #[test]
    fn half_space_inverts_to_ball_touching_origin() {
        let d = Domain::half_space(v(&[1.0, 0.0]), 2.0).unwrap();
        let w = d.inverted_complement(&p(&[0.0, 0.0])).unwrap();
        let Piece::Ball { center, radius } = &w.pieces[0] else { panic!() };
        assert_relative_eq!(center.norm(), *radius, max_relative = 1e-15);
        assert_relative_eq!(*radius, 0.25, max_relative = 1e-15);
    }

    #[test]
    fn sup_log_ratio_examples() {
        let d = unit_disk();
        let o = p(&[0.0, 0.0]);
        let h = p(&[0.5, 0.0]);
        assert_relative_eq!(d.sup_log_ratio(&o, &h).unwrap(), 1.5f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(d.sup_log_ratio(&h, &o).unwrap(), 2f64.ln(), max_relative = 1e-14);
        assert_eq!(d.sup_log_ratio(&h, &h).unwrap(), 0.0);
        assert!(d.sup_log_ratio(&o, &p(&[1.0, 0.0])).is_err());
    }

    #[test]
    fn sup_log_ratio_with_infinity() {
        let d = Domain::ball_complement(v(&[0.0, 0.0]), 1.0).unwrap();
        let x = p(&[3.0, 0.0]);
        let inf = ExtendedPoint::Infinity;
        // −log of the distance 2 to the unit circle.
        assert_relative_eq!(d.sup_log_ratio(&x, &inf).unwrap(), -(2f64.ln()), max_relative = 1e-15);
        // log of the farthest distance 4.
        assert_relative_eq!(d.sup_log_ratio(&inf, &x).unwrap(), 4f64.ln(), max_relative = 1e-15);
    }

    #[test]
    fn support_interval_examples() {
        let d = unit_disk();
        let (lo, hi) = d.support_interval(&p(&[0.0, 0.0]), &v(&[1.0, 0.0])).unwrap();
        assert_eq!((lo, hi), (-1.0, 1.0));

        let single = Domain::new(2, vec![Obstacle::point(p(&[1.0, 0.0]))], p(&[0.0, 0.0])).unwrap();
        let (lo, hi) = single.support_interval(&p(&[0.0, 0.0]), &v(&[0.0, 3.0])).unwrap();
        assert_eq!(hi - lo, 0.0);

        let rho = 0.4;
        let d = Domain::ball(v(&[0.0, 0.0]), rho).unwrap();
        let h = v(&[0.6, 0.8]);
        let (lo, hi) = d.support_interval(&p(&[0.0, 0.0]), &h).unwrap();
        assert_relative_eq!(hi - lo, 2.0 / rho, max_relative = 1e-15);

        assert!(d.support_interval(&p(&[0.0, 0.0]), &v(&[0.0, 0.0])).is_err());
    }

    #[test]
    fn inverted_diameter_examples() {
        let d = unit_disk();
        assert_eq!(d.diameter_of_inverted_complement(&p(&[0.0, 0.0])).unwrap(), 2.0);
        assert_relative_eq!(
            d.diameter_of_inverted_complement(&p(&[0.5, 0.0])).unwrap(),
            8.0 / 3.0,
            max_relative = 1e-14
        );
        let single = Domain::new(2, vec![Obstacle::point(p(&[1.0, 0.0]))], p(&[0.0, 0.0])).unwrap();
        assert_eq!(single.diameter_of_inverted_complement(&p(&[0.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn region_inside_examples() {
        let d = unit_disk();
        let small = Region::ball(v(&[0.5, 0.0]), 0.25, false).unwrap();
        let crossing = Region::ball(v(&[0.5, 0.0]), 0.75, false).unwrap();
        let tangent = Region::ball(v(&[0.5, 0.0]), 0.5, false).unwrap();
        assert!(d.region_inside(&small).unwrap());
        assert!(!d.region_inside(&crossing).unwrap());
        assert!(!d.open_region_inside(&crossing).unwrap());
        assert!(!d.region_inside(&tangent).unwrap());
        assert!(d.open_region_inside(&tangent).unwrap());

        let outside = Domain::ball_complement(v(&[0.0, 0.0]), 1.0).unwrap();
        let far = Region::ball(v(&[3.0, 0.0]), 1.0, false).unwrap();
        assert!(outside.region_inside(&far).unwrap());

        let half = Region::half_space(v(&[1.0, 0.0]), 0.0, false).unwrap();
        assert!(matches!(d.region_inside(&half), Err(Error::Unsupported(_))));
    }

    #[test]
    fn region_inside_other_obstacles() {
        let d = Domain::new(
            2,
            vec![
                Obstacle::half_space(v(&[0.0, 1.0]), 2.0).unwrap(),
                Obstacle::point(p(&[0.0, 0.0])),
            ],
            p(&[1.0, 1.0]),
        )
        .unwrap();
        assert!(d.region_inside(&Region::ball(v(&[1.0, 1.0]), 0.5, true).unwrap()).unwrap());
        // Contains the point obstacle.
        assert!(!d.region_inside(&Region::ball(v(&[0.2, 0.2]), 0.5, true).unwrap()).unwrap());
        // Crosses y = 2.
        assert!(!d.region_inside(&Region::ball(v(&[1.0, 1.8]), 0.5, true).unwrap()).unwrap());
    }

    #[test]
    fn obstacle_subset_rules() {
        let big = Obstacle::ball(v(&[0.0, 0.0]), 2.0).unwrap();
        let small = Obstacle::ball(v(&[0.5, 0.0]), 1.0).unwrap();
        assert!(small.is_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        let ext_small_hole = Obstacle::ball_exterior(v(&[0.0, 0.0]), 1.0).unwrap();
        let ext_big_hole = Obstacle::ball_exterior(v(&[0.0, 0.0]), 2.0).unwrap();
        assert!(ext_big_hole.is_subset_of(&ext_small_hole));
        assert!(!ext_small_hole.is_subset_of(&ext_big_hole));
        let hs = Obstacle::half_space(v(&[1.0, 0.0]), 3.0).unwrap();
        assert!(hs.is_subset_of(&ext_big_hole));
        assert!(!hs.is_subset_of(&big));
        assert!(Obstacle::point(ExtendedPoint::Infinity).is_subset_of(&hs));
    }

    #[test]
    fn nested_domains() {
        let u = Domain::ball(v(&[0.0, 0.0]), 0.5).unwrap();
        let w = unit_disk();
        assert!(u.is_subset_of(&w));
        assert!(!w.is_subset_of(&u));
    }

    #[test]
    fn image_of_domain() {
        let inv = ConformalMap::inversion(2);
        let img = unit_disk().image(&inv).unwrap();
        // The disk with center 0 maps to the exterior of the unit circle with ∞.
        assert!(img.contains(&ExtendedPoint::Infinity));
        assert!(img.contains(&p(&[3.0, 0.0])));
        assert!(!img.contains(&p(&[0.5, 0.0])));
    }
}
