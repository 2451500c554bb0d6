//! The Apollonian distance and the metrics derived from it.
//!
//! `d_U(x1, x2)` is the supremum of `log [x1, x2; u1, u2]` over pairs of
//! complement points. The supremum splits into two independent one-point
//! suprema, each answered exactly by [`Domain::sup_log_ratio`]. The Finsler
//! pseudo-norm and the conformal density are the directional width and the
//! diameter of the inverted complement `W(x)`.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::extgeom::{ExtendedPoint, Vector};

/// Quadrature order used when callers have no preference.
pub const DEFAULT_QUADRATURE_ORDER: usize = 32;

/// `d_U(x1, x2) ∈ [0, +∞]`.
///
/// A pseudo-metric: distinct points may be at distance zero when the
/// complement has empty interior.
pub fn apollonian_distance(d: &Domain, x1: &ExtendedPoint, x2: &ExtendedPoint) -> Result<f64> {
    let forward = d.sup_log_ratio(x1, x2)?;
    let backward = d.sup_log_ratio(x2, x1)?;
    // Each term is finite for points of the open set U unless one of them is ∞
    // with an unbounded complement, in which case the sum diverges.
    let total = forward + backward;
    Ok(if total.is_nan() { f64::INFINITY } else { total.max(0.0) })
}

/// `p_{U,x}(h) = sup |⟨I(x − u1) − I(x − u2), h⟩|`, the width of `W(x)` along `h`.
pub fn finsler_norm(d: &Domain, x: &ExtendedPoint, h: &Vector) -> Result<f64> {
    if h.len() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), found: h.len() });
    }
    if h.iter().all(|c| *c == 0.0) {
        x.finite_or("base point")?;
        return if d.contains(x) { Ok(0.0) } else { Err(Error::OutsideDomain("base point")) };
    }
    let (lo, hi) = d.support_interval(x, h)?;
    Ok((hi - lo).max(0.0))
}

/// `g_U(x) = sup ‖u1 − u2‖ / (‖x − u1‖ ‖x − u2‖)`.
pub fn conformal_density(d: &Domain, x: &ExtendedPoint) -> Result<f64> {
    d.diameter_of_inverted_complement(x)
}

/// A piecewise-linear path through finite points of a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct PathPolyline {
    vertices: Vec<Vector>,
}

impl PathPolyline {
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Degenerate("a path needs at least two vertices"));
        }
        let dim = vertices[0].len();
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFiniteCoordinate("path vertex"));
            }
        }
        Ok(Self { vertices })
    }

    pub fn segment(a: Vector, b: Vector) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Inserts `k − 1` evenly spaced vertices into every segment.
    pub fn refined(&self, k: usize) -> Self {
        let k = k.max(1);
        let mut vertices = Vec::with_capacity((self.vertices.len() - 1) * k + 1);
        for w in self.vertices.windows(2) {
            for j in 0..k {
                let t = j as f64 / k as f64;
                vertices.push(&w[0] + (&w[1] - &w[0]) * t);
            }
        }
        vertices.push(self.vertices.last().expect("non-empty").clone());
        Self { vertices }
    }
}

fn integrate_path<F>(d: &Domain, path: &PathPolyline, order: usize, mut integrand: F) -> Result<f64>
where
    F: FnMut(&ExtendedPoint, &Vector) -> Result<f64>,
{
    let order = NonZeroUsize::new(order)
        .filter(|q| q.get() >= 2)
        .ok_or(Error::Degenerate("quadrature order must be at least 2"))?;
    if path.vertices[0].len() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), found: path.vertices[0].len() });
    }
    let rule = GaussLegendre::new(order);
    let mut total = 0.0;
    for (segment, w) in path.vertices.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        for t in [0.0, 1.0] {
            let x = ExtendedPoint::Finite(a + (b - a) * t);
            if !d.contains(&x) {
                return Err(Error::PathLeavesDomain { segment, t });
            }
        }
        let dir = b - a;
        if dir.iter().all(|c| *c == 0.0) {
            continue;
        }
        let mut sum = 0.0;
        for (node, weight) in rule.as_node_weight_pairs() {
            // Nodes live on [-1, 1].
            let t = 0.5 * (node + 1.0);
            let x = ExtendedPoint::Finite(a + &dir * t);
            if !d.contains(&x) {
                return Err(Error::PathLeavesDomain { segment, t });
            }
            sum += weight * integrand(&x, &dir)?;
        }
        total += 0.5 * sum;
    }
    Ok(total)
}

/// Length of a polyline for the inner (Finsler) metric, by Gauss–Legendre
/// quadrature of `p_{U,γ(t)}(γ'(t))` on every segment.
pub fn inner_path_length(d: &Domain, path: &PathPolyline, order: usize) -> Result<f64> {
    integrate_path(d, path, order, |x, dir| finsler_norm(d, x, dir))
}

/// Length of a polyline for the conformal Riemannian metric `g_U(x)‖dx‖`.
pub fn riemann_path_length(d: &Domain, path: &PathPolyline, order: usize) -> Result<f64> {
    integrate_path(d, path, order, |x, dir| Ok(conformal_density(d, x)? * dir.norm()))
}
