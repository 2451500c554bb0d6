//! The uniform contraction principle for nested domains.
//!
//! For `U ⊂ V` with relative diameter `Δ = sup_{u1,u2 ∈ U} d_V(u1, u2)`, the
//! inclusion `(U, d_U) → (V, d_V)` is `tanh(Δ/4)`-Lipschitz. This module
//! computes the coefficient, the one-dimensional Hilbert-metric inequality
//! it generalizes, certified diameters for nestings of generalized balls,
//! and sample-based verification reports.

use std::fmt;

use crate::apollonian::{apollonian_distance, conformal_density, finsler_norm, inner_path_length, riemann_path_length, PathPolyline};
use crate::conformal::{ConformalMap, GeneralizedSphere};
use crate::domain::{Domain, Obstacle};
use crate::error::{Error, Result};
use crate::extgeom::{ExtendedPoint, Vector};
use crate::sampling;

/// Slack allowed on every contraction inequality.
pub const CONTRACTION_TOL: f64 = 1e-9;
/// Quantities below this are treated as zero when forming ratios.
pub const ZERO_DISTANCE: f64 = 1e-12;
/// Number of quasi-random points used for sampled diameters.
const DIAMETER_SAMPLES: usize = 48;
const DIAMETER_SEED: u64 = 0x0A70_1107;

/// `tanh(Δ/4)`, with `tanh(∞) = 1`.
///
/// Evaluated as `−expm1(−Δ/2) / (2 + expm1(−Δ/2))`, which keeps full relative
/// accuracy as `Δ → 0`.
pub fn birkhoff_coefficient(delta: f64) -> Result<f64> {
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::NegativeDelta(delta));
    }
    if delta == f64::INFINITY {
        return Ok(1.0);
    }
    let e = (-0.5 * delta).exp_m1();
    Ok(-e / (2.0 + e))
}

fn check_interval(a1: f64, a2: f64) -> Result<()> {
    if !(a1 > 0.0) || !(a2 > a1) || !a1.is_finite() || a2.is_nan() {
        return Err(Error::Degenerate("interval must satisfy 0 < a1 < a2 <= +inf"));
    }
    Ok(())
}

/// The Hilbert distance `|log [s1, s2; a1, a2]|` of the interval `(a1, a2)`.
///
/// `a2 = +∞` is allowed, with the usual convention for the point at infinity.
pub fn hilbert_1d(a1: f64, a2: f64, s1: f64, s2: f64) -> Result<f64> {
    check_interval(a1, a2)?;
    for s in [s1, s2] {
        if !(s > a1 && s < a2) {
            return Err(Error::OutsideDomain("interval argument"));
        }
    }
    let upper = if a2.is_infinite() { 1.0 } else { (s1 - a2).abs() / (s2 - a2).abs() };
    Ok(((s2 - a1) / (s1 - a1) * upper).ln().abs())
}

/// `|log(s2 / s1)|`, the Hilbert distance of `(0, +∞)`.
pub fn j_metric(s1: f64, s2: f64) -> Result<f64> {
    if !(s1 > 0.0) || !(s2 > 0.0) || !s1.is_finite() || !s2.is_finite() {
        return Err(Error::OutsideDomain("half-line argument"));
    }
    Ok((s2 / s1).ln().abs())
}

/// Outcome of [`birkhoff_grid_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffGridReport {
    pub interval: (f64, f64),
    pub grid: usize,
    /// `(√a2 − √a1) / (√a2 + √a1)`.
    pub theta: f64,
    pub max_ratio: f64,
    pub argmax_pair: (f64, f64),
    /// Largest finite-difference ratio `d_J / d_K` on the diagonal.
    pub max_infinitesimal_ratio: f64,
    pub argmax_diagonal: f64,
    pub pass: bool,
}

/// Maximizes `d_J / d_K` over an `m × m` grid of the interval `K = (a1, a2)`.
pub fn birkhoff_grid_check(a1: f64, a2: f64, m: usize) -> Result<BirkhoffGridReport> {
    check_interval(a1, a2)?;
    if a2.is_infinite() {
        return Err(Error::Degenerate("grid check needs a bounded interval"));
    }
    if m < 3 {
        return Err(Error::Degenerate("grid needs at least 3 points"));
    }
    let width = a2 - a1;
    let grid: Vec<f64> = (1..=m).map(|i| a1 + width * i as f64 / (m + 1) as f64).collect();
    let theta = (a2.sqrt() - a1.sqrt()) / (a2.sqrt() + a1.sqrt());

    let mut max_ratio = 0.0;
    let mut argmax_pair = (grid[0], grid[1]);
    for (i, &s1) in grid.iter().enumerate() {
        for &s2 in &grid[i + 1..] {
            let ratio = j_metric(s1, s2)? / hilbert_1d(a1, a2, s1, s2)?;
            if ratio > max_ratio {
                max_ratio = ratio;
                argmax_pair = (s1, s2);
            }
        }
    }

    let step = 1e-6 * width / (m + 1) as f64;
    let mut max_infinitesimal_ratio = 0.0;
    let mut argmax_diagonal = grid[0];
    for &s in &grid {
        let (lo, hi) = (s - 0.5 * step, s + 0.5 * step);
        let ratio = j_metric(lo, hi)? / hilbert_1d(a1, a2, lo, hi)?;
        if ratio > max_infinitesimal_ratio {
            max_infinitesimal_ratio = ratio;
            argmax_diagonal = s;
        }
    }

    Ok(BirkhoffGridReport {
        interval: (a1, a2),
        grid: m,
        theta,
        max_ratio,
        argmax_pair,
        max_infinitesimal_ratio,
        argmax_diagonal,
        pass: max_ratio <= theta + CONTRACTION_TOL,
    })
}

/// How a relative diameter was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Exact, from the conformal equivalence with concentric balls.
    ClosedForm,
    /// A maximum over sample pairs; only a lower bound.
    SampledLowerBound,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ClosedForm => "closed-form",
            Self::SampledLowerBound => "sampled-lower-bound",
        })
    }
}

/// A relative diameter `Δ = diam_V(U)` with its contraction coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diameter {
    pub value: f64,
    /// `tanh(Δ/4)`; for closed forms this is the exact radius ratio `ρ/R`.
    pub coefficient: f64,
    pub provenance: Provenance,
}

impl Diameter {
    /// The diameter of `B(0, ρ)` inside `B(0, R)` given `k = ρ/R ∈ (0, 1]`.
    pub fn from_radius_ratio(k: f64) -> Self {
        let value = if k >= 1.0 { f64::INFINITY } else { 4.0 * k.atanh() };
        Self { value, coefficient: k.min(1.0), provenance: Provenance::ClosedForm }
    }

    pub fn is_certified(&self) -> bool {
        self.provenance == Provenance::ClosedForm
    }
}

/// Inversive product of two generalized spheres; `|I| = 1` iff they are tangent.
fn inversive_product(a: &GeneralizedSphere, b: &GeneralizedSphere) -> f64 {
    use GeneralizedSphere::{Hyperplane, Sphere};
    match (a, b) {
        (Sphere { center: c1, radius: r1 }, Sphere { center: c2, radius: r2 }) => {
            (r1 * r1 + r2 * r2 - (c1 - c2).norm_squared()) / (2.0 * r1 * r2)
        }
        (Sphere { center, radius }, Hyperplane { normal, offset })
        | (Hyperplane { normal, offset }, Sphere { center, radius }) => (normal.dot(center) - offset) / radius,
        (Hyperplane { normal: n1, .. }, Hyperplane { normal: n2, .. }) => n1.dot(n2),
    }
}

/// The radius ratio `ρ/R` of the concentric pair conformally equivalent to
/// the nesting `Ĥ \ inner ⊂ Ĥ \ outer`, for single generalized-ball obstacles.
pub fn nested_radius_ratio(inner: &Obstacle, outer: &Obstacle) -> Option<f64> {
    let a = inner.region()?;
    let b = outer.region()?;
    let i = inversive_product(a.surface(), b.surface()).abs();
    if i <= 1.0 {
        return Some(1.0);
    }
    // The smaller root of k + 1/k = 2|I|, in a cancellation-free form.
    Some(1.0 / (i + (i * i - 1.0).sqrt()))
}

/// `diam_V(U)`: exact when both domains are bounded by single generalized
/// spheres, otherwise the maximum of `d_V` over sample pairs of `U`.
pub fn diameter(inner: &Domain, outer: &Domain, samples: Option<&[ExtendedPoint]>) -> Result<Diameter> {
    if !inner.is_subset_of(outer) {
        return Err(Error::NestingViolated("the inner domain is not contained in the outer domain"));
    }
    if let (Some(a), Some(b)) = (inner.single_region_obstacle(), outer.single_region_obstacle()) {
        if let Some(k) = nested_radius_ratio(a, b) {
            return Ok(Diameter::from_radius_ratio(k));
        }
    }
    let generated;
    let points: &[ExtendedPoint] = match samples {
        Some(s) => s,
        None => {
            let mut rng = sampling::seeded(DIAMETER_SEED);
            let mut pts: Vec<ExtendedPoint> = sampling::sample_domain(inner, &mut rng, DIAMETER_SAMPLES, 0.0)?
                .into_iter()
                .map(ExtendedPoint::Finite)
                .collect();
            pts.push(inner.witness().clone());
            generated = pts;
            &generated
        }
    };
    let mut best = 0.0f64;
    for (i, a) in points.iter().enumerate() {
        if !inner.contains(a) {
            return Err(Error::OutsideDomain("diameter sample"));
        }
        for b in &points[i + 1..] {
            best = best.max(apollonian_distance(outer, a, b)?);
        }
    }
    Ok(Diameter {
        value: best,
        coefficient: birkhoff_coefficient(best)?,
        provenance: Provenance::SampledLowerBound,
    })
}

/// Nested domains `U ⊂ V` with the relative diameter of `U` in `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedPair {
    inner: Domain,
    outer: Domain,
    delta: Diameter,
}

impl NestedPair {
    pub fn new(inner: Domain, outer: Domain) -> Result<Self> {
        let delta = diameter(&inner, &outer, None)?;
        Ok(Self { inner, outer, delta })
    }

    pub fn with_samples(inner: Domain, outer: Domain, samples: &[ExtendedPoint]) -> Result<Self> {
        let delta = diameter(&inner, &outer, Some(samples))?;
        Ok(Self { inner, outer, delta })
    }

    /// `B(0, ρ) ⊂ B(0, R)` in dimension `dim`.
    pub fn concentric(dim: usize, inner_radius: f64, outer_radius: f64) -> Result<Self> {
        let origin = Vector::zeros(dim);
        Self::new(Domain::ball(origin.clone(), inner_radius)?, Domain::ball(origin, outer_radius)?)
    }

    pub fn inner(&self) -> &Domain {
        &self.inner
    }

    pub fn outer(&self) -> &Domain {
        &self.outer
    }

    pub fn delta(&self) -> Diameter {
        self.delta
    }

    pub fn coefficient(&self) -> f64 {
        self.delta.coefficient
    }

    /// `m(U) ⊂ m(V)`.
    pub fn image(&self, m: &ConformalMap) -> Result<Self> {
        Self::new(self.inner.image(m)?, self.outer.image(m)?)
    }

    /// The nesting of complements: interior of `Vᶜ` inside interior of `Uᶜ`.
    pub fn dual(&self) -> Result<Self> {
        let complement_domain = |d: &Domain| -> Result<Domain> {
            let obstacle = d
                .single_region_obstacle()
                .ok_or(Error::Unsupported("dual nesting needs single generalized-ball obstacles"))?;
            let closure = d.as_region().expect("single region").with_closed(true);
            let witness = match obstacle {
                Obstacle::ClosedBall { center, .. } => ExtendedPoint::Finite(center.clone()),
                Obstacle::ClosedBallExterior { .. } => ExtendedPoint::Infinity,
                Obstacle::ClosedHalfSpace { normal, offset } => ExtendedPoint::Finite(normal * (offset + 1.0)),
                Obstacle::SinglePoint(_) => unreachable!(),
            };
            Domain::new(d.dim(), vec![Obstacle::from_region(&closure)?], witness)
        };
        Self::new(complement_domain(&self.outer)?, complement_domain(&self.inner)?)
    }

    fn require_certified(&self) -> Result<()> {
        if self.delta.is_certified() {
            Ok(())
        } else {
            Err(Error::UncertifiedDelta)
        }
    }
}

/// Maximum observed ratio against a contraction bound.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    pub label: String,
    pub checked: usize,
    /// Samples whose denominator vanished (pseudo-metric collapse).
    pub skipped: usize,
    pub max_ratio: f64,
    pub argmax: Option<usize>,
    pub bound: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ContractionReport {
    fn from_ratios(label: &str, bound: f64, ratios: impl IntoIterator<Item = Option<f64>>) -> Self {
        let mut checked = 0;
        let mut skipped = 0;
        let mut max_ratio = 0.0;
        let mut argmax = None;
        for (i, r) in ratios.into_iter().enumerate() {
            match r {
                None => skipped += 1,
                Some(r) => {
                    checked += 1;
                    if argmax.is_none() || r > max_ratio {
                        max_ratio = r;
                        argmax = Some(i);
                    }
                }
            }
        }
        Self {
            label: label.to_owned(),
            checked,
            skipped,
            max_ratio,
            argmax,
            bound,
            tolerance: CONTRACTION_TOL,
            pass: max_ratio <= bound + CONTRACTION_TOL,
        }
    }

    pub fn margin(&self) -> f64 {
        self.bound - self.max_ratio
    }

    /// Re-judges the report with a different slack.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.max_ratio <= self.bound + tolerance;
        self
    }
}

impl fmt::Display for ContractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} bound {:.12} max ratio {:.12} margin {:.3e} checked {} skipped {}",
            self.label,
            if self.pass { "PASS" } else { "FAIL" },
            self.bound,
            self.max_ratio,
            self.margin(),
            self.checked,
            self.skipped,
        )
    }
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > ZERO_DISTANCE).then(|| num / den)
}

/// Checks `d_V(x1, x2) ≤ tanh(Δ/4) d_U(x1, x2)` on sample pairs of `U`.
pub fn verify_ucp(np: &NestedPair, pairs: &[(ExtendedPoint, ExtendedPoint)]) -> Result<ContractionReport> {
    np.require_certified()?;
    let ratios = pairs
        .iter()
        .map(|(a, b)| {
            let du = apollonian_distance(&np.inner, a, b)?;
            let dv = apollonian_distance(&np.outer, a, b)?;
            Ok(ratio(dv, du))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContractionReport::from_ratios("uniform contraction", np.coefficient(), ratios))
}

/// Checks `p_{V,x}(h) ≤ tanh(Δ/4) p_{U,x}(h)`.
pub fn verify_finsler_contraction(np: &NestedPair, samples: &[(ExtendedPoint, Vector)]) -> Result<ContractionReport> {
    np.require_certified()?;
    let ratios = samples
        .iter()
        .map(|(x, h)| Ok(ratio(finsler_norm(&np.outer, x, h)?, finsler_norm(&np.inner, x, h)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ContractionReport::from_ratios("finsler contraction", np.coefficient(), ratios))
}

/// Checks `g_V(x) ≤ tanh(Δ/4) g_U(x)`.
pub fn verify_density_contraction(np: &NestedPair, points: &[ExtendedPoint]) -> Result<ContractionReport> {
    np.require_certified()?;
    let ratios = points
        .iter()
        .map(|x| Ok(ratio(conformal_density(&np.outer, x)?, conformal_density(&np.inner, x)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ContractionReport::from_ratios("density contraction", np.coefficient(), ratios))
}

/// Which path length [`verify_path_contraction`] compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMetric {
    Inner,
    Riemann,
}

/// Checks `ℓ_V(γ) ≤ tanh(Δ/4) ℓ_U(γ)` for polylines in `U`.
pub fn verify_path_contraction(
    np: &NestedPair,
    paths: &[PathPolyline],
    order: usize,
    metric: PathMetric,
) -> Result<ContractionReport> {
    np.require_certified()?;
    let length = |d: &Domain, p: &PathPolyline| match metric {
        PathMetric::Inner => inner_path_length(d, p, order),
        PathMetric::Riemann => riemann_path_length(d, p, order),
    };
    let ratios = paths
        .iter()
        .map(|p| Ok(ratio(length(&np.outer, p)?, length(&np.inner, p)?)))
        .collect::<Result<Vec<_>>>()?;
    let label = match metric {
        PathMetric::Inner => "inner path contraction",
        PathMetric::Riemann => "riemann path contraction",
    };
    Ok(ContractionReport::from_ratios(label, np.coefficient(), ratios))
}

/// Whether `m(V) ⊂ U`, for `V` bounded by one generalized sphere whose image is a ball.
pub fn in_gamma(m: &ConformalMap, np: &NestedPair) -> Result<bool> {
    let v = np
        .outer
        .as_region()
        .ok_or(Error::Unsupported("outer domain is not bounded by a single generalized sphere"))?;
    let image = m.image_region(&v)?;
    if image.as_ball().is_none() {
        return Err(Error::Unsupported("image of the outer domain is not a bounded ball"));
    }
    np.inner.open_region_inside(&image)
}

/// Checks `d_V(m v1, m v2) ≤ tanh(Δ/4) d_V(v1, v2)` for `m ∈ Γ(V, U)`.
pub fn lipschitz_report(
    m: &ConformalMap,
    np: &NestedPair,
    pairs: &[(ExtendedPoint, ExtendedPoint)],
) -> Result<ContractionReport> {
    np.require_certified()?;
    if !in_gamma(m, np)? {
        return Err(Error::NotInGamma);
    }
    let ratios = pairs
        .iter()
        .map(|(a, b)| {
            let before = apollonian_distance(&np.outer, a, b)?;
            let after = apollonian_distance(&np.outer, &m.apply(a)?, &m.apply(b)?)?;
            Ok(ratio(after, before))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContractionReport::from_ratios("lipschitz", np.coefficient(), ratios))
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

    #[test]
    fn coefficient_examples() {
        let delta = 4.0 * (1.0f64 / 3.0).atanh();
        assert_relative_eq!(birkhoff_coefficient(delta).unwrap(), 1.0 / 3.0, max_relative = 1e-15);
        assert_eq!(birkhoff_coefficient(0.0).unwrap(), 0.0);
        assert_relative_eq!(birkhoff_coefficient(2.0 * 3f64.ln()).unwrap(), 0.5, max_relative = 1e-15);
        assert_eq!(birkhoff_coefficient(f64::INFINITY).unwrap(), 1.0);
        assert!(birkhoff_coefficient(-1.0).is_err());
        // Relative accuracy near zero: tanh(x) ≈ x.
        assert_relative_eq!(birkhoff_coefficient(4e-12).unwrap(), 1e-12, max_relative = 1e-12);
    }

    #[test]
    fn one_dimensional_metrics() {
        assert_relative_eq!(j_metric(1.0, std::f64::consts::E).unwrap(), 1.0, max_relative = 1e-15);
        assert_eq!(hilbert_1d(1.0, 4.0, 2.0, 2.0).unwrap(), 0.0);
        // Direct evaluation: (|3−1|·|1.5−4|) / (|1.5−1|·|3−4|) = 10.
        assert_relative_eq!(hilbert_1d(1.0, 4.0, 1.5, 3.0).unwrap(), 10f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(hilbert_1d(1.0, f64::INFINITY, 2.0, 3.0).unwrap(), 2f64.ln(), max_relative = 1e-15);
        assert!(hilbert_1d(1.0, 4.0, 0.5, 2.0).is_err());
        assert!(hilbert_1d(4.0, 1.0, 2.0, 2.0).is_err());
        assert!(j_metric(0.0, 1.0).is_err());
    }

    #[test]
    fn grid_check_examples() {
        let r = birkhoff_grid_check(1.0, 4.0, 401).unwrap();
        assert!(r.pass);
        assert!(r.max_ratio <= 1.0 / 3.0 + 1e-6);
        assert!((r.argmax_diagonal - 2.0).abs() < 0.02);
        assert_relative_eq!(r.theta, 1.0 / 3.0, max_relative = 1e-15);

        let r = birkhoff_grid_check(1.0, 100.0, 401).unwrap();
        assert!(r.max_ratio <= 9.0 / 11.0 + 1e-6);

        let r = birkhoff_grid_check(1.0, 1.0 + 1e-9, 11).unwrap();
        assert!(r.max_ratio < 1e-8, "{}", r.max_ratio);

        assert!(birkhoff_grid_check(1.0, 4.0, 2).is_err());
        assert!(birkhoff_grid_check(0.0, 4.0, 10).is_err());
    }

    #[test]
    fn concentric_diameter() {
        let np = NestedPair::concentric(2, 0.5, 1.0).unwrap();
        let d = np.delta();
        assert_eq!(d.provenance, Provenance::ClosedForm);
        assert_relative_eq!(d.value, 2.0 * 3f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(d.coefficient, 0.5, max_relative = 1e-15);
    }

    #[test]
    fn nesting_violation() {
        let big = Domain::ball(v(&[0.0, 0.0]), 1.0).unwrap();
        let small = Domain::ball(v(&[0.0, 0.0]), 0.5).unwrap();
        assert!(matches!(NestedPair::new(big, small), Err(Error::NestingViolated(_))));
    }

    #[test]
    fn equal_balls_have_infinite_diameter() {
        let b = Domain::ball(v(&[0.0, 0.0]), 1.0).unwrap();
        let np = NestedPair::new(b.clone(), b).unwrap();
        assert_eq!(np.delta().value, f64::INFINITY);
        assert_eq!(np.coefficient(), 1.0);
        let pairs = vec![(p(&[0.1, 0.2]), p(&[-0.3, 0.4])), (p(&[0.0, 0.0]), p(&[0.9, 0.0]))];
        let report = verify_ucp(&np, &pairs).unwrap();
        assert!(report.pass);
        assert_relative_eq!(report.max_ratio, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn multi_obstacle_diameter_is_sampled() {
        let u = Domain::new(
            2,
            vec![Obstacle::ball_exterior(v(&[0.0, 0.0]), 1.0).unwrap(), Obstacle::point(p(&[0.5, 0.0]))],
            p(&[0.0, 0.0]),
        )
        .unwrap();
        let np = NestedPair::new(u.clone(), u).unwrap();
        assert_eq!(np.delta().provenance, Provenance::SampledLowerBound);
        let pairs = vec![(p(&[0.1, 0.2]), p(&[-0.3, 0.4]))];
        assert_eq!(verify_ucp(&np, &pairs).unwrap_err(), Error::UncertifiedDelta);
        let d = apollonian_distance(np.outer(), &pairs[0].0, &pairs[0].1).unwrap();
        let samples = vec![pairs[0].0.clone(), pairs[0].1.clone()];
        let with = NestedPair::with_samples(np.inner().clone(), np.outer().clone(), &samples).unwrap();
        assert_relative_eq!(with.delta().value, d, max_relative = 1e-15);
    }

    #[test]
    fn gamma_membership() {
        let np = NestedPair::concentric(2, 0.5, 1.0).unwrap();
        let quarter = ConformalMap::homothety(2, 0.25).unwrap();
        assert!(in_gamma(&quarter, &np).unwrap());
        let shifted = ConformalMap::translation(v(&[0.75, 0.0])).unwrap().compose(&quarter).unwrap();
        assert!(!in_gamma(&shifted, &np).unwrap());
        let same = NestedPair::new(np.outer().clone(), np.outer().clone()).unwrap();
        assert!(in_gamma(&ConformalMap::identity(2), &same).unwrap());
        assert_eq!(
            lipschitz_report(&shifted, &np, &[]).unwrap_err(),
            Error::NotInGamma
        );
    }

    #[test]
    fn gamma_needs_a_ball_image() {
        let np = NestedPair::concentric(2, 0.5, 1.0).unwrap();
        // The inversion at a boundary point sends V to a half-space.
        let m = ConformalMap::inversion_at(&v(&[1.0, 0.0]));
        assert!(matches!(in_gamma(&m, &np), Err(Error::Unsupported(_))));
    }

    #[test]
    fn dual_has_the_same_diameter() {
        let np = NestedPair::concentric(3, 0.3, 1.0).unwrap();
        let dual = np.dual().unwrap();
        assert_relative_eq!(dual.delta().value, np.delta().value, max_relative = 1e-12);
    }

    #[test]
    fn report_skips_collapsed_pairs() {
        let r = ContractionReport::from_ratios("t", 0.5, [Some(0.2), None, Some(0.4)]);
        assert_eq!((r.checked, r.skipped, r.argmax), (2, 1, Some(2)));
        assert!(r.pass);
    }
}
