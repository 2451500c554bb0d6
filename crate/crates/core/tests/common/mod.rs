//! Independent oracles for the closed-form queries: brute force over dense
//! samples of the obstacle boundaries, plus the hyperbolic closed form.
#![allow(dead_code)]

use apollon::domain::{Domain, Obstacle};
use apollon::sampling::{gaussian_vector, unit_vector};
use apollon::{ExtendedPoint, Vector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Hyperbolic distance in the unit ball, `2 asinh(‖x − y‖ / √((1 − ‖x‖²)(1 − ‖y‖²)))`.
pub fn hyperbolic_distance(x: &Vector, y: &Vector) -> f64 {
    let den = ((1.0 - x.norm_squared()) * (1.0 - y.norm_squared())).sqrt();
    2.0 * ((x - y).norm() / den).asinh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Ball,
    BallExterior,
    HalfSpace,
    Point,
}

pub const KINDS: [Kind; 4] = [Kind::Ball, Kind::BallExterior, Kind::HalfSpace, Kind::Point];

/// One to three obstacles of one kind, all avoiding the origin, which is the witness.
pub fn random_domain(kind: Kind, dim: usize, rng: &mut ChaCha8Rng) -> Domain {
    let count = rng.random_range(1..=3);
    let obstacles = (0..count)
        .map(|_| match kind {
            Kind::Ball => {
                let c = gaussian_vector(rng, dim) * 2.0 + unit_vector(rng, dim) * 0.5;
                let r = rng.random_range(0.1..0.9) * c.norm();
                Obstacle::ball(c, r).unwrap()
            }
            Kind::BallExterior => {
                let c = gaussian_vector(rng, dim) * 0.5;
                let r = c.norm() + rng.random_range(0.2..2.0);
                Obstacle::ball_exterior(c, r).unwrap()
            }
            Kind::HalfSpace => Obstacle::half_space(unit_vector(rng, dim), rng.random_range(0.2..2.0)).unwrap(),
            Kind::Point => {
                if rng.random_bool(0.2) {
                    Obstacle::point(ExtendedPoint::Infinity)
                } else {
                    Obstacle::point(ExtendedPoint::Finite(gaussian_vector(rng, dim) * 2.0 + unit_vector(rng, dim) * 0.1))
                }
            }
        })
        .collect();
    Domain::new(dim, obstacles, ExtendedPoint::origin(dim)).unwrap()
}

/// A mix of all obstacle kinds around the origin.
pub fn random_mixed_domain(dim: usize, rng: &mut ChaCha8Rng) -> Domain {
    let mut obstacles = Vec::new();
    for kind in KINDS {
        if rng.random_bool(0.5) {
            obstacles.extend(random_domain(kind, dim, rng).obstacles().iter().cloned());
        }
    }
    if obstacles.is_empty() {
        obstacles.extend(random_domain(Kind::Ball, dim, rng).obstacles().iter().cloned());
    }
    Domain::new(dim, obstacles, ExtendedPoint::origin(dim)).unwrap()
}

fn project(o: &Obstacle, u: &Vector) -> Vector {
    match o {
        Obstacle::ClosedBall { center, radius } | Obstacle::ClosedBallExterior { center, radius } => {
            let d = u - center;
            let n = d.norm();
            if n == 0.0 {
                let mut e = Vector::zeros(u.len());
                e[0] = *radius;
                center + e
            } else {
                center + d * (radius / n)
            }
        }
        Obstacle::ClosedHalfSpace { normal, offset } => u - normal * (normal.dot(u) - offset),
        Obstacle::SinglePoint(ExtendedPoint::Finite(q)) => q.clone(),
        Obstacle::SinglePoint(ExtendedPoint::Infinity) => unreachable!(),
    }
}

fn nearest_on_surface(o: &Obstacle, x: &Vector) -> (Vector, f64) {
    let p = project(o, x);
    let gap = (&p - x).norm().max(1e-6);
    (p, gap)
}

/// Boundary points of `o`: half uniform (spheres only), half concentrated
/// around the point nearest to `focus` with heavy-tailed tangential spread.
pub fn boundary_samples(o: &Obstacle, focus: &Vector, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    let dim = focus.len();
    match o {
        Obstacle::SinglePoint(ExtendedPoint::Finite(q)) => return vec![q.clone()],
        Obstacle::SinglePoint(ExtendedPoint::Infinity) => return Vec::new(),
        _ => {}
    }
    let (near, gap) = nearest_on_surface(o, focus);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let uniform = i % 2 == 0 && matches!(o, Obstacle::ClosedBall { .. } | Obstacle::ClosedBallExterior { .. });
        if uniform {
            let (Obstacle::ClosedBall { center, radius } | Obstacle::ClosedBallExterior { center, radius }) = o else {
                unreachable!()
            };
            out.push(center + unit_vector(rng, dim) * *radius);
        } else {
            let v: f64 = rng.random_range(0.0..1.0);
            let spread = gap * (std::f64::consts::FRAC_PI_2 * v).tan();
            out.push(project(o, &(&near + unit_vector(rng, dim) * spread)));
        }
    }
    out
}

fn is_unbounded(d: &Domain) -> bool {
    d.obstacles().iter().any(|o| !o.is_bounded())
}

/// Local search on the surface of `o` around `start`, maximizing `f`.
fn refine<F: Fn(&Vector) -> f64>(o: &Obstacle, start: &Vector, scale: f64, steps: usize, rng: &mut ChaCha8Rng, f: F) -> f64 {
    if matches!(o, Obstacle::SinglePoint(_)) {
        return f(start);
    }
    let mut best = start.clone();
    let mut value = f(&best);
    let mut sigma = scale * 0.05;
    for i in 0..steps {
        let cand = project(o, &(&best + gaussian_vector(rng, best.len()) * sigma));
        let v = f(&cand);
        if v > value {
            value = v;
            best = cand;
        }
        if i % 50 == 49 {
            sigma *= 0.5;
        }
    }
    value
}

/// Maximum of `f` over boundary samples of every obstacle, plus `at_infinity`
/// when some obstacle is unbounded, followed by local refinement of the best.
fn brute_max<F: Fn(&Vector) -> f64>(
    d: &Domain,
    focus: &Vector,
    budget: usize,
    rng: &mut ChaCha8Rng,
    at_infinity: f64,
    f: F,
) -> f64 {
    let per = (budget * 9 / 10) / d.obstacles().len();
    let mut best = if is_unbounded(d) { at_infinity } else { f64::NEG_INFINITY };
    let mut arg: Option<(usize, Vector)> = None;
    for (k, o) in d.obstacles().iter().enumerate() {
        for u in boundary_samples(o, focus, per, rng) {
            let v = f(&u);
            if v > best {
                best = v;
                arg = Some((k, u));
            }
        }
    }
    if let Some((k, u)) = arg {
        let o = &d.obstacles()[k];
        let scale = (&u - focus).norm();
        best = best.max(refine(o, &u, scale, budget / 10, rng, &f));
    }
    best
}

/// `sup_u log(‖x2 − u‖ / ‖x1 − u‖)` by sampling.
pub fn brute_sup_log_ratio(d: &Domain, x1: &Vector, x2: &Vector, budget: usize, rng: &mut ChaCha8Rng) -> f64 {
    let f = |u: &Vector| ((x2 - u).norm() / (x1 - u).norm()).ln();
    brute_max(d, x1, budget, rng, 0.0, f)
}

fn inverted(x: &Vector, u: &Vector) -> Vector {
    let w = u - x;
    let n2 = w.norm_squared();
    w / n2
}

/// `(inf, sup)` of `⟨(u − x)/‖u − x‖², h⟩` by sampling.
pub fn brute_support(d: &Domain, x: &Vector, h: &Vector, budget: usize, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let hi = brute_max(d, x, budget / 2, rng, 0.0, |u| inverted(x, u).dot(h));
    let lo = -brute_max(d, x, budget / 2, rng, 0.0, |u| -inverted(x, u).dot(h));
    (lo, hi)
}

/// Diameter of the sampled inverted complement in the plane: extreme points
/// in many directions, then the farthest pair among them, then local refinement.
pub fn brute_diameter_2d(d: &Domain, x: &Vector, budget: usize, rng: &mut ChaCha8Rng) -> f64 {
    assert_eq!(x.len(), 2);
    let per = budget / d.obstacles().len();
    let mut pts: Vec<(usize, Vector, Vector)> = Vec::new();
    for (k, o) in d.obstacles().iter().enumerate() {
        for u in boundary_samples(o, x, per, rng) {
            let w = inverted(x, &u);
            pts.push((k, u, w));
        }
    }
    if is_unbounded(d) {
        pts.push((usize::MAX, Vector::zeros(2), Vector::zeros(2)));
    }
    const DIRECTIONS: usize = 128;
    let mut candidates: Vec<usize> = Vec::new();
    for j in 0..DIRECTIONS {
        let t = std::f64::consts::PI * 2.0 * j as f64 / DIRECTIONS as f64;
        let h = Vector::from_column_slice(&[t.cos(), t.sin()]);
        let best = (0..pts.len()).max_by(|a, b| pts[*a].2.dot(&h).total_cmp(&pts[*b].2.dot(&h))).unwrap();
        candidates.push(best);
    }
    candidates.sort_unstable();
    candidates.dedup();
    let mut best = 0.0f64;
    let mut pair = (candidates[0], candidates[0]);
    for (i, &a) in candidates.iter().enumerate() {
        for &b in &candidates[i..] {
            let dist = (&pts[a].2 - &pts[b].2).norm();
            if dist > best {
                best = dist;
                pair = (a, b);
            }
        }
    }
    // Alternate refinement of each end with the other fixed.
    let (mut a, mut b) = (pts[pair.0].clone(), pts[pair.1].clone());
    for _ in 0..4 {
        let fixed = b.2.clone();
        refine_end(d, x, &mut a, &fixed, rng);
        let fixed = a.2.clone();
        refine_end(d, x, &mut b, &fixed, rng);
    }
    best.max((&a.2 - &b.2).norm())
}

fn refine_end(d: &Domain, x: &Vector, end: &mut (usize, Vector, Vector), fixed: &Vector, rng: &mut ChaCha8Rng) {
    if end.0 == usize::MAX {
        return;
    }
    let o = &d.obstacles()[end.0];
    if matches!(o, Obstacle::SinglePoint(_)) {
        return;
    }
    let scale = (&end.1 - x).norm();
    let mut cur = end.1.clone();
    let mut val = (inverted(x, &cur) - fixed).norm();
    let mut sigma = 0.05 * scale;
    for i in 0..400 {
        let cand = project(o, &(&cur + gaussian_vector(rng, x.len()) * sigma));
        let v = (inverted(x, &cand) - fixed).norm();
        if v > val {
            val = v;
            cur = cand;
        }
        if i % 50 == 49 {
            sigma *= 0.5;
        }
    }
    end.2 = inverted(x, &cur);
    end.1 = cur;
}

/// `max ‖u1 − u2‖ / (‖x − u1‖ ‖x − u2‖)` over all pairs of a finite set.
pub fn brute_density_finite(x: &Vector, us: &[Vector]) -> f64 {
    let mut best = 0.0f64;
    for (i, a) in us.iter().enumerate() {
        for b in &us[i + 1..] {
            best = best.max((a - b).norm() / ((x - a).norm() * (x - b).norm()));
        }
    }
    best
}
