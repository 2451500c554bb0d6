//! Seeded random inputs: directions, orthogonal matrices, conformal maps, and
//! points of a domain. Everything is driven by a `ChaCha8Rng`, so equal seeds
//! give equal samples on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::conformal::{ConformalMap, Primitive};
use crate::domain::{Domain, Obstacle};
use crate::error::{Error, Result};
use crate::extgeom::{ExtendedPoint, Matrix, Vector};

/// Rejection-sampling budget per requested point.
const ATTEMPTS_PER_POINT: usize = 20_000;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    Vector::from_iterator(dim, (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)))
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let v = gaussian_vector(rng, dim);
        let n = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

/// A Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix).
pub fn orthogonal_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Matrix {
    let g = Matrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// A random composition of `len` primitives with moderate parameters:
/// translations with standard normal coordinates, homothety factors in
/// `[e^-1, e]`, Haar orthogonal maps, and unit inversions.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, dim: usize, len: usize) -> ConformalMap {
    let primitives = (0..len)
        .map(|_| match rng.random_range(0..4u8) {
            0 => Primitive::Translation(gaussian_vector(rng, dim)),
            1 => Primitive::Orthogonal(orthogonal_matrix(rng, dim)),
            2 => Primitive::Homothety(rng.random_range(-1.0f64..1.0).exp()),
            _ => Primitive::Inversion,
        })
        .collect();
    ConformalMap::new(dim, primitives).expect("generated primitives are valid")
}

/// Axis-aligned box that contains every finite point of interest of `d`.
fn sampling_box(d: &Domain) -> (Vector, f64) {
    let bounding_hole = d
        .obstacles()
        .iter()
        .filter_map(|o| match o {
            Obstacle::ClosedBallExterior { center, radius } => Some((center.clone(), *radius)),
            _ => None,
        })
        .min_by(|a, b| a.1.total_cmp(&b.1));
    if let Some(hole) = bounding_hole {
        return hole;
    }
    let center = d.witness().as_finite().cloned().unwrap_or_else(|| Vector::zeros(d.dim()));
    let reach = d
        .obstacles()
        .iter()
        .map(|o| match o {
            Obstacle::ClosedBall { center: c, radius } => (c - &center).norm() + radius,
            Obstacle::ClosedHalfSpace { normal, offset } => (offset - normal.dot(&center)).abs(),
            Obstacle::SinglePoint(ExtendedPoint::Finite(q)) => (q - &center).norm(),
            _ => 0.0,
        })
        .fold(1.0, f64::max);
    (center, 1.5 * reach)
}

/// Uniform samples of `U` inside a box adapted to the obstacles, keeping only
/// points at Euclidean distance at least `clearance` from the complement.
pub fn sample_domain<R: Rng + ?Sized>(
    d: &Domain,
    rng: &mut R,
    count: usize,
    clearance: f64,
) -> Result<Vec<Vector>> {
    let (center, half) = sampling_box(d);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > ATTEMPTS_PER_POINT * count.max(1) {
            return Err(Error::Degenerate("could not sample enough points of the domain"));
        }
        let x = Vector::from_iterator(
            d.dim(),
            center.iter().map(|c| c + half * rng.random_range(-1.0f64..1.0)),
        );
        let p = ExtendedPoint::Finite(x);
        if d.contains(&p) && d.distance_to_complement(&p)? >= clearance {
            let ExtendedPoint::Finite(x) = p else { unreachable!() };
            out.push(x);
        }
    }
    Ok(out)
}

/// Pairs of points of `U`, as extended points.
pub fn sample_pairs<R: Rng + ?Sized>(
    d: &Domain,
    rng: &mut R,
    count: usize,
    clearance: f64,
) -> Result<Vec<(ExtendedPoint, ExtendedPoint)>> {
    let pts = sample_domain(d, rng, 2 * count, clearance)?;
    Ok(pts
        .chunks_exact(2)
        .map(|c| (ExtendedPoint::Finite(c[0].clone()), ExtendedPoint::Finite(c[1].clone())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_matrices_are_orthogonal() {
        let mut rng = seeded(7);
        for dim in 1..=5 {
            let q = orthogonal_matrix(&mut rng, dim);
            let defect = (q.transpose() * &q - Matrix::identity(dim, dim)).amax();
            assert!(defect < 1e-12, "dim {dim}: {defect}");
        }
    }

    #[test]
    fn same_seed_same_samples() {
        let d = Domain::ball(Vector::zeros(3), 2.0).unwrap();
        let a = sample_domain(&d, &mut seeded(11), 20, 0.0).unwrap();
        let b = sample_domain(&d, &mut seeded(11), 20, 0.0).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.norm() < 2.0));
    }

    #[test]
    fn clearance_is_respected() {
        let d = Domain::ball_complement(Vector::zeros(2), 1.0).unwrap();
        let pts = sample_domain(&d, &mut seeded(3), 50, 0.25).unwrap();
        assert!(pts.iter().all(|x| x.norm() >= 1.25));
    }
}
