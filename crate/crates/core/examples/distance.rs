//! Apollonian distances in a few standard domains.
//!
//! In the unit disk the distance is the hyperbolic one; in a half-plane too.
//! With a single boundary point the distance vanishes identically; with the
//! two boundary points 0 and ∞ it is `|ln(‖x‖/‖y‖)|` plus an angular term.

use apollon::apollonian::apollonian_distance;
use apollon::domain::{Domain, Obstacle};
use apollon::{ExtendedPoint, Vector};

fn main() -> apollon::Result<()> {
    let disk = Domain::ball(Vector::zeros(2), 1.0)?;
    let x = ExtendedPoint::finite([0.0, 0.0])?;
    for r in [0.1, 0.5, 0.9, 0.99] {
        let y = ExtendedPoint::finite([r, 0.0])?;
        let hyperbolic = 2.0 * f64::atanh(r);
        println!("disk    d(0, {r:<4}) = {:.12}  hyperbolic {hyperbolic:.12}", apollonian_distance(&disk, &x, &y)?);
    }

    let upper = Domain::half_space(Vector::from_column_slice(&[0.0, -1.0]), 0.0)?;
    let a = ExtendedPoint::finite([0.0, 1.0])?;
    let b = ExtendedPoint::finite([0.0, 4.0])?;
    println!("half    d(i, 4i)    = {:.12}  ln 4 = {:.12}", apollonian_distance(&upper, &a, &b)?, 4f64.ln());

    let p = ExtendedPoint::finite([1.0, 0.0])?;
    let q = ExtendedPoint::finite([3.0, 0.0])?;
    let once = Domain::new(2, vec![Obstacle::point(ExtendedPoint::origin(2))], p.clone())?;
    println!("R2\\0   d(1, 3)     = {:.12}", apollonian_distance(&once, &p, &q)?);
    let twice = Domain::new(
        2,
        vec![Obstacle::point(ExtendedPoint::origin(2)), Obstacle::point(ExtendedPoint::Infinity)],
        p.clone(),
    )?;
    println!("R2\\0,inf d(1, 3)   = {:.12}  ln 3 = {:.12}", apollonian_distance(&twice, &p, &q)?, 3f64.ln());
    Ok(())
}
