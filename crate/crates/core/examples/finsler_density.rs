//! The infinitesimal Apollonian metric: Finsler norm against conformal density.

use apollon::apollonian::{conformal_density, finsler_norm};
use apollon::domain::{Domain, Obstacle};
use apollon::{ExtendedPoint, Vector};

fn main() -> apollon::Result<()> {
    // The unit disk with a small closed ball removed.
    let d = Domain::new(
        2,
        vec![
            Obstacle::ball_exterior(Vector::zeros(2), 1.0)?,
            Obstacle::ball(Vector::from_column_slice(&[0.5, 0.0]), 0.1)?,
        ],
        ExtendedPoint::origin(2),
    )?;
    for xy in [[0.0, 0.0], [0.3, 0.0], [0.0, 0.6], [-0.8, 0.1]] {
        let x = ExtendedPoint::finite(xy)?;
        let g = conformal_density(&d, &x)?;
        println!("x = {xy:?}  density {g:.6}");
        for k in 0..4 {
            let t = std::f64::consts::FRAC_PI_4 * k as f64;
            let h = Vector::from_column_slice(&[t.cos(), t.sin()]);
            println!("    angle {:>3} deg  p = {:.6}", 45 * k, finsler_norm(&d, &x, &h)?);
        }
    }
    Ok(())
}
