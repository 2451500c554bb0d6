//! Composing Möbius maps, pushing regions through them, and checking that
//! cross-ratios and distances survive.

use apollon::apollonian::apollonian_distance;
use apollon::conformal::ConformalMap;
use apollon::domain::{Domain, Obstacle};
use apollon::extgeom::cross_ratio;
use apollon::{ExtendedPoint, Vector};

fn main() -> apollon::Result<()> {
    let shift = ConformalMap::translation(Vector::from_column_slice(&[0.5, 0.0]))?;
    let scale = ConformalMap::homothety(2, 3.0)?;
    // Applied right to left: invert first, then scale, then shift.
    let m = shift.compose(&scale)?.compose(&ConformalMap::inversion(2))?;
    println!("primitives {}", m.primitives().len());

    let disk = Domain::ball(Vector::zeros(2), 1.0)?;
    let image = disk.image(&m)?;
    if let Some(Obstacle::ClosedBall { center, radius }) = image.obstacles().first() {
        println!("image of the unit disk: complement of the closed ball at ({}, {}) radius {radius}", center[0], center[1]);
    }

    let pts: Vec<ExtendedPoint> = [[0.2, 0.1], [-0.3, 0.4], [0.6, -0.2], [0.0, -0.7]]
        .into_iter()
        .map(ExtendedPoint::finite)
        .collect::<apollon::Result<_>>()?;
    let moved: Vec<ExtendedPoint> = pts.iter().map(|p| m.apply(p)).collect::<apollon::Result<_>>()?;
    let before = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3])?.value();
    let after = cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3])?.value();
    println!("cross-ratio {before:.15} -> {after:.15}");

    let d0 = apollonian_distance(&disk, &pts[0], &pts[1])?;
    let d1 = apollonian_distance(&image, &moved[0], &moved[1])?;
    println!("distance    {d0:.15} -> {d1:.15}");

    let back = m.inverse().apply(&moved[2])?;
    println!("round trip  {:?}", back.as_finite().map(|v| (v[0], v[1])));
    Ok(())
}
