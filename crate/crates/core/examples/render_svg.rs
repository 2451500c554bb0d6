//! Draw a planar domain, an Apollonian ball and sample points to SVG.

use apollon::domain::{Domain, Obstacle};
use apollon::extgeom::apollonian_ball;
use apollon::svg::{SvgDocument, Viewport};
use apollon::{ExtendedPoint, Vector};

fn main() -> apollon::Result<()> {
    let d = Domain::new(
        2,
        vec![
            Obstacle::ball_exterior(Vector::zeros(2), 1.0)?,
            Obstacle::half_space(Vector::from_column_slice(&[0.0, -1.0]), 0.5)?,
        ],
        ExtendedPoint::origin(2),
    )?;
    let view = Viewport::new([-1.2, -1.2, 1.2, 1.2], 480).expect("valid viewport");
    let mut doc = SvgDocument::new(view);
    for o in d.obstacles() {
        doc.obstacle(o, "#d0d0d0");
    }
    let ball = apollonian_ball(&ExtendedPoint::finite([0.2, 0.2])?, &ExtendedPoint::finite([-0.4, 0.0])?, 0.5)?;
    doc.outline(&ball, "#c03030");
    doc.point(&Vector::from_column_slice(&[0.2, 0.2]), 3.0, "#3050c0");
    doc.comment("apollonian ball with ratio 0.5");
    let svg = doc.finish(&["example drawing".to_owned()]);

    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, &svg).expect("write svg"),
        None => print!("{svg}"),
    }
    Ok(())
}
