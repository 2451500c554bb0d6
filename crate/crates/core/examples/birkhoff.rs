//! The one-dimensional Hilbert metric on an interval of positive reals and
//! its Birkhoff contraction coefficient against the log metric.

use apollon::contraction::{birkhoff_coefficient, birkhoff_grid_check, hilbert_1d, j_metric};

fn main() -> apollon::Result<()> {
    let (a1, a2) = (1.0, 4.0);
    println!("hilbert((1,4); 1.5, 3) = {:.12}", hilbert_1d(a1, a2, 1.5, 3.0)?);
    println!("j(1.5, 3)              = {:.12}", j_metric(1.5, 3.0)?);

    // The interval has log diameter ln(a2 / a1) in the positive half-line.
    let delta = (a2 / a1).ln();
    println!("log diameter {delta:.12} coefficient {:.12}", birkhoff_coefficient(delta)?);

    let rep = birkhoff_grid_check(a1, a2, 401)?;
    println!(
        "grid {}: theta {:.9} max ratio {:.9} at {:?}, infinitesimal max at s = {:.6}",
        rep.grid, rep.theta, rep.max_ratio, rep.argmax_pair, rep.argmax_diagonal
    );
    println!("pass {}", rep.pass);
    Ok(())
}
