//! A conformal IFS of two contractions inside the unit disk: cylinder cover,
//! the diameter law, the dimension bound and a box-counting estimate.

use apollon::conformal::ConformalMap;
use apollon::contraction::NestedPair;
use apollon::fractal::{box_count, IfsSystem};
use apollon::Vector;

fn generator(shift: f64) -> apollon::Result<ConformalMap> {
    ConformalMap::translation(Vector::from_column_slice(&[shift, 0.0]))?.compose(&ConformalMap::homothety(2, 0.25)?)
}

fn main() -> apollon::Result<()> {
    let np = NestedPair::concentric(2, 0.75, 1.0)?;
    let sys = IfsSystem::new(np, vec![generator(-0.5)?, generator(0.5)?])?;
    println!("delta {:.9} coefficient {:.9}", sys.delta(), sys.coefficient());
    println!("dimension bound {:.9}", sys.dimension_bound()?);
    println!("first level disjoint {}", sys.first_level_disjoint()?);

    let cover = sys.limit_cover(10)?;
    let law = cover.check_diameter_law()?;
    println!(
        "depth 10: {} cells, bound {:.3e}, max cell diameter {:.3e}, law {}",
        cover.cells().len(),
        law.bound,
        law.max_apollonian,
        if law.pass { "holds" } else { "fails" }
    );
    for cell in cover.cells().iter().take(3) {
        println!("  {} center ({:.6}, {:.6}) radius {:.3e}", cell.word_label(), cell.center[0], cell.center[1], cell.radius);
    }

    let scales: Vec<f64> = (8..=40).map(|j| 2f64.powf(-j as f64 / 4.0)).collect();
    let bc = box_count(&cover.centers(), &scales)?;
    println!("box-count slope {:.4} (residual {:.4}); similarity dimension 0.5", bc.slope, bc.residual);
    Ok(())
}
