//! Strict contraction of the inclusion of nested domains, and of maps that
//! send the outer domain into the inner one.

use apollon::conformal::ConformalMap;
use apollon::contraction::{in_gamma, lipschitz_report, verify_density_contraction, verify_ucp, NestedPair};
use apollon::sampling::{sample_domain, sample_pairs, seeded};
use apollon::{ExtendedPoint, Vector};

fn main() -> apollon::Result<()> {
    let np = NestedPair::concentric(2, 0.5, 1.0)?;
    let delta = np.delta();
    println!("delta {:.12} ({}) coefficient {:.12}", delta.value, delta.provenance, np.coefficient());

    let mut rng = seeded(3);
    let pairs = sample_pairs(np.inner(), &mut rng, 500, 0.0)?;
    println!("{}", verify_ucp(&np, &pairs)?);
    let points: Vec<ExtendedPoint> = sample_domain(np.inner(), &mut rng, 500, 0.0)?
        .into_iter()
        .map(ExtendedPoint::Finite)
        .collect();
    println!("{}", verify_density_contraction(&np, &points)?);

    // A quarter-turn followed by halving maps the unit disk into the half disk.
    let turn = ConformalMap::orthogonal(apollon::Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]))?;
    let m = ConformalMap::homothety(2, 0.5)?.compose(&turn)?;
    println!("in gamma: {}", in_gamma(&m, &np)?);
    let outer_pairs = sample_pairs(np.outer(), &mut rng, 500, 0.0)?;
    println!("{}", lipschitz_report(&m, &np, &outer_pairs)?);

    let off = ConformalMap::translation(Vector::from_column_slice(&[0.6, 0.0]))?.compose(&m)?;
    println!("shifted map in gamma: {}", in_gamma(&off, &np)?);
    Ok(())
}
