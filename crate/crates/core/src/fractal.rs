//! Conformal iterated function systems `γ_1, …, γ_k ∈ Γ(V, U)`.
//!
//! Every generator contracts `d_V` by `tanh(Δ/4)`, so the depth-`n` cylinder
//! sets `γ_{i1} ∘ … ∘ γ_{in}(V)` have Apollonian diameter at most
//! `Δ tanh(Δ/4)^{n−1}` and the limit set has dimension at most
//! `log k / −log tanh(Δ/4)`.

use std::collections::HashSet;

use crate::conformal::{ConformalMap, Region};
use crate::contraction::{birkhoff_coefficient, in_gamma, nested_radius_ratio, Diameter, NestedPair};
use crate::domain::{Domain, Obstacle};
use crate::error::{Error, Result};
use crate::extgeom::Vector;

/// Default limit on the number of cells of a cover.
pub const DEFAULT_CELL_CAP: usize = 1_000_000;
/// Slack for containment of a child cell in its parent.
pub const NESTING_TOL: f64 = 1e-9;

/// A point `q ∉ Cl V` to send to ∞, so that every image of `V` is a bounded ball.
///
/// Bounded `V` needs no normalization. Otherwise the center of the largest
/// ball obstacle is used, and for a half-space the point at unit depth inside it.
fn normalizing_map(v: &Domain) -> Result<ConformalMap> {
    let obstacles = v.obstacles();
    if obstacles.iter().any(|o| matches!(o, Obstacle::ClosedBallExterior { .. })) {
        return Ok(ConformalMap::identity(v.dim()));
    }
    let largest = obstacles
        .iter()
        .filter_map(|o| match o {
            Obstacle::ClosedBall { center, radius } => Some((center, *radius)),
            _ => None,
        })
        .max_by(|a, b| a.1.total_cmp(&b.1));
    if let Some((center, _)) = largest {
        return Ok(ConformalMap::inversion_at(center));
    }
    obstacles
        .iter()
        .find_map(|o| match o {
            Obstacle::ClosedHalfSpace { normal, offset } => Some(ConformalMap::inversion_at(&(normal * (offset + 1.0)))),
            _ => None,
        })
        .ok_or(Error::NoNormalizingPoint)
}

/// A nesting `U ⊂ V` with a certified finite `Δ` and generators in `Γ(V, U)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IfsSystem {
    nesting: NestedPair,
    generators: Vec<ConformalMap>,
    normalizer: ConformalMap,
}

impl IfsSystem {
    pub fn new(nesting: NestedPair, generators: Vec<ConformalMap>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Degenerate("an IFS needs at least one generator"));
        }
        let delta = nesting.delta();
        if !delta.is_certified() {
            return Err(Error::UncertifiedDelta);
        }
        if delta.value.is_infinite() {
            return Err(Error::InfiniteDelta);
        }
        for g in &generators {
            if g.dim() != nesting.outer().dim() {
                return Err(Error::DimensionMismatch { expected: nesting.outer().dim(), found: g.dim() });
            }
            if !in_gamma(g, &nesting)? {
                return Err(Error::NotInGamma);
            }
        }
        let normalizer = normalizing_map(nesting.outer())?;
        Ok(Self { nesting, generators, normalizer })
    }

    pub fn nesting(&self) -> &NestedPair {
        &self.nesting
    }

    pub fn generators(&self) -> &[ConformalMap] {
        &self.generators
    }

    /// The inversion sending `q ∉ Cl V` to ∞ (the identity for bounded `V`).
    pub fn normalizer(&self) -> &ConformalMap {
        &self.normalizer
    }

    pub fn delta(&self) -> f64 {
        self.nesting.delta().value
    }

    pub fn coefficient(&self) -> f64 {
        self.nesting.coefficient()
    }

    /// `Δ tanh(Δ/4)^{n−1}`.
    pub fn diameter_bound(&self, depth: usize) -> f64 {
        self.delta() * self.coefficient().powi(depth as i32 - 1)
    }

    pub fn dimension_bound(&self) -> Result<f64> {
        dimension_bound(self.generators.len(), self.delta())
    }

    /// The normalized image of `V`, a bounded open ball.
    pub fn normalized_outer(&self) -> Result<Region> {
        let v = self.nesting.outer().as_region().expect("certified nesting has a single obstacle");
        let image = self.normalizer.image_region(&v)?;
        if image.as_ball().is_none() {
            return Err(Error::NoNormalizingPoint);
        }
        Ok(image)
    }

    /// Whether the depth-1 cells are pairwise disjoint.
    pub fn first_level_disjoint(&self) -> Result<bool> {
        let cover = self.limit_cover(1)?;
        let cells = cover.cells();
        Ok(cells.iter().enumerate().all(|(i, a)| {
            cells[i + 1..].iter().all(|b| (&a.center - &b.center).norm() >= a.radius + b.radius)
        }))
    }

    pub fn limit_cover(&self, depth: usize) -> Result<CylinderCover> {
        self.limit_cover_capped(depth, DEFAULT_CELL_CAP)
    }

    /// All depth-`n` cylinder balls after normalization, in lexicographic word order.
    pub fn limit_cover_capped(&self, depth: usize, cap: usize) -> Result<CylinderCover> {
        if depth == 0 {
            return Err(Error::Degenerate("cover depth must be at least 1"));
        }
        let k = self.generators.len() as u128;
        let cells = k.checked_pow(depth as u32).unwrap_or(u128::MAX);
        if cells > cap as u128 {
            return Err(Error::CellCapExceeded { cells, cap });
        }
        let outer = self.normalized_outer()?;
        let inverse = self.normalizer.inverse();
        let conjugates: Vec<ConformalMap> = self
            .generators
            .iter()
            .map(|g| self.normalizer.compose(g)?.compose(&inverse).map(|m| m.simplify()))
            .collect::<Result<_>>()?;

        // Level n from level n−1: R_{i w} = γ_i(R_w), which keeps words sorted.
        let mut level: Vec<(Vec<usize>, Region)> = vec![(Vec::new(), outer.clone())];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(level.len() * conjugates.len());
            for (i, g) in conjugates.iter().enumerate() {
                for (word, region) in &level {
                    let image = g.image_region(region)?;
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push(i);
                    w.extend_from_slice(word);
                    next.push((w, image));
                }
            }
            level = next;
        }
        let cells = level
            .into_iter()
            .map(|(word, region)| {
                let (center, radius) = region
                    .as_ball()
                    .map(|(c, r)| (c.clone(), r))
                    .ok_or(Error::Degenerate("a cylinder set is not a bounded ball"))?;
                Ok(Cell { word, center, radius })
            })
            .collect::<Result<Vec<_>>>()?;
        let (outer_center, outer_radius) = outer.as_ball().map(|(c, r)| (c.clone(), r)).expect("bounded");
        Ok(CylinderCover {
            depth,
            cells,
            bound: self.diameter_bound(depth),
            outer_center,
            outer_radius,
        })
    }
}

/// One cylinder ball `N γ_{i1} ∘ … ∘ γ_{in}(V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub word: Vec<usize>,
    pub center: Vector,
    pub radius: f64,
}

impl Cell {
    pub fn word_label(&self) -> String {
        self.word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }

    fn obstacle(&self) -> Result<Obstacle> {
        Obstacle::ball_exterior(self.center.clone(), self.radius)
    }
}

/// The depth-`n` cover of the limit set with its certified diameter bound.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderCover {
    pub depth: usize,
    pub cells: Vec<Cell>,
    /// `r = Δ tanh(Δ/4)^{n−1}`.
    pub bound: f64,
    /// The normalized `V`, a ball `B(x0, R)`.
    pub outer_center: Vector,
    pub outer_radius: f64,
}

impl CylinderCover {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn centers(&self) -> Vec<Vector> {
        self.cells.iter().map(|c| c.center.clone()).collect()
    }

    /// Exact Apollonian diameter of a cell in the normalized `V`.
    pub fn cell_diameter(&self, cell: &Cell) -> Result<f64> {
        let outer = Obstacle::ball_exterior(self.outer_center.clone(), self.outer_radius)?;
        let k = nested_radius_ratio(&cell.obstacle()?, &outer).expect("balls are regions");
        Ok(Diameter::from_radius_ratio(k).value)
    }

    /// Checks every cell against the diameter law and its Euclidean consequence.
    pub fn check_diameter_law(&self) -> Result<DiameterLawReport> {
        let mut max_apollonian = 0.0f64;
        let mut max_euclidean = 0.0f64;
        for cell in &self.cells {
            max_apollonian = max_apollonian.max(self.cell_diameter(cell)?);
            max_euclidean = max_euclidean.max(2.0 * cell.radius);
        }
        let euclidean_bound = 0.5 * self.outer_radius * self.bound;
        Ok(DiameterLawReport {
            cells: self.cells.len(),
            bound: self.bound,
            max_apollonian,
            euclidean_bound,
            max_euclidean,
            pass: max_apollonian <= self.bound * (1.0 + NESTING_TOL) + NESTING_TOL
                && max_euclidean <= euclidean_bound + NESTING_TOL,
        })
    }

    /// Whether every cell of `finer` lies in the cell of `self` named by its prefix.
    pub fn contains_refinement(&self, finer: &CylinderCover) -> bool {
        if finer.depth != self.depth + 1 {
            return false;
        }
        finer.cells.iter().all(|child| {
            self.cells
                .iter()
                .find(|p| child.word.starts_with(&p.word))
                .is_some_and(|p| (&child.center - &p.center).norm() + child.radius <= p.radius + NESTING_TOL)
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterLawReport {
    pub cells: usize,
    pub bound: f64,
    pub max_apollonian: f64,
    /// `(R/2) r` for the normalized `V ⊂ B(x0, R)`.
    pub euclidean_bound: f64,
    pub max_euclidean: f64,
    pub pass: bool,
}

/// `log k / −log tanh(Δ/4)`.
pub fn dimension_bound(k: usize, delta: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Degenerate("an IFS needs at least one generator"));
    }
    if delta == f64::INFINITY {
        return Err(Error::InfiniteDelta);
    }
    let theta = birkhoff_coefficient(delta)?;
    if k == 1 || theta == 0.0 {
        return Ok(0.0);
    }
    Ok((k as f64).ln() / -theta.ln())
}

/// Occupied-box counts and the fitted slope of `log N` against `log 1/r`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxCount {
    pub counts: Vec<(f64, usize)>,
    pub slope: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

pub fn box_count(points: &[Vector], scales: &[f64]) -> Result<BoxCount> {
    if points.is_empty() {
        return Err(Error::Degenerate("box counting needs points"));
    }
    if scales.len() < 2 || scales.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
        return Err(Error::Degenerate("box counting needs at least two positive scales"));
    }
    let lo = scales.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scales.iter().copied().fold(0.0, f64::max);
    if hi < 10.0 * lo {
        return Err(Error::Degenerate("scales must span at least one decade"));
    }
    let counts: Vec<(f64, usize)> = scales
        .iter()
        .map(|&s| {
            let boxes: HashSet<Vec<i64>> =
                points.iter().map(|p| p.iter().map(|c| (c / s).floor() as i64).collect()).collect();
            (s, boxes.len())
        })
        .collect();

    let xs: Vec<f64> = counts.iter().map(|(s, _)| -s.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|(_, n)| (*n as f64).ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - my - slope * (x - mx)).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    Ok(BoxCount { counts, slope, residual })
}

/// `2^{-lo}, …, 2^{-hi}`.
pub fn dyadic_scales(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|j| 2f64.powi(-j)).collect()
}
