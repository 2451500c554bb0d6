//! JSON scene files: named domains, maps, nestings, and iterated function
//! systems in one dimension, plus per-command parameters.
//!
//! Points are coordinate arrays or the string `"inf"`. Map primitives are
//! listed in the order they appear in the composition, so the last one acts
//! first. Every validation error carries the path of the offending value.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::conformal::{ConformalMap, Primitive};
use crate::contraction::NestedPair;
use crate::domain::{Domain, Obstacle};
use crate::error::Error;
use crate::extgeom::{ExtendedPoint, Matrix, Vector};
use crate::fractal::IfsSystem;

/// A scene problem located at a path such as `domains.disk.witness`.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneError {
    pub path: String,
    pub message: String,
}

impl SceneError {
    fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        Self { path: path.into(), message: message.to_string() }
    }
}

impl fmt::Display for SceneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for SceneError {}

type SceneResult<T> = std::result::Result<T, SceneError>;

/// A point: coordinates or `"inf"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Coords(Vec<f64>),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObstacleSpec {
    Ball { center: Vec<f64>, radius: f64 },
    BallExterior { center: Vec<f64>, radius: f64 },
    /// `{⟨n, x⟩ ≥ offset} ∪ {∞}`.
    HalfSpace { normal: Vec<f64>, offset: f64 },
    Point(PointSpec),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub obstacles: Vec<ObstacleSpec>,
    pub witness: PointSpec,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum PrimitiveSpec {
    Translation(Vec<f64>),
    /// Rows of an orthogonal matrix.
    Orthogonal(Vec<Vec<f64>>),
    /// Planar rotation by an angle in radians (dimension 2 only).
    Rotation(f64),
    Homothety(f64),
    Inversion,
    SphereInversion { center: Vec<f64>, radius: f64 },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NestingSpec {
    pub inner: String,
    pub outer: String,
    /// Points of the inner domain used when no closed form applies.
    #[serde(default)]
    pub samples: Option<Vec<PointSpec>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IfsSpec {
    pub nesting: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistCommand {
    pub domain: String,
    pub pairs: Vec<(PointSpec, PointSpec)>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityCommand {
    pub domain: String,
    pub grid: GridSpec,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinslerCommand {
    pub domain: String,
    pub points: Vec<PointSpec>,
    pub directions: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractCommand {
    pub nesting: String,
    #[serde(default)]
    pub samples: Option<usize>,
    /// Maps expected to lie in `Γ(V, U)`, checked for the Lipschitz bound.
    #[serde(default)]
    pub maps: Vec<String>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BirkhoffCommand {
    pub interval: (f64, f64),
    #[serde(default)]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IfsCommand {
    pub system: String,
    #[serde(default)]
    pub depth: Option<usize>,
    /// Box-counting scales; chosen from the cover when absent.
    #[serde(default)]
    pub scales: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApollonianBallSpec {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderCommand {
    #[serde(default)]
    pub domain: Option<String>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub apollonian_balls: Vec<ApollonianBallSpec>,
    #[serde(default)]
    pub ifs: Option<String>,
    #[serde(default)]
    pub depth: Option<usize>,
    /// World rectangle `[xmin, ymin, xmax, ymax]`.
    #[serde(default)]
    pub viewport: Option<[f64; 4]>,
    #[serde(default)]
    pub size: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Commands {
    pub dist: Option<DistCommand>,
    pub density: Option<DensityCommand>,
    pub finsler: Option<FinslerCommand>,
    #[serde(rename = "contract-check")]
    pub contract_check: Option<ContractCommand>,
    pub birkhoff: Option<BirkhoffCommand>,
    pub ifs: Option<IfsCommand>,
    pub render: Option<RenderCommand>,
}

/// The document as written.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub dimension: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub domains: BTreeMap<String, DomainSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<PrimitiveSpec>>,
    #[serde(default)]
    pub nestings: BTreeMap<String, NestingSpec>,
    #[serde(default)]
    pub ifs: BTreeMap<String, IfsSpec>,
    #[serde(default)]
    pub commands: Commands,
}

/// A validated scene with every named object constructed.
#[derive(Debug, Clone)]
pub struct Scene {
    pub dimension: usize,
    pub seed: u64,
    pub domains: BTreeMap<String, Domain>,
    pub maps: BTreeMap<String, ConformalMap>,
    pub nestings: BTreeMap<String, NestedPair>,
    pub ifs: BTreeMap<String, IfsSystem>,
    pub commands: Commands,
    /// Hex SHA-256 of the source bytes.
    pub hash: String,
}

pub const DEFAULT_SEED: u64 = 0;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Scene {
    pub fn from_json(text: &str) -> SceneResult<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: SceneFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            SceneError::new(if path == "." { String::new() } else { path }, e.into_inner())
        })?;
        Self::build(file, sha256_hex(text.as_bytes()))
    }

    pub fn from_path(path: &std::path::Path) -> SceneResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| SceneError::new("", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn build(file: SceneFile, hash: String) -> SceneResult<Self> {
        let n = file.dimension;
        if n == 0 {
            return Err(SceneError::new("dimension", Error::ZeroDimension));
        }
        let mut domains = BTreeMap::new();
        for (name, spec) in &file.domains {
            let path = format!("domains.{name}");
            domains.insert(name.clone(), build_domain(n, spec, &path)?);
        }
        let mut maps = BTreeMap::new();
        for (name, spec) in &file.maps {
            maps.insert(name.clone(), build_map(n, spec, &format!("maps.{name}"))?);
        }
        let mut nestings = BTreeMap::new();
        for (name, spec) in &file.nestings {
            let path = format!("nestings.{name}");
            let inner = lookup(&domains, &spec.inner, &format!("{path}.inner"))?;
            let outer = lookup(&domains, &spec.outer, &format!("{path}.outer"))?;
            let np = match &spec.samples {
                Some(samples) => {
                    let pts = samples
                        .iter()
                        .enumerate()
                        .map(|(i, p)| point(n, p, &format!("{path}.samples[{i}]")))
                        .collect::<SceneResult<Vec<_>>>()?;
                    NestedPair::with_samples(inner.clone(), outer.clone(), &pts)
                }
                None => NestedPair::new(inner.clone(), outer.clone()),
            }
            .map_err(|e| SceneError::new(&path, e))?;
            nestings.insert(name.clone(), np);
        }
        let mut ifs = BTreeMap::new();
        for (name, spec) in &file.ifs {
            let path = format!("ifs.{name}");
            let np = lookup(&nestings, &spec.nesting, &format!("{path}.nesting"))?;
            let generators = spec
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| lookup(&maps, g, &format!("{path}.generators[{i}]")).cloned())
                .collect::<SceneResult<Vec<_>>>()?;
            let sys = IfsSystem::new(np.clone(), generators).map_err(|e| SceneError::new(&path, e))?;
            ifs.insert(name.clone(), sys);
        }
        let scene = Self {
            dimension: n,
            seed: file.seed.unwrap_or(DEFAULT_SEED),
            domains,
            maps,
            nestings,
            ifs,
            commands: file.commands,
            hash,
        };
        scene.check_commands()?;
        Ok(scene)
    }

    /// Referential integrity of the command sections.
    fn check_commands(&self) -> SceneResult<()> {
        let c = &self.commands;
        if let Some(d) = &c.dist {
            lookup(&self.domains, &d.domain, "commands.dist.domain")?;
            for (i, (a, b)) in d.pairs.iter().enumerate() {
                point(self.dimension, a, &format!("commands.dist.pairs[{i}][0]"))?;
                point(self.dimension, b, &format!("commands.dist.pairs[{i}][1]"))?;
            }
        }
        if let Some(d) = &c.density {
            lookup(&self.domains, &d.domain, "commands.density.domain")?;
            vector(self.dimension, &d.grid.min, "commands.density.grid.min")?;
            vector(self.dimension, &d.grid.max, "commands.density.grid.max")?;
            if d.grid.steps < 2 {
                return Err(SceneError::new("commands.density.grid.steps", "need at least 2 steps"));
            }
        }
        if let Some(f) = &c.finsler {
            lookup(&self.domains, &f.domain, "commands.finsler.domain")?;
            for (i, p) in f.points.iter().enumerate() {
                point(self.dimension, p, &format!("commands.finsler.points[{i}]"))?;
            }
            for (i, h) in f.directions.iter().enumerate() {
                vector(self.dimension, h, &format!("commands.finsler.directions[{i}]"))?;
            }
        }
        if let Some(cc) = &c.contract_check {
            lookup(&self.nestings, &cc.nesting, "commands.contract-check.nesting")?;
            for (i, m) in cc.maps.iter().enumerate() {
                lookup(&self.maps, m, &format!("commands.contract-check.maps[{i}]"))?;
            }
        }
        if let Some(i) = &c.ifs {
            lookup(&self.ifs, &i.system, "commands.ifs.system")?;
        }
        if let Some(r) = &c.render {
            if let Some(d) = &r.domain {
                lookup(&self.domains, d, "commands.render.domain")?;
            }
            if let Some(s) = &r.ifs {
                lookup(&self.ifs, s, "commands.render.ifs")?;
            }
            for (i, b) in r.apollonian_balls.iter().enumerate() {
                vector(self.dimension, &b.a, &format!("commands.render.apollonian_balls[{i}].a"))?;
                vector(self.dimension, &b.b, &format!("commands.render.apollonian_balls[{i}].b"))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn lookup<'a, T>(table: &'a BTreeMap<String, T>, name: &str, path: &str) -> SceneResult<&'a T> {
    table.get(name).ok_or_else(|| SceneError::new(path, format!("unknown name `{name}`")))
}

pub(crate) fn vector(n: usize, coords: &[f64], path: &str) -> SceneResult<Vector> {
    if coords.len() != n {
        return Err(SceneError::new(path, Error::DimensionMismatch { expected: n, found: coords.len() }));
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(SceneError::new(path, Error::NonFiniteCoordinate("coordinate")));
    }
    Ok(Vector::from_column_slice(coords))
}

pub(crate) fn point(n: usize, spec: &PointSpec, path: &str) -> SceneResult<ExtendedPoint> {
    match spec {
        PointSpec::Coords(c) => vector(n, c, path).map(ExtendedPoint::Finite),
        PointSpec::Named(s) if s == "inf" => Ok(ExtendedPoint::Infinity),
        PointSpec::Named(s) => Err(SceneError::new(path, format!("expected coordinates or \"inf\", found \"{s}\""))),
    }
}

fn build_domain(n: usize, spec: &DomainSpec, path: &str) -> SceneResult<Domain> {
    let obstacles = spec
        .obstacles
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let p = format!("{path}.obstacles[{i}]");
            let built = match o {
                ObstacleSpec::Ball { center, radius } => Obstacle::ball(vector(n, center, &p)?, *radius),
                ObstacleSpec::BallExterior { center, radius } => Obstacle::ball_exterior(vector(n, center, &p)?, *radius),
                ObstacleSpec::HalfSpace { normal, offset } => Obstacle::half_space(vector(n, normal, &p)?, *offset),
                ObstacleSpec::Point(q) => Ok(Obstacle::point(point(n, q, &p)?)),
            };
            built.map_err(|e| SceneError::new(&p, e))
        })
        .collect::<SceneResult<Vec<_>>>()?;
    let witness = point(n, &spec.witness, &format!("{path}.witness"))?;
    Domain::new(n, obstacles, witness).map_err(|e| SceneError::new(path, e))
}

fn build_map(n: usize, spec: &[PrimitiveSpec], path: &str) -> SceneResult<ConformalMap> {
    let mut primitives = Vec::new();
    for (i, p) in spec.iter().enumerate() {
        let pp = format!("{path}[{i}]");
        match p {
            PrimitiveSpec::Translation(t) => primitives.push(Primitive::Translation(vector(n, t, &pp)?)),
            PrimitiveSpec::Orthogonal(rows) => {
                if rows.len() != n {
                    return Err(SceneError::new(&pp, Error::DimensionMismatch { expected: n, found: rows.len() }));
                }
                for (r, row) in rows.iter().enumerate() {
                    vector(n, row, &format!("{pp}[{r}]"))?;
                }
                primitives.push(Primitive::Orthogonal(Matrix::from_fn(n, n, |r, c| rows[r][c])));
            }
            PrimitiveSpec::Rotation(angle) => {
                if n != 2 {
                    return Err(SceneError::new(&pp, "rotation needs dimension 2"));
                }
                let (s, c) = angle.sin_cos();
                primitives.push(Primitive::Orthogonal(Matrix::from_row_slice(2, 2, &[c, -s, s, c])));
            }
            PrimitiveSpec::Homothety(f) => primitives.push(Primitive::Homothety(*f)),
            PrimitiveSpec::Inversion => primitives.push(Primitive::Inversion),
            PrimitiveSpec::SphereInversion { center, radius } => {
                let m = ConformalMap::sphere_inversion(&vector(n, center, &pp)?, *radius)
                    .map_err(|e| SceneError::new(&pp, e))?;
                primitives.extend(m.primitives().iter().cloned());
            }
        }
    }
    ConformalMap::new(n, primitives).map_err(|e| SceneError::new(path, e))
}
