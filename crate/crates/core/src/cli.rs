//! The `apollon` command line: one subcommand per capability, driven by a
//! JSON scene file.
//!
//! Exit codes are 0 when every check passes, 1 when a check fails, and 2 for
//! unusable input. Reports go to stdout and, with `--out`, into files; all
//! output is a pure function of the scene bytes and the flags.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::apollonian::{apollonian_distance, conformal_density, finsler_norm, inner_path_length, PathPolyline};
use crate::contraction::{
    birkhoff_grid_check, lipschitz_report, verify_density_contraction, verify_finsler_contraction,
    verify_path_contraction, verify_ucp, ContractionReport, NestedPair, PathMetric, CONTRACTION_TOL, ZERO_DISTANCE,
};
use crate::error::Error;
use crate::extgeom::{apollonian_ball, ExtendedPoint, Vector};
use crate::fractal::{box_count, BoxCount, CylinderCover};
use crate::sampling;
use crate::scene::{self, Scene, SceneError};
use crate::svg::{SvgDocument, Viewport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const DEFAULT_SAMPLES: usize = 1000;
const DEFAULT_IFS_DEPTH: usize = 8;
const DEFAULT_RENDER_DEPTH: usize = 6;
const DEFAULT_BIRKHOFF_GRID: usize = 401;
const PATH_QUADRATURE_ORDER: usize = 16;
const MAX_PATHS: usize = 50;
const MAX_GRID_POINTS: usize = 1_000_000;
/// Allowed excess of the box-counting slope over the dimension bound.
const SLOPE_SLACK: f64 = 0.1;

#[derive(Debug, Parser)]
#[command(name = "apollon", version, about = "Apollonian metric geometry on scene files")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Apollonian distances between listed point pairs
    Dist,
    /// Conformal density on a grid
    Density,
    /// Finsler norms at listed points and directions
    Finsler,
    /// Uniform contraction and its corollaries on a nesting
    ContractCheck,
    /// One-dimensional Birkhoff grid check
    Birkhoff,
    /// Limit-set cover, dimension bound, and box counting
    Ifs,
    /// SVG drawing of a planar scene
    Render,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Dist => "dist",
            Self::Density => "density",
            Self::Finsler => "finsler",
            Self::ContractCheck => "contract-check",
            Self::Birkhoff => "birkhoff",
            Self::Ifs => "ifs",
            Self::Render => "render",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Scene JSON file
    #[arg(long, global = true)]
    pub scene: Option<PathBuf>,
    /// Directory for report, CSV, and SVG files
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Overrides the scene seed
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Overrides sample counts
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Overrides cover depths
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Overrides the tolerance of contraction checks; a negative value demands a margin
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: String,
    /// File name and contents, written under `--out`.
    pub files: Vec<(String, String)>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Scene(SceneError),
    Input(String),
    Library(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Scene(e) => write!(f, "scene error at {e}"),
            Self::Input(m) => f.write_str(m),
            Self::Library(e) => write!(f, "{e}"),
        }
    }
}

impl From<SceneError> for CliError {
    fn from(e: SceneError) -> Self {
        Self::Scene(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Library(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses arguments, runs the command, writes outputs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    match run_cli(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            if outcome.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("apollon: {e}");
            EXIT_INPUT
        }
    }
}

fn run_cli(cli: &Cli) -> CliResult<Outcome> {
    let path = cli.options.scene.as_deref().ok_or_else(|| CliError::Input("--scene is required".into()))?;
    let scene = Scene::from_path(path)?;
    let outcome = execute(cli.command, &cli.options, &scene)?;
    if let Some(dir) = &cli.options.out {
        write_outputs(dir, cli.command, &outcome).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    }
    Ok(outcome)
}

fn write_outputs(dir: &Path, command: Command, outcome: &Outcome) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(format!("{}.txt", command.name())), &outcome.report)?;
    for (name, body) in &outcome.files {
        std::fs::write(dir.join(name), body)?;
    }
    Ok(())
}

/// Runs one command against a parsed scene.
pub fn execute(command: Command, opts: &Options, scene: &Scene) -> CliResult<Outcome> {
    let mut r = Report::new(command, scene, opts.seed.unwrap_or(scene.seed));
    let (files, pass) = match command {
        Command::Dist => dist(scene, &mut r)?,
        Command::Density => density(scene, &mut r)?,
        Command::Finsler => finsler(scene, &mut r)?,
        Command::ContractCheck => contract_check(scene, opts, &mut r)?,
        Command::Birkhoff => birkhoff(scene, &mut r)?,
        Command::Ifs => ifs(scene, opts, &mut r)?,
        Command::Render => render(scene, opts, &mut r)?,
    };
    r.line(format!("result {}", if pass { "PASS" } else { "FAIL" }));
    Ok(Outcome { report: r.text, files, pass })
}

struct Report {
    text: String,
    seed: u64,
}

impl Report {
    fn new(command: Command, scene: &Scene, seed: u64) -> Self {
        let mut text = String::new();
        let _ = writeln!(text, "apollon {} {}", env!("CARGO_PKG_VERSION"), command.name());
        let _ = writeln!(text, "scene-sha256 {}", scene.hash);
        let _ = writeln!(text, "seed {seed}");
        Self { text, seed }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn contraction(&mut self, c: &ContractionReport) {
        self.line(c.to_string());
    }
}

fn num(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else {
        format!("{x:.12}")
    }
}

fn point_str(p: &ExtendedPoint) -> String {
    match p {
        ExtendedPoint::Infinity => "inf".into(),
        ExtendedPoint::Finite(v) => format!("({})", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")),
    }
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> CliResult<&'a T> {
    s.as_ref().ok_or_else(|| CliError::Input(format!("scene has no commands.{name} section")))
}

fn dist(scene: &Scene, r: &mut Report) -> CliResult<(Vec<(String, String)>, bool)> {
    let cmd = section(&scene.commands.dist, "dist")?;
    let d = &scene.domains[&cmd.domain];
    r.line(format!("domain {}", cmd.domain));
    for (i, (a, b)) in cmd.pairs.iter().enumerate() {
        let a = scene::point(scene.dimension, a, "")?;
        let b = scene::point(scene.dimension, b, "")?;
        let value = apollonian_distance(d, &a, &b)?;
        r.line(format!("pair {i} {} {} d = {}", point_str(&a), point_str(&b), num(value)));
    }
    Ok((Vec::new(), true))
}

fn density(scene: &Scene, r: &mut Report) -> CliResult<(Vec<(String, String)>, bool)> {
    let cmd = section(&scene.commands.density, "density")?;
    let d = &scene.domains[&cmd.domain];
    let n = scene.dimension;
    let steps = cmd.grid.steps;
    let total = (steps as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_GRID_POINTS as u128 {
        return Err(CliError::Input(format!("density grid has {total} points, more than {MAX_GRID_POINTS}")));
    }
    let mut csv = String::new();
    let header: Vec<String> = (0..n).map(|i| format!("x{i}")).chain(["density".to_owned()]).collect();
    let _ = writeln!(csv, "{}", header.join(","));
    let (mut inside, mut outside, mut boundary) = (0usize, 0usize, 0usize);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for idx in 0..total as usize {
        let mut rem = idx;
        let x = Vector::from_fn(n, |axis, _| {
            let k = rem % steps;
            rem /= steps;
            let t = k as f64 / (steps - 1) as f64;
            cmd.grid.min[axis] + t * (cmd.grid.max[axis] - cmd.grid.min[axis])
        });
        let p = ExtendedPoint::Finite(x.clone());
        if !d.contains(&p) {
            outside += 1;
            continue;
        }
        // Points on the boundary up to rounding have no bounded inverted complement.
        let g = match conformal_density(d, &p) {
            Ok(g) => g,
            Err(Error::OutsideDomain(_)) => {
                boundary += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        inside += 1;
        lo = lo.min(g);
        hi = hi.max(g);
        let row: Vec<String> = x.iter().map(|c| c.to_string()).chain([g.to_string()]).collect();
        let _ = writeln!(csv, "{}", row.join(","));
    }
    r.line(format!("domain {}", cmd.domain));
    r.line(format!("grid points {total} inside {inside} outside {outside} boundary {boundary}"));
    if inside > 0 {
        r.line(format!("density min {} max {}", num(lo), num(hi)));
    }
    Ok((vec![("density.csv".into(), csv)], true))
}

fn finsler(scene: &Scene, r: &mut Report) -> CliResult<(Vec<(String, String)>, bool)> {
    let cmd = section(&scene.commands.finsler, "finsler")?;
    let d = &scene.domains[&cmd.domain];
    r.line(format!("domain {}", cmd.domain));
    let mut pass = true;
    for (i, spec) in cmd.points.iter().enumerate() {
        let x = scene::point(scene.dimension, spec, "")?;
        let g = conformal_density(d, &x)?;
        r.line(format!("point {i} {} density {}", point_str(&x), num(g)));
        for (j, h) in cmd.directions.iter().enumerate() {
            let h = scene::vector(scene.dimension, h, "")?;
            let p = finsler_norm(d, &x, &h)?;
            let cap = g * h.norm();
            let ok = p <= cap * (1.0 + 1e-12) + 1e-12;
            pass &= ok;
            r.line(format!("  direction {j} p = {} density*|h| = {} {}", num(p), num(cap), if ok { "ok" } else { "VIOLATION" }));
        }
    }
    Ok((Vec::new(), pass))
}

/// Random three-vertex polylines inside the inner domain.
fn sample_paths(np: &NestedPair, rng: &mut rand_chacha::ChaCha8Rng, count: usize) -> CliResult<Vec<PathPolyline>> {
    let pts = sampling::sample_domain(np.inner(), rng, 3 * count, 0.0)?;
    let mut paths = Vec::new();
    for c in pts.chunks_exact(3) {
        let path = PathPolyline::new(c.to_vec())?;
        match inner_path_length(np.inner(), &path, PATH_QUADRATURE_ORDER) {
            Ok(_) => paths.push(path),
            Err(Error::PathLeavesDomain { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(paths)
}

fn contract_check(scene: &Scene, opts: &Options, r: &mut Report) -> CliResult<(Vec<(String, String)>, bool)> {
    let cmd = section(&scene.commands.contract_check, "contract-check")?;
    let np = &scene.nestings[&cmd.nesting];
    let samples = opts.samples.or(cmd.samples).unwrap_or(DEFAULT_SAMPLES).max(1);
    let tol = opts.tol.or(cmd.tolerance).unwrap_or(CONTRACTION_TOL);
    let delta = np.delta();
    let mut rng = sampling::seeded(r.seed);
    r.line(format!("nesting {}", cmd.nesting));
    r.line(format!("delta {} ({})", num(delta.value), delta.provenance));
    r.line(format!("bound {}", num(delta.coefficient)));
    r.line(format!("samples {samples} tolerance {tol:e}"));

    let pairs = sampling::sample_pairs(np.inner(), &mut rng, samples, 0.0)?;
    if !delta.is_certified() {
        // Without a certified diameter the bound side is unknown; report only.
        let mut max_ratio = 0.0f64;
        for (a, b) in &pairs {
            let du = apollonian_distance(np.inner(), a, b)?;
            if du > ZERO_DISTANCE {
                max_ratio = max_ratio.max(apollonian_distance(np.outer(), a, b)? / du);
            }
        }
        r.line(format!("advisory: sampled lower bound, not certifying; max ratio {}", num(max_ratio)));
        return Ok((Vec::new(), true));
    }

    let mut reports = vec![verify_ucp(np, &pairs)?];
    let points = sampling::sample_domain(np.inner(), &mut rng, samples, 0.0)?;
    let finsler_samples: Vec<(ExtendedPoint, Vector)> = points
        .iter()
        .map(|x| (ExtendedPoint::Finite(x.clone()), sampling::unit_vector(&mut rng, scene.dimension)))
        .collect();
    reports.push(verify_finsler_contraction(np, &finsler_samples)?);
    let density_points: Vec<ExtendedPoint> = points.into_iter().map(ExtendedPoint::Finite).collect();
    reports.push(verify_density_contraction(np, &density_points)?);
    let paths = sample_paths(np, &mut rng, samples.min(MAX_PATHS))?;
    reports.push(verify_path_contraction(np, &paths, PATH_QUADRATURE_ORDER, PathMetric::Inner)?);
    reports.push(verify_path_contraction(np, &paths, PATH_QUADRATURE_ORDER, PathMetric::Riemann)?);
    for name in &cmd.maps {
        let m = &scene.maps[name];
        let outer_pairs = sampling::sample_pairs(np.outer(), &mut rng, samples, 0.0)?;
        let mut rep = lipschitz_report(m, np, &outer_pairs)?;
        rep.label = format!("lipschitz {name}");
        reports.push(rep);
    }
    let mut pass = true;
    for rep in reports {
        let rep = rep.with_tolerance(tol);
        pass &= rep.pass;
        r.contraction(&rep);
    }
    Ok((Vec::new(), pass))
}

fn birkhoff(scene: &Scene, r: &mut Report) -> CliResult<(Vec<(String, String)>, bool)> {
    let cmd = section(&scene.commands.birkhoff, "birkhoff")?;
    let (a1, a2) = cmd.interval;
    let rep = birkhoff_grid_check(a1, a2, cmd.grid.unwrap_or(DEFAULT_BIRKHOFF_GRID))?;
    r.line(format!("interval ({a1}, {a2}) grid {}", rep.grid));
    r.line(format!("theta {}", num(rep.theta)));
    r.line(format!("max ratio {} at ({}, {})", num(rep.max_ratio), num(rep.argmax_pair.0), num(rep.argmax_pair.1)));
    r.line(format!(
        "infinitesimal ratio max {} at s = {} (sqrt(a1 a2) = {})",
        num(rep.max_infinitesimal_ratio),
        num(rep.argmax_diagonal),
        num((a1 * a2).sqrt())
    ));
    Ok((Vec::new(), rep.pass))
}

/// Scales `R 2^{-j/4}` from an eighth of the normalized outer radius down to
/// four cell diameters, below which the finite cover saturates the counts.
/// `None` when that range is shorter than a decade.
pub fn default_scales(cover: &CylinderCover) -> Option<Vec<f64>> {
    let dmax = cover.cells.iter().map(|c| 2.0 * c.radius).fold(0.0, f64::max);
    let ratio = cover.outer_radius / (4.0 * dmax);
    if !ratio.is_finite() {
        return None;
    }
    let hi = (4.0 * ratio.log2()).floor() as i32;
    (hi >= 12 + 14).then(|| (12..=hi).map(|j| cover.outer_radius * 2f64.powf(-j as f64 / 4.0)).collect())
}

fn ifs(scene: &Scene, opts: &Options, r: &mut Report) -> CliResult<(Vec<(String, String)>, bool)> {
    let cmd = section(&scene.commands.ifs, "ifs")?;
    let sys = &scene.ifs[&cmd.system];
    let depth = opts.depth.or(cmd.depth).unwrap_or(DEFAULT_IFS_DEPTH);
    let cover = sys.limit_cover(depth)?;
    let law = cover.check_diameter_law()?;
    let dim_bound = sys.dimension_bound()?;

    let mut csv = String::new();
    let coords: Vec<String> = (0..scene.dimension).map(|i| format!("center{i}")).collect();
    let _ = writeln!(csv, "word,{},euclidean_radius,apollonian_diameter_bound", coords.join(","));
    for cell in cover.cells() {
        let c: Vec<String> = cell.center.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(csv, "{},{},{},{}", cell.word_label(), c.join(","), cell.radius, cover.bound);
    }

    r.line(format!("system {} generators {} depth {depth}", cmd.system, sys.generators().len()));
    r.line(format!("delta {} coefficient {}", num(sys.delta()), num(sys.coefficient())));
    r.line(format!("cells {}", cover.cells.len()));
    r.line(format!("diameter bound r {}", num(cover.bound)));
    r.line(format!(
        "diameter law {} max apollonian {} euclidean max {} bound {}",
        if law.pass { "PASS" } else { "FAIL" },
        num(law.max_apollonian),
        num(law.max_euclidean),
        num(law.euclidean_bound)
    ));
    r.line(format!("dimension bound {}", num(dim_bound)));
    let mut pass = law.pass;
    let scales = cmd.scales.clone().or_else(|| default_scales(&cover));
    match scales {
        Some(scales) => {
            let BoxCount { counts, slope, residual } = box_count(&cover.centers(), &scales)?;
            for (s, n) in &counts {
                r.line(format!("  scale {s:e} boxes {n}"));
            }
            let ok = slope <= dim_bound + SLOPE_SLACK;
            pass &= ok;
            r.line(format!("box-count slope {} residual {} {}", num(slope), num(residual), if ok { "ok" } else { "ABOVE BOUND" }));
        }
        None => r.line("box-count skipped: cover too coarse for a decade of scales"),
    }
    Ok((vec![("ifs.csv".into(), csv)], pass))
}

fn render(scene: &Scene, opts: &Options, r: &mut Report) -> CliResult<(Vec<(String, String)>, bool)> {
    let cmd = section(&scene.commands.render, "render")?;
    if scene.dimension != 2 {
        return Err(CliError::Input(format!("render needs dimension 2, scene has {}", scene.dimension)));
    }
    let view = Viewport::new(cmd.viewport.unwrap_or([-1.5, -1.5, 1.5, 1.5]), cmd.size.unwrap_or(600))
        .ok_or_else(|| CliError::Input("commands.render.viewport must have xmin < xmax and ymin < ymax".into()))?;
    let mut doc = SvgDocument::new(view);
    let mut header = vec![
        format!("apollon {} render", env!("CARGO_PKG_VERSION")),
        format!("scene-sha256 {}", scene.hash),
        format!("seed {}", r.seed),
    ];
    if let Some(name) = &cmd.domain {
        let d = &scene.domains[name];
        doc.comment(&format!("domain {name}"));
        for o in d.obstacles() {
            doc.obstacle(o, "#c8c8c8");
        }
        let count = opts.samples.or(cmd.samples).unwrap_or(200);
        let pts = sampling::sample_domain(d, &mut sampling::seeded(r.seed), count, 0.0)?;
        for p in &pts {
            doc.point(p, 1.5, "#1f5fbf");
        }
        r.line(format!("domain {name} obstacles {} samples {}", d.obstacles().len(), pts.len()));
    }
    for (i, b) in cmd.apollonian_balls.iter().enumerate() {
        let a = ExtendedPoint::Finite(scene::vector(2, &b.a, "")?);
        let c = ExtendedPoint::Finite(scene::vector(2, &b.b, "")?);
        let region = apollonian_ball(&a, &c, b.alpha)?;
        doc.outline(&region, "#c0392b");
        r.line(format!("apollonian ball {i} alpha {}", b.alpha));
    }
    if let Some(name) = &cmd.ifs {
        let sys = &scene.ifs[name];
        let depth = opts.depth.or(cmd.depth).unwrap_or(DEFAULT_RENDER_DEPTH);
        let cover = sys.limit_cover(depth)?;
        if !sys.normalizer().is_identity() {
            header.push("limit set drawn in normalized coordinates".into());
        }
        doc.comment(&format!("limit set {name} depth {depth}"));
        for cell in cover.cells() {
            doc.disk(&cell.center, cell.radius, "#222222");
        }
        r.line(format!("limit set {name} depth {depth} cells {}", cover.cells.len()));
    }
    let svg = doc.finish(&header);
    if opts.out.is_none() {
        r.line("svg");
        r.text.push_str(&svg);
    }
    Ok((vec![("render.svg".into(), svg)], true))
}
