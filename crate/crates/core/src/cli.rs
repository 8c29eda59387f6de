//! Command-line front end. Every verb produces a table written as CSV with
//! `#` metadata lines, or as one JSON object with `meta` and `data`.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::continuum::{energy_eigenstates, EnergyEigenstate, Sign};
use crate::convergence::{converge_commutator, converge_energy, converge_momentum, DEFAULT_N_LIST};
use crate::eigensolver::{eigh_tridiagonal_with, EigenOptions, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::lattice::{
    build_hamiltonian_with_stencil, build_p_r, BoundaryStencil, LatticeGrid, MomentumExtension, PhysicalConfig,
    RobinParams,
};
use crate::measurement::{
    dirichlet_distribution, fourier_density, general_distribution, neumann_ground_distribution, p_expectations,
    MomentumDistribution, OverlapRule,
};
use crate::quantization::{solve_energy_continuum, solve_energy_lattice, solve_momentum_continuum, solve_momentum_lattice};
use crate::selfcheck::run_selfcheck;

#[derive(Debug, Parser)]
#[command(name = "box-momentum", version, about = "Spectra and momentum statistics of a particle in a 1-d box")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels from the continuum root finder, the lattice eigensolver or the lattice roots.
    Spectrum(SpectrumArgs),
    /// Momentum quantization roots, with an eigensolver cross-check on the lattice.
    Momentum(MomentumArgs),
    /// Outcome distribution of a p_R measurement on an energy eigenstate.
    Measure(MeasureArgs),
    /// Continuum-limit convergence study.
    Converge(ConvergeArgs),
    /// Density of the standard (Fourier) momentum.
    Fourier(FourierArgs),
    /// Run the invariant suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bc {
    Robin,
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StencilArg {
    Midpoint,
    WallCentered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Energy,
    Momentum,
    Commutator,
}

/// Parameters shared by every verb. Flags override `--config`; unset values
/// take the documented defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// JSON file with any of the parameter names below (snake_case).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output format [default: csv, json for converge].
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Particle mass [default: 1].
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// Box length L [default: 1].
    #[arg(long, allow_negative_numbers = true)]
    pub length: Option<f64>,
    /// Seed for the inverse-iteration start vectors [default: 0x5eedb0c5].
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Wall parameters. `--gamma` alone selects Robin walls.
#[derive(Debug, Clone, Default, Args)]
pub struct Walls {
    /// Boundary condition [default: robin when --gamma is given, else dirichlet].
    #[arg(long, value_enum)]
    pub bc: Option<Bc>,
    /// Robin parameters gamma_+ gamma_-.
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["PLUS", "MINUS"])]
    pub gamma: Option<Vec<f64>>,
    /// Lattice corner stencil [default: midpoint].
    #[arg(long, value_enum)]
    pub stencil: Option<StencilArg>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Extension {
    /// Momentum extension lambda_+- = i ell_+- [default: 1 1].
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["PLUS", "MINUS"])]
    pub ell: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub walls: Walls,
    /// Lattice sites (odd); selects the lattice eigensolver.
    #[arg(long = "sites", visible_alias = "N")]
    pub sites: Option<usize>,
    /// Number of levels [default: 5].
    #[arg(long)]
    pub levels: Option<usize>,
    /// Also solve the lattice quantization condition and report the agreement.
    #[arg(long)]
    pub compare: bool,
    /// Only report levels with E < 0.
    #[arg(long)]
    pub bound_states: bool,
}

#[derive(Debug, Clone, Args)]
pub struct MomentumArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub ext: Extension,
    /// Lattice sites (odd); selects the lattice condition.
    #[arg(long = "sites", visible_alias = "N")]
    pub sites: Option<usize>,
    /// Continuum window |k| <= k_max [default: 10 pi / L].
    #[arg(long)]
    pub k_max: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub walls: Walls,
    #[command(flatten)]
    pub ext: Extension,
    /// Energy level: Dirichlet labels from 1, Neumann from 0, otherwise the
    /// l-th lowest level [default: 1, 0 for neumann].
    #[arg(long)]
    pub level: Option<i64>,
    /// Outcomes with |n| <= cutoff_n are listed [default: 1000].
    #[arg(long)]
    pub cutoff_n: Option<i64>,
    /// Overlap evaluation for Robin states [default: analytic].
    #[arg(long, value_enum)]
    pub rule: Option<RuleArg>,
    /// Lattice sites for <p_R> and <p_I> [default: 999].
    #[arg(long = "sites", visible_alias = "N")]
    pub sites: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleArg {
    Analytic,
    Quadrature,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub walls: Walls,
    #[command(flatten)]
    pub ext: Extension,
    /// Quantity to converge [default: energy].
    #[arg(long, value_enum)]
    pub observable: Option<Observable>,
    /// Energy level (1-based, ascending) [default: 1].
    #[arg(long)]
    pub level: Option<usize>,
    /// Momentum root label [default: 1].
    #[arg(long, allow_negative_numbers = true)]
    pub label: Option<i64>,
    /// Momentum eigenvectors per sign used for the commutator [default: 2].
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Lattice sizes, odd and ascending [default: 27 81 243 729].
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct FourierArgs {
    #[command(flatten)]
    pub common: Common,
    /// dirichlet or neumann [default: dirichlet].
    #[arg(long, value_enum)]
    pub bc: Option<Bc>,
    /// Energy level [default: 1, 0 for neumann].
    #[arg(long)]
    pub level: Option<i64>,
    /// Integration cutoff K [default: 200 pi / L].
    #[arg(long)]
    pub cutoff_k: Option<f64>,
    /// Number of density samples over [-K, K] [default: 2001].
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SelfcheckArgs {
    #[command(flatten)]
    pub common: Common,
}

/// Parameter file read by `--config`. Every field is optional.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mass: Option<f64>,
    pub length: Option<f64>,
    pub sites: Option<usize>,
    pub bc: Option<Bc>,
    pub gamma: Option<[f64; 2]>,
    pub stencil: Option<StencilArg>,
    pub ell: Option<[f64; 2]>,
    pub level: Option<i64>,
    pub levels: Option<usize>,
    pub label: Option<i64>,
    pub n_max: Option<usize>,
    pub cutoff_n: Option<i64>,
    pub cutoff_k: Option<f64>,
    pub samples: Option<usize>,
    pub k_max: Option<f64>,
    pub n_list: Option<Vec<usize>>,
    pub observable: Option<Observable>,
    pub rule: Option<RuleArg>,
    pub compare: Option<bool>,
    pub bound_states: Option<bool>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

fn pair(v: &Option<Vec<f64>>) -> Option<[f64; 2]> {
    v.as_ref().map(|v| [v[0], v[1]])
}

/// Merged view of flags and the config file.
struct Resolved {
    file: RunConfig,
    common: Common,
}

impl Resolved {
    fn new(common: &Common) -> Result<Self> {
        let file = match &common.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        Ok(Self { file, common: common.clone() })
    }

    fn cfg(&self) -> Result<PhysicalConfig> {
        PhysicalConfig::new(
            self.common.mass.or(self.file.mass).unwrap_or(1.0),
            self.common.length.or(self.file.length).unwrap_or(1.0),
        )
    }

    fn seed(&self) -> u64 {
        self.common.seed.or(self.file.seed).unwrap_or(DEFAULT_SEED)
    }

    fn format(&self, default: Format) -> Format {
        self.common.format.or(self.file.format).unwrap_or(default)
    }

    fn robin(&self, walls: &Walls) -> Result<(Bc, RobinParams)> {
        let gamma = pair(&walls.gamma).or(self.file.gamma);
        let bc = walls.bc.or(self.file.bc).unwrap_or(if gamma.is_some() { Bc::Robin } else { Bc::Dirichlet });
        let robin = match bc {
            Bc::Dirichlet => RobinParams::dirichlet(),
            Bc::Neumann => RobinParams::neumann(),
            Bc::Robin => {
                let [p, m] = gamma.ok_or_else(|| Error::Config("--bc robin needs --gamma PLUS MINUS".into()))?;
                RobinParams::new(p, m)?
            }
        };
        Ok((bc, robin))
    }

    fn stencil(&self, walls: &Walls) -> BoundaryStencil {
        match walls.stencil.or(self.file.stencil).unwrap_or(StencilArg::Midpoint) {
            StencilArg::Midpoint => BoundaryStencil::Midpoint,
            StencilArg::WallCentered => BoundaryStencil::WallCentered,
        }
    }

    fn ext(&self, ext: &Extension) -> Result<MomentumExtension> {
        let [p, m] = pair(&ext.ell).or(self.file.ell).unwrap_or([1.0, 1.0]);
        if !p.is_finite() || !m.is_finite() {
            return Err(Error::Config(format!("ell must be finite, got {p} {m}")));
        }
        Ok(MomentumExtension::new(p, m))
    }

    fn grid(&self, sites: Option<usize>, default: Option<usize>) -> Result<Option<LatticeGrid>> {
        match sites.or(self.file.sites).or(default) {
            Some(n) => Ok(Some(LatticeGrid::new(n, self.cfg()?.box_length)?)),
            None => Ok(None),
        }
    }
}

fn positive_count(name: &str, v: i64) -> Result<i64> {
    if v <= 0 {
        return Err(Error::Config(format!("{name} must be positive, got {v}")));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt17(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// 17 significant digits; non-finite values as `inf`, `-inf`, `nan`.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(fmt17(v))
    }
}

/// Result of one command before rendering.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Replaces the row list under `data` in JSON output.
    pub json_data: Option<Value>,
    /// Human summary lines (6 significant digits), printed to stderr.
    pub summary: Vec<String>,
    /// Numerical failure to report after writing the output.
    pub failed: bool,
}

impl Table {
    fn new(command: &str, columns: Vec<&'static str>) -> Self {
        Self {
            meta: vec![("command".into(), json!(command))],
            columns,
            rows: Vec::new(),
            json_data: None,
            summary: Vec::new(),
            failed: false,
        }
    }

    fn meta(&mut self, key: &str, value: Value) {
        self.meta.push((key.into(), value));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells"));
        out
    }

    pub fn to_json(&self) -> String {
        let meta: Map<String, Value> = self.meta.iter().cloned().collect();
        let data = self.json_data.clone().unwrap_or_else(|| {
            Value::Array(
                self.rows
                    .iter()
                    .map(|r| Value::Object(self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect()))
                    .collect(),
            )
        });
        let mut s = serde_json::to_string_pretty(&json!({ "meta": meta, "data": data })).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn sig6(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.5e}")
    } else {
        fmt17(v)
    }
}

fn cfg_meta(t: &mut Table, cfg: &PhysicalConfig) {
    t.meta("mass", num(cfg.mass));
    t.meta("length", num(cfg.box_length));
}

fn robin_meta(t: &mut Table, bc: Bc, robin: &RobinParams) {
    t.meta("bc", json!(bc));
    t.meta("robin", serde_json::to_value(robin).expect("serializable"));
}

fn spectrum(args: &SpectrumArgs) -> Result<(Table, Format)> {
    let r = Resolved::new(&args.common)?;
    let cfg = r.cfg()?;
    let (bc, robin) = r.robin(&args.walls)?;
    let stencil = r.stencil(&args.walls);
    let levels = args.levels.or(r.file.levels).unwrap_or(5);
    if levels == 0 {
        return Err(Error::Config("levels must be positive".into()));
    }
    let compare = args.compare || r.file.compare.unwrap_or(false);
    let bound_only = args.bound_states || r.file.bound_states.unwrap_or(false);
    let grid = r.grid(args.sites, None)?;
    if compare && grid.is_none() {
        return Err(Error::Config("--compare needs --N".into()));
    }

    let mut t = Table::new("spectrum", vec!["index", "k_or_kappa", "E", "residual", "method", "agreement"]);
    cfg_meta(&mut t, &cfg);
    robin_meta(&mut t, bc, &robin);
    t.meta("levels", json!(levels));
    t.meta("bound_states_only", json!(bound_only));

    // (k or kappa, E, residual) per level
    let rows: Vec<(&str, Vec<(f64, f64, f64)>)> = match &grid {
        None => {
            let mut k_max = PI * (levels as f64 + 1.0) / cfg.box_length;
            let set = loop {
                let set = solve_energy_continuum(&cfg, &robin, Some(k_max))?;
                if set.energy_levels().len() >= levels {
                    break set;
                }
                k_max *= 2.0;
            };
            vec![("continuum_root", energy_rows(&set))]
        }
        Some(grid) => {
            t.meta("sites", json!(grid.num_sites()));
            t.meta("stencil", json!(stencil));
            t.meta("seed", json!(r.seed()));
            let n = grid.num_sites();
            let h = build_hamiltonian_with_stencil(grid, &cfg, &robin, &vec![0.0; n], stencil)?;
            let count = levels.min(n);
            let opts = EigenOptions {
                want_vectors: true,
                weight: grid.spacing(),
                seed: r.seed(),
                index_range: Some((0, count)),
            };
            let spec = eigh_tridiagonal_with(&h, &opts)?;
            let res = spec.residuals.clone().unwrap_or_default();
            let eig: Vec<(f64, f64, f64)> = spec
                .eigenvalues
                .iter()
                .zip(&res)
                .map(|(&e, &rr)| (lattice_k(e, &cfg, grid.spacing()), e, rr))
                .collect();
            let mut out = vec![("lattice_eig", eig)];
            if compare {
                if stencil != BoundaryStencil::Midpoint {
                    return Err(Error::Config("--compare uses the midpoint stencil".into()));
                }
                let set = solve_energy_lattice(grid, &cfg, &robin, None)?;
                out.push(("lattice_root", energy_rows(&set).into_iter().take(count).collect()));
            }
            out
        }
    };

    let mut worst: f64 = 0.0;
    for (method, list) in &rows {
        for (i, &(k, e, res)) in list.iter().take(levels).enumerate() {
            if bound_only && e >= 0.0 {
                continue;
            }
            let agreement = if compare {
                let other = &rows[if *method == "lattice_eig" { 1 } else { 0 }].1;
                match other.get(i) {
                    Some(o) => {
                        let d = (o.1 - e).abs();
                        worst = worst.max(d);
                        Cell::Num(d)
                    }
                    None => Cell::Empty,
                }
            } else {
                Cell::Empty
            };
            t.rows.push(vec![Cell::Int(i as i64 + 1), Cell::Num(k), Cell::Num(e), Cell::Num(res), Cell::Text((*method).into()), agreement]);
        }
    }
    if compare {
        t.meta("max_agreement", num(worst));
        t.summary.push(format!("max |E_eig - E_root| = {}", sig6(worst)));
    }
    t.summary.push(format!("{} rows", t.rows.len()));
    Ok((t, r.format(Format::Csv)))
}

/// `k` from a lattice energy through `E = (2/a sin(ka/2))^2 / 2m`, or `kappa`
/// through the `sinh` branch when `E < 0`.
fn lattice_k(e: f64, cfg: &PhysicalConfig, a: f64) -> f64 {
    let s = (2.0 * cfg.mass * e.abs()).sqrt() * a / 2.0;
    if e >= 0.0 {
        2.0 / a * s.min(1.0).asin()
    } else {
        2.0 / a * s.asinh()
    }
}

fn energy_rows(set: &crate::quantization::RootSet) -> Vec<(f64, f64, f64)> {
    let mut out: Vec<(f64, f64, f64)> = set.bound_roots.iter().map(|b| (b.kappa, b.energy, b.residual)).collect();
    if set.zero_mode {
        out.push((0.0, 0.0, 0.0));
    }
    out.extend(set.real_roots.iter().map(|r| (r.k, r.value, r.residual)));
    out
}

fn momentum(args: &MomentumArgs) -> Result<(Table, Format)> {
    let r = Resolved::new(&args.common)?;
    let cfg = r.cfg()?;
    let ext = r.ext(&args.ext)?;
    let grid = r.grid(args.sites, None)?;
    let mut t = Table::new("momentum", vec!["method", "label", "k", "eta", "value", "residual", "eig_deviation"]);
    cfg_meta(&mut t, &cfg);
    t.meta("ell", json!([num(ext.ell_plus), num(ext.ell_minus)]));
    match &grid {
        None => {
            let k_max = args.k_max.or(r.file.k_max).unwrap_or(10.0 * PI / cfg.box_length);
            t.meta("k_max", num(k_max));
            let set = solve_momentum_continuum(&cfg, &ext, Some(k_max))?;
            for root in &set.real_roots {
                t.rows.push(vec![
                    Cell::Text("continuum_root".into()),
                    Cell::Int(root.label),
                    Cell::Num(root.k),
                    Cell::Num(0.0),
                    Cell::Num(root.value),
                    Cell::Num(root.residual),
                    Cell::Empty,
                ]);
            }
            t.summary.push(format!("{} continuum roots in |k| <= {}", set.real_roots.len(), sig6(k_max)));
        }
        Some(grid) => {
            t.meta("sites", json!(grid.num_sites()));
            t.meta("seed", json!(r.seed()));
            let set = solve_momentum_lattice(grid, &ext)?;
            t.meta("window", json!([num(set.window.0), num(set.window.1)]));
            let opts = EigenOptions { seed: r.seed(), ..Default::default() };
            let eig = eigh_tridiagonal_with(&build_p_r(grid, &ext), &opts)?.eigenvalues;
            let nearest = |v: f64| eig.iter().map(|e| (e - v).abs()).fold(f64::INFINITY, f64::min);
            let mut worst: f64 = 0.0;
            for root in &set.real_roots {
                let d = nearest(root.value);
                worst = worst.max(d);
                t.rows.push(vec![
                    Cell::Text("lattice_root".into()),
                    Cell::Int(root.label),
                    Cell::Num(root.k),
                    Cell::Num(0.0),
                    Cell::Num(root.value),
                    Cell::Num(root.residual),
                    Cell::Num(d),
                ]);
            }
            for ev in &set.evanescent_roots {
                let d = nearest(ev.value);
                worst = worst.max(d);
                t.rows.push(vec![
                    Cell::Text("lattice_root_evanescent".into()),
                    Cell::Empty,
                    Cell::Num(ev.sign as f64 * PI / (2.0 * grid.spacing())),
                    Cell::Num(ev.eta),
                    Cell::Num(ev.value),
                    Cell::Num(ev.residual),
                    Cell::Num(d),
                ]);
            }
            t.meta("max_eig_deviation", num(worst));
            t.summary.push(format!("{} lattice roots, max eigenvalue deviation {}", t.rows.len(), sig6(worst)));
        }
    }
    Ok((t, r.format(Format::Csv)))
}

fn select_state(cfg: &PhysicalConfig, bc: Bc, robin: &RobinParams, level: i64) -> Result<EnergyEigenstate> {
    match bc {
        Bc::Dirichlet => EnergyEigenstate::dirichlet(cfg, level),
        Bc::Neumann => EnergyEigenstate::neumann(cfg, level),
        Bc::Robin => {
            let l = usize::try_from(level).ok().filter(|&l| l >= 1).ok_or(Error::InvalidLevel(level))?;
            Ok(energy_eigenstates(cfg, robin, l)?.swap_remove(l - 1))
        }
    }
}

fn measure(args: &MeasureArgs) -> Result<(Table, Format)> {
    let r = Resolved::new(&args.common)?;
    let cfg = r.cfg()?;
    let (bc, robin) = r.robin(&args.walls)?;
    let ext = r.ext(&args.ext)?;
    let level = args.level.or(r.file.level).unwrap_or(if bc == Bc::Neumann { 0 } else { 1 });
    let cutoff = positive_count("cutoff_n", args.cutoff_n.or(r.file.cutoff_n).unwrap_or(1000))?;
    let rule = match args.rule.or(r.file.rule).unwrap_or(RuleArg::Analytic) {
        RuleArg::Analytic => OverlapRule::Analytic,
        RuleArg::Quadrature => OverlapRule::Quadrature,
    };
    let grid = r.grid(args.sites, Some(999))?.expect("default grid");
    let state = select_state(&cfg, bc, &robin, level)?;

    let (dist, method): (MomentumDistribution, &str) = match (bc, level) {
        (Bc::Dirichlet, l) => (dirichlet_distribution(&cfg, l, cutoff)?, "closed_form"),
        (Bc::Neumann, 0) => (neumann_ground_distribution(&cfg, cutoff)?, "closed_form"),
        _ => {
            if !ext.is_parity_symmetric() {
                return Err(Error::UnequalExtension { plus: ext.ell_plus, minus: ext.ell_minus });
            }
            let name = if rule == OverlapRule::Analytic { "analytic_overlap" } else { "quadrature_overlap" };
            (general_distribution(&cfg, &ext, &state, cutoff, rule)?, name)
        }
    };
    let profile = state.profile.clone();
    let (p_r, p_i) = p_expectations(&grid, &ext, |x| profile.eval(x))?;

    let mut t = Table::new("measure", vec!["n", "k", "probability", "cumulative"]);
    cfg_meta(&mut t, &cfg);
    robin_meta(&mut t, bc, &robin);
    t.meta("ell", json!([num(ext.ell_plus), num(ext.ell_minus)]));
    t.meta("level", json!(level));
    t.meta("energy", num(state.energy));
    t.meta("cutoff_n", json!(cutoff));
    t.meta("method", json!(method));
    t.meta("sites", json!(grid.num_sites()));
    let total = dist.total_probability();
    let summary = json!({
        "delta_k": serde_json::to_value(dist.delta_k).expect("serializable"),
        "tail_mass": num(dist.tail_mass),
        "total_probability": num(total),
        "mean_k": num(dist.mean_k),
        "p_r_expectation": num(p_r),
        "p_i_expectation": num(p_i),
    });
    t.meta("summary", summary.clone());
    let mut cumulative = 0.0;
    for e in &dist.entries {
        cumulative += e.probability;
        t.rows.push(vec![Cell::Int(e.n), Cell::Num(e.k), Cell::Num(e.probability), Cell::Num(cumulative)]);
    }
    t.summary.push(format!("delta_k = {}", sig6(dist.delta_k.value())));
    t.summary.push(format!("total probability = {} (tail {})", sig6(total), sig6(dist.tail_mass)));
    t.summary.push(format!("<p_R> = {}, <p_I> = {}", sig6(p_r), sig6(p_i)));
    Ok((t, r.format(Format::Csv)))
}

fn converge(args: &ConvergeArgs) -> Result<(Table, Format)> {
    let r = Resolved::new(&args.common)?;
    let cfg = r.cfg()?;
    let n_list = args.n_list.clone().or_else(|| r.file.n_list.clone()).unwrap_or_else(|| DEFAULT_N_LIST.to_vec());
    let observable = args.observable.or(r.file.observable).unwrap_or(Observable::Energy);
    let mut t = Table::new("converge", vec!["N", "a", "value", "error"]);
    cfg_meta(&mut t, &cfg);
    t.meta("observable", json!(observable));
    let report = match observable {
        Observable::Energy => {
            let (bc, robin) = r.robin(&args.walls)?;
            robin_meta(&mut t, bc, &robin);
            let stencil = r.stencil(&args.walls);
            t.meta("stencil", json!(stencil));
            let level = args.level.or(r.file.level.map(|l| l.max(0) as usize)).unwrap_or(1);
            converge_energy(&cfg, &robin, level, &n_list, stencil)?
        }
        Observable::Momentum => {
            let ext = r.ext(&args.ext)?;
            t.meta("ell", json!([num(ext.ell_plus), num(ext.ell_minus)]));
            converge_momentum(&cfg, &ext, args.label.or(r.file.label).unwrap_or(1), &n_list)?
        }
        Observable::Commutator => {
            let ext = r.ext(&args.ext)?;
            t.meta("ell", json!([num(ext.ell_plus), num(ext.ell_minus)]));
            let n_max = args.n_max.or(r.file.n_max).unwrap_or(2);
            converge_commutator(&cfg, &ext, Sign::Minus, n_max, &n_list)?
        }
    };
    t.meta("reference", num(report.reference));
    t.meta("fitted_order", report.fitted_order.map_or(Value::Null, num));
    t.meta("fit_residual", report.fit_residual.map_or(Value::Null, num));
    for i in 0..report.n_list.len() {
        t.rows.push(vec![
            Cell::Int(report.n_list[i] as i64),
            Cell::Num(report.spacings[i]),
            Cell::Num(report.values[i]),
            Cell::Num(report.errors[i]),
        ]);
    }
    t.summary.push(format!(
        "{}: fitted order {}",
        report.observable,
        report.fitted_order.map_or("undefined (zero error)".into(), sig6)
    ));
    t.json_data = Some(serde_json::to_value(&report).expect("serializable"));
    Ok((t, r.format(Format::Json)))
}

fn fourier(args: &FourierArgs) -> Result<(Table, Format)> {
    let r = Resolved::new(&args.common)?;
    let cfg = r.cfg()?;
    let bc = args.bc.or(r.file.bc).unwrap_or(Bc::Dirichlet);
    let level = args.level.or(r.file.level).unwrap_or(if bc == Bc::Neumann { 0 } else { 1 });
    let state = match bc {
        Bc::Dirichlet => EnergyEigenstate::dirichlet(&cfg, level)?,
        Bc::Neumann => EnergyEigenstate::neumann(&cfg, level)?,
        Bc::Robin => return Err(Error::Config("fourier supports --bc dirichlet or neumann".into())),
    };
    let cutoff_k = args.cutoff_k.or(r.file.cutoff_k).unwrap_or(200.0 * PI / cfg.box_length);
    let samples = args.samples.or(r.file.samples).unwrap_or(2001);
    let f = fourier_density(&cfg, &state, cutoff_k, samples)?;
    let mut t = Table::new("fourier", vec!["k", "density"]);
    cfg_meta(&mut t, &cfg);
    t.meta("bc", json!(bc));
    t.meta("level", json!(level));
    t.meta("cutoff_k", num(cutoff_k));
    t.meta("mass_in_window", num(f.mass));
    t.meta("tail_mass", num(f.tail_mass));
    t.meta("mean_k", num(f.mean_k));
    t.meta("second_moment", num(f.second_moment));
    t.meta("partial_second_moment", num(f.partial_second_moment));
    t.meta("delta_k", serde_json::to_value(f.delta_k).expect("serializable"));
    for (k, d) in &f.samples {
        t.rows.push(vec![Cell::Num(*k), Cell::Num(*d)]);
    }
    t.summary.push(format!("delta_k = {}", sig6(f.delta_k.value())));
    t.summary.push(format!("mass = {} + tail {}", sig6(f.mass), sig6(f.tail_mass)));
    Ok((t, r.format(Format::Csv)))
}

fn selfcheck(args: &SelfcheckArgs) -> Result<(Table, Format)> {
    let r = Resolved::new(&args.common)?;
    let checks = run_selfcheck()?;
    let mut t = Table::new("selfcheck", vec!["check", "value", "tolerance", "pass"]);
    for c in &checks {
        t.rows.push(vec![Cell::Text(c.name.into()), Cell::Num(c.value), Cell::Num(c.tolerance), Cell::Text(c.pass.to_string())]);
        t.summary.push(format!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, sig6(c.value)));
    }
    t.failed = checks.iter().any(|c| !c.pass);
    Ok((t, r.format(Format::Csv)))
}

/// Runs a parsed command and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<(Table, String)> {
    let (table, format) = match &cli.command {
        Command::Spectrum(a) => spectrum(a)?,
        Command::Momentum(a) => momentum(a)?,
        Command::Measure(a) => measure(a)?,
        Command::Converge(a) => converge(a)?,
        Command::Fourier(a) => fourier(a)?,
        Command::Selfcheck(a) => selfcheck(a)?,
    };
    let text = table.render(format);
    Ok((table, text))
}

fn output_path(cli: &Cli) -> Option<&PathBuf> {
    let common = match &cli.command {
        Command::Spectrum(a) => &a.common,
        Command::Momentum(a) => &a.common,
        Command::Measure(a) => &a.common,
        Command::Converge(a) => &a.common,
        Command::Fourier(a) => &a.common,
        Command::Selfcheck(a) => &a.common,
    };
    common.output.as_ref()
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok((table, text)) => {
            if let Some(path) = output_path(&cli) {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{text}");
            }
            for line in &table.summary {
                eprintln!("{line}");
            }
            if table.failed {
                3
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
