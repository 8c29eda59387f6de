//! Root finding for the four quantization conditions.
//!
//! Every condition has the form `exp(i c k) = R(k)` with `|R| = 1` on the real
//! axis. It is solved as `g(k) = (c k - Phi(k)) / 2 pi = m` for integers `m`,
//! where `Phi` is a continuous branch of the phase of `R`. Each factor of `R` is
//! written so that its argument never crosses the branch cut, which keeps the
//! unwrapping exact however fast the phase turns between scan points.
//!
//! Negative Robin parameters add boundary-bound states `k = i kappa`, found as
//! sign changes of a real function of `kappa`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Gamma, LatticeGrid, MomentumExtension, PhysicalConfig, RobinParams};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Residual bound asserted on every returned root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
const BOUND_RESOLUTION: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemKind {
    EnergyContinuum,
    EnergyLattice,
    MomentumContinuum,
    MomentumLattice,
}

/// A real root `k` with its label and the physical eigenvalue it maps to:
/// the energy for the energy conditions, the momentum (`k` itself, or
/// `sin(k a)/a` on the lattice) for the momentum conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub label: i64,
    pub k: f64,
    pub value: f64,
    pub residual: f64,
}

/// A boundary-bound root `k = i kappa` with energy `E < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundRoot {
    pub kappa: f64,
    pub energy: f64,
    pub residual: f64,
}

/// A lattice momentum root off the real axis, `k = sign pi/(2a) + i eta`, whose
/// eigenvalue `k_hat = sign cosh(eta a)/a` lies outside `[-1/a, 1/a]`.
/// These appear only for `|ell| > 1` and are localized at a wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvanescentRoot {
    pub sign: i8,
    pub eta: f64,
    pub value: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub kind: ProblemKind,
    /// Ascending in `k`.
    pub real_roots: Vec<Root>,
    /// Ascending in energy (descending in `kappa`).
    pub bound_roots: Vec<BoundRoot>,
    /// Lattice momentum only; see [`EvanescentRoot`].
    pub evanescent_roots: Vec<EvanescentRoot>,
    /// Whether `E = 0` (a linear profile) is an eigenvalue; energy kinds only.
    pub zero_mode: bool,
    /// Search window `(lo, hi]` for the real roots.
    pub window: (f64, f64),
    pub scan_step: f64,
}

impl RootSet {
    pub fn ks(&self) -> Vec<f64> {
        self.real_roots.iter().map(|r| r.k).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.real_roots.iter().map(|r| r.value).collect()
    }

    /// All energies in ascending order: bound states, the zero mode, then the real roots.
    pub fn energy_levels(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.bound_roots.iter().map(|b| b.energy).collect();
        if self.zero_mode {
            out.push(0.0);
        }
        out.extend(self.real_roots.iter().map(|r| r.value));
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.real_roots
            .iter()
            .map(|r| r.residual)
            .chain(self.bound_roots.iter().map(|b| b.residual))
            .fold(0.0, f64::max)
    }
}

/// Parameter record for [`QuantizationProblem::solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationProblem {
    pub kind: ProblemKind,
    pub cfg: PhysicalConfig,
    pub grid: Option<LatticeGrid>,
    pub robin: Option<RobinParams>,
    pub ext: Option<MomentumExtension>,
    pub k_max: Option<f64>,
}

impl QuantizationProblem {
    pub fn solve(&self) -> Result<RootSet> {
        let need = |what: &str| Error::Config(format!("{:?} needs {what}", self.kind));
        match self.kind {
            ProblemKind::EnergyContinuum => {
                solve_energy_continuum(&self.cfg, &self.robin.ok_or_else(|| need("Robin parameters"))?, self.k_max)
            }
            ProblemKind::EnergyLattice => solve_energy_lattice(
                &self.grid.ok_or_else(|| need("a lattice grid"))?,
                &self.cfg,
                &self.robin.ok_or_else(|| need("Robin parameters"))?,
                self.k_max,
            ),
            ProblemKind::MomentumContinuum => {
                solve_momentum_continuum(&self.cfg, &self.ext.ok_or_else(|| need("a momentum extension"))?, self.k_max)
            }
            ProblemKind::MomentumLattice => solve_momentum_lattice(
                &self.grid.ok_or_else(|| need("a lattice grid"))?,
                &self.ext.ok_or_else(|| need("a momentum extension"))?,
            ),
        }
    }
}

pub fn default_energy_k_max(cfg: &PhysicalConfig) -> f64 {
    50.0 * PI / cfg.box_length
}

/// `exp(i c k) - R(k)`.
fn phase_residual(c: f64, k: f64, r: Complex64) -> f64 {
    ((I * (c * k)).exp() - r).norm()
}

/// Crossings `g(k) = m` of `g(k) = (c k - Phi(k)) / 2 pi` over the sample points,
/// as `(k, m)` pairs in ascending `k`. `phase` must be continuous in `k`.
///
/// Crossings are counted on half-open intervals, so a root sitting exactly on a
/// sample point is reported once, for the interval it closes.
pub(crate) fn scan_phase<F: Fn(f64) -> f64>(c: f64, phase: &F, samples: &[f64]) -> Vec<(f64, i64)> {
    let g = |k: f64| (c * k - phase(k)) / (2.0 * PI);
    let mut out = Vec::new();
    let Some(&first) = samples.first() else {
        return out;
    };
    let mut k0 = first;
    let mut g0 = g(k0);
    for &k1 in &samples[1..] {
        let g1 = g(k1);
        let integers: Vec<i64> = if g1 > g0 {
            (g0.floor() as i64 + 1..=g1.floor() as i64).collect()
        } else if g1 < g0 {
            (g1.ceil() as i64..g0.ceil() as i64).collect()
        } else {
            Vec::new()
        };
        for m in integers {
            let k = if g1 == m as f64 { k1 } else { bisect(|k| g(k) - m as f64, k0, k1, g0 - m as f64) };
            out.push((k, m));
        }
        k0 = k1;
        g0 = g1;
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out.dedup_by(|b, a| (b.0 - a.0).abs() <= 1e-12);
    out
}

/// Bisection for a sign change of `h` on `[lo, hi]`, where `h_lo` is `h(lo)`.
fn bisect(h: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, h_lo: f64) -> f64 {
    let lo_negative = h_lo < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-13f64.max(4.0 * f64::EPSILON * mid.abs()) || mid <= lo || mid >= hi {
            break;
        }
        let v = h(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of a real function on a uniform scan of `[lo, hi]`.
fn scan_sign_changes(f: impl Fn(f64) -> f64, lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let steps = ((hi - lo) / step).ceil() as usize;
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=steps {
        let x1 = (lo + step * i as f64).min(hi);
        let f1 = f(x1);
        if f1 == 0.0 {
            out.push(x1);
        } else if f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            out.push(bisect(&f, x0, x1, f0));
        }
        x0 = x1;
        f0 = f1;
    }
    out
}

fn check_robin(robin: &RobinParams) -> Result<()> {
    for g in [robin.plus, robin.minus] {
        if let Gamma::Finite(v) = g {
            if !v.is_finite() {
                return Err(Error::NonFiniteRobin(v));
            }
        }
    }
    Ok(())
}

fn continuum_energy_rhs(robin: &RobinParams, k: f64) -> Complex64 {
    [robin.plus, robin.minus]
        .iter()
        .map(|g| {
            let (p, q) = g.coefficients();
            Complex64::new(p, -k * q) / Complex64::new(p, k * q)
        })
        .product()
}

/// Whether the linear profile `c1 + c2 (x + L/2)` satisfies both walls over `length`.
fn zero_mode(robin: &RobinParams, length: f64) -> bool {
    let (pp, qp) = robin.plus.coefficients();
    let (pm, qm) = robin.minus.coefficients();
    let det = pp * pm * length + pp * qm + pm * qp;
    let scale = (pp * pm * length).abs() + (pp * qm).abs() + (pm * qp).abs();
    det.abs() <= 1e-12 * scale.max(1.0)
}

/// Energy condition `exp(2ikL) = prod (gamma - ik)/(gamma + ik)` on `(0, k_max]`,
/// with bound states `k = i kappa` when a Robin parameter is negative.
///
/// Dirichlet walls enter as the factor `1`.
pub fn solve_energy_continuum(cfg: &PhysicalConfig, robin: &RobinParams, k_max: Option<f64>) -> Result<RootSet> {
    cfg.validate()?;
    check_robin(robin)?;
    let l = cfg.box_length;
    let k_max = k_max.unwrap_or_else(|| default_energy_k_max(cfg));
    crate::lattice::positive("k_max", k_max)?;
    let step = PI / (20.0 * l);
    let rhs = |k: f64| continuum_energy_rhs(robin, k);
    // arg (p - ikq)/(p + ikq) = -2 atan2(kq, p), continuous for k > 0
    let phase = |k: f64| {
        [robin.plus, robin.minus]
            .iter()
            .map(|g| {
                let (p, q) = g.coefficients();
                -2.0 * (k * q).atan2(p)
            })
            .sum::<f64>()
    };
    // a root sitting exactly on k_max must survive rounding in g
    let samples = uniform_samples(step * 1e-6, k_max * (1.0 + 1e-12), step);
    let c = 2.0 * l;

    let mut real_roots = Vec::new();
    for (k, _) in scan_phase(c, &phase, &samples) {
        if k <= 1e-8 / l {
            continue;
        }
        let residual = phase_residual(c, k, rhs(k));
        real_roots.push(Root { label: 0, k, value: k * k / (2.0 * cfg.mass), residual });
    }
    for (i, r) in real_roots.iter_mut().enumerate() {
        r.label = i as i64 + 1;
    }

    let bound_roots = continuum_bound_states(cfg, robin)?;
    let zero_mode = zero_mode(robin, l);
    if real_roots.is_empty() && bound_roots.is_empty() && !zero_mode {
        return Err(Error::EmptyScan { k_max, resolution: step });
    }
    check_residuals(&real_roots, &bound_roots)?;
    Ok(RootSet {
        kind: ProblemKind::EnergyContinuum,
        real_roots,
        bound_roots,
        evanescent_roots: Vec::new(),
        zero_mode,
        window: (0.0, k_max),
        scan_step: step,
    })
}

fn uniform_samples(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    (0..=n).map(|i| (lo + step * i as f64).min(hi)).collect()
}

fn check_residuals(real: &[Root], bound: &[BoundRoot]) -> Result<()> {
    for r in real {
        if !(r.residual <= ROOT_RESIDUAL_TOL) {
            return Err(Error::NotARoot { k: r.k, residual: r.residual });
        }
    }
    for b in bound {
        if !(b.residual <= ROOT_RESIDUAL_TOL) {
            return Err(Error::NotARoot { k: b.kappa, residual: b.residual });
        }
    }
    Ok(())
}

fn kappa_range(robin: &RobinParams) -> Option<f64> {
    let min = robin.min_finite()?;
    if min >= 0.0 {
        return None;
    }
    let max_abs = [robin.plus, robin.minus]
        .iter()
        .filter_map(Gamma::finite)
        .fold(0.0f64, |m, g| m.max(g.abs()));
    Some(10.0 * max_abs)
}

/// Bound states from `exp(-2 kappa L) prod (p - kappa q) = prod (p + kappa q)`.
fn continuum_bound_states(cfg: &PhysicalConfig, robin: &RobinParams) -> Result<Vec<BoundRoot>> {
    let Some(kmax) = kappa_range(robin) else {
        return Ok(Vec::new());
    };
    let l = cfg.box_length;
    let (pp, qp) = robin.plus.coefficients();
    let (pm, qm) = robin.minus.coefficients();
    let lo = BOUND_RESOLUTION * 1e-3;
    let kappas = if robin.plus == robin.minus {
        let mut ks = scan_sign_changes(|k| (-k * l).exp() * (pp - k * qp) - (pp + k * qp), lo, kmax, BOUND_RESOLUTION);
        ks.extend(scan_sign_changes(|k| (-k * l).exp() * (pp - k * qp) + (pp + k * qp), lo, kmax, BOUND_RESOLUTION));
        ks
    } else {
        let f = |k: f64| (-2.0 * k * l).exp() * (pp - k * qp) * (pm - k * qm) - (pp + k * qp) * (pm + k * qm);
        scan_sign_changes(f, lo, kmax, BOUND_RESOLUTION)
    };
    let mut out: Vec<BoundRoot> = kappas
        .into_iter()
        .map(|kappa| {
            let lhs = (-2.0 * kappa * l).exp();
            let rhs = (pp + kappa * qp) * (pm + kappa * qm) / ((pp - kappa * qp) * (pm - kappa * qm));
            BoundRoot { kappa, energy: -kappa * kappa / (2.0 * cfg.mass), residual: (lhs - rhs).abs() }
        })
        .collect();
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(out)
}

/// `v = gamma - (1 - exp(-ika))/a`; the lattice condition is
/// `exp(2ik(L - a)) = prod v / conj(v)`.
fn lattice_v(gamma: f64, a: f64, k: f64) -> Complex64 {
    Complex64::new(gamma, 0.0) - (Complex64::new(1.0, 0.0) - (-I * (k * a)).exp()) / a
}

/// Lattice energy condition with the dispersion `E = (1/2m) ((2/a) sin(ka/2))^2`.
///
/// Scans `(0, pi/a)` excluding both ends, where the condition holds trivially.
/// The last `pi/L` before the zone edge is scanned with the finer step `pi a/(20 L)`.
pub fn solve_energy_lattice(
    grid: &LatticeGrid,
    cfg: &PhysicalConfig,
    robin: &RobinParams,
    k_max: Option<f64>,
) -> Result<RootSet> {
    cfg.validate()?;
    check_robin(robin)?;
    let (Some(gp), Some(gm)) = (robin.plus.finite(), robin.minus.finite()) else {
        return Err(Error::DirichletUnsupported);
    };
    let a = grid.spacing();
    let l = grid.box_length();
    let edge = PI / a;
    let k_hi = k_max.map_or(edge, |k| k.min(edge));
    let step = PI / (20.0 * l);
    let fine = PI * a / (20.0 * l);
    let fine_from = edge - PI / l;

    let mut samples = Vec::new();
    let mut k = step * 1e-6;
    while k < fine_from.min(k_hi) {
        samples.push(k);
        k += step;
    }
    let mut k = fine_from.max(step * 1e-6);
    let stop = if k_hi < edge { k_hi } else { edge - fine * 1e-6 };
    while k < stop {
        samples.push(k);
        k += fine;
    }
    samples.push(stop);

    let rhs = |k: f64| {
        let vp = lattice_v(gp, a, k);
        let vm = lattice_v(gm, a, k);
        vp * vm / (vp.conj() * vm.conj())
    };
    // Im v = -sin(ka)/a < 0 inside the zone, so arg v is continuous there
    let phase = |k: f64| 2.0 * (lattice_v(gp, a, k).arg() + lattice_v(gm, a, k).arg());
    let c = 2.0 * (l - a);
    let dispersion = |k: f64| {
        let s = 2.0 / a * (0.5 * k * a).sin();
        s * s / (2.0 * cfg.mass)
    };
    let mut real_roots = Vec::new();
    for (k, _) in scan_phase(c, &phase, &samples) {
        if k <= 1e-8 / l {
            continue;
        }
        let residual = phase_residual(c, k, rhs(k));
        real_roots.push(Root { label: 0, k, value: dispersion(k), residual });
    }
    for (i, r) in real_roots.iter_mut().enumerate() {
        r.label = i as i64 + 1;
    }

    let bound_roots = lattice_bound_states(grid, cfg, gp, gm, robin)?;
    let zero_mode = zero_mode(robin, l - a);
    if real_roots.is_empty() && bound_roots.is_empty() && !zero_mode {
        return Err(Error::EmptyScan { k_max: k_hi, resolution: step });
    }
    check_residuals(&real_roots, &bound_roots)?;
    Ok(RootSet {
        kind: ProblemKind::EnergyLattice,
        real_roots,
        bound_roots,
        evanescent_roots: Vec::new(),
        zero_mode,
        window: (0.0, k_hi),
        scan_step: step,
    })
}

fn lattice_bound_states(
    grid: &LatticeGrid,
    cfg: &PhysicalConfig,
    gp: f64,
    gm: f64,
    robin: &RobinParams,
) -> Result<Vec<BoundRoot>> {
    let Some(kmax) = kappa_range(robin) else {
        return Ok(Vec::new());
    };
    let a = grid.spacing();
    let span = grid.box_length() - a;
    // v and conj(v) continued to k = i kappa
    let v = |g: f64, kappa: f64| g - (1.0 - (kappa * a).exp()) / a;
    let u = |g: f64, kappa: f64| g - (1.0 - (-kappa * a).exp()) / a;
    let lo = BOUND_RESOLUTION * 1e-3;
    let kappas = if gp == gm {
        let mut ks = scan_sign_changes(|k| (-k * span).exp() * u(gp, k) - v(gp, k), lo, kmax, BOUND_RESOLUTION);
        ks.extend(scan_sign_changes(|k| (-k * span).exp() * u(gp, k) + v(gp, k), lo, kmax, BOUND_RESOLUTION));
        ks
    } else {
        let f = |k: f64| (-2.0 * k * span).exp() * u(gp, k) * u(gm, k) - v(gp, k) * v(gm, k);
        scan_sign_changes(f, lo, kmax, BOUND_RESOLUTION)
    };
    let mut out: Vec<BoundRoot> = kappas
        .into_iter()
        .map(|kappa| {
            let lhs = (-2.0 * kappa * span).exp();
            let (up, um, vp, vm) = (u(gp, kappa), u(gm, kappa), v(gp, kappa), v(gm, kappa));
            let rhs = vp * vm / (up * um);
            let residual = if rhs.is_finite() {
                (lhs - rhs).abs()
            } else {
                (lhs * up * um - vp * vm).abs() / (vp * vm).abs().max(f64::MIN_POSITIVE)
            };
            let s = 2.0 / a * (0.5 * kappa * a).sinh();
            BoundRoot { kappa, energy: -s * s / (2.0 * cfg.mass), residual }
        })
        .collect();
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(out)
}

/// Right-hand side `(1 + lambda_+)(1 - lambda_-) / ((1 - lambda_+)(1 + lambda_-))`
/// of the continuum momentum condition. Unimodular for imaginary `lambda`.
pub fn momentum_continuum_rhs(ext: &MomentumExtension) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let (lp, lm) = (ext.lambda_plus(), ext.lambda_minus());
    (one + lp) * (one - lm) / ((one - lp) * (one + lm))
}

/// Continuum momentum roots `k = (theta + 2 pi n) / 2L` in `(-k_max, k_max]`,
/// `theta` the principal phase of the right-hand side, labelled by `n`.
pub fn solve_momentum_continuum(cfg: &PhysicalConfig, ext: &MomentumExtension, k_max: Option<f64>) -> Result<RootSet> {
    cfg.validate()?;
    let l = cfg.box_length;
    let k_max = k_max.unwrap_or_else(|| default_energy_k_max(cfg));
    crate::lattice::positive("k_max", k_max)?;
    let rhs = momentum_continuum_rhs(ext);
    let modulus_defect = (rhs.norm() - 1.0).abs();
    if modulus_defect > 1e-14 {
        return Err(Error::NotARoot { k: f64::NAN, residual: modulus_defect });
    }
    let theta = rhs.arg();
    let n_lo = ((-k_max * 2.0 * l - theta) / (2.0 * PI)).floor() as i64;
    let n_hi = ((k_max * 2.0 * l - theta) / (2.0 * PI)).ceil() as i64;
    let real_roots: Vec<Root> = (n_lo..=n_hi)
        .map(|n| {
            let k = (theta + 2.0 * PI * n as f64) / (2.0 * l);
            Root { label: n, k, value: k, residual: phase_residual(2.0 * l, k, rhs) }
        })
        .filter(|r| r.k > -k_max && r.k <= k_max)
        .collect();
    check_residuals(&real_roots, &[])?;
    Ok(RootSet {
        kind: ProblemKind::MomentumContinuum,
        real_roots,
        bound_roots: Vec::new(),
        evanescent_roots: Vec::new(),
        zero_mode: false,
        window: (-k_max, k_max),
        scan_step: 0.0,
    })
}

/// One factor of the lattice momentum condition. `sign = 1` gives
/// `(1 + lambda e)/(e - lambda)` for the upper wall, `sign = -1` gives
/// `(1 - lambda e)/(e + lambda)` for the lower wall, with `e = exp(ika)`.
/// Both are exactly `sign * lambda` when `|ell| = 1`.
fn lattice_momentum_factor(ell: f64, sign: f64, e: Complex64) -> Complex64 {
    let lambda = Complex64::new(0.0, ell);
    if ell.abs() == 1.0 {
        return lambda * sign;
    }
    (Complex64::new(1.0, 0.0) + lambda * e * sign) / (e - lambda * sign)
}

/// Continuous phase of [`lattice_momentum_factor`] as a function of `ka`.
///
/// With `t = sign * ell` the factor is `(1 + i t e)/(e - i t)`. For `|t| < 1`
/// both `1 + i t e` and `1 - i t conj(e)` stay in the right half plane; for
/// `|t| > 1` the same holds after pulling out `i t e`.
fn lattice_momentum_phase(ell: f64, sign: f64, ka: f64) -> f64 {
    let t = ell * sign;
    let (s, c) = ka.sin_cos();
    if t.abs() == 1.0 {
        t.signum() * 0.5 * PI
    } else if t.abs() < 1.0 {
        2.0 * (t * c).atan2(1.0 - t * s) - ka
    } else {
        PI * t.signum() + ka - 2.0 * (c / t).atan2(1.0 - s / t)
    }
}

/// Lattice momentum roots: real `k` in the open zone window `(-pi/2a, pi/2a)`
/// plus any [`EvanescentRoot`]s, `N` in total.
///
/// Each real root carries `k_hat = sin(ka)/a` as its value. Roots exactly at
/// `ka = +-pi/2` are dropped: there the two plane waves of the ansatz coincide
/// and the condition holds without an eigenvector. Labels are consecutive
/// integers, offset so the root nearest `k = 0` has the label its continuum
/// counterpart would have.
pub fn solve_momentum_lattice(grid: &LatticeGrid, ext: &MomentumExtension) -> Result<RootSet> {
    let n = grid.num_sites();
    let a = grid.spacing();
    let l = grid.box_length();
    let c = 2.0 * l;
    let rhs = |k: f64| {
        let e = (I * (k * a)).exp();
        lattice_momentum_factor(ext.ell_plus, 1.0, e) * lattice_momentum_factor(ext.ell_minus, -1.0, e)
    };
    let phase = |k: f64| {
        lattice_momentum_phase(ext.ell_plus, 1.0, k * a) + lattice_momentum_phase(ext.ell_minus, -1.0, k * a)
    };
    let half = 10 * n as i64;
    let samples: Vec<f64> = (-half..=half).map(|i| PI / l * i as f64 / 20.0).collect();
    let edge = PI / (2.0 * a);
    let window = (-edge, edge);
    let mut real_roots: Vec<Root> = scan_phase(c, &phase, &samples)
        .into_iter()
        .filter(|(k, _)| (edge - k.abs()) > 1e-9 * edge)
        .map(|(k, _)| Root { label: 0, k, value: (k * a).sin() / a, residual: phase_residual(c, k, rhs(k)) })
        .collect();
    let evanescent_roots = lattice_evanescent_roots(grid, ext);
    let found = real_roots.len() + evanescent_roots.len();
    if found != n {
        return Err(Error::RootCount { expected: n, found });
    }
    if !real_roots.is_empty() {
        let theta = momentum_continuum_rhs(ext).arg();
        let nearest = real_roots
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.k.abs().total_cmp(&y.1.k.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let offset = ((c * real_roots[nearest].k - theta) / (2.0 * PI)).round() as i64;
        for (i, r) in real_roots.iter_mut().enumerate() {
            r.label = offset + i as i64 - nearest as i64;
        }
    }
    check_residuals(&real_roots, &[])?;
    for e in &evanescent_roots {
        if !(e.residual <= ROOT_RESIDUAL_TOL) {
            return Err(Error::NotARoot { k: e.eta, residual: e.residual });
        }
    }
    Ok(RootSet {
        kind: ProblemKind::MomentumLattice,
        real_roots,
        bound_roots: Vec::new(),
        evanescent_roots,
        zero_mode: false,
        window,
        scan_step: PI / (20.0 * l),
    })
}

/// With `e = exp(ika) = sign i x`, `x = exp(-eta a)`, the lattice momentum
/// condition becomes the real equation
/// `x^(2N) (sign x - ell_+)(sign x + ell_-) = (1 - sign ell_+ x)(1 + sign ell_- x)`.
/// `x = 1` always solves it and is excluded. `eta a` is scanned on a log grid.
fn lattice_evanescent_roots(grid: &LatticeGrid, ext: &MomentumExtension) -> Vec<EvanescentRoot> {
    if ext.ell_plus.abs() <= 1.0 && ext.ell_minus.abs() <= 1.0 {
        return Vec::new();
    }
    let n = grid.num_sites() as f64;
    let a = grid.spacing();
    let (lp, lm) = (ext.ell_plus, ext.ell_minus);
    let mut out = Vec::new();
    for sign in [-1.0f64, 1.0] {
        // u = eta a
        let lhs = |u: f64| (-2.0 * n * u).exp();
        let ratio = |u: f64| {
            let x = (-u).exp();
            (1.0 - sign * lp * x) * (1.0 + sign * lm * x) / ((sign * x - lp) * (sign * x + lm))
        };
        let f = |u: f64| {
            let x = (-u).exp();
            lhs(u) * (sign * x - lp) * (sign * x + lm) - (1.0 - sign * lp * x) * (1.0 + sign * lm * x)
        };
        let (u_lo, u_hi, per_decade) = (1e-9f64, 40.0f64, 4000.0);
        let points = ((u_hi / u_lo).log10() * per_decade).ceil() as usize;
        let grid_u = |i: usize| u_lo * (u_hi / u_lo).powf(i as f64 / points as f64);
        let mut u0 = grid_u(0);
        let mut f0 = f(u0);
        for i in 1..=points {
            let u1 = grid_u(i);
            let f1 = f(u1);
            let root = if f1 == 0.0 {
                Some(u1)
            } else if f0 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
                Some(bisect(&f, u0, u1, f0))
            } else {
                None
            };
            if let Some(u) = root {
                let residual = (lhs(u) - ratio(u)).abs();
                out.push(EvanescentRoot { sign: sign as i8, eta: u / a, value: sign * u.cosh() / a, residual });
            }
            u0 = u1;
            f0 = f1;
        }
    }
    out.sort_by(|x, y| x.value.total_cmp(&y.value));
    out
}
