//! Closed-form momentum and energy eigenstates for `V = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{ExpSum, TwoComponentWavefunction};
use crate::error::{Error, Result};
use crate::lattice::{MomentumExtension, PhysicalConfig, RobinParams};
use crate::quantization::solve_energy_continuum;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// `phi_k = (A e^{ikx} + B e^{-ikx}, A e^{ikx} - B e^{-ikx})`, normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumEigenstate {
    pub k: f64,
    pub label: i64,
    pub a: Complex64,
    pub b: Complex64,
    /// `(1 - lambda)/(1 + lambda)` when `lambda_+ = lambda_-`.
    pub sigma: Option<Complex64>,
    pub parity: Parity,
    pub length: f64,
}

impl MomentumEigenstate {
    pub fn wavefunction(&self) -> TwoComponentWavefunction {
        let plus = ExpSum::exp(self.a, c(self.k));
        let minus = ExpSum::exp(self.b, c(-self.k));
        TwoComponentWavefunction::closed(plus.add(&minus), plus.sub(&minus), self.length)
    }
}

/// Eigenstate of `p_R` for a root `k` of the continuum momentum condition.
///
/// The upper wall fixes `B = A e^{ikL} (1 - lambda_+)/(1 + lambda_+)`; the lower
/// wall must then hold as well, otherwise `k` is not a root. `A = 1/(2 sqrt L)`
/// normalizes the state because `|B| = |A|`.
pub fn momentum_eigenstate(
    cfg: &PhysicalConfig,
    ext: &MomentumExtension,
    k: f64,
    label: i64,
) -> Result<MomentumEigenstate> {
    cfg.validate()?;
    let l = cfg.box_length;
    let one = c(1.0);
    let (lp, lm) = (ext.lambda_plus(), ext.lambda_minus());
    let a = c(0.5 / l.sqrt());
    let z2 = (I * (k * l)).exp();
    let b = a * z2 * (one - lp) / (one + lp);
    let b_lower = a * (one - lm) / (z2 * (one + lm));
    let residual = (b - b_lower).norm() / a.norm();
    if residual > 1e-10 {
        return Err(Error::NotARoot { k, residual });
    }
    let sigma = ext.is_parity_symmetric().then(|| (one - lp) / (one + lp));
    let parity = if label.rem_euclid(2) == 0 { Parity::Even } else { Parity::Odd };
    Ok(MomentumEigenstate { k, label, a, b, sigma, parity, length: l })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyKind {
    DirichletCos,
    DirichletSin,
    Neumann,
    RobinNumeric,
    /// Boundary-bound state, `E < 0`.
    Bound,
    /// Linear profile with `E = 0`.
    ZeroMode,
}

/// Single-component energy eigenstate `psi(x)`, normalized on the box; the
/// two-component state is `(psi, psi)/sqrt 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyEigenstate {
    pub label: i64,
    pub kind: EnergyKind,
    pub energy: f64,
    /// Real wavenumber, or `i kappa` for bound states.
    pub k: Complex64,
    pub profile: ExpSum,
    pub robin: RobinParams,
    pub length: f64,
}

fn normalized(f: ExpSum, length: f64) -> ExpSum {
    let n2 = f.conj().mul(&f).integrate(-0.5 * length, 0.5 * length).re;
    f.scale(c(1.0 / n2.sqrt()))
}

impl EnergyEigenstate {
    /// `sqrt(2/L) cos(pi l x/L)` for odd `l`, `sqrt(2/L) sin(pi l x/L)` for even `l`.
    pub fn dirichlet(cfg: &PhysicalConfig, l: i64) -> Result<Self> {
        cfg.validate()?;
        if l < 1 {
            return Err(Error::InvalidLevel(l));
        }
        let len = cfg.box_length;
        let k = PI * l as f64 / len;
        let amp = (2.0 / len).sqrt();
        let (kind, profile) = if l % 2 == 1 {
            (EnergyKind::DirichletCos, ExpSum::cos(amp, c(k), 0.0))
        } else {
            (EnergyKind::DirichletSin, ExpSum::sin(amp, c(k), 0.0))
        };
        Ok(Self {
            label: l,
            kind,
            energy: k * k / (2.0 * cfg.mass),
            k: c(k),
            profile,
            robin: RobinParams::dirichlet(),
            length: len,
        })
    }

    /// `1/sqrt L` for `l = 0`, otherwise `sqrt(2/L) cos(pi l (x + L/2)/L)`.
    pub fn neumann(cfg: &PhysicalConfig, l: i64) -> Result<Self> {
        cfg.validate()?;
        if l < 0 {
            return Err(Error::InvalidLevel(l));
        }
        let len = cfg.box_length;
        let k = PI * l as f64 / len;
        let profile = if l == 0 {
            ExpSum::constant(c(1.0 / len.sqrt()))
        } else {
            ExpSum::cos((2.0 / len).sqrt(), c(k), 0.5 * k * len)
        };
        Ok(Self {
            label: l,
            kind: EnergyKind::Neumann,
            energy: k * k / (2.0 * cfg.mass),
            k: c(k),
            profile,
            robin: RobinParams::neumann(),
            length: len,
        })
    }

    pub fn two_component(&self) -> TwoComponentWavefunction {
        TwoComponentWavefunction::symmetric(&self.profile, self.length)
    }

    pub fn norm(&self) -> f64 {
        self.profile.conj().mul(&self.profile).integrate(-0.5 * self.length, 0.5 * self.length).re.sqrt()
    }

    /// Robin residuals of the profile at the upper and lower wall.
    pub fn boundary_residual(&self) -> (f64, f64) {
        robin_residual(&self.profile, &self.robin, self.length)
    }
}

/// `(|p_+ psi + q_+ psi'| at L/2, |p_- psi - q_- psi'| at -L/2)` for the walls
/// written as `p psi +- q psi' = 0`.
pub fn robin_residual(psi: &ExpSum, robin: &RobinParams, length: f64) -> (f64, f64) {
    let d = psi.derivative();
    let h = 0.5 * length;
    let (pp, qp) = robin.plus.coefficients();
    let (pm, qm) = robin.minus.coefficients();
    ((psi.eval(h) * pp + d.eval(h) * qp).norm(), (psi.eval(-h) * pm - d.eval(-h) * qm).norm())
}

/// The `count` lowest energy eigenstates for the given walls, ascending.
///
/// Dirichlet and Neumann boxes use the closed forms with their usual labels
/// (from 1 and from 0). Other walls are built from the roots of the continuum
/// quantization condition and labelled from 1 in ascending energy.
pub fn energy_eigenstates(cfg: &PhysicalConfig, robin: &RobinParams, count: usize) -> Result<Vec<EnergyEigenstate>> {
    cfg.validate()?;
    if robin.is_dirichlet() {
        return (1..=count as i64).map(|l| EnergyEigenstate::dirichlet(cfg, l)).collect();
    }
    if *robin == RobinParams::neumann() {
        return (0..count as i64).map(|l| EnergyEigenstate::neumann(cfg, l)).collect();
    }
    let len = cfg.box_length;
    let mut k_max = 50.0 * PI / len;
    let roots = loop {
        let r = solve_energy_continuum(cfg, robin, Some(k_max))?;
        if r.energy_levels().len() >= count {
            break r;
        }
        k_max *= 2.0;
    };
    let (pm, qm) = robin.minus.coefficients();
    let half = 0.5 * len;
    let mut states = Vec::with_capacity(count);
    for b in &roots.bound_roots {
        let kappa = b.kappa;
        // c1 cosh(kappa s) + c2 sinh(kappa s), s = x + L/2
        let (c1, c2) = (qm * kappa, pm);
        let grow = ExpSum::exp(c(0.5 * (c1 + c2) * (kappa * half).exp()), Complex64::new(0.0, -kappa));
        let decay = ExpSum::exp(c(0.5 * (c1 - c2) * (-kappa * half).exp()), Complex64::new(0.0, kappa));
        states.push((EnergyKind::Bound, b.energy, Complex64::new(0.0, kappa), grow.add(&decay)));
    }
    if roots.zero_mode {
        let (c1, c2) = (qm, pm);
        let f = ExpSum::constant(c(c1 + c2 * half)).add(&ExpSum::linear(c(c2)));
        states.push((EnergyKind::ZeroMode, 0.0, c(0.0), f));
    }
    for r in &roots.real_roots {
        let alpha = pm.atan2(r.k * qm);
        let f = ExpSum::cos(1.0, c(r.k), r.k * half - alpha);
        states.push((EnergyKind::RobinNumeric, r.value, c(r.k), f));
    }
    Ok(states
        .into_iter()
        .take(count)
        .enumerate()
        .map(|(i, (kind, energy, k, f))| EnergyEigenstate {
            label: i as i64 + 1,
            kind,
            energy,
            k,
            profile: normalized(f, len),
            robin: *robin,
            length: len,
        })
        .collect())
}
