//! Momentum-measurement statistics of energy eigenstates.
//!
//! With `lambda_+ = lambda_-` the outcomes of a `p_R` measurement are
//! `k_n = pi n / L`, and the probability of `k_n` in the `P_+` embedding of a
//! single-component state `psi` is `|psi~(k_n)|^2 / (2L)` whatever `lambda` is.
//! The standard momentum is described by the density `|psi~(k)|^2 / (2 pi)`.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::continuum::{momentum_eigenstate, EnergyEigenstate, TwoComponentWavefunction};
use crate::error::{Error, Result};
use crate::lattice::{build_p_i, build_p_r, LatticeGrid, LatticeWavefunction, MomentumExtension, PhysicalConfig, RobinParams};
use crate::quadrature::Composite;

/// Momentum uncertainty, which may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaK {
    Finite(f64),
    Divergent,
}

impl DeltaK {
    pub fn value(&self) -> f64 {
        match *self {
            DeltaK::Finite(v) => v,
            DeltaK::Divergent => f64::INFINITY,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, DeltaK::Divergent)
    }
}

impl Serialize for DeltaK {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            DeltaK::Finite(v) => s.serialize_f64(v),
            DeltaK::Divergent => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Outcome {
    pub n: i64,
    pub k: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentumDistribution {
    pub entries: Vec<Outcome>,
    pub cutoff_n: i64,
    /// Probability carried by `|n| > cutoff_n`, from the large-`n` asymptotics.
    pub tail_mass: f64,
    /// `sum k^2 P(k)` over the entries plus its tail, or `inf`.
    pub second_moment: f64,
    pub mean_k: f64,
    pub delta_k: DeltaK,
}

impl MomentumDistribution {
    pub fn total_probability(&self) -> f64 {
        self.entries.iter().map(|e| e.probability).sum::<f64>() + self.tail_mass
    }

    pub fn probability(&self, n: i64) -> Option<f64> {
        let first = self.entries.first()?.n;
        self.entries.get(usize::try_from(n - first).ok()?).map(|e| e.probability)
    }

    /// `sum_{|n| <= m} k^2 P(k)` without any tail.
    pub fn partial_second_moment(&self, m: i64) -> f64 {
        self.entries.iter().filter(|e| e.n.abs() <= m).map(|e| e.k * e.k * e.probability).sum()
    }

    /// `(sum k P, sum k^2 P)` over the entries only.
    fn entry_moments(&self) -> (f64, f64) {
        self.entries.iter().fold((0.0, 0.0), |(m1, m2), e| (m1 + e.k * e.probability, m2 + e.k * e.k * e.probability))
    }
}

/// Euler-Maclaurin estimate of `sum_{j >= 0} f(n0 + step j)` from the exact
/// `integral = int_{n0}^inf f`, `f(n0)` and `f'(n0)`.
fn em_tail(integral: f64, f0: f64, df0: f64, step: f64) -> f64 {
    integral / step + 0.5 * f0 - step * df0 / 12.0
}

fn check_cutoff(cutoff_n: i64, min: i64) -> Result<()> {
    if cutoff_n < min.max(1) {
        return Err(Error::Config(format!("cutoff_n must be at least {}, got {cutoff_n}", min.max(1))));
    }
    Ok(())
}

/// Closed-form distribution of the Dirichlet state `psi_l`:
/// `P(+-l) = 1/4`, `P(n) = (4/pi^2) l^2/(l^2 - n^2)^2` for `n` of opposite
/// parity to `l`, zero otherwise. `delta_k = pi l / L`.
pub fn dirichlet_distribution(cfg: &PhysicalConfig, l: i64, cutoff_n: i64) -> Result<MomentumDistribution> {
    cfg.validate()?;
    if l < 1 {
        return Err(Error::InvalidLevel(l));
    }
    check_cutoff(cutoff_n, l)?;
    let unit = PI / cfg.box_length;
    let ll = (l * l) as f64;
    let weight = 4.0 * ll / (PI * PI);
    let prob = |n: i64| -> f64 {
        if n.abs() == l {
            0.25
        } else if (n - l).rem_euclid(2) == 1 {
            let d = ll - (n * n) as f64;
            weight / (d * d)
        } else {
            0.0
        }
    };
    let entries: Vec<Outcome> =
        (-cutoff_n..=cutoff_n).map(|n| Outcome { n, k: unit * n as f64, probability: prob(n) }).collect();

    // first n > cutoff with opposite parity to l; cutoff >= l keeps it above l
    let n0 = if (cutoff_n + 1 - l).rem_euclid(2) == 1 { cutoff_n + 1 } else { cutoff_n + 2 } as f64;
    let lf = l as f64;
    let d0 = n0 * n0 - ll;
    let log = ((n0 + lf) / (n0 - lf)).ln();
    // int 1/(n^2 - l^2)^2 and int n^2/(n^2 - l^2)^2 from n0 to infinity
    let int_p = n0 / (2.0 * ll * d0) - log / (4.0 * ll * lf);
    let int_k2 = log / (2.0 * lf) + ll * int_p;
    let tail_mass = 2.0 * weight * em_tail(int_p, 1.0 / (d0 * d0), -4.0 * n0 / (d0 * d0 * d0), 2.0);
    let tail_k2 = 2.0
        * weight
        * unit
        * unit
        * em_tail(int_k2, n0 * n0 / (d0 * d0), -2.0 * n0 * (n0 * n0 + ll) / (d0 * d0 * d0), 2.0);

    let mut dist = MomentumDistribution {
        entries,
        cutoff_n,
        tail_mass,
        second_moment: 0.0,
        mean_k: 0.0,
        delta_k: DeltaK::Finite(unit * lf),
    };
    let (m1, m2) = dist.entry_moments();
    dist.mean_k = m1;
    dist.second_moment = m2 + tail_k2;
    Ok(dist)
}

/// Closed-form distribution of the Neumann ground state `psi_0 = 1/sqrt L`:
/// `P(0) = 1/2`, `P(n) = 2/(pi^2 n^2)` for odd `n`; `delta_k` diverges.
pub fn neumann_ground_distribution(cfg: &PhysicalConfig, cutoff_n: i64) -> Result<MomentumDistribution> {
    cfg.validate()?;
    check_cutoff(cutoff_n, 1)?;
    let unit = PI / cfg.box_length;
    let c = 2.0 / (PI * PI);
    let prob = |n: i64| -> f64 {
        if n == 0 {
            0.5
        } else if n.rem_euclid(2) == 1 {
            c / (n * n) as f64
        } else {
            0.0
        }
    };
    let entries: Vec<Outcome> =
        (-cutoff_n..=cutoff_n).map(|n| Outcome { n, k: unit * n as f64, probability: prob(n) }).collect();
    let n0 = if cutoff_n % 2 == 0 { cutoff_n + 1 } else { cutoff_n + 2 } as f64;
    let tail_mass = 2.0 * c * em_tail(1.0 / n0, 1.0 / (n0 * n0), -2.0 / (n0 * n0 * n0), 2.0);
    let mut dist = MomentumDistribution {
        entries,
        cutoff_n,
        tail_mass,
        second_moment: f64::INFINITY,
        mean_k: 0.0,
        delta_k: DeltaK::Divergent,
    };
    dist.mean_k = dist.entry_moments().0;
    Ok(dist)
}

/// How `<phi_k | Psi>` is evaluated in [`general_distribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverlapRule {
    /// Exact integrals of the closed forms.
    #[default]
    Analytic,
    /// Composite Gauss-Legendre with 64 nodes per half period.
    Quadrature,
}

/// Wall amplitude below which a profile counts as vanishing at the wall.
const WALL_ZERO: f64 = 1e-8;

/// Distribution of an energy eigenstate from overlaps with the momentum
/// eigenstates of the extension `ext`, which must have `lambda_+ = lambda_-`.
///
/// The tail assumes `P(n) ~ c_parity / n^2` (profile nonzero at a wall, where
/// `<k^2>` diverges) or `P(n) ~ c_parity / n^4` (profile vanishing at both
/// walls), with one constant per side and parity class read off the last entries.
pub fn general_distribution(
    cfg: &PhysicalConfig,
    ext: &MomentumExtension,
    state: &EnergyEigenstate,
    cutoff_n: i64,
    rule: OverlapRule,
) -> Result<MomentumDistribution> {
    cfg.validate()?;
    if !ext.is_parity_symmetric() {
        return Err(Error::UnequalExtension { plus: ext.ell_plus, minus: ext.ell_minus });
    }
    check_cutoff(cutoff_n, 2)?;
    let norm = state.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::NotNormalized { norm });
    }
    let len = cfg.box_length;
    let unit = PI / len;
    let psi = state.two_component();
    let quad_scale = state.k.norm();
    let mut entries = Vec::with_capacity(2 * cutoff_n as usize + 1);
    for n in -cutoff_n..=cutoff_n {
        let k = unit * n as f64;
        let phi = momentum_eigenstate(cfg, ext, k, n)?.wavefunction();
        let amp = match rule {
            OverlapRule::Analytic => phi.inner(&psi),
            OverlapRule::Quadrature => quadrature_overlap(&phi, &psi, k.abs() + quad_scale, len),
        };
        entries.push(Outcome { n, k, probability: amp.norm_sqr() });
    }

    let h = 0.5 * len;
    let at_wall = state.profile.eval(h).norm().max(state.profile.eval(-h).norm());
    let divergent = at_wall > WALL_ZERO;
    let power = if divergent { 2 } else { 4 };
    let mut tail_mass = 0.0;
    let mut tail_k2 = 0.0;
    for side in [1i64, -1] {
        for offset in [0, 1] {
            let n_last = side * (cutoff_n - offset);
            let p_last = entries[(n_last + cutoff_n) as usize].probability;
            let amp = p_last * (n_last.abs() as f64).powi(power);
            let n0 = (cutoff_n - offset + 2) as f64;
            tail_mass += amp * power_tail(power, n0);
            if !divergent {
                tail_k2 += amp * unit * unit * power_tail(power - 2, n0);
            }
        }
    }

    let mut dist =
        MomentumDistribution { entries, cutoff_n, tail_mass, second_moment: 0.0, mean_k: 0.0, delta_k: DeltaK::Divergent };
    let (m1, m2) = dist.entry_moments();
    dist.mean_k = m1;
    if divergent {
        dist.second_moment = f64::INFINITY;
    } else {
        dist.second_moment = m2 + tail_k2;
        dist.delta_k = DeltaK::Finite((dist.second_moment - m1 * m1).max(0.0).sqrt());
    }
    Ok(dist)
}

/// `sum_{j >= 0} (n0 + 2j)^{-p}` for `p = 2` or `4`.
fn power_tail(p: i32, n0: f64) -> f64 {
    let pf = p as f64;
    em_tail(n0.powi(1 - p) / (pf - 1.0), n0.powi(-p), -pf * n0.powi(-p - 1), 2.0)
}

fn quadrature_overlap(phi: &TwoComponentWavefunction, psi: &TwoComponentWavefunction, k: f64, len: f64) -> Complex64 {
    Composite::for_oscillation(k.max(1.0 / len), len).integrate_complex(-0.5 * len, 0.5 * len, |x| {
        let (pe, po) = phi.eval(x);
        let (se, so) = psi.eval(x);
        pe.conj() * se + po.conj() * so
    })
}

/// `(<p_R>, <p_I>)` of a single-component state sampled on the lattice sites.
pub fn p_expectations(
    grid: &LatticeGrid,
    ext: &MomentumExtension,
    psi: impl Fn(f64) -> Complex64,
) -> Result<(f64, f64)> {
    let wf = LatticeWavefunction::sample(*grid, psi);
    let norm = wf.norm();
    if !(norm > 0.0) {
        return Err(Error::NotNormalized { norm });
    }
    let wf = wf.normalized();
    let pr = wf.expectation(&build_p_r(grid, ext));
    let pi = wf.expectation(&build_p_i(grid));
    Ok((pr.re, pi.re))
}

/// Sampled density `|psi~(k)|^2 / (2 pi)` of the standard momentum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierDensity {
    /// `(k, density)` on a uniform grid over `[-K, K]`.
    pub samples: Vec<(f64, f64)>,
    pub cutoff_k: f64,
    /// `int_{-K}^{K} density dk`.
    pub mass: f64,
    /// Mass outside `[-K, K]` from the large-`k` asymptotics.
    pub tail_mass: f64,
    pub mean_k: f64,
    /// `<k^2>` including the tail, `inf` when it diverges.
    pub second_moment: f64,
    /// `int_{-K}^{K} k^2 density dk`.
    pub partial_second_moment: f64,
    pub delta_k: DeltaK,
}

/// Largest tolerated tail mass outside `[-K, K]`.
pub const FOURIER_TAIL_LIMIT: f64 = 1e-3;

/// Fourier density of a closed-form energy eigenstate up to `|k| = cutoff_k`.
///
/// The moments use composite Gauss-Legendre in `k`. For `|k| > K` the
/// transform is replaced by its leading boundary term, `|psi~|^2 ~ S0/k^2`
/// with `S0 = |psi(L/2)|^2 + |psi(-L/2)|^2`, or `S1/k^4` with
/// `S1 = |psi'(L/2)|^2 + |psi'(-L/2)|^2` when the profile vanishes at both walls.
pub fn fourier_density(cfg: &PhysicalConfig, state: &EnergyEigenstate, cutoff_k: f64, num_samples: usize) -> Result<FourierDensity> {
    cfg.validate()?;
    if !(cutoff_k > 0.0) || !cutoff_k.is_finite() {
        return Err(Error::Config(format!("cutoff_k must be positive, got {cutoff_k}")));
    }
    let len = cfg.box_length;
    let h = 0.5 * len;
    let profile = &state.profile;
    let density = |k: f64| profile.fourier(k, len).norm_sqr() / (2.0 * PI);

    let s0 = profile.eval(h).norm_sqr() + profile.eval(-h).norm_sqr();
    let divergent = s0.sqrt() > WALL_ZERO;
    let (tail_mass, tail_k2) = if divergent {
        (s0 / (PI * cutoff_k), f64::INFINITY)
    } else {
        let d = profile.derivative();
        let s1 = d.eval(h).norm_sqr() + d.eval(-h).norm_sqr();
        (s1 / (3.0 * PI * cutoff_k.powi(3)), s1 / (PI * cutoff_k))
    };
    if tail_mass > FOURIER_TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { cutoff: cutoff_k, tail: tail_mass, limit: FOURIER_TAIL_LIMIT });
    }

    // the integrand oscillates like exp(+-i k L)
    let rule = Composite::for_oscillation(len + state.k.norm() / cutoff_k, 2.0 * cutoff_k);
    let (mass, m1, m2) = rule.integrate(-cutoff_k, cutoff_k, |k| {
        let d = density(k);
        Moments(d, k * d, k * k * d)
    }).into();
    let samples = if num_samples < 2 {
        Vec::new()
    } else {
        (0..num_samples)
            .map(|i| {
                let k = -cutoff_k + 2.0 * cutoff_k * i as f64 / (num_samples - 1) as f64;
                (k, density(k))
            })
            .collect()
    };
    let second_moment = m2 + tail_k2;
    let delta_k = if divergent { DeltaK::Divergent } else { DeltaK::Finite((second_moment - m1 * m1).max(0.0).sqrt()) };
    Ok(FourierDensity {
        samples,
        cutoff_k,
        mass,
        tail_mass,
        mean_k: m1,
        second_moment,
        partial_second_moment: m2,
        delta_k,
    })
}

/// Three running moments, so one quadrature pass gives all of them.
#[derive(Debug, Clone, Copy, Default)]
struct Moments(f64, f64, f64);

impl std::ops::Add for Moments {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Moments(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }
}

impl std::ops::Mul<f64> for Moments {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Moments(self.0 * s, self.1 * s, self.2 * s)
    }
}

impl From<Moments> for (f64, f64, f64) {
    fn from(m: Moments) -> Self {
        (m.0, m.1, m.2)
    }
}

/// `<H(mu)>` in the lattice sampling of the momentum eigenstate `phi_k`,
/// for each penalty in `mus`. The `P_-` part of `phi_k` makes it grow like `mu`.
pub fn penalty_energy(
    grid: &LatticeGrid,
    cfg: &PhysicalConfig,
    robin: &RobinParams,
    ext: &MomentumExtension,
    k: f64,
    mus: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let phi = momentum_eigenstate(cfg, ext, k, 0)?.wavefunction();
    let n = grid.num_sites();
    let mut v = DVector::<f64>::zeros(2 * n);
    let mut vi = DVector::<f64>::zeros(2 * n);
    for (j, x) in grid.sites().into_iter().enumerate() {
        let (e, o) = phi.eval(x);
        v[j] = e.re;
        vi[j] = e.im;
        v[n + j] = o.re;
        vi[n + j] = o.im;
    }
    let norm = v.norm_squared() + vi.norm_squared();
    mus.iter()
        .map(|&mu| {
            let h = crate::continuum::build_doubled_hamiltonian_lattice(grid, cfg, robin, mu)?;
            let e = v.dot(&(&h.matrix * &v)) + vi.dot(&(&h.matrix * &vi));
            Ok((mu, e / norm))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuum::energy_eigenstates;

    fn cfg() -> PhysicalConfig {
        PhysicalConfig::default()
    }

    #[test]
    fn dirichlet_closed_form_values() {
        let d = dirichlet_distribution(&cfg(), 1, 50).unwrap();
        assert_eq!(d.probability(1), Some(0.25));
        assert_eq!(d.probability(-1), Some(0.25));
        assert!((d.probability(0).unwrap() - 4.0 / (PI * PI)).abs() < 1e-15);
        // n = 2 has the opposite parity to l = 1; odd n != +-1 vanish
        assert!((d.probability(2).unwrap() - 4.0 / (9.0 * PI * PI)).abs() < 1e-15);
        assert_eq!(d.probability(3), Some(0.0));
        let d2 = dirichlet_distribution(&cfg(), 2, 50).unwrap();
        assert!((d2.probability(1).unwrap() - 0.1801265).abs() < 1e-7);
    }

    #[test]
    fn dirichlet_normalization_and_width() {
        for l in 1..=5 {
            let d = dirichlet_distribution(&cfg(), l, 10_000).unwrap();
            assert!((d.total_probability() - 1.0).abs() < 1e-12, "l={l}: {}", d.total_probability());
            let summed = (d.second_moment - d.mean_k * d.mean_k).sqrt();
            assert!((summed - PI * l as f64).abs() < 1e-10, "l={l}: {summed}");
        }
        // tails are accurate at small cutoffs too
        let d = dirichlet_distribution(&cfg(), 3, 20).unwrap();
        assert!((d.total_probability() - 1.0).abs() < 1e-7, "{}", d.total_probability() - 1.0);
    }

    #[test]
    fn neumann_values_and_divergence() {
        let d = neumann_ground_distribution(&cfg(), 10_000).unwrap();
        assert_eq!(d.probability(0), Some(0.5));
        assert!((d.probability(1).unwrap() - 2.0 / (PI * PI)).abs() < 1e-16);
        assert_eq!(d.probability(2), Some(0.0));
        assert!((d.total_probability() - 1.0).abs() < 1e-12);
        assert!(d.delta_k.is_divergent());
        assert!(d.partial_second_moment(10_000) > 10.0 * d.partial_second_moment(100));
    }

    #[test]
    fn general_reproduces_closed_forms() {
        let ext = MomentumExtension::symmetric(1.0);
        let psi = EnergyEigenstate::dirichlet(&cfg(), 1).unwrap();
        let g = general_distribution(&cfg(), &ext, &psi, 40, OverlapRule::Quadrature).unwrap();
        let d = dirichlet_distribution(&cfg(), 1, 40).unwrap();
        for (a, b) in g.entries.iter().zip(&d.entries) {
            assert!((a.probability - b.probability).abs() < 1e-8, "n={}", a.n);
        }
        let psi0 = EnergyEigenstate::neumann(&cfg(), 0).unwrap();
        let g = general_distribution(&cfg(), &ext, &psi0, 40, OverlapRule::Analytic).unwrap();
        let d = neumann_ground_distribution(&cfg(), 40).unwrap();
        for (a, b) in g.entries.iter().zip(&d.entries) {
            assert!((a.probability - b.probability).abs() < 1e-8, "n={}", a.n);
        }
        assert!(g.delta_k.is_divergent());
    }

    #[test]
    fn general_is_independent_of_extension() {
        let robin = RobinParams::symmetric(2.0).unwrap();
        let state = energy_eigenstates(&cfg(), &robin, 2).unwrap().remove(1);
        let base = general_distribution(&cfg(), &MomentumExtension::symmetric(0.0), &state, 30, OverlapRule::Analytic).unwrap();
        for ell in [-1.0, 1.0, 5.0] {
            let d = general_distribution(&cfg(), &MomentumExtension::symmetric(ell), &state, 30, OverlapRule::Analytic).unwrap();
            for (a, b) in d.entries.iter().zip(&base.entries) {
                assert!((a.probability - b.probability).abs() <= 1e-10);
            }
        }
        assert!((base.total_probability() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn general_rejects_bad_input() {
        let psi = EnergyEigenstate::dirichlet(&cfg(), 1).unwrap();
        let err = general_distribution(&cfg(), &MomentumExtension::new(1.0, 0.0), &psi, 10, OverlapRule::Analytic);
        assert!(matches!(err, Err(Error::UnequalExtension { .. })));
        let mut doubled = psi.clone();
        doubled.profile = doubled.profile.scale(Complex64::new(2.0, 0.0));
        let err = general_distribution(&cfg(), &MomentumExtension::symmetric(1.0), &doubled, 10, OverlapRule::Analytic);
        assert!(matches!(err, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn fourier_dirichlet_width() {
        for l in 1..=2 {
            let psi = EnergyEigenstate::dirichlet(&cfg(), l).unwrap();
            let f = fourier_density(&cfg(), &psi, 200.0 * PI, 11).unwrap();
            let want = PI * l as f64;
            assert!((f.delta_k.value() - want).abs() < 5e-3 * want, "{:?}", f.delta_k);
            assert!((f.mass + f.tail_mass - 1.0).abs() < 1e-4);
            assert!(f.mean_k.abs() < 1e-10);
        }
    }

    #[test]
    fn fourier_neumann_diverges() {
        let psi = EnergyEigenstate::neumann(&cfg(), 0).unwrap();
        let f = fourier_density(&cfg(), &psi, 2000.0 * PI, 0).unwrap();
        assert!(f.delta_k.is_divergent());
        let g = fourier_density(&cfg(), &psi, 4000.0 * PI, 0).unwrap();
        assert!(g.partial_second_moment > 1.9 * f.partial_second_moment);
        assert!(matches!(fourier_density(&cfg(), &psi, 10.0, 0), Err(Error::CutoffTooSmall { .. })));
    }

    #[test]
    fn lattice_expectations() {
        let grid = LatticeGrid::new(999, 1.0).unwrap();
        let ext = MomentumExtension::symmetric(1.0);
        let (pr, pi) = p_expectations(&grid, &ext, |x| Complex64::new((PI * x).cos(), 0.0)).unwrap();
        assert!(pr.abs() < 1e-10 && pi.abs() < 1e-10);
        let (pr, _) = p_expectations(&grid, &ext, |x| Complex64::new((PI * x).cos() + (2.0 * PI * x).sin(), 0.0)).unwrap();
        assert!(pr.abs() > 1e-8);
    }

    #[test]
    fn penalty_energy_grows_with_mu() {
        let grid = LatticeGrid::new(31, 1.0).unwrap();
        let robin = RobinParams::symmetric(2.0).unwrap();
        let ext = MomentumExtension::symmetric(1.0);
        let e = penalty_energy(&grid, &cfg(), &robin, &ext, PI, &[1e2, 1e4]).unwrap();
        assert!(e[1].1 > 10.0 * e[0].1);
    }
}
