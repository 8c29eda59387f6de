//! Continuum-limit studies: lattice observables against their continuum values
//! as `a = L/N -> 0`, with a least-squares fit of `log error` against `log a`.

use serde::Serialize;

use crate::continuum::{lattice_commutator_residual, Sign};
use crate::eigensolver::eigh_tridiagonal;
use crate::error::{Error, Result};
use crate::lattice::{build_hamiltonian_with_stencil, BoundaryStencil, LatticeGrid, MomentumExtension, PhysicalConfig, RobinParams};
use crate::quantization::{solve_energy_continuum, solve_momentum_continuum, solve_momentum_lattice};

/// Odd powers of three keep the midpoint grids nested.
pub const DEFAULT_N_LIST: [usize; 4] = [27, 81, 243, 729];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub observable: String,
    pub n_list: Vec<usize>,
    pub spacings: Vec<f64>,
    /// Lattice value at each `N`.
    pub values: Vec<f64>,
    /// Continuum value, or zero for residual-type observables.
    pub reference: f64,
    pub errors: Vec<f64>,
    /// Slope of `log error` against `log a`; `None` when an error in the fit window is zero.
    pub fitted_order: Option<f64>,
    /// RMS deviation of the fit in log space.
    pub fit_residual: Option<f64>,
}

impl ConvergenceReport {
    /// Errors never increase along `n_list`.
    pub fn is_monotone(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0] || (w[1] == 0.0 && w[0] == 0.0))
    }
}

fn check_n_list(n_list: &[usize]) -> Result<()> {
    if n_list.len() < 3 {
        return Err(Error::ConvergencePrecondition(format!("need at least 3 lattice sizes, got {}", n_list.len())));
    }
    if let Some(n) = n_list.iter().find(|&&n| n < 3 || n % 2 == 0) {
        return Err(Error::ConvergencePrecondition(format!("lattice sizes must be odd and >= 3, got {n}")));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::ConvergencePrecondition("lattice sizes must be strictly ascending".into()));
    }
    Ok(())
}

/// Least-squares slope and RMS residual of `log e` against `log a` over the
/// last `max(3, len - 1)` points.
pub fn fit_order(spacings: &[f64], errors: &[f64]) -> Option<(f64, f64)> {
    let len = spacings.len().min(errors.len());
    let take = 3.max(len.saturating_sub(1)).min(len);
    if take < 2 {
        return None;
    }
    let xs: Vec<f64> = spacings[len - take..len].iter().map(|a| a.ln()).collect();
    let ys: Vec<f64> = errors[len - take..len]
        .iter()
        .map(|&e| if e > 0.0 { Some(e.ln()) } else { None })
        .collect::<Option<_>>()?;
    let n = take as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let rms = (xs.iter().zip(&ys).map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum::<f64>() / n).sqrt();
    Some((slope, rms))
}

fn report(observable: String, cfg: &PhysicalConfig, n_list: &[usize], values: Vec<f64>, reference: f64) -> ConvergenceReport {
    let spacings: Vec<f64> = n_list.iter().map(|&n| cfg.box_length / n as f64).collect();
    let errors: Vec<f64> = values.iter().map(|v| (v - reference).abs()).collect();
    let fit = fit_order(&spacings, &errors);
    ConvergenceReport {
        observable,
        n_list: n_list.to_vec(),
        spacings,
        values,
        reference,
        errors,
        fitted_order: fit.map(|f| f.0),
        fit_residual: fit.map(|f| f.1),
    }
}

/// The `level`-th lowest lattice energy (1-based) against the continuum one.
pub fn converge_energy(
    cfg: &PhysicalConfig,
    robin: &RobinParams,
    level: usize,
    n_list: &[usize],
    stencil: BoundaryStencil,
) -> Result<ConvergenceReport> {
    cfg.validate()?;
    check_n_list(n_list)?;
    if level == 0 {
        return Err(Error::InvalidLevel(0));
    }
    let reference = if robin.is_dirichlet() {
        (std::f64::consts::PI * level as f64 / cfg.box_length).powi(2) / (2.0 * cfg.mass)
    } else {
        let mut k_max = 4.0 * std::f64::consts::PI * level as f64 / cfg.box_length;
        loop {
            let levels = solve_energy_continuum(cfg, robin, Some(k_max))?.energy_levels();
            if let Some(&e) = levels.get(level - 1) {
                break e;
            }
            k_max *= 2.0;
        }
    };
    let values = n_list
        .iter()
        .map(|&n| {
            let grid = LatticeGrid::new(n, cfg.box_length)?;
            let h = build_hamiltonian_with_stencil(&grid, cfg, robin, &vec![0.0; n], stencil)?;
            let spec = eigh_tridiagonal(&h, false)?;
            spec.eigenvalues.get(level - 1).copied().ok_or(Error::InvalidLevel(level as i64))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(format!("energy level {level}"), cfg, n_list, values, reference))
}

/// Lattice momentum `k_hat = sin(k a)/a` of the root labelled `label` against
/// the continuum root with the same label.
pub fn converge_momentum(
    cfg: &PhysicalConfig,
    ext: &MomentumExtension,
    label: i64,
    n_list: &[usize],
) -> Result<ConvergenceReport> {
    cfg.validate()?;
    check_n_list(n_list)?;
    let k_max = std::f64::consts::PI * (label.abs() + 2) as f64 / cfg.box_length;
    let continuum = solve_momentum_continuum(cfg, ext, Some(k_max))?;
    let reference = continuum
        .real_roots
        .iter()
        .find(|r| r.label == label)
        .map(|r| r.value)
        .ok_or(Error::InvalidLevel(label))?;
    let values = n_list
        .iter()
        .map(|&n| {
            let grid = LatticeGrid::new(n, cfg.box_length)?;
            let roots = solve_momentum_lattice(&grid, ext)?;
            roots.real_roots.iter().find(|r| r.label == label).map(|r| r.value).ok_or(Error::InvalidLevel(label))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(format!("momentum label {label}"), cfg, n_list, values, reference))
}

/// Lattice commutator defect `||[p_R, A] -+ (pi/L) A||` on the `2 n_max + 1`
/// lowest momentum eigenvectors; the continuum value is zero.
pub fn converge_commutator(
    cfg: &PhysicalConfig,
    ext: &MomentumExtension,
    sign: Sign,
    n_max: usize,
    n_list: &[usize],
) -> Result<ConvergenceReport> {
    cfg.validate()?;
    check_n_list(n_list)?;
    let values = n_list
        .iter()
        .map(|&n| lattice_commutator_residual(&LatticeGrid::new(n, cfg.box_length)?, ext, sign, n_max))
        .collect::<Result<Vec<_>>>()?;
    let name = match sign {
        Sign::Plus => "commutator A_+",
        Sign::Minus => "commutator A_-",
    };
    Ok(report(name.into(), cfg, n_list, values, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PhysicalConfig {
        PhysicalConfig::default()
    }

    #[test]
    fn fit_recovers_power_law() {
        let a = [0.1, 0.05, 0.025, 0.0125];
        let e: Vec<f64> = a.iter().map(|a: &f64| 3.0 * a.powi(2)).collect();
        let (order, rms) = fit_order(&a, &e).unwrap();
        assert!((order - 2.0).abs() < 1e-12 && rms < 1e-12);
        assert!(fit_order(&a, &[1.0, 0.5, 0.0, 0.0]).is_none());
    }

    #[test]
    fn dirichlet_ground_state_is_second_order() {
        let r = converge_energy(&cfg(), &RobinParams::dirichlet(), 1, &[27, 81, 243], BoundaryStencil::Midpoint).unwrap();
        let order = r.fitted_order.unwrap();
        assert!(order >= 1.8, "{order}");
        assert!(r.is_monotone());
        assert!(r.fit_residual.unwrap() <= 0.1);
    }

    #[test]
    fn robin_errors_decrease() {
        let robin = RobinParams::symmetric(2.0).unwrap();
        let r = converge_energy(&cfg(), &robin, 1, &[27, 81, 243], BoundaryStencil::Midpoint).unwrap();
        assert!(r.is_monotone(), "{:?}", r.errors);
    }

    #[test]
    fn momentum_dispersion_order() {
        let ext = MomentumExtension::symmetric(1.0);
        let r = converge_momentum(&cfg(), &ext, 1, &[27, 81, 243]).unwrap();
        let order = r.fitted_order.unwrap();
        assert!((1.9..=2.1).contains(&order), "{order}");
        let zero = converge_momentum(&cfg(), &ext, 0, &[27, 81, 243]).unwrap();
        assert!(zero.errors.iter().all(|&e| e == 0.0));
        assert!(zero.fitted_order.is_none());
        let mixed = converge_momentum(&cfg(), &MomentumExtension::new(1.0, 0.0), 1, &[27, 81, 243]).unwrap();
        assert!(mixed.is_monotone(), "{:?}", mixed.errors);
    }

    #[test]
    fn preconditions() {
        let e = converge_energy(&cfg(), &RobinParams::dirichlet(), 1, &[27], BoundaryStencil::Midpoint);
        assert!(matches!(e, Err(Error::ConvergencePrecondition(_))));
        let e = converge_energy(&cfg(), &RobinParams::dirichlet(), 1, &[27, 28, 81], BoundaryStencil::Midpoint);
        assert!(matches!(e, Err(Error::ConvergencePrecondition(_))));
        let e = converge_energy(&cfg(), &RobinParams::dirichlet(), 1, &[81, 27, 9], BoundaryStencil::Midpoint);
        assert!(matches!(e, Err(Error::ConvergencePrecondition(_))));
    }

    #[test]
    fn commutator_order() {
        let r = converge_commutator(&cfg(), &MomentumExtension::symmetric(1.0), Sign::Minus, 2, &[27, 81, 243]).unwrap();
        assert!(r.fitted_order.unwrap() >= 1.0, "{:?}", r);
    }
}
