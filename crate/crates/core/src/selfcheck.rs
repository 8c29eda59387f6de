//! Quick invariant suite behind the `selfcheck` command.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::continuum::{
    build_doubled_hamiltonian_lattice, default_penalty, energy_eigenstates, probability_current, ShiftOperator, Sign,
    TwoComponentWavefunction,
};
use crate::eigensolver::eigh_tridiagonal;
use crate::error::Result;
use crate::lattice::{
    build_hamiltonian, build_p_backward, build_p_forward, build_p_i, build_p_r, build_parity, LatticeGrid,
    MomentumExtension, PhysicalConfig, RobinParams,
};
use crate::measurement::{dirichlet_distribution, neumann_ground_distribution, penalty_energy};
use crate::quantization::{solve_energy_continuum, solve_energy_lattice, solve_momentum_lattice};
use crate::tridiagonal::{hermiticity_defect, ComplexTridiagonal};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn check(name: &'static str, value: f64, tolerance: f64) -> Check {
    Check { name, value, tolerance, pass: value <= tolerance }
}

fn max_rel(got: &[f64], want: &[f64]) -> f64 {
    got.iter().zip(want).map(|(g, w)| ((g - w) / w).abs()).fold(0.0, f64::max)
}

/// `max |A - B|` over the stored bands.
fn band_distance(a: &ComplexTridiagonal, b: &ComplexTridiagonal) -> f64 {
    a.sub(b).max_norm()
}

/// Defects of `U p_F U = -p_B`, `U p_R U = -p_R`, `U p_I U = -p_I` and
/// `U H U = H` for parity-symmetric walls.
pub fn parity_defects(grid: &LatticeGrid, cfg: &PhysicalConfig, ell: f64, gamma: f64) -> Result<[f64; 4]> {
    let ext = MomentumExtension::symmetric(ell);
    let u = build_parity(grid);
    let neg = Complex64::new(-1.0, 0.0);
    let h = build_hamiltonian(grid, cfg, &RobinParams::symmetric(gamma)?, &vec![0.0; grid.num_sites()])?;
    let p_i = build_p_i(grid);
    let p_r = build_p_r(grid, &ext);
    Ok([
        band_distance(&u.conjugate(&build_p_forward(grid, &ext)), &build_p_backward(grid, &ext).scale(neg)),
        band_distance(&u.conjugate(&p_r), &p_r.scale(neg)),
        band_distance(&u.conjugate(&p_i), &p_i.scale(neg)),
        band_distance(&u.conjugate(&h), &h),
    ])
}

/// Runs the suite with `m = L = 1`. Each check is small enough to finish in
/// well under a second.
pub fn run_selfcheck() -> Result<Vec<Check>> {
    let cfg = PhysicalConfig::default();
    let mut out = Vec::new();

    let grid = LatticeGrid::new(99, 1.0)?;
    let robin = RobinParams::symmetric(2.0)?;
    let ext = MomentumExtension::symmetric(1.0);
    let h = build_hamiltonian(&grid, &cfg, &robin, &vec![0.0; 99])?;
    out.push(check("hermiticity defect of H", hermiticity_defect(&h), 0.0));
    out.push(check("hermiticity defect of p_R", hermiticity_defect(&build_p_r(&grid, &ext)), 0.0));
    let parity = parity_defects(&grid, &cfg, 0.7, 2.0)?;
    out.push(check("parity relations", parity.iter().copied().fold(0.0, f64::max), 0.0));

    let dirichlet = solve_energy_continuum(&cfg, &RobinParams::dirichlet(), Some(10.5 * PI))?.energy_levels();
    let exact: Vec<f64> = (1..=10).map(|l| (PI * l as f64).powi(2) / 2.0).collect();
    out.push(check("Dirichlet energies, relative", max_rel(&dirichlet[..10], &exact), 1e-12));

    let eig = eigh_tridiagonal(&h, false)?.eigenvalues;
    let roots = solve_energy_lattice(&grid, &cfg, &robin, None)?.energy_levels();
    let dev = eig.iter().zip(&roots).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let count_ok = if eig.len() == roots.len() { dev } else { f64::INFINITY };
    out.push(check("lattice roots vs eigenvalues, N=99", count_ok, 1e-9));

    let g9 = LatticeGrid::new(9, 1.0)?;
    let p_eig = eigh_tridiagonal(&build_p_r(&g9, &ext), false)?.eigenvalues;
    let a9 = g9.spacing();
    let mut want: Vec<f64> = (-4..=4).map(|n| (PI * n as f64 * a9).sin() / a9).collect();
    want.sort_by(f64::total_cmp);
    let dev = p_eig.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    out.push(check("p_R spectrum for lambda = i, N=9", dev, 1e-10));
    let roots = solve_momentum_lattice(&g9, &ext)?;
    out.push(check("lattice momentum root count defect", (roots.real_roots.len() as f64 - 9.0).abs(), 0.0));

    let d = dirichlet_distribution(&cfg, 1, 10_000)?;
    out.push(check("Dirichlet total probability", (d.total_probability() - 1.0).abs(), 1e-6));
    let nd = neumann_ground_distribution(&cfg, 10_000)?;
    out.push(check("Neumann total probability", (nd.total_probability() - 1.0).abs(), 1e-6));

    let g51 = LatticeGrid::new(51, 1.0)?;
    let doubled = build_doubled_hamiltonian_lattice(&g51, &cfg, &robin, default_penalty(&cfg))?;
    let single = eigh_tridiagonal(&build_hamiltonian(&g51, &cfg, &robin, &vec![0.0; 51])?, false)?.eigenvalues;
    let low: Vec<f64> = doubled.eigenvalues().into_iter().take(5).collect();
    out.push(check("H(mu) low band vs H, relative", max_rel(&low, &single[..5]), 1e-6));

    let psi = TwoComponentWavefunction::from_samples(
        (0..257).map(|j| Complex64::new((j as f64 * 0.37).sin(), (j as f64 * 0.11).cos())).collect(),
        (0..257).map(|j| Complex64::new((j as f64 * 0.23).cos(), 0.5)).collect(),
        1.0,
    );
    let back = ShiftOperator::new(Sign::Plus, 1.0).apply(&ShiftOperator::new(Sign::Minus, 1.0).apply(&psi));
    out.push(check("A_+ A_- = 1 on a sampled state", back.sub(&psi).max_abs(257), 1e-12));

    let states = energy_eigenstates(&cfg, &robin, 4)?;
    let current = states
        .iter()
        .flat_map(|s| [probability_current(&s.profile, 0.5, &cfg), probability_current(&s.profile, -0.5, &cfg)])
        .fold(0.0, |m: f64, j| m.max(j.abs()));
    out.push(check("current at the walls, gamma = 2", current, 1e-10));

    let growth = penalty_energy(&LatticeGrid::new(31, 1.0)?, &cfg, &robin, &ext, PI, &[1e2, 1e4])?;
    // reported only: <H(mu)> of a momentum eigenstate grows with mu
    let ratio = growth[0].1 / growth[1].1;
    out.push(check("<H(mu)> ratio at mu = 1e2 and 1e4", ratio, 1.0));
    Ok(out)
}
