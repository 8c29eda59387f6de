//! Negative-energy states localized at the walls for gamma < 0, and the zero
//! mode at the critical gamma = -2.

use box_momentum::continuum::{energy_eigenstates, EnergyKind};
use box_momentum::eigensolver::eigh_tridiagonal;
use box_momentum::lattice::{build_hamiltonian_with_stencil, BoundaryStencil, LatticeGrid, PhysicalConfig, RobinParams};
use box_momentum::quantization::solve_energy_continuum;

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::default();
    let robin = RobinParams::symmetric(-5.0)?;
    let roots = solve_energy_continuum(&cfg, &robin, None)?;
    for b in &roots.bound_roots {
        println!("continuum bound state: kappa = {:.10}, E = {:.10}", b.kappa, b.energy);
    }

    for stencil in [BoundaryStencil::Midpoint, BoundaryStencil::WallCentered] {
        let grid = LatticeGrid::new(2001, 1.0)?;
        let h = build_hamiltonian_with_stencil(&grid, &cfg, &robin, &vec![0.0; 2001], stencil)?;
        let eig = eigh_tridiagonal(&h, false)?.eigenvalues;
        let rel: Vec<f64> = roots.bound_roots.iter().zip(&eig).map(|(b, e)| ((e - b.energy) / b.energy).abs()).collect();
        println!("N = 2001, {stencil:?}: {:?}, relative errors {:?}", &eig[..2], rel);
    }

    let states = energy_eigenstates(&cfg, &robin, 3)?;
    for s in &states {
        let edge = s.profile.eval(0.5).norm();
        let centre = s.profile.eval(0.0).norm();
        println!("level {} ({:?}): E = {:.6}, |psi| at wall {edge:.4}, at centre {centre:.4}", s.label, s.kind, s.energy);
    }

    let critical = energy_eigenstates(&cfg, &RobinParams::symmetric(-2.0)?, 2)?;
    let zero = critical.iter().find(|s| s.kind == EnergyKind::ZeroMode);
    println!("gamma = -2 has a zero mode: {}", zero.is_some());
    Ok(())
}
