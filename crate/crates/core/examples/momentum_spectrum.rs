//! Momentum quantization for the self-adjoint extensions lambda = i ell:
//! continuum roots, lattice roots and the lattice p_R spectrum.

use box_momentum::continuum::momentum_eigenstate;
use box_momentum::eigensolver::eigh_tridiagonal;
use box_momentum::lattice::{build_p_r, LatticeGrid, MomentumExtension, PhysicalConfig};
use box_momentum::quantization::{solve_momentum_continuum, solve_momentum_lattice};

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::default();
    for ext in [MomentumExtension::symmetric(1.0), MomentumExtension::symmetric(0.0), MomentumExtension::new(0.3, -2.0)] {
        let roots = solve_momentum_continuum(&cfg, &ext, Some(7.0))?;
        println!("ell = ({}, {}): k = {:?}", ext.ell_plus, ext.ell_minus, roots.ks());
    }

    let ext = MomentumExtension::symmetric(1.0);
    let phi = momentum_eigenstate(&cfg, &ext, std::f64::consts::PI, 1)?;
    println!("\nphi_pi: A = {}, B = {}, sigma = {:?}", phi.a, phi.b, phi.sigma);

    let grid = LatticeGrid::new(9, 1.0)?;
    let eig = eigh_tridiagonal(&build_p_r(&grid, &ext), false)?.eigenvalues;
    let lattice = solve_momentum_lattice(&grid, &ext)?;
    println!("\nN = 9, lambda = i");
    println!("  eigenvalues of p_R: {eig:.6?}");
    println!("  sin(ka)/a of roots: {:.6?}", lattice.values());

    let ext = MomentumExtension::new(0.3, -2.0);
    let lattice = solve_momentum_lattice(&grid, &ext)?;
    println!("\nN = 9, ell = (0.3, -2): {} real roots and {} edge states", lattice.real_roots.len(), lattice.evanescent_roots.len());
    for e in &lattice.evanescent_roots {
        println!("  edge state: eta = {:.6}, k_hat = {:.6}", e.eta, e.value);
    }
    Ok(())
}
