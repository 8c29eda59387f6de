//! Energy levels of the box for Dirichlet, Neumann and Robin walls, from the
//! continuum root finder and from the lattice eigensolver.

use box_momentum::eigensolver::eigh_tridiagonal;
use box_momentum::lattice::{build_hamiltonian, LatticeGrid, PhysicalConfig, RobinParams};
use box_momentum::quantization::{solve_energy_continuum, solve_energy_lattice};

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::default();
    for (name, robin) in [
        ("dirichlet", RobinParams::dirichlet()),
        ("neumann", RobinParams::neumann()),
        ("gamma = 2", RobinParams::symmetric(2.0)?),
        ("gamma = (3, -1)", RobinParams::new(3.0, -1.0)?),
    ] {
        let levels = solve_energy_continuum(&cfg, &robin, Some(20.0))?.energy_levels();
        println!("{name:>16}: {:?}", &levels[..levels.len().min(5)]);
    }

    let grid = LatticeGrid::new(99, 1.0)?;
    let robin = RobinParams::symmetric(2.0)?;
    let h = build_hamiltonian(&grid, &cfg, &robin, &vec![0.0; 99])?;
    let eig = eigh_tridiagonal(&h, false)?.eigenvalues;
    let roots = solve_energy_lattice(&grid, &cfg, &robin, None)?;
    println!("\nN = 99, gamma = 2: lattice eigenvalues vs roots of the lattice condition");
    for (e, r) in eig.iter().zip(roots.real_roots.iter()).take(5) {
        println!("  E = {e:.12}  root k = {:.10}  E(k) = {:.12}", r.k, r.value);
    }
    let worst = eig.iter().zip(&roots.energy_levels()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    println!("  max deviation over all {} levels: {worst:.2e}", eig.len());
    Ok(())
}
