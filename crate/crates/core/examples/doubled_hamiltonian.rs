//! The doubled Hamiltonian H(mu) = diag(H_+, H_-) + mu P_- on the lattice, and
//! the special boundary parameters it is built from.

use box_momentum::continuum::{build_doubled_hamiltonian_lattice, default_penalty, validate_general_bc, GeneralBCParams};
use box_momentum::eigensolver::eigh_tridiagonal;
use box_momentum::lattice::{build_hamiltonian, LatticeGrid, MomentumExtension, PhysicalConfig, RobinParams};
use box_momentum::measurement::penalty_energy;

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::default();
    let bc = GeneralBCParams::special(-4.0, -4.0);
    let check = validate_general_bc(&bc);
    println!("special parameters c = -4: valid {}, gamma = {:?}", check.valid, check.gamma);
    let (gp, gm) = check.gamma.expect("special form");
    let robin = RobinParams::new(gp, gm)?;

    let grid = LatticeGrid::new(99, 1.0)?;
    let mu = default_penalty(&cfg);
    let h = build_doubled_hamiltonian_lattice(&grid, &cfg, &robin, mu)?;
    let single = eigh_tridiagonal(&build_hamiltonian(&grid, &cfg, &robin, &vec![0.0; 99])?, false)?.eigenvalues;
    let states = h.eigenstates(grid.spacing());
    println!("mu = {mu:.4e}");
    for (s, e) in states.iter().zip(&single).take(5) {
        let split = s.e.iter().zip(&s.o).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("  E = {:.10} (H: {e:.10}), max |psi_e - psi_o| = {split:.1e}", s.energy);
    }
    println!("  first level of the lifted band: {:.6e}", states[99].energy);

    let ext = MomentumExtension::symmetric(1.0);
    let growth = penalty_energy(&LatticeGrid::new(31, 1.0)?, &cfg, &robin, &ext, std::f64::consts::PI, &[1e2, 1e3, 1e4, 1e5])?;
    println!("\n<H(mu)> of the momentum eigenstate k = pi:");
    for (mu, e) in growth {
        println!("  mu = {mu:.0e}: {e:.4e}");
    }

    let mut general = GeneralBCParams::special(0.0, 0.0);
    (general.a_plus, general.b_plus, general.c_plus, general.d_plus) = (2.0, 1.0, 5.0, 2.0);
    let v = validate_general_bc(&general);
    println!("\n(a, b, c, d) = (2, 1, 5, 2): valid {}, special {}", v.valid, v.reduces_to_special);
    general.d_plus = 3.0;
    println!("(a, b, c, d) = (2, 1, 5, 3): {:?}", validate_general_bc(&general).violations);
    Ok(())
}
