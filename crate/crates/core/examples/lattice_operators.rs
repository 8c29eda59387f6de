//! Build the lattice Hamiltonian and momenta for a small box and check their
//! Hermiticity and parity properties.

use box_momentum::lattice::{
    build_full_momentum, build_hamiltonian, build_p_i, build_p_r, build_parity, LatticeGrid, MomentumExtension,
    PhysicalConfig, RobinParams,
};
use box_momentum::tridiagonal::hermiticity_defect;
use num_complex::Complex64;

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::new(1.0, 1.0)?;
    let grid = LatticeGrid::new(7, cfg.box_length)?;
    let robin = RobinParams::symmetric(2.0)?;
    let ext = MomentumExtension::symmetric(1.0);

    let h = build_hamiltonian(&grid, &cfg, &robin, &vec![0.0; grid.num_sites()])?;
    let p_r = build_p_r(&grid, &ext);
    let p_i = build_p_i(&grid);
    println!("sites x_j = {:?}", grid.sites());
    println!("H diagonal: {:?}", h.diagonal.iter().map(|z| z.re).collect::<Vec<_>>());
    println!("H off-diagonal: {}", h.upper[0].re);
    println!("p_R corners: {} and {}", p_r.diagonal[0].re, p_r.diagonal[6].re);
    println!("hermiticity defects: H {:e}, p_R {:e}", hermiticity_defect(&h), hermiticity_defect(&p_r));
    println!("p = p_R + i p_I is not Hermitian: defect {:e}", hermiticity_defect(&build_full_momentum(&grid, &ext)));

    let u = build_parity(&grid);
    let flipped = u.conjugate(&p_r).add(&p_r);
    println!("max |U p_R U + p_R| = {:e}", flipped.max_norm());
    let flipped = u.conjugate(&p_i).add(&p_i);
    println!("max |U p_I U + p_I| = {:e}", flipped.max_norm());
    let odd = p_r.matvec(&vec![Complex64::new(1.0, 0.0); grid.num_sites()]);
    println!("p_R on a constant: {:?}", odd.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>());
    Ok(())
}
