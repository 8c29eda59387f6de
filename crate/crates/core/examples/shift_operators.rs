//! Momentum shift operators A_+- and the commutator [p_R, A_+-] = +-(pi/L) A_+-.

use std::f64::consts::PI;

use box_momentum::continuum::{apply_p_r, momentum_eigenstate, lattice_commutator_residual, ShiftOperator, Sign};
use box_momentum::lattice::{LatticeGrid, MomentumExtension, PhysicalConfig};
use num_complex::Complex64;

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::default();
    let ext = MomentumExtension::symmetric(1.0);
    let phi = momentum_eigenstate(&cfg, &ext, 2.0 * PI, 2)?.wavefunction();
    let lowered = ShiftOperator::new(Sign::Minus, 1.0).apply(&phi);
    // A_- phi_k is an eigenstate with k - pi/L
    let defect = apply_p_r(&lowered).sub(&lowered.scale(Complex64::new(PI, 0.0))).max_abs(201);
    println!("|p_R A_- phi_2pi - pi A_- phi_2pi| = {defect:.2e}");
    let (e, o) = lowered.eval(0.5);
    println!("A_- phi at the upper wall: ({e:.4}, {o:.4}), ratio {:.4}", o / e);

    for sign in [Sign::Plus, Sign::Minus] {
        let m = ShiftOperator::new(sign, 1.0);
        for x in [-0.5, 0.0, 0.5] {
            let a = m.matrix_at(x);
            println!("{sign:?} at x = {x:>4}: [[{:.3}, {:.3}], [{:.3}, {:.3}]]", a[0][0], a[0][1], a[1][0], a[1][1]);
        }
    }

    println!("\nlattice commutator defect on the five lowest momentum states:");
    for n in [27, 81, 243, 729] {
        let r = lattice_commutator_residual(&LatticeGrid::new(n, 1.0)?, &ext, Sign::Minus, 2)?;
        println!("  N = {n:>3}: {r:.4e}");
    }
    Ok(())
}
