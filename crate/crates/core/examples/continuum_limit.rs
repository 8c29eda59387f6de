//! Convergence of lattice energies and momenta to their continuum values.

use box_momentum::continuum::Sign;
use box_momentum::convergence::{converge_commutator, converge_energy, converge_momentum, ConvergenceReport, DEFAULT_N_LIST};
use box_momentum::lattice::{BoundaryStencil, MomentumExtension, PhysicalConfig, RobinParams};

fn show(r: &ConvergenceReport) {
    println!("{} (reference {:.10})", r.observable, r.reference);
    for (n, e) in r.n_list.iter().zip(&r.errors) {
        println!("  N = {n:>4}: error {e:.4e}");
    }
    println!("  fitted order {:?}, fit residual {:?}", r.fitted_order, r.fit_residual);
}

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::default();
    show(&converge_energy(&cfg, &RobinParams::dirichlet(), 1, &DEFAULT_N_LIST, BoundaryStencil::Midpoint)?);
    let robin = RobinParams::symmetric(2.0)?;
    show(&converge_energy(&cfg, &robin, 1, &DEFAULT_N_LIST, BoundaryStencil::Midpoint)?);
    show(&converge_energy(&cfg, &robin, 1, &DEFAULT_N_LIST, BoundaryStencil::WallCentered)?);
    show(&converge_momentum(&cfg, &MomentumExtension::symmetric(1.0), 1, &DEFAULT_N_LIST)?);
    show(&converge_commutator(&cfg, &MomentumExtension::symmetric(1.0), Sign::Plus, 2, &[27, 81, 243])?);
    Ok(())
}
