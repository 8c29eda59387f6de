//! Outcome probabilities of a p_R measurement on energy eigenstates and the
//! resulting momentum uncertainty.

use box_momentum::continuum::energy_eigenstates;
use box_momentum::lattice::{LatticeGrid, MomentumExtension, PhysicalConfig, RobinParams};
use box_momentum::measurement::{
    dirichlet_distribution, general_distribution, neumann_ground_distribution, p_expectations, OverlapRule,
};

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::default();
    let d = dirichlet_distribution(&cfg, 1, 10_000)?;
    println!("Dirichlet l = 1");
    for n in -3..=3 {
        println!("  P(n = {n:>2}) = {:.7}", d.probability(n).unwrap());
    }
    println!("  total = {:.12} (tail {:.2e}), delta_k = {:.10}", d.total_probability(), d.tail_mass, d.delta_k.value());

    let nd = neumann_ground_distribution(&cfg, 10_000)?;
    println!("\nNeumann ground state: P(0) = {}, P(1) = {:.7}", nd.probability(0).unwrap(), nd.probability(1).unwrap());
    for m in [10, 100, 1000, 10_000] {
        println!("  partial <k^2> up to |n| = {m:>5}: {:.1}", nd.partial_second_moment(m));
    }

    let robin = RobinParams::symmetric(2.0)?;
    let state = energy_eigenstates(&cfg, &robin, 1)?.remove(0);
    println!("\nRobin gamma = 2 ground state, E = {:.6}", state.energy);
    for ell in [0.0, 1.0, 5.0] {
        let g = general_distribution(&cfg, &MomentumExtension::symmetric(ell), &state, 200, OverlapRule::Analytic)?;
        println!("  ell = {ell}: P(0) = {:.10}, P(2) = {:.10}, total {:.8}", g.probability(0).unwrap(), g.probability(2).unwrap(), g.total_probability());
    }

    let grid = LatticeGrid::new(999, 1.0)?;
    let ext = MomentumExtension::symmetric(1.0);
    let (pr, pi) = p_expectations(&grid, &ext, |x| state.profile.eval(x))?;
    println!("  <p_R> = {pr:.2e}, <p_I> = {pi:.2e}");
    Ok(())
}
