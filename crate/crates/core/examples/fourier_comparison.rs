//! The standard momentum density |psi~(k)|^2 / 2 pi next to the discrete
//! p_R outcome distribution.

use std::f64::consts::PI;

use box_momentum::continuum::EnergyEigenstate;
use box_momentum::lattice::PhysicalConfig;
use box_momentum::measurement::{dirichlet_distribution, fourier_density};

fn main() -> Result<(), box_momentum::error::Error> {
    let cfg = PhysicalConfig::default();
    for l in 1..=3 {
        let state = EnergyEigenstate::dirichlet(&cfg, l)?;
        let f = fourier_density(&cfg, &state, 200.0 * PI, 9)?;
        let d = dirichlet_distribution(&cfg, l, 10_000)?;
        println!(
            "l = {l}: Fourier delta_k = {:.6}, p_R delta_k = {:.6}, pi l = {:.6}",
            f.delta_k.value(),
            d.delta_k.value(),
            PI * l as f64
        );
    }

    let state = EnergyEigenstate::dirichlet(&cfg, 1)?;
    let f = fourier_density(&cfg, &state, 200.0 * PI, 401)?;
    println!("\nl = 1 density at k = n pi:");
    for (k, rho) in f.samples.iter().filter(|(k, _)| k.abs() <= 4.0 * PI + 1e-9) {
        println!("  k = {:>8.4}  density = {rho:.6}", k);
    }
    match fourier_density(&cfg, &state, 4.0 * PI, 9) {
        Ok(_) => println!("K = 4 pi accepted"),
        Err(e) => println!("K = 4 pi rejected: {e}"),
    }

    let neumann = EnergyEigenstate::neumann(&cfg, 0)?;
    for cutoff in [1000.0, 4000.0, 16000.0] {
        let f = fourier_density(&cfg, &neumann, cutoff, 0)?;
        println!("Neumann psi_0, K = {cutoff}: partial <k^2> = {:.1}", f.partial_second_moment);
    }
    Ok(())
}
