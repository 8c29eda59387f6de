//! Acceptance criteria 1-11. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion fails.

use std::f64::consts::PI;

use box_momentum::continuum::{
    build_doubled_hamiltonian_lattice, energy_eigenstates, lattice_commutator_residual, probability_current,
    EnergyEigenstate, ShiftOperator, Sign, TwoComponentWavefunction,
};
use box_momentum::convergence::{converge_commutator, converge_energy, converge_momentum, DEFAULT_N_LIST};
use box_momentum::eigensolver::eigh_tridiagonal;
use box_momentum::lattice::{
    build_hamiltonian, build_hamiltonian_with_stencil, build_p_r, BoundaryStencil, LatticeGrid, MomentumExtension,
    PhysicalConfig, RobinParams,
};
use box_momentum::measurement::{
    dirichlet_distribution, fourier_density, general_distribution, neumann_ground_distribution, p_expectations,
    OverlapRule,
};
use box_momentum::quantization::{solve_energy_continuum, solve_energy_lattice};
use box_momentum::selfcheck::parity_defects;
use box_momentum::tridiagonal::hermiticity_defect;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// tolerances, one per quantitative statement of the criteria
const TOL_DIRICHLET_REL: f64 = 1e-12;
const TOL_LATTICE_ROOTS_ABS: f64 = 1e-9;
const TOL_MOMENTUM_SPECTRUM: f64 = 1e-10;
const TOL_QUADRATURE_PROB: f64 = 1e-8;
const TOL_TOTAL_PROB: f64 = 1e-6;
const TOL_DELTA_K: f64 = 1e-10;
const CUTOFF_N: i64 = 10_000;
const NEUMANN_GROWTH: f64 = 10.0;
const TOL_FOURIER_REL: f64 = 5e-3;
const TOL_DOUBLED_REL: f64 = 1e-6;
const TOL_DOUBLED_VECTOR: f64 = 1e-8;
const DOUBLED_MU: f64 = 1e6;
const TOL_SHIFT_IDENTITY: f64 = 1e-12;
const MIN_COMMUTATOR_ORDER: f64 = 1.0;
const TOL_CURRENT: f64 = 1e-10;
const TOL_EXPECTATION: f64 = 1e-10;
const MIN_CONVERGENCE_ORDER: f64 = 1.8;
const TOL_BOUND_REL: f64 = 1e-4;

fn cfg() -> PhysicalConfig {
    PhysicalConfig::default()
}

fn zeros(n: usize) -> Vec<f64> {
    vec![0.0; n]
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn criterion_1() -> Outcome {
    let levels = solve_energy_continuum(&cfg(), &RobinParams::dirichlet(), Some(10.5 * PI)).unwrap().energy_levels();
    let worst = (1..=10)
        .map(|l| {
            let want = PI * PI * (l * l) as f64 / 2.0;
            ((levels[l - 1] - want) / want).abs()
        })
        .fold(0.0, f64::max);
    outcome(levels.len() >= 10 && worst <= TOL_DIRICHLET_REL, format!("max rel err {worst:.3e} (tol {TOL_DIRICHLET_REL:e})"))
}

fn criterion_2() -> Outcome {
    let grid = LatticeGrid::new(99, 1.0).unwrap();
    let robin = RobinParams::symmetric(2.0).unwrap();
    let h = build_hamiltonian(&grid, &cfg(), &robin, &zeros(99)).unwrap();
    let eig = eigh_tridiagonal(&h, false).unwrap().eigenvalues;
    let roots = solve_energy_lattice(&grid, &cfg(), &robin, None).unwrap().energy_levels();
    let worst = eig.iter().zip(&roots).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let pass = eig.len() == roots.len() && worst <= TOL_LATTICE_ROOTS_ABS;
    outcome(pass, format!("{} roots, max |E_eig - E_root| {worst:.3e} (tol {TOL_LATTICE_ROOTS_ABS:e})", roots.len()))
}

fn criterion_3() -> Outcome {
    let ext = MomentumExtension::symmetric(1.0);
    let mut worst: f64 = 0.0;
    let mut min_gap = f64::INFINITY;
    for n in [9usize, 99] {
        let grid = LatticeGrid::new(n, 1.0).unwrap();
        let a = grid.spacing();
        let eig = eigh_tridiagonal(&build_p_r(&grid, &ext), false).unwrap().eigenvalues;
        let h = (n as i64 - 1) / 2;
        let mut want: Vec<f64> = (-h..=h).map(|j| (PI * j as f64 * a).sin() / a).collect();
        want.sort_by(f64::total_cmp);
        worst = worst.max(eig.iter().zip(&want).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
        min_gap = min_gap.min(eig.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min));
    }
    outcome(
        worst <= TOL_MOMENTUM_SPECTRUM && min_gap > 1e3 * TOL_MOMENTUM_SPECTRUM,
        format!("max dev {worst:.3e} (tol {TOL_MOMENTUM_SPECTRUM:e}), min gap {min_gap:.3e}"),
    )
}

fn criterion_4() -> Outcome {
    let ext = MomentumExtension::symmetric(1.0);
    let mut pass = true;
    let mut worst_quad: f64 = 0.0;
    let mut worst_total: f64 = 0.0;
    let mut worst_dk: f64 = 0.0;
    for l in 1..=5i64 {
        let closed = dirichlet_distribution(&cfg(), l, CUTOFF_N).unwrap();
        pass &= closed.probability(l) == Some(0.25) && closed.probability(-l) == Some(0.25);
        for e in closed.entries.iter().filter(|e| e.n.abs() != l) {
            let want = if (e.n - l).rem_euclid(2) == 1 {
                4.0 / (PI * PI) * (l * l) as f64 / (((l * l - e.n * e.n) as f64).powi(2))
            } else {
                0.0
            };
            pass &= (e.probability - want).abs() <= 1e-15 * want.max(1e-300);
        }
        let state = EnergyEigenstate::dirichlet(&cfg(), l).unwrap();
        let quad = general_distribution(&cfg(), &ext, &state, l + 4, OverlapRule::Quadrature).unwrap();
        for e in &quad.entries {
            worst_quad = worst_quad.max((e.probability - closed.probability(e.n).unwrap()).abs());
        }
        worst_total = worst_total.max((closed.total_probability() - 1.0).abs());
        let summed = (closed.second_moment - closed.mean_k * closed.mean_k).sqrt();
        worst_dk = worst_dk.max((summed - PI * l as f64).abs()).max((closed.delta_k.value() - PI * l as f64).abs());
    }
    pass &= worst_quad <= TOL_QUADRATURE_PROB && worst_total <= TOL_TOTAL_PROB && worst_dk <= TOL_DELTA_K;
    outcome(
        pass,
        format!("quadrature dev {worst_quad:.3e}, |total - 1| {worst_total:.3e}, delta_k dev {worst_dk:.3e}"),
    )
}

fn criterion_5() -> Outcome {
    let d = neumann_ground_distribution(&cfg(), CUTOFF_N).unwrap();
    let p1 = 2.0 / (PI * PI);
    let zeros_ok = d.entries.iter().filter(|e| e.n != 0 && e.n % 2 == 0).all(|e| e.probability == 0.0);
    let small = d.partial_second_moment(100);
    let large = d.partial_second_moment(CUTOFF_N);
    let pass = d.probability(0) == Some(0.5)
        && (d.probability(1).unwrap() - p1).abs() <= 1e-15
        && (d.probability(-1).unwrap() - p1).abs() <= 1e-15
        && zeros_ok
        && large > NEUMANN_GROWTH * small
        && d.delta_k.is_divergent();
    outcome(pass, format!("partial <k^2>: {small:.4e} at M=100, {large:.4e} at M=1e4"))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    for l in 1..=2 {
        let state = EnergyEigenstate::dirichlet(&cfg(), l).unwrap();
        let f = fourier_density(&cfg(), &state, 200.0 * PI, 0).unwrap();
        let want = PI * l as f64;
        worst = worst.max((f.delta_k.value() - want).abs() / want);
    }
    outcome(worst <= TOL_FOURIER_REL, format!("max rel dev of delta_k {worst:.3e} (tol {TOL_FOURIER_REL:e})"))
}

fn criterion_7() -> Outcome {
    let grid = LatticeGrid::new(99, 1.0).unwrap();
    let robin = RobinParams::symmetric(2.0).unwrap();
    let doubled = build_doubled_hamiltonian_lattice(&grid, &cfg(), &robin, DOUBLED_MU).unwrap();
    let single = eigh_tridiagonal(&build_hamiltonian(&grid, &cfg(), &robin, &zeros(99)).unwrap(), false).unwrap();
    let states = doubled.eigenstates(grid.spacing());
    let mut worst_e: f64 = 0.0;
    let mut worst_v: f64 = 0.0;
    for (s, want) in states.iter().take(5).zip(&single.eigenvalues) {
        worst_e = worst_e.max(((s.energy - want) / want).abs());
        worst_v = worst_v.max(s.e.iter().zip(&s.o).map(|(e, o)| (e - o).abs()).fold(0.0, f64::max));
    }
    let gap_ok = states[99].energy > DOUBLED_MU;
    outcome(
        worst_e <= TOL_DOUBLED_REL && worst_v <= TOL_DOUBLED_VECTOR && gap_ok,
        format!("max rel dev {worst_e:.3e}, max |psi_o - psi_e| {worst_v:.3e}, next band {:.4e}", states[99].energy),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let n = 513;
        let mut draw = || (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let psi = TwoComponentWavefunction::from_samples(draw(), draw(), 1.0);
        let back = ShiftOperator::new(Sign::Plus, 1.0).apply(&ShiftOperator::new(Sign::Minus, 1.0).apply(&psi));
        worst = worst.max(back.sub(&psi).max_abs(n));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut walls = true;
    for sign in [Sign::Plus, Sign::Minus] {
        let op = ShiftOperator::new(sign, 1.0);
        for (x, s) in [(0.5, one), (-0.5, -one)] {
            let m = op.matrix_at(x);
            // the diagonal is exact; the off-diagonal is cos(pi/2), 6e-17 in floating point
            walls &= m[0][0] == s && m[1][1] == s && m[0][1].norm() < 1e-16 && m[1][0].norm() < 1e-16;
        }
    }
    let ext = MomentumExtension::symmetric(1.0);
    let sizes = [27, 81, 243];
    let mut orders = Vec::new();
    let mut monotone = true;
    for sign in [Sign::Plus, Sign::Minus] {
        let r = converge_commutator(&cfg(), &ext, sign, 2, &sizes).unwrap();
        monotone &= r.is_monotone();
        orders.push(r.fitted_order.unwrap_or(0.0));
    }
    let check = lattice_commutator_residual(&LatticeGrid::new(27, 1.0).unwrap(), &ext, Sign::Minus, 2).unwrap();
    let pass = worst <= TOL_SHIFT_IDENTITY && walls && monotone && orders.iter().all(|&o| o >= MIN_COMMUTATOR_ORDER);
    outcome(
        pass,
        format!("|A+A- psi - psi| {worst:.3e}, wall identity {walls}, commutator orders {orders:.3?} (N=27 residual {check:.3e})"),
    )
}

fn criterion_9() -> Outcome {
    let grid = LatticeGrid::new(99, 1.0).unwrap();
    let mut herm: f64 = 0.0;
    for gamma in [RobinParams::symmetric(2.0).unwrap(), RobinParams::new(-5.0, 3.0).unwrap(), RobinParams::dirichlet()] {
        herm = herm.max(hermiticity_defect(&build_hamiltonian(&grid, &cfg(), &gamma, &zeros(99)).unwrap()));
    }
    for ext in [MomentumExtension::symmetric(1.0), MomentumExtension::new(0.3, -2.0)] {
        herm = herm.max(hermiticity_defect(&build_p_r(&grid, &ext)));
    }
    let mut parity: f64 = 0.0;
    for (ell, gamma) in [(1.0, 2.0), (0.0, 0.0), (-3.0, -5.0)] {
        parity = parity.max(parity_defects(&grid, &cfg(), ell, gamma).unwrap().iter().copied().fold(0.0, f64::max));
    }

    let mut states: Vec<EnergyEigenstate> = Vec::new();
    states.extend((1..=5).map(|l| EnergyEigenstate::dirichlet(&cfg(), l).unwrap()));
    states.extend((0..5).map(|l| EnergyEigenstate::neumann(&cfg(), l).unwrap()));
    for robin in [
        RobinParams::symmetric(2.0).unwrap(),
        RobinParams::symmetric(-5.0).unwrap(),
        RobinParams::new(-2.0, -2.0).unwrap(),
        RobinParams::new(3.0, -1.0).unwrap(),
    ] {
        states.extend(energy_eigenstates(&cfg(), &robin, 5).unwrap());
    }
    let current = states
        .iter()
        .flat_map(|s| [0.5, -0.5].map(|x| probability_current(&s.profile, x, &cfg()).abs()))
        .fold(0.0, f64::max);

    let big = LatticeGrid::new(999, 1.0).unwrap();
    let ext = MomentumExtension::symmetric(1.0);
    let mut expect: f64 = 0.0;
    for s in states.iter().take(10) {
        let (pr, pi) = p_expectations(&big, &ext, |x| s.profile.eval(x)).unwrap();
        expect = expect.max(pr.abs()).max(pi.abs());
    }
    let pass = herm == 0.0 && parity == 0.0 && current <= TOL_CURRENT && expect <= TOL_EXPECTATION;
    outcome(
        pass,
        format!(
            "hermiticity {herm:e}, parity {parity:e}, wall current {current:.3e} over {} states, <p_R>/<p_I> {expect:.3e}",
            states.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let e = converge_energy(&cfg(), &RobinParams::dirichlet(), 1, &DEFAULT_N_LIST, BoundaryStencil::Midpoint).unwrap();
    let p = converge_momentum(&cfg(), &MomentumExtension::symmetric(1.0), 1, &DEFAULT_N_LIST).unwrap();
    let oe = e.fitted_order.unwrap_or(0.0);
    let op = p.fitted_order.unwrap_or(0.0);
    outcome(
        oe >= MIN_CONVERGENCE_ORDER && op >= MIN_CONVERGENCE_ORDER,
        format!("energy order {oe:.4}, momentum order {op:.4} (min {MIN_CONVERGENCE_ORDER})"),
    )
}

fn criterion_11() -> Outcome {
    let robin = RobinParams::symmetric(-5.0).unwrap();
    let bound = solve_energy_continuum(&cfg(), &robin, None).unwrap().bound_roots;
    let grid = LatticeGrid::new(2001, 1.0).unwrap();
    let h = build_hamiltonian_with_stencil(&grid, &cfg(), &robin, &zeros(2001), BoundaryStencil::WallCentered).unwrap();
    let eig = eigh_tridiagonal(&h, false).unwrap().eigenvalues;
    let worst = bound.iter().zip(&eig).map(|(b, e)| ((b.energy - e) / b.energy).abs()).fold(0.0, f64::max);
    outcome(
        bound.len() == 2 && eig[1] < 0.0 && eig[2] > 0.0 && worst <= TOL_BOUND_REL,
        format!("{} bound roots, max rel dev {worst:.3e} (tol {TOL_BOUND_REL:e}, wall-centered stencil)", bound.len()),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, &str, fn() -> Outcome); 11] = [
        (1, "Dirichlet spectrum", criterion_1),
        (2, "lattice self-consistency", criterion_2),
        (3, "momentum quantization", criterion_3),
        (4, "Dirichlet measurement probabilities", criterion_4),
        (5, "Neumann probabilities and divergence", criterion_5),
        (6, "Fourier comparison", criterion_6),
        (7, "doubled Hamiltonian", criterion_7),
        (8, "operator algebra", criterion_8),
        (9, "symmetry suite", criterion_9),
        (10, "convergence orders", criterion_10),
        (11, "bound states", criterion_11),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        println!("{} criterion {id:>2} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
