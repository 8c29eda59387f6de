//! Doubled Hamiltonian `H(mu) = diag(H_+, H_-) + mu P_-` and the general
//! boundary family of the two-component problem.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{build_hamiltonian, LatticeGrid, PhysicalConfig, RobinParams};

/// Penalty used when none is given: `10^6` times the Dirichlet ground-state scale.
pub fn default_penalty(cfg: &PhysicalConfig) -> f64 {
    1e6 * std::f64::consts::PI.powi(2) / (2.0 * cfg.mass * cfg.box_length.powi(2))
}

/// Boundary data at each wall: a phase `theta` and a real `2x2` matrix
/// `(a b; c d)` with determinant `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct GeneralBCParams {
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub a_plus: f64,
    pub b_plus: f64,
    pub c_plus: f64,
    pub d_plus: f64,
    pub a_minus: f64,
    pub b_minus: f64,
    pub c_minus: f64,
    pub d_minus: f64,
}

impl GeneralBCParams {
    /// `theta = 0, a = 1, b = 0, d = -1`, leaving `c` free on each wall.
    pub fn special(c_plus: f64, c_minus: f64) -> Self {
        Self {
            theta_plus: 0.0,
            theta_minus: 0.0,
            a_plus: 1.0,
            b_plus: 0.0,
            c_plus,
            d_plus: -1.0,
            a_minus: 1.0,
            b_minus: 0.0,
            c_minus,
            d_minus: -1.0,
        }
    }

    pub fn determinants(&self) -> (f64, f64) {
        (
            self.a_plus * self.d_plus - self.b_plus * self.c_plus,
            self.a_minus * self.d_minus - self.b_minus * self.c_minus,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BcValidation {
    pub valid: bool,
    pub violations: Vec<String>,
    pub determinants: (f64, f64),
    pub reduces_to_special: bool,
    /// `gamma_+- = -c_+- / 2` when the parameters are of the special form.
    pub gamma: Option<(f64, f64)>,
}

const DET_TOL: f64 = 1e-12;

pub fn validate_general_bc(p: &GeneralBCParams) -> BcValidation {
    let fields = [
        ("theta_plus", p.theta_plus),
        ("theta_minus", p.theta_minus),
        ("a_plus", p.a_plus),
        ("b_plus", p.b_plus),
        ("c_plus", p.c_plus),
        ("d_plus", p.d_plus),
        ("a_minus", p.a_minus),
        ("b_minus", p.b_minus),
        ("c_minus", p.c_minus),
        ("d_minus", p.d_minus),
    ];
    let mut violations: Vec<String> =
        fields.iter().filter(|(_, v)| !v.is_finite()).map(|(n, v)| format!("{n} is not a finite real ({v})")).collect();
    let dets = p.determinants();
    for (wall, d) in [("plus", dets.0), ("minus", dets.1)] {
        if !((d + 1.0).abs() <= DET_TOL) {
            violations.push(format!("determinant at the {wall} wall is {d}, expected -1"));
        }
    }
    let phase_one = |t: f64| (t.cos() - 1.0).abs() <= DET_TOL && t.sin().abs() <= DET_TOL;
    let special = violations.is_empty()
        && phase_one(p.theta_plus)
        && phase_one(p.theta_minus)
        && [p.a_plus, p.a_minus].iter().all(|&a| a == 1.0)
        && [p.b_plus, p.b_minus].iter().all(|&b| b == 0.0)
        && [p.d_plus, p.d_minus].iter().all(|&d| d == -1.0);
    BcValidation {
        valid: violations.is_empty(),
        violations,
        determinants: dets,
        reduces_to_special: special,
        gamma: special.then(|| (-0.5 * p.c_plus, -0.5 * p.c_minus)),
    }
}

/// Dense `2N x 2N` lattice `H(mu)` in the `(e, o)` basis: sites `0..N` hold
/// `psi_e`, sites `N..2N` hold `psi_o`.
#[derive(Debug, Clone)]
pub struct DoubledHamiltonian {
    pub matrix: DMatrix<f64>,
    pub mu: f64,
    pub num_sites: usize,
}

/// Eigenpair of `H(mu)` with the two components split out.
#[derive(Debug, Clone)]
pub struct DoubledState {
    pub energy: f64,
    pub e: Vec<f64>,
    pub o: Vec<f64>,
}

impl DoubledHamiltonian {
    /// Hermiticity defect `max |H - H^T|`, zero by construction.
    pub fn hermiticity_defect(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// All eigenpairs in ascending order, vectors normalized in the lattice norm
    /// `a sum |e|^2 + |o|^2 = 1`.
    pub fn eigenstates(&self, spacing: f64) -> Vec<DoubledState> {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let n = self.num_sites;
        let scale = 1.0 / spacing.sqrt();
        order
            .into_iter()
            .map(|i| {
                let v: DVector<f64> = eig.eigenvectors.column(i).into_owned() * scale;
                // fix the overall sign so the largest entry is positive
                let pivot = v.iter().copied().fold(0.0, |m: f64, x| if x.abs() > m.abs() { x } else { m });
                let v = if pivot < 0.0 { -v } else { v };
                DoubledState { energy: eig.eigenvalues[i], e: v.rows(0, n).iter().copied().collect(), o: v.rows(n, n).iter().copied().collect() }
            })
            .collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.matrix.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// `H(mu)` on the lattice: `H_+` is the single-component Hamiltonian with the
/// given Robin walls (`gamma = -c/2` of the special boundary family), `H_-` is
/// the Dirichlet Hamiltonian, and `mu P_-` lifts the antisymmetric sector.
///
/// In the `(e, o)` basis the blocks are `ee = oo = (H_+ + H_- + mu)/2` and
/// `eo = oe = (H_+ - H_- - mu)/2`.
pub fn build_doubled_hamiltonian_lattice(
    grid: &LatticeGrid,
    cfg: &PhysicalConfig,
    robin: &RobinParams,
    mu: f64,
) -> Result<DoubledHamiltonian> {
    if !(mu >= 0.0) || !mu.is_finite() {
        return Err(Error::NegativePenalty(mu));
    }
    let n = grid.num_sites();
    let zero = vec![0.0; n];
    let hp = build_hamiltonian(grid, cfg, robin, &zero)?.to_dense().map(|z| z.re);
    let hm = build_hamiltonian(grid, cfg, &RobinParams::dirichlet(), &zero)?.to_dense().map(|z| z.re);
    let id = DMatrix::<f64>::identity(n, n) * mu;
    let diag = (&hp + &hm + &id) * 0.5;
    let off = (&hp - &hm - &id) * 0.5;
    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(&diag);
    m.view_mut((n, n), (n, n)).copy_from(&diag);
    m.view_mut((0, n), (n, n)).copy_from(&off);
    m.view_mut((n, 0), (n, n)).copy_from(&off);
    Ok(DoubledHamiltonian { matrix: m, mu, num_sites: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolver::eigh_tridiagonal;

    fn single(grid: &LatticeGrid, robin: &RobinParams) -> Vec<f64> {
        let h = build_hamiltonian(grid, &PhysicalConfig::default(), robin, &vec![0.0; grid.num_sites()]).unwrap();
        eigh_tridiagonal(&h, false).unwrap().eigenvalues
    }

    #[test]
    fn validator_examples() {
        let v = validate_general_bc(&GeneralBCParams::special(-4.0, -4.0));
        assert!(v.valid && v.reduces_to_special);
        assert_eq!(v.gamma, Some((2.0, 2.0)));

        let mut p = GeneralBCParams::special(0.0, 0.0);
        p.d_plus = 1.0;
        let v = validate_general_bc(&p);
        assert!(!v.valid);
        assert_eq!(v.violations.len(), 1);

        let mut p = GeneralBCParams::special(0.0, 0.0);
        (p.a_plus, p.b_plus, p.c_plus, p.d_plus) = (2.0, 1.0, 5.0, 2.0);
        let v = validate_general_bc(&p);
        assert!(v.valid && !v.reduces_to_special && v.gamma.is_none());
    }

    #[test]
    fn non_finite_entry_is_rejected() {
        let mut p = GeneralBCParams::special(1.0, 1.0);
        p.theta_minus = f64::NAN;
        assert!(!validate_general_bc(&p).valid);
    }

    #[test]
    fn zero_penalty_is_union_of_sectors() {
        let grid = LatticeGrid::new(15, 1.0).unwrap();
        let h = build_doubled_hamiltonian_lattice(&grid, &PhysicalConfig::default(), &RobinParams::neumann(), 0.0).unwrap();
        let mut want = single(&grid, &RobinParams::neumann());
        want.extend(single(&grid, &RobinParams::dirichlet()));
        want.sort_by(f64::total_cmp);
        let got = h.eigenvalues();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-9 * w.abs().max(1.0), "{g} vs {w}");
        }
    }

    #[test]
    fn large_penalty_keeps_robin_band() {
        let grid = LatticeGrid::new(99, 1.0).unwrap();
        let cfg = PhysicalConfig::default();
        let robin = RobinParams::symmetric(2.0).unwrap();
        let h = build_doubled_hamiltonian_lattice(&grid, &cfg, &robin, 1e6).unwrap();
        assert_eq!(h.hermiticity_defect(), 0.0);
        let want = single(&grid, &robin);
        let states = h.eigenstates(grid.spacing());
        for (s, w) in states.iter().take(5).zip(&want) {
            assert!((s.energy - w).abs() <= 1e-6 * w.abs(), "{} vs {w}", s.energy);
            let diff = s.e.iter().zip(&s.o).map(|(e, o)| (e - o).abs()).fold(0.0, f64::max);
            assert!(diff < 1e-8, "{diff}");
        }
        assert!(states[grid.num_sites()].energy > 1e6);
    }

    #[test]
    fn negative_penalty_rejected() {
        let grid = LatticeGrid::new(5, 1.0).unwrap();
        let r = build_doubled_hamiltonian_lattice(&grid, &PhysicalConfig::default(), &RobinParams::neumann(), -1.0);
        assert_eq!(r.unwrap_err(), Error::NegativePenalty(-1.0));
    }
}
