//! Lattice regularization of the box: grid, boundary parameters and the
//! explicit operator matrices.
//!
//! The interval `[-L/2, L/2]` is cut into `N` (odd) segments of width `a = L/N`
//! with one site at the middle of each segment, so site labels are the
//! integers `n = -(N-1)/2 ..= (N-1)/2` and positions are `x = n a`.
//!
//! All builders are pure functions of their inputs. Units have `hbar = 1`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tridiagonal::ComplexTridiagonal;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Particle mass and box length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConfig {
    pub mass: f64,
    pub box_length: f64,
}

impl PhysicalConfig {
    pub fn new(mass: f64, box_length: f64) -> Result<Self> {
        positive("mass", mass)?;
        positive("box_length", box_length)?;
        Ok(Self { mass, box_length })
    }

    pub fn validate(&self) -> Result<()> {
        positive("mass", self.mass)?;
        positive("box_length", self.box_length)
    }
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        Self { mass: 1.0, box_length: 1.0 }
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// Midpoint lattice with an odd number of sites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeGrid {
    num_sites: usize,
    box_length: f64,
}

impl LatticeGrid {
    pub fn new(num_sites: usize, box_length: f64) -> Result<Self> {
        if num_sites < 3 || num_sites % 2 == 0 {
            return Err(Error::InvalidSiteCount(num_sites));
        }
        positive("box_length", box_length)?;
        Ok(Self { num_sites, box_length })
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn spacing(&self) -> f64 {
        self.box_length / self.num_sites as f64
    }

    /// Largest site label `(N-1)/2`.
    pub fn half_width(&self) -> i64 {
        (self.num_sites as i64 - 1) / 2
    }

    /// Integer label `n` of storage index `j`.
    pub fn label(&self, j: usize) -> i64 {
        j as i64 - self.half_width()
    }

    pub fn site(&self, j: usize) -> f64 {
        self.label(j) as f64 * self.spacing()
    }

    pub fn sites(&self) -> Vec<f64> {
        (0..self.num_sites).map(|j| self.site(j)).collect()
    }
}

/// Robin parameter on one wall: a real `gamma`, or the Dirichlet limit `gamma -> inf`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gamma {
    Finite(f64),
    Dirichlet,
}

impl Gamma {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            Gamma::Finite(g) => Some(g),
            Gamma::Dirichlet => None,
        }
    }

    /// The wall condition written as `p psi +- q psi' = 0`, returned as `(p, q)`.
    pub fn coefficients(&self) -> (f64, f64) {
        match *self {
            Gamma::Finite(g) => (g, 1.0),
            Gamma::Dirichlet => (1.0, 0.0),
        }
    }
}

/// Robin parameters of the Hamiltonian:
/// `gamma_+ psi(L/2) + psi'(L/2) = 0` and `gamma_- psi(-L/2) - psi'(-L/2) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobinParams {
    pub plus: Gamma,
    pub minus: Gamma,
}

impl RobinParams {
    pub fn new(gamma_plus: f64, gamma_minus: f64) -> Result<Self> {
        for g in [gamma_plus, gamma_minus] {
            if !g.is_finite() {
                return Err(Error::NonFiniteRobin(g));
            }
        }
        Ok(Self { plus: Gamma::Finite(gamma_plus), minus: Gamma::Finite(gamma_minus) })
    }

    pub fn symmetric(gamma: f64) -> Result<Self> {
        Self::new(gamma, gamma)
    }

    pub fn neumann() -> Self {
        Self { plus: Gamma::Finite(0.0), minus: Gamma::Finite(0.0) }
    }

    pub fn dirichlet() -> Self {
        Self { plus: Gamma::Dirichlet, minus: Gamma::Dirichlet }
    }

    pub fn is_dirichlet(&self) -> bool {
        self.plus == Gamma::Dirichlet && self.minus == Gamma::Dirichlet
    }

    pub fn is_finite(&self) -> bool {
        self.plus.finite().is_some() && self.minus.finite().is_some()
    }

    /// Smallest finite parameter, if any.
    pub fn min_finite(&self) -> Option<f64> {
        [self.plus, self.minus].iter().filter_map(Gamma::finite).reduce(f64::min)
    }
}

/// Momentum self-adjoint extension `lambda_+- = i ell_+-`, stored through the
/// real numbers `ell_+-` so that `lambda` is purely imaginary by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumExtension {
    pub ell_plus: f64,
    pub ell_minus: f64,
}

impl MomentumExtension {
    pub fn new(ell_plus: f64, ell_minus: f64) -> Self {
        Self { ell_plus, ell_minus }
    }

    pub fn symmetric(ell: f64) -> Self {
        Self::new(ell, ell)
    }

    pub fn lambda_plus(&self) -> Complex64 {
        Complex64::new(0.0, self.ell_plus)
    }

    pub fn lambda_minus(&self) -> Complex64 {
        Complex64::new(0.0, self.ell_minus)
    }

    pub fn is_parity_symmetric(&self) -> bool {
        self.ell_plus == self.ell_minus
    }
}

/// How the wall enters the corner of the lattice Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryStencil {
    /// Corner stencil `-1` plus `gamma / (2 m a)` on the diagonal. The Robin
    /// condition is imposed at the outermost site, half a spacing from the wall.
    #[default]
    Midpoint,
    /// Ghost site mirrored across the wall so the Robin condition holds at
    /// `x = +-L/2`: `psi_ghost = r psi_edge` with `r = (1 - gamma a/2)/(1 + gamma a/2)`.
    /// The Dirichlet corner `-3` is the `gamma -> inf` limit of this stencil.
    WallCentered,
}

/// Corner entry of the bare `(1, -2, 1)` Laplacian stencil and extra diagonal
/// term in units of `1/(2 m a)`.
fn corner_terms(gamma: Gamma, stencil: BoundaryStencil, a: f64) -> Result<(f64, f64)> {
    match (gamma, stencil) {
        (Gamma::Dirichlet, _) => Ok((-3.0, 0.0)),
        (Gamma::Finite(g), BoundaryStencil::Midpoint) => Ok((-1.0, g)),
        (Gamma::Finite(g), BoundaryStencil::WallCentered) => {
            let denom = 1.0 + 0.5 * g * a;
            if denom.abs() < 1e-12 {
                return Err(Error::StencilPole { gamma: g, spacing: a });
            }
            Ok((-2.0 + (1.0 - 0.5 * g * a) / denom, 0.0))
        }
    }
}

/// Lattice Hamiltonian with the midpoint corner stencil.
///
/// `H = -1/(2 m a^2) T + diag(V) + gamma_-/(2 m a) e_0 e_0^T + gamma_+/(2 m a) e_last e_last^T`
/// where `T` has `-2` on the interior diagonal, `-1` in the corners and `1` off
/// the diagonal. A Dirichlet wall replaces its corner `-1` by `-3`.
pub fn build_hamiltonian(
    grid: &LatticeGrid,
    cfg: &PhysicalConfig,
    robin: &RobinParams,
    potential: &[f64],
) -> Result<ComplexTridiagonal> {
    build_hamiltonian_with_stencil(grid, cfg, robin, potential, BoundaryStencil::Midpoint)
}

pub fn build_hamiltonian_with_stencil(
    grid: &LatticeGrid,
    cfg: &PhysicalConfig,
    robin: &RobinParams,
    potential: &[f64],
    stencil: BoundaryStencil,
) -> Result<ComplexTridiagonal> {
    cfg.validate()?;
    let n = grid.num_sites();
    if potential.len() != n {
        return Err(Error::PotentialLength { expected: n, got: potential.len() });
    }
    if let Some(index) = potential.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinitePotential { index });
    }
    for g in [robin.plus, robin.minus] {
        if let Gamma::Finite(v) = g {
            if !v.is_finite() {
                return Err(Error::NonFiniteRobin(v));
            }
        }
    }
    let a = grid.spacing();
    let kinetic = -1.0 / (2.0 * cfg.mass * a * a);
    let wall = 1.0 / (2.0 * cfg.mass * a);

    let mut stencil_diag = vec![-2.0; n];
    let mut extra = vec![0.0; n];
    let (c_minus, g_minus) = corner_terms(robin.minus, stencil, a)?;
    let (c_plus, g_plus) = corner_terms(robin.plus, stencil, a)?;
    stencil_diag[0] = c_minus;
    extra[0] = g_minus;
    stencil_diag[n - 1] = c_plus;
    extra[n - 1] = g_plus;

    let diagonal = (0..n)
        .map(|j| re(kinetic * stencil_diag[j] + potential[j] + wall * extra[j]))
        .collect();
    Ok(ComplexTridiagonal {
        diagonal,
        upper: vec![re(kinetic); n - 1],
        lower: vec![re(kinetic); n - 1],
    })
}

/// Forward difference `p_F = -(i/a) (-1 on the diagonal, 1 above)` with the
/// last diagonal entry replaced by `lambda_+`.
pub fn build_p_forward(grid: &LatticeGrid, ext: &MomentumExtension) -> ComplexTridiagonal {
    let n = grid.num_sites();
    let pref = -I / grid.spacing();
    let mut diagonal = vec![-pref; n];
    diagonal[n - 1] = pref * ext.lambda_plus();
    ComplexTridiagonal {
        diagonal,
        upper: vec![pref; n - 1],
        lower: vec![re(0.0); n - 1],
    }
}

/// Backward difference `p_B = -(i/a) (1 on the diagonal, -1 below)` with the
/// first diagonal entry replaced by `-lambda_-`.
pub fn build_p_backward(grid: &LatticeGrid, ext: &MomentumExtension) -> ComplexTridiagonal {
    let n = grid.num_sites();
    let pref = -I / grid.spacing();
    let mut diagonal = vec![pref; n];
    diagonal[0] = -pref * ext.lambda_minus();
    ComplexTridiagonal {
        diagonal,
        upper: vec![re(0.0); n - 1],
        lower: vec![-pref; n - 1],
    }
}

/// Hermitian momentum `p_R = -(i/2a) (1 above, -1 below, -lambda_- and lambda_+ in the corners)`.
///
/// With `lambda = i ell` the corners are the real numbers `-ell_-/(2a)` and
/// `ell_+/(2a)`; they are written that way so the result is Hermitian bit for bit.
pub fn build_p_r(grid: &LatticeGrid, ext: &MomentumExtension) -> ComplexTridiagonal {
    let n = grid.num_sites();
    let a = grid.spacing();
    let mut diagonal = vec![re(0.0); n];
    diagonal[0] = re(-ext.ell_minus / (2.0 * a));
    diagonal[n - 1] += re(ext.ell_plus / (2.0 * a));
    ComplexTridiagonal {
        diagonal,
        upper: vec![Complex64::new(0.0, -0.5 / a); n - 1],
        lower: vec![Complex64::new(0.0, 0.5 / a); n - 1],
    }
}

/// Boundary part `p_I = (1/2a) diag(1, 0, ..., 0, -1)`; the full lattice
/// momentum is `p = p_R + i p_I`.
pub fn build_p_i(grid: &LatticeGrid) -> ComplexTridiagonal {
    let n = grid.num_sites();
    let a = grid.spacing();
    let mut diag = vec![0.0; n];
    diag[0] = 0.5 / a;
    diag[n - 1] -= 0.5 / a;
    ComplexTridiagonal::from_real_diagonal(&diag)
}

/// `p = p_R + i p_I`.
pub fn build_full_momentum(grid: &LatticeGrid, ext: &MomentumExtension) -> ComplexTridiagonal {
    build_p_r(grid, ext).add(&build_p_i(grid).scale(I))
}

/// Site reflection `(U_P psi)_x = psi_{-x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityOperator {
    n: usize,
}

pub fn build_parity(grid: &LatticeGrid) -> ParityOperator {
    ParityOperator { n: grid.num_sites() }
}

impl ParityOperator {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        psi.iter().rev().copied().collect()
    }

    /// `U_P A U_P^dagger`, which is again tridiagonal.
    pub fn conjugate(&self, a: &ComplexTridiagonal) -> ComplexTridiagonal {
        ComplexTridiagonal {
            diagonal: a.diagonal.iter().rev().copied().collect(),
            upper: a.lower.iter().rev().copied().collect(),
            lower: a.upper.iter().rev().copied().collect(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| if i + j == n - 1 { re(1.0) } else { re(0.0) })
    }
}

/// Values on the lattice sites with the inner product `a sum conj(chi) psi`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeWavefunction {
    pub values: Vec<Complex64>,
    pub grid: LatticeGrid,
}

impl LatticeWavefunction {
    pub fn new(grid: LatticeGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.num_sites() {
            return Err(Error::PotentialLength { expected: grid.num_sites(), got: values.len() });
        }
        Ok(Self { values, grid })
    }

    /// Samples `f` at the sites.
    pub fn sample(grid: LatticeGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.sites().into_iter().map(f).collect();
        Self { values, grid }
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        let a = self.grid.spacing();
        self.values.iter().zip(&other.values).map(|(c, p)| c.conj() * p).sum::<Complex64>() * a
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    pub fn normalized(&self) -> Self {
        let s = 1.0 / self.norm();
        Self { values: self.values.iter().map(|v| v * s).collect(), grid: self.grid }
    }

    pub fn apply(&self, op: &ComplexTridiagonal) -> Self {
        Self { values: op.matvec(&self.values), grid: self.grid }
    }

    /// `<psi|A|psi>`.
    pub fn expectation(&self, op: &ComplexTridiagonal) -> Complex64 {
        self.inner(&self.apply(op))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tridiagonal::hermiticity_defect;

    fn unit() -> PhysicalConfig {
        PhysicalConfig::default()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn grid_is_symmetric_midpoint() {
        let g = LatticeGrid::new(9, 1.0).unwrap();
        let x = g.sites();
        let a = g.spacing();
        assert!((x[0] + (1.0 - a) / 2.0).abs() < 1e-15);
        for j in 0..9 {
            assert!((x[j] + x[8 - j]).abs() < 1e-15);
        }
        for w in x.windows(2) {
            assert!((w[1] - w[0] - a).abs() < 1e-15);
        }
        assert!(LatticeGrid::new(8, 1.0).is_err());
        assert!(LatticeGrid::new(1, 1.0).is_err());
        assert!(LatticeGrid::new(5, -1.0).is_err());
    }

    #[test]
    fn hamiltonian_three_sites() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let h = build_hamiltonian(&g, &unit(), &RobinParams::neumann(), &[0.0; 3]).unwrap();
        let d: Vec<f64> = h.diagonal.iter().map(|z| z.re).collect();
        assert_eq!(d, vec![4.5, 9.0, 4.5]);
        assert!(h.upper.iter().chain(&h.lower).all(|z| *z == re(-4.5)));

        let robin = RobinParams::new(2.0, 0.0).unwrap();
        let h = build_hamiltonian(&g, &unit(), &robin, &[0.0; 3]).unwrap();
        assert!((h.diagonal[2].re - 7.5).abs() < 1e-13);
        assert!((h.diagonal[0].re - 4.5).abs() < 1e-13);
        assert!(h.is_hermitian());
    }

    #[test]
    fn dirichlet_corner_is_minus_three() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        for stencil in [BoundaryStencil::Midpoint, BoundaryStencil::WallCentered] {
            let h = build_hamiltonian_with_stencil(&g, &unit(), &RobinParams::dirichlet(), &[0.0; 3], stencil)
                .unwrap();
            assert!((h.diagonal[0].re - 13.5).abs() < 1e-12);
            assert!((h.diagonal[2].re - 13.5).abs() < 1e-12);
        }
    }

    #[test]
    fn wall_centered_approaches_dirichlet() {
        let g = LatticeGrid::new(5, 1.0).unwrap();
        let h = build_hamiltonian_with_stencil(
            &g,
            &unit(),
            &RobinParams::symmetric(1e12).unwrap(),
            &[0.0; 5],
            BoundaryStencil::WallCentered,
        )
        .unwrap();
        let d = build_hamiltonian(&g, &unit(), &RobinParams::dirichlet(), &[0.0; 5]).unwrap();
        assert!((h.diagonal[0] - d.diagonal[0]).norm() < 1e-6);
        let pole = RobinParams::symmetric(-2.0 / g.spacing()).unwrap();
        assert!(matches!(
            build_hamiltonian_with_stencil(&g, &unit(), &pole, &[0.0; 5], BoundaryStencil::WallCentered),
            Err(Error::StencilPole { .. })
        ));
    }

    #[test]
    fn hamiltonian_rejects_bad_potential() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let r = RobinParams::neumann();
        assert!(matches!(
            build_hamiltonian(&g, &unit(), &r, &[0.0, f64::NAN, 0.0]),
            Err(Error::NonFinitePotential { index: 1 })
        ));
        assert!(matches!(build_hamiltonian(&g, &unit(), &r, &[0.0; 2]), Err(Error::PotentialLength { .. })));
    }

    #[test]
    fn forward_difference_three_sites() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let pf = build_p_forward(&g, &MomentumExtension::new(1.0, 0.0));
        let i3 = Complex64::new(0.0, 3.0);
        assert!(close(pf.get(0, 0), i3) && close(pf.get(0, 1), -i3));
        assert!(close(pf.get(1, 1), i3) && close(pf.get(1, 2), -i3));
        assert!(close(pf.get(2, 2), re(3.0)));
        assert!(close(pf.get(1, 0), re(0.0)));

        let pf0 = build_p_forward(&g, &MomentumExtension::new(0.0, 0.0));
        assert_eq!(pf0.get(2, 2), re(0.0));
        assert!(hermiticity_defect(&pf) > 0.0);
    }

    #[test]
    fn backward_difference_three_sites() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let pb = build_p_backward(&g, &MomentumExtension::new(0.0, 1.0));
        let i3 = Complex64::new(0.0, 3.0);
        // -(i/a)(-lambda_-) with lambda_- = i gives -3
        assert!(close(pb.get(0, 0), re(-3.0)));
        assert!(close(pb.get(1, 1), -i3) && close(pb.get(1, 0), i3));
        assert!(close(pb.get(2, 2), -i3) && close(pb.get(2, 1), i3));
        let pb0 = build_p_backward(&g, &MomentumExtension::new(0.0, 0.0));
        assert_eq!(pb0.get(0, 0), re(0.0));
    }

    #[test]
    fn p_r_corners_three_sites() {
        let g = LatticeGrid::new(3, 1.0).unwrap();
        let pr = build_p_r(&g, &MomentumExtension::symmetric(1.0));
        assert!(close(pr.get(0, 0), re(-1.5)));
        assert!(close(pr.get(2, 2), re(1.5)));
        assert!(close(pr.get(1, 1), re(0.0)));
        assert!(close(pr.get(0, 1), Complex64::new(0.0, -1.5)));
        assert!(pr.is_hermitian());
    }

    #[test]
    fn p_i_five_sites() {
        let g = LatticeGrid::new(5, 1.0).unwrap();
        let pi = build_p_i(&g);
        let d: Vec<f64> = pi.diagonal.iter().map(|z| z.re).collect();
        assert_eq!(d, vec![2.5, 0.0, 0.0, 0.0, -2.5]);
        assert!(pi.upper.iter().all(|z| *z == re(0.0)));
    }

    #[test]
    fn parity_squares_to_identity() {
        let g = LatticeGrid::new(7, 1.0).unwrap();
        let u = build_parity(&g).to_dense();
        assert_eq!(&u * &u, DMatrix::identity(7, 7));
    }

    #[test]
    fn lattice_inner_product_is_spacing_weighted() {
        let g = LatticeGrid::new(5, 2.0).unwrap();
        let psi = LatticeWavefunction::sample(g, |_| re(1.0));
        assert!((psi.norm() - 2.0f64.sqrt()).abs() < 1e-14);
        assert!((psi.normalized().norm() - 1.0).abs() < 1e-14);
    }
}
