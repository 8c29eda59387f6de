//! Two-component continuum formulation on `[-L/2, L/2]`.
//!
//! A state is a pair `(psi_e, psi_o)`; the momentum is `p_R = -i sigma_1 d/dx`
//! with the self-adjoint boundary conditions `psi_o(+-L/2) = lambda_+- psi_e(+-L/2)`.
//! The Hamiltonian lives on the `P_+` sector `psi_e = psi_o`, where a
//! single-component Robin problem is recovered.

mod doubled;
mod eigenstates;
mod expsum;
mod shift;

pub use doubled::{
    build_doubled_hamiltonian_lattice, default_penalty, validate_general_bc, BcValidation, DoubledHamiltonian, DoubledState,
    GeneralBCParams,
};
pub use eigenstates::{
    energy_eigenstates, momentum_eigenstate, robin_residual, EnergyEigenstate, EnergyKind, MomentumEigenstate,
};
pub use expsum::{moment, ExpSum, ExpTerm};
pub use shift::{lattice_commutator_residual, lattice_shift_operator, ShiftOperator};

use num_complex::Complex64;

use crate::lattice::{MomentumExtension, PhysicalConfig};
use crate::quadrature::Composite;

/// Default number of points (endpoints included) for sampled states.
pub const DEFAULT_SAMPLES: usize = 2049;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A state `(psi_e, psi_o)` on the box, in closed form or sampled on a uniform
/// grid that includes both walls.
#[derive(Debug, Clone, PartialEq)]
pub enum TwoComponentWavefunction {
    ClosedForm { e: ExpSum, o: ExpSum, length: f64 },
    Sampled { e: Vec<Complex64>, o: Vec<Complex64>, length: f64 },
}

use TwoComponentWavefunction::{ClosedForm, Sampled};

impl TwoComponentWavefunction {
    pub fn closed(e: ExpSum, o: ExpSum, length: f64) -> Self {
        ClosedForm { e, o, length }
    }

    /// `(f, f) / sqrt(2)`, the `P_+` embedding of a single-component state.
    pub fn symmetric(f: &ExpSum, length: f64) -> Self {
        let g = f.scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        ClosedForm { e: g.clone(), o: g, length }
    }

    pub fn from_samples(e: Vec<Complex64>, o: Vec<Complex64>, length: f64) -> Self {
        assert_eq!(e.len(), o.len(), "component lengths differ");
        assert!(e.len() >= 3, "need at least 3 samples");
        Sampled { e, o, length }
    }

    pub fn length(&self) -> f64 {
        match self {
            ClosedForm { length, .. } | Sampled { length, .. } => *length,
        }
    }

    /// Sample positions for a grid of `n` points including the walls.
    pub fn grid(length: f64, n: usize) -> Vec<f64> {
        let h = length / (n - 1) as f64;
        (0..n).map(|i| -0.5 * length + h * i as f64).collect()
    }

    /// Values at `x`. Sampled states are interpolated linearly.
    pub fn eval(&self, x: f64) -> (Complex64, Complex64) {
        match self {
            ClosedForm { e, o, .. } => (e.eval(x), o.eval(x)),
            Sampled { e, o, length } => {
                let n = e.len();
                let t = ((x + 0.5 * length) / length * (n - 1) as f64).clamp(0.0, (n - 1) as f64);
                let i = (t.floor() as usize).min(n - 2);
                let w = t - i as f64;
                (e[i] * (1.0 - w) + e[i + 1] * w, o[i] * (1.0 - w) + o[i + 1] * w)
            }
        }
    }

    pub fn sample(&self, n: usize) -> Self {
        let length = self.length();
        let xs = Self::grid(length, n);
        let (e, o) = xs.iter().map(|&x| self.eval(x)).unzip();
        Sampled { e, o, length }
    }

    /// `<self|other>`; analytic for two closed forms, composite Simpson otherwise.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let length = self.length();
        match (self, other) {
            (ClosedForm { e: e1, o: o1, .. }, ClosedForm { e: e2, o: o2, .. }) => {
                e1.conj().mul(e2).add(&o1.conj().mul(o2)).integrate(-0.5 * length, 0.5 * length)
            }
            (Sampled { e, .. }, _) => {
                let n = e.len();
                let a = self.sample(n);
                let b = other.sample(n);
                simpson_inner(&a, &b)
            }
            (_, Sampled { e, .. }) => {
                let n = e.len();
                simpson_inner(&self.sample(n), other)
            }
        }
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        match self {
            ClosedForm { e, o, length } => ClosedForm { e: e.scale(s), o: o.scale(s), length: *length },
            Sampled { e, o, length } => Sampled {
                e: e.iter().map(|v| v * s).collect(),
                o: o.iter().map(|v| v * s).collect(),
                length: *length,
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (ClosedForm { e: e1, o: o1, length }, ClosedForm { e: e2, o: o2, .. }) => {
                ClosedForm { e: e1.sub(e2), o: o1.sub(o2), length: *length }
            }
            _ => {
                let n = sample_count(self, other);
                let (Sampled { e: e1, o: o1, length }, Sampled { e: e2, o: o2, .. }) = (self.sample(n), other.sample(n))
                else {
                    unreachable!()
                };
                Sampled {
                    e: e1.iter().zip(&e2).map(|(a, b)| a - b).collect(),
                    o: o1.iter().zip(&o2).map(|(a, b)| a - b).collect(),
                    length,
                }
            }
        }
    }

    /// `(psi_e(-x), psi_o(-x))`.
    pub fn parity(&self) -> Self {
        match self {
            ClosedForm { e, o, length } => ClosedForm { e: e.reflect(), o: o.reflect(), length: *length },
            Sampled { e, o, length } => Sampled {
                e: e.iter().rev().copied().collect(),
                o: o.iter().rev().copied().collect(),
                length: *length,
            },
        }
    }

    /// Largest component modulus over `n` sample points.
    pub fn max_abs(&self, n: usize) -> f64 {
        let length = self.length();
        Self::grid(length, n)
            .into_iter()
            .map(|x| {
                let (e, o) = self.eval(x);
                e.norm().max(o.norm())
            })
            .fold(0.0, f64::max)
    }
}

fn sample_count(a: &TwoComponentWavefunction, b: &TwoComponentWavefunction) -> usize {
    match (a, b) {
        (Sampled { e, .. }, _) | (_, Sampled { e, .. }) => e.len(),
        _ => DEFAULT_SAMPLES,
    }
}

fn simpson_inner(a: &TwoComponentWavefunction, b: &TwoComponentWavefunction) -> Complex64 {
    let (Sampled { e: e1, o: o1, length }, Sampled { e: e2, o: o2, .. }) = (a, b) else {
        unreachable!("both sampled")
    };
    let n = e1.len();
    let h = length / (n - 1) as f64;
    let f = |i: usize| e1[i].conj() * e2[i] + o1[i].conj() * o2[i];
    if n % 2 == 1 {
        let mut acc = f(0) + f(n - 1);
        for i in 1..n - 1 {
            acc += f(i) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * (h / 3.0)
    } else {
        let mut acc = (f(0) + f(n - 1)) * 0.5;
        for i in 1..n - 1 {
            acc += f(i);
        }
        acc * h
    }
}

/// Derivative of uniformly spaced samples: central differences inside,
/// second-order one-sided differences at the ends.
fn sampled_derivative(v: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = v.len();
    let mut d = vec![Complex64::new(0.0, 0.0); n];
    for i in 1..n - 1 {
        d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    }
    d[0] = (v[0] * -3.0 + v[1] * 4.0 - v[2]) / (2.0 * h);
    d[n - 1] = (v[n - 1] * 3.0 - v[n - 2] * 4.0 + v[n - 3]) / (2.0 * h);
    d
}

/// `p_R psi = (-i psi_o', -i psi_e')`.
pub fn apply_p_r(psi: &TwoComponentWavefunction) -> TwoComponentWavefunction {
    match psi {
        ClosedForm { e, o, length } => ClosedForm {
            e: o.derivative().scale(-I),
            o: e.derivative().scale(-I),
            length: *length,
        },
        Sampled { e, o, length } => {
            let h = length / (e.len() - 1) as f64;
            Sampled {
                e: sampled_derivative(o, h).into_iter().map(|v| -I * v).collect(),
                o: sampled_derivative(e, h).into_iter().map(|v| -I * v).collect(),
                length: *length,
            }
        }
    }
}

/// `(|psi_o(L/2) - lambda_+ psi_e(L/2)|, |psi_o(-L/2) - lambda_- psi_e(-L/2)|)`.
pub fn momentum_bc_residual(psi: &TwoComponentWavefunction, ext: &MomentumExtension) -> (f64, f64) {
    let h = 0.5 * psi.length();
    let (ep, op) = psi.eval(h);
    let (em, om) = psi.eval(-h);
    ((op - ext.lambda_plus() * ep).norm(), (om - ext.lambda_minus() * em).norm())
}

/// Probability current `j = (1/2mi)(psi* psi' - psi'* psi) = Im(psi* psi')/m`.
pub fn probability_current(psi: &ExpSum, x: f64, cfg: &PhysicalConfig) -> f64 {
    (psi.eval(x).conj() * psi.derivative().eval(x)).im / cfg.mass
}

/// `P_+- psi`, with `P_+- = (1/2) [[1, +-1], [+-1, 1]]`.
pub fn project(psi: &TwoComponentWavefunction, sign: Sign) -> TwoComponentWavefunction {
    let s = sign.value();
    let half = Complex64::new(0.5, 0.0);
    match psi {
        ClosedForm { e, o, length } => {
            let first = e.add(&o.scale(Complex64::new(s, 0.0))).scale(half);
            let second = first.scale(Complex64::new(s, 0.0));
            ClosedForm { e: first, o: second, length: *length }
        }
        Sampled { e, o, length } => {
            let first: Vec<Complex64> = e.iter().zip(o).map(|(a, b)| (a + b * s) * 0.5).collect();
            let second = first.iter().map(|v| v * s).collect();
            Sampled { e: first, o: second, length: *length }
        }
    }
}

/// `int |psi_e|^2 + |psi_o|^2` by composite Gauss-Legendre, for checking the
/// analytic norms of closed forms.
pub fn quadrature_norm_sqr(psi: &TwoComponentWavefunction, k_scale: f64) -> f64 {
    let length = psi.length();
    Composite::for_oscillation(k_scale, length)
        .integrate(-0.5 * length, 0.5 * length, |x| {
            let (e, o) = psi.eval(x);
            e.norm_sqr() + o.norm_sqr()
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn constant_pair_has_zero_momentum() {
        let psi = TwoComponentWavefunction::closed(ExpSum::constant(c(2.0)), ExpSum::constant(c(2.0)), 1.0);
        let p = apply_p_r(&psi);
        assert!(p.max_abs(101) == 0.0);
    }

    #[test]
    fn plane_pair_is_eigenvector() {
        let k = 3.7;
        let f = ExpSum::exp(c(1.0), c(k));
        let psi = TwoComponentWavefunction::closed(f.clone(), f, 1.0);
        let diff = apply_p_r(&psi).sub(&psi.scale(c(k)));
        assert!(diff.max_abs(101) < 1e-13);
    }

    #[test]
    fn sampled_derivative_is_second_order() {
        let k = 2.0;
        let f = ExpSum::exp(c(1.0), c(k));
        let psi = TwoComponentWavefunction::closed(f.clone(), f, 1.0);
        let err = |n: usize| {
            let p = apply_p_r(&psi.sample(n));
            p.sub(&psi.scale(c(k)).sample(n)).max_abs(n)
        };
        let ratio = err(101) / err(201);
        assert!((ratio - 4.0).abs() < 0.3, "ratio {ratio}");
    }

    #[test]
    fn projectors() {
        let f = ExpSum::cos(1.0, c(2.0), 0.1);
        let g = ExpSum::exp(c(0.5), c(-1.0));
        let psi = TwoComponentWavefunction::closed(f.clone(), g, 1.0);
        let plus = project(&psi, Sign::Plus);
        let minus = project(&psi, Sign::Minus);
        assert!(project(&plus, Sign::Plus).sub(&plus).max_abs(51) < 1e-15);
        assert!(project(&plus, Sign::Minus).max_abs(51) < 1e-15);
        let total = plus.norm().powi(2) + minus.norm().powi(2);
        assert!((total - psi.norm().powi(2)).abs() < 1e-13);
        let sym = TwoComponentWavefunction::closed(f.clone(), f.clone(), 1.0);
        assert!(project(&sym, Sign::Minus).max_abs(51) == 0.0);
        let anti = TwoComponentWavefunction::closed(f.clone(), f.scale(c(-1.0)), 1.0);
        assert!(project(&anti, Sign::Plus).max_abs(51) == 0.0);
    }

    #[test]
    fn current_of_plane_wave() {
        let cfg = PhysicalConfig::new(2.0, 1.0).unwrap();
        let f = ExpSum::exp(c(1.0), c(3.0));
        assert!((probability_current(&f, 0.2, &cfg) - 1.5).abs() < 1e-14);
        let real = ExpSum::cos(1.0, c(3.0), 0.4);
        assert!(probability_current(&real, 0.2, &cfg).abs() < 1e-15);
    }

    #[test]
    fn zero_state_has_zero_bc_residual() {
        let psi = TwoComponentWavefunction::closed(ExpSum::zero(), ExpSum::zero(), 1.0);
        assert_eq!(momentum_bc_residual(&psi, &MomentumExtension::symmetric(1.0)), (0.0, 0.0));
    }

    #[test]
    fn simpson_norm_matches_analytic() {
        let f = ExpSum::cos(1.0, c(5.0), 0.3);
        let psi = TwoComponentWavefunction::closed(f.clone(), f, 1.0);
        let sampled = psi.sample(DEFAULT_SAMPLES);
        assert!((sampled.norm() - psi.norm()).abs() < 1e-10);
        assert!((quadrature_norm_sqr(&psi, 5.0) - psi.norm().powi(2)).abs() < 1e-13);
    }
}
