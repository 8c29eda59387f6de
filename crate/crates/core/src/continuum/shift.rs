//! Momentum shift operators `A_-(x) = sin(pi x/L) + i sigma_1 cos(pi x/L)` and
//! `A_+ = A_-^dagger`, which satisfy `[p_R, A_+-] = +-(pi/L) A_+-`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ExpSum, Sign, TwoComponentWavefunction};
use crate::eigensolver::{eigh_tridiagonal_with, EigenOptions};
use crate::error::Result;
use crate::lattice::{build_p_r, LatticeGrid, MomentumExtension};
use crate::tridiagonal::ComplexTridiagonal;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftOperator {
    pub sign: Sign,
    pub length: f64,
}

impl ShiftOperator {
    pub fn new(sign: Sign, length: f64) -> Self {
        Self { sign, length }
    }

    /// `i sigma_1` coefficient: `+i` for `A_-`, `-i` for `A_+`.
    fn off(&self) -> Complex64 {
        match self.sign {
            Sign::Minus => I,
            Sign::Plus => -I,
        }
    }

    /// The 2x2 matrix `A(x)` in the `(e, o)` basis.
    pub fn matrix_at(&self, x: f64) -> [[Complex64; 2]; 2] {
        let arg = PI * x / self.length;
        let s = Complex64::new(arg.sin(), 0.0);
        let c = self.off() * arg.cos();
        [[s, c], [c, s]]
    }

    pub fn apply(&self, psi: &TwoComponentWavefunction) -> TwoComponentWavefunction {
        match psi {
            TwoComponentWavefunction::ClosedForm { e, o, length } => {
                let k = Complex64::new(PI / self.length, 0.0);
                let s = ExpSum::sin(1.0, k, 0.0);
                let c = ExpSum::cos(1.0, k, 0.0).scale(self.off());
                TwoComponentWavefunction::ClosedForm {
                    e: s.mul(e).add(&c.mul(o)),
                    o: c.mul(e).add(&s.mul(o)),
                    length: *length,
                }
            }
            TwoComponentWavefunction::Sampled { e, o, length } => {
                let xs = TwoComponentWavefunction::grid(*length, e.len());
                let (ne, no) = xs
                    .iter()
                    .zip(e.iter().zip(o))
                    .map(|(&x, (&ve, &vo))| {
                        let m = self.matrix_at(x);
                        (m[0][0] * ve + m[0][1] * vo, m[1][0] * ve + m[1][1] * vo)
                    })
                    .unzip();
                TwoComponentWavefunction::Sampled { e: ne, o: no, length: *length }
            }
        }
    }
}

/// Lattice `A_+-`: `sin(pi x/L)` on the diagonal and `sigma_1` realized as the
/// nearest-neighbour average, `+-i (c_j + c_{j+1})/4` on both off-diagonals
/// with `c = cos(pi x/L)`. `A_+` is the adjoint of `A_-`.
pub fn lattice_shift_operator(grid: &LatticeGrid, sign: Sign) -> ComplexTridiagonal {
    let l = grid.box_length();
    let x = grid.sites();
    let diag: Vec<f64> = x.iter().map(|x| (PI * x / l).sin()).collect();
    let cos: Vec<f64> = x.iter().map(|x| (PI * x / l).cos()).collect();
    let off: Vec<Complex64> = cos.windows(2).map(|w| I * (0.25 * (w[0] + w[1]))).collect();
    let minus = ComplexTridiagonal {
        diagonal: diag.iter().map(|&d| Complex64::new(d, 0.0)).collect(),
        upper: off.clone(),
        lower: off,
    };
    match sign {
        Sign::Minus => minus,
        Sign::Plus => minus.adjoint(),
    }
}

/// `max ||([p_R, A] -+ (pi/L) A) v||` over the normalized `p_R` eigenvectors
/// `v` with the `2 n_max + 1` smallest `|k_hat|`, in the lattice norm.
///
/// The commutator only holds for slowly varying states, so the check is made
/// on the low-momentum part of the spectrum.
pub fn lattice_commutator_residual(grid: &LatticeGrid, ext: &MomentumExtension, sign: Sign, n_max: usize) -> Result<f64> {
    let a = grid.spacing();
    let shift = PI / grid.box_length() * sign.value();
    let p = build_p_r(grid, ext);
    let op = lattice_shift_operator(grid, sign);
    let spec = eigh_tridiagonal_with(&p, &EigenOptions { want_vectors: true, weight: a, ..Default::default() })?;
    let mut order: Vec<usize> = (0..spec.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| spec.eigenvalues[i].abs().total_cmp(&spec.eigenvalues[j].abs()));
    let mut worst: f64 = 0.0;
    for &idx in order.iter().take(2 * n_max + 1) {
        let v = spec.vector(idx).expect("vectors requested");
        let av = op.matvec(&v);
        let pav = p.matvec(&av);
        let apv = op.matvec(&p.matvec(&v));
        let r: f64 = (0..v.len()).map(|i| (pav[i] - apv[i] - av[i] * shift).norm_sqr()).sum::<f64>() * a;
        worst = worst.max(r.sqrt());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn a_plus_a_minus_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 257;
        let e: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
        let o: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
        let psi = TwoComponentWavefunction::from_samples(e, o, 1.0);
        let back = ShiftOperator::new(Sign::Plus, 1.0).apply(&ShiftOperator::new(Sign::Minus, 1.0).apply(&psi));
        assert!(back.sub(&psi).max_abs(n) < 1e-12);
    }

    #[test]
    fn walls_are_plus_minus_identity() {
        for sign in [Sign::Plus, Sign::Minus] {
            let op = ShiftOperator::new(sign, 2.0);
            let top = op.matrix_at(1.0);
            let bottom = op.matrix_at(-1.0);
            assert_eq!(top[0][0], Complex64::new(1.0, 0.0));
            assert_eq!(bottom[0][0], Complex64::new(-1.0, 0.0));
            assert!(top[0][1].norm() < 1e-16 && bottom[1][0].norm() < 1e-16);
        }
    }

    #[test]
    fn closed_form_commutator_is_exact() {
        use crate::continuum::apply_p_r;
        let f = ExpSum::cos(1.0, Complex64::new(3.0, 0.0), 0.2);
        let g = ExpSum::exp(Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0));
        let psi = TwoComponentWavefunction::closed(f, g, 1.0);
        for sign in [Sign::Plus, Sign::Minus] {
            let a = ShiftOperator::new(sign, 1.0);
            let lhs = apply_p_r(&a.apply(&psi)).sub(&a.apply(&apply_p_r(&psi)));
            let rhs = a.apply(&psi).scale(Complex64::new(PI * sign.value(), 0.0));
            assert!(lhs.sub(&rhs).max_abs(101) < 1e-12);
        }
    }

    #[test]
    fn lattice_shift_adjoint_pair() {
        let g = LatticeGrid::new(9, 1.0).unwrap();
        let m = lattice_shift_operator(&g, Sign::Minus);
        let p = lattice_shift_operator(&g, Sign::Plus);
        assert_eq!(p, m.adjoint());
    }

    #[test]
    fn lattice_commutator_converges() {
        let ext = MomentumExtension::symmetric(1.0);
        let r: Vec<f64> = [27, 81, 243]
            .iter()
            .map(|&n| lattice_commutator_residual(&LatticeGrid::new(n, 1.0).unwrap(), &ext, Sign::Minus, 2).unwrap())
            .collect();
        assert!(r[0] > r[1] && r[1] > r[2], "{r:?}");
    }
}
