//! Finite sums of `c x^p exp(i omega x)` with complex `omega`.
//!
//! Every closed-form wavefunction in the crate (plane waves, Robin cosines,
//! boundary-bound `cosh`/`sinh` profiles, the linear zero mode) is such a sum,
//! and the set is closed under products, conjugation and differentiation, so
//! overlaps and Fourier transforms reduce to exact elementary integrals.

use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coef: Complex64,
    pub power: u32,
    pub omega: Complex64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpSum {
    pub terms: Vec<ExpTerm>,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl ExpSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: Complex64) -> Self {
        Self::exp(value, c(0.0))
    }

    /// `coef exp(i omega x)`.
    pub fn exp(coef: Complex64, omega: Complex64) -> Self {
        Self { terms: vec![ExpTerm { coef, power: 0, omega }] }
    }

    /// `coef x`.
    pub fn linear(coef: Complex64) -> Self {
        Self { terms: vec![ExpTerm { coef, power: 1, omega: c(0.0) }] }
    }

    /// `amplitude cos(k x + phase)` for complex `k`.
    pub fn cos(amplitude: f64, k: Complex64, phase: f64) -> Self {
        let e = Complex64::from_polar(0.5 * amplitude, phase);
        let em = Complex64::from_polar(0.5 * amplitude, -phase);
        Self::exp(e, k).add(&Self::exp(em, -k))
    }

    /// `amplitude sin(k x + phase)` for complex `k`.
    pub fn sin(amplitude: f64, k: Complex64, phase: f64) -> Self {
        Self::cos(amplitude, k, phase - std::f64::consts::FRAC_PI_2)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self { terms }.simplified()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(c(-1.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { terms: self.terms.iter().map(|t| ExpTerm { coef: t.coef * s, ..*t }).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ExpTerm { coef: a.coef * b.coef, power: a.power + b.power, omega: a.omega + b.omega });
            }
        }
        Self { terms }.simplified()
    }

    /// Pointwise complex conjugate for real `x`.
    pub fn conj(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm { coef: t.coef.conj(), power: t.power, omega: -t.omega.conj() })
                .collect(),
        }
    }

    /// `f(-x)`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coef: if t.power % 2 == 1 { -t.coef } else { t.coef },
                    power: t.power,
                    omega: -t.omega,
                })
                .collect(),
        }
    }

    /// `f(x + shift)`; only defined for sums of degree at most one.
    pub fn translate(&self, shift: f64) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            let phase = (I * t.omega * shift).exp();
            match t.power {
                0 => terms.push(ExpTerm { coef: t.coef * phase, ..*t }),
                1 => {
                    terms.push(ExpTerm { coef: t.coef * phase, ..*t });
                    terms.push(ExpTerm { coef: t.coef * phase * shift, power: 0, omega: t.omega });
                }
                p => panic!("translate supports degree <= 1, got {p}"),
            }
        }
        Self { terms }.simplified()
    }

    pub fn derivative(&self) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            if t.omega != c(0.0) {
                terms.push(ExpTerm { coef: t.coef * I * t.omega, ..*t });
            }
            if t.power > 0 {
                terms.push(ExpTerm { coef: t.coef * t.power as f64, power: t.power - 1, omega: t.omega });
            }
        }
        Self { terms }.simplified()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|t| t.coef * x.powi(t.power as i32) * (I * t.omega * x).exp()).sum()
    }

    /// `int_lo^hi f(x) dx`, exact up to rounding.
    pub fn integrate(&self, lo: f64, hi: f64) -> Complex64 {
        let mid = 0.5 * (lo + hi);
        let h = 0.5 * (hi - lo);
        self.terms
            .iter()
            .map(|t| {
                // x = mid + u, expand (mid + u)^p
                let shift = (I * t.omega * mid).exp();
                let mut acc = Complex64::new(0.0, 0.0);
                let mut binom = 1.0;
                for j in 0..=t.power {
                    let mid_pow = mid.powi((t.power - j) as i32);
                    acc += moment(j, t.omega, h) * (binom * mid_pow);
                    binom *= (t.power - j) as f64 / (j + 1) as f64;
                }
                t.coef * shift * acc
            })
            .sum()
    }

    /// `int_{-L/2}^{L/2} f(x) exp(-i k x) dx`.
    pub fn fourier(&self, k: f64, length: f64) -> Complex64 {
        self.mul(&Self::exp(c(1.0), c(-k))).integrate(-0.5 * length, 0.5 * length)
    }

    /// Merge terms with equal power and frequency, drop exact zeros.
    fn simplified(mut self) -> Self {
        let mut out: Vec<ExpTerm> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            if let Some(prev) = out.iter_mut().find(|p| p.power == t.power && p.omega == t.omega) {
                prev.coef += t.coef;
            } else {
                out.push(t);
            }
        }
        out.retain(|t| t.coef != c(0.0));
        Self { terms: out }
    }
}

/// `int_{-h}^{h} u^p exp(i omega u) du`.
pub fn moment(p: u32, omega: Complex64, h: f64) -> Complex64 {
    let z = omega * h;
    if z.norm() < 1.5 {
        // power series in (i omega); only even total powers survive
        let mut sum = Complex64::new(0.0, 0.0);
        let mut factor = Complex64::new(1.0, 0.0);
        for j in 0..80u32 {
            if j > 0 {
                factor *= I * omega / j as f64;
            }
            let q = p + j;
            if q % 2 == 0 {
                let term = factor * (2.0 * h.powi(q as i32 + 1) / (q as f64 + 1.0));
                sum += term;
                if j > 4 && term.norm() <= 1e-18 * sum.norm().max(f64::MIN_POSITIVE) {
                    break;
                }
            }
        }
        sum
    } else {
        let ep = (I * omega * h).exp();
        let em = (-I * omega * h).exp();
        let iw = I * omega;
        let mut prev = (ep - em) / iw;
        for q in 1..=p {
            let boundary = ep * h.powi(q as i32) - em * (-h).powi(q as i32);
            prev = (boundary - prev * q as f64) / iw;
        }
        prev
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Composite;

    fn numeric(f: &ExpSum, lo: f64, hi: f64) -> Complex64 {
        Composite::new(16, 64).integrate(lo, hi, |x| f.eval(x))
    }

    #[test]
    fn moments_match_quadrature() {
        for p in 0..4 {
            for w in [c(0.0), c(0.3), c(7.0), Complex64::new(2.0, -3.0), Complex64::new(0.0, 9.0)] {
                let f = ExpSum { terms: vec![ExpTerm { coef: c(1.0), power: p, omega: w }] };
                let want = numeric(&f, -0.5, 0.5);
                let got = moment(p, w, 0.5);
                assert!((got - want).norm() < 1e-12 * want.norm().max(1.0), "p={p} w={w}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn shifted_interval_integral() {
        let f = ExpSum::linear(c(2.0)).add(&ExpSum::exp(Complex64::new(0.5, 1.0), Complex64::new(3.0, 0.2)));
        let want = numeric(&f, 0.1, 1.7);
        assert!((f.integrate(0.1, 1.7) - want).norm() < 1e-12);
    }

    #[test]
    fn derivative_and_product() {
        let f = ExpSum::cos(1.0, c(2.0), 0.3).mul(&ExpSum::linear(c(1.0)));
        let d = f.derivative();
        let x: f64 = 0.37;
        let want = -2.0 * (2.0 * x + 0.3).sin() * x + (2.0 * x + 0.3).cos();
        assert!((d.eval(x) - want).norm() < 1e-14);
    }

    #[test]
    fn conj_reflect_translate() {
        let f = ExpSum::exp(Complex64::new(1.0, 2.0), Complex64::new(0.7, 0.1)).add(&ExpSum::linear(c(3.0)));
        let x = 0.23;
        assert!((f.conj().eval(x) - f.eval(x).conj()).norm() < 1e-14);
        assert!((f.reflect().eval(x) - f.eval(-x)).norm() < 1e-14);
        assert!((f.translate(0.4).eval(x) - f.eval(x + 0.4)).norm() < 1e-14);
    }

    #[test]
    fn cosh_from_imaginary_frequency() {
        let f = ExpSum::cos(1.0, Complex64::new(0.0, 5.0), 0.0);
        assert!((f.eval(0.3) - c((5.0f64 * 0.3).cosh())).norm() < 1e-14);
        let g = ExpSum::sin(1.0, c(3.0), 0.0);
        assert!((g.eval(0.3) - c((0.9f64).sin())).norm() < 1e-15);
    }
}
