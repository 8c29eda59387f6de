//! Hermitian tridiagonal eigenproblems.
//!
//! The complex Hermitian input is first made real symmetric by a diagonal
//! unitary similarity, eigenvalues come from Sturm-sequence bisection and
//! eigenvectors from inverse iteration with a seeded random start.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tridiagonal::{hermiticity_defect, ComplexTridiagonal};

/// Default seed for inverse-iteration start vectors.
pub const DEFAULT_SEED: u64 = 0x5eed_b0c5;

const MAX_RESTARTS: usize = 5;
const INVERSE_STEPS: usize = 4;
const RESIDUAL_TOL: f64 = 1e-10;

/// Real symmetric tridiagonal matrix; `offdiag[j]` couples `j` and `j + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymTridiagonal {
    pub diagonal: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diagonal: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert_eq!(offdiag.len() + 1, diagonal.len().max(1));
        Self { diagonal, offdiag }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn max_norm(&self) -> f64 {
        self.diagonal.iter().chain(&self.offdiag).fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                r += self.offdiag[i].abs();
            }
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }

    fn pivmin(&self) -> f64 {
        let e2 = self.offdiag.iter().fold(1.0f64, |m, e| m.max(e * e));
        f64::MIN_POSITIVE * e2
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        sturm_count_with(self, x, self.pivmin())
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diagonal[i]
            } else if j == i + 1 {
                self.offdiag[i]
            } else if i == j + 1 {
                self.offdiag[j]
            } else {
                0.0
            }
        })
    }
}

fn sturm_count_with(t: &SymTridiagonal, x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = t.diagonal[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..t.dim() {
        let e = t.offdiag[i - 1];
        q = t.diagonal[i] - x - e * e / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Diagonal unitary `D` with `D^dagger A D` real symmetric and nonnegative off the diagonal.
///
/// Returns the reduced matrix and the diagonal of `D`; an eigenvector `y` of the
/// reduced matrix maps back to `D y`.
pub fn phase_reduce(a: &ComplexTridiagonal) -> Result<(SymTridiagonal, Vec<Complex64>)> {
    let defect = hermiticity_defect(a);
    if defect > 8.0 * f64::EPSILON * a.max_norm() {
        return Err(Error::NotHermitian { defect });
    }
    let n = a.dim();
    let mut phases = Vec::with_capacity(n);
    let mut d = Complex64::new(1.0, 0.0);
    phases.push(d);
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    for e in &a.upper {
        let m = e.norm();
        if m > 0.0 {
            d *= e.conj() / m;
            // keep |d| = 1 against drift over long chains
            d /= d.norm();
        }
        phases.push(d);
        offdiag.push(m);
    }
    let diagonal = a.diagonal.iter().map(|z| z.re).collect();
    Ok((SymTridiagonal { diagonal, offdiag }, phases))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    pub want_vectors: bool,
    /// Inner-product weight: vectors are normalized so that `weight * sum |v|^2 = 1`.
    pub weight: f64,
    pub seed: u64,
    /// Half-open range of ascending eigenvalue indices to compute; `None` means all.
    pub index_range: Option<(usize, usize)>,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self { want_vectors: false, weight: 1.0, seed: DEFAULT_SEED, index_range: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors in the original (complex) basis.
    pub eigenvectors: Option<DMatrix<Complex64>>,
    /// `||A v - lambda v|| / (||A||_max ||v||)` per returned pair, when vectors were requested.
    pub residuals: Option<Vec<f64>>,
    /// Final bisection bracket width per eigenvalue.
    pub bracket_widths: Vec<f64>,
    pub seed: u64,
}

impl SpectrumResult {
    pub fn vector(&self, i: usize) -> Option<Vec<Complex64>> {
        self.eigenvectors.as_ref().map(|m| m.column(i).iter().copied().collect())
    }
}

pub fn eigh_tridiagonal(a: &ComplexTridiagonal, want_vectors: bool) -> Result<SpectrumResult> {
    eigh_tridiagonal_with(a, &EigenOptions { want_vectors, ..Default::default() })
}

pub fn eigh_tridiagonal_with(a: &ComplexTridiagonal, opts: &EigenOptions) -> Result<SpectrumResult> {
    let (t, phases) = phase_reduce(a)?;
    let n = t.dim();
    let (lo_idx, hi_idx) = opts.index_range.unwrap_or((0, n));
    if lo_idx > hi_idx || hi_idx > n {
        return Err(Error::Config(format!("eigenvalue index range {lo_idx}..{hi_idx} outside 0..{n}")));
    }
    let (eigenvalues, bracket_widths) = bisect_range(&t, lo_idx, hi_idx)?;

    if !opts.want_vectors {
        return Ok(SpectrumResult {
            eigenvalues,
            eigenvectors: None,
            residuals: None,
            bracket_widths,
            seed: opts.seed,
        });
    }

    let real_vectors = inverse_iteration(&t, &eigenvalues, opts.seed)?;
    let scale = 1.0 / opts.weight.sqrt();
    let mut vectors = DMatrix::<Complex64>::zeros(n, eigenvalues.len());
    for (col, y) in real_vectors.iter().enumerate() {
        for i in 0..n {
            vectors[(i, col)] = phases[i] * (y[i] * scale);
        }
    }

    let norm_a = a.max_norm().max(f64::MIN_POSITIVE);
    let mut residuals = Vec::with_capacity(eigenvalues.len());
    for (col, &lambda) in eigenvalues.iter().enumerate() {
        let v: Vec<Complex64> = vectors.column(col).iter().copied().collect();
        let av = a.matvec(&v);
        let r: f64 = av.iter().zip(&v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
        let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let rel = r / (norm_a * vn);
        if !(rel <= RESIDUAL_TOL) {
            return Err(Error::NoConvergence {
                what: "inverse iteration",
                detail: format!("eigenpair {} has residual {rel:e}", lo_idx + col),
            });
        }
        residuals.push(rel);
    }

    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors: Some(vectors),
        residuals: Some(residuals),
        bracket_widths,
        seed: opts.seed,
    })
}

/// Eigenvalues `lo_idx..hi_idx` (ascending) by bisection to machine precision,
/// `2 eps |lambda| + eps ||T||`.
fn bisect_range(t: &SymTridiagonal, lo_idx: usize, hi_idx: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let (g_lo, g_hi) = t.gershgorin();
    let pad = 2.0 * f64::EPSILON * g_lo.abs().max(g_hi.abs()) + t.pivmin();
    let (g_lo, g_hi) = (g_lo - pad, g_hi + pad);
    let pivmin = t.pivmin();
    // absolute floor so eigenvalues at 0 do not chase denormals
    let abs_tol = f64::EPSILON * t.max_norm() + pivmin;
    let mut values = Vec::with_capacity(hi_idx - lo_idx);
    let mut widths = Vec::with_capacity(hi_idx - lo_idx);
    let mut floor = g_lo;
    for k in lo_idx..hi_idx {
        // invariant: count(lo) <= k < count(hi)
        let mut lo = floor;
        let mut hi = g_hi;
        let mut iterations = 0;
        loop {
            let mid = 0.5 * (lo + hi);
            let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + abs_tol;
            if hi - lo <= tol || mid <= lo || mid >= hi {
                break;
            }
            if sturm_count_with(t, mid, pivmin) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            iterations += 1;
            if iterations > 400 {
                return Err(Error::NoConvergence {
                    what: "bisection",
                    detail: format!("eigenvalue {k} bracket [{lo}, {hi}] after {iterations} steps"),
                });
            }
        }
        values.push(0.5 * (lo + hi));
        widths.push(hi - lo);
        floor = lo;
    }
    Ok((values, widths))
}

/// Solve `(T - shift) x = b` in place by Gaussian elimination with partial pivoting.
struct ShiftedLu {
    // rows after elimination: u0 on the diagonal, u1, u2 above it
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(t: &SymTridiagonal, shift: f64) -> Self {
        let n = t.dim();
        let tiny = f64::EPSILON * t.max_norm().max(f64::MIN_POSITIVE);
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n];
        let mut swapped = vec![false; n];

        let mut d = t.diagonal[0] - shift;
        let mut e = if n > 1 { t.offdiag[0] } else { 0.0 };
        let mut f = 0.0;
        for i in 0..n.saturating_sub(1) {
            let sub = t.offdiag[i];
            let next_d = t.diagonal[i + 1] - shift;
            let next_e = if i + 2 < n { t.offdiag[i + 1] } else { 0.0 };
            if d.abs() >= sub.abs() {
                let d_safe = if d == 0.0 { tiny } else { d };
                let m = sub / d_safe;
                u0[i] = d_safe;
                u1[i] = e;
                u2[i] = f;
                mult[i] = m;
                d = next_d - m * e;
                e = next_e;
                f = 0.0;
            } else {
                let m = d / sub;
                swapped[i] = true;
                u0[i] = sub;
                u1[i] = next_d;
                u2[i] = next_e;
                mult[i] = m;
                d = e - m * next_d;
                e = -m * next_e;
                f = 0.0;
            }
        }
        u0[n - 1] = if d == 0.0 { tiny } else { d };
        Self { u0, u1, u2, mult, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.mult[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut v = b[i];
            if i + 1 < n {
                v -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                v -= self.u2[i] * b[i + 2];
            }
            b[i] = v / self.u0[i];
        }
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

fn sym_residual(t: &SymTridiagonal, lambda: f64, v: &[f64]) -> f64 {
    let n = t.dim();
    let mut r2 = 0.0;
    for i in 0..n {
        let mut acc = (t.diagonal[i] - lambda) * v[i];
        if i > 0 {
            acc += t.offdiag[i - 1] * v[i - 1];
        }
        if i + 1 < n {
            acc += t.offdiag[i] * v[i + 1];
        }
        r2 += acc * acc;
    }
    r2.sqrt()
}

/// Inverse iteration for each eigenvalue; vectors in a cluster (gap below
/// `1e-3 ||T||`) are kept orthogonal by modified Gram-Schmidt.
fn inverse_iteration(t: &SymTridiagonal, eigenvalues: &[f64], seed: u64) -> Result<Vec<Vec<f64>>> {
    let n = t.dim();
    let norm = t.max_norm().max(f64::MIN_POSITIVE);
    let cluster_gap = 1e-3 * norm;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(eigenvalues.len());
    let mut cluster_start = 0;

    for (idx, &lambda) in eigenvalues.iter().enumerate() {
        if idx > 0 && lambda - eigenvalues[idx - 1] > cluster_gap {
            cluster_start = idx;
        }
        let lu = ShiftedLu::new(t, lambda);
        let mut accepted = None;
        for _restart in 0..=MAX_RESTARTS {
            let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            normalize(&mut v);
            for _ in 0..INVERSE_STEPS {
                lu.solve(&mut v);
                for prev in &out[cluster_start..] {
                    let dot: f64 = prev.iter().zip(&v).map(|(p, x)| p * x).sum();
                    v.iter_mut().zip(prev).for_each(|(x, p)| *x -= dot * p);
                }
                if normalize(&mut v) == 0.0 || v.iter().any(|x| !x.is_finite()) {
                    break;
                }
            }
            if v.iter().all(|x| x.is_finite()) && sym_residual(t, lambda, &v) <= 0.1 * RESIDUAL_TOL * norm {
                accepted = Some(v);
                break;
            }
        }
        match accepted {
            Some(v) => out.push(v),
            None => {
                return Err(Error::NoConvergence {
                    what: "inverse iteration",
                    detail: format!("eigenvalue {lambda} after {MAX_RESTARTS} restarts"),
                })
            }
        }
    }
    Ok(out)
}
