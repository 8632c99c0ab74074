use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::RealPolynomial2;

use super::{ClassifyError, DominantPolynomial};

/// `M(p) = N / p²` with `N_ij = ∂_i p ∂_j p − p ∂_i∂_j p`, i.e. `M = −∂_i∂_j log p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianLog {
    pub p: RealPolynomial2,
    pub n11: RealPolynomial2,
    pub n12: RealPolynomial2,
    pub n22: RealPolynomial2,
}

impl HessianLog {
    /// `N11 N22 − N12²`, so that `det M = det_numerator / p⁴`.
    pub fn det_numerator(&self) -> RealPolynomial2 {
        self.n11.mul(&self.n22).sub(&self.n12.mul(&self.n12))
    }

    /// `det M · p²` when it is a polynomial.
    pub fn det_times_p_squared(&self) -> Option<RealPolynomial2> {
        self.det_numerator().div_exact(&self.p.mul(&self.p))
    }

    /// `M(y)` in floating point.
    pub fn eval_f64(&self, y1: f64, y2: f64) -> [[f64; 2]; 2] {
        let p2 = self.p.eval_f64(y1, y2).powi(2);
        let m12 = self.n12.eval_f64(y1, y2) / p2;
        [[self.n11.eval_f64(y1, y2) / p2, m12], [m12, self.n22.eval_f64(y1, y2) / p2]]
    }
}

pub fn hessian_log(p: &DominantPolynomial) -> HessianLog {
    hessian_log_of(&p.poly)
}

pub fn hessian_log_of(p: &RealPolynomial2) -> HessianLog {
    let p1 = p.derivative(0);
    let p2 = p.derivative(1);
    let p11 = p1.derivative(0);
    let p12 = p1.derivative(1);
    let p22 = p2.derivative(1);
    HessianLog {
        p: p.clone(),
        n11: p1.mul(&p1).sub(&p.mul(&p11)),
        n12: p1.mul(&p2).sub(&p.mul(&p12)),
        n22: p2.mul(&p2).sub(&p.mul(&p22)),
    }
}

/// Square log-spaced grid of integer points for the large-`y` test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { lo: 1e2, hi: 1e6, points: 13 }
    }
}

impl GridSpec {
    pub fn values(&self) -> Vec<BigRational> {
        let n = self.points.max(2);
        let ratio = (self.hi / self.lo).ln();
        let mut v: Vec<BigRational> = (0..n)
            .map(|k| {
                let y = (self.lo * (ratio * k as f64 / (n - 1) as f64).exp()).round().max(1.0);
                BigRational::from_integer(BigInt::from(y as u64))
            })
            .collect();
        v.dedup();
        v
    }
}

/// Exact semidefiniteness of `M(p)` at every grid point.
pub fn psd_large_y(p: &DominantPolynomial, grid: GridSpec) -> Result<bool, ClassifyError> {
    psd_on_grid(&p.poly, grid)
}

pub(crate) fn psd_on_grid(p: &RealPolynomial2, grid: GridSpec) -> Result<bool, ClassifyError> {
    let h = hessian_log_of(p);
    let pts = grid.values();
    let mut ok = true;
    for y1 in &pts {
        for y2 in &pts {
            if !p.eval_exact(y1, y2).is_positive() {
                return Err(ClassifyError::NotPositive { y1: y1.to_string(), y2: y2.to_string() });
            }
            let a = h.n11.eval_exact(y1, y2);
            let b = h.n12.eval_exact(y1, y2);
            let c = h.n22.eval_exact(y1, y2);
            if a.is_negative() || c.is_negative() || (&a * &c - &b * &b).is_negative() {
                ok = false;
            }
        }
    }
    Ok(ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinEigenvalue {
    /// Smallest eigenvalue of `R² M(p)` over the sweep.
    pub value: f64,
    /// Angle of the minimizer, `y = (cos θ, sin θ)`.
    pub theta: f64,
    pub points: usize,
}

/// Sweep of the smaller eigenvalue of `M(p)` over `K = {y ≥ 0, |y| = 1}`.
pub fn min_eigenvalue_on_k(p: &DominantPolynomial, points: usize) -> Result<MinEigenvalue, ClassifyError> {
    if !p.poly.is_homogeneous() {
        return Err(ClassifyError::NotHomogeneous);
    }
    let h = hessian_log_of(&p.poly);
    let n = points.max(2);
    let mut best = MinEigenvalue { value: f64::INFINITY, theta: 0.0, points: n };
    for k in 0..n {
        let theta = std::f64::consts::FRAC_PI_2 * k as f64 / (n - 1) as f64;
        let (y1, y2) = (theta.cos(), theta.sin());
        let v = p.poly.eval_f64(y1, y2);
        if v.is_zero() || v < 0.0 {
            return Err(ClassifyError::NotPositiveOnK { theta });
        }
        let [[a, b], [_, c]] = h.eval_f64(y1, y2);
        let mean = 0.5 * (a + c);
        let rad = (0.25 * (a - c).powi(2) + b * b).sqrt();
        let lam = mean - rad;
        if lam < best.value {
            best.value = lam;
            best.theta = theta;
        }
    }
    Ok(best)
}
