//! Weil-Petersson tensors, curve lengths and divergence verdicts.
//!
//! Tensors use the convention `H = 4 gᵀ` with `g_{i j̄} = −∂_i ∂_{j̄} log Q̃`, so that
//! `ds² = ż^H H ż` and a potential depending on `y` alone gives `H = M(p)`.

mod checks;
mod curve;
mod fd;
mod length;

pub use checks::{
    angular_slice_length, angular_slice_probes, corollary_strict_cases, exponential_integral_e1, lemma_samples, probe_family,
    perturbation_example, probe_curve, AngularSliceReport, CorollaryReport, LemmaSample, PerturbationReport, PerturbationVariant,
    ProbeResult,
};
pub use curve::{Component, CurveKind, CurveSpec};
pub use fd::{fd_real_hessian, fd_step};
pub use length::{curve_length, divergence_fit, Checkpoint, DivergenceVerdict, LengthSeries, QuadratureConfig};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::classifier::HessianLog;
use crate::potential::{PotentialError, PotentialEvaluator};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("potential is not positive near the sample point")]
    NonPositivePotential,
    #[error("integrand is not finite at t = {t}")]
    QuadratureBlowup { t: f64 },
    #[error("series needs >= 6 checkpoints over >= 3 decades (has {checkpoints} over {decades:.2})")]
    InsufficientSpan { checkpoints: usize, decades: f64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point has {found} coordinates, metric expects {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricSource {
    SymbolicPoly,
    NumericFull,
    ExplicitMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricSample {
    pub point: Vec<Complex64>,
    pub tensor: DMatrix<Complex64>,
    pub source: MetricSource,
}

impl MetricSample {
    /// Largest `|H_ij − conj(H_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let h = &self.tensor;
        (h - h.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let h = (&self.tensor + self.tensor.adjoint()) * Complex64::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().fold(f64::INFINITY, |m, &v| m.min(v))
    }
}

pub trait MetricField {
    /// Number of complex coordinates.
    fn dim(&self) -> usize;

    fn source(&self) -> MetricSource;

    fn tensor(&self, z: &[Complex64]) -> Result<DMatrix<Complex64>, MetricError>;

    /// `v^H H(z) v`.
    fn norm_sq(&self, z: &[Complex64], v: &[Complex64]) -> Result<f64, MetricError> {
        let h = self.tensor(z)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..v.len() {
            for j in 0..v.len() {
                acc += v[i].conj() * h[(i, j)] * v[j];
            }
        }
        Ok(acc.re)
    }

    fn sample(&self, z: &[Complex64]) -> Result<MetricSample, MetricError> {
        Ok(MetricSample { point: z.to_vec(), tensor: self.tensor(z)?, source: self.source() })
    }
}

fn check_arity(expected: usize, z: &[Complex64]) -> Result<(), MetricError> {
    if z.len() != expected {
        return Err(MetricError::WrongArity { expected, found: z.len() });
    }
    Ok(())
}

/// `H = M(p)` from the exact `hessian_log`, evaluated in floating point.
#[derive(Clone, Debug)]
pub struct PolynomialMetric {
    hessian: HessianLog,
    dim: usize,
}

impl PolynomialMetric {
    /// `dim = 1` ignores `y2`; `dim = 2` uses both variables.
    pub fn new(hessian: HessianLog, dim: usize) -> Self {
        PolynomialMetric { hessian, dim: dim.clamp(1, 2) }
    }

    pub fn from_poly(p: &crate::exact::RealPolynomial2, dim: usize) -> Self {
        Self::new(crate::classifier::hessian_log_of(p), dim)
    }
}

impl MetricField for PolynomialMetric {
    fn dim(&self) -> usize {
        self.dim
    }

    fn source(&self) -> MetricSource {
        MetricSource::SymbolicPoly
    }

    fn tensor(&self, z: &[Complex64]) -> Result<DMatrix<Complex64>, MetricError> {
        check_arity(self.dim, z)?;
        let (y1, y2) = (z[0].im, z.get(1).map_or(0.0, |w| w.im));
        if self.hessian.p.eval_f64(y1, y2) <= 0.0 {
            return Err(MetricError::NonPositivePotential);
        }
        let m = self.hessian.eval_f64(y1, y2);
        let c = |x: f64| Complex64::new(x, 0.0);
        Ok(if self.dim == 1 {
            DMatrix::from_element(1, 1, c(m[0][0]))
        } else {
            DMatrix::from_row_slice(2, 2, &[c(m[0][0]), c(m[0][1]), c(m[1][0]), c(m[1][1])])
        })
    }
}

/// `H` from finite differences of `log Q̃` for the full numeric potential.
#[derive(Clone, Debug)]
pub struct PotentialMetric {
    evaluator: PotentialEvaluator,
}

impl PotentialMetric {
    pub fn new(evaluator: PotentialEvaluator) -> Self {
        PotentialMetric { evaluator }
    }

    fn log_potential(&self, z: &[Complex64]) -> Result<f64, MetricError> {
        match self.evaluator.value(z) {
            Ok(v) => Ok(v.ln()),
            Err(PotentialError::NonPositive { .. }) => Err(MetricError::NonPositivePotential),
            Err(e) => Err(e.into()),
        }
    }

    fn real_point(z: &[Complex64]) -> Vec<f64> {
        z.iter().flat_map(|w| [w.re, w.im]).collect()
    }

    fn complex_point(x: &[f64]) -> Vec<Complex64> {
        x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
    }

    fn steps(z: &[Complex64]) -> Vec<f64> {
        z.iter().flat_map(|w| [fd_step(w.im), fd_step(w.im)]).collect()
    }
}

impl MetricField for PotentialMetric {
    fn dim(&self) -> usize {
        self.evaluator.k()
    }

    fn source(&self) -> MetricSource {
        MetricSource::NumericFull
    }

    fn tensor(&self, z: &[Complex64]) -> Result<DMatrix<Complex64>, MetricError> {
        check_arity(self.dim(), z)?;
        let f = |x: &[f64]| self.log_potential(&Self::complex_point(x));
        let r = fd_real_hessian(f, &Self::real_point(z), &Self::steps(z))?;
        let k = z.len();
        // Real coordinates are ordered (x1, y1, x2, y2, ...).
        let mut h = DMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
                let re = r[(xj, xi)] + r[(yj, yi)];
                let im = r[(xj, yi)] - r[(yj, xi)];
                h[(i, j)] = -Complex64::new(re, im);
            }
        }
        Ok(h)
    }

    /// `−Δ_w log Q̃(z + w v)` at `w = 0`, from two directional second differences.
    fn norm_sq(&self, z: &[Complex64], v: &[Complex64]) -> Result<f64, MetricError> {
        check_arity(self.dim(), z)?;
        let x = Self::real_point(z);
        let steps = Self::steps(z);
        let mut total = 0.0;
        for rot in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
            let dir: Vec<f64> = v.iter().flat_map(|c| [(rot * c).re, (rot * c).im]).collect();
            total += fd::directional_second(&|p: &[f64]| self.log_potential(&Self::complex_point(p)), &x, &dir, &steps)?;
        }
        Ok(-total)
    }
}
