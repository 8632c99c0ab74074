use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::curve::{Component, CurveKind, CurveSpec};
use super::length::{curve_length, divergence_fit, DivergenceVerdict, LengthSeries, QuadratureConfig};
use super::{MetricError, MetricField, MetricSource, PotentialMetric};
use crate::limiting_data::{DivisorTag, LimitingExpansion};
use crate::potential::PotentialEvaluator;

/// The seven probe curves: diagonal, two power rays, two angular slices, two drifting spirals.
pub fn probe_family(t0: f64, t_end: f64) -> Result<Vec<CurveSpec>, MetricError> {
    let c = Component::constant;
    let lin = Component::linear;
    let drift = |x0: f64, rate: f64| Component { constant: x0, log_coef: rate, ..Default::default() };
    Ok(vec![
        CurveSpec::diagonal(2, t0, t_end)?,
        CurveSpec::new("power-1/2", CurveKind::Custom, vec![c(0.0), c(0.0)], vec![lin(1.0), Component::power(1.0, 0.5)], t0, t_end)?,
        CurveSpec::new("power-2", CurveKind::Custom, vec![c(0.0), c(0.0)], vec![lin(1.0), Component::power(1.0, 2.0)], t0, t_end)?,
        CurveSpec::ray("slice-a", CurveKind::AngularSlice, &[0.25, 0.5], &[1.0, 3.0], t0, t_end)?,
        CurveSpec::ray("slice-b", CurveKind::AngularSlice, &[0.1, 0.7], &[2.0, 1.0], t0, t_end)?,
        CurveSpec::new("spiral-a", CurveKind::Custom, vec![drift(0.0, 0.3), drift(0.0, -0.3)], vec![lin(1.0), lin(1.0)], t0, t_end)?,
        CurveSpec::new("spiral-b", CurveKind::Custom, vec![drift(0.5, -0.2), drift(0.1, 0.5)], vec![lin(1.0), lin(2.0)], t0, t_end)?,
    ])
}

/// Angular slices `{Re z_j = c_j}` along several directions in `y`.
pub fn angular_slice_probes(t0: f64, t_end: f64) -> Result<Vec<CurveSpec>, MetricError> {
    let c = Component::constant;
    Ok(vec![
        CurveSpec::ray("slice-diagonal", CurveKind::AngularSlice, &[0.2, 0.4], &[1.0, 1.0], t0, t_end)?,
        CurveSpec::ray("slice-steep", CurveKind::AngularSlice, &[0.25, 0.5], &[1.0, 3.0], t0, t_end)?,
        CurveSpec::ray("slice-shallow", CurveKind::AngularSlice, &[0.1, 0.7], &[3.0, 1.0], t0, t_end)?,
        CurveSpec::new(
            "slice-power",
            CurveKind::AngularSlice,
            vec![c(0.3), c(0.6)],
            vec![Component::linear(1.0), Component::power(1.0, 0.5)],
            t0,
            t_end,
        )?,
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    pub series: LengthSeries,
    pub verdict: DivergenceVerdict,
}

/// Length series of one curve together with its divergence verdict.
pub fn probe_curve(metric: &dyn MetricField, curve: &CurveSpec, cfg: &QuadratureConfig) -> Result<ProbeResult, MetricError> {
    let series = curve_length(metric, curve, cfg)?;
    let verdict = divergence_fit(&series)?;
    Ok(ProbeResult { series, verdict })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngularSliceReport {
    pub probe: ProbeResult,
    /// `(t, log|y1 − e^{−2π y2}/(2π)|)` at each checkpoint.
    pub comparison: Vec<(f64, f64)>,
}

/// Length along an angular slice for data with `E1` infinite and `E2` finite.
pub fn angular_slice_length(
    exp: &LimitingExpansion,
    curve: &CurveSpec,
    cfg: &QuadratureConfig,
) -> Result<AngularSliceReport, MetricError> {
    let tags: Vec<DivisorTag> = exp.divisor_classes().iter().map(|c| c.tag).collect();
    if tags != [DivisorTag::Infinite, DivisorTag::Finite] {
        return Err(MetricError::Precondition(format!("need (Infinite, Finite) divisors, found {tags:?}")));
    }
    if curve.kind != CurveKind::AngularSlice {
        return Err(MetricError::InvalidCurve(format!("{} is not an angular slice", curve.id)));
    }
    let metric = PotentialMetric::new(PotentialEvaluator::new(exp));
    let probe = probe_curve(&metric, curve, cfg)?;
    let r = 2.0 * PI;
    let comparison = probe
        .series
        .checkpoints
        .iter()
        .map(|c| {
            let z = curve.point(c.t);
            (c.t, (z[0].im - (-r * z[1].im).exp() / r).abs().ln())
        })
        .collect();
    Ok(AngularSliceReport { probe, comparison })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub degrees: Vec<u32>,
    /// `{D1, D2}` as an unordered pair, smaller first.
    pub pair: (u32, u32),
    /// The pair is `{1, 2}` or `{1, 3}`.
    pub strict_type: bool,
    pub probes: Vec<ProbeResult>,
    pub all_diverge: bool,
    pub all_bounded: bool,
}

/// Runs the probe family against the full numeric potential of a two-divisor datum.
pub fn corollary_strict_cases(
    exp: &LimitingExpansion,
    t0: f64,
    t_end: f64,
    cfg: &QuadratureConfig,
) -> Result<CorollaryReport, MetricError> {
    if exp.k() != 2 {
        return Err(MetricError::WrongArity { expected: 2, found: exp.k() });
    }
    let degrees = exp.degrees();
    let pair = (degrees[0].min(degrees[1]), degrees[0].max(degrees[1]));
    let metric = PotentialMetric::new(PotentialEvaluator::new(exp));
    let probes = probe_family(t0, t_end)?
        .iter()
        .map(|c| probe_curve(&metric, c, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let all_diverge = probes.iter().all(|p| p.verdict.diverges_log);
    let all_bounded = probes.iter().all(|p| p.verdict.bounded);
    Ok(CorollaryReport { degrees, pair, strict_type: matches!(pair, (1, 2) | (1, 3)), probes, all_diverge, all_bounded })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationVariant {
    /// `(1/y1²) u u^H` with `u = (1, −i e^{−y2})` along `t ↦ (C, t, −e^t, t)`.
    WithPerturbation,
    /// `(1/y1²) diag(1, 0)` along the same curve.
    WithoutPerturbation,
    /// Perturbed metric along `t ↦ (C, t, 0, 1)`.
    FrozenSecond,
}

struct PerturbationMetric {
    perturbed: bool,
}

impl MetricField for PerturbationMetric {
    fn dim(&self) -> usize {
        2
    }

    fn source(&self) -> MetricSource {
        MetricSource::ExplicitMatrix
    }

    fn tensor(&self, z: &[Complex64]) -> Result<DMatrix<Complex64>, MetricError> {
        let s = 1.0 / (z[0].im * z[0].im);
        let e = if self.perturbed { (-z[1].im).exp() } else { 0.0 };
        let c = |re: f64, im: f64| Complex64::new(re * s, im * s);
        Ok(DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, e), c(0.0, -e), c(e * e, 0.0)]))
    }

    /// `|ż1 + i e^{−y2} ż2|² / y1²`, kept factored so that `ż2 = −e^t` does not overflow the product.
    fn norm_sq(&self, z: &[Complex64], v: &[Complex64]) -> Result<f64, MetricError> {
        let mut w = v[0];
        if self.perturbed {
            w += Complex64::new(0.0, (-z[1].im).exp()) * v[1];
        }
        Ok(w.norm_sqr() / (z[0].im * z[0].im))
    }
}

/// `E1(x) = ∫_x^∞ e^{−t}/t dt` from its convergent power series (for moderate `x`).
pub fn exponential_integral_e1(x: f64) -> f64 {
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -x / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerturbationReport {
    pub variant: PerturbationVariant,
    pub probe: ProbeResult,
    /// `∫_{t0}^∞ e^{−t}/t dt` for the perturbed curve.
    pub reference: Option<f64>,
    pub abs_error: Option<f64>,
}

/// `e^t` overflows past `t ≈ 709`; the tail beyond this is below `e^{−700}`.
pub const PERTURBATION_T_END: f64 = 700.0;

pub fn perturbation_example(
    variant: PerturbationVariant,
    c: f64,
    t0: f64,
    cfg: &QuadratureConfig,
) -> Result<PerturbationReport, MetricError> {
    if t0 < 1.0 {
        return Err(MetricError::Precondition(format!("t0 = {t0} < 1")));
    }
    let k = Component::constant;
    let (x2, y2, t_end) = match variant {
        PerturbationVariant::FrozenSecond => (k(0.0), k(1.0), t0 * 1e4),
        PerturbationVariant::WithoutPerturbation => {
            (Component { exp_coef: -1.0, ..Default::default() }, Component::linear(1.0), t0 * 1e4)
        }
        PerturbationVariant::WithPerturbation => {
            (Component { exp_coef: -1.0, ..Default::default() }, Component::linear(1.0), PERTURBATION_T_END)
        }
    };
    let curve = CurveSpec::new("perturbation", CurveKind::Custom, vec![k(c), x2], vec![Component::linear(1.0), y2], t0, t_end)?;
    let metric = PerturbationMetric { perturbed: variant != PerturbationVariant::WithoutPerturbation };
    let probe = probe_curve(&metric, &curve, cfg)?;
    let (reference, abs_error) = if variant == PerturbationVariant::WithPerturbation {
        let r = exponential_integral_e1(t0);
        (Some(r), Some((probe.series.final_length() - r).abs()))
    } else {
        (None, None)
    };
    Ok(PerturbationReport { variant, probe, reference, abs_error })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaSample {
    pub y1: f64,
    /// `y1² H_{11}`.
    pub scaled_diagonal: f64,
    /// `|y1² H_{1j}|` for `j ≥ 2`.
    pub scaled_off_diagonal: Vec<f64>,
}

/// `y1² H` entries along `y1` at fixed remaining coordinates.
pub fn lemma_samples(
    exp: &LimitingExpansion,
    x1: f64,
    y1_values: &[f64],
    rest: &[Complex64],
) -> Result<Vec<LemmaSample>, MetricError> {
    let metric = PotentialMetric::new(PotentialEvaluator::new(exp));
    y1_values
        .iter()
        .map(|&y1| {
            let mut z = vec![Complex64::new(x1, y1)];
            z.extend_from_slice(rest);
            let h = metric.tensor(&z)?;
            let s = y1 * y1;
            Ok(LemmaSample {
                y1,
                scaled_diagonal: s * h[(0, 0)].re,
                scaled_off_diagonal: (1..z.len()).map(|j| s * h[(0, j)].norm()).collect(),
            })
        })
        .collect()
}
