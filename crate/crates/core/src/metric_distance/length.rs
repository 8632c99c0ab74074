use serde::{Deserialize, Serialize};

use super::curve::CurveSpec;
use super::{MetricError, MetricField};

const GL_NODES: [f64; 4] = [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
const GL_WEIGHTS: [f64; 4] = [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Number of geometrically spaced checkpoints after `t0`.
    pub checkpoints: usize,
    /// Panel doubling stops when two successive sums agree to this relative tolerance.
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { checkpoints: 13, rel_tol: 1e-8, max_panels: 1 << 12 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub t: f64,
    pub length: f64,
    /// `√(ż^H H ż)` at `t`.
    pub integrand: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSeries {
    pub curve_id: String,
    pub t0: f64,
    pub checkpoints: Vec<Checkpoint>,
    /// Every segment met the tolerance before reaching `max_panels`.
    pub converged: bool,
}

impl LengthSeries {
    pub fn final_length(&self) -> f64 {
        self.checkpoints.last().map_or(0.0, |c| c.length)
    }
}

fn integrand(metric: &dyn MetricField, curve: &CurveSpec, t: f64) -> Result<f64, MetricError> {
    let z = curve.point(t);
    let v = curve.velocity(t);
    let n = metric.norm_sq(&z, &v)?;
    if !n.is_finite() {
        return Err(MetricError::QuadratureBlowup { t });
    }
    Ok(n.max(0.0).sqrt())
}

/// Gauss-Legendre over `panels` geometrically spaced panels of `[a, b]`.
fn composite(f: &dyn Fn(f64) -> Result<f64, MetricError>, a: f64, b: f64, panels: usize) -> Result<f64, MetricError> {
    let ratio = (b / a).powf(1.0 / panels as f64);
    let mut lo = a;
    let mut sum = 0.0;
    for k in 0..panels {
        let hi = if k + 1 == panels { b } else { lo * ratio };
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            sum += w * half * (f(mid - half * x)? + f(mid + half * x)?);
        }
        lo = hi;
    }
    Ok(sum)
}

/// Length of `curve` under `metric`, reported at geometric checkpoints.
pub fn curve_length(
    metric: &dyn MetricField,
    curve: &CurveSpec,
    cfg: &QuadratureConfig,
) -> Result<LengthSeries, MetricError> {
    curve.validate()?;
    if curve.dim() != metric.dim() {
        return Err(MetricError::WrongArity { expected: metric.dim(), found: curve.dim() });
    }
    let n = cfg.checkpoints.max(1);
    let f = |t: f64| integrand(metric, curve, t);
    let mut out = Vec::with_capacity(n);
    let mut total = 0.0;
    let mut converged = true;
    let mut a = curve.t0;
    for k in 1..=n {
        let b = if k == n { curve.t_end } else { curve.t0 * (curve.t_end / curve.t0).powf(k as f64 / n as f64) };
        let mut panels = 1;
        let mut prev = composite(&f, a, b, panels)?;
        loop {
            panels *= 2;
            let next = composite(&f, a, b, panels)?;
            let done = (next - prev).abs() <= cfg.rel_tol * (next.abs() + total);
            prev = next;
            if done {
                break;
            }
            if panels >= cfg.max_panels {
                converged = false;
                break;
            }
        }
        total += prev;
        out.push(Checkpoint { t: b, length: total, integrand: f(b)? });
        a = b;
    }
    Ok(LengthSeries { curve_id: curve.id.clone(), t0: curve.t0, checkpoints: out, converged })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivergenceVerdict {
    /// `c > 0` with relative residual below 5% over at least three decades.
    pub diverges_log: bool,
    /// Checkpoint increments decay geometrically.
    pub bounded: bool,
    /// Least-squares fit `L ≈ c log T + b`.
    pub c: f64,
    pub b: f64,
    /// RMS fit residual over the range of `L`, zero for a constant series.
    pub residual: f64,
    /// Largest reported length.
    pub sup: f64,
    pub decades: f64,
}

pub const MAX_FIT_RESIDUAL: f64 = 0.05;
const MIN_CHECKPOINTS: usize = 6;
const MIN_DECADES: f64 = 3.0;

fn increments_decay(lengths: &[f64]) -> bool {
    let sup = lengths.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let floor = 1e-12 * (1.0 + sup);
    let inc: Vec<f64> = lengths.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &inc[inc.len() / 2..];
    if tail.last().is_some_and(|&d| d <= floor) {
        return true;
    }
    tail.windows(2).all(|w| w[1] <= 0.9 * w[0] || w[1] <= floor)
}

/// Classifies a length series as logarithmically divergent, bounded, or neither.
pub fn divergence_fit(series: &LengthSeries) -> Result<DivergenceVerdict, MetricError> {
    let pts = &series.checkpoints;
    let decades = pts.last().map_or(0.0, |p| (p.t / series.t0).log10());
    if pts.len() < MIN_CHECKPOINTS {
        return Err(MetricError::InsufficientSpan { checkpoints: pts.len(), decades });
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.t.ln()).collect();
    let ls: Vec<f64> = pts.iter().map(|p| p.length).collect();
    let n = xs.len() as f64;
    let (mx, ml) = (xs.iter().sum::<f64>() / n, ls.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxl: f64 = xs.iter().zip(&ls).map(|(x, l)| (x - mx) * (l - ml)).sum();
    let c = sxl / sxx;
    let b = ml - c * mx;
    let rms = (xs.iter().zip(&ls).map(|(x, l)| (l - c * x - b).powi(2)).sum::<f64>() / n).sqrt();
    let range = ls.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - ls.iter().cloned().fold(f64::INFINITY, f64::min);
    let residual = if range > 0.0 { rms / range } else { 0.0 };
    let sup = ls.iter().cloned().fold(0.0, f64::max);
    let bounded = increments_decay(&ls);
    let long_enough = decades >= MIN_DECADES - 1e-9;
    if !long_enough && !bounded {
        return Err(MetricError::InsufficientSpan { checkpoints: pts.len(), decades });
    }
    let diverges_log = long_enough && !bounded && c > 0.0 && residual < MAX_FIT_RESIDUAL;
    Ok(DivergenceVerdict { diverges_log, bounded, c, b, residual, sup, decades })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(f: impl Fn(f64) -> f64, t0: f64, t1: f64, n: usize) -> LengthSeries {
        let checkpoints = (1..=n)
            .map(|k| {
                let t = t0 * (t1 / t0).powf(k as f64 / n as f64);
                Checkpoint { t, length: f(t), integrand: 0.0 }
            })
            .collect();
        LengthSeries { curve_id: "s".into(), t0, checkpoints, converged: true }
    }

    #[test]
    fn log_series_diverges() {
        let v = divergence_fit(&series(f64::ln, 1.0, 1e4, 12)).unwrap();
        assert!(v.diverges_log && !v.bounded);
        assert!((v.c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn saturating_series_is_bounded() {
        let v = divergence_fit(&series(|t| 2.0 - (-t).exp(), 1.0, 1e3, 12)).unwrap();
        assert!(v.bounded && !v.diverges_log);
        let v = divergence_fit(&series(|t| 1.0 - 1.0 / t, 1.0, 1e4, 12)).unwrap();
        assert!(v.bounded && !v.diverges_log);
    }

    #[test]
    fn short_series_rejected() {
        assert!(matches!(divergence_fit(&series(f64::ln, 1.0, 1e4, 4)), Err(MetricError::InsufficientSpan { .. })));
        assert!(matches!(divergence_fit(&series(f64::ln, 1.0, 1e2, 8)), Err(MetricError::InsufficientSpan { .. })));
    }
}
