use nalgebra::DMatrix;

use super::MetricError;

/// Base step for a coordinate whose imaginary part is `y`.
///
/// Relative to `y` once the `e^{-2πy}` terms are negligible, otherwise small enough
/// to resolve them.
pub fn fd_step(y: f64) -> f64 {
    if y >= 8.0 {
        0.02 * y
    } else {
        0.02 * y.clamp(1e-3, 2.5)
    }
}

/// Two Richardson passes over `g(1), g(1/2), g(1/4)` for an `O(h²)` difference quotient.
fn richardson(g: impl Fn(f64) -> Result<f64, MetricError>) -> Result<f64, MetricError> {
    let (d1, d2, d3) = (g(1.0)?, g(0.5)?, g(0.25)?);
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

fn shifted(x: &[f64], dir: &[f64], s: f64) -> Vec<f64> {
    x.iter().zip(dir).map(|(a, d)| a + s * d).collect()
}

/// Second derivative of `f` along `dir` at `x`.
pub(crate) fn directional_second(
    f: &dyn Fn(&[f64]) -> Result<f64, MetricError>,
    x: &[f64],
    dir: &[f64],
    steps: &[f64],
) -> Result<f64, MetricError> {
    let h = dir
        .iter()
        .zip(steps)
        .filter(|(d, _)| d.abs() > 0.0)
        .map(|(d, s)| s / d.abs())
        .fold(f64::INFINITY, f64::min);
    if !h.is_finite() {
        return Ok(0.0);
    }
    let f0 = f(x)?;
    richardson(|scale| {
        let s = h * scale;
        Ok((f(&shifted(x, dir, s))? - 2.0 * f0 + f(&shifted(x, dir, -s))?) / (s * s))
    })
}

/// Real Hessian of `f` at `x` by central differences with per-coordinate steps.
pub fn fd_real_hessian(
    f: impl Fn(&[f64]) -> Result<f64, MetricError>,
    x: &[f64],
    steps: &[f64],
) -> Result<DMatrix<f64>, MetricError> {
    let n = x.len();
    let f0 = f(x)?;
    let mut h = DMatrix::zeros(n, n);
    for a in 0..n {
        let d = richardson(|scale| {
            let s = steps[a] * scale;
            let mut p = x.to_vec();
            let mut m = x.to_vec();
            p[a] += s;
            m[a] -= s;
            Ok((f(&p)? - 2.0 * f0 + f(&m)?) / (s * s))
        })?;
        h[(a, a)] = d;
        for b in 0..a {
            let d = richardson(|scale| {
                let (sa, sb) = (steps[a] * scale, steps[b] * scale);
                let at = |ea: f64, eb: f64| {
                    let mut p = x.to_vec();
                    p[a] += ea * sa;
                    p[b] += eb * sb;
                    f(&p)
                };
                Ok((at(1.0, 1.0)? - at(1.0, -1.0)? - at(-1.0, 1.0)? + at(-1.0, -1.0)?) / (4.0 * sa * sb))
            })?;
            h[(a, b)] = d;
            h[(b, a)] = d;
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_form_is_exact() {
        let f = |x: &[f64]| Ok(3.0 * x[0] * x[0] - 2.0 * x[0] * x[1] + 0.5 * x[1] * x[1]);
        let h = fd_real_hessian(f, &[1.0, 2.0], &[0.1, 0.1]).unwrap();
        let want = DMatrix::from_row_slice(2, 2, &[6.0, -2.0, -2.0, 1.0]);
        assert!((h - want).norm() < 1e-9);
    }

    #[test]
    fn log_hessian() {
        let f = |x: &[f64]| Ok(-(x[0] + 2.0 * x[1]).ln());
        let (y1, y2) = (30.0, 70.0);
        let h = fd_real_hessian(f, &[y1, y2], &[fd_step(y1), fd_step(y2)]).unwrap();
        let p = y1 + 2.0 * y2;
        let want = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]) / (p * p);
        assert!((&h - &want).norm() / want.norm() < 1e-9);
        let d = directional_second(&f, &[y1, y2], &[1.0, 1.0], &[fd_step(y1), fd_step(y2)]).unwrap();
        assert!((d - 9.0 / (p * p)).abs() < 1e-9 * 9.0 / (p * p));
    }
}
