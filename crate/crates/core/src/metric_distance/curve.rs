use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::MetricError;

/// `c(t) = constant + power_coef · t^power_exp + log_coef · ln t + exp_coef · e^t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Component {
    #[serde(default)]
    pub constant: f64,
    #[serde(default)]
    pub power_coef: f64,
    #[serde(default)]
    pub power_exp: f64,
    #[serde(default)]
    pub log_coef: f64,
    #[serde(default)]
    pub exp_coef: f64,
}

impl Component {
    pub fn constant(c: f64) -> Self {
        Component { constant: c, ..Default::default() }
    }

    pub fn linear(slope: f64) -> Self {
        Component { power_coef: slope, power_exp: 1.0, ..Default::default() }
    }

    pub fn power(coef: f64, exp: f64) -> Self {
        Component { power_coef: coef, power_exp: exp, ..Default::default() }
    }

    pub fn is_constant(&self) -> bool {
        self.power_coef == 0.0 && self.log_coef == 0.0 && self.exp_coef == 0.0
    }

    pub fn value(&self, t: f64) -> f64 {
        let mut v = self.constant;
        if self.power_coef != 0.0 {
            v += self.power_coef * t.powf(self.power_exp);
        }
        if self.log_coef != 0.0 {
            v += self.log_coef * t.ln();
        }
        if self.exp_coef != 0.0 {
            v += self.exp_coef * t.exp();
        }
        v
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let mut v = 0.0;
        if self.power_coef != 0.0 && self.power_exp != 0.0 {
            v += self.power_coef * self.power_exp * t.powf(self.power_exp - 1.0);
        }
        if self.log_coef != 0.0 {
            v += self.log_coef / t;
        }
        if self.exp_coef != 0.0 {
            v += self.exp_coef * t.exp();
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    AngularSlice,
    DiagonalRay,
    Custom,
}

/// `t ↦ (x1 + i y1, …, x_r + i y_r)` on `[t0, t_end]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub id: String,
    pub kind: CurveKind,
    pub x: Vec<Component>,
    pub y: Vec<Component>,
    pub t0: f64,
    pub t_end: f64,
}

impl CurveSpec {
    pub fn new(
        id: &str,
        kind: CurveKind,
        x: Vec<Component>,
        y: Vec<Component>,
        t0: f64,
        t_end: f64,
    ) -> Result<Self, MetricError> {
        let c = CurveSpec { id: id.to_string(), kind, x, y, t0, t_end };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), MetricError> {
        if self.x.len() != self.y.len() || self.x.is_empty() {
            return Err(MetricError::InvalidCurve(format!("{}: x and y need equal nonzero length", self.id)));
        }
        if !(self.t0 > 0.0 && self.t_end > self.t0 && self.t_end.is_finite()) {
            return Err(MetricError::InvalidCurve(format!("{}: need 0 < t0 < t_end", self.id)));
        }
        if self.kind == CurveKind::AngularSlice && !self.x.iter().all(Component::is_constant) {
            return Err(MetricError::InvalidCurve(format!("{}: angular slice needs constant x", self.id)));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `y_i = slope_i · t` at constant `x`.
    pub fn ray(id: &str, kind: CurveKind, x: &[f64], slope: &[f64], t0: f64, t_end: f64) -> Result<Self, MetricError> {
        Self::new(
            id,
            kind,
            x.iter().map(|&c| Component::constant(c)).collect(),
            slope.iter().map(|&s| Component::linear(s)).collect(),
            t0,
            t_end,
        )
    }

    /// `y_i = t` for every coordinate at `x = 0`.
    pub fn diagonal(dim: usize, t0: f64, t_end: f64) -> Result<Self, MetricError> {
        Self::ray("diagonal", CurveKind::DiagonalRay, &vec![0.0; dim], &vec![1.0; dim], t0, t_end)
    }

    pub fn point(&self, t: f64) -> Vec<Complex64> {
        self.x.iter().zip(&self.y).map(|(x, y)| Complex64::new(x.value(t), y.value(t))).collect()
    }

    pub fn velocity(&self, t: f64) -> Vec<Complex64> {
        self.x.iter().zip(&self.y).map(|(x, y)| Complex64::new(x.derivative(t), y.derivative(t))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components() {
        let c = Component { constant: 1.0, power_coef: 2.0, power_exp: 0.5, log_coef: 3.0, exp_coef: -1.0 };
        let t: f64 = 4.0;
        assert!((c.value(t) - (1.0 + 4.0 + 3.0 * t.ln() - t.exp())).abs() < 1e-12);
        assert!((c.derivative(t) - (0.5 + 0.75 - t.exp())).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(CurveSpec::diagonal(2, 10.0, 1e4).is_ok());
        assert!(CurveSpec::diagonal(2, 10.0, 5.0).is_err());
        let bad = CurveSpec::new(
            "s",
            CurveKind::AngularSlice,
            vec![Component::linear(1.0)],
            vec![Component::linear(1.0)],
            1.0,
            2.0,
        );
        assert!(matches!(bad, Err(MetricError::InvalidCurve(_))));
    }
}
