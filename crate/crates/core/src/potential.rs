//! The potential `Q̃(Ω, Ω̄)`: exact polynomial part, numeric evaluation and the decay split.

use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::gauss::{factorial, gq, gq_real, i_pow, vec_conj};
use crate::exact::{Gq, Mat, RealPolynomial2};
use crate::limiting_data::{t_of_z, DivisorClass, ExpansionTerm, LimitingError, LimitingExpansion, NumericExpansion};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("coefficient of y1^{a} y2^{b} has nonzero imaginary part")]
    NonRealCoefficient { a: u32, b: u32 },
    #[error("potential is not positive ({value}) at the queried point")]
    NonPositive { value: f64 },
    #[error("potential has imaginary part {im} at value {re}")]
    NonRealValue { re: f64, im: f64 },
    #[error("operation needs {expected} nilpotent(s), expansion has {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("decay fit failed: {0}")]
    FitFailure(String),
    #[error(transparent)]
    Limiting(#[from] LimitingError),
}

fn inv_factorial(j: u32) -> Gq {
    gq_real(BigRational::new(1.into(), factorial(j)))
}

/// `N^j v` for `j = 0..=deg` until the iterate vanishes.
fn orbit(n: &Mat, v: &[Gq]) -> Vec<Vec<Gq>> {
    let mut out = vec![v.to_vec()];
    loop {
        let next = n.mul_vec(out.last().unwrap());
        if next.iter().all(Zero::is_zero) {
            return out;
        }
        out.push(next);
    }
}

fn into_real(terms: Vec<((u32, u32), Gq)>) -> Result<RealPolynomial2, PotentialError> {
    let mut acc: std::collections::BTreeMap<(u32, u32), Gq> = Default::default();
    for (e, c) in terms {
        let slot = acc.entry(e).or_default();
        *slot = &*slot + c;
    }
    let mut p = RealPolynomial2::zero();
    for ((a, b), c) in acc {
        if !c.im.is_zero() {
            return Err(PotentialError::NonRealCoefficient { a, b });
        }
        p.add_term(a, b, c.re);
    }
    Ok(p)
}

/// `Q̃(e^{2i y1 N1} u, e^{-2i y2 N2} conj(v))` as an exact polynomial with Gaussian coefficients.
fn pairing_terms(exp: &LimitingExpansion, u: &[Gq], v: &[Gq]) -> Vec<((u32, u32), Gq)> {
    let space = exp.space();
    let twist = space.twist_sign();
    let left = orbit(exp.nilpotents()[0].matrix(), u);
    let vb = vec_conj(v);
    let right = match exp.nilpotents().get(1) {
        Some(n2) => orbit(n2.matrix(), &vb),
        None => vec![vb],
    };
    let mut out = Vec::new();
    for (j, lu) in left.iter().enumerate() {
        for (k, rv) in right.iter().enumerate() {
            let q = space.q(lu, rv);
            if q.is_zero() {
                continue;
            }
            let c = &twist
                * i_pow(j as i64)
                * i_pow(3 * k as i64)
                * gq(1 << j, 0)
                * gq(1 << k, 0)
                * inv_factorial(j as u32)
                * inv_factorial(k as u32)
                * q;
            out.push(((j as u32, k as u32), c));
        }
    }
    out
}

/// Exact `Q̃(e^{2i y1 N1} a0, e^{-2i y2 N2} ā0)` (with `y2` absent when `k = 1`).
pub fn polynomial_part(exp: &LimitingExpansion) -> Result<RealPolynomial2, PotentialError> {
    into_real(pairing_terms(exp, exp.a0(), exp.a0()))
}

/// Exact `Q̃(e^{2i(y1 N1 + y2 N2)} a0, ā0)`; equals `polynomial_part` for real isometries.
pub fn polynomial_part_one_sided(exp: &LimitingExpansion) -> Result<RealPolynomial2, PotentialError> {
    let space = exp.space();
    let twist = space.twist_sign();
    let ab = vec_conj(exp.a0());
    let n1 = exp.nilpotents()[0].matrix();
    let mut out = Vec::new();
    for (j, v1) in orbit(n1, exp.a0()).into_iter().enumerate() {
        let inner = match exp.nilpotents().get(1) {
            Some(n2) => orbit(n2.matrix(), &v1),
            None => vec![v1],
        };
        for (k, w) in inner.into_iter().enumerate() {
            let q = space.q(&w, &ab);
            if q.is_zero() {
                continue;
            }
            let c = &twist
                * i_pow((j + k) as i64)
                * gq(1 << (j + k), 0)
                * inv_factorial(j as u32)
                * inv_factorial(k as u32)
                * q;
            out.push(((j as u32, k as u32), c));
        }
    }
    into_real(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub deg: u32,
    pub leading_coefficient: String,
    pub leading_positive: bool,
    pub divisor: DivisorClass,
    /// `deg = 0` exactly for finite divisors and `deg = d` otherwise.
    pub consistent: bool,
}

/// Degree of `p(y1)` versus the divisor class.
pub fn one_variable_degree_check(exp: &LimitingExpansion) -> Result<DegreeReport, PotentialError> {
    if exp.k() != 1 {
        return Err(PotentialError::WrongArity { expected: 1, found: exp.k() });
    }
    let p = polynomial_part(exp)?;
    let deg = p.deg_y1();
    let lead = p.coeff(deg, 0);
    let divisor = exp.divisor_classes()[0];
    Ok(DegreeReport {
        deg,
        leading_coefficient: lead.to_string(),
        leading_positive: lead.is_positive(),
        divisor,
        consistent: deg == divisor.degree && !lead.is_zero(),
    })
}

/// Pieces of the potential at one point, in the sorting of `a(t) = a0 + f1 + f2 + h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PotentialComponents {
    /// `𝐩(y)`.
    pub poly: f64,
    /// `p1`: all pairings involving `f2` (terms with `i1 = 0`) and `a0`; decays in `y2`.
    pub slice1: f64,
    /// `p2`: all pairings involving `f1` (terms with `i2 = 0`) and `a0`; decays in `y1`.
    pub slice2: f64,
    /// `𝐇12`: every pairing mixing `f1` with `f2` or involving `h`.
    pub mixed: f64,
}

impl PotentialComponents {
    pub fn total(&self) -> f64 {
        self.poly + self.slice1 + self.slice2 + self.mixed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Base,
    F1,
    F2,
    H,
}

fn part_of(e: &[u32]) -> Part {
    match e {
        [_] => Part::F1,
        [_, 0] => Part::F1,
        [0, _] => Part::F2,
        _ => Part::H,
    }
}

/// Floating-point evaluator of `Q̃(Ω(z), conj Ω(z))`.
#[derive(Clone, Debug)]
pub struct PotentialEvaluator {
    num: NumericExpansion,
    real_structure: bool,
}

impl PotentialEvaluator {
    pub fn new(exp: &LimitingExpansion) -> Self {
        PotentialEvaluator { num: exp.numeric(), real_structure: exp.is_real_structure() }
    }

    pub fn k(&self) -> usize {
        self.num.nilpotents.len()
    }

    fn check_arity(&self, z: &[Complex64]) -> Result<(), PotentialError> {
        if z.len() != self.k() {
            return Err(PotentialError::WrongArity { expected: self.k(), found: z.len() });
        }
        Ok(())
    }

    fn finish(value: Complex64, scale: f64) -> Result<f64, PotentialError> {
        let tol = 1e-12 * value.re.abs() + 1e-13 * scale;
        if value.im.abs() > tol {
            return Err(PotentialError::NonRealValue { re: value.re, im: value.im });
        }
        if value.re <= 0.0 || !value.re.is_finite() {
            return Err(PotentialError::NonPositive { value: value.re });
        }
        Ok(value.re)
    }

    /// `Q̃(Ω, Ω̄)`, computed as `Q̃(e^{2i Σ y_k N_k} a(t), conj a(t))` when form and nilpotents are real.
    pub fn value(&self, z: &[Complex64]) -> Result<f64, PotentialError> {
        if !self.real_structure {
            return self.value_direct(z);
        }
        self.check_arity(z)?;
        let t: Vec<Complex64> = z.iter().map(|zi| t_of_z(*zi)).collect();
        let a = self.num.a_at(&t)?;
        let w: Vec<Complex64> = z.iter().map(|zi| Complex64::new(0.0, 2.0 * zi.im)).collect();
        let left = NumericExpansion::nil_exp_apply(&self.num.combination(&w), &a);
        let right = a.map(|c| c.conj());
        let v = self.num.q_tilde(&left, &right);
        let scale = left.norm() * right.norm() * self.num.q_tilde.norm();
        Self::finish(v, scale)
    }

    /// `Q̃(Ω, Ω̄)` from `Ω(z) = exp(Σ z_k N_k) a(t)` directly.
    pub fn value_direct(&self, z: &[Complex64]) -> Result<f64, PotentialError> {
        self.check_arity(z)?;
        let om = self.num.omega(z)?;
        let ob = om.map(|c| c.conj());
        let v = self.num.q_tilde(&om, &ob);
        let scale = om.norm() * om.norm() * self.num.q_tilde.norm();
        Self::finish(v, scale)
    }

    /// Structured split `𝐩 + p1 + p2 + 𝐇12` at `z`.
    pub fn components(&self, z: &[Complex64]) -> Result<PotentialComponents, PotentialError> {
        self.check_arity(z)?;
        let t: Vec<Complex64> = z.iter().map(|zi| t_of_z(*zi)).collect();
        if let Some(i) = t.iter().position(|ti| ti.norm() >= 1.0) {
            return Err(LimitingError::DomainError { index: i }.into());
        }
        let dim = self.num.dim();
        let zero = DVector::<Complex64>::zeros(dim);
        let mut parts = [self.num.a0.clone(), zero.clone(), zero.clone(), zero];
        for (e, v) in &self.num.terms {
            let c = t.iter().zip(e).fold(Complex64::new(1.0, 0.0), |acc, (ti, &k)| acc * ti.powu(k));
            let slot = match part_of(e) {
                Part::F1 => 1,
                Part::F2 => 2,
                _ => 3,
            };
            parts[slot].axpy(c, v, Complex64::new(1.0, 0.0));
        }
        let two_i = |y: f64| Complex64::new(0.0, 2.0 * y);
        let a1 = self.num.nilpotents[0].clone() * two_i(z[0].im);
        let a2 = match self.num.nilpotents.get(1) {
            Some(n2) => n2.clone() * (-two_i(z[1].im)),
            None => nalgebra::DMatrix::zeros(dim, dim),
        };
        let lefts: Vec<DVector<Complex64>> = parts.iter().map(|p| NumericExpansion::nil_exp_apply(&a1, p)).collect();
        let rights: Vec<DVector<Complex64>> =
            parts.iter().map(|p| NumericExpansion::nil_exp_apply(&a2, &p.map(|c| c.conj()))).collect();
        let pair = |i: usize, j: usize| self.num.q_tilde(&lefts[i], &rights[j]).re;
        let kinds = [Part::Base, Part::F1, Part::F2, Part::H];
        let mut out = PotentialComponents { poly: 0.0, slice1: 0.0, slice2: 0.0, mixed: 0.0 };
        for i in 0..4 {
            for j in 0..4 {
                let v = pair(i, j);
                match (kinds[i], kinds[j]) {
                    (Part::Base, Part::Base) => out.poly += v,
                    (Part::F1 | Part::Base, Part::F1 | Part::Base) => out.slice2 += v,
                    (Part::F2 | Part::Base, Part::F2 | Part::Base) => out.slice1 += v,
                    _ => out.mixed += v,
                }
            }
        }
        Ok(out)
    }
}

/// Evaluates `Q̃(Ω(z), conj Ω(z))`.
pub fn full_potential(exp: &LimitingExpansion, z: &[Complex64]) -> Result<f64, PotentialError> {
    PotentialEvaluator::new(exp).value(z)
}

/// Polynomial part plus the term lists feeding each decaying piece.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialDecomposition {
    pub poly: RealPolynomial2,
    /// Terms with `i1 = 0` (the `f2` side), feeding `p1`.
    pub slice1: Vec<ExpansionTerm>,
    /// Terms with `i2 = 0` (the `f1` side), feeding `p2`.
    pub slice2: Vec<ExpansionTerm>,
    /// Terms with both exponents positive (`h`).
    pub mixed: Vec<ExpansionTerm>,
    /// Sup of `|𝐇12|` over sampled rays, once verified.
    pub remainder_bound: Option<f64>,
}

pub fn decompose(exp: &LimitingExpansion) -> Result<PotentialDecomposition, PotentialError> {
    let poly = polynomial_part(exp)?;
    let mut d = PotentialDecomposition { poly, slice1: vec![], slice2: vec![], mixed: vec![], remainder_bound: None };
    for t in exp.terms() {
        match part_of(&t.exponent) {
            Part::F1 => d.slice2.push(t.clone()),
            Part::F2 => d.slice1.push(t.clone()),
            _ => d.mixed.push(t.clone()),
        }
    }
    Ok(d)
}

/// `y_i = slope_i * m + offset_i` at fixed real parts `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Ray {
    pub x: [f64; 2],
    pub slope: [f64; 2],
    pub offset: [f64; 2],
}

impl Ray {
    pub fn diagonal() -> Self {
        Ray { x: [0.0, 0.0], slope: [1.0, 1.0], offset: [0.0, 0.0] }
    }

    /// Parameter at which `min(y1, y2) = s`.
    fn param_for_min(&self, s: f64) -> f64 {
        ((s - self.offset[0]) / self.slope[0]).max((s - self.offset[1]) / self.slope[1])
    }

    fn z(&self, m: f64) -> [Complex64; 2] {
        [
            Complex64::new(self.x[0], self.slope[0] * m + self.offset[0]),
            Complex64::new(self.x[1], self.slope[1] * m + self.offset[1]),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecaySample {
    pub min_y: f64,
    pub y: [f64; 2],
    pub remainder: f64,
    pub remainder_dy: [f64; 2],
    pub slice1: f64,
    pub slice2: f64,
    /// `|full - (𝐩 + p1 + p2 + 𝐇12)| / full`.
    pub consistency: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RayDecay {
    pub ray: Ray,
    pub samples: Vec<DecaySample>,
    /// Fitted `-d log|𝐇12| / d min(y)`; infinite if `𝐇12` vanishes identically.
    pub remainder_rate: f64,
    pub derivative_rates: [f64; 2],
    pub slice1_rate: f64,
    pub slice2_rate: f64,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayReport {
    pub rays: Vec<RayDecay>,
    pub remainder_bound: f64,
    pub max_consistency: f64,
    pub passes: bool,
}

pub const DECAY_DELTA: f64 = 0.05;
pub const DECAY_SAMPLES: [f64; 8] = [5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0];

/// Least-squares decay rate of `|v|` against `s`; `None` if too few nonzero samples.
pub fn fit_decay_rate(s: &[f64], v: &[f64]) -> Result<f64, PotentialError> {
    let pts: Vec<(f64, f64)> =
        s.iter().zip(v).filter(|(_, v)| v.abs() > 0.0 && v.is_finite()).map(|(s, v)| (*s, v.abs().ln())).collect();
    if pts.is_empty() {
        return Ok(f64::INFINITY);
    }
    if pts.len() < 3 {
        return Err(PotentialError::FitFailure(format!("only {} nonzero samples", pts.len())));
    }
    let span = pts.last().unwrap().0 - pts[0].0;
    if span < 10.0 {
        return Err(PotentialError::FitFailure(format!("sample span {span} too short")));
    }
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx).powi(2)));
    Ok(-num / den)
}

/// Checks that `𝐇12 = full - 𝐩 - p1 - p2` and its first derivatives decay like `e^{-2π min(y)}`.
pub fn decay_split_verify(exp: &LimitingExpansion, rays: &[Ray]) -> Result<DecayReport, PotentialError> {
    if exp.k() != 2 {
        return Err(PotentialError::WrongArity { expected: 2, found: exp.k() });
    }
    let ev = PotentialEvaluator::new(exp);
    let target = 2.0 * std::f64::consts::PI * (1.0 - DECAY_DELTA);
    let mut out = Vec::new();
    let mut bound: f64 = 0.0;
    let mut max_cons: f64 = 0.0;
    for ray in rays {
        let mut samples = Vec::new();
        for &s in &DECAY_SAMPLES {
            let m = ray.param_for_min(s);
            let z = ray.z(m);
            let c = ev.components(&z)?;
            let h = 1e-3;
            let mut dr = [0.0; 2];
            for (i, d) in dr.iter_mut().enumerate() {
                let mut zp = z;
                let mut zm = z;
                zp[i].im += h;
                zm[i].im -= h;
                *d = (ev.components(&zp)?.mixed - ev.components(&zm)?.mixed) / (2.0 * h);
            }
            let cons = if s <= 10.0 {
                let full = ev.value(&z)?;
                (full - c.total()).abs() / full
            } else {
                0.0
            };
            max_cons = max_cons.max(cons);
            bound = bound.max(c.mixed.abs());
            samples.push(DecaySample {
                min_y: s,
                y: [z[0].im, z[1].im],
                remainder: c.mixed,
                remainder_dy: dr,
                slice1: c.slice1,
                slice2: c.slice2,
                consistency: cons,
            });
        }
        let ss: Vec<f64> = samples.iter().map(|x| x.min_y).collect();
        let col = |f: &dyn Fn(&DecaySample) -> f64| -> Vec<f64> { samples.iter().map(f).collect() };
        let remainder_rate = fit_decay_rate(&ss, &col(&|x| x.remainder))?;
        let derivative_rates = [
            fit_decay_rate(&ss, &col(&|x| x.remainder_dy[0]))?,
            fit_decay_rate(&ss, &col(&|x| x.remainder_dy[1]))?,
        ];
        let slice1_rate = fit_decay_rate(&ss, &col(&|x| x.slice1))?;
        let slice2_rate = fit_decay_rate(&ss, &col(&|x| x.slice2))?;
        let passes = remainder_rate >= target && derivative_rates.iter().all(|&r| r >= target);
        out.push(RayDecay { ray: *ray, samples, remainder_rate, derivative_rates, slice1_rate, slice2_rate, passes });
    }
    let passes = out.iter().all(|r| r.passes) && max_cons < 1e-9;
    Ok(DecayReport { rays: out, remainder_bound: bound, max_consistency: max_cons, passes })
}

/// `𝐩(y)` in floating point.
pub fn eval_poly(p: &RealPolynomial2, y: &[f64]) -> f64 {
    p.eval_f64(y[0], y.get(1).copied().unwrap_or(0.0))
}

/// Coefficient of `y1^{d1}` in `𝐩`, as a polynomial in `y2`.
pub fn top_y1_coefficient(p: &RealPolynomial2) -> RealPolynomial2 {
    let d1 = p.deg_y1();
    RealPolynomial2::from_terms(p.terms().filter(|(e, _)| e.0 == d1).map(|(e, c)| ((0, e.1), c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gauss::rat;
    use crate::hodge_core::{build_block, BlockKind};

    fn e(n: usize, i: usize) -> Vec<Gq> {
        let mut v = vec![gq(0, 0); n];
        v[i] = gq(1, 0);
        v
    }

    fn weight_one(terms: Vec<ExpansionTerm>) -> LimitingExpansion {
        let h = build_block(BlockKind::Weight1String).unwrap();
        LimitingExpansion::new(h.space, vec![h.nilpotent], e(2, 0), terms).unwrap()
    }

    #[test]
    fn weight_one_polynomial() {
        let p = polynomial_part(&weight_one(vec![])).unwrap();
        assert_eq!(p, RealPolynomial2::from_int_terms(&[((1, 0), 2)]));
    }

    #[test]
    fn finite_divisor_gives_constant() {
        let b = build_block(BlockKind::Trivial { dim: 1, weight: 0 }).unwrap();
        let exp = LimitingExpansion::new(b.space, vec![b.nilpotent], e(1, 0), vec![]).unwrap();
        let r = one_variable_degree_check(&exp).unwrap();
        assert_eq!(r.deg, 0);
        assert!(r.consistent && r.leading_positive);
        assert_eq!(polynomial_part(&exp).unwrap(), RealPolynomial2::from_int_terms(&[((0, 0), 1)]));
    }

    #[test]
    fn full_equals_polynomial_without_terms() {
        let exp = weight_one(vec![]);
        for y in [0.5, 3.0, 40.0] {
            let v = full_potential(&exp, &[Complex64::new(0.3, y)]).unwrap();
            assert!((v - 2.0 * y).abs() <= 1e-12 * v);
        }
    }

    #[test]
    fn single_term_decay_is_exact() {
        let half_i = Gq::new(rat(0, 1), rat(1, 2));
        let exp = weight_one(vec![ExpansionTerm { exponent: vec![1], vector: vec![gq(0, 0), half_i] }]);
        for y in [1.0, 2.0, 3.0] {
            let v = full_potential(&exp, &[Complex64::new(0.0, y)]).unwrap();
            let expect = 2.0 * y + (-2.0 * std::f64::consts::PI * y).exp();
            assert!((v - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn degree_check_weight_one() {
        let r = one_variable_degree_check(&weight_one(vec![])).unwrap();
        assert_eq!(r.deg, 1);
        assert!(r.leading_positive && r.consistent);
    }

    #[test]
    fn eval_and_top_coefficient() {
        let p = RealPolynomial2::from_int_terms(&[((1, 0), 2), ((1, 2), 3), ((0, 1), 1)]);
        assert_eq!(top_y1_coefficient(&p), RealPolynomial2::from_int_terms(&[((0, 0), 2), ((0, 2), 3)]));
        assert!((eval_poly(&p, &[1.0, 2.0]) - 16.0).abs() < 1e-12);
    }
}
