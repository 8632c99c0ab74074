//! Holomorphic expansion `a(t)` at a boundary point and finite/infinite divisor bookkeeping.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::gauss::{rat_int, to_c64, vec_is_zero};
use crate::exact::{Gq, Mat};
use crate::hodge_core::{HodgeError, NilpotentOperator, PolarizedSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitingError {
    #[error("vector is zero")]
    ZeroVector,
    #[error("weight {weight} is not 3")]
    WrongWeight { weight: u32 },
    #[error("point outside the punctured polydisc: |t_{index}| >= 1")]
    DomainError { index: usize },
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub exponent: Vec<u32>,
    pub vector: Vec<Gq>,
}

impl ExpansionTerm {
    pub fn order(&self) -> u32 {
        self.exponent.iter().sum()
    }
}

/// `a(t) = a0 + Σ a_I t^I` with commuting nilpotent isometries `N_1, …, N_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitingExpansion {
    space: PolarizedSpace,
    nilpotents: Vec<NilpotentOperator>,
    a0: Vec<Gq>,
    terms: Vec<ExpansionTerm>,
    truncation_order: u32,
}

impl LimitingExpansion {
    pub fn new(
        space: PolarizedSpace,
        nilpotents: Vec<NilpotentOperator>,
        a0: Vec<Gq>,
        terms: Vec<ExpansionTerm>,
    ) -> Result<Self, LimitingError> {
        let dim = space.dim();
        let k = nilpotents.len();
        if !(1..=2).contains(&k) {
            return Err(LimitingError::InvalidExpansion(format!("expected 1 or 2 nilpotents, got {k}")));
        }
        for n in &nilpotents {
            n.check_isometry(&space)?;
        }
        if k == 2 && !nilpotents[0].matrix().commutes_with(nilpotents[1].matrix()) {
            return Err(HodgeError::NonCommuting.into());
        }
        if a0.len() != dim {
            return Err(HodgeError::DimensionMismatch { expected: dim, found: a0.len() }.into());
        }
        if vec_is_zero(&a0) {
            return Err(LimitingError::ZeroVector);
        }
        for t in &terms {
            if t.exponent.len() != k {
                return Err(LimitingError::InvalidExpansion(format!(
                    "multi-exponent {:?} has length {}, expected {k}",
                    t.exponent,
                    t.exponent.len()
                )));
            }
            if t.order() == 0 {
                return Err(LimitingError::InvalidExpansion("multi-exponent must have |I| >= 1".into()));
            }
            if t.vector.len() != dim {
                return Err(HodgeError::DimensionMismatch { expected: dim, found: t.vector.len() }.into());
            }
        }
        let truncation_order = terms.iter().map(ExpansionTerm::order).max().unwrap_or(0);
        Ok(LimitingExpansion { space, nilpotents, a0, terms, truncation_order })
    }

    pub fn space(&self) -> &PolarizedSpace {
        &self.space
    }

    pub fn nilpotents(&self) -> &[NilpotentOperator] {
        &self.nilpotents
    }

    pub fn a0(&self) -> &[Gq] {
        &self.a0
    }

    pub fn terms(&self) -> &[ExpansionTerm] {
        &self.terms
    }

    pub fn truncation_order(&self) -> u32 {
        self.truncation_order
    }

    /// Number of boundary divisors through the point.
    pub fn k(&self) -> usize {
        self.nilpotents.len()
    }

    pub fn weight(&self) -> u32 {
        self.space.weight()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.nilpotents.iter().map(|n| degree_unchecked(n.matrix(), &self.a0)).collect()
    }

    pub fn divisor_classes(&self) -> Vec<DivisorClass> {
        self.degrees().into_iter().map(DivisorClass::from_degree).collect()
    }

    /// Form and nilpotents have real entries.
    pub fn is_real_structure(&self) -> bool {
        self.space.form().is_real() && self.nilpotents.iter().all(|n| n.matrix().is_real())
    }

    pub fn numeric(&self) -> NumericExpansion {
        NumericExpansion {
            q_tilde: self.space.twisted_form().to_c64(),
            nilpotents: self.nilpotents.iter().map(|n| n.matrix().to_c64()).collect(),
            a0: DVector::from_iterator(self.a0.len(), self.a0.iter().map(to_c64)),
            terms: self
                .terms
                .iter()
                .map(|t| (t.exponent.clone(), DVector::from_iterator(t.vector.len(), t.vector.iter().map(to_c64))))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DivisorTag {
    Finite,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub tag: DivisorTag,
    pub degree: u32,
}

impl DivisorClass {
    fn from_degree(degree: u32) -> Self {
        let tag = if degree == 0 { DivisorTag::Finite } else { DivisorTag::Infinite };
        DivisorClass { tag, degree }
    }
}

fn degree_unchecked(n: &Mat, a0: &[Gq]) -> u32 {
    let mut v = n.mul_vec(a0);
    let mut d = 0;
    while !vec_is_zero(&v) {
        d += 1;
        v = n.mul_vec(&v);
    }
    d
}

/// `max { l : N^l a0 ≠ 0 }`.
pub fn degree(n: &NilpotentOperator, a0: &[Gq]) -> Result<u32, LimitingError> {
    if a0.len() != n.dim() {
        return Err(HodgeError::DimensionMismatch { expected: n.dim(), found: a0.len() }.into());
    }
    if vec_is_zero(a0) {
        return Err(LimitingError::ZeroVector);
    }
    Ok(degree_unchecked(n.matrix(), a0))
}

/// Finite iff `N a0 = 0`.
pub fn classify_divisor(n: &NilpotentOperator, a0: &[Gq]) -> Result<DivisorClass, LimitingError> {
    degree(n, a0).map(DivisorClass::from_degree)
}

/// `N_i^{d_i + 1} a_I = 0` for every stored term and every `i`.
pub fn threefold_constraint(exp: &LimitingExpansion) -> Result<bool, LimitingError> {
    if exp.weight() != 3 {
        return Err(LimitingError::WrongWeight { weight: exp.weight() });
    }
    for (n, d) in exp.nilpotents.iter().zip(exp.degrees()) {
        let p = n.matrix().pow(d + 1);
        if exp.terms.iter().any(|t| !vec_is_zero(&p.mul_vec(&t.vector))) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn abs2(z: &Gq) -> BigRational {
    &z.re * &z.re + &z.im * &z.im
}

/// `a(t)` in exact arithmetic.
pub fn evaluate_a_exact(exp: &LimitingExpansion, t: &[Gq]) -> Result<Vec<Gq>, LimitingError> {
    if t.len() != exp.k() {
        return Err(HodgeError::DimensionMismatch { expected: exp.k(), found: t.len() }.into());
    }
    if let Some(i) = t.iter().position(|ti| abs2(ti) >= BigRational::one()) {
        return Err(LimitingError::DomainError { index: i });
    }
    let mut a = exp.a0.clone();
    for term in &exp.terms {
        let mut c = Gq::one();
        for (ti, &e) in t.iter().zip(&term.exponent) {
            for _ in 0..e {
                c = c * ti;
            }
        }
        for (x, y) in a.iter_mut().zip(&term.vector) {
            *x = &*x + &c * y;
        }
    }
    Ok(a)
}

/// `exp(Σ z_i N_i) a(t)` with `t` supplied independently of `z`.
pub fn evaluate_omega_exact(exp: &LimitingExpansion, z: &[Gq], t: &[Gq]) -> Result<Vec<Gq>, LimitingError> {
    if z.len() != exp.k() {
        return Err(HodgeError::DimensionMismatch { expected: exp.k(), found: z.len() }.into());
    }
    let a = evaluate_a_exact(exp, t)?;
    let dim = exp.space.dim();
    let mut m = Mat::zeros(dim, dim);
    for (zi, n) in z.iter().zip(&exp.nilpotents) {
        m = m.add(&n.matrix().scale(zi));
    }
    Ok(nil_exp_apply_exact(&m, &a))
}

/// `exp(M) v` for nilpotent `M`.
pub fn nil_exp_apply_exact(m: &Mat, v: &[Gq]) -> Vec<Gq> {
    let mut out = v.to_vec();
    let mut term = v.to_vec();
    let mut j = 1i64;
    loop {
        term = m.mul_vec(&term);
        if vec_is_zero(&term) {
            return out;
        }
        let inv = Gq::new(BigRational::one() / rat_int(j), BigRational::zero());
        term = term.iter().map(|x| x * &inv).collect();
        for (o, x) in out.iter_mut().zip(&term) {
            *o = &*o + x;
        }
        j += 1;
    }
}

/// Floating-point copy of an expansion for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumericExpansion {
    /// `i^n Q`.
    pub q_tilde: DMatrix<Complex64>,
    pub nilpotents: Vec<DMatrix<Complex64>>,
    pub a0: DVector<Complex64>,
    pub terms: Vec<(Vec<u32>, DVector<Complex64>)>,
}

impl NumericExpansion {
    pub fn dim(&self) -> usize {
        self.a0.len()
    }

    pub fn a_at(&self, t: &[Complex64]) -> Result<DVector<Complex64>, LimitingError> {
        if let Some(i) = t.iter().position(|ti| ti.norm() >= 1.0) {
            return Err(LimitingError::DomainError { index: i });
        }
        let mut a = self.a0.clone();
        for (e, v) in &self.terms {
            let c = t.iter().zip(e).fold(Complex64::new(1.0, 0.0), |acc, (ti, &k)| acc * ti.powu(k));
            a.axpy(c, v, Complex64::new(1.0, 0.0));
        }
        Ok(a)
    }

    /// `Σ w_i N_i`.
    pub fn combination(&self, w: &[Complex64]) -> DMatrix<Complex64> {
        let dim = self.dim();
        self.nilpotents.iter().zip(w).fold(DMatrix::zeros(dim, dim), |acc, (n, wi)| acc + n * *wi)
    }

    /// `exp(M) v` for nilpotent `M`, summed to `dim` terms.
    pub fn nil_exp_apply(m: &DMatrix<Complex64>, v: &DVector<Complex64>) -> DVector<Complex64> {
        let mut out = v.clone();
        let mut term = v.clone();
        for j in 1..v.len() {
            term = m * term / Complex64::new(j as f64, 0.0);
            if term.iter().all(|x| *x == Complex64::new(0.0, 0.0)) {
                break;
            }
            out += &term;
        }
        out
    }

    /// `Ω(z) = exp(Σ z_i N_i) a(t(z))`, `t_i = exp(2π i z_i)`.
    pub fn omega(&self, z: &[Complex64]) -> Result<DVector<Complex64>, LimitingError> {
        let t: Vec<Complex64> = z.iter().map(|zi| t_of_z(*zi)).collect();
        let a = self.a_at(&t)?;
        Ok(Self::nil_exp_apply(&self.combination(z), &a))
    }

    /// `Q̃(u, v) = u^T (i^n Q) v`.
    pub fn q_tilde(&self, u: &DVector<Complex64>, v: &DVector<Complex64>) -> Complex64 {
        (u.transpose() * &self.q_tilde * v)[(0, 0)]
    }
}

pub fn t_of_z(z: Complex64) -> Complex64 {
    (Complex64::new(0.0, 2.0 * std::f64::consts::PI) * z).exp()
}

pub fn evaluate_a(exp: &LimitingExpansion, t: &[Complex64]) -> Result<DVector<Complex64>, LimitingError> {
    if t.len() != exp.k() {
        return Err(HodgeError::DimensionMismatch { expected: exp.k(), found: t.len() }.into());
    }
    exp.numeric().a_at(t)
}

pub fn evaluate_omega(exp: &LimitingExpansion, z: &[Complex64]) -> Result<DVector<Complex64>, LimitingError> {
    if z.len() != exp.k() {
        return Err(HodgeError::DimensionMismatch { expected: exp.k(), found: z.len() }.into());
    }
    exp.numeric().omega(z)
}
