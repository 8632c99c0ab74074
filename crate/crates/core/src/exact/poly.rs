use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gauss::rat_to_f64;

/// Polynomial in `(y1, y2)` with rational coefficients.
///
/// Keys are exponent pairs `(a, b)` for `y1^a y2^b`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RealPolynomial2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl RealPolynomial2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(a: u32, b: u32, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn y1() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn y2() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in it {
            p.add_term(a, b, c);
        }
        p
    }

    /// Integer coefficients, `((a, b), c)`.
    pub fn from_int_terms(terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, BigRational::from_integer(c.into()))))
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigRational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn deg_y1(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn deg_y2(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0 + e.1).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_degree();
        self.terms.keys().all(|e| e.0 + e.1 == d)
    }

    /// Keep only the listed exponents.
    pub fn restrict(&self, keep: &[(u32, u32)]) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| keep.contains(e)).map(|(e, c)| (*e, c.clone())))
    }

    /// Exchange `y1` and `y2`.
    pub fn swap_variables(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (&(a, b), c) in &other.terms {
            p.add_term(a, b, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * s)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (&(a, b), c) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                p.add_term(a + a2, b + b2, c * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    /// Partial derivative in `y1` (`var = 0`) or `y2` (`var = 1`).
    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(a, b), c)| {
            let e = if var == 0 { a } else { b };
            if e == 0 {
                return None;
            }
            let k = BigRational::from_integer(e.into());
            let exp = if var == 0 { (a - 1, b) } else { (a, b - 1) };
            Some((exp, c * k))
        }))
    }

    pub fn eval_exact(&self, y1: &BigRational, y2: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (&(a, b), c)| {
            acc + c * num_traits::pow(y1.clone(), a as usize) * num_traits::pow(y2.clone(), b as usize)
        })
    }

    pub fn eval_f64(&self, y1: f64, y2: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| rat_to_f64(c) * y1.powi(a as i32) * y2.powi(b as i32))
            .sum()
    }

    fn leading(&self) -> Option<((u32, u32), BigRational)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lt_e, lt_c) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading() {
            if e.0 < lt_e.0 || e.1 < lt_e.1 {
                return None;
            }
            let q = Self::monomial(e.0 - lt_e.0, e.1 - lt_e.1, c / &lt_c);
            rem = rem.sub(&q.mul(divisor));
            quot = quot.add(&q);
        }
        Some(quot)
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }
}

impl fmt::Display for RealPolynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || (a == 0 && b == 0) {
                factors.push(abs.to_string());
            }
            for (name, e) in [("y1", a), ("y2", b)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((u32, u32), i64)]) -> RealPolynomial2 {
        RealPolynomial2::from_int_terms(terms)
    }

    #[test]
    fn arithmetic_and_degrees() {
        let a = p(&[((1, 0), 1), ((0, 1), 1)]);
        let cube = a.pow(3);
        assert_eq!(cube.coeff(2, 1), BigRational::from_integer(3.into()));
        assert_eq!(cube.total_degree(), 3);
        assert!(cube.is_homogeneous());
        assert_eq!(cube.deg_y1(), 3);
    }

    #[test]
    fn derivative_and_eval() {
        let q = p(&[((2, 1), 3), ((0, 2), -1)]);
        let d1 = q.derivative(0);
        assert_eq!(d1, p(&[((1, 1), 6)]));
        assert_eq!(q.derivative(1), p(&[((2, 0), 3), ((0, 1), -2)]));
        assert!((q.eval_f64(2.0, 3.0) - (36.0 - 9.0)).abs() < 1e-12);
    }

    #[test]
    fn exact_division() {
        let a = p(&[((1, 0), 1), ((0, 1), 2), ((0, 0), 1)]);
        let b = p(&[((2, 0), 1), ((0, 1), -3)]);
        assert_eq!(a.mul(&b).div_exact(&a), Some(b.clone()));
        assert_eq!(a.mul(&b).add(&p(&[((0, 0), 1)])).div_exact(&a), None);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[((0, 2), 1), ((1, 1), -3), ((1, 0), 2)]).to_string(), "-3*y1*y2 + 2*y1 + y2^2");
    }
}
