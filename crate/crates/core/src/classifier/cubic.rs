use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::gauss::rat_to_f64;
use crate::exact::RealPolynomial2;

use super::ClassifyError;

/// `p = (t y1 + s y2)(a y1² + b y1 y2 + c y2²)` with `t, s > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicFactorization {
    pub t: BigRational,
    pub s: BigRational,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    /// The root of `p(x, 1)` was found exactly, so every coefficient identity is exact.
    pub exact: bool,
    /// `|t c + s b − C|` where `C` is the coefficient of `y1 y2²`.
    pub residual: f64,
}

impl CubicFactorization {
    pub fn linear(&self) -> RealPolynomial2 {
        RealPolynomial2::from_terms([((1, 0), self.t.clone()), ((0, 1), self.s.clone())])
    }

    pub fn quadratic(&self) -> RealPolynomial2 {
        RealPolynomial2::from_terms([((2, 0), self.a.clone()), ((1, 1), self.b.clone()), ((0, 2), self.c.clone())])
    }
}

const BISECTION_BITS: u32 = 60;
const RESIDUAL_BOUND: f64 = 1e-10;

/// Coefficients from the constant term upward.
type Poly1 = Vec<BigRational>;

fn trim(mut p: Poly1) -> Poly1 {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &[BigRational]) -> Poly1 {
    p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect()
}

fn rem(a: &[BigRational], b: &[BigRational]) -> Poly1 {
    let mut r = trim(a.to_vec());
    let lead = b.last().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() / lead;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &q * c;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> Poly1 {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Best rational approximation with denominator at most `max_den`.
fn continued_fraction(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e12 {
            break;
        }
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then(|| BigRational::new(h1.into(), k1.into()))
}

/// Root of a squarefree `f` in `[lo, hi]` with `f(lo) f(hi) < 0`.
fn refine(f: &[BigRational], mut lo: BigRational, mut hi: BigRational) -> (BigRational, bool) {
    let flo = eval(f, &lo).is_positive();
    let width = &hi - &lo;
    let target = width / BigRational::from_integer(BigInt::one() << BISECTION_BITS);
    let guess = rat_to_f64(&((&lo + &hi) / BigRational::from_integer(2.into())));
    while &hi - &lo > target {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        let fm = eval(f, &mid);
        if fm.is_zero() {
            return (mid, true);
        }
        if fm.is_positive() == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let approx = rat_to_f64(&lo);
    for x in [approx, guess] {
        if let Some(r) = continued_fraction(x, 1 << 20) {
            if eval(f, &r).is_zero() {
                return (r, true);
            }
        }
    }
    ((lo + hi) / BigRational::from_integer(2.into()), false)
}

/// Negative real roots of `f`, simple roots first, each flagged exact or approximate.
fn negative_roots(f: &[BigRational]) -> Vec<(BigRational, bool)> {
    let g = gcd(f, &derivative(f));
    let mut repeated = Vec::new();
    let mut simple_part = f.to_vec();
    if g.len() >= 2 {
        // A repeated root of a rational polynomial is rational.
        let deg = g.len() - 1;
        let r = -(&g[deg - 1]) / (BigRational::from_integer(BigInt::from(deg)) * &g[deg]);
        repeated.push(r.clone());
        let lin = vec![-r, BigRational::one()];
        while rem(&simple_part, &lin).is_empty() && simple_part.len() > 1 {
            simple_part = divide_linear(&simple_part, &lin[0]);
        }
    }
    let mut out: Vec<(BigRational, bool)> = Vec::new();
    if simple_part.len() >= 2 {
        let lead = simple_part.last().unwrap().abs();
        let bound = BigRational::one() + simple_part.iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |m, x| m.max(x));
        let mut pts = vec![-bound];
        let d = derivative(&simple_part);
        let dd: Vec<f64> = d.iter().map(rat_to_f64).collect();
        let mut crit: Vec<f64> = match dd.len() {
            3 => {
                let disc = dd[1] * dd[1] - 4.0 * dd[2] * dd[0];
                if disc >= 0.0 {
                    let sq = disc.sqrt();
                    vec![(-dd[1] - sq) / (2.0 * dd[2]), (-dd[1] + sq) / (2.0 * dd[2])]
                } else {
                    vec![]
                }
            }
            2 => vec![-dd[0] / dd[1]],
            _ => vec![],
        };
        crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for c in crit {
            if let Some(r) = BigRational::from_float(c) {
                if r < BigRational::zero() && r > pts[0] {
                    pts.push(r);
                }
            }
        }
        pts.push(BigRational::zero());
        for w in pts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let (fa, fb) = (eval(&simple_part, a), eval(&simple_part, b));
            if fa.is_zero() {
                if a.is_negative() && !out.iter().any(|(x, _)| x == a) {
                    out.push((a.clone(), true));
                }
                continue;
            }
            if fb.is_zero() {
                if b.is_negative() && !out.iter().any(|(x, _)| x == b) {
                    out.push((b.clone(), true));
                }
                continue;
            }
            if fa.is_positive() != fb.is_positive() {
                out.push(refine(&simple_part, a.clone(), b.clone()));
            }
        }
    }
    out.extend(repeated.into_iter().filter(|r| r.is_negative()).map(|r| (r, true)));
    out
}

/// Quotient of `p` by `x − r` (synthetic division, remainder dropped).
fn divide_linear(p: &[BigRational], neg_r: &BigRational) -> Poly1 {
    let r = -neg_r;
    let n = p.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut carry = BigRational::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + &carry * &r;
        q[k] = carry.clone();
    }
    q
}

/// Splits off a linear factor `t y1 + s y2` with `t, s > 0` and a cofactor positive on the first quadrant.
pub fn factor_cubic(p: &RealPolynomial2) -> Result<CubicFactorization, ClassifyError> {
    if !p.is_homogeneous() || p.total_degree() != 3 {
        return Err(ClassifyError::NotHomogeneous);
    }
    let (a3, b3, c3, d3) = (p.coeff(3, 0), p.coeff(2, 1), p.coeff(1, 2), p.coeff(0, 3));
    if !a3.is_positive() || !d3.is_positive() {
        return Err(ClassifyError::NoRealPositiveFactor);
    }
    // p(x, 1) = A x³ + B x² + C x + D and the factor vanishes at x = −s/t.
    let f = vec![d3.clone(), c3.clone(), b3.clone(), a3.clone()];
    for (x, exact) in negative_roots(&f) {
        let t = a3.clone();
        let s = -(&x) * &t;
        let a = BigRational::one();
        let b = (&b3 - &s) / &t;
        let c = &d3 / &s;
        let residual = (rat_to_f64(&(&t * &c + &s * &b - &c3))).abs();
        let four_ac = BigRational::from_integer(4.into()) * &a * &c;
        let quad_ok = c.is_positive() && (!b.is_negative() || &b * &b < four_ac);
        if residual < RESIDUAL_BOUND && quad_ok {
            return Ok(CubicFactorization { t, s, a, b, c, exact, residual });
        }
    }
    Err(ClassifyError::NoRealPositiveFactor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((u32, u32), i64)]) -> RealPolynomial2 {
        RealPolynomial2::from_int_terms(terms)
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn product_with_sum_of_squares() {
        let f = factor_cubic(&p(&[((3, 0), 1), ((2, 1), 1), ((1, 2), 1), ((0, 3), 1)])).unwrap();
        assert_eq!((f.t.clone(), f.s.clone(), f.a.clone(), f.b.clone(), f.c.clone()), (r(1), r(1), r(1), r(0), r(1)));
        assert!(f.exact);
    }

    #[test]
    fn sum_of_cubes() {
        let q = p(&[((3, 0), 1), ((0, 3), 1)]);
        let f = factor_cubic(&q).unwrap();
        assert_eq!((f.t.clone(), f.s.clone(), f.b.clone()), (r(1), r(1), r(-1)));
        assert_eq!(f.linear().mul(&f.quadratic()), q);
    }

    #[test]
    fn repeated_root_prefers_simple_factor() {
        let q = p(&[((3, 0), 2), ((2, 1), 5), ((1, 2), 4), ((0, 3), 1)]);
        let f = factor_cubic(&q).unwrap();
        assert_eq!((f.t.clone(), f.s.clone(), f.a.clone(), f.b.clone(), f.c.clone()), (r(2), r(1), r(1), r(2), r(1)));
        assert_eq!(f.linear().mul(&f.quadratic()), q);
    }

    #[test]
    fn irrational_root() {
        // x³ + 3x² + 3x + 3 = (x + 1)³ + 2 has the single real root −1 − 2^{1/3}.
        let q = p(&[((3, 0), 1), ((2, 1), 3), ((1, 2), 3), ((0, 3), 3)]);
        let f = factor_cubic(&q).unwrap();
        assert!(!f.exact);
        assert!(f.residual < 1e-10);
        let prod = f.linear().mul(&f.quadratic());
        for ((a, b), c) in q.terms() {
            assert!((rat_to_f64(&prod.coeff(*a, *b)) - rat_to_f64(c)).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects() {
        assert_eq!(factor_cubic(&p(&[((2, 0), 1), ((0, 2), 1)])), Err(ClassifyError::NotHomogeneous));
        // (y1 − y2)(y1² + y2²) has only a positive root of p(x, 1).
        let q = p(&[((1, 0), 1), ((0, 1), -1)]).mul(&p(&[((2, 0), 1), ((0, 2), 1)]));
        assert_eq!(factor_cubic(&q), Err(ClassifyError::NoRealPositiveFactor));
        assert_eq!(factor_cubic(&p(&[((2, 1), 1), ((0, 3), 1)])), Err(ClassifyError::NoRealPositiveFactor));
    }
}
