use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Gaussian rational `a + b i` with `a, b ∈ Q`.
pub type Gq = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn gq(re: i64, im: i64) -> Gq {
    Complex::new(rat_int(re), rat_int(im))
}

pub fn gq_rat(re: BigRational, im: BigRational) -> Gq {
    Complex::new(re, im)
}

pub fn gq_real(re: BigRational) -> Gq {
    Complex::new(re, BigRational::zero())
}

pub fn zero() -> Gq {
    Gq::zero()
}

pub fn one() -> Gq {
    Gq::one()
}

pub fn i_unit() -> Gq {
    gq(0, 1)
}

/// `i^n`.
pub fn i_pow(n: i64) -> Gq {
    match n.rem_euclid(4) {
        0 => gq(1, 0),
        1 => gq(0, 1),
        2 => gq(-1, 0),
        _ => gq(0, -1),
    }
}

pub fn is_real(z: &Gq) -> bool {
    z.im.is_zero()
}

pub fn conj(z: &Gq) -> Gq {
    Complex::new(z.re.clone(), -z.im.clone())
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Large operands: shift both down before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0) as usize;
    let shift_d = (db - 60).max(0) as usize;
    let n = (r.numer().abs() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    let v = n / d * 2f64.powi((shift_n as i32) - (shift_d as i32));
    if r.is_negative() {
        -v
    } else {
        v
    }
}

pub fn to_c64(z: &Gq) -> Complex64 {
    Complex64::new(rat_to_f64(&z.re), rat_to_f64(&z.im))
}

/// Exact conversion of a finite `f64`.
pub fn rat_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn vec_is_zero(v: &[Gq]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_conj(v: &[Gq]) -> Vec<Gq> {
    v.iter().map(conj).collect()
}

pub fn vec_add(a: &[Gq], b: &[Gq]) -> Vec<Gq> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Gq], b: &[Gq]) -> Vec<Gq> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(s: &Gq, v: &[Gq]) -> Vec<Gq> {
    v.iter().map(|x| s * x).collect()
}

pub fn vec_to_c64(v: &[Gq]) -> Vec<Complex64> {
    v.iter().map(to_c64).collect()
}
