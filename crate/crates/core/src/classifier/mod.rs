//! Dominant terms of candidate potentials and their classification.

mod cubic;
mod hessian;
mod table;

pub use cubic::{factor_cubic, CubicFactorization};
pub use hessian::{hessian_log, hessian_log_of, min_eigenvalue_on_k, psd_large_y, GridSpec, HessianLog, MinEigenvalue};
pub use table::{classify, CaseLabel, ClassificationReport, REJECTED_SHAPES};

use num_rational::Rational64;
use thiserror::Error;

use crate::exact::RealPolynomial2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("support {support:?} matches no table row and no rejected shape")]
    UnrecognizedSupport { support: Vec<(u32, u32)> },
    #[error("total degree {degree} exceeds 3")]
    DegreeTooHigh { degree: u32 },
    #[error("polynomial is not positive at y = ({y1}, {y2})")]
    NotPositive { y1: String, y2: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not positive on K at angle {theta}")]
    NotPositiveOnK { theta: f64 },
    #[error("no real linear factor t*y1 + s*y2 with t, s > 0 and positive cofactor")]
    NoRealPositiveFactor,
}

/// Monomials of a polynomial on the upper-right boundary of its Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantPolynomial {
    pub poly: RealPolynomial2,
    pub d1: u32,
    pub d2: u32,
    pub d: u32,
}

impl DominantPolynomial {
    /// Wraps a polynomial that is already its own dominant part.
    pub fn from_poly(poly: RealPolynomial2) -> Result<Self, ClassifyError> {
        dominant(&poly)
    }
}

/// Whether `s` maximizes `w·x` over `support` for some `w = (1, λ)` with `λ > 0`.
fn on_positive_face(s: (u32, u32), support: &[(u32, u32)]) -> bool {
    let mut lo: Option<Rational64> = None;
    let mut hi: Option<Rational64> = None;
    for &o in support {
        if o == s {
            continue;
        }
        let da = s.0 as i64 - o.0 as i64;
        let db = s.1 as i64 - o.1 as i64;
        // Need da + λ db >= 0.
        match db.cmp(&0) {
            std::cmp::Ordering::Greater => {
                let b = Rational64::new(-da, db);
                lo = Some(lo.map_or(b, |l| l.max(b)));
            }
            std::cmp::Ordering::Less => {
                let b = Rational64::new(da, -db);
                hi = Some(hi.map_or(b, |h| h.min(b)));
            }
            std::cmp::Ordering::Equal => {
                if da < 0 {
                    return false;
                }
            }
        }
    }
    let zero = Rational64::from_integer(0);
    let lo_eff = lo.map_or(zero, |l| l.max(zero));
    match hi {
        None => true,
        Some(h) => h > zero && lo_eff <= h && !(lo_eff == zero && h == zero),
    }
}

/// Dominant part: support points on Newton faces with strictly positive normal,
/// plus the endpoints of the faces `a = deg_{y1}` and `b = deg_{y2}`.
pub fn dominant(poly: &RealPolynomial2) -> Result<DominantPolynomial, ClassifyError> {
    if poly.is_zero() {
        return Err(ClassifyError::ZeroPolynomial);
    }
    let support = poly.support();
    let d1 = poly.deg_y1();
    let d2 = poly.deg_y2();
    let mut keep: Vec<(u32, u32)> = support.iter().copied().filter(|&s| on_positive_face(s, &support)).collect();
    if d1 > 0 {
        let face: Vec<u32> = support.iter().filter(|e| e.0 == d1).map(|e| e.1).collect();
        keep.push((d1, *face.iter().min().unwrap()));
        keep.push((d1, *face.iter().max().unwrap()));
    }
    if d2 > 0 {
        let face: Vec<u32> = support.iter().filter(|e| e.1 == d2).map(|e| e.0).collect();
        keep.push((*face.iter().min().unwrap(), d2));
        keep.push((*face.iter().max().unwrap(), d2));
    }
    if d1 == 0 && d2 == 0 {
        keep.push((0, 0));
    }
    keep.sort_unstable();
    keep.dedup();
    let p = poly.restrict(&keep);
    let d = p.total_degree();
    Ok(DominantPolynomial { d1: p.deg_y1(), d2: p.deg_y2(), d, poly: p })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[((u32, u32), i64)]) -> RealPolynomial2 {
        RealPolynomial2::from_int_terms(terms)
    }

    #[test]
    fn mixed_edge_and_corner_kept() {
        let q = p(&[((0, 2), 1), ((1, 1), 1), ((1, 0), 1)]);
        assert_eq!(dominant(&q).unwrap().poly, q);
    }

    #[test]
    fn chain_keeps_top() {
        let q = p(&[((0, 2), 1), ((0, 1), 1), ((0, 0), 1)]);
        assert_eq!(dominant(&q).unwrap().poly.support(), vec![(0, 2)]);
    }

    #[test]
    fn cubic_face_drops_interior() {
        let q = p(&[((3, 0), 1), ((2, 1), 1), ((1, 2), 1), ((0, 3), 1), ((1, 1), 1)]);
        let d = dominant(&q).unwrap();
        assert_eq!(d.poly.support(), vec![(0, 3), (1, 2), (2, 1), (3, 0)]);
        assert_eq!((d.d1, d.d2, d.d), (3, 3, 3));
    }

    #[test]
    fn table_rows_are_fixed_points() {
        let rows: [&[((u32, u32), i64)]; 9] = [
            &[((0, 1), 1), ((1, 0), 1)],
            &[((0, 1), 1), ((1, 1), 1), ((1, 0), 1)],
            &[((0, 2), 1), ((1, 1), 1), ((1, 0), 1)],
            &[((0, 2), 1), ((1, 2), 1), ((1, 0), 1)],
            &[((0, 3), 1), ((1, 2), 1), ((1, 0), 1)],
            &[((0, 2), 1), ((1, 1), 1), ((2, 0), 1)],
            &[((0, 2), 1), ((1, 2), 1), ((2, 1), 1), ((2, 0), 1)],
            &[((0, 3), 1), ((1, 2), 1), ((2, 1), 1), ((2, 0), 1)],
            &[((0, 3), 1), ((1, 2), 1), ((2, 1), 1), ((3, 0), 1)],
        ];
        for r in rows {
            let q = p(r);
            assert_eq!(dominant(&q).unwrap().poly, q, "{q}");
        }
    }

    #[test]
    fn lower_order_terms_dropped() {
        // (y1 + 1)(y2 + 1) keeps y1*y2, y1, y2 and drops the constant.
        let q = p(&[((1, 1), 4), ((1, 0), 4), ((0, 1), 4), ((0, 0), 4)]);
        assert_eq!(dominant(&q).unwrap().poly.support(), vec![(0, 1), (1, 0), (1, 1)]);
        // A pure product keeps only itself.
        let q = p(&[((1, 1), 4)]);
        assert_eq!(dominant(&q).unwrap().poly.support(), vec![(1, 1)]);
    }
}
