use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exact::RealPolynomial2;

use super::{ClassifyError, DominantPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    Invalid,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::I => "i",
            CaseLabel::II => "ii",
            CaseLabel::III => "iii",
            CaseLabel::IV => "iv",
            CaseLabel::V => "v",
            CaseLabel::VI => "vi",
            CaseLabel::VII => "vii",
            CaseLabel::VIII => "viii",
            CaseLabel::IX => "ix",
            CaseLabel::Invalid => "Invalid",
        };
        f.write_str(s)
    }
}

impl CaseLabel {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "i" => CaseLabel::I,
            "ii" => CaseLabel::II,
            "iii" => CaseLabel::III,
            "iv" => CaseLabel::IV,
            "v" => CaseLabel::V,
            "vi" => CaseLabel::VI,
            "vii" => CaseLabel::VII,
            "viii" => CaseLabel::VIII,
            "ix" => CaseLabel::IX,
            "Invalid" => CaseLabel::Invalid,
            _ => return None,
        })
    }
}

struct Row {
    label: CaseLabel,
    degrees: (u32, u32, u32),
    /// Exponents `(a, b)` of `y1^a y2^b` carrying `A, B, C, D` in order.
    template: &'static [(u32, u32)],
}

const ROWS: [Row; 9] = [
    Row { label: CaseLabel::I, degrees: (1, 1, 1), template: &[(0, 1), (1, 0)] },
    Row { label: CaseLabel::II, degrees: (1, 1, 2), template: &[(0, 1), (1, 1), (1, 0)] },
    Row { label: CaseLabel::III, degrees: (1, 2, 2), template: &[(0, 2), (1, 1), (1, 0)] },
    Row { label: CaseLabel::IV, degrees: (1, 2, 3), template: &[(0, 2), (1, 2), (1, 0)] },
    Row { label: CaseLabel::V, degrees: (1, 3, 3), template: &[(0, 3), (1, 2), (1, 0)] },
    Row { label: CaseLabel::VI, degrees: (2, 2, 2), template: &[(0, 2), (1, 1), (2, 0)] },
    Row { label: CaseLabel::VII, degrees: (2, 2, 3), template: &[(0, 2), (1, 2), (2, 1), (2, 0)] },
    Row { label: CaseLabel::VIII, degrees: (2, 3, 3), template: &[(0, 3), (1, 2), (2, 1), (2, 0)] },
    Row { label: CaseLabel::IX, degrees: (3, 3, 3), template: &[(0, 3), (1, 2), (2, 1), (3, 0)] },
];

/// Supports (after ordering so that `deg_{y1} ≤ deg_{y2}`) whose `M(p)` is never semidefinite for large `y`.
pub const REJECTED_SHAPES: [(&str, &[(u32, u32)]); 11] = [
    ("A*y2^2 + B*y1", &[(0, 2), (1, 0)]),
    ("A*y2^3 + B*y2*y1 + C*y1", &[(0, 3), (1, 1), (1, 0)]),
    ("A*y2^3 + B*y1", &[(0, 3), (1, 0)]),
    ("A*y2^2 + B*y2^2*y1 + C*y1^2", &[(0, 2), (1, 2), (2, 0)]),
    ("A*y2^2 + B*y2*y1^2 + C*y1^2", &[(0, 2), (2, 1), (2, 0)]),
    ("A*y2^3 + B*y2^2*y1 + C*y1^2", &[(0, 3), (1, 2), (2, 0)]),
    ("A*y2^3 + B*y2*y1^2 + C*y1^2", &[(0, 3), (2, 1), (2, 0)]),
    ("A*y2^3 + B*y1^2", &[(0, 3), (2, 0)]),
    ("A*y2^3 + D*y1^3", &[(0, 3), (3, 0)]),
    ("A*y2^3 + B*y2^2*y1 + D*y1^3", &[(0, 3), (1, 2), (3, 0)]),
    ("A*y2^3 + C*y2*y1^2 + D*y1^3", &[(0, 3), (2, 1), (3, 0)]),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub case_label: CaseLabel,
    /// Table row whose shape matched, even when its conditions fail.
    pub matched_row: Option<CaseLabel>,
    /// Rejected shape that matched, if any.
    pub rejected_shape: Option<String>,
    /// `y1` and `y2` were exchanged to reach the table's ordering.
    pub swapped: bool,
    /// `(d1, d2, d)` after ordering.
    pub degrees: (u32, u32, u32),
    pub coefficients: BTreeMap<String, BigRational>,
    /// Conditions required for the row.
    pub conditions: BTreeMap<String, bool>,
    /// Reported but not required.
    pub flags: BTreeMap<String, bool>,
    /// Every `≥` in the row's conditions holds strictly.
    pub strict: bool,
    /// Subcase `a`–`d` for row (ix).
    pub subcase: Option<char>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn is_candidate(&self) -> bool {
        self.case_label != CaseLabel::Invalid
    }

    pub fn coefficient(&self, name: &str) -> BigRational {
        self.coefficients.get(name).cloned().unwrap_or_else(BigRational::zero)
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Matches the dominant polynomial against the table rows and rejected shapes.
pub fn classify(p: &DominantPolynomial) -> Result<ClassificationReport, ClassifyError> {
    if p.poly.is_zero() {
        return Err(ClassifyError::ZeroPolynomial);
    }
    if p.d > 3 {
        return Err(ClassifyError::DegreeTooHigh { degree: p.d });
    }
    let swapped = p.d1 > p.d2;
    let poly: RealPolynomial2 = if swapped { p.poly.swap_variables() } else { p.poly.clone() };
    let support = poly.support();
    let degrees = (poly.deg_y1(), poly.deg_y2(), poly.total_degree());

    let mut report = ClassificationReport {
        case_label: CaseLabel::Invalid,
        matched_row: None,
        rejected_shape: None,
        swapped,
        degrees,
        coefficients: BTreeMap::new(),
        conditions: BTreeMap::new(),
        flags: BTreeMap::new(),
        strict: false,
        subcase: None,
        notes: Vec::new(),
    };

    let mut sorted = support.clone();
    sorted.sort_unstable();
    for (name, shape) in REJECTED_SHAPES {
        let mut s = shape.to_vec();
        s.sort_unstable();
        if s == sorted {
            report.rejected_shape = Some(name.to_string());
            return Ok(report);
        }
    }

    let Some(row) = ROWS.iter().find(|r| r.degrees == degrees && support.iter().all(|e| r.template.contains(e))) else {
        return Err(ClassifyError::UnrecognizedSupport { support });
    };
    report.matched_row = Some(row.label);
    let names = ["A", "B", "C", "D"];
    let c: Vec<BigRational> = row.template.iter().map(|&(a, b)| poly.coeff(a, b)).collect();
    for (n, v) in names.iter().zip(&c) {
        report.coefficients.insert(n.to_string(), v.clone());
    }

    let pos = |v: &BigRational| v.is_positive();
    let mut cond = BTreeMap::new();
    let mut strict = true;
    match row.label {
        CaseLabel::VI => {
            let disc = &c[1] * &c[1] - int(4) * &c[0] * &c[2];
            cond.insert("A_pos".into(), pos(&c[0]));
            cond.insert("C_pos".into(), pos(&c[2]));
            cond.insert("B2_minus_4AC_nonneg".into(), !disc.is_negative());
            strict = disc.is_positive();
            if disc.is_zero() {
                report.notes.push("complete_square".into());
            }
        }
        CaseLabel::VIII => {
            let e = &c[1] * &c[1] - int(3) * &c[0] * &c[2];
            cond.insert("A_pos".into(), pos(&c[0]));
            cond.insert("C_pos".into(), pos(&c[2]));
            cond.insert("D_pos".into(), pos(&c[3]));
            cond.insert("B2_minus_3AC_nonneg".into(), !e.is_negative());
            report.flags.insert("B_nonzero".into(), !c[1].is_zero());
            report.flags.insert("B_pos".into(), c[1].is_positive());
            strict = e.is_positive();
        }
        CaseLabel::IX => {
            let (a, b, cc, d) = (&c[0], &c[1], &c[2], &c[3]);
            let e1 = b * b - int(3) * a * cc;
            let e2 = cc * cc - int(3) * b * d;
            let mid = b * cc - int(9) * a * d;
            cond.insert("A_pos".into(), pos(a));
            cond.insert("D_pos".into(), pos(d));
            cond.insert("B2_minus_3AC_nonneg".into(), !e1.is_negative());
            cond.insert("C2_minus_3BD_nonneg".into(), !e2.is_negative());
            let bc = b * cc;
            let disc = &mid * &mid - int(4) * &e1 * &e2;
            report.flags.insert("BC_pos".into(), bc.is_positive());
            report.flags.insert("BC_minus_9AD_pos".into(), mid.is_positive());
            report.flags.insert("VIb_discriminant_nonpos".into(), !disc.is_positive());
            report.subcase = match (e1.is_positive(), e2.is_positive(), e1.is_zero(), e2.is_zero()) {
                (true, true, _, _) if bc.is_positive() => Some('a'),
                (true, true, _, _) if bc.is_negative() => Some('b'),
                (true, _, _, true) | (_, true, true, _) => Some('c'),
                (_, _, true, true) => Some('d'),
                _ => None,
            };
            if report.subcase == Some('b') {
                cond.insert("VIb_discriminant_nonpos".into(), !disc.is_positive());
            }
            strict = e1.is_positive() && e2.is_positive() && (report.subcase != Some('b') || disc.is_negative());
            if e1.is_zero() && e2.is_zero() {
                report.notes.push("perfect_cube".into());
            }
        }
        _ => {
            for (n, v) in names.iter().zip(&c) {
                cond.insert(format!("{n}_pos"), pos(v));
            }
        }
    }
    report.strict = strict && cond.values().all(|&b| b);
    let all = cond.values().all(|&b| b);
    report.conditions = cond;
    if all {
        report.case_label = row.label;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::dominant;

    fn run(terms: &[((u32, u32), i64)]) -> ClassificationReport {
        classify(&dominant(&RealPolynomial2::from_int_terms(terms)).unwrap()).unwrap()
    }

    #[test]
    fn linear_case() {
        let r = run(&[((0, 1), 1), ((1, 0), 1)]);
        assert_eq!(r.case_label, CaseLabel::I);
        assert!(r.strict);
    }

    #[test]
    fn quadratic_cases() {
        let r = run(&[((0, 2), 1), ((1, 1), 3), ((2, 0), 1)]);
        assert_eq!(r.case_label, CaseLabel::VI);
        assert!(r.strict);
        let r = run(&[((0, 2), 1), ((1, 1), 1), ((2, 0), 1)]);
        assert_eq!(r.case_label, CaseLabel::Invalid);
        assert_eq!(r.matched_row, Some(CaseLabel::VI));
        assert!(!r.conditions["B2_minus_4AC_nonneg"]);
        let r = run(&[((0, 2), 1), ((1, 1), 2), ((2, 0), 1)]);
        assert_eq!(r.case_label, CaseLabel::VI);
        assert!(!r.strict);
        assert_eq!(r.notes, vec!["complete_square".to_string()]);
    }

    #[test]
    fn swap_to_table_order() {
        // y1^2 + y1 y2 + y2 has deg_{y1} = 2 > deg_{y2} = 1.
        let r = run(&[((2, 0), 1), ((1, 1), 1), ((0, 1), 1)]);
        assert!(r.swapped);
        assert_eq!(r.case_label, CaseLabel::III);
    }

    #[test]
    fn rejected_shape() {
        let r = run(&[((0, 2), 1), ((1, 0), 1)]);
        assert_eq!(r.case_label, CaseLabel::Invalid);
        assert!(r.rejected_shape.is_some());
    }

    #[test]
    fn cube_is_perfect() {
        let cube = RealPolynomial2::from_int_terms(&[((1, 0), 1), ((0, 1), 1)]).pow(3);
        let r = classify(&dominant(&cube).unwrap()).unwrap();
        assert_eq!(r.case_label, CaseLabel::IX);
        assert_eq!(r.subcase, Some('d'));
        assert!(r.notes.contains(&"perfect_cube".to_string()));
        assert!(!r.strict);
    }

    #[test]
    fn unknown_support() {
        let d = dominant(&RealPolynomial2::from_int_terms(&[((0, 3), 1), ((1, 1), 1)])).unwrap();
        assert!(matches!(classify(&d), Err(ClassifyError::UnrecognizedSupport { .. })));
        // A sub-support of a row is matched positionally with zero coefficients.
        let r = run(&[((1, 1), 1)]);
        assert_eq!(r.matched_row, Some(CaseLabel::II));
        assert_eq!(r.case_label, CaseLabel::Invalid);
    }
}
