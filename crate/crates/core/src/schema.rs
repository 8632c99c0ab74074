//! JSON shapes shared by the library and the command line.
//!
//! Rationals travel as integer pairs so values stay exact. Integers that fit in `i64`
//! are written as JSON numbers and larger ones as decimal strings.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::classifier::{CaseLabel, ClassificationReport};
use crate::exact::gauss::gq_rat;
use crate::exact::{Gq, Mat, RealPolynomial2, Subspace};
use crate::hodge_core::{HodgeError, IncreasingFiltration, NilpotentOperator, PolarizedSpace};
use crate::limiting_data::{ExpansionTerm, LimitingError, LimitingExpansion};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Limiting(#[from] LimitingError),
}

fn invalid(msg: impl Into<String>) -> SchemaError {
    SchemaError::Invalid(msg.into())
}

/// Arbitrary-precision integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Signed(v) => Ok(JsonInt(v.into())),
            Raw::Unsigned(v) => Ok(JsonInt(v.into())),
            Raw::Text(s) => BigInt::from_str(s.trim())
                .map(JsonInt)
                .map_err(|_| serde::de::Error::custom(format!("not an integer: {s:?}"))),
        }
    }
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        JsonInt(v.clone())
    }
}

fn ratio(num: &JsonInt, den: &JsonInt) -> Result<BigRational, SchemaError> {
    if den.0.is_zero() {
        return Err(invalid("zero denominator"));
    }
    Ok(BigRational::new(num.0.clone(), den.0.clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalJson {
    pub num: JsonInt,
    pub den: JsonInt,
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<BigRational, SchemaError> {
        ratio(&self.num, &self.den)
    }
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson { num: r.numer().into(), den: r.denom().into() }
    }
}

/// Gaussian rational `re_num/re_den + i · im_num/im_den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GqJson {
    pub re_num: JsonInt,
    pub re_den: JsonInt,
    pub im_num: JsonInt,
    pub im_den: JsonInt,
}

impl GqJson {
    pub fn to_gq(&self) -> Result<Gq, SchemaError> {
        Ok(gq_rat(ratio(&self.re_num, &self.re_den)?, ratio(&self.im_num, &self.im_den)?))
    }
}

impl From<&Gq> for GqJson {
    fn from(z: &Gq) -> Self {
        GqJson {
            re_num: z.re.numer().into(),
            re_den: z.re.denom().into(),
            im_num: z.im.numer().into(),
            im_den: z.im.denom().into(),
        }
    }
}

pub type MatrixJson = Vec<Vec<GqJson>>;

pub fn vector_to_json(v: &[Gq]) -> Vec<GqJson> {
    v.iter().map(GqJson::from).collect()
}

pub fn vector_from_json(v: &[GqJson]) -> Result<Vec<Gq>, SchemaError> {
    v.iter().map(GqJson::to_gq).collect()
}

pub fn matrix_to_json(m: &Mat) -> MatrixJson {
    m.to_rows().iter().map(|r| vector_to_json(r)).collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<Mat, SchemaError> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(invalid("matrix must be a nonempty rectangular array"));
    }
    Ok(Mat::from_rows(rows.iter().map(|r| vector_from_json(r)).collect::<Result<_, _>>()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    /// Row-major matrix of `Q`.
    pub form: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    #[serde(rename = "I")]
    pub exponent: Vec<u32>,
    pub vec: Vec<GqJson>,
}

/// Limiting expansion `a(t)` with its polarized space and nilpotents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumJson {
    pub space: SpaceJson,
    pub nilpotents: Vec<MatrixJson>,
    pub a0: Vec<GqJson>,
    #[serde(default)]
    pub terms: Vec<TermJson>,
    pub weight: u32,
}

impl DatumJson {
    pub fn to_expansion(&self) -> Result<LimitingExpansion, SchemaError> {
        let space = PolarizedSpace::new(matrix_from_json(&self.space.form)?, self.weight)?;
        let nilpotents = self
            .nilpotents
            .iter()
            .map(|m| Ok(NilpotentOperator::new(matrix_from_json(m)?)?))
            .collect::<Result<Vec<_>, SchemaError>>()?;
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(ExpansionTerm { exponent: t.exponent.clone(), vector: vector_from_json(&t.vec)? }))
            .collect::<Result<Vec<_>, SchemaError>>()?;
        Ok(LimitingExpansion::new(space, nilpotents, vector_from_json(&self.a0)?, terms)?)
    }
}

impl From<&LimitingExpansion> for DatumJson {
    fn from(exp: &LimitingExpansion) -> Self {
        DatumJson {
            space: SpaceJson { form: matrix_to_json(exp.space().form()) },
            nilpotents: exp.nilpotents().iter().map(|n| matrix_to_json(n.matrix())).collect(),
            a0: vector_to_json(exp.a0()),
            terms: exp
                .terms()
                .iter()
                .map(|t| TermJson { exponent: t.exponent.clone(), vec: vector_to_json(&t.vector) })
                .collect(),
            weight: exp.weight(),
        }
    }
}

/// `num/den · y1^a y2^b` with `exp = [a, b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialJson {
    pub exp: [u32; 2],
    pub num: JsonInt,
    #[serde(default = "unit_den")]
    pub den: JsonInt,
}

fn unit_den() -> JsonInt {
    JsonInt(1.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub monomials: Vec<MonomialJson>,
}

impl PolynomialJson {
    /// Repeated exponents are summed.
    pub fn to_polynomial(&self) -> Result<RealPolynomial2, SchemaError> {
        let mut p = RealPolynomial2::zero();
        for m in &self.monomials {
            p.add_term(m.exp[0], m.exp[1], ratio(&m.num, &m.den)?);
        }
        Ok(p)
    }
}

impl From<&RealPolynomial2> for PolynomialJson {
    fn from(p: &RealPolynomial2) -> Self {
        PolynomialJson {
            monomials: p
                .terms()
                .map(|(&(a, b), c)| MonomialJson { exp: [a, b], num: c.numer().into(), den: c.denom().into() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelJson {
    pub level: i64,
    pub dim: usize,
    pub basis: Vec<Vec<GqJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradeJson {
    pub level: i64,
    pub rank: usize,
}

/// Increasing filtration with its nonzero graded ranks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationJson {
    pub ambient: usize,
    pub grades: Vec<GradeJson>,
    pub levels: Vec<LevelJson>,
}

impl FiltrationJson {
    pub fn to_filtration(&self) -> Result<IncreasingFiltration, SchemaError> {
        let mut levels = BTreeMap::new();
        for l in &self.levels {
            let basis: Vec<Vec<Gq>> = l.basis.iter().map(|v| vector_from_json(v)).collect::<Result<_, _>>()?;
            if basis.iter().any(|v| v.len() != self.ambient) {
                return Err(invalid(format!("level {} has a vector of the wrong length", l.level)));
            }
            let s = Subspace::span(self.ambient, &basis);
            if s.dim() != l.dim {
                return Err(invalid(format!("level {} spans dimension {}, declared {}", l.level, s.dim(), l.dim)));
            }
            levels.insert(l.level, s);
        }
        Ok(IncreasingFiltration::new(self.ambient, levels)?)
    }
}

impl From<&IncreasingFiltration> for FiltrationJson {
    fn from(w: &IncreasingFiltration) -> Self {
        FiltrationJson {
            ambient: w.ambient(),
            grades: w.grades().into_iter().map(|(level, rank)| GradeJson { level, rank }).collect(),
            levels: w
                .levels()
                .iter()
                .map(|(&level, s)| LevelJson {
                    level,
                    dim: s.dim(),
                    basis: s.basis().iter().map(|v| vector_to_json(v)).collect(),
                })
                .collect(),
        }
    }
}

/// Serialized form of a classification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationJson {
    pub case: String,
    pub valid: bool,
    pub matched_row: Option<String>,
    pub rejected_shape: Option<String>,
    pub swapped: bool,
    pub degrees: [u32; 3],
    pub coefficients: BTreeMap<String, RationalJson>,
    pub conditions: BTreeMap<String, bool>,
    pub flags: BTreeMap<String, bool>,
    pub strict: bool,
    pub subcase: Option<String>,
    pub notes: Vec<String>,
}

impl From<&ClassificationReport> for ClassificationJson {
    fn from(r: &ClassificationReport) -> Self {
        ClassificationJson {
            case: r.case_label.to_string(),
            valid: r.is_candidate(),
            matched_row: r.matched_row.map(|c| c.to_string()),
            rejected_shape: r.rejected_shape.clone(),
            swapped: r.swapped,
            degrees: [r.degrees.0, r.degrees.1, r.degrees.2],
            coefficients: r.coefficients.iter().map(|(k, v)| (k.clone(), v.into())).collect(),
            conditions: r.conditions.clone(),
            flags: r.flags.clone(),
            strict: r.strict,
            subcase: r.subcase.map(String::from),
            notes: r.notes.clone(),
        }
    }
}

impl ClassificationJson {
    pub fn to_report(&self) -> Result<ClassificationReport, SchemaError> {
        let label = |s: &str| CaseLabel::parse(s).ok_or_else(|| invalid(format!("unknown case label {s:?}")));
        let subcase = match self.subcase.as_deref() {
            None => None,
            Some(s) if s.chars().count() == 1 => s.chars().next(),
            Some(s) => return Err(invalid(format!("subcase must be one letter, got {s:?}"))),
        };
        Ok(ClassificationReport {
            case_label: label(&self.case)?,
            matched_row: self.matched_row.as_deref().map(label).transpose()?,
            rejected_shape: self.rejected_shape.clone(),
            swapped: self.swapped,
            degrees: (self.degrees[0], self.degrees[1], self.degrees[2]),
            coefficients: self
                .coefficients
                .iter()
                .map(|(k, v)| Ok((k.clone(), v.to_rational()?)))
                .collect::<Result<_, SchemaError>>()?,
            conditions: self.conditions.clone(),
            flags: self.flags.clone(),
            strict: self.strict,
            subcase,
            notes: self.notes.clone(),
        })
    }
}

/// Pretty JSON with a trailing newline, the canonical on-disk form.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String, SchemaError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T, SchemaError> {
    Ok(serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{classify, dominant};
    use crate::fixtures::{fixture, polynomial_fixture, FIXTURE_NAMES, POLYNOMIAL_FIXTURE_NAMES};
    use crate::hodge_core::weight_filtration;

    fn round_trip<T: Serialize + for<'de> Deserialize<'de>>(v: &T) {
        let a = to_canonical_string(v).unwrap();
        let b = to_canonical_string(&from_json_str::<T>(&a).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn big_integers_become_strings() {
        let big = BigInt::from(i64::MAX) * BigInt::from(3);
        let s = serde_json::to_string(&JsonInt(big.clone())).unwrap();
        assert_eq!(s, format!("\"{big}\""));
        assert_eq!(serde_json::from_str::<JsonInt>(&s).unwrap().0, big);
        assert_eq!(serde_json::to_string(&JsonInt((-7).into())).unwrap(), "-7");
    }

    #[test]
    fn datum_round_trip() {
        for name in FIXTURE_NAMES {
            let exp = fixture(name).unwrap();
            let j = DatumJson::from(&exp);
            round_trip(&j);
            assert_eq!(j.to_expansion().unwrap(), exp, "{name}");
        }
    }

    #[test]
    fn filtration_and_report_round_trip() {
        let exp = fixture("sym3-maximal").unwrap();
        let w = weight_filtration(&exp.nilpotents()[0], exp.weight()).unwrap();
        let j = FiltrationJson::from(&w);
        round_trip(&j);
        assert!(j.to_filtration().unwrap().same_spans(&w));
        for name in POLYNOMIAL_FIXTURE_NAMES {
            let p = polynomial_fixture(name).unwrap();
            round_trip(&PolynomialJson::from(&p));
            let r = classify(&dominant(&p).unwrap()).unwrap();
            let j = ClassificationJson::from(&r);
            round_trip(&j);
            assert_eq!(j.to_report().unwrap(), r);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_json_str::<GqJson>(r#"{"re_num":1,"re_den":2,"im_num":0}"#).is_err());
        let z: GqJson = from_json_str(r#"{"re_num":1,"re_den":0,"im_num":0,"im_den":1}"#).unwrap();
        assert!(z.to_gq().is_err());
        let ragged = vec![vec![GqJson::from(&Gq::zero())], vec![]];
        assert!(matrix_from_json(&ragged).is_err());
    }
}
