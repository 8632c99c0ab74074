use std::fs;
use std::io::Write;
use std::path::Path;

use hodge_wp::exact::RealPolynomial2;
use hodge_wp::fixtures::{fixture, polynomial_fixture, FixtureError, FIXTURE_NAMES, POLYNOMIAL_FIXTURE_NAMES};
use hodge_wp::limiting_data::LimitingExpansion;
use hodge_wp::metric_distance::{angular_slice_probes, probe_family, CurveSpec, LengthSeries};
use hodge_wp::schema::{from_json_str, to_canonical_string, DatumJson, PolynomialJson, SchemaError};
use serde::Serialize;
use thiserror::Error;

use crate::Options;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or ill-typed input.
    #[error("{0}")]
    Schema(String),
    /// Input parsed but a computation rejected it.
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Math(_) => 3,
        }
    }

    pub fn math(e: impl std::fmt::Display) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<SchemaError> for CliError {
    fn from(e: SchemaError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<FixtureError> for CliError {
    fn from(e: FixtureError) -> Self {
        match e {
            FixtureError::UnknownFixture(_) => CliError::Schema(e.to_string()),
            FixtureError::Build { .. } => CliError::Math(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Schema(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Schema(format!("csv: {e}"))
    }
}

pub enum Source {
    Datum { name: String, exp: LimitingExpansion },
    Polynomial { name: String, poly: RealPolynomial2 },
}

impl Source {
    pub fn name(&self) -> &str {
        match self {
            Source::Datum { name, .. } | Source::Polynomial { name, .. } => name,
        }
    }

    pub fn datum(&self) -> Result<&LimitingExpansion, CliError> {
        match self {
            Source::Datum { exp, .. } => Ok(exp),
            Source::Polynomial { name, .. } => Err(CliError::Schema(format!("{name}: this command needs a datum, not a polynomial"))),
        }
    }
}

pub fn load_named(name: &str) -> Result<Source, CliError> {
    if POLYNOMIAL_FIXTURE_NAMES.contains(&name) {
        Ok(Source::Polynomial { name: name.to_string(), poly: polynomial_fixture(name)? })
    } else {
        Ok(Source::Datum { name: name.to_string(), exp: fixture(name)? })
    }
}

pub fn load_source(opts: &Options) -> Result<Source, CliError> {
    match (&opts.fixture, &opts.input) {
        (Some(_), Some(_)) => Err(CliError::Schema("give either --fixture or --input, not both".into())),
        (None, None) => Err(CliError::Schema("missing --fixture or --input".into())),
        (Some(name), None) => load_named(name),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(SchemaError::from)?;
            let name = path.display().to_string();
            if value.get("monomials").is_some() {
                let p: PolynomialJson = from_json_str(&text)?;
                Ok(Source::Polynomial { name, poly: p.to_polynomial()? })
            } else {
                let d: DatumJson = from_json_str(&text)?;
                Ok(Source::Datum { name, exp: d.to_expansion()? })
            }
        }
    }
}

/// All builtin names, datum fixtures first.
pub fn all_fixture_names() -> Vec<&'static str> {
    FIXTURE_NAMES.iter().chain(POLYNOMIAL_FIXTURE_NAMES.iter()).copied().collect()
}

/// A named probe (with `--t0`/`--T`) or a JSON curve file (with its own range).
pub fn load_curve(opts: &Options, dim: usize) -> Result<CurveSpec, CliError> {
    let name = opts.curve.as_deref().unwrap_or("diagonal");
    if name == "diagonal" {
        return CurveSpec::diagonal(dim, opts.t0, opts.t_end).map_err(CliError::math);
    }
    if dim == 2 {
        let named = probe_family(opts.t0, opts.t_end)
            .and_then(|mut v| {
                v.extend(angular_slice_probes(opts.t0, opts.t_end)?);
                Ok(v)
            })
            .map_err(CliError::math)?;
        if let Some(c) = named.into_iter().find(|c| c.id == name) {
            return Ok(c);
        }
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(CliError::Schema(format!("unknown curve {name:?} for dimension {dim}")));
    }
    let curve: CurveSpec = from_json_str(&fs::read_to_string(path)?)?;
    curve.validate().map_err(|e| CliError::Schema(e.to_string()))?;
    Ok(curve)
}

pub fn write_artifact(opts: &Options, text: &str) -> Result<(), CliError> {
    match &opts.output {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    Ok(to_canonical_string(v)?)
}

/// `curve_id,T,L,integrand_at_T` with 17 significant digits.
pub fn series_csv(series: &LengthSeries) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(["curve_id", "T", "L", "integrand_at_T"])?;
    for c in &series.checkpoints {
        w.write_record([
            series.curve_id.clone(),
            format!("{:.16e}", c.t),
            format!("{:.16e}", c.length),
            format!("{:.16e}", c.integrand),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Schema(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Schema(e.to_string()))
}
