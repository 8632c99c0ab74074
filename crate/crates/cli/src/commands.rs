use std::fmt::Write as _;

use hodge_wp::classifier::{classify, dominant, min_eigenvalue_on_k, psd_large_y, GridSpec};
use hodge_wp::exact::gauss::rat_int;
use hodge_wp::exact::RealPolynomial2;
use hodge_wp::hodge_core::{check_weight_properties, cone_invariance, weight_filtration};
use hodge_wp::limiting_data::{threefold_constraint, DivisorTag, LimitingExpansion};
use hodge_wp::metric_distance::{
    angular_slice_length, angular_slice_probes, corollary_strict_cases, probe_curve, probe_family, CurveSpec,
    DivergenceVerdict, MetricField, MetricSource, PolynomialMetric, PotentialMetric, ProbeResult, QuadratureConfig,
};
use hodge_wp::potential::{one_variable_degree_check, polynomial_part, DegreeReport, PotentialEvaluator};
use hodge_wp::schema::{ClassificationJson, DatumJson, FiltrationJson, PolynomialJson};
use num_complex::Complex64;
use serde::Serialize;

use crate::io::{all_fixture_names, json, load_curve, load_named, load_source, series_csv, write_artifact, CliError, Source};
use crate::{Command, Expect, Options};

pub enum Outcome {
    Positive,
    Negative(String),
}

pub fn run(command: Command, opts: &Options) -> Result<Outcome, CliError> {
    match command {
        Command::Filtration => filtration(opts),
        Command::ClassifyDivisor => classify_divisor(opts),
        Command::Expand => expand(opts),
        Command::ClassifyPotential => classify_potential(opts),
        Command::Metric => metric(opts),
        Command::Distance => distance(opts),
        Command::Corollary => corollary(opts),
        Command::Demo => demo(opts),
    }
}

fn quadrature(opts: &Options) -> QuadratureConfig {
    QuadratureConfig { checkpoints: opts.checkpoints, rel_tol: opts.tolerance, ..Default::default() }
}

fn grid(opts: &Options) -> GridSpec {
    GridSpec { lo: opts.grid_lo, hi: opts.grid_hi, points: opts.grid_points }
}

fn metric_for(source: &Source) -> Box<dyn MetricField> {
    match source {
        Source::Datum { exp, .. } => Box::new(PotentialMetric::new(PotentialEvaluator::new(exp))),
        Source::Polynomial { poly, .. } => {
            Box::new(PolynomialMetric::from_poly(poly, if poly.deg_y2() == 0 { 1 } else { 2 }))
        }
    }
}

fn polynomial_of(source: &Source) -> Result<RealPolynomial2, CliError> {
    match source {
        Source::Datum { exp, .. } => polynomial_part(exp).map_err(CliError::math),
        Source::Polynomial { poly, .. } => Ok(poly.clone()),
    }
}

#[derive(Serialize)]
struct DivisorFiltration {
    divisor: usize,
    index: u32,
    axioms_hold: bool,
    filtration: FiltrationJson,
}

#[derive(Serialize)]
struct FiltrationOutput {
    source: String,
    weight: u32,
    filtrations: Vec<DivisorFiltration>,
    /// `W(a N1 + b N2)` agrees across the sampled cone points.
    cone_invariant: Option<bool>,
}

const CONE_SAMPLES: [(i64, i64); 6] = [(1, 1), (1, 2), (2, 1), (1, 5), (5, 1), (3, 7)];

fn filtration(opts: &Options) -> Result<Outcome, CliError> {
    let source = load_source(opts)?;
    let exp = source.datum()?;
    let n = exp.weight();
    let mut filtrations = vec![];
    for (j, op) in exp.nilpotents().iter().enumerate() {
        let w = weight_filtration(op, n).map_err(CliError::math)?;
        filtrations.push(DivisorFiltration {
            divisor: j + 1,
            index: op.index(),
            axioms_hold: check_weight_properties(op.matrix(), &w, n as i64),
            filtration: FiltrationJson::from(&w),
        });
    }
    let cone_invariant = match exp.nilpotents() {
        [a, b] => {
            let samples: Vec<_> = CONE_SAMPLES.iter().map(|&(x, y)| (rat_int(x), rat_int(y))).collect();
            Some(cone_invariance(a, b, n, &samples).map_err(CliError::math)?)
        }
        _ => None,
    };
    let out = FiltrationOutput { source: source.name().into(), weight: n, filtrations, cone_invariant };
    write_artifact(opts, &json(&out)?)?;
    Ok(Outcome::Positive)
}

#[derive(Serialize)]
struct DivisorEntry {
    divisor: usize,
    index: u32,
    tag: DivisorTag,
    degree: u32,
}

#[derive(Serialize)]
struct DivisorOutput {
    source: String,
    divisors: Vec<DivisorEntry>,
    /// Only defined for weight 3.
    threefold_constraint: Option<bool>,
}

fn classify_divisor(opts: &Options) -> Result<Outcome, CliError> {
    let source = load_source(opts)?;
    let exp = source.datum()?;
    let divisors = exp
        .nilpotents()
        .iter()
        .zip(exp.divisor_classes())
        .enumerate()
        .map(|(j, (op, c))| DivisorEntry { divisor: j + 1, index: op.index(), tag: c.tag, degree: c.degree })
        .collect();
    let threefold = if exp.weight() == 3 { Some(threefold_constraint(exp).map_err(CliError::math)?) } else { None };
    let out = DivisorOutput { source: source.name().into(), divisors, threefold_constraint: threefold };
    write_artifact(opts, &json(&out)?)?;
    Ok(Outcome::Positive)
}

#[derive(Serialize)]
struct ExpandOutput {
    source: String,
    datum: DatumJson,
    truncation_order: u32,
    degrees: Vec<u32>,
    polynomial: PolynomialJson,
    polynomial_text: String,
    dominant: Option<PolynomialJson>,
    degree_check: Option<DegreeReport>,
}

fn expand(opts: &Options) -> Result<Outcome, CliError> {
    let source = load_source(opts)?;
    let exp = source.datum()?;
    let p = polynomial_part(exp).map_err(CliError::math)?;
    let dom = if p.total_degree() > 0 { Some(PolynomialJson::from(&dominant(&p).map_err(CliError::math)?.poly)) } else { None };
    let degree_check = if exp.k() == 1 { Some(one_variable_degree_check(exp).map_err(CliError::math)?) } else { None };
    let out = ExpandOutput {
        source: source.name().into(),
        datum: DatumJson::from(exp),
        truncation_order: exp.truncation_order(),
        degrees: exp.degrees(),
        polynomial: PolynomialJson::from(&p),
        polynomial_text: p.to_string(),
        dominant: dom,
        degree_check,
    };
    write_artifact(opts, &json(&out)?)?;
    Ok(Outcome::Positive)
}

#[derive(Serialize)]
struct PotentialOutput {
    source: String,
    polynomial: PolynomialJson,
    dominant: PolynomialJson,
    report: ClassificationJson,
    /// Exact semidefiniteness of `M(p)` on the grid; absent when `p` is not positive there.
    psd_large_y: Option<bool>,
    /// Smallest eigenvalue of `R² M(p)` on the unit quarter circle, for homogeneous `p`.
    min_eigenvalue_on_k: Option<f64>,
}

fn classify_potential(opts: &Options) -> Result<Outcome, CliError> {
    let source = load_source(opts)?;
    let p = polynomial_of(&source)?;
    let dom = dominant(&p).map_err(CliError::math)?;
    let report = classify(&dom).map_err(CliError::math)?;
    let psd = psd_large_y(&dom, grid(opts)).ok();
    let min_eig = if dom.poly.is_homogeneous() { min_eigenvalue_on_k(&dom, 10_001).ok().map(|m| m.value) } else { None };
    let out = PotentialOutput {
        source: source.name().into(),
        polynomial: PolynomialJson::from(&p),
        dominant: PolynomialJson::from(&dom.poly),
        report: ClassificationJson::from(&report),
        psd_large_y: psd,
        min_eigenvalue_on_k: min_eig,
    };
    write_artifact(opts, &json(&out)?)?;
    if report.is_candidate() {
        Ok(Outcome::Positive)
    } else {
        Ok(Outcome::Negative(format!("{} is not a candidate potential", source.name())))
    }
}

#[derive(Serialize)]
struct TensorSample {
    t: f64,
    /// `[re, im]` per coordinate.
    point: Vec<[f64; 2]>,
    /// Row-major `[re, im]` entries.
    tensor: Vec<Vec<[f64; 2]>>,
    hermitian_defect: f64,
    min_eigenvalue: f64,
    /// `ż^H H ż`.
    speed_sq: f64,
}

#[derive(Serialize)]
struct MetricOutput {
    source: String,
    metric_source: MetricSource,
    curve: CurveSpec,
    samples: Vec<TensorSample>,
}

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn metric(opts: &Options) -> Result<Outcome, CliError> {
    let source = load_source(opts)?;
    let field = metric_for(&source);
    let curve = load_curve(opts, field.dim())?;
    let n = opts.checkpoints.max(2);
    let mut samples = vec![];
    for k in 0..n {
        let t = curve.t0 * (curve.t_end / curve.t0).powf(k as f64 / (n - 1) as f64);
        let z = curve.point(t);
        let s = field.sample(&z).map_err(CliError::math)?;
        let speed_sq = field.norm_sq(&z, &curve.velocity(t)).map_err(CliError::math)?;
        samples.push(TensorSample {
            t,
            point: z.iter().map(pair).collect(),
            tensor: s.tensor.row_iter().map(|r| r.iter().map(pair).collect()).collect(),
            hermitian_defect: s.hermitian_defect(),
            min_eigenvalue: s.min_eigenvalue(),
            speed_sq,
        });
    }
    let out = MetricOutput { source: source.name().into(), metric_source: field.source(), curve, samples };
    write_artifact(opts, &json(&out)?)?;
    Ok(Outcome::Positive)
}

fn check_expectation(v: &DivergenceVerdict, expect: Option<Expect>, what: &str) -> Outcome {
    match expect {
        Some(Expect::Diverge) if !v.diverges_log => Outcome::Negative(format!("{what} is not certified divergent")),
        Some(Expect::Bounded) if !v.bounded => Outcome::Negative(format!("{what} is not certified bounded")),
        _ => Outcome::Positive,
    }
}

#[derive(Serialize)]
struct DistanceVerdict {
    source: String,
    curve: CurveSpec,
    converged: bool,
    final_length: f64,
    verdict: DivergenceVerdict,
}

fn distance(opts: &Options) -> Result<Outcome, CliError> {
    let source = load_source(opts)?;
    let field = metric_for(&source);
    let curve = load_curve(opts, field.dim())?;
    let r = probe_curve(field.as_ref(), &curve, &quadrature(opts)).map_err(CliError::math)?;
    write_artifact(opts, &series_csv(&r.series)?)?;
    let v = DistanceVerdict {
        source: source.name().into(),
        curve: curve.clone(),
        converged: r.series.converged,
        final_length: r.series.final_length(),
        verdict: r.verdict,
    };
    let text = json(&v)?;
    match &opts.verdict {
        Some(p) => std::fs::write(p, text)?,
        None => eprint!("{text}"),
    }
    Ok(check_expectation(&r.verdict, opts.expect, &curve.id))
}

#[derive(Serialize)]
struct ProbeSummary {
    curve_id: String,
    converged: bool,
    final_length: f64,
    verdict: DivergenceVerdict,
}

impl From<&ProbeResult> for ProbeSummary {
    fn from(p: &ProbeResult) -> Self {
        ProbeSummary {
            curve_id: p.series.curve_id.clone(),
            converged: p.series.converged,
            final_length: p.series.final_length(),
            verdict: p.verdict,
        }
    }
}

#[derive(Serialize)]
struct CorollaryOutput {
    source: String,
    degrees: Option<Vec<u32>>,
    strict_type: Option<bool>,
    probes: Vec<ProbeSummary>,
    all_diverge: bool,
    all_bounded: bool,
}

fn corollary(opts: &Options) -> Result<Outcome, CliError> {
    let source = load_source(opts)?;
    let cfg = quadrature(opts);
    let out = match &source {
        Source::Datum { exp, .. } => {
            let r = corollary_strict_cases(exp, opts.t0, opts.t_end, &cfg).map_err(CliError::math)?;
            CorollaryOutput {
                source: source.name().into(),
                degrees: Some(r.degrees.clone()),
                strict_type: Some(r.strict_type),
                probes: r.probes.iter().map(ProbeSummary::from).collect(),
                all_diverge: r.all_diverge,
                all_bounded: r.all_bounded,
            }
        }
        Source::Polynomial { poly, .. } => {
            let field = PolynomialMetric::from_poly(poly, 2);
            let probes = probe_family(opts.t0, opts.t_end)
                .and_then(|cs| cs.iter().map(|c| probe_curve(&field, c, &cfg)).collect::<Result<Vec<_>, _>>())
                .map_err(CliError::math)?;
            CorollaryOutput {
                source: source.name().into(),
                degrees: None,
                strict_type: None,
                all_diverge: probes.iter().all(|p| p.verdict.diverges_log),
                all_bounded: probes.iter().all(|p| p.verdict.bounded),
                probes: probes.iter().map(ProbeSummary::from).collect(),
            }
        }
    };
    write_artifact(opts, &json(&out)?)?;
    let negative = match opts.expect.unwrap_or(Expect::Diverge) {
        Expect::Diverge => (!out.all_diverge).then_some("not every probe is certified divergent"),
        Expect::Bounded => (!out.all_bounded).then_some("not every probe is certified bounded"),
    };
    Ok(negative.map_or(Outcome::Positive, |w| Outcome::Negative(w.into())))
}

fn verdict_text(v: &DivergenceVerdict) -> String {
    if v.diverges_log {
        format!("diverges (c = {:.4})", v.c)
    } else if v.bounded {
        format!("bounded (L <= {:.4e})", v.sup)
    } else {
        "undetermined".into()
    }
}

fn divisors_text(exp: &LimitingExpansion) -> String {
    exp.divisor_classes()
        .iter()
        .map(|c| match c.tag {
            DivisorTag::Finite => "F".to_string(),
            DivisorTag::Infinite => format!("I{}", c.degree),
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// The table only covers polynomials in both variables.
fn case_text(p: &RealPolynomial2) -> String {
    if p.deg_y1() == 0 || p.deg_y2() == 0 {
        return "-".into();
    }
    match dominant(p).and_then(|d| classify(&d)) {
        Ok(r) => r.case_label.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

struct DemoRow {
    name: String,
    divisors: String,
    polynomial: String,
    case: String,
    curve: String,
    verdict: String,
}

fn demo_row(name: &str, opts: &Options) -> Result<DemoRow, CliError> {
    let source = load_named(name)?;
    let cfg = quadrature(opts);
    let p = polynomial_of(&source)?;
    let (divisors, probe) = match &source {
        Source::Datum { exp, .. } => {
            let tags: Vec<DivisorTag> = exp.divisor_classes().iter().map(|c| c.tag).collect();
            let probe = if tags == [DivisorTag::Infinite, DivisorTag::Finite] {
                let slice = angular_slice_probes(opts.t0, opts.t_end).map_err(CliError::math)?.remove(0);
                angular_slice_length(exp, &slice, &cfg).map_err(CliError::math)?.probe
            } else {
                let field = PotentialMetric::new(PotentialEvaluator::new(exp));
                let curve = CurveSpec::diagonal(exp.k(), opts.t0, opts.t_end).map_err(CliError::math)?;
                probe_curve(&field, &curve, &cfg).map_err(CliError::math)?
            };
            (divisors_text(exp), probe)
        }
        Source::Polynomial { .. } => {
            let field = metric_for(&source);
            let curve = CurveSpec::diagonal(field.dim(), opts.t0, opts.t_end).map_err(CliError::math)?;
            ("-".to_string(), probe_curve(field.as_ref(), &curve, &cfg).map_err(CliError::math)?)
        }
    };
    Ok(DemoRow {
        name: name.into(),
        divisors,
        polynomial: p.to_string(),
        case: case_text(&p),
        curve: probe.series.curve_id.clone(),
        verdict: verdict_text(&probe.verdict),
    })
}

fn demo(opts: &Options) -> Result<Outcome, CliError> {
    let rows: Vec<DemoRow> = all_fixture_names().into_iter().map(|n| demo_row(n, opts)).collect::<Result<_, _>>()?;
    let header = ["fixture", "divisors", "polynomial part", "case", "curve", "distance verdict"];
    let cells: Vec<[&str; 6]> =
        rows.iter().map(|r| [&*r.name, &*r.divisors, &*r.polynomial, &*r.case, &*r.curve, &*r.verdict]).collect();
    let widths: Vec<usize> =
        (0..6).map(|i| cells.iter().map(|c| c[i].chars().count()).chain([header[i].len()]).max().unwrap()).collect();
    let mut out = String::new();
    let line = |out: &mut String, c: &[&str]| {
        let padded: Vec<String> = c.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(&mut out, &header);
    line(&mut out, &widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect::<Vec<_>>());
    for c in &cells {
        line(&mut out, c);
    }
    write_artifact(opts, &out)?;
    Ok(Outcome::Positive)
}
