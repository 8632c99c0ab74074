use hodge_wp::classifier::{classify, dominant, hessian_log_of, psd_large_y, GridSpec, REJECTED_SHAPES};
use hodge_wp::exact::gauss::{rat, rat_to_f64};
use hodge_wp::exact::RealPolynomial2;
use hodge_wp::fixtures::{fixture, polynomial_fixture, FIXTURE_NAMES, POLYNOMIAL_FIXTURE_NAMES};
use hodge_wp::potential::polynomial_part;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `log p(y + e) − log p(y)` with the ratio formed exactly, so nothing cancels in floating point.
fn log_ratio(p: &RealPolynomial2, y: &(BigRational, BigRational), e: (&BigRational, &BigRational)) -> f64 {
    let base = p.eval_exact(&y.0, &y.1);
    let moved = p.eval_exact(&(&y.0 + e.0), &(&y.1 + e.1));
    rat_to_f64(&((moved - &base) / base)).ln_1p()
}

fn extrapolate(g: impl Fn(i64) -> f64) -> f64 {
    let (d1, d2, d3) = (g(1), g(2), g(4));
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

/// Hessian of `−log p` by central differences on exact rational stencils.
fn stencil_hessian(p: &RealPolynomial2, y: &(BigRational, BigRational)) -> [[f64; 2]; 2] {
    let zero = BigRational::from_integer(0.into());
    let base = [&y.0 / BigRational::from_integer(50.into()), &y.1 / BigRational::from_integer(50.into())];
    let second = |i: usize| {
        extrapolate(|k| {
            let h = &base[i] / BigRational::from_integer(k.into());
            let (plus, minus) = (h.clone(), -h.clone());
            let (a, b) = if i == 0 { ((&plus, &zero), (&minus, &zero)) } else { ((&zero, &plus), (&zero, &minus)) };
            -(log_ratio(p, y, a) + log_ratio(p, y, b)) / rat_to_f64(&(&h * &h))
        })
    };
    let mixed = extrapolate(|k| {
        let h1 = &base[0] / BigRational::from_integer(k.into());
        let h2 = &base[1] / BigRational::from_integer(k.into());
        let (m1, m2) = (-h1.clone(), -h2.clone());
        let s = log_ratio(p, y, (&h1, &h2)) - log_ratio(p, y, (&h1, &m2)) - log_ratio(p, y, (&m1, &h2))
            + log_ratio(p, y, (&m1, &m2));
        -s / (4.0 * rat_to_f64(&(&h1 * &h2)))
    });
    let (d11, d22) = (second(0), second(1));
    [[d11, mixed], [mixed, d22]]
}

fn test_polynomials() -> Vec<(String, RealPolynomial2)> {
    let mut out = vec![];
    for name in FIXTURE_NAMES {
        let p = polynomial_part(&fixture(name).unwrap()).unwrap();
        if p.total_degree() > 0 {
            out.push((name.to_string(), p));
        }
    }
    for name in POLYNOMIAL_FIXTURE_NAMES {
        out.push((name.to_string(), polynomial_fixture(name).unwrap()));
    }
    out
}

#[test]
fn symbolic_hessian_matches_exact_stencils() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, p) in test_polynomials() {
        let h = hessian_log_of(&p);
        for _ in 0..20 {
            let y = (rat(rng.gen_range(10..=1000), rng.gen_range(1..=4)), rat(rng.gen_range(10..=1000), rng.gen_range(1..=4)));
            let fd = stencil_hessian(&p, &y);
            let m = h.eval_f64(rat_to_f64(&y.0), rat_to_f64(&y.1));
            let num: f64 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| (m[i][j] - fd[i][j]).powi(2)).sum();
            let den: f64 = m.iter().flatten().map(|v| v * v).sum();
            let rel = (num / den).sqrt();
            assert!(rel < 1e-8, "{name} at {y:?}: {rel:e}");
        }
    }
}

#[test]
fn dominant_parts_of_two_variable_fixtures_are_in_the_table() {
    for name in FIXTURE_NAMES {
        let exp = fixture(name).unwrap();
        let p = polynomial_part(&exp).unwrap();
        if exp.k() != 2 || p.deg_y1() == 0 || p.deg_y2() == 0 {
            continue;
        }
        let r = classify(&dominant(&p).unwrap()).unwrap();
        assert!(r.is_candidate(), "{name}: {p} -> {:?}", r.case_label);
    }
}

#[test]
fn every_rejected_shape_fails_the_semidefinite_test() {
    for (name, support) in REJECTED_SHAPES {
        let p = RealPolynomial2::from_int_terms(&support.iter().map(|&e| (e, 1)).collect::<Vec<_>>());
        let d = dominant(&p).unwrap();
        assert!(!psd_large_y(&d, GridSpec::default()).unwrap(), "{name}");
    }
}
