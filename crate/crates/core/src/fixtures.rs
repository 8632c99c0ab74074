//! Named limiting data and polynomial fixtures.

use num_traits::Zero;
use thiserror::Error;

use crate::exact::gauss::{gq, rat, Gq};
use crate::exact::{Mat, RealPolynomial2};
use crate::hodge_core::{build_block, direct_sum, sym_power, tensor, Block, BlockKind, NilpotentOperator};
use crate::limiting_data::{ExpansionTerm, LimitingExpansion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {name} failed to build: {reason}")]
    Build { name: String, reason: String },
}

pub const FIXTURE_NAMES: [&str; 10] = [
    "weight1",
    "sym3-maximal",
    "finite-1",
    "tensor-11",
    "corollary-12",
    "type-31",
    "sym3-diagonal",
    "p11222-qualitative",
    "p11222-conifold",
    "p11222-type31",
];

pub const POLYNOMIAL_FIXTURE_NAMES: [&str; 9] =
    ["case-i", "case-ii", "case-iii", "case-iv", "case-v", "case-vi", "case-vii", "case-viii", "case-ix"];

fn u() -> Vec<Gq> {
    vec![gq(1, 0), gq(0, 1)]
}

fn e(n: usize, i: usize) -> Vec<Gq> {
    let mut v = vec![Gq::zero(); n];
    v[i] = gq(1, 0);
    v
}

fn half() -> Gq {
    Gq::new(rat(1, 2), rat(0, 1))
}

fn quarter() -> Gq {
    Gq::new(rat(1, 4), rat(0, 1))
}

fn scale(s: &Gq, v: &[Gq]) -> Vec<Gq> {
    v.iter().map(|x| s * x).collect()
}

fn kron(vs: &[&[Gq]]) -> Vec<Gq> {
    vs.iter().fold(vec![gq(1, 0)], |acc, v| acc.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect())
}

fn concat(parts: &[&[Gq]]) -> Vec<Gq> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn term(exponent: &[u32], vector: Vec<Gq>) -> ExpansionTerm {
    ExpansionTerm { exponent: exponent.to_vec(), vector }
}

fn weight1() -> Block {
    build_block(BlockKind::Weight1String).expect("weight-one string")
}

fn sym3() -> Block {
    sym_power(&weight1(), 3).expect("Sym^3")
}

/// `u^3` in the symmetrized basis `s_000, s_001, s_011, s_111`.
fn u_cubed() -> Vec<Gq> {
    vec![gq(1, 0), gq(0, 1), gq(-1, 0), gq(0, -1)]
}

/// `H ⊗ T` with `T` trivial of weight 2, so that it sits in weight 3.
fn twisted_string() -> Block {
    tensor(&weight1(), &build_block(BlockKind::Trivial { dim: 1, weight: 2 }).unwrap()).expect("H ⊗ T")
}

fn nil(m: Mat) -> NilpotentOperator {
    NilpotentOperator::new(m).expect("nilpotent")
}

fn build(
    name: &str,
    block_space: crate::hodge_core::PolarizedSpace,
    nilpotents: Vec<NilpotentOperator>,
    a0: Vec<Gq>,
    terms: Vec<ExpansionTerm>,
) -> Result<LimitingExpansion, FixtureError> {
    LimitingExpansion::new(block_space, nilpotents, a0, terms)
        .map_err(|e| FixtureError::Build { name: name.to_string(), reason: e.to_string() })
}

fn triple(name: &str, n1: Mat, n2: Mat) -> Result<LimitingExpansion, FixtureError> {
    let h = weight1();
    let cube = tensor(&tensor(&h, &h).unwrap(), &h).unwrap();
    let uu = u();
    let e2 = e(2, 1);
    let terms = vec![
        term(&[1, 0], scale(&half(), &kron(&[&e2, &uu, &uu]))),
        term(&[0, 1], scale(&half(), &kron(&[&uu, &e2, &uu]))),
        term(&[1, 1], scale(&quarter(), &kron(&[&e2, &e2, &uu]))),
    ];
    build(name, cube.space, vec![nil(n1), nil(n2)], kron(&[&uu, &uu, &uu]), terms)
}

/// `Sym^3 H ⊕ (H ⊗ T)` with `N1` on the first summand and the rank-one `N2` on the second.
fn mixed_pair(name: &str) -> Result<LimitingExpansion, FixtureError> {
    let s = sym3();
    let ht = twisted_string();
    let v = direct_sum(&s, &ht).unwrap();
    let n1 = s.nilpotent.matrix().direct_sum(&Mat::zeros(2, 2));
    let n2 = Mat::zeros(4, 4).direct_sum(ht.nilpotent.matrix());
    let zero2 = vec![Gq::zero(); 2];
    let a0 = concat(&[&u_cubed(), &zero2]);
    // Terms in `t2` stay in `ker N2` since the second divisor is finite.
    let terms = vec![
        term(&[1, 0], concat(&[&scale(&half(), &e(4, 3)), &zero2])),
        term(&[0, 1], concat(&[&scale(&half(), &e(4, 2)), &zero2])),
        term(&[1, 1], concat(&[&scale(&quarter(), &e(4, 3)), &zero2])),
    ];
    build(name, v.space, vec![nil(n1), nil(n2)], a0, terms)
}

/// `Sym^3 H ⊕ (H ⊗ T) ⊕ (H ⊗ T)` with each nilpotent acting on one of the rank-one summands.
fn conifold_pair(name: &str) -> Result<LimitingExpansion, FixtureError> {
    let s = sym3();
    let ht = twisted_string();
    let v = direct_sum(&direct_sum(&s, &ht).unwrap(), &ht).unwrap();
    let n = ht.nilpotent.matrix();
    let n1 = Mat::zeros(4, 4).direct_sum(n).direct_sum(&Mat::zeros(2, 2));
    let n2 = Mat::zeros(6, 6).direct_sum(n);
    let zero2 = vec![Gq::zero(); 2];
    let a0 = concat(&[&u_cubed(), &zero2, &zero2]);
    let t = |i: usize| concat(&[&scale(&half(), &e(4, i)), &zero2, &zero2]);
    let terms = vec![term(&[1, 0], t(2)), term(&[0, 1], t(1))];
    build(name, v.space, vec![nil(n1), nil(n2)], a0, terms)
}

/// Builds a named limiting datum.
pub fn fixture(name: &str) -> Result<LimitingExpansion, FixtureError> {
    let n = weight1().nilpotent.matrix().clone();
    let i2 = Mat::identity(2);
    match name {
        "weight1" => {
            let h = weight1();
            let t = vec![term(&[1], vec![Gq::zero(), Gq::new(rat(0, 1), rat(1, 2))])];
            build(name, h.space, vec![h.nilpotent], u(), t)
        }
        "sym3-maximal" => {
            let s = sym3();
            build(name, s.space, vec![s.nilpotent], u_cubed(), vec![term(&[1], scale(&half(), &e(4, 3)))])
        }
        "finite-1" => {
            let s = sym3();
            let ht = twisted_string();
            let v = direct_sum(&s, &ht).unwrap();
            let n1 = Mat::zeros(4, 4).direct_sum(ht.nilpotent.matrix());
            let a0 = concat(&[&u_cubed(), &[Gq::zero(), Gq::zero()]]);
            let t = vec![term(&[1], concat(&[&scale(&half(), &e(4, 2)), &[Gq::zero(), Gq::zero()]]))];
            build(name, v.space, vec![nil(n1)], a0, t)
        }
        "tensor-11" => {
            let h = weight1();
            let hh = tensor(&h, &h).unwrap();
            let (uu, e1, e2) = (u(), e(2, 0), e(2, 1));
            let terms = vec![
                term(&[1, 0], scale(&half(), &kron(&[&e2, &e1]))),
                term(&[0, 1], scale(&half(), &kron(&[&e1, &e2]))),
                term(&[1, 1], scale(&quarter(), &kron(&[&e2, &e2]))),
            ];
            build(name, hh.space, vec![nil(n.kron(&i2)), nil(i2.kron(&n))], kron(&[&uu, &uu]), terms)
        }
        "corollary-12" => {
            let n1 = n.kron(&i2).kron(&i2);
            let n2 = i2.kron(&n).kron(&i2).add(&i2.kron(&i2).kron(&n));
            triple(name, n1, n2)
        }
        "type-31" | "p11222-type31" => {
            let n2 = n.kron(&i2).kron(&i2);
            let n1 = n2.add(&i2.kron(&n).kron(&i2)).add(&i2.kron(&i2).kron(&n));
            triple(name, n1, n2)
        }
        "sym3-diagonal" => {
            let s = sym3();
            let hv = scale(&half(), &e(4, 3));
            let terms = vec![term(&[1, 0], hv.clone()), term(&[0, 1], hv)];
            build(name, s.space, vec![s.nilpotent.clone(), s.nilpotent], u_cubed(), terms)
        }
        "p11222-qualitative" => mixed_pair(name),
        "p11222-conifold" => conifold_pair(name),
        _ => Err(FixtureError::UnknownFixture(name.to_string())),
    }
}

/// A dominant polynomial satisfying the conditions of the named table row.
pub fn polynomial_fixture(name: &str) -> Result<RealPolynomial2, FixtureError> {
    let terms: &[((u32, u32), i64)] = match name {
        "case-i" => &[((0, 1), 1), ((1, 0), 1)],
        "case-ii" => &[((0, 1), 1), ((1, 1), 1), ((1, 0), 1)],
        "case-iii" => &[((0, 2), 1), ((1, 1), 1), ((1, 0), 1)],
        "case-iv" => &[((0, 2), 1), ((1, 2), 1), ((1, 0), 1)],
        "case-v" => &[((0, 3), 1), ((1, 2), 1), ((1, 0), 1)],
        "case-vi" => &[((0, 2), 1), ((1, 1), 3), ((2, 0), 1)],
        "case-vii" => &[((0, 2), 1), ((1, 2), 1), ((2, 1), 1), ((2, 0), 1)],
        "case-viii" => &[((0, 3), 1), ((1, 2), 3), ((2, 1), 1), ((2, 0), 1)],
        "case-ix" => &[((0, 3), 1), ((1, 2), 4), ((2, 1), 4), ((3, 0), 1)],
        _ => return Err(FixtureError::UnknownFixture(name.to_string())),
    };
    Ok(RealPolynomial2::from_int_terms(terms))
}
