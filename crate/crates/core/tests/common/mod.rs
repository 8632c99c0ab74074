#![allow(dead_code)]

use hodge_wp::exact::gauss::{gq, Gq};
use hodge_wp::exact::Mat;
use hodge_wp::hodge_core::IncreasingFiltration;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Nilpotent matrix with known Jordan block sizes, hidden by an exact change of basis.
pub struct GeneratedNilpotent {
    pub matrix: Mat,
    pub blocks: Vec<usize>,
    pub weight: u32,
}

impl GeneratedNilpotent {
    /// Graded ranks predicted by the Jordan type: a block of size `m` contributes one
    /// dimension at each of `n - m + 1, n - m + 3, …, n + m - 1`.
    pub fn expected_grades(&self) -> Vec<(i64, usize)> {
        let n = self.weight as i64;
        let mut counts = std::collections::BTreeMap::new();
        for &m in &self.blocks {
            for j in 0..m as i64 {
                *counts.entry(n - (m as i64 - 1) + 2 * j).or_insert(0usize) += 1;
            }
        }
        counts.into_iter().collect()
    }
}

fn jordan(blocks: &[usize]) -> Mat {
    let d: usize = blocks.iter().sum();
    let mut m = Mat::zeros(d, d);
    let mut start = 0;
    for &b in blocks {
        for i in start..start + b - 1 {
            m[(i + 1, i)] = gq(1, 0);
        }
        start += b;
    }
    m
}

fn small_gq(rng: &mut ChaCha8Rng) -> Gq {
    loop {
        let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-1..=1));
        if a != 0 || b != 0 {
            return gq(a, b);
        }
    }
}

/// Random partition of a random dimension `1..=max_dim`, conjugated by elementary matrices.
pub fn random_nilpotent(rng: &mut ChaCha8Rng, max_dim: usize) -> GeneratedNilpotent {
    let d = rng.gen_range(1..=max_dim);
    let mut blocks = vec![];
    let mut left = d;
    while left > 0 {
        let b = rng.gen_range(1..=left.min(5));
        blocks.push(b);
        left -= b;
    }
    let mut m = jordan(&blocks);
    for _ in 0..2 * d {
        if d < 2 {
            break;
        }
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let c = small_gq(rng);
        let mut e = Mat::identity(d);
        e[(i, j)] = c.clone();
        let mut e_inv = Mat::identity(d);
        e_inv[(i, j)] = -c;
        m = e.mul(&m).mul(&e_inv);
    }
    let top = *blocks.iter().max().unwrap() as u32 - 1;
    let weight = top + rng.gen_range(0..=2);
    GeneratedNilpotent { matrix: m, blocks, weight }
}

/// `N W_l ⊆ W_{l-2}` for every `l`, checked directly on spans.
pub fn shifts_down_by_two(n: &Mat, w: &IncreasingFiltration) -> bool {
    (w.low() - 2..=w.high() + 2).all(|l| w.level(l).image(n).is_subspace_of(&w.level(l - 2)))
}

/// Rank of the map `Gr_{n+s} → Gr_{n-s}` induced by `N^s`.
pub fn induced_rank(n: &Mat, w: &IncreasingFiltration, center: i64, s: i64) -> usize {
    let ns = n.pow(s as u32);
    let below = w.level(center - s - 1);
    w.level(center + s).image(&ns).sum(&below).dim() - below.dim()
}

/// Every `N^s: Gr_{n+s} → Gr_{n-s}` is an isomorphism.
pub fn hard_lefschetz(n: &Mat, w: &IncreasingFiltration, center: i64) -> bool {
    let span = (w.high() - center).max(center - w.low()).max(0) + 1;
    (0..=span).all(|s| {
        let (up, down) = (w.graded_rank(center + s), w.graded_rank(center - s));
        up == down && induced_rank(n, w, center, s) == up
    })
}
