use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::exact::gauss::gq_real;
use crate::exact::matrix::coordinates;
use crate::exact::{Gq, Mat, Subspace};

use super::{HodgeError, IncreasingFiltration, NilpotentOperator};

/// Monodromy weight filtration of `N` centered at `n`.
///
/// Built by the kernel/image recursion: `W_{n+k} = V`, `W_{n+k-1} = ker N^k`,
/// `W_{n-k} = im N^k`, then recursion on `ker N^k / im N^k`.
pub fn weight_filtration(n_op: &NilpotentOperator, n: u32) -> Result<IncreasingFiltration, HodgeError> {
    let k = n_op.index();
    if k > n {
        return Err(HodgeError::IndexExceedsWeight { index: k, weight: n });
    }
    let levels = recurse(n_op.matrix(), n as i64);
    IncreasingFiltration::new(n_op.dim(), levels)
}

fn recurse(n: &Mat, center: i64) -> BTreeMap<i64, Subspace> {
    let m = n.rows();
    let mut out = BTreeMap::new();
    if m == 0 {
        return out;
    }
    let k = n.nilpotency_index().expect("nilpotent input").saturating_sub(1) as i64;
    if k == 0 {
        out.insert(center, Subspace::full(m));
        return out;
    }
    let nk = n.pow(k as u32);
    let upper = Subspace::kernel(&nk);
    let lower = Subspace::column_space(&nk);
    let extras = upper.complement_of(&lower);
    let mut basis = lower.basis().to_vec();
    basis.extend(extras.iter().cloned());
    let r = extras.len();
    let lb = lower.dim();

    let mut induced = Mat::zeros(r, r);
    for (j, c) in extras.iter().enumerate() {
        let coords = coordinates(&basis, &n.mul_vec(c)).expect("N preserves ker N^k");
        for i in 0..r {
            induced[(i, j)] = coords[lb + i].clone();
        }
    }
    let inner = recurse(&induced, center);
    let inner_level = |l: i64| -> Subspace {
        match (inner.get(&l), inner.keys().next(), inner.keys().next_back()) {
            (Some(s), _, _) => s.clone(),
            (None, Some(&lo), _) if l < lo => Subspace::zero(r),
            _ => Subspace::full(r),
        }
    };

    for l in center - k..=center + k {
        let s = if l == center + k {
            Subspace::full(m)
        } else if l == center - k {
            lower.clone()
        } else {
            let q = inner_level(l);
            let lifted: Vec<Vec<Gq>> = q
                .basis()
                .iter()
                .map(|coef| {
                    let mut v = vec![Gq::default(); m];
                    for (c, e) in coef.iter().zip(&extras) {
                        for (x, y) in v.iter_mut().zip(e) {
                            *x = &*x + c * y;
                        }
                    }
                    v
                })
                .collect();
            lower.sum(&Subspace::span(m, &lifted))
        };
        out.insert(l, s);
    }
    out
}

/// Checks `N W_l ⊆ W_{l-2}` and that `N^s: Gr_{n+s} → Gr_{n-s}` is an isomorphism for all `s ≥ 0`.
pub fn check_weight_properties(n_mat: &Mat, w: &IncreasingFiltration, n: i64) -> bool {
    let lo = w.low() - 2;
    let hi = w.high() + 2;
    for l in lo..=hi {
        if !w.level(l).image(n_mat).is_subspace_of(&w.level(l - 2)) {
            return false;
        }
    }
    let span = (hi - n).max(n - lo).max(0);
    for s in 0..=span {
        let top = w.level(n + s);
        let top_prev = w.level(n + s - 1);
        let bot_prev = w.level(n - s - 1);
        let reps = top.complement_of(&top_prev);
        if reps.len() != w.graded_rank(n - s) {
            return false;
        }
        let ns = n_mat.pow(s as u32);
        let images: Vec<Vec<Gq>> = reps.iter().map(|r| ns.mul_vec(r)).collect();
        let together = bot_prev.sum(&Subspace::span(w.ambient(), &images));
        if together.dim() != bot_prev.dim() + reps.len() {
            return false;
        }
    }
    true
}

/// Compares `W(a N1 + b N2)` across the sampled cone points.
pub fn cone_invariance(
    n1: &NilpotentOperator,
    n2: &NilpotentOperator,
    n: u32,
    samples: &[(BigRational, BigRational)],
) -> Result<bool, HodgeError> {
    if n1.dim() != n2.dim() {
        return Err(HodgeError::DimensionMismatch { expected: n1.dim(), found: n2.dim() });
    }
    if !n1.matrix().commutes_with(n2.matrix()) {
        return Err(HodgeError::NonCommuting);
    }
    let mut first: Option<IncreasingFiltration> = None;
    for (a, b) in samples {
        let op = n1.combine(&gq_real(a.clone()), n2, &gq_real(b.clone()))?;
        let w = weight_filtration(&op, n)?;
        match &first {
            None => first = Some(w),
            Some(f) if !f.same_spans(&w) => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}
