use num_traits::{Signed, Zero};

use crate::exact::gauss::{conj, i_pow, vec_conj};
use crate::exact::matrix::coordinates;
use crate::exact::{Gq, Mat, Subspace};

use super::{DecreasingFiltration, HodgeError, IncreasingFiltration, NilpotentOperator, PolarizedSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationReport {
    pub cond_a: bool,
    pub cond_b: bool,
    /// `(p, dim P^{p, m-p})` for the nonzero pieces.
    pub hodge_numbers: Vec<(i64, usize)>,
}

/// Checks `Q(F^p, F^{m+1-p}) = 0` and positivity of `Q(C·, conj ·)` with `C = i^{p-q}` on `P^{p,q}`.
pub fn check_polarization(
    space: &PolarizedSpace,
    f: &DecreasingFiltration,
    m: i64,
) -> Result<PolarizationReport, HodgeError> {
    if f.ambient() != space.dim() {
        return Err(HodgeError::DimensionMismatch { expected: space.dim(), found: f.ambient() });
    }
    let lo = f.low().min(m - f.high()) - 1;
    let hi = f.high().max(m - f.low()) + 1;

    let cond_a = (lo..=hi).all(|p| {
        let a = f.piece(p);
        let b = f.piece(m + 1 - p);
        a.basis().iter().all(|u| b.basis().iter().all(|v| space.q(u, v).is_zero()))
    });

    let mut hodge_numbers = Vec::new();
    let mut vectors: Vec<Vec<Gq>> = Vec::new();
    let mut weil: Vec<Gq> = Vec::new();
    for p in lo..=hi {
        let piece = f.piece(p).intersect(&f.piece(m - p).conj());
        if piece.dim() > 0 {
            hodge_numbers.push((p, piece.dim()));
        }
        for b in piece.basis() {
            vectors.push(b.clone());
            weil.push(i_pow(2 * p - m));
        }
    }
    let direct = vectors.len() == space.dim() && Subspace::span(space.dim(), &vectors).is_full();
    let cond_b = direct && {
        let k = vectors.len();
        let mut g = Mat::zeros(k, k);
        for r in 0..k {
            for c in 0..k {
                g[(r, c)] = &weil[r] * space.q(&vectors[r], &vec_conj(&vectors[c]));
            }
        }
        is_positive_definite(&g)
    };
    Ok(PolarizationReport { cond_a, cond_b, hodge_numbers })
}

fn is_hermitian(g: &Mat) -> bool {
    (0..g.rows()).all(|r| (0..g.cols()).all(|c| g[(r, c)] == conj(&g[(c, r)])))
}

/// Hermitian and all leading principal minors positive.
pub(crate) fn is_positive_definite(g: &Mat) -> bool {
    if !g.is_square() || !is_hermitian(g) {
        return false;
    }
    (1..=g.rows()).all(|k| {
        let sub = Mat::from_rows((0..k).map(|r| g.row(r)[..k].to_vec()).collect());
        let d = sub.det();
        d.im.is_zero() && d.re.is_positive()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveReport {
    /// Representatives in `V` of a basis of the primitive part of `Gr_{n+s}`.
    pub basis: Vec<Vec<Gq>>,
    /// `Q(u_k, N^s conj u_l)`, multiplied by `i^{p-q}` when a Hodge filtration is supplied.
    pub gram: Mat,
    /// Twisted form positive definite, or untwisted form definite of either sign.
    pub definite: bool,
}

/// Primitive part `ker(N^{s+1}: Gr_{n+s} → Gr_{n-s-2})` and its induced form.
pub fn graded_primitive(
    space: &PolarizedSpace,
    n_op: &NilpotentOperator,
    w: &IncreasingFiltration,
    n: i64,
    s: u32,
    hodge: Option<&DecreasingFiltration>,
) -> Result<PrimitiveReport, HodgeError> {
    let dim = space.dim();
    if n_op.dim() != dim || w.ambient() != dim {
        return Err(HodgeError::DimensionMismatch { expected: dim, found: n_op.dim().max(w.ambient()) });
    }
    let grade = n + s as i64;
    if grade > w.high() || n - (s as i64) < w.low() {
        return Err(HodgeError::GradeOutOfRange { grade });
    }
    let top = w.level(grade);
    let prev = w.level(grade - 1);
    let target = w.level(n - s as i64 - 3);
    let ns1 = n_op.matrix().pow(s + 1);
    let ns = n_op.matrix().pow(s);

    let cols: Vec<Vec<Gq>> = top.basis().iter().map(|b| target.reduce(&ns1.mul_vec(b))).collect();
    let kernel = if cols.is_empty() { Vec::new() } else { Mat::from_columns(&cols, dim).nullspace() };
    let k_vectors: Vec<Vec<Gq>> = kernel.iter().map(|c| combine(c, top.basis(), dim)).collect();
    let k_space = Subspace::span(dim, &k_vectors);

    let (basis, weil) = match hodge {
        None => (k_space.complement_of(&prev), None),
        Some(f) => {
            let (b, t) = hodge_split(&top, &prev, &k_space, f, grade)?;
            (b, Some(t))
        }
    };

    let r = basis.len();
    let mut gram = Mat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            let mut v = space.q(&basis[i], &ns.mul_vec(&vec_conj(&basis[j])));
            if let Some(t) = &weil {
                v = &t[i] * v;
            }
            gram[(i, j)] = v;
        }
    }
    let definite = if weil.is_some() {
        is_positive_definite(&gram)
    } else {
        is_positive_definite(&gram) || is_positive_definite(&gram.scale(&i_pow(2)))
    };
    Ok(PrimitiveReport { basis, gram, definite })
}

fn combine(coef: &[Gq], basis: &[Vec<Gq>], dim: usize) -> Vec<Gq> {
    let mut v = vec![Gq::zero(); dim];
    for (c, b) in coef.iter().zip(basis) {
        for (x, y) in v.iter_mut().zip(b) {
            *x = &*x + c * y;
        }
    }
    v
}

/// Splits the primitive classes into `P^{p,q}` using the filtration induced on the graded piece.
fn hodge_split(
    top: &Subspace,
    prev: &Subspace,
    primitive: &Subspace,
    f: &DecreasingFiltration,
    grade: i64,
) -> Result<(Vec<Vec<Gq>>, Vec<Gq>), HodgeError> {
    let dim = top.ambient();
    let reps = top.complement_of(prev);
    if reps.iter().any(|r| r.iter().any(|x| !x.im.is_zero())) {
        return Err(HodgeError::InvalidBlock("weight filtration is not defined over the reals".into()));
    }
    let mut frame = prev.basis().to_vec();
    frame.extend(reps.iter().cloned());
    let pb = prev.dim();
    let g = reps.len();
    let project = |v: &[Gq]| -> Vec<Gq> {
        let c = coordinates(&frame, v).expect("vector lies in W");
        c[pb..].to_vec()
    };
    let project_space = |s: &Subspace| -> Subspace {
        let vs: Vec<Vec<Gq>> = s.basis().iter().map(|v| project(v)).collect();
        Subspace::span(g, &vs)
    };
    let prim = project_space(primitive);
    let lo = f.low().min(grade - f.high()) - 1;
    let hi = f.high().max(grade - f.low()) + 1;
    let mut basis = Vec::new();
    let mut twist = Vec::new();
    for p in lo..=hi {
        let fp = project_space(&f.piece(p).intersect(top));
        let fq = project_space(&f.piece(grade - p).intersect(top)).conj();
        let piece = fp.intersect(&fq).intersect(&prim);
        for c in piece.basis() {
            basis.push(combine(c, &reps, dim));
            twist.push(i_pow(2 * p - grade));
        }
    }
    if basis.len() != prim.dim() {
        return Err(HodgeError::InvalidBlock("induced filtration does not split the primitive part".into()));
    }
    Ok((basis, twist))
}
