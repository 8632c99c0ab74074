use num_traits::Zero;

use crate::exact::gauss::{gq, Gq};
use crate::exact::{Mat, Subspace};

use super::{DecreasingFiltration, HodgeError, NilpotentOperator, PolarizedSpace};

pub const DEFAULT_WEIGHT_BOUND: u32 = 12;

/// Polarized space with a nilpotent isometry and a Hodge filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub space: PolarizedSpace,
    pub nilpotent: NilpotentOperator,
    pub hodge: DecreasingFiltration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// `V = span{e1, e2}`, `Q(e1, e2) = 1`, `N e1 = e2`, `F^1 = span{e1 + i e2}`.
    Weight1String,
    /// `Q = I`, `N = 0`, pure of type `(w/2, w/2)`; `weight` must be even.
    Trivial { dim: usize, weight: u32 },
}

pub fn build_block(kind: BlockKind) -> Result<Block, HodgeError> {
    match kind {
        BlockKind::Weight1String => {
            let space = PolarizedSpace::new(Mat::from_int_rows(&[&[0, 1], &[-1, 0]]), 1)?;
            let nilpotent = NilpotentOperator::new(Mat::from_int_rows(&[&[0, 0], &[1, 0]]))?;
            let f1 = Subspace::span(2, &[vec![gq(1, 0), gq(0, 1)]]);
            let hodge = DecreasingFiltration::new(2, 0, vec![Subspace::full(2), f1])?;
            Ok(Block { space, nilpotent, hodge })
        }
        BlockKind::Trivial { dim, weight } => {
            if weight % 2 != 0 {
                return Err(HodgeError::InvalidBlock(format!("trivial block needs even weight, got {weight}")));
            }
            if dim == 0 {
                return Err(HodgeError::InvalidBlock("trivial block needs positive dimension".into()));
            }
            let space = PolarizedSpace::new(Mat::identity(dim), weight)?;
            let nilpotent = NilpotentOperator::new(Mat::zeros(dim, dim))?;
            let hodge = DecreasingFiltration::new(dim, (weight / 2) as i64, vec![Subspace::full(dim)])?;
            Ok(Block { space, nilpotent, hodge })
        }
    }
}

fn kron_vec(u: &[Gq], v: &[Gq]) -> Vec<Gq> {
    u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
}

pub fn tensor(a: &Block, b: &Block) -> Result<Block, HodgeError> {
    tensor_bounded(a, b, DEFAULT_WEIGHT_BOUND)
}

/// Tensor product: product form, `N ⊗ 1 + 1 ⊗ N`, `F^p = Σ F^a ⊗ F^{p-a}`.
pub fn tensor_bounded(a: &Block, b: &Block, bound: u32) -> Result<Block, HodgeError> {
    let weight = a.space.weight() + b.space.weight();
    if weight > bound {
        return Err(HodgeError::WeightOverflow { weight, bound });
    }
    let (da, db) = (a.space.dim(), b.space.dim());
    let space = PolarizedSpace::new(a.space.form().kron(b.space.form()), weight)?;
    let n = a.nilpotent.matrix().kron(&Mat::identity(db)).add(&Mat::identity(da).kron(b.nilpotent.matrix()));
    let nilpotent = NilpotentOperator::new(n)?;

    let (fa, fb) = (&a.hodge, &b.hodge);
    let low = fa.low() + fb.low();
    let high = fa.high() + fb.high();
    let pieces = (low..=high)
        .map(|p| {
            let mut vecs = Vec::new();
            for i in fa.low()..=fa.high() {
                let pa = fa.piece(i);
                let pb = fb.piece(p - i);
                for u in pa.basis() {
                    for v in pb.basis() {
                        vecs.push(kron_vec(u, v));
                    }
                }
            }
            Subspace::span(da * db, &vecs)
        })
        .collect();
    let hodge = DecreasingFiltration::new(da * db, low, pieces)?;
    Ok(Block { space, nilpotent, hodge })
}

/// Orthogonal direct sum of two blocks of the same weight.
pub fn direct_sum(a: &Block, b: &Block) -> Result<Block, HodgeError> {
    if a.space.weight() != b.space.weight() {
        return Err(HodgeError::InvalidBlock("direct sum needs equal weights".into()));
    }
    let (da, db) = (a.space.dim(), b.space.dim());
    let space = PolarizedSpace::new(a.space.form().direct_sum(b.space.form()), a.space.weight())?;
    let nilpotent = NilpotentOperator::new(a.nilpotent.matrix().direct_sum(b.nilpotent.matrix()))?;
    let low = a.hodge.low().min(b.hodge.low());
    let high = a.hodge.high().max(b.hodge.high());
    let pieces = (low..=high)
        .map(|p| {
            let mut vecs: Vec<Vec<Gq>> = a
                .hodge
                .piece(p)
                .basis()
                .iter()
                .map(|u| u.iter().cloned().chain(std::iter::repeat_n(Gq::zero(), db)).collect())
                .collect();
            vecs.extend(
                b.hodge
                    .piece(p)
                    .basis()
                    .iter()
                    .map(|v| std::iter::repeat_n(Gq::zero(), da).chain(v.iter().cloned()).collect()),
            );
            Subspace::span(da + db, &vecs)
        })
        .collect();
    let hodge = DecreasingFiltration::new(da + db, low, pieces)?;
    Ok(Block { space, nilpotent, hodge })
}

/// Sorted index tuples of length `k` over `0..d`, in lexicographic order.
pub(crate) fn multisets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(d, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, k, 0, &mut Vec::new(), &mut out);
    out
}

fn flat_index(idx: &[usize], d: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * d + i)
}

/// Sum of all distinct permutations of the basis tensor `e_{i1} ⊗ … ⊗ e_{ik}`.
fn symmetrized(idx: &[usize], d: usize) -> Vec<Gq> {
    let k = idx.len();
    let mut v = vec![Gq::zero(); d.pow(k as u32)];
    let mut perm = idx.to_vec();
    perm.sort_unstable();
    loop {
        v[flat_index(&perm, d)] = gq(1, 0);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    v
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// `Sym^k` of a block, in the basis of symmetrized monomials `s_J` (sorted multi-indices `J`).
pub fn sym_power(block: &Block, k: usize) -> Result<Block, HodgeError> {
    if k == 0 {
        return Err(HodgeError::InvalidBlock("symmetric power needs k >= 1".into()));
    }
    let weight = block.space.weight() * k as u32;
    if weight > DEFAULT_WEIGHT_BOUND {
        return Err(HodgeError::WeightOverflow { weight, bound: DEFAULT_WEIGHT_BOUND });
    }
    let mut t = block.clone();
    for _ in 1..k {
        t = tensor(&t, block)?;
    }
    let d = block.space.dim();
    let idx = multisets(d, k);
    let sym: Vec<Vec<Gq>> = idx.iter().map(|j| symmetrized(j, d)).collect();
    let canon: Vec<usize> = idx.iter().map(|j| flat_index(j, d)).collect();
    let m = sym.len();
    let restrict_vec = |v: &[Gq]| -> Vec<Gq> { canon.iter().map(|&c| v[c].clone()).collect() };

    let mut q = Mat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            q[(i, j)] = t.space.q(&sym[i], &sym[j]);
        }
    }
    let space = PolarizedSpace::new(q, weight)?;
    let mut n = Mat::zeros(m, m);
    for j in 0..m {
        let img = restrict_vec(&t.nilpotent.matrix().mul_vec(&sym[j]));
        for i in 0..m {
            n[(i, j)] = img[i].clone();
        }
    }
    let nilpotent = NilpotentOperator::new(n)?;
    let sym_space = Subspace::span(t.space.dim(), &sym);
    let pieces = (t.hodge.low()..=t.hodge.high())
        .map(|p| {
            let inter = t.hodge.piece(p).intersect(&sym_space);
            let vecs: Vec<Vec<Gq>> = inter.basis().iter().map(|v| restrict_vec(v)).collect();
            Subspace::span(m, &vecs)
        })
        .collect();
    let hodge = DecreasingFiltration::new(m, t.hodge.low(), pieces)?;
    Ok(Block { space, nilpotent, hodge })
}
