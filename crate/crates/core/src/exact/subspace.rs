use num_traits::{One, Zero};

use super::gauss::{vec_conj, Gq};
use super::matrix::Mat;

/// Subspace of `K^n` stored as a reduced row echelon basis.
///
/// The basis is canonical, so structural equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Gq>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Gq::zero(); ambient];
                v[i] = Gq::one();
                v
            })
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Gq>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let (r, pivots) = Mat::from_rows(vectors.to_vec()).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Gq>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Remainder of `v` after elimination against the echelon basis.
    pub fn reduce(&self, v: &[Gq]) -> Vec<Gq> {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Gq]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, &all)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        // Solve sum a_i u_i = sum b_j w_j.
        let k = self.dim();
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|w| w.iter().map(|x| -x.clone()).collect()));
        let m = Mat::from_columns(&cols, self.ambient);
        let vecs: Vec<Vec<Gq>> = m
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut v = vec![Gq::zero(); self.ambient];
                for (c, u) in coef[..k].iter().zip(&self.basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(u) {
                        *x = &*x + c * y;
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient, &vecs)
    }

    pub fn conj(&self) -> Subspace {
        let vecs: Vec<Vec<Gq>> = self.basis.iter().map(|b| vec_conj(b)).collect();
        Subspace::span(self.ambient, &vecs)
    }

    pub fn image(&self, m: &Mat) -> Subspace {
        let vecs: Vec<Vec<Gq>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(m.rows(), &vecs)
    }

    pub fn kernel(m: &Mat) -> Subspace {
        Subspace::span(m.cols(), &m.nullspace())
    }

    pub fn column_space(m: &Mat) -> Subspace {
        let cols: Vec<Vec<Gq>> = (0..m.cols()).map(|c| m.column(c)).collect();
        Subspace::span(m.rows(), &cols)
    }

    /// Vectors of `self` completing a basis of `sub` to one of `self`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vec<Gq>> {
        let mut acc = sub.clone();
        let mut extra = Vec::new();
        for b in &self.basis {
            if !acc.contains(b) {
                extra.push(b.clone());
                acc = acc.sum(&Subspace::span(self.ambient, std::slice::from_ref(b)));
            }
        }
        extra
    }
}
