//! Polarized spaces, nilpotent operators, filtrations and the monodromy weight filtration.

mod blocks;
mod filtration;
mod polarization;
mod weight;

pub use blocks::{build_block, direct_sum, sym_power, tensor, tensor_bounded, Block, BlockKind, DEFAULT_WEIGHT_BOUND};
pub use filtration::{DecreasingFiltration, IncreasingFiltration};
pub use polarization::{check_polarization, graded_primitive, PolarizationReport, PrimitiveReport};
pub use weight::{check_weight_properties, cone_invariance, weight_filtration};

use thiserror::Error;

use crate::exact::gauss::{gq, i_pow};
use crate::exact::matrix::bilinear;
use crate::exact::{Gq, Mat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("filtration pieces are not nested")]
    DegenerateFiltration,
    #[error("nilpotent index {index} exceeds weight {weight}")]
    IndexExceedsWeight { index: u32, weight: u32 },
    #[error("nilpotent operators do not commute")]
    NonCommuting,
    #[error("grade {grade} is outside the filtration range")]
    GradeOutOfRange { grade: i64 },
    #[error("combined weight {weight} exceeds bound {bound}")]
    WeightOverflow { weight: u32, bound: u32 },
    #[error("matrix is not square")]
    NotSquare,
    #[error("operator is not nilpotent")]
    NotNilpotent,
    #[error("operator is not an infinitesimal isometry of the form")]
    NotIsometry,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("bilinear form does not have symmetry (-1)^{weight}")]
    WrongSymmetry { weight: u32 },
    #[error("invalid block: {0}")]
    InvalidBlock(String),
}

/// Vector space with weight `n` and a `(-1)^n`-symmetric nondegenerate form `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedSpace {
    form: Mat,
    weight: u32,
}

impl PolarizedSpace {
    pub fn new(form: Mat, weight: u32) -> Result<Self, HodgeError> {
        if !form.is_square() {
            return Err(HodgeError::NotSquare);
        }
        if form.rows() == 0 {
            return Err(HodgeError::InvalidBlock("zero-dimensional space".into()));
        }
        let t = form.transpose();
        let expected = if weight % 2 == 0 { form.clone() } else { form.scale(&gq(-1, 0)) };
        if t != expected {
            return Err(HodgeError::WrongSymmetry { weight });
        }
        if form.rank() != form.rows() {
            return Err(HodgeError::DegenerateForm);
        }
        Ok(PolarizedSpace { form, weight })
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn form(&self) -> &Mat {
        &self.form
    }

    /// `i^n`.
    pub fn twist_sign(&self) -> Gq {
        i_pow(self.weight as i64)
    }

    /// `Q(u, v) = u^T Q v`.
    pub fn q(&self, u: &[Gq], v: &[Gq]) -> Gq {
        bilinear(&self.form, u, v)
    }

    /// `Q̃(u, v) = i^n Q(u, v)`.
    pub fn q_tilde(&self, u: &[Gq], v: &[Gq]) -> Gq {
        self.twist_sign() * bilinear(&self.form, u, v)
    }

    pub fn twisted_form(&self) -> Mat {
        self.form.scale(&self.twist_sign())
    }
}

/// Nilpotent matrix together with its index (largest `k` with `N^k ≠ 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOperator {
    matrix: Mat,
    index: u32,
}

impl NilpotentOperator {
    pub fn new(matrix: Mat) -> Result<Self, HodgeError> {
        if !matrix.is_square() {
            return Err(HodgeError::NotSquare);
        }
        let k = matrix.nilpotency_index().ok_or(HodgeError::NotNilpotent)?;
        Ok(NilpotentOperator { matrix, index: k.saturating_sub(1) })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Largest `k` with `N^k ≠ 0` (0 for the zero operator).
    pub fn index(&self) -> u32 {
        self.index
    }

    /// `Q(Nu, v) + Q(u, Nv) = 0`, i.e. `N^T Q + Q N = 0`.
    pub fn is_isometry_of(&self, space: &PolarizedSpace) -> bool {
        self.dim() == space.dim()
            && self.matrix.transpose().mul(space.form()).add(&space.form().mul(&self.matrix)).is_zero()
    }

    pub fn check_isometry(&self, space: &PolarizedSpace) -> Result<(), HodgeError> {
        if self.dim() != space.dim() {
            return Err(HodgeError::DimensionMismatch { expected: space.dim(), found: self.dim() });
        }
        if self.is_isometry_of(space) {
            Ok(())
        } else {
            Err(HodgeError::NotIsometry)
        }
    }

    /// `a N1 + b N2`.
    pub fn combine(&self, a: &Gq, other: &NilpotentOperator, b: &Gq) -> Result<Self, HodgeError> {
        if self.dim() != other.dim() {
            return Err(HodgeError::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        NilpotentOperator::new(self.matrix.scale(a).add(&other.matrix.scale(b)))
    }
}
