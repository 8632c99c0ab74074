use std::collections::BTreeMap;

use crate::exact::Subspace;

use super::HodgeError;

/// `W_low ⊆ … ⊆ W_high`, with `W_l = 0` below `low` and `W_l = V` from `high` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncreasingFiltration {
    ambient: usize,
    levels: BTreeMap<i64, Subspace>,
}

impl IncreasingFiltration {
    pub fn new(ambient: usize, levels: BTreeMap<i64, Subspace>) -> Result<Self, HodgeError> {
        let mut prev: Option<&Subspace> = None;
        let mut prev_l: Option<i64> = None;
        for (&l, s) in &levels {
            if s.ambient() != ambient {
                return Err(HodgeError::DimensionMismatch { expected: ambient, found: s.ambient() });
            }
            if let (Some(p), Some(pl)) = (prev, prev_l) {
                if pl + 1 != l || !p.is_subspace_of(s) {
                    return Err(HodgeError::DegenerateFiltration);
                }
            }
            prev = Some(s);
            prev_l = Some(l);
        }
        if let Some(last) = levels.values().next_back() {
            if !last.is_full() {
                return Err(HodgeError::DegenerateFiltration);
            }
        }
        Ok(IncreasingFiltration { ambient, levels })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn low(&self) -> i64 {
        self.levels.keys().next().copied().unwrap_or(0)
    }

    pub fn high(&self) -> i64 {
        self.levels.keys().next_back().copied().unwrap_or(0)
    }

    pub fn level(&self, l: i64) -> Subspace {
        if let Some(s) = self.levels.get(&l) {
            return s.clone();
        }
        if self.levels.is_empty() || l > self.high() {
            Subspace::full(self.ambient)
        } else {
            Subspace::zero(self.ambient)
        }
    }

    pub fn levels(&self) -> &BTreeMap<i64, Subspace> {
        &self.levels
    }

    /// `dim Gr_l = dim W_l - dim W_{l-1}`.
    pub fn graded_rank(&self, l: i64) -> usize {
        self.level(l).dim() - self.level(l - 1).dim()
    }

    /// Nonzero graded ranks in increasing order of `l`.
    pub fn grades(&self) -> Vec<(i64, usize)> {
        (self.low()..=self.high()).map(|l| (l, self.graded_rank(l))).filter(|&(_, r)| r > 0).collect()
    }

    /// Same subspaces at every level.
    pub fn same_spans(&self, other: &IncreasingFiltration) -> bool {
        let lo = self.low().min(other.low()) - 1;
        let hi = self.high().max(other.high());
        self.ambient == other.ambient && (lo..=hi).all(|l| self.level(l) == other.level(l))
    }
}

/// `F^p` for `p` in `[low, high]`; `F^p = V` below and `F^p = 0` above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecreasingFiltration {
    ambient: usize,
    low: i64,
    pieces: Vec<Subspace>,
}

impl DecreasingFiltration {
    pub fn new(ambient: usize, low: i64, pieces: Vec<Subspace>) -> Result<Self, HodgeError> {
        for s in &pieces {
            if s.ambient() != ambient {
                return Err(HodgeError::DimensionMismatch { expected: ambient, found: s.ambient() });
            }
        }
        if pieces.windows(2).any(|w| !w[1].is_subspace_of(&w[0])) {
            return Err(HodgeError::DegenerateFiltration);
        }
        Ok(DecreasingFiltration { ambient, low, pieces })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.pieces.len() as i64 - 1
    }

    pub fn piece(&self, p: i64) -> Subspace {
        if p < self.low {
            Subspace::full(self.ambient)
        } else if p > self.high() {
            Subspace::zero(self.ambient)
        } else {
            self.pieces[(p - self.low) as usize].clone()
        }
    }
}
