use serde::{Deserialize, Serialize};

use crate::fs::Bijection;

/// Ordered list of `X`-edges; applying move `(a, b)` exchanges the tokens on
/// positions `a` and `b`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapSequence {
    pub moves: Vec<(usize, usize)>,
}

impl SwapSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_moves(moves: Vec<(usize, usize)>) -> Self {
        SwapSequence { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, a: usize, b: usize) {
        self.moves.push((a, b));
    }

    pub fn extend_from(&mut self, other: &SwapSequence) {
        self.moves.extend_from_slice(&other.moves);
    }

    /// The same moves in reverse order. Applied after `self`, it undoes it.
    pub fn reversed(&self) -> SwapSequence {
        SwapSequence {
            moves: self.moves.iter().rev().copied().collect(),
        }
    }

    /// `self · inner · self⁻¹`.
    pub fn conjugate(&self, inner: &SwapSequence) -> SwapSequence {
        let mut out = self.clone();
        out.extend_from(inner);
        out.extend_from(&self.reversed());
        out
    }

    /// Final bijection after applying every move, without legality checks.
    pub fn apply_unchecked(&self, start: &Bijection) -> Bijection {
        self.moves
            .iter()
            .fold(start.clone(), |s, &(a, b)| s.swap_positions(a, b))
    }
}

impl FromIterator<(usize, usize)> for SwapSequence {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        SwapSequence {
            moves: iter.into_iter().collect(),
        }
    }
}
