//! Row monomial matrices: 0/1 matrices with exactly one unit per row.
//!
//! A matrix is stored as its row targets: row `i` holds its unit in column
//! `targets[i]`. The matrix of a word `u` has `targets[i] = i u`, and the
//! product of matrices is composition of maps, `M_u M_v = M_{uv}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{Dfa, StateSet, Word};
use crate::error::{Error, Result};

/// Set of nonzero columns of a matrix, `R(u)` for the matrix of `u`.
pub type ColumnSet = StateSet;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RowMonomialMatrix {
    targets: Vec<usize>,
}

impl RowMonomialMatrix {
    pub fn new(targets: Vec<usize>) -> Result<Self> {
        let n = targets.len();
        if n == 0 {
            return Err(Error::Domain("matrix needs at least one row".into()));
        }
        if let Some(&state) = targets.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidState { state, n });
        }
        Ok(Self { targets })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            targets: (0..n).collect(),
        }
    }

    /// The rank-one matrix with every unit in column `q`.
    pub fn sink(n: usize, q: usize) -> Self {
        debug_assert!(q < n);
        Self { targets: vec![q; n] }
    }

    pub fn n(&self) -> usize {
        self.targets.len()
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Column of the unit in row `row`.
    pub fn target(&self, row: usize) -> usize {
        self.targets[row]
    }

    pub fn entry(&self, row: usize, column: usize) -> bool {
        self.targets[row] == column
    }

    /// Rows whose unit lies in `column`.
    pub fn rows_in_column(&self, column: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.targets[i] == column).collect()
    }

    /// Number of units in each column.
    pub fn column_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n()];
        for &t in &self.targets {
            counts[t] += 1;
        }
        counts
    }

    /// Single-line form, e.g. `[1,2,3,0]`.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self.targets.iter().map(|t| t.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// `n` lines of space-separated 0/1 entries.
    pub fn grid(&self) -> String {
        let n = self.n();
        let mut out = String::with_capacity(n * 2 * n);
        for &t in &self.targets {
            let row: Vec<&str> = (0..n).map(|j| if j == t { "1" } else { "0" }).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for RowMonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.grid())
    }
}

/// The matrix of the state mapping induced by `word`.
pub fn matrix_of_word(dfa: &Dfa, word: &Word) -> Result<RowMonomialMatrix> {
    dfa.check_word(word)?;
    let targets = (0..dfa.n())
        .map(|p| word.letters().iter().fold(p, |p, &a| dfa.step(p, a)))
        .collect();
    Ok(RowMonomialMatrix { targets })
}

/// The matrix of a single letter.
pub fn matrix_of_letter(dfa: &Dfa, letter: usize) -> Result<RowMonomialMatrix> {
    if letter >= dfa.k() {
        return Err(Error::InvalidLetter { letter, k: dfa.k() });
    }
    Ok(RowMonomialMatrix {
        targets: dfa.letter_map(letter).to_vec(),
    })
}

/// Matrix product; `result[i] = b[a[i]]`.
pub fn multiply(a: &RowMonomialMatrix, b: &RowMonomialMatrix) -> Result<RowMonomialMatrix> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(RowMonomialMatrix {
        targets: a.targets.iter().map(|&t| b.targets[t]).collect(),
    })
}

pub fn nonzero_columns(m: &RowMonomialMatrix) -> ColumnSet {
    m.targets.iter().copied().collect()
}

/// Rank of a row monomial matrix: its number of nonzero columns.
pub fn rank(m: &RowMonomialMatrix) -> usize {
    let mut seen = vec![false; m.n()];
    m.targets.iter().filter(|&&t| !std::mem::replace(&mut seen[t], true)).count()
}

/// Invertible row monomial matrices are exactly the permutation matrices.
pub fn is_permutation(m: &RowMonomialMatrix) -> bool {
    rank(m) == m.n()
}

/// Every row monomial `n x n` matrix, in lexicographic order of targets.
pub fn all_matrices(n: usize) -> impl Iterator<Item = RowMonomialMatrix> {
    all_matrices_within(n, n)
}

/// Every row monomial `n x n` matrix whose units lie in the first `k`
/// columns, i.e. the `n x k` matrices padded with zero columns.
pub fn all_matrices_within(n: usize, k: usize) -> impl Iterator<Item = RowMonomialMatrix> {
    let total = (k as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut targets = vec![0; n];
        for slot in targets.iter_mut().rev() {
            *slot = (code % k as u64) as usize;
            code /= k as u64;
        }
        RowMonomialMatrix { targets }
    })
}
