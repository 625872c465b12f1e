//! Row monomial solutions `L` of `M_u L = M_s`, where `M_s` is the sink
//! matrix with every unit in column `q`.
//!
//! A row monomial `L` solves the equation iff it sends every nonzero column
//! of `M_u` (a row of `L`) to `q`. The remaining free rows may point
//! anywhere. A solution is minimal when none of its free rows uses column
//! `q`, i.e. column `q` of `L` has exactly `|R(u)|` units.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rowmon::{multiply, nonzero_columns, ColumnSet, RowMonomialMatrix};

/// Default cap on the number of solutions an enumeration may produce.
pub const DEFAULT_SOLUTION_BUDGET: u128 = 1 << 22;

/// The rank-one matrix with every unit in column `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SinkMatrix {
    pub n: usize,
    pub q: usize,
}

impl SinkMatrix {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if q >= n {
            return Err(Error::InvalidState { state: q, n });
        }
        Ok(Self { n, q })
    }

    pub fn matrix(&self) -> RowMonomialMatrix {
        RowMonomialMatrix::sink(self.n, self.q)
    }
}

/// How the free rows of a minimal solution are placed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum FreePlacement {
    /// Each free row goes to the lowest-index column other than `q`.
    #[default]
    LowestAvoidingQ,
    /// Every free row goes to the given column.
    Column(usize),
    /// Free row `i` goes to column `columns[i]`; entries for fixed rows are
    /// ignored.
    PerRow(Vec<usize>),
}

/// The shape of the solution family of one equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpec {
    pub n: usize,
    pub q: usize,
    /// Rows forced to column `q`: the set `R(u)`.
    pub fixed_rows: ColumnSet,
    pub free_rows: Vec<usize>,
    /// Columns the free rows may use, sorted.
    pub allowed_columns: Vec<usize>,
}

impl SolutionSpec {
    pub fn new(m_u: &RowMonomialMatrix, q: usize, restriction: Option<&[usize]>) -> Result<Self> {
        let n = m_u.n();
        if q >= n {
            return Err(Error::InvalidState { state: q, n });
        }
        let fixed_rows = nonzero_columns(m_u);
        let free_rows = (0..n).filter(|&r| !fixed_rows.contains(r)).collect();
        let mut allowed_columns: Vec<usize> = match restriction {
            Some(cols) => {
                if let Some(&c) = cols.iter().find(|&&c| c >= n) {
                    return Err(Error::InvalidState { state: c, n });
                }
                cols.to_vec()
            }
            None => (0..n).collect(),
        };
        allowed_columns.sort_unstable();
        allowed_columns.dedup();
        Ok(Self {
            n,
            q,
            fixed_rows,
            free_rows,
            allowed_columns,
        })
    }

    /// `|allowed columns|^(free rows)`, saturating.
    pub fn solution_count(&self) -> u128 {
        (self.allowed_columns.len() as u128)
            .checked_pow(self.free_rows.len() as u32)
            .unwrap_or(u128::MAX)
    }

    /// Number of solutions in this family whose free rows avoid `q`.
    pub fn minimal_count(&self) -> u128 {
        let avoiding = self.allowed_columns.iter().filter(|&&c| c != self.q).count();
        (avoiding as u128)
            .checked_pow(self.free_rows.len() as u32)
            .unwrap_or(u128::MAX)
    }
}

/// A minimal solution: rows in `R(u)` go to `q`, free rows follow `policy`
/// and must avoid `q`.
pub fn minimal_solution(
    m_u: &RowMonomialMatrix,
    q: usize,
    policy: &FreePlacement,
) -> Result<RowMonomialMatrix> {
    let spec = SolutionSpec::new(m_u, q, None)?;
    let n = spec.n;
    let mut targets = vec![q; n];
    for &row in &spec.free_rows {
        let column = match policy {
            FreePlacement::LowestAvoidingQ => {
                if n < 2 {
                    return Err(Error::Policy("no column other than q exists".into()));
                }
                if q == 0 {
                    1
                } else {
                    0
                }
            }
            FreePlacement::Column(c) => *c,
            FreePlacement::PerRow(columns) => *columns.get(row).ok_or_else(|| {
                Error::Policy(format!("no column given for free row {row}"))
            })?,
        };
        if column == q {
            return Err(Error::Policy(format!(
                "free row {row} placed in column q = {q}; the solution would not be minimal"
            )));
        }
        if column >= n {
            return Err(Error::InvalidState { state: column, n });
        }
        targets[row] = column;
    }
    RowMonomialMatrix::new(targets)
}

/// Whether `M_u L` is the sink matrix of column `q`.
pub fn is_solution(m_u: &RowMonomialMatrix, l: &RowMonomialMatrix, q: usize) -> Result<bool> {
    let product = multiply(m_u, l)?;
    Ok(product.targets().iter().all(|&t| t == q))
}

/// `L ⊑_q N`: the rows of `L` with unit in column `q` are among those of `N`.
pub fn leq_q(l: &RowMonomialMatrix, n: &RowMonomialMatrix, q: usize) -> Result<bool> {
    if l.n() != n.n() {
        return Err(Error::SizeMismatch {
            left: l.n(),
            right: n.n(),
        });
    }
    Ok((0..l.n()).all(|i| l.target(i) != q || n.target(i) == q))
}

/// Whether a solution is minimal, i.e. column `q` holds exactly `|R(u)|` units.
pub fn is_minimal_solution(m_u: &RowMonomialMatrix, l: &RowMonomialMatrix, q: usize) -> Result<bool> {
    Ok(is_solution(m_u, l, q)? && l.rows_in_column(q).len() == nonzero_columns(m_u).len())
}

/// All solutions with free rows ranging over `restriction` (all columns when
/// `None`), in lexicographic order of targets.
pub fn enumerate_solutions(
    m_u: &RowMonomialMatrix,
    q: usize,
    restriction: Option<&[usize]>,
    budget: u128,
) -> Result<SolutionIter> {
    let spec = SolutionSpec::new(m_u, q, restriction)?;
    let count = spec.solution_count();
    if count > budget {
        return Err(Error::Capacity {
            parameter: "solutions",
            value: count,
            limit: budget,
            hint: "restrict the allowed columns or raise the solution budget",
        });
    }
    let exhausted = count == 0;
    Ok(SolutionIter {
        digits: vec![0; spec.free_rows.len()],
        spec,
        exhausted,
    })
}

/// Iterator returned by [`enumerate_solutions`].
#[derive(Clone, Debug)]
pub struct SolutionIter {
    spec: SolutionSpec,
    digits: Vec<usize>,
    exhausted: bool,
}

impl SolutionIter {
    pub fn spec(&self) -> &SolutionSpec {
        &self.spec
    }
}

impl Iterator for SolutionIter {
    type Item = RowMonomialMatrix;

    fn next(&mut self) -> Option<RowMonomialMatrix> {
        if self.exhausted {
            return None;
        }
        let mut targets = vec![self.spec.q; self.spec.n];
        for (&row, &d) in self.spec.free_rows.iter().zip(&self.digits) {
            targets[row] = self.spec.allowed_columns[d];
        }
        let base = self.spec.allowed_columns.len();
        self.exhausted = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < base {
                self.exhausted = false;
                break;
            }
            *d = 0;
        }
        Some(RowMonomialMatrix::new(targets).expect("targets are columns of the matrix"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rowmon::all_matrices;

    fn m(targets: &[usize]) -> RowMonomialMatrix {
        RowMonomialMatrix::new(targets.to_vec()).unwrap()
    }

    #[test]
    fn identity_has_only_the_sink_as_solution() {
        let id = RowMonomialMatrix::identity(4);
        let l = minimal_solution(&id, 0, &FreePlacement::default()).unwrap();
        assert_eq!(l, RowMonomialMatrix::sink(4, 0));
        let all: Vec<_> = enumerate_solutions(&id, 0, None, DEFAULT_SOLUTION_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(all, vec![l]);
    }

    #[test]
    fn sink_left_factor() {
        let s = RowMonomialMatrix::sink(3, 0);
        let l = minimal_solution(&s, 0, &FreePlacement::default()).unwrap();
        assert_eq!(l.targets(), &[0, 1, 1]);
        assert!(is_solution(&s, &l, 0).unwrap());
        // the identity leaves rows 1 and 2 outside column 0, so it is minimal too
        assert!(is_minimal_solution(&s, &RowMonomialMatrix::identity(3), 0).unwrap());
        assert!(is_solution(&s, &s, 0).unwrap());
        assert!(!is_minimal_solution(&s, &s, 0).unwrap());
    }

    #[test]
    fn two_fixed_rows() {
        // R(u) = {0, 2}
        let mu = m(&[0, 2, 2]);
        let l = minimal_solution(&mu, 0, &FreePlacement::default()).unwrap();
        assert_eq!(l.targets(), &[0, 1, 0]);
        assert!(is_solution(&mu, &l, 0).unwrap());
        assert_eq!(
            enumerate_solutions(&mu, 0, None, DEFAULT_SOLUTION_BUDGET).unwrap().count(),
            3
        );
        let minimal: Vec<_> = enumerate_solutions(&mu, 0, Some(&[1, 2]), DEFAULT_SOLUTION_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(minimal.len(), 2);
        assert!(minimal.iter().all(|l| is_minimal_solution(&mu, l, 0).unwrap()));
    }

    #[test]
    fn policy_errors() {
        let mu = m(&[0, 2, 2]);
        assert!(matches!(
            minimal_solution(&mu, 0, &FreePlacement::Column(0)),
            Err(Error::Policy(_))
        ));
        assert!(matches!(
            minimal_solution(&mu, 0, &FreePlacement::PerRow(vec![9, 0, 9])),
            Err(Error::Policy(_))
        ));
        let l = minimal_solution(&mu, 0, &FreePlacement::PerRow(vec![9, 2, 9])).unwrap();
        assert_eq!(l.targets(), &[0, 2, 0]);
        let l = minimal_solution(&mu, 2, &FreePlacement::default()).unwrap();
        assert_eq!(l.targets(), &[2, 0, 2]);
    }

    #[test]
    fn order_examples() {
        let mu = m(&[0, 2, 2]);
        let l = minimal_solution(&mu, 0, &FreePlacement::default()).unwrap();
        assert!(leq_q(&l, &l, 0).unwrap());
        let sink = RowMonomialMatrix::sink(3, 0);
        assert!(leq_q(&l, &sink, 0).unwrap());
        assert!(!leq_q(&sink, &l, 0).unwrap());
    }

    #[test]
    fn solution_budget() {
        let mu = RowMonomialMatrix::sink(6, 0);
        assert!(matches!(
            enumerate_solutions(&mu, 0, None, 100),
            Err(Error::Capacity { value: 7776, .. })
        ));
    }

    #[test]
    fn enumeration_is_complete_for_three_states() {
        for mu in all_matrices(3) {
            let listed: Vec<_> = enumerate_solutions(&mu, 0, None, DEFAULT_SOLUTION_BUDGET)
                .unwrap()
                .collect();
            let brute: Vec<_> = all_matrices(3).filter(|l| is_solution(&mu, l, 0).unwrap()).collect();
            assert_eq!(listed, brute, "{}", mu.compact());
        }
    }
}
