//! Exact linear algebra over the space spanned by row monomial matrices.
//!
//! Matrices are embedded as row-major vectors of length `n^2`. All
//! elimination runs over arbitrary-precision integers (fraction-free) and
//! rationals appear only in results. There is no floating point here.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rowmon::RowMonomialMatrix;

/// Row-major 0/1 embedding of a matrix as exact rationals.
pub fn flatten(m: &RowMonomialMatrix) -> Vec<BigRational> {
    flatten_int(m).into_iter().map(BigRational::from_integer).collect()
}

pub(crate) fn flatten_int(m: &RowMonomialMatrix) -> Vec<BigInt> {
    let n = m.n();
    let mut v = vec![BigInt::zero(); n * n];
    for (i, &t) in m.targets().iter().enumerate() {
        v[i * n + t] = BigInt::one();
    }
    v
}

/// Dense `n x n` integer matrix of a row monomial matrix.
pub fn dense_rows(m: &RowMonomialMatrix) -> Vec<Vec<BigInt>> {
    let n = m.n();
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(m.entry(i, j) as u8)).collect())
        .collect()
}

/// Exact coefficients `λ_1..λ_k` of a linear combination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCoefficients {
    values: Vec<BigRational>,
}

impl RationalCoefficients {
    pub fn new(values: Vec<BigRational>) -> Self {
        Self { values }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(values: I) -> Self {
        Self {
            values: values
                .into_iter()
                .map(|v| BigRational::from_integer(v.into()))
                .collect(),
        }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// Values as `p/q` strings (`p` alone for integers).
    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for RationalCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for RationalCoefficients {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

/// `Σ λ_i M_i` as a dense `n x n` rational matrix.
pub fn evaluate(
    coeffs: &RationalCoefficients,
    set: &[RowMonomialMatrix],
) -> Result<Vec<Vec<BigRational>>> {
    if coeffs.len() != set.len() {
        return Err(Error::Domain(format!(
            "{} coefficients for {} matrices",
            coeffs.len(),
            set.len()
        )));
    }
    let n = common_size(set)?.unwrap_or(0);
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for (lambda, m) in coeffs.values.iter().zip(set) {
        for (i, &t) in m.targets().iter().enumerate() {
            out[i][t] += lambda;
        }
    }
    Ok(out)
}

fn common_size(set: &[RowMonomialMatrix]) -> Result<Option<usize>> {
    let Some(first) = set.first() else {
        return Ok(None);
    };
    for m in set {
        if m.n() != first.n() {
            return Err(Error::SizeMismatch {
                left: first.n(),
                right: m.n(),
            });
        }
    }
    Ok(Some(first.n()))
}

/// Incrementally maintained basis of a span of flattened matrices.
///
/// Stored rows are kept in insertion order with a pivot each; a stored row is
/// zero at the pivots of all earlier rows, so a single ordered sweep reduces a
/// candidate vector. Rows are integer vectors divided by their content.
#[derive(Clone, Debug)]
pub struct RationalBasis {
    ambient: usize,
    n: usize,
    members: Vec<RowMonomialMatrix>,
    echelon: Vec<(usize, Vec<BigInt>)>,
}

impl RationalBasis {
    /// Empty basis for `n x n` matrices (ambient dimension `n^2`).
    pub fn new(n: usize) -> Self {
        Self {
            ambient: n * n,
            n,
            members: Vec::new(),
            echelon: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.echelon.len()
    }

    /// The matrices that increased the dimension, in insertion order.
    pub fn members(&self) -> &[RowMonomialMatrix] {
        &self.members
    }

    /// Inserts `m`; returns whether it was outside the current span.
    pub fn insert(&mut self, m: &RowMonomialMatrix) -> Result<bool> {
        self.check_size(m)?;
        match self.reduce(flatten_int(m)) {
            Some(row) => {
                self.echelon.push(row);
                self.members.push(m.clone());
                Ok(true)
            }
            None => Ok(false),
        }
    }

    pub fn contains(&self, m: &RowMonomialMatrix) -> Result<bool> {
        self.check_size(m)?;
        Ok(self.reduce(flatten_int(m)).is_none())
    }

    /// Members as flattened integer vectors, in insertion order.
    pub fn to_vectors(&self) -> Vec<Vec<u8>> {
        self.members
            .iter()
            .map(|m| {
                let n = m.n();
                let mut v = vec![0u8; n * n];
                for (i, &t) in m.targets().iter().enumerate() {
                    v[i * n + t] = 1;
                }
                v
            })
            .collect()
    }

    fn check_size(&self, m: &RowMonomialMatrix) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: m.n(),
            });
        }
        Ok(())
    }

    /// Reduces `v` against the stored rows; returns the new row (with its
    /// pivot) if something nonzero remains.
    fn reduce(&self, mut v: Vec<BigInt>) -> Option<(usize, Vec<BigInt>)> {
        for (pivot, row) in &self.echelon {
            if v[*pivot].is_zero() {
                continue;
            }
            let g = row[*pivot].gcd(&v[*pivot]);
            let scale_v = &row[*pivot] / &g;
            let scale_row = &v[*pivot] / &g;
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x * &scale_v - r * &scale_row;
            }
            normalize(&mut v);
        }
        let pivot = v.iter().position(|x| !x.is_zero())?;
        if v[pivot].is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
        normalize(&mut v);
        Some((pivot, v))
    }
}

fn normalize(v: &mut [BigInt]) {
    let content = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !content.is_zero() && !content.is_one() {
        v.iter_mut().for_each(|x| *x = &*x / &content);
    }
}

/// Exact dimension of the span of `set`.
pub fn span_dimension(set: &[RowMonomialMatrix]) -> Result<usize> {
    let Some(n) = common_size(set)? else {
        return Ok(0);
    };
    let mut basis = RationalBasis::new(n);
    for m in set {
        basis.insert(m)?;
    }
    Ok(basis.dimension())
}

/// Fraction-free (Bareiss) forward elimination in place. Returns the pivot
/// column of every nonzero row, in row order.
fn bareiss_echelon(rows: &mut [Vec<BigInt>]) -> Vec<usize> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..width {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact rank of an integer matrix by Bareiss elimination.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut work = rows.to_vec();
    bareiss_echelon(&mut work).len()
}

/// Exact rank of a matrix viewed as an `n x n` matrix (not flattened).
pub fn matrix_rank(m: &RowMonomialMatrix) -> usize {
    integer_rank(&dense_rows(m))
}

/// Exact rank of the family `set` computed by Bareiss elimination on the
/// stacked flattened vectors. Independent of [`RationalBasis`].
pub fn family_rank(set: &[RowMonomialMatrix]) -> Result<usize> {
    common_size(set)?;
    let rows: Vec<Vec<BigInt>> = set.iter().map(flatten_int).collect();
    Ok(integer_rank(&rows))
}

/// Builds the `n^2 x k` system whose columns are the flattened members.
fn column_system(set: &[RowMonomialMatrix], n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::zero(); set.len()]; n * n];
    for (col, m) in set.iter().enumerate() {
        for (i, &t) in m.targets().iter().enumerate() {
            rows[i * n + t][col] = BigInt::one();
        }
    }
    rows
}

/// Back substitution on an echelon system with free variables set to zero.
/// `rhs` holds the right-hand side column for each row.
fn back_substitute(
    rows: &[Vec<BigInt>],
    pivots: &[usize],
    rhs: &[BigInt],
    unknowns: usize,
    mut solution: Vec<BigRational>,
) -> Vec<BigRational> {
    debug_assert_eq!(solution.len(), unknowns);
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = BigRational::from_integer(rhs[r].clone());
        for j in c + 1..unknowns {
            if !rows[r][j].is_zero() {
                acc -= BigRational::from_integer(rows[r][j].clone()) * &solution[j];
            }
        }
        solution[c] = acc / BigRational::from_integer(rows[r][c].clone());
    }
    solution
}

/// Solves `Σ λ_i M_i = M` exactly. Returns `None` when `M` is outside the
/// span; free variables of an underdetermined system are set to zero.
pub fn express(
    target: &RowMonomialMatrix,
    set: &[RowMonomialMatrix],
) -> Result<Option<RationalCoefficients>> {
    if let Some(n) = common_size(set)? {
        if n != target.n() {
            return Err(Error::SizeMismatch {
                left: target.n(),
                right: n,
            });
        }
    }
    let n = target.n();
    let k = set.len();
    let mut rows = column_system(set, n);
    for (row, b) in rows.iter_mut().zip(flatten_int(target)) {
        row.push(b);
    }
    let pivots = bareiss_echelon(&mut rows);
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let rhs: Vec<BigInt> = rows.iter().take(pivots.len()).map(|r| r[k].clone()).collect();
    let solution = back_substitute(&rows, &pivots, &rhs, k, vec![BigRational::zero(); k]);
    Ok(Some(RationalCoefficients::new(solution)))
}

/// A nontrivial `λ` with `Σ λ_i M_i = 0`, if the family is dependent. The
/// first free variable is set to one and the others to zero.
pub fn null_combination(set: &[RowMonomialMatrix]) -> Result<Option<RationalCoefficients>> {
    let Some(n) = common_size(set)? else {
        return Ok(None);
    };
    let k = set.len();
    let mut rows = column_system(set, n);
    let pivots = bareiss_echelon(&mut rows);
    let Some(free) = (0..k).find(|c| !pivots.contains(c)) else {
        return Ok(None);
    };
    let mut start = vec![BigRational::zero(); k];
    start[free] = BigRational::one();
    // Move the free column to the right-hand side.
    let rhs: Vec<BigInt> = rows.iter().take(pivots.len()).map(|r| -&r[free]).collect();
    let mut work = rows;
    for row in work.iter_mut() {
        row[free] = BigInt::zero();
    }
    let solution = back_substitute(&work, &pivots, &rhs, k, start);
    Ok(Some(RationalCoefficients::new(solution)))
}

/// Outcome of checking the sum conditions on a combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumVerdict {
    /// `Σ λ_i`.
    #[serde(serialize_with = "ser_rational")]
    pub coefficient_sum: BigRational,
    /// Per-row sums `S_j` of the combination.
    #[serde(serialize_with = "ser_rationals")]
    pub row_sums: Vec<BigRational>,
    /// 1 for a row monomial target, 0 for the zero matrix.
    pub expected: u8,
    /// Whether the combination evaluates to the target at all.
    pub reproduces_target: bool,
    pub violations: Vec<String>,
}

impl SumVerdict {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.to_string().serialize(s)
}

fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

/// Checks that a combination expressing a row monomial matrix has `Σλ = 1`
/// and every row sum 1, and that one expressing the zero matrix
/// (`target = None`) has `Σλ = 0` and every row sum 0.
pub fn check_sum_conditions(
    coeffs: &RationalCoefficients,
    set: &[RowMonomialMatrix],
    target: Option<&RowMonomialMatrix>,
) -> Result<SumVerdict> {
    let combination = evaluate(coeffs, set)?;
    let n = target.map(|t| t.n()).or_else(|| set.first().map(|m| m.n())).unwrap_or(0);
    if !combination.is_empty() && combination.len() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: combination.len(),
        });
    }
    let row_sums: Vec<BigRational> = if combination.is_empty() {
        vec![BigRational::zero(); n]
    } else {
        combination
            .iter()
            .map(|row| row.iter().fold(BigRational::zero(), |a, x| a + x))
            .collect()
    };
    let expected = if target.is_some() { 1u8 } else { 0u8 };
    let expected_value = BigRational::from_integer(expected.into());
    let reproduces_target = (0..n).all(|i| {
        (0..n).all(|j| {
            let want = match target {
                Some(t) if t.entry(i, j) => BigRational::one(),
                _ => BigRational::zero(),
            };
            combination.get(i).map_or(BigRational::zero(), |r| r[j].clone()) == want
        })
    });

    let coefficient_sum = coeffs.sum();
    let mut violations = Vec::new();
    if coefficient_sum != expected_value {
        violations.push(format!("Σλ = {coefficient_sum}, expected {expected}"));
    }
    for (j, s) in row_sums.iter().enumerate() {
        if *s != expected_value {
            violations.push(format!("row {j} sums to {s}, expected {expected}"));
        }
    }
    Ok(SumVerdict {
        coefficient_sum,
        row_sums,
        expected,
        reproduces_target,
        violations,
    })
}

/// The spanning family `V_{i,j}` (row `i` to column `j < k-1`, all other rows
/// to column `k-1`), listed with `i` outer and `j` inner, followed by `K`
/// (every row to column `k-1`). `n(k-1)+1` matrices in total.
pub fn vij_basis(n: usize, k: usize) -> Result<Vec<RowMonomialMatrix>> {
    if k < 2 || k > n {
        return Err(Error::Domain(format!("need 2 <= k <= n, got n = {n}, k = {k}")));
    }
    let last = k - 1;
    let mut out = Vec::with_capacity(n * last + 1);
    for i in 0..n {
        for j in 0..last {
            let mut targets = vec![last; n];
            targets[i] = j;
            out.push(RowMonomialMatrix::new(targets)?);
        }
    }
    out.push(RowMonomialMatrix::sink(n, last));
    Ok(out)
}

/// Coefficients of `T` over [`vij_basis`]: `1` on each `V_{i,j}` where `T`
/// has a unit at `(i, j)` with `j < k-1`, and `-(m-1)` on `K` where `m` is
/// the number of such units.
pub fn decompose_vij(t: &RowMonomialMatrix, k: usize) -> Result<RationalCoefficients> {
    let n = t.n();
    if k < 2 || k > n {
        return Err(Error::Domain(format!("need 2 <= k <= n, got n = {n}, k = {k}")));
    }
    if let Some(row) = (0..n).find(|&i| t.target(i) >= k) {
        return Err(Error::Domain(format!(
            "row {row} has its unit in column {}, outside the first {k} columns",
            t.target(row)
        )));
    }
    let last = k - 1;
    let mut values = vec![0i64; n * last + 1];
    let mut m = 0i64;
    for i in 0..n {
        let j = t.target(i);
        if j < last {
            values[i * last + j] = 1;
            m += 1;
        }
    }
    values[n * last] = 1 - m;
    Ok(RationalCoefficients::from_integers(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rowmon::{all_matrices, all_matrices_within};

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn flatten_examples() {
        let one = BigRational::one;
        let zero = BigRational::zero;
        assert_eq!(flatten(&RowMonomialMatrix::identity(2)), vec![one(), zero(), zero(), one()]);
        assert_eq!(flatten(&RowMonomialMatrix::sink(2, 0)), vec![one(), zero(), one(), zero()]);
    }

    #[test]
    fn basis_insertions() {
        let m = RowMonomialMatrix::new(vec![1, 2, 0]).unwrap();
        let mut basis = RationalBasis::new(3);
        assert!(basis.insert(&m).unwrap());
        assert_eq!(basis.dimension(), 1);
        assert!(!basis.insert(&m).unwrap());
        assert_eq!(basis.dimension(), 1);
        assert!(basis.insert(&RowMonomialMatrix::identity(2)).is_err());
    }

    #[test]
    fn span_of_all_three_by_three() {
        let all: Vec<_> = all_matrices(3).collect();
        assert_eq!(span_dimension(&all).unwrap(), 7);
        assert_eq!(family_rank(&all).unwrap(), 7);
    }

    #[test]
    fn express_trivial_cases() {
        let m = RowMonomialMatrix::new(vec![0, 0, 2]).unwrap();
        let c = express(&m, std::slice::from_ref(&m)).unwrap().unwrap();
        assert_eq!(c, RationalCoefficients::from_integers([1]));
        assert_eq!(express(&m, &[]).unwrap(), None);
    }

    #[test]
    fn express_with_negative_weight() {
        // [0,1] = [0,0] + [1,1] - [1,0]
        let set = vec![
            RowMonomialMatrix::new(vec![0, 0]).unwrap(),
            RowMonomialMatrix::new(vec![1, 1]).unwrap(),
            RowMonomialMatrix::new(vec![1, 0]).unwrap(),
        ];
        let target = RowMonomialMatrix::identity(2);
        let c = express(&target, &set).unwrap().unwrap();
        assert_eq!(c.values(), &[rat(1, 1), rat(1, 1), rat(-1, 1)]);
        let v = check_sum_conditions(&c, &set, Some(&target)).unwrap();
        assert!(v.reproduces_target && v.holds());
    }

    #[test]
    fn null_combination_of_repeated_matrix() {
        let m = RowMonomialMatrix::new(vec![2, 1, 1]).unwrap();
        let set = vec![m.clone(), m];
        let c = null_combination(&set).unwrap().unwrap();
        assert_eq!(c.values(), &[rat(-1, 1), rat(1, 1)]);
        let v = check_sum_conditions(&c, &set, None).unwrap();
        assert!(v.reproduces_target && v.holds());
        assert_eq!(v.coefficient_sum, BigRational::zero());
        assert_eq!(null_combination(&[RowMonomialMatrix::identity(3)]).unwrap(), None);
    }

    #[test]
    fn sum_conditions_trivial_cases() {
        let m = RowMonomialMatrix::new(vec![1, 1, 0]).unwrap();
        let v = check_sum_conditions(
            &RationalCoefficients::from_integers([1]),
            std::slice::from_ref(&m),
            Some(&m),
        )
        .unwrap();
        assert!(v.holds());
        assert!(v.row_sums.iter().all(|s| s.is_one()));

        let v = check_sum_conditions(
            &RationalCoefficients::from_integers([1, -1]),
            &[m.clone(), m.clone()],
            None,
        )
        .unwrap();
        assert!(v.holds());
        assert!(v.row_sums.iter().all(|s| s.is_zero()));

        // A combination that is not row monomial is reported as such.
        let v = check_sum_conditions(
            &RationalCoefficients::from_integers([2]),
            std::slice::from_ref(&m),
            Some(&m),
        )
        .unwrap();
        assert!(!v.reproduces_target);
        assert!(!v.holds());
    }

    #[test]
    fn vij_shapes() {
        let b = vij_basis(3, 2).unwrap();
        assert_eq!(b.len(), 4);
        assert_eq!(b[0].targets(), &[0, 1, 1]);
        assert_eq!(b[3].targets(), &[1, 1, 1]);
        assert_eq!(family_rank(&b).unwrap(), 4);
        assert_eq!(family_rank(&vij_basis(4, 3).unwrap()).unwrap(), 9);
        assert!(vij_basis(3, 1).is_err());
        assert!(vij_basis(3, 4).is_err());
    }

    #[test]
    fn decompose_special_members() {
        let basis = vij_basis(4, 3).unwrap();
        let k_coeffs = decompose_vij(&basis[8], 3).unwrap();
        assert_eq!(k_coeffs.values()[8], BigRational::one());
        assert_eq!(k_coeffs.sum(), BigRational::one());
        let v = decompose_vij(&basis[3], 3).unwrap();
        assert_eq!(v.values()[3], BigRational::one());
        assert_eq!(v.values()[8], BigRational::zero());
        let outside = RowMonomialMatrix::new(vec![3, 0, 0, 0]).unwrap();
        assert!(decompose_vij(&outside, 3).is_err());
    }

    #[test]
    fn decompose_reproduces_all_three_by_two() {
        let basis = vij_basis(3, 2).unwrap();
        for t in all_matrices_within(3, 2) {
            let c = decompose_vij(&t, 2).unwrap();
            let v = check_sum_conditions(&c, &basis, Some(&t)).unwrap();
            assert!(v.reproduces_target, "{}", t.compact());
            // The basis is independent, so elimination finds the same weights.
            assert_eq!(express(&t, &basis).unwrap().unwrap(), c);
        }
    }

    #[test]
    fn matrix_rank_equals_image_size() {
        for m in all_matrices(4) {
            assert_eq!(matrix_rank(&m), crate::rowmon::rank(&m));
        }
    }
}
