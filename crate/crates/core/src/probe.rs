//! Mechanical execution of the cell-allocation argument for reset words,
//! plus the prefix measurements it depends on.
//!
//! Nothing here assumes the argument is sound. Every step is computed on
//! the given automaton and reported as a verdict, and every claimed
//! independent family is re-checked by exact elimination.

use serde::Serialize;

use crate::automaton::{shortest_reset_word_with_limit, Dfa, Word, DEFAULT_EXACT_LIMIT};
use crate::equation::is_solution;
use crate::error::{Error, Result};
use crate::exactlin::{family_rank, RationalBasis};
use crate::matching::maximum_matching;
use crate::rowmon::{matrix_of_word, multiply, matrix_of_letter, nonzero_columns, RowMonomialMatrix};

/// `(n-1)^2`.
pub fn cerny_bound(n: usize) -> usize {
    (n.saturating_sub(1)).pow(2)
}

/// `(n^3 - n) / 6`, the classical cubic upper bound, used as a reference.
pub fn cubic_bound(n: usize) -> usize {
    (n * n * n - n) / 6
}

/// `n(n-1) + 1`, the largest dimension of a span of row monomial matrices.
pub fn span_bound(n: usize) -> usize {
    n * (n - 1) + 1
}

/// Number of cells available to the allocation: `n(n-2)`.
pub fn cell_count(n: usize) -> usize {
    n * n.saturating_sub(2)
}

/// Columns whose cells are handed out: every column except `q` and the last
/// column other than `q`. For `q = 0` these are `1..=n-2`; for other `q` it
/// is the same set after renumbering `q` to state `0`.
pub fn allocation_columns(n: usize, q: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let dropped = if q == n - 1 { 0 } else { n - 1 };
    (0..n).filter(|&c| c != q && c != dropped).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixRecord {
    pub length: usize,
    pub prefix: String,
    /// `|R(u_i)|`.
    pub image_size: usize,
    /// Dimension of the span of `M_{u_1}, ..., M_{u_i}`.
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixTrace {
    pub n: usize,
    pub records: Vec<PrefixRecord>,
}

impl PrefixTrace {
    /// Violations of the trace invariants: non-increasing image size,
    /// non-decreasing dimension bounded by `n(n-1)+1`.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let cap = span_bound(self.n);
        for pair in self.records.windows(2) {
            if pair[1].image_size > pair[0].image_size {
                out.push(format!("|R| grows at prefix length {}", pair[1].length));
            }
            if pair[1].dimension < pair[0].dimension {
                out.push(format!("dimension drops at prefix length {}", pair[1].length));
            }
        }
        for r in &self.records {
            if r.dimension > cap {
                out.push(format!("dimension {} exceeds {cap} at length {}", r.dimension, r.length));
            }
        }
        out
    }
}

fn require_reset(dfa: &Dfa, s: &Word) -> Result<usize> {
    dfa.reset_target(s)?
        .ok_or_else(|| Error::Domain(format!("word {} does not synchronize the automaton", s.render(dfa.k()))))
}

/// Records `|R(u_i)|` and the cumulative span dimension along the nonempty
/// prefixes of the reset word `s`.
pub fn prefix_trace(dfa: &Dfa, s: &Word) -> Result<PrefixTrace> {
    require_reset(dfa, s)?;
    let n = dfa.n();
    let mut basis = RationalBasis::new(n);
    let mut current = RowMonomialMatrix::identity(n);
    let mut records = Vec::with_capacity(s.len());
    for (i, &letter) in s.letters().iter().enumerate() {
        current = multiply(&current, &matrix_of_letter(dfa, letter)?)?;
        basis.insert(&current)?;
        records.push(PrefixRecord {
            length: i + 1,
            prefix: s.prefix(i + 1).render(dfa.k()),
            image_size: nonzero_columns(&current).len(),
            dimension: basis.dimension(),
        });
    }
    Ok(PrefixTrace { n, records })
}

/// Whether column `q` of `M_u` is nonzero, for one prefix `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnVerdict {
    pub length: usize,
    pub column_q_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixColumnReport {
    pub q: usize,
    pub verdicts: Vec<ColumnVerdict>,
    /// Prefix lengths whose matrix has column `q` empty.
    pub counterexamples: Vec<usize>,
}

/// For each nonempty prefix of `s`, whether its matrix has a unit in column
/// `q`, the nonzero column of `M_s`. The empty prefix is excluded.
pub fn check_prefix_column(dfa: &Dfa, s: &Word, q: usize) -> Result<PrefixColumnReport> {
    let target = require_reset(dfa, s)?;
    if target != q {
        return Err(Error::Domain(format!(
            "word {} resets to state {target}, not {q}",
            s.render(dfa.k())
        )));
    }
    let mut verdicts = Vec::with_capacity(s.len());
    for len in 1..=s.len() {
        let m = matrix_of_word(dfa, &s.prefix(len))?;
        verdicts.push(ColumnVerdict {
            length: len,
            column_q_nonzero: m.targets().contains(&q),
        });
    }
    let counterexamples = verdicts
        .iter()
        .filter(|v| !v.column_q_nonzero)
        .map(|v| v.length)
        .collect();
    Ok(PrefixColumnReport {
        q,
        verdicts,
        counterexamples,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    WithinBound,
    ExceedsBound,
    NotSynchronizing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub status: BoundStatus,
    pub n: usize,
    pub shortest_length: Option<usize>,
    pub cerny_bound: usize,
    pub cubic_bound: usize,
}

impl BoundVerdict {
    pub fn exceeds(&self) -> bool {
        self.status == BoundStatus::ExceedsBound
    }
}

/// Compares the exact shortest reset length with `(n-1)^2`. Exceeding it
/// would be a counterexample to the conjectured bound.
pub fn bound_check(dfa: &Dfa, limit: usize) -> Result<BoundVerdict> {
    let word = shortest_reset_word_with_limit(dfa, limit)?;
    Ok(bound_verdict(dfa.n(), word.as_ref().map(Word::len)))
}

pub fn bound_verdict(n: usize, shortest_length: Option<usize>) -> BoundVerdict {
    let bound = cerny_bound(n);
    let status = match shortest_length {
        None => BoundStatus::NotSynchronizing,
        Some(len) if len <= bound => BoundStatus::WithinBound,
        Some(_) => BoundStatus::ExceedsBound,
    };
    BoundVerdict {
        status,
        n,
        shortest_length,
        cerny_bound: bound,
        cubic_bound: cubic_bound(n),
    }
}

/// One prefix taking part in the allocation and the cell it received.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellAssignment {
    pub prefix_length: usize,
    pub image_size: usize,
    /// Rows of a solution that are not forced to column `q`.
    pub free_rows: Vec<usize>,
    /// `(row, column)` owned by this prefix's solution.
    pub cell: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    pub cell_count: usize,
    pub cell_columns: Vec<usize>,
    /// Assignments in processing order (largest `|R|` first).
    pub assignments: Vec<CellAssignment>,
    pub matched: usize,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepStatus {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepVerdict {
    pub step: &'static str,
    pub status: StepStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomatonId {
    pub n: usize,
    pub k: usize,
    pub transitions: Vec<Vec<usize>>,
    pub strongly_connected: bool,
}

impl AutomatonId {
    pub fn of(dfa: &Dfa) -> Self {
        Self {
            n: dfa.n(),
            k: dfa.k(),
            transitions: (0..dfa.k()).map(|a| dfa.letter_map(a).to_vec()).collect(),
            strongly_connected: crate::automaton::is_strongly_connected(dfa),
        }
    }
}

/// Findings of one probe run. Field names are stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub automaton: AutomatonId,
    pub reset_word: String,
    pub reset_length: usize,
    pub q: usize,
    pub prefix_trace: PrefixTrace,
    /// Nonempty prefixes with `|R(u_i)| > 1`.
    pub prefixes_with_rank_gt1: usize,
    pub matching: MatchingResult,
    /// The constructed solutions `L_i`, compact form, in assignment order.
    pub solutions: Vec<String>,
    pub solutions_verified: bool,
    /// Exact rank of `{L_i} ∪ {M_s}` when the matching is complete.
    pub independence_rank: Option<usize>,
    pub independence_expected: Option<usize>,
    pub prefix_column: PrefixColumnReport,
    pub bound_verdict: Option<BoundVerdict>,
    pub verdicts: Vec<StepVerdict>,
    pub notes: Vec<String>,
}

impl ProbeReport {
    /// Whether any finding is severe enough to flag the run.
    pub fn flagged(&self) -> bool {
        self.bound_verdict.as_ref().is_some_and(BoundVerdict::exceeds)
            || !self.solutions_verified
            || self.independence_rank != self.independence_expected
    }
}

/// Runs the cell-allocation procedure on the reset word `s`, which must
/// send every state to `q`.
///
/// The first `n(n-2)` prefixes with `|R(u_i)| > 1` compete for the cells
/// `(r, c)` with `c` in [`allocation_columns`]. Prefix `i` may own `(r, c)` iff
/// `r` is not in `R(u_i)`, i.e. row `r` is free in every solution of
/// `M_{u_i} L = M_s`. A maximum matching decides the assignment; prefixes
/// with larger `|R|` are tried first. On a complete matching each `L_i` gets
/// its own cell and sends every other row to `q`.
pub fn allocation_probe(dfa: &Dfa, s: &Word, q: usize) -> Result<ProbeReport> {
    let n = dfa.n();
    let prefix_column = check_prefix_column(dfa, s, q)?;
    let trace = prefix_trace(dfa, s)?;

    let prefixes_with_rank_gt1 = trace.records.iter().filter(|r| r.image_size > 1).count();
    let cells = cell_count(n);
    let mut considered: Vec<(usize, RowMonomialMatrix)> = Vec::new();
    for record in trace.records.iter().filter(|r| r.image_size > 1).take(cells) {
        considered.push((record.length, matrix_of_word(dfa, &s.prefix(record.length))?));
    }
    // larger images first, then shorter prefixes
    considered.sort_by_key(|(len, m)| (std::cmp::Reverse(nonzero_columns(m).len()), *len));

    let cell_columns = allocation_columns(n, q);
    let cell_index = |r: usize, c_pos: usize| r * cell_columns.len() + c_pos;
    let right_count = n * cell_columns.len();

    let mut adjacency = Vec::with_capacity(considered.len());
    let mut free_rows_of = Vec::with_capacity(considered.len());
    for (_, m) in &considered {
        let image = nonzero_columns(m);
        let free: Vec<usize> = (0..n).filter(|&r| !image.contains(r)).collect();
        let mut candidates = Vec::new();
        for &r in &free {
            for c_pos in 0..cell_columns.len() {
                candidates.push(cell_index(r, c_pos));
            }
        }
        adjacency.push(candidates);
        free_rows_of.push(free);
    }
    let partner = maximum_matching(&adjacency, right_count);
    let to_cell = |idx: usize| (idx / cell_columns.len(), cell_columns[idx % cell_columns.len()]);

    let assignments: Vec<CellAssignment> = considered
        .iter()
        .zip(&partner)
        .zip(free_rows_of)
        .map(|(((len, m), p), free_rows)| CellAssignment {
            prefix_length: *len,
            image_size: nonzero_columns(m).len(),
            free_rows,
            cell: p.map(to_cell),
        })
        .collect();
    let matched = assignments.iter().filter(|a| a.cell.is_some()).count();
    let complete = matched == assignments.len();
    let matching = MatchingResult {
        cell_count: right_count,
        cell_columns: cell_columns.clone(),
        assignments,
        matched,
        complete,
    };

    let mut solutions = Vec::new();
    let mut solutions_verified = true;
    let mut independence_rank = None;
    let mut independence_expected = None;
    if complete {
        let mut family = Vec::with_capacity(considered.len() + 1);
        for ((_, m_u), a) in considered.iter().zip(&matching.assignments) {
            let (r, c) = a.cell.expect("complete matching");
            let mut targets = vec![q; n];
            targets[r] = c;
            let l = RowMonomialMatrix::new(targets)?;
            solutions_verified &= is_solution(m_u, &l, q)?;
            solutions.push(l.compact());
            family.push(l);
        }
        family.push(RowMonomialMatrix::sink(n, q));
        independence_rank = Some(family_rank(&family)?);
        independence_expected = Some(family.len());
    }

    let mut verdicts = vec![
        StepVerdict {
            step: "prefix-count",
            status: if prefixes_with_rank_gt1 <= cells {
                StepStatus::Holds
            } else {
                StepStatus::Fails
            },
            detail: format!("{prefixes_with_rank_gt1} prefixes with |R| > 1 against {cells} cells"),
        },
        StepVerdict {
            step: "matching",
            status: if complete { StepStatus::Holds } else { StepStatus::Fails },
            detail: format!("{matched} of {} prefixes received a cell", matching.assignments.len()),
        },
    ];
    verdicts.push(if complete {
        StepVerdict {
            step: "solutions",
            status: if solutions_verified { StepStatus::Holds } else { StepStatus::Fails },
            detail: format!("{} constructed solutions checked", solutions.len()),
        }
    } else {
        not_applicable("solutions")
    });
    verdicts.push(match (independence_rank, independence_expected) {
        (Some(rank), Some(expected)) => StepVerdict {
            step: "independence",
            status: if rank == expected { StepStatus::Holds } else { StepStatus::Fails },
            detail: format!("exact rank {rank} of {expected} matrices"),
        },
        _ => not_applicable("independence"),
    });
    verdicts.push(StepVerdict {
        step: "prefix-column",
        status: if prefix_column.counterexamples.is_empty() {
            StepStatus::Holds
        } else {
            StepStatus::Fails
        },
        detail: format!(
            "{} of {} prefixes miss column {q}",
            prefix_column.counterexamples.len(),
            prefix_column.verdicts.len()
        ),
    });

    let chain = trace.records.last().map_or(0, |r| r.dimension);
    let notes = vec![
        "the empty prefix is excluded from traces and column checks".to_string(),
        format!(
            "subspace chain counts nonzero dimensions only: final dimension {chain} of at most {}",
            span_bound(n)
        ),
    ];

    Ok(ProbeReport {
        automaton: AutomatonId::of(dfa),
        reset_word: s.render(dfa.k()),
        reset_length: s.len(),
        q,
        prefix_trace: trace,
        prefixes_with_rank_gt1,
        matching,
        solutions,
        solutions_verified,
        independence_rank,
        independence_expected,
        prefix_column,
        bound_verdict: None,
        verdicts,
        notes,
    })
}

fn not_applicable(step: &'static str) -> StepVerdict {
    StepVerdict {
        step,
        status: StepStatus::NotApplicable,
        detail: "matching incomplete".into(),
    }
}

/// Options for [`probe`].
#[derive(Clone, Debug)]
pub struct ProbeOptions {
    /// Reset word to analyse; the exact shortest one when `None`.
    pub word: Option<Word>,
    /// Target state; the state the word resets to when `None`.
    pub q: Option<usize>,
    pub exact_limit: usize,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self {
            word: None,
            q: None,
            exact_limit: DEFAULT_EXACT_LIMIT,
        }
    }
}

/// Full probe: allocation, prefix-column check and bound check. Returns
/// `Ok(None)` when the automaton is not synchronizing and no word is given.
pub fn probe(dfa: &Dfa, options: &ProbeOptions) -> Result<Option<ProbeReport>> {
    let shortest = shortest_reset_word_with_limit(dfa, options.exact_limit)?;
    let word = match (&options.word, &shortest) {
        (Some(w), _) => w.clone(),
        (None, Some(w)) => w.clone(),
        (None, None) => return Ok(None),
    };
    let target = require_reset(dfa, &word)?;
    let q = options.q.unwrap_or(target);
    if q != target {
        return Err(Error::Domain(format!(
            "word {} resets to state {target}, not {q}",
            word.render(dfa.k())
        )));
    }
    let mut report = allocation_probe(dfa, &word, q)?;
    let verdict = bound_verdict(dfa.n(), shortest.as_ref().map(Word::len));
    report.verdicts.push(StepVerdict {
        step: "bound",
        status: if verdict.exceeds() { StepStatus::Fails } else { StepStatus::Holds },
        detail: format!(
            "shortest length {} against (n-1)^2 = {}",
            verdict.shortest_length.map_or("-".into(), |l| l.to_string()),
            verdict.cerny_bound
        ),
    });
    report.bound_verdict = Some(verdict);
    Ok(Some(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{cerny_automaton, shortest_reset_word};

    #[test]
    fn trace_of_cerny_three() {
        let c3 = cerny_automaton(3).unwrap();
        let s = shortest_reset_word(&c3).unwrap().unwrap();
        let trace = prefix_trace(&c3, &s).unwrap();
        assert_eq!(trace.records.len(), 4);
        assert_eq!(trace.records.last().unwrap().image_size, 1);
        assert!(trace.violations().is_empty());
    }

    #[test]
    fn trace_rejects_non_reset_word() {
        let c3 = cerny_automaton(3).unwrap();
        assert!(matches!(prefix_trace(&c3, &Word::new(vec![0, 1])), Err(Error::Domain(_))));
    }

    #[test]
    fn single_letter_reset() {
        let dfa = Dfa::new(vec![vec![0, 0, 0], vec![1, 2, 0]]).unwrap();
        let s = Word::new(vec![0]);
        let trace = prefix_trace(&dfa, &s).unwrap();
        assert_eq!(trace.records.len(), 1);
        assert_eq!(trace.records[0].image_size, 1);
        assert_eq!(trace.records[0].dimension, 1);
        let report = allocation_probe(&dfa, &s, 0).unwrap();
        assert_eq!(report.prefixes_with_rank_gt1, 0);
        assert!(report.matching.complete);
        assert_eq!(report.independence_rank, Some(1));
    }

    #[test]
    fn cerny_four_probe_is_consistent() {
        let c4 = cerny_automaton(4).unwrap();
        let report = probe(&c4, &ProbeOptions::default()).unwrap().unwrap();
        assert_eq!(report.reset_length, 9);
        assert_eq!(report.prefixes_with_rank_gt1, 8);
        assert_eq!(report.matching.cell_count, 8);
        assert!(report.solutions_verified);
        assert_eq!(report.independence_rank, report.independence_expected);
        assert_eq!(report.bound_verdict.as_ref().unwrap().status, BoundStatus::WithinBound);
        assert!(report.prefix_column.verdicts.last().unwrap().column_q_nonzero);
    }

    #[test]
    fn mismatched_target_is_rejected() {
        let c3 = cerny_automaton(3).unwrap();
        let s = shortest_reset_word(&c3).unwrap().unwrap();
        let target = c3.reset_target(&s).unwrap().unwrap();
        let other = (target + 1) % 3;
        assert!(allocation_probe(&c3, &s, other).is_err());
    }

    #[test]
    fn bound_constants() {
        assert_eq!(cerny_bound(4), 9);
        assert_eq!(cubic_bound(4), 10);
        assert_eq!(span_bound(3), 7);
        assert_eq!(cell_count(3), 3);
        assert_eq!(cell_count(2), 0);
        assert_eq!(allocation_columns(4, 0), vec![1, 2]);
        assert_eq!(allocation_columns(4, 1), vec![0, 2]);
        assert_eq!(allocation_columns(4, 3), vec![1, 2]);
        assert!(allocation_columns(2, 1).is_empty());
    }
}
