//! Property suites over exhaustive and random instances.
//!
//! Each suite returns a [`SuiteReport`] with the number of checked cases, the
//! number of violations and a few example failures. Random instances are
//! drawn from a ChaCha stream per case index, so reports are identical for a
//! given seed whichever batch driver runs them.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::automaton::generate::random_dfa_with;
use crate::automaton::{
    cerny_automaton, dfa_at_index, is_synchronizing, shortest_reset_word_with_limit, table_count,
    Dfa, Word,
};
use crate::batch::{map_range_with, Mode};
use crate::equation::{
    enumerate_solutions, is_minimal_solution, is_solution, leq_q, minimal_solution, FreePlacement,
    DEFAULT_SOLUTION_BUDGET,
};
use crate::error::{Error, Result};
use crate::exactlin::{
    check_sum_conditions, decompose_vij, evaluate, express, family_rank, matrix_rank,
    null_combination, span_dimension, vij_basis, RationalCoefficients,
};
use crate::probe::{self, cerny_bound, span_bound, BoundStatus, ProbeOptions};
use crate::rowmon::{
    all_matrices, all_matrices_within, is_permutation, matrix_of_letter, matrix_of_word, multiply,
    nonzero_columns, rank, RowMonomialMatrix,
};

const MAX_RECORDED_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Measurement {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub violations: usize,
    pub failures: Vec<String>,
    pub measurements: Vec<Measurement>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            violations: 0,
            failures: Vec::new(),
            measurements: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn absorb(&mut self, outcome: CaseOutcome) {
        self.cases += 1;
        self.violations += outcome.failures.len();
        for f in outcome.failures {
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(f);
            }
        }
    }

    fn measure(&mut self, key: impl Into<String>, value: impl ToString) {
        self.measurements.push(Measurement {
            key: key.into(),
            value: value.to_string(),
        });
    }

    pub fn measurement(&self, key: &str) -> Option<&str> {
        self.measurements
            .iter()
            .find(|m| m.key == key)
            .map(|m| m.value.as_str())
    }
}

#[derive(Default)]
struct CaseOutcome {
    failures: Vec<String>,
    tags: Vec<&'static str>,
}

impl CaseOutcome {
    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(message());
        }
    }
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn random_word<R: Rng>(rng: &mut R, k: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(0..k)).collect())
}

fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> RowMonomialMatrix {
    RowMonomialMatrix::new((0..n).map(|_| rng.gen_range(0..n)).collect()).expect("valid targets")
}

fn count_tag(outcomes: &[CaseOutcome], tag: &str) -> usize {
    outcomes.iter().filter(|o| o.tags.contains(&tag)).count()
}

/// Rank and image properties of word matrices over random
/// `(automaton, word, letter)` triples. In about a third of the cases the
/// letter is replaced by a random permutation so the invertible clauses are
/// exercised.
pub fn image_suite(cases: usize, seed: u64, mode: Mode) -> SuiteReport {
    let outcomes = map_range_with(mode, cases, |case| {
        let mut rng = case_rng(seed, case);
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=3);
        let mut dfa = random_dfa_with(n, k, &mut rng).expect("valid sizes");
        let letter = rng.gen_range(0..k);
        if rng.gen_bool(1.0 / 3.0) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut table = dfa.table().to_vec();
            table[letter * n..(letter + 1) * n].copy_from_slice(&perm);
            dfa = Dfa::from_table(n, k, table).expect("permutation is a valid row");
        }
        let u = random_word(&mut rng, k, 12);
        image_case(&dfa, &u, letter)
    });
    let mut report = SuiteReport::new("image");
    report.measure("permutation_cases", count_tag(&outcomes, "perm"));
    for o in outcomes {
        report.absorb(o);
    }
    report
}

fn image_case(dfa: &Dfa, u: &Word, letter: usize) -> CaseOutcome {
    let mut out = CaseOutcome::default();
    let ctx = || format!("table {:?}, u = {}, a = {letter}", dfa.table(), u.render(dfa.k()));
    let mu = matrix_of_word(dfa, u).expect("valid word");
    let ma = matrix_of_letter(dfa, letter).expect("valid letter");
    let mua = multiply(&mu, &ma).expect("same size");
    let mau = multiply(&ma, &mu).expect("same size");
    let (ru, rua, rau, ra) = (
        nonzero_columns(&mu),
        nonzero_columns(&mua),
        nonzero_columns(&mau),
        nonzero_columns(&ma),
    );

    out.check(rank(&mu) == ru.len(), || format!("rank != |R(u)|: {}", ctx()));
    out.check(matrix_rank(&mu) == ru.len(), || format!("exact rank != |R(u)|: {}", ctx()));
    out.check(rua.len() <= ru.len(), || format!("|R(ua)| > |R(u)|: {}", ctx()));
    out.check(rau.is_subset(&ru), || format!("R(au) not in R(u): {}", ctx()));
    out.check(rua.is_subset(&ra), || format!("R(ua) not in R(a): {}", ctx()));

    // columns of M_u M_a are sums of relocated columns of M_u
    for j in 0..dfa.n() {
        let merged: Vec<usize> = (0..dfa.n())
            .filter(|&i| ma.target(mu.target(i)) == j)
            .collect();
        out.check(merged == mua.rows_in_column(j), || {
            format!("column {j} of M_uM_a is not a merge of columns of M_u: {}", ctx())
        });
    }

    if is_permutation(&ma) {
        out.tags.push("perm");
        out.check(rua.len() == ru.len(), || format!("permutation changed |R(ua)|: {}", ctx()));
        out.check(rau == ru, || format!("permutation changed R(au): {}", ctx()));
        out.check(mau.column_counts() == mu.column_counts(), || {
            format!("permutation changed column counts: {}", ctx())
        });
        let image: crate::rowmon::ColumnSet = ru.members().iter().map(|&c| ma.target(c)).collect();
        out.check(image == rua, || format!("R(ua) is not the permuted R(u): {}", ctx()));
    }
    out
}

/// Sum conditions on exact linear combinations of row monomial matrices.
///
/// Each case draws a family larger than the span bound, expresses a random
/// member of its span (nonzero target), finds a vanishing combination (zero
/// target), and checks that an integer combination with `Σλ ∉ {0, 1}` does not
/// evaluate to a row monomial matrix.
pub fn sum_suite(cases: usize, seed: u64, mode: Mode) -> SuiteReport {
    let outcomes = map_range_with(mode, cases, |case| {
        let mut rng = case_rng(seed, case);
        let n = rng.gen_range(2..=5);
        let size = span_bound(n) + rng.gen_range(1..=4);
        let set: Vec<RowMonomialMatrix> = (0..size).map(|_| random_matrix(&mut rng, n)).collect();
        sum_case(&mut rng, n, &set)
    });
    let mut report = SuiteReport::new("sum");
    report.measure("member_fallbacks", count_tag(&outcomes, "fallback"));
    report.measure("zero_instances", count_tag(&outcomes, "zero"));
    report.measure("off_sum_combinations", count_tag(&outcomes, "off-sum"));
    for o in outcomes {
        report.absorb(o);
    }
    report
}

fn sum_case<R: Rng>(rng: &mut R, n: usize, set: &[RowMonomialMatrix]) -> CaseOutcome {
    let mut out = CaseOutcome::default();
    let compact = || set.iter().map(|m| m.compact()).collect::<Vec<_>>().join(" ");

    let mut solved = None;
    for _ in 0..20 {
        let target = random_matrix(rng, n);
        if let Some(c) = express(&target, set).expect("same size") {
            solved = Some((target, c));
            break;
        }
    }
    let (target, coeffs) = match solved {
        Some(found) => found,
        None => {
            out.tags.push("fallback");
            let target = set[rng.gen_range(0..set.len())].clone();
            let c = express(&target, set).expect("same size").expect("member is in span");
            (target, c)
        }
    };
    let verdict = check_sum_conditions(&coeffs, set, Some(&target)).expect("sizes agree");
    out.check(verdict.reproduces_target, || {
        format!("express residual nonzero for {} over {}", target.compact(), compact())
    });
    for v in verdict.violations {
        out.failures.push(format!("{v} for {} over {}", target.compact(), compact()));
    }

    if let Some(zero) = null_combination(set).expect("same size") {
        out.tags.push("zero");
        let verdict = check_sum_conditions(&zero, set, None).expect("sizes agree");
        out.check(verdict.reproduces_target, || {
            format!("null combination {zero} does not vanish over {}", compact())
        });
        for v in verdict.violations {
            out.failures.push(format!("zero target: {v} over {}", compact()));
        }
    } else {
        out.failures.push(format!("family larger than the span bound is independent: {}", compact()));
    }

    let lambdas: Vec<i64> = set.iter().map(|_| rng.gen_range(-3..=3)).collect();
    let sum: i64 = lambdas.iter().sum();
    if sum != 0 && sum != 1 {
        out.tags.push("off-sum");
        let c = RationalCoefficients::from_integers(lambdas);
        let combo = evaluate(&c, set).expect("sizes agree");
        let monomial = combo.iter().all(|row| {
            row.iter().filter(|x| x.is_one()).count() == 1
                && row.iter().all(|x| x.is_zero() || x.is_one())
        });
        out.check(!monomial, || format!("combination {c} with Σλ = {sum} is row monomial"));
    }
    out
}

/// The spanning family `V_{i,j}, K` for all `2 <= k <= n <= max_n`: exact
/// rank, leave-one-out independence, and exact decomposition of `n x k`
/// matrices (exhaustive for `n <= 4`, `samples` random ones above). Also the
/// dimension of the span of all `n x n` row monomial matrices for
/// `n <= min(max_n, 5)`.
pub fn spanning_suite(max_n: usize, samples: usize, seed: u64, mode: Mode) -> SuiteReport {
    let shapes: Vec<(usize, usize)> = (2..=max_n).flat_map(|n| (2..=n).map(move |k| (n, k))).collect();
    let outcomes = map_range_with(mode, shapes.len(), |idx| {
        let (n, k) = shapes[idx];
        spanning_shape(n, k, samples, seed)
    });
    let mut report = SuiteReport::new("spanning");
    let decomposed: usize = outcomes.iter().map(|(_, d)| *d).sum();
    report.measure("shapes", shapes.len());
    report.measure("decompositions", decomposed);
    for (o, _) in outcomes {
        report.absorb(o);
    }

    for n in 2..=max_n.min(5) {
        let all: Vec<RowMonomialMatrix> = all_matrices(n).collect();
        let dim = span_dimension(&all).expect("same size");
        report.measure(format!("span_all_n{n}"), dim);
        let mut o = CaseOutcome::default();
        o.check(dim == span_bound(n), || {
            format!("span of all {n}x{n} matrices has dimension {dim}, expected {}", span_bound(n))
        });
        report.absorb(o);
    }

    // Two readings of the single-common-column clause, measured only.
    for n in 2..=max_n.min(5) {
        let rank_one: Vec<RowMonomialMatrix> = (0..n).map(|q| RowMonomialMatrix::sink(n, q)).collect();
        report.measure(
            format!("rank_one_span_n{n}"),
            span_dimension(&rank_one).expect("same size"),
        );
        let sharing: Vec<RowMonomialMatrix> = all_matrices(n).filter(|m| m.targets().contains(&0)).collect();
        report.measure(
            format!("column0_nonzero_span_n{n}"),
            span_dimension(&sharing).expect("same size"),
        );
    }
    report
}

fn spanning_shape(n: usize, k: usize, samples: usize, seed: u64) -> (CaseOutcome, usize) {
    let mut out = CaseOutcome::default();
    let basis = vij_basis(n, k).expect("2 <= k <= n");
    let expected = n * (k - 1) + 1;
    out.check(basis.len() == expected, || format!("n={n} k={k}: {} members", basis.len()));
    let full = family_rank(&basis).expect("same size");
    out.check(full == expected, || format!("n={n} k={k}: rank {full}, expected {expected}"));
    out.check(span_dimension(&basis).expect("same size") == expected, || {
        format!("n={n} k={k}: incremental dimension differs from {expected}")
    });
    if k == n - 1 {
        out.check(expected == cerny_bound(n), || format!("n={n}: n(n-2)+1 != (n-1)^2"));
    }
    for skip in 0..basis.len() {
        let rest: Vec<RowMonomialMatrix> = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, m)| m.clone())
            .collect();
        let r = family_rank(&rest).expect("same size");
        out.check(r + 1 == full, || format!("n={n} k={k}: dropping member {skip} leaves rank {r}"));
    }

    let exhaustive = n <= 4;
    let targets: Vec<RowMonomialMatrix> = if exhaustive {
        all_matrices_within(n, k).collect()
    } else {
        let mut rng = case_rng(seed, n * 100 + k);
        (0..samples)
            .map(|_| RowMonomialMatrix::new((0..n).map(|_| rng.gen_range(0..k)).collect()).unwrap())
            .collect()
    };
    for t in &targets {
        let c = decompose_vij(t, k).expect("units within the first k columns");
        let v = check_sum_conditions(&c, &basis, Some(t)).expect("sizes agree");
        out.check(v.reproduces_target, || format!("n={n} k={k}: decomposition of {} fails", t.compact()));
        out.check(v.holds(), || format!("n={n} k={k}: sum conditions fail for {}", t.compact()));
        if exhaustive {
            let e = express(t, &basis).expect("same size");
            out.check(e.as_ref() == Some(&c), || {
                format!("n={n} k={k}: elimination disagrees with decomposition of {}", t.compact())
            });
        }
    }
    (out, targets.len())
}

/// Solutions of `M_u L = M_s` with `q = 0`: exhaustive over all `M_u` for
/// `n = 3` (with a brute-force solution oracle), `samples` random `M_u` for
/// each of `n = 4, 5`.
pub fn equation_suite(samples: usize, seed: u64, mode: Mode) -> SuiteReport {
    let mut instances: Vec<RowMonomialMatrix> = all_matrices(3).collect();
    let exhaustive = instances.len();
    for n in [4usize, 5] {
        let mut rng = case_rng(seed, n);
        instances.extend((0..samples).map(|_| random_matrix(&mut rng, n)));
    }
    let outcomes = map_range_with(mode, instances.len(), |i| {
        equation_case(&instances[i], 0, i < exhaustive)
    });
    let mut report = SuiteReport::new("equation");
    report.measure("exhaustive_instances", exhaustive);
    report.measure("random_instances", instances.len() - exhaustive);
    for o in outcomes {
        report.absorb(o);
    }
    report
}

fn equation_case(mu: &RowMonomialMatrix, q: usize, brute_force: bool) -> CaseOutcome {
    let mut out = CaseOutcome::default();
    let n = mu.n();
    let image = nonzero_columns(mu).len();
    let free = (n - image) as u32;
    let sink = RowMonomialMatrix::sink(n, q);
    let solutions: Vec<RowMonomialMatrix> = enumerate_solutions(mu, q, None, DEFAULT_SOLUTION_BUDGET)
        .expect("within budget")
        .collect();
    let tag = mu.compact();

    out.check(solutions.len() == n.pow(free), || {
        format!("{tag}: {} solutions, expected {}", solutions.len(), n.pow(free))
    });
    for l in &solutions {
        out.check(multiply(mu, l).expect("same size") == sink, || {
            format!("{tag}: {} does not give the sink matrix", l.compact())
        });
    }
    let minimal: Vec<&RowMonomialMatrix> = solutions
        .iter()
        .filter(|l| l.rows_in_column(q).len() == image)
        .collect();
    out.check(minimal.len() == (n - 1).pow(free), || {
        format!("{tag}: {} minimal solutions, expected {}", minimal.len(), (n - 1).pow(free))
    });
    for l in &minimal {
        for other in &solutions {
            out.check(leq_q(l, other, q).expect("same size"), || {
                format!("{tag}: minimal {} is not below {}", l.compact(), other.compact())
            });
        }
    }
    let avoiding: Vec<usize> = (0..n).filter(|&c| c != q).collect();
    let restricted: Vec<RowMonomialMatrix> = enumerate_solutions(mu, q, Some(&avoiding), DEFAULT_SOLUTION_BUDGET)
        .expect("within budget")
        .collect();
    out.check(restricted.iter().eq(minimal.iter().copied()), || {
        format!("{tag}: restricted enumeration differs from the minimal solutions")
    });
    let chosen = minimal_solution(mu, q, &FreePlacement::default()).expect("default policy");
    out.check(is_minimal_solution(mu, &chosen, q).expect("same size"), || {
        format!("{tag}: default minimal solution {} is not minimal", chosen.compact())
    });
    if brute_force {
        let oracle: Vec<RowMonomialMatrix> = all_matrices(n)
            .filter(|l| multiply(mu, l).expect("same size") == sink)
            .collect();
        out.check(oracle == solutions, || format!("{tag}: enumeration is incomplete"));
        for l in &oracle {
            out.check(is_solution(mu, l, q).expect("same size"), || {
                format!("{tag}: is_solution rejects {}", l.compact())
            });
        }
    }
    out
}

/// Random synchronizing automaton for trace runs: `n` in `2..=max_n`, two
/// letters, redrawn until synchronizing.
fn random_synchronizing<R: Rng>(rng: &mut R, max_n: usize) -> Dfa {
    loop {
        let n = rng.gen_range(2..=max_n);
        let dfa = random_dfa_with(n, 2, rng).expect("valid sizes");
        if is_synchronizing(&dfa) {
            return dfa;
        }
    }
}

/// Prefix-trace invariants along shortest reset words of random
/// synchronizing automata.
pub fn trace_suite(cases: usize, max_n: usize, seed: u64, mode: Mode) -> SuiteReport {
    let outcomes = map_range_with(mode, cases, |case| {
        let mut rng = case_rng(seed, case);
        let dfa = random_synchronizing(&mut rng, max_n);
        let s = shortest_reset_word_with_limit(&dfa, max_n)
            .expect("within limit")
            .expect("synchronizing");
        let mut out = CaseOutcome::default();
        let trace = probe::prefix_trace(&dfa, &s).expect("reset word");
        out.check(trace.records.len() == s.len(), || "trace length differs from word".into());
        for v in trace.violations() {
            out.failures.push(format!("table {:?}: {v}", dfa.table()));
        }
        out
    });
    let mut report = SuiteReport::new("prefix-trace");
    for o in outcomes {
        report.absorb(o);
    }
    report
}

/// Aggregate of exact shortest reset lengths over every table of a size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSummary {
    pub n: usize,
    pub k: usize,
    pub tables: u128,
    pub synchronizing: usize,
    pub max_length: Option<usize>,
    pub attaining_max: usize,
    /// `histogram[len]` counts synchronizing tables with shortest length `len`.
    pub histogram: Vec<usize>,
    pub exceeding: usize,
    pub first_exceeding: Option<Vec<usize>>,
    pub cerny_bound: usize,
}

/// Exact shortest reset length of every `n`-state `k`-letter table.
pub fn exhaustive_bound(n: usize, k: usize, budget: u128, limit: usize, mode: Mode) -> Result<BoundSummary> {
    let total = table_count(n, k).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::Capacity {
            parameter: "n^(n*k) tables",
            value: total,
            limit: budget,
            hint: "raise the enumeration budget or reduce n and k",
        });
    }
    if n > limit {
        return Err(Error::Capacity {
            parameter: "n",
            value: n as u128,
            limit: limit as u128,
            hint: "raise the exact-search limit",
        });
    }
    let lengths = map_range_with(mode, total as usize, |i| {
        let dfa = dfa_at_index(n, k, i as u128).expect("index in range");
        shortest_reset_word_with_limit(&dfa, limit)
            .expect("within limit")
            .map(|w| w.len())
    });
    let bound = cerny_bound(n);
    let mut summary = BoundSummary {
        n,
        k,
        tables: total,
        synchronizing: 0,
        max_length: None,
        attaining_max: 0,
        histogram: Vec::new(),
        exceeding: 0,
        first_exceeding: None,
        cerny_bound: bound,
    };
    for (i, len) in lengths.iter().enumerate() {
        let Some(len) = *len else { continue };
        summary.synchronizing += 1;
        if summary.histogram.len() <= len {
            summary.histogram.resize(len + 1, 0);
        }
        summary.histogram[len] += 1;
        if len > bound {
            summary.exceeding += 1;
            if summary.first_exceeding.is_none() {
                summary.first_exceeding = Some(dfa_at_index(n, k, i as u128)?.table().to_vec());
            }
        }
    }
    summary.max_length = summary.histogram.len().checked_sub(1);
    summary.attaining_max = summary.histogram.last().copied().unwrap_or(0);
    Ok(summary)
}

/// Shortest reset lengths of the Černý automata for each `n` in `sizes`.
pub fn cerny_series(sizes: &[usize], limit: usize) -> Result<Vec<(usize, usize)>> {
    sizes
        .iter()
        .map(|&n| {
            let dfa = cerny_automaton(n)?;
            let w = shortest_reset_word_with_limit(&dfa, limit)?
                .ok_or_else(|| Error::Domain(format!("C_{n} is not synchronizing")))?;
            Ok((n, w.len()))
        })
        .collect()
}

/// Aggregate of the allocation probe over many automata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeSummary {
    pub automata: usize,
    pub complete_matchings: usize,
    pub incomplete_matchings: usize,
    pub unverified_solutions: usize,
    pub rank_mismatches: usize,
    pub prefix_column_counterexample_automata: usize,
    pub prefix_column_counterexample_prefixes: usize,
    pub prefix_count_over_cells: usize,
    pub exceeding_bound: usize,
    /// Table of the first automaton with an incomplete matching.
    pub first_incomplete: Option<Vec<usize>>,
    pub first_prefix_column_counterexample: Option<Vec<usize>>,
}

/// Runs the full probe on every automaton in `automata` (non-synchronizing
/// ones are skipped) and aggregates in input order.
pub fn probe_batch(automata: &[Dfa], limit: usize, mode: Mode) -> Result<ProbeSummary> {
    let options = ProbeOptions {
        exact_limit: limit,
        ..ProbeOptions::default()
    };
    let reports = map_range_with(mode, automata.len(), |i| probe::probe(&automata[i], &options));
    let mut s = ProbeSummary {
        automata: 0,
        complete_matchings: 0,
        incomplete_matchings: 0,
        unverified_solutions: 0,
        rank_mismatches: 0,
        prefix_column_counterexample_automata: 0,
        prefix_column_counterexample_prefixes: 0,
        prefix_count_over_cells: 0,
        exceeding_bound: 0,
        first_incomplete: None,
        first_prefix_column_counterexample: None,
    };
    for (dfa, report) in automata.iter().zip(reports) {
        let Some(r) = report? else { continue };
        s.automata += 1;
        if r.matching.complete {
            s.complete_matchings += 1;
        } else {
            s.incomplete_matchings += 1;
            s.first_incomplete.get_or_insert_with(|| dfa.table().to_vec());
        }
        if !r.solutions_verified {
            s.unverified_solutions += 1;
        }
        if r.independence_rank != r.independence_expected {
            s.rank_mismatches += 1;
        }
        let misses = r.prefix_column.counterexamples.len();
        if misses > 0 {
            s.prefix_column_counterexample_automata += 1;
            s.prefix_column_counterexample_prefixes += misses;
            s.first_prefix_column_counterexample
                .get_or_insert_with(|| dfa.table().to_vec());
        }
        if r.prefixes_with_rank_gt1 > probe::cell_count(dfa.n()) {
            s.prefix_count_over_cells += 1;
        }
        if r.bound_verdict.as_ref().map(|b| b.status) == Some(BoundStatus::ExceedsBound) {
            s.exceeding_bound += 1;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass_and_are_mode_independent() {
        let a = image_suite(200, 3, Mode::Auto);
        let b = image_suite(200, 3, Mode::Sequential);
        assert!(a.passed(), "{:?}", a.failures);
        assert_eq!(a, b);
        assert!(sum_suite(100, 5, Mode::Auto).passed());
        assert!(equation_suite(20, 5, Mode::Auto).passed());
        assert!(trace_suite(50, 5, 9, Mode::Auto).passed());
    }

    #[test]
    fn spanning_small() {
        let r = spanning_suite(4, 10, 1, Mode::Auto);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.measurement("span_all_n3"), Some("7"));
        assert_eq!(r.measurement("rank_one_span_n3"), Some("3"));
    }

    #[test]
    fn exhaustive_two_states() {
        let s = exhaustive_bound(2, 2, 1 << 20, 24, Mode::Auto).unwrap();
        assert_eq!(s.tables, 16);
        assert_eq!(s.max_length, Some(1));
        assert_eq!(s.exceeding, 0);
    }
}
