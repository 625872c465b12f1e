use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Dfa;
use crate::error::{Error, Result};

/// Default cap on the number of transition tables an enumeration may visit.
/// Large enough for `n = 4, k = 2` (65 536 tables) and `n = 3, k = 3`.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 20;

/// The Černý automaton `C_n`: letter `a` is the cycle `i -> i + 1 mod n`,
/// letter `b` sends `0` to `1` and fixes every other state.
pub fn cerny_automaton(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::Domain(format!("Černý automaton needs n >= 2, got {n}")));
    }
    let a = (0..n).map(|i| (i + 1) % n).collect();
    let b = (0..n).map(|i| if i == 0 { 1 } else { i }).collect();
    Dfa::new(vec![a, b])
}

/// Uniformly random complete DFA. The same seed always yields the same table.
pub fn random_dfa(n: usize, k: usize, seed: u64) -> Result<Dfa> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_dfa_with(n, k, &mut rng)
}

pub(crate) fn random_dfa_with<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<Dfa> {
    if n == 0 || k == 0 {
        return Err(Error::Domain(format!(
            "need at least one state and one letter, got n = {n}, k = {k}"
        )));
    }
    let table = (0..n * k).map(|_| rng.gen_range(0..n)).collect();
    Dfa::from_table(n, k, table)
}

/// Number of complete tables `n^(n k)`, or `None` on overflow.
pub fn table_count(n: usize, k: usize) -> Option<u128> {
    (n as u128).checked_pow(u32::try_from(n.checked_mul(k)?).ok()?)
}

/// The automaton at position `index` of the lexicographic table order, the
/// first table entry being the most significant digit.
pub fn dfa_at_index(n: usize, k: usize, index: u128) -> Result<Dfa> {
    let total = table_count(n, k).ok_or_else(|| Error::Domain("table count overflows".into()))?;
    if index >= total {
        return Err(Error::Domain(format!("index {index} out of range 0..{total}")));
    }
    let mut table = vec![0; n * k];
    let mut rest = index;
    for slot in table.iter_mut().rev() {
        *slot = (rest % n as u128) as usize;
        rest /= n as u128;
    }
    Dfa::from_table(n, k, table)
}

/// Every complete `n`-state, `k`-letter table exactly once, in lexicographic
/// order. Fails when `n^(n k)` exceeds `budget`.
pub fn enumerate_dfas(n: usize, k: usize, budget: u128) -> Result<DfaEnumeration> {
    if n == 0 || k == 0 {
        return Err(Error::Domain(format!(
            "need at least one state and one letter, got n = {n}, k = {k}"
        )));
    }
    let total = table_count(n, k).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::Capacity {
            parameter: "n^(n*k) tables",
            value: total,
            limit: budget,
            hint: "raise the enumeration budget or reduce n and k",
        });
    }
    Ok(DfaEnumeration {
        n,
        k,
        next: Some(vec![0; n * k]),
        remaining: total,
    })
}

/// Iterator returned by [`enumerate_dfas`].
#[derive(Clone, Debug)]
pub struct DfaEnumeration {
    n: usize,
    k: usize,
    next: Option<Vec<usize>>,
    remaining: u128,
}

impl DfaEnumeration {
    pub fn total(&self) -> u128 {
        self.remaining
    }
}

impl Iterator for DfaEnumeration {
    type Item = Dfa;

    fn next(&mut self) -> Option<Dfa> {
        let table = self.next.take()?;
        self.remaining -= 1;
        let mut successor = table.clone();
        let mut carry = true;
        for slot in successor.iter_mut().rev() {
            *slot += 1;
            if *slot < self.n {
                carry = false;
                break;
            }
            *slot = 0;
        }
        if !carry {
            self.next = Some(successor);
        }
        Some(Dfa::from_table(self.n, self.k, table).expect("entries stay below n"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}
