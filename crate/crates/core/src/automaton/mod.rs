//! Complete deterministic automata, words over their alphabet and images of
//! state sets.
//!
//! States are `0..n` and letters are `0..k`. The distinguished target state of
//! the matrix machinery is state `0` throughout the crate.

mod format;
pub(crate) mod generate;
mod search;

pub use format::{parse_dfa, to_dot, write_dfa};
pub use generate::{
    cerny_automaton, dfa_at_index, enumerate_dfas, random_dfa, table_count, DfaEnumeration,
    DEFAULT_ENUMERATION_BUDGET,
};
pub use search::{
    greedy_reset_word, is_strongly_connected, is_synchronizing, shortest_reset_word,
    shortest_reset_word_with_limit, DEFAULT_EXACT_LIMIT,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A complete DFA with `n` states over `k` letters.
///
/// The transition table is stored letter-major: `delta[a * n + p]` is the
/// image of state `p` under letter `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dfa {
    n: usize,
    k: usize,
    delta: Vec<usize>,
}

impl Dfa {
    /// Builds an automaton from one row of targets per letter.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::Domain("alphabet must contain at least one letter".into()));
        }
        let n = rows[0].len();
        let mut delta = Vec::with_capacity(n * k);
        for row in rows {
            if row.len() != n {
                return Err(Error::Domain(format!(
                    "every letter needs {n} targets, found {}",
                    row.len()
                )));
            }
            delta.extend(row);
        }
        Self::from_table(n, k, delta)
    }

    /// Builds an automaton from a flat letter-major table of length `n * k`.
    pub fn from_table(n: usize, k: usize, delta: Vec<usize>) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::Domain(format!(
                "need at least one state and one letter, got n = {n}, k = {k}"
            )));
        }
        if delta.len() != n * k {
            return Err(Error::Domain(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                n * k
            )));
        }
        if let Some(&state) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidState { state, n });
        }
        Ok(Self { n, k, delta })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The flat letter-major transition table.
    pub fn table(&self) -> &[usize] {
        &self.delta
    }

    /// Targets of every state under `letter`.
    pub fn letter_map(&self, letter: usize) -> &[usize] {
        &self.delta[letter * self.n..(letter + 1) * self.n]
    }

    #[inline]
    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.delta[letter * self.n + state]
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        match word.letters().iter().find(|&&a| a >= self.k) {
            Some(&letter) => Err(Error::InvalidLetter { letter, k: self.k }),
            None => Ok(()),
        }
    }

    /// Image of a single state under `word`.
    pub fn run(&self, state: usize, word: &Word) -> Result<usize> {
        self.check_word(word)?;
        if state >= self.n {
            return Err(Error::InvalidState { state, n: self.n });
        }
        Ok(word.letters().iter().fold(state, |p, &a| self.step(p, a)))
    }

    /// The set `P w = { p w : p in P }`.
    pub fn apply_word(&self, set: &StateSet, word: &Word) -> Result<StateSet> {
        self.check_word(word)?;
        if let Some(&state) = set.members().iter().find(|&&p| p >= self.n) {
            return Err(Error::InvalidState { state, n: self.n });
        }
        Ok(set
            .members()
            .iter()
            .map(|&p| word.letters().iter().fold(p, |p, &a| self.step(p, a)))
            .collect())
    }

    /// Whether `word` sends every state to one common state.
    pub fn is_reset_word(&self, word: &Word) -> Result<bool> {
        Ok(self.apply_word(&StateSet::full(self.n), word)?.len() == 1)
    }

    /// The common image of all states under `word`, if it is a reset word.
    pub fn reset_target(&self, word: &Word) -> Result<Option<usize>> {
        let image = self.apply_word(&StateSet::full(self.n), word)?;
        Ok(if image.len() == 1 {
            Some(image.members()[0])
        } else {
            None
        })
    }
}

/// A finite word over the alphabet `0..k`. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: usize) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Renders the word as letters `a`, `b`, ... when the alphabet has at
    /// most 26 letters, else as comma-separated indices. The empty word
    /// renders as `ε`.
    pub fn render(&self, k: usize) -> String {
        if self.0.is_empty() {
            return "ε".to_string();
        }
        if k <= 26 && self.0.iter().all(|&a| a < 26) {
            self.0.iter().map(|&a| (b'a' + a as u8) as char).collect()
        } else {
            self.0
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses either a letter string (`abba`) or comma-separated indices
    /// (`0,1,1,0`). `ε` and the empty string denote the empty word.
    pub fn parse(text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        if text.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) {
            return text
                .split(',')
                .enumerate()
                .map(|(i, part)| {
                    part.trim().parse::<usize>().map_err(|e| Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("bad letter index {part:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>>>()
                .map(Word);
        }
        text.chars()
            .enumerate()
            .map(|(i, c)| {
                if c.is_ascii_lowercase() {
                    Ok((c as u8 - b'a') as usize)
                } else {
                    Err(Error::Parse {
                        line: 1,
                        column: i + 1,
                        message: format!("unexpected character {c:?} in word"),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(26))
    }
}

/// A set of states, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StateSet(Vec<usize>);

impl StateSet {
    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, state: usize) -> bool {
        self.0.binary_search(&state).is_ok()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.iter().all(|&p| other.contains(p))
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        StateSet(members)
    }
}
