//! Reset-word search: the pair-automaton criterion, exact breadth-first
//! search over the subset automaton, and the greedy pair-merging heuristic.

use std::collections::{HashMap, VecDeque};

use super::{Dfa, StateSet, Word};
use crate::error::{Error, Result};

/// Default largest state count accepted by the exact search.
pub const DEFAULT_EXACT_LIMIT: usize = 24;

/// Subsets are encoded in a `u64`, so no limit can go past this.
const BITSET_WIDTH: usize = 64;

/// Shortest reset word with the default size limit.
pub fn shortest_reset_word(dfa: &Dfa) -> Result<Option<Word>> {
    shortest_reset_word_with_limit(dfa, DEFAULT_EXACT_LIMIT)
}

/// Breadth-first search over the subset automaton starting at the full set.
///
/// Letters are expanded in index order and a subset keeps the first parent
/// that reaches it, so each level is discovered in lexicographic order of
/// the words reaching it. The first singleton found is therefore the
/// lexicographically least among the shortest reset words.
pub fn shortest_reset_word_with_limit(dfa: &Dfa, limit: usize) -> Result<Option<Word>> {
    let n = dfa.n();
    let limit = limit.min(BITSET_WIDTH);
    if n > limit {
        return Err(Error::Capacity {
            parameter: "n",
            value: n as u128,
            limit: limit as u128,
            hint: "use the greedy reset word search for larger automata",
        });
    }
    if n == 1 {
        return Ok(Some(Word::empty()));
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
    let mut queue = VecDeque::from([full]);
    parent.insert(full, (full, usize::MAX));

    while let Some(set) = queue.pop_front() {
        for letter in 0..dfa.k() {
            let map = dfa.letter_map(letter);
            let image = image_of(set, map);
            if parent.contains_key(&image) {
                continue;
            }
            parent.insert(image, (set, letter));
            if image.count_ones() == 1 {
                return Ok(Some(trace_back(&parent, image, full)));
            }
            queue.push_back(image);
        }
    }
    Ok(None)
}

#[inline]
fn image_of(mut set: u64, map: &[usize]) -> u64 {
    let mut image = 0u64;
    while set != 0 {
        let p = set.trailing_zeros() as usize;
        image |= 1u64 << map[p];
        set &= set - 1;
    }
    image
}

fn trace_back(parent: &HashMap<u64, (u64, usize)>, mut node: u64, root: u64) -> Word {
    let mut letters = Vec::new();
    while node != root {
        let (prev, letter) = parent[&node];
        letters.push(letter);
        node = prev;
    }
    letters.reverse();
    Word::new(letters)
}

/// Shortest merging distances of all state pairs in the pair automaton.
struct PairTable {
    n: usize,
    dist: Vec<Option<usize>>,
}

impl PairTable {
    fn new(dfa: &Dfa) -> Self {
        let n = dfa.n();
        let index = |p: usize, q: usize| if p <= q { p * n + q } else { q * n + p };

        let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n * n];
        for p in 0..n {
            for q in p + 1..n {
                for a in 0..dfa.k() {
                    reverse[index(dfa.step(p, a), dfa.step(q, a))].push(index(p, q));
                }
            }
        }

        let mut dist = vec![None; n * n];
        let mut queue = VecDeque::new();
        for p in 0..n {
            dist[index(p, p)] = Some(0);
            queue.push_back(index(p, p));
        }
        while let Some(node) = queue.pop_front() {
            let d = dist[node].unwrap();
            for &src in &reverse[node] {
                if dist[src].is_none() {
                    dist[src] = Some(d + 1);
                    queue.push_back(src);
                }
            }
        }
        Self { n, dist }
    }

    fn distance(&self, p: usize, q: usize) -> Option<usize> {
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        self.dist[p * self.n + q]
    }

    fn all_mergeable(&self) -> bool {
        (0..self.n).all(|p| (p + 1..self.n).all(|q| self.distance(p, q).is_some()))
    }

    /// Lexicographically least shortest word merging `p` and `q`.
    fn merging_word(&self, dfa: &Dfa, mut p: usize, mut q: usize) -> Vec<usize> {
        let mut letters = Vec::new();
        while p != q {
            let d = self.distance(p, q).expect("pair is mergeable");
            let a = (0..dfa.k())
                .find(|&a| self.distance(dfa.step(p, a), dfa.step(q, a)) == Some(d - 1))
                .expect("some letter decreases the distance");
            letters.push(a);
            p = dfa.step(p, a);
            q = dfa.step(q, a);
        }
        letters
    }
}

/// A DFA is synchronizing iff every pair of states can be merged.
pub fn is_synchronizing(dfa: &Dfa) -> bool {
    dfa.n() == 1 || PairTable::new(dfa).all_mergeable()
}

/// Greedy pair merging: repeatedly pick the pair of the current image that
/// merges fastest and apply its shortest merging word. Returns `None` when
/// the automaton is not synchronizing.
pub fn greedy_reset_word(dfa: &Dfa) -> Option<Word> {
    let table = PairTable::new(dfa);
    if !table.all_mergeable() {
        return None;
    }
    let mut current: Vec<usize> = (0..dfa.n()).collect();
    let mut word = Vec::new();
    while current.len() > 1 {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, &p) in current.iter().enumerate() {
            for &q in &current[i + 1..] {
                let d = table.distance(p, q).unwrap();
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, p, q));
                }
            }
        }
        let (_, p, q) = best.unwrap();
        let merge = table.merging_word(dfa, p, q);
        let set: StateSet = current.iter().copied().collect();
        current = dfa
            .apply_word(&set, &Word::new(merge.clone()))
            .expect("merging word uses valid letters")
            .members()
            .to_vec();
        word.extend(merge);
    }
    Some(Word::new(word))
}

/// Strong connectivity of the underlying digraph (union over all letters).
pub fn is_strongly_connected(dfa: &Dfa) -> bool {
    let n = dfa.n();
    let mut forward = vec![Vec::new(); n];
    let mut backward = vec![Vec::new(); n];
    for a in 0..dfa.k() {
        for (p, &q) in dfa.letter_map(a).iter().enumerate() {
            forward[p].push(q);
            backward[q].push(p);
        }
    }
    reaches_all(&forward) && reaches_all(&backward)
}

fn reaches_all(adjacency: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adjacency.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for &q in &adjacency[p] {
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{cerny_automaton, enumerate_dfas, DEFAULT_ENUMERATION_BUDGET};

    /// Tries every word of each length in lexicographic order.
    fn brute_force_reset(dfa: &Dfa, max_len: usize) -> Option<Word> {
        let full = StateSet::full(dfa.n());
        for len in 0..=max_len {
            let total = dfa.k().pow(len as u32);
            for code in 0..total {
                let mut letters = vec![0; len];
                let mut c = code;
                for slot in letters.iter_mut().rev() {
                    *slot = c % dfa.k();
                    c /= dfa.k();
                }
                let w = Word::new(letters);
                if dfa.apply_word(&full, &w).unwrap().len() == 1 {
                    return Some(w);
                }
            }
        }
        None
    }

    #[test]
    fn cerny_lengths_small() {
        assert_eq!(shortest_reset_word(&cerny_automaton(3).unwrap()).unwrap().unwrap().len(), 4);
        assert_eq!(shortest_reset_word(&cerny_automaton(4).unwrap()).unwrap().unwrap().len(), 9);
        assert_eq!(shortest_reset_word(&cerny_automaton(5).unwrap()).unwrap().unwrap().len(), 16);
    }

    #[test]
    fn bfs_matches_brute_force_on_all_three_state_binary_dfas() {
        for dfa in enumerate_dfas(3, 2, DEFAULT_ENUMERATION_BUDGET).unwrap() {
            let bfs = shortest_reset_word(&dfa).unwrap();
            let brute = brute_force_reset(&dfa, 4);
            assert_eq!(bfs, brute, "{dfa:?}");
            assert_eq!(bfs.is_some(), is_synchronizing(&dfa), "{dfa:?}");
        }
    }

    #[test]
    fn permutation_automaton_is_not_synchronizing() {
        let dfa = Dfa::new(vec![vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        assert!(!is_synchronizing(&dfa));
        assert_eq!(shortest_reset_word(&dfa).unwrap(), None);
        assert_eq!(greedy_reset_word(&dfa), None);
    }

    #[test]
    fn single_state() {
        let dfa = Dfa::new(vec![vec![0]]).unwrap();
        assert!(is_synchronizing(&dfa));
        assert_eq!(shortest_reset_word(&dfa).unwrap(), Some(Word::empty()));
        assert_eq!(greedy_reset_word(&dfa), Some(Word::empty()));
        assert!(is_strongly_connected(&dfa));
    }

    #[test]
    fn greedy_is_a_reset_word_not_shorter_than_exact() {
        let dfa = cerny_automaton(4).unwrap();
        let w = greedy_reset_word(&dfa).unwrap();
        assert!(dfa.is_reset_word(&w).unwrap());
        assert!(w.len() >= 9);
    }

    #[test]
    fn capacity_error_above_limit() {
        let dfa = cerny_automaton(6).unwrap();
        assert!(matches!(
            shortest_reset_word_with_limit(&dfa, 5),
            Err(Error::Capacity { parameter: "n", .. })
        ));
    }

    #[test]
    fn connectivity() {
        assert!(is_strongly_connected(&cerny_automaton(5).unwrap()));
        // state 2 absorbs everything
        let sink = Dfa::new(vec![vec![1, 2, 2], vec![2, 0, 2]]).unwrap();
        assert!(!is_strongly_connected(&sink));
    }
}
