//! Maximum bipartite matching by augmenting paths.
//!
//! Left vertices are processed in the order given and their candidate lists
//! are scanned in order, so the result is deterministic.

/// Matches left vertex `i` to one of `adjacency[i]` (right vertices in
/// `0..right_count`). Returns the partner of every left vertex.
pub fn maximum_matching(adjacency: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right_count];
    for left in 0..adjacency.len() {
        let mut visited = vec![false; right_count];
        augment(left, adjacency, &mut owner, &mut visited);
    }
    let mut partner = vec![None; adjacency.len()];
    for (right, o) in owner.iter().enumerate() {
        if let Some(left) = *o {
            partner[left] = Some(right);
        }
    }
    partner
}

fn augment(
    left: usize,
    adjacency: &[Vec<usize>],
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &right in &adjacency[left] {
        if visited[right] {
            continue;
        }
        visited[right] = true;
        let free = match owner[right] {
            None => true,
            Some(other) => augment(other, adjacency, owner, visited),
        };
        if free {
            owner[right] = Some(left);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Largest matching by trying every injective assignment.
    fn brute_force_size(adjacency: &[Vec<usize>], used: &mut Vec<bool>, i: usize) -> usize {
        if i == adjacency.len() {
            return 0;
        }
        let mut best = brute_force_size(adjacency, used, i + 1);
        for &r in &adjacency[i] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + brute_force_size(adjacency, used, i + 1));
                used[r] = false;
            }
        }
        best
    }

    #[test]
    fn augmenting_path_reassigns() {
        // greedy would give 0 -> 0 and leave 1 unmatched
        let adjacency = vec![vec![0, 1], vec![0]];
        assert_eq!(maximum_matching(&adjacency, 2), vec![Some(1), Some(0)]);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        for _ in 0..300 {
            let left = rng.gen_range(1..=5);
            let right = rng.gen_range(1..=5);
            let adjacency: Vec<Vec<usize>> = (0..left)
                .map(|_| (0..right).filter(|_| rng.gen_bool(1.0 / 3.0)).collect())
                .collect();
            let partner = maximum_matching(&adjacency, right);
            let size = partner.iter().flatten().count();
            assert_eq!(size, brute_force_size(&adjacency, &mut vec![false; right], 0));
            for (i, p) in partner.iter().enumerate() {
                if let Some(r) = p {
                    assert!(adjacency[i].contains(r));
                }
            }
        }
    }
}
