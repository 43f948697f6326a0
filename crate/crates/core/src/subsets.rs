//! Canonical subset sweeps.
//!
//! Subsets of a fixed size are visited in lexicographic order of their sorted
//! index vectors. The parallel path evaluates a batch concurrently but always
//! reports the earliest hit, so the answer matches the sequential sweep.

use itertools::Itertools;
use rayon::prelude::*;

const BATCH: usize = 2048;

/// First `size`-subset of `pool` (in lexicographic order) for which `test`
/// returns `Some`, together with that value.
pub(crate) fn first_hit<T, F>(pool: &[usize], size: usize, jobs: usize, test: F) -> Option<(Vec<usize>, T)>
where
    T: Send,
    F: Fn(&[usize]) -> Option<T> + Sync,
{
    if size > pool.len() {
        return None;
    }
    let mut combos = pool.iter().copied().combinations(size);
    if jobs <= 1 {
        return combos.find_map(|c| test(&c).map(|t| (c, t)));
    }
    loop {
        let batch: Vec<Vec<usize>> = combos.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return None;
        }
        let hit = batch
            .into_par_iter()
            .find_map_first(|c| test(&c).map(|t| (c, t)));
        if hit.is_some() {
            return hit;
        }
    }
}

/// Sorted union of two disjoint sorted index lists.
pub(crate) fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort_unstable();
    out
}

/// Mixed-radix counter over `len` digits in `0..radix`, most significant digit
/// first, i.e. lexicographic order of the digit vector.
pub(crate) fn for_each_digits(len: usize, radix: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut digits = vec![0usize; len];
    loop {
        if !visit(&digits) {
            return;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < radix {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_first_hit_matches_sequential() {
        let pool: Vec<usize> = (0..14).collect();
        let test = |c: &[usize]| (c.iter().sum::<usize>() % 7 == 3 && c[0] > 1).then_some(c.len());
        let seq = first_hit(&pool, 4, 1, test);
        let par = crate::config::with_pool(4, || first_hit(&pool, 4, 4, test));
        assert_eq!(seq, par);
        assert_eq!(seq.unwrap().0, vec![2, 3, 4, 8]);
    }

    #[test]
    fn digits_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_digits(2, 3, |d| {
            seen.push(d.to_vec());
            true
        });
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[1], vec![0, 1]);
        assert_eq!(seen[3], vec![1, 0]);
        let mut empty = 0;
        for_each_digits(0, 3, |_| {
            empty += 1;
            true
        });
        assert_eq!(empty, 1);
    }
}
