//! Finite search spaces: exhaustive enumeration when it fits the budget,
//! seeded sampling otherwise.

use rand::Rng;

use crate::rng;

/// All index vectors of length `len` over `0..radix`, in lexicographic order.
pub(crate) struct Odometer {
    radix: usize,
    cur: Option<Vec<usize>>,
}

impl Odometer {
    pub(crate) fn new(radix: usize, len: usize) -> Self {
        let cur = if radix == 0 && len > 0 { None } else { Some(vec![0; len]) };
        Odometer { radix, cur }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.radix {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// `radix^len`, saturating.
pub(crate) fn count(radix: usize, len: usize) -> u64 {
    (0..len).fold(1u64, |acc, _| acc.saturating_mul(radix as u64))
}

/// Tuples over `pool` of the given arity: all of them if there are at most
/// `budget`, otherwise `samples` seeded draws. The flag tells whether the
/// result covers the whole product.
pub(crate) fn tuples<T: Clone>(
    pool: &[T],
    arity: usize,
    budget: u64,
    samples: usize,
    seed: u64,
    tag: &str,
) -> (Vec<Vec<T>>, bool) {
    if count(pool.len(), arity) <= budget {
        let all = Odometer::new(pool.len(), arity)
            .map(|ix| ix.into_iter().map(|i| pool[i].clone()).collect())
            .collect();
        (all, true)
    } else {
        let mut r = rng::stream(seed, tag);
        let n = (samples as u64).min(budget) as usize;
        let picked = (0..n)
            .map(|_| (0..arity).map(|_| pool[r.gen_range(0..pool.len())].clone()).collect())
            .collect();
        (picked, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_counts() {
        assert_eq!(Odometer::new(3, 2).count(), 9);
        assert_eq!(Odometer::new(2, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Odometer::new(0, 2).count(), 0);
        assert_eq!(Odometer::new(0, 0).count(), 1);
        let v: Vec<_> = Odometer::new(2, 2).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn tuples_fall_back_to_sampling() {
        let pool = [1, 2, 3];
        let (all, ex) = tuples(&pool, 3, 27, 5, 0, "t");
        assert!(ex);
        assert_eq!(all.len(), 27);
        let (some, ex) = tuples(&pool, 3, 26, 5, 0, "t");
        assert!(!ex);
        assert_eq!(some.len(), 5);
    }
}
