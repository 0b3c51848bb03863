//! Search budgets and linear algebra over `F_p` shared by the isomorphism
//! searches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Budget for the randomized parts of isomorphism searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub max_samples: usize,
    /// Enumerate exhaustively when the `F_p` search space has at most this dimension.
    pub enumeration_bound: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_samples: 2000,
            enumeration_bound: 6,
        }
    }
}

/// Rank of a list of row vectors over `F_p`.
pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut basis = EchelonBasis::new(p);
    rows.iter().filter(|r| basis.insert(r)).count()
}

/// Whether a square matrix, given as rows, is invertible over `F_p`.
pub fn invertible_mod_p(rows: &[Vec<u64>], p: u64) -> bool {
    rows.iter().all(|r| r.len() == rows.len()) && rank_mod_p(rows, p) == rows.len()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Incremental row echelon form over `F_p`.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(p: u64) -> Self {
        Self { p, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[pivot], self.p);
        for x in v.iter_mut() {
            *x = *x * inv % self.p;
        }
        let p = self.p;
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Walks coefficient vectors in `F_p^dim`: exhaustively when small,
/// otherwise by seeded sampling. Returns the first vector accepted by
/// `accept`, and whether the walk was exhaustive.
pub fn search_coefficients<T>(
    p: u64,
    dim: usize,
    config: &SearchConfig,
    mut accept: impl FnMut(&[u64]) -> Option<T>,
) -> (Option<T>, bool) {
    if dim as u32 <= config.enumeration_bound {
        let mut c = vec![0u64; dim];
        loop {
            if let Some(t) = accept(&c) {
                return (Some(t), true);
            }
            let mut k = 0;
            loop {
                if k == dim {
                    return (None, true);
                }
                c[k] += 1;
                if c[k] < p {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.max_samples {
        let c: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
        if let Some(t) = accept(&c) {
            return (Some(t), false);
        }
    }
    (None, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 5), 2);
        assert!(invertible_mod_p(&[vec![0, 1], vec![1, 0]], 3));
        assert!(!invertible_mod_p(&[vec![3, 0], vec![0, 1]], 3));
        assert!(invertible_mod_p(&[], 3));
    }

    #[test]
    fn enumeration_is_exhaustive() {
        let cfg = SearchConfig::default();
        let mut seen = 0;
        let (r, exhaustive) = search_coefficients::<()>(3, 3, &cfg, |_| {
            seen += 1;
            None
        });
        assert!(r.is_none() && exhaustive);
        assert_eq!(seen, 27);
    }

    #[test]
    fn sampling_is_seeded() {
        let cfg = SearchConfig {
            seed: 7,
            max_samples: 5,
            enumeration_bound: 0,
        };
        let mut a = Vec::new();
        search_coefficients::<()>(5, 4, &cfg, |c| {
            a.push(c.to_vec());
            None
        });
        let mut b = Vec::new();
        search_coefficients::<()>(5, 4, &cfg, |c| {
            b.push(c.to_vec());
            None
        });
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
    }
}
