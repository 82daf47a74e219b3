//! Qubit permutations.
//!
//! A permutation is stored as a destination table: `perm[i] = j` moves the
//! qubit currently at position `i` to position `j`. Composition follows
//! function composition, so `compose(p, q)` first applies `q`, then `p`.

use alloc::vec::Vec;

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn is_bijection(perm: &[usize]) -> bool {
    let mut seen = alloc::vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

pub fn is_identity(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &p)| i == p)
}

/// `outer ∘ inner`: position `i` ends up at `outer[inner[i]]`.
pub fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    debug_assert_eq!(outer.len(), inner.len());
    inner.iter().map(|&i| outer[i]).collect()
}

pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// The transposition exchanging positions `a` and `b`.
pub fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut t = identity(n);
    t.swap(a, b);
    t
}

/// Moves bit `i` of `index` to bit `perm[i]`.
#[inline]
pub fn permute_bits(index: usize, perm: &[usize]) -> usize {
    let mut out = 0;
    for (i, &p) in perm.iter().enumerate() {
        out |= ((index >> i) & 1) << p;
    }
    out
}
