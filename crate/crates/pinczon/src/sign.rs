//! The sign engine: permutation signs on graded tuples and the `eta`
//! cocycles that convert between a space and its degree shift.
//!
//! Every sign in the crate is produced here, by explicit inversion
//! counting over a tuple of shifted degrees. Only parity of the degrees
//! matters. The convention throughout: a permutation `sigma` reorders a
//! tuple `x` into `sigma . x` with `(sigma . x)[m] = x[sigma^-1(m)]`,
//! i.e. the element at slot `i` lands in slot `sigma(i)`, and each
//! crossing of two odd elements contributes a factor -1.

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored by images: `images[i] = sigma(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Validates that `images` is a bijection of `{0, .., n-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn rotation(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + 1) % n).collect(),
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Permutation { images }
    }

    /// Composition acting left to right on points: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: (0..self.len())
                .map(|i| self.images[other.images[i]])
                .collect(),
        }
    }

    /// Reorders a tuple: the element at slot `i` moves to slot `sigma(i)`.
    pub fn apply_tuple<T: Clone>(&self, tuple: &[T]) -> Vec<T> {
        assert_eq!(self.len(), tuple.len());
        let mut out: Vec<T> = tuple.to_vec();
        for (i, item) in tuple.iter().enumerate() {
            out[self.images[i]] = item.clone();
        }
        out
    }

    /// Plain sign of the permutation.
    pub fn sign(&self) -> i64 {
        let n = self.len();
        let mut inversions = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `{0, .., n-1}` in lexicographic image order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation {
                images: images.clone(),
            });
            if !next_permutation(&mut images) {
                return out;
            }
        }
    }

    /// The `(p, q)`-shuffles of `{0, .., p+q-1}`: permutations with
    /// `sigma(0) < .. < sigma(p-1)` and `sigma(p) < .. < sigma(p+q-1)`.
    pub fn shuffles(p: usize, q: usize) -> Vec<Permutation> {
        let n = p + q;
        let mut out = Vec::new();
        for subset in subsets_of_size(n, p) {
            let mut images = vec![0usize; n];
            let mut rest = 0usize;
            let mut in_subset = vec![false; n];
            for &s in &subset {
                in_subset[s] = true;
            }
            for (m, &s) in subset.iter().enumerate() {
                images[m] = s;
            }
            for slot in 0..n {
                if !in_subset[slot] {
                    images[p + rest] = slot;
                    rest += 1;
                }
            }
            out.push(Permutation { images });
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All increasing index subsets of `{0, .., n-1}` of the given size.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(
        start: usize,
        n: usize,
        size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        let needed = size - current.len();
        for i in start..=n.saturating_sub(needed) {
            current.push(i);
            rec(i + 1, n, size, current, out);
            current.pop();
        }
    }
    if size <= n {
        rec(0, n, size, &mut current, &mut out);
    }
    out
}

fn is_odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// Koszul sign of reordering a graded tuple by `sigma`: the product over
/// inverted pairs `i < j`, `sigma(i) > sigma(j)` of -1 when both entries
/// carry odd shifted degree, +1 otherwise.
pub fn koszul_sign(shifted_degrees: &[i64], sigma: &Permutation) -> Result<i64> {
    if shifted_degrees.len() != sigma.len() {
        return Err(Error::LengthMismatch(format!(
            "{} degrees vs permutation of {}",
            shifted_degrees.len(),
            sigma.len()
        )));
    }
    let n = sigma.len();
    let mut sign = 1i64;
    for i in 0..n {
        if !is_odd(shifted_degrees[i]) {
            continue;
        }
        for j in i + 1..n {
            if sigma.apply(i) > sigma.apply(j) && is_odd(shifted_degrees[j]) {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// Sign of `sigma` counting only positions with odd degree: the same
/// inversion count as [`koszul_sign`], exposed for the cocycle identity.
pub fn parity_sign(degrees: &[i64], sigma: &Permutation) -> Result<i64> {
    koszul_sign(degrees, sigma)
}

/// The shift cocycle `eta_a(x_1, .., x_k) = (-1)^(sum_j (a - j) x_j)`
/// over shifted degrees `x_j`, with `j` counted from 1. `eta(a, []) = 1`.
pub fn eta(a: i64, shifted_degrees: &[i64]) -> i64 {
    let mut exponent = 0i64;
    for (j, &d) in shifted_degrees.iter().enumerate() {
        exponent += (a - (j as i64 + 1)) * d;
    }
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
