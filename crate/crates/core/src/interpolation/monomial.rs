//! Exponent bookkeeping for ternary forms.

/// Number of monomials of degree `d` in three variables.
pub fn monomial_count(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Exponent vectors `[i, j, k]` with `i + j + k = d`, ordered by decreasing
/// `i`, then decreasing `j` (so `x^d` comes first and `z^d` last).
pub fn monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Position of `e` in [`monomials`]`(d)`.
pub fn monomial_index(d: usize, e: [usize; 3]) -> usize {
    debug_assert_eq!(e.iter().sum::<usize>(), d);
    let i = e[0];
    // monomials with x-exponent > i come first: sum_{t=i+1}^{d} (d - t + 1)
    let before = (d - i) * (d - i + 1) / 2;
    before + (d - i - e[1])
}

/// Derivative multi-indices of total order `k`, in monomial order.
pub fn multi_indices(k: usize) -> Vec<[usize; 3]> {
    monomials(k)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
