//! Exact integer combinatorics: binomials, Catalan and Fuss–Catalan numbers,
//! compositions and set partitions.

use alloc::vec;
use alloc::vec::Vec;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `C(n, m / 2)` where `m` may be odd or negative, in which case the value
/// is 0. This is how parity restrictions enter the closed-form sums.
pub fn binomial_half(n: u64, m: i64) -> u128 {
    if m < 0 || m % 2 != 0 {
        return 0;
    }
    binomial(n, (m / 2) as u64)
}

/// `(n-1)!!` for even `n`, the number of pairings of `n` points.
pub fn double_factorial_odd(n: u64) -> u128 {
    crate::perm::pairing_count(n as usize)
}

pub fn catalan(n: u64) -> u128 {
    fuss_catalan(1, n)
}

/// `FC(a, n) = a / (2n + a) · C(2n + a, n)`.
pub fn fuss_catalan(a: u64, n: u64) -> u128 {
    if n == 0 {
        return 1;
    }
    let b = binomial(2 * n + a, n);
    b * a as u128 / (2 * n + a) as u128
}

/// Coefficients `[zⁿ] C(z)^a` for `n ≤ n_max`, where `C(z)` is the Catalan
/// generating function.
///
/// The Catalan coefficients come from the recurrence
/// `C_{n+1} = Σ C_i C_{n-i}` and the power from repeated truncated
/// convolution, so no closed formula is involved.
pub fn fuss_catalan_series(a: u64, n_max: usize) -> Vec<u128> {
    let mut cat = vec![0u128; n_max + 1];
    cat[0] = 1;
    for n in 0..n_max {
        cat[n + 1] = (0..=n).map(|i| cat[i] * cat[n - i]).sum();
    }
    let mut acc = vec![0u128; n_max + 1];
    acc[0] = 1;
    for _ in 0..a {
        acc = convolve_truncated(&acc, &cat);
    }
    acc
}

fn convolve_truncated(x: &[u128], y: &[u128]) -> Vec<u128> {
    let len = x.len().min(y.len());
    (0..len)
        .map(|n| (0..=n).map(|i| x[i] * y[n - i]).sum())
        .collect()
}

/// All compositions of `total` into `parts` nonnegative parts that are
/// multiples of `step`, in lexicographic order.
pub fn compositions(total: usize, parts: usize, step: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    if !total.is_multiple_of(step) {
        return out;
    }
    let mut cur = Vec::with_capacity(parts);
    compositions_rec(total, parts, step, &mut cur, &mut out);
    out
}

fn compositions_rec(
    left: usize,
    parts: usize,
    step: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() + 1 == parts {
        cur.push(left);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    let mut x = 0;
    while x <= left {
        cur.push(x);
        compositions_rec(left - x, parts, step, cur, out);
        cur.pop();
        x += step;
    }
}

/// Set partitions of `0..m` as lists of blocks, each block sorted, blocks
/// ordered by their smallest element.
pub fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    set_partitions_rec(0, m, &mut blocks, &mut out);
    out
}

fn set_partitions_rec(
    t: usize,
    m: usize,
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if t == m {
        out.push(blocks.clone());
        return;
    }
    for b in 0..blocks.len() {
        blocks[b].push(t);
        set_partitions_rec(t + 1, m, blocks, out);
        blocks[b].pop();
    }
    blocks.push(vec![t]);
    set_partitions_rec(t + 1, m, blocks, out);
    blocks.pop();
}

/// `(k-1)!` as a signed integer, for Möbius coefficients.
pub fn factorial(k: u64) -> u128 {
    (1..=k as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial_half(4, 2), 4);
        assert_eq!(binomial_half(4, 1), 0);
        assert_eq!(binomial_half(4, -2), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn catalan_and_fuss_catalan() {
        let cats: Vec<u128> = (0..8).map(catalan).collect();
        assert_eq!(cats, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(fuss_catalan(1, 3), 5);
        assert_eq!(fuss_catalan(2, 1), 2);
        assert_eq!(fuss_catalan(3, 2), 9);
        for a in 1..6 {
            assert_eq!(fuss_catalan(a, 0), 1);
        }
    }

    #[test]
    fn series_examples() {
        assert_eq!(fuss_catalan_series(1, 4), vec![1, 1, 2, 5, 14]);
        assert_eq!(fuss_catalan_series(2, 1)[1], 2);
        assert_eq!(fuss_catalan_series(3, 2)[2], 9);
    }

    #[test]
    fn composition_counts() {
        // stars and bars: C(n + k - 1, k - 1)
        assert_eq!(compositions(4, 3, 1).len(), 15);
        assert_eq!(compositions(4, 2, 2), vec![vec![0, 4], vec![2, 2], vec![4, 0]]);
        assert_eq!(compositions(3, 2, 2).len(), 0);
        assert_eq!(compositions(0, 0, 2), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn bell_numbers() {
        let bell: Vec<usize> = (0..6).map(|m| set_partitions(m).len()).collect();
        assert_eq!(bell, vec![1, 1, 2, 5, 15, 52]);
    }
}
