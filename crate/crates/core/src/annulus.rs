//! Disc and annular non-crossing pairings.

use alloc::format;
use alloc::vec::Vec;

use crate::combinatorics::{binomial, binomial_half};
use crate::error::{invalid, Result};
use crate::perm::{compose, cycle_count_unchecked, enumerate_pairings_capped, Pairing};

/// Largest `p + q` accepted by the exhaustive annular filter.
pub const EXHAUSTIVE_CAP: usize = 16;

/// Two concentric circles: points `0..p` on the inner circle and `p..p+q` on
/// the outer one, each circle traversed in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AnnularFrame {
    p: usize,
    q: usize,
}

impl AnnularFrame {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(invalid(format!("annulus needs p, q >= 1 (got p={p}, q={q})")));
        }
        Ok(AnnularFrame { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn is_inner(&self, t: usize) -> bool {
        t < self.p
    }

    /// The trace permutation `ρ = (0 … p-1)(p … p+q-1)`.
    pub fn rho(&self) -> Vec<usize> {
        (0..self.n()).map(|t| self.rho_at(t)).collect()
    }

    #[inline]
    pub fn rho_at(&self, t: usize) -> usize {
        if t < self.p {
            (t + 1) % self.p
        } else {
            self.p + (t - self.p + 1) % self.q
        }
    }

    pub(crate) fn check_size(&self, n: usize) -> Result<()> {
        if n != self.n() {
            return Err(invalid(format!(
                "pairing on {n} points does not fit an annulus with p+q={}",
                self.n()
            )));
        }
        Ok(())
    }
}

/// True iff no two pairs `{a,c}`, `{b,d}` satisfy `a < b < c < d`.
pub fn is_noncrossing_disc(pi: &Pairing) -> bool {
    let mut open = Vec::new();
    for t in 0..pi.len() {
        let s = pi.partner(t);
        if s > t {
            open.push(t);
        } else if open.pop() != Some(s) {
            return false;
        }
    }
    true
}

/// Annular non-crossing test: at least one pair joins the circles, and
/// `#(π) + #(ρπ) = p + q`.
pub fn is_noncrossing_annular(pi: &Pairing, frame: AnnularFrame) -> Result<bool> {
    frame.check_size(pi.len())?;
    Ok(is_noncrossing_annular_unchecked(pi, frame))
}

fn is_noncrossing_annular_unchecked(pi: &Pairing, frame: AnnularFrame) -> bool {
    let connected = (0..frame.p).any(|t| !frame.is_inner(pi.partner(t)));
    if !connected {
        return false;
    }
    let rho_pi = compose(&frame.rho(), pi.as_slice());
    pi.len() / 2 + cycle_count_unchecked(&rho_pi) == frame.n()
}

/// `NC₂(p, q)` by filtering every pairing of `p + q` points. Slow; kept as
/// the reference for [`enumerate_nc2_annular`].
pub fn enumerate_nc2_annular_exhaustive(frame: AnnularFrame) -> Result<Vec<Pairing>> {
    if !frame.n().is_multiple_of(2) {
        return Ok(Vec::new());
    }
    Ok(enumerate_pairings_capped(frame.n(), EXHAUSTIVE_CAP)?
        .filter(|pi| is_noncrossing_annular_unchecked(pi, frame))
        .collect())
}

/// `NC₂(p, q)` in lexicographic order of partner tables (the order in which
/// [`crate::perm::enumerate_pairings`] would yield them). Empty when `p + q`
/// is odd.
///
/// Built from spoke/arc configurations, so the cost is proportional to the
/// output size.
pub fn enumerate_nc2_annular(frame: AnnularFrame) -> Vec<Pairing> {
    let mut all = crate::spoke_arc::canonical_pairings(frame);
    all.sort();
    all
}

/// Non-crossing pairings of `0..n` in lexicographic order; empty for odd
/// `n`, a single empty pairing for `n = 0`.
pub fn enumerate_nc2_disc(n: usize) -> Vec<Pairing> {
    if !n.is_multiple_of(2) {
        return Vec::new();
    }
    disc_partner_tables(n)
        .into_iter()
        .map(|t| Pairing::from_partners(t).expect("disc construction yields involutions"))
        .collect()
}

fn disc_partner_tables(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return alloc::vec![Vec::new()];
    }
    let mut out = Vec::new();
    // 0 pairs with j; the inside (1..j) and the outside (j+1..n) are
    // independent non-crossing pairings. Increasing j is lexicographic.
    for j in (1..n).step_by(2) {
        let inside = disc_partner_tables(j - 1);
        let outside = disc_partner_tables(n - j - 1);
        for a in &inside {
            for b in &outside {
                let mut t = Vec::with_capacity(n);
                t.push(j);
                t.extend(a.iter().map(|&s| s + 1));
                t.push(0);
                t.extend(b.iter().map(|&s| s + j + 1));
                out.push(t);
            }
        }
    }
    out
}

/// `|NC₂(p, q)|` from the product formula
/// `[1+(-1)^{p+q}]/2 · 2⌈p/2⌉⌈q/2⌉/(p+q) · C(p,⌊p/2⌋) · C(q,⌊q/2⌋)`.
pub fn nc2_count_closed(p: u64, q: u64) -> u128 {
    if !(p + q).is_multiple_of(2) || p == 0 || q == 0 {
        return 0;
    }
    let num = 2 * p.div_ceil(2) as u128
        * q.div_ceil(2) as u128
        * binomial(p, p / 2)
        * binomial(q, q / 2);
    num / (p + q) as u128
}

/// Number of diagrams in `NC₂(p, q)` with exactly `a` spokes:
/// `a · C(p, (p-a)/2) · C(q, (q-a)/2)`.
pub fn nc2_count_with_spokes(p: u64, q: u64, a: u64) -> u128 {
    if a == 0 || a > p.min(q) {
        return 0;
    }
    a as u128 * binomial_half(p, p as i64 - a as i64) * binomial_half(q, q as i64 - a as i64)
}

/// `Σ_a a · C(p, (p-a)/2) · C(q, (q-a)/2)`.
pub fn nc2_count_by_spokes(p: u64, q: u64) -> u128 {
    (1..=p.min(q)).map(|a| nc2_count_with_spokes(p, q, a)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(n: usize, pairs: &[(usize, usize)]) -> Pairing {
        Pairing::from_one_based(n, pairs).unwrap()
    }

    #[test]
    fn disc_predicate() {
        assert!(is_noncrossing_disc(&pr(4, &[(1, 2), (3, 4)])));
        assert!(!is_noncrossing_disc(&pr(4, &[(1, 3), (2, 4)])));
        assert!(is_noncrossing_disc(&pr(4, &[(1, 4), (2, 3)])));
        assert!(is_noncrossing_disc(&Pairing::empty()));
    }

    #[test]
    fn annular_predicate_examples() {
        let f22 = AnnularFrame::new(2, 2).unwrap();
        assert!(is_noncrossing_annular(&pr(4, &[(1, 3), (2, 4)]), f22).unwrap());
        assert!(!is_noncrossing_annular(&pr(4, &[(1, 2), (3, 4)]), f22).unwrap());
        let f46 = AnnularFrame::new(4, 6).unwrap();
        let sample = pr(10, &[(1, 5), (2, 10), (3, 4), (6, 9), (7, 8)]);
        assert!(is_noncrossing_annular(&sample, f46).unwrap());
        assert!(is_noncrossing_annular(&sample, f22).is_err());
    }

    #[test]
    fn small_enumerations() {
        let count = |p, q| enumerate_nc2_annular(AnnularFrame::new(p, q).unwrap()).len();
        assert_eq!(count(2, 2), 2);
        assert_eq!(count(3, 1), 3);
        assert_eq!(count(1, 3), 3);
        assert_eq!(count(3, 2), 0);
        assert_eq!(
            enumerate_nc2_annular(AnnularFrame::new(1, 1).unwrap()),
            alloc::vec![pr(2, &[(1, 2)])]
        );
    }

    #[test]
    fn closed_counts() {
        assert_eq!(nc2_count_closed(2, 2), 2);
        assert_eq!(nc2_count_closed(4, 2), 8);
        assert_eq!(nc2_count_closed(3, 2), 0);
        assert_eq!(nc2_count_by_spokes(4, 2), 8);
    }

    #[test]
    fn fast_matches_exhaustive() {
        for p in 1..=8 {
            for q in 1..=(10 - p) {
                let f = AnnularFrame::new(p, q).unwrap();
                assert_eq!(
                    enumerate_nc2_annular(f),
                    enumerate_nc2_annular_exhaustive(f).unwrap(),
                    "p={p} q={q}"
                );
            }
        }
    }

    #[test]
    fn disc_counts_are_catalan() {
        for k in 0..8 {
            let all = enumerate_nc2_disc(2 * k);
            assert_eq!(all.len() as u128, crate::combinatorics::catalan(k as u64));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all.iter().all(is_noncrossing_disc));
        }
        assert!(enumerate_nc2_disc(3).is_empty());
    }

    #[test]
    fn rho_cycles() {
        let f = AnnularFrame::new(3, 2).unwrap();
        assert_eq!(f.rho(), alloc::vec![1, 2, 0, 4, 3]);
        assert!(AnnularFrame::new(0, 2).is_err());
    }
}
