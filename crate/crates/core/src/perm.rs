//! Pairings, permutations and a small disjoint-set forest.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Error, Result};

/// Default largest `n` accepted by [`enumerate_pairings`].
pub const DEFAULT_PAIRING_CAP: usize = 16;

/// A fixed-point-free involution on `0..n`.
///
/// `n = 0` (the empty pairing) is allowed; it is the unique pairing of an
/// empty arc.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    partner: Vec<usize>,
}

impl Pairing {
    /// Builds a pairing from its partner table.
    pub fn from_partners(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        if !n.is_multiple_of(2) {
            return Err(invalid(format!("pairing on {n} points: n must be even")));
        }
        for (t, &s) in partner.iter().enumerate() {
            if s >= n {
                return Err(invalid(format!("partner {s} of {t} is out of range 0..{n}")));
            }
            if s == t {
                return Err(invalid(format!("point {t} is a fixed point")));
            }
            if partner[s] != t {
                return Err(invalid(format!("partner table is not an involution at {t}")));
            }
        }
        Ok(Pairing { partner })
    }

    /// Builds a pairing on `0..n` from 0-based pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        const UNSET: usize = usize::MAX;
        let mut partner = vec![UNSET; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(invalid(format!("pair ({a}, {b}) out of range 0..{n}")));
            }
            if partner[a] != UNSET || partner[b] != UNSET {
                return Err(invalid(format!("point in pair ({a}, {b}) is used twice")));
            }
            partner[a] = b;
            partner[b] = a;
        }
        if let Some(t) = partner.iter().position(|&s| s == UNSET) {
            return Err(invalid(format!("point {t} is not paired")));
        }
        Self::from_partners(partner)
    }

    /// Builds a pairing on `1..=n` from 1-based pairs, the labelling used in
    /// diagrams and output files.
    pub fn from_one_based(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut shifted = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == 0 || b == 0 {
                return Err(invalid("1-based pair contains 0"));
            }
            shifted.push((a - 1, b - 1));
        }
        Self::from_pairs(n, &shifted)
    }

    pub fn empty() -> Self {
        Pairing {
            partner: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.partner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    #[inline]
    pub fn partner(&self, t: usize) -> usize {
        self.partner[t]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.partner
    }

    /// Pairs `(a, b)` with `a < b`, ordered by `a`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(a, &b)| a < b)
            .map(|(a, &b)| (a, b))
    }

    pub fn to_one_based(&self) -> Vec<(usize, usize)> {
        self.pairs().map(|(a, b)| (a + 1, b + 1)).collect()
    }

    /// Restriction to a sorted-by-walk list of points, relabelled `0..k` in
    /// the order given. Fails if some point is paired outside the list.
    pub fn restrict(&self, points: &[usize]) -> Result<Pairing> {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &t) in points.iter().enumerate() {
            local[t] = i;
        }
        let mut partner = Vec::with_capacity(points.len());
        for &t in points {
            let s = local[self.partner[t]];
            if s == usize::MAX {
                return Err(invalid(format!("point {t} is paired outside the restriction")));
            }
            partner.push(s);
        }
        Pairing::from_partners(partner)
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.to_one_based().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{{{a},{b}}}")?;
        }
        f.write_str("}")
    }
}

/// Checks that `perm` is a bijection on `0..perm.len()`.
pub fn check_bijection(perm: &[usize]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &s in perm {
        if s >= n || seen[s] {
            return Err(invalid("input is not a bijection"));
        }
        seen[s] = true;
    }
    Ok(())
}

/// Number of disjoint cycles of a permutation.
pub fn cycle_count(perm: &[usize]) -> Result<usize> {
    check_bijection(perm)?;
    Ok(cycle_count_unchecked(perm))
}

pub(crate) fn cycle_count_unchecked(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut t = start;
        while !seen[t] {
            seen[t] = true;
            t = perm[t];
        }
    }
    cycles
}

/// `(σμ)(t) = σ(μ(t))`.
pub fn compose(sigma: &[usize], mu: &[usize]) -> Vec<usize> {
    mu.iter().map(|&t| sigma[t]).collect()
}

pub fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (t, &s) in perm.iter().enumerate() {
        inv[s] = t;
    }
    inv
}

/// `(n-1)!!`, the number of pairings of `n` points (1 for `n = 0`, 0 for odd
/// `n`).
pub fn pairing_count(n: usize) -> u128 {
    if !n.is_multiple_of(2) {
        return 0;
    }
    (1..n).step_by(2).map(|k| k as u128).product()
}

/// Streams every pairing of `0..n` exactly once.
///
/// Order: the smallest unpaired point is matched with each larger unpaired
/// point in increasing order, recursively (lexicographic in the partner
/// table).
pub fn enumerate_pairings(n: usize) -> Result<PairingIter> {
    enumerate_pairings_capped(n, DEFAULT_PAIRING_CAP)
}

pub fn enumerate_pairings_capped(n: usize, cap: usize) -> Result<PairingIter> {
    if !n.is_multiple_of(2) {
        return Err(invalid(format!("cannot pair an odd number ({n}) of points")));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "pairing size",
            got: n,
            cap,
        });
    }
    Ok(PairingIter::new(n, |_, _| true))
}

/// Pairings in which every pair satisfies `allowed(a, b)` (with `a < b`).
///
/// Used for color-respecting Wick sums; pruning happens during the search.
pub fn enumerate_pairings_where<F>(n: usize, cap: usize, allowed: F) -> Result<PairingIter<F>>
where
    F: Fn(usize, usize) -> bool,
{
    if n > cap {
        return Err(Error::CapExceeded {
            what: "pairing size",
            got: n,
            cap,
        });
    }
    if !n.is_multiple_of(2) {
        return Ok(PairingIter::exhausted(allowed));
    }
    Ok(PairingIter::new(n, allowed))
}

const FREE: usize = usize::MAX;

/// Iterator state for [`enumerate_pairings`]: an explicit backtracking stack.
pub struct PairingIter<F = fn(usize, usize) -> bool> {
    partner: Vec<usize>,
    // (opener, current candidate) per level
    stack: Vec<(usize, usize)>,
    allowed: F,
    started: bool,
    done: bool,
}

impl<F: Fn(usize, usize) -> bool> PairingIter<F> {
    fn new(n: usize, allowed: F) -> Self {
        PairingIter {
            partner: vec![FREE; n],
            stack: Vec::with_capacity(n / 2),
            allowed,
            started: false,
            done: false,
        }
    }

    fn exhausted(allowed: F) -> Self {
        PairingIter {
            partner: Vec::new(),
            stack: Vec::new(),
            allowed,
            started: true,
            done: true,
        }
    }

    fn first_free(&self) -> Option<usize> {
        self.partner.iter().position(|&s| s == FREE)
    }

    /// Next candidate partner for `opener`, strictly after `after`.
    fn next_candidate(&self, opener: usize, after: usize) -> Option<usize> {
        (after + 1..self.partner.len())
            .find(|&j| self.partner[j] == FREE && (self.allowed)(opener, j))
    }

    /// Extends the current partial pairing to the lexicographically first
    /// completion, backtracking when a level has no candidates left.
    fn descend(&mut self) -> bool {
        loop {
            let Some(opener) = self.first_free() else {
                return true;
            };
            match self.next_candidate(opener, opener) {
                Some(j) => self.push(opener, j),
                None => {
                    if !self.advance() {
                        return false;
                    }
                }
            }
        }
    }

    fn push(&mut self, a: usize, b: usize) {
        self.partner[a] = b;
        self.partner[b] = a;
        self.stack.push((a, b));
    }

    /// Moves the deepest level to its next candidate, popping exhausted
    /// levels. Returns false when the search space is exhausted.
    fn advance(&mut self) -> bool {
        while let Some((a, b)) = self.stack.pop() {
            self.partner[a] = FREE;
            self.partner[b] = FREE;
            if let Some(j) = self.next_candidate(a, b) {
                self.push(a, j);
                return true;
            }
        }
        false
    }
}

impl<F: Fn(usize, usize) -> bool> Iterator for PairingIter<F> {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.descend()
        } else {
            self.advance() && self.descend()
        };
        if !found {
            self.done = true;
            return None;
        }
        Some(Pairing {
            partner: self.partner.clone(),
        })
    }
}

/// Union–find over `0..n` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn pairing_counts_match_double_factorial() {
        assert_eq!(enumerate_pairings(0).unwrap().count(), 1);
        let two: Vec<_> = enumerate_pairings(2).unwrap().collect();
        assert_eq!(two, vec![Pairing::from_one_based(2, &[(1, 2)]).unwrap()]);
        assert_eq!(enumerate_pairings(4).unwrap().count(), 3);
        // (n-1)!! recurrence: P(n) = (n-1) P(n-2)
        let mut expected = 1u128;
        for n in (2..=12).step_by(2) {
            expected *= (n - 1) as u128;
            assert_eq!(pairing_count(n), expected);
            let all: BTreeSet<_> = enumerate_pairings(n).unwrap().collect();
            assert_eq!(all.len() as u128, expected, "n={n}");
        }
        assert_eq!(pairing_count(8), 105);
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let v: Vec<_> = enumerate_pairings(6).unwrap().collect();
        assert!(v.windows(2).all(|w| w[0].as_slice() < w[1].as_slice()));
        assert_eq!(v[0], Pairing::from_one_based(6, &[(1, 2), (3, 4), (5, 6)]).unwrap());
    }

    #[test]
    fn enumeration_rejects_odd_and_oversized() {
        assert!(matches!(enumerate_pairings(5), Err(Error::InvalidInput(_))));
        assert!(matches!(
            enumerate_pairings(18),
            Err(Error::CapExceeded { got: 18, cap: 16, .. })
        ));
    }

    #[test]
    fn restricted_enumeration_prunes() {
        // colors 0,1,1,0: only {0,3},{1,2}
        let colors = [0, 1, 1, 0];
        let v: Vec<_> = enumerate_pairings_where(4, 16, |a, b| colors[a] == colors[b])
            .unwrap()
            .collect();
        assert_eq!(v, vec![Pairing::from_pairs(4, &[(0, 3), (1, 2)]).unwrap()]);
        assert_eq!(enumerate_pairings_where(3, 16, |_, _| true).unwrap().count(), 0);
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(cycle_count(&[0, 1, 2, 3, 4]).unwrap(), 5);
        // (1 2 3)(4 5) in 0-based form
        assert_eq!(cycle_count(&[1, 2, 0, 4, 3]).unwrap(), 2);
        assert!(cycle_count(&[0, 0, 1]).is_err());
        assert!(cycle_count(&[0, 3]).is_err());
    }

    #[test]
    fn rho_pi_for_single_spoke() {
        // p = q = 1: rho = id, pi = (1 2), rho∘pi = (1 2)
        let rho = [0, 1];
        let pi = Pairing::from_one_based(2, &[(1, 2)]).unwrap();
        let rp = compose(&rho, pi.as_slice());
        assert_eq!(cycle_count(&rp).unwrap(), 1);
    }

    #[test]
    fn pairing_validation() {
        assert!(Pairing::from_partners(vec![1, 0, 2]).is_err());
        assert!(Pairing::from_partners(vec![0, 1]).is_err());
        assert!(Pairing::from_partners(vec![1, 2, 0, 3]).is_err());
        assert!(Pairing::from_pairs(4, &[(0, 1)]).is_err());
        assert!(Pairing::from_pairs(4, &[(0, 1), (1, 2)]).is_err());
    }

    #[test]
    fn disjoint_sets_count_components() {
        let mut d = DisjointSets::new(6);
        assert_eq!(d.set_count(), 6);
        d.union(0, 1);
        d.union(2, 3);
        assert!(!d.union(1, 0));
        d.union(1, 3);
        assert_eq!(d.set_count(), 3);
        assert_eq!(d.find(0), d.find(2));
    }
}
