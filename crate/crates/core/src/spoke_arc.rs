//! Spoke/arc decomposition of annular non-crossing pairings.
//!
//! A diagram in `NC₂(p, q)` with `a` spokes is described by
//!
//! * the inner endpoints `U[0..a]` and outer endpoints `V[0..a]`, spoke `r`
//!   joining `U[r]` to `V[r]`;
//! * inner arc lengths `ι` (summing to `p - a`) and outer arc lengths `o`
//!   (summing to `q - a`), all even;
//! * a non-crossing pairing of each arc.
//!
//! Inner arc `r` is the run of points strictly after `U[r]` (in circle
//! order) up to `U[r+1]`. Because spokes cannot cross, the outer endpoints
//! appear in the reverse cyclic order, so outer arc `r` is the run strictly
//! after `V[r]` up to `V[r-1]`. Indices are taken mod `a`.
//!
//! Rotating all spoke labels together gives the same diagram; [`decompose`]
//! picks the rotation with `U[0]` minimal.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::annulus::{enumerate_nc2_disc, is_noncrossing_annular, is_noncrossing_disc, AnnularFrame};
use crate::combinatorics::compositions;
use crate::error::{invalid, Result};
use crate::perm::Pairing;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpokeArcConfig {
    pub a: usize,
    /// Inner endpoints, 0-based positions in `0..p`.
    pub u: Vec<usize>,
    /// Outer endpoints, 0-based positions in `p..p+q`.
    pub v: Vec<usize>,
    pub iota: Vec<usize>,
    pub o: Vec<usize>,
    /// Pairing of inner arc `r`, relabelled `0..iota[r]` in circle order.
    pub inner_pairings: Vec<Pairing>,
    pub outer_pairings: Vec<Pairing>,
}

impl SpokeArcConfig {
    /// Inner arc `r` as global positions in circle order.
    pub fn inner_arc(&self, frame: AnnularFrame, r: usize) -> Vec<usize> {
        let p = frame.p();
        (1..=self.iota[r]).map(|k| (self.u[r] + k) % p).collect()
    }

    /// Outer arc `r` as global positions in circle order.
    pub fn outer_arc(&self, frame: AnnularFrame, r: usize) -> Vec<usize> {
        let (p, q) = (frame.p(), frame.q());
        (1..=self.o[r]).map(|k| p + (self.v[r] - p + k) % q).collect()
    }

    /// Checks every structural invariant against `frame`.
    pub fn validate(&self, frame: AnnularFrame) -> Result<()> {
        let (p, q, a) = (frame.p(), frame.q(), self.a);
        if a == 0 {
            return Err(invalid("a configuration needs at least one spoke"));
        }
        let lens = [
            ("U", self.u.len()),
            ("V", self.v.len()),
            ("iota", self.iota.len()),
            ("o", self.o.len()),
            ("inner_pairings", self.inner_pairings.len()),
            ("outer_pairings", self.outer_pairings.len()),
        ];
        for (name, len) in lens {
            if len != a {
                return Err(invalid(format!("{name} has length {len}, expected a={a}")));
            }
        }
        if self.iota.iter().sum::<usize>() + a != p {
            return Err(invalid(format!("inner arc lengths must sum to p-a={}", p as isize - a as isize)));
        }
        if self.o.iter().sum::<usize>() + a != q {
            return Err(invalid(format!("outer arc lengths must sum to q-a={}", q as isize - a as isize)));
        }
        if self.iota.iter().chain(&self.o).any(|l| l % 2 != 0) {
            return Err(invalid("arc lengths must be even"));
        }
        for r in 0..a {
            if self.u[r] >= p {
                return Err(invalid(format!("inner endpoint {} is not on the inner circle", self.u[r])));
            }
            if self.v[r] < p || self.v[r] >= p + q {
                return Err(invalid(format!("outer endpoint {} is not on the outer circle", self.v[r])));
            }
            let next = (r + 1) % a;
            if (self.u[r] + self.iota[r] + 1) % p != self.u[next] {
                return Err(invalid(format!("inner endpoints disagree with arc length iota[{r}]")));
            }
            let prev = (r + a - 1) % a;
            if (self.v[r] - p + self.o[r] + 1) % q != self.v[prev] - p {
                return Err(invalid(format!("outer endpoints disagree with arc length o[{r}]")));
            }
            for (pi, len, side) in [
                (&self.inner_pairings[r], self.iota[r], "inner"),
                (&self.outer_pairings[r], self.o[r], "outer"),
            ] {
                if pi.len() != len {
                    return Err(invalid(format!("{side} arc {r} pairing has the wrong size")));
                }
                if !is_noncrossing_disc(pi) {
                    return Err(invalid(format!("{side} arc {r} pairing is crossing")));
                }
            }
        }
        Ok(())
    }
}

/// Number of pairs joining the two circles.
pub fn spoke_count(pi: &Pairing, frame: AnnularFrame) -> Result<usize> {
    frame.check_size(pi.len())?;
    Ok((0..frame.p()).filter(|&t| !frame.is_inner(pi.partner(t))).count())
}

/// Canonical decomposition, with `U[0]` the smallest inner spoke endpoint.
pub fn decompose(pi: &Pairing, frame: AnnularFrame) -> Result<SpokeArcConfig> {
    if !is_noncrossing_annular(pi, frame)? {
        return Err(invalid("pairing is not annular non-crossing"));
    }
    let (p, q) = (frame.p(), frame.q());
    let u: Vec<usize> = (0..p).filter(|&t| !frame.is_inner(pi.partner(t))).collect();
    let a = u.len();
    let v: Vec<usize> = u.iter().map(|&t| pi.partner(t)).collect();
    let iota: Vec<usize> = (0..a).map(|r| (u[(r + 1) % a] + p - u[r] - 1) % p).collect();
    let o: Vec<usize> = (0..a)
        .map(|r| (v[(r + a - 1) % a] + q - v[r] - 1) % q)
        .collect();
    let mut cfg = SpokeArcConfig {
        a,
        u,
        v,
        iota,
        o,
        inner_pairings: Vec::with_capacity(a),
        outer_pairings: Vec::with_capacity(a),
    };
    for r in 0..a {
        let inner = pi.restrict(&cfg.inner_arc(frame, r))?;
        let outer = pi.restrict(&cfg.outer_arc(frame, r))?;
        cfg.inner_pairings.push(inner);
        cfg.outer_pairings.push(outer);
    }
    Ok(cfg)
}

/// Rebuilds the diagram. Any rotation of the spoke labels is accepted.
pub fn compose(cfg: &SpokeArcConfig, frame: AnnularFrame) -> Result<Pairing> {
    cfg.validate(frame)?;
    let pi = compose_unchecked(cfg, frame);
    if !is_noncrossing_annular(&pi, frame)? {
        return Err(invalid("configuration does not describe an annular non-crossing diagram"));
    }
    Ok(pi)
}

fn compose_unchecked(cfg: &SpokeArcConfig, frame: AnnularFrame) -> Pairing {
    let mut partner = vec![0; frame.n()];
    for r in 0..cfg.a {
        partner[cfg.u[r]] = cfg.v[r];
        partner[cfg.v[r]] = cfg.u[r];
        for (pts, pi) in [
            (cfg.inner_arc(frame, r), &cfg.inner_pairings[r]),
            (cfg.outer_arc(frame, r), &cfg.outer_pairings[r]),
        ] {
            for (k, &t) in pts.iter().enumerate() {
                partner[t] = pts[pi.partner(k)];
            }
        }
    }
    Pairing::from_partners(partner).expect("validated configuration yields an involution")
}

/// Every labelled configuration with `a` spokes: all arc-length vectors,
/// all arc pairings, and every choice of `U[0]` and `V[0]`. Each diagram
/// with `a` spokes appears exactly `a` times.
pub fn labeled_configs(frame: AnnularFrame, a: usize) -> Vec<SpokeArcConfig> {
    let mut out = Vec::new();
    for_each_shape(frame, a, |iota, o, inner, outer| {
        for u0 in 0..frame.p() {
            for v0 in 0..frame.q() {
                out.push(build(frame, u0, frame.p() + v0, iota, o, inner, outer));
            }
        }
    });
    out
}

/// Canonical configurations of every diagram in `NC₂(p, q)`, unordered.
pub(crate) fn canonical_pairings(frame: AnnularFrame) -> Vec<Pairing> {
    let mut out = Vec::new();
    if !frame.n().is_multiple_of(2) {
        return out;
    }
    let p = frame.p();
    for a in 1..=p.min(frame.q()) {
        for_each_shape(frame, a, |iota, o, inner, outer| {
            // U[0] is the minimum iff the walk U[0] → U[a-1] does not wrap.
            let span: usize = iota[..a - 1].iter().map(|l| l + 1).sum();
            for u0 in 0..p - span {
                for v0 in 0..frame.q() {
                    let cfg = build(frame, u0, p + v0, iota, o, inner, outer);
                    out.push(compose_unchecked(&cfg, frame));
                }
            }
        });
    }
    out
}

fn build(
    frame: AnnularFrame,
    u0: usize,
    v0: usize,
    iota: &[usize],
    o: &[usize],
    inner: &[Pairing],
    outer: &[Pairing],
) -> SpokeArcConfig {
    let (p, q, a) = (frame.p(), frame.q(), iota.len());
    let mut u = Vec::with_capacity(a);
    let mut v = vec![0; a];
    let mut t = u0;
    for &len in iota {
        u.push(t);
        t = (t + len + 1) % p;
    }
    // V[r-1] follows V[r] after o[r] arc points
    let mut s = v0 - p;
    v[0] = v0;
    for r in (1..a).rev() {
        let step = o[(r + 1) % a] + 1;
        s = (s + step) % q;
        v[r] = p + s;
    }
    SpokeArcConfig {
        a,
        u,
        v,
        iota: iota.to_vec(),
        o: o.to_vec(),
        inner_pairings: inner.to_vec(),
        outer_pairings: outer.to_vec(),
    }
}

/// Calls `f` for every arc-length vector pair and every choice of arc
/// pairings with `a` spokes.
fn for_each_shape<F>(frame: AnnularFrame, a: usize, mut f: F)
where
    F: FnMut(&[usize], &[usize], &[Pairing], &[Pairing]),
{
    let (p, q) = (frame.p(), frame.q());
    if a == 0 || a > p.min(q) || !(p - a).is_multiple_of(2) || !(q - a).is_multiple_of(2) {
        return;
    }
    let max_len = (p - a).max(q - a);
    let disc: Vec<Vec<Pairing>> = (0..=max_len).map(enumerate_nc2_disc).collect();
    for iota in compositions(p - a, a, 2) {
        for o in compositions(q - a, a, 2) {
            let inner_choices: Vec<&[Pairing]> = iota.iter().map(|&l| disc[l].as_slice()).collect();
            let outer_choices: Vec<&[Pairing]> = o.iter().map(|&l| disc[l].as_slice()).collect();
            for_each_product(&inner_choices, |inner| {
                for_each_product(&outer_choices, |outer| f(&iota, &o, inner, outer));
            });
        }
    }
}

/// Cartesian product of the choice lists, passed as a slice of picks.
fn for_each_product<F: FnMut(&[Pairing])>(choices: &[&[Pairing]], mut f: F) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut pick: Vec<Pairing> = choices.iter().map(|c| c[0].clone()).collect();
    loop {
        f(&pick);
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                pick[k] = choices[k][idx[k]].clone();
                break;
            }
            idx[k] = 0;
            pick[k] = choices[k][0].clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::enumerate_nc2_annular;

    fn pr(n: usize, pairs: &[(usize, usize)]) -> Pairing {
        Pairing::from_one_based(n, pairs).unwrap()
    }

    #[test]
    fn worked_example() {
        let f = AnnularFrame::new(4, 6).unwrap();
        let pi = pr(10, &[(1, 5), (2, 10), (3, 4), (6, 9), (7, 8)]);
        let cfg = decompose(&pi, f).unwrap();
        assert_eq!(cfg.a, 2);
        assert_eq!(cfg.u, vec![0, 1]);
        assert_eq!(cfg.v, vec![4, 9]);
        assert_eq!(cfg.iota, vec![0, 2]);
        assert_eq!(cfg.o, vec![4, 0]);
        assert_eq!(cfg.inner_pairings[1], pr(2, &[(1, 2)]));
        assert_eq!(cfg.outer_pairings[0], pr(4, &[(1, 4), (2, 3)]));
        assert_eq!(compose(&cfg, f).unwrap(), pi);
        assert_eq!(spoke_count(&pi, f).unwrap(), 2);
    }

    #[test]
    fn trivial_decompositions() {
        let f11 = AnnularFrame::new(1, 1).unwrap();
        let cfg = decompose(&pr(2, &[(1, 2)]), f11).unwrap();
        assert_eq!((cfg.a, cfg.u.clone(), cfg.v.clone()), (1, vec![0], vec![1]));
        assert_eq!((cfg.iota.clone(), cfg.o.clone()), (vec![0], vec![0]));
        assert_eq!(compose(&cfg, f11).unwrap(), pr(2, &[(1, 2)]));

        let f22 = AnnularFrame::new(2, 2).unwrap();
        let cfg = decompose(&pr(4, &[(1, 3), (2, 4)]), f22).unwrap();
        assert_eq!((cfg.u.clone(), cfg.v.clone()), (vec![0, 1], vec![2, 3]));
        assert_eq!(cfg.iota, vec![0, 0]);

        let f31 = AnnularFrame::new(3, 1).unwrap();
        assert_eq!(spoke_count(&pr(4, &[(1, 4), (2, 3)]), f31).unwrap(), 1);
    }

    #[test]
    fn rotated_labels_compose_to_same_diagram() {
        let f = AnnularFrame::new(4, 6).unwrap();
        let pi = pr(10, &[(1, 5), (2, 10), (3, 4), (6, 9), (7, 8)]);
        let c = decompose(&pi, f).unwrap();
        let rot = SpokeArcConfig {
            a: 2,
            u: vec![c.u[1], c.u[0]],
            v: vec![c.v[1], c.v[0]],
            iota: vec![c.iota[1], c.iota[0]],
            o: vec![c.o[1], c.o[0]],
            inner_pairings: vec![c.inner_pairings[1].clone(), c.inner_pairings[0].clone()],
            outer_pairings: vec![c.outer_pairings[1].clone(), c.outer_pairings[0].clone()],
        };
        assert_eq!(compose(&rot, f).unwrap(), pi);
    }

    #[test]
    fn inconsistent_configs_are_rejected() {
        let f = AnnularFrame::new(4, 6).unwrap();
        let pi = pr(10, &[(1, 5), (2, 10), (3, 4), (6, 9), (7, 8)]);
        let good = decompose(&pi, f).unwrap();
        let mut bad = good.clone();
        bad.iota = vec![2, 0];
        assert!(compose(&bad, f).is_err());
        let mut bad = good.clone();
        bad.v = vec![5, 9];
        assert!(compose(&bad, f).is_err());
        let mut bad = good;
        bad.a = 3;
        assert!(compose(&bad, f).is_err());
        assert!(decompose(&pr(4, &[(1, 2), (3, 4)]), AnnularFrame::new(2, 2).unwrap()).is_err());
    }

    #[test]
    fn round_trip_and_orbit_counts() {
        for p in 1..=7 {
            for q in 1..=(10 - p) {
                let f = AnnularFrame::new(p, q).unwrap();
                let all = enumerate_nc2_annular(f);
                for pi in &all {
                    let cfg = decompose(pi, f).unwrap();
                    assert_eq!(&compose(&cfg, f).unwrap(), pi);
                }
                for a in 1..=p.min(q) {
                    let with_a = all.iter().filter(|pi| spoke_count(pi, f).unwrap() == a).count();
                    assert_eq!(labeled_configs(f, a).len(), a * with_a, "p={p} q={q} a={a}");
                }
            }
        }
    }
}
