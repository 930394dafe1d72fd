//! Same-type statistics and γ-weights of pairings.
//!
//! A pair of letters with equal types (`xx` or `ss`) picks up `γ_c` under the
//! cross contraction; a mixed pair picks up 1. Under the straight
//! contraction the roles swap.

use alloc::format;

use crate::annulus::{enumerate_nc2_disc, AnnularFrame};
use crate::error::{invalid, Result};
use crate::perm::Pairing;
use crate::poly::{Color, GammaPoly, Monomial};
use crate::words::{ColorWord, TypeWord, Word};
use crate::Channel;

fn check_len(pi: &Pairing, n: usize) -> Result<()> {
    if pi.len() != n {
        return Err(invalid(format!(
            "pairing has {} points but the word has {n} letters",
            pi.len()
        )));
    }
    Ok(())
}

/// `s(π; τ)`: pairs whose letters have equal type.
pub fn same_type_count(pi: &Pairing, tau: &TypeWord) -> Result<usize> {
    check_len(pi, tau.len())?;
    Ok(pi.pairs().filter(|&(x, y)| tau[x] == tau[y]).count())
}

/// `s_sp(π; τ)`: spokes whose endpoints have equal type.
pub fn spoke_type_count(pi: &Pairing, tau: &TypeWord, frame: AnnularFrame) -> Result<usize> {
    check_len(pi, tau.len())?;
    frame.check_size(pi.len())?;
    Ok(pi
        .pairs()
        .filter(|&(x, y)| frame.is_inner(x) != frame.is_inner(y) && tau[x] == tau[y])
        .count())
}

/// Single-color weight of an annular diagram.
///
/// Complex: `γ^s`. Real: `γ^s + γ^{s + a - 2 s_sp}`.
pub fn pair_weight(
    pi: &Pairing,
    tau: &TypeWord,
    frame: AnnularFrame,
    channel: Channel,
) -> Result<GammaPoly> {
    let s = same_type_count(pi, tau)? as u32;
    let complex = GammaPoly::gamma(s);
    match channel {
        Channel::Complex => Ok(complex),
        Channel::Real => {
            let a = crate::spoke_arc::spoke_count(pi, frame)? as u32;
            let ssp = spoke_type_count(pi, tau, frame)? as u32;
            Ok(complex + GammaPoly::gamma(s + a - 2 * ssp))
        }
    }
}

/// Product over pairs of `γ_c` for the pairs that pick it up; zero if some
/// pair mixes colors. With `straight_spokes`, spokes pick up `γ_c` when their
/// types differ instead of when they agree.
fn contraction_weight(pi: &Pairing, word: &Word, frame: AnnularFrame, straight_spokes: bool) -> GammaPoly {
    let mut m = Monomial::one();
    for (x, y) in pi.pairs() {
        let (tx, cx) = word.letter(x);
        let (ty, cy) = word.letter(y);
        if cx != cy {
            return GammaPoly::zero();
        }
        let spoke = frame.is_inner(x) != frame.is_inner(y);
        if (tx == ty) != (straight_spokes && spoke) {
            m = m.mul(&Monomial::var(cx, 1));
        }
    }
    GammaPoly::term(1, m)
}

/// All pairs cross: `Π γ_c` over same-type pairs.
pub fn cross_weight(pi: &Pairing, word: &Word, frame: AnnularFrame) -> Result<GammaPoly> {
    check_len(pi, word.len())?;
    frame.check_size(pi.len())?;
    Ok(contraction_weight(pi, word, frame, false))
}

/// Spokes straight, arcs cross.
pub fn straight_weight(pi: &Pairing, word: &Word, frame: AnnularFrame) -> Result<GammaPoly> {
    check_len(pi, word.len())?;
    frame.check_size(pi.len())?;
    Ok(contraction_weight(pi, word, frame, true))
}

/// Mirrors the outer circle: position `p + j` goes to `p + q − 1 − j`.
pub fn reflect_outer(pi: &Pairing, frame: AnnularFrame) -> Pairing {
    let (p, q) = (frame.p(), frame.q());
    let r = |t: usize| if t < p { t } else { p + q - 1 - (t - p) };
    let partner = (0..frame.n()).map(|t| r(pi.partner(r(t)))).collect();
    Pairing::from_partners(partner).expect("conjugate of an involution")
}

/// Multi-color weight attributed to an annular diagram `π` of the word
/// `inner ++ outer`.
///
/// Complex: the cross weight of `π`. Real: additionally the straight weight
/// of the outer-mirrored diagram. Straight spokes reverse the outer circle,
/// so the leading straight diagrams are the mirror images of `NC₂(p, q)`.
/// With one color the sum over diagrams equals the sum of
/// `γ^s + γ^{s + a − 2 s_sp}` evaluated on `π` itself, but diagram by diagram
/// the two differ, and with several colors only the mirrored form is right.
pub fn diagram_weight(
    pi: &Pairing,
    word: &Word,
    frame: AnnularFrame,
    channel: Channel,
) -> Result<GammaPoly> {
    let mut w = cross_weight(pi, word, frame)?;
    if channel == Channel::Real {
        w += straight_weight(&reflect_outer(pi, frame), word, frame)?;
    }
    Ok(w)
}

/// Weight of a disc pairing on a colored word: `Π γ_c` over same-type
/// pairs, zero if some pair mixes colors.
pub fn disc_weight(pi: &Pairing, word: &Word) -> Result<GammaPoly> {
    check_len(pi, word.len())?;
    let mut m = Monomial::one();
    for (x, y) in pi.pairs() {
        let (tx, cx) = word.letter(x);
        let (ty, cy) = word.letter(y);
        if cx != cy {
            return Ok(GammaPoly::zero());
        }
        if tx == ty {
            m = m.mul(&Monomial::var(cx, 1));
        }
    }
    Ok(GammaPoly::term(1, m))
}

/// `F(τ) = Σ_{π ∈ NC₂(|τ|)} γ^{s(π; τ)}`.
pub fn arc_weight(tau: &TypeWord) -> Result<GammaPoly> {
    multicolor_arc_weight(tau, &ColorWord::constant(Color::default(), tau.len()))
}

/// `F_c(τ)`: the sum over color-respecting non-crossing pairings.
pub fn multicolor_arc_weight(tau: &TypeWord, c: &ColorWord) -> Result<GammaPoly> {
    if !tau.len().is_multiple_of(2) {
        return Err(invalid(format!("arc of odd length {}", tau.len())));
    }
    let word = Word::new(tau.clone(), c.clone())?;
    let mut acc = GammaPoly::zero();
    for pi in enumerate_nc2_disc(word.len()) {
        acc += disc_weight(&pi, &word)?;
    }
    Ok(acc)
}
