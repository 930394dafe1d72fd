//! Type and color words, and their text form.
//!
//! A word is written either compactly, one character per letter
//! (`"xxs"`, all letters of color 1), or as whitespace-separated tokens
//! carrying a color (`"x1 s2 x1"`). `x` is the matrix itself and `s` its
//! adjoint. The empty string is the empty word.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;
use core::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::poly::Color;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    One,
    Star,
}

impl Ty {
    pub fn flip(self) -> Ty {
        match self {
            Ty::One => Ty::Star,
            Ty::Star => Ty::One,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Ty::One => 'x',
            Ty::Star => 's',
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeWord(pub Vec<Ty>);

impl TypeWord {
    pub fn pure(n: usize) -> Self {
        TypeWord(alloc::vec![Ty::One; n])
    }

    /// `(x s)^k`.
    pub fn alternating(k: usize) -> Self {
        TypeWord((0..2 * k).map(|i| if i % 2 == 0 { Ty::One } else { Ty::Star }).collect())
    }

    /// Reverses the letters and swaps `x` with `s`.
    pub fn transpose(&self) -> Self {
        TypeWord(self.0.iter().rev().map(|t| t.flip()).collect())
    }
}

impl Deref for TypeWord {
    type Target = [Ty];
    fn deref(&self) -> &[Ty] {
        &self.0
    }
}

impl fmt::Display for TypeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.letter())?;
        }
        Ok(())
    }
}

impl FromStr for TypeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let w: Word = s.parse()?;
        Ok(w.types)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorWord(pub Vec<Color>);

impl ColorWord {
    pub fn constant(c: Color, n: usize) -> Self {
        ColorWord(alloc::vec![c; n])
    }
}

impl Deref for ColorWord {
    type Target = [Color];
    fn deref(&self) -> &[Color] {
        &self.0
    }
}

/// A type word together with its colors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub types: TypeWord,
    pub colors: ColorWord,
}

impl Word {
    pub fn new(types: TypeWord, colors: ColorWord) -> Result<Self> {
        if types.len() != colors.len() {
            return Err(invalid(format!(
                "type word has {} letters but color word has {}",
                types.len(),
                colors.len()
            )));
        }
        Ok(Word { types, colors })
    }

    /// Every letter gets the default color.
    pub fn single(types: TypeWord) -> Self {
        let colors = ColorWord::constant(Color::default(), types.len());
        Word { types, colors }
    }

    pub fn colored(types: TypeWord, c: Color) -> Self {
        let colors = ColorWord::constant(c, types.len());
        Word { types, colors }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn letter(&self, i: usize) -> (Ty, Color) {
        (self.types[i], self.colors[i])
    }

    pub fn transpose(&self) -> Self {
        Word {
            types: self.types.transpose(),
            colors: ColorWord(self.colors.iter().rev().copied().collect()),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut out = self.clone();
        out.types.0.extend_from_slice(&other.types);
        out.colors.0.extend_from_slice(&other.colors);
        out
    }

    /// Distinct colors in order of first use.
    pub fn color_set(&self) -> Vec<Color> {
        let mut out: Vec<Color> = Vec::new();
        for &c in self.colors.iter() {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    fn is_single_default(&self) -> bool {
        self.colors.iter().all(|&c| c == Color::default())
    }
}

/// Compact form when every letter has color 1, tokens otherwise.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single_default() {
            return write!(f, "{}", self.types);
        }
        for i in 0..self.len() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", self.types[i].letter(), self.colors[i])?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let tokenized = tokens.len() > 1 || s.chars().any(|c| c.is_ascii_digit());
        let mut w = Word::empty();
        if !tokenized {
            for (i, ch) in s.trim().chars().enumerate() {
                let t = parse_type(ch).ok_or_else(|| bad_token(&String::from(ch), i + 1))?;
                w.types.0.push(t);
                w.colors.0.push(Color::default());
            }
            return Ok(w);
        }
        for (i, tok) in tokens.iter().enumerate() {
            let mut chars = tok.chars();
            let t = chars.next().and_then(parse_type);
            let digits = chars.as_str();
            let color = if digits.is_empty() {
                Some(Color::default())
            } else if digits.chars().all(|c| c.is_ascii_digit()) {
                digits.parse::<u32>().ok().map(Color)
            } else {
                None
            };
            match (t, color) {
                (Some(t), Some(c)) => {
                    w.types.0.push(t);
                    w.colors.0.push(c);
                }
                _ => return Err(bad_token(tok, i + 1)),
            }
        }
        Ok(w)
    }
}

fn parse_type(ch: char) -> Option<Ty> {
    match ch {
        'x' | 'X' => Some(Ty::One),
        's' | 'S' | '*' => Some(Ty::Star),
        _ => None,
    }
}

fn bad_token(tok: &str, pos: usize) -> Error {
    invalid(format!(
        "unrecognized word token '{tok}' at position {pos} (expected x, s, x<color> or s<color>)"
    ))
}
