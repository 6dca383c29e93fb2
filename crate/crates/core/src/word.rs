//! Words in multi-twist generators.
//!
//! A [`TwistWord`] is a product of syllables `T_F^e`, where `F` indexes a
//! curve family of the ambient system and `e` is a nonzero integer. Words are
//! read as compositions: the word `[B, A]` is `T_B ∘ T_A`, so the rightmost
//! syllable acts first.

use alloc::vec::Vec;
use core::fmt;

/// One syllable `T_F^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub family: usize,
    pub exp: i64,
}

impl Letter {
    pub const fn new(family: usize, exp: i64) -> Self {
        Self { family, exp }
    }

    pub const fn inverse(self) -> Self {
        Self {
            family: self.family,
            exp: -self.exp,
        }
    }
}

/// A freely reduced word: adjacent syllables lie in distinct families and
/// every exponent is nonzero. All constructors reduce.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistWord {
    letters: Vec<Letter>,
}

/// Freely reduces an arbitrary syllable sequence: merges adjacent syllables
/// of the same family, drops zero exponents, and cascades cancellations.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> TwistWord {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if l.exp == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.family == l.family => {
                top.exp += l.exp;
                if top.exp == 0 {
                    out.pop();
                }
            }
            _ => out.push(l),
        }
    }
    TwistWord { letters: out }
}

/// Splits a freely reduced word as `w = conjugator · core · conjugator⁻¹`
/// with `core` cyclically reduced (first and last syllables in different
/// families, or at most one syllable).
///
/// When the outer syllables share a family but do not cancel, the last
/// syllable is conjugated around to the front: `T^p u T^q` becomes core
/// `T^{p+q} u` with conjugator `T^{-q}`.
pub fn cyclic_reduce(w: &TwistWord) -> (TwistWord, TwistWord) {
    let mut core: Vec<Letter> = w.letters.clone();
    let mut conjugator: Vec<Letter> = Vec::new();
    while core.len() >= 2 {
        let first = core[0];
        let last = core[core.len() - 1];
        if first.family != last.family {
            break;
        }
        let c = Letter::new(last.family, -last.exp);
        conjugator.push(c);
        core.pop();
        if first.exp + last.exp == 0 {
            core.remove(0);
        } else {
            core[0].exp = first.exp + last.exp;
        }
    }
    (TwistWord { letters: core }, free_reduce(conjugator))
}

impl TwistWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        free_reduce(letters)
    }

    /// Convenience constructor from `(family, exponent)` pairs.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        free_reduce(pairs.iter().map(|&(f, e)| Letter::new(f, e)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of generator occurrences, `Σ |e|`.
    pub fn letter_length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Self {
        TwistWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &TwistWord) -> Self {
        free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = TwistWord::empty();
        for _ in 0..n {
            out = out.concat(self);
        }
        out
    }

    /// Conjugate `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &TwistWord) -> Self {
        g.concat(self).concat(&g.inverse())
    }

    /// Cyclic rotation by `k` syllables. Only meaningful on cyclically
    /// reduced words, where the result is again cyclically reduced.
    pub fn rotate(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut v = Vec::with_capacity(self.letters.len());
        v.extend_from_slice(&self.letters[k..]);
        v.extend_from_slice(&self.letters[..k]);
        free_reduce(v)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(f), Some(l)) => self.letters.len() == 1 || f.family != l.family,
            _ => true,
        }
    }

    /// Families appearing in the word, sorted and deduplicated.
    pub fn families(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self.letters.iter().map(|l| l.family).collect();
        f.sort_unstable();
        f.dedup();
        f
    }

    /// Renders the word with the given family names, e.g. `B A^-1`.
    pub fn display_with<'a>(&'a self, names: &'a [&'a str]) -> impl fmt::Display + 'a {
        NamedWord { word: self, names }
    }
}

struct NamedWord<'a> {
    word: &'a TwistWord,
    names: &'a [&'a str],
}

impl fmt::Display for NamedWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(l.family) {
                Some(n) => f.write_str(n)?,
                None => write!(f, "F{}", l.family)?,
            }
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 2] = ["A", "B"];
        fmt::Display::fmt(&self.display_with(&NAMES), f)
    }
}
