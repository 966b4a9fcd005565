//! Alphabets, tape symbols, and n-words.

use std::fmt;

use crate::error::{Error, Result};

/// Textual rendering of the left end marker.
pub const LEFT_MARKER: char = '>';
/// Textual rendering of the right end marker.
pub const RIGHT_MARKER: char = '<';
/// Textual rendering of the convolution pad.
pub const PAD: char = '_';

/// Characters that can never be input symbols: the markers, the pad, and the
/// punctuation of the text format.
const RESERVED: &[char] = &[LEFT_MARKER, RIGHT_MARKER, PAD, '(', ')', ',', '=', '#', '?'];

/// A symbol that can sit under a head: an input letter or one of the markers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Start,
    Letter(char),
    End,
}

impl Sym {
    pub fn to_char(self) -> char {
        match self {
            Sym::Start => LEFT_MARKER,
            Sym::End => RIGHT_MARKER,
            Sym::Letter(c) => c,
        }
    }

    pub fn from_char(c: char) -> Sym {
        match c {
            LEFT_MARKER => Sym::Start,
            RIGHT_MARKER => Sym::End,
            c => Sym::Letter(c),
        }
    }

    pub fn letter(self) -> Option<char> {
        match self {
            Sym::Letter(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A nonempty, duplicate-free, sorted set of input characters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let mut v: Vec<char> = Vec::new();
        for c in symbols {
            if RESERVED.contains(&c) || c.is_whitespace() {
                return Err(Error::Alphabet(format!("{c:?} is reserved")));
            }
            if v.contains(&c) {
                return Err(Error::Alphabet(format!("duplicate symbol {c:?}")));
            }
            v.push(c);
        }
        if v.is_empty() {
            return Err(Error::Alphabet("alphabet is empty".into()));
        }
        v.sort_unstable();
        Ok(Alphabet(v))
    }

    /// Shorthand for tests and fixtures: every character of `s` is a symbol.
    pub fn from_str_chars(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// Letters followed by both markers.
    pub fn extended(&self) -> Vec<Sym> {
        let mut v = vec![Sym::Start];
        v.extend(self.0.iter().map(|&c| Sym::Letter(c)));
        v.push(Sym::End);
        v
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut v = self.0.clone();
        for &c in &other.0 {
            if !v.contains(&c) {
                v.push(c);
            }
        }
        v.sort_unstable();
        Alphabet(v)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A tuple of words, one per tape.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NWord(Vec<Vec<char>>);

impl NWord {
    pub fn new(components: Vec<Vec<char>>) -> Self {
        NWord(components)
    }

    pub fn from_strs<S: AsRef<str>>(parts: &[S]) -> Self {
        NWord(parts.iter().map(|s| s.as_ref().chars().collect()).collect())
    }

    pub fn empty(arity: usize) -> Self {
        NWord(vec![Vec::new(); arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Vec<char>] {
        &self.0
    }

    pub fn component(&self, k: usize) -> &[char] {
        &self.0[k]
    }

    pub fn into_components(self) -> Vec<Vec<char>> {
        self.0
    }

    pub fn max_len(&self) -> usize {
        self.0.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for w in &self.0 {
            if let Some(&c) = w.iter().find(|&&c| !alphabet.contains(c)) {
                return Err(Error::ForeignSymbol { symbol: c });
            }
        }
        Ok(())
    }

    /// Componentwise concatenation.
    pub fn concat(&self, other: &NWord) -> NWord {
        NWord(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.iter().chain(b).copied().collect())
                .collect(),
        )
    }

    /// Componentwise reversal.
    pub fn reversed(&self) -> NWord {
        NWord(
            self.0
                .iter()
                .map(|w| w.iter().rev().copied().collect())
                .collect(),
        )
    }

    /// Drops component `k` (zero-based).
    pub fn without(&self, k: usize) -> NWord {
        let mut v = self.0.clone();
        v.remove(k);
        NWord(v)
    }

    /// Inserts `w` as component `k` (zero-based).
    pub fn with_inserted(&self, k: usize, w: Vec<char>) -> NWord {
        let mut v = self.0.clone();
        v.insert(k, w);
        NWord(v)
    }

    /// Keeps only the listed components, in the given order.
    pub fn select(&self, indices: &[usize]) -> NWord {
        NWord(indices.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|w| w.iter().collect()).collect()
    }
}

impl fmt::Display for NWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "ε".to_string()
                } else {
                    w.iter().collect()
                }
            })
            .collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}
