//! Convolution of n-words and bounded enumeration.

use std::fmt;

use crate::error::{Error, Result};
use crate::symbol::{Alphabet, NWord, PAD};

/// One column of a convolution: a letter or the pad (`None`) per track.
pub type Column = Vec<Option<char>>;

/// A word over the padded n-track alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PaddedWord {
    arity: usize,
    columns: Vec<Column>,
}

impl PaddedWord {
    pub fn new(arity: usize, columns: Vec<Column>) -> Self {
        PaddedWord { arity, columns }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Parses space-separated columns such as `aa b_`.
    pub fn parse(arity: usize, text: &str) -> Result<Self> {
        let mut columns = Vec::new();
        for (i, tok) in text.split_whitespace().enumerate() {
            let col: Column = tok
                .chars()
                .map(|c| if c == PAD { None } else { Some(c) })
                .collect();
            if col.len() != arity {
                return Err(Error::Syntax {
                    line: 1,
                    column: i + 1,
                    message: format!("column {tok:?} has {} tracks, expected {arity}", col.len()),
                });
            }
            columns.push(col);
        }
        Ok(PaddedWord { arity, columns })
    }

    /// First violation of the padding rules, as zero-based (track, column).
    pub fn padding_violation(&self) -> Option<(usize, usize)> {
        for k in 0..self.arity {
            let mut padded = false;
            for (h, col) in self.columns.iter().enumerate() {
                match col[k] {
                    None => padded = true,
                    Some(_) if padded => return Some((k, h)),
                    Some(_) => {}
                }
            }
        }
        self.columns
            .iter()
            .position(|c| c.iter().all(Option::is_none))
            .map(|h| (0, h))
    }
}

impl fmt::Display for PaddedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| c.iter().map(|s| s.unwrap_or(PAD)).collect())
            .collect();
        write!(f, "{}", cols.join(" "))
    }
}

pub fn convolve(x: &NWord) -> PaddedWord {
    let m = x.max_len();
    let columns = (0..m)
        .map(|h| {
            x.components()
                .iter()
                .map(|w| w.get(h).copied())
                .collect()
        })
        .collect();
    PaddedWord {
        arity: x.arity(),
        columns,
    }
}

/// Inverse of [`convolve`]; rejects a letter after a pad on the same track
/// and all-pad columns. Track and column in the error are one-based.
pub fn deconvolve(w: &PaddedWord) -> Result<NWord> {
    if let Some((track, column)) = w.padding_violation() {
        return Err(Error::Padding {
            track: track + 1,
            column: column + 1,
        });
    }
    let mut comps = vec![Vec::new(); w.arity];
    for col in &w.columns {
        for (k, s) in col.iter().enumerate() {
            if let Some(c) = s {
                comps[k].push(*c);
            }
        }
    }
    Ok(NWord::new(comps))
}

/// Every word of length at most `max_len`, in shortlex order.
pub fn shortlex(alphabet: &Alphabet, max_len: usize) -> Vec<Vec<char>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<char>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &c in alphabet.symbols() {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Every n-tuple of words with components of length at most `max_len`:
/// shortlex per component, lexicographic across components (first component
/// most significant).
pub fn enumerate_nwords(alphabet: &Alphabet, n: usize, max_len: usize) -> NWords {
    NWords {
        words: shortlex(alphabet, max_len),
        counters: vec![0; n],
        done: false,
    }
}

/// Iterator returned by [`enumerate_nwords`].
#[derive(Debug, Clone)]
pub struct NWords {
    words: Vec<Vec<char>>,
    counters: Vec<usize>,
    done: bool,
}

impl Iterator for NWords {
    type Item = NWord;

    fn next(&mut self) -> Option<NWord> {
        if self.done {
            return None;
        }
        let item = NWord::new(self.counters.iter().map(|&i| self.words[i].clone()).collect());
        // odometer, last component fastest
        let mut k = self.counters.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.counters[k] += 1;
            if self.counters[k] < self.words.len() {
                break;
            }
            self.counters[k] = 0;
        }
        Some(item)
    }
}
