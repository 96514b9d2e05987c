//! Words over an ordered generator alphabet and the degree-lexicographic order.

use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("duplicate generator name `{0}`")]
    Duplicate(String),
    #[error("alphabet must contain at least one generator")]
    Empty,
    #[error("at most 255 generators are supported")]
    TooLarge,
}

/// An ordered list of generator names; the list position is the total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self, AlphabetError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(AlphabetError::Empty);
        }
        if names.len() > 255 {
            return Err(AlphabetError::TooLarge);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlphabetError::Duplicate(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: u8) -> &str {
        &self.names[idx as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// A monomial: a finite sequence of generator indices. The empty word is the
/// multiplicative identity and the least element of the order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(idx: u8) -> Self {
        Word(vec![idx])
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }

    /// idx^k as a word.
    pub fn power(idx: u8, k: usize) -> Self {
        Word(vec![idx; k])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Splits off the last letter: `uv` -> `(u, v)`.
    pub fn split_last(&self) -> Option<(Word, u8)> {
        let (&last, rest) = self.0.split_last()?;
        Some((Word(rest.to_vec()), last))
    }

    /// Start positions of every occurrence of `pattern` as a contiguous subword.
    pub fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        let n = self.0.len();
        let m = pattern.0.len();
        if m == 0 || m > n {
            return Vec::new();
        }
        (0..=n - m)
            .filter(|&s| self.0[s..s + m] == pattern.0[..])
            .collect()
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[other.0.len() - self.0.len()..] == self.0[..]
    }

    /// Rendering against an alphabet, e.g. `w^2*x`; the empty word prints as `1`.
    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let letter = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == letter {
                run += 1;
            }
            if run == 1 {
                parts.push(alphabet.name(letter).to_string());
            } else {
                parts.push(format!("{}^{}", alphabet.name(letter), run));
            }
            i += run;
        }
        parts.join("*")
    }
}

/// Degree-lexicographic comparison: first by total degree, ties broken
/// left-to-right by generator order.
pub fn cmp_deglex(a: &Word, b: &Word) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.letters().cmp(b.letters()))
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_deglex(self, other)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "g{}", l)?;
        }
        Ok(())
    }
}
