//! Finite binary words: factors, complexity, special factors, conjugacy and
//! periods.
//!
//! Everything here works on a finite prefix. A complexity profile computed
//! from a prefix of length `L` counts only the factors that occur at a start
//! position `<= L - n`, so it is a lower bound on the complexity of any
//! infinite word with that prefix. Profiles therefore carry the prefix length
//! they were computed from.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("factor length {n} is outside 1..={max}")]
    LengthOutOfRange { n: usize, max: usize },
    #[error("factor sets have lengths {short} and {long}; expected consecutive lengths")]
    LengthMismatch { short: usize, long: usize },
    #[error("invalid letter {0:?}; words are over the alphabet {{0, 1}}")]
    InvalidLetter(char),
}

/// A finite word over `{0, 1}`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    /// Wraps raw letters. Panics if any letter is not 0 or 1.
    pub fn from_letters(letters: Vec<u8>) -> Self {
        assert!(letters.iter().all(|&l| l <= 1), "letters must be 0 or 1");
        Word(letters)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: u8) {
        assert!(letter <= 1, "letters must be 0 or 1");
        self.0.push(letter);
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&l| l == 1).count()
    }

    /// `w[start..start+len]` as a new word.
    pub fn slice(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// Rotation by `k`: the first `k` letters moved to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = self.0.clone();
        v.rotate_left(k % self.0.len());
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            f.write_str(if l == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(WordError::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// The distinct factors of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    length: usize,
    members: BTreeSet<Word>,
}

impl FactorSet {
    /// Collects `members`, which must all have length `length`.
    pub fn from_members(length: usize, members: impl IntoIterator<Item = Word>) -> Self {
        let members: BTreeSet<Word> = members.into_iter().collect();
        assert!(members.iter().all(|w| w.len() == length), "factor lengths differ");
        FactorSet { length, members }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.members.iter()
    }

    pub fn members(&self) -> &BTreeSet<Word> {
        &self.members
    }

    pub fn is_subset(&self, other: &FactorSet) -> bool {
        self.length == other.length && self.members.is_subset(&other.members)
    }
}

/// `n -> p(n)` for `n = 1..=counts.len()`, observed on a prefix of known length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub prefix_len: usize,
    /// `counts[n - 1]` is the number of distinct factors of length `n`.
    pub counts: Vec<usize>,
}

impl ComplexityProfile {
    /// Count for length `n`, if it was computed.
    pub fn get(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.counts.get(i).copied())
    }

    pub fn max_len(&self) -> usize {
        self.counts.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| (i + 1, c))
    }
}

pub fn factors(w: &Word, n: usize) -> Result<FactorSet, WordError> {
    if n == 0 || n > w.len() {
        return Err(WordError::LengthOutOfRange { n, max: w.len() });
    }
    let members = w.0.windows(n).map(|s| Word(s.to_vec())).collect();
    Ok(FactorSet { length: n, members })
}

/// Counts distinct factors of every length `1..=n_max`.
///
/// Factor classes are refined one letter at a time: the class of
/// `w[i..i+n]` is determined by the class of `w[i..i+n-1]` and the letter
/// `w[i+n-1]`, so the whole profile costs `O(|w| * n_max)` map lookups.
pub fn complexity_profile(w: &Word, n_max: usize) -> Result<ComplexityProfile, WordError> {
    if n_max == 0 || n_max > w.len() {
        return Err(WordError::LengthOutOfRange { n: n_max, max: w.len() });
    }
    let letters = w.letters();
    let mut class: Vec<u32> = letters.iter().map(|&l| u32::from(l)).collect();
    let mut counts = Vec::with_capacity(n_max);
    counts.push(class.iter().collect::<HashSet<_>>().len());
    for n in 2..=n_max {
        let starts = letters.len() - n + 1;
        let mut intern: HashMap<(u32, u8), u32> = HashMap::new();
        let mut next = Vec::with_capacity(starts);
        for i in 0..starts {
            let key = (class[i], letters[i + n - 1]);
            let fresh = intern.len() as u32;
            next.push(*intern.entry(key).or_insert(fresh));
        }
        counts.push(intern.len());
        class = next;
    }
    Ok(ComplexityProfile { prefix_len: w.len(), counts })
}

/// Right-special, left-special and bispecial factors among `short`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFactors {
    pub right: BTreeSet<Word>,
    pub left: BTreeSet<Word>,
    pub bispecial: BTreeSet<Word>,
}

pub fn special_factors(short: &FactorSet, long: &FactorSet) -> Result<SpecialFactors, WordError> {
    if long.length != short.length + 1 {
        return Err(WordError::LengthMismatch { short: short.length, long: long.length });
    }
    let extends = |w: &Word, left: bool, letter: u8| {
        let mut v = Vec::with_capacity(w.len() + 1);
        if left {
            v.push(letter);
            v.extend_from_slice(&w.0);
        } else {
            v.extend_from_slice(&w.0);
            v.push(letter);
        }
        long.members.contains(&Word(v))
    };
    let mut out = SpecialFactors { right: BTreeSet::new(), left: BTreeSet::new(), bispecial: BTreeSet::new() };
    for w in &short.members {
        let r = extends(w, false, 0) && extends(w, false, 1);
        let l = extends(w, true, 0) && extends(w, true, 1);
        if r {
            out.right.insert(w.clone());
        }
        if l {
            out.left.insert(w.clone());
        }
        if r && l {
            out.bispecial.insert(w.clone());
        }
    }
    Ok(out)
}

pub fn conjugates(w: &Word) -> BTreeSet<Word> {
    if w.is_empty() {
        return BTreeSet::from([w.clone()]);
    }
    (0..w.len()).map(|k| w.rotate(k)).collect()
}

pub fn is_conjugate(u: &Word, v: &Word) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    let doubled = u.concat(u);
    doubled.0.windows(v.len()).any(|s| s == v.letters())
}

/// Lexicographically least rotation; equal for exactly the conjugate words.
pub fn conjugacy_class_key(w: &Word) -> Word {
    conjugates(w).into_iter().next().unwrap_or_default()
}

/// An observed ultimate period: `w[i] = w[i + period]` for all `i >= preperiod`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub preperiod: usize,
    pub period: usize,
}

/// Smallest period `t <= t_max` whose violation-free tail starts at or before
/// `max_preperiod`, together with the smallest such preperiod.
///
/// On finite data every `t` is eventually violation-free (the tail can be
/// made arbitrarily short), so the preperiod bound is what makes "periodic"
/// a meaningful verdict. [`detect_period`] uses `max_preperiod = t_max`.
pub fn detect_period_bounded(w: &Word, t_max: usize, max_preperiod: usize) -> Option<Periodicity> {
    let letters = w.letters();
    (1..=t_max.min(letters.len().saturating_sub(1))).find_map(|t| {
        let last_violation = (0..letters.len() - t).rev().find(|&i| letters[i] != letters[i + t]);
        let preperiod = last_violation.map_or(0, |i| i + 1);
        (preperiod <= max_preperiod).then_some(Periodicity { preperiod, period: t })
    })
}

pub fn detect_period(w: &Word, t_max: usize) -> Option<Periodicity> {
    detect_period_bounded(w, t_max, t_max)
}

/// All (possibly overlapping) start positions of `v` in `w`.
pub fn occurrences(w: &Word, v: &Word) -> Vec<usize> {
    if v.is_empty() || v.len() > w.len() {
        return Vec::new();
    }
    w.0.windows(v.len())
        .enumerate()
        .filter_map(|(i, s)| (s == v.letters()).then_some(i))
        .collect()
}
