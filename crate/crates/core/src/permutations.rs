//! Infinite permutations seen through a finite prefix of a representative.
//!
//! A [`Representative`] is a list of pairwise distinct exact reals. Only the
//! relative order of its entries matters, so on construction the values are
//! ranked once and every window operation afterwards works on integer ranks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactreal::{ExactError, ExactReal};
use crate::words::{ComplexityProfile, Periodicity, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("values at positions {first} and {second} are equal")]
    DuplicateValue { first: usize, second: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("length {n} is outside 1..={max}")]
    LengthOutOfRange { n: usize, max: usize },
    #[error("index {index} is out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
}

/// A finite permutation as a rank vector over `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pattern(Vec<u32>);

impl Pattern {
    /// Validates that `ranks` is a permutation of `1..=ranks.len()`.
    pub fn new(ranks: Vec<u32>) -> Result<Self, PermError> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            let ok = r >= 1 && (r as usize) <= n && !std::mem::replace(&mut seen[r as usize - 1], true);
            if !ok {
                return Err(PermError::InvalidPattern(format!("{ranks:?} is not a permutation of 1..={n}")));
            }
        }
        Ok(Pattern(ranks))
    }

    /// Ranks of arbitrary distinct keys.
    fn from_keys<T: Ord>(keys: &[T]) -> Pattern {
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut ranks = vec![0u32; keys.len()];
        for (r, &i) in order.iter().enumerate() {
            ranks[i] = r as u32 + 1;
        }
        Pattern(ranks)
    }

    pub fn ranks(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ranks = s
            .trim()
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| PermError::InvalidPattern(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Pattern::new(ranks)
    }
}

/// Pairwise distinct exact values from one quadratic field.
#[derive(Clone, PartialEq, Eq)]
pub struct Representative {
    values: Vec<ExactReal>,
    /// `ranks[i]` = number of values smaller than `values[i]`.
    ranks: Vec<u32>,
}

impl fmt::Debug for Representative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter().map(|v| v.to_string())).finish()
    }
}

impl Representative {
    pub fn new(values: Vec<ExactReal>) -> Result<Self, PermError> {
        if let Some(first) = values.iter().find(|v| !v.is_rational()) {
            if let Some(other) = values.iter().find(|v| !first.same_field(v)) {
                return Err(ExactError::MixedRadicands { left: first.radicand(), right: other.radicand() }.into());
            }
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("single field"));
        for pair in order.windows(2) {
            if values[pair[0]] == values[pair[1]] {
                let (first, second) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                return Err(PermError::DuplicateValue { first, second });
            }
        }
        let mut ranks = vec![0u32; values.len()];
        for (r, &i) in order.iter().enumerate() {
            ranks[i] = r as u32;
        }
        Ok(Representative { values, ranks })
    }

    /// Reads one value per non-empty line.
    pub fn from_lines(text: &str) -> Result<Self, PermError> {
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<ExactReal>, _>>()?;
        Self::new(values)
    }

    pub fn to_lines(&self) -> String {
        self.values.iter().map(|v| format!("{v}\n")).collect()
    }

    pub fn values(&self) -> &[ExactReal] {
        &self.values
    }

    /// Global ranks, `0..len`.
    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The first `len` values.
    pub fn truncate(&self, len: usize) -> Representative {
        Representative::new(self.values[..len.min(self.len())].to_vec()).expect("prefix of a valid representative")
    }

    /// Pattern of the window `start..start + len`.
    pub fn window_pattern(&self, start: usize, len: usize) -> Pattern {
        Pattern::from_keys(&self.ranks[start..start + len])
    }

    pub fn pattern(&self) -> Pattern {
        Pattern::from_keys(&self.ranks)
    }
}

/// Rank pattern of pairwise distinct values.
pub fn pattern_of(values: &[ExactReal]) -> Result<Pattern, PermError> {
    Ok(Representative::new(values.to_vec())?.pattern())
}

/// Number of distinct window patterns of each length `1..=n_max`.
///
/// The pattern of a window of length `n` is fixed by the pattern of its first
/// `n - 1` entries together with the relative rank of the last entry among
/// them. Pattern classes are refined one entry at a time through that pair.
pub fn perm_complexity_profile(rep: &Representative, n_max: usize) -> Result<ComplexityProfile, PermError> {
    let len = rep.len();
    if n_max == 0 || n_max > len {
        return Err(PermError::LengthOutOfRange { n: n_max, max: len });
    }
    let ranks = rep.ranks();
    let mut classes: Vec<HashMap<(u32, u32), u32>> = vec![HashMap::new(); n_max];
    let mut sorted: Vec<u32> = Vec::with_capacity(n_max);
    for start in 0..len {
        sorted.clear();
        let mut class = 0u32;
        for n in 1..=n_max.min(len - start) {
            let v = ranks[start + n - 1];
            let pos = sorted.partition_point(|&x| x < v);
            sorted.insert(pos, v);
            let table = &mut classes[n - 1];
            let fresh = table.len() as u32;
            class = *table.entry((class, pos as u32)).or_insert(fresh);
        }
    }
    Ok(ComplexityProfile { prefix_len: len, counts: classes.iter().map(HashMap::len).collect() })
}

/// Letter `i` is 0 when `values[i] < values[i + 1]` and 1 otherwise.
pub fn underlying_word(rep: &Representative) -> Word {
    let r = rep.ranks();
    Word::from_letters(r.windows(2).map(|p| u8::from(p[0] > p[1])).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    fn holds(self, earlier: u32, later: u32) -> bool {
        match self {
            Direction::Increasing => earlier < later,
            Direction::Decreasing => earlier > later,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyChain {
    pub indices: Vec<usize>,
    /// True if every step of the chain moved in the requested direction.
    pub monotone: bool,
}

/// Greedy chain with steps of at most `gap`.
///
/// For a decreasing chain the first index is the position of the largest of
/// the first `gap` values and each next index is the position of the largest
/// value among the following `gap` positions; an increasing chain uses the
/// smallest values instead. The walk stops when fewer than `gap` positions
/// remain, so every step is taken over a fully observed window.
pub fn greedy_monotone_chain(rep: &Representative, gap: usize, direction: Direction) -> GreedyChain {
    let r = rep.ranks();
    if gap == 0 || r.is_empty() {
        return GreedyChain { indices: Vec::new(), monotone: true };
    }
    let pick = |from: usize, to: usize| -> usize {
        let window = from..to.min(r.len());
        match direction {
            Direction::Decreasing => window.max_by_key(|&i| r[i]),
            Direction::Increasing => window.min_by_key(|&i| r[i]),
        }
        .expect("non-empty window")
    };
    let mut cur = pick(0, gap);
    let mut indices = vec![cur];
    let mut monotone = true;
    while cur + gap < r.len() {
        let next = pick(cur + 1, cur + gap + 1);
        monotone &= direction.holds(r[cur], r[next]);
        indices.push(next);
        cur = next;
    }
    GreedyChain { indices, monotone }
}

/// Length of the longest chain `i_1 < i_2 < ...` with `i_{k+1} - i_k <= gap`
/// that is monotone in `direction`.
pub fn longest_monotone_chain(rep: &Representative, gap: usize, direction: Direction) -> usize {
    let r = rep.ranks();
    if gap == 0 {
        return usize::from(!r.is_empty());
    }
    let mut best = vec![1usize; r.len()];
    for i in 0..r.len() {
        for j in i.saturating_sub(gap)..i {
            if direction.holds(r[j], r[i]) && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extremal {
    pub maximal: Vec<usize>,
    pub minimal: Vec<usize>,
}

/// Positions whose value is above (or below) every value within distance
/// `radius`. Only positions with a fully observed neighbourhood,
/// `radius <= i <= len - 1 - radius`, are candidates.
pub fn find_n_extremal(rep: &Representative, radius: usize) -> Extremal {
    let r = rep.ranks();
    let mut out = Extremal { maximal: Vec::new(), minimal: Vec::new() };
    if radius == 0 || r.len() < 2 * radius + 1 {
        return out;
    }
    for i in radius..r.len() - radius {
        let neighbours = (i - radius..=i + radius).filter(|&j| j != i);
        let (mut above, mut below) = (true, true);
        for j in neighbours {
            above &= r[i] > r[j];
            below &= r[i] < r[j];
            if !above && !below {
                break;
            }
        }
        if above {
            out.maximal.push(i);
        }
        if below {
            out.minimal.push(i);
        }
    }
    out
}

/// `#{j : values[j] < values[i]} / len`, the finite truncation of the
/// canonical-value limit.
pub fn canonical_estimate(rep: &Representative, i: usize) -> Result<ExactReal, PermError> {
    let rank = *rep.ranks().get(i).ok_or(PermError::IndexOutOfRange { index: i, len: rep.len() })?;
    Ok(ExactReal::from_ratio(i64::from(rank), rep.len() as i64)?)
}

/// Smallest `t <= t_max` such that `values[i] < values[j]` and
/// `values[i + t] < values[j + t]` agree for all `preperiod <= i, j < len - t`,
/// with the preperiod at most `max_preperiod`.
pub fn detect_perm_period_bounded(rep: &Representative, t_max: usize, max_preperiod: usize) -> Option<Periodicity> {
    let r = rep.ranks();
    let len = r.len();
    (1..=t_max.min(len.saturating_sub(1))).find_map(|t| {
        let end = len - t;
        let violates = |i: usize| (i + 1..end).any(|j| (r[i] < r[j]) != (r[i + t] < r[j + t]));
        let last = (0..end).rev().find(|&i| violates(i));
        let preperiod = last.map_or(0, |i| i + 1);
        (preperiod <= max_preperiod).then_some(Periodicity { preperiod, period: t })
    })
}

/// [`detect_perm_period_bounded`] with `max_preperiod = t_max`.
pub fn detect_perm_period(rep: &Representative, t_max: usize) -> Option<Periodicity> {
    detect_perm_period_bounded(rep, t_max, t_max)
}

/// Whether two representatives of equal length induce the same order.
pub fn equivalent(a: &Representative, b: &Representative) -> Result<bool, PermError> {
    if a.len() != b.len() {
        return Err(PermError::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(a.ranks() == b.ranks())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(items: &[&str]) -> Representative {
        Representative::new(items.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn ints(items: &[i64]) -> Representative {
        Representative::new(items.iter().map(|&v| ExactReal::from(v)).collect()).unwrap()
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(rep(&["1", "-1/2", "1/4", "-1/8"]).pattern().to_string(), "4,1,3,2");
        assert_eq!(ints(&[1, 5, 9, 12]).pattern().to_string(), "1,2,3,4");
        let b = rep(&["2999/3", "9001/9", "26999/27"]);
        let a = rep(&["-1/2", "1/4", "-1/8"]);
        assert_eq!(a.pattern(), b.pattern());
    }

    #[test]
    fn duplicates_and_fields_are_rejected() {
        assert_eq!(
            Representative::new(vec![ExactReal::from(3), ExactReal::from(1), ExactReal::from(3)]),
            Err(PermError::DuplicateValue { first: 0, second: 2 })
        );
        let mixed = vec!["(0+1*sqrt(2))/4".parse().unwrap(), "(0+1*sqrt(3))/4".parse().unwrap()];
        assert!(matches!(Representative::new(mixed), Err(PermError::Exact(_))));
    }

    #[test]
    fn pattern_parsing() {
        assert_eq!("4,1,3,2".parse::<Pattern>().unwrap().ranks(), &[4, 1, 3, 2]);
        assert!("4,1,1,2".parse::<Pattern>().is_err());
        assert!("0,1".parse::<Pattern>().is_err());
    }

    #[test]
    fn underlying_examples() {
        assert_eq!(underlying_word(&ints(&[4, 1, 3, 2])).to_string(), "101");
        assert_eq!(underlying_word(&ints(&[1, 2, 3, 4])).to_string(), "000");
    }

    #[test]
    fn monotone_profile_is_constant() {
        let r = ints(&(0..50).collect::<Vec<_>>());
        let p = perm_complexity_profile(&r, 20).unwrap();
        assert!(p.counts.iter().all(|&c| c == 1));
        assert!(perm_complexity_profile(&r, 51).is_err());
    }

    #[test]
    fn greedy_chain_examples() {
        let r = ints(&(0..20).collect::<Vec<_>>());
        let c = greedy_monotone_chain(&r, 1, Direction::Increasing);
        assert_eq!(c.indices, (0..20).collect::<Vec<_>>());
        assert!(c.monotone);
        let c = greedy_monotone_chain(&r, 3, Direction::Decreasing);
        assert!(!c.monotone);
    }

    #[test]
    fn longest_chain_examples() {
        let r = ints(&(0..20).rev().collect::<Vec<_>>());
        assert_eq!(longest_monotone_chain(&r, 1, Direction::Decreasing), 20);
        assert_eq!(longest_monotone_chain(&r, 3, Direction::Increasing), 1);
    }

    #[test]
    fn extremal_examples() {
        let r = rep(&["0", "1", "1/2"]);
        let e = find_n_extremal(&r, 1);
        assert_eq!(e.maximal, vec![1]);
        assert!(e.minimal.is_empty());
        let inc = ints(&(0..30).collect::<Vec<_>>());
        for n in 1..10 {
            assert!(find_n_extremal(&inc, n).maximal.is_empty());
        }
    }

    #[test]
    fn estimate_examples() {
        let r = rep(&["1/4", "1/2", "3/4", "1"]);
        assert_eq!(canonical_estimate(&r, 1).unwrap(), "1/4".parse().unwrap());
        assert_eq!(canonical_estimate(&r, 0).unwrap(), ExactReal::zero());
        assert!(matches!(canonical_estimate(&r, 4), Err(PermError::IndexOutOfRange { .. })));
    }

    #[test]
    fn period_examples() {
        let mono = ints(&(0..40).collect::<Vec<_>>());
        assert_eq!(detect_perm_period(&mono, 10), Some(Periodicity { preperiod: 0, period: 1 }));
    }

    #[test]
    fn equivalence_examples() {
        let r = ints(&[3, 1, 2]);
        assert!(equivalent(&r, &r).unwrap());
        assert!(!equivalent(&ints(&[1, 2]), &ints(&[2, 1])).unwrap());
        assert!(matches!(equivalent(&ints(&[1, 2]), &ints(&[1])), Err(PermError::LengthMismatch { .. })));
    }

    #[test]
    fn lines_round_trip() {
        let r = rep(&["1/2", "(0+1*sqrt(2))/4", "-3"]);
        assert_eq!(Representative::from_lines(&r.to_lines()).unwrap(), r);
    }
}
