//! Sturmian words as codings of an irrational rotation, and the standard-word
//! machinery attached to a slope: exact factor sets, light and heavy factors,
//! standard words, bispecial factors, Christoffel words and the block
//! decomposition over `{s_n, s_{n-1}}`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactreal::{ExactError, ExactReal};
use crate::words::{FactorSet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmianError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("slope {0} is rational; this operation needs an irrational slope")]
    RationalSlope(String),
    #[error("slope {0} is not in (0, 1)")]
    SlopeOutOfRange(String),
    #[error("invalid partial quotient d_{index} = {value}")]
    InvalidQuotient { index: usize, value: u64 },
    #[error("tower has no level {0}")]
    HorizonExceeded(usize),
    #[error("word of length {0} is too short")]
    TooShort(usize),
    #[error("word {word} has {ones} ones; a factor of length {len} must have {floor} or {ceil}")]
    NotAFactorWeight { word: String, ones: usize, len: usize, floor: i64, ceil: i64 },
    #[error("prefix does not decompose over s_{level} and s_{prev}", prev = *level as isize - 1)]
    ParseFailure { level: usize },
}

/// Which half-open partition of the circle is used for the coding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `I_0 = [0, 1 - sigma)`, `I_1 = [1 - sigma, 1)`.
    #[default]
    Lower,
    /// `I_0 = (0, 1 - sigma]`, `I_1 = (1 - sigma, 1]`, with the upper fractional part.
    Upper,
}

impl Convention {
    /// Places a real number on the circle according to the convention.
    pub fn reduce(self, x: &ExactReal) -> ExactReal {
        match self {
            Convention::Lower => x.frac(),
            Convention::Upper => x.frac_upper(),
        }
    }
}

/// Slope, intercept and coding convention of a rotation word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmianSpec {
    sigma: ExactReal,
    rho: ExactReal,
    convention: Convention,
}

impl SturmianSpec {
    /// Rational slopes are accepted here; they code periodic words.
    pub fn new(sigma: ExactReal, rho: ExactReal, convention: Convention) -> Result<Self, SturmianError> {
        check_slope(&sigma)?;
        if !sigma.same_field(&rho) {
            return Err(ExactError::MixedRadicands { left: sigma.radicand(), right: rho.radicand() }.into());
        }
        Ok(SturmianSpec { sigma, rho, convention })
    }

    pub fn sigma(&self) -> &ExactReal {
        &self.sigma
    }

    pub fn rho(&self) -> &ExactReal {
        &self.rho
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn is_irrational(&self) -> bool {
        !self.sigma.is_rational()
    }

    /// Orbit points `R^i(rho)` for `i = 0..len`, reduced per the convention.
    pub fn orbit(&self, len: usize) -> Orbit<'_> {
        Orbit { spec: self, point: self.convention.reduce(&self.rho), remaining: len }
    }
}

fn check_slope(sigma: &ExactReal) -> Result<(), SturmianError> {
    if sigma.signum() <= 0 || sigma.partial_cmp(&ExactReal::one()) != Some(Ordering::Less) {
        return Err(SturmianError::SlopeOutOfRange(sigma.to_string()));
    }
    Ok(())
}

pub(crate) fn require_irrational(sigma: &ExactReal) -> Result<(), SturmianError> {
    check_slope(sigma)?;
    if sigma.is_rational() {
        return Err(SturmianError::RationalSlope(sigma.to_string()));
    }
    Ok(())
}

/// Iterator over the rotation orbit, advancing by exact addition.
pub struct Orbit<'a> {
    spec: &'a SturmianSpec,
    point: ExactReal,
    remaining: usize,
}

impl Iterator for Orbit<'_> {
    type Item = ExactReal;

    fn next(&mut self) -> Option<ExactReal> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let one = ExactReal::one();
        let mut next = self.point.try_add(&self.spec.sigma).expect("same field by construction");
        let wrap = match self.spec.convention {
            Convention::Lower => next >= one,
            Convention::Upper => next > one,
        };
        if wrap {
            next = next.try_sub(&one).expect("rational");
        }
        Some(std::mem::replace(&mut self.point, next))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

/// Letter coding a reduced orbit point.
fn code_point(x: &ExactReal, threshold: &ExactReal, convention: Convention) -> u8 {
    let zero = match convention {
        Convention::Lower => x < threshold,
        Convention::Upper => x <= threshold,
    };
    u8::from(!zero)
}

/// First `len` letters of the rotation word of `spec`.
pub fn generate(spec: &SturmianSpec, len: usize) -> Word {
    let threshold = ExactReal::one().try_sub(&spec.sigma).expect("rational");
    let letters = spec.orbit(len).map(|x| code_point(&x, &threshold, spec.convention)).collect();
    Word::from_letters(letters)
}

/// All factors of length `n` of any Sturmian word of slope `sigma`.
///
/// The `n + 1` points `{-i sigma}`, `0 <= i <= n`, cut the circle into `n + 1`
/// arcs; intercepts inside one arc code the same length-`n` word, so coding
/// the midpoint of each arc yields the whole factor set.
pub fn enumerate_factors_exact(sigma: &ExactReal, n: usize) -> Result<FactorSet, SturmianError> {
    require_irrational(sigma)?;
    let mut cuts: Vec<ExactReal> = Vec::with_capacity(n + 1);
    let mut p = ExactReal::zero();
    for _ in 0..=n {
        cuts.push(p.frac());
        p = p.try_sub(sigma)?;
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("one field"));
    let mut samples = Vec::with_capacity(n + 1);
    for pair in cuts.windows(2) {
        samples.push(pair[0].midpoint(&pair[1])?);
    }
    samples.push(cuts[n].midpoint(&ExactReal::one())?);

    let mut words = Vec::with_capacity(samples.len());
    for tau in samples {
        let spec = SturmianSpec::new(sigma.clone(), tau, Convention::Lower)?;
        words.push(generate(&spec, n));
    }
    Ok(FactorSet::from_members(n, words))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    Light,
    Heavy,
}

/// Light if `v` has `floor(|v| sigma)` ones, heavy if it has `ceil(|v| sigma)`.
pub fn weight_class(v: &Word, sigma: &ExactReal) -> Result<Weight, SturmianError> {
    let scaled = sigma.scale(BigInt::from(v.len()), 1)?;
    let floor = scaled.floor();
    let ceil = scaled.ceil();
    let ones = BigInt::from(v.ones());
    if ones == floor {
        Ok(Weight::Light)
    } else if ones == ceil {
        Ok(Weight::Heavy)
    } else {
        Err(SturmianError::NotAFactorWeight {
            word: v.to_string(),
            ones: v.ones(),
            len: v.len(),
            floor: floor.to_i64().unwrap_or(i64::MAX),
            ceil: ceil.to_i64().unwrap_or(i64::MAX),
        })
    }
}

/// Standard words `s_{-1} = 1`, `s_0 = 0`, `s_n = s_{n-1}^{d_n} s_{n-2}`.
///
/// `quotients[0]` is `d_1`. A slope `[0; a_1, a_2, ...]` has `d_1 = a_1 - 1`
/// and `d_n = a_n` for `n >= 2`; [`StandardWordTower::from_slope`] does the
/// shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardWordTower {
    quotients: Vec<u64>,
    /// `words[0]` is `s_{-1}`, `words[n + 1]` is `s_n`.
    words: Vec<Word>,
}

impl StandardWordTower {
    /// Tower with levels `-1..=levels` for the slope `sigma`. The quotient
    /// list runs one level further so block exponents at the top level are
    /// known.
    pub fn from_slope(sigma: &ExactReal, levels: usize) -> Result<Self, SturmianError> {
        require_irrational(sigma)?;
        let cf = sigma.cf_expansion(levels + 1)?;
        let mut d: Vec<u64> = cf
            .quotients
            .iter()
            .enumerate()
            .map(|(i, q)| q.to_u64().ok_or(SturmianError::InvalidQuotient { index: i + 1, value: u64::MAX }))
            .collect::<Result<_, _>>()?;
        d[0] -= 1;
        standard_tower(&d, levels)
    }

    /// `d_n` for `n >= 1`, if known.
    pub fn d(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.quotients.get(i).copied())
    }

    /// `s_n` for `n >= -1`.
    pub fn s(&self, n: isize) -> Option<&Word> {
        usize::try_from(n + 1).ok().and_then(|i| self.words.get(i))
    }

    /// Highest level `m` for which `s_m` is built.
    pub fn top(&self) -> usize {
        self.words.len() - 2
    }

    pub fn quotients(&self) -> &[u64] {
        &self.quotients
    }

    /// `s_n^k s_{n-1}`.
    pub fn block(&self, n: usize, k: usize) -> Result<Word, SturmianError> {
        let s_n = self.s(n as isize).ok_or(SturmianError::HorizonExceeded(n))?;
        let s_prev = self.s(n as isize - 1).expect("lower level exists");
        Ok(s_n.repeat(k).concat(s_prev))
    }

    /// Lengths `|s_n^k s_{n-1}|` for all levels with known `d_{n+1}` and
    /// `0 < k <= d_{n+1}`, up to `max_len`, sorted and deduplicated.
    pub fn block_lengths(&self, max_len: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for n in 0..=self.top() {
            let Some(d) = self.d(n + 1) else { break };
            let s_n = self.words[n + 1].len();
            let s_prev = self.words[n].len();
            for k in 1..=d as usize {
                let len = k * s_n + s_prev;
                if len <= max_len {
                    out.push(len);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Builds `s_{-1}..=s_m` from `d_1, d_2, ...` (at least `m` of them).
pub fn standard_tower(quotients: &[u64], m: usize) -> Result<StandardWordTower, SturmianError> {
    if quotients.len() < m {
        return Err(SturmianError::HorizonExceeded(m));
    }
    if let Some((i, &v)) = quotients.iter().enumerate().skip(1).find(|(_, &v)| v == 0) {
        return Err(SturmianError::InvalidQuotient { index: i + 1, value: v });
    }
    let mut words = vec![Word::from_letters(vec![1]), Word::from_letters(vec![0])];
    for n in 1..=m {
        let d = quotients[n - 1] as usize;
        let next = words[n].repeat(d).concat(&words[n - 1]);
        words.push(next);
    }
    Ok(StandardWordTower { quotients: quotients.to_vec(), words })
}

/// `s_n^k s_{n-1}` with its last two letters erased, for `k = 1..=max_k`.
pub fn bispecial_candidates(
    tower: &StandardWordTower,
    n: usize,
    max_k: usize,
) -> Result<Vec<Word>, SturmianError> {
    if tower.s(n as isize).is_none() {
        return Err(SturmianError::HorizonExceeded(n));
    }
    if let Some(d) = tower.d(n + 1) {
        if max_k as u64 > d {
            return Err(SturmianError::InvalidQuotient { index: n + 1, value: max_k as u64 });
        }
    }
    (1..=max_k)
        .map(|k| {
            let block = tower.block(n, k)?;
            if block.len() < 2 {
                return Err(SturmianError::TooShort(block.len()));
            }
            Ok(block.slice(0, block.len() - 2))
        })
        .collect()
}

/// The two Christoffel words `0b1` and `1b0` of a bispecial factor `b`.
pub fn christoffel_pair(b: &Word) -> (Word, Word) {
    let wrap = |first: u8, last: u8| {
        let mut w = Word::from_letters(vec![first]);
        for &l in b.letters() {
            w.push(l);
        }
        w.push(last);
        w
    };
    (wrap(0, 1), wrap(1, 0))
}

/// Whether `{n sigma}` is a new running minimum or maximum at length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
    /// `n = 1`, where both conditions hold vacuously.
    Both,
}

/// Lengths `n <= n_max` at which `{n sigma}` is a strict running minimum or
/// maximum of `{i sigma}`, `0 < i <= n`.
pub fn christoffel_lengths(sigma: &ExactReal, n_max: usize) -> Result<Vec<usize>, SturmianError> {
    Ok(christoffel_extrema(sigma, n_max)?.into_iter().map(|(n, _)| n).collect())
}

pub fn christoffel_extrema(sigma: &ExactReal, n_max: usize) -> Result<Vec<(usize, Extremum)>, SturmianError> {
    require_irrational(sigma)?;
    let spec = SturmianSpec::new(sigma.clone(), sigma.clone(), Convention::Lower)?;
    let mut out = Vec::new();
    let mut lo: Option<ExactReal> = None;
    let mut hi: Option<ExactReal> = None;
    for (i, x) in spec.orbit(n_max).enumerate() {
        let n = i + 1;
        let is_min = lo.as_ref().is_none_or(|m| x < *m);
        let is_max = hi.as_ref().is_none_or(|m| x > *m);
        match (is_min, is_max) {
            (true, true) => out.push((n, Extremum::Both)),
            (true, false) => out.push((n, Extremum::Min)),
            (false, true) => out.push((n, Extremum::Max)),
            (false, false) => {}
        }
        if is_min {
            lo = Some(x.clone());
        }
        if is_max {
            hi = Some(x);
        }
    }
    Ok(out)
}

/// The Christoffel prefixes of length `n` attached to each running extremum.
///
/// A running minimum at `n` makes `s_{sigma,0}[0..n-1]` a Christoffel word of
/// the form `0b1`. A running maximum gives the mirror word `1b0`, which is the
/// prefix of the upper-convention word `s'_{sigma,0}`; the lower word's prefix
/// of that length is the singular factor instead.
pub fn christoffel_prefixes(sigma: &ExactReal, n_max: usize) -> Result<Vec<(usize, Word)>, SturmianError> {
    let extrema = christoffel_extrema(sigma, n_max)?;
    let lower = generate(&SturmianSpec::new(sigma.clone(), ExactReal::zero(), Convention::Lower)?, n_max);
    let upper = generate(&SturmianSpec::new(sigma.clone(), ExactReal::zero(), Convention::Upper)?, n_max);
    Ok(extrema
        .into_iter()
        .map(|(n, kind)| {
            let source = if kind == Extremum::Max { &upper } else { &lower };
            (n, source.slice(0, n))
        })
        .collect())
}

/// `prefix * prod(s_n^{k_i} s_{n-1}) * residue`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub level: usize,
    pub prefix: Word,
    pub exponents: Vec<usize>,
    /// Incomplete final block.
    pub residue: Word,
}

impl Factorization {
    pub fn reconstruct(&self, tower: &StandardWordTower) -> Result<Word, SturmianError> {
        let mut out = self.prefix.clone();
        for &k in &self.exponents {
            out = out.concat(&tower.block(self.level, k)?);
        }
        Ok(out.concat(&self.residue))
    }
}

/// Parses `word` as `p * prod(s_n^{k_i} s_{n-1}) * residue` with every
/// `k_i` in `{d_{n+1}, d_{n+1} + 1}`, `p` a suffix of `s_n^{d_{n+1}+1} s_{n-1}`
/// and the residue a proper prefix of a block. The shortest admissible `p`
/// is chosen. At least two complete blocks are required.
pub fn factorize(word: &Word, tower: &StandardWordTower, n: usize) -> Result<Factorization, SturmianError> {
    let d = tower.d(n + 1).ok_or(SturmianError::HorizonExceeded(n + 1))? as usize;
    let blocks = [(d, tower.block(n, d)?), (d + 1, tower.block(n, d + 1)?)];
    let longest = &blocks[1].1;
    let letters = word.letters();
    let len = letters.len();

    let block_at = |pos: usize, b: &Word| letters[pos..].starts_with(b.letters());
    let residue_ok = |pos: usize| {
        let rest = &letters[pos..];
        blocks.iter().any(|(_, b)| rest.len() < b.len() && b.letters().starts_with(rest))
    };

    // reach[pos]: the suffix from pos parses as blocks followed by a residue.
    let mut reach = vec![false; len + 1];
    for pos in (0..=len).rev() {
        reach[pos] = residue_ok(pos)
            || blocks.iter().any(|(_, b)| pos + b.len() <= len && block_at(pos, b) && reach[pos + b.len()]);
    }

    for plen in 0..=longest.len().min(len) {
        if !reach[plen] || !longest.letters().ends_with(&letters[..plen]) {
            continue;
        }
        let mut exponents = Vec::new();
        let mut pos = plen;
        while let Some((k, b)) =
            blocks.iter().find(|(_, b)| pos + b.len() <= len && block_at(pos, b) && reach[pos + b.len()])
        {
            exponents.push(*k);
            pos += b.len();
        }
        if exponents.len() < 2 {
            continue;
        }
        return Ok(Factorization {
            level: n,
            prefix: word.slice(0, plen),
            exponents,
            residue: word.slice(pos, len - pos),
        });
    }
    Err(SturmianError::ParseFailure { level: n })
}

/// Density of ones, `ones(w) / |w|`, as an exact rational.
pub fn frequency_report(w: &Word) -> Result<ExactReal, SturmianError> {
    if w.is_empty() {
        return Err(SturmianError::TooShort(0));
    }
    Ok(ExactReal::from_ratio(w.ones() as i64, w.len() as i64)?)
}
