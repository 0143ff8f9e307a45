//! Star discrepancy and verification reports.
//!
//! A report is a list of named checks. Each check records how many instances
//! it examined; a check that examined nothing fails, so a report can never
//! pass vacuously. All results are empirical statements about finite
//! prefixes.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::sturmian_representative;
use crate::constructions::ConstructionError;
use crate::exactreal::{ExactError, ExactReal};
use crate::permutations::{
    find_n_extremal, longest_monotone_chain, perm_complexity_profile, underlying_word, Direction, PermError,
    Representative,
};
use crate::sturmian::{
    christoffel_lengths, christoffel_pair, christoffel_prefixes, enumerate_factors_exact, factorize, generate,
    require_irrational, weight_class, Convention, StandardWordTower, SturmianError, SturmianSpec, Weight,
};
use crate::words::{complexity_profile, conjugacy_class_key, conjugates, factors, special_factors, Word, WordError};

/// Seed used for randomized pair sampling unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x5EED_0F57;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("value at position {0} is outside [0, 1]")]
    OutOfUnitInterval(usize),
    #[error("no values")]
    Empty,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Sturmian(#[from] SturmianError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `D*_N = max_i max(i/N - x_(i), x_(i) - (i-1)/N)` over the sorted values.
pub fn star_discrepancy(values: &[ExactReal]) -> Result<ExactReal, AnalysisError> {
    if values.is_empty() {
        return Err(AnalysisError::Empty);
    }
    let zero = ExactReal::zero();
    let one = ExactReal::one();
    for (i, v) in values.iter().enumerate() {
        let inside = v.try_cmp(&zero)?.is_ge() && v.try_cmp(&one)?.is_le();
        if !inside {
            return Err(AnalysisError::OutOfUnitInterval(i));
        }
    }
    let mut sorted: Vec<&ExactReal> = values.iter().collect();
    let mut failure = None;
    sorted.sort_by(|a, b| {
        a.try_cmp(b).unwrap_or_else(|e| {
            failure.get_or_insert(e);
            std::cmp::Ordering::Equal
        })
    });
    if let Some(e) = failure {
        return Err(e.into());
    }
    let n = values.len() as i64;
    let mut best = ExactReal::zero();
    for (i, x) in sorted.iter().enumerate() {
        let i = i as i64;
        let above = ExactReal::from_ratio(i + 1, n)?.try_sub(x)?;
        let below = x.try_sub(&ExactReal::from_ratio(i, n)?)?;
        for d in [above, below] {
            if d.try_cmp(&best)?.is_gt() {
                best = d;
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not run at the requested parameters (e.g. a tower level
    /// whose blocks do not fit in the prefix). Neither a pass nor a failure.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    /// Number of instances examined.
    pub instances: usize,
    /// Concrete counterexample for failures, or a short summary.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<Check>,
}

/// Builder for one check: records instances and keeps the first failure.
struct CheckBuilder {
    name: String,
    params: BTreeMap<String, String>,
    instances: usize,
    failure: Option<String>,
    note: Option<String>,
}

impl CheckBuilder {
    fn new(name: &str) -> Self {
        CheckBuilder { name: name.to_string(), params: BTreeMap::new(), instances: 0, failure: None, note: None }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.note = Some(note.into());
    }

    fn finish(self) -> Check {
        let (status, witness) = match (self.failure, self.instances) {
            (Some(w), _) => (Status::Fail, Some(w)),
            (None, 0) => (Status::Fail, Some("no instances examined".to_string())),
            (None, _) => (Status::Pass, self.note),
        };
        Check { name: self.name, params: self.params, status, instances: self.instances, witness }
    }

    fn skip(self, reason: impl Into<String>) -> Check {
        Check {
            name: self.name,
            params: self.params,
            status: Status::Skipped,
            instances: 0,
            witness: Some(reason.into()),
        }
    }
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport { title: title.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> usize {
        self.count(Status::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(Status::Skipped)
    }

    fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    /// No failures and at least one passing check.
    pub fn is_success(&self) -> bool {
        self.failed() == 0 && self.passed() > 0
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for c in &self.checks {
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "{:<7} {} [{}] instances={}", c.status, c.name, params.join(" "), c.instances)?;
            if let Some(w) = &c.witness {
                write!(f, " :: {w}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "summary: {} passed, {} failed, {} skipped", self.passed(), self.failed(), self.skipped())
    }
}

/// `D*_N` of the first `N` values for each `N` in `schedule`.
pub fn equidistribution_report(rep: &Representative, schedule: &[usize]) -> Result<VerificationReport, AnalysisError> {
    let mut report = VerificationReport::new("equidistribution (empirical; a finite prefix cannot certify the limit)");
    let mut trend = CheckBuilder::new("discrepancy-trend").param("schedule", format_list(schedule));
    let mut previous: Option<ExactReal> = None;
    let mut series = Vec::new();
    for &n in schedule.iter().filter(|&&n| n >= 1 && n <= rep.len()) {
        let d = star_discrepancy(&rep.values()[..n])?;
        series.push(format!("{n}:{:.6}", d.to_f64()));
        if let Some(p) = &previous {
            let non_increasing = d.try_cmp(p)?.is_le();
            trend.expect(non_increasing, || format!("D* rose from {:.6} to {:.6} at N={n}", p.to_f64(), d.to_f64()));
        }
        report.checks.push(Check {
            name: "star-discrepancy".to_string(),
            params: BTreeMap::from([("N".to_string(), n.to_string())]),
            status: Status::Pass,
            instances: 1,
            witness: Some(format!("{d} ~ {:.6}", d.to_f64())),
        });
        previous = Some(d);
    }
    trend.note(series.join(" "));
    report.checks.push(trend.finish());
    Ok(report)
}

fn format_list(items: &[usize]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Factor counts, weights and conjugacy classes of the slope-`sigma` words
/// for every length `1..=depth`.
pub fn verify_sturmian_word(sigma: &ExactReal, depth: usize) -> Result<VerificationReport, AnalysisError> {
    require_irrational(sigma)?;
    let mut report = VerificationReport::new(format!("Sturmian word, slope {sigma}"));
    let prefix_len = (100 * depth).max(1000);
    let spec = SturmianSpec::new(sigma.clone(), ExactReal::zero(), Convention::Lower)?;
    let prefix = generate(&spec, prefix_len);

    let d = depth.to_string();
    let mut count = CheckBuilder::new("exact-factor-count").param("depth", &d);
    let mut specials = CheckBuilder::new("one-right-one-left-special").param("depth", &d);
    let mut weights = CheckBuilder::new("one-counts-floor-or-ceil").param("depth", &d);
    let mut classes = CheckBuilder::new("conjugacy-classes-weight-constant").param("depth", &d);
    let mut window = CheckBuilder::new("prefix-factors-equal-exact").param("depth", &d).param("L", prefix_len);

    let mut next = enumerate_factors_exact(sigma, 1)?;
    for n in 1..=depth {
        let exact = next;
        next = enumerate_factors_exact(sigma, n + 1)?;
        count.expect(exact.len() == n + 1, || format!("n={n}: {} factors", exact.len()));

        let sf = special_factors(&exact, &next)?;
        specials.expect(sf.right.len() == 1 && sf.left.len() == 1, || {
            format!("n={n}: {} right-special, {} left-special", sf.right.len(), sf.left.len())
        });

        let mut class_weight: BTreeMap<Word, Weight> = BTreeMap::new();
        for v in exact.iter() {
            match weight_class(v, sigma) {
                Ok(wc) => {
                    weights.expect(true, String::new);
                    let key = conjugacy_class_key(v);
                    let first = *class_weight.entry(key).or_insert(wc);
                    classes.expect(first == wc, || format!("{v} is {wc:?} but a conjugate is {first:?}"));
                }
                Err(e) => weights.expect(false, || e.to_string()),
            }
        }

        let observed = factors(&prefix, n)?;
        window.expect(observed == exact, || {
            format!("n={n}: prefix shows {} factors, exact count {}", observed.len(), exact.len())
        });
    }
    report.checks.extend([count, specials, weights, classes, window].map(CheckBuilder::finish));
    Ok(report)
}

/// Complexity, underlying word, light/heavy order rule, extremal elements
/// and the complexity bridge for the Sturmian permutation of `spec`.
pub fn verify_sturmian_permutation(
    spec: &SturmianSpec,
    depth: usize,
    len: usize,
    seed: u64,
) -> Result<VerificationReport, AnalysisError> {
    let rep = sturmian_representative(spec, len)?;
    let mut report =
        VerificationReport::new(format!("Sturmian permutation, slope {}, intercept {}", spec.sigma(), spec.rho()));
    let (d, l) = (depth.to_string(), len.to_string());

    let profile = perm_complexity_profile(&rep, depth)?;
    let mut complexity = CheckBuilder::new("perm-complexity-equals-n").param("depth", &d).param("L", &l);
    for (n, c) in profile.iter() {
        complexity.expect(c == n, || format!("n={n}: p={c}"));
    }
    report.checks.push(complexity.finish());

    let s = underlying_word(&rep);
    let word = generate(spec, len - 1);
    let mut under = CheckBuilder::new("underlying-word-equals-coding").param("L", &l);
    for (i, (a, b)) in s.letters().iter().zip(word.letters()).enumerate() {
        under.expect(a == b, || format!("letter {i}: underlying {a}, coding {b}"));
    }
    report.checks.push(under.finish());

    let mut order = CheckBuilder::new("light-iff-increasing").param("pairs", 1000).param("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rep.ranks();
    for _ in 0..1000 {
        let i = rng.gen_range(0..len - 1);
        let j = rng.gen_range(i + 1..len);
        let factor = word.slice(i, j - i);
        match weight_class(&factor, spec.sigma()) {
            Ok(wc) => {
                let increasing = r[i] < r[j];
                order.expect(increasing == (wc == Weight::Light), || {
                    format!("i={i} j={j}: factor is {wc:?}, values {}", if increasing { "increase" } else { "decrease" })
                });
            }
            Err(e) => order.expect(false, || format!("i={i} j={j}: {e}")),
        }
    }
    report.checks.push(order.finish());

    let mut extremal = CheckBuilder::new("n-extremal-elements-exist").param("N_max", depth / 2);
    for n in 1..=depth / 2 {
        let e = find_n_extremal(&rep, n);
        extremal.expect(!e.maximal.is_empty() && !e.minimal.is_empty(), || {
            format!("N={n}: {} maximal, {} minimal", e.maximal.len(), e.minimal.len())
        });
    }
    report.checks.push(extremal.finish());

    report.checks.push(bridge_check(&rep, depth)?);
    Ok(report)
}

/// `p_alpha(n) >= p_s(n - 1)` for `n = 2..=depth`, `s` the underlying word.
pub fn bridge_check(rep: &Representative, depth: usize) -> Result<Check, AnalysisError> {
    let depth = depth.min(rep.len());
    let mut check = CheckBuilder::new("complexity-bridge").param("depth", depth).param("L", rep.len());
    if depth < 2 {
        return Ok(check.finish());
    }
    let perm = perm_complexity_profile(rep, depth)?;
    let word = complexity_profile(&underlying_word(rep), depth - 1)?;
    for n in 2..=depth {
        let (p, q) = (perm.get(n).unwrap_or(0), word.get(n - 1).unwrap_or(0));
        check.expect(p >= q, || format!("n={n}: perm {p} < word {q}"));
    }
    Ok(check.finish())
}

/// Block decomposition at tower levels `0..=levels` of the `len`-prefix of
/// the slope-`sigma` word, plus weight alternation and Christoffel lengths.
pub fn verify_decomposition(sigma: &ExactReal, levels: usize, len: usize) -> Result<VerificationReport, AnalysisError> {
    require_irrational(sigma)?;
    let mut report = VerificationReport::new(format!("block decomposition, slope {sigma}"));
    let spec = SturmianSpec::new(sigma.clone(), ExactReal::zero(), Convention::Lower)?;
    let word = generate(&spec, len);
    let tower = StandardWordTower::from_slope(sigma, levels)?;

    let mut alternation = CheckBuilder::new("weight-alternation").param("levels", levels);
    for n in 0..=levels {
        let d = tower.d(n + 1).expect("tower built one quotient beyond the top level") as usize;
        let name = format!("decomposition-level-{n}");
        let check = CheckBuilder::new(&name).param("level", n).param("d", d).param("L", len);
        let longest = tower.block(n, d + 1)?;
        if 3 * longest.len() > len {
            report.checks.push(check.skip(format!("blocks of length {} do not fit twice in L={len}", longest.len())));
            continue;
        }
        report.checks.push(decomposition_check(check, &word, &tower, n, d)?);

        let s_n = tower.s(n as isize).expect("level exists");
        let base = weight_class(s_n, sigma)?;
        for k in 1..=d {
            let block = tower.block(n, k)?;
            let wc = weight_class(&block, sigma)?;
            alternation.expect(wc != base, || format!("level {n}: s_n is {base:?} and s_n^{k} s_(n-1) is {wc:?}"));
        }
    }
    report.checks.push(alternation.finish());
    report.checks.push(christoffel_length_check(sigma, len)?);
    Ok(report)
}

fn decomposition_check(
    mut check: CheckBuilder,
    word: &Word,
    tower: &StandardWordTower,
    n: usize,
    d: usize,
) -> Result<Check, AnalysisError> {
    let f = match factorize(word, tower, n) {
        Ok(f) => f,
        Err(e @ SturmianError::ParseFailure { .. }) => {
            check.expect(false, || e.to_string());
            return Ok(check.finish());
        }
        Err(e) => return Err(e.into()),
    };
    for (i, &k) in f.exponents.iter().enumerate() {
        check.expect(k == d || k == d + 1, || format!("block {i}: exponent {k}"));
    }
    let longest = tower.block(n, d + 1)?;
    check.expect(f.prefix.len() <= longest.len() && longest.ends_with(&f.prefix), || {
        format!("prefix {} is not a suffix of s_n^(d+1) s_(n-1)", f.prefix)
    });
    let rebuilt = f.reconstruct(tower)?;
    check.expect(&rebuilt == word, || "reconstruction differs from the input".to_string());
    check.note(format!("prefix={} blocks={} residue={}", f.prefix.len(), f.exponents.len(), f.residue.len()));
    Ok(check.finish())
}

/// Running-extremum lengths of `{n sigma}` against tower block lengths.
///
/// Length 1 is a running extremum by convention; the shortest tower block
/// has length 2, so the comparison is over lengths `>= 2`.
pub fn christoffel_length_check(sigma: &ExactReal, n_max: usize) -> Result<Check, AnalysisError> {
    let lengths = christoffel_lengths(sigma, n_max)?;
    let mut levels = 1;
    let tower = loop {
        let t = StandardWordTower::from_slope(sigma, levels)?;
        if t.s(levels as isize).expect("top").len() > n_max {
            break t;
        }
        levels += 1;
    };
    let blocks = tower.block_lengths(n_max);
    let mut check = CheckBuilder::new("christoffel-lengths-equal-block-lengths").param("n_max", n_max);
    check.expect(lengths.first() == Some(&1), || "length 1 missing".to_string());
    let extremal: Vec<usize> = lengths.iter().copied().filter(|&n| n >= 2).collect();
    check.expect(extremal == blocks, || {
        format!("extrema {} vs blocks {}", format_list(&extremal), format_list(&blocks))
    });
    check.note(format_list(&lengths));
    Ok(check.finish())
}

/// Each Christoffel prefix `w` of length `2..=n_max` has a bispecial middle
/// `b` with `w` in `christoffel_pair(b)`, both Christoffel words are factors
/// and conjugate, and the factors of that length are their conjugates plus
/// exactly one other word.
pub fn verify_christoffel(sigma: &ExactReal, n_max: usize) -> Result<VerificationReport, AnalysisError> {
    let mut report = VerificationReport::new(format!("Christoffel words, slope {sigma}"));
    report.checks.push(christoffel_length_check(sigma, n_max)?);
    let mut bispecial = CheckBuilder::new("christoffel-prefix-bispecial-derived").param("n_max", n_max);
    let mut coverage = CheckBuilder::new("factors-are-conjugates-plus-one").param("n_max", n_max);
    for (n, w) in christoffel_prefixes(sigma, n_max)? {
        if n < 2 {
            continue;
        }
        let b = w.slice(1, n - 2);
        let (lo, hi) = christoffel_pair(&b);
        let is_special = if b.is_empty() {
            true
        } else {
            let short = enumerate_factors_exact(sigma, b.len())?;
            let long = enumerate_factors_exact(sigma, b.len() + 1)?;
            special_factors(&short, &long)?.bispecial.contains(&b)
        };
        bispecial.expect(is_special && (w == lo || w == hi), || format!("length {n}: prefix {w}, middle {b}"));

        let fs = enumerate_factors_exact(sigma, n)?;
        let conj = conjugates(&lo);
        let both = fs.contains(&lo) && fs.contains(&hi) && conj.contains(&hi);
        let outside = fs.iter().filter(|v| !conj.contains(v)).count();
        coverage.expect(both && outside == 1 && conj.len() == n, || {
            format!("length {n}: {outside} factors outside the class of {lo}, class size {}", conj.len())
        });
    }
    report.checks.extend([bispecial.finish(), coverage.finish()]);
    Ok(report)
}

/// Longest `N`-monotone chains and `N`-extremal elements for `N = 1..=n_max`.
pub fn monotone_diagnostics(rep: &Representative, n_max: usize) -> VerificationReport {
    let mut report = VerificationReport::new(format!("monotone diagnostics, L={}", rep.len()));
    for n in 1..=n_max {
        let inc = longest_monotone_chain(rep, n, Direction::Increasing);
        let dec = longest_monotone_chain(rep, n, Direction::Decreasing);
        let e = find_n_extremal(rep, n);
        let mut chains = CheckBuilder::new("longest-chains").param("N", n);
        chains.expect(true, String::new);
        let density = inc.max(dec) as f64 / rep.len() as f64;
        chains.note(format!("increasing={inc} decreasing={dec} density={density:.4}"));
        report.checks.push(chains.finish());

        let mut ext = CheckBuilder::new("n-extremal-elements-exist").param("N", n);
        ext.expect(!e.maximal.is_empty() && !e.minimal.is_empty(), || {
            format!("{} maximal, {} minimal", e.maximal.len(), e.minimal.len())
        });
        report.checks.push(ext.finish());
    }
    report
}

/// Largest `|estimate(i) - values[i]|` over `i < count` compared with `D*`.
pub fn estimate_within_discrepancy(rep: &Representative, count: usize) -> Result<Check, AnalysisError> {
    let d = star_discrepancy(rep.values())?;
    let mut check = CheckBuilder::new("estimate-within-star-discrepancy").param("count", count).param("L", rep.len());
    for i in 0..count.min(rep.len()) {
        let est = crate::permutations::canonical_estimate(rep, i)?;
        let gap = est.try_sub(&rep.values()[i])?;
        let gap = if gap.signum() < 0 { gap.neg() } else { gap };
        check.expect(gap.try_cmp(&d)?.is_le(), || format!("i={i}: |est - value| = {gap} > D* = {d}"));
    }
    check.note(format!("D* = {d} ~ {:.6}", d.to_f64()));
    Ok(check.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(s: &str) -> ExactReal {
        s.parse().unwrap()
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(star_discrepancy(&[x("1/2")]).unwrap(), x("1/2"));
        assert_eq!(star_discrepancy(&[x("1/4"), x("3/4")]).unwrap(), x("1/4"));
        // Grid k/N for k = 1..N: D* = 1/N.
        let grid: Vec<ExactReal> = (1..=10).map(|k| ExactReal::from_ratio(k, 10).unwrap()).collect();
        assert_eq!(star_discrepancy(&grid).unwrap(), x("1/10"));
        assert!(matches!(star_discrepancy(&[x("3/2")]), Err(AnalysisError::OutOfUnitInterval(0))));
        assert!(matches!(star_discrepancy(&[]), Err(AnalysisError::Empty)));
    }

    #[test]
    fn zero_instance_checks_fail() {
        let c = CheckBuilder::new("empty").finish();
        assert_eq!(c.status, Status::Fail);
        let r = VerificationReport { title: "t".into(), checks: vec![] };
        assert!(!r.is_success());
    }

    #[test]
    fn rational_slope_is_rejected() {
        assert!(matches!(verify_sturmian_word(&x("1/3"), 5), Err(AnalysisError::Sturmian(SturmianError::RationalSlope(_)))));
    }

    #[test]
    fn small_word_report_passes() {
        let r = verify_sturmian_word(&x("(0+1*sqrt(2))/4"), 12).unwrap();
        assert!(r.is_success(), "{r}");
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn decomposition_beyond_horizon_is_skipped() {
        let r = verify_decomposition(&x("(-1+1*sqrt(5))/2"), 12, 300).unwrap();
        assert!(r.skipped() > 0);
        assert_eq!(r.failed(), 0, "{r}");
    }
}
