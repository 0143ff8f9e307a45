//! Finite representatives of named infinite permutations.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactreal::ExactReal;
use crate::permutations::{PermError, Representative};
use crate::sturmian::{require_irrational, SturmianError, SturmianSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Sturmian(#[from] SturmianError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("n_k must be positive and strictly increasing (violated at k = {0})")]
    NotStrictlyIncreasing(usize),
    #[error("schedule has {have} entries but the prefix needs n_k for k <= {needed}")]
    ScheduleTooShort { have: usize, needed: usize },
    #[error("constraint ({0}, {1}) is invalid for size {2}")]
    InvalidConstraint(usize, usize, usize),
    #[error("order constraints contain a cycle through index {0}")]
    CycleDetected(usize),
    #[error("cannot parse schedule {0:?}")]
    BadSchedule(String),
}

/// `b[n] = {rho + n sigma}` (or the upper fractional part), `n < len`.
pub fn sturmian_representative(spec: &SturmianSpec, len: usize) -> Result<Representative, ConstructionError> {
    require_irrational(spec.sigma())?;
    Ok(Representative::new(spec.orbit(len).collect())?)
}

/// Prefix of the fixed point of the Thue–Morse morphism on `[0, 1]`,
/// `x -> (x/2 + 1/4, x/2 + 3/4)` for `x <= 1/2` and
/// `x -> (x/2 + 1/4, x/2 - 1/4)` otherwise, seeded with `1/2`.
pub fn thue_morse_representative(len: usize) -> Representative {
    let half = ExactReal::from_ratio(1, 2).expect("nonzero");
    let mut seq = vec![half.clone()];
    let mut expanded = 0;
    while seq.len() < len {
        let x = seq[expanded].clone();
        let (a, b) = thue_morse_image(&x, &half);
        // The seed is its own first image letter, so only the second letter is new.
        if expanded == 0 {
            seq.push(b);
        } else {
            seq.push(a);
            seq.push(b);
        }
        expanded += 1;
    }
    seq.truncate(len);
    Representative::new(seq).expect("Thue–Morse values are distinct")
}

pub(crate) fn thue_morse_image(x: &ExactReal, half: &ExactReal) -> (ExactReal, ExactReal) {
    let quarter = |k: i64| ExactReal::from_ratio(k, 4).expect("nonzero");
    let base = x.scale(1, 2).expect("rational");
    let first = base.try_add(&quarter(1)).expect("rational");
    let second = if x <= half {
        base.try_add(&quarter(3))
    } else {
        base.try_sub(&quarter(1))
    }
    .expect("rational");
    (first, second)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example1Variant {
    /// `a[n] = (-1/2)^n`
    A,
    /// `b[n] = 1000 + (-1/3)^n`
    B,
}

pub fn example1_representative(len: usize, variant: Example1Variant) -> Representative {
    let (base, offset) = match variant {
        Example1Variant::A => (-2i64, 0i64),
        Example1Variant::B => (-3, 1000),
    };
    let mut den = BigInt::one();
    let values = (0..len)
        .map(|_| {
            // (1/base)^n = 1 / base^n, with the sign carried by the denominator.
            let v = ExactReal::from_ratio(BigInt::one() + BigInt::from(offset) * &den, den.clone())
                .expect("nonzero");
            den *= base;
            v
        })
        .collect();
    Representative::new(values).expect("geometric terms are distinct")
}

/// The sequence `n_1 < n_2 < ...` steering the slow-complexity permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NkSchedule {
    /// `n_k = 2^k`.
    PowersOfTwo,
    Explicit(Vec<BigUint>),
}

impl NkSchedule {
    pub fn explicit(values: Vec<BigUint>) -> Result<Self, ConstructionError> {
        if values.first().is_some_and(Zero::is_zero) {
            return Err(ConstructionError::NotStrictlyIncreasing(1));
        }
        if let Some(k) = values.windows(2).position(|p| p[0] >= p[1]) {
            return Err(ConstructionError::NotStrictlyIncreasing(k + 2));
        }
        Ok(NkSchedule::Explicit(values))
    }

    /// `n_k` for `k >= 1`.
    pub fn get(&self, k: usize) -> Option<BigUint> {
        match self {
            NkSchedule::PowersOfTwo => Some(BigUint::one() << k),
            NkSchedule::Explicit(v) => k.checked_sub(1).and_then(|i| v.get(i).cloned()),
        }
    }
}

impl FromStr for NkSchedule {
    type Err = ConstructionError;

    /// `2^k` or a comma-separated list.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "2^k" {
            return Ok(NkSchedule::PowersOfTwo);
        }
        let values = s
            .split(',')
            .map(|t| t.trim().parse::<BigUint>().map_err(|_| ConstructionError::BadSchedule(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        NkSchedule::explicit(values)
    }
}

impl fmt::Display for NkSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NkSchedule::PowersOfTwo => f.write_str("2^k"),
            NkSchedule::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

/// `e_m = m / (m + 1)`, the value at even position `2m`.
fn even_value(m: &BigUint) -> ExactReal {
    let m = BigInt::from(m.clone());
    ExactReal::from_ratio(m.clone(), m + 1).expect("nonzero")
}

/// Representative of the permutation with
/// `a[2n-1] < a[2n+1]`, `a[2n] < a[2n+2]` and `a[2n_k - 2] < a[2k - 1] < a[2n_k]`.
///
/// Even positions `2m` hold `m / (m + 1)`; odd position `2k - 1` holds the
/// midpoint of the values at `2n_k - 2` and `2n_k`. Position 0 gets 0.
pub fn slow_complexity_representative(nk: &NkSchedule, len: usize) -> Result<Representative, ConstructionError> {
    let odd_count = len / 2;
    let mut values = Vec::with_capacity(len);
    for i in 0..len {
        let v = if i % 2 == 0 {
            even_value(&BigUint::from(i / 2))
        } else {
            let k = i.div_ceil(2);
            let n = nk.get(k).ok_or(ConstructionError::ScheduleTooShort {
                have: k - 1,
                needed: odd_count,
            })?;
            even_value(&(&n - 1u32)).midpoint(&even_value(&n)).expect("rational")
        };
        values.push(v);
    }
    Ok(Representative::new(values)?)
}

/// First violated defining inequality of the slow-complexity permutation, as
/// `(smaller index, larger-valued index)`, or `None` if all hold in range.
pub fn slow_complexity_violation(rep: &Representative, nk: &NkSchedule) -> Option<(usize, usize)> {
    let r = rep.ranks();
    let len = r.len();
    let less = |i: usize, j: usize| r[i] < r[j];
    for n in 1.. {
        if 2 * n + 1 >= len {
            break;
        }
        if !less(2 * n - 1, 2 * n + 1) {
            return Some((2 * n - 1, 2 * n + 1));
        }
    }
    for n in 1.. {
        if 2 * n + 2 >= len {
            break;
        }
        if !less(2 * n, 2 * n + 2) {
            return Some((2 * n, 2 * n + 2));
        }
    }
    for k in 1..=len / 2 {
        let odd = 2 * k - 1;
        let Some(n) = nk.get(k) else { break };
        let Some(above) = usize::try_from(&n).ok().and_then(|n| n.checked_mul(2)) else { continue };
        let below = above - 2;
        if below < len && !less(below, odd) {
            return Some((below, odd));
        }
        if above < len && !less(odd, above) {
            return Some((odd, above));
        }
    }
    None
}

/// Strict order constraints `value_i < value_j` on indices `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderConstraintSet {
    size: usize,
    pairs: BTreeSet<(usize, usize)>,
    topo: Vec<usize>,
}

impl OrderConstraintSet {
    /// Validates indices and acyclicity.
    pub fn new(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ConstructionError> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        for &(i, j) in &pairs {
            if i >= size || j >= size || i == j {
                return Err(ConstructionError::InvalidConstraint(i, j, size));
            }
            if pairs.contains(&(j, i)) {
                return Err(ConstructionError::CycleDetected(i.min(j)));
            }
        }
        let topo = topological_order(size, &pairs)?;
        Ok(OrderConstraintSet { size, pairs, topo })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }
}

/// Kahn's algorithm, always releasing the lowest available index first.
fn topological_order(size: usize, pairs: &BTreeSet<(usize, usize)>) -> Result<Vec<usize>, ConstructionError> {
    let mut indegree = vec![0usize; size];
    let mut succ = vec![Vec::new(); size];
    for &(i, j) in pairs {
        indegree[j] += 1;
        succ[i].push(j);
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..size).filter(|&i| indegree[i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(size);
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.push(Reverse(j));
            }
        }
    }
    if order.len() < size {
        let stuck = (0..size).find(|&i| indegree[i] > 0).expect("some index is on a cycle");
        return Err(ConstructionError::CycleDetected(stuck));
    }
    Ok(order)
}

/// Rational values in `(0, 1)` realizing every constraint.
///
/// Indices are placed in topological order (lowest index first among the
/// unconstrained ones); the `p`-th placed index receives `(p + 1) / (size + 1)`.
pub fn realize(constraints: &OrderConstraintSet) -> Representative {
    let size = constraints.size;
    let mut values = vec![ExactReal::zero(); size];
    for (p, &i) in constraints.topo.iter().enumerate() {
        values[i] = ExactReal::from_ratio(p as i64 + 1, size as i64 + 1).expect("nonzero");
    }
    Representative::new(values).expect("positions are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutations::{detect_perm_period, equivalent, underlying_word};
    use crate::sturmian::{generate, Convention};

    fn x(s: &str) -> ExactReal {
        s.parse().unwrap()
    }

    #[test]
    fn sturmian_rep_examples() {
        let spec = SturmianSpec::new(x("(-1+1*sqrt(5))/2"), x("0"), Convention::Lower).unwrap();
        let r = sturmian_representative(&spec, 3).unwrap();
        assert_eq!(r.values(), &[x("0"), x("(-1+1*sqrt(5))/2"), x("(-2+1*sqrt(5))/1")]);
        let long = sturmian_representative(&spec, 500).unwrap();
        assert_eq!(underlying_word(&long), generate(&spec, 499));
        let rational = SturmianSpec::new(x("1/3"), x("0"), Convention::Lower).unwrap();
        assert!(matches!(
            sturmian_representative(&rational, 5),
            Err(ConstructionError::Sturmian(SturmianError::RationalSlope(_)))
        ));
    }

    #[test]
    fn thue_morse_prefix() {
        let r = thue_morse_representative(8);
        let expected: Vec<ExactReal> =
            ["1/2", "1", "3/4", "1/4", "5/8", "1/8", "3/8", "7/8"].iter().map(|s| x(s)).collect();
        assert_eq!(r.values(), &expected[..]);
        assert_eq!(underlying_word(&r).to_string(), "0110100");
    }

    #[test]
    fn thue_morse_is_a_fixed_point() {
        let r = thue_morse_representative(64);
        let half = x("1/2");
        let image: Vec<ExactReal> = r.values()[..32]
            .iter()
            .flat_map(|v| {
                let (a, b) = thue_morse_image(v, &half);
                [a, b]
            })
            .collect();
        assert_eq!(&image[..], r.values());
    }

    #[test]
    fn alternating_examples() {
        let a = example1_representative(4, Example1Variant::A);
        assert_eq!(a.values(), &[x("1"), x("-1/2"), x("1/4"), x("-1/8")]);
        let b = example1_representative(4, Example1Variant::B);
        assert_eq!(b.values(), &[x("1001"), x("2999/3"), x("9001/9"), x("26999/27")]);
        for len in [1, 2, 7, 40] {
            let a = example1_representative(len, Example1Variant::A);
            let b = example1_representative(len, Example1Variant::B);
            assert!(equivalent(&a, &b).unwrap());
        }
        let a = example1_representative(60, Example1Variant::A);
        assert_eq!(detect_perm_period(&a, 15).map(|p| p.period), Some(2));
    }

    #[test]
    fn slow_complexity_examples() {
        let nk = "1,2,3,4,5,6".parse::<NkSchedule>().unwrap();
        let r = slow_complexity_representative(&nk, 12).unwrap();
        assert_eq!(r.values()[1], x("1/4"));
        assert_eq!(slow_complexity_violation(&r, &nk), None);
        assert!(matches!(
            slow_complexity_representative(&nk, 20),
            Err(ConstructionError::ScheduleTooShort { .. })
        ));
        assert!(matches!("3,3".parse::<NkSchedule>(), Err(ConstructionError::NotStrictlyIncreasing(2))));
        assert!(matches!("0,3".parse::<NkSchedule>(), Err(ConstructionError::NotStrictlyIncreasing(1))));
        assert_eq!("2^k".parse::<NkSchedule>().unwrap(), NkSchedule::PowersOfTwo);
    }

    #[test]
    fn realize_examples() {
        // a0 > a2 > a3 > a1 on four indices.
        let c = OrderConstraintSet::new(4, [(2, 0), (3, 2), (1, 3)]).unwrap();
        assert_eq!(realize(&c).pattern().to_string(), "4,1,3,2");
        let empty = OrderConstraintSet::new(3, []).unwrap();
        assert_eq!(realize(&empty).pattern().to_string(), "1,2,3");
        let chain = OrderConstraintSet::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(realize(&chain).pattern().to_string(), "1,2,3");
        assert!(matches!(
            OrderConstraintSet::new(3, [(0, 1), (1, 2), (2, 0)]),
            Err(ConstructionError::CycleDetected(_))
        ));
        assert!(matches!(OrderConstraintSet::new(3, [(0, 1), (1, 0)]), Err(ConstructionError::CycleDetected(0))));
        assert!(matches!(OrderConstraintSet::new(3, [(0, 3)]), Err(ConstructionError::InvalidConstraint(0, 3, 3))));
    }
}
