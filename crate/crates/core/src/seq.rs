//! Finite-support sequences of non-negative rationals indexed by integers.
//!
//! A [`FiniteSeq`] stores a dense window `offset..offset+len` and is zero
//! everywhere else. Values are kept trimmed: the first and last stored terms
//! are nonzero, and the zero sequence is the empty window.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rat::{parse_nonneg, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSeq {
    offset: i64,
    terms: Vec<Rat>,
}

/// Indices `n, p, q` (with `p, q >= 1`) at which
/// `a[n] * a[n+p+q] <= a[n+p] * a[n+q]` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LcWitness {
    pub n: i64,
    pub p: i64,
    pub q: i64,
}

impl LcWitness {
    /// `(a[n+p] * a[n+q], a[n] * a[n+p+q])`; the first should dominate.
    pub fn sides(&self, a: &FiniteSeq) -> (Rat, Rat) {
        let inner = a.term_at(self.n + self.p) * a.term_at(self.n + self.q);
        let outer = a.term_at(self.n) * a.term_at(self.n + self.p + self.q);
        (inner, outer)
    }
}

/// Indices where a unimodal sequence attains its maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeInterval {
    /// The zero sequence has no mode.
    Empty,
    Span { lo: i64, hi: i64 },
}

impl ModeInterval {
    pub fn contains(&self, n: i64) -> bool {
        match *self {
            ModeInterval::Empty => false,
            ModeInterval::Span { lo, hi } => lo <= n && n <= hi,
        }
    }
}

impl fmt::Display for ModeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeInterval::Empty => f.write_str("empty"),
            ModeInterval::Span { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

impl FiniteSeq {
    /// Builds a sequence whose term at `offset + i` is `terms[i]`. Zeros at
    /// either end are trimmed; negative terms are rejected.
    pub fn new(offset: i64, terms: Vec<Rat>) -> Result<Self> {
        if let Some(neg) = terms.iter().find(|t| t.is_negative()) {
            return Err(Error::NegativeTerm(neg.to_string()));
        }
        Ok(Self::trimmed(offset, terms))
    }

    pub fn from_ints(offset: i64, terms: &[u64]) -> Self {
        Self::trimmed(offset, terms.iter().map(|&t| Rat::from_integer(BigInt::from(t))).collect())
    }

    fn trimmed(offset: i64, mut terms: Vec<Rat>) -> Self {
        let Some(first) = terms.iter().position(|t| !t.is_zero()) else {
            return Self::zero();
        };
        let last = terms.iter().rposition(|t| !t.is_zero()).unwrap();
        terms.truncate(last + 1);
        terms.drain(..first);
        FiniteSeq { offset: offset + first as i64, terms }
    }

    pub fn zero() -> Self {
        FiniteSeq { offset: 0, terms: Vec::new() }
    }

    /// The unit sequence concentrated at `at`.
    pub fn delta(at: i64) -> Self {
        FiniteSeq { offset: at, terms: vec![Rat::one()] }
    }

    /// `len` ones starting at index 0.
    pub fn ones(len: usize) -> Self {
        Self::trimmed(0, vec![Rat::one(); len])
    }

    /// `1, r, r^2, ...` with `len` terms starting at index 0.
    pub fn geometric(ratio: &Rat, len: usize) -> Result<Self> {
        let mut terms = Vec::with_capacity(len);
        let mut cur = Rat::one();
        for _ in 0..len {
            terms.push(cur.clone());
            cur *= ratio;
        }
        Self::new(0, terms)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Rat] {
        &self.terms
    }

    /// Index of the last stored term, `None` for the zero sequence.
    pub fn end(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.terms.len() as i64 - 1)
    }

    /// `(first, last)` nonzero indices.
    pub fn support(&self) -> Option<(i64, i64)> {
        self.end().map(|e| (self.offset, e))
    }

    pub fn term_at(&self, n: i64) -> Rat {
        self.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    fn get(&self, n: i64) -> Option<&Rat> {
        let i = n.checked_sub(self.offset)?;
        usize::try_from(i).ok().and_then(|i| self.terms.get(i))
    }

    /// Restriction to the index window `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        if hi < lo {
            return Self::zero();
        }
        let terms = (lo..=hi).map(|n| self.term_at(n)).collect();
        Self::trimmed(lo, terms)
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        FiniteSeq { offset: self.offset + by, terms: self.terms.clone() }
    }

    /// Terms scaled to integers by the lcm of their denominators.
    fn scaled(&self) -> (Vec<BigInt>, BigInt) {
        let lcm = self.terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.denom()));
        let ints = self.terms.iter().map(|t| t.numer() * (&lcm / t.denom())).collect();
        (ints, lcm)
    }

    /// Convolution `(a * b)_n = sum_k a_k b_{n-k}`.
    pub fn conv(&self, other: &Self) -> Self {
        self.conv_upto(other, i64::MAX)
    }

    /// Convolution with all indices above `hi` dropped.
    pub fn conv_upto(&self, other: &Self, hi: i64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let offset = self.offset + other.offset;
        if offset > hi {
            return Self::zero();
        }
        let full = self.len() + other.len() - 1;
        let room = hi.saturating_sub(offset).saturating_add(1);
        let out_len = full.min(room.try_into().unwrap_or(usize::MAX));
        let (a, la) = self.scaled();
        let (b, lb) = other.scaled();
        let mut acc = vec![BigInt::zero(); out_len];
        for (i, ai) in a.iter().enumerate().take(out_len) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(out_len - i) {
                acc[i + j] += ai * bj;
            }
        }
        let den = la * lb;
        let terms = acc.into_iter().map(|n| Rat::new(n, den.clone())).collect();
        Self::trimmed(offset, terms)
    }

    /// `k`-fold convolution power; `k = 0` gives `delta(0)`.
    pub fn conv_power(&self, k: u32) -> Self {
        let mut acc = Self::delta(0);
        let mut sq = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.conv(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.conv(&sq);
            }
        }
        acc
    }

    pub fn termwise_product(&self, other: &Self) -> Self {
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), other.support()) else {
            return Self::zero();
        };
        let (lo, hi) = (a0.max(b0), a1.min(b1));
        if lo > hi {
            return Self::zero();
        }
        let terms = (lo..=hi).map(|n| self.term_at(n) * other.term_at(n)).collect();
        Self::trimmed(lo, terms)
    }

    /// The sequence `n -> a_n * b_{p-n}`.
    pub fn skew_product(&self, other: &Self, p: i64) -> Self {
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), other.support()) else {
            return Self::zero();
        };
        let (lo, hi) = (a0.max(p - b1), a1.min(p - b0));
        if lo > hi {
            return Self::zero();
        }
        let terms = (lo..=hi).map(|n| self.term_at(n) * other.term_at(p - n)).collect();
        Self::trimmed(lo, terms)
    }

    /// First violation of log-concavity (without internal zeros), if any.
    ///
    /// Checks contiguity of the support, then `a_k^2 >= a_{k-1} a_{k+1}` for
    /// every interior `k`.
    pub fn log_concave_violation(&self) -> Option<LcWitness> {
        let t = &self.terms;
        if let Some(z) = t.iter().position(Zero::is_zero) {
            // Trimmed, so z is interior and a nonzero term follows.
            let next = z + t[z..].iter().position(|v| !v.is_zero()).unwrap();
            return Some(LcWitness {
                n: self.offset + z as i64 - 1,
                p: 1,
                q: (next - z) as i64,
            });
        }
        (1..t.len().saturating_sub(1))
            .find(|&k| &t[k] * &t[k] < &t[k - 1] * &t[k + 1])
            .map(|k| LcWitness { n: self.offset + k as i64 - 1, p: 1, q: 1 })
    }

    pub fn is_log_concave(&self) -> bool {
        self.log_concave_violation().is_none()
    }

    /// The defining inequality `a_n a_{n+p+q} <= a_{n+p} a_{n+q}` checked over
    /// every `n` and every `p, q >= 1` within one step of the support.
    pub fn is_log_concave_bruteforce(&self) -> bool {
        let Some((s, e)) = self.support() else {
            return true;
        };
        let (lo, hi) = (s - 1, e + 1);
        for n in lo..=hi {
            for p in 1..=(hi - n) {
                for q in 1..=(hi - n - p) {
                    let outer = self.term_at(n) * self.term_at(n + p + q);
                    let inner = self.term_at(n + p) * self.term_at(n + q);
                    if outer > inner {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The interval of maximal terms when the sequence is unimodal, `None`
    /// otherwise.
    pub fn unimodality(&self) -> Option<ModeInterval> {
        if self.is_zero() {
            return Some(ModeInterval::Empty);
        }
        let t = &self.terms;
        let mut descending = false;
        for w in t.windows(2) {
            if w[1] < w[0] {
                descending = true;
            } else if w[1] > w[0] && descending {
                return None;
            }
        }
        let max = t.iter().max().unwrap();
        let lo = t.iter().position(|v| v == max).unwrap();
        let hi = t.iter().rposition(|v| v == max).unwrap();
        Some(ModeInterval::Span { lo: self.offset + lo as i64, hi: self.offset + hi as i64 })
    }

    pub fn is_unimodal(&self) -> bool {
        self.unimodality().is_some()
    }

    pub fn sum(&self) -> Rat {
        self.terms.iter().sum()
    }
}

/// A strictly positive log-concave sequence of length `len` at offset 0.
///
/// Terms are running products `a_0 = 1`, `a_k = a_{k-1} r_k` of ratios
/// `r_1 >= r_2 >= ...` drawn from `{ratio_bound * j / 6 : 1 <= j <= 6}`.
/// The same seed always produces the same sequence.
pub fn random_log_concave(len: usize, seed: u64, ratio_bound: &Rat) -> Result<FiniteSeq> {
    const STEPS: i64 = 6;
    if len == 0 {
        return Err(Error::InvalidParameter("length must be at least 1".into()));
    }
    if !ratio_bound.is_positive() {
        return Err(Error::InvalidParameter(format!("ratio bound {ratio_bound} must be positive")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ratios: Vec<Rat> = (1..len)
        .map(|_| ratio_bound * Rat::new(rng.random_range(1..=STEPS).into(), STEPS.into()))
        .collect();
    ratios.sort_by(|x, y| y.cmp(x));
    let mut terms = Vec::with_capacity(len);
    let mut cur = Rat::one();
    terms.push(cur.clone());
    for r in &ratios {
        cur *= r;
        terms.push(cur.clone());
    }
    FiniteSeq::new(0, terms)
}

impl fmt::Display for FiniteSeq {
    /// `offset:v0,v1,...` or `zero`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("zero");
        }
        write!(f, "{}:", self.offset)?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for FiniteSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "zero" {
            return Ok(Self::zero());
        }
        let bad = |why: &str| Error::BadSequence(s.to_string(), why.to_string());
        let (off, vals) = t.split_once(':').ok_or_else(|| bad("expected `offset:v0,v1,...`"))?;
        let offset: i64 = off.trim().parse().map_err(|_| bad("offset is not an integer"))?;
        let terms = vals
            .split(',')
            .map(|v| parse_nonneg(v).map_err(|e| bad(&e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::trimmed(offset, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn s(offset: i64, v: &[u64]) -> FiniteSeq {
        FiniteSeq::from_ints(offset, v)
    }

    // Direct double loop over both supports.
    fn conv_oracle(a: &FiniteSeq, b: &FiniteSeq) -> FiniteSeq {
        let (Some((a0, a1)), Some((b0, b1))) = (a.support(), b.support()) else {
            return FiniteSeq::zero();
        };
        let lo = a0 + b0;
        let mut out = vec![Rat::zero(); (a1 + b1 - lo + 1) as usize];
        for i in a0..=a1 {
            for j in b0..=b1 {
                out[(i + j - lo) as usize] += a.term_at(i) * b.term_at(j);
            }
        }
        FiniteSeq::new(lo, out).unwrap()
    }

    #[test]
    fn trimming_and_accessors() {
        let a = s(-2, &[0, 0, 1, 2, 0]);
        assert_eq!(a.offset(), 0);
        assert_eq!(a.terms(), &[rat(1), rat(2)]);
        assert_eq!(a.support(), Some((0, 1)));
        assert_eq!(a.term_at(-5), rat(0));
        assert_eq!(s(3, &[0, 0]), FiniteSeq::zero());
        assert_eq!(FiniteSeq::zero().end(), None);
        assert!(FiniteSeq::new(0, vec![rat(1), rat(-1)]).is_err());
    }

    #[test]
    fn conv_examples() {
        assert_eq!(s(0, &[1, 2, 1]).conv(&s(0, &[1, 1])), s(0, &[1, 3, 3, 1]));
        assert_eq!(conv_oracle(&s(0, &[1, 2, 1]), &s(0, &[1, 1])), s(0, &[1, 3, 3, 1]));
        let a = FiniteSeq::new(-1, vec![ratio(1, 2), rat(3), ratio(2, 7)]).unwrap();
        assert_eq!(FiniteSeq::delta(0).conv(&a), a);
        assert_eq!(FiniteSeq::zero().conv(&a), FiniteSeq::zero());
        assert_eq!(s(2, &[1]).conv(&s(-5, &[1, 1])), s(-3, &[1, 1]));
    }

    #[test]
    fn conv_upto_drops_high_indices() {
        let full = s(0, &[1, 1, 1]).conv(&s(1, &[1, 2]));
        assert_eq!(s(0, &[1, 1, 1]).conv_upto(&s(1, &[1, 2]), 2), full.restrict(0, 2));
        assert_eq!(s(3, &[1]).conv_upto(&s(0, &[1]), 2), FiniteSeq::zero());
    }

    #[test]
    fn conv_power_examples() {
        assert_eq!(s(0, &[1, 1]).conv_power(3), s(0, &[1, 3, 3, 1]));
        assert_eq!(s(0, &[4, 5]).conv_power(0), FiniteSeq::delta(0));
        assert_eq!(s(0, &[1, 2, 2]).conv_power(2), s(0, &[1, 4, 8, 8, 4]));
        let q = s(0, &[1, 2, 2]);
        assert_eq!(conv_oracle(&q, &q), s(0, &[1, 4, 8, 8, 4]));
        assert_eq!(q.conv_power(1), q);
    }

    #[test]
    fn termwise_examples() {
        assert_eq!(s(0, &[1, 2, 1]).termwise_product(&s(0, &[1, 1, 1])), s(0, &[1, 2, 1]));
        // Overlap is index 1 only, where a_1 = 2 and b_1 = 3.
        assert_eq!(s(0, &[1, 2]).termwise_product(&s(1, &[3, 4])), s(1, &[6]));
        assert_eq!(s(0, &[1, 2]).termwise_product(&FiniteSeq::zero()), FiniteSeq::zero());
    }

    #[test]
    fn skew_examples() {
        let a = s(0, &[1, 2, 1]);
        assert_eq!(a.skew_product(&a, 2), s(0, &[1, 4, 1]));
        assert_eq!(a.skew_product(&a, 0), s(0, &[1]));
        assert_eq!(a.skew_product(&FiniteSeq::zero(), 3), FiniteSeq::zero());
        assert_eq!(a.skew_product(&a, 7), FiniteSeq::zero());
    }

    #[test]
    fn log_concavity_examples() {
        assert!(s(0, &[1, 3, 3, 1]).is_log_concave());
        let w = s(0, &[1, 1, 2]).log_concave_violation().unwrap();
        assert_eq!(w, LcWitness { n: 0, p: 1, q: 1 });
        assert_eq!(w.sides(&s(0, &[1, 1, 2])), (rat(1), rat(2)));
        // Internal zero: a_0 a_2 = 1 > a_1 a_1 = 0.
        let z = s(0, &[1, 0, 1]);
        let w = z.log_concave_violation().unwrap();
        let (inner, outer) = w.sides(&z);
        assert!(outer > inner);
        assert!(FiniteSeq::zero().is_log_concave());
        assert!(s(7, &[5]).is_log_concave());
    }

    #[test]
    fn internal_zero_witness_spans_gap() {
        let a = s(4, &[2, 3, 0, 0, 1]);
        let w = a.log_concave_violation().unwrap();
        let (inner, outer) = w.sides(&a);
        assert!(outer > inner, "{w:?}");
    }

    #[test]
    fn bruteforce_examples() {
        assert!(s(0, &[1, 3, 3, 1]).is_log_concave_bruteforce());
        assert!(!s(0, &[2, 1, 1, 2]).is_log_concave_bruteforce());
        assert!(s(7, &[5]).is_log_concave_bruteforce());
        assert!(!s(0, &[1, 0, 1]).is_log_concave_bruteforce());
    }

    #[test]
    fn unimodality_examples() {
        assert_eq!(s(0, &[1, 4, 1]).unimodality(), Some(ModeInterval::Span { lo: 1, hi: 1 }));
        assert_eq!(s(0, &[1, 2, 1, 2]).unimodality(), None);
        assert_eq!(s(5, &[3, 3, 3]).unimodality(), Some(ModeInterval::Span { lo: 5, hi: 7 }));
        assert_eq!(FiniteSeq::zero().unimodality(), Some(ModeInterval::Empty));
        assert!(!s(0, &[1, 0, 1]).is_unimodal());
    }

    #[test]
    fn random_log_concave_contract() {
        let two = rat(2);
        let single = random_log_concave(1, 99, &two).unwrap();
        assert_eq!(single.len(), 1);
        assert!(single.terms()[0] > rat(0));
        for seed in 0..50 {
            let a = random_log_concave(6, seed, &two).unwrap();
            assert_eq!(a.len(), 6);
            assert_eq!(a.offset(), 0);
            assert!(a.is_log_concave());
        }
        assert_eq!(random_log_concave(4, 17, &two).unwrap(), random_log_concave(4, 17, &two).unwrap());
        assert!(random_log_concave(0, 1, &two).is_err());
        assert!(random_log_concave(3, 1, &rat(0)).is_err());
    }

    #[test]
    fn literal_round_trip() {
        let a: FiniteSeq = "0:1,3/2,2".parse().unwrap();
        assert_eq!(a.terms(), &[rat(1), ratio(3, 2), rat(2)]);
        assert_eq!(a.to_string(), "0:1,3/2,2");
        assert_eq!("-3:0,1,0".parse::<FiniteSeq>().unwrap().to_string(), "-2:1");
        assert_eq!("zero".parse::<FiniteSeq>().unwrap(), FiniteSeq::zero());
        assert_eq!(FiniteSeq::zero().to_string(), "zero");
        for bad in ["", "1,2", "x:1", "0:", "0:1,-2", "0:1/0"] {
            assert!(bad.parse::<FiniteSeq>().is_err(), "{bad}");
        }
    }

    #[test]
    fn conv_matches_double_loop_oracle_on_rationals() {
        for seed in 0..30u64 {
            let a = random_log_concave(1 + (seed % 5) as usize, seed, &ratio(3, 2)).unwrap().shift(seed as i64 % 3 - 1);
            let b = random_log_concave(1 + (seed % 4) as usize, seed + 100, &rat(2)).unwrap();
            assert_eq!(a.conv(&b), conv_oracle(&a, &b));
        }
    }
}
