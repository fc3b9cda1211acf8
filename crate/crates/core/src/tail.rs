//! Two-sided sequences with eventually geometric tails.
//!
//! A [`TwoSidedSeq`] is a finite core `a_s..=a_e` extended to all of `Z` by
//! `a_{s-j} = a_s * L^j` and `a_{e+j} = a_e * R^j` for `j >= 1`. Every
//! question about the infinite sequence (sums, limits, log-concavity,
//! convolution terms) then has an exact finite answer.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{parse_nonneg, pow, Rat};
use crate::seq::{FiniteSeq, LcWitness, ModeInterval};

/// Multiplicative step per index moving away from the core. A zero ratio
/// means the tail vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeomTail {
    ratio: Rat,
}

impl GeomTail {
    pub fn new(ratio: Rat) -> Result<Self> {
        if ratio.is_negative() {
            return Err(Error::NegativeTerm(ratio.to_string()));
        }
        Ok(GeomTail { ratio })
    }

    pub fn zero() -> Self {
        GeomTail { ratio: Rat::zero() }
    }

    pub fn ratio(&self) -> &Rat {
        &self.ratio
    }

    /// Sum of `anchor * r^j` over `j >= 1`, if finite.
    fn sum_beyond(&self, anchor: &Rat) -> Option<Rat> {
        geometric_tail_sum(anchor, &self.ratio)
    }
}

/// `sum_{j >= 1} first * x^j`, or `None` when it diverges.
fn geometric_tail_sum(first: &Rat, x: &Rat) -> Option<Rat> {
    if first.is_zero() {
        return Some(Rat::zero());
    }
    if *x >= Rat::one() {
        return None;
    }
    Some(first * x / (Rat::one() - x))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoSidedSeq {
    core: FiniteSeq,
    left: GeomTail,
    right: GeomTail,
}

/// Which way a sum of terms fails to converge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    PlusInfinity,
    MinusInfinity,
    Both,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::PlusInfinity => "+inf",
            Direction::MinusInfinity => "-inf",
            Direction::Both => "both",
        })
    }
}

/// Outcome of summing one convolution term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FinitenessVerdict {
    Finite(Rat),
    Divergent(Direction),
}

impl FinitenessVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, FinitenessVerdict::Finite(_))
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            FinitenessVerdict::Finite(v) => Some(v),
            FinitenessVerdict::Divergent(_) => None,
        }
    }
}

impl fmt::Display for FinitenessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitenessVerdict::Finite(v) => write!(f, "finite {v}"),
            FinitenessVerdict::Divergent(d) => write!(f, "divergent {d}"),
        }
    }
}

/// Whether the skew product `n -> a_n b_{p-n}` tends to zero in each
/// direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SkewDecay {
    pub plus: bool,
    pub minus: bool,
}

/// Limit of a tail as the index moves away from the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailLimit {
    Zero,
    Constant(Rat),
    Infinite,
}

/// The argmax set of a two-sided sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxSet {
    /// Maximum attained only on the core; the span runs from the first to
    /// the last maximal index.
    Bounded(ModeInterval),
    /// Maximum attained at infinitely many indices, or not attained.
    Unbounded,
}

/// The three conditions of the finite-sum/decay/bounded-argmax trichotomy,
/// each computed separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trichotomy {
    pub has_finite_sum: bool,
    pub sum: Option<Rat>,
    pub tends_to_zero: bool,
    pub max_interval_finite: bool,
    pub max_set: MaxSet,
}

impl TwoSidedSeq {
    /// A zero core makes the whole sequence zero; tails are then cleared.
    pub fn new(core: FiniteSeq, left: GeomTail, right: GeomTail) -> Self {
        if core.is_zero() {
            return Self::zero();
        }
        TwoSidedSeq { core, left, right }
    }

    pub fn zero() -> Self {
        TwoSidedSeq { core: FiniteSeq::zero(), left: GeomTail::zero(), right: GeomTail::zero() }
    }

    /// A finite sequence with vanishing tails.
    pub fn finite(core: FiniteSeq) -> Self {
        Self::new(core, GeomTail::zero(), GeomTail::zero())
    }

    /// The constant sequence with value `v` everywhere.
    pub fn constant(v: Rat) -> Result<Self> {
        let core = FiniteSeq::new(0, vec![v])?;
        Ok(Self::new(core, GeomTail::new(Rat::one())?, GeomTail::new(Rat::one())?))
    }

    pub fn core(&self) -> &FiniteSeq {
        &self.core
    }

    pub fn left(&self) -> &GeomTail {
        &self.left
    }

    pub fn right(&self) -> &GeomTail {
        &self.right
    }

    pub fn is_zero(&self) -> bool {
        self.core.is_zero()
    }

    pub fn term_at(&self, n: i64) -> Rat {
        let Some((s, e)) = self.core.support() else {
            return Rat::zero();
        };
        if n < s {
            self.core.term_at(s) * pow(&self.left.ratio, (s - n) as u64)
        } else if n > e {
            self.core.term_at(e) * pow(&self.right.ratio, (n - e) as u64)
        } else {
            self.core.term_at(n)
        }
    }

    /// The terms on `[lo, hi]` as a finite sequence.
    pub fn window(&self, lo: i64, hi: i64) -> FiniteSeq {
        if hi < lo {
            return FiniteSeq::zero();
        }
        FiniteSeq::new(lo, (lo..=hi).map(|n| self.term_at(n)).collect())
            .expect("terms are non-negative")
    }

    /// First violation of log-concavity without internal zeros.
    ///
    /// Inside a tail consecutive ratios are constant, so only the core and
    /// the two junction triples need checking.
    pub fn log_concave_violation(&self) -> Option<LcWitness> {
        let (s, e) = self.core.support()?;
        if let Some(w) = self.core.log_concave_violation() {
            return Some(w);
        }
        for m in [s, e] {
            let mid = self.term_at(m);
            if &mid * &mid < self.term_at(m - 1) * self.term_at(m + 1) {
                return Some(LcWitness { n: m - 1, p: 1, q: 1 });
            }
        }
        None
    }

    pub fn is_log_concave(&self) -> bool {
        self.log_concave_violation().is_none()
    }

    fn tail_limit(anchor: &Rat, tail: &GeomTail) -> TailLimit {
        if anchor.is_zero() || tail.ratio.is_zero() {
            return TailLimit::Zero;
        }
        match tail.ratio.cmp(&Rat::one()) {
            Ordering::Less => TailLimit::Zero,
            Ordering::Equal => TailLimit::Constant(anchor.clone()),
            Ordering::Greater => TailLimit::Infinite,
        }
    }

    /// `(n -> -inf, n -> +inf)` limits.
    pub fn limits(&self) -> (TailLimit, TailLimit) {
        let Some((s, e)) = self.core.support() else {
            return (TailLimit::Zero, TailLimit::Zero);
        };
        (
            Self::tail_limit(&self.core.term_at(s), &self.left),
            Self::tail_limit(&self.core.term_at(e), &self.right),
        )
    }

    /// Closed-form total, if finite.
    pub fn sum(&self) -> Option<Rat> {
        let Some((s, e)) = self.core.support() else {
            return Some(Rat::zero());
        };
        let left = self.left.sum_beyond(&self.core.term_at(s))?;
        let right = self.right.sum_beyond(&self.core.term_at(e))?;
        Some(self.core.sum() + left + right)
    }

    fn max_set(&self) -> MaxSet {
        let (s, e) = self.core.support().expect("non-null");
        let one = Rat::one();
        if self.left.ratio > one || self.right.ratio > one {
            return MaxSet::Unbounded;
        }
        let t = self.core.terms();
        let max = t.iter().max().unwrap();
        let flat_reaches_max = |anchor: Rat, tail: &GeomTail| tail.ratio == one && &anchor == max;
        if flat_reaches_max(self.core.term_at(s), &self.left)
            || flat_reaches_max(self.core.term_at(e), &self.right)
        {
            return MaxSet::Unbounded;
        }
        let lo = t.iter().position(|v| v == max).unwrap() as i64;
        let hi = t.iter().rposition(|v| v == max).unwrap() as i64;
        MaxSet::Bounded(ModeInterval::Span { lo: s + lo, hi: s + hi })
    }

    pub fn trichotomy(&self) -> Result<Trichotomy> {
        if self.is_zero() {
            return Err(Error::NullSequence);
        }
        let sum = self.sum();
        let (l, r) = self.limits();
        let max_set = self.max_set();
        let max_interval_finite = match max_set {
            MaxSet::Bounded(ModeInterval::Span { lo, hi }) => {
                (lo..=hi).all(|n| self.term_at(n) == self.term_at(lo))
            }
            _ => false,
        };
        Ok(Trichotomy {
            has_finite_sum: sum.is_some(),
            sum,
            tends_to_zero: l == TailLimit::Zero && r == TailLimit::Zero,
            max_interval_finite,
            max_set,
        })
    }
}

/// Decay of `n -> a_n b_{p-n}` as `n -> +inf` (right tail of `a` against
/// left tail of `b`) and as `n -> -inf`.
///
/// Far out the skew product is geometric with ratio equal to the product of
/// the two facing tail ratios, so it tends to zero iff that product is
/// below one or one of the sequences is zero. The answer does not depend on
/// `p`.
pub fn skew_tends_to_zero(a: &TwoSidedSeq, b: &TwoSidedSeq, _p: i64) -> SkewDecay {
    if a.is_zero() || b.is_zero() {
        return SkewDecay { plus: true, minus: true };
    }
    let one = Rat::one();
    SkewDecay {
        plus: &a.right.ratio * &b.left.ratio < one,
        minus: &a.left.ratio * &b.right.ratio < one,
    }
}

/// The convolution term `c_p = sum_n a_n b_{p-n}`.
///
/// Outside `[lo, hi]` both factors are in their tails, so the two infinite
/// stretches are geometric series in the product of facing ratios and are
/// summed in closed form.
pub fn convolution_term(a: &TwoSidedSeq, b: &TwoSidedSeq, p: i64) -> FinitenessVerdict {
    let (Some((sa, ea)), Some((sb, eb))) = (a.core.support(), b.core.support()) else {
        return FinitenessVerdict::Finite(Rat::zero());
    };
    let lo = sa.min(p - eb);
    let hi = ea.max(p - sb);
    let skew = |n: i64| a.term_at(n) * b.term_at(p - n);
    let middle: Rat = (lo..=hi).map(skew).sum();
    let right = geometric_tail_sum(&skew(hi), &(&a.right.ratio * &b.left.ratio));
    let left = geometric_tail_sum(&skew(lo), &(&a.left.ratio * &b.right.ratio));
    match (left, right) {
        (Some(l), Some(r)) => FinitenessVerdict::Finite(middle + l + r),
        (Some(_), None) => FinitenessVerdict::Divergent(Direction::PlusInfinity),
        (None, Some(_)) => FinitenessVerdict::Divergent(Direction::MinusInfinity),
        (None, None) => FinitenessVerdict::Divergent(Direction::Both),
    }
}

impl fmt::Display for TwoSidedSeq {
    /// `L<ratio>|<core>|R<ratio>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{}|{}|R{}", self.left.ratio, self.core, self.right.ratio)
    }
}

impl FromStr for TwoSidedSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: String| Error::BadTail(s.to_string(), why);
        let parts: Vec<&str> = s.trim().split('|').collect();
        let [l, core, r] = parts[..] else {
            return Err(bad("expected `L<ratio>|<core>|R<ratio>`".into()));
        };
        let l = l.trim().strip_prefix('L').ok_or_else(|| bad("left part must start with `L`".into()))?;
        let r = r.trim().strip_prefix('R').ok_or_else(|| bad("right part must start with `R`".into()))?;
        let left = GeomTail::new(parse_nonneg(l).map_err(|e| bad(e.to_string()))?)?;
        let right = GeomTail::new(parse_nonneg(r).map_err(|e| bad(e.to_string()))?)?;
        let core: FiniteSeq = core.parse().map_err(|e: Error| bad(e.to_string()))?;
        Ok(Self::new(core, left, right))
    }
}
