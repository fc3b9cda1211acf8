//! Scanners that check log-concavity statements on concrete inputs and
//! report exact witnesses.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::seq::FiniteSeq;
use crate::triangle::Triangle;

/// A location where an expected inequality `lhs >= rhs` was examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub at: Vec<i64>,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// Outcome of one check. `passed` holds exactly when `witnesses` is empty.
/// `observations` carry informational findings that do not fail the check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    check: String,
    passed: bool,
    witnesses: Vec<Witness>,
    observations: Vec<Witness>,
    inputs_digest: String,
}

#[derive(Serialize)]
struct WitnessJson {
    at: Vec<i64>,
    lhs: String,
    rhs: String,
}

#[derive(Serialize)]
struct ReportJson {
    check: String,
    passed: bool,
    witnesses: Vec<WitnessJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    observations: Vec<WitnessJson>,
    inputs_digest: String,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        WitnessJson { at: w.at.clone(), lhs: w.lhs.to_string(), rhs: w.rhs.to_string() }
    }
}

impl Report {
    pub fn new(check: &str, inputs: &str, witnesses: Vec<Witness>) -> Self {
        Report {
            check: check.to_string(),
            passed: witnesses.is_empty(),
            witnesses,
            observations: Vec::new(),
            inputs_digest: hex::encode(Sha256::digest(inputs.as_bytes())),
        }
    }

    fn with_observations(mut self, observations: Vec<Witness>) -> Self {
        self.observations = observations;
        self
    }

    pub fn check(&self) -> &str {
        &self.check
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn observations(&self) -> &[Witness] {
        &self.observations
    }

    pub fn inputs_digest(&self) -> &str {
        &self.inputs_digest
    }

    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            check: self.check.clone(),
            passed: self.passed,
            witnesses: self.witnesses.iter().map(Into::into).collect(),
            observations: self.observations.iter().map(Into::into).collect(),
            inputs_digest: self.inputs_digest.clone(),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }
}

fn require_log_concave(s: &FiniteSeq, name: &str) -> Result<()> {
    if s.is_log_concave() {
        Ok(())
    } else {
        Err(Error::NotLogConcave(format!("{name} = {s}")))
    }
}

/// Every row of `t` must be log-concave. Witnesses are `[row, n, p, q]`
/// with `lhs = T(row,n+p) T(row,n+q)` and `rhs = T(row,n) T(row,n+p+q)`.
pub fn check_rows_log_concave(t: &Triangle) -> Report {
    let witnesses = t
        .rows()
        .iter()
        .enumerate()
        .filter_map(|(row, seq)| {
            let w = seq.log_concave_violation()?;
            let (lhs, rhs) = w.sides(seq);
            Some(Witness { at: vec![row as i64, w.n, w.p, w.q], lhs, rhs })
        })
        .collect();
    let inputs = format!("{}:{:?}", t.to_json(), t.provenance());
    Report::new("rows-log-concave", &inputs, witnesses)
}

/// Checks `c_n^2 >= d_{n-1} b_{n+1}` with `b, c, d = a * q^{*(k-1)}, a * q^{*k},
/// a * q^{*(k+1)}` for `1 <= k <= max_k`, `1 <= n <= max_n`. Witnesses are
/// `[k, n]`.
pub fn check_lemma31(a: &FiniteSeq, q: &FiniteSeq, max_k: u32, max_n: i64) -> Result<Report> {
    require_log_concave(a, "a")?;
    require_log_concave(q, "q")?;
    for s in [a, q] {
        if let Some((lo, _)) = s.support() {
            if lo < 0 {
                return Err(Error::NegativeSupport(lo));
            }
        }
    }
    // powers[j] = a * q^{*j}, only indices <= max_n + 1 are read.
    let top = max_n + 1;
    let mut powers = vec![a.restrict(0, top)];
    for _ in 0..=max_k {
        let next = powers.last().unwrap().conv_upto(q, top);
        powers.push(next);
    }
    let mut witnesses = Vec::new();
    for k in 1..=max_k as usize {
        let (b, c, d) = (&powers[k - 1], &powers[k], &powers[k + 1]);
        for n in 1..=max_n {
            let cn = c.term_at(n);
            let lhs = &cn * &cn;
            let rhs = d.term_at(n - 1) * b.term_at(n + 1);
            if lhs < rhs {
                witnesses.push(Witness { at: vec![k as i64, n], lhs, rhs });
            }
        }
    }
    Ok(Report::new("lemma31", &format!("{a};{q};{max_k};{max_n}"), witnesses))
}

/// Smallest window `W` such that `[-W, W]` covers both supports and their
/// reflections.
pub fn covering_window(a: &FiniteSeq, b: &FiniteSeq) -> i64 {
    [a.support(), b.support()]
        .into_iter()
        .flatten()
        .flat_map(|(lo, hi)| [lo.abs(), hi.abs()])
        .max()
        .unwrap_or(0)
        + 1
}

/// The pairing argument behind `c_0^2 >= c_{-1} c_1` for `c = a * b`.
///
/// With `p(k,n) = a_k a_n b_{-k} b_{-n}`, `r(k,n) = a_k a_n b_{-k-1} b_{-n+1}`
/// and `s(k,n) = (n-1, k+1)`, every `(k,n)` in `[-window, window]^2` must
/// satisfy `p + p∘s >= r + r∘s`. Cells where `p < r` on their own are
/// recorded as observations; they do not fail the check.
pub fn menon_pairing_check(a: &FiniteSeq, b: &FiniteSeq, window: i64) -> Result<Report> {
    require_log_concave(a, "a")?;
    require_log_concave(b, "b")?;
    let pv = |k: i64, n: i64| a.term_at(k) * a.term_at(n) * b.term_at(-k) * b.term_at(-n);
    let rv = |k: i64, n: i64| a.term_at(k) * a.term_at(n) * b.term_at(-k - 1) * b.term_at(-n + 1);
    let mut witnesses = Vec::new();
    let mut observations = Vec::new();
    for k in -window..=window {
        for n in -window..=window {
            let (p, r) = (pv(k, n), rv(k, n));
            let (sk, sn) = (n - 1, k + 1);
            let lhs = &p + pv(sk, sn);
            let rhs = &r + rv(sk, sn);
            if lhs < rhs {
                witnesses.push(Witness { at: vec![k, n], lhs, rhs });
            }
            if p < r {
                observations.push(Witness { at: vec![k, n], lhs: p, rhs: r });
            }
        }
    }
    Ok(Report::new("menon-pairing", &format!("{a};{b};{window}"), witnesses)
        .with_observations(observations))
}

/// First interior index `k` with `a_k^2 > a_{k-1} a_{k+1}`, or `Err(())` if
/// the sequence has an internal zero.
fn log_convexity_violation(s: &FiniteSeq) -> Result<Option<i64>, ()> {
    let t = s.terms();
    if t.iter().any(num_traits::Zero::is_zero) {
        return Err(());
    }
    Ok((1..t.len().saturating_sub(1))
        .find(|&k| &t[k] * &t[k] > &t[k - 1] * &t[k + 1])
        .map(|k| s.offset() + k as i64))
}

/// Sequences with entries in `0..=bound` and lengths `1..=max_len` whose
/// first and last entries are nonzero, in order of length and then
/// lexicographically.
pub fn enumerate_sequences(max_len: usize, bound: u64) -> impl Iterator<Item = Vec<u64>> {
    (1..=max_len).flat_map(move |len| {
        let base = bound + 1;
        let total = base.checked_pow(len as u32).expect("enumeration too large");
        (0..total).filter_map(move |mut code| {
            let mut v = vec![0u64; len];
            for slot in v.iter_mut().rev() {
                *slot = code % base;
                code /= base;
            }
            (v[0] != 0 && v[len - 1] != 0).then_some(v)
        })
    })
}

/// A pair of log-convex sequences whose convolution is not log-convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityCounterexample {
    pub a: FiniteSeq,
    pub b: FiniteSeq,
    pub conv: FiniteSeq,
    /// Interior index where `conv_k^2 > conv_{k-1} conv_{k+1}`.
    pub index: i64,
}

/// Exhaustive search over sequences at offset 0 that are positive on a
/// contiguous support and log-convex on its interior.
pub fn search_logconvexity_counterexample(max_len: usize, bound: u64) -> Option<ConvexityCounterexample> {
    let candidates: Vec<FiniteSeq> = enumerate_sequences(max_len, bound)
        .map(|v| FiniteSeq::from_ints(0, &v))
        .filter(|s| log_convexity_violation(s) == Ok(None))
        .collect();
    for a in &candidates {
        for b in &candidates {
            let conv = a.conv(b);
            if let Ok(Some(index)) = log_convexity_violation(&conv) {
                return Some(ConvexityCounterexample { a: a.clone(), b: b.clone(), conv, index });
            }
        }
    }
    None
}

/// Range of `p` for which the skew self-product of `a` can be non-null,
/// padded by one on each side.
pub fn skew_band(a: &FiniteSeq) -> std::ops::RangeInclusive<i64> {
    let off = a.offset();
    (2 * off - 2)..=(2 * (off + a.len() as i64))
}

fn skew_products_unimodal(a: &FiniteSeq) -> bool {
    skew_band(a).all(|p| {
        let s = a.skew_product(a, p);
        s.is_zero() || s.is_unimodal()
    })
}

/// Log-concavity against unimodality of all skew self-products, over every
/// sequence from [`enumerate_sequences`] plus the zero sequence. Witnesses
/// carry the sequence entries in `at`, `lhs` = log-concave (0/1) and
/// `rhs` = all skew self-products unimodal (0/1).
pub fn check_fact12_equivalence(max_len: usize, bound: u64) -> Report {
    let flag = |b: bool| Rat::from_integer(i64::from(b).into());
    let witnesses = std::iter::once(Vec::new())
        .chain(enumerate_sequences(max_len, bound))
        .filter_map(|v| {
            let a = FiniteSeq::from_ints(0, &v);
            let (lc, uni) = (a.is_log_concave(), skew_products_unimodal(&a));
            (lc != uni).then(|| Witness {
                at: v.iter().map(|&x| x as i64).collect(),
                lhs: flag(lc),
                rhs: flag(uni),
            })
        })
        .collect();
    Report::new("fact12-equivalence", &format!("{max_len};{bound}"), witnesses)
}

/// For log-concave `a`, every non-null skew self-product `n -> a_n a_{p-n}`
/// must attain its maximum at both `floor(p/2)` and `ceil(p/2)`. Witnesses
/// are `[p, floor, ceil]` with the maximum and the smaller of the two center
/// values.
pub fn check_skew_modes(a: &FiniteSeq) -> Result<Report> {
    require_log_concave(a, "a")?;
    let mut witnesses = Vec::new();
    for p in skew_band(a) {
        let s = a.skew_product(a, p);
        if s.is_zero() {
            continue;
        }
        let (lo, hi) = (p.div_euclid(2), p - p.div_euclid(2));
        let mode = s.unimodality();
        let ok = mode.is_some_and(|m| m.contains(lo) && m.contains(hi));
        if !ok {
            let max = s.terms().iter().max().unwrap().clone();
            let center = s.term_at(lo).min(s.term_at(hi));
            witnesses.push(Witness { at: vec![p, lo, hi], lhs: center, rhs: max });
        }
    }
    Ok(Report::new("skew-modes", &a.to_string(), witnesses))
}

/// `c = a * b` must satisfy `c_m^2 >= c_{m-1} c_{m+1}` everywhere and have no
/// internal zeros. Witnesses are `[m]` or, for an internal zero, `[n, p, q]`.
pub fn check_convolution_log_concave(a: &FiniteSeq, b: &FiniteSeq) -> Result<Report> {
    require_log_concave(a, "a")?;
    require_log_concave(b, "b")?;
    let c = a.conv(b);
    let mut witnesses = Vec::new();
    if let Some((lo, hi)) = c.support() {
        for m in lo..=hi {
            let cm = c.term_at(m);
            let lhs = &cm * &cm;
            let rhs = c.term_at(m - 1) * c.term_at(m + 1);
            if lhs < rhs {
                witnesses.push(Witness { at: vec![m], lhs, rhs });
            }
        }
    }
    if witnesses.is_empty() {
        if let Some(w) = c.log_concave_violation() {
            let (lhs, rhs) = w.sides(&c);
            witnesses.push(Witness { at: vec![w.n, w.p, w.q], lhs, rhs });
        }
    }
    Ok(Report::new("conv-log-concave", &format!("{a};{b}"), witnesses))
}
