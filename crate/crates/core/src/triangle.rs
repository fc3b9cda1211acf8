//! Pascal-type triangular arrays.
//!
//! Every builder returns a [`Triangle`] with rows `0..=N`, where row `n` is
//! supported on `[0, n]`. Builders cover convolution arrays
//! `T(n,k) = (a * q^{*(n-k)})_k`, the weighted Delannoy recursion, the
//! coefficient expansion of `sum_m (bx + cy + dxy)^m`, and a two-parent
//! weighted recursion.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{parse_nonneg, pow, Rat};
use crate::seq::FiniteSeq;

/// Construction tag and parameters, as exact strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub construction: String,
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    fn new<const K: usize>(construction: &str, params: [(&str, String); K]) -> Self {
        Provenance {
            construction: construction.to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    rows: Vec<FiniteSeq>,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct TriangleJson {
    construction: String,
    params: BTreeMap<String, String>,
    #[serde(rename = "N")]
    n: usize,
    rows: Vec<Vec<String>>,
}

impl Triangle {
    /// Builds a triangle from dense rows; row `n` may have at most `n + 1`
    /// entries.
    pub fn from_rows(rows: Vec<Vec<Rat>>, provenance: Provenance) -> Result<Self> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(n, r)| {
                if r.len() > n + 1 {
                    return Err(Error::BadTriangle(format!("row {n} has {} entries", r.len())));
                }
                FiniteSeq::new(0, r)
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::BadTriangle("no rows".into()));
        }
        Ok(Triangle { rows, provenance })
    }

    /// Index of the last row.
    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[FiniteSeq] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &FiniteSeq {
        &self.rows[n]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn entry(&self, n: usize, k: i64) -> Rat {
        self.rows.get(n).map_or_else(Rat::zero, |r| r.term_at(k))
    }

    /// Row `n` as exactly `n + 1` entries.
    pub fn dense_row(&self, n: usize) -> Vec<Rat> {
        (0..=n as i64).map(|k| self.entry(n, k)).collect()
    }

    pub fn to_json(&self) -> String {
        let doc = TriangleJson {
            construction: self.provenance.construction.clone(),
            params: self.provenance.params.clone(),
            n: self.depth(),
            rows: (0..=self.depth())
                .map(|n| self.dense_row(n).iter().map(ToString::to_string).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("plain strings serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TriangleJson = serde_json::from_str(s)?;
        if doc.rows.len() != doc.n + 1 {
            return Err(Error::BadTriangle(format!("N = {} but {} rows", doc.n, doc.rows.len())));
        }
        let rows = doc
            .rows
            .iter()
            .map(|r| r.iter().map(|v| parse_nonneg(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows, Provenance { construction: doc.construction, params: doc.params })
    }

    /// One line per row, entries comma-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for n in 0..=self.depth() {
            let line: Vec<String> = self.dense_row(n).iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for n in 0..=self.depth() {
            let line: Vec<String> = self.dense_row(n).iter().map(ToString::to_string).collect();
            writeln!(out, "{n:>4}: {}", line.join("  ")).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelannoyParams {
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl DelannoyParams {
    pub fn new(b: Rat, c: Rat, d: Rat) -> Result<Self> {
        for (name, v) in [("b", &b), ("c", &c), ("d", &d)] {
            if v.is_negative() {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be non-negative")));
            }
        }
        Ok(DelannoyParams { b, c, d })
    }

    fn provenance(&self, construction: &str) -> Provenance {
        Provenance::new(
            construction,
            [("b", self.b.to_string()), ("c", self.c.to_string()), ("d", self.d.to_string())],
        )
    }
}

fn require_nonnegative_support(s: &FiniteSeq) -> Result<()> {
    match s.support() {
        Some((lo, _)) if lo < 0 => Err(Error::NegativeSupport(lo)),
        _ => Ok(()),
    }
}

/// `T(n,k) = (a * q^{*(n-k)})_k` for `0 <= k <= n <= depth`.
///
/// Builds the diagonals `a * q^{*m}` once each, truncated to the indices
/// that are read.
pub fn convolution_array(a: &FiniteSeq, q: &FiniteSeq, depth: usize) -> Result<Triangle> {
    if a.is_zero() {
        return Err(Error::NullSequence);
    }
    require_nonnegative_support(a)?;
    require_nonnegative_support(q)?;
    let top = depth as i64;
    let mut diagonals = Vec::with_capacity(depth + 1);
    diagonals.push(a.restrict(0, top));
    for m in 1..=top {
        let next = diagonals.last().unwrap().conv_upto(q, top - m);
        diagonals.push(next);
    }
    let rows = (0..=depth)
        .map(|n| (0..=n).map(|k| diagonals[n - k].term_at(k as i64)).collect())
        .collect();
    let prov = Provenance::new("convarray", [("a", a.to_string()), ("q", q.to_string())]);
    Triangle::from_rows(rows, prov)
}

/// Pascal's triangle as the convolution array of all-ones sequences.
pub fn pascal(depth: usize) -> Triangle {
    let ones = FiniteSeq::ones(depth + 1);
    let mut t = convolution_array(&ones, &ones, depth).expect("ones are valid");
    t.provenance = Provenance::new("pascal-preset", []);
    t
}

/// Convolution array with the all-ones multiplier.
pub fn hoggar(a: &FiniteSeq, depth: usize) -> Result<Triangle> {
    let mut t = convolution_array(a, &FiniteSeq::ones(depth + 1), depth)?;
    t.provenance = Provenance::new("hoggar-preset", [("a", a.to_string())]);
    Ok(t)
}

/// `T(0,0) = 1`, `T(n,k) = b T(n-1,k-1) + c T(n-1,k) + d T(n-2,k-1)`.
pub fn delannoy_recursion(p: &DelannoyParams, depth: usize) -> Triangle {
    let mut rows: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    let at = |rows: &Vec<Vec<Rat>>, n: usize, k: usize| -> Rat {
        rows.get(n).and_then(|r| r.get(k)).cloned().unwrap_or_else(Rat::zero)
    };
    for n in 1..=depth {
        let row = (0..=n)
            .map(|k| {
                let mut v = &p.c * at(&rows, n - 1, k);
                if k >= 1 {
                    v += &p.b * at(&rows, n - 1, k - 1);
                    if n >= 2 {
                        v += &p.d * at(&rows, n - 2, k - 1);
                    }
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Triangle::from_rows(rows, p.provenance("delannoy")).expect("non-negative weights")
}

/// The Delannoy triangle as a convolution array with initial side
/// `1, b, b^2, ...` and multiplier `(1, b, b^2, ...) * (c, d)`.
pub fn delannoy_as_convolution(p: &DelannoyParams, depth: usize) -> Triangle {
    let geo = FiniteSeq::geometric(&p.b, depth + 1).expect("b >= 0");
    let step = FiniteSeq::new(0, vec![p.c.clone(), p.d.clone()]).expect("c, d >= 0");
    let q = geo.conv_upto(&step, depth as i64);
    let mut t = convolution_array(&geo, &q, depth).expect("supports start at 0");
    t.provenance = p.provenance("delannoy-conv");
    t
}

/// Sparse bivariate polynomial truncated at a total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    max_degree: u32,
    coeffs: BTreeMap<(u32, u32), Rat>,
}

impl BivarPoly {
    pub fn new(max_degree: u32) -> Self {
        BivarPoly { max_degree, coeffs: BTreeMap::new() }
    }

    /// Adds `c x^i y^j`; terms above the degree cap are dropped.
    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() || i + j > self.max_degree {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.coeffs.iter()
    }

    /// `sum_{m=0}^{N} (bx + cy + dxy)^m` truncated to total degree `N`.
    ///
    /// Each choice of `i` factors `bx`, `j` factors `cy` and `k` factors `dxy`
    /// contributes `m!/(i! j! k!) b^i c^j d^k x^{i+k} y^{j+k}`.
    pub fn delannoy_series(p: &DelannoyParams, max_degree: u32) -> Self {
        let mut fact = vec![BigInt::one()];
        for i in 1..=max_degree as usize {
            let next = &fact[i - 1] * BigInt::from(i);
            fact.push(next);
        }
        let mut poly = BivarPoly::new(max_degree);
        for m in 0..=max_degree {
            for k in 0..=m.min(max_degree - m) {
                for i in 0..=(m - k) {
                    let j = m - k - i;
                    let count = &fact[m as usize] / (&fact[i as usize] * &fact[j as usize] * &fact[k as usize]);
                    let weight =
                        pow(&p.b, i.into()) * pow(&p.c, j.into()) * pow(&p.d, k.into());
                    poly.add_term(i + k, j + k, Rat::from_integer(count) * weight);
                }
            }
        }
        poly
    }
}

/// Rows of `sum_m (bx + cy + dxy)^m`: `T(n,k)` is the coefficient of
/// `x^k y^{n-k}`.
pub fn bivariate_rows(p: &DelannoyParams, depth: usize) -> Triangle {
    let poly = BivarPoly::delannoy_series(p, depth as u32);
    let rows = (0..=depth as u32)
        .map(|n| (0..=n).map(|k| poly.coeff(k, n - k)).collect())
        .collect();
    Triangle::from_rows(rows, p.provenance("bivariate")).expect("non-negative coefficients")
}

/// Per-column weights for the two parents of an entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KurtzWeights {
    /// Weight on `T(n-1, k-1)`.
    pub left: FiniteSeq,
    /// Weight on `T(n-1, k)`.
    pub right: FiniteSeq,
}

/// `T(n,k) = u_k T(n-1,k-1) + v_k T(n-1,k)` from a row-0 seed.
pub fn kurtz_triangle(top: &FiniteSeq, w: &KurtzWeights, depth: usize) -> Result<Triangle> {
    if let Some((lo, hi)) = top.support() {
        if lo != 0 || hi != 0 {
            return Err(Error::InvalidParameter(format!("row-0 seed {top} must live at index 0")));
        }
    }
    let mut rows = vec![vec![top.term_at(0)]];
    for n in 1..=depth {
        let prev = &rows[n - 1];
        let get = |k: i64| -> Rat {
            usize::try_from(k).ok().and_then(|k| prev.get(k)).cloned().unwrap_or_else(Rat::zero)
        };
        let row = (0..=n as i64)
            .map(|k| w.left.term_at(k) * get(k - 1) + w.right.term_at(k) * get(k))
            .collect();
        rows.push(row);
    }
    let prov = Provenance::new(
        "kurtz",
        [("top", top.to_string()), ("u", w.left.to_string()), ("v", w.right.to_string())],
    );
    Triangle::from_rows(rows, prov)
}

/// `(a * q^{*(k-1)}, a * q^{*k}, a * q^{*(k+1)})`.
pub fn lemma31_triple(a: &FiniteSeq, q: &FiniteSeq, k: u32) -> Result<(FiniteSeq, FiniteSeq, FiniteSeq)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    require_nonnegative_support(a)?;
    require_nonnegative_support(q)?;
    let b = a.conv(&q.conv_power(k - 1));
    let c = b.conv(q);
    let d = c.conv(q);
    Ok((b, c, d))
}
