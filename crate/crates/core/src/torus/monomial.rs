//! Laurent monomials in the variables `Y_{i,p}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A vertex `(i,p)` of the repetition quiver: `i ∈ [1,n-1]`, `p ≡ i (mod 2)`.
///
/// Ordered by ascending `p`, then ascending `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub i: usize,
    pub p: i64,
}

impl Vertex {
    pub fn new(i: usize, p: i64) -> Self {
        Self { i, p }
    }

    /// Checks membership in `Î_n`.
    pub fn validate(self, n: usize) -> Result<Self> {
        check_rank(n)?;
        if self.i < 1 || self.i > n - 1 {
            return Err(Error::IndexOutOfRange { i: self.i, max: n - 1 });
        }
        if (self.p - self.i as i64).rem_euclid(2) != 0 {
            return Err(Error::Parity { i: self.i, p: self.p });
        }
        Ok(self)
    }

    /// Spectral shift `p ↦ p + 2c`.
    pub fn shifted(self, c: i64) -> Self {
        Self::new(self.i, self.p + 2 * c)
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.i).cmp(&(other.p, other.i))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidRank(n))
    } else {
        Ok(())
    }
}

/// An element of the group `𝓜_n` of Laurent monomials.
///
/// Exponents are kept sorted by [`Vertex`] order with no zero entries, so the
/// unit monomial is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial {
    rank: usize,
    exps: Vec<(Vertex, i64)>,
}

impl YMonomial {
    pub fn one(rank: usize) -> Self {
        Self { rank, exps: Vec::new() }
    }

    /// The variable `Y_{i,p}`.
    pub fn y(rank: usize, i: usize, p: i64) -> Result<Self> {
        Self::y_pow(rank, i, p, 1)
    }

    pub fn y_pow(rank: usize, i: usize, p: i64, e: i64) -> Result<Self> {
        let v = Vertex::new(i, p).validate(rank)?;
        Ok(Self::from_sorted_unchecked(rank, if e == 0 { vec![] } else { vec![(v, e)] }))
    }

    /// Builds a monomial from `(i, p, exponent)` triples; repeated vertices add up.
    pub fn from_exponents(
        rank: usize,
        exps: impl IntoIterator<Item = (usize, i64, i64)>,
    ) -> Result<Self> {
        check_rank(rank)?;
        let mut out = Vec::new();
        for (i, p, e) in exps {
            out.push((Vertex::new(i, p).validate(rank)?, e));
        }
        Ok(Self::normalize(rank, out))
    }

    pub(crate) fn from_sorted_unchecked(rank: usize, exps: Vec<(Vertex, i64)>) -> Self {
        debug_assert!(exps.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(exps.iter().all(|(_, e)| *e != 0));
        Self { rank, exps }
    }

    fn normalize(rank: usize, mut exps: Vec<(Vertex, i64)>) -> Self {
        exps.sort_by_key(|(v, _)| *v);
        let mut merged: Vec<(Vertex, i64)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        Self { rank, exps: merged }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// `(vertex, exponent)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        self.exps.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, i: usize, p: i64) -> i64 {
        let v = Vertex::new(i, p);
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|idx| self.exps[idx].1)
            .unwrap_or(0)
    }

    /// All exponents are non-negative.
    pub fn is_dominant(&self) -> bool {
        self.exps.iter().all(|(_, e)| *e >= 0)
    }

    /// Every `Y_{i,*}` exponent is non-negative.
    pub fn is_i_dominant(&self, i: usize) -> bool {
        self.exps.iter().all(|(v, e)| v.i != i || *e >= 0)
    }

    /// Smallest and largest spectral parameter in the support.
    pub fn p_range(&self) -> Option<(i64, i64)> {
        let lo = self.exps.iter().map(|(v, _)| v.p).min()?;
        let hi = self.exps.iter().map(|(v, _)| v.p).max()?;
        Some((lo, hi))
    }

    /// Sum of exponents.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    /// Commutative product in `𝓜_n`.
    pub fn mul(&self, other: &YMonomial) -> Result<YMonomial> {
        check_same_rank(self.rank, other.rank)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &YMonomial) -> YMonomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                Ordering::Greater => {
                    out.push(b[y]);
                    y += 1;
                }
                Ordering::Equal => {
                    let e = a[x].1 + b[y].1;
                    if e != 0 {
                        out.push((a[x].0, e));
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend_from_slice(&a[x..]);
        out.extend_from_slice(&b[y..]);
        YMonomial { rank: self.rank, exps: out }
    }

    pub fn inv(&self) -> YMonomial {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> YMonomial {
        if k == 0 {
            return Self::one(self.rank);
        }
        YMonomial {
            rank: self.rank,
            exps: self.exps.iter().map(|(v, e)| (*v, e * k)).collect(),
        }
    }

    /// `self · other^{-1}`.
    pub fn div(&self, other: &YMonomial) -> Result<YMonomial> {
        check_same_rank(self.rank, other.rank)?;
        Ok(self.mul_unchecked(&other.inv()))
    }

    /// Spectral shift `Y_{i,p} ↦ Y_{i,p+2c}`.
    pub fn shifted(&self, c: i64) -> YMonomial {
        YMonomial {
            rank: self.rank,
            exps: self.exps.iter().map(|(v, e)| (v.shifted(c), *e)).collect(),
        }
    }

    /// Factors of a dominant monomial, repeated by multiplicity, sorted by `p`
    /// descending then `i` ascending.
    pub fn factors_descending(&self) -> Result<Vec<Vertex>> {
        if !self.is_dominant() {
            return Err(Error::NotDominant(self.to_string()));
        }
        let mut out = Vec::new();
        for (v, e) in &self.exps {
            for _ in 0..*e {
                out.push(*v);
            }
        }
        out.sort_by(|a, b| b.p.cmp(&a.p).then(a.i.cmp(&b.i)));
        Ok(out)
    }

    /// Parses `Y[i,p]` factors with optional `^e`, e.g. `Y[1,1]Y[1,3]^-2`; `1` is the unit.
    pub fn parse(rank: usize, s: &str) -> Result<YMonomial> {
        check_rank(rank)?;
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "1" || s.is_empty() {
            return Ok(Self::one(rank));
        }
        let bad = |msg: &str| Error::Parse(format!("{msg} in monomial {s:?}"));
        let mut rest = s.as_str();
        let mut triples = Vec::new();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix("Y[")
                .ok_or_else(|| bad("expected Y["))?;
            let close = body.find(']').ok_or_else(|| bad("missing ]"))?;
            let (i, p) = body[..close]
                .split_once(',')
                .ok_or_else(|| bad("expected i,p"))?;
            let i: usize = i.parse().map_err(|_| bad("bad index"))?;
            let p: i64 = p.parse().map_err(|_| bad("bad spectral parameter"))?;
            rest = &body[close + 1..];
            let mut e = 1;
            if let Some(tail) = rest.strip_prefix('^') {
                let end = tail
                    .char_indices()
                    .find(|&(k, c)| !(c.is_ascii_digit() || (k == 0 && c == '-')))
                    .map_or(tail.len(), |(k, _)| k);
                e = tail[..end].parse().map_err(|_| bad("bad exponent"))?;
                rest = &tail[end..];
            }
            triples.push((i, p, e));
        }
        Self::from_exponents(rank, triples)
    }
}

pub(crate) fn check_same_rank(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RankMismatch { left: a, right: b })
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (v, e) in &self.exps {
            write!(f, "Y[{},{}]", v.i, v.p)?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(i: usize, p: i64) -> YMonomial {
        YMonomial::y(3, i, p).unwrap()
    }

    #[test]
    fn product_examples() {
        let a = YMonomial::y(2, 1, 1).unwrap();
        assert!(a.mul(&a.inv()).unwrap().is_one());
        let b = YMonomial::y(2, 1, 3).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_string(), "Y[1,1]Y[1,3]");
        let c = YMonomial::y_pow(3, 2, 2, 3).unwrap();
        let d = YMonomial::y_pow(3, 2, 2, -1).unwrap();
        assert_eq!(c.mul(&d).unwrap(), YMonomial::y_pow(3, 2, 2, 2).unwrap());
        assert_eq!(a.mul(&YMonomial::one(2)).unwrap(), a);
    }

    #[test]
    fn rank_mismatch() {
        let a = YMonomial::y(2, 1, 1).unwrap();
        assert!(matches!(a.mul(&y(1, 1)), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn vertex_validation() {
        assert!(matches!(YMonomial::y(2, 1, 2), Err(Error::Parity { .. })));
        assert!(matches!(YMonomial::y(3, 3, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(YMonomial::y(1, 1, 1), Err(Error::InvalidRank(1))));
    }

    #[test]
    fn canonical_order_is_p_then_i() {
        let m = y(2, 2).mul(&y(1, 1)).unwrap().mul(&y(1, 3)).unwrap();
        assert_eq!(m.to_string(), "Y[1,1]Y[2,2]Y[1,3]");
        let f = m.factors_descending().unwrap();
        assert_eq!(f, vec![Vertex::new(1, 3), Vertex::new(2, 2), Vertex::new(1, 1)]);
    }

    #[test]
    fn parse_roundtrip() {
        let m = YMonomial::parse(3, "Y[2,4]^-1 Y[1,3]Y[1,3]").unwrap();
        assert_eq!(m.to_string(), "Y[1,3]^2Y[2,4]^-1");
        assert_eq!(YMonomial::parse(3, &m.to_string()).unwrap(), m);
        assert!(YMonomial::parse(3, "1").unwrap().is_one());
        assert!(YMonomial::parse(2, "Y[1,2]").is_err());
        assert!(YMonomial::parse(2, "X[1,1]").is_err());
    }

    #[test]
    fn dominance() {
        assert!(y(1, 1).mul(&y(2, 4)).unwrap().is_dominant());
        assert!(!y(1, 3).inv().is_dominant());
        assert!(YMonomial::one(3).is_dominant());
    }
}
