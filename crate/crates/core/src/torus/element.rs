use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::coeff::TCoeff;
use super::monomial::{check_same_rank, YMonomial};
use crate::error::Result;
use crate::pairing::CartanData;

/// An element of the quantum torus `𝒴_{n,t}`: a finite `Z[t^{±1/2}]`-combination
/// of Laurent monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusElement {
    rank: usize,
    terms: BTreeMap<YMonomial, TCoeff>,
}

impl TorusElement {
    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_monomial(YMonomial::one(rank))
    }

    pub fn from_monomial(m: YMonomial) -> Self {
        Self::from_term(m, TCoeff::one())
    }

    pub fn from_term(m: YMonomial, c: TCoeff) -> Self {
        let mut out = Self::zero(m.rank());
        out.add_term(m, &c);
        out
    }

    pub fn from_coeff(rank: usize, c: TCoeff) -> Self {
        Self::from_term(YMonomial::one(rank), c)
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (YMonomial, TCoeff)>,
    ) -> Result<Self> {
        let mut out = Self::zero(rank);
        for (m, c) in terms {
            check_same_rank(rank, m.rank())?;
            out.add_term(m, &c);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, &TCoeff)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &YMonomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &YMonomial) -> TCoeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: YMonomial, c: &TCoeff) {
        debug_assert_eq!(m.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &TorusElement, c: &TCoeff) -> Result<()> {
        check_same_rank(self.rank, other.rank)?;
        if c.is_zero() {
            return Ok(());
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), &(c * d));
        }
        Ok(())
    }

    pub fn scale(&self, c: &TCoeff) -> TorusElement {
        let mut out = Self::zero(self.rank);
        if c.is_zero() {
            return out;
        }
        for (m, d) in &self.terms {
            out.add_term(m.clone(), &(c * d));
        }
        out
    }

    /// Divides every coefficient exactly by `c`.
    pub fn div_exact(&self, c: &TCoeff) -> Result<TorusElement> {
        let mut out = Self::zero(self.rank);
        for (m, d) in &self.terms {
            out.terms.insert(m.clone(), d.div_exact(c)?);
        }
        Ok(out)
    }

    /// Dominant monomials occurring with non-zero coefficient.
    pub fn dominant_monomials(&self) -> impl Iterator<Item = &YMonomial> {
        self.terms.keys().filter(|m| m.is_dominant())
    }

    /// Smallest and largest spectral parameter over all monomials.
    pub fn p_range(&self) -> Option<(i64, i64)> {
        self.terms
            .keys()
            .filter_map(YMonomial::p_range)
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    /// Bar-involution: `t^{1/2} ↦ t^{-1/2}` on coefficients, monomials fixed.
    pub fn bar(&self) -> TorusElement {
        TorusElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.bar())).collect(),
        }
    }

    /// Specialisation at `t^{1/2} = 1`.
    pub fn eval_t1(&self) -> CommutativePoly {
        let mut out = CommutativePoly::zero(self.rank);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.eval_at_one());
        }
        out
    }

    /// Spectral shift `Y_{i,p} ↦ Y_{i,p+2c}` applied to every monomial.
    pub fn shifted(&self, c: i64) -> TorusElement {
        TorusElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, d)| (m.shifted(c), d.clone())).collect(),
        }
    }

    /// Twisted product `m * m' = t^{𝒩(m,m')/2} m m'`, extended bilinearly.
    pub fn star(&self, other: &TorusElement) -> Result<TorusElement> {
        check_same_rank(self.rank, other.rank)?;
        let mut out = Self::zero(self.rank);
        let (Some((a, b)), Some((c, d))) = (self.p_range(), other.p_range()) else {
            // One side only carries the unit monomial (or is zero): no twist.
            for (m, x) in &self.terms {
                for (m2, y) in &other.terms {
                    out.add_term(m.mul_unchecked(m2), &(x * y));
                }
            }
            return Ok(out);
        };
        let span = (b - c).abs().max((a - d).abs());
        let table = CartanData::for_rank(self.rank)?.pairing_table(span);
        for (m, x) in &self.terms {
            for (m2, y) in &other.terms {
                let twist = table.monomials(m, m2);
                out.add_term(m.mul_unchecked(m2), &(x * y).shift(twist));
            }
        }
        Ok(out)
    }
}

/// `x * y` in the quantum torus.
pub fn star_mul(x: &TorusElement, y: &TorusElement) -> Result<TorusElement> {
    x.star(y)
}

/// `x₁ * x₂ * ⋯` (the unit for an empty list).
pub fn star_product<'a>(
    rank: usize,
    factors: impl IntoIterator<Item = &'a TorusElement>,
) -> Result<TorusElement> {
    let mut acc = TorusElement::one(rank);
    for f in factors {
        acc = acc.star(f)?;
    }
    Ok(acc)
}

impl Add<&TorusElement> for &TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        assert_eq!(self.rank, rhs.rank, "rank mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&TorusElement> for &TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self + &(-rhs)
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        TorusElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

fn write_sum<'a, C: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a YMonomial, C, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (m, c, is_one) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match (is_one, m.is_one()) {
            (true, _) => write!(f, "{m}")?,
            (false, true) => write!(f, "({c})")?,
            (false, false) => write!(f, "({c})*{m}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(m, c)| (m, c, c.is_one())))
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement[n={}]({self})", self.rank)
    }
}

/// An element of the commutative Laurent polynomial ring `𝒴_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommutativePoly {
    rank: usize,
    terms: BTreeMap<YMonomial, BigInt>,
}

impl CommutativePoly {
    pub fn zero(rank: usize) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        let mut out = Self::zero(rank);
        out.add_term(YMonomial::one(rank), BigInt::from(1));
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, m: YMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &YMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Ordinary commutative product.
    pub fn mul(&self, other: &CommutativePoly) -> Result<CommutativePoly> {
        check_same_rank(self.rank, other.rank)?;
        let mut out = Self::zero(self.rank);
        for (m, x) in &self.terms {
            for (m2, y) in &other.terms {
                out.add_term(m.mul_unchecked(m2), x * y);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CommutativePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.terms.iter().map(|(m, c)| (m, c, *c == BigInt::from(1))),
        )
    }
}

impl fmt::Debug for CommutativePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommutativePoly[n={}]({self})", self.rank)
    }
}
