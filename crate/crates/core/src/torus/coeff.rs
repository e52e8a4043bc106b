//! Laurent polynomials in `t^{1/2}` with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element of `Z[t^{±1/2}]`.
///
/// Keys count powers of `t^{1/2}`, so `t^{k/2}` is stored under `k`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TCoeff {
    terms: BTreeMap<i64, BigInt>,
}

impl TCoeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c · t^{half/2}`.
    pub fn monomial(half: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half, c);
        }
        Self { terms }
    }

    /// `t^{half/2}`.
    pub fn t_half_pow(half: i64) -> Self {
        Self::monomial(half, 1)
    }

    /// `t^{k}` for an integer `k`.
    pub fn t_pow(k: i64) -> Self {
        Self::t_half_pow(2 * k)
    }

    /// `t - t^{-1}`.
    pub fn t_minus_t_inv() -> Self {
        Self::from_terms([(2, BigInt::from(1)), (-2, BigInt::from(-1))])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut out = Self::zero();
        for (h, c) in terms {
            out.add_term(h, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(h, c)| (*h, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^{half/2}`.
    pub fn coeff(&self, half: i64) -> BigInt {
        self.terms.get(&half).cloned().unwrap_or_default()
    }

    pub fn min_half(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_half(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, half: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(half).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&half);
        }
    }

    /// Multiply by `t^{half/2}`.
    pub fn shift(&self, half: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(h, c)| (h + half, c.clone())).collect(),
        }
    }

    /// `t^{1/2} ↦ t^{-1/2}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(h, c)| (-h, c.clone())).collect(),
        }
    }

    /// Value at `t^{1/2} = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Part with strictly negative powers of `t^{1/2}`.
    pub fn negative_part(&self) -> Self {
        Self {
            terms: self.terms.range(..0).map(|(h, c)| (*h, c.clone())).collect(),
        }
    }

    /// True iff every term is an integral power `t^{-k}` with `k ≥ 1`.
    pub fn in_t_inv_z_t_inv(&self) -> bool {
        self.terms.keys().all(|h| *h < 0 && h % 2 == 0)
    }

    /// Long division in `Z[t^{±1/2}]`.
    ///
    /// Returns `(q, r)` with `self = q·divisor + r`; `r` is zero iff the division
    /// is exact.
    pub fn div_rem(&self, divisor: &TCoeff) -> Result<(TCoeff, TCoeff)> {
        let (Some(d_lo), Some(d_hi)) = (divisor.min_half(), divisor.max_half()) else {
            return Err(Error::InexactDivision("0".into()));
        };
        let Some(lo) = self.min_half() else {
            return Ok((TCoeff::zero(), TCoeff::zero()));
        };
        let lead = &divisor.terms[&d_hi];
        let mut rem = self.clone();
        let mut quot = TCoeff::zero();
        // Normalise both to polynomials in t^{1/2}; leading terms are cancelled
        // from the top while the remainder still reaches the divisor's span.
        while let Some(hi) = rem.max_half() {
            if hi - lo < d_hi - d_lo {
                break;
            }
            let (q, r) = rem.terms[&hi].div_rem(lead);
            if !r.is_zero() {
                break;
            }
            let shift = hi - d_hi;
            for (h, c) in &divisor.terms {
                rem.add_term(h + shift, -(c * &q));
            }
            quot.add_term(shift, q);
        }
        Ok((quot, rem))
    }

    /// Exact quotient; fails if the remainder is non-zero.
    pub fn div_exact(&self, divisor: &TCoeff) -> Result<TCoeff> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision(divisor.to_string()))
        }
    }
}

impl Add<&TCoeff> for &TCoeff {
    type Output = TCoeff;
    fn add(self, rhs: &TCoeff) -> TCoeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&TCoeff> for TCoeff {
    fn add_assign(&mut self, rhs: &TCoeff) {
        for (h, c) in &rhs.terms {
            self.add_term(*h, c.clone());
        }
    }
}

impl Sub<&TCoeff> for &TCoeff {
    type Output = TCoeff;
    fn sub(self, rhs: &TCoeff) -> TCoeff {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&TCoeff> for TCoeff {
    fn sub_assign(&mut self, rhs: &TCoeff) {
        for (h, c) in &rhs.terms {
            self.add_term(*h, -c);
        }
    }
}

impl Mul<&TCoeff> for &TCoeff {
    type Output = TCoeff;
    fn mul(self, rhs: &TCoeff) -> TCoeff {
        let mut out = TCoeff::zero();
        for (h1, c1) in &self.terms {
            for (h2, c2) in &rhs.terms {
                out.add_term(h1 + h2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &TCoeff {
    type Output = TCoeff;
    fn neg(self) -> TCoeff {
        TCoeff {
            terms: self.terms.iter().map(|(h, c)| (*h, -c)).collect(),
        }
    }
}

impl Neg for TCoeff {
    type Output = TCoeff;
    fn neg(self) -> TCoeff {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<TCoeff> for TCoeff {
            type Output = TCoeff;
            fn $f(self, rhs: TCoeff) -> TCoeff {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_power(f: &mut fmt::Formatter<'_>, half: i64) -> fmt::Result {
    match half {
        0 => Ok(()),
        2 => write!(f, "t"),
        h if h % 2 == 0 => write!(f, "t^{}", h / 2),
        h => write!(f, "t^({}/2)", h),
    }
}

impl fmt::Display for TCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (h, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.sign() == num_bigint::Sign::Minus;
            let abs = if neg { -c } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *h == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                }
                fmt_power(f, *h)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TCoeff({self})")
    }
}
