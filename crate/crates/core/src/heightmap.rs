//! Height functions, their Coxeter elements, and the bijection
//! `φ_ξ : Î_n → R_n^+ × Z` between vertices and (positive root, level) pairs.

use std::fmt;

use crate::error::{Error, Result};
use crate::torus::monomial::{check_rank, Vertex};

/// A height function `ξ : I_n → Z` with `ξ(1)` odd and unit steps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeightFunction {
    values: Vec<i64>,
}

impl HeightFunction {
    /// `values[i-1] = ξ(i)` for `i ∈ [1, n-1]`.
    pub fn new(n: usize, values: Vec<i64>) -> Result<Self> {
        check_rank(n)?;
        if values.len() != n - 1 {
            return Err(Error::InvalidHeightFunction(format!(
                "expected {} values for rank {n}, got {}",
                n - 1,
                values.len()
            )));
        }
        if values[0].rem_euclid(2) != 1 {
            return Err(Error::InvalidHeightFunction(format!(
                "xi(1) = {} must be odd",
                values[0]
            )));
        }
        if let Some(w) = values.windows(2).find(|w| (w[0] - w[1]).abs() != 1) {
            return Err(Error::InvalidHeightFunction(format!(
                "consecutive values {} and {} must differ by 1",
                w[0], w[1]
            )));
        }
        Ok(Self { values })
    }

    /// The increasing height function `ξ(i) = i + 2c`.
    pub fn increasing(n: usize, c: i64) -> Result<Self> {
        Self::new(n, (1..n as i64).map(|i| i + 2 * c).collect())
    }

    pub fn rank(&self) -> usize {
        self.values.len() + 1
    }

    /// `ξ(i)`.
    pub fn at(&self, i: usize) -> i64 {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `Some(c)` when `ξ(i) = i + 2c`.
    pub fn increasing_offset(&self) -> Option<i64> {
        let c2 = self.values[0] - 1;
        self.values
            .iter()
            .enumerate()
            .all(|(k, v)| *v == k as i64 + 1 + c2)
            .then_some(c2 / 2)
    }

    pub fn is_increasing(&self) -> bool {
        self.increasing_offset().is_some()
    }
}

/// A permutation of `[1,n]`; `image(a)` is the index `b` with `σ(ε_a) = ε_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn from_images(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, a: usize) -> usize {
        self.images[a - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&a| self.image(a)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            inv[b - 1] = a + 1;
        }
        Permutation { images: inv }
    }
}

/// A positive root `α_{a,b} = ε_a - ε_b`, `1 ≤ a < b ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub a: usize,
    pub b: usize,
}

impl Root {
    pub fn new(n: usize, a: usize, b: usize) -> Result<Self> {
        if a < 1 || a >= b || b > n {
            return Err(Error::InvalidRoot { a, b, n });
        }
        Ok(Self { a, b })
    }

    /// The simple root `α_i = α_{i,i+1}`.
    pub fn simple(i: usize) -> Self {
        Self { a: i, b: i + 1 }
    }

    pub fn is_simple(&self) -> bool {
        self.b == self.a + 1
    }

    /// `(α_{a,b}, α_{c,d})` under `(ε_x, ε_y) = δ_{x,y}`.
    pub fn inner(&self, other: &Root) -> i64 {
        let d = |x: usize, y: usize| i64::from(x == y);
        d(self.a, other.a) - d(self.a, other.b) - d(self.b, other.a) + d(self.b, other.b)
    }

    /// `σ(α)` as `(sign, root)`; the sign is `-1` when `σ(α)` is negative.
    pub fn apply(&self, sigma: &Permutation) -> (i64, Root) {
        let (x, y) = (sigma.image(self.a), sigma.image(self.b));
        if x < y {
            (1, Root { a: x, b: y })
        } else {
            (-1, Root { a: y, b: x })
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha[{},{}]", self.a, self.b)
    }
}

/// A pair `(α, k) ∈ R_n^+ × Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootLevel {
    pub root: Root,
    pub level: i64,
}

impl RootLevel {
    pub fn new(root: Root, level: i64) -> Self {
        Self { root, level }
    }
}

impl fmt::Display for RootLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.root, self.level)
    }
}

/// `τ_ξ = s_{i_1} ⋯ s_{i_{n-1}}` with `ξ(i_1) ≤ ⋯ ≤ ξ(i_{n-1})`.
pub fn coxeter(xi: &HeightFunction) -> Permutation {
    let n = xi.rank();
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&i| (xi.at(i), i));
    order
        .iter()
        .fold(Permutation::identity(n), |acc, &i| acc.compose(&Permutation::simple(n, i)))
}

/// `φ_ξ(i, ξ(i))`.
fn phi_base(xi: &HeightFunction, i: usize) -> RootLevel {
    let n = xi.rank();
    let mut lo = i;
    while lo > 1 && xi.at(lo - 1) == xi.at(lo) + 1 {
        lo -= 1;
    }
    let mut hi = i;
    while hi < n - 1 && xi.at(hi + 1) == xi.at(hi) + 1 {
        hi += 1;
    }
    RootLevel::new(Root { a: lo, b: hi + 1 }, 0)
}

/// Walks `steps` steps of `p ↦ p ± 2` from `rl` using `τ` (forward) or `τ^{-1}`.
fn walk(mut rl: RootLevel, steps: i64, tau: &Permutation, tau_inv: &Permutation) -> RootLevel {
    let (sigma, dir) = if steps >= 0 { (tau, 1) } else { (tau_inv, -1) };
    for _ in 0..steps.abs() {
        let (sign, root) = rl.root.apply(sigma);
        rl = RootLevel::new(root, if sign > 0 { rl.level } else { rl.level + dir });
    }
    rl
}

/// `φ_ξ(i, p)` by the two-sided recursion from `p = ξ(i)`.
pub fn phi(xi: &HeightFunction, i: usize, p: i64) -> Result<RootLevel> {
    let v = Vertex::new(i, p).validate(xi.rank())?;
    let tau = coxeter(xi);
    let tau_inv = tau.inverse();
    Ok(walk(phi_base(xi, v.i), (v.p - xi.at(v.i)) / 2, &tau, &tau_inv))
}

/// `p = k_n(p)·n + r_n(p)` with `r_n(p) ∈ [1, n]`.
pub fn euclid(p: i64, n: usize) -> (i64, usize) {
    let n = n as i64;
    let k = (p - 1).div_euclid(n);
    (k, (p - k * n) as usize)
}

/// Closed form of `φ_ξ` for increasing `ξ`:
/// `φ_ξ(i, ξ(i)+2p) = (α_{r(p), r(p+i)}, 2k(p)+1)` if `r(p) < r(p+i)` and
/// `(α_{r(p+i), r(p)}, 2k(p)+2)` otherwise.
pub fn phi_increasing(xi: &HeightFunction, i: usize, p: i64) -> Result<RootLevel> {
    if !xi.is_increasing() {
        return Err(Error::NotIncreasing);
    }
    let n = xi.rank();
    let v = Vertex::new(i, p).validate(n)?;
    let q = (v.p - xi.at(v.i)) / 2;
    let (k, r) = euclid(q, n);
    let (_, r2) = euclid(q + v.i as i64, n);
    Ok(if r < r2 {
        RootLevel::new(Root { a: r, b: r2 }, 2 * k + 1)
    } else {
        RootLevel::new(Root { a: r2, b: r }, 2 * k + 2)
    })
}

/// `φ_ξ^{-1}`: the closed formula for increasing `ξ`, a bounded search otherwise.
pub fn phi_inv(xi: &HeightFunction, rl: RootLevel) -> Result<Vertex> {
    let n = xi.rank();
    Root::new(n, rl.root.a, rl.root.b)?;
    if xi.is_increasing() {
        let (a, b, ni) = (rl.root.a as i64, rl.root.b as i64, n as i64);
        let level = rl.level;
        let (i, p) = if level.rem_euclid(2) == 1 {
            let k = (level - 1) / 2;
            let i = (b - a) as usize;
            (i, xi.at(i) + 2 * (k * ni + a))
        } else {
            let k = (level - 2).div_euclid(2);
            let i = (ni + a - b) as usize;
            (i, xi.at(i) + 2 * (k * ni + b))
        };
        return Ok(Vertex::new(i, p));
    }
    phi_inv_search(xi, rl)
}

/// Inverse of `φ_ξ` by scanning a window of spectral parameters around each `ξ(i)`.
pub fn phi_inv_search(xi: &HeightFunction, rl: RootLevel) -> Result<Vertex> {
    let n = xi.rank();
    let tau = coxeter(xi);
    let tau_inv = tau.inverse();
    // Each block of n steps returns the root and moves the level by two.
    let reach = (rl.level.abs() + 2) * n as i64;
    for i in 1..n {
        let base = phi_base(xi, i);
        for dir in [1, -1] {
            let mut cur = base;
            for step in 0..=reach {
                if cur == rl {
                    return Ok(Vertex::new(i, xi.at(i) + 2 * dir * step));
                }
                cur = walk(cur, dir, &tau, &tau_inv);
            }
        }
    }
    Err(Error::Precondition(format!("no vertex maps to {rl} within the search window")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_function_validation() {
        assert!(HeightFunction::new(3, vec![1, 0]).is_ok());
        assert!(HeightFunction::new(3, vec![2, 1]).is_err());
        assert!(HeightFunction::new(4, vec![1, 2, 4]).is_err());
        assert!(HeightFunction::new(4, vec![1, 2]).is_err());
        let xi = HeightFunction::increasing(4, -1).unwrap();
        assert_eq!(xi.values(), &[-1, 0, 1]);
        assert_eq!(xi.increasing_offset(), Some(-1));
        assert!(!HeightFunction::new(3, vec![1, 0]).unwrap().is_increasing());
    }

    #[test]
    fn coxeter_increasing_is_cycle() {
        let xi = HeightFunction::increasing(4, 0).unwrap();
        assert_eq!(coxeter(&xi).images(), &[2, 3, 4, 1]);
    }

    #[test]
    fn coxeter_small_cases() {
        for c in [-1, 0, 2] {
            let xi = HeightFunction::increasing(2, c).unwrap();
            assert_eq!(coxeter(&xi), Permutation::simple(2, 1));
        }
        let xi = HeightFunction::new(3, vec![1, 0]).unwrap();
        let s2s1 = Permutation::simple(3, 2).compose(&Permutation::simple(3, 1));
        assert_eq!(coxeter(&xi), s2s1);
    }

    #[test]
    fn coxeter_ignores_tie_order() {
        // ξ = (1,2,1,2): nodes 1,3 tie and 2,4 tie; they commute.
        let xi = HeightFunction::new(5, vec![1, 2, 1, 2]).unwrap();
        let s = |i| Permutation::simple(5, i);
        let alt = s(3).compose(&s(1)).compose(&s(4)).compose(&s(2));
        assert_eq!(coxeter(&xi), alt);
    }

    #[test]
    fn phi_base_cases() {
        for n in 2..=6 {
            let xi = HeightFunction::increasing(n, 0).unwrap();
            for i in 1..n {
                let rl = phi(&xi, i, xi.at(i)).unwrap();
                assert_eq!(rl, RootLevel::new(Root { a: i, b: n }, 0));
            }
        }
        let xi0 = HeightFunction::increasing(3, 0).unwrap();
        assert_eq!(phi(&xi0, 2, 2).unwrap(), RootLevel::new(Root { a: 2, b: 3 }, 0));
        assert_eq!(phi_inv(&xi0, RootLevel::new(Root { a: 2, b: 3 }, 0)).unwrap(), Vertex::new(2, 2));
    }

    #[test]
    fn phi_inv_examples() {
        let xi0 = HeightFunction::increasing(3, 0).unwrap();
        let v = phi_inv(&xi0, RootLevel::new(Root { a: 1, b: 3 }, 0)).unwrap();
        assert_eq!(v, Vertex::new(1, 1));
        let v = phi_inv(&xi0, RootLevel::new(Root { a: 1, b: 2 }, 1)).unwrap();
        assert_eq!(v, Vertex::new(1, 3));
    }

    #[test]
    fn phi_parity_error() {
        let xi0 = HeightFunction::increasing(3, 0).unwrap();
        assert!(matches!(phi(&xi0, 1, 2), Err(Error::Parity { .. })));
    }

    fn all_height_functions(n: usize, lo: i64, hi: i64) -> Vec<HeightFunction> {
        let mut out: Vec<Vec<i64>> = (lo..=hi).filter(|v| v.rem_euclid(2) == 1).map(|v| vec![v]).collect();
        for _ in 2..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    let last = *v.last().unwrap();
                    [last - 1, last + 1].into_iter().map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|v| HeightFunction::new(n, v).unwrap()).collect()
    }

    #[test]
    fn phi_is_bijective_on_windows() {
        for n in 2..=5 {
            for xi in all_height_functions(n, -1, 1) {
                let mut seen = std::collections::HashSet::new();
                for i in 1..n {
                    for p in -12..=12 {
                        if (p - i as i64).rem_euclid(2) != 0 {
                            continue;
                        }
                        let rl = phi(&xi, i, p).unwrap();
                        assert!(seen.insert(rl), "{xi:?}: repeated {rl}");
                        assert_eq!(phi_inv(&xi, rl).unwrap(), Vertex::new(i, p));
                        assert_eq!(phi_inv_search(&xi, rl).unwrap(), Vertex::new(i, p));
                    }
                }
                // other direction: every (root, level) in a band comes back
                for a in 1..n {
                    for b in a + 1..=n {
                        for level in -2..=2 {
                            let rl = RootLevel::new(Root { a, b }, level);
                            let v = phi_inv(&xi, rl).unwrap();
                            assert_eq!(phi(&xi, v.i, v.p).unwrap(), rl);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn recursion_matches_closed_formula() {
        for n in 2..=6 {
            for c in -2..=2 {
                let xi = HeightFunction::increasing(n, c).unwrap();
                for i in 1..n {
                    for q in -15..=15 {
                        let p = xi.at(i) + 2 * q;
                        assert_eq!(phi(&xi, i, p).unwrap(), phi_increasing(&xi, i, p).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn euclid_remainder_in_one_to_n() {
        assert_eq!(euclid(0, 3), (-1, 3));
        assert_eq!(euclid(3, 3), (0, 3));
        assert_eq!(euclid(4, 3), (1, 1));
        assert_eq!(euclid(-1, 3), (-1, 2));
    }
}
