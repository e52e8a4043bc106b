//! Torus images of the bosonic extension `Â_n` and its defining relations.
//!
//! Everything is checked on images: `e_{j,k}` is realised as the fundamental
//! character at `φ_ξ^{-1}(α_j, k)`, and `Υ_ν` sends `e_{i,k}` to the image of
//! `e(α_{ν(i),ν(i+1)})` at level `k`.

use crate::error::{Error, Result};
use crate::heightmap::{phi_inv, HeightFunction, Root, RootLevel};
use crate::inflate::IncreasingMap;
use crate::pairing::CartanData;
use crate::qchar::fundamental_body;
use crate::torus::{TCoeff, TorusElement, Vertex};

/// `[x, y]_{t^{1/2}} = t^{1/2} x*y - t^{-1/2} y*x`.
pub fn t_commutator(x: &TorusElement, y: &TorusElement) -> Result<TorusElement> {
    let mut out = x.star(y)?.scale(&TCoeff::t_half_pow(1));
    out.add_scaled(&y.star(x)?, &TCoeff::monomial(-1, -1))?;
    Ok(out)
}

/// The image of `e_{j,k}` under `Ψ_ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImage {
    pub rank: usize,
    pub xi: HeightFunction,
    pub j: usize,
    pub k: i64,
    pub vertex: Vertex,
    pub body: TorusElement,
}

pub fn generator_image(xi: &HeightFunction, j: usize, k: i64) -> Result<GeneratorImage> {
    let n = xi.rank();
    let vertex = phi_inv(xi, RootLevel::new(Root::new(n, j, j + 1)?, k))?;
    Ok(GeneratorImage {
        rank: n,
        xi: xi.clone(),
        j,
        k,
        vertex,
        body: fundamental_body(n, vertex)?,
    })
}

fn require_increasing(xi: &HeightFunction) -> Result<()> {
    if xi.is_increasing() {
        Ok(())
    } else {
        Err(Error::NotIncreasing)
    }
}

/// Nested t-commutator `[e_a, [e_{a+1}, ⋯ [e_{b-2}, e_{b-1}]⋯]]` over `(t - t^{-1})^{b-a-1}`.
fn nested_root(
    a: usize,
    b: usize,
    mut gen: impl FnMut(usize) -> Result<TorusElement>,
) -> Result<TorusElement> {
    let mut acc = gen(b - 1)?;
    for j in (a..b - 1).rev() {
        acc = t_commutator(&gen(j)?, &acc)?.div_exact(&TCoeff::t_minus_t_inv())?;
    }
    Ok(acc)
}

/// The image of `ι_k(e(α_{a,b}))` under `Ψ_ξ`.
pub fn e_root_image(xi: &HeightFunction, a: usize, b: usize, k: i64) -> Result<TorusElement> {
    require_increasing(xi)?;
    Root::new(xi.rank(), a, b)?;
    nested_root(a, b, |j| Ok(generator_image(xi, j, k)?.body))
}

/// `Ψ_ξ̃(Υ_ν(e_{i,k}))`.
pub fn upsilon_image(nu: &IncreasingMap, xi_tilde: &HeightFunction, i: usize, k: i64) -> Result<TorusElement> {
    if nu.target() != xi_tilde.rank() {
        return Err(Error::RankMismatch { left: nu.target(), right: xi_tilde.rank() });
    }
    if i == 0 || i >= nu.source() {
        return Err(Error::IndexOutOfRange { i, max: nu.source() - 1 });
    }
    e_root_image(xi_tilde, nu.at(i), nu.at(i + 1), k)
}

/// A family of elements indexed by `I_n × ℤ` standing in for the `e_{i,k}`.
pub trait ImageFamily {
    /// `n`, so that the family is indexed by `i ∈ [1, n-1]`.
    fn rank(&self) -> usize;
    fn image(&self, i: usize, k: i64) -> Result<TorusElement>;
}

/// `e_{j,k} ↦ Ψ_ξ(e_{j,k})`.
pub struct HeightImages(pub HeightFunction);

impl ImageFamily for HeightImages {
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn image(&self, i: usize, k: i64) -> Result<TorusElement> {
        Ok(generator_image(&self.0, i, k)?.body)
    }
}

/// `e_{i,k} ↦ Ψ_ξ̃(Υ_ν(e_{i,k}))`.
pub struct UpsilonImages {
    pub nu: IncreasingMap,
    pub xi_tilde: HeightFunction,
}

impl ImageFamily for UpsilonImages {
    fn rank(&self) -> usize {
        self.nu.source()
    }

    fn image(&self, i: usize, k: i64) -> Result<TorusElement> {
        upsilon_image(&self.nu, &self.xi_tilde, i, k)
    }
}

fn star3(x: &TorusElement, y: &TorusElement, z: &TorusElement) -> Result<TorusElement> {
    x.star(y)?.star(z)
}

/// Relation R1 at level `k`.
pub fn check_r1(f: &impl ImageFamily, i: usize, j: usize, k: i64) -> Result<bool> {
    let (x, y) = (f.image(i, k)?, f.image(j, k)?);
    match i.abs_diff(j) {
        0 => Ok(true),
        1 => {
            let mut lhs = star3(&x, &x, &y)?;
            let q = &TCoeff::t_pow(1) + &TCoeff::t_pow(-1);
            lhs.add_scaled(&star3(&x, &y, &x)?, &-q)?;
            lhs.add_scaled(&star3(&y, &x, &x)?, &TCoeff::one())?;
            Ok(lhs.is_zero())
        }
        _ => Ok(x.star(&y)? == y.star(&x)?),
    }
}

/// Relation R2 for `k < k'`, including the `(1 - t^{-2})` term when `(i,k) = (j,k'-1)`.
pub fn check_r2(f: &impl ImageFamily, i: usize, j: usize, k: i64, k2: i64) -> Result<bool> {
    if k >= k2 {
        return Err(Error::Precondition(format!("R2 needs k < k', got {k} >= {k2}")));
    }
    let (x, y) = (f.image(i, k)?, f.image(j, k2)?);
    let c = CartanData::for_rank(f.rank())?.cartan(i, j);
    let sign = if (k + k2).rem_euclid(2) == 0 { 1 } else { -1 };
    let mut rhs = y.star(&x)?.scale(&TCoeff::t_pow(sign * c));
    if i == j && k == k2 - 1 {
        let corr = &TCoeff::one() - &TCoeff::t_pow(-2);
        rhs.add_scaled(&TorusElement::one(x.rank()), &corr)?;
    }
    Ok(x.star(&y)? == rhs)
}

/// Splitting `e(α_{a,c}) = [e(α_{a,b}), e(α_{b,c})] / (t - t^{-1})` at level `k`.
pub fn check_tcomm_splitting(xi: &HeightFunction, a: usize, b: usize, c: usize, k: i64) -> Result<bool> {
    if !(a < b && b < c) {
        return Err(Error::Precondition(format!("need a < b < c, got {a}, {b}, {c}")));
    }
    let ac = e_root_image(xi, a, c, k)?;
    let ab = e_root_image(xi, a, b, k)?;
    let bc = e_root_image(xi, b, c, k)?;
    Ok(t_commutator(&ab, &bc)?.div_exact(&TCoeff::t_minus_t_inv())? == ac)
}

/// `e(α_{a,b})` and `e(α_{c,d})` commute at level `k` when `b < c`.
pub fn check_disjoint_commute(xi: &HeightFunction, (a, b): (usize, usize), (c, d): (usize, usize), k: i64) -> Result<bool> {
    let x = e_root_image(xi, a, b, k)?;
    let y = e_root_image(xi, c, d, k)?;
    Ok(x.star(&y)? == y.star(&x)?)
}

/// Every R1/R2 instance for `i, j ∈ I_n` and levels in `ks`; returns the failing ones.
pub fn relation_failures(f: &impl ImageFamily, ks: &[i64]) -> Result<Vec<String>> {
    let n = f.rank();
    let mut bad = Vec::new();
    for i in 1..n {
        for j in 1..n {
            for &k in ks {
                if !check_r1(f, i, j, k)? {
                    bad.push(format!("R1 i={i} j={j} k={k}"));
                }
                for &k2 in ks.iter().filter(|&&k2| k2 > k) {
                    if !check_r2(f, i, j, k, k2)? {
                        bad.push(format!("R2 i={i} j={j} k={k} k'={k2}"));
                    }
                }
            }
        }
    }
    Ok(bad)
}
