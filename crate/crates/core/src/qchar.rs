//! q-characters of fundamental modules in type A.
//!
//! The main route is the Frenkel–Mukhin expansion: starting from the highest
//! monomial, every `j`-dominant monomial whose multiplicity is not yet
//! accounted for in direction `j` spawns the `U_q(Lsl_2)` character of its
//! `j`-part. The tableau sum of [`tableau_oracle`] is an independent route used
//! to cross-check it.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::torus::monomial::{check_rank, Vertex};
use crate::torus::{TCoeff, TorusElement, YMonomial};

/// `χ_q(L(Y_{i,p}))` as an element of the quantum torus (all coefficients 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalChar {
    pub rank: usize,
    pub vertex: Vertex,
    pub body: TorusElement,
}

impl FundamentalChar {
    pub fn highest_monomial(&self) -> YMonomial {
        YMonomial::y(self.rank, self.vertex.i, self.vertex.p).expect("validated vertex")
    }
}

/// `A_{i,p} = Y_{i,p-1} Y_{i,p+1} Y_{i-1,p}^{-1} Y_{i+1,p}^{-1}` with `Y_{0,p} = Y_{n,p} = 1`.
pub fn a_variable(n: usize, i: usize, p: i64) -> Result<YMonomial> {
    check_rank(n)?;
    if i < 1 || i > n - 1 {
        return Err(Error::IndexOutOfRange { i, max: n - 1 });
    }
    if (p - i as i64 - 1).rem_euclid(2) != 0 {
        return Err(Error::Parity { i, p });
    }
    let mut exps = vec![(i, p - 1, 1), (i, p + 1, 1)];
    if i > 1 {
        exps.push((i - 1, p, -1));
    }
    if i + 1 < n {
        exps.push((i + 1, p, -1));
    }
    YMonomial::from_exponents(n, exps)
}

pub fn is_dominant(m: &YMonomial) -> bool {
    m.is_dominant()
}

/// Splits a multiset of spectral parameters into q-strings in general position.
///
/// Greedy from the smallest parameter: each extracted string is maximal, which
/// forces pairwise general position.
fn q_strings(mut params: BTreeMap<i64, i64>) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    while let Some((&start, _)) = params.iter().next() {
        let mut len = 0;
        let mut p = start;
        while let Some(c) = params.get_mut(&p) {
            *c -= 1;
            if *c == 0 {
                params.remove(&p);
            }
            len += 1;
            p += 2;
        }
        out.push((start, len));
    }
    out
}

/// The `U_q(Lsl_2)` character of the simple module with highest monomial
/// `∏ Y_p^{u_p}`, returned as `(A-exponents, multiplicity)` with `A_s^{-v_s}`
/// encoded by `v: s ↦ v_s`.
fn sl2_lowering(params: BTreeMap<i64, i64>) -> BTreeMap<BTreeMap<i64, i64>, BigInt> {
    let mut acc: BTreeMap<BTreeMap<i64, i64>, BigInt> = BTreeMap::new();
    acc.insert(BTreeMap::new(), BigInt::one());
    for (start, len) in q_strings(params) {
        let mut next: BTreeMap<BTreeMap<i64, i64>, BigInt> = BTreeMap::new();
        for (v, mult) in &acc {
            // Lower the top r members of the string: A^{-1} at the top, moving down.
            let mut cur = v.clone();
            *next.entry(cur.clone()).or_default() += mult;
            for r in 0..len {
                let s = start + 2 * (len - 1 - r) as i64 + 1;
                *cur.entry(s).or_default() += 1;
                *next.entry(cur.clone()).or_default() += mult;
            }
        }
        acc = next;
    }
    acc
}

/// Frenkel–Mukhin expansion from the dominant monomial `top`.
///
/// Valid for special modules (fundamental and Kirillov–Reshetikhin modules
/// among them); fails loudly when the colouring becomes inconsistent.
pub fn frenkel_mukhin(top: &YMonomial) -> Result<TorusElement> {
    let n = top.rank();
    if !top.is_dominant() {
        return Err(Error::NotDominant(top.to_string()));
    }
    const LIMIT: usize = 200_000;
    let dim = n - 1;
    // depth -> monomial -> per-direction colouring; the multiplicity of a
    // lower monomial is the largest of its colourings.
    let mut pending: BTreeMap<i64, BTreeMap<YMonomial, Vec<BigInt>>> = BTreeMap::new();
    pending.entry(0).or_default().insert(top.clone(), vec![BigInt::zero(); dim]);
    let mut result = TorusElement::zero(n);
    let mut processed = 0usize;
    while let Some((depth, layer)) = pending.pop_first() {
        for (m, colours) in layer {
            let mult = if depth == 0 {
                BigInt::one()
            } else {
                colours.iter().max().cloned().unwrap_or_default()
            };
            processed += 1;
            if processed > LIMIT {
                return Err(Error::FrenkelMukhin(format!("more than {LIMIT} monomials")));
            }
            result.add_term(m.clone(), &TCoeff::from_int(mult.clone()));
            for j in 1..=dim {
                let coloured = &colours[j - 1];
                if coloured > &mult {
                    return Err(Error::FrenkelMukhin(format!(
                        "monomial {m} over-coloured in direction {j}"
                    )));
                }
                if !m.is_i_dominant(j) {
                    if coloured != &mult {
                        return Err(Error::FrenkelMukhin(format!(
                            "monomial {m} is not {j}-dominant but only partially coloured"
                        )));
                    }
                    continue;
                }
                let missing = &mult - coloured;
                if missing.is_zero() {
                    continue;
                }
                let params: BTreeMap<i64, i64> =
                    m.iter().filter(|(v, _)| v.i == j).map(|(v, e)| (v.p, e)).collect();
                for (lowering, sl2_mult) in sl2_lowering(params) {
                    let steps: i64 = lowering.values().sum();
                    if steps == 0 {
                        continue;
                    }
                    let mut target = m.clone();
                    for (s, v) in &lowering {
                        target = target.mul_unchecked(&a_variable(n, j, *s)?.pow(-v));
                    }
                    let slot = pending
                        .entry(depth + steps)
                        .or_default()
                        .entry(target)
                        .or_insert_with(|| vec![BigInt::zero(); dim]);
                    slot[j - 1] += &missing * &sl2_mult;
                }
            }
        }
    }
    Ok(result)
}

type Cache = RwLock<HashMap<(usize, usize), Arc<TorusElement>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `χ_q(L(Y_{i,i}))`, memoised per `(n, i)`.
fn representative(n: usize, i: usize) -> Result<Arc<TorusElement>> {
    if let Some(x) = cache().read().unwrap().get(&(n, i)) {
        return Ok(x.clone());
    }
    let x = Arc::new(frenkel_mukhin(&YMonomial::y(n, i, i as i64)?)?);
    cache().write().unwrap().entry((n, i)).or_insert(x.clone());
    Ok(x)
}

/// `χ_q(L(Y_{i,p}))`, the spectral shift of the cached `χ_q(L(Y_{i,i}))`.
pub fn fundamental_qchar(n: usize, i: usize, p: i64) -> Result<FundamentalChar> {
    let vertex = Vertex::new(i, p).validate(n)?;
    let base = representative(n, i)?;
    Ok(FundamentalChar { rank: n, vertex, body: base.shifted((p - i as i64) / 2) })
}

/// Body of [`fundamental_qchar`].
pub fn fundamental_body(n: usize, v: Vertex) -> Result<TorusElement> {
    fundamental_qchar(n, v.i, v.p).map(|c| c.body)
}

/// Box `k ∈ [1,n]` of the vector representation at spectral parameter `s`:
/// `Y_{k-1,s+k}^{-1} Y_{k,s+k-1}`.
fn box_monomial(n: usize, k: usize, s: i64) -> Vec<(usize, i64, i64)> {
    let mut out = Vec::new();
    if k > 1 {
        out.push((k - 1, s + k as i64, -1));
    }
    if k < n {
        out.push((k, s + k as i64 - 1, 1));
    }
    out
}

/// Independent route: sum over `k_1 < ⋯ < k_i` in `[1,n]` of the products of
/// boxes `k_r` at parameters `p + i + 1 - 2r`.
pub fn tableau_oracle(n: usize, i: usize, p: i64) -> Result<FundamentalChar> {
    let vertex = Vertex::new(i, p).validate(n)?;
    let mut body = TorusElement::zero(n);
    let mut column: Vec<usize> = (1..=i).collect();
    loop {
        let exps = column
            .iter()
            .enumerate()
            .flat_map(|(r, &k)| box_monomial(n, k, p + i as i64 - 1 - 2 * r as i64));
        body.add_term(YMonomial::from_exponents(n, exps)?, &TCoeff::one());
        // next i-subset in lexicographic order
        let Some(pos) = (0..i).rev().find(|&r| column[r] < n - (i - 1 - r)) else {
            break;
        };
        column[pos] += 1;
        for r in pos + 1..i {
            column[r] = column[r - 1] + 1;
        }
    }
    Ok(FundamentalChar { rank: n, vertex, body })
}
