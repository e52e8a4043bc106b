//! Verification suites shared by the CLI and the acceptance run.
//!
//! Each suite returns a [`Report`] listing every instance in a deterministic
//! order; instances are evaluated in parallel.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::bosonic::{
    check_tcomm_splitting, e_root_image, generator_image, relation_failures, upsilon_image,
    UpsilonImages,
};
use crate::error::Result;
use crate::heightmap::{phi_inv, HeightFunction, Root, RootLevel};
use crate::inflate::{brito_chari_nu, IncreasingMap, QuantumInflation};
use crate::klbasis::{canonical_basis_element, evaluate_t1, fundamentals_commute};
use crate::pairing::{pairing_n, pairing_n_closed, CartanData};
use crate::qchar::{fundamental_qchar, tableau_oracle};
use crate::torus::{Vertex, YMonomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Case {
    fn from_result(label: String, r: Result<(bool, String)>) -> Case {
        match r {
            Ok((passed, detail)) => Case { label, passed, detail },
            Err(e) => Case { label, passed: false, detail: format!("error: {e}") },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(suite: impl Into<String>, cases: Vec<Case>) -> Self {
        Report { suite: suite.into(), cases }
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed)
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.cases.extend(other.cases);
        self
    }
}

fn run<T: Sync>(
    items: &[T],
    label: impl Fn(&T) -> String + Sync,
    check: impl Fn(&T) -> Result<(bool, String)> + Sync,
) -> Vec<Case> {
    items
        .par_iter()
        .map(|x| Case::from_result(label(x), check(x)))
        .collect()
}

fn plain(ok: bool) -> (bool, String) {
    (ok, String::new())
}

/// Vertices of `Î_n` with `lo ≤ p ≤ hi`, in canonical order.
pub fn window_vertices(n: usize, lo: i64, hi: i64) -> Vec<Vertex> {
    (lo..=hi)
        .flat_map(|p| (1..n).map(move |i| Vertex::new(i, p)))
        .filter(|v| (v.p - v.i as i64).rem_euclid(2) == 0)
        .collect()
}

/// Dominant monomials with at most `max_factors` fundamental factors from the window.
pub fn dominant_monomials(n: usize, lo: i64, hi: i64, max_factors: usize) -> Result<Vec<YMonomial>> {
    let verts = window_vertices(n, lo, hi);
    let mut out = vec![YMonomial::one(n)];
    let mut layer: Vec<(usize, YMonomial)> = vec![(0, YMonomial::one(n))];
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for (start, m) in &layer {
            for (idx, v) in verts.iter().enumerate().skip(*start) {
                let f = YMonomial::y(n, v.i, v.p)?;
                next.push((idx, m.mul(&f)?));
            }
        }
        out.extend(next.iter().map(|(_, m)| m.clone()));
        layer = next;
    }
    Ok(out)
}

/// `c̃`-based `𝒩_{i,j}(k)` against the closed formula for `δ_{ij} ≤ k ≤ kmax`.
pub fn pairing_suite(ns: &[usize], kmax: i64) -> Result<Report> {
    let mut items = Vec::new();
    for &n in ns {
        CartanData::for_rank(n)?;
        for i in 1..n {
            for j in 1..n {
                for k in i64::from(i == j)..=kmax {
                    items.push((n, i, j, k));
                }
            }
        }
    }
    let cases = run(
        &items,
        |&(n, i, j, k)| format!("n={n} N_{{{i},{j}}}({k})"),
        |&(n, i, j, k)| {
            let a = CartanData::for_rank(n)?.n_value(i, j, k);
            let b = pairing_n_closed(n, i, j, k)?;
            Ok((a == b, if a == b { String::new() } else { format!("{a} != {b}") }))
        },
    );
    Ok(Report::new("pairing", cases))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Fundamental q-characters against the tableau oracle.
pub fn characters_suite(ns: &[usize], lo: i64, hi: i64) -> Result<Report> {
    let items: Vec<(usize, Vertex)> = ns
        .iter()
        .flat_map(|&n| window_vertices(n, lo, hi).into_iter().map(move |v| (n, v)))
        .collect();
    let cases = run(
        &items,
        |(n, v)| format!("n={n} Y[{},{}]", v.i, v.p),
        |&(n, v)| {
            let fm = fundamental_qchar(n, v.i, v.p)?;
            let oracle = tableau_oracle(n, v.i, v.p)?;
            let count = fm.body.len() == binomial(n, v.i);
            let dominant: Vec<_> = fm.body.dominant_monomials().collect();
            let unique = dominant.len() == 1 && *dominant[0] == fm.highest_monomial();
            Ok((
                fm.body == oracle.body && count && unique,
                format!("{} monomials", fm.body.len()),
            ))
        },
    );
    Ok(Report::new("characters", cases))
}

/// `χ(Y_{i,p}) * χ(Y_{j,s}) = χ(Y_{j,s}) * χ(Y_{i,p})` whenever `|p-s| < |i-j| + δ_{ij}`.
pub fn commutation_suite(ns: &[usize], lo: i64, hi: i64) -> Result<Report> {
    let mut items = Vec::new();
    for &n in ns {
        let vs = window_vertices(n, lo, hi);
        for &a in &vs {
            for &b in &vs {
                let bound = a.i.abs_diff(b.i) as i64 + i64::from(a.i == b.i);
                if a < b && (a.p - b.p).abs() < bound {
                    items.push((n, a, b));
                }
            }
        }
    }
    let cases = run(
        &items,
        |(n, a, b)| format!("n={n} Y[{},{}] Y[{},{}]", a.i, a.p, b.i, b.p),
        |&(n, a, b)| fundamentals_commute(n, a, b).map(plain),
    );
    Ok(Report::new("commutation", cases))
}

/// Bar-invariance and triangularity of the canonical elements of the given monomials.
pub fn canonical_suite(ms: &[YMonomial]) -> Result<Report> {
    let cases = run(
        ms,
        |m| format!("n={} L({m})", m.rank()),
        |m| canonical_basis_element(m)?.satisfies_characterization().map(plain),
    );
    Ok(Report::new("canonical", cases))
}

/// End-to-end comparison `Ψ(χ_{q,t}(L(m))) = χ_{q,t}(L(ψ(m)))`.
pub fn inflation_suite(inflations: &[QuantumInflation], ms: &[YMonomial]) -> Result<Report> {
    let items: Vec<(&QuantumInflation, &YMonomial)> = inflations
        .iter()
        .flat_map(|q| ms.iter().filter(move |m| m.rank() == q.source()).map(move |m| (q, m)))
        .collect();
    let cases = run(
        &items,
        |(q, m)| format!("{}->{} nu={:?} m={m}", q.source(), q.target(), q.nu.values()),
        |(q, m)| q.verify_main_theorem(m).map(plain),
    );
    Ok(Report::new("inflation", cases))
}

/// `ψ(Y_{i,p}) = Y_{ñi/n, ñp/n}` on the window, and `t = 1` agreement of both sides for `ms`.
pub fn brito_chari_suite(n: usize, nn: usize, ms: &[YMonomial], lo: i64, hi: i64) -> Result<Report> {
    let q = QuantumInflation::with_offsets(brito_chari_nu(n, nn)?, 0, 0)?;
    let r = (nn / n) as i64;
    let verts = window_vertices(n, lo, hi);
    let mut cases = run(
        &verts,
        |v| format!("{n}->{nn} psi(Y[{},{}])", v.i, v.p),
        |v| {
            let w = q.psi_fundamental(*v)?;
            let want = Vertex::new(v.i * nn / n, v.p * r);
            Ok((w == want, format!("Y[{},{}]", w.i, w.p)))
        },
    );
    cases.extend(run(
        ms,
        |m| format!("{n}->{nn} [L({m})] at t=1"),
        |m| {
            let lhs = evaluate_t1(&q.inflate_ring_element(&canonical_basis_element(m)?.body)?);
            let rhs = evaluate_t1(&canonical_basis_element(&q.psi_dominant(m)?)?.body);
            Ok((lhs == rhs, format!("lhs = {lhs}; rhs = {rhs}")))
        },
    ));
    Ok(Report::new("brito-chari", cases))
}

/// R1 and R2 for `Υ_ν` images, over all `ν: [1,n] → [1,ñ]` and the given levels.
pub fn relations_suite(n: usize, nn: usize, ks: &[i64], c_tilde: i64) -> Result<Report> {
    let xi_tilde = HeightFunction::increasing(nn, c_tilde)?;
    let nus = IncreasingMap::all(n, nn)?;
    let cases = run(
        &nus,
        |nu| format!("{n}->{nn} nu={:?} k in {ks:?}", nu.values()),
        |nu| {
            let f = UpsilonImages { nu: nu.clone(), xi_tilde: xi_tilde.clone() };
            let bad = relation_failures(&f, ks)?;
            Ok((bad.is_empty(), bad.join("; ")))
        },
    );
    let mut report = Report::new("relations", cases);
    // Υ_ν agrees with the quantum inflation on generators.
    let mut items = Vec::new();
    for nu in &nus {
        for i in 1..n {
            for &k in ks {
                items.push((nu.clone(), i, k));
            }
        }
    }
    report.cases.extend(run(
        &items,
        |(nu, i, k)| format!("{n}->{nn} nu={:?} Upsilon(e_{{{i},{k}}}) = Psi(e_{{{i},{k}}})", nu.values()),
        |(nu, i, k)| {
            let q = QuantumInflation::new(HeightFunction::increasing(n, 0)?, xi_tilde.clone(), nu.clone())?;
            let g = generator_image(&q.xi, *i, *k)?.body;
            Ok(plain(upsilon_image(nu, &xi_tilde, *i, *k)? == q.inflate_ring_element(&g)?))
        },
    ));
    Ok(report)
}

/// `e(α_{a,b})` images against `φ_ξ^{-1}` and the splitting identity for all `a < b < c`.
pub fn roots_suite(ns: &[usize], ks: &[i64]) -> Result<Report> {
    let mut ident = Vec::new();
    let mut split = Vec::new();
    for &n in ns {
        for &k in ks {
            for a in 1..n {
                for b in a + 1..=n {
                    ident.push((n, a, b, k));
                    for c in b + 1..=n {
                        split.push((n, a, b, c, k));
                    }
                }
            }
        }
    }
    let mut cases = run(
        &ident,
        |(n, a, b, k)| format!("n={n} e(alpha_{{{a},{b}}}) level {k}"),
        |&(n, a, b, k)| {
            let xi = HeightFunction::increasing(n, 0)?;
            let v = phi_inv(&xi, RootLevel::new(Root::new(n, a, b)?, k))?;
            let img = e_root_image(&xi, a, b, k)?;
            let fund = fundamental_qchar(n, v.i, v.p)?;
            Ok((img == fund.body, format!("Y[{},{}]", v.i, v.p)))
        },
    );
    cases.extend(run(
        &split,
        |(n, a, b, c, k)| format!("n={n} split ({a},{b},{c}) level {k}"),
        |&(n, a, b, c, k)| check_tcomm_splitting(&HeightFunction::increasing(n, 0)?, a, b, c, k).map(plain),
    ));
    Ok(Report::new("roots", cases))
}

/// `𝒩(ψ(Y_a), ψ(Y_b)) = 𝒩(Y_a, Y_b)` for all window pairs.
pub fn preservation_suite(inflations: &[QuantumInflation], lo: i64, hi: i64) -> Result<Report> {
    let cases = run(
        inflations,
        |q| format!("{}->{} nu={:?}", q.source(), q.target(), q.nu.values()),
        |q| {
            let (n, nn) = (q.source(), q.target());
            let vs = window_vertices(n, lo, hi);
            let images = vs.iter().map(|v| q.psi_fundamental(*v)).collect::<Result<Vec<_>>>()?;
            let mut bad = 0usize;
            for (a, x) in vs.iter().zip(&images) {
                for (b, y) in vs.iter().zip(&images) {
                    if pairing_n(n, *a, *b)? != pairing_n(nn, *x, *y)? {
                        bad += 1;
                    }
                }
            }
            Ok((bad == 0, format!("{} pairs, {bad} mismatches", vs.len() * vs.len())))
        },
    );
    Ok(Report::new("preservation", cases))
}

/// `t = 1` characters as `(monomial, coefficient)` strings, for display.
pub fn t1_terms(x: &crate::torus::TorusElement) -> Vec<(String, BigInt)> {
    evaluate_t1(x).terms().map(|(m, c)| (m.to_string(), c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_enumeration() {
        let ms = dominant_monomials(2, 1, 3, 2).unwrap();
        // 1, Y11, Y13, Y11^2, Y11Y13, Y13^2
        assert_eq!(ms.len(), 6);
        assert_eq!(window_vertices(3, 0, 3).len(), 4);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn small_suites_pass() {
        assert!(pairing_suite(&[2, 3], 8).unwrap().all_passed());
        assert!(characters_suite(&[3], -2, 2).unwrap().all_passed());
        assert!(commutation_suite(&[3], -2, 2).unwrap().all_passed());
        assert!(roots_suite(&[3], &[0]).unwrap().all_passed());
        let r = relations_suite(2, 3, &[0, 1], 0).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let r = brito_chari_suite(2, 4, &[YMonomial::parse(2, "Y[1,1]").unwrap()], -2, 2).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.failed(), 0);
    }
}
