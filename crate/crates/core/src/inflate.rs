//! Quantum inflations between increasing height functions.

use std::fmt;

use crate::error::{Error, Result};
use crate::heightmap::{phi, phi_inv, HeightFunction, Root, RootLevel};
use crate::klbasis::{canonical_basis_element, expand_in_standard, standard_basis_element};
use crate::torus::monomial::check_rank;
use crate::torus::{TorusElement, Vertex, YMonomial};

/// A strictly increasing map `ν: [1,n] → [1,ñ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IncreasingMap {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

impl IncreasingMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        let source = values.len();
        check_rank(source)?;
        check_rank(target)?;
        if source > target {
            return Err(Error::InvalidIncreasingMap(format!("{source} > {target}")));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIncreasingMap(format!("{values:?} is not strictly increasing")));
        }
        if values.first() < Some(&1) || values.last() > Some(&target) {
            return Err(Error::InvalidIncreasingMap(format!("{values:?} leaves [1,{target}]")));
        }
        Ok(Self { source, target, values })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, (1..=n).collect())
    }

    /// All increasing maps `[1,n] → [1,ñ]`, lexicographically.
    pub fn all(n: usize, target: usize) -> Result<Vec<Self>> {
        fn go(start: usize, left: usize, target: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for v in start..=target + 1 - left {
                cur.push(v);
                go(v + 1, left - 1, target, cur, out);
                cur.pop();
            }
        }
        check_rank(n)?;
        check_rank(target)?;
        let mut out = Vec::new();
        if n <= target {
            go(1, n, target, &mut Vec::new(), &mut out);
        }
        out.into_iter().map(|v| Self::new(target, v)).collect()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, a: usize) -> usize {
        self.values[a - 1]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &IncreasingMap) -> Result<IncreasingMap> {
        if inner.target != self.source {
            return Err(Error::RankMismatch { left: self.source, right: inner.target });
        }
        Self::new(self.target, inner.values.iter().map(|&a| self.at(a)).collect())
    }

    /// `ν_*(α_{a,b}) = α_{ν(a),ν(b)}`.
    pub fn root_map(&self, r: Root) -> Root {
        Root { a: self.at(r.a), b: self.at(r.b) }
    }
}

impl fmt::Debug for IncreasingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ν{:?}→{}", self.values, self.target)
    }
}

/// `ν_{ñ/n}(i) = ñi/n`.
pub fn brito_chari_nu(n: usize, target: usize) -> Result<IncreasingMap> {
    check_rank(n)?;
    if !target.is_multiple_of(n) {
        return Err(Error::Divisibility { source_rank: n, target });
    }
    IncreasingMap::new(target, (1..=n).map(|i| target * i / n).collect())
}

/// `Y_{i,p} ↦ Y_{i,p+2c}`.
pub fn spectral_shift(x: &TorusElement, c: i64) -> TorusElement {
    x.shifted(c)
}

/// The data `(ξ, ξ̃, ν)` of a quantum inflation `Ψ_{ξ̃,ν,ξ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumInflation {
    pub xi: HeightFunction,
    pub xi_tilde: HeightFunction,
    pub nu: IncreasingMap,
}

impl QuantumInflation {
    pub fn new(xi: HeightFunction, xi_tilde: HeightFunction, nu: IncreasingMap) -> Result<Self> {
        if !xi.is_increasing() || !xi_tilde.is_increasing() {
            return Err(Error::NotIncreasing);
        }
        if nu.source() != xi.rank() || nu.target() != xi_tilde.rank() {
            return Err(Error::RankMismatch { left: nu.source(), right: xi.rank() });
        }
        Ok(Self { xi, xi_tilde, nu })
    }

    /// Increasing height functions `i + 2c` and `i + 2c̃`.
    pub fn with_offsets(nu: IncreasingMap, c: i64, c_tilde: i64) -> Result<Self> {
        let xi = HeightFunction::increasing(nu.source(), c)?;
        let xi_tilde = HeightFunction::increasing(nu.target(), c_tilde)?;
        Self::new(xi, xi_tilde, nu)
    }

    pub fn source(&self) -> usize {
        self.xi.rank()
    }

    pub fn target(&self) -> usize {
        self.xi_tilde.rank()
    }

    /// `φ_ξ̃^{-1} ∘ (ν_* × id) ∘ φ_ξ`.
    pub fn psi_fundamental(&self, v: Vertex) -> Result<Vertex> {
        let RootLevel { root, level } = phi(&self.xi, v.i, v.p)?;
        phi_inv(&self.xi_tilde, RootLevel::new(self.nu.root_map(root), level))
    }

    /// Multiplicative extension over the whole monomial group.
    pub fn psi_monomial(&self, m: &YMonomial) -> Result<YMonomial> {
        if m.rank() != self.source() {
            return Err(Error::RankMismatch { left: m.rank(), right: self.source() });
        }
        let mut exps = Vec::with_capacity(m.len());
        for (v, e) in m.iter() {
            let w = self.psi_fundamental(v)?;
            exps.push((w.i, w.p, e));
        }
        YMonomial::from_exponents(self.target(), exps)
    }

    pub fn psi_dominant(&self, m: &YMonomial) -> Result<YMonomial> {
        if !m.is_dominant() {
            return Err(Error::NotDominant(m.to_string()));
        }
        self.psi_monomial(m)
    }

    /// `Σ c_m E_t(m) ↦ Σ c_m E_t(ψ(m))`.
    pub fn inflate_ring_element(&self, x: &TorusElement) -> Result<TorusElement> {
        if x.rank() != self.source() {
            return Err(Error::RankMismatch { left: x.rank(), right: self.source() });
        }
        let mut out = TorusElement::zero(self.target());
        for (m, c) in &expand_in_standard(x)?.coords {
            out.add_scaled(&*standard_basis_element(&self.psi_dominant(m)?)?, c)?;
        }
        Ok(out)
    }

    /// `Ψ(χ_{q,t}(L(m))) == χ_{q,t}(L(ψ(m)))`, both sides computed independently.
    pub fn verify_main_theorem(&self, m: &YMonomial) -> Result<bool> {
        let lhs = self.inflate_ring_element(&canonical_basis_element(m)?.body)?;
        let rhs = canonical_basis_element(&self.psi_dominant(m)?)?.body;
        Ok(lhs == rhs)
    }
}

pub fn psi_fundamental(
    xi: &HeightFunction,
    xi_tilde: &HeightFunction,
    nu: &IncreasingMap,
    v: Vertex,
) -> Result<Vertex> {
    QuantumInflation::new(xi.clone(), xi_tilde.clone(), nu.clone())?.psi_fundamental(v)
}

pub fn psi_dominant(
    xi: &HeightFunction,
    xi_tilde: &HeightFunction,
    nu: &IncreasingMap,
    m: &YMonomial,
) -> Result<YMonomial> {
    QuantumInflation::new(xi.clone(), xi_tilde.clone(), nu.clone())?.psi_dominant(m)
}

pub fn inflate_ring_element(
    xi: &HeightFunction,
    xi_tilde: &HeightFunction,
    nu: &IncreasingMap,
    x: &TorusElement,
) -> Result<TorusElement> {
    QuantumInflation::new(xi.clone(), xi_tilde.clone(), nu.clone())?.inflate_ring_element(x)
}

/// Returns `false` on mismatch or on any failure along either pipeline.
pub fn verify_main_theorem(
    xi: &HeightFunction,
    xi_tilde: &HeightFunction,
    nu: &IncreasingMap,
    m: &YMonomial,
) -> bool {
    QuantumInflation::new(xi.clone(), xi_tilde.clone(), nu.clone())
        .and_then(|q| q.verify_main_theorem(m))
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::pairing_n;
    use crate::qchar::fundamental_body;
    use std::collections::HashSet;

    fn infl(nu: &[usize], target: usize) -> QuantumInflation {
        QuantumInflation::with_offsets(IncreasingMap::new(target, nu.to_vec()).unwrap(), 0, 0).unwrap()
    }

    fn window(n: usize, lo: i64, hi: i64) -> Vec<Vertex> {
        (lo..=hi)
            .flat_map(|p| (1..n).map(move |i| Vertex::new(i, p)))
            .filter(|v| (v.p - v.i as i64).rem_euclid(2) == 0)
            .collect()
    }

    fn parse(n: usize, s: &str) -> YMonomial {
        YMonomial::parse(n, s).unwrap()
    }

    #[test]
    fn increasing_map_validation() {
        assert!(IncreasingMap::new(3, vec![1, 3]).is_ok());
        assert!(IncreasingMap::new(3, vec![2, 2]).is_err());
        assert!(IncreasingMap::new(3, vec![0, 2]).is_err());
        assert!(IncreasingMap::new(3, vec![1, 4]).is_err());
        assert!(IncreasingMap::new(2, vec![1, 2, 3]).is_err());
        assert_eq!(IncreasingMap::all(2, 3).unwrap().len(), 3);
        assert_eq!(IncreasingMap::all(3, 6).unwrap().len(), 20);
        assert_eq!(IncreasingMap::all(3, 3).unwrap(), vec![IncreasingMap::identity(3).unwrap()]);
    }

    #[test]
    fn brito_chari_maps() {
        assert_eq!(brito_chari_nu(2, 4).unwrap().values(), &[2, 4]);
        assert_eq!(brito_chari_nu(3, 6).unwrap().values(), &[2, 4, 6]);
        assert!(matches!(brito_chari_nu(2, 3), Err(Error::Divisibility { .. })));
    }

    #[test]
    fn rejects_non_increasing_height() {
        let xi = HeightFunction::new(3, vec![1, 0]).unwrap();
        let xt = HeightFunction::increasing(4, 0).unwrap();
        let nu = IncreasingMap::new(4, vec![1, 2, 3]).unwrap();
        assert_eq!(QuantumInflation::new(xi, xt, nu), Err(Error::NotIncreasing));
    }

    #[test]
    fn psi_examples() {
        let v = Vertex::new(1, 1);
        assert_eq!(infl(&[1, 2], 3).psi_fundamental(v).unwrap(), Vertex::new(2, 0));
        assert_eq!(infl(&[2, 3], 3).psi_fundamental(v).unwrap(), Vertex::new(2, 2));
        assert_eq!(infl(&[1, 3], 3).psi_fundamental(v).unwrap(), Vertex::new(1, 1));
        assert_eq!(infl(&[2, 4], 4).psi_fundamental(v).unwrap(), Vertex::new(2, 2));
        let q = infl(&[2, 4], 4);
        assert_eq!(q.psi_dominant(&parse(2, "Y[1,1]Y[1,3]")).unwrap(), parse(4, "Y[2,2]Y[2,6]"));
        assert!(q.psi_dominant(&YMonomial::one(2)).unwrap().is_one());
        assert!(q.psi_dominant(&parse(2, "Y[1,1]^-1")).is_err());
    }

    #[test]
    fn inflation_examples() {
        let q = infl(&[1, 3], 3);
        let x = fundamental_body(2, Vertex::new(1, 1)).unwrap();
        let y = q.inflate_ring_element(&x).unwrap();
        assert_eq!(y, fundamental_body(3, Vertex::new(1, 1)).unwrap());
        assert_eq!(y.len(), 3);
        assert_eq!(q.inflate_ring_element(&TorusElement::one(2)).unwrap(), TorusElement::one(3));
        let m = parse(2, "Y[1,1]Y[1,3]");
        let e = standard_basis_element(&m).unwrap();
        let want = standard_basis_element(&q.psi_dominant(&m).unwrap()).unwrap();
        assert_eq!(q.inflate_ring_element(&e).unwrap(), *want);
    }

    #[test]
    fn canonical_elements_inflate_to_canonical() {
        for nu in IncreasingMap::all(2, 3).unwrap() {
            let q = QuantumInflation::with_offsets(nu, 0, 0).unwrap();
            for s in ["Y[1,1]", "Y[1,1]Y[1,3]", "Y[1,1]Y[1,5]", "Y[1,-1]Y[1,3]"] {
                assert!(q.verify_main_theorem(&parse(2, s)).unwrap(), "{:?} {s}", q.nu);
            }
        }
        let q = infl(&[2, 4], 4);
        assert!(verify_main_theorem(&q.xi, &q.xi_tilde, &q.nu, &parse(2, "Y[1,1]Y[1,3]")));
    }

    #[test]
    fn brito_chari_identification() {
        for (n, nn) in [(2, 4), (3, 6), (2, 6)] {
            let q = QuantumInflation::with_offsets(brito_chari_nu(n, nn).unwrap(), 0, 0).unwrap();
            let r = (nn / n) as i64;
            for v in window(n, -5, 5) {
                let w = q.psi_fundamental(v).unwrap();
                assert_eq!(w, Vertex::new(v.i * nn / n, v.p * r), "{n}->{nn} {v:?}");
            }
        }
    }

    #[test]
    fn pairing_is_preserved() {
        for (n, nn) in [(2, 3), (3, 4), (2, 4), (3, 5)] {
            for nu in IncreasingMap::all(n, nn).unwrap() {
                let q = QuantumInflation::with_offsets(nu, 0, 1).unwrap();
                let vs = window(n, -4, 4);
                for &a in &vs {
                    for &b in &vs {
                        let (x, y) = (q.psi_fundamental(a).unwrap(), q.psi_fundamental(b).unwrap());
                        assert_eq!(pairing_n(n, a, b).unwrap(), pairing_n(nn, x, y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn functorial_and_injective() {
        for nu1 in IncreasingMap::all(2, 3).unwrap() {
            for nu2 in IncreasingMap::all(3, 5).unwrap() {
                let nu = nu2.compose(&nu1).unwrap();
                let q1 = QuantumInflation::with_offsets(nu1.clone(), 0, 1).unwrap();
                let q2 = QuantumInflation::with_offsets(nu2.clone(), 1, -1).unwrap();
                let q = QuantumInflation::with_offsets(nu, 0, -1).unwrap();
                let vs = window(2, -7, 7);
                let mut seen = HashSet::new();
                for &v in &vs {
                    let w = q.psi_fundamental(v).unwrap();
                    assert_eq!(q2.psi_fundamental(q1.psi_fundamental(v).unwrap()).unwrap(), w);
                    assert!(seen.insert(w), "{v:?} collides");
                }
            }
        }
    }

    #[test]
    fn offsets_are_spectral_shifts() {
        let base = infl(&[1, 3], 3);
        let q = QuantumInflation::with_offsets(base.nu.clone(), 2, -1).unwrap();
        for v in window(2, -5, 5) {
            let w = base.psi_fundamental(v).unwrap();
            assert_eq!(q.psi_fundamental(v.shifted(2)).unwrap(), w.shifted(-1));
        }
        let x = fundamental_body(2, Vertex::new(1, 1)).unwrap();
        assert_eq!(spectral_shift(&x, 1), fundamental_body(2, Vertex::new(1, 3)).unwrap());
    }
}
