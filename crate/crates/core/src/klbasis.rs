//! Standard and canonical bases of `K_t(𝒞_n)`.
//!
//! The canonical element `χ_{q,t}(L(m))` is obtained from `E_t(m)` by a
//! unitriangular fix-up: the bar-defect `E_t(m) - bar(E_t(m))` is expanded in
//! canonical elements of strictly lower dominant monomials (computed
//! recursively), and each coefficient `d` is split as `α - bar(α)` with `α`
//! the strictly negative part of `d`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::pairing::CartanData;
use crate::qchar::{a_variable, fundamental_body};
use crate::torus::monomial::{check_same_rank, Vertex};
use crate::torus::{star_product, CommutativePoly, TCoeff, TorusElement, YMonomial};

/// Coordinates of an element in the standard basis `{E_t(m)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardExpansion {
    pub rank: usize,
    pub coords: BTreeMap<YMonomial, TCoeff>,
}

impl StandardExpansion {
    pub fn coeff(&self, m: &YMonomial) -> TCoeff {
        self.coords.get(m).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    /// `Σ coeff · E_t(m)`.
    pub fn reassemble(&self) -> Result<TorusElement> {
        let mut out = TorusElement::zero(self.rank);
        for (m, c) in &self.coords {
            out.add_scaled(&*standard_basis_element(m)?, c)?;
        }
        Ok(out)
    }
}

/// `χ_{q,t}(L(m))` together with its highest monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalElement {
    pub rank: usize,
    pub top: YMonomial,
    pub body: TorusElement,
}

impl CanonicalElement {
    pub fn standard_expansion(&self) -> Result<StandardExpansion> {
        expand_in_standard(&self.body)
    }

    /// Bar-invariance and `t^{-1}Z[t^{-1}]`-triangularity against `E_t(top)`.
    pub fn satisfies_characterization(&self) -> Result<bool> {
        if self.body.bar() != self.body {
            return Ok(false);
        }
        let exp = self.standard_expansion()?;
        Ok(exp.coords.iter().all(|(m, c)| {
            if *m == self.top {
                c.is_one()
            } else {
                c.in_t_inv_z_t_inv()
            }
        }) && exp.coords.contains_key(&self.top))
    }
}

type Cache = RwLock<HashMap<YMonomial, Arc<TorusElement>>>;

fn standard_cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn canonical_cache() -> &'static Cache {
    static C: OnceLock<Cache> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn cached(
    cache: &'static Cache,
    m: &YMonomial,
    compute: impl FnOnce() -> Result<TorusElement>,
) -> Result<Arc<TorusElement>> {
    if let Some(x) = cache.read().unwrap().get(m) {
        return Ok(x.clone());
    }
    let x = Arc::new(compute()?);
    Ok(cache.write().unwrap().entry(m.clone()).or_insert(x).clone())
}

/// `t^{-Σ_{k<l} 𝒩(Y_k, Y_l)/2} χ(Y_1) * ⋯ * χ(Y_d)` for the factors in the given order.
pub fn standard_from_factors(n: usize, factors: &[Vertex]) -> Result<TorusElement> {
    let cartan = CartanData::for_rank(n)?;
    let mut twist = 0;
    for (k, a) in factors.iter().enumerate() {
        a.validate(n)?;
        for b in &factors[k + 1..] {
            twist += cartan.n_value(a.i, b.i, a.p - b.p);
        }
    }
    let bodies = factors
        .iter()
        .map(|v| fundamental_body(n, *v))
        .collect::<Result<Vec<_>>>()?;
    Ok(star_product(n, &bodies)?.scale(&TCoeff::t_half_pow(-twist)))
}

/// `E_t(m)` with factors ordered by `p` descending (then `i` ascending).
pub fn standard_basis_element(m: &YMonomial) -> Result<Arc<TorusElement>> {
    let factors = m.factors_descending()?;
    cached(standard_cache(), m, || standard_from_factors(m.rank(), &factors))
}

/// Solves `m2 · m1^{-1} = ∏ A_{i,s}^{v_{i,s}}`, returning `v` if it exists.
pub fn a_decomposition(m1: &YMonomial, m2: &YMonomial) -> Result<Option<BTreeMap<Vertex, i64>>> {
    check_same_rank(m1.rank(), m2.rank())?;
    let n = m1.rank();
    let mut q = m2.div(m1)?;
    let Some((_, p_max)) = q.p_range() else {
        return Ok(Some(BTreeMap::new()));
    };
    let mut v = BTreeMap::new();
    // The lowest variable Y_{i,p} can only come from A_{i,p+1}.
    loop {
        let Some((low, e)) = q.iter().next() else { break };
        let s = low.p + 1;
        if s >= p_max {
            return Ok(None);
        }
        v.insert(Vertex::new(low.i, s), e);
        q = q.mul_unchecked(&a_variable(n, low.i, s)?.pow(-e));
    }
    Ok(Some(v))
}

/// Nakajima order: `m1 ≤ m2` iff `m2 / m1` is a product of `A_{i,p}` with non-negative exponents.
pub fn nakajima_leq(m1: &YMonomial, m2: &YMonomial) -> Result<bool> {
    Ok(a_decomposition(m1, m2)?.is_some_and(|v| v.values().all(|e| *e >= 0)))
}

/// A Nakajima-maximal dominant monomial of `x`, first in canonical order among ties.
fn maximal_dominant(x: &TorusElement) -> Result<Option<YMonomial>> {
    let dominant: Vec<&YMonomial> = x.dominant_monomials().collect();
    for &m in &dominant {
        let mut maximal = true;
        for &other in &dominant {
            if other != m && nakajima_leq(m, other)? {
                maximal = false;
                break;
            }
        }
        if maximal {
            return Ok(Some(m.clone()));
        }
    }
    Ok(None)
}

/// Triangular elimination against a basis whose element for `m` has `m` as its
/// unique maximal dominant monomial with coefficient 1.
fn triangular_expand(
    x: &TorusElement,
    mut basis: impl FnMut(&YMonomial) -> Result<Arc<TorusElement>>,
) -> Result<BTreeMap<YMonomial, TCoeff>> {
    let mut residual = x.clone();
    let mut coords = BTreeMap::new();
    while !residual.is_zero() {
        let m = maximal_dominant(&residual)?.ok_or(Error::NotInSpan)?;
        let c = residual.coeff(&m);
        residual.add_scaled(&*basis(&m)?, &-&c)?;
        coords.insert(m, c);
    }
    Ok(coords)
}

/// Coordinates of `x` in the standard basis.
pub fn expand_in_standard(x: &TorusElement) -> Result<StandardExpansion> {
    Ok(StandardExpansion {
        rank: x.rank(),
        coords: triangular_expand(x, standard_basis_element)?,
    })
}

/// Coordinates of `x` in the canonical basis.
pub fn expand_in_canonical(x: &TorusElement) -> Result<BTreeMap<YMonomial, TCoeff>> {
    triangular_expand(x, canonical_body)
}

/// Makes `x` bar-invariant by subtracting `t^{-1/2}Z[t^{-1/2}]`-multiples of
/// canonical elements strictly below `top`.
pub fn bar_fixup(x: &TorusElement, top: &YMonomial) -> Result<TorusElement> {
    let mut residual = x - &x.bar();
    let mut correction = TorusElement::zero(x.rank());
    while !residual.is_zero() {
        let m = maximal_dominant(&residual)?.ok_or(Error::NotInSpan)?;
        if m == *top || !nakajima_leq(&m, top)? {
            return Err(Error::Precondition(format!(
                "bar-defect of element at {top} has a term at {m} not strictly below it"
            )));
        }
        let d = residual.coeff(&m);
        if d.bar() != -&d || !d.coeff(0).eq(&0.into()) {
            return Err(Error::NonzeroConstantDefect(d.to_string()));
        }
        let lower = canonical_body(&m)?;
        residual.add_scaled(&lower, &-&d)?;
        correction.add_scaled(&lower, &d.negative_part())?;
    }
    Ok(x - &correction)
}

/// Body of `χ_{q,t}(L(m))`, memoised.
pub fn canonical_body(m: &YMonomial) -> Result<Arc<TorusElement>> {
    if !m.is_dominant() {
        return Err(Error::NotDominant(m.to_string()));
    }
    cached(canonical_cache(), m, || bar_fixup(&*standard_basis_element(m)?, m))
}

/// `χ_{q,t}(L(m))`.
pub fn canonical_basis_element(m: &YMonomial) -> Result<CanonicalElement> {
    Ok(CanonicalElement {
        rank: m.rank(),
        top: m.clone(),
        body: (*canonical_body(m)?).clone(),
    })
}

/// Specialisation at `t^{1/2} = 1`.
pub fn evaluate_t1(x: &TorusElement) -> CommutativePoly {
    x.eval_t1()
}

/// `χ(Y_a) * χ(Y_b) == χ(Y_b) * χ(Y_a)`.
pub fn fundamentals_commute(n: usize, a: Vertex, b: Vertex) -> Result<bool> {
    let x = fundamental_body(n, a)?;
    let y = fundamental_body(n, b)?;
    Ok(x.star(&y)? == y.star(&x)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchar::frenkel_mukhin;

    fn parse(n: usize, s: &str) -> YMonomial {
        YMonomial::parse(n, s).unwrap()
    }

    fn element(n: usize, terms: &[(&str, TCoeff)]) -> TorusElement {
        TorusElement::from_terms(n, terms.iter().map(|(m, c)| (parse(n, m), c.clone()))).unwrap()
    }

    fn one() -> TCoeff {
        TCoeff::one()
    }

    #[test]
    fn standard_examples() {
        let m = parse(2, "Y[1,1]Y[1,3]");
        let e = standard_basis_element(&m).unwrap();
        let want = element(
            2,
            &[
                ("Y[1,1]Y[1,3]", one()),
                ("Y[1,1]Y[1,5]^-1", one()),
                ("Y[1,3]^-1Y[1,5]^-1", one()),
                ("1", TCoeff::t_pow(-1)),
            ],
        );
        assert_eq!(*e, want);
        assert_eq!(*standard_basis_element(&YMonomial::one(3)).unwrap(), TorusElement::one(3));
        let f = standard_basis_element(&parse(3, "Y[2,4]")).unwrap();
        assert_eq!(*f, fundamental_body(3, Vertex::new(2, 4)).unwrap());
        assert!(matches!(
            standard_basis_element(&parse(2, "Y[1,1]^-1")),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn standard_is_independent_of_tie_order() {
        // Y_{1,3} and Y_{3,3} share p = 3 in rank 4.
        let a = Vertex::new(1, 3);
        let b = Vertex::new(3, 3);
        let c = Vertex::new(2, 0);
        let x = standard_from_factors(4, &[a, b, c]).unwrap();
        let y = standard_from_factors(4, &[b, a, c]).unwrap();
        assert_eq!(x, y);
        assert_eq!(*standard_basis_element(&parse(4, "Y[1,3]Y[3,3]Y[2,0]")).unwrap(), x);
    }

    #[test]
    fn nakajima_examples() {
        let m = parse(2, "Y[1,1]Y[1,3]");
        assert!(nakajima_leq(&m, &m).unwrap());
        assert!(nakajima_leq(&YMonomial::one(2), &m).unwrap());
        assert!(!nakajima_leq(&m, &YMonomial::one(2)).unwrap());
        assert!(!nakajima_leq(&parse(2, "Y[1,1]"), &parse(2, "Y[1,3]")).unwrap());
        assert!(!nakajima_leq(&parse(2, "Y[1,3]"), &parse(2, "Y[1,1]")).unwrap());
        // Y_{1,1} Y_{1,5}^{-1} = Y_{1,1}Y_{1,3} · A_{1,4}^{-1}
        assert!(nakajima_leq(&parse(2, "Y[1,1]Y[1,5]^-1"), &m).unwrap());
    }

    #[test]
    fn expansion_examples() {
        let m = parse(2, "Y[1,1]Y[1,3]");
        let e = standard_basis_element(&m).unwrap();
        let exp = expand_in_standard(&e).unwrap();
        assert_eq!(exp.coords, BTreeMap::from([(m.clone(), one())]));

        let exp = expand_in_standard(&e.bar()).unwrap();
        let want = BTreeMap::from([
            (m.clone(), one()),
            (YMonomial::one(2), &TCoeff::t_pow(1) - &TCoeff::t_pow(-1)),
        ]);
        assert_eq!(exp.coords, want);
        assert_eq!(exp.reassemble().unwrap(), e.bar());

        assert!(expand_in_standard(&TorusElement::zero(3)).unwrap().is_empty());
    }

    #[test]
    fn not_in_span() {
        let x = TorusElement::from_monomial(parse(2, "Y[1,3]^-1"));
        assert_eq!(expand_in_standard(&x), Err(Error::NotInSpan));
    }

    #[test]
    fn canonical_examples() {
        let m = parse(2, "Y[1,1]Y[1,3]");
        let l = canonical_basis_element(&m).unwrap();
        let want = element(
            2,
            &[("Y[1,1]Y[1,3]", one()), ("Y[1,1]Y[1,5]^-1", one()), ("Y[1,3]^-1Y[1,5]^-1", one())],
        );
        assert_eq!(l.body, want);
        let exp = l.standard_expansion().unwrap();
        assert_eq!(exp.coeff(&YMonomial::one(2)), TCoeff::monomial(-2, -1));
        assert!(l.satisfies_characterization().unwrap());

        let f = canonical_basis_element(&parse(3, "Y[1,1]")).unwrap();
        assert_eq!(f.body, fundamental_body(3, Vertex::new(1, 1)).unwrap());
        assert_eq!(canonical_basis_element(&YMonomial::one(2)).unwrap().body, TorusElement::one(2));
    }

    #[test]
    fn fixup_is_idempotent() {
        for s in ["Y[1,1]Y[1,3]", "Y[1,1]Y[1,3]Y[1,5]", "Y[1,1]^2Y[1,3]"] {
            let m = parse(2, s);
            let l = canonical_basis_element(&m).unwrap();
            assert_eq!(bar_fixup(&l.body, &m).unwrap(), l.body);
        }
    }

    #[test]
    fn kr_modules_specialise_to_fm_characters() {
        let cases = [(2, "Y[1,1]Y[1,3]Y[1,5]"), (3, "Y[1,1]Y[1,3]"), (3, "Y[2,0]Y[2,2]"), (4, "Y[2,2]Y[2,4]")];
        for (n, s) in cases {
            let m = parse(n, s);
            let l = canonical_basis_element(&m).unwrap();
            assert!(l.satisfies_characterization().unwrap(), "{s}");
            assert_eq!(evaluate_t1(&l.body), frenkel_mukhin(&m).unwrap().eval_t1(), "{s}");
        }
    }

    #[test]
    fn evaluation_examples() {
        let x = TorusElement::from_term(parse(2, "Y[1,1]"), TCoeff::t_half_pow(1));
        assert_eq!(evaluate_t1(&x), TorusElement::from_monomial(parse(2, "Y[1,1]")).eval_t1());
        let e = standard_basis_element(&parse(2, "Y[1,1]Y[1,3]")).unwrap();
        let a = fundamental_body(2, Vertex::new(1, 1)).unwrap().eval_t1();
        let b = fundamental_body(2, Vertex::new(1, 3)).unwrap().eval_t1();
        assert_eq!(evaluate_t1(&e), a.mul(&b).unwrap());
        let l = canonical_basis_element(&parse(2, "Y[1,1]Y[1,3]")).unwrap();
        assert_eq!(evaluate_t1(&l.body).len(), 3);
    }

    #[test]
    fn canonical_is_unitriangular() {
        for s in ["Y[1,1]Y[2,2]", "Y[1,1]Y[1,5]", "Y[1,1]Y[2,4]", "Y[1,3]Y[2,2]^2"] {
            let m = parse(3, s);
            let l = canonical_basis_element(&m).unwrap();
            assert!(l.satisfies_characterization().unwrap(), "{s}");
            for m2 in l.standard_expansion().unwrap().coords.keys() {
                assert!(nakajima_leq(m2, &m).unwrap(), "{m2} not below {m}");
            }
        }
    }
}
