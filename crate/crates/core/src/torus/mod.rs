//! Exact arithmetic in the quantum torus `𝒴_{n,t}`.

pub mod coeff;
pub mod element;
pub mod json;
pub mod monomial;

pub use coeff::TCoeff;
pub use element::{star_mul, star_product, CommutativePoly, TorusElement};
pub use monomial::{Vertex, YMonomial};

/// `m · m'` in the commutative group `𝓜_n`.
pub fn mono_mul(m: &YMonomial, m2: &YMonomial) -> crate::Result<YMonomial> {
    m.mul(m2)
}

/// The bar-involution.
pub fn bar(x: &TorusElement) -> TorusElement {
    x.bar()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(n: usize, s: &str) -> TorusElement {
        TorusElement::from_monomial(YMonomial::parse(n, s).unwrap())
    }

    #[test]
    fn star_examples() {
        let x = mono(2, "Y[1,3]").star(&mono(2, "Y[1,1]")).unwrap();
        let want = TorusElement::from_term(
            YMonomial::parse(2, "Y[1,1]Y[1,3]").unwrap(),
            TCoeff::t_pow(1),
        );
        assert_eq!(x, want);

        let y = mono(3, "Y[1,3]").star(&mono(3, "Y[2,2]")).unwrap();
        let want = TorusElement::from_term(
            YMonomial::parse(3, "Y[1,3]Y[2,2]").unwrap(),
            TCoeff::t_half_pow(-1),
        );
        assert_eq!(y, want);

        let z = &mono(3, "Y[1,1]Y[2,4]^-1") + &mono(3, "Y[2,2]");
        assert_eq!(TorusElement::one(3).star(&z).unwrap(), z);
        assert_eq!(z.star(&TorusElement::one(3)).unwrap(), z);
    }

    #[test]
    fn star_rank_mismatch() {
        assert!(mono(2, "Y[1,1]").star(&mono(3, "Y[1,1]")).is_err());
    }

    #[test]
    fn bar_examples() {
        let m = YMonomial::parse(2, "Y[1,1]").unwrap();
        let x = TorusElement::from_term(m.clone(), TCoeff::t_half_pow(1));
        assert_eq!(x.bar(), TorusElement::from_term(m.clone(), TCoeff::t_half_pow(-1)));
        let plain = TorusElement::from_monomial(m);
        assert_eq!(plain.bar(), plain);
        assert_eq!(x.bar().bar(), x);
    }

    const RANK: usize = 4;

    fn arb_monomial() -> impl Strategy<Value = YMonomial> {
        prop::collection::vec((1usize..RANK, -3i64..4, -2i64..3), 0..4).prop_map(|v| {
            YMonomial::from_exponents(
                RANK,
                v.into_iter().map(|(i, p, e)| (i, 2 * p + i as i64 % 2, e)),
            )
            .unwrap()
        })
    }

    fn arb_element() -> impl Strategy<Value = TorusElement> {
        prop::collection::vec((arb_monomial(), -3i64..4, -2i64..3), 0..4).prop_map(|v| {
            TorusElement::from_terms(
                RANK,
                v.into_iter().map(|(m, h, c)| (m, TCoeff::monomial(h, c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn star_is_associative(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            let (a, b, c) = (
                TorusElement::from_monomial(a),
                TorusElement::from_monomial(b),
                TorusElement::from_monomial(c),
            );
            let left = a.star(&b).unwrap().star(&c).unwrap();
            let right = a.star(&b.star(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn bar_is_anti_automorphism(x in arb_element(), y in arb_element()) {
            let lhs = x.star(&y).unwrap().bar();
            let rhs = y.bar().star(&x.bar()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_multiplicative(x in arb_element(), y in arb_element()) {
            let lhs = x.star(&y).unwrap().eval_t1();
            let rhs = x.eval_t1().mul(&y.eval_t1()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mono_mul_unit_and_inverse(m in arb_monomial()) {
            prop_assert_eq!(mono_mul(&m, &YMonomial::one(RANK)).unwrap(), m.clone());
            prop_assert!(mono_mul(&m, &m.inv()).unwrap().is_one());
        }

        #[test]
        fn json_roundtrip_is_bit_exact(x in arb_element()) {
            let s = x.to_json();
            let back = TorusElement::from_json(RANK, &s).unwrap();
            prop_assert_eq!(back.to_json(), s);
            prop_assert_eq!(back, x);
        }
    }
}
