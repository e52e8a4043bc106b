//! JSON encoding of torus elements.
//!
//! An element is a list of terms `{"monomial": [[i,p,exp],...], "coeff": [[halfExp,"int"],...]}`
//! in canonical monomial order; coefficients are decimal strings so arbitrary
//! precision survives.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{TCoeff, TorusElement, YMonomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<(usize, i64, i64)>,
    pub coeff: Vec<(i64, String)>,
}

pub fn monomial_to_json(m: &YMonomial) -> Vec<(usize, i64, i64)> {
    m.iter().map(|(v, e)| (v.i, v.p, e)).collect()
}

pub fn coeff_to_json(c: &TCoeff) -> Vec<(i64, String)> {
    c.terms().map(|(h, x)| (h, x.to_string())).collect()
}

pub fn coeff_from_json(c: &[(i64, String)]) -> Result<TCoeff> {
    let mut out = TCoeff::zero();
    for (h, s) in c {
        let x: BigInt = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
        out.add_term(*h, x);
    }
    Ok(out)
}

pub fn element_to_terms(x: &TorusElement) -> Vec<TermJson> {
    x.terms()
        .map(|(m, c)| TermJson { monomial: monomial_to_json(m), coeff: coeff_to_json(c) })
        .collect()
}

pub fn element_from_terms(rank: usize, terms: &[TermJson]) -> Result<TorusElement> {
    let mut out = TorusElement::zero(rank);
    for t in terms {
        let m = YMonomial::from_exponents(rank, t.monomial.iter().copied())?;
        out.add_term(m, &coeff_from_json(&t.coeff)?);
    }
    Ok(out)
}

impl TorusElement {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&element_to_terms(self)).expect("serialising plain data")
    }

    /// Parses the list encoding; the rank is not part of the encoding.
    pub fn from_json(rank: usize, s: &str) -> Result<TorusElement> {
        let terms: Vec<TermJson> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        element_from_terms(rank, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_shape() {
        let m = YMonomial::parse(2, "Y[1,1]Y[1,3]").unwrap();
        let c = TCoeff::from_terms([(-2, BigInt::from(-1)), (1, BigInt::from(7))]);
        let x = &TorusElement::from_term(m, c) + &TorusElement::one(2);
        assert_eq!(
            x.to_json(),
            r#"[{"monomial":[],"coeff":[[0,"1"]]},{"monomial":[[1,1,1],[1,3,1]],"coeff":[[-2,"-1"],[1,"7"]]}]"#
        );
        assert_eq!(TorusElement::zero(3).to_json(), "[]");
    }

    #[test]
    fn big_coefficients_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let x = TorusElement::from_coeff(3, TCoeff::monomial(3, big));
        let s = x.to_json();
        assert_eq!(TorusElement::from_json(3, &s).unwrap(), x);
    }

    #[test]
    fn rejects_invalid_vertices() {
        assert!(TorusElement::from_json(2, r#"[{"monomial":[[1,2,1]],"coeff":[[0,"1"]]}]"#).is_err());
        assert!(TorusElement::from_json(2, r#"[{"monomial":[],"coeff":[[0,"x"]]}]"#).is_err());
    }
}
