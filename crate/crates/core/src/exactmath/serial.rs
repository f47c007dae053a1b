use serde::{Deserialize, Serialize};

use super::laurent::EvenLaurentPoly;
use super::rational::{format_fraction, parse_rational};
use crate::Result;

/// One term of a serialized polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub exponents: Vec<i32>,
    pub coefficient: String,
}

/// Stable JSON form of an [`EvenLaurentPoly`]: terms sorted by exponent
/// vector, coefficients as `num/den` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub arity: usize,
    pub terms: Vec<TermDocument>,
}

impl From<&EvenLaurentPoly> for PolyDocument {
    fn from(p: &EvenLaurentPoly) -> Self {
        PolyDocument {
            arity: p.arity(),
            terms: p
                .terms()
                .iter()
                .map(|(e, c)| TermDocument {
                    exponents: e.clone(),
                    coefficient: format_fraction(c),
                })
                .collect(),
        }
    }
}

impl PolyDocument {
    pub fn to_poly(&self) -> Result<EvenLaurentPoly> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.exponents.clone(), parse_rational(&t.coefficient)?)))
            .collect::<Result<Vec<_>>>()?;
        EvenLaurentPoly::from_terms(self.arity, terms)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
