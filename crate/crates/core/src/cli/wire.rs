//! JSON encodings of exact values.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, NPoly, Rat};

/// `{order, coeffs: [[num, den], ...]}` over the power basis of `Q(zeta_order)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycWire {
    pub order: u32,
    pub coeffs: Vec<[Number; 2]>,
}

fn int_number(n: &BigInt) -> Number {
    n.to_string().parse().expect("integers are valid JSON numbers")
}

fn number_int(n: &Number) -> Result<BigInt> {
    n.to_string()
        .parse()
        .map_err(|_| Error::Job(format!("expected an integer, found {n}")))
}

impl From<&CycNum> for CycWire {
    fn from(c: &CycNum) -> Self {
        CycWire {
            order: c.order(),
            coeffs: c
                .coeffs()
                .iter()
                .map(|q| [int_number(q.numer()), int_number(q.denom())])
                .collect(),
        }
    }
}

impl TryFrom<&CycWire> for CycNum {
    type Error = Error;

    fn try_from(w: &CycWire) -> Result<CycNum> {
        let coeffs = w
            .coeffs
            .iter()
            .map(|[n, d]| {
                let d = number_int(d)?;
                if d == BigInt::from(0) {
                    return Err(Error::Job("zero denominator".into()));
                }
                Ok(Rat::new(number_int(n)?, d))
            })
            .collect::<Result<Vec<_>>>()?;
        CycNum::from_coeffs(w.order, coeffs)
    }
}

/// Polynomial in `n`, coefficients listed by increasing power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyWire {
    pub degree: Option<usize>,
    pub coeffs: Vec<CycWire>,
    /// Human-readable form, e.g. `(1/2)*n^2 + 1`.
    pub text: String,
}

impl From<&NPoly> for PolyWire {
    fn from(p: &NPoly) -> Self {
        PolyWire {
            degree: p.degree(),
            coeffs: p.coeffs().iter().map(CycWire::from).collect(),
            text: p.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn round_trip_is_exact() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let c = CycNum::from_coeffs(
            5,
            vec![Rat::new(big.clone(), 7.into()), rat(-3, 4), rat(0, 1), Rat::from_integer(-big)],
        )
        .unwrap();
        let wire = CycWire::from(&c);
        let json = serde_json::to_string(&wire).unwrap();
        assert!(json.contains("123456789012345678901234567890"));
        let back: CycWire = serde_json::from_str(&json).unwrap();
        assert_eq!(CycNum::try_from(&back).unwrap(), c);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn rejects_wrong_length() {
        let w = CycWire {
            order: 4,
            coeffs: vec![[1.into(), 1.into()]],
        };
        assert!(CycNum::try_from(&w).is_err());
    }
}
