use std::fmt;

use num_bigint::BigInt;

use super::{CycNum, NPoly, Rat};
use crate::error::{Error, Result};

/// A truncated Laurent series in the localization parameter `eps`, with
/// coefficients in `Q(zeta_r)[n]`.
///
/// `coeffs[i]` is the coefficient of `eps^(valuation + i)`. Coefficients
/// above [`EpsSeries::truncation_order`] are unknown and never read.
#[derive(Clone, PartialEq, Eq)]
pub struct EpsSeries {
    order: u32,
    valuation: i32,
    coeffs: Vec<NPoly>,
}

impl EpsSeries {
    pub fn new(order: u32, valuation: i32, coeffs: Vec<NPoly>) -> Self {
        let order = coeffs
            .iter()
            .fold(order, |acc, c| num_integer::lcm(acc, c.order()));
        EpsSeries {
            order,
            valuation,
            coeffs,
        }
    }

    pub fn from_constants(order: u32, valuation: i32, coeffs: Vec<CycNum>) -> Self {
        Self::new(
            order,
            valuation,
            coeffs.into_iter().map(NPoly::constant).collect(),
        )
    }

    /// The constant series `c`, known up to `eps^truncation_order`.
    pub fn constant(c: CycNum, truncation_order: i32) -> Self {
        let order = c.order();
        let mut coeffs = vec![NPoly::zero(order); (truncation_order + 1).max(0) as usize];
        if let Some(first) = coeffs.first_mut() {
            *first = NPoly::constant(c);
        }
        EpsSeries::new(order, 0, coeffs)
    }

    pub fn one(order: u32, truncation_order: i32) -> Self {
        Self::constant(CycNum::one(order), truncation_order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn valuation(&self) -> i32 {
        self.valuation
    }

    /// Highest exponent whose coefficient is known.
    pub fn truncation_order(&self) -> i32 {
        self.valuation + self.coeffs.len() as i32 - 1
    }

    pub fn coefficient_at(&self, k: i32) -> Result<NPoly> {
        if k > self.truncation_order() {
            return Err(Error::Truncated(k));
        }
        if k < self.valuation {
            return Ok(NPoly::zero(self.order));
        }
        Ok(self.coeffs[(k - self.valuation) as usize].clone())
    }

    /// Drops exactly-zero leading coefficients, raising the valuation.
    pub fn strip_leading_zeros(&self) -> EpsSeries {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        EpsSeries {
            order: self.order,
            valuation: self.valuation + skip as i32,
            coeffs: self.coeffs[skip..].to_vec(),
        }
    }

    /// Multiplies by `eps^k`.
    pub fn shift(&self, k: i32) -> EpsSeries {
        EpsSeries {
            order: self.order,
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> EpsSeries {
        EpsSeries::new(
            num_integer::lcm(self.order, c.order()),
            self.valuation,
            self.coeffs.iter().map(|p| p.scale(c)).collect(),
        )
    }

    pub fn mul(&self, other: &EpsSeries) -> EpsSeries {
        let order = num_integer::lcm(self.order, other.order);
        let valuation = self.valuation + other.valuation;
        let trunc = (self.truncation_order() + other.valuation)
            .min(other.truncation_order() + self.valuation);
        let len = (trunc - valuation + 1).max(0) as usize;
        let mut coeffs = vec![NPoly::zero(order); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        EpsSeries::new(order, valuation, coeffs)
    }

    pub fn add(&self, other: &EpsSeries) -> EpsSeries {
        let order = num_integer::lcm(self.order, other.order);
        let valuation = self.valuation.min(other.valuation);
        let trunc = self.truncation_order().min(other.truncation_order());
        let coeffs = (valuation..=trunc)
            .map(|k| {
                let a = self.coefficient_at(k).expect("within truncation");
                let b = other.coefficient_at(k).expect("within truncation");
                &a + &b
            })
            .collect();
        EpsSeries::new(order, valuation, coeffs)
    }

    /// Inverse of a series whose coefficient at its valuation is a nonzero
    /// constant. The result has valuation `-valuation` and is known up to
    /// `truncation_order - 2 * valuation`.
    pub fn inv(&self) -> Result<EpsSeries> {
        let lead = self
            .coeffs
            .first()
            .ok_or_else(|| Error::NonUnitSeries("series has no known coefficients".into()))?;
        if !lead.is_constant() {
            return Err(Error::NonUnitSeries(
                "leading coefficient depends on n".into(),
            ));
        }
        if lead.is_zero() {
            return Err(Error::NonUnitSeries("leading coefficient is zero".into()));
        }
        let lead_inv = lead.coeff(0).inv()?;
        let neg_lead_inv = -&lead_inv;
        let len = self.coeffs.len();
        let mut out: Vec<NPoly> = Vec::with_capacity(len);
        out.push(NPoly::constant(lead_inv));
        for k in 1..len {
            let mut acc = NPoly::zero(self.order);
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() && !out[k - j].is_zero() {
                    acc = &acc + &(a * &out[k - j]);
                }
            }
            out.push(acc.scale(&neg_lead_inv));
        }
        Ok(EpsSeries::new(self.order, -self.valuation, out))
    }

    /// `exp((c * n + c0) * eps)`, known up to `eps^truncation_order`.
    pub fn exp_linear(c: &CycNum, c0: &CycNum, truncation_order: i32) -> EpsSeries {
        let order = num_integer::lcm(c.order(), c0.order());
        let lin = NPoly::from_coeffs(order, vec![c0.clone(), c.clone()]);
        let mut coeffs = Vec::new();
        let mut power = NPoly::constant(CycNum::one(order));
        let mut factorial = BigInt::from(1);
        for k in 0..=truncation_order.max(-1) {
            if k > 0 {
                power = &power * &lin;
                factorial *= k;
            }
            coeffs.push(power.scale_rat(&Rat::new(1.into(), factorial.clone())));
        }
        EpsSeries::new(order, 0, coeffs)
    }

    /// `1 - exp(a * eps)` for a constant `a`, with the zero constant term
    /// stripped (valuation 1 when `a != 0`).
    pub fn one_minus_exp(a: &CycNum, truncation_order: i32) -> EpsSeries {
        let zero = CycNum::zero(a.order());
        let e = EpsSeries::exp_linear(&zero, a, truncation_order);
        EpsSeries::one(a.order(), truncation_order)
            .add(&e.scale(&CycNum::from_int(1, -1)))
            .strip_leading_zeros()
    }
}

impl fmt::Debug for EpsSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EpsSeries[{}](", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]*e^{}", self.valuation + i as i32)?;
        }
        write!(f, " + O(e^{}))", self.truncation_order() + 1)
    }
}
