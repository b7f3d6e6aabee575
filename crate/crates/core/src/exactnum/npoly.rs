use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::{CycNum, Rat};

/// A polynomial in the formal variable `n` with coefficients in `Q(zeta_r)`.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has no coefficients and `degree()` is `None`.
#[derive(Clone)]
pub struct NPoly {
    order: u32,
    coeffs: Vec<CycNum>,
}

impl NPoly {
    pub fn zero(order: u32) -> Self {
        NPoly {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: CycNum) -> Self {
        Self::from_coeffs(c.order(), vec![c])
    }

    /// The monomial `c * n^k`.
    pub fn monomial(c: CycNum, k: usize) -> Self {
        let order = c.order();
        let mut coeffs = vec![CycNum::zero(order); k];
        coeffs.push(c);
        Self::from_coeffs(order, coeffs)
    }

    pub fn from_coeffs(order: u32, coeffs: Vec<CycNum>) -> Self {
        let order = coeffs.iter().fold(order, |acc, c| lcm(acc, c.order()));
        let mut p = NPoly {
            order,
            coeffs: coeffs.into_iter().map(|c| c.embed(order)).collect(),
        };
        p.strip();
        p
    }

    fn strip(&mut self) {
        while self.coeffs.last().is_some_and(CycNum::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `n^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> CycNum {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| CycNum::zero(self.order))
    }

    pub fn leading(&self) -> Option<&CycNum> {
        self.coeffs.last()
    }

    /// True when the polynomial is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, n: i64) -> CycNum {
        let x = Rat::from_integer(BigInt::from(n));
        let mut acc = CycNum::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(&x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &CycNum) -> NPoly {
        NPoly::from_coeffs(
            lcm(self.order, c.order()),
            self.coeffs.iter().map(|a| a * c).collect(),
        )
    }

    pub fn scale_rat(&self, q: &Rat) -> NPoly {
        NPoly::from_coeffs(self.order, self.coeffs.iter().map(|a| a.scale(q)).collect())
    }

    /// Substitutes `n -> a*n + b` for rationals `a`, `b`.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> NPoly {
        let lin = NPoly::from_coeffs(
            1,
            vec![CycNum::from_rat(1, b.clone()), CycNum::from_rat(1, a.clone())],
        );
        let mut acc = NPoly::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &NPoly::constant(c.clone());
        }
        acc
    }
}

impl PartialEq for NPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }
}

impl Eq for NPoly {}

fn lcm(a: u32, b: u32) -> u32 {
    num_integer::lcm(a, b)
}

impl<'a> Add<&'a NPoly> for &'a NPoly {
    type Output = NPoly;
    fn add(self, rhs: &NPoly) -> NPoly {
        let order = lcm(self.order, rhs.order);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        NPoly::from_coeffs(order, coeffs)
    }
}

impl<'a> Sub<&'a NPoly> for &'a NPoly {
    type Output = NPoly;
    fn sub(self, rhs: &NPoly) -> NPoly {
        self + &(-rhs)
    }
}

impl Neg for &NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        NPoly {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a NPoly> for &'a NPoly {
    type Output = NPoly;
    fn mul(self, rhs: &NPoly) -> NPoly {
        let order = lcm(self.order, rhs.order);
        if self.is_zero() || rhs.is_zero() {
            return NPoly::zero(order);
        }
        let mut coeffs = vec![CycNum::zero(order); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        NPoly::from_coeffs(order, coeffs)
    }
}

impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*n")?,
                _ => write!(f, "({c})*n^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NPoly[{}]({})", self.order, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn degree_strips_trailing_zeros() {
        let p = NPoly::from_coeffs(
            3,
            vec![CycNum::one(3), CycNum::zero(3), CycNum::zero(3)],
        );
        assert_eq!(p.degree(), Some(0));
        assert_eq!(NPoly::zero(3).degree(), None);
        let cancel = &p - &p;
        assert!(cancel.is_zero());
    }

    #[test]
    fn eval_and_compose() {
        // p(n) = 1 + 2n + n^2 = (n + 1)^2
        let p = NPoly::from_coeffs(
            1,
            vec![CycNum::from_int(1, 1), CycNum::from_int(1, 2), CycNum::from_int(1, 1)],
        );
        assert_eq!(p.eval(3), CycNum::from_int(1, 16));
        // p(2m - 1) = 4 m^2
        let c = p.compose_affine(&q(2, 1), &q(-1, 1));
        assert_eq!(c, NPoly::monomial(CycNum::from_int(1, 4), 2));
    }
}
