//! Exact arithmetic in cyclotomic fields `Q(zeta_r) = Q[x]/Phi_r(x)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(r)-1)`,
//! which makes the representation canonical: two elements are equal iff
//! their coordinate vectors are equal. Binary operations on elements of
//! different orders first embed both operands into `Q(zeta_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Returns the `r`-th cyclotomic polynomial, coefficients from the constant
/// term upwards. Computed as `(x^r - 1) / prod_{d | r, d < r} Phi_d`.
pub fn cyclotomic_polynomial(r: u32) -> Vec<i64> {
    assert!(r >= 1, "cyclotomic polynomial of order 0");
    field(r).phi.clone()
}

fn compute_phi(r: u32) -> Vec<i64> {
    // x^r - 1
    let mut num: Vec<i128> = vec![0; r as usize + 1];
    num[0] = -1;
    num[r as usize] = 1;
    for d in 1..r {
        if r % d == 0 {
            let div: Vec<i128> = field(d).phi.iter().map(|&c| c as i128).collect();
            num = exact_div_monic(&num, &div);
        }
    }
    num.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qlen = rem.len() - dn;
    let mut quot = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Static data for one cyclotomic field.
#[derive(Debug)]
pub struct CycField {
    order: u32,
    /// `Phi_r`, monic, length `phi(r) + 1`.
    phi: Vec<i64>,
    /// `x^k mod Phi_r` for `0 <= k < r`, each of length `phi(r)`.
    powers: Vec<Vec<i64>>,
}

impl CycField {
    fn new(order: u32) -> Self {
        let phi = compute_phi(order);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, then reduce the x^deg term with the monic relation
            let top = cur[deg - 1];
            for j in (1..deg).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..deg {
                    cur[j] -= top * phi[j];
                }
            }
        }
        CycField {
            order,
            phi,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

fn field(order: u32) -> Arc<CycField> {
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = map.lock().unwrap().get(&order) {
        return f.clone();
    }
    // Built outside the lock: construction recurses into smaller orders.
    let built = Arc::new(CycField::new(order));
    map.lock()
        .unwrap()
        .entry(order)
        .or_insert(built)
        .clone()
}

/// An exact element of `Q(zeta_r)`.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    coeffs: Vec<Rat>,
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        let field = field(order);
        let coeffs = vec![Rat::zero(); field.degree()];
        CycNum { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rat(order, Rat::one())
    }

    pub fn from_rat(order: u32, q: Rat) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rat(order, Rat::from_integer(BigInt::from(n)))
    }

    /// `zeta_r^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let mut counts = vec![0i64; order as usize];
        counts[k.rem_euclid(order as i64) as usize] = 1;
        Self::from_power_counts(order, &counts)
    }

    /// `sum_k counts[k] * zeta_r^k`, with `counts.len() == r`.
    pub fn from_power_counts(order: u32, counts: &[i64]) -> Self {
        let f = field(order);
        assert_eq!(counts.len(), order as usize);
        let deg = f.degree();
        let mut acc = vec![0i128; deg];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &p) in acc.iter_mut().zip(&f.powers[k]) {
                    *a += c as i128 * p as i128;
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|a| Rat::from_integer(BigInt::from(a)))
            .collect();
        CycNum { field: f, coeffs }
    }

    /// Builds an element from power-basis coordinates (length `phi(r)`).
    pub fn from_coeffs(order: u32, coeffs: Vec<Rat>) -> Result<Self> {
        let f = field(order);
        if coeffs.len() != f.degree() {
            return Err(Error::Job(format!(
                "Q(zeta_{order}) needs {} coordinates, got {}",
                f.degree(),
                coeffs.len()
            )));
        }
        Ok(CycNum { field: f, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// True when every coordinate is an integer, i.e. the element lies in `Z[zeta_r]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Embeds into `Q(zeta_m)` for a multiple `m` of the current order.
    pub fn embed(&self, m: u32) -> Self {
        let r = self.order();
        assert!(m % r == 0, "cannot embed Q(zeta_{r}) into Q(zeta_{m})");
        if m == r {
            return self.clone();
        }
        let k = (m / r) as usize;
        let target = field(m);
        let mut out = vec![Rat::zero(); target.degree()];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &target.powers[(j * k) % m as usize];
            for (o, &pj) in out.iter_mut().zip(p) {
                if pj != 0 {
                    *o += c * Rat::from_integer(BigInt::from(pj));
                }
            }
        }
        CycNum {
            field: target,
            coeffs: out,
        }
    }

    fn lift_pair(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let m = a.order().lcm(&b.order());
        (a.embed(m), b.embed(m))
    }

    /// Complex conjugation, the automorphism `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let r = self.order() as usize;
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.field.powers[(r - j % r) % r];
            for (o, &pj) in out.iter_mut().zip(p) {
                if pj != 0 {
                    *o += c * Rat::from_integer(BigInt::from(pj));
                }
            }
        }
        CycNum {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let deg = self.coeffs.len();
        let r = self.order() as usize;
        let mut prod = vec![Rat::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rat> = prod.drain(..deg).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &self.field.powers[(k + deg) % r];
            for (o, &pj) in out.iter_mut().zip(p) {
                if pj != 0 {
                    *o += &c * Rat::from_integer(BigInt::from(pj));
                }
            }
        }
        CycNum {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm against `Phi_r`.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero {
                order: self.order(),
            });
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycNum::from_rat(self.order(), q.recip()));
        }
        let phi: Vec<Rat> = self
            .field
            .phi
            .iter()
            .map(|&c| Rat::from_integer(BigInt::from(c)))
            .collect();
        let s = poly_inverse_mod(&self.coeffs, &phi);
        let mut coeffs = vec![Rat::zero(); self.coeffs.len()];
        for (o, c) in coeffs.iter_mut().zip(s) {
            *o = c;
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, q: &Rat) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

fn trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_sub_scaled_shift(a: &mut Vec<Rat>, b: &[Rat], c: &Rat, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, Rat::zero());
    }
    for (j, bj) in b.iter().enumerate() {
        a[j + shift] -= c * bj;
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![Rat::zero()], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            poly_sub_scaled_shift(&mut rem, b, &c, k);
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quot, rem)
}

/// Inverse of `a` modulo `m` over `Q[x]`, assuming `gcd(a, m) = 1`.
fn poly_inverse_mod(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    // Invariant: s_i * a = r_i (mod m).
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![Rat::zero()];
    let mut s1 = vec![Rat::one()];
    while !(r1.len() == 1) {
        let (q, r) = poly_divmod(&r0, &r1);
        let qs = poly_mul(&q, &s1);
        let mut s2 = s0.clone();
        if s2.len() < qs.len() {
            s2.resize(qs.len(), Rat::zero());
        }
        for (x, y) in s2.iter_mut().zip(&qs) {
            *x -= y;
        }
        trim(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let c = r1[0].recip();
    let (_, s) = poly_divmod(&s1.iter().map(|x| x * &c).collect::<Vec<_>>(), m);
    s
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order() == other.order() {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = CycNum::lift_pair(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.order() != rhs.order() {
            let (a, b) = CycNum::lift_pair(self, rhs);
            return &a + &b;
        }
        CycNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.order() != rhs.order() {
            let (a, b) = CycNum::lift_pair(self, rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Div<&CycNum> for &CycNum {
    type Output = CycNum;
    /// Panics on division by zero; use [`CycNum::checked_div`] for a `Result`.
    fn div(self, rhs: &CycNum) -> CycNum {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.order() == rhs.order() {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if self.order() == rhs.order() {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.order())?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.order(), self)
    }
}
