//! Finite-order torus elements `t = exp(2 pi i x)` and their centralizers.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactnum::{rat, CycNum, Rat};
use crate::rootdata::{pair, Group, RootDatum};

/// A torus element of finite order, encoded by a rational cocharacter `x`
/// reduced modulo the cocharacter lattice.
///
/// Stored as `x = numerators / order` with every numerator in `[0, order)`
/// and `order` equal to the true order of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorsionElement {
    order: u32,
    numerators: Vec<i64>,
}

impl TorsionElement {
    /// `x = numerators / order` in the cocharacter basis; the order is
    /// reduced to the true order of `t`.
    pub fn new(order: u32, numerators: &[i64]) -> Result<Self> {
        if order == 0 {
            return Err(Error::MalformedTorsion("order must be at least 1".into()));
        }
        let r = order as i64;
        let reduced: Vec<i64> = numerators.iter().map(|k| k.rem_euclid(r)).collect();
        let g = reduced.iter().fold(r, |g, &k| g.gcd(&k));
        Ok(TorsionElement {
            order: (r / g) as u32,
            numerators: reduced.iter().map(|k| k / g).collect(),
        })
    }

    pub fn identity(lattice_rank: usize) -> Self {
        TorsionElement {
            order: 1,
            numerators: vec![0; lattice_rank],
        }
    }

    /// Builds a torsion element and checks it against the datum's lattice rank.
    pub fn for_datum(d: &RootDatum, order: u32, numerators: &[i64]) -> Result<Self> {
        if numerators.len() != d.lattice_rank() {
            return Err(Error::MalformedTorsion(format!(
                "{} numerators given, cocharacter lattice has rank {}",
                numerators.len(),
                d.lattice_rank()
            )));
        }
        Self::new(order, numerators)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn x(&self) -> Vec<Rat> {
        self.numerators
            .iter()
            .map(|&k| rat(k, self.order as i64))
            .collect()
    }

    /// Exponent `k` in `e^mu(t) = zeta_r^k`, reduced to `[0, r)`.
    pub fn exponent(&self, mu: &[i64]) -> i64 {
        pair(mu, &self.numerators).rem_euclid(self.order as i64)
    }

    /// `e^mu(t)` as an element of `Q(zeta_r)`.
    pub fn eval_weight(&self, mu: &[i64]) -> Result<CycNum> {
        if mu.len() != self.numerators.len() {
            return Err(Error::MalformedTorsion(format!(
                "weight {mu:?} does not match cocharacter rank {}",
                self.numerators.len()
            )));
        }
        Ok(CycNum::zeta_pow(self.order, self.exponent(mu)))
    }

    /// `t^{-1}`: `x -> -x` modulo the lattice.
    pub fn invert(&self) -> Self {
        let r = self.order as i64;
        TorsionElement {
            order: self.order,
            numerators: self.numerators.iter().map(|k| (-k).rem_euclid(r)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// Regular: no root is trivial on `t`.
    pub fn is_regular(&self, d: &RootDatum) -> bool {
        d.roots().iter().all(|r| self.exponent(&r.vector) != 0)
    }

    pub fn fixes_root(&self, d: &RootDatum, j: usize) -> bool {
        self.exponent(&d.root(j).vector) == 0
    }
}

/// Root data of the identity component `(G^t)°` of the centralizer.
#[derive(Clone, Debug)]
pub struct CentralizerData {
    /// `R' = { alpha : e^alpha(t) = 1 }`, as root indices.
    pub roots: Vec<usize>,
    /// `R'+ = R' ∩ R+`.
    pub positive: Vec<usize>,
    /// `rho'`, half the sum of `R'+`.
    pub rho_prime: Vec<Rat>,
    /// `W' = <s_alpha : alpha in R'>`, as element indices into the Weyl group.
    pub weyl: Vec<usize>,
}

impl CentralizerData {
    pub fn contains_root(&self, j: usize) -> bool {
        self.roots.binary_search(&j).is_ok()
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn contains_weyl(&self, w: usize) -> bool {
        self.weyl.binary_search(&w).is_ok()
    }
}

pub fn centralizer(g: &Group, t: &TorsionElement) -> CentralizerData {
    let d = &g.datum;
    let roots: Vec<usize> = (0..d.roots().len())
        .filter(|&j| t.fixes_root(d, j))
        .collect();
    let positive: Vec<usize> = roots.iter().copied().filter(|&j| d.is_positive(j)).collect();
    let mut two_rho = vec![0i64; d.lattice_rank()];
    for &j in &positive {
        for (a, b) in two_rho.iter_mut().zip(&d.root(j).vector) {
            *a += b;
        }
    }
    let weyl = g.weyl.reflection_subgroup(d, &positive);
    CentralizerData {
        roots,
        positive,
        rho_prime: two_rho.into_iter().map(|c| rat(c, 2)).collect(),
        weyl,
    }
}
