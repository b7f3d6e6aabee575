//! Per-component contributions to `ch(t^{-1}, V(n lambda))`, evaluated by
//! torus localization on each fixed component, and their leading terms.

mod degree;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::{rat, CycNum, EpsSeries, NPoly, Rat};
use crate::fixedlocus::{FixedComponent, FixedLocus};
use crate::rootdata::{check_extends, pair, parabolic_for_lambda, Group, ParabolicSpec, RootDatum};
use crate::torus::TorsionElement;

pub use degree::{DegreeReport, ResidueDegree};

/// Highest `eps` exponent carried through the localization: the constant
/// term plus one guard term.
const GUARD: i32 = 1;

/// Attempts made when searching for a perturbed generic cocharacter.
const MAX_H_ATTEMPTS: usize = 64;

/// A polynomial in `n` valid on the residue class `n ≡ residue (mod r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolynomial {
    pub residue: u32,
    pub modulus: u32,
    pub poly: NPoly,
    /// Reduced word of `v` for a single component; `None` for the total.
    pub component: Option<Vec<usize>>,
}

impl CharPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn eval(&self, n: i64) -> CycNum {
        debug_assert_eq!(n.rem_euclid(self.modulus as i64), self.residue as i64);
        self.poly.eval(n)
    }
}

/// `2 rho^vee`, the sum of the positive coroots.
pub fn default_cocharacter(d: &RootDatum) -> Vec<i64> {
    d.rho_vee()
        .iter()
        .map(|c| (c * rat(2, 1)).to_integer().try_into().expect("small coweight"))
        .collect()
}

pub fn is_generic(d: &RootDatum, h: &[i64]) -> bool {
    d.positive_roots().all(|j| pair(&d.root(j).vector, h) != 0)
}

/// `2 rho^vee + k u` for the first `k >= 1` giving a generic cocharacter,
/// with `u` a small nonzero integer vector drawn from `seed`.
pub fn perturbed_cocharacter(d: &RootDatum, seed: u64) -> Result<Vec<i64>> {
    let base = default_cocharacter(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Vec<i64> = loop {
        let u: Vec<i64> = (0..d.lattice_rank()).map(|_| rng.gen_range(-3..=3)).collect();
        if u.iter().any(|&x| x != 0) {
            break u;
        }
    };
    (1..=MAX_H_ATTEMPTS as i64)
        .map(|k| base.iter().zip(&u).map(|(b, x)| b + k * x).collect::<Vec<i64>>())
        .find(|h| is_generic(d, h))
        .ok_or(Error::NonGenericCocharacter(MAX_H_ATTEMPTS))
}

/// One torus-fixed point `wP` of a component, with its `n`-independent
/// localization factor.
#[derive(Clone, Debug)]
struct FixedPoint {
    w: usize,
    /// `prod_tangent 1/(1 - e^{-<gamma,h> eps}) * prod_normal 1/(1 - e^beta(t) e^{<beta,h> eps})`.
    factor: EpsSeries,
}

/// Localization data of one fixed component.
#[derive(Clone, Debug)]
pub struct ComponentLocalization {
    pub component: FixedComponent,
    points: Vec<FixedPoint>,
}

impl ComponentLocalization {
    pub fn fixed_points(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.w).collect()
    }
}

/// The localization engine for one `(G, P, t)` and a fixed generic cocharacter `h`.
#[derive(Clone, Debug)]
pub struct LocalizationContext<'g> {
    group: &'g Group,
    locus: FixedLocus,
    h: Vec<i64>,
    components: Vec<ComponentLocalization>,
}

impl<'g> LocalizationContext<'g> {
    pub fn new(g: &'g Group, p: &ParabolicSpec, t: &TorsionElement, h: Vec<i64>) -> Result<Self> {
        let d = &g.datum;
        if h.len() != d.lattice_rank() || !is_generic(d, &h) {
            return Err(Error::NonGenericCocharacter(1));
        }
        let locus = FixedLocus::new(g, p, t);
        let components = locus
            .components
            .iter()
            .map(|c| localize_component(g, &locus, c, &h))
            .collect::<Result<Vec<_>>>()?;
        Ok(LocalizationContext {
            group: g,
            locus,
            h,
            components,
        })
    }

    pub fn with_default_h(g: &'g Group, p: &ParabolicSpec, t: &TorsionElement) -> Result<Self> {
        Self::new(g, p, t, default_cocharacter(&g.datum))
    }

    pub fn group(&self) -> &Group {
        self.group
    }

    pub fn locus(&self) -> &FixedLocus {
        &self.locus
    }

    pub fn cocharacter(&self) -> &[i64] {
        &self.h
    }

    pub fn components(&self) -> &[ComponentLocalization] {
        &self.components
    }

    pub fn t(&self) -> &TorsionElement {
        &self.locus.t
    }

    pub fn modulus(&self) -> u32 {
        self.locus.t.order()
    }

    fn check_weight(&self, lambda: &[i64]) -> Result<()> {
        let d = &self.group.datum;
        if lambda.len() != d.lattice_rank() {
            return Err(Error::Job(format!(
                "weight {lambda:?} does not match lattice rank {}",
                d.lattice_rank()
            )));
        }
        if !d.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        check_extends(d, &self.locus.parabolic, lambda)
    }

    /// `e^{-p v lambda}(t)`.
    fn twist(&self, v: usize, lambda: &[i64], residue: u32) -> CycNum {
        let vl = self.group.weyl.act(v, lambda);
        let k = -(residue as i64) * self.locus.t.exponent(&vl);
        CycNum::zeta_pow(self.modulus(), k)
    }

    /// The polynomial `D_v(n)` on `n ≡ residue (mod r)` for component `idx`.
    pub fn component_polynomial(&self, idx: usize, lambda: &[i64], residue: u32) -> Result<CharPolynomial> {
        self.check_weight(lambda)?;
        self.check_residue(residue)?;
        let comp = &self.components[idx];
        let dim = comp.component.dim as i32;
        let mut total: Option<EpsSeries> = None;
        for pt in &comp.points {
            let wl = self.group.weyl.act(pt.w, lambda);
            let slope = CycNum::from_int(1, -pair(&wl, &self.h));
            let e = EpsSeries::exp_linear(&slope, &CycNum::zero(1), GUARD + dim);
            let term = e.mul(&pt.factor);
            total = Some(match total {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
        let total = total.expect("every component has a fixed point");
        for k in total.valuation()..0 {
            if !total.coefficient_at(k)?.is_zero() {
                return Err(Error::PoleCancellation {
                    word: comp.component.word.clone(),
                    order: k,
                });
            }
        }
        let poly = total
            .coefficient_at(0)?
            .scale(&self.twist(comp.component.v, lambda, residue));
        Ok(CharPolynomial {
            residue,
            modulus: self.modulus(),
            poly,
            component: Some(comp.component.word.clone()),
        })
    }

    /// `sum_v D_v(n)` on the residue class.
    pub fn total_polynomial(&self, lambda: &[i64], residue: u32) -> Result<CharPolynomial> {
        let mut poly = NPoly::zero(self.modulus());
        for idx in 0..self.components.len() {
            poly = &poly + &self.component_polynomial(idx, lambda, residue)?.poly;
        }
        Ok(CharPolynomial {
            residue,
            modulus: self.modulus(),
            poly,
            component: None,
        })
    }

    /// `ch(t^{-1}, V(n lambda))`.
    pub fn character(&self, lambda: &[i64], n: i64) -> Result<CycNum> {
        if n < 0 {
            return Err(Error::Job(format!("n = {n} must be non-negative")));
        }
        let residue = n.rem_euclid(self.modulus() as i64) as u32;
        Ok(self.total_polynomial(lambda, residue)?.poly.eval(n))
    }

    fn check_residue(&self, residue: u32) -> Result<()> {
        if residue >= self.modulus() {
            return Err(Error::Job(format!(
                "residue {residue} outside [0, {})",
                self.modulus()
            )));
        }
        Ok(())
    }

    /// `int c_1^{d_v} = d_v! prod_{alpha in R'+ ∩ v R_P^+} <v lambda, alpha^vee> / <rho', alpha^vee>`.
    pub fn component_integral(&self, idx: usize, lambda: &[i64]) -> Rat {
        let d = &self.group.datum;
        let comp = &self.components[idx].component;
        let vl = self.group.weyl.act(comp.v, lambda);
        let rho_prime = &self.locus.centralizer.rho_prime;
        let mut q = Rat::one();
        for k in 2..=comp.dim as i64 {
            q *= rat(k, 1);
        }
        for &gamma in &comp.tangent {
            let alpha = d.root(d.negate(gamma));
            let rho_pair: Rat = rho_prime
                .iter()
                .zip(&alpha.coroot)
                .map(|(a, &b)| a * rat(b, 1))
                .fold(Rat::zero(), |acc, x| acc + x);
            q *= rat(pair(&vl, &alpha.coroot), 1) / rho_pair;
        }
        q
    }

    /// Closed-form coefficient of `n^{d_v}` in `D_v` on the residue class.
    pub fn leading_coefficient(&self, idx: usize, lambda: &[i64], residue: u32) -> Result<CycNum> {
        self.check_weight(lambda)?;
        self.check_residue(residue)?;
        let comp = &self.components[idx].component;
        let r = self.modulus();
        let mut denom = CycNum::one(r);
        for &beta in &comp.normal {
            denom *= &(CycNum::one(r) - self.t().eval_weight(&self.group.datum.root(beta).vector)?);
        }
        let mut fact = Rat::one();
        for k in 2..=comp.dim as i64 {
            fact *= rat(k, 1);
        }
        let scalar = self.component_integral(idx, lambda) / fact;
        Ok(self
            .twist(comp.v, lambda, residue)
            .checked_div(&denom)?
            .scale(&scalar))
    }
}

fn localize_component(
    g: &Group,
    locus: &FixedLocus,
    comp: &FixedComponent,
    h: &[i64],
) -> Result<ComponentLocalization> {
    let d = &g.datum;
    let p = &locus.parabolic;
    let c = &locus.centralizer;
    let t = &locus.t;
    let r = t.order();
    let dim = comp.dim as i32;
    let unipotent = d.unipotent_roots(p);

    let mut ws: Vec<usize> = c
        .weyl
        .iter()
        .map(|&u| g.weyl.min_coset_rep(g.weyl.mul(u, comp.v), p))
        .collect();
    ws.sort_unstable();
    ws.dedup();

    let points = ws
        .into_iter()
        .map(|w| {
            let mut factor = EpsSeries::one(r, GUARD + dim);
            for &beta in &unipotent {
                let wb = g.weyl.act_root(w, beta);
                let hb = pair(&d.root(wb).vector, h);
                if hb == 0 {
                    return Err(Error::NonGenericCocharacter(1));
                }
                let f = if c.contains_root(wb) {
                    // tangent weight -wb
                    EpsSeries::one_minus_exp(&CycNum::from_int(1, hb), GUARD + dim + 1).inv()?
                } else {
                    let e = t.eval_weight(&d.root(wb).vector)?;
                    EpsSeries::one(r, GUARD + dim)
                        .add(
                            &EpsSeries::exp_linear(&CycNum::zero(1), &CycNum::from_int(1, hb), GUARD + dim)
                                .scale(&(-&e)),
                        )
                        .inv()?
                };
                factor = factor.mul(&f);
            }
            Ok(FixedPoint { w, factor })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComponentLocalization {
        component: comp.clone(),
        points,
    })
}

/// `ch(t^{-1}, V(n lambda))` computed with `P = P_lambda`.
pub fn character_via_lefschetz(g: &Group, t: &TorsionElement, lambda: &[i64], n: i64) -> Result<CycNum> {
    let p = parabolic_for_lambda(&g.datum, lambda)?;
    LocalizationContext::with_default_h(g, &p, t)?.character(lambda, n)
}
