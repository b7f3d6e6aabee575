use crate::error::Result;
use crate::exactnum::{rat, CycNum, Rat};
use crate::rootdata::parabolic_for_lambda;

use super::LocalizationContext;

/// Degree data of the total character polynomial on one residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueDegree {
    pub residue: u32,
    /// Degree of the total polynomial (`None` when it vanishes).
    pub degree: Option<usize>,
    /// Coefficient of `n^d`, `d = max_v d_v`, in the total polynomial.
    pub top_coefficient: CycNum,
    /// Sum over maximizing components of their closed-form leading coefficients.
    pub closed_form_top: CycNum,
    pub degree_within_bound: bool,
    pub exact_degree: bool,
    /// For `P = P_lambda`, `t` of order at most two and even `n`: the top coefficient equals
    /// `sum_{d_v = d} (int c_1^d / d!) 2^{-|N_v|}` and is strictly positive.
    pub positivity: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub max_dim: usize,
    pub maximizers: Vec<Vec<usize>>,
    pub unique_maximizer: bool,
    pub regular: bool,
    pub residues: Vec<ResidueDegree>,
}

impl DegreeReport {
    /// The degree bound holds on every residue, the top coefficient matches
    /// its closed form, and positivity holds where it applies.
    pub fn passed(&self) -> bool {
        self.residues.iter().all(|r| {
            r.degree_within_bound
                && r.positivity != Some(false)
                && r.top_coefficient == r.closed_form_top
        })
    }
}

impl LocalizationContext<'_> {
    pub fn degree_report(&self, lambda: &[i64]) -> Result<DegreeReport> {
        let max_dim = self.locus().max_dim();
        let maximizers: Vec<usize> = (0..self.components().len())
            .filter(|&i| self.components()[i].component.dim == max_dim)
            .collect();
        let r = self.modulus();
        let ample = parabolic_for_lambda(&self.group().datum, lambda)? == self.locus().parabolic;
        let mut residues = Vec::new();
        for p in 0..r {
            let total = self.total_polynomial(lambda, p)?;
            let top = total.poly.coeff(max_dim);
            let mut closed = CycNum::zero(r);
            for &i in &maximizers {
                closed += &self.leading_coefficient(i, lambda, p)?;
            }
            let positivity = (ample && r <= 2 && p == 0).then(|| {
                let mut expected = Rat::from_integer(0.into());
                for &i in &maximizers {
                    let comp = &self.components()[i].component;
                    let mut fact = Rat::from_integer(1.into());
                    for k in 2..=max_dim as i64 {
                        fact *= rat(k, 1);
                    }
                    let mut term = self.component_integral(i, lambda) / fact;
                    for _ in &comp.normal {
                        term /= rat(2, 1);
                    }
                    expected += term;
                }
                top.as_rational()
                    .is_some_and(|q| q == expected && q > Rat::from_integer(0.into()))
            });
            residues.push(ResidueDegree {
                residue: p,
                degree: total.degree(),
                degree_within_bound: total.degree().is_none_or(|k| k <= max_dim),
                exact_degree: total.degree() == Some(max_dim),
                top_coefficient: top,
                closed_form_top: closed,
                positivity,
            });
        }
        Ok(DegreeReport {
            max_dim,
            unique_maximizer: maximizers.len() == 1,
            maximizers: maximizers
                .iter()
                .map(|&i| self.components()[i].component.word.clone())
                .collect(),
            regular: self.t().is_regular(&self.group().datum),
            residues,
        })
    }
}
