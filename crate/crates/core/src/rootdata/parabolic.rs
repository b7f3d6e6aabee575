use serde::{Deserialize, Serialize};

use super::datum::RootDatum;
use crate::error::{Error, Result};

/// A standard parabolic subgroup, given by the simple roots of its Levi factor
/// (0-based indices into the simple roots).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicSpec {
    levi_simples: Vec<usize>,
}

impl ParabolicSpec {
    pub fn new(mut levi_simples: Vec<usize>, rank: usize) -> Result<Self> {
        levi_simples.sort_unstable();
        levi_simples.dedup();
        if let Some(&bad) = levi_simples.iter().find(|&&i| i >= rank) {
            return Err(Error::Job(format!(
                "Levi simple index {} outside 1..={rank}",
                bad + 1
            )));
        }
        Ok(ParabolicSpec { levi_simples })
    }

    pub fn borel() -> Self {
        ParabolicSpec {
            levi_simples: Vec::new(),
        }
    }

    /// `P = G`.
    pub fn whole(rank: usize) -> Self {
        ParabolicSpec {
            levi_simples: (0..rank).collect(),
        }
    }

    /// All `2^rank` standard parabolics.
    pub fn all(rank: usize) -> Vec<ParabolicSpec> {
        (0u32..1 << rank)
            .map(|mask| ParabolicSpec {
                levi_simples: (0..rank).filter(|&k| mask >> k & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn levi_simples(&self) -> &[usize] {
        &self.levi_simples
    }

    pub fn contains(&self, i: usize) -> bool {
        self.levi_simples.binary_search(&i).is_ok()
    }

    pub fn is_borel(&self) -> bool {
        self.levi_simples.is_empty()
    }
}

/// `P_lambda`: the Levi simples are exactly those with `<lambda, alpha_i^vee> = 0`.
pub fn parabolic_for_lambda(d: &RootDatum, lambda: &[i64]) -> Result<ParabolicSpec> {
    if lambda.len() != d.lattice_rank() {
        return Err(Error::Job(format!(
            "weight {lambda:?} has length {}, lattice rank is {}",
            lambda.len(),
            d.lattice_rank()
        )));
    }
    let labels = d.labels(lambda);
    if labels.iter().any(|&l| l < 0) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    Ok(ParabolicSpec {
        levi_simples: (0..d.rank()).filter(|&i| labels[i] == 0).collect(),
    })
}

/// Checks that `lambda` extends to a character of `P` (it is orthogonal to
/// the Levi coroots).
pub fn check_extends(d: &RootDatum, p: &ParabolicSpec, lambda: &[i64]) -> Result<()> {
    let labels = d.labels(lambda);
    match p.levi_simples().iter().find(|&&i| labels[i] != 0) {
        Some(&i) => Err(Error::WeightNotExtendable(i + 1)),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::GroupSpec;

    #[test]
    fn parabolic_of_weights() {
        let d = RootDatum::build(&GroupSpec::GL(3)).unwrap();
        assert!(parabolic_for_lambda(&d, &[2, 1, 0]).unwrap().is_borel());
        assert_eq!(parabolic_for_lambda(&d, &[1, 0, 0]).unwrap().levi_simples(), &[1]);
        assert_eq!(parabolic_for_lambda(&d, &[0, 0, 0]).unwrap(), ParabolicSpec::whole(2));
        assert!(matches!(
            parabolic_for_lambda(&d, &[0, 1, 0]),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn extension_check() {
        let d = RootDatum::build(&GroupSpec::GL(3)).unwrap();
        let p = ParabolicSpec::new(vec![1], 2).unwrap();
        assert!(check_extends(&d, &p, &[1, 0, 0]).is_ok());
        assert!(matches!(
            check_extends(&d, &p, &[2, 1, 0]),
            Err(Error::WeightNotExtendable(2))
        ));
        assert!(ParabolicSpec::new(vec![2], 2).is_err());
        assert_eq!(ParabolicSpec::all(2).len(), 4);
    }
}
