use std::collections::{HashMap, VecDeque};

use super::descriptor::{cartan_matrix, GroupSpec, Isogeny};
use super::parabolic::ParabolicSpec;
use crate::error::{Error, Result};
use crate::exactnum::{rat, Rat};

/// Hard bound on the reflection closure; every finite type has at most 240 roots.
const MAX_ROOTS: usize = 1000;

/// A root together with its coroot and coordinates in the simple bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the basis of the character lattice.
    pub vector: Vec<i64>,
    /// Coordinates in the basis of the cocharacter lattice.
    pub coroot: Vec<i64>,
    /// Coefficients in the simple roots.
    pub coords: Vec<i64>,
    /// Coefficients of the coroot in the simple coroots.
    pub coroot_coords: Vec<i64>,
    pub positive: bool,
    pub height: i64,
}

/// Root datum of a connected reductive group.
///
/// The character lattice `X(T)` and cocharacter lattice `X_*(T)` are both
/// `Z^lattice_rank` in dual bases, so the pairing is the dot product.
/// Roots are indexed so that `0..n_pos` are positive and `i + n_pos` is `-root(i)`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    rank: usize,
    lattice_rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    n_pos: usize,
    simple_index: Vec<usize>,
    lookup: HashMap<Vec<i64>, usize>,
    two_rho: Vec<i64>,
    two_rho_vee: Vec<i64>,
}

pub fn pair(mu: &[i64], x: &[i64]) -> i64 {
    mu.iter().zip(x).map(|(a, b)| a * b).sum()
}

impl RootDatum {
    pub fn build(spec: &GroupSpec) -> Result<RootDatum> {
        match spec {
            GroupSpec::Cartan {
                family,
                rank,
                isogeny,
            } => {
                let c = cartan_matrix(*family, *rank)?;
                let n = *rank;
                let unit = |i: usize| (0..n).map(|k| (k == i) as i64).collect::<Vec<_>>();
                let (roots, coroots) = match isogeny {
                    // X(T) spanned by fundamental weights, X_*(T) by simple coroots
                    Isogeny::SimplyConnected => ((0..n).map(|i| c[i].clone()).collect(), (0..n).map(unit).collect()),
                    // X(T) spanned by simple roots, X_*(T) by fundamental coweights
                    Isogeny::Adjoint => (
                        (0..n).map(unit).collect(),
                        (0..n).map(|j| (0..n).map(|i| c[i][j]).collect()).collect(),
                    ),
                };
                Self::from_simple(roots, coroots, n, spec.to_string())
            }
            GroupSpec::GL(n) => {
                let n = *n;
                let roots: Vec<Vec<i64>> = (0..n.saturating_sub(1))
                    .map(|i| {
                        let mut v = vec![0; n];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                Self::from_simple(roots.clone(), roots, n, spec.to_string())
            }
            GroupSpec::Explicit {
                simple_roots,
                simple_coroots,
                lattice_rank,
            } => Self::from_simple(
                simple_roots.clone(),
                simple_coroots.clone(),
                *lattice_rank,
                spec.to_string(),
            ),
        }
    }

    /// Builds a datum from simple roots and coroots, validating the Cartan
    /// integers and generating all roots by reflection closure.
    pub fn from_simple(
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        lattice_rank: usize,
        label: String,
    ) -> Result<RootDatum> {
        let rank = simple_roots.len();
        if simple_coroots.len() != rank {
            return Err(Error::InconsistentCoroots(format!(
                "{rank} simple roots but {} simple coroots",
                simple_coroots.len()
            )));
        }
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != lattice_rank {
                return Err(Error::InconsistentCoroots(format!(
                    "vector {v:?} does not have lattice rank {lattice_rank}"
                )));
            }
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| pair(&simple_roots[i], &simple_coroots[j])).collect())
            .collect();
        validate_cartan(&cartan)?;

        let (roots, n_pos) = reflection_closure(&simple_roots, &simple_coroots, &cartan)?;
        let lookup: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.vector.clone(), i))
            .collect();
        if lookup.len() != roots.len() {
            return Err(Error::InvalidCartan("roots are not distinct in X(T)".into()));
        }
        let simple_index = (0..rank)
            .map(|i| lookup[&simple_roots[i]])
            .collect();
        let mut two_rho = vec![0; lattice_rank];
        let mut two_rho_vee = vec![0; lattice_rank];
        for r in &roots[..n_pos] {
            for k in 0..lattice_rank {
                two_rho[k] += r.vector[k];
                two_rho_vee[k] += r.coroot[k];
            }
        }
        Ok(RootDatum {
            label,
            rank,
            lattice_rank,
            simple_roots,
            simple_coroots,
            cartan,
            roots,
            n_pos,
            simple_index,
            lookup,
            two_rho,
            two_rho_vee,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn positive_roots(&self) -> std::ops::Range<usize> {
        0..self.n_pos
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn negate(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Index of the `i`-th simple root in [`RootDatum::roots`].
    pub fn simple_index(&self, i: usize) -> usize {
        self.simple_index[i]
    }

    pub fn root_index(&self, vector: &[i64]) -> Option<usize> {
        self.lookup.get(vector).copied()
    }

    /// `2 rho`, the sum of the positive roots.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn rho(&self) -> Vec<Rat> {
        self.two_rho.iter().map(|&c| rat(c, 2)).collect()
    }

    /// `rho^vee`, half the sum of the positive coroots; it pairs to 1 with every simple root.
    pub fn rho_vee(&self) -> Vec<Rat> {
        self.two_rho_vee.iter().map(|&c| rat(c, 2)).collect()
    }

    /// Pairings `<mu, alpha_i^vee>` with the simple coroots.
    pub fn labels(&self, mu: &[i64]) -> Vec<i64> {
        self.simple_coroots.iter().map(|c| pair(mu, c)).collect()
    }

    pub fn is_dominant(&self, mu: &[i64]) -> bool {
        self.labels(mu).iter().all(|&l| l >= 0)
    }

    /// `s_i(mu) = mu - <mu, alpha_i^vee> alpha_i`.
    pub fn reflect_simple(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let l = pair(mu, &self.simple_coroots[i]);
        mu.iter()
            .zip(&self.simple_roots[i])
            .map(|(m, a)| m - l * a)
            .collect()
    }

    /// Roots of the unipotent radical of `P`: positive roots outside the Levi span.
    pub fn unipotent_roots(&self, p: &ParabolicSpec) -> Vec<usize> {
        self.positive_roots()
            .filter(|&i| !self.in_levi(i, p))
            .collect()
    }

    /// Roots (of both signs) of the Levi factor of `P`.
    pub fn levi_roots(&self, p: &ParabolicSpec) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.in_levi(i, p)).collect()
    }

    pub fn in_levi(&self, i: usize, p: &ParabolicSpec) -> bool {
        self.roots[i]
            .coords
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || p.contains(k))
    }
}

fn validate_cartan(c: &[Vec<i64>]) -> Result<()> {
    let n = c.len();
    for i in 0..n {
        if c[i][i] != 2 {
            return Err(Error::InconsistentCoroots(format!(
                "<alpha_{i}, alpha_{i}^vee> = {} (expected 2)",
                c[i][i]
            )));
        }
        for j in 0..n {
            if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                return Err(Error::InvalidCartan(format!(
                    "off-diagonal entries ({i},{j}) = {}, ({j},{i}) = {}",
                    c[i][j], c[j][i]
                )));
            }
        }
    }
    // finite type: every principal minor is positive
    for mask in 1u64..(1u64 << n) {
        let idx: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let sub: Vec<Vec<Rat>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| rat(c[i][j], 1)).collect())
            .collect();
        if determinant(sub) <= rat(0, 1) {
            return Err(Error::InvalidCartan(format!(
                "principal minor on simples {idx:?} is not positive"
            )));
        }
    }
    Ok(())
}

fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = rat(1, 1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != rat(0, 1)) else {
            return rat(0, 1);
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let f = &m[r][col] / &p;
            for k in col..n {
                let delta = &f * &m[col][k];
                m[r][k] -= delta;
            }
        }
    }
    det
}

fn reflection_closure(
    simple_roots: &[Vec<i64>],
    simple_coroots: &[Vec<i64>],
    cartan: &[Vec<i64>],
) -> Result<(Vec<Root>, usize)> {
    let n = simple_roots.len();
    let unit = |i: usize| (0..n).map(|k| (k == i) as i64).collect::<Vec<_>>();
    // (root coords, coroot coords); vectors are recovered from the coordinates
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        seen.insert(unit(i), unit(i));
        queue.push_back(unit(i));
    }
    while let Some(c) = queue.pop_front() {
        let cv = seen[&c].clone();
        for i in 0..n {
            // <beta, alpha_i^vee> and <alpha_i, beta^vee> from the Cartan matrix
            let b_ai: i64 = (0..n).map(|j| c[j] * cartan[j][i]).sum();
            let ai_b: i64 = (0..n).map(|j| cv[j] * cartan[i][j]).sum();
            let mut nc = c.clone();
            nc[i] -= b_ai;
            let mut ncv = cv.clone();
            ncv[i] -= ai_b;
            if !seen.contains_key(&nc) {
                if seen.len() >= MAX_ROOTS {
                    return Err(Error::InvalidCartan("reflection closure does not terminate".into()));
                }
                seen.insert(nc.clone(), ncv);
                queue.push_back(nc);
            }
        }
    }
    let lattice_rank = simple_roots.first().map_or(0, Vec::len);
    let combine = |basis: &[Vec<i64>], c: &[i64]| -> Vec<i64> {
        (0..lattice_rank)
            .map(|k| c.iter().zip(basis).map(|(ci, b)| ci * b[k]).sum())
            .collect()
    };
    let mut positive = Vec::new();
    for (c, cv) in &seen {
        let nonneg = c.iter().all(|&x| x >= 0);
        let nonpos = c.iter().all(|&x| x <= 0);
        if !nonneg && !nonpos {
            return Err(Error::InvalidCartan(format!("root {c:?} has mixed signs")));
        }
        if !seen.contains_key(&c.iter().map(|x| -x).collect::<Vec<_>>()) {
            return Err(Error::InvalidCartan(format!("root {c:?} has no negative")));
        }
        if nonneg {
            positive.push((c.clone(), cv.clone()));
        }
    }
    positive.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    let make = |c: &[i64], cv: &[i64], sign: i64| {
        let c: Vec<i64> = c.iter().map(|x| sign * x).collect();
        let cv: Vec<i64> = cv.iter().map(|x| sign * x).collect();
        Root {
            vector: combine(simple_roots, &c),
            coroot: combine(simple_coroots, &cv),
            height: c.iter().sum(),
            positive: sign > 0,
            coords: c,
            coroot_coords: cv,
        }
    };
    let n_pos = positive.len();
    let mut roots: Vec<Root> = positive.iter().map(|(c, cv)| make(c, cv, 1)).collect();
    roots.extend(positive.iter().map(|(c, cv)| make(c, cv, -1)));
    Ok((roots, n_pos))
}

#[cfg(test)]
mod tests {
    use super::super::descriptor::Family;
    use super::*;

    #[test]
    fn rank_one() {
        let d = RootDatum::build(&GroupSpec::sl(2)).unwrap();
        assert_eq!(d.roots().len(), 2);
        assert_eq!(d.root(0).vector, vec![2]);
        assert_eq!(d.root(0).coroot, vec![1]);
        let p = RootDatum::build(&GroupSpec::pgl(2)).unwrap();
        assert_eq!(p.root(0).vector, vec![1]);
        assert_eq!(p.root(0).coroot, vec![2]);
    }

    #[test]
    fn gl3_roots() {
        let d = RootDatum::build(&GroupSpec::GL(3)).unwrap();
        assert_eq!(d.lattice_rank(), 3);
        assert_eq!(d.roots().len(), 6);
        let mut pos: Vec<_> = d.positive_roots().map(|i| d.root(i).vector.clone()).collect();
        pos.sort();
        assert_eq!(pos, vec![vec![0, 1, -1], vec![1, -1, 0], vec![1, 0, -1]]);
        assert_eq!(d.rho(), vec![rat(1, 1), rat(0, 1), rat(-1, 1)]);
    }

    #[test]
    fn classical_root_counts() {
        let cases = [
            (Family::A, 4),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::D, 5),
            (Family::E, 6),
            (Family::E, 7),
            (Family::E, 8),
            (Family::F, 4),
            (Family::G, 2),
        ];
        for (fam, n) in cases {
            for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
                let spec = GroupSpec::simple(fam, n, iso);
                let d = RootDatum::build(&spec).unwrap();
                assert_eq!(Some(d.roots().len()), spec.expected_root_count(), "{spec}");
            }
        }
    }

    #[test]
    fn root_invariants() {
        for spec in ["SL3", "Sp4", "G2", "B3.ad", "GL4", "D4"] {
            let d = RootDatum::build(&spec.parse().unwrap()).unwrap();
            for (i, r) in d.roots().iter().enumerate() {
                assert_eq!(pair(&r.vector, &r.coroot), 2);
                assert_eq!(r.positive, r.height > 0);
                assert_eq!(d.root(d.negate(i)).vector, r.vector.iter().map(|x| -x).collect::<Vec<_>>());
                for s in 0..d.rank() {
                    let img = d.reflect_simple(s, &r.vector);
                    assert!(d.root_index(&img).is_some(), "{spec}: closure under s_{s}");
                }
            }
            let rho = d.rho();
            for c in d.simple_coroots() {
                let v: Rat = rho.iter().zip(c).map(|(a, &b)| a * rat(b, 1)).sum();
                assert_eq!(v, rat(1, 1), "{spec}");
            }
        }
    }

    #[test]
    fn explicit_data_errors() {
        // <alpha, alpha^vee> = 1
        let bad = GroupSpec::Explicit {
            simple_roots: vec![vec![1]],
            simple_coroots: vec![vec![1]],
            lattice_rank: 1,
        };
        assert!(matches!(RootDatum::build(&bad), Err(Error::InconsistentCoroots(_))));
        // affine A1: Cartan [[2,-2],[-2,2]]
        let affine = GroupSpec::Explicit {
            simple_roots: vec![vec![2, 0], vec![-2, 0]],
            simple_coroots: vec![vec![1, 0], vec![-1, 0]],
            lattice_rank: 2,
        };
        assert!(matches!(RootDatum::build(&affine), Err(Error::InvalidCartan(_))));
        // SL2 x SL2 given explicitly is fine
        let ok = GroupSpec::Explicit {
            simple_roots: vec![vec![2, 0], vec![0, 2]],
            simple_coroots: vec![vec![1, 0], vec![0, 1]],
            lattice_rank: 2,
        };
        assert_eq!(RootDatum::build(&ok).unwrap().roots().len(), 4);
    }
}
