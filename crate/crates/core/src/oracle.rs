//! Brute-force characters: Freudenthal multiplicities, Weyl orbit expansion
//! and the Weyl dimension formula.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Rat};
use crate::rootdata::{pair, Group, RootDatum};
use crate::torus::TorsionElement;

/// Default bound on the total number of weights (summed over orbits).
pub const DEFAULT_MAX_WEIGHTS: usize = 2_000_000;

/// A dominant weight of `V(lambda)` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantWeight {
    pub weight: Vec<i64>,
    /// `lambda - weight` in the simple roots.
    pub depth: Vec<i64>,
    pub multiplicity: i128,
}

/// Weight multiplicities of the irreducible representation `V(lambda)`.
#[derive(Debug)]
pub struct WeightTable {
    highest_weight: Vec<i64>,
    dominant: Vec<DominantWeight>,
    all: Vec<(Vec<i64>, i128)>,
}

/// Invariant form `(x, y) = sum_{alpha > 0} <x, alpha^vee><y, alpha^vee>`
/// on label vectors `<x, alpha_i^vee>`.
struct Form {
    coroot_coords: Vec<Vec<i64>>,
}

impl Form {
    fn new(d: &RootDatum) -> Form {
        Form {
            coroot_coords: d
                .positive_roots()
                .map(|j| d.root(j).coroot_coords.clone())
                .collect(),
        }
    }

    fn eval(&self, x: &[i64], y: &[i64]) -> i128 {
        self.coroot_coords
            .iter()
            .map(|cc| pair(x, cc) as i128 * pair(y, cc) as i128)
            .sum()
    }
}

impl WeightTable {
    /// Freudenthal recursion over the dominant weights `mu <= lambda`.
    pub fn new(g: &Group, lambda: &[i64], max_weights: usize) -> Result<WeightTable> {
        let d = &g.datum;
        if lambda.len() != d.lattice_rank() {
            return Err(Error::Job(format!(
                "weight {lambda:?} does not match lattice rank {}",
                d.lattice_rank()
            )));
        }
        if !d.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        let rank = d.rank();
        let cartan = d.cartan();
        let pos: Vec<(Vec<i64>, Vec<i64>)> = d
            .positive_roots()
            .map(|j| (d.root(j).coords.clone(), d.labels(&d.root(j).vector)))
            .collect();
        let form = Form::new(d);
        let lam_labels = d.labels(lambda);

        // dominant weights, keyed by depth, reached by subtracting positive roots
        let mut labels_of: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let start = vec![0i64; rank];
        labels_of.insert(start.clone(), lam_labels.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let l = labels_of[&c].clone();
            for (coords, alabels) in &pos {
                let nl: Vec<i64> = l.iter().zip(alabels).map(|(a, b)| a - b).collect();
                if nl.iter().any(|&x| x < 0) {
                    continue;
                }
                let nc: Vec<i64> = c.iter().zip(coords).map(|(a, b)| a + b).collect();
                if !labels_of.contains_key(&nc) {
                    if labels_of.len() >= max_weights {
                        return Err(Error::CapExceeded {
                            cap: "max_weights",
                            limit: max_weights,
                        });
                    }
                    labels_of.insert(nc.clone(), nl);
                    queue.push_back(nc);
                }
            }
        }
        let mut order: Vec<Vec<i64>> = labels_of.keys().cloned().collect();
        order.sort_by_key(|c| (c.iter().sum::<i64>(), c.clone()));

        let shifted = |l: &[i64]| l.iter().map(|x| x + 1).collect::<Vec<i64>>();
        let top = {
            let s = shifted(&lam_labels);
            form.eval(&s, &s)
        };
        let mut mult: HashMap<Vec<i64>, i128> = HashMap::new();
        for c in &order {
            let l = &labels_of[c];
            if c.iter().all(|&x| x == 0) {
                mult.insert(c.clone(), 1);
                continue;
            }
            let s = shifted(l);
            let denom = top - form.eval(&s, &s);
            let mut num: i128 = 0;
            for (coords, alabels) in &pos {
                let mut k = 1i64;
                loop {
                    let ck: Vec<i64> = c.iter().zip(coords).map(|(a, b)| a - k * b).collect();
                    if ck.iter().any(|&x| x < 0) {
                        break;
                    }
                    let lk: Vec<i64> = l.iter().zip(alabels).map(|(a, b)| a + k * b).collect();
                    let m = dominant_lookup(cartan, &mult, ck, lk.clone());
                    if m != 0 {
                        num += m * form.eval(&lk, alabels);
                    }
                    k += 1;
                }
            }
            let num = 2 * num;
            assert!(
                denom > 0 && num % denom == 0,
                "Freudenthal recursion is not integral"
            );
            mult.insert(c.clone(), num / denom);
        }

        let dominant = order
            .into_iter()
            .filter_map(|c| {
                let m = mult[&c];
                (m > 0).then(|| DominantWeight {
                    weight: weight_from_depth(d, lambda, &c),
                    depth: c,
                    multiplicity: m,
                })
            })
            .collect();
        let mut table = WeightTable {
            highest_weight: lambda.to_vec(),
            dominant,
            all: Vec::new(),
        };
        table.all = table.expand(d, max_weights)?;
        Ok(table)
    }

    fn expand(&self, d: &RootDatum, max_weights: usize) -> Result<Vec<(Vec<i64>, i128)>> {
        let mut out = Vec::new();
        for dw in &self.dominant {
            let mut seen = HashSet::from([dw.weight.clone()]);
            let mut queue = VecDeque::from([dw.weight.clone()]);
            while let Some(mu) = queue.pop_front() {
                for i in 0..d.rank() {
                    let nu = d.reflect_simple(i, &mu);
                    if !seen.contains(&nu) {
                        seen.insert(nu.clone());
                        queue.push_back(nu);
                    }
                }
                if out.len() >= max_weights {
                    return Err(Error::CapExceeded {
                        cap: "max_weights",
                        limit: max_weights,
                    });
                }
                out.push((mu, dw.multiplicity));
            }
        }
        Ok(out)
    }

    pub fn highest_weight(&self) -> &[i64] {
        &self.highest_weight
    }

    pub fn dominant(&self) -> &[DominantWeight] {
        &self.dominant
    }

    pub fn multiplicity(&self, mu: &[i64]) -> i128 {
        self.all
            .iter()
            .find(|(w, _)| w.as_slice() == mu)
            .map_or(0, |(_, m)| *m)
    }

    /// Every weight of `V(lambda)` with its multiplicity.
    pub fn weights(&self) -> &[(Vec<i64>, i128)] {
        &self.all
    }

    pub fn dimension(&self) -> i128 {
        self.all.iter().map(|(_, m)| m).sum()
    }
}

/// Multiplicity of the weight with the given depth and labels, via its
/// dominant conjugate.
fn dominant_lookup(
    cartan: &[Vec<i64>],
    mult: &HashMap<Vec<i64>, i128>,
    mut c: Vec<i64>,
    mut l: Vec<i64>,
) -> i128 {
    while let Some(i) = l.iter().position(|&x| x < 0) {
        let li = l[i];
        c[i] += li;
        for (x, a) in l.iter_mut().zip(&cartan[i]) {
            *x -= li * a;
        }
    }
    mult.get(&c).copied().unwrap_or(0)
}

fn weight_from_depth(d: &RootDatum, lambda: &[i64], c: &[i64]) -> Vec<i64> {
    let mut mu = lambda.to_vec();
    for (ci, alpha) in c.iter().zip(d.simple_roots()) {
        for (m, a) in mu.iter_mut().zip(alpha) {
            *m -= ci * a;
        }
    }
    mu
}

pub fn dominant_character(g: &Group, lambda: &[i64], max_weights: usize) -> Result<WeightTable> {
    WeightTable::new(g, lambda, max_weights)
}

/// `ch(t, V(lambda)) = sum_mu m_mu e^mu(t)`.
pub fn char_at(t: &TorsionElement, table: &WeightTable) -> CycNum {
    let r = t.order();
    let mut counts = vec![0i128; r as usize];
    for (mu, m) in table.weights() {
        counts[t.exponent(mu) as usize] += m;
    }
    let counts: Vec<i64> = counts
        .into_iter()
        .map(|c| i64::try_from(c).expect("character value exceeds i64"))
        .collect();
    CycNum::from_power_counts(r, &counts)
}

/// `prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dim(d: &RootDatum, lambda: &[i64]) -> Result<BigInt> {
    if !d.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let mut q = Rat::one();
    for j in d.positive_roots() {
        let r = d.root(j);
        let rho_pair: i64 = r.coroot_coords.iter().sum();
        q *= Rat::new(
            BigInt::from(pair(lambda, &r.coroot) + rho_pair),
            BigInt::from(rho_pair),
        );
    }
    debug_assert!(q.is_integer());
    Ok(q.to_integer())
}

/// Weyl character formula quotient
/// `sum_w sign(w) e^{w(lambda + rho) - rho}(t) / prod_{alpha > 0} (1 - e^{-alpha}(t))`.
pub fn char_at_regular(g: &Group, t: &TorsionElement, lambda: &[i64]) -> Result<CycNum> {
    let d = &g.datum;
    if !d.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let r = t.order();
    let mut denom = CycNum::one(r);
    for j in d.positive_roots() {
        let neg: Vec<i64> = d.root(j).vector.iter().map(|x| -x).collect();
        denom *= &(CycNum::one(r) - t.eval_weight(&neg)?);
    }
    if denom.is_zero() {
        return Err(Error::SingularDenominator);
    }
    let shifted: Vec<i64> = lambda
        .iter()
        .zip(d.two_rho())
        .map(|(l, p)| 2 * l + p)
        .collect();
    let mut counts = vec![0i64; r as usize];
    for w in 0..g.weyl.len() {
        let img: Vec<i64> = g
            .weyl
            .act(w, &shifted)
            .iter()
            .zip(d.two_rho())
            .map(|(a, p)| (a - p) / 2)
            .collect();
        counts[t.exponent(&img) as usize] += g.weyl.sign(w);
    }
    let num = CycNum::from_power_counts(r, &counts);
    num.checked_div(&denom)
}

/// Weight tables for one group, shared across torsion elements.
#[derive(Debug, Default)]
pub struct TableCache {
    tables: Mutex<HashMap<Vec<i64>, Arc<WeightTable>>>,
}

impl TableCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, g: &Group, lambda: &[i64], max_weights: usize) -> Result<Arc<WeightTable>> {
        if let Some(t) = self.tables.lock().expect("table cache poisoned").get(lambda) {
            return Ok(t.clone());
        }
        let t = Arc::new(WeightTable::new(g, lambda, max_weights)?);
        let mut map = self.tables.lock().expect("table cache poisoned");
        Ok(map.entry(lambda.to_vec()).or_insert(t).clone())
    }
}
