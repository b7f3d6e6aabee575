use std::collections::{BTreeSet, HashMap, VecDeque};

use super::datum::RootDatum;
use super::parabolic::ParabolicSpec;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_WEYL: usize = 1_000_000;

/// An element of the Weyl group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major integer matrix acting on column vectors of `X(T)`.
    pub matrix: Vec<i64>,
    /// A reduced word in the simple reflections (0-based), read left to right.
    pub word: Vec<usize>,
    pub length: usize,
    /// `root_perm[j]` is the index of `w(root_j)`.
    pub root_perm: Vec<usize>,
}

/// The full Weyl group, enumerated breadth-first so that every stored word
/// is reduced. Elements are referred to by their index; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    dim: usize,
    n_pos: usize,
    simple_index: Vec<usize>,
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<i64>, usize>,
    right_simple: Vec<Vec<usize>>,
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik != 0 {
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j];
                }
            }
        }
    }
    out
}

fn reflection_matrix(root: &[i64], coroot: &[i64]) -> Vec<i64> {
    let n = root.len();
    let mut m = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            m[a * n + b] = (a == b) as i64 - root[a] * coroot[b];
        }
    }
    m
}

impl WeylGroup {
    /// Enumerates `W`, failing once more than `cap` elements have been found.
    pub fn enumerate(d: &RootDatum, cap: usize) -> Result<WeylGroup> {
        let n = d.lattice_rank();
        let rank = d.rank();
        let nroots = d.roots().len();
        let gens: Vec<(Vec<i64>, Vec<usize>)> = (0..rank)
            .map(|i| {
                let m = reflection_matrix(&d.simple_roots()[i], &d.simple_coroots()[i]);
                let perm = (0..nroots)
                    .map(|j| {
                        let img = d.reflect_simple(i, &d.root(j).vector);
                        d.root_index(&img).expect("roots closed under reflections")
                    })
                    .collect();
                (m, perm)
            })
            .collect();

        let identity = WeylElement {
            matrix: (0..n * n).map(|k| (k / n == k % n) as i64).collect(),
            word: Vec::new(),
            length: 0,
            root_perm: (0..nroots).collect(),
        };
        let mut lookup = HashMap::new();
        lookup.insert(identity.matrix.clone(), 0);
        let mut elements = vec![identity];
        let mut right_simple: Vec<Vec<usize>> = vec![vec![usize::MAX; rank]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (i, (gm, gp)) in gens.iter().enumerate() {
                let m = mat_mul(&elements[w].matrix, gm, n);
                let idx = match lookup.get(&m) {
                    Some(&idx) => idx,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::CapExceeded {
                                cap: "max_weyl",
                                limit: cap,
                            });
                        }
                        let parent = &elements[w];
                        let mut word = parent.word.clone();
                        word.push(i);
                        let root_perm = gp.iter().map(|&j| parent.root_perm[j]).collect();
                        let el = WeylElement {
                            matrix: m.clone(),
                            length: parent.length + 1,
                            word,
                            root_perm,
                        };
                        let idx = elements.len();
                        elements.push(el);
                        right_simple.push(vec![usize::MAX; rank]);
                        lookup.insert(m, idx);
                        queue.push_back(idx);
                        idx
                    }
                };
                right_simple[w][i] = idx;
            }
        }
        Ok(WeylGroup {
            dim: n,
            n_pos: d.num_positive(),
            simple_index: (0..rank).map(|i| d.simple_index(i)).collect(),
            elements,
            lookup,
            right_simple,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &WeylElement {
        &self.elements[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.elements[w].word
    }

    pub fn index_of_matrix(&self, m: &[i64]) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    /// `w * s_i`.
    pub fn mul_simple(&self, w: usize, i: usize) -> usize {
        self.right_simple[w][i]
    }

    /// The product `a * b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b]
            .word
            .iter()
            .fold(a, |w, &i| self.right_simple[w][i])
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.elements[a]
            .word
            .iter()
            .rev()
            .fold(0, |w, &i| self.right_simple[w][i])
    }

    pub fn act(&self, w: usize, mu: &[i64]) -> Vec<i64> {
        let m = &self.elements[w].matrix;
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| m[i * n + j] * mu[j]).sum())
            .collect()
    }

    pub fn act_root(&self, w: usize, j: usize) -> usize {
        self.elements[w].root_perm[j]
    }

    /// The reflection `s_alpha` for the root with index `j`.
    pub fn reflection(&self, d: &RootDatum, j: usize) -> usize {
        let r = d.root(j);
        let m = reflection_matrix(&r.vector, &r.coroot);
        self.lookup[&m]
    }

    /// Subgroup generated by `gens`, as sorted element indices.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for &g in gens {
                let x = self.mul(w, g);
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Subgroup generated by the reflections in the given roots.
    pub fn reflection_subgroup(&self, d: &RootDatum, roots: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = roots
            .iter()
            .map(|&j| if d.is_positive(j) { j } else { d.negate(j) })
            .map(|j| self.reflection(d, j))
            .collect();
        gens.sort_unstable();
        gens.dedup();
        self.generate(&gens)
    }

    /// `W_P`, generated by the Levi simple reflections.
    pub fn parabolic_subgroup(&self, p: &ParabolicSpec) -> Vec<usize> {
        let gens: Vec<usize> = p
            .levi_simples()
            .iter()
            .map(|&i| self.right_simple[0][i])
            .collect();
        self.generate(&gens)
    }

    fn sends_simple_positive(&self, w: usize, i: usize) -> bool {
        self.elements[w].root_perm[self.simple_index[i]] < self.n_pos
    }

    pub fn is_min_coset_rep(&self, w: usize, p: &ParabolicSpec) -> bool {
        p.levi_simples()
            .iter()
            .all(|&i| self.sends_simple_positive(w, i))
    }

    /// The minimal-length representative of `w W_P`.
    pub fn min_coset_rep(&self, mut w: usize, p: &ParabolicSpec) -> usize {
        while let Some(&i) = p
            .levi_simples()
            .iter()
            .find(|&&i| !self.sends_simple_positive(w, i))
        {
            w = self.right_simple[w][i];
        }
        w
    }

    /// `W^P = { v : v(alpha_i) > 0 for every Levi simple alpha_i }`.
    pub fn minimal_coset_reps(&self, p: &ParabolicSpec) -> Vec<usize> {
        (0..self.len())
            .filter(|&w| self.is_min_coset_rep(w, p))
            .collect()
    }

    /// `R+ ∩ w R-`, as root indices.
    pub fn inversion_set(&self, w: usize) -> Vec<usize> {
        let perm = &self.elements[w].root_perm;
        let mut out: Vec<usize> = (0..self.n_pos)
            .filter(|&b| perm[b] >= self.n_pos)
            .map(|b| perm[b + self.n_pos])
            .collect();
        out.sort_unstable();
        out
    }

    /// Determinant of the action on `X(T)`: `(-1)^length`.
    pub fn sign(&self, w: usize) -> i64 {
        if self.elements[w].length % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Convenience wrapper pairing a datum with its enumerated Weyl group.
#[derive(Clone, Debug)]
pub struct Group {
    pub datum: RootDatum,
    pub weyl: WeylGroup,
}

impl Group {
    pub fn new(datum: RootDatum, max_weyl: usize) -> Result<Group> {
        let weyl = WeylGroup::enumerate(&datum, max_weyl)?;
        Ok(Group { datum, weyl })
    }

    pub fn build(spec: &super::GroupSpec) -> Result<Group> {
        Self::new(RootDatum::build(spec)?, DEFAULT_MAX_WEYL)
    }
}
