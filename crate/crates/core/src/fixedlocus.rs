//! Connected components of the fixed locus `(G/P)^t`, their discrete
//! invariants, and the counting identities relating them to `W^P`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::{Group, ParabolicSpec};
use crate::torus::{centralizer, CentralizerData, TorsionElement};

/// One connected component `X_P^t(v)`, keyed by its representative `v`.
///
/// Weight lists hold root indices into the datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComponent {
    /// Index of `v` in the Weyl group.
    pub v: usize,
    pub word: Vec<usize>,
    pub dim: usize,
    /// `v R_P^- ∩ R'`.
    pub tangent: Vec<usize>,
    /// `N_v = v R_P^+ \ R'`.
    pub normal: Vec<usize>,
    /// `R' ∩ v R_L`.
    pub levi_roots: Vec<usize>,
    /// `W'_{Q_v} = <s_alpha : alpha in levi_roots>`, as Weyl element indices.
    pub stabilizer: Vec<usize>,
}

impl FixedComponent {
    pub fn stabilizer_weyl_order(&self) -> usize {
        self.stabilizer.len()
    }
}

/// The full fixed-locus computation for one `(G, P, t)`.
#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub parabolic: ParabolicSpec,
    pub t: TorsionElement,
    pub centralizer: CentralizerData,
    /// `W^P`.
    pub coset_reps: Vec<usize>,
    pub components: Vec<FixedComponent>,
}

impl FixedLocus {
    pub fn new(g: &Group, p: &ParabolicSpec, t: &TorsionElement) -> FixedLocus {
        let c = centralizer(g, t);
        let coset_reps = g.weyl.minimal_coset_reps(p);
        let components = compute_ys(g, p, &c)
            .into_iter()
            .map(|v| build_component(g, p, &c, v))
            .collect();
        FixedLocus {
            parabolic: p.clone(),
            t: t.clone(),
            centralizer: c,
            coset_reps,
            components,
        }
    }

    pub fn max_dim(&self) -> usize {
        self.components.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn component(&self, v: usize) -> Option<&FixedComponent> {
        self.components.iter().find(|c| c.v == v)
    }
}

/// `Y_S = { v in W^P : (R+ ∩ v R-) ∩ R' = ∅ }`, sorted by Weyl element index.
pub fn compute_ys(g: &Group, p: &ParabolicSpec, c: &CentralizerData) -> Vec<usize> {
    g.weyl
        .minimal_coset_reps(p)
        .into_iter()
        .filter(|&v| {
            g.weyl
                .inversion_set(v)
                .iter()
                .all(|&j| !c.contains_root(j))
        })
        .collect()
}

/// Component data for `v`, which must lie in `Y_S`.
pub fn component_data(
    g: &Group,
    p: &ParabolicSpec,
    c: &CentralizerData,
    v: usize,
) -> Result<FixedComponent> {
    let in_ys = g.weyl.is_min_coset_rep(v, p)
        && g.weyl
            .inversion_set(v)
            .iter()
            .all(|&j| !c.contains_root(j));
    if !in_ys {
        return Err(Error::NotInFixedIndex(g.weyl.word(v).to_vec()));
    }
    Ok(build_component(g, p, c, v))
}

fn build_component(g: &Group, p: &ParabolicSpec, c: &CentralizerData, v: usize) -> FixedComponent {
    let d = &g.datum;
    let mut tangent = Vec::new();
    let mut normal = Vec::new();
    for beta in d.unipotent_roots(p) {
        let vb = g.weyl.act_root(v, beta);
        if c.contains_root(vb) {
            tangent.push(d.negate(vb));
        } else {
            normal.push(vb);
        }
    }
    tangent.sort_unstable();
    normal.sort_unstable();
    let mut levi_roots: Vec<usize> = d
        .levi_roots(p)
        .into_iter()
        .map(|j| g.weyl.act_root(v, j))
        .filter(|&j| c.contains_root(j))
        .collect();
    levi_roots.sort_unstable();
    let stabilizer = g.weyl.reflection_subgroup(d, &levi_roots);
    FixedComponent {
        v,
        word: g.weyl.word(v).to_vec(),
        dim: tangent.len(),
        tangent,
        normal,
        levi_roots,
        stabilizer,
    }
}

/// Outcome of the counting identities relating `Y_S`, `W'` and `W^P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingReport {
    pub weyl_order: usize,
    pub centralizer_weyl_order: usize,
    pub coset_count: usize,
    pub ys_count: usize,
    /// `|W'| / |W'_{Q_v}|` for each `v in Y_S`.
    pub orbit_sizes: Vec<usize>,
    /// `sum_v |W'| / |W'_{Q_v}|` compared with `|W^P|`.
    pub orbit_sum: usize,
    pub orbit_sum_holds: bool,
    /// `|Y_S| >= |W^P| / |W'|`.
    pub lower_bound_holds: bool,
    /// For `P = B`: `|Y_S| = |W| / |W'|`; absent otherwise.
    pub borel_equality_holds: Option<bool>,
}

impl CountingReport {
    pub fn passed(&self) -> bool {
        self.orbit_sum_holds && self.lower_bound_holds && self.borel_equality_holds != Some(false)
    }
}

pub fn verify_counting(g: &Group, locus: &FixedLocus) -> CountingReport {
    let wp = locus.centralizer.weyl_order();
    let orbit_sizes: Vec<usize> = locus
        .components
        .iter()
        .map(|c| wp / c.stabilizer_weyl_order())
        .collect();
    let exact_division = locus
        .components
        .iter()
        .all(|c| wp % c.stabilizer_weyl_order() == 0);
    let orbit_sum = orbit_sizes.iter().sum();
    let ys = locus.components.len();
    let cosets = locus.coset_reps.len();
    CountingReport {
        weyl_order: g.weyl.len(),
        centralizer_weyl_order: wp,
        coset_count: cosets,
        ys_count: ys,
        orbit_sum_holds: exact_division && orbit_sum == cosets,
        orbit_sum,
        orbit_sizes,
        lower_bound_holds: ys * wp >= cosets,
        borel_equality_holds: locus
            .parabolic
            .is_borel()
            .then(|| ys * wp == g.weyl.len()),
    }
}

/// Partition of `W^P` into `W'`-orbits of the `T`-fixed points `wP/P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub block_count: usize,
    pub ys_count: usize,
    /// Block sizes, in the order of their minimal-length members.
    pub block_sizes: Vec<usize>,
    /// `|W'| / |W'_{Q_v}|` for the `Y_S` element in each block.
    pub expected_sizes: Vec<usize>,
    /// Every block's minimal-length member lies in `Y_S`.
    pub minima_in_ys: bool,
    pub passed: bool,
}

pub fn orbit_partition_crosscheck(g: &Group, locus: &FixedLocus) -> OrbitReport {
    let w = &g.weyl;
    let p = &locus.parabolic;
    let mut block_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &x in &locus.coset_reps {
        if block_of.contains_key(&x) {
            continue;
        }
        let mut members: Vec<usize> = locus
            .centralizer
            .weyl
            .iter()
            .map(|&u| w.min_coset_rep(w.mul(u, x), p))
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            block_of.insert(m, blocks.len());
        }
        blocks.push(members);
    }
    let wp = locus.centralizer.weyl_order();
    let mut minima_in_ys = true;
    let mut sized: Vec<(usize, usize, usize)> = Vec::new();
    for b in &blocks {
        let min = *b.iter().min_by_key(|&&m| (w.length(m), m)).expect("nonempty block");
        let expected = match locus.component(min) {
            Some(c) => wp / c.stabilizer_weyl_order(),
            None => {
                minima_in_ys = false;
                0
            }
        };
        sized.push((min, b.len(), expected));
    }
    sized.sort_unstable();
    let block_sizes: Vec<usize> = sized.iter().map(|s| s.1).collect();
    let expected_sizes: Vec<usize> = sized.iter().map(|s| s.2).collect();
    let ys_count = locus.components.len();
    OrbitReport {
        block_count: blocks.len(),
        ys_count,
        passed: minima_in_ys && blocks.len() == ys_count && block_sizes == expected_sizes,
        block_sizes,
        expected_sizes,
        minima_in_ys,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{parabolic_for_lambda, GroupSpec};

    fn group(s: &str) -> Group {
        Group::build(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    /// `P` with `G/P = P^{n-1}` and `t = ((+1)^m, (-1)^{n-m})`.
    fn projective_case(n: usize, m: usize) -> (Group, FixedLocus) {
        let g = Group::build(&GroupSpec::GL(n)).unwrap();
        let mut lambda = vec![0; n];
        lambda[0] = 1;
        let p = parabolic_for_lambda(&g.datum, &lambda).unwrap();
        let nums: Vec<i64> = (0..n).map(|i| (i >= m) as i64).collect();
        let t = TorsionElement::new(2, &nums).unwrap();
        let locus = FixedLocus::new(&g, &p, &t);
        (g, locus)
    }

    #[test]
    fn identity_has_one_component() {
        let g = group("GL3");
        let t = TorsionElement::identity(3);
        for p in ParabolicSpec::all(2) {
            let locus = FixedLocus::new(&g, &p, &t);
            assert_eq!(locus.components.len(), 1);
            let c = &locus.components[0];
            assert_eq!(c.v, 0);
            assert!(c.normal.is_empty());
            assert_eq!(c.dim, g.datum.unipotent_roots(&p).len());
            assert!(verify_counting(&g, &locus).passed());
            let orbits = orbit_partition_crosscheck(&g, &locus);
            assert!(orbits.passed);
            assert_eq!(orbits.block_sizes, vec![locus.coset_reps.len()]);
        }
    }

    #[test]
    fn regular_element_gives_points() {
        let g = group("SL2");
        let t = TorsionElement::new(4, &[1]).unwrap();
        let locus = FixedLocus::new(&g, &ParabolicSpec::borel(), &t);
        assert_eq!(locus.components.len(), 2);
        assert!(locus.components.iter().all(|c| c.dim == 0));
        let orbits = orbit_partition_crosscheck(&g, &locus);
        assert_eq!(orbits.block_sizes, vec![1, 1]);
    }

    #[test]
    fn adjoint_a1_order_two() {
        let g = group("PGL2");
        let t = TorsionElement::new(2, &[1]).unwrap();
        assert_eq!(t.eval_weight(&[1]).unwrap().as_rational().unwrap(), crate::exactnum::rat_int(-1));
        let locus = FixedLocus::new(&g, &ParabolicSpec::borel(), &t);
        assert_eq!(locus.components.len(), 2);
        let report = verify_counting(&g, &locus);
        assert_eq!(report.borel_equality_holds, Some(true));
        assert!(report.passed());
    }

    #[test]
    fn projective_space_components() {
        for n in 2..=5 {
            for m in 1..n {
                let (g, locus) = projective_case(n, m);
                let mut dims: Vec<usize> = locus.components.iter().map(|c| c.dim).collect();
                dims.sort_unstable();
                let mut expected = vec![m - 1, n - m - 1];
                expected.sort_unstable();
                assert_eq!(dims, expected, "n={n} m={m}");
                let report = verify_counting(&g, &locus);
                assert!(report.passed(), "{report:?}");
                assert!(orbit_partition_crosscheck(&g, &locus).passed);
            }
        }
        let (g, locus) = projective_case(3, 1);
        assert_eq!(verify_counting(&g, &locus).orbit_sizes.iter().sum::<usize>(), 3);
        let mut sizes = orbit_partition_crosscheck(&g, &locus).block_sizes;
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn gl3_borel_order_two() {
        let g = group("GL3");
        let t = TorsionElement::new(2, &[0, 0, 1]).unwrap();
        let locus = FixedLocus::new(&g, &ParabolicSpec::borel(), &t);
        assert_eq!(locus.components.len(), 3);
        assert!(locus.components.iter().all(|c| c.dim == 1));
        let report = verify_counting(&g, &locus);
        assert_eq!(report.borel_equality_holds, Some(true));
    }

    #[test]
    fn component_data_rejects_outside_ys() {
        let g = group("GL3");
        let t = TorsionElement::identity(3);
        let c = centralizer(&g, &t);
        let p = ParabolicSpec::borel();
        assert!(component_data(&g, &p, &c, 0).is_ok());
        let s1 = g.weyl.mul_simple(0, 0);
        assert!(matches!(
            component_data(&g, &p, &c, s1),
            Err(Error::NotInFixedIndex(w)) if w == vec![0]
        ));
    }

    #[test]
    fn tangent_normal_split() {
        let g = group("G2");
        let t = TorsionElement::new(3, &[1, 0]).unwrap();
        for p in ParabolicSpec::all(2) {
            let locus = FixedLocus::new(&g, &p, &t);
            let total = g.datum.unipotent_roots(&p).len();
            for comp in &locus.components {
                assert_eq!(comp.dim + comp.normal.len(), total);
                assert!(comp.normal.iter().all(|&b| !t.fixes_root(&g.datum, b)));
                let vinv = g.weyl.inverse(comp.v);
                assert!(locus
                    .centralizer
                    .positive
                    .iter()
                    .all(|&a| g.datum.is_positive(g.weyl.act_root(vinv, a))));
            }
        }
    }
}
