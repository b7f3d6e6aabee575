use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;

use lefschetz_char::exactnum::{rat, CycNum, EpsSeries, NPoly, Rat};
use lefschetz_char::fixedlocus::FixedLocus;
use lefschetz_char::oracle::{char_at, char_at_regular, WeightTable, DEFAULT_MAX_WEIGHTS};
use lefschetz_char::rootdata::{Group, GroupSpec, ParabolicSpec};
use lefschetz_char::torus::{centralizer, TorsionElement};

const SMALL_GROUPS: [&str; 15] = [
    "SL2", "PGL2", "SL3", "PGL3", "GL3", "SL4", "PGL4", "GL4", "Sp4", "SO5", "B3", "B3.ad", "C3", "C3.ad", "G2",
];

fn group(name: &str) -> Group {
    Group::build(&name.parse::<GroupSpec>().unwrap()).unwrap()
}

fn torsion_upto(lattice_rank: usize, max_order: u32) -> Vec<TorsionElement> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in 1..=max_order {
        for nums in (0..lattice_rank).map(|_| 0..r as i64).multi_cartesian_product() {
            let t = TorsionElement::new(r, &nums).unwrap();
            if seen.insert((t.order(), t.numerators().to_vec())) {
                out.push(t);
            }
        }
    }
    out
}

fn cyc(order: u32, coeffs: &[i64]) -> CycNum {
    let mut counts = vec![0i64; order as usize];
    for (k, &c) in coeffs.iter().enumerate() {
        counts[k % order as usize] += c;
    }
    CycNum::from_power_counts(order, &counts)
}

proptest! {
    #[test]
    fn field_inverse(order in 1u32..=12, coeffs in prop::collection::vec(-5i64..=5, 1..8)) {
        let a = cyc(order, &coeffs);
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn embedding_commutes(
        order in 1u32..=6,
        k in 1u32..=6,
        a in prop::collection::vec(-4i64..=4, 1..7),
        b in prop::collection::vec(-4i64..=4, 1..7),
    ) {
        let (x, y) = (cyc(order, &a), cyc(order, &b));
        let m = order * k;
        prop_assert_eq!((&x + &y).embed(m), &x.embed(m) + &y.embed(m));
        prop_assert_eq!((&x * &y).embed(m), &x.embed(m) * &y.embed(m));
        if !y.is_zero() {
            prop_assert_eq!(x.checked_div(&y).unwrap().embed(m), x.embed(m).checked_div(&y.embed(m)).unwrap());
        }
    }

    #[test]
    fn series_inverse(
        order in 1u32..=6,
        lead in prop::collection::vec(-3i64..=3, 1..4),
        rest in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..4), 0..5),
    ) {
        let lead = cyc(order, &lead);
        prop_assume!(!lead.is_zero());
        let mut cs = vec![lead];
        cs.extend(rest.iter().map(|c| cyc(order, c)));
        let s = EpsSeries::from_constants(order, 0, cs);
        let prod = s.mul(&s.inv().unwrap());
        let trunc = s.truncation_order();
        prop_assert_eq!(prod.truncation_order(), trunc);
        for k in 0..=trunc {
            let c = prod.coefficient_at(k).unwrap();
            if k == 0 {
                prop_assert_eq!(c, NPoly::constant(CycNum::one(order)));
            } else {
                prop_assert!(c.is_zero());
            }
        }
    }
}

#[test]
fn parabolic_lengths_add() {
    for name in SMALL_GROUPS {
        let g = group(name);
        for p in ParabolicSpec::all(g.datum.rank()) {
            let wp = g.weyl.parabolic_subgroup(&p);
            let reps = g.weyl.minimal_coset_reps(&p);
            assert_eq!(reps.len() * wp.len(), g.weyl.len(), "{name}");
            for &v in &reps {
                for &w in &wp {
                    assert_eq!(
                        g.weyl.length(g.weyl.mul(v, w)),
                        g.weyl.length(v) + g.weyl.length(w),
                        "{name}"
                    );
                }
            }
        }
    }
}

#[test]
fn poincare_polynomial_matches_degrees() {
    for name in SMALL_GROUPS {
        let spec: GroupSpec = name.parse().unwrap();
        let g = Group::build(&spec).unwrap();
        let mut counts = vec![0i64; g.datum.num_positive() + 1];
        for w in 0..g.weyl.len() {
            counts[g.weyl.length(w)] += 1;
        }
        // prod_i (1 + q + ... + q^{d_i - 1})
        let mut expected = vec![1i64];
        for deg in spec.weyl_degrees().unwrap() {
            let mut next = vec![0i64; expected.len() + deg as usize - 1];
            for (i, c) in expected.iter().enumerate() {
                for j in 0..deg as usize {
                    next[i + j] += c;
                }
            }
            expected = next;
        }
        assert_eq!(counts, expected, "{name}");
    }
}

#[test]
fn rho_and_negation() {
    for name in SMALL_GROUPS {
        let g = group(name);
        let d = &g.datum;
        for j in 0..d.roots().len() {
            assert_eq!(d.negate(d.negate(j)), j);
            let neg: Vec<i64> = d.root(j).vector.iter().map(|x| -x).collect();
            assert_eq!(d.root_index(&neg), Some(d.negate(j)));
        }
        for c in d.simple_coroots() {
            let pairing: Rat = d.rho().iter().zip(c).map(|(a, &b)| a * rat(b, 1)).sum();
            assert_eq!(pairing, rat(1, 1), "{name}");
        }
    }
}

#[test]
fn centralizer_invariants() {
    for name in SMALL_GROUPS {
        let g = group(name);
        let d = &g.datum;
        for t in torsion_upto(d.lattice_rank(), 4) {
            let c = centralizer(&g, &t);
            assert_eq!(g.weyl.len() % c.weyl_order(), 0, "{name}");
            for &a in &c.roots {
                assert!(c.contains_root(d.negate(a)));
                let s = g.weyl.reflection(d, a);
                for &b in &c.roots {
                    assert!(c.contains_root(g.weyl.act_root(s, b)), "{name}: R' not closed");
                }
            }
            let probes: Vec<Vec<i64>> = (0..d.lattice_rank())
                .map(|i| (0..d.lattice_rank()).map(|j| (i == j) as i64 + (j == 0) as i64).collect())
                .collect();
            for &w in &c.weyl {
                for mu in &probes {
                    assert_eq!(t.exponent(&g.weyl.act(w, mu)), t.exponent(mu), "{name}");
                }
            }
            assert_eq!(t.is_regular(d), c.roots.is_empty());
        }
    }
}

#[test]
fn fixed_component_invariants() {
    for name in SMALL_GROUPS {
        let g = group(name);
        let d = &g.datum;
        for t in torsion_upto(d.lattice_rank(), 4) {
            let c = centralizer(&g, &t);
            for p in ParabolicSpec::all(d.rank()) {
                let locus = FixedLocus::new(&g, &p, &t);
                let total = d.unipotent_roots(&p).len();
                assert!(locus.components.iter().any(|x| x.v == 0));
                for comp in &locus.components {
                    assert_eq!(comp.dim + comp.normal.len(), total);
                    assert!(comp.normal.iter().all(|&b| !t.fixes_root(d, b)));
                    let vinv = g.weyl.inverse(comp.v);
                    assert!(c.positive.iter().all(|&a| d.is_positive(g.weyl.act_root(vinv, a))));
                }
                if p.is_borel() {
                    assert!(
                        locus.components.iter().all(|x| x.dim == c.positive.len()),
                        "{name}: unequal dimensions for t = {t:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn regular_character_formula_agrees() {
    for name in ["SL2", "PGL2", "SL3", "GL3", "Sp4", "SO5", "G2"] {
        let g = group(name);
        let d = &g.datum;
        let lambdas: Vec<Vec<i64>> = (0..d.lattice_rank())
            .map(|_| -6..=6i64)
            .multi_cartesian_product()
            .filter(|l| d.labels(l).iter().all(|&x| (0..=3).contains(&x)))
            .filter(|l| name != "GL3" || l[2] == 0)
            .collect();
        for t in torsion_upto(d.lattice_rank(), 4).into_iter().filter(|t| t.is_regular(d)) {
            for lambda in &lambdas {
                let tab = WeightTable::new(&g, lambda, DEFAULT_MAX_WEIGHTS).unwrap();
                let a = char_at(&t, &tab);
                assert_eq!(a, char_at_regular(&g, &t, lambda).unwrap(), "{name} {lambda:?}");
                assert_eq!(char_at(&t.invert(), &tab), a.conj());
                assert!(a.is_integral());
            }
        }
    }
}

#[test]
fn sl2_regular_character_is_periodic() {
    // at a regular element of order 3 the value depends only on lambda mod 3
    let g = group("SL2");
    let t = TorsionElement::new(3, &[1]).unwrap();
    let value = |m: i64| char_at(&t, &WeightTable::new(&g, &[m], DEFAULT_MAX_WEIGHTS).unwrap());
    for m in 0..9 {
        assert_eq!(value(m), value(m + 3), "m = {m}");
    }
    assert_eq!(value(2), CycNum::zero(3));
}
