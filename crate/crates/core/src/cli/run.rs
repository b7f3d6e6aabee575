//! Executes a resolved job and assembles the report.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::fit::fit_polynomial;
use super::job::{Job, Resolved, Task};
use super::wire::{CycWire, PolyWire};
use crate::error::{Error, Result};
use crate::exactnum::{CycNum, NPoly};
use crate::fixedlocus::{orbit_partition_crosscheck, verify_counting, CountingReport, OrbitReport};
use crate::lefschetz::{perturbed_cocharacter, CharPolynomial, LocalizationContext};
use crate::oracle::{char_at, TableCache};
use crate::rootdata::RootDatum;

#[derive(Clone, Debug, Serialize)]
pub struct TorsionWire {
    pub order: u32,
    pub numerators: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentWire {
    /// Reduced word of `v`, 1-based simple reflections.
    pub v_word: Vec<usize>,
    pub dim: usize,
    pub tangent: Vec<Vec<i64>>,
    pub normal: Vec<Vec<i64>>,
    pub levi_roots: Vec<Vec<i64>>,
    pub stabilizer_weyl_order: usize,
    pub fixed_points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterEntry {
    pub n: i64,
    pub at_t_inverse: CycWire,
    pub at_t: CycWire,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentPolynomial {
    pub v_word: Vec<usize>,
    pub dim: usize,
    pub poly: PolyWire,
    pub leading_closed_form: CycWire,
    /// `int c_1^{d_v}` as `[num, den]`.
    pub integral: [String; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueEntry {
    pub residue: u32,
    pub total: PolyWire,
    pub components: Vec<ComponentPolynomial>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueDegreeWire {
    pub residue: u32,
    pub degree: Option<usize>,
    pub top_coefficient: CycWire,
    pub closed_form_top: CycWire,
    pub degree_within_bound: bool,
    pub exact_degree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positivity: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeWire {
    pub max_dim: usize,
    pub maximizers: Vec<Vec<usize>>,
    pub unique_maximizer: bool,
    pub regular: bool,
    pub residues: Vec<ResidueDegreeWire>,
}

/// One verification outcome with both sides of the comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub context: String,
    pub passed: bool,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub job: Job,
    pub group: String,
    pub lattice_rank: usize,
    pub weyl_order: usize,
    pub t: TorsionWire,
    /// 1-based Levi simple indices of `P`.
    pub parabolic: Vec<usize>,
    pub cocharacter: Vec<i64>,
    pub n_range: [i64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentWire>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counting: Option<CountingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<OrbitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<CharacterEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomials: Option<Vec<ResidueEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<DegreeWire>,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

fn root_vectors(d: &RootDatum, roots: &[usize]) -> Vec<Vec<i64>> {
    roots.iter().map(|&j| d.root(j).vector.clone()).collect()
}

fn cyc(c: &CycNum) -> Value {
    serde_json::to_value(CycWire::from(c)).expect("serializable")
}

fn poly(p: &NPoly) -> Value {
    serde_json::to_value(PolyWire::from(p)).expect("serializable")
}

fn verdict(check: &str, context: String, passed: bool, lhs: Value, rhs: Value) -> Verdict {
    Verdict {
        check: check.into(),
        context,
        passed,
        lhs,
        rhs,
    }
}

fn scaled(lambda: &[i64], n: i64) -> Vec<i64> {
    lambda.iter().map(|x| n * x).collect()
}

pub fn execute(job: &Job, res: &Resolved) -> Result<Report> {
    let g = &res.group;
    let d = &g.datum;
    let t = &res.t;
    let r = t.order();
    let lambda = &res.lambda;
    let ctx = LocalizationContext::with_default_h(g, &res.parabolic, t)?;
    let locus = ctx.locus();
    let max_dim = locus.max_dim() as i64;
    let n_range = res.n_range.unwrap_or([0, max_dim + 2 * r as i64]);
    let ns: Vec<i64> = (n_range[0]..=n_range[1]).collect();
    let tables = TableCache::new();
    let mut verdicts = Vec::new();

    let components = res.wants(Task::Components).then(|| {
        ctx.components()
            .iter()
            .map(|cl| {
                let c = &cl.component;
                ComponentWire {
                    v_word: one_based(&c.word),
                    dim: c.dim,
                    tangent: root_vectors(d, &c.tangent),
                    normal: root_vectors(d, &c.normal),
                    levi_roots: root_vectors(d, &c.levi_roots),
                    stabilizer_weyl_order: c.stabilizer_weyl_order(),
                    fixed_points: cl.fixed_points().len(),
                }
            })
            .collect()
    });

    let want_counting = res.wants(Task::Counting) || res.wants(Task::Verify);
    let counting = want_counting.then(|| verify_counting(g, locus));
    let orbits = want_counting.then(|| orbit_partition_crosscheck(g, locus));

    let characters = if res.wants(Task::Character) {
        let inverse_ctx = LocalizationContext::with_default_h(g, &res.parabolic, &t.invert())?;
        let entries = ns
            .par_iter()
            .map(|&n| {
                let at_inv = ctx.character(lambda, n)?;
                let at_t = inverse_ctx.character(lambda, n)?;
                Ok(CharacterEntry {
                    n,
                    text: at_t.to_string(),
                    at_t_inverse: CycWire::from(&at_inv),
                    at_t: CycWire::from(&at_t),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some(entries)
    } else {
        None
    };

    let (polynomials, degree) = if res.wants(Task::Asymptotics) {
        let mut entries = Vec::new();
        for &p in &res.residues {
            let total = ctx.total_polynomial(lambda, p)?;
            let comps = (0..ctx.components().len())
                .map(|i| {
                    let c = &ctx.components()[i].component;
                    let q = ctx.component_integral(i, lambda);
                    Ok(ComponentPolynomial {
                        v_word: one_based(&c.word),
                        dim: c.dim,
                        poly: PolyWire::from(&ctx.component_polynomial(i, lambda, p)?.poly),
                        leading_closed_form: CycWire::from(&ctx.leading_coefficient(i, lambda, p)?),
                        integral: [q.numer().to_string(), q.denom().to_string()],
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            entries.push(ResidueEntry {
                residue: p,
                total: PolyWire::from(&total.poly),
                components: comps,
            });
        }
        let rep = ctx.degree_report(lambda)?;
        let wire = DegreeWire {
            max_dim: rep.max_dim,
            maximizers: rep.maximizers.iter().map(|w| one_based(w)).collect(),
            unique_maximizer: rep.unique_maximizer,
            regular: rep.regular,
            residues: rep
                .residues
                .iter()
                .filter(|x| res.residues.contains(&x.residue))
                .map(|x| ResidueDegreeWire {
                    residue: x.residue,
                    degree: x.degree,
                    top_coefficient: CycWire::from(&x.top_coefficient),
                    closed_form_top: CycWire::from(&x.closed_form_top),
                    degree_within_bound: x.degree_within_bound,
                    exact_degree: x.exact_degree,
                    positivity: x.positivity,
                })
                .collect(),
        };
        (Some(entries), Some(wire))
    } else {
        (None, None)
    };

    if res.wants(Task::Verify) {
        let c = counting.as_ref().expect("computed for verify");
        verdicts.push(verdict(
            "orbit_sum",
            "sum over Y_S of |W'|/|W'_Q| equals |W^P|".into(),
            c.orbit_sum_holds,
            json!(c.orbit_sum),
            json!(c.coset_count),
        ));
        verdicts.push(verdict(
            "lower_bound",
            "|Y_S| * |W'| >= |W^P|".into(),
            c.lower_bound_holds,
            json!(c.ys_count * c.centralizer_weyl_order),
            json!(c.coset_count),
        ));
        if let Some(ok) = c.borel_equality_holds {
            verdicts.push(verdict(
                "borel_count",
                "|Y_S| * |W'| = |W|".into(),
                ok,
                json!(c.ys_count * c.centralizer_weyl_order),
                json!(c.weyl_order),
            ));
        }
        let o = orbits.as_ref().expect("computed for verify");
        verdicts.push(verdict(
            "orbit_partition",
            "W'-orbits on W^P match Y_S and stabilizer orders".into(),
            o.passed,
            json!({"blocks": o.block_count, "sizes": o.block_sizes}),
            json!({"ys": o.ys_count, "sizes": o.expected_sizes}),
        ));
        verdicts.extend(verify_characters(&ctx, res, &tables, &ns)?);
        verdicts.extend(verify_polynomials(&ctx, res, &tables)?);
    }

    let passed = verdicts.iter().all(|v| v.passed);
    Ok(Report {
        job: job.clone(),
        group: d.label().to_string(),
        lattice_rank: d.lattice_rank(),
        weyl_order: g.weyl.len(),
        t: TorsionWire {
            order: r,
            numerators: t.numerators().to_vec(),
        },
        parabolic: one_based(res.parabolic.levi_simples()),
        cocharacter: ctx.cocharacter().to_vec(),
        n_range,
        components,
        counting: counting.filter(|_| res.wants(Task::Counting)),
        orbits: orbits.filter(|_| res.wants(Task::Counting)),
        characters,
        polynomials,
        degree,
        verdicts,
        passed,
        timing_ms: None,
    })
}

/// Lefschetz sum against the Freudenthal oracle at `t^{-1}`, one verdict per `n`.
fn verify_characters(
    ctx: &LocalizationContext,
    res: &Resolved,
    tables: &TableCache,
    ns: &[i64],
) -> Result<Vec<Verdict>> {
    let t_inv = ctx.t().invert();
    ns.par_iter()
        .map(|&n| {
            let lhs = match ctx.character(&res.lambda, n) {
                Ok(v) => v,
                Err(Error::PoleCancellation { word, order }) => {
                    return Ok(verdict(
                        "pole_cancellation",
                        format!("n = {n}, component {:?}", one_based(&word)),
                        false,
                        json!(order),
                        json!(null),
                    ))
                }
                Err(e) => return Err(e),
            };
            let table = tables.get(&res.group, &scaled(&res.lambda, n), res.limits.max_weights)?;
            let rhs = char_at(&t_inv, &table);
            Ok(verdict(
                "oracle_equivalence",
                format!("n = {n}"),
                lhs == rhs,
                cyc(&lhs),
                cyc(&rhs),
            ))
        })
        .collect()
}

/// Per residue: h-independence, the degree report, and the fit of oracle samples.
fn verify_polynomials(ctx: &LocalizationContext, res: &Resolved, tables: &TableCache) -> Result<Vec<Verdict>> {
    let g = &res.group;
    let r = ctx.modulus();
    let max_dim = ctx.locus().max_dim();
    let h2 = perturbed_cocharacter(&g.datum, res.seed)?;
    let other = LocalizationContext::new(g, &res.parabolic, ctx.t(), h2.clone())?;
    let report = ctx.degree_report(&res.lambda)?;
    let t_inv = ctx.t().invert();
    let mut out = Vec::new();
    for &p in &res.residues {
        let ctx_p = |c: &LocalizationContext| -> Result<Vec<CharPolynomial>> {
            (0..c.components().len())
                .map(|i| c.component_polynomial(i, &res.lambda, p))
                .collect()
        };
        let a = ctx_p(ctx)?;
        let b = ctx_p(&other)?;
        out.push(verdict(
            "h_independence",
            format!("residue {p}, h = {:?} vs {:?}", ctx.cocharacter(), h2),
            a == b,
            Value::Array(a.iter().map(|x| poly(&x.poly)).collect()),
            Value::Array(b.iter().map(|x| poly(&x.poly)).collect()),
        ));

        let rd = &report.residues[p as usize];
        out.push(verdict(
            "degree_bound",
            format!("residue {p}, max d_v = {max_dim}"),
            rd.degree_within_bound,
            json!(rd.degree),
            json!(max_dim),
        ));
        out.push(verdict(
            "leading_coefficient",
            format!("residue {p}, coefficient of n^{max_dim}"),
            rd.top_coefficient == rd.closed_form_top,
            cyc(&rd.top_coefficient),
            cyc(&rd.closed_form_top),
        ));
        if let Some(pos) = rd.positivity {
            out.push(verdict(
                "leading_positive",
                format!("residue {p}, order-two element"),
                pos,
                cyc(&rd.top_coefficient),
                json!("positive sum of integrals times 2^-|N_v|"),
            ));
        }

        let samples: Vec<(i64, CycNum)> = (0..=max_dim as i64 + 2)
            .into_par_iter()
            .map(|k| {
                let n = p as i64 + k * r as i64;
                let table = tables.get(g, &scaled(&res.lambda, n), res.limits.max_weights)?;
                Ok((n, char_at(&t_inv, &table)))
            })
            .collect::<Result<Vec<_>>>()?;
        let fitted = fit_polynomial(&samples, r, p)?;
        let total = ctx.total_polynomial(&res.lambda, p)?;
        out.push(verdict(
            "oracle_fit",
            format!("residue {p}, {} oracle samples", samples.len()),
            fitted == total.poly && fitted.degree().is_none_or(|k| k <= max_dim),
            poly(&fitted),
            poly(&total.poly),
        ));
    }
    Ok(out)
}
