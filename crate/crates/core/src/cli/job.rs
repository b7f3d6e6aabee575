//! Job files: what to compute, for which group, element and weight.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::DEFAULT_MAX_WEIGHTS;
use crate::rootdata::{
    parabolic_for_lambda, Family, Group, GroupSpec, Isogeny, ParabolicSpec, RootDatum,
    DEFAULT_MAX_WEYL,
};
use crate::torus::TorsionElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupField {
    /// Shorthand such as `"GL3"`, `"Sp4"`, `"G2"`, `"B3.ad"`.
    Name(String),
    Typed {
        #[serde(rename = "type")]
        family: String,
        rank: usize,
        #[serde(default)]
        isogeny: Option<String>,
    },
    Explicit { explicit: ExplicitGroup },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitGroup {
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub lattice_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionField {
    pub order: u32,
    pub numerators: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParabolicField {
    /// Only `"auto"`: `P = P_lambda`.
    Auto(String),
    /// 1-based indices of the Levi simple roots.
    Levi(Vec<usize>),
}

impl Default for ParabolicField {
    fn default() -> Self {
        ParabolicField::Auto("auto".into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Components,
    Counting,
    Character,
    Asymptotics,
    Verify,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_weyl: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_weights: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub group: GroupField,
    pub t: TorsionField,
    pub lambda: Vec<i64>,
    #[serde(default)]
    pub parabolic: ParabolicField,
    #[serde(default = "default_tasks")]
    pub tasks: Vec<Task>,
    /// Inclusive `[min, max]` range of `n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_range: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<u32>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub caps: Caps,
}

fn default_tasks() -> Vec<Task> {
    vec![Task::Components, Task::Counting, Task::Character]
}

impl Job {
    pub fn from_json(text: &str) -> Result<Job> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn group_spec(field: &GroupField) -> Result<GroupSpec> {
    match field {
        GroupField::Name(s) => s.parse(),
        GroupField::Typed {
            family,
            rank,
            isogeny,
        } => {
            let fam = match family.to_ascii_uppercase().as_str() {
                "A" => Family::A,
                "B" => Family::B,
                "C" => Family::C,
                "D" => Family::D,
                "E" => Family::E,
                "F" => Family::F,
                "G" => Family::G,
                _ => return Err(Error::UnsupportedGroup(format!("type {family}"))),
            };
            let iso = isogeny.as_deref().unwrap_or("simply-connected");
            match iso.to_ascii_lowercase().as_str() {
                "simply-connected" | "sc" => Ok(GroupSpec::simple(fam, *rank, Isogeny::SimplyConnected)),
                "adjoint" | "ad" => Ok(GroupSpec::simple(fam, *rank, Isogeny::Adjoint)),
                "gl" if fam == Family::A => Ok(GroupSpec::GL(rank + 1)),
                "gl" => Err(Error::UnsupportedGroup(format!(
                    "GL isogeny requested for type {family}"
                ))),
                _ => Err(Error::UnsupportedGroup(format!("isogeny {iso}"))),
            }
        }
        GroupField::Explicit { explicit } => Ok(GroupSpec::Explicit {
            simple_roots: explicit.simple_roots.clone(),
            simple_coroots: explicit.simple_coroots.clone(),
            lattice_rank: explicit.lattice_rank,
        }),
    }
}

/// Effective limits after command-line overrides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_weyl: usize,
    pub max_weights: usize,
}

impl Limits {
    pub fn resolve(job: &Caps, max_weyl: Option<usize>, max_weights: Option<usize>) -> Limits {
        Limits {
            max_weyl: max_weyl.or(job.max_weyl).unwrap_or(DEFAULT_MAX_WEYL),
            max_weights: max_weights.or(job.max_weights).unwrap_or(DEFAULT_MAX_WEIGHTS),
        }
    }
}

/// A validated job.
#[derive(Debug)]
pub struct Resolved {
    pub group: Group,
    pub t: TorsionElement,
    pub lambda: Vec<i64>,
    pub parabolic: ParabolicSpec,
    pub tasks: Vec<Task>,
    pub n_range: Option<[i64; 2]>,
    pub residues: Vec<u32>,
    pub seed: u64,
    pub limits: Limits,
}

impl Resolved {
    pub fn new(job: &Job, limits: Limits, seed: u64) -> Result<Resolved> {
        let spec = group_spec(&job.group)?;
        let datum = RootDatum::build(&spec)?;
        let group = Group::new(datum, limits.max_weyl)?;
        let d = &group.datum;
        let t = TorsionElement::for_datum(d, job.t.order, &job.t.numerators)?;
        if job.lambda.len() != d.lattice_rank() {
            return Err(Error::Job(format!(
                "lambda has {} entries, character lattice has rank {}",
                job.lambda.len(),
                d.lattice_rank()
            )));
        }
        if !d.is_dominant(&job.lambda) {
            return Err(Error::NotDominant(job.lambda.clone()));
        }
        let parabolic = match &job.parabolic {
            ParabolicField::Auto(s) if s == "auto" => parabolic_for_lambda(d, &job.lambda)?,
            ParabolicField::Auto(s) => {
                return Err(Error::Job(format!(
                    "parabolic must be \"auto\" or a list of Levi simple indices, got {s:?}"
                )))
            }
            ParabolicField::Levi(ix) => {
                if ix.contains(&0) {
                    return Err(Error::Job("Levi simple indices are 1-based".into()));
                }
                ParabolicSpec::new(ix.iter().map(|i| i - 1).collect(), d.rank())?
            }
        };
        crate::rootdata::check_extends(d, &parabolic, &job.lambda)?;
        let r = t.order();
        let residues = match &job.residues {
            Some(rs) => {
                if let Some(bad) = rs.iter().find(|&&p| p >= r) {
                    return Err(Error::Job(format!(
                        "residue {bad} outside [0, {r}) for an element of order {r}"
                    )));
                }
                let mut rs = rs.clone();
                rs.sort_unstable();
                rs.dedup();
                rs
            }
            None => (0..r).collect(),
        };
        if let Some([lo, hi]) = job.n_range {
            if lo < 0 || lo > hi {
                return Err(Error::Job(format!("invalid n_range [{lo}, {hi}]")));
            }
        }
        let mut tasks = job.tasks.clone();
        tasks.sort_unstable();
        tasks.dedup();
        Ok(Resolved {
            group,
            t,
            lambda: job.lambda.clone(),
            parabolic,
            tasks,
            n_range: job.n_range,
            residues,
            seed,
            limits,
        })
    }

    pub fn wants(&self, task: Task) -> bool {
        self.tasks.contains(&task)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(text: &str) -> Result<Resolved> {
        let job = Job::from_json(text)?;
        Resolved::new(&job, Limits::resolve(&job.caps, None, None), job.seed)
    }

    #[test]
    fn group_descriptors() {
        let g = |s: &str| group_spec(&serde_json::from_str::<GroupField>(s).unwrap());
        assert_eq!(g("\"GL3\"").unwrap(), GroupSpec::GL(3));
        assert_eq!(
            g(r#"{"type": "A", "rank": 2, "isogeny": "GL"}"#).unwrap(),
            GroupSpec::GL(3)
        );
        assert_eq!(
            g(r#"{"type": "G", "rank": 2, "isogeny": "adjoint"}"#).unwrap(),
            GroupSpec::simple(Family::G, 2, Isogeny::Adjoint)
        );
        assert!(g(r#"{"type": "C", "rank": 2, "isogeny": "GL"}"#).is_err());
        assert!(matches!(
            g(r#"{"explicit": {"simple_roots": [[2]], "simple_coroots": [[1]], "lattice_rank": 1}}"#),
            Ok(GroupSpec::Explicit { .. })
        ));
    }

    #[test]
    fn validation() {
        let ok = resolve(r#"{"group": "GL3", "t": {"order": 4, "numerators": [0, 0, 2]}, "lambda": [1, 0, 0]}"#)
            .unwrap();
        assert_eq!(ok.t.order(), 2);
        assert_eq!(ok.residues, vec![0, 1]);
        assert_eq!(ok.parabolic.levi_simples(), &[1]);

        let bad = [
            r#"{"group": "GL3", "t": {"order": 2, "numerators": [0, 1]}, "lambda": [1, 0, 0]}"#,
            r#"{"group": "GL3", "t": {"order": 2, "numerators": [0, 0, 1]}, "lambda": [0, 1, 0]}"#,
            r#"{"group": "GL3", "t": {"order": 2, "numerators": [0, 0, 1]}, "lambda": [1, 0, 0], "residues": [3]}"#,
            r#"{"group": "GL3", "t": {"order": 4, "numerators": [0, 0, 2]}, "lambda": [1, 0, 0], "residues": [2]}"#,
            r#"{"group": "GL3", "t": {"order": 2, "numerators": [0, 0, 1]}, "lambda": [2, 1, 0], "parabolic": [2]}"#,
            r#"{"group": "GL3", "t": {"order": 2, "numerators": [0, 0, 1]}, "lambda": [1, 0, 0], "parabolic": "borel"}"#,
            r#"{"group": "GL3", "t": {"order": 2, "numerators": [0, 0, 1]}, "lambda": [1, 0, 0], "bogus": 1}"#,
        ];
        for b in bad {
            assert!(resolve(b).is_err(), "{b}");
        }
    }

    #[test]
    fn explicit_levi() {
        let r = resolve(r#"{"group": "SL3", "t": {"order": 1, "numerators": [0, 0]}, "lambda": [0, 1], "parabolic": [1]}"#)
            .unwrap();
        assert_eq!(r.parabolic.levi_simples(), &[0]);
        let r = resolve(r#"{"group": "SL3", "t": {"order": 1, "numerators": [0, 0]}, "lambda": [0, 1], "parabolic": []}"#)
            .unwrap();
        assert!(r.parabolic.is_borel());
    }
}
