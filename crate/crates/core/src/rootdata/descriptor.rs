//! Group descriptors and the Cartan matrices of the finite types.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn parse(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
}

/// Describes which connected reductive group to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// A simple type with its isogeny class.
    Cartan {
        family: Family,
        rank: usize,
        isogeny: Isogeny,
    },
    /// `GL_n` with character lattice `Z^n`.
    GL(usize),
    /// Explicit simple roots and coroots over a lattice of the given rank.
    Explicit {
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        lattice_rank: usize,
    },
}

impl GroupSpec {
    pub fn simple(family: Family, rank: usize, isogeny: Isogeny) -> Self {
        GroupSpec::Cartan {
            family,
            rank,
            isogeny,
        }
    }

    pub fn sl(n: usize) -> Self {
        Self::simple(Family::A, n - 1, Isogeny::SimplyConnected)
    }

    pub fn pgl(n: usize) -> Self {
        Self::simple(Family::A, n - 1, Isogeny::Adjoint)
    }

    pub fn sp(two_n: usize) -> Self {
        Self::simple(Family::C, two_n / 2, Isogeny::SimplyConnected)
    }

    pub fn g2() -> Self {
        Self::simple(Family::G, 2, Isogeny::SimplyConnected)
    }

    /// Classical number of roots, where the type is known.
    pub fn expected_root_count(&self) -> Option<usize> {
        match *self {
            GroupSpec::GL(n) => Some(n * n.saturating_sub(1)),
            GroupSpec::Cartan { family, rank: n, .. } => Some(match family {
                Family::A => n * (n + 1),
                Family::B | Family::C => 2 * n * n,
                Family::D => 2 * n * (n - 1),
                Family::E => match n {
                    6 => 72,
                    7 => 126,
                    _ => 240,
                },
                Family::F => 48,
                Family::G => 12,
            }),
            GroupSpec::Explicit { .. } => None,
        }
    }

    /// Degrees of the basic invariants of the Weyl group.
    pub fn weyl_degrees(&self) -> Option<Vec<u32>> {
        let (family, n) = match *self {
            GroupSpec::GL(n) => (Family::A, n.checked_sub(1)?),
            GroupSpec::Cartan { family, rank, .. } => (family, rank),
            GroupSpec::Explicit { .. } => return None,
        };
        let n32 = n as u32;
        Some(match family {
            Family::A => (2..=n32 + 1).collect(),
            Family::B | Family::C => (1..=n32).map(|k| 2 * k).collect(),
            Family::D => (1..n32).map(|k| 2 * k).chain([n32]).collect(),
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cartan {
                family,
                rank,
                isogeny,
            } => {
                let iso = match isogeny {
                    Isogeny::SimplyConnected => "sc",
                    Isogeny::Adjoint => "ad",
                };
                write!(f, "{family:?}{rank}.{iso}")
            }
            GroupSpec::GL(n) => write!(f, "GL{n}"),
            GroupSpec::Explicit { lattice_rank, .. } => {
                write!(f, "explicit(lattice rank {lattice_rank})")
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `SL3`, `PGL2`, `GL6`, `Sp4`, `SO5`, `G2`, `F4`, `E6`, and
    /// Cartan labels with an optional isogeny suffix: `A2`, `B3.ad`, `C2.sc`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedGroup(s.to_string());
        let s = s.trim();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let upper = s.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("PGL") {
            let n = num(rest)?;
            return if n >= 2 { Ok(GroupSpec::pgl(n)) } else { Err(bad()) };
        }
        if let Some(rest) = upper.strip_prefix("GL") {
            let n = num(rest)?;
            return if n >= 1 { Ok(GroupSpec::GL(n)) } else { Err(bad()) };
        }
        if let Some(rest) = upper.strip_prefix("SL") {
            let n = num(rest)?;
            return if n >= 2 { Ok(GroupSpec::sl(n)) } else { Err(bad()) };
        }
        if let Some(rest) = upper.strip_prefix("SP") {
            let n = num(rest)?;
            return if n >= 2 && n % 2 == 0 {
                Ok(GroupSpec::sp(n))
            } else {
                Err(bad())
            };
        }
        if let Some(rest) = upper.strip_prefix("SO") {
            // only odd orthogonal groups are adjoint of type B
            let n = num(rest)?;
            return if n >= 5 && n % 2 == 1 {
                Ok(GroupSpec::simple(Family::B, n / 2, Isogeny::Adjoint))
            } else {
                Err(bad())
            };
        }
        let (label, iso) = match upper.split_once('.') {
            Some((l, "SC")) => (l, Isogeny::SimplyConnected),
            Some((l, "AD")) => (l, Isogeny::Adjoint),
            Some(_) => return Err(bad()),
            None => (upper.as_str(), Isogeny::SimplyConnected),
        };
        let mut chars = label.chars();
        let family = chars.next().and_then(Family::parse).ok_or_else(bad)?;
        let rank = num(chars.as_str())?;
        validate_type(family, rank).map_err(|_| bad())?;
        Ok(GroupSpec::simple(family, rank, iso))
    }
}

pub(crate) fn validate_type(family: Family, rank: usize) -> Result<()> {
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedGroup(format!("{family:?}{rank}")))
    }
}

/// Cartan matrix with entries `C[i][j] = <alpha_i, alpha_j^vee>`, Bourbaki numbering.
pub fn cartan_matrix(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    validate_type(family, rank)?;
    let n = rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A | Family::B | Family::C => (0..n - 1).for_each(|i| link(i, i + 1)),
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        Family::F => (0..3).for_each(|i| link(i, i + 1)),
        Family::G => link(0, 1),
    }
    match family {
        // alpha_n short
        Family::B => c[n - 2][n - 1] = -2,
        // alpha_n long
        Family::C => c[n - 1][n - 2] = -2,
        Family::F => c[1][2] = -2,
        // alpha_1 short, alpha_2 long
        Family::G => c[1][0] = -3,
        _ => {}
    }
    Ok(c)
}
