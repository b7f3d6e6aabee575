//! Root data of connected reductive groups, their Weyl groups, standard
//! parabolics and minimal coset representatives.

mod datum;
mod descriptor;
mod parabolic;
mod weyl;

pub use datum::{pair, Root, RootDatum};
pub use descriptor::{cartan_matrix, Family, GroupSpec, Isogeny};
pub use parabolic::{check_extends, parabolic_for_lambda, ParabolicSpec};
pub use weyl::{Group, WeylElement, WeylGroup, DEFAULT_MAX_WEYL};
