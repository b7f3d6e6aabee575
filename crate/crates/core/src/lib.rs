//! Exact characters of connected reductive groups at finite-order torus
//! elements, computed from the fixed-point components of partial flag
//! varieties, together with an independent Freudenthal-based oracle.

pub mod cli;
pub mod error;
pub mod exactnum;
pub mod fixedlocus;
pub mod lefschetz;
pub mod oracle;
pub mod rootdata;
pub mod torus;

pub use error::{Error, Result};
