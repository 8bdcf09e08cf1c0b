//! Exact algebra of `PGL2+(Q)` elements and the groups `Gamma0(N)`,
//! `Gamma0(N)+S`, `Gamma0(n|h)+S`, `Gamma0(n||h)+S`: membership, cusps,
//! scaling elements and the double coset streams used by Rademacher sums.

pub mod arith;
pub mod cosets;
pub mod cusp;
pub mod element;
pub mod genus;
pub mod group;

pub use cosets::{CosetRow, CosetSet, DoubleCosetKey};
pub use cusp::{cusp_of, cusps, scaling_element, Cusp, ScalingData};
pub use element::{GroupElement, Point};
pub use genus::{gamma0_coset_reps, gamma0_generators, genus_gamma0};
pub use group::{is_member, Family, Generator, Group, GroupSpec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Psl2Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integer overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Psl2Error>;
