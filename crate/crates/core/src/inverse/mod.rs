//! The inverse problem: find a plane tree whose avalanche polynomial is a
//! given polynomial.
//!
//! In general this is as hard as 3-PARTITION ([`reduction_poly`] builds the
//! instances); restricted to trees of height at most two a greedy pass over
//! the exponents decides it ([`solve_height2`]).

mod height2;
mod reduction;
mod search;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::polyalg::Poly;
use crate::tree::PlaneTree;

pub use height2::solve_height2;
pub use reduction::{
    build_reduction_tree, extract_partition, reduction_poly, reduction_poly_unchecked,
    PartitionSolution, ReductionError, ThreePartitionInstance,
};
pub use search::{solve_general, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseStatus {
    Found,
    NoTree,
    BudgetExhausted,
}

/// Outcome of an inverse query. Trees are canonical (siblings sorted by
/// subtree size, then encoding) and sorted by encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseResult {
    pub status: InverseStatus,
    pub trees: Vec<PlaneTree>,
}

impl InverseResult {
    fn no_tree() -> Self {
        InverseResult {
            status: InverseStatus::NoTree,
            trees: Vec::new(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InverseError {
    #[error("coefficient of q^{exp} is negative")]
    NegativeCoefficient { exp: usize },
    #[error("coefficient of q^{exp} is too large to realize")]
    TooLarge { exp: usize },
}

/// Checks the sign and size of every coefficient; returns the nonzero
/// `(exponent, count)` pairs.
fn coefficient_counts(p: &Poly, limit: u64) -> Result<Vec<(usize, u64)>, InverseError> {
    let mut out = Vec::new();
    let mut total: u64 = 0;
    for (exp, c) in p.terms() {
        if c.is_negative() {
            return Err(InverseError::NegativeCoefficient { exp });
        }
        let count = c
            .to_u64()
            .filter(|&v| v <= limit)
            .ok_or(InverseError::TooLarge { exp })?;
        total = total
            .checked_add(count)
            .filter(|&t| t <= limit)
            .ok_or(InverseError::TooLarge { exp })?;
        out.push((exp, count));
    }
    Ok(out)
}

/// Every returned tree must reproduce the polynomial exactly.
fn assert_sound(p: &Poly, trees: &[PlaneTree]) {
    for t in trees {
        assert_eq!(
            &t.avalanche_poly(),
            p,
            "inverse solver produced a tree with the wrong polynomial: {t}"
        );
    }
}
