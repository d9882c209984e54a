use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyalg::Poly;
use crate::tree::PlaneTree;

/// Largest exponent a reduction polynomial may reach; keeps dense storage
/// and the realizing tree at desk scale.
const MAX_EXPONENT: u128 = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("n must be at least 1")]
    EmptyInstance,
    #[error("expected {expected} values, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("a_{index} = {value} is not strictly between C/4 and C/2 (C = {c})")]
    OutOfBounds { index: usize, value: u64, c: u64 },
    #[error("values sum to {sum}, expected n*C = {expected}")]
    SumMismatch { sum: u128, expected: u128 },
    #[error("lambda must be at least 1")]
    ZeroLambda,
    #[error("instance too large: exponent {exponent} exceeds {MAX_EXPONENT}")]
    TooLarge { exponent: u128 },
    #[error("invalid instance JSON: {0}")]
    Json(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("tree does not encode a partition: {0}")]
    Extraction(String),
}

/// A 3-PARTITION instance with the scale factor used to build its
/// polynomial. Any `lambda >= 1` gives a polynomial; the tree structure
/// encodes a partition only when `lambda > 3n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreePartitionInstance {
    pub n: usize,
    #[serde(rename = "C")]
    pub c: u64,
    pub a: Vec<u64>,
    pub lambda: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n: usize,
    #[serde(rename = "C")]
    c: u64,
    a: Vec<u64>,
    lambda: Option<u64>,
}

impl ThreePartitionInstance {
    /// Validated instance; `lambda` defaults to `3n + 1`.
    pub fn new(n: usize, c: u64, a: Vec<u64>, lambda: Option<u64>) -> Result<Self, ReductionError> {
        let inst = Self::new_unchecked(n, c, a, lambda);
        inst.validate()?;
        Ok(inst)
    }

    /// Instance without the value checks, for feeding deliberately malformed
    /// data to the polynomial formula.
    pub fn new_unchecked(n: usize, c: u64, a: Vec<u64>, lambda: Option<u64>) -> Self {
        ThreePartitionInstance {
            n,
            c,
            a,
            lambda: lambda.unwrap_or(3 * n as u64 + 1),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ReductionError> {
        let f: InstanceFile =
            serde_json::from_str(text).map_err(|e| ReductionError::Json(e.to_string()))?;
        Self::new(f.n, f.c, f.a, f.lambda)
    }

    pub fn default_lambda(&self) -> u64 {
        3 * self.n as u64 + 1
    }

    /// `lambda > 3n`: every tree realizing the polynomial encodes a partition.
    pub fn lambda_separates(&self) -> bool {
        self.lambda > 3 * self.n as u64
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        if self.n == 0 {
            return Err(ReductionError::EmptyInstance);
        }
        if self.a.len() != 3 * self.n {
            return Err(ReductionError::WrongLength {
                expected: 3 * self.n,
                found: self.a.len(),
            });
        }
        let c = u128::from(self.c);
        for (i, &v) in self.a.iter().enumerate() {
            let v128 = u128::from(v);
            if 4 * v128 <= c || 2 * v128 >= c {
                return Err(ReductionError::OutOfBounds {
                    index: i + 1,
                    value: v,
                    c: self.c,
                });
            }
        }
        let sum: u128 = self.a.iter().map(|&v| u128::from(v)).sum();
        let expected = self.n as u128 * c;
        if sum != expected {
            return Err(ReductionError::SumMismatch { sum, expected });
        }
        if self.lambda == 0 {
            return Err(ReductionError::ZeroLambda);
        }
        self.check_size()
    }

    fn check_size(&self) -> Result<(), ReductionError> {
        let lambda = u128::from(self.lambda);
        let top = self.a.iter().map(|&v| u128::from(v)).max().unwrap_or(0);
        let exponent = lambda * (u128::from(self.c) + top) + 2;
        let vertices = self.n as u128 * (lambda * u128::from(self.c) + 1);
        if exponent > MAX_EXPONENT || vertices > MAX_EXPONENT {
            return Err(ReductionError::TooLarge {
                exponent: exponent.max(vertices),
            });
        }
        Ok(())
    }

    fn base(&self) -> usize {
        (self.lambda * self.c) as usize + 1
    }

    fn scaled(&self, i: usize) -> usize {
        (self.lambda * self.a[i]) as usize
    }
}

/// Groups of 1-based indices into the instance's values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionSolution {
    pub groups: Vec<[usize; 3]>,
}

impl PartitionSolution {
    /// Sorted within and across groups.
    pub fn normalized(&self) -> PartitionSolution {
        let mut groups = self.groups.clone();
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort_unstable();
        PartitionSolution { groups }
    }

    pub fn check(&self, inst: &ThreePartitionInstance) -> Result<(), ReductionError> {
        let bad = |m: String| Err(ReductionError::InvalidPartition(m));
        if self.groups.len() != inst.n {
            return bad(format!("{} groups for n = {}", self.groups.len(), inst.n));
        }
        let mut seen = vec![false; inst.a.len()];
        for g in &self.groups {
            let mut sum = 0u128;
            for &i in g {
                if i == 0 || i > inst.a.len() {
                    return bad(format!("index {i} out of range"));
                }
                if std::mem::replace(&mut seen[i - 1], true) {
                    return bad(format!("index {i} used twice"));
                }
                sum += u128::from(inst.a[i - 1]);
            }
            if sum != u128::from(inst.c) {
                return bad(format!("group {g:?} sums to {sum}, not {}", inst.c));
            }
        }
        Ok(())
    }
}

/// The scaled polynomial
/// `n q^(lC+1) + sum_i q^(lC+1+l a_i) + sum_i (l a_i - 1) q^(lC+l a_i+2)`.
pub fn reduction_poly(inst: &ThreePartitionInstance) -> Result<Poly, ReductionError> {
    inst.validate()?;
    Ok(formula(inst))
}

/// [`reduction_poly`] without the instance checks other than size.
pub fn reduction_poly_unchecked(inst: &ThreePartitionInstance) -> Result<Poly, ReductionError> {
    if inst.lambda == 0 {
        return Err(ReductionError::ZeroLambda);
    }
    inst.check_size()?;
    Ok(formula(inst))
}

fn formula(inst: &ThreePartitionInstance) -> Poly {
    let base = inst.base();
    let mut terms: Vec<(usize, BigInt)> = vec![(base, BigInt::from(inst.n))];
    for i in 0..inst.a.len() {
        let s = inst.scaled(i);
        terms.push((base + s, BigInt::from(1)));
        terms.push((base + s + 1, BigInt::from(s) - 1));
    }
    Poly::from_terms(terms)
}

/// The tree realizing the polynomial for a given solution: `n` children of
/// the root, each holding the three groups' height-2 stars.
pub fn build_reduction_tree(
    inst: &ThreePartitionInstance,
    sol: &PartitionSolution,
) -> Result<PlaneTree, ReductionError> {
    inst.validate()?;
    sol.check(inst)?;
    Ok(PlaneTree::from_subtrees(sol.groups.iter().map(|g| {
        PlaneTree::from_subtrees(g.iter().map(|&i| PlaneTree::star(inst.scaled(i - 1) - 1)))
    })))
}

/// Reads the partition back off a tree realizing the reduction polynomial.
pub fn extract_partition(
    tree: &PlaneTree,
    inst: &ThreePartitionInstance,
) -> Result<PartitionSolution, ReductionError> {
    inst.validate()?;
    let fail = |m: String| Err(ReductionError::Extraction(m));
    let labeled = tree.label();
    let base = inst.base() as u64;
    let mut used = vec![false; inst.a.len()];
    let mut groups = Vec::with_capacity(inst.n);
    for &child in tree.children(0) {
        let l = labeled.label_of(child);
        if l != base {
            return fail(format!("root child labeled {l}, expected {base}"));
        }
        let kids = tree.children(child);
        if kids.len() != 3 {
            return fail(format!("vertex labeled {l} has {} children", kids.len()));
        }
        let mut group = [0usize; 3];
        for (slot, &k) in group.iter_mut().zip(kids) {
            let off = labeled.label_of(k) - base;
            if !off.is_multiple_of(inst.lambda) {
                return fail(format!("label {} is not {base} + lambda * a", base + off));
            }
            let value = off / inst.lambda;
            let Some(idx) = (0..inst.a.len()).find(|&i| !used[i] && inst.a[i] == value) else {
                return fail(format!("no unused value {value}"));
            };
            used[idx] = true;
            *slot = idx + 1;
        }
        groups.push(group);
    }
    let sol = PartitionSolution { groups };
    sol.check(inst)
        .map_err(|e| ReductionError::Extraction(e.to_string()))?;
    Ok(sol)
}
