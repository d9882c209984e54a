//! The avalanche distribution `A_n(q) = sum over all plane trees T with n
//! edges of Av_T(q)`, three ways, plus its moments.

mod closed;
mod curve;
mod functional;
mod moments;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{fold_range, Execution};
use crate::polyalg::{CatalanTable, Poly, Rational};
use crate::tree::{dyck_prefixes, DyckWalker};

pub use closed::{coeff_closed, dist_closed, dist_closed_with, max_parts};
pub use curve::{
    curve_csv, emit_normalized, format_decimal, peak_bound_holds, points_from_poly, CurvePoint,
};
pub use functional::{check_functional_equation, distribution_series, verify_functional_equation};
pub use moments::{
    asymptotics, first_moment_total, mean_exact, variance_exact, MomentReport, SQRT_PI,
    VARIANCE_LEADING,
};

/// Enumeration refuses sizes above this unless overridden.
pub const DEFAULT_ENUM_CAP: usize = 13;
/// Environment variable overriding [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_ENV: &str = "AVPOLY_ENUM_CAP";
/// Largest size the recurrence is offered for by default.
pub const RECURRENCE_CAP: usize = 2000;

/// Enumeration cap from the environment, falling back to the default.
pub fn enum_cap_from_env() -> usize {
    std::env::var(ENUM_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumeration,
    Recurrence,
    Closed,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::Recurrence => "recurrence",
            Method::Closed => "closed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "enum" | "enumeration" => Ok(Method::Enumeration),
            "rec" | "recurrence" => Ok(Method::Recurrence),
            "closed" => Ok(Method::Closed),
            other => Err(format!(
                "unknown method `{other}` (expected enum, rec or closed)"
            )),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DistError {
    #[error("n = {n} exceeds the enumeration cap {cap} (set {ENUM_CAP_ENV} to raise it)")]
    AboveEnumerationCap { n: usize, cap: usize },
    #[error("n = {n} exceeds the {method} cap {cap}")]
    AboveCap {
        n: usize,
        method: Method,
        cap: usize,
    },
}

/// `A_n(q)` together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionRecord {
    pub n: usize,
    pub method: Method,
    pub poly: Poly,
}

impl DistributionRecord {
    /// Checks the structural identities every `A_n` satisfies: total mass
    /// `n C_n`, `[q]A_n = C_n`, `[q^2]A_n = C_{n-1}` and a single top term
    /// at `q^{n(n+1)/2}` (the path).
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.n;
        let cat = CatalanTable::up_to(n);
        let mass = self.poly.mass();
        if mass != BigInt::from(n) * cat.get(n) {
            return Err(format!("mass {mass} != n C_n"));
        }
        if n == 0 {
            return if self.poly.is_zero() {
                Ok(())
            } else {
                Err("A_0 must vanish".into())
            };
        }
        if &self.poly.coeff(1) != cat.get(n) {
            return Err(format!("[q^1] = {} != C_{n}", self.poly.coeff(1)));
        }
        if n >= 2 && &self.poly.coeff(2) != cat.get(n - 1) {
            return Err(format!("[q^2] = {} != C_{}", self.poly.coeff(2), n - 1));
        }
        let top = n * (n + 1) / 2;
        if self.poly.degree() != Some(top) || self.poly.coeff(top) != BigInt::from(1) {
            return Err(format!("top term is not q^{top}"));
        }
        Ok(())
    }

    /// Mean and variance computed directly from the coefficients.
    pub fn empirical_moments(&self) -> Option<(Rational, Rational)> {
        let total = self.poly.moment(0);
        if total == BigInt::from(0) {
            return None;
        }
        let mean = Rational::new(self.poly.moment(1), total.clone());
        let second = Rational::new(self.poly.moment(2), total);
        let var = second - &mean * &mean;
        Some((mean, var))
    }
}

/// Per-worker state for the enumeration fold.
struct LabelCounter {
    counts: Vec<u128>,
    opens: Vec<usize>,
    sizes: Vec<usize>,
    labels: Vec<u64>,
}

impl LabelCounter {
    fn new(n: usize) -> Self {
        LabelCounter {
            counts: vec![0; n * (n + 1) / 2 + 1],
            opens: Vec::with_capacity(n),
            sizes: vec![0; 2 * n],
            labels: Vec::with_capacity(n + 1),
        }
    }

    /// Adds the labels of the tree whose root forest is `word`.
    fn add_word(&mut self, word: &[u8]) {
        self.opens.clear();
        for (i, &b) in word.iter().enumerate() {
            if b == b'(' {
                self.opens.push(i);
            } else {
                let o = self.opens.pop().expect("balanced word");
                self.sizes[o] = (i - o).div_ceil(2);
            }
        }
        self.labels.clear();
        self.labels.push(0);
        for (i, &b) in word.iter().enumerate() {
            if b == b'(' {
                let l = self.labels.last().copied().unwrap_or(0) + self.sizes[i] as u64;
                self.counts[l as usize] += 1;
                self.labels.push(l);
            } else {
                self.labels.pop();
            }
        }
    }

    fn merge(mut self, other: LabelCounter) -> LabelCounter {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }
}

/// `A_n` by summing the avalanche polynomial of every tree with `n` edges.
pub fn dist_bruteforce(n: usize, cap: usize) -> Result<DistributionRecord, DistError> {
    dist_bruteforce_with(n, cap, Execution::default())
}

pub fn dist_bruteforce_with(
    n: usize,
    cap: usize,
    exec: Execution,
) -> Result<DistributionRecord, DistError> {
    if n > cap {
        return Err(DistError::AboveEnumerationCap { n, cap });
    }
    // independent walks over disjoint Dyck-word prefixes
    let prefixes = dyck_prefixes(n, 12);
    let counter = fold_range(
        0..prefixes.len(),
        exec,
        || LabelCounter::new(n),
        |mut acc, i| {
            let mut walker = DyckWalker::with_prefix(n, &prefixes[i]).expect("valid prefix");
            while let Some(word) = walker.next_word() {
                acc.add_word(word);
            }
            acc
        },
        LabelCounter::merge,
    );
    Ok(DistributionRecord {
        n,
        method: Method::Enumeration,
        poly: Poly::from_counts(&counter.counts),
    })
}

/// `A_0 ..= A_n` from
/// `A_{p+1} = sum_k C_k C_{p-k} q^{k+1} + C_{p-k} q^{k+1} A_k + C_k A_{p-k}`.
///
/// Each step depends on all previous ones; the `k`-sum inside a step is
/// split across workers.
pub fn recurrence_table(n: usize, exec: Execution) -> Vec<Poly> {
    let cat = CatalanTable::up_to(n);
    let mut table: Vec<Poly> = Vec::with_capacity(n + 1);
    table.push(Poly::zero());
    for p in 0..n {
        let prev = &table;
        let acc = fold_range(
            0..p + 1,
            exec,
            Vec::new,
            |mut acc: Vec<BigInt>, k| {
                let ck = cat.get(k);
                let cpk = cat.get(p - k);
                if acc.len() < k + 2 {
                    acc.resize(k + 2, BigInt::from(0));
                }
                acc[k + 1] += ck * cpk;
                prev[k].add_scaled_shifted_into(&mut acc, cpk, k + 1);
                prev[p - k].add_scaled_shifted_into(&mut acc, ck, 0);
                acc
            },
            merge_dense,
        );
        table.push(Poly::from_dense(acc));
    }
    table
}

fn merge_dense(mut a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        return merge_dense(b, a);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// `A_n` by the recurrence.
pub fn dist_recurrence(n: usize) -> DistributionRecord {
    dist_recurrence_with(n, Execution::default())
}

pub fn dist_recurrence_with(n: usize, exec: Execution) -> DistributionRecord {
    let poly = recurrence_table(n, exec)
        .pop()
        .expect("table holds A_0..=A_n");
    DistributionRecord {
        n,
        method: Method::Recurrence,
        poly,
    }
}

/// Dispatches on `method`, enforcing the enumeration cap.
pub fn distribution(
    n: usize,
    method: Method,
    enum_cap: usize,
) -> Result<DistributionRecord, DistError> {
    match method {
        Method::Enumeration => dist_bruteforce(n, enum_cap),
        Method::Recurrence if n > RECURRENCE_CAP => Err(DistError::AboveCap {
            n,
            method,
            cap: RECURRENCE_CAP,
        }),
        Method::Recurrence => Ok(dist_recurrence(n)),
        Method::Closed => Ok(dist_closed(n)),
    }
}
