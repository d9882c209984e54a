//! Closed coefficient formula: `[q^v] A_n` as a sum over strictly increasing
//! part sequences `p_1 < ... < p_k <= n` with `sum p_i = v`, each weighted by
//! `C_{p_1 - 1} * prod_i C_{p_i - p_{i-1}} * C_{n - p_k + 1}`.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Zero;

use super::{DistributionRecord, Method};
use crate::exec::{map_range, Execution};
use crate::polyalg::{CatalanTable, Poly};

/// Largest `k` with `k(k+1)/2 <= v`: the most parts a sequence summing to
/// `v` can have. Integer arithmetic only.
pub fn max_parts(v: usize) -> usize {
    let k = (((1 + 8 * v as u128).sqrt() - 1) / 2) as usize;
    debug_assert!(k * (k + 1) / 2 <= v && (k + 1) * (k + 2) / 2 > v);
    k
}

/// Sum of `j` over `lo..=hi` (zero when empty).
fn range_sum(lo: usize, hi: usize) -> usize {
    if lo > hi {
        0
    } else {
        (lo + hi) * (hi - lo + 1) / 2
    }
}

struct PartSearch<'a> {
    n: usize,
    cat: &'a CatalanTable,
}

impl PartSearch<'_> {
    /// Weighted count of the completions after a last part `last`, with
    /// `rem` still to place in at most `parts_left` parts.
    fn completions(&self, last: usize, rem: usize, parts_left: usize) -> BigInt {
        if rem == 0 {
            return self.cat.get(self.n - last + 1).clone();
        }
        if parts_left == 0 || rem > range_sum(last + 1, self.n) {
            return BigInt::zero();
        }
        let mut total = BigInt::zero();
        for p in (last + 1)..=self.n.min(rem) {
            // the part after `p` must exceed it
            let after = rem - p;
            if after != 0 && after <= p {
                continue;
            }
            let sub = self.completions(p, after, parts_left - 1);
            if !sub.is_zero() {
                total += self.cat.get(p - last) * sub;
            }
        }
        total
    }
}

/// `[q^v] A_n` by depth-first enumeration of the part sequences, with the
/// number of parts capped by [`max_parts`]. Zero outside `1 <= v <= n(n+1)/2`.
pub fn coeff_closed(n: usize, v: usize) -> BigInt {
    if n == 0 || v == 0 || v > n * (n + 1) / 2 {
        return BigInt::zero();
    }
    let cat = CatalanTable::up_to(n + 1);
    let search = PartSearch { n, cat: &cat };
    let k_max = max_parts(v);
    let mut total = BigInt::zero();
    for p1 in 1..=n.min(v) {
        let after = v - p1;
        if after != 0 && after <= p1 {
            continue;
        }
        let sub = search.completions(p1, after, k_max - 1);
        if !sub.is_zero() {
            total += cat.get(p1 - 1) * sub;
        }
    }
    total
}

/// Completion weights shared by every coefficient of `A_n`:
/// `tail[last][rem]` is what [`PartSearch::completions`] returns when the
/// part bound is not binding (it never is: strictly increasing parts summing
/// to `v` number at most `max_parts(v)`).
fn completion_table(n: usize, cat: &CatalanTable, exec: Execution) -> Vec<Vec<BigInt>> {
    let top = n * (n + 1) / 2;
    let mut tail: Vec<Vec<BigInt>> = vec![Vec::new(); n + 1];
    for last in (1..=n).rev() {
        let higher = &tail;
        let row = map_range(0..top + 1, exec, |rem| {
            if rem == 0 {
                return cat.get(n - last + 1).clone();
            }
            let mut total = BigInt::zero();
            for p in (last + 1)..=n.min(rem) {
                let w = &higher[p][rem - p];
                if !w.is_zero() {
                    total += cat.get(p - last) * w;
                }
            }
            total
        });
        tail[last] = row;
    }
    tail
}

/// `A_n` assembled from the closed formula for every exponent.
pub fn dist_closed(n: usize) -> DistributionRecord {
    dist_closed_with(n, Execution::default())
}

pub fn dist_closed_with(n: usize, exec: Execution) -> DistributionRecord {
    let poly = if n == 0 {
        Poly::zero()
    } else {
        let cat = CatalanTable::up_to(n + 1);
        let tail = completion_table(n, &cat, exec);
        let top = n * (n + 1) / 2;
        let coeffs = map_range(0..top + 1, exec, |v| {
            let mut total = BigInt::zero();
            for p1 in 1..=n.min(v) {
                let w = &tail[p1][v - p1];
                if !w.is_zero() {
                    total += cat.get(p1 - 1) * w;
                }
            }
            total
        });
        Poly::from_dense(coeffs)
    };
    DistributionRecord {
        n,
        method: Method::Closed,
        poly,
    }
}
