use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;

/// Catalan numbers `C_0 ..= C_max`, computed once and then read-only.
#[derive(Clone, Debug)]
pub struct CatalanTable {
    values: Vec<BigInt>,
}

impl CatalanTable {
    /// Builds `C_0 ..= C_max`.
    pub fn up_to(max: usize) -> Self {
        let mut table = CatalanTable {
            values: vec![BigInt::from(1u32)],
        };
        table.extend_to(max);
        table
    }

    /// Grows the table so that `C_max` is available.
    ///
    /// Uses `C_{k+1} = C_k * 2(2k+1) / (k+2)`, one multiplication and one exact
    /// division per entry.
    pub fn extend_to(&mut self, max: usize) {
        while self.values.len() <= max {
            let k = self.values.len() - 1;
            let next = self.values[k].clone() * (2 * (2 * k as u64 + 1)) / (k as u64 + 2);
            self.values.push(next);
        }
    }

    /// `C_k`. Panics if `k` is beyond the table.
    pub fn get(&self, k: usize) -> &BigInt {
        &self.values[k]
    }

    /// Largest index held.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.values
    }
}

fn shared() -> &'static RwLock<CatalanTable> {
    static TABLE: OnceLock<RwLock<CatalanTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(CatalanTable::up_to(64)))
}

/// The `k`-th Catalan number `binom(2k, k) / (k + 1)`.
///
/// Backed by a process-wide memo table that only grows; concurrent callers
/// share read access once the table covers their index.
pub fn catalan(k: usize) -> BigInt {
    {
        let table = shared().read().unwrap_or_else(|e| e.into_inner());
        if k <= table.max_index() {
            return table.get(k).clone();
        }
    }
    let mut table = shared().write().unwrap_or_else(|e| e.into_inner());
    table.extend_to(k);
    table.get(k).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Convolution recurrence, independent of the closed product form.
    fn convolution_oracle(max: usize) -> Vec<BigInt> {
        let mut c = vec![BigInt::from(1)];
        for k in 0..max {
            let next: BigInt = (0..=k).map(|i| &c[i] * &c[k - i]).sum();
            c.push(next);
        }
        c
    }

    #[test]
    fn small_values() {
        assert_eq!(catalan(0), BigInt::from(1));
        assert_eq!(catalan(3), BigInt::from(5));
        assert_eq!(catalan(12), BigInt::from(208_012));
    }

    #[test]
    fn matches_convolution_up_to_100() {
        let oracle = convolution_oracle(101);
        let table = CatalanTable::up_to(101);
        assert_eq!(table.as_slice(), &oracle[..]);
        for (k, c) in oracle.iter().enumerate() {
            assert_eq!(&catalan(k), c);
        }
    }

    #[test]
    fn large_index_grows_shared_table() {
        let c2000 = catalan(2000);
        // C_2000 has 1199 decimal digits.
        assert_eq!(c2000.to_string().len(), 1199);
        let t = CatalanTable::up_to(2000);
        assert_eq!(t.get(2000), &c2000);
    }
}
