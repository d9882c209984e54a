use num_bigint::BigInt;
use thiserror::Error;

use super::{CatalanTable, Poly};

/// Series in `t` truncated after `t^order`, with polynomial-in-`q`
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<Poly>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        BivariateSeries {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    /// From coefficients of `t^0 ..= t^order`; must be nonempty.
    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        assert!(!coeffs.is_empty(), "a series holds at least t^0");
        BivariateSeries { coeffs }
    }

    /// `C(t) = sum_k C_k t^k`, constant in `q`.
    pub fn catalan(order: usize) -> Self {
        let table = CatalanTable::up_to(order);
        BivariateSeries {
            coeffs: (0..=order)
                .map(|k| Poly::monomial(table.get(k).clone(), 0))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^p`.
    pub fn coeff(&self, p: usize) -> &Poly {
        &self.coeffs[p]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(BivariateSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(BivariateSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let order = self.order();
        let coeffs = (0..=order)
            .map(|p| {
                let mut acc = Vec::new();
                for i in 0..=p {
                    let a = &self.coeffs[i];
                    let b = &other.coeffs[p - i];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    for (e, c) in a.terms() {
                        b.add_scaled_shifted_into(&mut acc, c, e);
                    }
                }
                Poly::from_dense(acc)
            })
            .collect();
        Ok(BivariateSeries { coeffs })
    }

    /// Multiplies every coefficient by `poly`.
    pub fn scale_by(&self, poly: &Poly) -> Self {
        BivariateSeries {
            coeffs: self.coeffs.iter().map(|c| c * poly).collect(),
        }
    }

    /// Multiplies by `t`, dropping the term pushed past the order.
    pub fn shift_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Poly::zero());
        coeffs.extend(self.coeffs[..self.order()].iter().cloned());
        BivariateSeries { coeffs }
    }

    /// Formal substitution `t -> q t`: the `t^p` coefficient gains `q^p`.
    pub fn substitute_qt(&self) -> Self {
        BivariateSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(p, c)| c.shift(p))
                .collect(),
        }
    }

    /// Value of every coefficient at `q = 1`.
    pub fn at_q_one(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(Poly::mass).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(terms: &[&str]) -> BivariateSeries {
        BivariateSeries::from_coeffs(terms.iter().map(|t| t.parse().unwrap()).collect())
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            s(&["1", "1", "0"]).mul(&s(&["1", "-1", "0"])).unwrap(),
            s(&["1", "0", "-1"])
        );
        assert_eq!(
            s(&["0", "q", "0"]).mul(&s(&["0", "q", "0"])).unwrap(),
            s(&["0", "0", "q^2"])
        );
        let c = BivariateSeries::catalan(2);
        assert_eq!(c.mul(&c).unwrap(), s(&["1", "2", "5"]));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let err = BivariateSeries::zero(2)
            .mul(&BivariateSeries::zero(3))
            .unwrap_err();
        assert_eq!(err, SeriesError::OrderMismatch { left: 2, right: 3 });
    }

    #[test]
    fn catalan_square_is_shifted_catalan() {
        // C(t)^2 = (C(t) - 1) / t
        let n = 30;
        let c = BivariateSeries::catalan(n + 1);
        let sq = c.mul(&c).unwrap();
        for k in 0..=n {
            assert_eq!(sq.coeff(k), c.coeff(k + 1));
        }
    }

    #[test]
    fn substitution() {
        assert_eq!(s(&["1", "q"]).substitute_qt(), s(&["1", "q^2"]));
        assert_eq!(
            s(&["0", "q", "2*q + q^2 + q^3"]).substitute_qt(),
            s(&["0", "q^2", "2*q^3 + q^4 + q^5"])
        );
        assert!(BivariateSeries::zero(4).substitute_qt().is_zero());
    }

    #[test]
    fn shift_truncates() {
        assert_eq!(s(&["1", "q", "q^2"]).shift_t(), s(&["0", "1", "q"]));
    }

    fn arb_series(order: usize) -> impl Strategy<Value = BivariateSeries> {
        prop::collection::vec(
            prop::collection::vec((0usize..4, -9i64..9), 0..3).prop_map(Poly::from_terms),
            order + 1,
        )
        .prop_map(BivariateSeries::from_coeffs)
    }

    proptest! {
        #[test]
        fn product_is_associative(a in arb_series(4), b in arb_series(4), c in arb_series(4)) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
