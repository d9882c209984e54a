//! The generating-function identity satisfied by `A(t, q)`, in a form free of
//! square roots: with `C(t) = sum C_k t^k`,
//!
//! `A(t,q) (1 - t C(t)) = q t C(t) (C(qt) + A(qt, q))`.

use super::recurrence_table;
use crate::exec::Execution;
use crate::polyalg::{BivariateSeries, Poly};

/// `A(t, q)` truncated after `t^order`, from the recurrence.
pub fn distribution_series(order: usize, exec: Execution) -> BivariateSeries {
    BivariateSeries::from_coeffs(recurrence_table(order, exec))
}

/// Checks the identity coefficient by coefficient up to the series' order.
/// `Err(p)` names the first power of `t` where the two sides differ.
pub fn check_functional_equation(a: &BivariateSeries) -> Result<(), usize> {
    let order = a.order();
    let c = BivariateSeries::catalan(order);
    let tc = c.shift_t();
    let lhs = a.sub(&tc.mul(a).expect("same order")).expect("same order");
    let inner = c
        .substitute_qt()
        .add(&a.substitute_qt())
        .expect("same order");
    let rhs = tc
        .mul(&inner)
        .expect("same order")
        .scale_by(&Poly::monomial(1, 1));
    match (0..=order).find(|&p| lhs.coeff(p) != rhs.coeff(p)) {
        Some(p) => Err(p),
        None => Ok(()),
    }
}

/// True iff the recurrence-built series satisfies the identity through `t^order`.
pub fn verify_functional_equation(order: usize) -> bool {
    check_functional_equation(&distribution_series(order, Execution::default())).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn holds_at_small_and_moderate_orders() {
        assert!(verify_functional_equation(1));
        assert!(verify_functional_equation(2));
        assert!(verify_functional_equation(20));
        assert!(verify_functional_equation(25));
    }

    #[test]
    fn second_order_by_hand() {
        // [t^2] of the left side: A_2 - C_0 A_1 = q + q^2 + q^3
        let a = distribution_series(2, Execution::Sequential);
        let c = BivariateSeries::catalan(2);
        let lhs = a.sub(&c.shift_t().mul(&a).unwrap()).unwrap();
        assert_eq!(lhs.coeff(2), &"q + q^2 + q^3".parse::<Poly>().unwrap());
        assert_eq!(lhs.coeff(1), &"q".parse::<Poly>().unwrap());
    }

    #[test]
    fn corruption_is_located() {
        for bad in 1..=6 {
            let mut coeffs = distribution_series(8, Execution::Sequential)
                .coeffs()
                .to_vec();
            coeffs[bad] = &coeffs[bad] + &Poly::monomial(1, 1);
            let series = BivariateSeries::from_coeffs(coeffs);
            assert_eq!(check_functional_equation(&series), Err(bad));
        }
    }
}
