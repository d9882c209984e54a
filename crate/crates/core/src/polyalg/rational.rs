use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rational, always held in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Decimal digits carried through the division before rounding to `f64`.
const WORKING_DIGITS: i64 = 50;

/// Converts to the nearest `f64` via a 50-digit decimal quotient.
///
/// Avoids the overflow a direct `num / den` in floating point would hit
/// when both sides have hundreds of digits.
pub fn rational_to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let num = x.numer().abs();
    let den = x.denom().clone();
    let num_digits = num.to_string().len() as i64;
    let den_digits = den.to_string().len() as i64;
    let k = WORKING_DIGITS + den_digits - num_digits;
    let scaled = if k >= 0 {
        num * BigInt::from(10u32).pow(k as u32) / den
    } else {
        num / (den * BigInt::from(10u32).pow((-k) as u32))
    };
    let text = format!("{scaled}e{}", -k);
    let magnitude: f64 = text.parse().expect("decimal literal");
    if x.numer().sign() == Sign::Minus {
        -magnitude
    } else {
        magnitude
    }
}

/// Parses `a/b` or `a`, normalizing to lowest terms.
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normalized_on_construction() {
        let x = r(14, -8);
        assert_eq!(x.numer(), &BigInt::from(-7));
        assert_eq!(x.denom(), &BigInt::from(4));
        assert_eq!(x.to_string(), "-7/4");
        assert_eq!(r(0, 5).to_string(), "0");
        assert_eq!(r(6, 3).to_string(), "2");
    }

    #[test]
    fn float_conversion() {
        assert_eq!(rational_to_f64(&r(7, 4)), 1.75);
        assert_eq!(rational_to_f64(&r(-1, 3)), -1.0 / 3.0);
        assert_eq!(rational_to_f64(&r(0, 3)), 0.0);
        // far outside the f64 range on either side of the fraction bar
        let huge = BigInt::from(10u32).pow(400);
        let x = Rational::new(&huge * 3u32, &huge * 2u32 + 1u32);
        assert!((rational_to_f64(&x) - 1.5).abs() < 1e-15);
        let y = Rational::new(BigInt::from(1), huge.clone());
        assert_eq!(rational_to_f64(&y), 0.0);
        let z = Rational::new(
            BigInt::from(10u32).pow(300) * 7u32,
            BigInt::from(10u32).pow(10),
        );
        assert_eq!(rational_to_f64(&z), 7e290);
    }

    proptest! {
        #[test]
        fn string_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000, s in 0u32..40) {
            let big = BigInt::from(n) * BigInt::from(10u32).pow(s);
            let x = Rational::new(big, BigInt::from(d));
            let text = x.to_string();
            let back = parse_rational(&text).unwrap();
            prop_assert_eq!(back.numer(), x.numer());
            prop_assert_eq!(back.denom(), x.denom());
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn float_matches_native_for_small(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            let x = r(n, d);
            let want = n as f64 / d as f64;
            prop_assert!((rational_to_f64(&x) - want).abs() <= want.abs() * 1e-15);
        }
    }
}
