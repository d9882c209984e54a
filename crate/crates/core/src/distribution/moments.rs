//! Exact mean and variance of the avalanche size over all plane trees with
//! `n` edges, and their large-`n` ratios.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::polyalg::{catalan, rational_to_f64, Rational};

/// `sqrt(pi)`.
#[allow(clippy::excessive_precision)]
pub const SQRT_PI: f64 = 1.772_453_850_905_516_027_298_167_483_341_145_182_8;

/// `4/15 - pi/16`, the limit of `V_n / n^3`.
#[allow(clippy::excessive_precision)]
pub const VARIANCE_LEADING: f64 =
    0.266_666_666_666_666_666_666_666_666_666_666_7 - 0.196_349_540_849_362_077_403_915_211_628_1;

fn int(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Total avalanche mass `sum_m m [q^m] A_n = 4^{n-1}(n+2) - (2n^2+n-1) C_{n-1}`.
pub fn first_moment_total(n: usize) -> BigInt {
    assert!(n >= 1, "first moment needs n >= 1");
    let nb = int(n as u64);
    int(4u32).pow(n as u32 - 1) * (&nb + 2u32)
        - (int(2u32) * &nb * &nb + &nb - 1u32) * catalan(n - 1)
}

/// Mean avalanche size `M_n`.
pub fn mean_exact(n: usize) -> Rational {
    Rational::new(first_moment_total(n), int(n as u64) * catalan(n))
}

/// Variance of the avalanche size `V_n`, from the closed form
///
/// ```text
/// V_n = 4/15 n^3 + 73/60 n^2 + 26/15 n + 8/15 - 1/(2n) - 1/(4n^2)
///     - 16^{n-1} (n^4+6n^3+13n^2+12n+4) / (n^2 (n+1)^2 C_n^2)
///     + 4^{n-1} (n^3+4n^2+5n+2) / (n^2 (n+1) C_n)
/// ```
///
/// The `1/(2n)` term appears once; counting it twice breaks agreement with
/// the directly computed moments (`V_2` would be `7/16` instead of `11/16`).
pub fn variance_exact(n: usize) -> Rational {
    assert!(n >= 1, "variance needs n >= 1");
    let nb = int(n as u64);
    let n2 = &nb * &nb;
    let n3 = &n2 * &nb;
    let n4 = &n3 * &nb;
    let cn = catalan(n);
    let polynomial_part = frac(4u32, 15u32) * Rational::from(n3.clone())
        + frac(73u32, 60u32) * Rational::from(n2.clone())
        + frac(26u32, 15u32) * Rational::from(nb.clone())
        + frac(8u32, 15u32)
        - frac(1u32, int(2u32) * &nb)
        - frac(1u32, int(4u32) * &n2);
    let sq = &nb + 1u32;
    let big_neg = frac(
        int(16u32).pow(n as u32 - 1)
            * (&n4 + int(6u32) * &n3 + int(13u32) * &n2 + int(12u32) * &nb + 4u32),
        &n2 * &sq * &sq * &cn * &cn,
    );
    let big_pos = frac(
        int(4u32).pow(n as u32 - 1) * (&n3 + int(4u32) * &n2 + int(5u32) * &nb + 2u32),
        &n2 * &sq * &cn,
    );
    polynomial_part - big_neg + big_pos
}

fn as_string<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Exact moments and their normalized ratios.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub mean: Rational,
    #[serde(serialize_with = "as_string")]
    pub variance: Rational,
    /// `M_n / ((sqrt(pi)/4) n^{3/2})`, tends to 1.
    pub mean_ratio: f64,
    /// `V_n / n^3`, tends to `4/15 - pi/16`.
    pub variance_ratio: f64,
}

/// Closed-form moments at size `n`; never touches the distribution itself.
pub fn asymptotics(n: usize) -> MomentReport {
    let mean = mean_exact(n);
    let variance = variance_exact(n);
    let nf = n as f64;
    let mean_ratio = rational_to_f64(&mean) / (SQRT_PI / 4.0 * nf * nf.sqrt());
    let n3 = BigInt::from(n as u64).pow(3);
    let variance_ratio = rational_to_f64(&(&variance / Rational::from(n3)));
    MomentReport {
        n,
        mean,
        variance,
        mean_ratio,
        variance_ratio,
    }
}
