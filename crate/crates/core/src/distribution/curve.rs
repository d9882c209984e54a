//! Renormalized distribution curves: one point `(i/n, p_i/C_n)` per nonzero
//! coefficient `p_i` of `A_n`.

use super::dist_recurrence;
use crate::polyalg::{catalan, rational_to_f64, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
}

/// Curve points of `poly`, taken as `A_n`, normalized by `C_n`.
pub fn points_from_poly(poly: &Poly, n: usize) -> Vec<CurvePoint> {
    let cn = catalan(n);
    poly.terms()
        .map(|(i, c)| CurvePoint {
            x: i as f64 / n as f64,
            y: rational_to_f64(&Rational::new(c.clone(), cn.clone())),
        })
        .collect()
}

/// Curve for `A_n` computed by recurrence. `n >= 1`.
pub fn emit_normalized(n: usize) -> Vec<CurvePoint> {
    assert!(n >= 1, "curve needs n >= 1");
    points_from_poly(&dist_recurrence(n).poly, n)
}

/// Rounds to `digits` significant digits and prints the shortest text that
/// reads back as that value (`1.0`, `0.5`, `1.5e-30`).
pub fn format_decimal(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    let rounded: f64 = format!("{:.*e}", digits - 1, x)
        .parse()
        .expect("scientific literal");
    format!("{rounded:?}")
}

/// CSV with header `x,y`, LF line endings.
pub fn curve_csv(points: &[CurvePoint], digits: usize) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        out.push_str(&format_decimal(p.x, digits));
        out.push(',');
        out.push_str(&format_decimal(p.y, digits));
        out.push('\n');
    }
    out
}

/// `[q^v] A_n >= C_{n-x}` at `v = xn - x(x-1)/2`: the trees made of a path
/// of length `x` with any tree of `n - x` edges hanging below it.
pub fn peak_bound_holds(poly: &Poly, n: usize, x: usize) -> bool {
    assert!(x >= 1 && x <= n);
    let v = x * n - x * (x - 1) / 2;
    poly.coeff(v) >= catalan(n - x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_two_curve() {
        let pts = emit_normalized(2);
        assert_eq!(
            pts,
            vec![
                CurvePoint { x: 0.5, y: 1.0 },
                CurvePoint { x: 1.0, y: 0.5 },
                CurvePoint { x: 1.5, y: 0.5 },
            ]
        );
        assert_eq!(curve_csv(&pts, 12), "x,y\n0.5,1.0\n1.0,0.5\n1.5,0.5\n");
    }

    #[test]
    fn first_point_is_the_maximum() {
        for n in 1..=30 {
            let pts = emit_normalized(n);
            assert_eq!(pts[0].x, 1.0 / n as f64);
            assert_eq!(pts[0].y, 1.0);
            assert!(pts.iter().all(|p| p.y > 0.0 && p.y <= 1.0));
            assert!(pts.windows(2).all(|w| w[0].x < w[1].x));
            assert!(pts.last().unwrap().x <= (n as f64 + 1.0) / 2.0);
        }
    }

    #[test]
    fn peak_bound_at_sixty() {
        let a = dist_recurrence(60).poly;
        for x in 1..=4 {
            assert!(peak_bound_holds(&a, 60, x), "x={x}");
        }
        let pts = points_from_poly(&a, 60);
        let at = pts
            .iter()
            .find(|p| (p.x - 119.0 / 60.0).abs() < 1e-12)
            .unwrap();
        let bound = rational_to_f64(&Rational::new(catalan(57), catalan(60)));
        assert!(at.y >= bound);
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(1.0, 12), "1.0");
        assert_eq!(format_decimal(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_decimal(1.0 / 3.0, 3), "0.333");
        assert_eq!(format_decimal(2.0 / 3.0, 3), "0.667");
        assert_eq!(format_decimal(1.234e-30, 3), "1.23e-30");
    }
}
