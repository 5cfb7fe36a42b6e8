use num_traits::{One, Signed};

use crate::basis::{fmt_rational, CurveClass, DivisorClass, Rational};

pub fn render_rational(q: &Rational) -> String {
    fmt_rational(q)
}

/// Canonical text of a class: basis order, reduced fractions, unit
/// coefficients omitted, `"0"` for the zero class.
///
/// The unknown tail of a partial class is not shown.
pub fn render_class(d: &DivisorClass) -> String {
    let mut out = String::new();
    for (k, (sym, c)) in d.terms().enumerate() {
        let magnitude = c.abs();
        match (k, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !magnitude.is_one() {
            out.push_str(&fmt_rational(&magnitude));
            out.push('*');
        }
        out.push_str(&sym.to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `sym=value, ...` in basis order.
pub fn render_curve(c: &CurveClass) -> String {
    c.terms()
        .map(|(s, v)| format!("{s}={}", fmt_rational(v)))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::SpaceId;
    use crate::catalog::{bn_class, theta_null_class};
    use crate::dsl::{parse_class, parse_curve};

    #[test]
    fn renders_bn8() {
        assert_eq!(
            render_class(&bn_class(8).unwrap()),
            "22*l - 3*dirr - 14*d{1:} - 24*d{2:} - 30*d{3:} - 32*d{4:}"
        );
        assert_eq!(
            render_class(&theta_null_class(4).unwrap()),
            "1/4*l - 1/16*a_0 - 1/2*b_1 - 1/2*b_2"
        );
    }

    #[test]
    fn zero_and_units() {
        let m = SpaceId::pointed(3, 2).unwrap();
        assert_eq!(render_class(&DivisorClass::zero(m)), "0");
        let d = parse_class("-l + psi_2 - d{0:{1,2}}", m).unwrap();
        assert_eq!(render_class(&d), "-l + psi_2 - d{0:{1,2}}");
    }

    #[test]
    fn curve_text() {
        let s = SpaceId::spin(8).unwrap();
        let c = parse_curve("b_0=7, l=9, a_0=52", s).unwrap();
        assert_eq!(render_curve(&c), "l=9, a_0=52, b_0=7");
        assert_eq!(parse_curve(&render_curve(&c), s).unwrap(), c);
    }
}
