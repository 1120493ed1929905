//! Deterministic pretty-printing in the parser's own grammar.
//!
//! Terms appear in monomial order. The output always re-parses to an equal
//! polynomial; in particular a leading negative unit coefficient in front of
//! a power is written `-1*x^2`, because `-x^2` reads as `(-x)^2`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::{Monomial, Poly};
use super::scalar::{fmt_abs_rational, SplitComplex};
use super::Chart;

fn write_monomial(m: &Monomial, chart: &Chart, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for &i in chart.print_order() {
        let e = m.exponents()[i];
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(chart.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

fn first_factor_is_power(m: &Monomial, chart: &Chart) -> bool {
    chart.print_order().iter().map(|&i| m.exponents()[i]).find(|&e| e > 0).is_some_and(|e| e > 1)
}

/// Writes one term; `leading` selects whether a negative sign is emitted as
/// a unary prefix or as the ` - ` separator.
fn write_term(m: &Monomial, c: &SplitComplex, chart: &Chart, leading: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let constant = m.is_constant();
    if !c.im.is_zero() && !c.re.is_zero() {
        if !leading {
            f.write_str(" + ")?;
        }
        write!(f, "{c}")?;
        if !constant {
            f.write_str("*")?;
            write_monomial(m, chart, f)?;
        }
        return Ok(());
    }
    let (negative, magnitude_is_one) = if c.im.is_zero() {
        (c.re.is_negative(), c.re.abs().is_one())
    } else {
        (c.im.is_negative(), false)
    };
    match (leading, negative) {
        (true, true) => f.write_str("-")?,
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
        (true, false) => {}
    }
    let abs = if negative { -c } else { c.clone() };
    if constant {
        return write!(f, "{abs}");
    }
    if magnitude_is_one {
        if leading && negative && first_factor_is_power(m, chart) {
            f.write_str("1*")?;
        }
    } else if abs.im.is_zero() {
        fmt_abs_rational(&abs.re, f)?;
        f.write_str("*")?;
    } else {
        write!(f, "{abs}*")?;
    }
    write_monomial(m, chart, f)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            write_term(m, c, self.chart(), i == 0, f)?;
        }
        Ok(())
    }
}

impl Poly {
    /// Like `to_string`, but parenthesized when used as a multiplicative
    /// coefficient would otherwise change its meaning.
    pub fn to_factor_string(&self) -> String {
        let s = self.to_string();
        let simple = self.num_terms() <= 1 && !s.starts_with('-') && !s.contains(" + ") && !s.contains(" - ");
        if simple {
            s
        } else {
            format!("({s})")
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_unit_scalar(&self) -> bool {
        self.as_constant().is_some_and(|c| !c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn chart() -> Chart {
        use crate::expr::CoordKind::{Base, Fiber};
        Chart::with_kinds(&["x", "y", "x'", "y'"], &[Base, Base, Fiber, Fiber]).unwrap()
    }

    fn show(s: &str) -> String {
        parse_expr(s, &chart()).unwrap().to_string()
    }

    #[test]
    fn ordering_and_signs() {
        assert_eq!(show("x*y' + x'*y"), "x'*y + x*y'");
        assert_eq!(show("x^2 - y^2"), "-1*y^2 + x^2");
        assert_eq!(show("3/2*x^2*y - j*y'"), "-j*y' + 3/2*x^2*y");
        assert_eq!(show("0"), "0");
        assert_eq!(show("-x*y"), "-x*y");
        assert_eq!(show("(1+j)*x - 2 + j*3*y"), "-2 + j*3*y + (1+j)*x");
    }

    #[test]
    fn round_trips() {
        let c = chart();
        for s in ["-x^2*y + 5", "j", "-j", "(1/2-1/2*j)*x'*y^3", "x - 1/3*y' + j*7/2", "-x^3", "-2*x^2"] {
            let p = parse_expr(s, &c).unwrap();
            assert_eq!(parse_expr(&p.to_string(), &c).unwrap(), p, "{s} -> {p}");
        }
    }
}
