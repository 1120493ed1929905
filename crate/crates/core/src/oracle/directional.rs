use crate::error::Result;
use crate::expr::{Chart, Poly, SplitComplex};
use crate::lift::LiftedChart;

/// Outcome of comparing `f^c(p, v)` against `d/ds f(p + s v)` at `s = 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum DirectionalReport {
    Exact { lifted: SplitComplex, derivative: SplitComplex, matches: bool },
    Floating { lifted: (f64, f64), derivative: (f64, f64), error: f64, matches: bool },
}

impl DirectionalReport {
    pub fn matches(&self) -> bool {
        match self {
            DirectionalReport::Exact { matches, .. } | DirectionalReport::Floating { matches, .. } => *matches,
        }
    }
}

pub const FLOATING_TOLERANCE: f64 = 1e-9;

fn tm_point(p: &[SplitComplex], v: &[SplitComplex]) -> Vec<SplitComplex> {
    p.iter().chain(v).cloned().collect()
}

/// Exact check: `f(p + s v)` is expanded as a polynomial in `s` and its
/// linear coefficient compared with `f^c` at `(p, v)`.
pub fn directional_check(lc: &LiftedChart, f: &Poly, p: &[SplitComplex], v: &[SplitComplex]) -> Result<DirectionalReport> {
    let lifted = lc.clift_scalar(f)?.eval(&tm_point(p, v))?;
    let line = Chart::new(&["s"])?;
    let s = Poly::var(&line, 0);
    let images: Vec<Poly> = p.iter().zip(v).map(|(a, b)| &Poly::constant(&line, a.clone()) + &s.scale(b)).collect();
    let derivative = f.compose(&line, &images)?.diff(0)?.eval(&[SplitComplex::from_int(0)])?;
    let matches = lifted == derivative;
    Ok(DirectionalReport::Exact { lifted, derivative, matches })
}

/// Floating check by central differences, refined with two Richardson
/// steps starting from step size `h`.
pub fn directional_check_floating(
    lc: &LiftedChart,
    f: &Poly,
    p: &[SplitComplex],
    v: &[SplitComplex],
    h: f64,
) -> Result<DirectionalReport> {
    let lifted = lc.clift_scalar(f)?.eval_f64(&tm_point(p, v).iter().map(SplitComplex::to_f64_pair).collect::<Vec<_>>())?;
    let pf: Vec<(f64, f64)> = p.iter().map(SplitComplex::to_f64_pair).collect();
    let vf: Vec<(f64, f64)> = v.iter().map(SplitComplex::to_f64_pair).collect();
    let at = |s: f64| -> Result<(f64, f64)> {
        let q: Vec<(f64, f64)> = pf.iter().zip(&vf).map(|(a, b)| (a.0 + s * b.0, a.1 + s * b.1)).collect();
        f.eval_f64(&q)
    };
    let central = |h: f64| -> Result<(f64, f64)> {
        let (a, b) = (at(h)?, at(-h)?);
        Ok(((a.0 - b.0) / (2.0 * h), (a.1 - b.1) / (2.0 * h)))
    };
    let d1 = central(h)?;
    let d2 = central(h / 2.0)?;
    let d4 = central(h / 4.0)?;
    let r1 = |a: (f64, f64), b: (f64, f64)| ((4.0 * b.0 - a.0) / 3.0, (4.0 * b.1 - a.1) / 3.0);
    let (e1, e2) = (r1(d1, d2), r1(d2, d4));
    let derivative = ((16.0 * e2.0 - e1.0) / 15.0, (16.0 * e2.1 - e1.1) / 15.0);
    let scale = 1.0_f64.max(lifted.0.abs()).max(lifted.1.abs());
    let error = (lifted.0 - derivative.0).abs().max((lifted.1 - derivative.1).abs()) / scale;
    Ok(DirectionalReport::Floating { lifted, derivative, error, matches: error <= FLOATING_TOLERANCE })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::lift::tangent_chart;

    fn ints(v: &[i64]) -> Vec<SplitComplex> {
        v.iter().map(|&x| SplitComplex::from_int(x)).collect()
    }

    #[test]
    fn product_along_x() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let lc = tangent_chart(&c).unwrap();
        let f = parse_expr("x*y", &c).unwrap();
        let r = directional_check(&lc, &f, &ints(&[2, 3]), &ints(&[1, 0])).unwrap();
        assert_eq!(
            r,
            DirectionalReport::Exact { lifted: SplitComplex::from_int(3), derivative: SplitComplex::from_int(3), matches: true }
        );
        let k = directional_check(&lc, &Poly::int(&c, 4), &ints(&[2, 3]), &ints(&[1, 5])).unwrap();
        assert!(k.matches());
    }

    #[test]
    fn floating_mode() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let lc = tangent_chart(&c).unwrap();
        let f = parse_expr("x^3*y - j*y^2 + 1/2*x", &c).unwrap();
        let p = vec![SplitComplex::from_ratio(3, 2), SplitComplex::from_int(-1)];
        let r = directional_check_floating(&lc, &f, &p, &ints(&[2, -3]), 1e-2).unwrap();
        assert!(r.matches(), "{r:?}");
        assert!(directional_check(&lc, &f, &p, &ints(&[2, -3])).unwrap().matches());
    }
}
