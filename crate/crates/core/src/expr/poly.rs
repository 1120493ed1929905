//! Canonical multivariate polynomials over [`SplitComplex`].
//!
//! A [`Poly`] is a sorted map from exponent vectors to nonzero coefficients.
//! Exponent vectors compare lexicographically in the chart's declared
//! coordinate order, so the term map itself is the canonical form and
//! structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::chart::Chart;
use super::scalar::SplitComplex;
use crate::error::{chart_mismatch, Error, Result};

/// Exponent vector over a chart, one entry per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    chart: Chart,
    terms: BTreeMap<Monomial, SplitComplex>,
}

impl Poly {
    pub fn zero(chart: &Chart) -> Self {
        Poly { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn one(chart: &Chart) -> Self {
        Self::constant(chart, SplitComplex::one())
    }

    pub fn constant(chart: &Chart, c: SplitComplex) -> Self {
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(chart.dim()), c);
        }
        p
    }

    pub fn int(chart: &Chart, v: i64) -> Self {
        Self::constant(chart, SplitComplex::from_int(v))
    }

    pub fn var(chart: &Chart, index: usize) -> Self {
        assert!(index < chart.dim(), "coordinate index {index} out of range");
        let mut p = Self::zero(chart);
        p.terms.insert(Monomial::var(chart.dim(), index), SplitComplex::one());
        p
    }

    pub fn var_named(chart: &Chart, name: &str) -> Result<Self> {
        Ok(Self::var(chart, chart.lookup(name)?))
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I>(chart: &Chart, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, SplitComplex)>,
    {
        let mut p = Self::zero(chart);
        for (m, c) in terms {
            if m.0.len() != chart.dim() {
                return Err(Error::DimensionMismatch { expected: chart.dim(), found: m.0.len() });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    /// The constant term.
    pub fn constant_term(&self) -> SplitComplex {
        self.terms.get(&Monomial::one(self.chart.dim())).cloned().unwrap_or_else(SplitComplex::zero)
    }

    pub fn as_constant(&self) -> Option<SplitComplex> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &SplitComplex)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> SplitComplex {
        self.terms.get(m).cloned().unwrap_or_else(SplitComplex::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in the coordinates selected by `mask`.
    pub fn partial_degree(&self, mask: &[bool]) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.0.iter().zip(mask).filter(|(_, &on)| on).map(|(e, _)| *e).sum())
            .max()
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(SplitComplex::is_real)
    }

    fn add_term(&mut self, m: Monomial, c: SplitComplex) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_chart(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_chart(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_chart(other)?;
        let mut out = Poly::zero(&self.chart);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    fn same_chart(&self, other: &Poly) -> Result<()> {
        if self.chart == other.chart {
            Ok(())
        } else {
            Err(chart_mismatch(&self.chart, &other.chart))
        }
    }

    pub fn scale(&self, k: &SplitComplex) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.chart);
        }
        let mut out = Poly::zero(&self.chart);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> Poly {
        self.scale(&SplitComplex::from_int(k))
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.chart);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the coordinate at `index`.
    pub fn diff(&self, index: usize) -> Result<Poly> {
        if index >= self.chart.dim() {
            return Err(Error::UnknownCoordinate(format!("#{index}")));
        }
        let mut out = Poly::zero(&self.chart);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] = e - 1;
            out.add_term(Monomial(exps), c.scale(&BigRational::from_integer(e.into())));
        }
        Ok(out)
    }

    pub fn diff_by_name(&self, name: &str) -> Result<Poly> {
        self.diff(self.chart.lookup(name)?)
    }

    /// Exact substitution of `point[i]` for coordinate `i`.
    pub fn eval(&self, point: &[SplitComplex]) -> Result<SplitComplex> {
        if point.len() != self.chart.dim() {
            let missing = self.chart.coords().get(point.len()).map(|c| c.name.clone());
            return Err(match missing {
                Some(name) => Error::MissingAssignment(name),
                None => Error::DimensionMismatch { expected: self.chart.dim(), found: point.len() },
            });
        }
        let mut powers: Vec<Vec<SplitComplex>> = point.iter().map(|v| vec![SplitComplex::one(), v.clone()]).collect();
        let mut acc = SplitComplex::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            acc += &term;
        }
        Ok(acc)
    }

    /// Evaluation with values keyed by coordinate name.
    pub fn eval_named(&self, point: &HashMap<String, SplitComplex>) -> Result<SplitComplex> {
        let values = self
            .chart
            .coords()
            .iter()
            .map(|c| point.get(&c.name).cloned().ok_or_else(|| Error::MissingAssignment(c.name.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.eval(&values)
    }

    /// Floating-point evaluation, returning the `(re, im)` parts.
    pub fn eval_f64(&self, point: &[(f64, f64)]) -> Result<(f64, f64)> {
        if point.len() != self.chart.dim() {
            return Err(Error::DimensionMismatch { expected: self.chart.dim(), found: point.len() });
        }
        let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 + a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let mut acc = (0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = c.to_f64_pair();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = mul(term, point[i]);
                }
            }
            acc = (acc.0 + term.0, acc.1 + term.1);
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` (polynomials on `target`) for coordinate `i`.
    pub fn compose(&self, target: &Chart, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.chart.dim() {
            return Err(Error::DimensionMismatch { expected: self.chart.dim(), found: images.len() });
        }
        for img in images {
            target.ensure_same(img.chart())?;
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-reads the polynomial on a larger chart: coordinate `i` becomes
    /// coordinate `positions[i]` of `target`.
    pub fn embed(&self, target: &Chart, positions: &[usize]) -> Result<Poly> {
        if positions.len() != self.chart.dim() {
            return Err(Error::DimensionMismatch { expected: self.chart.dim(), found: positions.len() });
        }
        if let Some(&bad) = positions.iter().find(|&&p| p >= target.dim()) {
            return Err(Error::UnknownCoordinate(format!("#{bad}")));
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.dim()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[positions[i]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Splits `self = plus·e+ + minus·e−` with real-rational `plus`, `minus`.
    pub fn idempotent_decompose(&self) -> (Poly, Poly) {
        let mut plus = Poly::zero(&self.chart);
        let mut minus = Poly::zero(&self.chart);
        for (m, c) in &self.terms {
            let (p, q) = c.null_components();
            plus.add_term(m.clone(), SplitComplex::real(p));
            minus.add_term(m.clone(), SplitComplex::real(q));
        }
        (plus, minus)
    }

    /// Inverse of [`Poly::idempotent_decompose`].
    pub fn from_null_components(plus: &Poly, minus: &Poly) -> Result<Poly> {
        let ep = Poly::constant(plus.chart(), SplitComplex::e_plus());
        let em = Poly::constant(plus.chart(), SplitComplex::e_minus());
        plus.checked_mul(&ep)?.checked_add(&minus.checked_mul(&em)?)
    }

    pub fn map_coefficients(&self, f: impl Fn(&SplitComplex) -> SplitComplex) -> Poly {
        let mut out = Poly::zero(&self.chart);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics if the operands live on different charts; use the
        /// `checked_*` variant to get an error instead.
        impl<'a> $trait<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                match self.$checked(rhs) {
                    Ok(p) => p,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coefficients(|c| -c)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn chart() -> Chart {
        Chart::new(&["x", "y", "t"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_expr(s, &chart()).unwrap()
    }

    #[test]
    fn conjugate_product_cancels_cross_terms() {
        assert_eq!(&p("x + j*y") * &p("x - j*y"), p("x^2 - y^2"));
    }

    #[test]
    fn annihilator_and_idempotent() {
        assert!((&p("x*y + 3") * &p("0")).is_zero());
        let e = p("(1+j)*1/2");
        assert_eq!(&e * &e, e);
    }

    #[test]
    fn chart_mismatch_is_an_error() {
        let other = Chart::new(&["u"]).unwrap();
        let a = Poly::var(&chart(), 0);
        let b = Poly::var(&other, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::ChartMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^2*y").diff(0).unwrap(), p("2*x*y"));
        assert!(p("7 + j").diff(2).unwrap().is_zero());
        assert_eq!(p("x*y + y^3").diff_by_name("y").unwrap(), p("x + 3*y^2"));
        assert!(p("x").diff_by_name("q").is_err());
    }

    #[test]
    fn evaluation() {
        let pt = [SplitComplex::from_int(2), SplitComplex::from_int(3), SplitComplex::from_int(0)];
        assert_eq!(p("x^2 + y").eval(&pt).unwrap(), SplitComplex::from_int(7));
        let jx = p("j*x");
        let one_plus_j = SplitComplex::new(BigRational::one(), BigRational::one());
        let pt = [one_plus_j.clone(), SplitComplex::zero(), SplitComplex::zero()];
        assert_eq!(jx.eval(&pt).unwrap(), one_plus_j);
        assert!(matches!(jx.eval(&pt[..2]), Err(Error::MissingAssignment(ref n)) if n == "t"));
    }

    #[test]
    fn named_evaluation_reports_missing_coordinate() {
        let mut point = HashMap::new();
        point.insert("x".to_string(), SplitComplex::from_int(1));
        point.insert("y".to_string(), SplitComplex::from_int(1));
        assert!(matches!(p("x").eval_named(&point), Err(Error::MissingAssignment(ref n)) if n == "t"));
        point.insert("t".to_string(), SplitComplex::from_int(5));
        assert_eq!(p("x*t").eval_named(&point).unwrap(), SplitComplex::from_int(5));
    }

    #[test]
    fn idempotent_decomposition() {
        let (a, b) = p("x + j*x").idempotent_decompose();
        assert_eq!(a, p("2*x"));
        assert!(b.is_zero());
        let f = p("3*x*y - 1/2");
        assert_eq!(f.idempotent_decompose(), (f.clone(), f.clone()));
        assert_eq!(p("j").idempotent_decompose(), (p("1"), p("-1")));
        let g = p("(2-j)*x^2 + j*3/4*y");
        let (a, b) = g.idempotent_decompose();
        assert_eq!(Poly::from_null_components(&a, &b).unwrap(), g);
    }

    #[test]
    fn compose_and_embed() {
        let big = Chart::new(&["x", "y", "t", "u"]).unwrap();
        let f = p("x^2*t + y");
        let e = f.embed(&big, &[0, 1, 3]).unwrap();
        assert_eq!(e, parse_expr("x^2*u + y", &big).unwrap());
        let images = vec![
            parse_expr("u + 1", &big).unwrap(),
            parse_expr("x", &big).unwrap(),
            parse_expr("2", &big).unwrap(),
        ];
        assert_eq!(f.compose(&big, &images).unwrap(), parse_expr("2*u^2 + 4*u + 2 + x", &big).unwrap());
    }
}
