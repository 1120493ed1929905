//! Component containers for tensor fields in a fixed chart.
//!
//! A (1,1)-tensor stores `comp[β][α]` for `T = T^β_α ∂_β ⊗ dx^α`, so applying
//! it to a vector field is an ordinary matrix-vector product and composition
//! is an ordinary matrix product.

use crate::error::{Error, Result};
use crate::expr::{parse_expr, Chart, Poly, SplitComplex};

fn check_len(chart: &Chart, found: usize) -> Result<()> {
    if found == chart.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: chart.dim(), found })
    }
}

fn check_charts<'a>(chart: &Chart, polys: impl IntoIterator<Item = &'a Poly>) -> Result<()> {
    polys.into_iter().try_for_each(|p| chart.ensure_same(p.chart()))
}

fn parse_all(chart: &Chart, texts: &[&str]) -> Result<Vec<Poly>> {
    texts.iter().map(|t| Ok(parse_expr(t, chart)?)).collect()
}

/// `Z = Σ comp[α] ∂/∂x^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    chart: Chart,
    comp: Vec<Poly>,
}

impl VectorField {
    pub fn new(chart: &Chart, comp: Vec<Poly>) -> Result<Self> {
        check_len(chart, comp.len())?;
        check_charts(chart, &comp)?;
        Ok(Self { chart: chart.clone(), comp })
    }

    pub fn parse(chart: &Chart, texts: &[&str]) -> Result<Self> {
        Self::new(chart, parse_all(chart, texts)?)
    }

    pub fn zero(chart: &Chart) -> Self {
        Self { chart: chart.clone(), comp: vec![Poly::zero(chart); chart.dim()] }
    }

    /// The coordinate field `∂/∂x^index`.
    pub fn coordinate(chart: &Chart, index: usize) -> Self {
        let mut z = Self::zero(chart);
        z.comp[index] = Poly::one(chart);
        z
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn comp(&self) -> &[Poly] {
        &self.comp
    }

    pub fn component(&self, index: usize) -> &Poly {
        &self.comp[index]
    }

    pub fn into_comp(self) -> Vec<Poly> {
        self.comp
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField> {
        self.chart.ensure_same(&other.chart)?;
        Ok(Self { chart: self.chart.clone(), comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField> {
        self.chart.ensure_same(&other.chart)?;
        Ok(Self { chart: self.chart.clone(), comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a - b).collect() })
    }

    /// `f·Z`.
    pub fn scale(&self, f: &Poly) -> Result<VectorField> {
        self.chart.ensure_same(f.chart())?;
        Ok(Self { chart: self.chart.clone(), comp: self.comp.iter().map(|c| c * f).collect() })
    }

    pub fn scale_by(&self, k: &SplitComplex) -> VectorField {
        Self { chart: self.chart.clone(), comp: self.comp.iter().map(|c| c.scale(k)).collect() }
    }

    /// Directional derivative `Z(f) = Σ Z^α ∂f/∂x^α`.
    pub fn act(&self, f: &Poly) -> Result<Poly> {
        self.chart.ensure_same(f.chart())?;
        let mut acc = Poly::zero(&self.chart);
        for (i, z) in self.comp.iter().enumerate() {
            if z.is_zero() {
                continue;
            }
            acc = &acc + &(z * &f.diff(i)?);
        }
        Ok(acc)
    }

    /// `[X, Y]^β = Σ_α (X^α ∂_α Y^β − Y^α ∂_α X^β)`.
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField> {
        self.chart.ensure_same(&other.chart)?;
        let comp = (0..self.chart.dim())
            .map(|b| Ok(&self.act(&other.comp[b])? - &other.act(&self.comp[b])?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { chart: self.chart.clone(), comp })
    }
}

/// `ω = Σ comp[α] dx^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OneForm {
    chart: Chart,
    comp: Vec<Poly>,
}

impl OneForm {
    pub fn new(chart: &Chart, comp: Vec<Poly>) -> Result<Self> {
        check_len(chart, comp.len())?;
        check_charts(chart, &comp)?;
        Ok(Self { chart: chart.clone(), comp })
    }

    pub fn parse(chart: &Chart, texts: &[&str]) -> Result<Self> {
        Self::new(chart, parse_all(chart, texts)?)
    }

    pub fn zero(chart: &Chart) -> Self {
        Self { chart: chart.clone(), comp: vec![Poly::zero(chart); chart.dim()] }
    }

    /// The coordinate differential `dx^index`.
    pub fn differential(chart: &Chart, index: usize) -> Self {
        let mut w = Self::zero(chart);
        w.comp[index] = Poly::one(chart);
        w
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn comp(&self) -> &[Poly] {
        &self.comp
    }

    pub fn component(&self, index: usize) -> &Poly {
        &self.comp[index]
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> Result<OneForm> {
        self.chart.ensure_same(&other.chart)?;
        Ok(Self { chart: self.chart.clone(), comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &OneForm) -> Result<OneForm> {
        self.chart.ensure_same(&other.chart)?;
        Ok(Self { chart: self.chart.clone(), comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, f: &Poly) -> Result<OneForm> {
        self.chart.ensure_same(f.chart())?;
        Ok(Self { chart: self.chart.clone(), comp: self.comp.iter().map(|c| c * f).collect() })
    }

    pub fn scale_by(&self, k: &SplitComplex) -> OneForm {
        Self { chart: self.chart.clone(), comp: self.comp.iter().map(|c| c.scale(k)).collect() }
    }

    /// `ω(Z) = Σ ω_α Z^α`.
    pub fn pair(&self, z: &VectorField) -> Result<Poly> {
        self.chart.ensure_same(z.chart())?;
        let mut acc = Poly::zero(&self.chart);
        for (w, v) in self.comp.iter().zip(z.comp()) {
            if !w.is_zero() && !v.is_zero() {
                acc = &acc + &(w * v);
            }
        }
        Ok(acc)
    }

    /// `ω ∘ T`, i.e. `X ↦ ω(T X)`.
    pub fn compose(&self, t: &Tensor11) -> Result<OneForm> {
        self.chart.ensure_same(t.chart())?;
        let n = self.chart.dim();
        let comp = (0..n)
            .map(|a| {
                let mut acc = Poly::zero(&self.chart);
                for b in 0..n {
                    if !self.comp[b].is_zero() && !t.get(b, a).is_zero() {
                        acc = &acc + &(&self.comp[b] * t.get(b, a));
                    }
                }
                acc
            })
            .collect();
        Ok(Self { chart: self.chart.clone(), comp })
    }
}

/// `T = Σ comp[β][α] ∂_β ⊗ dx^α`; `(T Z)^β = Σ_α comp[β][α] Z^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor11 {
    chart: Chart,
    comp: Vec<Vec<Poly>>,
}

impl Tensor11 {
    pub fn new(chart: &Chart, comp: Vec<Vec<Poly>>) -> Result<Self> {
        check_len(chart, comp.len())?;
        for row in &comp {
            check_len(chart, row.len())?;
            check_charts(chart, row)?;
        }
        Ok(Self { chart: chart.clone(), comp })
    }

    pub fn parse(chart: &Chart, rows: &[&[&str]]) -> Result<Self> {
        let comp = rows.iter().map(|r| parse_all(chart, r)).collect::<Result<Vec<_>>>()?;
        Self::new(chart, comp)
    }

    pub fn from_ints(chart: &Chart, rows: &[Vec<i64>]) -> Result<Self> {
        let comp = rows.iter().map(|r| r.iter().map(|&v| Poly::int(chart, v)).collect()).collect();
        Self::new(chart, comp)
    }

    pub fn zero(chart: &Chart) -> Self {
        let n = chart.dim();
        Self { chart: chart.clone(), comp: vec![vec![Poly::zero(chart); n]; n] }
    }

    pub fn identity(chart: &Chart) -> Self {
        let mut t = Self::zero(chart);
        for i in 0..chart.dim() {
            t.comp[i][i] = Poly::one(chart);
        }
        t
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    /// The component `T^row_col`.
    pub fn get(&self, row: usize, col: usize) -> &Poly {
        &self.comp[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Poly) -> Result<()> {
        self.chart.ensure_same(value.chart())?;
        self.comp[row][col] = value;
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.comp
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().flatten().all(Poly::is_zero)
    }

    /// Component positions that are not the zero polynomial.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &Poly)> {
        let mut out = Vec::new();
        for (r, row) in self.comp.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    out.push((r, c, p));
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &Tensor11, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<Tensor11> {
        self.chart.ensure_same(&other.chart)?;
        let comp = self
            .comp
            .iter()
            .zip(&other.comp)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(Self { chart: self.chart.clone(), comp })
    }

    pub fn add(&self, other: &Tensor11) -> Result<Tensor11> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor11) -> Result<Tensor11> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, f: &Poly) -> Result<Tensor11> {
        self.chart.ensure_same(f.chart())?;
        Ok(self.map(|p| p * f))
    }

    pub fn scale_by(&self, k: &SplitComplex) -> Tensor11 {
        self.map(|p| p.scale(k))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Tensor11 {
        Self { chart: self.chart.clone(), comp: self.comp.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn apply(&self, z: &VectorField) -> Result<VectorField> {
        self.chart.ensure_same(z.chart())?;
        let comp = self
            .comp
            .iter()
            .map(|row| {
                let mut acc = Poly::zero(&self.chart);
                for (t, v) in row.iter().zip(z.comp()) {
                    if !t.is_zero() && !v.is_zero() {
                        acc = &acc + &(t * v);
                    }
                }
                acc
            })
            .collect();
        VectorField::new(&self.chart, comp)
    }

    /// `T ∘ S`, so that `(T ∘ S)(Z) = T(S(Z))`.
    pub fn compose(&self, other: &Tensor11) -> Result<Tensor11> {
        self.chart.ensure_same(&other.chart)?;
        let n = self.dim();
        let mut comp = vec![vec![Poly::zero(&self.chart); n]; n];
        for (i, row) in self.comp.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.comp[k].iter().enumerate() {
                    if !b.is_zero() {
                        comp[i][j] = &comp[i][j] + &(a * b);
                    }
                }
            }
        }
        Ok(Self { chart: self.chart.clone(), comp })
    }

    pub fn square(&self) -> Tensor11 {
        self.compose(self).expect("same chart")
    }

    /// `Z ⊗ ω`, the tensor `W ↦ ω(W)·Z`.
    pub fn tensor_product(z: &VectorField, w: &OneForm) -> Result<Tensor11> {
        z.chart().ensure_same(w.chart())?;
        let comp = z.comp().iter().map(|zb| w.comp().iter().map(|wa| zb * wa).collect()).collect();
        Ok(Self { chart: z.chart().clone(), comp })
    }

    pub fn trace(&self) -> Poly {
        let mut acc = Poly::zero(&self.chart);
        for i in 0..self.dim() {
            acc = &acc + &self.comp[i][i];
        }
        acc
    }

    pub fn transpose(&self) -> Tensor11 {
        let n = self.dim();
        let comp = (0..n).map(|r| (0..n).map(|c| self.comp[c][r].clone()).collect()).collect();
        Self { chart: self.chart.clone(), comp }
    }
}

/// A symmetric (0,2)-tensor, `G = Σ comp[α][β] dx^α ⊗ dx^β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Metric {
    chart: Chart,
    comp: Vec<Vec<Poly>>,
}

impl Metric {
    pub fn new(chart: &Chart, comp: Vec<Vec<Poly>>) -> Result<Self> {
        check_len(chart, comp.len())?;
        for row in &comp {
            check_len(chart, row.len())?;
            check_charts(chart, row)?;
        }
        for a in 0..comp.len() {
            for b in a + 1..comp.len() {
                if comp[a][b] != comp[b][a] {
                    return Err(Error::NonSymmetricMetric(a, b));
                }
            }
        }
        Ok(Self { chart: chart.clone(), comp })
    }

    pub fn from_ints(chart: &Chart, rows: &[Vec<i64>]) -> Result<Self> {
        let comp = rows.iter().map(|r| r.iter().map(|&v| Poly::int(chart, v)).collect()).collect();
        Self::new(chart, comp)
    }

    /// `Σ_α ω^α ⊗ ω^α`.
    pub fn sum_of_squares(chart: &Chart, forms: &[OneForm]) -> Result<Metric> {
        let n = chart.dim();
        let mut comp = vec![vec![Poly::zero(chart); n]; n];
        for w in forms {
            chart.ensure_same(w.chart())?;
            for a in 0..n {
                for b in 0..n {
                    comp[a][b] = &comp[a][b] + &(w.component(a) * w.component(b));
                }
            }
        }
        Ok(Self { chart: chart.clone(), comp })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn get(&self, a: usize, b: usize) -> &Poly {
        &self.comp[a][b]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.comp
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().flatten().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Metric) -> Result<Metric> {
        self.chart.ensure_same(&other.chart)?;
        let comp = self.comp.iter().zip(&other.comp).map(|(x, y)| x.iter().zip(y).map(|(a, b)| a + b).collect()).collect();
        Ok(Self { chart: self.chart.clone(), comp })
    }

    pub fn sub(&self, other: &Metric) -> Result<Metric> {
        self.add(&other.scale_by(&SplitComplex::from_int(-1)))
    }

    pub fn scale_by(&self, k: &SplitComplex) -> Metric {
        Self { chart: self.chart.clone(), comp: self.comp.iter().map(|r| r.iter().map(|p| p.scale(k)).collect()).collect() }
    }

    /// `G(X, Y)`.
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Result<Poly> {
        self.lower(x)?.pair(y)
    }

    /// The 1-form `G(Z, ·)`.
    pub fn lower(&self, z: &VectorField) -> Result<OneForm> {
        self.chart.ensure_same(z.chart())?;
        let n = self.chart.dim();
        let comp = (0..n)
            .map(|b| {
                let mut acc = Poly::zero(&self.chart);
                for a in 0..n {
                    acc = &acc + &(&self.comp[a][b] * z.component(a));
                }
                acc
            })
            .collect();
        OneForm::new(&self.chart, comp)
    }

    /// The pulled-back metric `(X, Y) ↦ G(T X, T Y)`, i.e. `Tᵀ G T`.
    pub fn pullback(&self, t: &Tensor11) -> Result<Metric> {
        self.chart.ensure_same(t.chart())?;
        let n = self.chart.dim();
        let mut comp = vec![vec![Poly::zero(&self.chart); n]; n];
        for (a, row) in comp.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                let mut acc = Poly::zero(&self.chart);
                for g in 0..n {
                    if t.get(g, a).is_zero() {
                        continue;
                    }
                    for d in 0..n {
                        if !t.get(d, b).is_zero() && !self.comp[g][d].is_zero() {
                            acc = &acc + &(&(t.get(g, a) * &self.comp[g][d]) * t.get(d, b));
                        }
                    }
                }
                *slot = acc;
            }
        }
        Ok(Self { chart: self.chart.clone(), comp })
    }
}
