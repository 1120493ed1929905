use crate::error::{Error, Result};
use crate::expr::{parse_expr, Chart, Poly};

/// Christoffel symbols `Γ^β_{γα}` of an affine connection on the base,
/// stored as `gamma[β][γ][α]` (value index, fiber-contraction index, form
/// index). No symmetry is assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    base: Chart,
    gamma: Vec<Vec<Vec<Poly>>>,
}

impl Connection {
    pub fn new(base: &Chart, gamma: Vec<Vec<Vec<Poly>>>) -> Result<Self> {
        let m = base.dim();
        let shape_ok = gamma.len() == m && gamma.iter().all(|g| g.len() == m && g.iter().all(|r| r.len() == m));
        if !shape_ok {
            return Err(Error::DimensionMismatch { expected: m, found: gamma.len() });
        }
        for p in gamma.iter().flatten().flatten() {
            base.ensure_same(p.chart())?;
        }
        Ok(Self { base: base.clone(), gamma })
    }

    pub fn flat(base: &Chart) -> Self {
        let m = base.dim();
        Self { base: base.clone(), gamma: vec![vec![vec![Poly::zero(base); m]; m]; m] }
    }

    /// Sets `Γ^value_{contracted, form}` from an expression.
    pub fn set_expr(&mut self, value: &str, contracted: &str, form: &str, expr: &str) -> Result<()> {
        let (b, g, a) = (self.base.lookup(value)?, self.base.lookup(contracted)?, self.base.lookup(form)?);
        self.gamma[b][g][a] = parse_expr(expr, &self.base)?;
        Ok(())
    }

    pub fn set(&mut self, value: usize, contracted: usize, form: usize, p: Poly) -> Result<()> {
        self.base.ensure_same(p.chart())?;
        self.gamma[value][contracted][form] = p;
        Ok(())
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    pub fn get(&self, value: usize, contracted: usize, form: usize) -> &Poly {
        &self.gamma[value][contracted][form]
    }

    pub fn is_flat(&self) -> bool {
        self.gamma.iter().flatten().flatten().all(Poly::is_zero)
    }
}
