//! The induced chart on `TM` and the vertical and complete lifts.
//!
//! On `TM` with coordinates `(x^α, x'^α)`, a field on `M` lifts as
//!
//! | field | vertical | complete |
//! |-------|----------|----------|
//! | `f` | `f ∘ τ` | `Σ x'^α (∂_α f)^v` |
//! | `Z` | `(Z^α)^v ∂'_α` | `(Z^α)^v ∂_α + (Z^α)^c ∂'_α` |
//! | `ω` | `(ω_α)^v dx^α` | `(ω_α)^c dx^α + (ω_α)^v dx'^α` |
//! | `F` | `(F^β_α)^v ∂'_β⊗dx^α` | `F^v` on both diagonal blocks, `F^c` base→fiber |

use crate::error::{Error, Result};
use crate::expr::{Chart, CoordKind, Poly};
use crate::tensor::{OneForm, Tensor11, VectorField};

/// The tangent-bundle chart: base coordinates followed by their fiber
/// partners, named with a trailing apostrophe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedChart {
    base: Chart,
    total: Chart,
}

/// Builds the induced chart `(x^1..x^m, x'^1..x'^m)` on `TM`.
pub fn tangent_chart(base: &Chart) -> Result<LiftedChart> {
    LiftedChart::new(base)
}

impl LiftedChart {
    pub fn new(base: &Chart) -> Result<Self> {
        if let Some(c) = base.coords().iter().find(|c| c.name.ends_with('\'') || c.kind == CoordKind::Fiber) {
            return Err(Error::NameCollision(c.name.clone()));
        }
        let mut names: Vec<String> = base.names().iter().map(|s| s.to_string()).collect();
        for c in base.coords() {
            let primed = format!("{}'", c.name);
            if names.contains(&primed) {
                return Err(Error::NameCollision(primed));
            }
            names.push(primed);
        }
        let m = base.dim();
        let mut kinds = vec![CoordKind::Base; m];
        kinds.extend(std::iter::repeat_n(CoordKind::Fiber, m));
        let total = Chart::with_kinds(&names, &kinds)?;
        Ok(Self { base: base.clone(), total })
    }

    pub fn base(&self) -> &Chart {
        &self.base
    }

    /// The full `2m`-dimensional chart on `TM`.
    pub fn total(&self) -> &Chart {
        &self.total
    }

    /// Dimension `m` of the base.
    pub fn m(&self) -> usize {
        self.base.dim()
    }

    /// Position of the fiber partner of base coordinate `alpha`.
    pub fn fiber(&self, alpha: usize) -> usize {
        self.m() + alpha
    }

    /// The fiber coordinate `x'^alpha` as a polynomial on `TM`.
    pub fn fiber_var(&self, alpha: usize) -> Poly {
        Poly::var(&self.total, self.fiber(alpha))
    }

    pub(crate) fn check_base(&self, chart: &Chart) -> Result<()> {
        self.base.ensure_same(chart)
    }

    fn base_positions(&self) -> Vec<usize> {
        (0..self.m()).collect()
    }

    pub fn vlift_scalar(&self, f: &Poly) -> Result<Poly> {
        self.check_base(f.chart())?;
        f.embed(&self.total, &self.base_positions())
    }

    /// `f^c = Σ x'^α (∂f/∂x^α)^v`, linear in the fiber coordinates.
    pub fn clift_scalar(&self, f: &Poly) -> Result<Poly> {
        self.check_base(f.chart())?;
        let mut acc = Poly::zero(&self.total);
        for alpha in 0..self.m() {
            let d = f.diff(alpha)?;
            if d.is_zero() {
                continue;
            }
            acc = &acc + &(&self.fiber_var(alpha) * &self.vlift_scalar(&d)?);
        }
        Ok(acc)
    }

    /// The γ-operator applied to the gradient of `f`: `Σ x'^α (∂f/∂x^α)^v`.
    ///
    /// Computed independently of [`LiftedChart::clift_scalar`] from the
    /// gradient 1-form, so that `f^h = f^c − γ(∇f)` is a genuine check.
    pub fn gamma_grad(&self, f: &Poly) -> Result<Poly> {
        self.check_base(f.chart())?;
        let grad = (0..self.m()).map(|a| f.diff(a)).collect::<Result<Vec<_>>>()?;
        let grad = OneForm::new(&self.base, grad)?;
        let lifted = self.vlift_oneform(&grad)?;
        let position = VectorField::new(
            &self.total,
            (0..2 * self.m()).map(|i| if i < self.m() { self.fiber_var(i) } else { Poly::zero(&self.total) }).collect(),
        )?;
        lifted.pair(&position)
    }

    /// `f^h = f^c − γ(∇f)`, which is always zero.
    pub fn hlift_scalar(&self, f: &Poly) -> Result<Poly> {
        Ok(&self.clift_scalar(f)? - &self.gamma_grad(f)?)
    }

    pub fn vlift_vector(&self, z: &VectorField) -> Result<VectorField> {
        self.check_base(z.chart())?;
        let mut comp = vec![Poly::zero(&self.total); 2 * self.m()];
        for (a, c) in z.comp().iter().enumerate() {
            comp[self.fiber(a)] = self.vlift_scalar(c)?;
        }
        VectorField::new(&self.total, comp)
    }

    pub fn clift_vector(&self, z: &VectorField) -> Result<VectorField> {
        self.check_base(z.chart())?;
        let mut comp = vec![Poly::zero(&self.total); 2 * self.m()];
        for (a, c) in z.comp().iter().enumerate() {
            comp[a] = self.vlift_scalar(c)?;
            comp[self.fiber(a)] = self.clift_scalar(c)?;
        }
        VectorField::new(&self.total, comp)
    }

    pub fn vlift_oneform(&self, w: &OneForm) -> Result<OneForm> {
        self.check_base(w.chart())?;
        let mut comp = vec![Poly::zero(&self.total); 2 * self.m()];
        for (a, c) in w.comp().iter().enumerate() {
            comp[a] = self.vlift_scalar(c)?;
        }
        OneForm::new(&self.total, comp)
    }

    pub fn clift_oneform(&self, w: &OneForm) -> Result<OneForm> {
        self.check_base(w.chart())?;
        let mut comp = vec![Poly::zero(&self.total); 2 * self.m()];
        for (a, c) in w.comp().iter().enumerate() {
            comp[a] = self.clift_scalar(c)?;
            comp[self.fiber(a)] = self.vlift_scalar(c)?;
        }
        OneForm::new(&self.total, comp)
    }

    pub fn vlift_tensor(&self, f: &Tensor11) -> Result<Tensor11> {
        self.check_base(f.chart())?;
        let mut t = Tensor11::zero(&self.total);
        for (b, a, c) in f.nonzero_entries() {
            t.set(self.fiber(b), a, self.vlift_scalar(c)?)?;
        }
        Ok(t)
    }

    pub fn clift_tensor(&self, f: &Tensor11) -> Result<Tensor11> {
        self.check_base(f.chart())?;
        let mut t = Tensor11::zero(&self.total);
        for (b, a, c) in f.nonzero_entries() {
            let v = self.vlift_scalar(c)?;
            t.set(b, a, v.clone())?;
            t.set(self.fiber(b), self.fiber(a), v)?;
            t.set(self.fiber(b), a, self.clift_scalar(c)?)?;
        }
        Ok(t)
    }
}
