//! Change between a real chart `(x^α, y^α)` and the paracomplex frame
//! `(z^α, z̄^α)` with `z = x + j y`, `z̄ = x − j y`.
//!
//! Frames: `∂/∂z = ½(∂/∂x − j ∂/∂y)`, `∂/∂z̄ = ½(∂/∂x + j ∂/∂y)`,
//! `dz = dx + j dy`, `dz̄ = dx − j dy`. `z` and `z̄` are independent formal
//! coordinates; nothing here conjugates.
//!
//! Vector components transform by `P` (rows `z, z̄`, columns `x, y`:
//! `[[1, −j], [1, j]]` per pair), covector components by `P⁻ᵀ`, and
//! (1,1)-tensors by `P T P⁻¹`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expr::{is_identifier, Chart, Poly, SplitComplex};
use crate::tensor::{OneForm, Tensor11, VectorField};

type Matrix = Vec<Vec<SplitComplex>>;

#[derive(Clone, Debug)]
pub struct ParacomplexChange {
    real: Chart,
    para: Chart,
    /// `p[i][k]`: new vector component `i` from old component `k`.
    p: Matrix,
    p_inv: Matrix,
    /// Real coordinates written in the paracomplex chart.
    real_in_para: Vec<Poly>,
    /// Paracomplex coordinates written in the real chart.
    para_in_real: Vec<Poly>,
}

impl ParacomplexChange {
    /// Pairs `(x, y)` name the real coordinates; the paracomplex chart is
    /// `z1..zm, zb1..zbm`.
    pub fn new(real: &Chart, pairs: &[(&str, &str)]) -> Result<Self> {
        let m = pairs.len();
        let mut names: Vec<String> = (1..=m).map(|a| format!("z{a}")).collect();
        names.extend((1..=m).map(|a| format!("zb{a}")));
        Self::with_names(real, pairs, &names)
    }

    /// Like [`ParacomplexChange::new`] with explicit names for the `2m`
    /// paracomplex coordinates (all `z` first, then all `z̄`).
    pub fn with_names<S: AsRef<str>>(real: &Chart, pairs: &[(&str, &str)], names: &[S]) -> Result<Self> {
        let n = real.dim();
        if n % 2 != 0 {
            return Err(Error::Pairing(format!("real chart has odd dimension {n}")));
        }
        let m = n / 2;
        if pairs.len() != m {
            return Err(Error::Pairing(format!("expected {m} (x, y) pairs, got {}", pairs.len())));
        }
        if names.len() != n || names.iter().any(|s| !is_identifier(s.as_ref())) {
            return Err(Error::Pairing("paracomplex coordinate names are malformed".into()));
        }
        let mut seen = vec![false; n];
        let mut idx = Vec::with_capacity(m);
        for (x, y) in pairs {
            let (ix, iy) = (real.lookup(x)?, real.lookup(y)?);
            if seen[ix] || seen[iy] || ix == iy {
                return Err(Error::Pairing(format!("coordinate reused in pair ({x}, {y})")));
            }
            seen[ix] = true;
            seen[iy] = true;
            idx.push((ix, iy));
        }
        let para = Chart::new(names)?;

        let zero = SplitComplex::from_int(0);
        let half = SplitComplex::from_ratio(1, 2);
        let j = SplitComplex::j();
        let mut p = vec![vec![zero.clone(); n]; n];
        let mut p_inv = vec![vec![zero; n]; n];
        let mut real_in_para = vec![Poly::zero(&para); n];
        let mut para_in_real = vec![Poly::zero(real); n];
        for (a, &(ix, iy)) in idx.iter().enumerate() {
            let (z, zb) = (a, m + a);
            // Z^z = X − jY, Z^z̄ = X + jY
            p[z][ix] = SplitComplex::from_int(1);
            p[z][iy] = -&j;
            p[zb][ix] = SplitComplex::from_int(1);
            p[zb][iy] = j.clone();
            // X = (Z^z + Z^z̄)/2, Y = j(Z^z̄ − Z^z)/2
            p_inv[ix][z] = half.clone();
            p_inv[ix][zb] = half.clone();
            p_inv[iy][z] = -&(&j * &half);
            p_inv[iy][zb] = &j * &half;

            let (vz, vzb) = (Poly::var(&para, z), Poly::var(&para, zb));
            real_in_para[ix] = (&vz + &vzb).scale(&half);
            real_in_para[iy] = (&vz - &vzb).scale(&(&j * &half));
            let (vx, vy) = (Poly::var(real, ix), Poly::var(real, iy));
            para_in_real[z] = &vx + &vy.scale(&j);
            para_in_real[zb] = &vx - &vy.scale(&j);
        }
        Ok(Self { real: real.clone(), para, p, p_inv, real_in_para, para_in_real })
    }

    pub fn real_chart(&self) -> &Chart {
        &self.real
    }

    pub fn paracomplex_chart(&self) -> &Chart {
        &self.para
    }

    pub fn forward<T: FrameChange>(&self, field: &T) -> Result<T> {
        field.change(&self.real, &self.para, &self.real_in_para, &self.p, &self.p_inv)
    }

    pub fn backward<T: FrameChange>(&self, field: &T) -> Result<T> {
        field.change(&self.para, &self.real, &self.para_in_real, &self.p_inv, &self.p)
    }
}

/// Fields that can be carried through a constant linear frame change
/// combined with a polynomial coordinate substitution.
pub trait FrameChange: Sized {
    /// `images` express the source coordinates on `to`; `p` maps source
    /// vector components to target ones and `p_inv` is its inverse.
    fn change(&self, from: &Chart, to: &Chart, images: &[Poly], p: &Matrix, p_inv: &Matrix) -> Result<Self>;
}

fn linear(coeffs: impl Iterator<Item = (SplitComplex, Poly)>, chart: &Chart) -> Poly {
    let mut acc = Poly::zero(chart);
    for (k, v) in coeffs {
        if !k.is_zero() && !v.is_zero() {
            acc = &acc + &v.scale(&k);
        }
    }
    acc
}

impl FrameChange for Poly {
    fn change(&self, from: &Chart, to: &Chart, images: &[Poly], _: &Matrix, _: &Matrix) -> Result<Self> {
        from.ensure_same(self.chart())?;
        self.compose(to, images)
    }
}

impl FrameChange for VectorField {
    fn change(&self, from: &Chart, to: &Chart, images: &[Poly], p: &Matrix, _: &Matrix) -> Result<Self> {
        from.ensure_same(self.chart())?;
        let old = self.comp().iter().map(|c| c.compose(to, images)).collect::<Result<Vec<_>>>()?;
        let comp = p.iter().map(|row| linear(row.iter().cloned().zip(old.iter().cloned()), to)).collect();
        VectorField::new(to, comp)
    }
}

impl FrameChange for OneForm {
    fn change(&self, from: &Chart, to: &Chart, images: &[Poly], _: &Matrix, p_inv: &Matrix) -> Result<Self> {
        from.ensure_same(self.chart())?;
        let old = self.comp().iter().map(|c| c.compose(to, images)).collect::<Result<Vec<_>>>()?;
        let n = to.dim();
        let comp = (0..n).map(|i| linear((0..n).map(|k| (p_inv[k][i].clone(), old[k].clone())), to)).collect();
        OneForm::new(to, comp)
    }
}

impl FrameChange for Tensor11 {
    fn change(&self, from: &Chart, to: &Chart, images: &[Poly], p: &Matrix, p_inv: &Matrix) -> Result<Self> {
        from.ensure_same(self.chart())?;
        let n = to.dim();
        let old = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| c.compose(to, images)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        // P · T
        let pt: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|k| linear((0..n).map(|l| (p[i][l].clone(), old[l][k].clone())), to)).collect())
            .collect();
        // (P · T) · P⁻¹
        let comp = (0..n)
            .map(|i| (0..n).map(|k| linear((0..n).map(|l| (p_inv[l][k].clone(), pt[i][l].clone())), to)).collect())
            .collect();
        Tensor11::new(to, comp)
    }
}
