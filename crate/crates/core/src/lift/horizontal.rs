//! Horizontal lifts through the adapted frame of a connection.
//!
//! With `N^β_α = Σ_γ x'^γ (Γ^β_{γα})^v` the adapted frame and coframe are
//!
//! ```text
//! D_α = ∂_α − N^β_α ∂'_β      V_α = ∂'_α
//! θ^α = dx^α                  η^α = dx'^α + N^α_β dx^β
//! ```
//!
//! and `Z^h = Z^α D_α`, `ω^h = ω_α η^α`,
//! `F^h = F^β_α D_β⊗θ^α + F^β_α V_β⊗η^α`.

use super::bundle::LiftedChart;
use super::connection::Connection;
use crate::error::Result;
use crate::expr::Poly;
use crate::tensor::{OneForm, Tensor11, VectorField};

/// The adapted frame `{D, V}` and its dual coframe `{θ, η}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedFrame {
    pub d: Vec<VectorField>,
    pub v: Vec<VectorField>,
    pub theta: Vec<OneForm>,
    pub eta: Vec<OneForm>,
}

impl AdaptedFrame {
    /// `(D_1..D_m, V_1..V_m)`.
    pub fn vectors(&self) -> impl Iterator<Item = &VectorField> {
        self.d.iter().chain(&self.v)
    }

    /// `(θ^1..θ^m, η^1..η^m)`.
    pub fn covectors(&self) -> impl Iterator<Item = &OneForm> {
        self.theta.iter().chain(&self.eta)
    }

    /// `[ω^a(E_b)]` for the coframe `ω` against the frame `E`.
    pub fn duality_matrix(&self) -> Result<Vec<Vec<Poly>>> {
        self.covectors().map(|w| self.vectors().map(|e| w.pair(e)).collect()).collect()
    }
}

impl LiftedChart {
    /// `N^β_α = Σ_γ x'^γ (Γ^β_{γα})^v`, indexed `[β][α]`.
    pub fn fiber_gamma(&self, conn: &Connection) -> Result<Vec<Vec<Poly>>> {
        self.check_base(conn.base())?;
        let m = self.m();
        let mut n = vec![vec![Poly::zero(self.total()); m]; m];
        for (b, row) in n.iter_mut().enumerate() {
            for (a, slot) in row.iter_mut().enumerate() {
                for g in 0..m {
                    let c = conn.get(b, g, a);
                    if !c.is_zero() {
                        *slot = &*slot + &(&self.fiber_var(g) * &self.vlift_scalar(c)?);
                    }
                }
            }
        }
        Ok(n)
    }

    pub fn adapted_frame(&self, conn: &Connection) -> Result<AdaptedFrame> {
        Ok(self.horizontal(conn)?.frame)
    }

    /// Precomputes `N` and the adapted frame for repeated horizontal lifts.
    pub fn horizontal(&self, conn: &Connection) -> Result<HorizontalLift<'_>> {
        let n = self.fiber_gamma(conn)?;
        let m = self.m();
        let total = self.total();
        let zero = || vec![Poly::zero(total); 2 * m];
        let mut frame = AdaptedFrame { d: Vec::new(), v: Vec::new(), theta: Vec::new(), eta: Vec::new() };
        for a in 0..m {
            let mut d = zero();
            d[a] = Poly::one(total);
            for (b, row) in n.iter().enumerate() {
                d[self.fiber(b)] = -&row[a];
            }
            frame.d.push(VectorField::new(total, d)?);
            frame.v.push(VectorField::coordinate(total, self.fiber(a)));
            frame.theta.push(OneForm::differential(total, a));
            let mut eta = zero();
            eta[self.fiber(a)] = Poly::one(total);
            eta[..m].clone_from_slice(&n[a]);
            frame.eta.push(OneForm::new(total, eta)?);
        }
        Ok(HorizontalLift { chart: self, n, frame })
    }

    pub fn hlift_vector(&self, z: &VectorField, conn: &Connection) -> Result<VectorField> {
        self.horizontal(conn)?.vector(z)
    }

    pub fn hlift_oneform(&self, w: &OneForm, conn: &Connection) -> Result<OneForm> {
        self.horizontal(conn)?.oneform(w)
    }

    pub fn hlift_tensor(&self, f: &Tensor11, conn: &Connection) -> Result<Tensor11> {
        self.horizontal(conn)?.tensor(f)
    }
}

/// Horizontal lifts with respect to one fixed connection.
#[derive(Clone, Debug)]
pub struct HorizontalLift<'a> {
    chart: &'a LiftedChart,
    n: Vec<Vec<Poly>>,
    frame: AdaptedFrame,
}

impl HorizontalLift<'_> {
    pub fn frame(&self) -> &AdaptedFrame {
        &self.frame
    }

    /// `N^β_α` on `TM`.
    pub fn fiber_gamma(&self) -> &[Vec<Poly>] {
        &self.n
    }

    pub fn vector(&self, z: &VectorField) -> Result<VectorField> {
        self.chart.check_base(z.chart())?;
        let mut acc = VectorField::zero(self.chart.total());
        for (a, c) in z.comp().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.frame.d[a].scale(&self.chart.vlift_scalar(c)?)?)?;
            }
        }
        Ok(acc)
    }

    pub fn oneform(&self, w: &OneForm) -> Result<OneForm> {
        self.chart.check_base(w.chart())?;
        let mut acc = OneForm::zero(self.chart.total());
        for (a, c) in w.comp().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.frame.eta[a].scale(&self.chart.vlift_scalar(c)?)?)?;
            }
        }
        Ok(acc)
    }

    /// `F^h = F^β_α D_β⊗θ^α + F^β_α V_β⊗η^α`, expanded in induced coordinates.
    pub fn tensor(&self, f: &Tensor11) -> Result<Tensor11> {
        self.chart.check_base(f.chart())?;
        let total = self.chart.total();
        let mut out = Tensor11::zero(total);
        let pairs = [(&self.frame.d, &self.frame.theta), (&self.frame.v, &self.frame.eta)];
        for (b, a, c) in f.nonzero_entries() {
            let coeff = self.chart.vlift_scalar(c)?;
            for (vectors, covectors) in pairs {
                let (e, w) = (&vectors[b], &covectors[a]);
                for (i, ei) in e.comp().iter().enumerate() {
                    if ei.is_zero() {
                        continue;
                    }
                    let ce = &coeff * ei;
                    for (k, wk) in w.comp().iter().enumerate() {
                        if !wk.is_zero() {
                            let v = out.get(i, k) + &(&ce * wk);
                            out.set(i, k, v)?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expr, Chart};
    use crate::lift::tangent_chart;

    fn setup() -> (Chart, LiftedChart, Connection) {
        let c = Chart::new(&["x", "y"]).unwrap();
        let l = tangent_chart(&c).unwrap();
        let mut conn = Connection::flat(&c);
        conn.set_expr("y", "x", "x", "1").unwrap();
        (c, l, conn)
    }

    #[test]
    fn fiber_contraction() {
        let (c, l, conn) = setup();
        let n = l.fiber_gamma(&conn).unwrap();
        assert_eq!(n[1][0], parse_expr("x'", l.total()).unwrap());
        assert!(n[0][0].is_zero() && n[0][1].is_zero() && n[1][1].is_zero());
        assert!(l.fiber_gamma(&Connection::flat(&c)).unwrap().iter().flatten().all(Poly::is_zero));
    }

    #[test]
    fn frame_for_single_symbol() {
        let (c, l, conn) = setup();
        let t = l.total();
        let frame = l.adapted_frame(&conn).unwrap();
        assert_eq!(frame.d[0], VectorField::parse(t, &["1", "0", "0", "-1*x'"]).unwrap());
        assert_eq!(frame.eta[1], OneForm::parse(t, &["x'", "0", "0", "1"]).unwrap());
        let dx = VectorField::coordinate(&c, 0);
        assert_eq!(l.hlift_vector(&dx, &conn).unwrap(), frame.d[0]);
    }

    #[test]
    fn flat_frame_is_coordinate_frame() {
        let (c, l, _) = setup();
        let t = l.total();
        let flat = Connection::flat(&c);
        let frame = l.adapted_frame(&flat).unwrap();
        for a in 0..2 {
            assert_eq!(frame.d[a], VectorField::coordinate(t, a));
            assert_eq!(frame.eta[a], OneForm::differential(t, 2 + a));
        }
        assert_eq!(l.hlift_oneform(&OneForm::differential(&c, 0), &flat).unwrap(), OneForm::differential(t, 2));
        assert_eq!(l.hlift_vector(&VectorField::coordinate(&c, 0), &flat).unwrap(), VectorField::coordinate(t, 0));
    }

    #[test]
    fn duality_holds_for_symbolic_connection() {
        let (c, l, mut conn) = setup();
        conn.set_expr("x", "y", "x", "x*y - 2").unwrap();
        conn.set_expr("y", "y", "y", "j*x^2").unwrap();
        let frame = l.adapted_frame(&conn).unwrap();
        let dual = frame.duality_matrix().unwrap();
        for (i, row) in dual.iter().enumerate() {
            for (k, p) in row.iter().enumerate() {
                assert_eq!(p, &Poly::int(l.total(), (i == k) as i64));
            }
        }
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn base_to_fiber_block_regression() {
        // F^h base→fiber block is Σ_γ (F^β_γ N^γ_α − N^β_γ F^γ_α).
        let (c, l, mut conn) = setup();
        conn.set_expr("x", "x", "y", "y").unwrap();
        let f = Tensor11::parse(&c, &[&["x", "1"], &["y^2", "0"]]).unwrap();
        let h = l.horizontal(&conn).unwrap();
        let fh = h.tensor(&f).unwrap();
        let n = h.fiber_gamma();
        let fv = |b: usize, a: usize| l.vlift_scalar(f.get(b, a)).unwrap();
        for b in 0..2 {
            for a in 0..2 {
                let mut expect = Poly::zero(l.total());
                for g in 0..2 {
                    expect = &expect + &(&(&fv(b, g) * &n[g][a]) - &(&n[b][g] * &fv(g, a)));
                }
                assert_eq!(fh.get(2 + b, a), &expect);
                assert_eq!(fh.get(b, a), &fv(b, a));
                assert_eq!(fh.get(2 + b, 2 + a), &fv(b, a));
                assert!(fh.get(b, 2 + a).is_zero());
            }
        }
    }
}
