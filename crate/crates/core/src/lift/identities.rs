//! The tabulated lift identities as randomized symbolic checks.
//!
//! Each [`Identity`] draws one random instance (chart of dimension 1–3,
//! polynomials of degree at most 2, and for horizontal lifts a random
//! polynomial connection) and returns the names of the claims that failed.

use std::fmt;

use super::{tangent_chart, Connection, LiftedChart};
use crate::error::Result;
use crate::expr::{Chart, Poly};
use crate::oracle::{directional_check, Generator, PolyShape, SamplePoint};
use crate::tensor::{OneForm, Tensor11, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Vertical,
    Complete,
    Horizontal,
    Auxiliary,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Vertical => "vertical",
            Family::Complete => "complete",
            Family::Horizontal => "horizontal",
            Family::Auxiliary => "auxiliary",
        })
    }
}

pub struct Identity {
    pub family: Family,
    pub item: &'static str,
    pub statement: &'static str,
    check: fn(&mut Instance) -> Result<Vec<&'static str>>,
}

impl Identity {
    pub fn label(&self) -> String {
        format!("{} {}", self.family, self.item)
    }

    /// Runs the `index`-th random instance for `seed`; returns the failed
    /// claims.
    pub fn run(&self, seed: u64, index: u64) -> Result<Vec<&'static str>> {
        let mut inst = Instance::new(Generator::stream(seed, index));
        (self.check)(&mut inst)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({})", self.label())
    }
}

/// One random chart with its tangent bundle and a generator.
pub struct Instance {
    pub base: Chart,
    pub lc: LiftedChart,
    pub gen: Generator,
    pub shape: PolyShape,
}

impl Instance {
    fn new(mut gen: Generator) -> Self {
        let dim = gen.int(1, 3) as usize;
        let base = Chart::new(&["x", "y", "z"][..dim]).expect("fixed names");
        let lc = tangent_chart(&base).expect("unprimed names");
        Self { base, lc, gen, shape: PolyShape { max_degree: 2, max_terms: 3, split: true } }
    }

    fn poly(&mut self) -> Poly {
        self.gen.poly(&self.base, self.shape)
    }

    fn vector(&mut self) -> VectorField {
        self.gen.vector(&self.base, self.shape)
    }

    fn oneform(&mut self) -> OneForm {
        self.gen.oneform(&self.base, self.shape)
    }

    fn tensor(&mut self) -> Tensor11 {
        self.gen.tensor(&self.base, self.shape)
    }

    fn connection(&mut self) -> Connection {
        let n = self.base.dim();
        let count = self.gen.int(1, (n * n) as i64) as usize;
        self.gen.connection(&self.base, count, self.shape)
    }
}

struct Claims(Vec<&'static str>);

impl Claims {
    fn new() -> Self {
        Claims(Vec::new())
    }

    fn check(&mut self, name: &'static str, ok: bool) {
        if !ok {
            self.0.push(name);
        }
    }

    fn done(self) -> Result<Vec<&'static str>> {
        Ok(self.0)
    }
}

fn vertical_scalars(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (f, g) = (i.poly(), i.poly());
    let lc = &i.lc;
    let mut c = Claims::new();
    c.check("(fg)^v = f^v g^v", lc.vlift_scalar(&(&f * &g))? == &lc.vlift_scalar(&f)? * &lc.vlift_scalar(&g)?);
    c.check("(f+g)^v = f^v + g^v", lc.vlift_scalar(&(&f + &g))? == &lc.vlift_scalar(&f)? + &lc.vlift_scalar(&g)?);
    c.done()
}

fn vertical_vectors(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (x, y, f) = (i.vector(), i.vector(), i.poly());
    let lc = &i.lc;
    let (xv, yv, fv) = (lc.vlift_vector(&x)?, lc.vlift_vector(&y)?, lc.vlift_scalar(&f)?);
    let mut c = Claims::new();
    c.check("(X+Y)^v = X^v + Y^v", lc.vlift_vector(&x.add(&y)?)? == xv.add(&yv)?);
    c.check("(fX)^v = f^v X^v", lc.vlift_vector(&x.scale(&f)?)? == xv.scale(&fv)?);
    c.check("X^v(f^v) = 0", xv.act(&fv)?.is_zero());
    c.check("[X^v,Y^v] = 0", xv.lie_bracket(&yv)?.is_zero());
    c.done()
}

fn vertical_coordinate_fields(i: &mut Instance) -> Result<Vec<&'static str>> {
    let lc = &i.lc;
    let mut c = Claims::new();
    for a in 0..lc.m() {
        c.check("(d/dx^a)^v = d/dx'^a", lc.vlift_vector(&VectorField::coordinate(&i.base, a))? == VectorField::coordinate(lc.total(), lc.fiber(a)));
    }
    c.done()
}

fn vertical_oneforms(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (w, t, f, z) = (i.oneform(), i.oneform(), i.poly(), i.vector());
    let lc = &i.lc;
    let wv = lc.vlift_oneform(&w)?;
    let mut c = Claims::new();
    c.check("(w+t)^v = w^v + t^v", lc.vlift_oneform(&w.add(&t)?)? == wv.add(&lc.vlift_oneform(&t)?)?);
    c.check("(fw)^v = f^v w^v", lc.vlift_oneform(&w.scale(&f)?)? == wv.scale(&lc.vlift_scalar(&f)?)?);
    c.check("w^v(Z^v) = 0", wv.pair(&lc.vlift_vector(&z)?)?.is_zero());
    c.done()
}

fn vertical_differentials(i: &mut Instance) -> Result<Vec<&'static str>> {
    let lc = &i.lc;
    let mut c = Claims::new();
    for a in 0..lc.m() {
        c.check("(dx^a)^v = dx^a", lc.vlift_oneform(&OneForm::differential(&i.base, a))? == OneForm::differential(lc.total(), a));
    }
    c.done()
}

fn vertical_tensors(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (f, z) = (i.tensor(), i.vector());
    let lc = &i.lc;
    let mut c = Claims::new();
    c.check("F^v(Z^v) = 0", lc.vlift_tensor(&f)?.apply(&lc.vlift_vector(&z)?)?.is_zero());
    c.done()
}

fn complete_scalars(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (f, g) = (i.poly(), i.poly());
    let lc = &i.lc;
    let (fc, gc, fv, gv) = (lc.clift_scalar(&f)?, lc.clift_scalar(&g)?, lc.vlift_scalar(&f)?, lc.vlift_scalar(&g)?);
    let mut c = Claims::new();
    c.check("(fg)^c = f^c g^v + f^v g^c", lc.clift_scalar(&(&f * &g))? == &(&fc * &gv) + &(&fv * &gc));
    c.check("(f+g)^c = f^c + g^c", lc.clift_scalar(&(&f + &g))? == &fc + &gc);
    c.done()
}

fn complete_vectors(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (x, y, f) = (i.vector(), i.vector(), i.poly());
    let lc = &i.lc;
    let (xv, xc, yv, yc) = (lc.vlift_vector(&x)?, lc.clift_vector(&x)?, lc.vlift_vector(&y)?, lc.clift_vector(&y)?);
    let (fv, fc) = (lc.vlift_scalar(&f)?, lc.clift_scalar(&f)?);
    let xf = x.act(&f)?;
    let xy = x.lie_bracket(&y)?;
    let mut c = Claims::new();
    c.check("(fX)^c = f^c X^v + f^v X^c", lc.clift_vector(&x.scale(&f)?)? == xv.scale(&fc)?.add(&xc.scale(&fv)?)?);
    c.check("X^c(f^v) = (Xf)^v", xc.act(&fv)? == lc.vlift_scalar(&xf)?);
    c.check("X^v(f^c) = (Xf)^v", xv.act(&fc)? == lc.vlift_scalar(&xf)?);
    c.check("X^c(f^c) = (Xf)^c", xc.act(&fc)? == lc.clift_scalar(&xf)?);
    c.check("[X^v,Y^c] = [X,Y]^v", xv.lie_bracket(&yc)? == lc.vlift_vector(&xy)?);
    c.check("[X^c,Y^v] = [X,Y]^v", xc.lie_bracket(&yv)? == lc.vlift_vector(&xy)?);
    c.check("[X^c,Y^c] = [X,Y]^c", xc.lie_bracket(&yc)? == lc.clift_vector(&xy)?);
    c.done()
}

fn complete_coordinate_fields(i: &mut Instance) -> Result<Vec<&'static str>> {
    let lc = &i.lc;
    let mut c = Claims::new();
    for a in 0..lc.m() {
        c.check("(d/dx^a)^c = d/dx^a", lc.clift_vector(&VectorField::coordinate(&i.base, a))? == VectorField::coordinate(lc.total(), a));
    }
    c.done()
}

fn complete_oneforms(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (w, z) = (i.oneform(), i.vector());
    let lc = &i.lc;
    let wz = w.pair(&z)?;
    let (wv, wc, zv, zc) = (lc.vlift_oneform(&w)?, lc.clift_oneform(&w)?, lc.vlift_vector(&z)?, lc.clift_vector(&z)?);
    let mut c = Claims::new();
    c.check("w^c(Z^c) = (wZ)^c", wc.pair(&zc)? == lc.clift_scalar(&wz)?);
    c.check("w^c(Z^v) = (wZ)^v", wc.pair(&zv)? == lc.vlift_scalar(&wz)?);
    c.check("w^v(Z^c) = (wZ)^v", wv.pair(&zc)? == lc.vlift_scalar(&wz)?);
    c.done()
}

fn complete_differentials(i: &mut Instance) -> Result<Vec<&'static str>> {
    let lc = &i.lc;
    let mut c = Claims::new();
    for a in 0..lc.m() {
        c.check(
            "(dx^a)^c = dx'^a",
            lc.clift_oneform(&OneForm::differential(&i.base, a))? == OneForm::differential(lc.total(), lc.fiber(a)),
        );
    }
    c.done()
}

fn complete_tensors(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (f, z) = (i.tensor(), i.vector());
    let lc = &i.lc;
    let fz = f.apply(&z)?;
    let (fv, fc, zv, zc) = (lc.vlift_tensor(&f)?, lc.clift_tensor(&f)?, lc.vlift_vector(&z)?, lc.clift_vector(&z)?);
    let mut c = Claims::new();
    c.check("F^v(Z^c) = (FZ)^v", fv.apply(&zc)? == lc.vlift_vector(&fz)?);
    c.check("F^c(Z^v) = (FZ)^v", fc.apply(&zv)? == lc.vlift_vector(&fz)?);
    c.check("F^c(Z^c) = (FZ)^c", fc.apply(&zc)? == lc.clift_vector(&fz)?);
    c.done()
}

fn horizontal_scalars(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (f, g) = (i.poly(), i.poly());
    let lc = &i.lc;
    let mut c = Claims::new();
    c.check("f^h = 0", lc.hlift_scalar(&f)?.is_zero());
    c.check("(f+g)^h = 0", lc.hlift_scalar(&(&f + &g))?.is_zero());
    c.check("(fg)^h = 0", lc.hlift_scalar(&(&f * &g))?.is_zero());
    c.done()
}

fn horizontal_vectors(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (z, w, f, conn) = (i.vector(), i.vector(), i.poly(), i.connection());
    let h = i.lc.horizontal(&conn)?;
    let lc = &i.lc;
    let zh = h.vector(&z)?;
    let mut c = Claims::new();
    c.check("(Z+W)^h = Z^h + W^h", h.vector(&z.add(&w)?)? == zh.add(&h.vector(&w)?)?);
    c.check("Z^h(f^v) = (Zf)^v", zh.act(&lc.vlift_scalar(&f)?)? == lc.vlift_scalar(&z.act(&f)?)?);
    for a in 0..lc.m() {
        c.check("(d/dx^a)^h = D_a", h.vector(&VectorField::coordinate(&i.base, a))? == h.frame().d[a]);
    }
    c.done()
}

fn horizontal_oneforms(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (w, z, conn) = (i.oneform(), i.vector(), i.connection());
    let h = i.lc.horizontal(&conn)?;
    let lc = &i.lc;
    let wh = h.oneform(&w)?;
    let mut c = Claims::new();
    c.check("w^h(Z^h) = 0", wh.pair(&h.vector(&z)?)?.is_zero());
    c.check("w^h(Z^v) = (wZ)^v", wh.pair(&lc.vlift_vector(&z)?)? == lc.vlift_scalar(&w.pair(&z)?)?);
    for a in 0..lc.m() {
        c.check("(dx^a)^h = eta^a", h.oneform(&OneForm::differential(&i.base, a))? == h.frame().eta[a]);
    }
    c.done()
}

fn horizontal_tensors(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (f, z, conn) = (i.tensor(), i.vector(), i.connection());
    let h = i.lc.horizontal(&conn)?;
    let lc = &i.lc;
    let fz = f.apply(&z)?;
    let fh = h.tensor(&f)?;
    let mut c = Claims::new();
    c.check("F^h(Z^h) = (FZ)^h", fh.apply(&h.vector(&z)?)? == h.vector(&fz)?);
    c.check("F^h(Z^v) = (FZ)^v", fh.apply(&lc.vlift_vector(&z)?)? == lc.vlift_vector(&fz)?);
    c.done()
}

fn composition(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (f, g, conn) = (i.tensor(), i.tensor(), i.connection());
    let h = i.lc.horizontal(&conn)?;
    let lc = &i.lc;
    let (fc, fh) = (lc.clift_tensor(&f)?, h.tensor(&f)?);
    let fg = f.compose(&g)?;
    let mut c = Claims::new();
    c.check("(FG)^c = F^c G^c", lc.clift_tensor(&fg)? == fc.compose(&lc.clift_tensor(&g)?)?);
    c.check("(F^2)^c = (F^c)^2", lc.clift_tensor(&f.square())? == fc.square());
    c.check("(FG)^h = F^h G^h", h.tensor(&fg)? == fh.compose(&h.tensor(&g)?)?);
    c.check("(FG)^v = 0 = F^v G^v", lc.vlift_tensor(&f)?.compose(&lc.vlift_tensor(&g)?)?.is_zero());
    c.done()
}

fn product_tensors(i: &mut Instance) -> Result<Vec<&'static str>> {
    let (x, e, conn) = (i.vector(), i.oneform(), i.connection());
    let h = i.lc.horizontal(&conn)?;
    let lc = &i.lc;
    let t = Tensor11::tensor_product(&x, &e)?;
    let (xv, ev) = (lc.vlift_vector(&x)?, lc.vlift_oneform(&e)?);
    let tp = Tensor11::tensor_product;
    let mut c = Claims::new();
    c.check(
        "(X(x)w)^c = X^v(x)w^c + X^c(x)w^v",
        lc.clift_tensor(&t)? == tp(&xv, &lc.clift_oneform(&e)?)?.add(&tp(&lc.clift_vector(&x)?, &ev)?)?,
    );
    c.check("(X(x)w)^h = X^v(x)w^h + X^h(x)w^v", h.tensor(&t)? == tp(&xv, &h.oneform(&e)?)?.add(&tp(&h.vector(&x)?, &ev)?)?);
    c.check("(X(x)w)^v = X^v(x)w^v", lc.vlift_tensor(&t)? == tp(&xv, &ev)?);
    c.done()
}

fn frames(i: &mut Instance) -> Result<Vec<&'static str>> {
    let conn = i.connection();
    let h = i.lc.horizontal(&conn)?;
    let lc = &i.lc;
    let total = lc.total();
    let dual = h.frame().duality_matrix()?;
    let mut c = Claims::new();
    let identity = dual.iter().enumerate().all(|(r, row)| row.iter().enumerate().all(|(k, p)| *p == Poly::int(total, (r == k) as i64)));
    c.check("adapted coframe is dual to the adapted frame", identity);
    let k = i.gen.tensor(&i.base, PolyShape { max_degree: 0, max_terms: 1, split: true });
    let flat = lc.horizontal(&Connection::flat(&i.base))?;
    c.check("flat connection, constant F: F^h = F^c", flat.tensor(&k)? == lc.clift_tensor(&k)?);
    c.check("gamma(grad f) = f^c", {
        let f = i.gen.poly(&i.base, i.shape);
        lc.gamma_grad(&f)? == lc.clift_scalar(&f)?
    });
    c.done()
}

fn directional(i: &mut Instance) -> Result<Vec<&'static str>> {
    let f = i.poly();
    let p = SamplePoint::random(&i.base, i.gen.int(0, i64::MAX) as u64, 0, false);
    let v = SamplePoint::random(&i.base, i.gen.int(0, i64::MAX) as u64, 1, false);
    let mut c = Claims::new();
    c.check("f^c(p,v) = d/ds f(p + s v) at s = 0", directional_check(&i.lc, &f, p.values(), v.values())?.matches());
    c.done()
}

macro_rules! identity {
    ($family:ident, $item:literal, $statement:literal, $check:ident) => {
        Identity { family: Family::$family, item: $item, statement: $statement, check: $check }
    };
}

/// The sixteen tabulated identities, in table order.
pub static TABLE: [Identity; 16] = [
    identity!(Vertical, "i", "(fg)^v = f^v g^v, (f+g)^v = f^v + g^v", vertical_scalars),
    identity!(Vertical, "ii", "(X+Y)^v, (fX)^v = f^v X^v, X^v(f^v) = 0, [X^v,Y^v] = 0", vertical_vectors),
    identity!(Vertical, "iii", "(d/dx^a)^v = d/dx'^a", vertical_coordinate_fields),
    identity!(Vertical, "iv", "(w+t)^v, (fw)^v = f^v w^v, w^v(Z^v) = 0", vertical_oneforms),
    identity!(Vertical, "v", "(dx^a)^v = dx^a", vertical_differentials),
    identity!(Vertical, "vi", "F^v(Z^v) = 0", vertical_tensors),
    identity!(Complete, "i", "(fg)^c = f^c g^v + f^v g^c", complete_scalars),
    identity!(Complete, "ii", "(fX)^c, X^c f^v = X^v f^c = (Xf)^v, X^c f^c = (Xf)^c, brackets", complete_vectors),
    identity!(Complete, "iii", "(d/dx^a)^c = d/dx^a", complete_coordinate_fields),
    identity!(Complete, "iv", "w^c(Z^c) = (wZ)^c, w^c(Z^v) = w^v(Z^c) = (wZ)^v", complete_oneforms),
    identity!(Complete, "v", "(dx^a)^c = dx'^a", complete_differentials),
    identity!(Complete, "vi", "F^v(Z^c) = F^c(Z^v) = (FZ)^v, F^c(Z^c) = (FZ)^c", complete_tensors),
    identity!(Horizontal, "i", "(f+g)^h = 0, (fg)^h = 0", horizontal_scalars),
    identity!(Horizontal, "ii", "(Z+W)^h, Z^h(f^v) = (Zf)^v, (d/dx^a)^h = D_a", horizontal_vectors),
    identity!(Horizontal, "iii", "w^h(Z^h) = 0, w^h(Z^v) = (wZ)^v, (dx^a)^h = eta^a", horizontal_oneforms),
    identity!(Horizontal, "iv", "F^h(Z^h) = (FZ)^h, F^h(Z^v) = (FZ)^v", horizontal_tensors),
];

/// Further properties the structure constructions rely on.
pub static AUXILIARY: [Identity; 4] = [
    identity!(Auxiliary, "composition", "(FG)^c = F^c G^c, (FG)^h = F^h G^h", composition),
    identity!(Auxiliary, "product", "(X(x)w)^c and (X(x)w)^h split into mixed products", product_tensors),
    identity!(Auxiliary, "frames", "adapted frame duality, flat F^h = F^c, gamma operator", frames),
    identity!(Auxiliary, "directional", "f^c is the fiber-directional derivative", directional),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_holds_on_a_few_instances() {
        for id in TABLE.iter().chain(&AUXILIARY) {
            for k in 0..5 {
                assert!(id.run(17, k).unwrap().is_empty(), "{} instance {k}", id.label());
            }
        }
    }

    #[test]
    fn labels_unique() {
        let mut labels: Vec<_> = TABLE.iter().chain(&AUXILIARY).map(Identity::label).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 20);
    }
}
