use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::point::random_entry;
use crate::error::Result;
use crate::expr::{Chart, Monomial, Poly, SplitComplex};
use crate::lift::Connection;
use crate::structure::{block_model, RParacontactModel, Sign};
use crate::tensor::{OneForm, Tensor11, VectorField};

/// Shape limits for random polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyShape {
    pub max_degree: u32,
    pub max_terms: usize,
    /// Allow coefficients with a nonzero `j` part.
    pub split: bool,
}

impl Default for PolyShape {
    fn default() -> Self {
        Self { max_degree: 2, max_terms: 3, split: true }
    }
}

/// Seeded generator of test data.
#[derive(Clone, Debug)]
pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A generator for the `stream`-th independent sub-sequence of `seed`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn sign(&mut self) -> Sign {
        if self.rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn rational(&mut self) -> BigRational {
        random_entry(&mut self.rng, true)
    }

    pub fn scalar(&mut self, split: bool) -> SplitComplex {
        let re = self.rational();
        if split && self.rng.gen_bool(0.3) {
            let im = BigRational::from_integer(BigInt::from(self.int(-2, 2)));
            SplitComplex::new(re, im)
        } else {
            SplitComplex::real(re)
        }
    }

    pub fn monomial(&mut self, dim: usize, max_degree: u32) -> Monomial {
        let degree = self.rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; dim];
        for _ in 0..degree {
            exps[self.below(dim)] += 1;
        }
        Monomial::from_exponents(exps)
    }

    pub fn poly(&mut self, chart: &Chart, shape: PolyShape) -> Poly {
        let terms = self.rng.gen_range(1..=shape.max_terms.max(1));
        let pairs: Vec<_> = (0..terms).map(|_| (self.monomial(chart.dim(), shape.max_degree), self.scalar(shape.split))).collect();
        Poly::from_terms(chart, pairs).expect("monomials sized to chart")
    }

    /// Like [`Generator::poly`] but zero with probability `zero_rate`.
    pub fn sparse_poly(&mut self, chart: &Chart, shape: PolyShape, zero_rate: f64) -> Poly {
        if self.rng.gen_bool(zero_rate) {
            Poly::zero(chart)
        } else {
            self.poly(chart, shape)
        }
    }

    pub fn vector(&mut self, chart: &Chart, shape: PolyShape) -> VectorField {
        let comp = (0..chart.dim()).map(|_| self.sparse_poly(chart, shape, 0.25)).collect();
        VectorField::new(chart, comp).expect("sized to chart")
    }

    pub fn oneform(&mut self, chart: &Chart, shape: PolyShape) -> OneForm {
        let comp = (0..chart.dim()).map(|_| self.sparse_poly(chart, shape, 0.25)).collect();
        OneForm::new(chart, comp).expect("sized to chart")
    }

    pub fn tensor(&mut self, chart: &Chart, shape: PolyShape) -> Tensor11 {
        let n = chart.dim();
        let rows = (0..n).map(|_| (0..n).map(|_| self.sparse_poly(chart, shape, 0.4)).collect()).collect();
        Tensor11::new(chart, rows).expect("sized to chart")
    }

    /// A connection with `nonzero` randomly placed polynomial symbols.
    pub fn connection(&mut self, chart: &Chart, nonzero: usize, shape: PolyShape) -> Connection {
        let n = chart.dim();
        let mut conn = Connection::flat(chart);
        for _ in 0..nonzero {
            let (b, g, a) = (self.below(n), self.below(n), self.below(n));
            conn.set(b, g, a, self.poly(chart, shape)).expect("same chart");
        }
        conn
    }

    /// A unimodular integer matrix and its inverse, as a product of
    /// elementary row operations and a permutation.
    pub fn unimodular(&mut self, n: usize, steps: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| (perm[i] == k) as i64).collect()).collect();
        let mut inv: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| (perm[k] == i) as i64).collect()).collect();
        if n < 2 {
            return (p, inv);
        }
        for _ in 0..steps {
            let i = self.below(n);
            let j = (i + 1 + self.below(n - 1)) % n;
            let c = if self.rng.gen_bool(0.5) { 1 } else { -1 } * self.int(1, 2);
            // P ← E P with E = I + c e_i e_jᵀ; P⁻¹ ← P⁻¹ E⁻¹.
            for k in 0..n {
                p[i][k] += c * p[j][k];
            }
            for row in inv.iter_mut() {
                row[j] -= c * row[i];
            }
        }
        (p, inv)
    }

    /// The block model `B(k, r)` transported by a seeded unimodular change
    /// of frame.
    pub fn conjugated_block_model(&mut self, k: usize, r: usize, eps2: Sign) -> Result<RParacontactModel> {
        let model = block_model(k, r, eps2)?;
        self.conjugate(&model)
    }

    /// `F ↦ P F P⁻¹`, `ξ ↦ P ξ`, `η ↦ η P⁻¹` for a seeded unimodular `P`.
    pub fn conjugate(&mut self, model: &RParacontactModel) -> Result<RParacontactModel> {
        let n = model.n();
        let (p, inv) = self.unimodular(n, 2 * n);
        conjugate_by(model, &p, &inv)
    }
}

/// Transports `model` by the constant frame change `p` with inverse `inv`.
pub fn conjugate_by(model: &RParacontactModel, p: &[Vec<i64>], inv: &[Vec<i64>]) -> Result<RParacontactModel> {
    let chart = model.chart();
    let p = Tensor11::from_ints(chart, p)?;
    let inv = Tensor11::from_ints(chart, inv)?;
    let f = p.compose(&model.f)?.compose(&inv)?;
    let xi = model.xi.iter().map(|x| p.apply(x)).collect::<Result<Vec<_>>>()?;
    let eta = model.eta.iter().map(|e| e.compose(&inv)).collect::<Result<Vec<_>>>()?;
    RParacontactModel::new(f, xi, eta, model.eps1, model.eps2)
}

/// `random_model(k, r, eps2, seed)`: the block model, conjugated unless
/// `seed` is `None`.
pub fn random_model(k: usize, r: usize, eps2: Sign, seed: Option<u64>) -> Result<RParacontactModel> {
    match seed {
        None => block_model(k, r, eps2),
        Some(s) => Generator::new(s).conjugated_block_model(k, r, eps2),
    }
}

/// `random_conjugate(model, seed)`.
pub fn random_conjugate(model: &RParacontactModel, seed: u64) -> Result<RParacontactModel> {
    Generator::new(seed).conjugate(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::standard_model;

    #[test]
    fn unimodular_inverse() {
        let mut g = Generator::new(3);
        for n in 1..6 {
            let (p, inv) = g.unimodular(n, 12);
            for i in 0..n {
                for k in 0..n {
                    let v: i64 = (0..n).map(|l| p[i][l] * inv[l][k]).sum();
                    assert_eq!(v, (i == k) as i64);
                }
            }
        }
    }

    #[test]
    fn base_case_and_identity_conjugation() {
        assert_eq!(random_model(1, 1, Sign::Plus, None).unwrap(), standard_model());
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(conjugate_by(&standard_model(), &id, &id).unwrap(), standard_model());
    }

    #[test]
    fn deterministic() {
        let a = random_model(2, 1, Sign::Minus, Some(11)).unwrap();
        assert_eq!(a, random_model(2, 1, Sign::Minus, Some(11)).unwrap());
        let c = Chart::new(&["x", "y"]).unwrap();
        let shape = PolyShape::default();
        assert_eq!(Generator::new(5).poly(&c, shape), Generator::new(5).poly(&c, shape));
        let conn = Generator::new(5).connection(&c, 3, shape);
        assert_eq!(conn, Generator::new(5).connection(&c, 3, shape));
    }
}
