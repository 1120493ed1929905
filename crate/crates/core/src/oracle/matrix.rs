use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::point::SamplePoint;
use crate::error::Result;
use crate::expr::SplitComplex;
use crate::tensor::Tensor11;

pub type RationalMatrix = Vec<Vec<BigRational>>;

/// A split-complex matrix stored as its `e+` and `e−` components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullSplitMatrix {
    pub plus: RationalMatrix,
    pub minus: RationalMatrix,
}

impl NullSplitMatrix {
    pub fn from_entries(entries: &[Vec<SplitComplex>]) -> Self {
        let split = |pick: fn((BigRational, BigRational)) -> BigRational| {
            entries.iter().map(|row| row.iter().map(|v| pick(v.null_components())).collect()).collect()
        };
        Self { plus: split(|(p, _)| p), minus: split(|(_, m)| m) }
    }

    /// `plus·e+ + minus·e−`.
    pub fn reconstruct(&self) -> Vec<Vec<SplitComplex>> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| p.iter().zip(m).map(|(a, b)| SplitComplex::from_null_components(a, b)).collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.plus.len()
    }

    pub fn is_zero(&self) -> bool {
        self.plus.iter().chain(&self.minus).flatten().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &NullSplitMatrix) -> NullSplitMatrix {
        NullSplitMatrix { plus: mat_mul(&self.plus, &other.plus), minus: mat_mul(&self.minus, &other.minus) }
    }

    pub fn ranks(&self) -> (usize, usize) {
        (rank(&self.plus), rank(&self.minus))
    }
}

impl fmt::Display for NullSplitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.reconstruct();
        f.write_str("[")?;
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|k| {
                    row.iter().zip(b).fold(BigRational::zero(), |acc, (x, brow)| {
                        if x.is_zero() {
                            acc
                        } else {
                            acc + x * &brow[k]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Exact entrywise evaluation of `t` at `p`, split into null components.
pub fn matrix_at(t: &Tensor11, p: &SamplePoint) -> Result<NullSplitMatrix> {
    t.chart().ensure_same(p.chart())?;
    let entries = t
        .rows()
        .iter()
        .map(|row| row.iter().map(|e| e.eval(p.values())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(NullSplitMatrix::from_entries(&entries))
}

/// `(rank of the e+ component, rank of the e− component)` of `t` at `p`.
pub fn rank_at(t: &Tensor11, p: &SamplePoint) -> Result<(usize, usize)> {
    Ok(matrix_at(t, p)?.ranks())
}

/// Rank by fraction-free (Bareiss) elimination after clearing denominators
/// row by row.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..rows {
            for k in c + 1..cols {
                let v = &a[r][c] * &a[i][k] - &a[i][c] * &a[r][k];
                a[i][k] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{rational, Chart};

    fn q(rows: &[&[i64]]) -> RationalMatrix {
        rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&q(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]])), 2);
        assert_eq!(rank(&q(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]])), 3);
        let half = vec![vec![rational(1, 2), rational(1, 3)], vec![rational(3, 2), BigRational::one()]];
        assert_eq!(rank(&half), 1);
    }

    #[test]
    fn split_components() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let p = SamplePoint::from_ints(&c, &[2, -1]).unwrap();
        let id = matrix_at(&Tensor11::identity(&c), &p).unwrap();
        assert_eq!(id.plus, q(&[&[1, 0], &[0, 1]]));
        assert_eq!(id.plus, id.minus);
        let j = Tensor11::parse(&c, &[&["j", "0"], &["0", "x*y"]]).unwrap();
        let m = matrix_at(&j, &p).unwrap();
        assert_eq!(m.plus, q(&[&[1, 0], &[0, -2]]));
        assert_eq!(m.minus, q(&[&[-1, 0], &[0, -2]]));
        assert_eq!(m.reconstruct()[0][0], SplitComplex::j());
        assert_eq!(m.ranks(), (2, 2));
        let e = Tensor11::parse(&c, &[&["1/2 + 1/2*j", "0"], &["0", "0"]]).unwrap();
        assert_eq!(rank_at(&e, &p).unwrap(), (1, 0));
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let s = Tensor11::parse(&c, &[&["x", "j*y"], &["1", "x^2"]]).unwrap();
        let t = Tensor11::parse(&c, &[&["y - 1", "0"], &["j", "x*y"]]).unwrap();
        let p = SamplePoint::from_ints(&c, &[3, -2]).unwrap();
        let lhs = matrix_at(&s.compose(&t).unwrap(), &p).unwrap();
        assert_eq!(lhs, matrix_at(&s, &p).unwrap().mul(&matrix_at(&t, &p).unwrap()));
    }

    #[test]
    fn chart_mismatch() {
        let c = Chart::new(&["x", "y"]).unwrap();
        let d = Chart::new(&["u", "v"]).unwrap();
        assert!(matrix_at(&Tensor11::identity(&c), &SamplePoint::from_ints(&d, &[0, 0]).unwrap()).is_err());
    }
}
