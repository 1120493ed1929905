use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{Chart, SplitComplex};

/// A full assignment of values to the coordinates of a chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    chart: Chart,
    values: Vec<SplitComplex>,
}

impl SamplePoint {
    pub fn new(chart: &Chart, values: Vec<SplitComplex>) -> crate::Result<Self> {
        if values.len() != chart.dim() {
            return Err(crate::Error::DimensionMismatch { expected: chart.dim(), found: values.len() });
        }
        Ok(Self { chart: chart.clone(), values })
    }

    pub fn from_ints(chart: &Chart, values: &[i64]) -> crate::Result<Self> {
        Self::new(chart, values.iter().map(|&v| SplitComplex::from_int(v)).collect())
    }

    /// The `index`-th point of the stream for `seed`. Entries are rationals in
    /// `[-5, 5]` with denominator at most 4; `avoid_zero` keeps them off the
    /// coordinate hyperplanes.
    pub fn random(chart: &Chart, seed: u64, index: u64, avoid_zero: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let values = (0..chart.dim()).map(|_| SplitComplex::real(random_entry(&mut rng, avoid_zero))).collect();
        Self { chart: chart.clone(), values }
    }

    /// `count` consecutive points of the stream for `seed`.
    pub fn batch(chart: &Chart, seed: u64, count: usize, avoid_zero: bool) -> Vec<Self> {
        (0..count as u64).map(|i| Self::random(chart, seed, i, avoid_zero)).collect()
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn values(&self) -> &[SplitComplex] {
        &self.values
    }
}

pub(crate) fn random_entry(rng: &mut impl Rng, avoid_zero: bool) -> BigRational {
    loop {
        let den: i64 = rng.gen_range(1..=4);
        let num: i64 = rng.gen_range(-5 * den..=5 * den);
        if avoid_zero && num == 0 {
            continue;
        }
        return BigRational::new(BigInt::from(num), BigInt::from(den));
    }
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}={}", self.chart.name(i), v)?;
        }
        f.write_str(")")
    }
}
