use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::{Chart, SplitComplex};
use crate::tensor::{OneForm, Tensor11, VectorField};

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn scalar(self) -> SplitComplex {
        SplitComplex::from_int(self.value())
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Sign, String> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Sign::Plus),
            "-1" | "-" => Ok(Sign::Minus),
            other => Err(format!("expected +1 or -1, found `{other}`")),
        }
    }
}

/// `(F, ξ_α, η^α)` together with the signs in
/// `F² = I + eps1 Σ ξ_α⊗η^α` and `η^α(ξ_β) = eps2 δ^α_β`.
///
/// Nothing here is assumed to hold; see the checkers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RParacontactModel {
    pub f: Tensor11,
    pub xi: Vec<VectorField>,
    pub eta: Vec<OneForm>,
    pub eps1: Sign,
    pub eps2: Sign,
}

impl RParacontactModel {
    pub fn new(f: Tensor11, xi: Vec<VectorField>, eta: Vec<OneForm>, eps1: Sign, eps2: Sign) -> Result<Self> {
        if xi.is_empty() {
            return Err(Error::Precondition("at least one structure vector field is required".into()));
        }
        if xi.len() != eta.len() {
            return Err(Error::DimensionMismatch { expected: xi.len(), found: eta.len() });
        }
        for x in &xi {
            f.chart().ensure_same(x.chart())?;
        }
        for e in &eta {
            f.chart().ensure_same(e.chart())?;
        }
        Ok(Self { f, xi, eta, eps1, eps2 })
    }

    pub fn chart(&self) -> &Chart {
        self.f.chart()
    }

    pub fn r(&self) -> usize {
        self.xi.len()
    }

    pub fn n(&self) -> usize {
        self.chart().dim()
    }
}

/// Coordinate names of the block model: `x, y, t` when `k = r = 1`,
/// otherwise indexed `x1.. y1.. t1..`.
pub fn block_chart(k: usize, r: usize) -> Result<Chart> {
    let tag = |p: &str, n: usize, i: usize| if n == 1 { p.to_string() } else { format!("{p}{}", i + 1) };
    let mut names = Vec::with_capacity(2 * k + r);
    names.extend((0..k).map(|i| tag("x", k, i)));
    names.extend((0..k).map(|i| tag("y", k, i)));
    names.extend((0..r).map(|i| tag("t", r, i)));
    Chart::new(&names)
}

/// The block model `B(k, r)`: `F` swaps `x^i` and `y^i` and kills `t^α`,
/// `ξ_α = ∂/∂t^α`, `η^α = eps2 dt^α`, `eps1 = −eps2`.
pub fn block_model(k: usize, r: usize, eps2: Sign) -> Result<RParacontactModel> {
    if k == 0 || r == 0 {
        return Err(Error::Precondition("block model needs k >= 1 and r >= 1".into()));
    }
    let chart = block_chart(k, r)?;
    let n = 2 * k + r;
    let mut rows = vec![vec![0; n]; n];
    for i in 0..k {
        rows[i][k + i] = 1;
        rows[k + i][i] = 1;
    }
    let f = Tensor11::from_ints(&chart, &rows)?;
    let xi = (0..r).map(|a| VectorField::coordinate(&chart, 2 * k + a)).collect();
    let eta = (0..r).map(|a| OneForm::differential(&chart, 2 * k + a).scale_by(&eps2.scalar())).collect();
    RParacontactModel::new(f, xi, eta, -eps2, eps2)
}

/// `(x, y, t)` with `φ` swapping `∂x, ∂y`, `ξ = ∂t`, `η = dt`, `φ² = I − ξ⊗η`.
pub fn standard_model() -> RParacontactModel {
    block_model(1, 1, Sign::Plus).expect("fixed model")
}

/// The Lorentzian variant: `η = −dt`, `φ² = I + ξ⊗η`.
pub fn lorentzian_model() -> RParacontactModel {
    block_model(1, 1, Sign::Minus).expect("fixed model")
}
