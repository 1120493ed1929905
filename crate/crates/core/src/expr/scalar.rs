//! Exact split-complex scalars `re + im·j` with `j² = 1`.
//!
//! The ring has the idempotents `e± = (1 ± j)/2` and is isomorphic to
//! `Q × Q` through `a + bj ↦ (a + b, a − b)`. Every value with `re = ±im`
//! is a zero divisor, so no division is offered.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A split-complex number with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SplitComplex {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl SplitComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(rational(num, den))
    }

    /// The unit `j`.
    pub fn j() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    /// `e+ = (1 + j)/2`.
    pub fn e_plus() -> Self {
        Self { re: rational(1, 2), im: rational(1, 2) }
    }

    /// `e− = (1 − j)/2`.
    pub fn e_minus() -> Self {
        Self { re: rational(1, 2), im: rational(-1, 2) }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero_divisor(&self) -> bool {
        self.re == self.im || self.re == -self.im.clone()
    }

    /// Coordinates in the idempotent basis: `self = plus·e+ + minus·e−`.
    pub fn null_components(&self) -> (BigRational, BigRational) {
        (&self.re + &self.im, &self.re - &self.im)
    }

    pub fn from_null_components(plus: &BigRational, minus: &BigRational) -> Self {
        let half = rational(1, 2);
        Self {
            re: (plus + minus) * &half,
            im: (plus - minus) * half,
        }
    }

    /// The conjugate `re − im·j`.
    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Zero for SplitComplex {
    fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for SplitComplex {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<'a> Add<&'a SplitComplex> for &'a SplitComplex {
    type Output = SplitComplex;
    fn add(self, rhs: &SplitComplex) -> SplitComplex {
        SplitComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for SplitComplex {
    type Output = SplitComplex;
    fn add(self, rhs: SplitComplex) -> SplitComplex {
        SplitComplex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl AddAssign<&SplitComplex> for SplitComplex {
    fn add_assign(&mut self, rhs: &SplitComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a SplitComplex> for &'a SplitComplex {
    type Output = SplitComplex;
    fn sub(self, rhs: &SplitComplex) -> SplitComplex {
        SplitComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for SplitComplex {
    type Output = SplitComplex;
    fn sub(self, rhs: SplitComplex) -> SplitComplex {
        SplitComplex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl SubAssign<&SplitComplex> for SplitComplex {
    fn sub_assign(&mut self, rhs: &SplitComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a SplitComplex> for &'a SplitComplex {
    type Output = SplitComplex;
    fn mul(self, rhs: &SplitComplex) -> SplitComplex {
        // (a + bj)(c + dj) = (ac + bd) + (ad + bc)j
        if self.im.is_zero() && rhs.im.is_zero() {
            return SplitComplex::real(&self.re * &rhs.re);
        }
        SplitComplex {
            re: &self.re * &rhs.re + &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for SplitComplex {
    type Output = SplitComplex;
    fn mul(self, rhs: SplitComplex) -> SplitComplex {
        &self * &rhs
    }
}

impl Neg for SplitComplex {
    type Output = SplitComplex;
    fn neg(self) -> SplitComplex {
        SplitComplex { re: -self.re, im: -self.im }
    }
}

impl Neg for &SplitComplex {
    type Output = SplitComplex;
    fn neg(self) -> SplitComplex {
        SplitComplex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl From<i64> for SplitComplex {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for SplitComplex {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

pub(crate) fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Writes `|r|` without its sign.
pub(crate) fn fmt_abs_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    fmt_rational(&r.abs(), f)
}

impl fmt::Display for SplitComplex {
    /// Emits `re`, `j*im` or `(re+im*j)`, all re-parseable by the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => {
                if self.im.is_negative() {
                    f.write_str("-")?;
                }
                f.write_str("j")?;
                if !self.im.abs().is_one() {
                    f.write_str("*")?;
                    fmt_abs_rational(&self.im, f)?;
                }
                Ok(())
            }
            (false, false) => {
                f.write_str("(")?;
                fmt_rational(&self.re, f)?;
                f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
                if !self.im.abs().is_one() {
                    fmt_abs_rational(&self.im, f)?;
                    f.write_str("*")?;
                }
                f.write_str("j)")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(re: i64, im: i64) -> SplitComplex {
        SplitComplex::new(rational(re, 1), rational(im, 1))
    }

    #[test]
    fn j_squares_to_one() {
        assert_eq!(&SplitComplex::j() * &SplitComplex::j(), SplitComplex::one());
    }

    #[test]
    fn multiplication_rule() {
        // (1+2j)(3+4j) = (3+8) + (4+6)j
        assert_eq!(&sc(1, 2) * &sc(3, 4), sc(11, 10));
    }

    #[test]
    fn idempotents() {
        let p = SplitComplex::e_plus();
        let m = SplitComplex::e_minus();
        assert_eq!(&p * &p, p);
        assert_eq!(&m * &m, m);
        assert!((&p * &m).is_zero());
        assert_eq!(&p + &m, SplitComplex::one());
    }

    #[test]
    fn zero_divisors() {
        assert!(sc(2, 2).is_zero_divisor());
        assert!(sc(3, -3).is_zero_divisor());
        assert!(!sc(1, 2).is_zero_divisor());
        assert!((&sc(1, 1) * &sc(1, -1)).is_zero());
    }

    #[test]
    fn null_components_round_trip() {
        let z = SplitComplex::new(rational(3, 2), rational(-5, 7));
        let (p, m) = z.null_components();
        assert_eq!(SplitComplex::from_null_components(&p, &m), z);
    }

    #[test]
    fn display_forms() {
        assert_eq!(sc(3, 0).to_string(), "3");
        assert_eq!(SplitComplex::from_ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(sc(0, 1).to_string(), "j");
        assert_eq!(sc(0, -2).to_string(), "-j*2");
        assert_eq!(sc(1, -1).to_string(), "(1-j)");
        assert_eq!(SplitComplex::e_plus().to_string(), "(1/2+1/2*j)");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let z = sc(2, 1);
        assert_eq!(z.pow(3), &(&z * &z) * &z);
        assert_eq!(z.pow(0), SplitComplex::one());
    }
}
