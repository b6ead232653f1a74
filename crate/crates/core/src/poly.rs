//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty vector and equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

/// Integer coefficient list in ascending degree, as produced by
/// [`RationalPoly::assert_integer_coeffs`].
pub type IntPoly = Vec<u64>;

impl RationalPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^degree`.
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, degree: usize) -> BigRational {
        self.coeffs.get(degree).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `t -> c * t^k`.
    pub fn substitute_monomial(&self, c: &BigRational, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); (self.coeffs.len() - 1) * k + 1];
        let mut scale = BigRational::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * k] += a * &scale;
            scale *= c;
        }
        Self::from_coeffs(out)
    }

    /// Long division returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::InexactDivision("division by the zero polynomial".into()));
        };
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// `self / divisor`, failing with [`Error::InexactDivision`] on a nonzero remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("({self}) / ({divisor}) leaves remainder {r}")));
        }
        Ok(q)
    }

    /// Power series inverse modulo `t^(precision + 1)`. Requires a nonzero constant term.
    pub fn series_inverse(&self, precision: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::InexactDivision("series inverse of a polynomial with zero constant term".into()));
        }
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(precision + 1);
        for k in 0..=precision {
            let mut acc = if k == 0 { BigRational::one() } else { BigRational::zero() };
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc -= &self.coeffs[j] * &out[k - j];
            }
            out.push(acc * &inv0);
        }
        Ok(Self::from_coeffs(out))
    }

    /// Drop every term of degree above `precision`.
    pub fn truncate(&self, precision: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(precision + 1).cloned().collect())
    }

    /// Checks that every coefficient is a nonnegative integer and returns them.
    pub fn assert_integer_coeffs(&self) -> Result<IntPoly> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if !c.is_integer() || c.is_negative() {
                    return Err(Error::NonIntegralResult(format!("coefficient {c} of t^{i} in {self}")));
                }
                c.to_integer()
                    .to_u64()
                    .ok_or_else(|| Error::Internal(format!("coefficient of t^{i} does not fit in 64 bits")))
            })
            .collect()
    }

    pub fn from_int_poly(p: &[u64]) -> Self {
        Self::from_coeffs(p.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for RationalPoly {
    type Output = RationalPoly;

    fn add(self, rhs: RationalPoly) -> RationalPoly {
        &self + &rhs
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Sub for RationalPoly {
    type Output = RationalPoly;

    fn sub(self, rhs: RationalPoly) -> RationalPoly {
        &self - &rhs
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;

    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Mul for RationalPoly {
    type Output = RationalPoly;

    fn mul(self, rhs: RationalPoly) -> RationalPoly {
        &self * &rhs
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Renders an integer coefficient list as `a + b t + c t^2`.
pub fn format_int_poly(p: &[u64]) -> String {
    RationalPoly::from_int_poly(p).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPoly {
        RationalPoly::from_ints(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(p(&[1, 0, 3, 3, 0, 1]).evaluate(&q(1, 1)), q(8, 1));
        assert_eq!(&p(&[2, 0, 5]) + &RationalPoly::zero(), p(&[2, 0, 5]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), RationalPoly::zero());
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[1, 0, -1]).exact_div(&p(&[1, -1])).unwrap(), p(&[1, 1]));
        assert_eq!(p(&[1, 0, 0, 0, -1]).exact_div(&p(&[1, 0, 1])).unwrap(), p(&[1, 0, -1]));
        assert!(matches!(
            p(&[1, 1]).exact_div(&p(&[1, -1])),
            Err(Error::InexactDivision(_))
        ));
        assert!(p(&[1]).exact_div(&RationalPoly::zero()).is_err());
    }

    #[test]
    fn integer_coefficients() {
        assert_eq!(p(&[1, 0, 1]).assert_integer_coeffs().unwrap(), vec![1, 0, 1]);
        let half = RationalPoly::from_coeffs(vec![q(1, 2), q(1, 1)]);
        assert!(matches!(half.assert_integer_coeffs(), Err(Error::NonIntegralResult(_))));
        assert_eq!(RationalPoly::zero().assert_integer_coeffs().unwrap(), Vec::<u64>::new());
        assert!(p(&[1, -1]).assert_integer_coeffs().is_err());
    }

    #[test]
    fn trailing_zeros_are_normalized() {
        let a = RationalPoly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(RationalPoly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn series_inverse_of_geometric() {
        let inv = p(&[1, -1]).series_inverse(5).unwrap();
        assert_eq!(inv, p(&[1, 1, 1, 1, 1, 1]));
        let inv2 = p(&[1, 0, -1]).series_inverse(4).unwrap();
        assert_eq!(inv2, p(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn substitution() {
        // (1 + x)(x -> -t^2) = 1 - t^2
        assert_eq!(p(&[1, 1]).substitute_monomial(&q(-1, 1), 2), p(&[1, 0, -1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, 1, 2]).to_string(), "1 + t^2 + 2t^3");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(RationalPoly::zero().to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = RationalPoly> {
            proptest::collection::vec((-6i64..6, 1i64..4), 0..6).prop_map(|cs| {
                RationalPoly::from_coeffs(cs.into_iter().map(|(n, d)| q(n, d)).collect())
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &RationalPoly::one(), a.clone());
            }

            #[test]
            fn exact_div_inverts_mul(a in small_poly(), b in small_poly()) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
            }
        }
    }
}
