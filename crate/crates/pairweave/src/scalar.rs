//! Exact scalars: arbitrary-precision rationals and univariate polynomials
//! over them. Every combinatorial sum in this crate is evaluated in this
//! ring, so there is no floating-point error anywhere before the
//! measure-theoretic boundary.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::PairweaveError;

/// Arbitrary-precision rational, always reduced, denominator > 0.
/// `num_rational::BigRational` maintains both invariants on construction.
pub type Rational = num_rational::BigRational;

/// Parse a rational from a `"p/q"` or `"p"` string.
pub fn parse_rational(s: &str) -> Result<Rational, PairweaveError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(num)
        .map_err(|_| PairweaveError::Parse(format!("bad rational {s:?}")))?;
    let d = match den {
        Some(d) => BigInt::from_str(d)
            .map_err(|_| PairweaveError::Parse(format!("bad rational {s:?}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(PairweaveError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Format a rational as `"p/q"`, or just `"p"` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Polynomial in one indeterminate `q` with rational coefficients.
/// Canonical form: no trailing zero coefficient; the zero polynomial
/// has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = QPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// `c * q^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    /// The indeterminate `q` itself.
    pub fn var() -> Self {
        QPoly::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    /// Coefficients, constant term first (canonical form).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, mut e: usize) -> QPoly {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Serialize as a JSON array of coefficient strings, constant term first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(format_rational(c)))
                .collect(),
        )
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            match k {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !coeff_is_one {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
            coeffs.push(a + b);
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
            coeffs.push(a - b);
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &QPoly) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QPoly> for QPoly {
    fn mul_assign(&mut self, rhs: &QPoly) {
        *self = &*self * rhs;
    }
}

impl From<Rational> for QPoly {
    fn from(c: Rational) -> Self {
        QPoly::constant(c)
    }
}
