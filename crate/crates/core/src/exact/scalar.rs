//! Exact scalars: rational and Gaussian rational numbers.
//!
//! A `Scalar` is an element of Q(i) stored as a pair of arbitrary-precision
//! rationals. Plain rationals are the special case with vanishing imaginary
//! part. `num::BigRational` keeps every value in canonical reduced form
//! (positive denominator, coprime to the numerator), so equality is literal.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Field of definition carried by containers (elements, matrices, algebras).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Gaussian,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Gaussian => write!(f, "Q(i)"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "QQ" | "rational" => Ok(Field::Rational),
            "Q(i)" | "QQ(i)" | "gaussian" => Ok(Field::Gaussian),
            other => Err(Error::Input(format!("unknown field tag {other:?}"))),
        }
    }
}

/// An exact Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_parts(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|^2 = re^2 + im^2, a non-negative rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    fn fmt_rational(r: &BigRational) -> String {
        if r.denom().is_one() {
            format!("{}", r.numer())
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form: `a/b`, `c/d*i`, or `a/b+c/d*i` (with `-` signs folded in).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", Self::fmt_rational(&self.re));
        }
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", Self::fmt_rational(im))
            }
        };
        if self.re.is_zero() {
            return write!(f, "{}", im_part(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}{}", Self::fmt_rational(&self.re), im_part(&self.im))
        } else {
            write!(f, "{}+{}", Self::fmt_rational(&self.re), im_part(&self.im))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| Error::Input(format!("bad rational {s:?}")))?;
    let d = BigInt::from_str(den).map_err(|_| Error::Input(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `a/b`, `c/d*i`, `a/b+c/d*i`, `a/b-c/d*i`, and bare `i`/`-i`.
    /// No floating point forms.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Input("empty scalar".into()));
        }
        // Split at the last top-level '+' or '-' that is not the leading sign
        // and not inside an exponent (no exponents in this grammar).
        let bytes = s.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && bytes[k - 1] as char != '/' {
                split = Some(k);
                break;
            }
        }
        let parse_term = |t: &str| -> Result<Scalar> {
            if let Some(body) = t.strip_suffix('i') {
                let body = body.strip_suffix('*').unwrap_or(body);
                let coeff = match body {
                    "" => BigRational::one(),
                    "-" => -BigRational::one(),
                    "+" => BigRational::one(),
                    other => parse_rational(other)?,
                };
                Ok(Scalar {
                    re: BigRational::zero(),
                    im: coeff,
                })
            } else {
                Ok(Scalar {
                    re: parse_rational(t)?,
                    im: BigRational::zero(),
                })
            }
        };
        match split {
            None => parse_term(&s),
            Some(k) => {
                let first = parse_term(&s[..k])?;
                let sign = if bytes[k] as char == '-' {
                    -Scalar::one()
                } else {
                    Scalar::one()
                };
                let second = parse_term(s[k..].trim_start_matches(['+', '-']))?;
                Ok(&first + &(&sign * &second))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar {
                re: &self.re * &rhs.re,
                im: BigRational::zero(),
            };
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let third = Scalar::ratio(1, 3);
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());
        let z = Scalar::from_parts(BigRational::new(1.into(), 2.into()), BigRational::one());
        let w = &z * &z.conj();
        assert!(w.is_rational());
        assert_eq!(w, Scalar::ratio(5, 4));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = &Scalar::ratio(3, 7) + &(&Scalar::i() * &Scalar::ratio(-2, 5));
        let inv = z.inv().unwrap();
        assert!((&z * &inv).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn parse_and_print_roundtrip() {
        for s in [
            "0",
            "1",
            "-2/3",
            "i",
            "-i",
            "1/2*i",
            "3+2*i",
            "1/2-1/3*i",
            "-5/7+i",
        ] {
            let v: Scalar = s.parse().unwrap();
            let printed = v.to_string();
            let reparsed: Scalar = printed.parse().unwrap();
            assert_eq!(v, reparsed, "roundtrip failed for {s}");
        }
        assert_eq!(
            "1/2+1/3*i".parse::<Scalar>().unwrap().to_string(),
            "1/2+1/3*i"
        );
        assert!("0.5".parse::<Scalar>().is_err());
    }
}
