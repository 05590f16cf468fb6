//! Exact rational scalar used throughout the region computations.
//!
//! Every real-valued quantity in this crate (CSIT qualities, DoF coordinates,
//! power exponents, region bounds) is carried as a `Rational`. Arithmetic is
//! exact and arbitrary precision; floating point only appears when rendering
//! a convenience decimal for output.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Errors from constructing, parsing, or dividing rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalError {
    /// A denominator of zero was supplied.
    ZeroDenominator,
    /// Division by an exactly-zero rational.
    DivisionByZero,
    /// The input string is not a rational literal ("p/q", integer, or finite decimal).
    Parse(String),
}

impl fmt::Display for RationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalError::ZeroDenominator => write!(f, "denominator must be nonzero"),
            RationalError::DivisionByZero => write!(f, "division by zero"),
            RationalError::Parse(s) => write!(f, "not a rational literal: {s:?}"),
        }
    }
}

impl std::error::Error for RationalError {}

/// An exact rational number in canonical form (reduced, positive denominator).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, canonicalized. Fails on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Numerator of the canonical form (carries the sign).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator of the canonical form (always positive).
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an i64, when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        self.0.is_integer().then(|| self.0.numer().try_into().ok())?
    }

    /// Exact division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn min(self, other: Rational) -> Rational {
        if self <= other { self } else { other }
    }

    pub fn max(self, other: Rational) -> Rational {
        if self >= other { self } else { other }
    }

    /// `max(self, 0)`, the positive-part operator.
    pub fn positive_part(&self) -> Rational {
        if self.is_negative() { Rational::zero() } else { self.clone() }
    }

    /// Decimal rendering plus a flag telling whether it is approximate.
    ///
    /// Terminating expansions (denominator of the form 2^a 5^b) are printed
    /// exactly; anything else is rounded to 12 significant digits.
    pub fn decimal_string(&self) -> (String, bool) {
        if self.is_zero() {
            return ("0".to_string(), false);
        }
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let mut d = self.0.denom().clone();
        let mut pow2 = 0u32;
        let mut pow5 = 0u32;
        while (&d % &two).is_zero() {
            d /= &two;
            pow2 += 1;
        }
        while (&d % &five).is_zero() {
            d /= &five;
            pow5 += 1;
        }
        if d.is_one() {
            // Exact: numer * 2^(k-pow2) * 5^(k-pow5) / 10^k with k = max(pow2, pow5).
            let k = pow2.max(pow5);
            let scaled =
                self.0.numer() * two.pow(k - pow2) * five.pow(k - pow5);
            (render_scaled_decimal(&scaled, k), false)
        } else {
            const SIG: u32 = 12;
            let num = self.0.numer().abs();
            let den = self.0.denom().clone();
            // e = floor(log10(|v|)) found by comparing digit counts, then corrected.
            let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
            let pow10 = |p: i64| -> BigInt {
                BigInt::from(10).pow(p.unsigned_abs() as u32)
            };
            let ge_pow10 = |p: i64| -> bool {
                if p >= 0 { num.clone() * pow10(0) >= den.clone() * pow10(p) } else { num.clone() * pow10(-p) >= den.clone() }
            };
            if ge_pow10(e + 1) {
                e += 1;
            } else if !ge_pow10(e) {
                e -= 1;
            }
            // Round |v| * 10^(SIG-1-e) half away from zero.
            let shift = SIG as i64 - 1 - e;
            let (scale_num, scale_den) = if shift >= 0 {
                (num * pow10(shift), den)
            } else {
                (num, den * pow10(-shift))
            };
            let two_big = BigInt::from(2);
            let mut digits: BigInt = (&scale_num * &two_big + &scale_den) / (&scale_den * &two_big);
            if digits >= pow10(SIG as i64) {
                digits /= 10;
                e += 1;
            }
            let mut s = digits.to_string();
            debug_assert_eq!(s.len(), SIG as usize);
            let text = if (0..SIG as i64).contains(&e) {
                let point = (e + 1) as usize;
                let frac = s.split_off(point);
                let frac = frac.trim_end_matches('0');
                if frac.is_empty() { s } else { format!("{s}.{frac}") }
            } else if (-4..0).contains(&e) {
                let zeros = "0".repeat((-e - 1) as usize);
                format!("0.{zeros}{}", s.trim_end_matches('0'))
            } else {
                let frac = s.split_off(1);
                let frac = frac.trim_end_matches('0');
                if frac.is_empty() { format!("{s}e{e}") } else { format!("{s}.{frac}e{e}") }
            };
            let text = if self.is_negative() { format!("-{text}") } else { text };
            (text, true)
        }
    }

    /// Nearest f64, for ordering-insensitive display work only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

fn render_scaled_decimal(scaled: &BigInt, places: u32) -> String {
    let neg = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    if places == 0 {
        return if neg { format!("-{s}") } else { s };
    }
    while s.len() <= places as usize {
        s.insert(0, '0');
    }
    let frac = s.split_off(s.len() - places as usize);
    let frac = frac.trim_end_matches('0');
    let text = if frac.is_empty() { s } else { format!("{s}.{frac}") };
    if neg { format!("-{text}") } else { text }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `p/q`, a plain integer, or a finite decimal such as `0.25`
    /// (converted exactly; `0.25` becomes `1/4`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(RationalError::Parse(s.to_string()));
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| RationalError::Parse(s.to_string()))?;
            let dtxt = den.trim();
            if dtxt.starts_with('-') || dtxt.starts_with('+') {
                return Err(RationalError::Parse(s.to_string()));
            }
            let d: BigInt = dtxt
                .parse()
                .map_err(|_| RationalError::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(RationalError::ZeroDenominator);
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
            let int_part = if int.is_empty() || int == "-" || int == "+" {
                BigInt::zero()
            } else {
                int.parse()
                    .map_err(|_| RationalError::Parse(s.to_string()))?
            };
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(RationalError::Parse(s.to_string()));
            }
            let frac_num: BigInt = frac
                .parse()
                .map_err(|_| RationalError::Parse(s.to_string()))?;
            let den = BigInt::from(10).pow(frac.len() as u32);
            let num = int_part.abs() * &den + frac_num;
            return Ok(Rational(BigRational::new(num * sign, den)));
        }
        let n: BigInt = t.parse().map_err(|_| RationalError::Parse(s.to_string()))?;
        Ok(Rational(BigRational::from_integer(n)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Rational::checked_div`] where zero is
    /// a reachable input.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "Rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// Compare without allocating; handy for sorts.
pub fn cmp(a: &Rational, b: &Rational) -> Ordering {
    a.0.cmp(&b.0)
}

/// Shorthand for `Rational::new(n, d).unwrap()` in tests and tables with
/// literal denominators.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero literal denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let r = Rational::new(4, -6).unwrap();
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(Rational::new(0, 5).unwrap(), Rational::zero());
    }

    #[test]
    fn zero_denominator_is_error() {
        assert_eq!(Rational::new(1, 0), Err(RationalError::ZeroDenominator));
        assert_eq!("1/0".parse::<Rational>(), Err(RationalError::ZeroDenominator));
    }

    #[test]
    fn division_by_zero_is_error() {
        let one = Rational::one();
        assert_eq!(
            one.checked_div(&Rational::zero()),
            Err(RationalError::DivisionByZero)
        );
    }

    #[test]
    fn parses_fraction_decimal_integer() {
        assert_eq!("4/5".parse::<Rational>().unwrap(), ratio(4, 5));
        assert_eq!("0.25".parse::<Rational>().unwrap(), ratio(1, 4));
        assert_eq!("-0.5".parse::<Rational>().unwrap(), ratio(-1, 2));
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::from_int(3));
        assert_eq!(".5".parse::<Rational>().unwrap(), ratio(1, 2));
        assert!("a/b".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ratio(2, 5).decimal_string(), ("0.4".to_string(), false));
        assert_eq!(ratio(17, 5).decimal_string(), ("3.4".to_string(), false));
        assert_eq!(ratio(-3, 8).decimal_string(), ("-0.375".to_string(), false));
        assert_eq!(Rational::from_int(7).decimal_string(), ("7".to_string(), false));
        let (s, approx) = ratio(1, 3).decimal_string();
        assert!(approx);
        assert_eq!(s, "0.333333333333");
        let (s, approx) = ratio(2, 3).decimal_string();
        assert!(approx);
        assert_eq!(s, "0.666666666667");
    }

    #[test]
    fn positive_part() {
        assert_eq!(ratio(-1, 2).positive_part(), Rational::zero());
        assert_eq!(ratio(1, 2).positive_part(), ratio(1, 2));
    }

    proptest! {
        #[test]
        fn roundtrip_display_parse(n in -1000i64..1000, d in 1i64..1000) {
            let r = Rational::new(n, d).unwrap();
            let back: Rational = r.to_string().parse().unwrap();
            prop_assert_eq!(back, r);
        }

        #[test]
        fn field_axioms_spotcheck(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let x = Rational::new(a, b).unwrap();
            let y = Rational::new(c, d).unwrap();
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            if !y.is_zero() {
                let q = x.checked_div(&y).unwrap();
                prop_assert_eq!(q * &y, x);
            }
        }
    }
}
