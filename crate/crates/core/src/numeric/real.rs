use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::GUARD_BITS;

/// Binary working precision. All tolerances derive from it as
/// `tau(bits) = 2^(-bits/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const MIN_BITS: u32 = 64;

    /// Panics if `bits < 64`.
    pub fn new(bits: u32) -> Self {
        assert!(bits >= Self::MIN_BITS, "precision must be at least 64 bits");
        Precision { bits }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Fractional bits of the fixed-point representation at this precision.
    pub(crate) fn frac_bits(self) -> u32 {
        self.bits + GUARD_BITS
    }

    /// The global tolerance `2^(-bits/2)`.
    pub fn tau(self) -> BigReal {
        BigReal::pow2(-i64::from(self.bits / 2), self)
    }

    pub fn min(self, other: Precision) -> Precision {
        Precision {
            bits: self.bits.min(other.bits),
        }
    }

    /// Decimal digits that capture this precision with a few guard digits.
    pub fn decimal_digits(self) -> usize {
        // ceil(bits * log10(2)) + 5
        (self.bits as usize * 30103).div_ceil(100_000) + 5
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::new(128)
    }
}

/// Fixed-point arbitrary-precision real: `mant / 2^(prec.frac_bits())`.
///
/// Mixed-precision arithmetic resolves to the minimum precision of the
/// operands. Values are immutable; all operations are pure.
#[derive(Clone, Debug)]
pub struct BigReal {
    mant: BigInt,
    prec: Precision,
}

fn shift(m: &BigInt, k: i64) -> BigInt {
    match k.cmp(&0) {
        Ordering::Equal => m.clone(),
        Ordering::Greater => m << (k as usize),
        Ordering::Less => m >> ((-k) as usize),
    }
}

impl BigReal {
    pub fn zero(prec: Precision) -> Self {
        BigReal {
            mant: BigInt::zero(),
            prec,
        }
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: Precision) -> Self {
        BigReal {
            mant: BigInt::from(v) << prec.frac_bits() as usize,
            prec,
        }
    }

    /// `2^k` at the given precision (zero if it underflows the resolution).
    pub fn pow2(k: i64, prec: Precision) -> Self {
        BigReal {
            mant: shift(&BigInt::from(1), k + i64::from(prec.frac_bits())),
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: Precision) -> Self {
        let num = r.numer() << prec.frac_bits() as usize;
        BigReal {
            mant: num / r.denom(),
            prec,
        }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64, prec: Precision) -> Self {
        let r = BigRational::from_float(v).expect("finite float");
        Self::from_rational(&r, prec)
    }

    pub fn prec(&self) -> Precision {
        self.prec
    }

    /// Re-round to another precision (lossless when widening the guard).
    pub fn with_prec(&self, prec: Precision) -> Self {
        if prec == self.prec {
            return self.clone();
        }
        BigReal {
            mant: shift(
                &self.mant,
                i64::from(prec.frac_bits()) - i64::from(self.prec.frac_bits()),
            ),
            prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            prec: self.prec,
        }
    }

    /// Floor of log2(|x|); `None` for zero.
    pub fn magnitude_log2(&self) -> Option<i64> {
        if self.mant.is_zero() {
            return None;
        }
        Some(self.mant.bits() as i64 - 1 - i64::from(self.prec.frac_bits()))
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let sh = bits.saturating_sub(64) as i64;
        let top = shift(&self.mant, -sh).to_f64().unwrap_or(0.0);
        let e = sh - i64::from(self.prec.frac_bits());
        if e > 1100 {
            return if self.signum() > 0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            };
        }
        if e < -1200 {
            return 0.0;
        }
        // split the exponent so powi never overflows on its own
        top * 2f64.powi((e / 2) as i32) * 2f64.powi((e - e / 2) as i32)
    }

    fn align(&self, prec: Precision) -> BigInt {
        shift(
            &self.mant,
            i64::from(prec.frac_bits()) - i64::from(self.prec.frac_bits()),
        )
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BigReal {
            mant: shift(&self.mant, k),
            prec: self.prec,
        }
    }

    /// |self| <= tol.
    pub fn approx_zero(&self, tol: &BigReal) -> bool {
        self.abs() <= *tol
    }

    /// |self - other| <= tol.
    pub fn approx_eq(&self, other: &BigReal, tol: &BigReal) -> bool {
        (self - other).abs() <= *tol
    }

    /// Truncated square root. Tiny negative inputs (rounding noise) clamp to
    /// zero; genuinely negative inputs are a caller bug.
    pub fn sqrt(&self) -> Self {
        if self.mant.sign() == Sign::Minus {
            let floor = BigReal::pow2(-i64::from(self.prec.bits()), self.prec);
            assert!(
                self.abs() <= floor,
                "sqrt of a negative value: {}",
                self.to_f64()
            );
            return BigReal::zero(self.prec);
        }
        let f = self.prec.frac_bits() as usize;
        BigReal {
            mant: (&self.mant << f).sqrt(),
            prec: self.prec,
        }
    }

    /// Truncated real cube root (any sign).
    pub fn cbrt(&self) -> Self {
        let f = self.prec.frac_bits() as usize;
        BigReal {
            mant: (&self.mant << (2 * f)).cbrt(),
            prec: self.prec,
        }
    }

    pub fn min_val(&self, other: &BigReal) -> BigReal {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn max_val(&self, other: &BigReal) -> BigReal {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Decimal rendering with the given number of fractional digits,
    /// rounded to nearest (ties toward +infinity), trailing zeros kept.
    pub fn to_decimal(&self, digits: usize) -> String {
        let f = self.prec.frac_bits() as usize;
        let pow10 = BigInt::from(10u32).pow(digits as u32);
        let scaled = &self.mant * &pow10;
        let half = BigInt::from(1) << (f - 1);
        let rounded = (scaled + half) >> f;
        let neg = rounded.sign() == Sign::Minus;
        let digits_str = rounded.magnitude().to_string();
        let padded = if digits_str.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - digits_str.len()), digits_str)
        } else {
            digits_str
        };
        let split = padded.len() - digits;
        let (int_part, frac_part) = padded.split_at(split);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(int_part);
        if digits > 0 {
            out.push('.');
            out.push_str(frac_part);
        }
        out
    }

    /// Exact decimal rendering (the value is a dyadic rational), with
    /// trailing zeros trimmed.
    pub fn to_decimal_exact(&self) -> String {
        let f = self.prec.frac_bits() as usize;
        let mut s = self.to_decimal(f);
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    }

    /// Parse a plain or scientific decimal literal.
    pub fn parse_decimal(text: &str, prec: Precision) -> Result<Self, String> {
        let r = parse_decimal_rational(text)?;
        Ok(Self::from_rational(&r, prec))
    }
}

/// Parse a decimal string into an exact rational.
pub(crate) fn parse_decimal_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    let (mantissa, exp10) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = t[pos + 1..]
                .parse()
                .map_err(|_| format!("bad exponent in decimal literal {t:?}"))?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(pos) => (&digits[..pos], &digits[pos + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("empty decimal literal {text:?}"));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(format!("bad decimal literal {text:?}"));
    }
    let joined = format!("{int_part}{frac_part}");
    let num: BigInt = joined.parse().map_err(|_| "unparseable digits".to_string())?;
    let scale = frac_part.len() as i64 - exp10;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        BigRational::new(num * sign, ten.pow(scale as u32))
    } else {
        BigRational::new(num * sign * ten.pow((-scale) as u32), BigInt::from(1))
    };
    Ok(r)
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let prec = self.prec.min(other.prec);
        Some(self.align(prec).cmp(&other.align(prec)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&BigReal> for &BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        let prec = self.prec.min(rhs.prec);
        BigReal {
            mant: self.align(prec) + rhs.align(prec),
            prec,
        }
    }
}
forward_binop!(Add, add);

impl Sub<&BigReal> for &BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        let prec = self.prec.min(rhs.prec);
        BigReal {
            mant: self.align(prec) - rhs.align(prec),
            prec,
        }
    }
}
forward_binop!(Sub, sub);

impl Mul<&BigReal> for &BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        let prec = self.prec.min(rhs.prec);
        let product = &self.mant * &rhs.mant;
        let excess = i64::from(self.prec.frac_bits()) + i64::from(rhs.prec.frac_bits())
            - i64::from(prec.frac_bits());
        BigReal {
            mant: shift(&product, -excess),
            prec,
        }
    }
}
forward_binop!(Mul, mul);

impl Div<&BigReal> for &BigReal {
    type Output = BigReal;
    fn div(self, rhs: &BigReal) -> BigReal {
        assert!(!rhs.mant.is_zero(), "division by exact zero");
        let prec = self.prec.min(rhs.prec);
        // a/b = (ma / mb) * 2^(Fb - Fa); produce result at frac_bits F.
        let up = i64::from(prec.frac_bits()) + i64::from(rhs.prec.frac_bits())
            - i64::from(self.prec.frac_bits());
        BigReal {
            mant: shift(&self.mant, up) / &rhs.mant,
            prec,
        }
    }
}
forward_binop!(Div, div);

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            prec: self.prec,
        }
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -self.mant,
            prec: self.prec,
        }
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(self.prec.decimal_digits()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits)
    }

    #[test]
    fn field_ops_round_trip() {
        let prec = p(128);
        let a = BigReal::from_rational(&BigRational::new(7.into(), 3.into()), prec);
        let b = BigReal::from_i64(5, prec);
        let c = &(&a * &b) / &b;
        assert!(c.approx_eq(&a, &BigReal::pow2(-150, prec)));
        let d = &(&a + &b) - &b;
        assert!(d.approx_eq(&a, &BigReal::pow2(-150, prec)));
    }

    #[test]
    fn mixed_precision_takes_minimum() {
        let a = BigReal::from_i64(3, p(256));
        let b = BigReal::from_i64(4, p(128));
        assert_eq!((&a + &b).prec().bits(), 128);
        assert_eq!((&a * &b).prec().bits(), 128);
    }

    #[test]
    fn sqrt_of_two() {
        let prec = p(256);
        let two = BigReal::from_i64(2, prec);
        let r = two.sqrt();
        let resid = (&(&r * &r) - &two).abs();
        assert!(resid <= BigReal::pow2(-300, prec), "residual {}", resid.to_f64());
        assert!((r.to_f64() - 1.4142135623730951).abs() < 1e-15);
    }

    #[test]
    fn cbrt_signs() {
        let prec = p(128);
        let v = BigReal::from_i64(-8, prec);
        let r = v.cbrt();
        assert!(r.approx_eq(&BigReal::from_i64(-2, prec), &BigReal::pow2(-120, prec)));
        let w = BigReal::from_i64(2, prec).cbrt();
        assert!((w.to_f64() - 1.2599210498948732).abs() < 1e-15);
    }

    #[test]
    fn decimal_rendering() {
        let prec = p(128);
        let x = BigReal::from_rational(&BigRational::new(1.into(), 8.into()), prec);
        assert_eq!(x.to_decimal(4), "0.1250");
        assert_eq!(x.to_decimal_exact(), "0.125");
        assert_eq!((-x).to_decimal(3), "-0.125");
        let y = BigReal::from_i64(42, prec);
        assert_eq!(y.to_decimal_exact(), "42");
    }

    #[test]
    fn decimal_parse_round_trip() {
        let prec = p(192);
        for s in ["3.25", "-0.0001", "12", "1e-3", "2.5e2", "-7.5E-1"] {
            let x = BigReal::parse_decimal(s, prec).unwrap();
            let back = BigReal::parse_decimal(&x.to_decimal_exact(), prec).unwrap();
            assert!(x.approx_eq(&back, &BigReal::pow2(-200, prec)), "{s}");
        }
        assert!(BigReal::parse_decimal("abc", prec).is_err());
        assert!(BigReal::parse_decimal("1.2.3", prec).is_err());
    }

    #[test]
    fn exact_decimal_is_exact() {
        let prec = p(128);
        let x = BigReal::pow2(-75, prec);
        let s = x.to_decimal_exact();
        let y = BigReal::parse_decimal(&s, prec).unwrap();
        assert_eq!(x.partial_cmp(&y), Some(Ordering::Equal));
    }

    #[test]
    fn to_f64_extremes() {
        let prec = p(128);
        assert_eq!(BigReal::zero(prec).to_f64(), 0.0);
        let big = BigReal::from_i64(1, prec).mul_pow2(100);
        assert_eq!(big.to_f64(), 2f64.powi(100));
        let tiny = BigReal::pow2(-150, prec);
        assert!(tiny.to_f64() > 0.0);
    }

    #[test]
    fn tau_matches_definition() {
        let t = p(256).tau();
        assert_eq!(t.magnitude_log2(), Some(-128));
    }
}
