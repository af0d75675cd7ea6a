use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use super::{BigReal, Precision};

/// Complex number as a pair of [`BigReal`]s. Doubles as a plane point via the
/// usual identification of `(x, y)` with `x + iy`.
#[derive(Clone, Debug, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        BigComplex::new(BigReal::zero(prec), BigReal::zero(prec))
    }

    pub fn from_re(re: BigReal) -> Self {
        let prec = re.prec();
        BigComplex::new(re, BigReal::zero(prec))
    }

    pub fn from_i64(re: i64, im: i64, prec: Precision) -> Self {
        BigComplex::new(BigReal::from_i64(re, prec), BigReal::from_i64(im, prec))
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, prec: Precision) -> Self {
        BigComplex::new(
            BigReal::from_rational(re, prec),
            BigReal::from_rational(im, prec),
        )
    }

    pub fn prec(&self) -> Precision {
        self.re.prec().min(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, s: &BigReal) -> Self {
        BigComplex::new(&self.re * s, &self.im * s)
    }

    pub fn mul_i(&self) -> Self {
        BigComplex::new(-&self.im, self.re.clone())
    }

    pub fn norm_sqr(&self) -> BigReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Modulus, computed hypot-style so values far below 1 do not lose their
    /// low bits to the fixed-point squaring.
    pub fn abs(&self) -> BigReal {
        let a = self.re.abs();
        let b = self.im.abs();
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi.is_zero() {
            return hi;
        }
        let r = &lo / &hi;
        let one = BigReal::one(self.prec());
        &hi * &(&one + &(&r * &r)).sqrt()
    }

    pub fn dist(&self, other: &BigComplex) -> BigReal {
        (self - other).abs()
    }

    /// Componentwise closeness: max(|d re|, |d im|) <= tol.
    pub fn approx_eq(&self, other: &BigComplex, tol: &BigReal) -> bool {
        (&self.re - &other.re).abs() <= *tol && (&self.im - &other.im).abs() <= *tol
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Principal square root: argument of the result lies in (-pi/2, pi/2].
    ///
    /// Computed algebraically from the half-angle identities, so only a real
    /// square root is needed: for `z = a + bi` with `r = |z|`,
    /// `sqrt(z) = sqrt((r+a)/2) + i*sgn(b)*sqrt((r-a)/2)` where `sgn(0) = +1`
    /// (this puts the branch cut result for negative reals at `+i*sqrt(r)`).
    pub fn principal_sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return BigComplex::zero(prec);
        }
        let r = self.abs();
        let half = BigReal::pow2(-1, prec);
        let re = (&(&r + &self.re) * &half).sqrt();
        let im_mag = (&(&r - &self.re) * &half).sqrt();
        let im = if self.im.signum() < 0 { -im_mag } else { im_mag };
        BigComplex::new(re, im)
    }

    /// Principal cube root: argument of the result lies in (-pi/3, pi/3].
    ///
    /// Seeded from the double-precision principal root and polished by Newton
    /// iteration on `w^3 = z`, which converges quadratically and needs only
    /// field operations.
    pub fn principal_cbrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return BigComplex::zero(prec);
        }
        // Scale by 8^k so the f64 seed is well inside the representable range;
        // the cube root then scales by 2^k.
        let mag = self.abs().magnitude_log2().unwrap_or(0);
        let k = -(mag.div_euclid(3));
        let scaled = BigComplex::new(self.re.mul_pow2(3 * k), self.im.mul_pow2(3 * k));

        let (a, b) = scaled.to_f64s();
        let r = a.hypot(b);
        let theta = b.atan2(a) / 3.0;
        let rc = r.cbrt();
        let seed_re = rc * theta.cos();
        let seed_im = rc * theta.sin();
        let mut w = BigComplex::new(
            BigReal::from_f64(seed_re, prec),
            BigReal::from_f64(seed_im, prec),
        );

        // w <- (2w + z/w^2) / 3, doubling correct bits each pass. The f64 seed
        // carries ~50 bits, so a few iterations cover any working precision.
        let third = &BigReal::one(prec) / &BigReal::from_i64(3, prec);
        let two = BigReal::from_i64(2, prec);
        let iters = {
            let f = prec.frac_bits() as f64;
            ((f / 45.0).log2().ceil() as u32).max(1) + 2
        };
        for _ in 0..iters {
            let w2 = &w * &w;
            w = (&w.scale(&two) + &(&scaled / &w2)).scale(&third);
        }
        BigComplex::new(w.re.mul_pow2(-k), w.im.mul_pow2(-k))
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        // Normalize the denominator first so |rhs| far below 1 does not
        // underflow the squared modulus.
        let m = rhs.re.abs().max_val(&rhs.im.abs());
        assert!(!m.is_zero(), "complex division by exact zero");
        let scaled = BigComplex::new(&rhs.re / &m, &rhs.im / &m);
        let d = &scaled.norm_sqr() * &m;
        let num = self * &scaled.conj();
        BigComplex::new(&num.re / &d, &num.im / &d)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.signum() < 0 {
            write!(f, "{} - {}i", self.re, self.im.abs())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}
