//! The input language: expressions over Gaussian rationals closed under
//! field operations, conjugation, square roots and cube roots.
//!
//! The direct evaluator here is the independent oracle that compiled
//! constructions are verified against.

mod parser;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numeric::{BigComplex, BigReal, Precision};

pub use parser::parse;

/// Exact Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_complex(&self, prec: Precision) -> BigComplex {
        BigComplex::from_rationals(&self.re, &self.im, prec)
    }
}

/// Render a rational as `p` or `p/q` (no spaces, so it re-lexes as a single
/// rational literal).
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` with optional leading sign.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    let (num_str, den_str) = match t.find('/') {
        Some(pos) => (&t[..pos], &t[pos + 1..]),
        None => (t, "1"),
    };
    let num: BigInt = num_str
        .trim()
        .parse()
        .map_err(|_| format!("bad rational numerator in {text:?}"))?;
    let den: BigInt = den_str
        .trim()
        .parse()
        .map_err(|_| format!("bad rational denominator in {text:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(BigRational::new(num, den))
}

/// Expression tree. `Div`'s right child being zero is caught at evaluation,
/// not at construction.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Lit(GaussianRational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Conj(Box<Expr>),
    Sqrt(Box<Expr>),
    Cbrt(Box<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
}

impl Expr {
    pub fn lit(g: GaussianRational) -> Expr {
        Expr::Lit(g)
    }

    pub fn int(v: i64) -> Expr {
        Expr::Lit(GaussianRational::from_int(v))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn conj(a: Expr) -> Expr {
        Expr::Conj(Box::new(a))
    }

    pub fn sqrt(a: Expr) -> Expr {
        Expr::Sqrt(Box::new(a))
    }

    pub fn cbrt(a: Expr) -> Expr {
        Expr::Cbrt(Box::new(a))
    }

    /// Direct evaluation with principal branches: `Sqrt` halves the argument
    /// angle taken in (-pi, pi], `Cbrt` divides it by three.
    pub fn eval(&self, prec: Precision) -> Result<BigComplex, ExprError> {
        match self {
            Expr::Lit(g) => Ok(g.to_complex(prec)),
            Expr::Add(a, b) => Ok(&a.eval(prec)? + &b.eval(prec)?),
            Expr::Sub(a, b) => Ok(&a.eval(prec)? - &b.eval(prec)?),
            Expr::Mul(a, b) => Ok(&a.eval(prec)? * &b.eval(prec)?),
            Expr::Div(a, b) => {
                let num = a.eval(prec)?;
                let den = b.eval(prec)?;
                // Anything at or below tau^2 is indistinguishable from zero
                // given the evaluation noise model.
                let floor = BigReal::pow2(-i64::from(prec.bits()), prec);
                if den.abs() <= floor {
                    return Err(ExprError::DivisionByZero);
                }
                Ok(&num / &den)
            }
            Expr::Neg(a) => Ok(-&a.eval(prec)?),
            Expr::Conj(a) => Ok(a.eval(prec)?.conj()),
            Expr::Sqrt(a) => Ok(a.eval(prec)?.principal_sqrt()),
            Expr::Cbrt(a) => Ok(a.eval(prec)?.principal_cbrt()),
        }
    }

    /// Counts of `Sqrt` and `Cbrt` nodes; the cube-root count bounds the
    /// conic depth of any compiled program.
    pub fn radical_counts(&self) -> (usize, usize) {
        match self {
            Expr::Lit(_) => (0, 0),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let (s1, c1) = a.radical_counts();
                let (s2, c2) = b.radical_counts();
                (s1 + s2, c1 + c2)
            }
            Expr::Neg(a) | Expr::Conj(a) => a.radical_counts(),
            Expr::Sqrt(a) => {
                let (s, c) = a.radical_counts();
                (s + 1, c)
            }
            Expr::Cbrt(a) => {
                let (s, c) = a.radical_counts();
                (s, c + 1)
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Expr::Lit(g) => fmt_literal(g, f)?,
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " / ")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)?;
            }
            Expr::Conj(a) => write!(f, "conj({a})")?,
            Expr::Sqrt(a) => write!(f, "sqrt({a})")?,
            Expr::Cbrt(a) => write!(f, "cbrt({a})")?,
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Literals print so that parsing recovers the same node when the literal is
/// one the parser can produce (a real rational, or `i`); other Gaussian
/// literals fall back to an arithmetic spelling that evaluates identically.
fn fmt_literal(g: &GaussianRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if g.im.is_zero() {
        return write!(f, "{}", rational_to_string(&g.re));
    }
    if g.re.is_zero() && g.im.is_one() {
        return write!(f, "i");
    }
    write!(
        f,
        "({} + {} * i)",
        rational_to_string(&g.re),
        rational_to_string(&g.im)
    )
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
