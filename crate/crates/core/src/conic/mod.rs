//! Conic geometry: classification, regular normal forms, focus/directrix
//! conversions, similarity transport, and robust intersections of lines,
//! circles and conics.

mod focus;
mod intersect;
mod regular;
mod similarity;

use num_rational::BigRational;
use thiserror::Error;

use crate::numeric::{BigComplex, BigReal, Precision, RootError};

pub use focus::{focus_directrix_to_implicit, implicit_to_focus_directrix, FocusDirectrix};
pub use intersect::{intersect_basic, intersect_circle_conic, BasicObject, Circle, Line};
pub use regular::{regular_to_implicit, sample_regular, to_regular, true_eccentricity};
pub use similarity::{apply_similarity, similarity_between, Similarity};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConicError {
    #[error("input is not a non-degenerate, non-circular conic")]
    NotAConic,
    #[error("circles have no directrix")]
    CircleHasNoDirectrix,
    #[error("degenerate input (focus on directrix)")]
    DegenerateInput,
    #[error("degenerate object (zero-radius circle or coincident line endpoints)")]
    DegenerateObject,
    #[error("coincident objects have infinitely many intersections")]
    CoincidentObjects,
    #[error("variable elimination degenerated in both directions")]
    EliminationDegenerate,
    #[error("regular conics have different form parameters")]
    FormParameterMismatch,
    #[error("regular conics lie in opposite orientation classes")]
    OrientationClassMismatch,
    #[error(transparent)]
    Roots(#[from] RootError),
}

/// Conic in implicit form `a x^2 + b xy + c y^2 + d x + e y + f = 0`.
/// Scale-equivalent coefficient vectors describe the same conic.
#[derive(Clone, Debug)]
pub struct ConicImplicit {
    pub a: BigReal,
    pub b: BigReal,
    pub c: BigReal,
    pub d: BigReal,
    pub e: BigReal,
    pub f: BigReal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicClass {
    Circle,
    Ellipse,
    Parabola,
    Hyperbola,
    DegenerateLines,
    DegeneratePoint,
    Empty,
}

impl ConicClass {
    pub fn is_valid_fixed(self) -> bool {
        matches!(
            self,
            ConicClass::Ellipse | ConicClass::Parabola | ConicClass::Hyperbola
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ConicClass::Circle => "circle",
            ConicClass::Ellipse => "ellipse",
            ConicClass::Parabola => "parabola",
            ConicClass::Hyperbola => "hyperbola",
            ConicClass::DegenerateLines => "degenerate (lines)",
            ConicClass::DegeneratePoint => "degenerate (point)",
            ConicClass::Empty => "empty",
        }
    }
}

/// The regular normal forms: `u (x-a)^2 + (y-b)^2 = rhs` with `u != 0`
/// (`u = 1` would be a circle and is rejected upstream), and the parabola
/// `x = lambda (y-a)^2 + b`. `rhs` is signed: for `u < 0` the two signs are
/// the two conjugate-hyperbola orientation classes, which are not homothetic
/// to one another.
#[derive(Clone, Debug)]
pub enum RegularConic {
    Central {
        u: BigReal,
        center: (BigReal, BigReal),
        rhs: BigReal,
    },
    Parabola {
        lambda: BigReal,
        a: BigReal,
        b: BigReal,
    },
}

impl RegularConic {
    /// Sign of the completed-square right-hand side; 0 for parabolas.
    pub fn class_sign(&self) -> i8 {
        match self {
            RegularConic::Central { rhs, .. } => rhs.signum(),
            RegularConic::Parabola { .. } => 0,
        }
    }

    pub fn prec(&self) -> Precision {
        match self {
            RegularConic::Central { u, center, rhs } => u
                .prec()
                .min(center.0.prec())
                .min(center.1.prec())
                .min(rhs.prec()),
            RegularConic::Parabola { lambda, a, b } => {
                lambda.prec().min(a.prec()).min(b.prec())
            }
        }
    }
}

/// Plane rotation as a unit vector `(cos t, sin t)`.
#[derive(Clone, Debug)]
pub struct Frame {
    pub cos: BigReal,
    pub sin: BigReal,
}

impl Frame {
    pub fn identity(prec: Precision) -> Self {
        Frame {
            cos: BigReal::one(prec),
            sin: BigReal::zero(prec),
        }
    }

    pub fn new(cos: BigReal, sin: BigReal) -> Self {
        Frame { cos, sin }
    }

    /// Rotation by an additional +90 degrees.
    pub fn quarter_turn(&self) -> Frame {
        Frame {
            cos: -&self.sin,
            sin: self.cos.clone(),
        }
    }

    pub fn inverse(&self) -> Frame {
        Frame {
            cos: self.cos.clone(),
            sin: -&self.sin,
        }
    }

    pub fn is_identity(&self, tol: &BigReal) -> bool {
        (&self.cos - &BigReal::one(self.cos.prec())).abs() <= *tol && self.sin.abs() <= *tol
    }

    /// The unit complex number `cos + i sin`.
    pub fn omega(&self) -> BigComplex {
        BigComplex::new(self.cos.clone(), self.sin.clone())
    }

    /// Rotate a point by this frame.
    pub fn apply(&self, p: &BigComplex) -> BigComplex {
        &self.omega() * p
    }
}

impl ConicImplicit {
    pub fn new(a: BigReal, b: BigReal, c: BigReal, d: BigReal, e: BigReal, f: BigReal) -> Self {
        ConicImplicit { a, b, c, d, e, f }
    }

    pub fn from_rationals(coeffs: &[BigRational; 6], prec: Precision) -> Self {
        let cv: Vec<BigReal> = coeffs
            .iter()
            .map(|r| BigReal::from_rational(r, prec))
            .collect();
        let mut it = cv.into_iter();
        ConicImplicit::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        )
    }

    pub fn from_i64(coeffs: [i64; 6], prec: Precision) -> Self {
        let [a, b, c, d, e, f] = coeffs.map(|v| BigReal::from_i64(v, prec));
        ConicImplicit::new(a, b, c, d, e, f)
    }

    pub fn coeffs(&self) -> [&BigReal; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f]
    }

    pub fn prec(&self) -> Precision {
        self.coeffs().iter().map(|c| c.prec()).min().unwrap()
    }

    /// Largest coefficient magnitude.
    pub fn coeff_scale(&self) -> BigReal {
        let mut m = self.a.abs();
        for c in &self.coeffs()[1..] {
            m = m.max_val(&c.abs());
        }
        m
    }

    /// Value of the quadratic form at a point.
    pub fn eval(&self, p: &BigComplex) -> BigReal {
        let (x, y) = (&p.re, &p.im);
        &(&(&(&(&(&self.a * &(x * x)) + &(&self.b * &(x * y))) + &(&self.c * &(y * y)))
            + &(&self.d * x))
            + &(&self.e * y))
            + &self.f
    }

    /// |eval(p)| normalized by coefficient scale and point magnitude, so it
    /// compares directly against tau.
    pub fn residual(&self, p: &BigComplex) -> BigReal {
        let prec = self.prec().min(p.prec());
        let one = BigReal::one(prec);
        let m = one.max_val(&p.re.abs()).max_val(&p.im.abs());
        let denom = &(&m * &m) * &self.coeff_scale();
        &self.eval(p).abs() / &denom
    }

    /// The conic whose points are this conic's points rotated by `fr`.
    pub fn rotated(&self, fr: &Frame) -> ConicImplicit {
        let (c, s) = (&fr.cos, &fr.sin);
        let cc = c * c;
        let ss = s * s;
        let cs = c * s;
        let a2 = &(&(&self.a * &cc) - &(&self.b * &cs)) + &(&self.c * &ss);
        let b2 = &(&(&self.a * &cs).mul_pow2(1) + &(&self.b * &(&cc - &ss)))
            - &(&self.c * &cs).mul_pow2(1);
        let c2 = &(&(&self.a * &ss) + &(&self.b * &cs)) + &(&self.c * &cc);
        let d2 = &(&self.d * c) - &(&self.e * s);
        let e2 = &(&self.d * s) + &(&self.e * c);
        ConicImplicit::new(a2, b2, c2, d2, e2, self.f.clone())
    }

    /// Inverse rotation.
    pub fn derotated(&self, fr: &Frame) -> ConicImplicit {
        self.rotated(&fr.inverse())
    }

    /// Scale-normalized copy (largest coefficient magnitude 1).
    fn normalized(&self) -> ConicImplicit {
        let s = self.coeff_scale();
        assert!(!s.is_zero(), "all-zero conic");
        let inv = &BigReal::one(self.prec()) / &s;
        ConicImplicit::new(
            &self.a * &inv,
            &self.b * &inv,
            &self.c * &inv,
            &self.d * &inv,
            &self.e * &inv,
            &self.f * &inv,
        )
    }
}

/// Classify by the sign of `b^2 - 4ac` and the rank of the 3x3 matrix of the
/// quadratic form, with tau-thresholds after scale normalization. A circle is
/// an ellipse with `b ~ 0` and `a ~ c`. Real-emptiness is detected so that
/// e.g. `x^2 + y^2 + 1 = 0` classifies as `Empty`, not `Circle`.
pub fn classify(k: &ConicImplicit, prec: Precision) -> ConicClass {
    let tau = prec.tau();
    if k.coeff_scale().is_zero() {
        return ConicClass::DegenerateLines;
    }
    let n = k.normalized();
    let quad_scale = n.a.abs().max_val(&n.b.abs()).max_val(&n.c.abs());
    if quad_scale <= tau {
        // No degree-2 part left: a line (or nothing).
        return ConicClass::DegenerateLines;
    }

    let four = BigReal::from_i64(4, prec);
    let disc = &(&n.b * &n.b) - &(&four * &(&n.a * &n.c));
    let det3 = det3(&n);

    if det3.abs() > tau {
        if disc < -&tau {
            // Ellipse-type: real iff (a + c) * det3 < 0.
            let trace = &n.a + &n.c;
            if (&trace * &det3).signum() >= 0 {
                return ConicClass::Empty;
            }
            if n.b.abs() <= tau && (&n.a - &n.c).abs() <= tau {
                return ConicClass::Circle;
            }
            return ConicClass::Ellipse;
        }
        if disc.abs() <= tau {
            return ConicClass::Parabola;
        }
        return ConicClass::Hyperbola;
    }

    // Degenerate quadric.
    if disc > tau {
        return ConicClass::DegenerateLines;
    }
    if disc < -&tau {
        return ConicClass::DegeneratePoint;
    }
    // Rank-one quadratic part: rotate it onto the y^2 axis and inspect the
    // left-over quadratic in y.
    let fr = regular::axis_frame(&n, prec);
    let r = n.derotated(&fr);
    let (cy, ey, fy) = if r.c.abs() >= r.a.abs() {
        (r.c, r.e, r.f)
    } else {
        (r.a, r.d, r.f)
    };
    let q_disc = &(&ey * &ey) - &(&four * &(&cy * &fy));
    if q_disc < -&tau {
        ConicClass::Empty
    } else {
        ConicClass::DegenerateLines
    }
}

/// Determinant of the symmetric matrix [[a, b/2, d/2], [b/2, c, e/2], [d/2, e/2, f]].
fn det3(k: &ConicImplicit) -> BigReal {
    let b2 = k.b.mul_pow2(-1);
    let d2 = k.d.mul_pow2(-1);
    let e2 = k.e.mul_pow2(-1);
    let m00 = &(&k.c * &k.f) - &(&e2 * &e2);
    let m01 = &(&b2 * &k.f) - &(&e2 * &d2);
    let m02 = &(&b2 * &e2) - &(&k.c * &d2);
    &(&(&k.a * &m00) - &(&b2 * &m01)) + &(&d2 * &m02)
}

#[cfg(test)]
mod tests;
