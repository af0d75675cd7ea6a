//! The two conic gadgets and their scale selection.
//!
//! Cube root of `r > 0`: the circle `x^2 + y^2 - r'x - y = 0` and the conic
//! `u x^2 + y^2 - r'x - u y = 0` meet where `x^4 - r'x = 0`, so the
//! intersection other than the origin has `x = cbrt(r')`.
//!
//! Trisection of an angle with cosine `q`: the circle
//! `x^2 + y^2 - (qc^3/4)x - (1 + 3c^2/4)y = 0` and the conic
//! `u x^2 + y^2 - (qc^3/4)x - (1 + 3c^2/4 - (1-u))y = 0` meet where
//! `x (x^3 - (3c^2/4)x - qc^3/4) = 0`, whose largest nonzero root is
//! `c cos(t/3)`. At `c = 1` this is the classical 7/4 circle.
//!
//! Both conics are regular of form parameter `u` (a parabola when `u = 0`).
//! For a hyperbolic session (`u < 0`) the completed-square right-hand side of
//! the gadget conic can take either sign; the scale (`n` with `r' = n^3 r`,
//! or the trisection stretch `c`) is the free parameter that selects the
//! orientation class matching the fixed conic.

use num_rational::BigRational;
use num_traits::One;

use crate::conic::{Circle, ConicError, RegularConic, Similarity};
use crate::numeric::{BigComplex, BigReal, Poly, Precision};

use super::PlanError;

/// Form family of the session conic: central with parameter `u`, or the
/// parabolic family (`u = 0`).
#[derive(Clone, Debug)]
pub enum SessionForm {
    Central { u: BigReal },
    Parabolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetKind {
    Cbrt,
    Trisect,
}

/// A planned gadget in its own coordinates: the circle, the regular conic it
/// cuts, and the intersection point carrying the answer.
#[derive(Clone, Debug)]
pub struct GadgetSpec {
    pub circle: Circle,
    pub conic: RegularConic,
    pub selected: BigComplex,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow2_rat(k: i64) -> BigRational {
    let two = BigRational::from_integer(2.into());
    if k >= 0 {
        two.pow(k as i32)
    } else {
        BigRational::one() / two.pow((-k) as i32)
    }
}

/// Exact implicit coefficients `[a, b, c, d, e, f]` of the cube-root gadget
/// pair for rational data (`u = 0` gives the parabolic family member).
pub fn cbrt_gadget_exact(
    r_prime: &BigRational,
    u: &BigRational,
) -> ([BigRational; 6], [BigRational; 6]) {
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::one();
    let circle = [
        one.clone(),
        zero.clone(),
        one.clone(),
        -r_prime.clone(),
        -one.clone(),
        zero.clone(),
    ];
    let conic = [
        u.clone(),
        zero.clone(),
        one,
        -r_prime.clone(),
        -u.clone(),
        zero,
    ];
    (circle, conic)
}

/// Exact implicit coefficients of the trisection gadget pair; at `c = 1` the
/// circle's y coefficient is the classical 7/4.
pub fn trisect_gadget_exact(
    q: &BigRational,
    c: &BigRational,
    u: &BigRational,
) -> ([BigRational; 6], [BigRational; 6]) {
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::one();
    let c2 = c * c;
    let c3 = &c2 * c;
    let dx = -(q * &c3 * rat(1, 4));
    let ey = BigRational::one() + &c2 * rat(3, 4);
    let circle = [
        one.clone(),
        zero.clone(),
        one.clone(),
        dx.clone(),
        -ey.clone(),
        zero.clone(),
    ];
    let conic = [
        u.clone(),
        zero.clone(),
        one.clone(),
        dx,
        -(&ey - &(one - u.clone())),
        zero,
    ];
    (circle, conic)
}

/// Regular form of the cube-root gadget conic (value level).
fn cbrt_gadget_regular(
    r_prime: &BigReal,
    form: &SessionForm,
    prec: Precision,
) -> Result<RegularConic, PlanError> {
    match form {
        SessionForm::Parabolic => Ok(RegularConic::Parabola {
            lambda: &BigReal::one(prec) / r_prime,
            a: BigReal::zero(prec),
            b: BigReal::zero(prec),
        }),
        SessionForm::Central { u } => {
            let center = (&(r_prime / &u.mul_pow2(1)), u.mul_pow2(-1));
            let rhs_pos = &(r_prime * r_prime) / &u.mul_pow2(2);
            let rhs = &rhs_pos + &(u * u).mul_pow2(-2);
            check_rhs_margin(&rhs, &rhs_pos.abs(), &(u * u).mul_pow2(-2))?;
            Ok(RegularConic::Central {
                u: u.clone(),
                center: (center.0.clone(), center.1),
                rhs,
            })
        }
    }
}

/// Regular form of the trisection gadget conic (value level).
fn trisect_gadget_regular(
    q: &BigReal,
    c: &BigRational,
    form: &SessionForm,
    prec: Precision,
) -> Result<RegularConic, PlanError> {
    let c2 = BigReal::from_rational(&(c * c), prec);
    let c3 = BigReal::from_rational(&(c * c * c), prec);
    match form {
        SessionForm::Parabolic => {
            let qc3 = q * &c3;
            if qc3.is_zero() {
                return Err(PlanError::DegenerateGadget);
            }
            Ok(RegularConic::Parabola {
                lambda: &BigReal::from_i64(4, prec) / &qc3,
                a: &c2 * &BigReal::from_rational(&rat(3, 8), prec),
                b: &(&BigReal::from_rational(&rat(-9, 16), prec)
                    * &BigReal::from_rational(c, prec))
                    / q,
            })
        }
        SessionForm::Central { u } => {
            let beta = u + &(&c2 * &BigReal::from_rational(&rat(3, 4), prec));
            let qc3 = q * &c3;
            let t1 = (&(&qc3 * &qc3) / u).mul_pow2(-6);
            let t2 = (&beta * &beta).mul_pow2(-2);
            let rhs = &t1 + &t2;
            check_rhs_margin(&rhs, &t1.abs(), &t2)?;
            Ok(RegularConic::Central {
                u: u.clone(),
                center: (&qc3 / &u.mul_pow2(3), beta.mul_pow2(-1)),
                rhs,
            })
        }
    }
}

/// Degeneracy guard: |rhs| must stay at least a quarter of the dominant term.
fn check_rhs_margin(rhs: &BigReal, t1: &BigReal, t2: &BigReal) -> Result<(), PlanError> {
    let dominant = t1.max_val(t2);
    if rhs.abs().mul_pow2(2) < dominant {
        return Err(PlanError::DegenerateGadget);
    }
    Ok(())
}

/// Build the cube-root gadget for `r > 0` scaled by `n` (`r' = n^3 r`): the
/// circle through the origin with center `(r'/2, 1/2)`, the regular conic of
/// the session form, and the selected point `(cbrt r', cbrt r'^2)`.
pub fn gadget_cbrt(
    r: &BigReal,
    form: &SessionForm,
    n: &BigRational,
    prec: Precision,
) -> Result<GadgetSpec, PlanError> {
    assert!(r.signum() > 0, "cube-root gadget needs a positive radicand");
    let n3 = BigReal::from_rational(&(n * n * n), prec);
    let r_prime = r * &n3;
    let circle = Circle {
        center: BigComplex::new(r_prime.mul_pow2(-1), BigReal::pow2(-1, prec)),
        through: BigComplex::zero(prec),
    };
    let conic = cbrt_gadget_regular(&r_prime, form, prec)?;
    let x = r_prime.cbrt();
    let selected = BigComplex::new(x.clone(), &x * &x);
    Ok(GadgetSpec {
        circle,
        conic,
        selected,
    })
}

/// Build the trisection gadget for `q = cos t` stretched by `c`: the circle
/// through the origin with center `(qc^3/8, (1 + 3c^2/4)/2)`, the regular
/// conic of the session form, and the selected point whose x-coordinate is
/// `c cos(t/3)` (the largest real root of the scaled cubic).
pub fn gadget_trisect(
    q: &BigReal,
    form: &SessionForm,
    c: &BigRational,
    prec: Precision,
) -> Result<GadgetSpec, PlanError> {
    let c2 = BigReal::from_rational(&(c * c), prec);
    let c3 = BigReal::from_rational(&(c * c * c), prec);
    let qc3_4 = (q * &c3).mul_pow2(-2);
    let ey = &BigReal::one(prec) + &(&c2 * &BigReal::from_rational(&rat(3, 4), prec));
    let circle = Circle {
        center: BigComplex::new(qc3_4.mul_pow2(-1), ey.mul_pow2(-1)),
        through: BigComplex::zero(prec),
    };
    let conic = trisect_gadget_regular(q, c, form, prec)?;
    // Largest real root of x^3 - (3c^2/4) x - q c^3 / 4.
    let cubic = Poly::new(vec![
        -&qc3_4,
        -&(&c2 * &BigReal::from_rational(&rat(3, 4), prec)),
        BigReal::zero(prec),
        BigReal::one(prec),
    ]);
    let roots = cubic.real_roots(prec).map_err(ConicError::from)?;
    let x = roots.last().ok_or(PlanError::DegenerateGadget)?.clone();
    let selected = BigComplex::new(x.clone(), &x * &x);
    Ok(GadgetSpec {
        circle,
        conic,
        selected,
    })
}

/// Pick the power-of-two gadget scale. For a central session with `u < 0`
/// the scale forces the gadget conic's completed-square right-hand side into
/// the required orientation class with at least a 2x margin from degeneracy;
/// otherwise it just conditions the radicand (`r'` lands in [1, 8)) or keeps
/// the paper-verbatim `c = 1`.
pub fn choose_gadget_scale(
    form: &SessionForm,
    magnitude: &BigReal,
    required_class_sign: Option<i8>,
    kind: GadgetKind,
    prec: Precision,
) -> Result<BigRational, PlanError> {
    match kind {
        GadgetKind::Cbrt => cbrt_scale(form, magnitude, required_class_sign, prec),
        GadgetKind::Trisect => trisect_scale(form, magnitude, required_class_sign, prec),
    }
}

fn cbrt_scale(
    form: &SessionForm,
    r: &BigReal,
    sign: Option<i8>,
    prec: Precision,
) -> Result<BigRational, PlanError> {
    assert!(r.signum() > 0);
    let m = r.magnitude_log2().expect("positive radicand");
    let u = match form {
        SessionForm::Parabolic => return Ok(pow2_rat(-m.div_euclid(3))),
        SessionForm::Central { u } => u,
    };
    let k0 = if u.signum() > 0 || sign.is_none() {
        -m.div_euclid(3)
    } else if sign == Some(1) {
        // r' <= mu/2 with mu = (-u)^(3/2).
        let mu = (-u.clone()).sqrt();
        let mu3 = &(&mu * &mu) * &mu;
        let x = &mu3.mul_pow2(-1) / r;
        x.magnitude_log2().unwrap_or(0).div_euclid(3)
    } else {
        // r' >= 2 mu.
        let mu = (-u.clone()).sqrt();
        let mu3 = &(&mu * &mu) * &mu;
        let x = &mu3.mul_pow2(1) / r;
        let mx = x.magnitude_log2().unwrap_or(0);
        (mx + 1 + 2).div_euclid(3)
    };
    // Verify sign and margin, stepping outward if the estimate sits too
    // close to the degeneracy locus.
    for delta in search_order() {
        let k = k0 + delta;
        let n = pow2_rat(k);
        let n3 = BigReal::from_rational(&(&n * &n * &n), prec);
        let r_prime = r * &n3;
        let t1 = &(&r_prime * &r_prime) / &u.mul_pow2(2);
        let t2 = (u * u).mul_pow2(-2);
        let rhs = &t1 + &t2;
        if accept(&rhs, &t1.abs(), &t2, sign) {
            return Ok(n);
        }
    }
    Err(PlanError::ClassUnreachable)
}

fn trisect_scale(
    form: &SessionForm,
    q: &BigReal,
    sign: Option<i8>,
    prec: Precision,
) -> Result<BigRational, PlanError> {
    let u = match form {
        SessionForm::Parabolic => return Ok(BigRational::one()),
        SessionForm::Central { u } => u,
    };
    if u.signum() > 0 {
        return Ok(BigRational::one());
    }
    if q.is_zero() && sign == Some(-1) {
        return Err(PlanError::ClassUnreachable);
    }
    let three_quarters = BigReal::from_rational(&rat(3, 4), prec);
    for delta in search_order() {
        let c = pow2_rat(delta);
        let cr = BigReal::from_rational(&c, prec);
        let c2 = &cr * &cr;
        let c3 = &c2 * &cr;
        let beta = u + &(&c2 * &three_quarters);
        let qc3 = q * &c3;
        let t1 = (&(&qc3 * &qc3) / u).mul_pow2(-6);
        let t2 = (&beta * &beta).mul_pow2(-2);
        let rhs = &t1 + &t2;
        if accept(&rhs, &t1.abs(), &t2, sign) {
            return Ok(c);
        }
    }
    Err(PlanError::ClassUnreachable)
}

fn accept(rhs: &BigReal, t1: &BigReal, t2: &BigReal, sign: Option<i8>) -> bool {
    if let Some(s) = sign {
        if rhs.signum() != s {
            return false;
        }
    }
    // Margin: at least half the dominant term away from rhs = 0.
    rhs.abs().mul_pow2(1) >= t1.max_val(t2)
}

fn search_order() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=48).flat_map(|k| [-k, k]))
}

/// The Theorem's reduction: the similarity `m` with
/// `apply_similarity(C, m) = gadget`. The compiled program intersects the
/// inverse-transformed circle with the fixed conic and maps the point back
/// through `m`.
pub fn reduce_to_fixed(
    gadget_conic: &RegularConic,
    c_regular: &RegularConic,
    prec: Precision,
) -> Result<Similarity, ConicError> {
    crate::conic::similarity_between(gadget_conic, c_regular, prec)
}
