//! Regular normal forms and the rotation that produces them.

use num_rational::BigRational;

use super::{classify, ConicClass, ConicError, ConicImplicit, Frame, RegularConic};
use crate::numeric::{BigComplex, BigReal, Precision};

/// The base rotation (smallest |t|) that kills the xy term:
/// `cot(2t) = (a - c)/b`, realized algebraically through
/// `tan t = B / (1 + sqrt(1 + B^2))` with `B = b/(a - c)`.
pub(super) fn axis_frame(k: &ConicImplicit, prec: Precision) -> Frame {
    let tau = prec.tau();
    let scale = k.a.abs().max_val(&k.b.abs()).max_val(&k.c.abs());
    if k.b.abs() <= &tau * &scale {
        return Frame::identity(prec);
    }
    let one = BigReal::one(prec);
    let diff = &k.a - &k.c;
    if diff.abs() <= &tau * &scale {
        // 45 degrees.
        let h = BigReal::from_rational(&BigRational::new(1.into(), 2.into()), prec).sqrt();
        return Frame::new(h.clone(), h);
    }
    let big_b = &k.b / &diff;
    let t = &big_b / &(&one + &(&one + &(&big_b * &big_b)).sqrt());
    let cos = (&one / &(&one + &(&t * &t))).sqrt();
    let sin = &t * &cos;
    Frame::new(cos, sin)
}

/// Rotate to a regular representative: the returned frame satisfies
/// `regular_to_implicit(reg, frame) ~ k` up to scale. The central form is
/// normalized so |u| <= 1 (quarter-turning when necessary), ties at |u| = 1
/// prefer `rhs > 0`, and parabolas open along the x axis.
pub fn to_regular(
    k: &ConicImplicit,
    prec: Precision,
) -> Result<(Frame, RegularConic), ConicError> {
    let class = classify(k, prec);
    if !class.is_valid_fixed() {
        return Err(ConicError::NotAConic);
    }
    let tau = prec.tau();
    let base = axis_frame(k, prec);

    let mut frame = base;
    let mut r = k.derotated(&frame);
    if class == ConicClass::Parabola {
        // Exactly one of a, c survives; put the surviving one on y^2.
        if r.a.abs() > r.c.abs() {
            frame = frame.quarter_turn();
            r = k.derotated(&frame);
        }
        // c y^2 + d x + e y + f = 0, d != 0 for a non-degenerate parabola.
        let scale = r.coeff_scale();
        if r.d.abs() <= &tau * &scale {
            return Err(ConicError::NotAConic);
        }
        let lambda = -&(&r.c / &r.d);
        let a = -&(&r.e / &r.c.mul_pow2(1));
        let b = &(&(&(&r.e * &r.e) / &r.c.mul_pow2(2)) - &r.f) / &r.d;
        return Ok((frame, RegularConic::Parabola { lambda, a, b }));
    }

    // Central: normalize the y^2 coefficient to 1 with |u| <= 1.
    if r.a.abs() > r.c.abs() {
        frame = frame.quarter_turn();
        r = k.derotated(&frame);
    }
    let mut reg = central_from_rotated(&r, prec);
    // Rectangular-hyperbola tie (|u| = 1): prefer the rhs > 0 orientation.
    let tie = {
        let RegularConic::Central { u, rhs, .. } = &reg else {
            unreachable!()
        };
        (u.abs() - BigReal::one(prec)).abs() <= tau && rhs.signum() < 0
    };
    if tie {
        frame = frame.quarter_turn();
        r = k.derotated(&frame);
        reg = central_from_rotated(&r, prec);
    }
    Ok((frame, reg))
}

fn central_from_rotated(r: &ConicImplicit, prec: Precision) -> RegularConic {
    let u = &r.a / &r.c;
    let dd = &r.d / &r.c;
    let ee = &r.e / &r.c;
    let ff = &r.f / &r.c;
    let cx = -&(&dd / &u.mul_pow2(1));
    let cy = -&ee.mul_pow2(-1);
    let rhs = &(&(&(&dd * &dd) / &u.mul_pow2(2)) + &(&ee * &ee).mul_pow2(-2)) - &ff;
    let _ = prec;
    RegularConic::Central {
        u,
        center: (cx, cy),
        rhs,
    }
}

/// Expand a regular form and rotate it into place.
pub fn regular_to_implicit(r: &RegularConic, frame: &Frame) -> ConicImplicit {
    let prec = r.prec();
    let axis_aligned = match r {
        RegularConic::Central { u, center, rhs } => {
            let (cx, cy) = center;
            ConicImplicit::new(
                u.clone(),
                BigReal::zero(prec),
                BigReal::one(prec),
                -&(u * cx).mul_pow2(1),
                -&cy.mul_pow2(1),
                &(&(&(u * cx) * cx) + &(cy * cy)) - rhs,
            )
        }
        RegularConic::Parabola { lambda, a, b } => ConicImplicit::new(
            BigReal::zero(prec),
            BigReal::zero(prec),
            lambda.clone(),
            -&BigReal::one(prec),
            -&(lambda * a).mul_pow2(1),
            &(&(lambda * a) * a) + b,
        ),
    };
    axis_aligned.rotated(frame)
}

/// True metric eccentricity of a regular conic. For the hyperbola class with
/// `rhs > 0` (transverse axis along y) this differs from the form parameter:
/// `e = sqrt(1 + 1/(-u))`.
pub fn true_eccentricity(r: &RegularConic) -> BigReal {
    match r {
        RegularConic::Parabola { lambda, .. } => BigReal::one(lambda.prec()),
        RegularConic::Central { u, rhs, .. } => {
            let prec = u.prec();
            let one = BigReal::one(prec);
            if u.signum() < 0 && rhs.signum() > 0 {
                (&one + &(&one / &-u.clone())).sqrt()
            } else {
                (&one - u).sqrt()
            }
        }
    }
}

/// Points exactly on a regular conic via rational parametrizations (no
/// trigonometry): Weierstrass circle points for ellipses, secant/tangent
/// pairs for hyperbolas, and direct evaluation for parabolas.
pub fn sample_regular(r: &RegularConic, count: usize, prec: Precision) -> Vec<BigComplex> {
    let mut out = Vec::with_capacity(count);
    let one = BigReal::one(prec);
    match r {
        RegularConic::Central { u, center, rhs } => {
            let (cx, cy) = center;
            if u.signum() > 0 && rhs.signum() > 0 {
                let ax = (&(rhs / u)).sqrt();
                let ay = rhs.sqrt();
                for k in 0..count {
                    let w = BigReal::from_rational(
                        &BigRational::new((k as i64 * 7 - 3 * count as i64).into(), (count as i64 + 1).into()),
                        prec,
                    );
                    let den = &one + &(&w * &w);
                    let cosw = &(&one - &(&w * &w)) / &den;
                    let sinw = &w.mul_pow2(1) / &den;
                    out.push(BigComplex::new(cx + &(&ax * &cosw), cy + &(&ay * &sinw)));
                }
            } else if u.signum() < 0 {
                // u < 0: transverse axis along y for rhs > 0, along x for rhs < 0.
                let (at, bt, along_y) = if rhs.signum() > 0 {
                    (rhs.sqrt(), (&(rhs / &-u.clone())).sqrt(), true)
                } else {
                    let m = -rhs.clone();
                    ((&(&m / &-u.clone())).sqrt(), m.sqrt(), false)
                };
                for k in 0..count {
                    // w in (-1, 1) \ {0} keeps sec finite.
                    let num = (k as i64 % 17) - 8;
                    let w = BigReal::from_rational(&BigRational::new(num.into(), 19.into()), prec);
                    let den = &one - &(&w * &w);
                    let sec = &(&one + &(&w * &w)) / &den;
                    let tan = &w.mul_pow2(1) / &den;
                    let sec = if k % 2 == 0 { sec } else { -sec };
                    if along_y {
                        out.push(BigComplex::new(cx + &(&bt * &tan), cy + &(&at * &sec)));
                    } else {
                        out.push(BigComplex::new(cx + &(&at * &sec), cy + &(&bt * &tan)));
                    }
                }
            }
        }
        RegularConic::Parabola { lambda, a, b } => {
            for k in 0..count {
                let w = BigReal::from_rational(
                    &BigRational::new((k as i64 * 5 - 2 * count as i64).into(), (count as i64 + 2).into()),
                    prec,
                );
                let dy = &w - a;
                let x = &(lambda * &(&dy * &dy)) + b;
                out.push(BigComplex::new(x, w));
            }
        }
    }
    out
}
