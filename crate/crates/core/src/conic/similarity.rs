//! Similarities `p -> s*p + t` with real `s != 0` (a negative `s` composes the
//! magnification with a point reflection) and their action on conics.

use super::{ConicError, ConicImplicit, RegularConic};
use crate::numeric::{BigComplex, BigReal, Precision};

#[derive(Clone, Debug)]
pub struct Similarity {
    pub s: BigReal,
    pub t: (BigReal, BigReal),
}

impl Similarity {
    pub fn identity(prec: Precision) -> Self {
        Similarity {
            s: BigReal::one(prec),
            t: (BigReal::zero(prec), BigReal::zero(prec)),
        }
    }

    pub fn apply(&self, p: &BigComplex) -> BigComplex {
        BigComplex::new(&(&self.s * &p.re) + &self.t.0, &(&self.s * &p.im) + &self.t.1)
    }

    pub fn apply_inverse(&self, p: &BigComplex) -> BigComplex {
        BigComplex::new(&(&p.re - &self.t.0) / &self.s, &(&p.im - &self.t.1) / &self.s)
    }
}

/// The image conic `{ s*p + t : p on k }`: substitute `p -> (p - t)/s` and
/// clear denominators by `s^2`.
pub fn apply_similarity(k: &ConicImplicit, m: &Similarity) -> ConicImplicit {
    assert!(!m.s.is_zero(), "similarity with zero magnification");
    let (tx, ty) = (&m.t.0, &m.t.1);
    let s = &m.s;
    let d2 = &(&(s * &k.d) - &(&k.a * tx).mul_pow2(1)) - &(&k.b * ty);
    let e2 = &(&(s * &k.e) - &(&k.b * tx)) - &(&k.c * ty).mul_pow2(1);
    let f2 = &(&(&(&(&(&k.a * &(tx * tx)) + &(&k.b * &(tx * ty))) + &(&k.c * &(ty * ty)))
        - &(&(s * &k.d) * tx))
        - &(&(s * &k.e) * ty))
        + &(&(s * s) * &k.f);
    ConicImplicit::new(k.a.clone(), k.b.clone(), k.c.clone(), d2, e2, f2)
}

/// The similarity mapping `fixed` onto `target` (regular forms, same
/// variant). Central conics must share the form parameter and orientation
/// class; any two parabolas are similar, with the sign of `s` carrying the
/// orientation flip.
pub fn similarity_between(
    target: &RegularConic,
    fixed: &RegularConic,
    prec: Precision,
) -> Result<Similarity, ConicError> {
    let tau = prec.tau();
    match (target, fixed) {
        (
            RegularConic::Central {
                u: ut,
                center: ct,
                rhs: rt,
            },
            RegularConic::Central {
                u: uf,
                center: cf,
                rhs: rf,
            },
        ) => {
            let uscale = BigReal::one(prec).max_val(&ut.abs());
            if (ut - uf).abs() > &tau * &uscale {
                return Err(ConicError::FormParameterMismatch);
            }
            if rt.signum() != rf.signum() || rt.signum() == 0 {
                return Err(ConicError::OrientationClassMismatch);
            }
            let s = (&(rt / rf)).sqrt();
            let t = (&ct.0 - &(&s * &cf.0), &ct.1 - &(&s * &cf.1));
            Ok(Similarity { s, t })
        }
        (
            RegularConic::Parabola {
                lambda: lt,
                a: at,
                b: bt,
            },
            RegularConic::Parabola {
                lambda: lf,
                a: af,
                b: bf,
            },
        ) => {
            let s = lf / lt;
            let t = (bt - &(&s * bf), at - &(&s * af));
            Ok(Similarity { s, t })
        }
        _ => Err(ConicError::FormParameterMismatch),
    }
}
