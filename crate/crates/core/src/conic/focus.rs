//! Focus/directrix descriptions and their exchange with implicit form.

use super::{classify, to_regular, ConicClass, ConicError, ConicImplicit, RegularConic};
use crate::numeric::{BigComplex, BigReal, Precision};

/// A conic as focus, directrix line (`n . p = c` with unit normal `n`) and
/// eccentricity.
#[derive(Clone, Debug)]
pub struct FocusDirectrix {
    pub focus: (BigReal, BigReal),
    pub dir_n: (BigReal, BigReal),
    pub dir_c: BigReal,
    pub ecc: BigReal,
}

impl FocusDirectrix {
    pub fn prec(&self) -> Precision {
        self.focus
            .0
            .prec()
            .min(self.focus.1.prec())
            .min(self.dir_n.0.prec())
            .min(self.dir_n.1.prec())
            .min(self.dir_c.prec())
            .min(self.ecc.prec())
    }

    /// Distance from the focus to the directrix (after normal normalization).
    pub fn focus_directrix_gap(&self) -> BigReal {
        let n_len = BigComplex::new(self.dir_n.0.clone(), self.dir_n.1.clone()).abs();
        let dot = &(&self.dir_n.0 * &self.focus.0) + &(&self.dir_n.1 * &self.focus.1);
        &(&dot - &self.dir_c).abs() / &n_len
    }
}

/// Expand `dist(p, focus)^2 = ecc^2 * dist(p, directrix)^2` into implicit
/// coefficients; they are rational functions of the inputs.
pub fn focus_directrix_to_implicit(fd: &FocusDirectrix) -> Result<ConicImplicit, ConicError> {
    let prec = fd.prec();
    let tau = prec.tau();
    let n_len_sq = &(&fd.dir_n.0 * &fd.dir_n.0) + &(&fd.dir_n.1 * &fd.dir_n.1);
    if n_len_sq.is_zero() || fd.ecc.signum() <= 0 {
        return Err(ConicError::DegenerateInput);
    }
    // Normalize the directrix so n is unit: divide both n and c by |n|.
    let n_len = n_len_sq.sqrt();
    let nx = &fd.dir_n.0 / &n_len;
    let ny = &fd.dir_n.1 / &n_len;
    let c0 = &fd.dir_c / &n_len;
    let (fx, fy) = (&fd.focus.0, &fd.focus.1);

    let gap = &(&(&nx * fx) + &(&ny * fy)) - &c0;
    let fscale = BigReal::one(prec)
        .max_val(&fx.abs())
        .max_val(&fy.abs())
        .max_val(&c0.abs());
    if gap.abs() <= &tau * &fscale {
        return Err(ConicError::DegenerateInput);
    }

    let e2 = &fd.ecc * &fd.ecc;
    let one = BigReal::one(prec);
    let a = &one - &(&e2 * &(&nx * &nx));
    let b = -&(&e2 * &(&nx * &ny)).mul_pow2(1);
    let c = &one - &(&e2 * &(&ny * &ny));
    let d = &(&e2 * &(&nx * &c0)).mul_pow2(1) - &fx.mul_pow2(1);
    let e = &(&e2 * &(&ny * &c0)).mul_pow2(1) - &fy.mul_pow2(1);
    let f = &(&(fx * fx) + &(fy * fy)) - &(&e2 * &(&c0 * &c0));
    Ok(ConicImplicit::new(a, b, c, d, e, f))
}

/// Recover focus/directrix pairs from an implicit conic: one pair for a
/// parabola, two for an ellipse or hyperbola. Each returned pair satisfies
/// `focus_directrix_to_implicit(fd) ~ k` up to scale.
pub fn implicit_to_focus_directrix(
    k: &ConicImplicit,
    prec: Precision,
) -> Result<Vec<FocusDirectrix>, ConicError> {
    match classify(k, prec) {
        ConicClass::Circle => return Err(ConicError::CircleHasNoDirectrix),
        cls if !cls.is_valid_fixed() => return Err(ConicError::NotAConic),
        _ => {}
    }
    let (frame, reg) = to_regular(k, prec)?;
    let one = BigReal::one(prec);
    let zero = BigReal::zero(prec);

    // Build pairs in the regular frame as (focus, n, c, ecc).
    let mut pairs: Vec<((BigReal, BigReal), (BigReal, BigReal), BigReal, BigReal)> = Vec::new();
    match &reg {
        RegularConic::Parabola { lambda, a, b } => {
            // Vertex (b, a), focal distance 1/(4 lambda).
            let p = &one / &lambda.mul_pow2(2);
            pairs.push((
                (b + &p, a.clone()),
                (one.clone(), zero.clone()),
                b - &p,
                one.clone(),
            ));
        }
        RegularConic::Central { u, center, rhs } => {
            let (cx, cy) = center;
            let ecc = super::true_eccentricity(&reg);
            if u.signum() > 0 {
                // Ellipse, major axis along x.
                let ax = (&(rhs / u)).sqrt();
                let cf = &ax * &ecc;
                let dirx = &ax / &ecc;
                for sgn in [1i64, -1] {
                    let s = BigReal::from_i64(sgn, prec);
                    pairs.push((
                        (cx + &(&s * &cf), cy.clone()),
                        (one.clone(), zero.clone()),
                        cx + &(&s * &dirx),
                        ecc.clone(),
                    ));
                }
            } else if rhs.signum() < 0 {
                // Hyperbola, transverse axis along x.
                let at = (&(rhs / u)).sqrt();
                let cf = &at * &ecc;
                let dirx = &at / &ecc;
                for sgn in [1i64, -1] {
                    let s = BigReal::from_i64(sgn, prec);
                    pairs.push((
                        (cx + &(&s * &cf), cy.clone()),
                        (one.clone(), zero.clone()),
                        cx + &(&s * &dirx),
                        ecc.clone(),
                    ));
                }
            } else {
                // Hyperbola, transverse axis along y.
                let at = rhs.sqrt();
                let cf = &at * &ecc;
                let diry = &at / &ecc;
                for sgn in [1i64, -1] {
                    let s = BigReal::from_i64(sgn, prec);
                    pairs.push((
                        (cx.clone(), cy + &(&s * &cf)),
                        (zero.clone(), one.clone()),
                        cy + &(&s * &diry),
                        ecc.clone(),
                    ));
                }
            }
        }
    }

    // Rotate back into world coordinates: points and normals rotate, the
    // offset c is rotation-invariant.
    Ok(pairs
        .into_iter()
        .map(|(focus, n, c, ecc)| {
            let fw = frame.apply(&BigComplex::new(focus.0, focus.1));
            let nw = frame.apply(&BigComplex::new(n.0, n.1));
            FocusDirectrix {
                focus: (fw.re, fw.im),
                dir_n: (nw.re, nw.im),
                dir_c: c,
                ecc,
            }
        })
        .collect())
}
