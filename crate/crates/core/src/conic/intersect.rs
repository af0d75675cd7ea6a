//! Intersections: line/line, line/circle, circle/circle, and circle/conic via
//! a quartic resultant.

use super::{classify, ConicError, ConicImplicit};
use crate::numeric::{BigComplex, BigReal, Poly, Precision};

/// Line through two distinct points.
#[derive(Clone, Debug)]
pub struct Line {
    pub p: BigComplex,
    pub q: BigComplex,
}

/// Circle given by center and a point it passes through.
#[derive(Clone, Debug)]
pub struct Circle {
    pub center: BigComplex,
    pub through: BigComplex,
}

impl Circle {
    pub fn radius_sq(&self) -> BigReal {
        let d = &self.through - &self.center;
        d.norm_sqr()
    }

    /// Implicit coefficients (D, E, F) of `x^2 + y^2 + Dx + Ey + F = 0`.
    pub fn implicit(&self) -> (BigReal, BigReal, BigReal) {
        let d = -&self.center.re.mul_pow2(1);
        let e = -&self.center.im.mul_pow2(1);
        let f = &self.center.norm_sqr() - &self.radius_sq();
        (d, e, f)
    }

    pub fn residual(&self, p: &BigComplex) -> BigReal {
        let prec = p.prec();
        let (d, e, f) = self.implicit();
        let v = &(&(&(&p.norm_sqr() + &(&d * &p.re)) + &(&e * &p.im)) + &f).abs();
        let one = BigReal::one(prec);
        let m = one.max_val(&p.re.abs()).max_val(&p.im.abs());
        let scale = one
            .max_val(&d.abs())
            .max_val(&e.abs())
            .max_val(&f.abs());
        v / &(&(&m * &m) * &scale)
    }
}

#[derive(Clone, Debug)]
pub enum BasicObject {
    Line(Line),
    Circle(Circle),
}

impl Line {
    pub fn direction(&self) -> BigComplex {
        &self.q - &self.p
    }

    /// Normalized distance of a point from the (infinite) line.
    pub fn residual(&self, z: &BigComplex) -> BigReal {
        let d = self.direction();
        let w = z - &self.p;
        let cross = (&(&d.re * &w.im) - &(&d.im * &w.re)).abs();
        let prec = z.prec();
        let m = BigReal::one(prec).max_val(&z.re.abs()).max_val(&z.im.abs());
        &cross / &(&d.abs() * &m)
    }
}

fn cross2(u: &BigComplex, v: &BigComplex) -> BigReal {
    &(&u.re * &v.im) - &(&u.im * &v.re)
}

fn dot2(u: &BigComplex, v: &BigComplex) -> BigReal {
    &(&u.re * &v.re) + &(&u.im * &v.im)
}

fn sort_points(points: &mut [BigComplex]) {
    points.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
}

/// All real intersection points of two lines/circles, each satisfying both
/// object equations to within tau; 0-2 points in deterministic (lexicographic)
/// order. Identical objects are an error, disjoint ones give an empty list.
pub fn intersect_basic(
    a: &BasicObject,
    b: &BasicObject,
    prec: Precision,
) -> Result<Vec<BigComplex>, ConicError> {
    let tau = prec.tau();
    check_nondegenerate(a, &tau)?;
    check_nondegenerate(b, &tau)?;
    let mut pts = match (a, b) {
        (BasicObject::Line(l1), BasicObject::Line(l2)) => line_line(l1, l2, prec)?,
        (BasicObject::Line(l), BasicObject::Circle(c)) => line_circle(l, c, prec)?,
        (BasicObject::Circle(c), BasicObject::Line(l)) => line_circle(l, c, prec)?,
        (BasicObject::Circle(c1), BasicObject::Circle(c2)) => circle_circle(c1, c2, prec)?,
    };
    sort_points(&mut pts);
    Ok(pts)
}

fn check_nondegenerate(obj: &BasicObject, tau: &BigReal) -> Result<(), ConicError> {
    match obj {
        BasicObject::Line(l) => {
            let scale = BigReal::one(l.p.prec())
                .max_val(&l.p.abs())
                .max_val(&l.q.abs());
            if l.direction().abs() <= tau * &scale {
                return Err(ConicError::DegenerateObject);
            }
        }
        BasicObject::Circle(c) => {
            let scale = BigReal::one(c.center.prec())
                .max_val(&c.center.abs())
                .max_val(&c.through.abs());
            if (&c.through - &c.center).abs() <= tau * &scale {
                return Err(ConicError::DegenerateObject);
            }
        }
    }
    Ok(())
}

fn line_line(l1: &Line, l2: &Line, prec: Precision) -> Result<Vec<BigComplex>, ConicError> {
    let tau = prec.tau();
    let d1 = l1.direction();
    let d2 = l2.direction();
    let cross = cross2(&d1, &d2);
    if cross.abs() <= &(&tau * &d1.abs()) * &d2.abs() {
        // Parallel; coincident iff l2's base point sits on l1.
        if l1.residual(&l2.p) <= tau {
            return Err(ConicError::CoincidentObjects);
        }
        return Ok(vec![]);
    }
    let w = &l2.p - &l1.p;
    let t = &cross2(&w, &d2) / &cross;
    Ok(vec![&l1.p + &d1.scale(&t)])
}

fn line_circle(l: &Line, c: &Circle, prec: Precision) -> Result<Vec<BigComplex>, ConicError> {
    let tau = prec.tau();
    let d = l.direction();
    let w = &l.p - &c.center;
    let aa = d.norm_sqr();
    let bb = dot2(&d, &w).mul_pow2(1);
    let cc = &w.norm_sqr() - &c.radius_sq();
    let disc = &(&bb * &bb) - &(&aa * &cc).mul_pow2(2);
    let scale = {
        let m = aa.abs().max_val(&bb.abs()).max_val(&cc.abs());
        &m * &m
    };
    let thr = &tau * &scale;
    if disc < -&thr {
        return Ok(vec![]);
    }
    if disc.abs() <= thr {
        // Tangency: single point.
        let t = -&(&bb / &aa.mul_pow2(1));
        return Ok(vec![&l.p + &d.scale(&t)]);
    }
    let root = disc.sqrt();
    let twice_a = aa.mul_pow2(1);
    let t1 = &(-&bb - &root) / &twice_a;
    let t2 = &(-&bb + &root) / &twice_a;
    Ok(vec![&l.p + &d.scale(&t1), &l.p + &d.scale(&t2)])
}

fn circle_circle(
    c1: &Circle,
    c2: &Circle,
    prec: Precision,
) -> Result<Vec<BigComplex>, ConicError> {
    let tau = prec.tau();
    let sep = &c2.center - &c1.center;
    let scale = BigReal::one(prec)
        .max_val(&c1.center.abs())
        .max_val(&c2.center.abs())
        .max_val(&c1.through.abs());
    if sep.abs() <= &tau * &scale {
        let r1 = c1.radius_sq();
        let r2 = c2.radius_sq();
        if (&r1 - &r2).abs() <= &tau * &r1.max_val(&r2) {
            return Err(ConicError::CoincidentObjects);
        }
        return Ok(vec![]); // concentric, distinct radii
    }
    // Radical line: foot point at c1 + lambda * sep, direction i * sep.
    let d_sq = sep.norm_sqr();
    let lambda_num = &(&c1.radius_sq() - &c2.radius_sq()) + &d_sq;
    let lambda = &lambda_num / &d_sq.mul_pow2(1);
    let foot = &c1.center + &sep.scale(&lambda);
    let dir = sep.mul_i();
    let line = Line {
        p: foot.clone(),
        q: &foot + &dir,
    };
    line_circle(&line, c1, prec)
}

/// Intersect a circle with a non-circular, non-degenerate conic by
/// eliminating `y` through the resultant of the two quadratics (the circle is
/// monic in `y`, so this direction never degenerates), then back-substituting
/// on the circle and keeping the candidates that satisfy the conic. At most
/// four points, with multiplicity, in lexicographic order.
pub fn intersect_circle_conic(
    circle: &Circle,
    k: &ConicImplicit,
    prec: Precision,
) -> Result<Vec<BigComplex>, ConicError> {
    let tau = prec.tau();
    check_nondegenerate(&BasicObject::Circle(circle.clone()), &tau)?;
    if !classify(k, prec).is_valid_fixed() {
        return Err(ConicError::NotAConic);
    }
    let (cd, ce, cf) = circle.implicit();

    // Circle as y^2 + p1*y + p0(x), conic as q2*y^2 + q1(x)*y + q0(x).
    let one = BigReal::one(prec);
    let p1 = Poly::new(vec![ce.clone()]);
    let p0 = Poly::new(vec![cf.clone(), cd.clone(), one.clone()]);
    let q2 = Poly::new(vec![k.c.clone()]);
    let q1 = Poly::new(vec![k.e.clone(), k.b.clone()]);
    let q0 = Poly::new(vec![k.f.clone(), k.d.clone(), k.a.clone()]);

    // Res_y = (q0 - p0 q2)^2 - (q1 - p1 q2)(p1 q0 - p0 q1)   [p2 = 1]
    let t1 = q0.sub(&p0.mul(&q2));
    let t2 = q1.sub(&p1.mul(&q2));
    let t3 = p1.mul(&q0).sub(&p0.mul(&q1));
    let res = t1.mul(&t1).sub(&t2.mul(&t3));

    let xs = match res.real_roots(prec) {
        Ok(xs) => xs,
        Err(crate::numeric::RootError::ZeroPolynomial) => {
            return Err(ConicError::EliminationDegenerate)
        }
        Err(e) => return Err(ConicError::Roots(e)),
    };

    // Cluster x-values: roots of multiplicity m scatter by ~tau^(2/m) around
    // the true value, so sqrt(tau) separates clusters from distinct roots.
    let group_tol = BigReal::pow2(-i64::from(prec.bits()) / 4, prec);
    let mut clusters: Vec<(BigReal, usize)> = Vec::new();
    for x in xs {
        let joins = clusters.last().is_some_and(|(cx, _)| {
            (&x - cx).abs() <= &group_tol * &BigReal::one(prec).max_val(&x.abs())
        });
        if joins {
            clusters.last_mut().unwrap().1 += 1;
        } else {
            clusters.push((x, 1));
        }
    }

    let resid_tol = &tau * &BigReal::from_i64(16, prec);
    let mut points: Vec<BigComplex> = Vec::new();
    for (x, mult) in clusters {
        // y on the circle: y^2 + ce y + (x^2 + cd x + cf) = 0.
        let c0 = &(&(&x * &x) + &(&cd * &x)) + &cf;
        let disc = &(&ce * &ce) - &c0.mul_pow2(2);
        // The tangency window must absorb the displacement of clustered
        // resultant roots (up to ~tau), which perturbs disc by a small
        // multiple of tau; configurations inside it are unresolvable
        // downstream anyway (the selection guard is 2*sqrt(tau)).
        let dscale = {
            let m = BigReal::one(prec).max_val(&ce.abs()).max_val(&c0.abs());
            &(&(&m * &m) * &tau) * &BigReal::from_i64(64, prec)
        };
        if disc < -&dscale {
            continue; // complex y: no real point over this x
        }
        let mut ys = Vec::new();
        if disc.abs() <= dscale {
            ys.push(-&ce.mul_pow2(-1));
        } else {
            let root = disc.sqrt();
            ys.push((-&ce - &root).mul_pow2(-1));
            ys.push((-&ce + &root).mul_pow2(-1));
        }
        // Keep the candidates that also satisfy the conic.
        let mut valid: Vec<(BigReal, BigComplex)> = ys
            .into_iter()
            .map(|y| {
                let p = BigComplex::new(x.clone(), y);
                (k.residual(&p), p)
            })
            .filter(|(r, _)| *r <= resid_tol)
            .collect();
        valid.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        match valid.len() {
            0 => continue,
            1 => {
                for _ in 0..mult {
                    points.push(valid[0].1.clone());
                }
            }
            _ => {
                // Two shared-x points force an even resultant multiplicity;
                // distribute it across both.
                let first = mult.div_ceil(2);
                for _ in 0..first {
                    points.push(valid[0].1.clone());
                }
                for _ in 0..mult - first {
                    points.push(valid[1].1.clone());
                }
            }
        }
    }
    assert!(points.len() <= 4, "Bezout bound exceeded");
    sort_points(&mut points);
    Ok(points)
}
