use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::numeric::{BigComplex, BigReal, Precision};

fn p(bits: u32) -> Precision {
    Precision::new(bits)
}

fn conic(coeffs: [i64; 6], prec: Precision) -> ConicImplicit {
    ConicImplicit::from_i64(coeffs, prec)
}

fn br(v: f64, prec: Precision) -> BigReal {
    BigReal::from_f64(v, prec)
}

fn pt(x: f64, y: f64, prec: Precision) -> BigComplex {
    BigComplex::new(br(x, prec), br(y, prec))
}

#[test]
fn classify_examples() {
    let prec = p(128);
    assert_eq!(classify(&conic([1, 0, 4, 0, 0, -4], prec), prec), ConicClass::Ellipse);
    assert_eq!(classify(&conic([0, 1, 0, 0, 0, -1], prec), prec), ConicClass::Hyperbola);
    assert_eq!(classify(&conic([1, 0, 1, 0, 0, 1], prec), prec), ConicClass::Empty);
    assert_eq!(classify(&conic([1, 0, 1, 0, 0, -1], prec), prec), ConicClass::Circle);
    assert_eq!(classify(&conic([0, 0, 1, -1, 0, 0], prec), prec), ConicClass::Parabola);
    assert_eq!(classify(&conic([1, 0, -1, 0, 0, 0], prec), prec), ConicClass::DegenerateLines);
    assert_eq!(classify(&conic([1, 0, 1, 0, 0, 0], prec), prec), ConicClass::DegeneratePoint);
    assert_eq!(classify(&conic([1, 0, 0, 0, 0, -1], prec), prec), ConicClass::DegenerateLines);
    assert_eq!(classify(&conic([1, 0, 0, 0, 0, 1], prec), prec), ConicClass::Empty);
    assert_eq!(classify(&conic([1, 0, 4, 0, 0, 4], prec), prec), ConicClass::Empty);
}

#[test]
fn to_regular_axis_aligned_ellipse() {
    let prec = p(128);
    let tol = BigReal::pow2(-100, prec);
    let (frame, reg) = to_regular(&conic([1, 0, 4, 0, 0, -4], prec), prec).unwrap();
    assert!(frame.is_identity(&tol));
    let RegularConic::Central { u, center, rhs } = reg else {
        panic!("expected central")
    };
    assert!(u.approx_eq(&br(0.25, prec), &tol));
    assert!(center.0.approx_zero(&tol) && center.1.approx_zero(&tol));
    assert!(rhs.approx_eq(&BigReal::one(prec), &tol));
}

#[test]
fn to_regular_rotated_hyperbola() {
    let prec = p(128);
    let tol = BigReal::pow2(-100, prec);
    let k = conic([0, 1, 0, 0, 0, -1], prec); // xy = 1
    let (frame, reg) = to_regular(&k, prec).unwrap();
    // 45 degrees plus the tie-breaking quarter turn = 135 degrees.
    let h = br(0.5, prec).sqrt();
    assert!(frame.cos.approx_eq(&-&h, &tol) && frame.sin.approx_eq(&h, &tol));
    let RegularConic::Central { u, rhs, center } = &reg else {
        panic!("expected central")
    };
    assert!(u.approx_eq(&BigReal::from_i64(-1, prec), &tol));
    assert!(rhs.approx_eq(&BigReal::from_i64(2, prec), &tol), "tie prefers rhs > 0");
    assert!(center.0.approx_zero(&tol) && center.1.approx_zero(&tol));
    // Round trip reproduces the conic up to scale.
    let back = regular_to_implicit(&reg, &frame);
    assert_conics_equal(&k, &back, prec);
}

#[test]
fn to_regular_parabola() {
    let prec = p(128);
    let tol = BigReal::pow2(-100, prec);
    let (frame, reg) = to_regular(&conic([0, 0, 1, -1, 0, 0], prec), prec).unwrap();
    assert!(frame.is_identity(&tol));
    let RegularConic::Parabola { lambda, a, b } = reg else {
        panic!("expected parabola")
    };
    assert!(lambda.approx_eq(&BigReal::one(prec), &tol));
    assert!(a.approx_zero(&tol) && b.approx_zero(&tol));
}

#[test]
fn to_regular_quarter_turn_normalizes_u() {
    // 4x^2 + y^2 = 4 has its long axis along y; a quarter turn brings u to 1/4.
    let prec = p(128);
    let tol = BigReal::pow2(-100, prec);
    let k = conic([4, 0, 1, 0, 0, -4], prec);
    let (frame, reg) = to_regular(&k, prec).unwrap();
    let RegularConic::Central { u, .. } = &reg else {
        panic!()
    };
    assert!(u.approx_eq(&br(0.25, prec), &tol));
    assert_conics_equal(&k, &regular_to_implicit(&reg, &frame), prec);
}

#[test]
fn regular_to_implicit_examples() {
    let prec = p(128);
    let tol = BigReal::pow2(-100, prec);
    let central = RegularConic::Central {
        u: br(0.75, prec),
        center: (BigReal::zero(prec), BigReal::zero(prec)),
        rhs: BigReal::one(prec),
    };
    let k = regular_to_implicit(&central, &Frame::identity(prec));
    for (got, want) in k.coeffs().into_iter().zip([0.75, 0.0, 1.0, 0.0, 0.0, -1.0]) {
        assert!(got.approx_eq(&br(want, prec), &tol));
    }

    let para = RegularConic::Parabola {
        lambda: br(2.0, prec),
        a: BigReal::one(prec),
        b: BigReal::zero(prec),
    };
    let k = regular_to_implicit(&para, &Frame::identity(prec));
    for (got, want) in k.coeffs().into_iter().zip([0.0, 0.0, 2.0, -1.0, -4.0, 2.0]) {
        assert!(got.approx_eq(&br(want, prec), &tol));
    }
}

#[test]
fn true_eccentricity_examples() {
    let prec = p(128);
    let tol = BigReal::pow2(-100, prec);
    let e = true_eccentricity(&RegularConic::Central {
        u: br(0.25, prec),
        center: (BigReal::zero(prec), BigReal::zero(prec)),
        rhs: BigReal::one(prec),
    });
    assert!(e.approx_eq(&br(3.0, prec).sqrt().mul_pow2(-1), &tol)); // sqrt(3)/2

    let e = true_eccentricity(&RegularConic::Parabola {
        lambda: br(2.0, prec),
        a: BigReal::zero(prec),
        b: BigReal::zero(prec),
    });
    assert!(e.approx_eq(&BigReal::one(prec), &tol));

    for rhs in [2.0, -2.0] {
        let e = true_eccentricity(&RegularConic::Central {
            u: br(-1.0, prec),
            center: (BigReal::zero(prec), BigReal::zero(prec)),
            rhs: br(rhs, prec),
        });
        assert!(e.approx_eq(&br(2.0, prec).sqrt(), &tol), "rectangular hyperbola");
    }
}

fn assert_conics_equal(a: &ConicImplicit, b: &ConicImplicit, prec: Precision) {
    // Normalize both by their coefficient at the index where `a` is largest,
    // so scale-equivalent conics (including negated ones) compare equal.
    let tau = prec.tau();
    let idx = (0..6)
        .max_by(|&i, &j| {
            a.coeffs()[i]
                .abs()
                .partial_cmp(&a.coeffs()[j].abs())
                .unwrap()
        })
        .unwrap();
    let sa = a.coeffs()[idx].clone();
    let sb = b.coeffs()[idx].clone();
    assert!(!sb.is_zero(), "pivot coefficient vanishes in the comparison");
    for (ca, cb) in a.coeffs().into_iter().zip(b.coeffs()) {
        let na = ca / &sa;
        let nb = cb / &sb;
        assert!(
            na.approx_eq(&nb, &tau),
            "coefficient mismatch: {} vs {}",
            na.to_f64(),
            nb.to_f64()
        );
    }
}

#[test]
fn regular_round_trip_random() {
    let prec = p(128);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for iter in 0..500 {
        let reg = random_regular(&mut rng, prec);
        let frame = random_frame(&mut rng, prec);
        let k = regular_to_implicit(&reg, &frame);
        let (f2, r2) = to_regular(&k, prec)
            .unwrap_or_else(|e| panic!("iteration {iter}: {e} for {reg:?}"));
        let back = regular_to_implicit(&r2, &f2);
        assert_conics_equal(&k, &back, prec);
    }
}

fn random_regular(rng: &mut ChaCha8Rng, prec: Precision) -> RegularConic {
    if rng.gen_bool(0.3) {
        let lambda = loop {
            let l: f64 = rng.gen_range(-3.0..3.0);
            if l.abs() > 0.05 {
                break l;
            }
        };
        RegularConic::Parabola {
            lambda: br(lambda, prec),
            a: br(rng.gen_range(-5.0..5.0), prec),
            b: br(rng.gen_range(-5.0..5.0), prec),
        }
    } else {
        // |u| in (0.05, 0.95): safely away from circle, parabola and the
        // rectangular tie.
        let mag = rng.gen_range(0.05..0.95);
        let u = if rng.gen_bool(0.5) { mag } else { -mag };
        let rhs = if u > 0.0 {
            rng.gen_range(0.1..4.0)
        } else if rng.gen_bool(0.5) {
            rng.gen_range(0.1..4.0)
        } else {
            -rng.gen_range(0.1..4.0)
        };
        RegularConic::Central {
            u: br(u, prec),
            center: (br(rng.gen_range(-5.0..5.0), prec), br(rng.gen_range(-5.0..5.0), prec)),
            rhs: br(rhs, prec),
        }
    }
}

fn random_frame(rng: &mut ChaCha8Rng, prec: Precision) -> Frame {
    // Rational point on the unit circle: exactly unit norm.
    let t = BigReal::from_rational(
        &num_rational::BigRational::new(rng.gen_range(-30i64..=30).into(), 17.into()),
        prec,
    );
    let one = BigReal::one(prec);
    let den = &one + &(&t * &t);
    Frame::new(&(&one - &(&t * &t)) / &den, &t.mul_pow2(1) / &den)
}

#[test]
fn focus_directrix_parabola() {
    let prec = p(128);
    let quarter = br(0.25, prec);
    let fd = FocusDirectrix {
        focus: (quarter.clone(), BigReal::zero(prec)),
        dir_n: (BigReal::one(prec), BigReal::zero(prec)),
        dir_c: -&quarter,
        ecc: BigReal::one(prec),
    };
    let k = focus_directrix_to_implicit(&fd).unwrap();
    assert_conics_equal(&k, &conic([0, 0, 1, -1, 0, 0], prec), prec);
}

#[test]
fn focus_directrix_eccentric() {
    // focus origin, directrix x = -1, ecc 2 -> -3x^2 + y^2 - 8x - 4 = 0
    let prec = p(128);
    let fd = FocusDirectrix {
        focus: (BigReal::zero(prec), BigReal::zero(prec)),
        dir_n: (BigReal::one(prec), BigReal::zero(prec)),
        dir_c: BigReal::from_i64(-1, prec),
        ecc: BigReal::from_i64(2, prec),
    };
    let k = focus_directrix_to_implicit(&fd).unwrap();
    assert_conics_equal(&k, &conic([-3, 0, 1, -8, 0, -4], prec), prec);
}

#[test]
fn focus_on_directrix_rejected() {
    let prec = p(128);
    let fd = FocusDirectrix {
        focus: (BigReal::one(prec), BigReal::zero(prec)),
        dir_n: (BigReal::one(prec), BigReal::zero(prec)),
        dir_c: BigReal::one(prec),
        ecc: BigReal::one(prec),
    };
    assert!(matches!(
        focus_directrix_to_implicit(&fd),
        Err(ConicError::DegenerateInput)
    ));
}

#[test]
fn implicit_to_focus_directrix_parabola() {
    let prec = p(128);
    let tol = BigReal::pow2(-100, prec);
    let fds = implicit_to_focus_directrix(&conic([0, 0, 1, -1, 0, 0], prec), prec).unwrap();
    assert_eq!(fds.len(), 1);
    let fd = &fds[0];
    assert!(fd.focus.0.approx_eq(&br(0.25, prec), &tol));
    assert!(fd.focus.1.approx_zero(&tol));
    assert!(fd.ecc.approx_eq(&BigReal::one(prec), &tol));
    // directrix x = -1/4 up to normal sign
    let c_over_n = &fd.dir_c / &fd.dir_n.0;
    assert!(c_over_n.approx_eq(&br(-0.25, prec), &tol));
}

#[test]
fn implicit_to_focus_directrix_ellipse() {
    let prec = p(128);
    let tol = BigReal::pow2(-90, prec);
    let fds = implicit_to_focus_directrix(&conic([1, 0, 4, 0, 0, -4], prec), prec).unwrap();
    assert_eq!(fds.len(), 2);
    let s3 = br(3.0, prec).sqrt();
    let four_over_s3 = &BigReal::from_i64(4, prec) / &s3;
    for (fd, sgn) in fds.iter().zip([1i64, -1]) {
        let s = BigReal::from_i64(sgn, prec);
        assert!(fd.focus.0.approx_eq(&(&s * &s3), &tol));
        assert!(fd.focus.1.approx_zero(&tol));
        assert!(fd.ecc.approx_eq(&s3.mul_pow2(-1), &tol)); // sqrt(3)/2
        let c_over_n = &fd.dir_c / &fd.dir_n.0;
        assert!(c_over_n.approx_eq(&(&s * &four_over_s3), &tol));
    }
}

#[test]
fn implicit_to_focus_directrix_rotated() {
    // xy = 1: foci (+-sqrt2, +-sqrt2), ecc sqrt2.
    let prec = p(128);
    let tol = BigReal::pow2(-90, prec);
    let fds = implicit_to_focus_directrix(&conic([0, 1, 0, 0, 0, -1], prec), prec).unwrap();
    assert_eq!(fds.len(), 2);
    let s2 = br(2.0, prec).sqrt();
    for fd in &fds {
        assert!(fd.ecc.approx_eq(&s2, &tol));
        assert!(fd.focus.0.abs().approx_eq(&s2, &tol));
        assert!(fd.focus.1.abs().approx_eq(&s2, &tol));
        assert!(fd.focus.0.approx_eq(&fd.focus.1, &tol), "foci on the diagonal");
    }
    assert!((&fds[0].focus.0 + &fds[1].focus.0).approx_zero(&tol));
}

#[test]
fn focus_directrix_round_trip_random() {
    let prec = p(128);
    let tau = prec.tau();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..60 {
        let k = random_nondegenerate_conic(&mut rng, prec);
        let Ok(fds) = implicit_to_focus_directrix(&k, prec) else {
            continue;
        };
        for fd in fds {
            let back = focus_directrix_to_implicit(&fd).unwrap();
            assert_conics_equal(&k, &back, prec);
        }
        let _ = &tau;
    }
}

fn random_nondegenerate_conic(rng: &mut ChaCha8Rng, prec: Precision) -> ConicImplicit {
    loop {
        let reg = random_regular(rng, prec);
        let frame = random_frame(rng, prec);
        let k = regular_to_implicit(&reg, &frame);
        if classify(&k, prec).is_valid_fixed() {
            return k;
        }
    }
}

#[test]
fn intersect_line_circle_diagonal() {
    let prec = p(128);
    let tau = prec.tau();
    let line = BasicObject::Line(Line {
        p: pt(0.0, 0.0, prec),
        q: pt(1.0, 1.0, prec),
    });
    let circle = BasicObject::Circle(Circle {
        center: pt(0.0, 0.0, prec),
        through: pt(1.0, 0.0, prec),
    });
    let pts = intersect_basic(&line, &circle, prec).unwrap();
    assert_eq!(pts.len(), 2);
    let h = br(0.5, prec).sqrt();
    assert!(pts[0].approx_eq(&BigComplex::new(-&h, -&h), &tau));
    assert!(pts[1].approx_eq(&BigComplex::new(h.clone(), h), &tau));
}

#[test]
fn intersect_circle_circle_tangent() {
    let prec = p(128);
    let tau = prec.tau();
    let c1 = BasicObject::Circle(Circle {
        center: pt(0.0, 0.0, prec),
        through: pt(1.0, 0.0, prec),
    });
    let c2 = BasicObject::Circle(Circle {
        center: pt(2.0, 0.0, prec),
        through: pt(1.0, 0.0, prec),
    });
    let pts = intersect_basic(&c1, &c2, prec).unwrap();
    assert_eq!(pts.len(), 1, "external tangency is one point");
    assert!(pts[0].approx_eq(&pt(1.0, 0.0, prec), &tau));
}

#[test]
fn intersect_parallel_and_coincident_lines() {
    let prec = p(128);
    let l1 = BasicObject::Line(Line {
        p: pt(0.0, 0.0, prec),
        q: pt(1.0, 0.0, prec),
    });
    let l2 = BasicObject::Line(Line {
        p: pt(0.0, 1.0, prec),
        q: pt(1.0, 1.0, prec),
    });
    assert!(intersect_basic(&l1, &l2, prec).unwrap().is_empty());
    let l3 = BasicObject::Line(Line {
        p: pt(2.0, 0.0, prec),
        q: pt(5.0, 0.0, prec),
    });
    assert_eq!(
        intersect_basic(&l1, &l3, prec).unwrap_err(),
        ConicError::CoincidentObjects
    );
}

#[test]
fn degenerate_objects_rejected() {
    let prec = p(128);
    let point_line = BasicObject::Line(Line {
        p: pt(1.0, 1.0, prec),
        q: pt(1.0, 1.0, prec),
    });
    let ok_circle = BasicObject::Circle(Circle {
        center: pt(0.0, 0.0, prec),
        through: pt(1.0, 0.0, prec),
    });
    assert_eq!(
        intersect_basic(&point_line, &ok_circle, prec).unwrap_err(),
        ConicError::DegenerateObject
    );
}

#[test]
fn circle_conic_paper_gadget() {
    // Circle x^2+y^2-8x-y = 0 meets conic (3/4)x^2+y^2-8x-(3/4)y = 0
    // in (0,0) and (2,4): the x^4 = 8x elimination.
    let prec = p(192);
    let tau = prec.tau();
    let circle = Circle {
        center: pt(4.0, 0.5, prec),
        through: pt(0.0, 0.0, prec),
    };
    let k = ConicImplicit::new(
        br(0.75, prec),
        BigReal::zero(prec),
        BigReal::one(prec),
        br(-8.0, prec),
        br(-0.75, prec),
        BigReal::zero(prec),
    );
    let pts = intersect_circle_conic(&circle, &k, prec).unwrap();
    assert_eq!(pts.len(), 2);
    assert!(pts[0].approx_eq(&pt(0.0, 0.0, prec), &tau));
    assert!(pts[1].approx_eq(&pt(2.0, 4.0, prec), &tau));
    for z in &pts {
        assert!(k.residual(z) <= tau);
        assert!(circle.residual(z) <= tau);
    }
}

#[test]
fn circle_conic_golden_ratio() {
    // Unit circle meets x^2 - y = 0 where y^2 + y - 1 = 0.
    let prec = p(128);
    let circle = Circle {
        center: pt(0.0, 0.0, prec),
        through: pt(1.0, 0.0, prec),
    };
    let k = conic([1, 0, 0, 0, -1, 0], prec);
    let pts = intersect_circle_conic(&circle, &k, prec).unwrap();
    assert_eq!(pts.len(), 2);
    let x = 0.7861513777574233f64;
    let y = 0.6180339887498949f64;
    // f64 reference values: compare at f64 accuracy.
    let tol = BigReal::pow2(-50, prec);
    assert!(pts[0].approx_eq(&pt(-x, y, prec), &tol));
    assert!(pts[1].approx_eq(&pt(x, y, prec), &tol));
}

#[test]
fn circle_conic_tangential_multiplicity() {
    // Unit circle meets 2x^2 + y^2 - 2 = 0 at (+-1, 0), each with
    // multiplicity two.
    let prec = p(192);
    let circle = Circle {
        center: pt(0.0, 0.0, prec),
        through: pt(1.0, 0.0, prec),
    };
    let k = conic([2, 0, 1, 0, 0, -2], prec);
    let pts = intersect_circle_conic(&circle, &k, prec).unwrap();
    assert_eq!(pts.len(), 4, "two double points");
    let tol = BigReal::pow2(-40, prec);
    assert!(pts[0].approx_eq(&pt(-1.0, 0.0, prec), &tol));
    assert!(pts[1].approx_eq(&pt(-1.0, 0.0, prec), &tol));
    assert!(pts[2].approx_eq(&pt(1.0, 0.0, prec), &tol));
    assert!(pts[3].approx_eq(&pt(1.0, 0.0, prec), &tol));
}

#[test]
fn apply_similarity_examples() {
    let prec = p(128);
    let m = Similarity {
        s: br(2.0, prec),
        t: (BigReal::one(prec), BigReal::zero(prec)),
    };
    let k = apply_similarity(&conic([1, 0, 1, 0, 0, -1], prec), &m);
    assert_conics_equal(&k, &conic([1, 0, 1, -2, 0, -3], prec), prec);

    let m = Similarity {
        s: br(-1.0, prec),
        t: (BigReal::zero(prec), BigReal::zero(prec)),
    };
    let k = apply_similarity(&conic([0, 0, 1, -1, 0, 0], prec), &m);
    assert_conics_equal(&k, &conic([0, 0, 1, 1, 0, 0], prec), prec);

    let m = Similarity {
        s: br(2.0, prec),
        t: (br(2.0, prec), br(1.0, prec)),
    };
    let k = apply_similarity(
        &ConicImplicit::new(
            br(0.75, prec),
            BigReal::zero(prec),
            BigReal::one(prec),
            BigReal::zero(prec),
            BigReal::zero(prec),
            br(-1.0, prec),
        ),
        &m,
    );
    // (3/4)(x-2)^2 + (y-1)^2 - 4 = 0
    let expect = ConicImplicit::new(
        br(0.75, prec),
        BigReal::zero(prec),
        BigReal::one(prec),
        br(-3.0, prec),
        br(-2.0, prec),
        br(0.0, prec),
    );
    assert_conics_equal(&k, &expect, prec);
}

#[test]
fn apply_similarity_preserves_class() {
    let prec = p(128);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let k = random_nondegenerate_conic(&mut rng, prec);
        let s = loop {
            let v: f64 = rng.gen_range(-3.0..3.0);
            if v.abs() > 0.1 {
                break v;
            }
        };
        let m = Similarity {
            s: br(s, prec),
            t: (br(rng.gen_range(-4.0..4.0), prec), br(rng.gen_range(-4.0..4.0), prec)),
        };
        assert_eq!(classify(&k, prec), classify(&apply_similarity(&k, &m), prec));
    }
}

#[test]
fn similarity_between_examples() {
    let prec = p(128);
    let tol = BigReal::pow2(-100, prec);
    let zero = BigReal::zero(prec);

    let target = RegularConic::Central {
        u: br(0.75, prec),
        center: (br(2.0, prec), br(1.0, prec)),
        rhs: br(4.0, prec),
    };
    let fixed = RegularConic::Central {
        u: br(0.75, prec),
        center: (zero.clone(), zero.clone()),
        rhs: BigReal::one(prec),
    };
    let m = similarity_between(&target, &fixed, prec).unwrap();
    assert!(m.s.approx_eq(&br(2.0, prec), &tol));
    assert!(m.t.0.approx_eq(&br(2.0, prec), &tol) && m.t.1.approx_eq(&br(1.0, prec), &tol));

    let m = similarity_between(&fixed, &fixed, prec).unwrap();
    assert!(m.s.approx_eq(&BigReal::one(prec), &tol));
    assert!(m.t.0.approx_zero(&tol) && m.t.1.approx_zero(&tol));

    let target = RegularConic::Parabola {
        lambda: &BigReal::one(prec) / &br(3.0, prec),
        a: BigReal::one(prec),
        b: br(2.0, prec),
    };
    let fixed = RegularConic::Parabola {
        lambda: BigReal::one(prec),
        a: zero.clone(),
        b: zero.clone(),
    };
    let m = similarity_between(&target, &fixed, prec).unwrap();
    assert!(m.s.approx_eq(&br(3.0, prec), &tol));
    // Verify by mapping: apply_similarity(fixed) must equal target.
    let img = apply_similarity(&regular_to_implicit(&fixed, &Frame::identity(prec)), &m);
    assert_conics_equal(&img, &regular_to_implicit(&target, &Frame::identity(prec)), prec);
}

#[test]
fn similarity_class_mismatch_detected() {
    let prec = p(128);
    let zero = BigReal::zero(prec);
    let a = RegularConic::Central {
        u: br(-1.0, prec),
        center: (zero.clone(), zero.clone()),
        rhs: br(2.0, prec),
    };
    let b = RegularConic::Central {
        u: br(-1.0, prec),
        center: (zero.clone(), zero.clone()),
        rhs: br(-2.0, prec),
    };
    assert!(matches!(
        similarity_between(&a, &b, prec),
        Err(ConicError::OrientationClassMismatch)
    ));
    let c = RegularConic::Central {
        u: br(-0.5, prec),
        center: (zero.clone(), zero.clone()),
        rhs: br(2.0, prec),
    };
    assert!(matches!(
        similarity_between(&a, &c, prec),
        Err(ConicError::FormParameterMismatch)
    ));
}

#[test]
fn similarity_soundness_by_sampling() {
    // For m = similarity_between(target, fixed): sampling points on fixed,
    // mapping by m, and evaluating target's implicit equation stays under tau.
    let prec = p(128);
    let tau = prec.tau();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..30 {
        let fixed = random_regular(&mut rng, prec);
        let s = loop {
            let v: f64 = rng.gen_range(-2.5..2.5);
            if v.abs() > 0.2 {
                break v;
            }
        };
        // Manufacture a compatible target by transporting `fixed`.
        let m0 = Similarity {
            s: br(if matches!(fixed, RegularConic::Central { .. }) { s.abs() } else { s }, prec),
            t: (br(rng.gen_range(-3.0..3.0), prec), br(rng.gen_range(-3.0..3.0), prec)),
        };
        let target_impl = apply_similarity(&regular_to_implicit(&fixed, &Frame::identity(prec)), &m0);
        let Ok((tf, target)) = to_regular(&target_impl, prec) else {
            continue;
        };
        if !tf.is_identity(&BigReal::pow2(-60, prec)) {
            continue; // axis-aligned in, axis-aligned out
        }
        let m = similarity_between(&target, &fixed, prec).unwrap();
        for pt in sample_regular(&fixed, 20, prec) {
            let mapped = m.apply(&pt);
            assert!(
                target_impl.residual(&mapped) <= tau,
                "sampled point leaves the target conic"
            );
        }
    }
}
