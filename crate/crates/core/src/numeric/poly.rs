use num_complex::Complex64;
use thiserror::Error;

use super::{BigComplex, BigReal, Precision};

/// Real-coefficient polynomial, constant term first, degree capped at 8
/// (the pipeline itself needs at most 4: a circle meets a conic in at most
/// four points).
#[derive(Clone, Debug)]
pub struct Poly {
    coeffs: Vec<BigReal>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("root refinement did not meet the residual contract (precision too low)")]
    NonConvergence,
}

pub const MAX_DEGREE: usize = 8;

impl Poly {
    pub fn new(coeffs: Vec<BigReal>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigReal] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> Precision {
        self.coeffs
            .iter()
            .map(|c| c.prec())
            .min()
            .expect("non-empty")
    }

    /// Largest coefficient magnitude.
    pub fn coeff_scale(&self) -> BigReal {
        let mut m = self.coeffs[0].abs();
        for c in &self.coeffs[1..] {
            m = m.max_val(&c.abs());
        }
        m
    }

    pub fn eval(&self, z: &BigComplex) -> BigComplex {
        let prec = z.prec().min(self.prec());
        let mut acc = BigComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + &BigComplex::from_re(c.clone());
        }
        acc
    }

    pub fn eval_real(&self, x: &BigReal) -> BigReal {
        let prec = x.prec().min(self.prec());
        let mut acc = BigReal::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::new(vec![BigReal::zero(self.coeffs[0].prec())]);
        }
        let prec = self.prec();
        let d = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &BigReal::from_i64(k as i64, prec))
            .collect();
        Poly::new(d)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let prec = self.prec().min(other.prec());
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigReal::zero(prec);
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = other.coeffs.get(k).unwrap_or(&zero);
                a + b
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&BigReal::from_i64(-1, other.prec())))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let prec = self.prec().min(other.prec());
        let mut coeffs = vec![BigReal::zero(prec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &BigReal) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// All complex roots, with multiplicity, ordered by (real, imaginary)
    /// part. Every returned `z` satisfies
    /// `|p(z)| <= tau(prec) * max|coeff| * max(1,|z|)^degree`, and complex
    /// roots of this (real) polynomial come in exact conjugate pairs.
    pub fn roots(&self, prec: Precision) -> Result<Vec<BigComplex>, RootError> {
        assert!(
            self.degree() <= MAX_DEGREE,
            "degree {} exceeds the cap of {MAX_DEGREE}",
            self.degree()
        );
        let tau = prec.tau();
        let tau_sq = &tau * &tau;
        let scale = self.coeff_scale();
        if scale.is_zero() || scale <= tau_sq {
            return Err(RootError::ZeroPolynomial);
        }

        // Normalize so the largest coefficient is 1, then drop leading
        // coefficients that are pure arithmetic noise.
        let inv = &BigReal::one(prec) / &scale.with_prec(prec);
        let mut c: Vec<BigReal> = self
            .coeffs
            .iter()
            .map(|x| &x.with_prec(prec) * &inv)
            .collect();
        while c.len() > 1 && c.last().unwrap().abs() <= tau_sq {
            c.pop();
        }

        let normalized = Poly::new(c.clone());
        let mut roots: Vec<BigComplex> = Vec::new();
        // Exact zero roots: strip noise-level constant terms.
        while c.len() > 1 && c[0].abs() <= tau_sq {
            roots.push(BigComplex::zero(prec));
            c.remove(0);
        }

        let deg = c.len() - 1;
        match deg {
            0 => {}
            1 => {
                let r = -&(&c[0] / &c[1]);
                roots.push(BigComplex::from_re(r));
            }
            2 => {
                let (a, b, c0) = (&c[2], &c[1], &c[0]);
                let disc = &(b * b) - &(&BigReal::from_i64(4, prec) * &(a * c0));
                let sq = BigComplex::from_re(disc).principal_sqrt();
                let two_a = BigComplex::from_re(&BigReal::from_i64(2, prec) * a);
                let minus_b = BigComplex::from_re(-b);
                let r1 = &(&minus_b - &sq) / &two_a;
                let r2 = &(&minus_b + &sq) / &two_a;
                roots.push(r1);
                roots.push(r2);
            }
            _ => {
                let poly = Poly::new(c.clone());
                roots.extend(aberth(&poly, prec)?);
            }
        }

        // Snap noise-level imaginary parts (far below tau) to exact zero,
        // then enforce exact conjugate pairing of genuinely complex roots.
        for z in roots.iter_mut() {
            let snap = &tau_sq * &z.re.abs().max_val(&BigReal::one(prec));
            if !z.im.is_zero() && z.im.abs() <= snap {
                *z = BigComplex::from_re(z.re.clone());
            }
        }
        pair_conjugates(&mut roots, &tau);
        roots.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });

        // Residual contract against the normalized polynomial.
        for z in &roots {
            if !residual_ok(&normalized, z, &tau) {
                return Err(RootError::NonConvergence);
            }
        }
        Ok(roots)
    }

    /// Real roots in ascending order: the roots with |imaginary| <= tau.
    pub fn real_roots(&self, prec: Precision) -> Result<Vec<BigReal>, RootError> {
        let tau = prec.tau();
        let mut out: Vec<BigReal> = self
            .roots(prec)?
            .into_iter()
            .filter(|z| z.im.abs() <= tau)
            .map(|z| z.re)
            .collect();
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(out)
    }
}

fn residual_ok(p: &Poly, z: &BigComplex, tau: &BigReal) -> bool {
    let prec = z.prec();
    let r = p.eval(z).abs();
    let zmag = z.abs().max_val(&BigReal::one(prec));
    let mut bound = tau.clone();
    for _ in 0..p.degree() {
        bound = &bound * &zmag;
    }
    r <= bound
}

/// Aberth-Ehrlich simultaneous iteration at working precision, seeded from a
/// double-precision pass. Converges quadratically for simple roots and
/// linearly into clusters, which is still ample for degree <= 8.
fn aberth(p: &Poly, prec: Precision) -> Result<Vec<BigComplex>, RootError> {
    let deg = p.degree();
    let dp = p.derivative();
    let seeds = f64_seeds(p);
    let mut z: Vec<BigComplex> = seeds
        .iter()
        .map(|s| BigComplex::new(BigReal::from_f64(s.re, prec), BigReal::from_f64(s.im, prec)))
        .collect();

    let stop = BigReal::pow2(-i64::from(prec.bits()), prec);
    let step_floor = BigReal::pow2(-i64::from(prec.frac_bits()) + 8, prec);
    let one = BigReal::one(prec);
    let max_iters = 150 + prec.bits() as usize;

    for _ in 0..max_iters {
        let mut all_good = true;
        let mut max_step = BigReal::zero(prec);
        for i in 0..deg {
            let pv = p.eval(&z[i]);
            let zmag = z[i].abs().max_val(&one);
            let mut bound = stop.clone();
            for _ in 0..deg {
                bound = &bound * &zmag;
            }
            if pv.abs() <= bound {
                continue;
            }
            all_good = false;
            let dv = dp.eval(&z[i]);
            if dv.is_zero() {
                // Sitting on a critical point: nudge deterministically.
                let nudge = BigReal::pow2(-i64::from(prec.bits()) / 2, prec);
                z[i] = BigComplex::new(&z[i].re + &nudge, z[i].im.clone());
                continue;
            }
            let newton = &pv / &dv;
            let mut s = BigComplex::zero(prec);
            for j in 0..deg {
                if j != i {
                    let d = &z[i] - &z[j];
                    if d.is_zero() {
                        continue;
                    }
                    s = &s + &(&BigComplex::from_i64(1, 0, prec) / &d);
                }
            }
            let denom = &BigComplex::from_i64(1, 0, prec) - &(&newton * &s);
            let delta = if denom.is_zero() { newton } else { &newton / &denom };
            max_step = max_step.max_val(&delta.abs());
            z[i] = &z[i] - &delta;
        }
        if all_good || max_step <= step_floor {
            break;
        }
    }
    Ok(z)
}

/// Double-precision Aberth pass to produce seeds. Falls back to a circle of
/// initial guesses if the coefficients do not fit in f64.
fn f64_seeds(p: &Poly) -> Vec<Complex64> {
    let deg = p.degree();
    let cf: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64()).collect();
    let usable = cf.iter().all(|x| x.is_finite()) && cf[deg].abs() > 1e-300;

    let mut z: Vec<Complex64> = if usable {
        let radius = 1.0
            + cf[..deg]
                .iter()
                .map(|c| (c / cf[deg]).abs())
                .fold(0.0f64, f64::max);
        (0..deg)
            .map(|k| {
                Complex64::from_polar(
                    radius,
                    2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64,
                )
            })
            .collect()
    } else {
        (0..deg)
            .map(|k| {
                Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64,
                )
            })
            .collect()
    };
    if !usable {
        return z;
    }

    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in cf.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let deval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in cf.iter().enumerate().skip(1).rev() {
            acc = acc * x + c * k as f64;
        }
        acc
    };

    for _ in 0..120 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let pv = eval(z[i]);
            let dv = deval(z[i]);
            if pv.norm() < 1e-14 || !dv.is_finite() || dv.norm() < 1e-300 {
                continue;
            }
            let newton = pv / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if i != j {
                    let d = z[i] - z[j];
                    if d.norm() > 1e-300 {
                        s += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let delta = if denom.norm() < 1e-300 { newton } else { newton / denom };
            if delta.is_finite() {
                z[i] -= delta;
                moved = moved.max(delta.norm());
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    // Separate any coincident seeds so the big-precision pass can start.
    for i in 0..deg {
        for j in 0..i {
            if (z[i] - z[j]).norm() < 1e-12 {
                z[i] += Complex64::new(1e-6 * (i as f64 + 1.0), 1.3e-6);
            }
        }
    }
    z
}

/// Replace near-conjugate pairs by exact conjugate pairs.
fn pair_conjugates(roots: &mut [BigComplex], tau: &BigReal) {
    let n = roots.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        let tol = tau * &roots[i].re.abs().max_val(&BigReal::one(roots[i].prec()));
        if roots[i].im.abs() <= tol || roots[i].im.signum() <= 0 {
            continue;
        }
        // Find the best matching root in the lower half-plane.
        let conj = roots[i].conj();
        let mut best: Option<(usize, BigReal)> = None;
        for (j, r) in roots.iter().enumerate() {
            if j == i || used[j] || r.im.signum() >= 0 {
                continue;
            }
            let d = r.dist(&conj);
            if best.as_ref().map(|(_, bd)| d < *bd).unwrap_or(true) {
                best = Some((j, d));
            }
        }
        if let Some((j, d)) = best {
            if d <= *tau {
                let half = BigReal::pow2(-1, roots[i].prec());
                let avg = (&roots[i] + &roots[j].conj()).scale(&half);
                roots[i] = avg.clone();
                roots[j] = avg.conj();
                used[i] = true;
                used[j] = true;
            }
        }
    }
}
