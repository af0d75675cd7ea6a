//! Construction programs: the compilation target, plus the builder that
//! emits steps while tracking their compile-time values.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::conic::{
    intersect_basic, intersect_circle_conic, regular_to_implicit, BasicObject, Circle,
    ConicImplicit, Frame, Line, RegularConic,
};
use crate::expr::GaussianRational;
use crate::numeric::{BigComplex, BigReal, Precision};

use super::PlanError;

/// Index of a step; steps only reference earlier steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Conj,
}

impl FieldOp {
    pub fn arity(self) -> usize {
        match self {
            FieldOp::Neg | FieldOp::Conj => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FieldOp::Add => "add",
            FieldOp::Sub => "sub",
            FieldOp::Mul => "mul",
            FieldOp::Div => "div",
            FieldOp::Neg => "neg",
            FieldOp::Conj => "conj",
        }
    }

    pub fn from_name(name: &str) -> Option<FieldOp> {
        Some(match name {
            "add" => FieldOp::Add,
            "sub" => FieldOp::Sub,
            "mul" => FieldOp::Mul,
            "div" => FieldOp::Div,
            "neg" => FieldOp::Neg,
            "conj" => FieldOp::Conj,
            _ => return None,
        })
    }
}

/// Which conic a `ConicIntersect` step cuts: the program's fixed conic, or
/// (lemma mode only) a regular conic of the session form parameter.
#[derive(Clone, Debug)]
pub enum ConicRef {
    Fixed,
    Regular(RegularConic),
}

/// Selection data for multi-valued steps: the expected point at compile
/// precision and the compile-time separation from the nearest other
/// candidate (`None` when the step had a single candidate).
#[derive(Clone, Debug)]
pub struct SelectorHint {
    pub expected: BigComplex,
    pub min_separation: Option<BigReal>,
}

#[derive(Clone, Debug)]
pub enum ConstructionStep {
    PointLit(GaussianRational),
    MacroField { op: FieldOp, args: Vec<StepId> },
    MacroSqrt { arg: StepId },
    CircleDef { center: StepId, through: StepId },
    LineDef { p: StepId, q: StepId },
    IntersectBasic { a: StepId, b: StepId, pick: SelectorHint },
    ConicIntersect { circle: StepId, conic: ConicRef, pick: SelectorHint },
}

impl ConstructionStep {
    /// Ids of earlier steps this step reads.
    pub fn references(&self) -> Vec<StepId> {
        match self {
            ConstructionStep::PointLit(_) => vec![],
            ConstructionStep::MacroField { args, .. } => args.clone(),
            ConstructionStep::MacroSqrt { arg } => vec![*arg],
            ConstructionStep::CircleDef { center, through } => vec![*center, *through],
            ConstructionStep::LineDef { p, q } => vec![*p, *q],
            ConstructionStep::IntersectBasic { a, b, .. } => vec![*a, *b],
            ConstructionStep::ConicIntersect { circle, .. } => vec![*circle],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Fixed,
    Lemma,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Fixed => "fixed",
            Mode::Lemma => "lemma",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgramMetadata {
    pub sqrt_count: usize,
    pub cbrt_count: usize,
    pub conic_depth: usize,
    pub compile_precision_bits: u32,
}

/// A compiled construction: initial rational points, ruler-compass macros,
/// and intersections whose only conics are the fixed one (fixed mode) or
/// regular conics of the session form parameter (lemma mode).
#[derive(Clone, Debug)]
pub struct ConstructionProgram {
    pub mode: Mode,
    /// The fixed conic exactly as given (implicit rational coefficients).
    pub fixed_conic: [BigRational; 6],
    pub working_frame: Frame,
    pub steps: Vec<ConstructionStep>,
    pub final_step: StepId,
    pub metadata: ProgramMetadata,
}

impl ConstructionProgram {
    pub fn fixed_conic_implicit(&self, prec: Precision) -> ConicImplicit {
        ConicImplicit::from_rationals(&self.fixed_conic, prec)
    }
}

/// Compile-time value of a step, mirroring what the executor will rederive.
#[derive(Clone, Debug)]
pub enum StepValue {
    Point(BigComplex),
    Line(Line),
    Circle(Circle),
}

impl StepValue {
    pub fn point(&self) -> Option<&BigComplex> {
        match self {
            StepValue::Point(p) => Some(p),
            _ => None,
        }
    }
}

/// Emits steps and evaluates them eagerly so later planning decisions and
/// selector hints can use the values. This evaluation is scaffolding: the
/// executor re-derives everything from the program alone.
pub(super) struct Builder {
    pub prec: Precision,
    fixed_conic: ConicImplicit,
    steps: Vec<ConstructionStep>,
    values: Vec<StepValue>,
    lit_cache: HashMap<GaussianRational, StepId>,
}

impl Builder {
    pub fn new(prec: Precision, fixed_conic: ConicImplicit) -> Self {
        Builder {
            prec,
            fixed_conic,
            steps: Vec::new(),
            values: Vec::new(),
            lit_cache: HashMap::new(),
        }
    }

    pub fn into_parts(self) -> Vec<ConstructionStep> {
        self.steps
    }

    pub fn value(&self, id: StepId) -> &StepValue {
        &self.values[id.0]
    }

    pub fn point_value(&self, id: StepId) -> &BigComplex {
        self.values[id.0].point().expect("step is not a point")
    }

    fn push(&mut self, step: ConstructionStep, value: StepValue) -> StepId {
        let id = StepId(self.steps.len());
        self.steps.push(step);
        self.values.push(value);
        id
    }

    pub fn lit(&mut self, g: GaussianRational) -> StepId {
        if let Some(&id) = self.lit_cache.get(&g) {
            return id;
        }
        let value = g.to_complex(self.prec);
        let id = self.push(ConstructionStep::PointLit(g.clone()), StepValue::Point(value));
        self.lit_cache.insert(g, id);
        id
    }

    pub fn int(&mut self, v: i64) -> StepId {
        self.lit(GaussianRational::from_int(v))
    }

    pub fn rational(&mut self, r: BigRational) -> StepId {
        self.lit(GaussianRational::new(r, num_traits::Zero::zero()))
    }

    pub fn imag_unit(&mut self) -> StepId {
        self.lit(GaussianRational::i())
    }

    pub fn field(&mut self, op: FieldOp, args: Vec<StepId>) -> Result<StepId, PlanError> {
        assert_eq!(args.len(), op.arity());
        let vals: Vec<BigComplex> = args.iter().map(|&a| self.point_value(a).clone()).collect();
        let value = match op {
            FieldOp::Add => &vals[0] + &vals[1],
            FieldOp::Sub => &vals[0] - &vals[1],
            FieldOp::Mul => &vals[0] * &vals[1],
            FieldOp::Div => {
                let floor = BigReal::pow2(-i64::from(self.prec.bits()), self.prec);
                if vals[1].abs() <= floor {
                    return Err(PlanError::DivisionByZero);
                }
                &vals[0] / &vals[1]
            }
            FieldOp::Neg => -&vals[0],
            FieldOp::Conj => vals[0].conj(),
        };
        Ok(self.push(
            ConstructionStep::MacroField { op, args },
            StepValue::Point(value),
        ))
    }

    pub fn add(&mut self, a: StepId, b: StepId) -> StepId {
        self.field(FieldOp::Add, vec![a, b]).expect("add cannot fail")
    }

    pub fn sub(&mut self, a: StepId, b: StepId) -> StepId {
        self.field(FieldOp::Sub, vec![a, b]).expect("sub cannot fail")
    }

    pub fn mul(&mut self, a: StepId, b: StepId) -> StepId {
        self.field(FieldOp::Mul, vec![a, b]).expect("mul cannot fail")
    }

    pub fn div(&mut self, a: StepId, b: StepId) -> Result<StepId, PlanError> {
        self.field(FieldOp::Div, vec![a, b])
    }

    pub fn neg(&mut self, a: StepId) -> StepId {
        self.field(FieldOp::Neg, vec![a]).expect("neg cannot fail")
    }

    pub fn conj(&mut self, a: StepId) -> StepId {
        self.field(FieldOp::Conj, vec![a]).expect("conj cannot fail")
    }

    pub fn sqrt(&mut self, arg: StepId) -> StepId {
        let value = self.point_value(arg).principal_sqrt();
        self.push(ConstructionStep::MacroSqrt { arg }, StepValue::Point(value))
    }

    /// Real part as a value-stream step: (z + conj z) / 2.
    pub fn re_part(&mut self, a: StepId) -> StepId {
        let conj = self.conj(a);
        let sum = self.add(a, conj);
        let half = self.rational(BigRational::new(1.into(), 2.into()));
        self.mul(sum, half)
    }

    /// Combine two real-valued steps into the point x + iy.
    pub fn complex_of(&mut self, x: StepId, y: StepId) -> StepId {
        let i = self.imag_unit();
        let iy = self.mul(i, y);
        self.add(x, iy)
    }

    pub fn line(&mut self, p: StepId, q: StepId) -> StepId {
        let value = Line {
            p: self.point_value(p).clone(),
            q: self.point_value(q).clone(),
        };
        self.push(ConstructionStep::LineDef { p, q }, StepValue::Line(value))
    }

    pub fn circle(&mut self, center: StepId, through: StepId) -> StepId {
        let value = Circle {
            center: self.point_value(center).clone(),
            through: self.point_value(through).clone(),
        };
        self.push(
            ConstructionStep::CircleDef { center, through },
            StepValue::Circle(value),
        )
    }

    fn basic_object(&self, id: StepId) -> BasicObject {
        match self.value(id) {
            StepValue::Line(l) => BasicObject::Line(l.clone()),
            StepValue::Circle(c) => BasicObject::Circle(c.clone()),
            StepValue::Point(_) => panic!("expected a line or circle step"),
        }
    }

    pub fn intersect_basic_step(
        &mut self,
        a: StepId,
        b: StepId,
        want: &BigComplex,
    ) -> Result<StepId, PlanError> {
        let oa = self.basic_object(a);
        let ob = self.basic_object(b);
        let candidates = intersect_basic(&oa, &ob, self.prec)?;
        let (chosen, hint) = self.select(&candidates, want)?;
        Ok(self.push(
            ConstructionStep::IntersectBasic { a, b, pick: hint },
            StepValue::Point(chosen),
        ))
    }

    pub fn conic_intersect_step(
        &mut self,
        circle: StepId,
        conic: ConicRef,
        want: &BigComplex,
    ) -> Result<StepId, PlanError> {
        let circ = match self.value(circle) {
            StepValue::Circle(c) => c.clone(),
            _ => panic!("conic intersection needs a circle step"),
        };
        let k = match &conic {
            ConicRef::Fixed => self.fixed_conic.clone(),
            ConicRef::Regular(rc) => regular_to_implicit(rc, &Frame::identity(self.prec)),
        };
        let candidates = intersect_circle_conic(&circ, &k, self.prec)?;
        let (chosen, hint) = self.select(&candidates, want)?;
        Ok(self.push(
            ConstructionStep::ConicIntersect { circle, conic, pick: hint },
            StepValue::Point(chosen),
        ))
    }

    /// Choose the candidate nearest to the planner's predicted point and
    /// freeze it (plus the runner-up separation) into the hint.
    fn select(
        &self,
        candidates: &[BigComplex],
        want: &BigComplex,
    ) -> Result<(BigComplex, SelectorHint), PlanError> {
        if candidates.is_empty() {
            return Err(PlanError::Internal(
                "planned intersection has no real points".into(),
            ));
        }
        let mut best = 0usize;
        let mut best_d = candidates[0].dist(want);
        for (i, c) in candidates.iter().enumerate().skip(1) {
            let d = c.dist(want);
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        // The prediction must actually identify one candidate.
        let guard = BigReal::pow2(-i64::from(self.prec.bits()) / 4, self.prec);
        let scale = BigReal::one(self.prec).max_val(&want.abs());
        if best_d > &guard * &scale {
            return Err(PlanError::Internal(
                "planned intersection point drifted from all candidates".into(),
            ));
        }
        let chosen = candidates[best].clone();
        let min_separation = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != best)
            .map(|(_, c)| c.dist(&chosen))
            .min_by(|a, b| a.partial_cmp(b).unwrap());
        Ok((
            chosen.clone(),
            SelectorHint {
                expected: chosen,
                min_separation,
            },
        ))
    }
}
