//! Scalar fields on the plane evaluable as values or jets, and the loci on
//! which models are undefined.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::{Jet2, Taylor};

type FieldFn = dyn Fn(&Jet2, &Jet2) -> Result<Jet2> + Send + Sync;

/// A scalar field `f(x, y)` built from jet operations, so one closure gives
/// both the value and every partial derivative up to the jet order.
#[derive(Clone)]
pub struct Field(Arc<FieldFn>);

impl Field {
    pub fn new<F>(f: F) -> Field
    where
        F: Fn(&Jet2, &Jet2) -> Result<Jet2> + Send + Sync + 'static,
    {
        Field(Arc::new(f))
    }

    pub fn zero() -> Field {
        Field::constant(0.0)
    }

    pub fn constant(c: f64) -> Field {
        Field::new(move |x, _| Ok(x.constant_like(c)))
    }

    /// Evaluates on already seeded (or transformed) coordinate jets.
    pub fn apply(&self, x: &Jet2, y: &Jet2) -> Result<Jet2> {
        (self.0)(x, y)
    }

    /// The jet of the field at `(x, y)` to the given order.
    pub fn jet(&self, x: f64, y: f64, order: usize) -> Result<Jet2> {
        let (jx, jy) = Jet2::seed(x, y, order)?;
        let out = self.apply(&jx, &jy)?;
        if out.value().is_finite() {
            Ok(out)
        } else {
            Err(Error::NonFinite { x, y })
        }
    }

    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.jet(x, y, 0)?.value())
    }

    /// `(f_x, f_y)`.
    pub fn gradient(&self, x: f64, y: f64) -> Result<(f64, f64)> {
        self.jet(x, y, 1)?.gradient()
    }

    /// The field composed with a map of the plane given on jets.
    pub fn pull_back<G>(&self, g: G) -> Field
    where
        G: Fn(&Jet2, &Jet2) -> (Jet2, Jet2) + Send + Sync + 'static,
    {
        let inner = self.clone();
        Field::new(move |x, y| {
            let (gx, gy) = g(x, y);
            inner.apply(&gx, &gy)
        })
    }

    pub fn scaled(&self, k: f64) -> Field {
        let inner = self.clone();
        Field::new(move |x, y| Ok(inner.apply(x, y)? * k))
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Field(..)")
    }
}

type ScalarFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// How a locus function marks excluded points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusKind {
    /// Excluded where `|f| < δ`; a path crossing a sign change of `f` also
    /// meets the locus.
    Zero,
    /// Excluded where `f < δ`.
    Positive,
}

/// One excluded curve or region.
#[derive(Clone)]
pub struct Locus {
    pub name: String,
    pub kind: LocusKind,
    f: Arc<ScalarFn>,
}

impl Locus {
    pub fn zero<F>(name: &str, f: F) -> Locus
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Locus {
            name: name.to_string(),
            kind: LocusKind::Zero,
            f: Arc::new(f),
        }
    }

    pub fn positive<F>(name: &str, f: F) -> Locus
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Locus {
            name: name.to_string(),
            kind: LocusKind::Positive,
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.f)(x, y)
    }

    /// Signed clearance: positive off the locus, at most `δ` on it.
    pub fn margin(&self, x: f64, y: f64) -> f64 {
        let v = self.eval(x, y);
        match self.kind {
            LocusKind::Zero => v.abs(),
            LocusKind::Positive => v,
        }
    }

    /// The same locus seen through a map of the plane.
    pub fn pull_back<G>(&self, g: G) -> Locus
    where
        G: Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    {
        let f = self.f.clone();
        Locus {
            name: self.name.clone(),
            kind: self.kind,
            f: Arc::new(move |x, y| {
                let (a, b) = g(x, y);
                f(a, b)
            }),
        }
    }
}

impl fmt::Debug for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Locus({}, {:?})", self.name, self.kind)
    }
}

/// Default exclusion width around singular loci.
pub const DEFAULT_DELTA: f64 = 1e-8;

/// Number of samples per segment when checking a path against the loci.
const PATH_SAMPLES: usize = 256;

/// The union of loci a model excludes.
#[derive(Clone, Debug)]
pub struct SingularSet {
    pub loci: Vec<Locus>,
    pub delta: f64,
}

impl Default for SingularSet {
    fn default() -> Self {
        SingularSet::empty()
    }
}

impl SingularSet {
    pub fn empty() -> SingularSet {
        SingularSet {
            loci: Vec::new(),
            delta: DEFAULT_DELTA,
        }
    }

    pub fn new(loci: Vec<Locus>) -> SingularSet {
        SingularSet {
            loci,
            delta: DEFAULT_DELTA,
        }
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        !x.is_finite()
            || !y.is_finite()
            || self.loci.iter().any(|l| !(l.margin(x, y) >= self.delta))
    }

    /// Smallest clearance over all loci (`+∞` for the empty set).
    pub fn margin(&self, x: f64, y: f64) -> f64 {
        self.loci
            .iter()
            .map(|l| l.margin(x, y))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether the straight segment from `a` to `b` touches the set.
    pub fn segment_hits(&self, a: (f64, f64), b: (f64, f64)) -> bool {
        if self.contains(a.0, a.1) || self.contains(b.0, b.1) {
            return true;
        }
        let pt = |k: usize| {
            let t = k as f64 / PATH_SAMPLES as f64;
            (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1))
        };
        self.loci.iter().any(|l| {
            let mut prev = l.eval(a.0, a.1);
            (1..=PATH_SAMPLES).any(|k| {
                let (x, y) = pt(k);
                let v = l.eval(x, y);
                let hit = match l.kind {
                    LocusKind::Zero => v.abs() < self.delta || v.signum() != prev.signum(),
                    LocusKind::Positive => !(v >= self.delta),
                };
                prev = v;
                hit
            })
        })
    }

    /// Cheap check for one integration step: the end point lies on the set
    /// or a zero locus changes sign between the end points.
    pub fn step_crosses(&self, a: (f64, f64), b: (f64, f64)) -> bool {
        self.contains(b.0, b.1)
            || self.loci.iter().any(|l| {
                l.kind == LocusKind::Zero && l.eval(a.0, a.1).signum() != l.eval(b.0, b.1).signum()
            })
    }

    /// The set seen through a map of the plane.
    pub fn pull_back<G>(&self, g: G) -> SingularSet
    where
        G: Fn(f64, f64) -> (f64, f64) + Clone + Send + Sync + 'static,
    {
        SingularSet {
            loci: self.loci.iter().map(|l| l.pull_back(g.clone())).collect(),
            delta: self.delta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_value_and_gradient() {
        let f = Field::new(|x, y| Ok(*x * *x * *y));
        assert_eq!(f.value(2.0, 3.0).unwrap(), 12.0);
        assert_eq!(f.gradient(2.0, 3.0).unwrap(), (12.0, 4.0));
    }

    #[test]
    fn non_finite_value_is_error() {
        let f = Field::new(|x, _| Ok(*x * f64::INFINITY));
        assert!(matches!(f.value(1.0, 0.0), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn zero_locus_membership_and_crossing() {
        let s = SingularSet::new(vec![Locus::zero("xy", |x, y| x * y)]);
        assert!(s.contains(0.0, 1.0));
        assert!(!s.contains(1.0, 1.0));
        assert!(s.segment_hits((1.0, 1.0), (-1.0, 1.0)));
        assert!(!s.segment_hits((1.0, 1.0), (2.0, 3.0)));
    }

    #[test]
    fn positive_locus() {
        let s = SingularSet::new(vec![Locus::positive("|s|-mu", |x, y| (x * y).abs() - 2.0)]);
        assert!(s.contains(1.0, 1.0));
        assert!(!s.contains(2.0, 2.0));
        assert!(s.segment_hits((2.0, 2.0), (2.0, 0.5)));
    }

    #[test]
    fn pull_back_composes() {
        let f = Field::new(|x, _| Ok(*x));
        let g = f.pull_back(|x, y| (*y, *x));
        assert_eq!(g.value(1.0, 5.0).unwrap(), 5.0);
        let s = SingularSet::new(vec![Locus::zero("x", |x, _| x)]);
        let t = s.pull_back(|x, y| (y, x));
        assert!(t.contains(3.0, 0.0));
        assert!(!t.contains(0.0, 3.0));
    }
}
