//! Dihedral actions on the plane and on generating functions, plus the
//! two-parameter rescaling `E ↦ λE(x/μ, y/μ)`.
//!
//! `D6` (rotations by π/3) acts on cubic generating functions and `D8`
//! (rotations by π/4) on quartic ones. An element is a rotation by `kα`
//! followed, when `reflected`, by `x ↦ −x`; the independent sign flips of
//! `x` and `y` are compositions of these.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::genfun::{GenFun, IntegralOrder};
use crate::jet::Jet2;
use crate::models::invariant_vars;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    D6,
    D8,
}

impl Group {
    /// Number of rotations.
    pub fn n(self) -> usize {
        match self {
            Group::D6 => 6,
            Group::D8 => 8,
        }
    }

    pub fn order(self) -> usize {
        2 * self.n()
    }

    /// The rotation angle `α`.
    pub fn angle(self) -> f64 {
        2.0 * PI / self.n() as f64
    }

    /// The group acting on generating functions of this integral order.
    pub fn for_order(order: IntegralOrder) -> Group {
        match order {
            IntegralOrder::Cubic => Group::D6,
            IntegralOrder::Quartic => Group::D8,
        }
    }

    /// Every element, rotations first.
    pub fn elements(self) -> Vec<DihedralElement> {
        [false, true]
            .into_iter()
            .flat_map(|r| (0..self.n()).map(move |k| DihedralElement { group: self, k, reflected: r }))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DihedralElement {
    pub group: Group,
    pub k: usize,
    pub reflected: bool,
}

impl DihedralElement {
    pub fn new(group: Group, k: usize, reflected: bool) -> Result<DihedralElement> {
        if k >= group.n() {
            return Err(Error::InvalidParameter(format!(
                "rotation index {k} out of range for {group:?}"
            )));
        }
        Ok(DihedralElement { group, k, reflected })
    }

    pub fn identity(group: Group) -> DihedralElement {
        DihedralElement { group, k: 0, reflected: false }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DihedralElement) -> Result<DihedralElement> {
        if self.group != other.group {
            return Err(Error::InvalidParameter("cannot compose elements of different groups".into()));
        }
        let n = self.group.n();
        let k = if other.reflected {
            (other.k + n - self.k) % n
        } else {
            (self.k + other.k) % n
        };
        Ok(DihedralElement {
            group: self.group,
            k,
            reflected: self.reflected ^ other.reflected,
        })
    }

    pub fn inverse(&self) -> DihedralElement {
        if self.reflected {
            *self
        } else {
            DihedralElement {
                k: (self.group.n() - self.k) % self.group.n(),
                ..*self
            }
        }
    }

    fn cos_sin(&self) -> (f64, f64) {
        // exact values for the quarter turns keep the D8 checks exact
        let n = self.group.n();
        match (4 * self.k) % (4 * n) {
            0 => (1.0, 0.0),
            m if m == n => (0.0, 1.0),
            m if m == 2 * n => (-1.0, 0.0),
            m if m == 3 * n => (0.0, -1.0),
            _ => {
                let a = self.k as f64 * self.group.angle();
                (a.cos(), a.sin())
            }
        }
    }

    pub fn apply_point(&self, x: f64, y: f64) -> (f64, f64) {
        let (c, s) = self.cos_sin();
        let (xr, yr) = (c * x - s * y, s * x + c * y);
        if self.reflected {
            (-xr, yr)
        } else {
            (xr, yr)
        }
    }

    /// The same map on coordinate jets.
    pub fn apply_jet(&self, x: &Jet2, y: &Jet2) -> (Jet2, Jet2) {
        let (c, s) = self.cos_sin();
        let xr = *x * c - *y * s;
        let yr = *x * s + *y * c;
        if self.reflected {
            (-xr, yr)
        } else {
            (xr, yr)
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:r{}", self.group, self.k)?;
        if self.reflected {
            f.write_str("s")?;
        }
        Ok(())
    }
}

/// Result of comparing the invariant variables at a point and at its image.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantCheck {
    /// `(v, u)` for D6, `(s, t)` for D8, at the original point.
    pub before: (f64, f64),
    /// The same variables at the image point.
    pub after: (f64, f64),
    /// What the group law predicts for `after`.
    pub expected: (f64, f64),
    /// `|after − expected|` relative to `max(1, |before|)`.
    pub error: f64,
    pub pass: bool,
}

const INVARIANT_TOL: f64 = 1e-12;

/// Checks how the element moves the invariant variables.
///
/// D6: `(v, u) ↦ (−1)ᵏ(v, u)`, then `(−v, u)` if reflected.
/// D8: `t + is ↦ iᵏ(t + is)`, conjugated if reflected; the generator
/// `k = 1` gives `(s, t) ↦ (t, −s)`.
pub fn check_invariant_vars(e: &DihedralElement, x: f64, y: f64) -> InvariantCheck {
    let (xp, yp) = e.apply_point(x, y);
    let (before, after, expected) = match e.group {
        Group::D6 => {
            let (v, u) = invariant_vars(IntegralOrder::Cubic, x, y);
            let sign = if e.k.is_multiple_of(2) { 1.0 } else { -1.0 };
            let (v1, u1) = (sign * v, sign * u);
            let expected = if e.reflected { (-v1, u1) } else { (v1, u1) };
            ((v, u), invariant_vars(IntegralOrder::Cubic, xp, yp), expected)
        }
        Group::D8 => {
            let (s, t) = invariant_vars(IntegralOrder::Quartic, x, y);
            // multiply t + is by i^k
            let (mut tt, mut ss) = (t, s);
            for _ in 0..e.k % 4 {
                (tt, ss) = (-ss, tt);
            }
            if e.reflected {
                ss = -ss;
            }
            ((s, t), invariant_vars(IntegralOrder::Quartic, xp, yp), (ss, tt))
        }
    };
    let scale = before.0.abs().max(before.1.abs()).max(1.0);
    let error = (after.0 - expected.0).abs().max((after.1 - expected.1).abs()) / scale;
    InvariantCheck {
        before,
        after,
        expected,
        error,
        pass: error <= INVARIANT_TOL,
    }
}

/// `E ∘ e`: the generating function pulled back along the element, with
/// its singular set moved accordingly.
pub fn transform_genfun(e: &DihedralElement, g: &GenFun) -> GenFun {
    let el = *e;
    let field = g.field.pull_back(move |x, y| el.apply_jet(x, y));
    let singular = g.singular.pull_back(move |x, y| el.apply_point(x, y));
    GenFun::new(g.order, field, singular, &format!("{}∘{}", g.label, e))
}

/// `λ E(x/μ, y/μ)`.
pub fn rescale_genfun(g: &GenFun, lambda: f64, mu: f64) -> Result<GenFun> {
    if mu == 0.0 || !mu.is_finite() || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "rescaling needs finite lambda and nonzero finite mu, got lambda={lambda}, mu={mu}"
        )));
    }
    let inv = 1.0 / mu;
    let field = g.field.pull_back(move |x, y| (*x * inv, *y * inv)).scaled(lambda);
    let singular = g.singular.pull_back(move |x, y| (x * inv, y * inv));
    Ok(GenFun::new(
        g.order,
        field,
        singular,
        &format!("{}[lambda={lambda},mu={mu}]", g.label),
    ))
}

/// Elements grouped by the image they produce.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub classes: Vec<Vec<DihedralElement>>,
}

impl Orbit {
    /// Number of distinct images.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// How many elements produce each distinct image, in class order.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

const ORBIT_PROBES: [(f64, f64); 4] = [(0.71, 0.23), (-0.37, 1.13), (1.29, -0.61), (-0.83, -0.47)];

/// Groups the images of `g` under its dihedral group. Two images coincide
/// when all derivatives up to the master order agree at every probe point
/// (the additive constant is ignored, as the master equation ignores it).
/// Probes that are singular for either image are skipped.
pub fn orbit_multiplicities(g: &GenFun, tol: f64) -> Result<Orbit> {
    let group = Group::for_order(g.order);
    let order = g.order.master_order();
    let images: Vec<(DihedralElement, GenFun)> = group
        .elements()
        .into_iter()
        .map(|e| (e, transform_genfun(&e, g)))
        .collect();
    let jets = |h: &GenFun| -> Vec<Option<Jet2>> {
        ORBIT_PROBES
            .iter()
            .map(|&(x, y)| {
                if h.singular.contains(x, y) {
                    None
                } else {
                    h.field.jet(x, y, order).ok()
                }
            })
            .collect()
    };
    let signatures: Vec<Vec<Option<Jet2>>> = images.iter().map(|(_, h)| jets(h)).collect();
    if signatures.iter().all(|s| s.iter().all(Option::is_none)) {
        return Err(Error::AllSingular);
    }
    let same = |a: &[Option<Jet2>], b: &[Option<Jet2>]| {
        a.iter().zip(b).all(|(ja, jb)| match (ja, jb) {
            (Some(ja), Some(jb)) => (0..=order).all(|tot| {
                (0..=tot).all(|i| {
                    let (da, db) = (ja.coeff(i, tot - i), jb.coeff(i, tot - i));
                    tot == 0 || (da - db).abs() <= tol * da.abs().max(db.abs()).max(1.0)
                })
            }),
            _ => true,
        })
    };
    let mut classes: Vec<(usize, Vec<DihedralElement>)> = Vec::new();
    for (idx, (e, _)) in images.iter().enumerate() {
        match classes.iter_mut().find(|(rep, _)| same(&signatures[*rep], &signatures[idx])) {
            Some((_, members)) => members.push(*e),
            None => classes.push((idx, vec![*e])),
        }
    }
    Ok(Orbit {
        classes: classes.into_iter().map(|(_, m)| m).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prepotential::{PrepotentialParams, Sign};
    use crate::verify::residual_master_normalized;

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15
    }

    #[test]
    fn generators_on_points() {
        let r6 = DihedralElement::new(Group::D6, 1, false).unwrap();
        assert!(close(r6.apply_point(1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)));
        let r8 = DihedralElement::new(Group::D8, 1, false).unwrap();
        let h = 0.5f64.sqrt();
        assert!(close(r8.apply_point(1.0, 0.0), (h, h)));
        assert_eq!(DihedralElement::identity(Group::D6).apply_point(0.3, -2.0), (0.3, -2.0));
        assert!(DihedralElement::new(Group::D8, 8, false).is_err());
    }

    #[test]
    fn group_closes() {
        for g in [Group::D6, Group::D8] {
            let els = g.elements();
            assert_eq!(els.len(), g.order());
            for a in &els {
                assert_eq!(a.compose(&a.inverse()).unwrap(), DihedralElement::identity(g));
                for b in &els {
                    let c = a.compose(b).unwrap();
                    assert!(els.contains(&c));
                    let p = (0.4, -1.3);
                    let lhs = c.apply_point(p.0, p.1);
                    let (bx, by) = b.apply_point(p.0, p.1);
                    let rhs = a.apply_point(bx, by);
                    assert!((lhs.0 - rhs.0).abs() < 1e-14 && (lhs.1 - rhs.1).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn invariant_variable_examples() {
        let r8 = DihedralElement::new(Group::D8, 1, false).unwrap();
        let c = check_invariant_vars(&r8, 2.0, 3.0);
        assert_eq!(c.before, (6.0, -2.5));
        assert!(c.pass);
        assert!(close(c.after, (-2.5, -6.0)));
        let r6 = DihedralElement::new(Group::D6, 1, false).unwrap();
        let c = check_invariant_vars(&r6, 1.0, 0.0);
        assert!(c.pass && close(c.after, (-1.0, 0.0)));
        let f = DihedralElement::new(Group::D6, 0, true).unwrap();
        let c = check_invariant_vars(&f, 0.7, 0.4);
        assert_eq!(c.after, (-c.before.0, c.before.1));
    }

    #[test]
    fn every_element_moves_invariants_as_predicted() {
        for g in [Group::D6, Group::D8] {
            for e in g.elements() {
                assert!(check_invariant_vars(&e, 1.3, -0.6).pass, "{e}");
            }
        }
    }

    #[test]
    fn d6_images_stay_solutions() {
        let p = PrepotentialParams::beta0(Sign::Plus, 1.0);
        let e = GenFun::from_prepotential(IntegralOrder::Cubic, &p).unwrap();
        for el in Group::D6.elements() {
            let img = transform_genfun(&el, &e);
            let jet = img.master_jet(1.2, 0.4).unwrap();
            assert!(residual_master_normalized(IntegralOrder::Cubic, &jet).unwrap() < 1e-8, "{el}");
        }
    }

    #[test]
    fn rescaling() {
        let e = GenFun::parse("E:x^3*y+x*y^2").unwrap();
        let same = rescale_genfun(&e, 1.0, 1.0).unwrap();
        assert_eq!(same.field.value(0.7, 1.1).unwrap(), e.field.value(0.7, 1.1).unwrap());
        let r = rescale_genfun(&e, 2.0, 0.5).unwrap();
        assert!((r.field.value(1.0, 1.0).unwrap() - 2.0 * e.field.value(2.0, 2.0).unwrap()).abs() < 1e-12);
        assert!(rescale_genfun(&e, 1.0, 0.0).is_err());
    }

    #[test]
    fn trivial_directions_solve_master_exactly() {
        for spec in ["E:(sqrt(3)*x+y)^5", "E:(sqrt(3)*x-y)^4", "E:y^5"] {
            let e = GenFun::parse(spec).unwrap();
            let jet = e.master_jet(0.8, -0.3).unwrap();
            assert!(residual_master_normalized(IntegralOrder::Cubic, &jet).unwrap() < 1e-13, "{spec}");
        }
    }

    #[test]
    fn orbit_of_invariant_genfun_is_small() {
        // E = ln|u| changes only by sign of u under D6, which the logarithm forgets
        let p = PrepotentialParams::beta0(Sign::Plus, 1.0);
        let e = GenFun::from_prepotential(IntegralOrder::Cubic, &p).unwrap();
        let orbit = orbit_multiplicities(&e, 1e-9).unwrap();
        assert_eq!(orbit.len(), 1);
        assert_eq!(orbit.multiplicities(), vec![12]);
        // a generic polynomial has a free orbit
        let g = GenFun::parse("F:x^4+2*x^3*y").unwrap();
        let orbit = orbit_multiplicities(&g, 1e-9).unwrap();
        assert_eq!(orbit.multiplicities().iter().sum::<usize>(), 16);
        assert!(orbit.len() > 1);
    }
}
