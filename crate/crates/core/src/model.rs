//! Symbolic model of the three-dimensional vc-universal space
//! `E = Cyl(f, g)`.
//!
//! Points come in three kinds:
//!
//! * `VPoint`: a point of the plane `V = R^2`, where `(a, b, c)` translates by `(a, b)`;
//! * `WPoint`: a point `[delta, w]` of the induced space `W_alpha`, with
//!   `delta` a coset representative of the normalizer `N` and `w` on the line
//!   `W~_alpha`, where `N / <h>` acts by translation;
//! * `Interior`: a point `[delta, (v, w)]` of `U_alpha x (0, 1)`, the open part
//!   of the cylinder between `V` and `W`.
//!
//! `N` acts on `(v, w)` diagonally: `h^j u^m` moves `v` by `d j + p m` (the
//! direction exponent) and `w` by `m`. Coordinates are exact rationals.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclic::{
    canonical_class, classify_subgroup, cyclic_contains, find_conjugator, normalizer, reduce_along, splitting,
    ConjClassId, NormalizerLattice, Splitting, SubgroupClass, SubgroupSpec,
};
use crate::heis::{HeisElement, HeisError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    TowardV,
    TowardW,
}

#[derive(Debug, Clone, Copy, Eq, Serialize, Deserialize)]
pub enum PointE {
    VPoint {
        x: Rational64,
        y: Rational64,
    },
    WPoint {
        class: ConjClassId,
        coset: HeisElement,
        w: Rational64,
    },
    /// `s` is the distance from the `V` end when `side` is `TowardV`, and
    /// from the `W` end when it is `TowardW`.
    Interior {
        class: ConjClassId,
        coset: HeisElement,
        v: Rational64,
        w: Rational64,
        side: Side,
        s: Rational64,
    },
}

fn radd(x: Rational64, k: i64) -> Result<Rational64> {
    x.checked_add(&Rational64::from_integer(k)).ok_or(HeisError::Overflow)
}

/// Precomputed data for one conjugacy class: the representative generator,
/// its normalizer and splitting.
#[derive(Debug, Clone, Copy)]
pub struct ClassFrame {
    pub class: ConjClassId,
    pub generator: HeisElement,
    pub splitting: Splitting,
}

impl ClassFrame {
    pub fn new(class: ConjClassId) -> Result<Self> {
        if class.is_center() {
            return Err(HeisError::InvalidPoint("the center indexes no W-line".into()));
        }
        let generator = class.representative();
        Ok(ClassFrame { class, generator, splitting: splitting(&generator)? })
    }

    pub fn lattice(&self) -> &NormalizerLattice {
        &self.splitting.lattice
    }

    /// `[delta, (v, w)] = [rep, n . (v, w)]` where `delta = rep * n`.
    fn normalize(
        &self,
        delta: &HeisElement,
        v: Rational64,
        w: Rational64,
    ) -> Result<(HeisElement, Rational64, Rational64)> {
        let (rep, n) = self.lattice().coset_decompose(delta)?;
        let (t, _) = self.lattice().coordinates(&n)?;
        let m = self.splitting.complement_exponent(&n)?;
        Ok((rep, radd(v, t)?, radd(w, m)?))
    }
}

impl PointE {
    pub fn v_point(x: Rational64, y: Rational64) -> PointE {
        PointE::VPoint { x, y }
    }

    pub fn w_point(class: ConjClassId, coset: HeisElement, w: Rational64) -> Result<PointE> {
        let frame = ClassFrame::new(class)?;
        let (coset, _, w) = frame.normalize(&coset, Rational64::zero(), w)?;
        Ok(PointE::WPoint { class, coset, w })
    }

    pub fn interior(
        class: ConjClassId,
        coset: HeisElement,
        v: Rational64,
        w: Rational64,
        side: Side,
        s: Rational64,
    ) -> Result<PointE> {
        if s <= Rational64::zero() || s >= Rational64::one() {
            return Err(HeisError::InvalidPoint(format!("cylinder parameter {s} outside (0, 1)")));
        }
        let frame = ClassFrame::new(class)?;
        let (coset, v, w) = frame.normalize(&coset, v, w)?;
        Ok(PointE::Interior { class, coset, v, w, side, s })
    }

    /// Class of a W or interior point.
    pub fn class(&self) -> Option<ConjClassId> {
        match *self {
            PointE::VPoint { .. } => None,
            PointE::WPoint { class, .. } | PointE::Interior { class, .. } => Some(class),
        }
    }

    /// Same point with the coset in normal form.
    pub fn normalized(&self) -> Result<PointE> {
        match *self {
            PointE::VPoint { .. } => Ok(*self),
            PointE::WPoint { class, coset, w } => PointE::w_point(class, coset, w),
            PointE::Interior { class, coset, v, w, side, s } => PointE::interior(class, coset, v, w, side, s),
        }
    }

    /// Position along the cylinder measured from the `V` end.
    fn position(side: Side, s: Rational64) -> Rational64 {
        match side {
            Side::TowardV => s,
            Side::TowardW => Rational64::one() - s,
        }
    }

    /// Limit towards the `V` end: `delta . (v a', v b')`, the map `f`.
    pub fn limit_to_v(&self) -> Result<Option<PointE>> {
        let PointE::Interior { class, coset, v, .. } = *self else { return Ok(None) };
        let dir = ClassFrame::new(class)?.lattice().direction_gen;
        let coord = |base: i64, step: i64| -> Result<Rational64> {
            v.checked_mul(&Rational64::from_integer(step))
                .and_then(|x| x.checked_add(&Rational64::from_integer(base)))
                .ok_or(HeisError::Overflow)
        };
        Ok(Some(PointE::VPoint { x: coord(coset.a, dir.a)?, y: coord(coset.b, dir.b)? }))
    }

    /// Limit towards the `W` end: `[delta, w]`, the map `g`.
    pub fn limit_to_w(&self) -> Result<Option<PointE>> {
        let PointE::Interior { class, coset, w, .. } = *self else { return Ok(None) };
        PointE::w_point(class, coset, w).map(Some)
    }
}

impl PointE {
    /// Field-wise equality, with interior positions compared from the V end.
    fn same_fields(x: &PointE, y: &PointE) -> bool {
        match (*x, *y) {
            (PointE::VPoint { x: x1, y: y1 }, PointE::VPoint { x: x2, y: y2 }) => x1 == x2 && y1 == y2,
            (PointE::WPoint { class: c1, coset: d1, w: w1 }, PointE::WPoint { class: c2, coset: d2, w: w2 }) => {
                c1 == c2 && d1 == d2 && w1 == w2
            }
            (
                PointE::Interior { class: c1, coset: d1, v: v1, w: w1, side: s1, s: t1 },
                PointE::Interior { class: c2, coset: d2, v: v2, w: w2, side: s2, s: t2 },
            ) => c1 == c2 && d1 == d2 && v1 == v2 && w1 == w2 && Self::position(s1, t1) == Self::position(s2, t2),
            _ => false,
        }
    }
}

impl PartialEq for PointE {
    fn eq(&self, other: &Self) -> bool {
        if PointE::same_fields(self, other) {
            return true;
        }
        match (self.normalized(), other.normalized()) {
            (Ok(x), Ok(y)) => PointE::same_fields(&x, &y),
            _ => false,
        }
    }
}

/// The action of the Heisenberg group on `E`.
pub fn act(gamma: &HeisElement, p: &PointE) -> Result<PointE> {
    let frame = p.class().map(ClassFrame::new).transpose()?;
    act_with(frame.as_ref(), gamma, p)
}

/// [`act`] with the class data of `p` supplied by the caller, for loops that
/// move one point by many elements.
pub fn act_with(frame: Option<&ClassFrame>, gamma: &HeisElement, p: &PointE) -> Result<PointE> {
    let framed = |class: ConjClassId| -> Result<ClassFrame> {
        match frame {
            Some(f) if f.class == class => Ok(*f),
            _ => ClassFrame::new(class),
        }
    };
    match *p {
        PointE::VPoint { x, y } => Ok(PointE::VPoint { x: radd(x, gamma.a)?, y: radd(y, gamma.b)? }),
        PointE::WPoint { class, coset, w } => {
            let (coset, _, w) = framed(class)?.normalize(&gamma.mul(&coset)?, Rational64::zero(), w)?;
            Ok(PointE::WPoint { class, coset, w })
        }
        PointE::Interior { class, coset, v, w, side, s } => {
            let (coset, v, w) = framed(class)?.normalize(&gamma.mul(&coset)?, v, w)?;
            Ok(PointE::Interior { class, coset, v, w, side, s })
        }
    }
}

/// Stabilizer of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum IsotropyDesc {
    Trivial,
    Center,
    /// `conjugator <rep> conjugator^-1` for the class representative `rep`.
    MaxCyclicConj {
        class: ConjClassId,
        conjugator: HeisElement,
    },
}

impl IsotropyDesc {
    pub fn contains(&self, g: &HeisElement) -> Result<bool> {
        match self {
            IsotropyDesc::Trivial => Ok(g.is_identity()),
            IsotropyDesc::Center => Ok(g.is_central()),
            IsotropyDesc::MaxCyclicConj { class, conjugator } => {
                let gen = conjugator.conjugate(&class.representative())?;
                cyclic_contains(&gen, g)
            }
        }
    }

    pub fn conjugated_by(&self, gamma: &HeisElement) -> Result<IsotropyDesc> {
        Ok(match *self {
            IsotropyDesc::MaxCyclicConj { class, conjugator } => {
                IsotropyDesc::MaxCyclicConj { class, conjugator: gamma.mul(&conjugator)? }
            }
            other => other,
        })
    }

    /// Equality as subgroups: conjugators may differ by a normalizer element.
    pub fn same_subgroup(&self, other: &IsotropyDesc) -> Result<bool> {
        match (self, other) {
            (
                IsotropyDesc::MaxCyclicConj { class: c1, conjugator: g1 },
                IsotropyDesc::MaxCyclicConj { class: c2, conjugator: g2 },
            ) => {
                if c1 != c2 {
                    return Ok(false);
                }
                let n = normalizer(&c1.representative())?;
                Ok(n.contains(&g1.inv()?.mul(g2)?))
            }
            (x, y) => Ok(x == y),
        }
    }
}

pub fn isotropy(p: &PointE) -> Result<IsotropyDesc> {
    Ok(match p.normalized()? {
        PointE::VPoint { .. } => IsotropyDesc::Center,
        PointE::WPoint { class, coset, .. } => IsotropyDesc::MaxCyclicConj { class, conjugator: coset },
        PointE::Interior { .. } => IsotropyDesc::Trivial,
    })
}

/// Fixed set `E^K` of a subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FixedSetDesc {
    Empty,
    WholeE,
    VPlane,
    /// The line `{[coset, w]}` inside `W_class`.
    WLine {
        class: ConjClassId,
        coset: HeisElement,
    },
}

impl FixedSetDesc {
    /// Label of the case analysis: A (non-central cyclic), B (central),
    /// C (trivial), D (not cyclic).
    pub fn case(&self) -> char {
        match self {
            FixedSetDesc::WLine { .. } => 'A',
            FixedSetDesc::VPlane => 'B',
            FixedSetDesc::WholeE => 'C',
            FixedSetDesc::Empty => 'D',
        }
    }

    pub fn contains(&self, p: &PointE) -> Result<bool> {
        Ok(match (self, p.normalized()?) {
            (FixedSetDesc::WholeE, _) => true,
            (FixedSetDesc::VPlane, PointE::VPoint { .. }) => true,
            (FixedSetDesc::WLine { class, coset }, PointE::WPoint { class: pc, coset: pd, .. }) => {
                *class == pc && *coset == pd
            }
            _ => false,
        })
    }
}

pub fn fixed_set(k: &SubgroupSpec) -> Result<FixedSetDesc> {
    Ok(match classify_subgroup(k)? {
        SubgroupClass::Trivial => FixedSetDesc::WholeE,
        SubgroupClass::CentralCyclic { .. } => FixedSetDesc::VPlane,
        SubgroupClass::NonCentralCyclic { decomposition } => {
            let class = canonical_class(&decomposition.root)?;
            let frame = ClassFrame::new(class)?;
            let gamma = find_conjugator(&frame.generator, &decomposition.root)?;
            FixedSetDesc::WLine { class, coset: frame.lattice().coset_rep(&gamma)? }
        }
        SubgroupClass::AbelianNonCyclic | SubgroupClass::NonAbelian => FixedSetDesc::Empty,
    })
}

/// Number of coset representatives `gamma_i` (met inside a ball) with
/// `K <= gamma_i H gamma_i^-1`, for two coset decompositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    /// Cosets of the normalizer `N(H)`.
    pub computed_normalizer: usize,
    /// Cosets of the subgroup `Z H`.
    pub zh: usize,
}

pub fn fixed_point_census(k: &SubgroupSpec, bound: i64) -> Result<Census> {
    let SubgroupClass::NonCentralCyclic { decomposition } = classify_subgroup(k)? else {
        return Err(HeisError::CensusNeedsNonCentralCyclic);
    };
    let k_gen = decomposition.root.pow(decomposition.exponent)?;
    let class = canonical_class(&decomposition.root)?;
    let frame = ClassFrame::new(class)?;
    let rep = frame.generator;

    let mut n_reps = BTreeSet::new();
    let mut zh_reps = BTreeSet::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let gamma = HeisElement::new(x, y, 0);
            n_reps.insert(frame.lattice().coset_rep(&gamma)?);
            let (xr, yr, _) = reduce_along(x, y, rep.a, rep.b)?;
            zh_reps.insert(HeisElement::new(xr, yr, 0));
        }
    }
    let qualifies = |gamma: &HeisElement| -> Result<bool> { cyclic_contains(&gamma.conjugate(&rep)?, &k_gen) };
    let count = |reps: &BTreeSet<HeisElement>| -> Result<usize> {
        let mut n = 0;
        for gamma in reps {
            if qualifies(gamma)? {
                n += 1;
            }
        }
        Ok(n)
    };
    Ok(Census { computed_normalizer: count(&n_reps)?, zh: count(&zh_reps)? })
}

/// Serializable answer to a fixed-set query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedSetReport {
    pub case: String,
    pub class: Option<ConjClassId>,
    pub coset: Option<HeisElement>,
    pub census: Option<Census>,
}

pub fn fixed_set_report(k: &SubgroupSpec, bound: i64) -> Result<FixedSetReport> {
    let desc = fixed_set(k)?;
    let (class, coset, census) = match desc {
        FixedSetDesc::WLine { class, coset } => (Some(class), Some(coset), Some(fixed_point_census(k, bound)?)),
        _ => (None, None, None),
    };
    Ok(FixedSetReport { case: desc.case().to_string(), class, coset, census })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heis::ball;

    fn e(a: i64, b: i64, c: i64) -> HeisElement {
        HeisElement::new(a, b, c)
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn class_of(g: HeisElement) -> ConjClassId {
        canonical_class(&g).unwrap()
    }

    #[test]
    fn act_examples() {
        let p = PointE::v_point(r(0, 1), r(0, 1));
        assert_eq!(act(&e(1, 0, 0), &p).unwrap(), PointE::v_point(r(1, 1), r(0, 1)));
        let q = PointE::v_point(r(5, 2), r(-1, 1));
        assert_eq!(act(&e(0, 0, 5), &q).unwrap(), q);
        let w = PointE::w_point(class_of(e(0, 1, 0)), HeisElement::IDENTITY, r(0, 1)).unwrap();
        assert_eq!(act(&e(0, 1, 0), &w).unwrap(), w);
    }

    #[test]
    fn center_translates_w_by_gcd() {
        let class = class_of(e(2, 0, 1));
        let w = PointE::w_point(class, HeisElement::IDENTITY, r(0, 1)).unwrap();
        let moved = act(&e(0, 0, 1), &w).unwrap();
        assert_eq!(moved, PointE::w_point(class, HeisElement::IDENTITY, r(2, 1)).unwrap());
    }

    #[test]
    fn isotropy_examples() {
        assert_eq!(isotropy(&PointE::v_point(r(1, 2), r(11, 5))).unwrap(), IsotropyDesc::Center);
        let class = class_of(e(0, 1, 0));
        let w = PointE::w_point(class, HeisElement::IDENTITY, r(3, 10)).unwrap();
        assert_eq!(isotropy(&w).unwrap(), IsotropyDesc::MaxCyclicConj { class, conjugator: HeisElement::IDENTITY });
        let p = PointE::interior(class, e(1, 2, 3), r(1, 3), r(-2, 1), Side::TowardW, r(1, 2)).unwrap();
        assert_eq!(isotropy(&p).unwrap(), IsotropyDesc::Trivial);
    }

    #[test]
    fn isotropy_matches_brute_stabilizer() {
        let points = [
            PointE::v_point(r(1, 3), r(0, 1)),
            PointE::w_point(class_of(e(2, 0, 1)), e(0, 1, 0), r(1, 2)).unwrap(),
            PointE::w_point(class_of(e(1, 1, 0)), e(2, -1, 0), r(0, 1)).unwrap(),
            PointE::w_point(class_of(e(2, 3, 0)), e(1, 0, 0), r(5, 3)).unwrap(),
            PointE::interior(class_of(e(1, 0, 0)), e(0, 2, 0), r(0, 1), r(0, 1), Side::TowardV, r(1, 4)).unwrap(),
        ];
        for p in &points {
            let iso = isotropy(p).unwrap();
            for gamma in ball(4) {
                let fixed = act(&gamma, p).unwrap() == *p;
                assert_eq!(fixed, iso.contains(&gamma).unwrap(), "{p:?} {gamma}");
            }
        }
    }

    #[test]
    fn interior_parameter_must_be_open() {
        let class = class_of(e(1, 0, 0));
        for s in [r(0, 1), r(1, 1), r(3, 2)] {
            assert!(PointE::interior(class, HeisElement::IDENTITY, r(0, 1), r(0, 1), Side::TowardV, s).is_err());
        }
        assert!(PointE::w_point(ConjClassId::CenterZ, HeisElement::IDENTITY, r(0, 1)).is_err());
    }

    #[test]
    fn equality_uses_coset_normal_form() {
        let class = class_of(e(0, 1, 0));
        // (0,1,0) is the class generator, so [delta h, w] = [delta, w]
        let a = PointE::WPoint { class, coset: e(3, 1, 3), w: r(1, 1) };
        let b = PointE::WPoint { class, coset: e(3, 0, 0), w: r(1, 1) };
        assert_eq!(a, b);
        // (3,1,0) = (3,0,0) h z^-3 and the center moves w by one per step
        let a = PointE::WPoint { class, coset: e(3, 1, 0), w: r(1, 1) };
        assert_eq!(a, PointE::WPoint { class, coset: e(3, 0, 0), w: r(-2, 1) });
        assert_ne!(a, b);
        // the two sides parametrize the same segment
        let p = PointE::interior(class, HeisElement::IDENTITY, r(0, 1), r(0, 1), Side::TowardV, r(1, 4)).unwrap();
        let q = PointE::interior(class, HeisElement::IDENTITY, r(0, 1), r(0, 1), Side::TowardW, r(3, 4)).unwrap();
        assert_eq!(p, q);
        assert_ne!(p, PointE::v_point(r(0, 1), r(0, 1)));
    }

    #[test]
    fn limits_are_equivariant() {
        let p = PointE::interior(class_of(e(2, 3, 0)), e(1, -1, 0), r(1, 2), r(-3, 4), Side::TowardV, r(1, 3)).unwrap();
        for gamma in ball(2) {
            let moved = act(&gamma, &p).unwrap();
            let fv = act(&gamma, &p.limit_to_v().unwrap().unwrap()).unwrap();
            assert_eq!(moved.limit_to_v().unwrap().unwrap(), fv);
            let gw = act(&gamma, &p.limit_to_w().unwrap().unwrap()).unwrap();
            assert_eq!(moved.limit_to_w().unwrap().unwrap(), gw);
        }
        assert_eq!(PointE::v_point(r(0, 1), r(0, 1)).limit_to_v().unwrap(), None);
    }

    #[test]
    fn fixed_set_examples() {
        assert_eq!(fixed_set(&SubgroupSpec::cyclic(e(0, 0, 5))).unwrap(), FixedSetDesc::VPlane);
        assert_eq!(fixed_set(&SubgroupSpec::cyclic(HeisElement::IDENTITY)).unwrap(), FixedSetDesc::WholeE);
        let k = SubgroupSpec::new(vec![e(1, 0, 0), e(0, 1, 0)]);
        assert_eq!(fixed_set(&k).unwrap(), FixedSetDesc::Empty);
        let desc = fixed_set(&SubgroupSpec::cyclic(e(4, 6, 8))).unwrap();
        let FixedSetDesc::WLine { class, coset } = desc else { panic!("{desc:?}") };
        assert_eq!(class, class_of(e(2, 3, 1)));
        let gen = coset.conjugate(&class.representative()).unwrap();
        assert!(cyclic_contains(&gen, &e(4, 6, 8)).unwrap());
        assert_eq!(desc.case(), 'A');
    }

    #[test]
    fn census_examples() {
        let c = fixed_point_census(&SubgroupSpec::cyclic(e(0, 1, 0)), 4).unwrap();
        assert_eq!(c.computed_normalizer, 1);
        let c = fixed_point_census(&SubgroupSpec::cyclic(e(2, 0, 1)), 4).unwrap();
        assert_eq!(c, Census { computed_normalizer: 1, zh: 2 });
        let c = fixed_point_census(&SubgroupSpec::cyclic(e(1, 1, 0)), 4).unwrap();
        assert_eq!(c, Census { computed_normalizer: 1, zh: 1 });
        assert_eq!(
            fixed_point_census(&SubgroupSpec::cyclic(e(0, 0, 3)), 4),
            Err(HeisError::CensusNeedsNonCentralCyclic)
        );
    }

    #[test]
    fn report_json() {
        let rep = fixed_set_report(&SubgroupSpec::cyclic(e(0, 0, 5)), 3).unwrap();
        assert_eq!(serde_json::to_string(&rep).unwrap(), r#"{"case":"B","class":null,"coset":null,"census":null}"#);
        let rep = fixed_set_report(&SubgroupSpec::cyclic(e(0, 1, 0)), 3).unwrap();
        assert_eq!(
            serde_json::to_string(&rep).unwrap(),
            r#"{"case":"A","class":{"kind":"NonCentralClass","a":0,"b":1,"c_residue":0},"coset":{"a":0,"b":0,"c":0},"census":{"computed_normalizer":1,"zh":1}}"#
        );
    }
}
