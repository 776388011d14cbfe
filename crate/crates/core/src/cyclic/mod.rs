//! Cyclic subgroups of the Heisenberg group.
//!
//! Every non-identity element lies in a unique maximal cyclic subgroup,
//! generated by its primitive root. Maximal cyclic subgroups other than the
//! center are classified up to conjugacy by [`ConjClassId`]; for each class
//! this module computes the normalizer as a rank-two lattice together with a
//! splitting `N = <h> x <u>`.

mod bf;

pub use bf::{bf_verify, BfReport, CheckSummary};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::heis::{self, choose2, mul_i, sub, HeisElement, HeisError, Result};

/// `g = root^exponent` with `root` not a proper power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveDecomposition {
    pub root: HeisElement,
    pub exponent: i64,
}

/// `d = gcd(|a|, |b|)` and the primitive direction `(a/d, b/d)`; `d = 0` for central input.
pub(crate) fn direction_of(a: i64, b: i64) -> (i64, i64, i64) {
    let d = a.gcd(&b);
    if d == 0 {
        (0, 0, 0)
    } else {
        (d, a / d, b / d)
    }
}

/// Divisors of a positive integer, largest first.
fn divisors_desc(d: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (1..=d).filter(|n| d % n == 0).collect();
    out.reverse();
    out
}

/// Extracts the primitive root of a non-identity element.
pub fn primitive_root(g: &HeisElement) -> Result<PrimitiveDecomposition> {
    if g.is_identity() {
        return Err(HeisError::IdentityHasNoRoot);
    }
    if g.is_central() {
        return Ok(PrimitiveDecomposition {
            root: HeisElement::new(0, 0, g.c.signum()),
            exponent: g.c.checked_abs().ok_or(HeisError::Overflow)?,
        });
    }
    let (d, _, _) = direction_of(g.a, g.b);
    for n in divisors_desc(d) {
        let (ra, rb) = (g.a / n, g.b / n);
        let rest = sub(g.c, mul_i(choose2(n)?, mul_i(ra, rb)?)?)?;
        if rest % n == 0 {
            let root = HeisElement::new(ra, rb, rest / n);
            return Ok(PrimitiveDecomposition { root, exponent: n });
        }
    }
    unreachable!("n = 1 always divides")
}

pub fn is_primitive(g: &HeisElement) -> Result<bool> {
    Ok(primitive_root(g)?.exponent == 1)
}

/// Canonical label for a conjugacy class of maximal cyclic subgroups.
///
/// For non-central classes `(a, b)` is sign-normalized (`a > 0`, or `a = 0`
/// and `b > 0`) and `c_residue` lies in `[0, gcd(|a|, |b|))`; the element
/// `(a, b, c_residue)` is a primitive generator of the class representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ConjClassId {
    NonCentralClass { a: i64, b: i64, c_residue: i64 },
    CenterZ,
}

impl ConjClassId {
    /// Generator of the chosen representative subgroup.
    pub fn representative(&self) -> HeisElement {
        match *self {
            ConjClassId::NonCentralClass { a, b, c_residue } => HeisElement::new(a, b, c_residue),
            ConjClassId::CenterZ => HeisElement::center_generator(),
        }
    }

    pub fn is_center(&self) -> bool {
        matches!(self, ConjClassId::CenterZ)
    }

    /// `gcd(|a|, |b|)` of the class, 0 for the center.
    pub fn gcd(&self) -> i64 {
        match *self {
            ConjClassId::NonCentralClass { a, b, .. } => a.gcd(&b),
            ConjClassId::CenterZ => 0,
        }
    }
}

impl std::fmt::Display for ConjClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConjClassId::NonCentralClass { a, b, c_residue } => write!(f, "({a},{b},{c_residue})"),
            ConjClassId::CenterZ => write!(f, "Z"),
        }
    }
}

fn require_primitive(g: &HeisElement) -> Result<()> {
    if is_primitive(g)? {
        Ok(())
    } else {
        Err(HeisError::NotPrimitive)
    }
}

/// Flips a generator so its `(a, b)` part is sign-normalized.
fn sign_normalized(g: &HeisElement) -> Result<HeisElement> {
    if g.a < 0 || (g.a == 0 && g.b < 0) {
        g.inv()
    } else {
        Ok(*g)
    }
}

pub fn canonical_class(g: &HeisElement) -> Result<ConjClassId> {
    require_primitive(g)?;
    if g.is_central() {
        return Ok(ConjClassId::CenterZ);
    }
    let g = sign_normalized(g)?;
    let d = g.a.gcd(&g.b);
    Ok(ConjClassId::NonCentralClass { a: g.a, b: g.b, c_residue: g.c.rem_euclid(d) })
}

/// Whether `<g1>` and `<g2>` are conjugate subgroups.
pub fn are_conjugate(g1: &HeisElement, g2: &HeisElement) -> Result<bool> {
    Ok(canonical_class(g1)? == canonical_class(g2)?)
}

/// Reduces `(x, y)` modulo the line `Z (p, q)`, with `(p, q)` sign-normalized
/// and nonzero. Returns the reduced pair and the multiple removed.
pub(crate) fn reduce_along(x: i64, y: i64, p: i64, q: i64) -> Result<(i64, i64, i64)> {
    debug_assert!(p > 0 || (p == 0 && q > 0));
    if p > 0 {
        let xr = x.rem_euclid(p);
        let t = (x - xr) / p;
        Ok((xr, sub(y, mul_i(t, q)?)?, t))
    } else {
        let yr = y.rem_euclid(q);
        let t = (y - yr) / q;
        Ok((x, yr, t))
    }
}

/// Returns `gamma` with `gamma <g_from> gamma^-1 = <g_to>`.
///
/// The answer is unique up to right multiplication by the normalizer of
/// `<g_from>`; the returned element is the canonical coset representative
/// (third coordinate zero, `(x, y)` reduced along the class direction).
pub fn find_conjugator(g_from: &HeisElement, g_to: &HeisElement) -> Result<HeisElement> {
    if !are_conjugate(g_from, g_to)? {
        return Err(HeisError::NotConjugate);
    }
    if g_from.is_central() {
        return Ok(HeisElement::IDENTITY);
    }
    let from = sign_normalized(g_from)?;
    let to = sign_normalized(g_to)?;
    // Solve x b - y a = delta.
    let delta = sub(to.c, from.c)?;
    let eg = from.b.extended_gcd(&from.a);
    let d = eg.gcd;
    debug_assert_eq!(delta % d, 0);
    let x = mul_i(eg.x, delta / d)?;
    let y = heis::neg(mul_i(eg.y, delta / d)?)?;
    let (_, p, q) = direction_of(from.a, from.b);
    let (xr, yr, _) = reduce_along(x, y, p, q)?;
    let gamma = HeisElement::new(xr, yr, 0);
    debug_assert_eq!(gamma.conjugate(&from)?, to);
    Ok(gamma)
}

/// The normalizer `{gamma : gamma <g> gamma^-1 = <g>}` of a non-central
/// primitive `g`: all `direction^t * center^z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerLattice {
    pub direction_gen: HeisElement,
    pub center_gen: HeisElement,
}

impl NormalizerLattice {
    fn direction(&self) -> (i64, i64) {
        (self.direction_gen.a, self.direction_gen.b)
    }

    /// Membership: `(x, y)` is an integer multiple of the direction.
    pub fn contains(&self, gamma: &HeisElement) -> bool {
        let (p, q) = self.direction();
        // x q - y p == 0, computed in i128 so the test itself cannot overflow.
        (gamma.a as i128) * (q as i128) == (gamma.b as i128) * (p as i128)
    }

    /// Coordinates `(t, z)` with `n = direction^t * center^z`.
    pub fn coordinates(&self, n: &HeisElement) -> Result<(i64, i64)> {
        if !self.contains(n) {
            return Err(HeisError::OutsideNormalizer(*n));
        }
        let (p, q) = self.direction();
        let t = if p != 0 { n.a / p } else { n.b / q };
        let z = sub(n.c, mul_i(choose2(t)?, mul_i(p, q)?)?)?;
        Ok((t, z))
    }

    pub fn element(&self, t: i64, z: i64) -> Result<HeisElement> {
        self.direction_gen.pow(t)?.mul(&self.center_gen.pow(z)?)
    }

    /// Splits `delta = rep * n` with `n` in the normalizer and `rep` the
    /// canonical representative of the left coset `delta N`.
    pub fn coset_decompose(&self, delta: &HeisElement) -> Result<(HeisElement, HeisElement)> {
        let (p, q) = self.direction();
        let (xr, yr, _) = reduce_along(delta.a, delta.b, p, q)?;
        let rep = HeisElement::new(xr, yr, 0);
        let n = rep.inv()?.mul(delta)?;
        if !self.contains(&n) {
            return Err(HeisError::OutsideNormalizer(n));
        }
        Ok((rep, n))
    }

    pub fn coset_rep(&self, delta: &HeisElement) -> Result<HeisElement> {
        Ok(self.coset_decompose(delta)?.0)
    }
}

pub fn normalizer(g: &HeisElement) -> Result<NormalizerLattice> {
    require_primitive(g)?;
    if g.is_central() {
        return Err(HeisError::CentralNormalizer);
    }
    let g = sign_normalized(g)?;
    let (_, p, q) = direction_of(g.a, g.b);
    Ok(NormalizerLattice { direction_gen: HeisElement::new(p, q, 0), center_gen: HeisElement::center_generator() })
}

/// How the subgroup `Z <g>` sits inside the normalizer of `<g>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "relation")]
pub enum NormalizerComparison {
    Equal,
    ProperContainment { index: i64 },
}

/// `[N(<g>) : Z<g>]`. The quotient is generated by the direction generator,
/// whose `d`-th power is the first one landing in `Z<g>`.
pub fn compare_normalizer_zh(g: &HeisElement) -> Result<NormalizerComparison> {
    normalizer(g)?;
    let d = g.a.gcd(&g.b);
    Ok(if d == 1 { NormalizerComparison::Equal } else { NormalizerComparison::ProperContainment { index: d } })
}

/// Direct-product splitting `N = <h> x <u>` of the normalizer.
///
/// `exponent_matrix` has the coordinates of `h` and `u` (in the basis
/// `direction_gen`, `center_gen`) as its columns: `[[d, p], [k, q]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub h: HeisElement,
    pub u: HeisElement,
    pub exponent_matrix: [[i64; 2]; 2],
    pub lattice: NormalizerLattice,
}

impl Splitting {
    pub fn determinant(&self) -> Result<i64> {
        let m = &self.exponent_matrix;
        sub(mul_i(m[0][0], m[1][1])?, mul_i(m[0][1], m[1][0])?)
    }

    /// Exponents `(j, m)` with `n = h^j u^m`.
    pub fn factor(&self, n: &HeisElement) -> Result<(i64, i64)> {
        let (t, z) = self.lattice.coordinates(n)?;
        let [[d, p], [k, q]] = self.exponent_matrix;
        // The matrix has determinant 1, so its inverse is [[q, -p], [-k, d]].
        let j = sub(mul_i(q, t)?, mul_i(p, z)?)?;
        let m = sub(mul_i(d, z)?, mul_i(k, t)?)?;
        Ok((j, m))
    }

    /// Exponent of `u` in `n`: the projection `N -> N / <h>`.
    pub fn complement_exponent(&self, n: &HeisElement) -> Result<i64> {
        Ok(self.factor(n)?.1)
    }
}

pub fn splitting(g: &HeisElement) -> Result<Splitting> {
    let lattice = normalizer(g)?;
    let h = sign_normalized(g)?;
    let (d, k) = lattice.coordinates(&h)?;
    if d.gcd(&k) != 1 {
        return Err(HeisError::NotDirectFactor);
    }
    // Complete (d, k) to [[d, p], [k, q]] with d q - k p = 1, p in [0, d).
    let eg = d.extended_gcd(&k);
    let (mut p, mut q) = (heis::neg(eg.y)?, eg.x);
    let shift = Integer::div_floor(&p, &d);
    p = sub(p, mul_i(shift, d)?)?;
    q = sub(q, mul_i(shift, k)?)?;
    let u = lattice.element(p, q)?;
    let split = Splitting { h, u, exponent_matrix: [[d, p], [k, q]], lattice };
    if split.determinant()? != 1 {
        return Err(HeisError::NotDirectFactor);
    }
    Ok(split)
}

/// A finitely generated subgroup, given by generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub generators: Vec<HeisElement>,
}

impl SubgroupSpec {
    pub fn new(generators: Vec<HeisElement>) -> Self {
        SubgroupSpec { generators }
    }

    pub fn cyclic(g: HeisElement) -> Self {
        SubgroupSpec { generators: vec![g] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SubgroupClass {
    Trivial,
    /// Generated by `(0, 0, c)` with `c > 0`.
    CentralCyclic {
        generator: HeisElement,
    },
    /// Generated by `root^exponent`.
    NonCentralCyclic {
        decomposition: PrimitiveDecomposition,
    },
    AbelianNonCyclic,
    NonAbelian,
}

impl SubgroupClass {
    pub fn is_cyclic(&self) -> bool {
        matches!(
            self,
            SubgroupClass::Trivial | SubgroupClass::CentralCyclic { .. } | SubgroupClass::NonCentralCyclic { .. }
        )
    }
}

/// Classifies `<K>` by folding its generators into a lattice.
///
/// A non-abelian pair decides immediately. Otherwise all generators live in
/// the abelian group `{direction^t center^z}` for a common direction, and the
/// subgroup is cyclic iff the exponent vectors `(t, z)` span a rank-one lattice.
pub fn classify_subgroup(k: &SubgroupSpec) -> Result<SubgroupClass> {
    if k.generators.is_empty() {
        return Err(HeisError::EmptyGenerators);
    }
    let gens: Vec<HeisElement> = k.generators.iter().copied().filter(|g| !g.is_identity()).collect();
    if gens.is_empty() {
        return Ok(SubgroupClass::Trivial);
    }
    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i + 1..] {
            if !g.commutator(h)?.is_identity() {
                return Ok(SubgroupClass::NonAbelian);
            }
        }
    }

    let Some(noncentral) = gens.iter().find(|g| !g.is_central()) else {
        let c = gens.iter().fold(0i64, |acc, g| acc.gcd(&g.c));
        return Ok(SubgroupClass::CentralCyclic { generator: HeisElement::new(0, 0, c) });
    };
    let (_, p, q) = direction_of(noncentral.a, noncentral.b);
    let lattice =
        NormalizerLattice { direction_gen: HeisElement::new(p, q, 0), center_gen: HeisElement::center_generator() };

    // Running basis of the span, kept in Hermite form: either one vector or two.
    let mut span: Option<(i64, i64)> = None;
    for g in &gens {
        let v = lattice.coordinates(g)?;
        span = match span {
            None => Some(v),
            Some(w) => {
                let det = sub(mul_i(w.0, v.1)?, mul_i(w.1, v.0)?)?;
                if det != 0 {
                    return Ok(SubgroupClass::AbelianNonCyclic);
                }
                Some(gcd_parallel(w, v))
            }
        };
    }
    let (t, z) = span.expect("at least one generator");
    let generator = lattice.element(t, z)?;
    let decomposition = primitive_root(&generator)?;
    Ok(SubgroupClass::NonCentralCyclic { decomposition })
}

/// Generator of the span of two parallel vectors.
fn gcd_parallel(w: (i64, i64), v: (i64, i64)) -> (i64, i64) {
    let gw = w.0.gcd(&w.1);
    let prim = (w.0 / gw, w.1 / gw);
    let mv = if prim.0 != 0 { v.0 / prim.0 } else { v.1 / prim.1 };
    let m = gw.gcd(&mv);
    (prim.0 * m, prim.1 * m)
}

/// Whether `g` lies in the cyclic group generated by `x` (`x` non-identity).
pub fn cyclic_contains(x: &HeisElement, g: &HeisElement) -> Result<bool> {
    let j = if x.a != 0 {
        if g.a % x.a != 0 {
            return Ok(false);
        }
        g.a / x.a
    } else if x.b != 0 {
        if g.b % x.b != 0 {
            return Ok(false);
        }
        g.b / x.b
    } else if x.c != 0 {
        if g.c % x.c != 0 {
            return Ok(false);
        }
        g.c / x.c
    } else {
        return Ok(g.is_identity());
    };
    Ok(x.pow(j)? == *g)
}

/// Index of `Z<g>` in the normalizer, for every non-central class met in the ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZhFinding {
    pub class: ConjClassId,
    pub gcd: i64,
    pub comparison: NormalizerComparison,
}

pub fn zh_findings(bound: i64) -> Result<Vec<ZhFinding>> {
    let mut out = std::collections::BTreeMap::new();
    for g in heis::ball(bound) {
        if g.is_central() || !is_primitive(&g)? {
            continue;
        }
        let class = canonical_class(&g)?;
        if let std::collections::btree_map::Entry::Vacant(slot) = out.entry(class) {
            let comparison = compare_normalizer_zh(&class.representative())?;
            slot.insert(ZhFinding { class, gcd: class.gcd(), comparison });
        }
    }
    Ok(out.into_values().collect())
}
