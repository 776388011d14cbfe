//! Exhaustive cross-check of the cyclic-subgroup machinery against
//! definition-level brute force on a ball of elements.
//!
//! The oracles here only use the group law; none of them calls the
//! closed-form routines they are checking.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{
    are_conjugate, canonical_class, compare_normalizer_zh, normalizer, primitive_root, splitting, NormalizerComparison,
};
use crate::heis::{ball, HeisElement, HeisError, Result};

const MAX_COUNTEREXAMPLES: usize = 25;

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub tested: u64,
    pub failed: u64,
    pub counterexamples: Vec<String>,
}

impl CheckSummary {
    pub fn new(name: impl Into<String>) -> Self {
        CheckSummary { name: name.into(), tested: 0, failed: 0, counterexamples: vec![] }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.failed += 1;
            self.counterexamples.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Sorts counterexamples and keeps the first few.
    pub fn finish(mut self) -> Self {
        self.counterexamples.sort();
        self.counterexamples.dedup();
        self.counterexamples.truncate(MAX_COUNTEREXAMPLES);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfReport {
    pub bound: i64,
    pub checks: Vec<CheckSummary>,
}

impl BfReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckSummary::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn show(g: &HeisElement) -> String {
    format!("({},{},{})", g.a, g.b, g.c)
}

/// Largest `n` such that `h^n = g` for some `h`, found by searching every
/// candidate root. Roots of an element of the ball of radius `bound` have
/// `|c| <= bound + bound^2`, which fixes the search window.
pub(crate) fn oracle_max_exponent(g: &HeisElement, bound: i64) -> i64 {
    let reach = bound + bound * bound;
    let nmax = g.a.abs().max(g.b.abs()).max(g.c.abs()).max(1);
    let mut best = 0;
    for n in 1..=nmax {
        for ha in -bound..=bound {
            if ha * n != g.a {
                continue;
            }
            for hb in -bound..=bound {
                if hb * n != g.b {
                    continue;
                }
                let hit = (-reach..=reach).any(|hc| HeisElement::new(ha, hb, hc).pow(n) == Ok(*g));
                if hit {
                    best = n;
                }
            }
        }
    }
    best
}

/// Conjugates of `<g>` by every `gamma` in a ball, each recorded by both generators.
fn oracle_orbit(g: &HeisElement, conj_bound: i64) -> Result<HashSet<HeisElement>> {
    let mut out = HashSet::new();
    let ginv = g.inv()?;
    for gamma in ball(conj_bound) {
        let img = gamma.mul(g)?.mul(&gamma.inv()?)?;
        let img_inv = gamma.mul(&ginv)?.mul(&gamma.inv()?)?;
        out.insert(img);
        out.insert(img_inv);
    }
    Ok(out)
}

/// `gamma <g> gamma^-1 = <g>`: the conjugate of the generator is again a generator.
pub(crate) fn oracle_normalizes(g: &HeisElement, gamma: &HeisElement) -> Result<bool> {
    let img = gamma.mul(g)?.mul(&gamma.inv()?)?;
    Ok(img == *g || img == g.inv()?)
}

/// Membership in `Z <g>`: some power of `g` agrees with `x` off the center.
fn oracle_in_zh(g: &HeisElement, x: &HeisElement, window: i64) -> Result<bool> {
    for j in -window..=window {
        let p = g.pow(j)?;
        if p.a == x.a && p.b == x.b {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Index of `Z<g>` in the normalizer: collects the normalizer elements of a
/// ball around the origin and counts how many cosets of `Z<g>` they meet
/// along one generating direction.
fn oracle_zh_index(g: &HeisElement, bound: i64) -> Result<Option<i64>> {
    // Shortest nonzero (x, y) among normalizer elements found by search.
    let mut shortest: Option<HeisElement> = None;
    for x in -bound..=bound {
        for y in -bound..=bound {
            let gamma = HeisElement::new(x, y, 0);
            if (x, y) == (0, 0) || !oracle_normalizes(g, &gamma)? {
                continue;
            }
            let better = match shortest {
                None => true,
                Some(s) => x.abs() + y.abs() < s.a.abs() + s.b.abs(),
            };
            if better {
                shortest = Some(gamma);
            }
        }
    }
    let Some(step) = shortest else { return Ok(None) };
    let window = 2 * bound + 2;
    for t in 1..=window {
        if oracle_in_zh(g, &step.pow(t)?, window)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Cross-checks primitive roots, conjugacy classes, normalizers and the
/// normalizer-vs-`Z<g>` comparison on the ball `|a|, |b|, |c| <= bound`.
pub fn bf_verify(bound: i64) -> Result<BfReport> {
    if !(1..=8).contains(&bound) {
        return Err(HeisError::InvalidBound(bound));
    }
    let elems: Vec<HeisElement> = ball(bound).filter(|g| !g.is_identity()).collect();

    let mut roots = CheckSummary::new("primitive_root");
    let mut primitive = vec![];
    for g in &elems {
        let oracle = oracle_max_exponent(g, bound);
        let ok = match primitive_root(g) {
            Ok(dec) => dec.root.pow(dec.exponent) == Ok(*g) && dec.exponent == oracle,
            Err(_) => false,
        };
        roots.record(ok, || format!("{} oracle exponent {}", show(g), oracle));
        if oracle == 1 {
            primitive.push(*g);
        }
    }

    let mut invariance = CheckSummary::new("canonical_class");
    let conj_small: Vec<HeisElement> = ball(bound.min(4)).collect();
    for g in &primitive {
        let Ok(class) = canonical_class(g) else {
            invariance.record(false, || format!("{} rejected", show(g)));
            continue;
        };
        let inv_ok = g.inv().ok().and_then(|gi| canonical_class(&gi).ok()) == Some(class);
        invariance.record(inv_ok, || format!("{} inverse", show(g)));
        for gamma in &conj_small {
            let moved = gamma.conjugate(g).and_then(|x| canonical_class(&x));
            invariance.record(moved == Ok(class), || format!("{} by {}", show(g), show(gamma)));
        }
    }

    let mut conj = CheckSummary::new("are_conjugate");
    for g1 in &primitive {
        let orbit = oracle_orbit(g1, 2 * bound)?;
        for g2 in &primitive {
            let brute = orbit.contains(g2);
            let lib = are_conjugate(g1, g2);
            conj.record(lib == Ok(brute), || format!("{} ~ {} brute {}", show(g1), show(g2), brute));
        }
    }

    let mut member = CheckSummary::new("normalizer_membership");
    let mut zh = CheckSummary::new("compare_normalizer_zh");
    let mut split = CheckSummary::new("splitting");
    let gammas: Vec<HeisElement> = ball(bound).collect();
    for g in primitive.iter().filter(|g| !g.is_central()) {
        let Ok(lattice) = normalizer(g) else {
            member.record(false, || format!("{} normalizer failed", show(g)));
            continue;
        };
        let commute = lattice.direction_gen.commutator(&lattice.center_gen).map(|c| c.is_identity());
        member.record(commute == Ok(true), || format!("{} generators commute", show(g)));
        for gamma in &gammas {
            let brute = oracle_normalizes(g, gamma)?;
            member.record(lattice.contains(gamma) == brute, || {
                format!("{} normalizer contains {} brute {}", show(g), show(gamma), brute)
            });
        }

        let brute_index = oracle_zh_index(g, bound)?;
        let lib_index = compare_normalizer_zh(g).map(|c| match c {
            NormalizerComparison::Equal => 1,
            NormalizerComparison::ProperContainment { index } => index,
        });
        zh.record(brute_index.is_some() && lib_index.as_ref().ok() == brute_index.as_ref(), || {
            format!("{} index brute {:?} library {:?}", show(g), brute_index, lib_index)
        });

        let ok = match splitting(g) {
            Ok(s) => {
                let mut ok = s.determinant().map(|d| d.abs() == 1).unwrap_or(false)
                    && s.h.commutator(&s.u).map(|c| c.is_identity()).unwrap_or(false);
                for n in gammas.iter().filter(|n| lattice.contains(n)) {
                    let back = s.factor(n).and_then(|(j, m)| s.h.pow(j)?.mul(&s.u.pow(m)?));
                    ok &= back == Ok(*n);
                }
                ok
            }
            Err(_) => false,
        };
        split.record(ok, || show(g));
    }

    let mut checks: Vec<CheckSummary> =
        [roots, invariance, conj, member, zh, split].into_iter().map(CheckSummary::finish).collect();
    checks.sort_by(|x, y| x.name.cmp(&y.name));
    Ok(BfReport { bound, checks })
}
