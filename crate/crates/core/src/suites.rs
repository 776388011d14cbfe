//! Property suites over the model of `E` and the chain engine.
//!
//! Each suite returns a [`CheckSummary`] so the verifier and the tests can
//! report them alongside the exhaustive cyclic-subgroup checks.

use std::collections::HashMap;

use num_rational::Rational64;
use thiserror::Error;

use crate::chain::{
    homology, s3_double_cylinder, s3_join, torus_with_projections, ChainError, HomologyGroup, HomologyResult,
};
use crate::cyclic::{canonical_class, is_primitive, CheckSummary, ConjClassId, SubgroupSpec};
use crate::heis::{ball, HeisElement, HeisError};
use crate::model::{act, act_with, fixed_point_census, fixed_set, isotropy, ClassFrame, FixedSetDesc, PointE, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Group(#[from] HeisError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

pub type Result<T> = std::result::Result<T, SuiteError>;

/// Points per variant in [`sample_points`].
pub const SAMPLES_PER_VARIANT: usize = 24;

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn show(g: &HeisElement) -> String {
    format!("({},{},{})", g.a, g.b, g.c)
}

/// Primitive non-central generators used to seed W and interior samples,
/// covering both gcd 1 and gcd > 1 directions.
const SAMPLE_GENERATORS: [(i64, i64, i64); 8] =
    [(1, 0, 0), (0, 1, 0), (1, 1, 0), (2, 0, 1), (2, 3, 0), (1, -2, 1), (2, 2, 0), (0, 3, 2)];

/// A fixed, deterministic sample: [`SAMPLES_PER_VARIANT`] points of each of
/// the three kinds, with non-integral coordinates and non-reduced cosets.
pub fn sample_points() -> Result<Vec<PointE>> {
    let mut out = Vec::with_capacity(3 * SAMPLES_PER_VARIANT);
    for i in 0..SAMPLES_PER_VARIANT as i64 {
        out.push(PointE::v_point(r(i - 12, 3), r((5 * i) % 7 - 3, 2)));
    }
    for i in 0..SAMPLES_PER_VARIANT as i64 {
        let (a, b, c) = SAMPLE_GENERATORS[i as usize % SAMPLE_GENERATORS.len()];
        let class = canonical_class(&HeisElement::new(a, b, c))?;
        let coset = HeisElement::new(i % 5 - 2, i % 3 - 1, i % 4);
        out.push(PointE::w_point(class, coset, r(i - 10, 4))?);
    }
    for i in 0..SAMPLES_PER_VARIANT as i64 {
        let (a, b, c) = SAMPLE_GENERATORS[(i as usize + 3) % SAMPLE_GENERATORS.len()];
        let class = canonical_class(&HeisElement::new(a, b, c))?;
        let coset = HeisElement::new(i % 3 - 1, i % 5 - 2, -(i % 3));
        let side = if i % 2 == 0 { Side::TowardV } else { Side::TowardW };
        out.push(PointE::interior(class, coset, r(i - 7, 5), r(3 - i, 2), side, r(i % 5 + 1, 7))?);
    }
    Ok(out)
}

/// Largest ball used for the composition law, whose pairs grow as `bound^6`.
pub const PAIR_BOUND: i64 = 3;

/// `act(e, p) = p` and `act(g1 g2, p) = act(g1, act(g2, p))` for every pair
/// in the ball (capped at [`PAIR_BOUND`]) and every sample point.
pub fn action_laws(bound: i64) -> Result<CheckSummary> {
    let points = sample_points()?;
    let elements: Vec<HeisElement> = ball(bound.min(PAIR_BOUND)).collect();
    let mut summary = CheckSummary::new("action_laws");
    for p in &points {
        summary.record(act(&HeisElement::IDENTITY, p)? == *p, || format!("identity moves {p:?}"));
        // Products repeat a lot, so their action on p is computed once.
        let frame = p.class().map(ClassFrame::new).transpose()?;
        let mut by_product: HashMap<HeisElement, PointE> = HashMap::new();
        for g2 in &elements {
            let q = act_with(frame.as_ref(), g2, p)?;
            for g1 in &elements {
                let prod = g1.mul(g2)?;
                let lhs = match by_product.get(&prod) {
                    Some(x) => *x,
                    None => *by_product.entry(prod).or_insert(act_with(frame.as_ref(), &prod, p)?),
                };
                let rhs = act_with(frame.as_ref(), g1, &q)?;
                summary.record(lhs == rhs, || format!("{} {} on {p:?}", show(g1), show(g2)));
            }
        }
    }
    Ok(summary.finish())
}

/// `isotropy(g p) = g isotropy(p) g^-1`, and the stated isotropy is the
/// stabilizer: `g p = p` exactly for `g` in the described subgroup.
pub fn isotropy_equivariance(bound: i64) -> Result<CheckSummary> {
    let points = sample_points()?;
    let mut summary = CheckSummary::new("isotropy_equivariance");
    for p in &points {
        let iso = isotropy(p)?;
        for g in ball(bound) {
            let moved = isotropy(&act(&g, p)?)?;
            let ok = moved.same_subgroup(&iso.conjugated_by(&g)?)?;
            summary.record(ok, || format!("conjugating by {} at {p:?}", show(&g)));
            let fixes = act(&g, p)? == *p;
            summary.record(fixes == iso.contains(&g)?, || format!("stabilizer of {p:?} at {}", show(&g)));
        }
    }
    Ok(summary.finish())
}

/// Points of the W-line of `⟨g⟩` plus a neighbouring line that is not fixed.
fn line_points(g: &HeisElement) -> Result<Vec<PointE>> {
    let FixedSetDesc::WLine { class, coset } = fixed_set(&SubgroupSpec::cyclic(*g))? else { return Ok(vec![]) };
    let mut out = vec![];
    for w in [r(0, 1), r(-3, 2), r(7, 3)] {
        out.push(PointE::w_point(class, coset, w)?);
        out.push(PointE::w_point(class, HeisElement::new(1, 0, 0).mul(&coset)?, w)?);
        out.push(PointE::w_point(class, HeisElement::new(0, 1, 0).mul(&coset)?, w)?);
    }
    Ok(out)
}

/// For every cyclic `K = ⟨g⟩` in the ball: `g` fixes a point exactly when
/// the fixed set of `K` contains it. The sample is extended by points on
/// and next to the W-line of `K`.
pub fn fixed_set_consistency(bound: i64) -> Result<CheckSummary> {
    let points = sample_points()?;
    let mut summary = CheckSummary::new("fixed_set_consistency");
    for g in ball(bound) {
        let desc = fixed_set(&SubgroupSpec::cyclic(g))?;
        for p in points.iter().chain(line_points(&g)?.iter()) {
            let fixed = act(&g, p)? == *p;
            summary.record(fixed == desc.contains(p)?, || format!("{} at {p:?}", show(&g)));
        }
    }
    Ok(summary.finish())
}

/// Every primitive non-central `K` in the ball has exactly one qualifying
/// coset of the computed normalizer.
pub fn census_exactly_one(bound: i64) -> Result<CheckSummary> {
    let mut summary = CheckSummary::new("census_exactly_one");
    for g in ball(bound) {
        if g.is_central() || !is_primitive(&g)? {
            continue;
        }
        let census = fixed_point_census(&SubgroupSpec::cyclic(g), bound)?;
        summary
            .record(census.computed_normalizer == 1, || format!("{} counted {}", show(&g), census.computed_normalizer));
    }
    Ok(summary.finish())
}

/// One row of the fixed-set example table.
pub struct FixedSetCase {
    pub generators: Vec<HeisElement>,
    pub case: char,
    /// Expected class for a W-line answer.
    pub class: Option<ConjClassId>,
}

pub fn fixed_set_table() -> Vec<FixedSetCase> {
    let e = HeisElement::new;
    let row =
        |gens: Vec<HeisElement>, case: char, class: Option<ConjClassId>| FixedSetCase { generators: gens, case, class };
    vec![
        row(vec![e(0, 0, 5)], 'B', None),
        row(vec![e(0, 0, 2), e(0, 0, 3)], 'B', None),
        row(vec![HeisElement::IDENTITY], 'C', None),
        row(vec![HeisElement::IDENTITY, HeisElement::IDENTITY], 'C', None),
        row(vec![e(1, 0, 0), e(0, 1, 0)], 'D', None),
        row(vec![e(1, 0, 0), e(0, 0, 1)], 'D', None),
        row(vec![e(2, 3, 0), e(0, 0, 7)], 'D', None),
        row(vec![e(4, 6, 8)], 'A', Some(ConjClassId::NonCentralClass { a: 2, b: 3, c_residue: 0 })),
        row(vec![e(0, 1, 0)], 'A', Some(ConjClassId::NonCentralClass { a: 0, b: 1, c_residue: 0 })),
        row(vec![e(2, 0, 0), e(3, 0, 0)], 'A', Some(ConjClassId::NonCentralClass { a: 1, b: 0, c_residue: 0 })),
        row(vec![e(-2, 0, -1)], 'A', Some(ConjClassId::NonCentralClass { a: 2, b: 0, c_residue: 1 })),
    ]
}

/// The table above, plus: every generator of a Case A subgroup fixes the
/// points of the reported line.
pub fn fixed_set_cases() -> Result<CheckSummary> {
    let mut summary = CheckSummary::new("fixed_set_cases");
    for row in fixed_set_table() {
        let k = SubgroupSpec::new(row.generators.clone());
        let desc = fixed_set(&k)?;
        let gens: Vec<String> = row.generators.iter().map(show).collect();
        let class = match desc {
            FixedSetDesc::WLine { class, .. } => Some(class),
            _ => None,
        };
        summary.record(desc.case() == row.case && class == row.class, || format!("{gens:?} gave {desc:?}"));
        if let FixedSetDesc::WLine { class, coset } = desc {
            let p = PointE::w_point(class, coset, r(1, 3))?;
            for g in &row.generators {
                summary.record(act(g, &p)? == p, || format!("{} moves its line", show(g)));
            }
        }
    }
    Ok(summary.finish())
}

fn expect_homology(name: &str, got: &HomologyResult, expected: &[HomologyGroup]) -> CheckSummary {
    let mut summary = CheckSummary::new(name);
    summary.record(got.groups == expected, || format!("got {got}"));
    summary.finish()
}

/// Sphere and torus homology through both pipelines, and their agreement.
pub fn homology_checks() -> Result<Vec<CheckSummary>> {
    let z = HomologyGroup::free;
    let sphere = [z(1), z(0), z(0), z(1)];
    let cyl = homology(&s3_double_cylinder()?)?;
    let join = homology(&s3_join()?)?;
    let (torus, _, _) = torus_with_projections()?;
    let torus = homology(&torus)?;
    let mut agree = CheckSummary::new("homology_s3_agreement");
    agree.record(cyl == join, || format!("double cylinder {cyl} but join {join}"));
    Ok(vec![
        expect_homology("homology_join_s3", &join, &sphere),
        expect_homology("homology_s3", &cyl, &sphere),
        agree.finish(),
        expect_homology("homology_torus", &torus, &[z(1), z(2), z(1)]),
    ])
}
