//! Seeded verification runs behind `coxtr verify`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coxeter_traces::arith::FieldElement;
use coxeter_traces::classes::{
    conjugacy_classes, count_brute_force, verify_inequality_theorem_with, MinusIdentitySource, TraceCount,
};
use coxeter_traces::combinatorics::{closed_form_count, dihedral_classes, lemma_identity_check};
use coxeter_traces::group::eigenvalue_test;
use coxeter_traces::models::{
    h3_charpoly_table_check, h4_cross_check_group, lr_action_matrix, lr_fixed_point_criterion, sample_unit_quaternion,
    star_action_matrix,
};
use coxeter_traces::roots::{Factor, SystemSpec};
use coxeter_traces::Result;

use crate::report::CheckRow;
use crate::Context;

/// Direct sums used for the multiplicativity check stay at or below this order.
pub const PAIR_ORDER_CAP: u128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub pairs: usize,
    pub degree: usize,
    pub quaternion_pairs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 7, trials: 50, pairs: 25, degree: 500, quaternion_pairs: 100 }
    }
}

fn check(scope: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckRow {
    CheckRow { scope: scope.into(), check: name.into(), passed, detail: detail.into() }
}

/// Any supported irreducible factor with parameter at most 12.
pub fn random_factor<R: Rng>(rng: &mut R) -> Factor {
    match rng.gen_range(0..12) {
        0 => Factor::A(rng.gen_range(0..=12)),
        1 => Factor::B(rng.gen_range(2..=12)),
        2 => Factor::C(rng.gen_range(2..=12)),
        3 => Factor::D(rng.gen_range(4..=12)),
        4 => Factor::E6,
        5 => Factor::E7,
        6 => Factor::E8,
        7 => Factor::F4,
        8 => Factor::G2,
        9 => Factor::H3,
        10 => Factor::H4,
        _ => Factor::I2(rng.gen_range(3..=12)),
    }
}

/// One to five random factors.
pub fn random_spec<R: Rng>(rng: &mut R) -> SystemSpec {
    let n = rng.gen_range(1..=5);
    SystemSpec::new((0..n).map(|_| random_factor(rng)).collect())
}

fn random_matrix_factor<R: Rng>(rng: &mut R) -> Factor {
    loop {
        let f = random_factor(rng);
        if f.has_matrix_model() && f != Factor::E8 {
            return f;
        }
    }
}

/// S ≥ 1, T ≤ S and T = S ⇔ −I ∈ W on seeded random composite systems,
/// with −I decided by the group engine wherever the budget allows.
pub fn inequality_suite(ctx: &Context, seed: u64, trials: usize) -> Result<Vec<CheckRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut memo: HashMap<Factor, (bool, MinusIdentitySource)> = HashMap::new();
    let mut rows = Vec::new();
    for trial in 0..trials {
        let spec = random_spec(&mut rng);
        let verdict = verify_inequality_theorem_with(&spec, |f| {
            if let Some(&v) = memo.get(&f) {
                return Ok(v);
            }
            let v = ctx.minus_identity(f, &ctx.budget)?;
            memo.insert(f, v);
            Ok(v)
        })?;
        let engine_used = verdict.factors.iter().all(|&(f, _, src)| {
            src == MinusIdentitySource::GroupEngine || !(f.has_matrix_model() && ctx.budget.allows(f.group_order()))
        });
        let engine_factors = verdict.factors.iter().filter(|f| f.2 == MinusIdentitySource::GroupEngine).count();
        rows.push(check(
            "theorems",
            format!("inequality #{trial}"),
            verdict.holds() && engine_used,
            format!(
                "{spec}: T={} S={} -I {} ({engine_factors}/{} factors by enumeration)",
                verdict.count.traces,
                verdict.count.supertraces,
                if verdict.contains_minus_identity { "in W" } else { "not in W" },
                verdict.factors.len(),
            ),
        ));
    }
    Ok(rows)
}

/// Counts of seeded random direct sums `R1 + R2`, enumerated as one group,
/// against the product of the factor counts.
pub fn multiplicativity_suite(ctx: &Context, seed: u64, pairs: usize) -> Result<Vec<CheckRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut factor_counts: HashMap<Factor, TraceCount> = HashMap::new();
    let mut rows = Vec::new();
    let mut i = 0;
    while i < pairs {
        let (f1, f2) = (random_matrix_factor(&mut rng), random_matrix_factor(&mut rng));
        let order = f1.group_order().zip(f2.group_order()).and_then(|(a, b)| a.checked_mul(b));
        if !order.is_some_and(|o| o <= PAIR_ORDER_CAP) {
            continue;
        }
        let spec = SystemSpec::new(vec![f1, f2]);
        let sum = count_brute_force(&ctx.group(&spec)?);
        let mut factor = |f: Factor| -> Result<TraceCount> {
            if let Some(c) = factor_counts.get(&f) {
                return Ok(*c);
            }
            let c = ctx.brute_force_factor(f)?;
            factor_counts.insert(f, c);
            Ok(c)
        };
        let product = factor(f1)?.compose(&factor(f2)?)?;
        let closed = closed_form_count(f1)?.compose(&closed_form_count(f2)?)?;
        rows.push(check(
            "theorems",
            format!("multiplicativity #{i}"),
            sum.pair() == product.pair() && product.pair() == closed.pair(),
            format!("{spec}: sum ({}, {}), product ({}, {})", sum.traces, sum.supertraces, product.traces, product.supertraces),
        ));
        i += 1;
    }
    Ok(rows)
}

pub fn lemma_suite(degree: usize) -> Vec<CheckRow> {
    let v = lemma_identity_check(degree);
    let detail = if v.holds() {
        format!("|E(n)-O(n)| = R(n) with the stated signs for n <= {}, enumerated to {}", v.n_max, v.enumerated_up_to)
    } else {
        format!("fails at n = {:?}", v.failures)
    };
    vec![check("lemma", "partition identity", v.holds(), detail)]
}

pub fn appendix_suite(ctx: &Context, seed: u64, quaternion_pairs: usize) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();

    let h3 = h3_charpoly_table_check();
    let mismatched: Vec<&str> = h3.rows.iter().filter(|r| !r.matches()).map(|r| r.word).collect();
    rows.push(check(
        "appendices",
        "H3 generators",
        h3.holds(),
        format!(
            "relations {}, order {}, {} classes, char polys {}, {} negative classes without +1, T={} S={}",
            if h3.relations_hold { "hold" } else { "fail" },
            h3.order,
            h3.class_count,
            if mismatched.is_empty() { "match".to_string() } else { format!("differ at {mismatched:?}") },
            h3.negative_without_plus_one,
            h3.traces,
            h3.supertraces,
        ),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let (mut identity_ok, mut criterion_ok, mut star_ok, mut det_ok) = (0, 0, 0, 0);
    for _ in 0..quaternion_pairs {
        let l = sample_unit_quaternion(&mut rng);
        let r = sample_unit_quaternion(&mut rng);
        let (det, fixed) = lr_fixed_point_criterion(&l, &r)?;
        let diff = &l.q0 - &r.q0;
        identity_ok += usize::from(det == FieldElement::from_integer(4) * &diff * &diff);
        criterion_ok += usize::from(fixed == diff.is_zero() && fixed == eigenvalue_test(&lr_action_matrix(&l, &r)?, 1));
        let star = star_action_matrix(&l)?;
        star_ok += usize::from(eigenvalue_test(&star, 1));
        det_ok += usize::from(lr_action_matrix(&l, &r)?.det().is_one() && star.det() == FieldElement::from_integer(-1));
    }
    let n = quaternion_pairs;
    rows.push(check(
        "appendices",
        "quaternion fixed points",
        identity_ok == n && criterion_ok == n && star_ok == n && det_ok == n,
        format!(
            "det(x -> lx - xr) = 4(l0-r0)^2 on {identity_ok}/{n} pairs, criterion {criterion_ok}/{n}, star +1 {star_ok}/{n}, det signs {det_ok}/{n}"
        ),
    ));

    let h4 = h4_cross_check_group(&ctx.group(&SystemSpec::single(Factor::H4))?)?;
    rows.push(check(
        "appendices",
        "H4 quaternion classes",
        h4.holds(),
        format!(
            "{} classes, T={} S={}, {} star classes (all with +1: {}), {} of {} lr classes without +1, l0 != r0 criterion {}",
            h4.classes.len(),
            h4.traces,
            h4.supertraces,
            h4.star_count(),
            h4.star_all_plus_one,
            h4.lr_without_plus_one,
            h4.lr_count(),
            if h4.criterion_agrees { "agrees" } else { "disagrees" },
        ),
    ));

    let mut formula = true;
    for n in 3..=30 {
        let d = dihedral_classes(n)?;
        formula &= (d.traces(), d.supertraces()) == ((n / 2) as u128, ((n + 1) / 2) as u128);
    }
    let mut brute = true;
    for n in 3..=6 {
        let d = dihedral_classes(n)?;
        let g = ctx.group(&SystemSpec::single(Factor::I2(n)))?;
        brute &= count_brute_force(&g).pair() == (d.traces(), d.supertraces()) && conjugacy_classes(&g).len() == d.classes.len();
    }
    let g2 = count_brute_force(&ctx.group(&SystemSpec::single(Factor::G2))?);
    let i26 = count_brute_force(&ctx.group(&SystemSpec::single(Factor::I2(6)))?);
    rows.push(check(
        "appendices",
        "dihedral classes",
        formula && brute && g2.pair() == i26.pair(),
        format!(
            "(n/2, (n+1)/2) for 3 <= n <= 30: {formula}; enumeration for n = 3..6: {brute}; I2(6) = G2: {}",
            g2.pair() == i26.pair()
        ),
    ));
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Theorems,
    Lemma,
    Appendices,
    All,
}

pub fn run(ctx: &Context, scope: Scope, opts: &VerifyOptions) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    if matches!(scope, Scope::Theorems | Scope::All) {
        rows.extend(inequality_suite(ctx, opts.seed, opts.trials)?);
        rows.extend(multiplicativity_suite(ctx, opts.seed, opts.pairs)?);
    }
    if matches!(scope, Scope::Lemma | Scope::All) {
        rows.extend(lemma_suite(opts.degree));
    }
    if matches!(scope, Scope::Appendices | Scope::All) {
        rows.extend(appendix_suite(ctx, opts.seed, opts.quaternion_pairs)?);
    }
    Ok(rows)
}
