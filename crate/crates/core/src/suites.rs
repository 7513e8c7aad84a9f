//! Seeded verification suites, one per identity or inequality.
//!
//! Each suite draws its instances from `derive_seed(seed, i)`, runs them in
//! parallel and assembles a [`Report`] in instance order, so the JSON output
//! depends only on the seed.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fockrep::{
    compression_norm, norm_lower, norm_lower_matrix, Ball, EstimateKind, PowerOptions, TruncOp,
};
use crate::linalg::{c, spectral_norm, C64};
use crate::opspace::{
    check_split, hp_split, intersection_norm, projection_bound, prop8_bounds, MatrixFamily,
    ProjectionReport, Prop8Element,
};
use crate::poly::{GroupPoly, MonoidPoly, Poly};
use crate::random::{derive_seed, gaussian, gaussian_matrix, random_poly, random_poly_from, rng};
use crate::report::{Inputs, Report};
use crate::vncheck::{
    circle_l2, prop17_check, vn_verify, BoundKind, SampleMode, VnConfig, VN_TOLERANCE,
};
use crate::words::{
    classify, embed_word, factor, lemma7_action, Alphabet, Gen, GroupWord, Letter, MonoidWord,
    Split, SubsetPredicate, Word,
};

/// Slack allowed on one-sided norm comparisons.
pub const BOUND_TOLERANCE: f64 = 1e-8;
/// Agreement required between two exact computations of the same norm.
pub const EXACT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemma7,
    Lemma15,
    Prop1,
    Prop4,
    Prop8,
    Prop9,
    Prop12,
    Prop13,
    Prop14,
    Prop16,
    Prop17,
    HpSplit,
    RowColumn,
    VonNeumann,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Lemma7,
        Suite::Lemma15,
        Suite::Prop1,
        Suite::Prop4,
        Suite::Prop8,
        Suite::Prop9,
        Suite::Prop12,
        Suite::Prop13,
        Suite::Prop14,
        Suite::Prop16,
        Suite::Prop17,
        Suite::HpSplit,
        Suite::RowColumn,
        Suite::VonNeumann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma7 => "lemma7",
            Suite::Lemma15 => "lemma15",
            Suite::Prop1 => "prop1",
            Suite::Prop4 => "prop4",
            Suite::Prop8 => "prop8",
            Suite::Prop9 => "prop9",
            Suite::Prop12 => "prop12",
            Suite::Prop13 => "prop13",
            Suite::Prop14 => "prop14",
            Suite::Prop16 => "prop16",
            Suite::Prop17 => "prop17",
            Suite::HpSplit => "hp-split",
            Suite::RowColumn => "row-column",
            Suite::VonNeumann => "von-neumann",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

pub fn run(suite: Suite, seed: u64) -> Result<Report> {
    match suite {
        Suite::Lemma7 => lemma7(seed),
        Suite::Lemma15 => lemma15(seed),
        Suite::Prop1 => prop1(seed),
        Suite::Prop4 => prop4(seed),
        Suite::Prop8 => prop8(seed),
        Suite::Prop9 => prop9(seed),
        Suite::Prop12 => prop12(seed),
        Suite::Prop13 => prop13(seed),
        Suite::Prop14 => prop14(seed),
        Suite::Prop16 => prop16(seed),
        Suite::Prop17 => prop17(seed),
        Suite::HpSplit => hp_split_suite(seed),
        Suite::RowColumn => row_column(seed),
        Suite::VonNeumann => von_neumann(seed),
    }
}

fn suite_report(suite: Suite, seed: u64, radius: Option<usize>) -> Report {
    Report::new(
        "verify",
        Inputs {
            suite: Some(suite.name().into()),
            radius,
            seeds: vec![seed],
            ..Default::default()
        },
    )
}

fn opts(seed: u64) -> PowerOptions {
    PowerOptions {
        seed,
        ..Default::default()
    }
}

/// Run `f(i, seed_i)` for `n` instances in parallel, results in order.
fn instances<T, F>(seed: u64, n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync + Send,
{
    (0..n)
        .into_par_iter()
        .map(|i| f(i, derive_seed(seed, i as u64)))
        .collect()
}

/// Exact norm of left multiplication by `p` restricted to `domain`.
fn dense_norm<W: Word>(p: &Poly<W>, domain: &[W]) -> f64 {
    if p.is_zero() || domain.is_empty() {
        return 0.0;
    }
    spectral_norm(&TruncOp::new(p, domain).to_dense())
}

/// Words of length exactly `n` in a ball.
fn layer<W: Word>(ball: &Ball<W>, n: usize) -> &[W] {
    let lo = if n == 0 { 0 } else { ball.count_within(n - 1) };
    &ball.words()[lo..ball.count_within(n)]
}

fn max_by(items: impl IntoIterator<Item = f64>) -> f64 {
    items.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

fn min_by(items: impl IntoIterator<Item = f64>) -> f64 {
    items.into_iter().fold(f64::INFINITY, f64::min)
}

fn count_failures(flags: impl IntoIterator<Item = bool>) -> usize {
    flags.into_iter().filter(|ok| !ok).count()
}

fn failures_detail(n: usize, total: usize) -> Option<String> {
    (n > 0).then(|| format!("{n} of {total} instances failed"))
}

fn ball<W: Word>(al: &Alphabet, radius: usize) -> Result<Ball<W>> {
    Ball::new(al, radius)
}

// ---------------------------------------------------------------------------
// Word combinatorics

fn lemma7(seed: u64) -> Result<Report> {
    let mut r = suite_report(Suite::Lemma7, seed, Some(3));
    let xs: Ball<GroupWord> = ball(&Alphabet::split(2, 0), 3)?;
    let zs: Ball<GroupWord> = ball(&Alphabet::split(2, 2), 3)?;
    let mut seen: HashMap<GroupWord, (usize, u32, usize)> = HashMap::new();
    let (mut tuples, mut nonzero, mut zero_mismatch, mut collisions, mut cancellations) =
        (0, 0, 0, 0, 0);
    for (xi, x) in xs.words().iter().enumerate() {
        for i in 1..=2u32 {
            let e_inv = GroupWord::from_letters([Letter::neg(Gen::e(i))])?;
            for (zi, z) in zs.words().iter().enumerate() {
                tuples += 1;
                let out = lemma7_action(x, i, z)?;
                let killed = z.first() == Some(Letter::pos(Gen::e(i)));
                if out.is_none() != killed {
                    zero_mismatch += 1;
                }
                if let Some(w) = out {
                    nonzero += 1;
                    if w != x.concat(&e_inv).concat(z) || w.len() != x.len() + 1 + z.len() {
                        cancellations += 1;
                    }
                    if seen.insert(w, (xi, i, zi)).is_some() {
                        collisions += 1;
                    }
                }
            }
        }
    }
    r.output("tuples", tuples);
    r.output("nonzero", nonzero);
    r.output("collisions", collisions);
    r.check(
        "vector vanishes exactly when z starts with e_i",
        "Lemma 7",
        zero_mismatch == 0,
        None,
    );
    r.check(
        "nonzero vectors are pairwise distinct basis vectors",
        "Lemma 7",
        collisions == 0,
        None,
    );
    r.check(
        "x e_i^-1 z is reduced without cancellation",
        "Lemma 7",
        cancellations == 0,
        None,
    );
    let a = |i| GroupWord::gen(Gen::alpha(i));
    let e = |i| GroupWord::gen(Gen::e(i));
    let ex1 = lemma7_action(&a(1), 1, &a(2))? == Some(a(1).concat(&e(1).inverse()).concat(&a(2)));
    let ex2 = lemma7_action(&a(1), 1, &e(1).concat(&a(1)))?.is_none();
    let ex3 =
        lemma7_action(&GroupWord::identity(), 2, &GroupWord::identity())? == Some(e(2).inverse());
    r.check("worked examples", "Lemma 7", ex1 && ex2 && ex3, None);
    Ok(r)
}

/// True when all products `x_i y_j` of the two supports are distinct.
pub fn no_cancellation<W: Word>(p: &Poly<W>, q: &Poly<W>) -> bool {
    let mut seen = HashSet::new();
    p.terms()
        .all(|(x, _)| q.terms().all(|(y, _)| seen.insert(x.concat(y))))
}

fn lemma15(seed: u64) -> Result<Report> {
    let mut r = suite_report(Suite::Lemma15, seed, Some(4));
    let al = Alphabet::plain(2);
    let words: Ball<MonoidWord> = ball(&al, 4)?;
    let mut g = rng(seed);
    let (mut pairs, mut clashes, mut worst) = (0usize, 0usize, 0.0f64);
    for n in 0..=4 {
        let xs = layer(&words, n);
        let ys = &words.words()[..words.count_within(4 - n)];
        let mut seen = HashSet::new();
        for x in xs {
            for y in ys {
                pairs += 1;
                if !seen.insert(x.concat(y)) {
                    clashes += 1;
                }
            }
        }
        let p =
            MonoidPoly::from_scalars(al.clone(), xs.iter().map(|x| (x.clone(), gaussian(&mut g))))?;
        let q =
            MonoidPoly::from_scalars(al.clone(), ys.iter().map(|y| (y.clone(), gaussian(&mut g))))?;
        let d = (p.mul(&q)?.l2_norm() - p.l2_norm() * q.l2_norm()).abs();
        worst = worst.max(d);
    }
    r.output("exhaustive_pairs", pairs);
    r.output("exhaustive_max_error", worst);
    r.check(
        "products W_n x P are injective for n + |y| <= 4",
        "Lemma 15",
        clashes == 0,
        None,
    );
    r.check(
        "||pq||_2 = ||p||_2 ||q||_2 on full homogeneous supports",
        "Lemma 15",
        worst <= 1e-12,
        Some(format!("max error {worst:e}")),
    );

    let random = instances(seed, 100, |i, s| {
        let mut g = rng(s);
        let al = Alphabet::plain(2 + (i % 2) as u32);
        let b: Ball<MonoidWord> = Ball::new(&al, 2)?;
        let n = i % 3;
        let p = random_poly_from(&mut g, &al, layer(&b, n), 1 + i % 4, 1);
        let q: MonoidPoly = random_poly(&mut g, &al, 2, 1 + i % 5, 1);
        let hyp = no_cancellation(&p, &q);
        let err = (p.mul(&q)?.l2_norm() - p.l2_norm() * q.l2_norm()).abs();
        Ok((hyp, err))
    })?;
    let bad_hyp = count_failures(random.iter().map(|t| t.0));
    let worst = max_by(random.iter().map(|t| t.1));
    r.output("random_max_error", worst);
    r.check(
        "homogeneous p never causes cancellation",
        "Lemma 15",
        bad_hyp == 0,
        failures_detail(bad_hyp, 100),
    );
    r.check(
        "||pq||_2 = ||p||_2 ||q||_2 on 100 seeded pairs",
        "Lemma 15",
        worst <= 1e-12,
        Some(format!("max error {worst:e}")),
    );

    let matrix = instances(derive_seed(seed, 1 << 20), 20, |i, s| {
        let mut g = rng(s);
        let b: Ball<MonoidWord> = Ball::new(&al, 2)?;
        let t = random_poly_from(&mut g, &al, layer(&b, 2), 1 + i % 4, 2);
        let ys: Vec<MonoidWord> = b.words().to_vec();
        let bs: Vec<C64> = (0..ys.len() * 2).map(|_| gaussian(&mut g)).collect();
        let image = TruncOp::new(&t, &ys).apply(&bs);
        let lhs = image.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let mut rhs = 0.0;
        for (_, a) in t.terms() {
            for j in 0..ys.len() {
                let bj = nalgebra::DVector::from_column_slice(&bs[2 * j..2 * j + 2]);
                rhs += (a * bj).norm_squared();
            }
        }
        Ok((lhs - rhs.sqrt()).abs() / lhs.max(1.0))
    })?;
    let worst = max_by(matrix);
    r.output("matrix_max_error", worst);
    r.check(
        "||Tq||_2 = sqrt(sum ||A_i b_j||^2) at level 2",
        "Lemma 15",
        worst <= 1e-12,
        Some(format!("max relative error {worst:e}")),
    );

    let one_plus = MonoidPoly::from_scalars(
        al.clone(),
        [
            (MonoidWord::identity(), c(1.0, 0.0)),
            (MonoidWord::gen(Gen::plain(1)), c(1.0, 0.0)),
        ],
    )?;
    let sq = one_plus.mul(&one_plus)?.l2_norm();
    r.output(
        "cancellation_witness",
        json!({ "p": one_plus.to_string(), "norm_of_square": sq }),
    );
    r.check(
        "hypothesis is needed: (1+g1)^2 has norm sqrt(6), not 2",
        "Lemma 15",
        !no_cancellation(&one_plus, &one_plus) && (sq - 6f64.sqrt()).abs() < 1e-12,
        None,
    );
    Ok(r)
}

// ---------------------------------------------------------------------------
// Projection bounds

fn projection_summary(reports: &[ProjectionReport]) -> serde_json::Value {
    let triangle = reports
        .iter()
        .filter(|p| p.upper_kind == crate::opspace::UpperKind::Triangle)
        .count();
    json!({
        "instances": reports.len(),
        "min_slack": min_by(reports.iter().map(|p| p.slack)),
        "upper_converged": reports.len() - triangle,
        "upper_triangle": triangle,
        // Both sides are lower bounds here, so this ratio is reported only.
        "max_lower_ratio": max_by(reports.iter().filter(|p| p.estimate.value > 0.0).map(|p| p.projected.value / p.estimate.value)),
        "max_margin": max_by(reports.iter().map(|p| if p.margin.is_finite() { p.margin } else { 0.0 })),
        "records": reports.iter().map(|p| json!({
            "lower_projection": p.projected.value,
            "estimate": p.estimate.value,
            "upper": p.upper,
            "upper_kind": p.upper_kind,
            "margin": if p.margin.is_finite() { Some(p.margin) } else { None },
            "slack": p.slack,
        })).collect::<Vec<_>>(),
    })
}

fn check_projection(r: &mut Report, name: &str, tag: &str, reports: &[ProjectionReport]) {
    let bad = count_failures(reports.iter().map(|p| p.holds));
    r.check(name, tag, bad == 0, failures_detail(bad, reports.len()));
}

fn prop1(seed: u64) -> Result<Report> {
    let radius = 3;
    let mut r = suite_report(Suite::Prop1, seed, Some(radius));
    let sub = instances(seed, 100, |i, s| {
        let mut g = rng(s);
        let m = 2 + (i % 2) as u32;
        let n = g.random_range(1..m);
        let p: GroupPoly = {
            let nt = g.random_range(2..=6);
            random_poly(&mut g, &Alphabet::plain(m), 2, nt, 1 + i % 2)
        };
        projection_bound(
            &p,
            &SubsetPredicate::Sub(Split::FirstGenerators(n)),
            1.0,
            radius,
            &opts(s),
            BOUND_TOLERANCE,
        )
    })?;
    r.output("subgroup", projection_summary(&sub));
    check_projection(
        &mut r,
        "projection onto F_n is contractive on 100 seeded p",
        "Prop 1",
        &sub,
    );

    // Pool mixing short words with images of the embedding.
    let f2 = Alphabet::plain(2);
    let mut pool: Vec<GroupWord> = ball::<GroupWord>(&f2, 2)?.words().to_vec();
    for w in ball::<GroupWord>(&Alphabet::plain(3), 1)?.words() {
        pool.push(embed_word(w)?);
    }
    pool.sort();
    pool.dedup();
    let emb = instances(derive_seed(seed, 1 << 20), 100, |i, s| {
        let mut g = rng(s);
        let p = {
            let nt = g.random_range(2..=6);
            random_poly_from(&mut g, &f2, &pool, nt, 1 + i % 2)
        };
        projection_bound(
            &p,
            &SubsetPredicate::Sub(Split::Embedded),
            1.0,
            radius,
            &opts(s),
            BOUND_TOLERANCE,
        )
    })?;
    r.output("embedded", projection_summary(&emb));
    check_projection(
        &mut r,
        "projection onto the embedded copy of F_inf is contractive",
        "Prop 1",
        &emb,
    );

    // Formal identity F_2 -> F_3 on truncations: the F_3 ball restricted to
    // right cosets of F_2 reproduces the F_2 ball exactly.
    let b2: Ball<GroupWord> = ball(&f2, radius)?;
    let b3: Ball<GroupWord> = ball(&Alphabet::plain(3), radius)?;
    let iso = instances(derive_seed(seed, 2 << 20), 20, |i, s| {
        let mut g = rng(s);
        let p: GroupPoly = {
            let nt = g.random_range(1..=5);
            random_poly(&mut g, &f2, 2, nt, 1 + i % 2)
        };
        let small = dense_norm(&p, b2.words());
        let big = dense_norm(&p.with_alphabet(Alphabet::plain(3))?, b3.words());
        Ok((small - big).abs())
    })?;
    let worst = max_by(iso);
    r.output("identity_max_difference", worst);
    r.check(
        "F_2 -> F_3 is isometric on truncations (20 seeded p)",
        "Prop 1",
        worst <= EXACT_TOLERANCE,
        Some(format!("max difference {worst:e}")),
    );

    let b1: Ball<GroupWord> = ball(&Alphabet::plain(3), 2)?;
    let images: Vec<GroupWord> = b1.words().iter().map(embed_word).collect::<Result<_>>()?;
    let distinct: HashSet<&GroupWord> = images.iter().collect();
    let mut hom = true;
    for u in b1.words() {
        for v in b1.words() {
            hom &= embed_word(&u.concat(v))? == embed_word(u)?.concat(&embed_word(v)?);
        }
    }
    let in_g = images
        .iter()
        .all(|w| classify(w, &SubsetPredicate::Sub(Split::Embedded)));
    r.check(
        "embedding is an injective homomorphism into G",
        "Prop 1",
        distinct.len() == images.len() && hom && in_g,
        None,
    );
    let emb_iso = instances(derive_seed(seed, 3 << 20), 20, |i, s| {
        let mut g = rng(s);
        let p: GroupPoly = {
            let nt = g.random_range(1..=4);
            random_poly(&mut g, &Alphabet::plain(3), 2, nt, 1 + i % 2)
        };
        let phi = Poly::from_terms(
            f2.clone(),
            p.level(),
            p.terms()
                .map(|(w, a)| Ok((embed_word(w)?, a.clone())))
                .collect::<Result<Vec<_>>>()?,
        )?;
        Ok((dense_norm(&p, b1.words()) - dense_norm(&phi, &images)).abs())
    })?;
    let worst = max_by(emb_iso);
    r.check(
        "embedding carries truncated operators to unitarily equivalent ones",
        "Prop 1",
        worst <= EXACT_TOLERANCE,
        Some(format!("max difference {worst:e}")),
    );
    Ok(r)
}

fn prop4(seed: u64) -> Result<Report> {
    let radius = 3;
    let mut r = suite_report(Suite::Prop4, seed, Some(radius));
    let al = Alphabet::split(2, 2);
    let reports = instances(seed, 100, |i, s| {
        let mut g = rng(s);
        let p: GroupPoly = {
            let nt = g.random_range(2..=6);
            random_poly(&mut g, &al, 2, nt, 1 + i % 2)
        };
        projection_bound(
            &p,
            &SubsetPredicate::KSet { from: 0 },
            2.0,
            radius,
            &opts(s),
            BOUND_TOLERANCE,
        )
    })?;
    r.output("k_set", projection_summary(&reports));
    check_projection(
        &mut r,
        "projection onto l2(K) has norm at most 2 on 100 seeded p",
        "Prop 4",
        &reports,
    );
    Ok(r)
}

fn prop12(seed: u64) -> Result<Report> {
    let radius = 4;
    let mut r = suite_report(Suite::Prop12, seed, Some(radius));
    let reports = instances(seed, 100, |i, s| {
        let mut g = rng(s);
        let m = 2 + (i % 2) as u32;
        let n = g.random_range(1..m);
        let p: MonoidPoly = {
            let nt = g.random_range(2..=6);
            random_poly(&mut g, &Alphabet::plain(m), 3, nt, 1 + i % 2)
        };
        projection_bound(
            &p,
            &SubsetPredicate::Sub(Split::FirstGenerators(n)),
            1.0,
            radius,
            &opts(s),
            BOUND_TOLERANCE,
        )
    })?;
    r.output("projection", projection_summary(&reports));
    check_projection(
        &mut r,
        "projection onto P_n is contractive on 100 seeded p",
        "Prop 12",
        &reports,
    );

    for (m, n) in [(2u32, 1u32), (3, 1), (3, 2)] {
        let (total, bad) = partition_check(&Alphabet::plain(m), Split::FirstGenerators(n), 6)?;
        r.check(
            &format!("every word of P_{m} up to length 6 factors once through P_{n} x E"),
            "Prop 12",
            bad == 0,
            failures_detail(bad, total),
        );
    }

    let p2: Ball<MonoidWord> = ball(&Alphabet::plain(2), radius)?;
    let p3: Ball<MonoidWord> = ball(&Alphabet::plain(3), radius)?;
    let iso = instances(derive_seed(seed, 1 << 20), 20, |i, s| {
        let mut g = rng(s);
        let p: MonoidPoly = {
            let nt = g.random_range(1..=5);
            random_poly(&mut g, &Alphabet::plain(2), 2, nt, 1 + i % 2)
        };
        Ok((dense_norm(&p, p2.words())
            - dense_norm(&p.with_alphabet(Alphabet::plain(3))?, p3.words()))
        .abs())
    })?;
    let worst = max_by(iso);
    r.output("identity_max_difference", worst);
    r.check(
        "A(2) -> A(3) is isometric on truncations (20 seeded p)",
        "Prop 12",
        worst <= EXACT_TOLERANCE,
        Some(format!("max difference {worst:e}")),
    );
    Ok(r)
}

/// Count words of length `≤ max_len` that do not have exactly one
/// decomposition `w = p·y` with `p` in the sub-object and `y` in `E`, or
/// whose [`factor`] disagrees with it.
fn partition_check(al: &Alphabet, split: Split, max_len: usize) -> Result<(usize, usize)> {
    let b: Ball<MonoidWord> = ball(al, max_len)?;
    let sub = SubsetPredicate::Sub(split);
    let e = SubsetPredicate::ESet(split);
    let mut bad = 0;
    for w in b.words() {
        let found: Vec<(MonoidWord, MonoidWord)> = (0..=w.len())
            .map(|k| w.split_at(k))
            .filter(|(h, t)| classify(h, &sub) && classify(t, &e))
            .collect();
        if found.len() != 1 || factor(w, split).as_ref() != found.first() {
            bad += 1;
        }
    }
    Ok((b.len(), bad))
}

fn embed_monoid_poly(p: &MonoidPoly) -> Result<MonoidPoly> {
    Poly::from_terms(
        Alphabet::plain(2),
        p.level(),
        p.terms()
            .map(|(w, a)| Ok((embed_word(w)?, a.clone())))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn prop13(seed: u64) -> Result<Report> {
    let radius = 3;
    let mut r = suite_report(Suite::Prop13, seed, Some(radius));
    let (total, bad) = partition_check(&Alphabet::plain(2), Split::Embedded, 6)?;
    r.check(
        "every word of P_2 up to length 6 factors once through P_alpha x E",
        "Prop 13",
        bad == 0,
        failures_detail(bad, total),
    );

    let src: Ball<MonoidWord> = ball(&Alphabet::plain(3), radius)?;
    let images: Vec<MonoidWord> = src.words().iter().map(embed_word).collect::<Result<_>>()?;
    let distinct: HashSet<&MonoidWord> = images.iter().collect();
    let in_sub = images
        .iter()
        .all(|w| classify(w, &SubsetPredicate::Sub(Split::Embedded)));
    let mut hom = true;
    for u in &src.words()[..src.count_within(2)] {
        for v in &src.words()[..src.count_within(2)] {
            hom &= embed_word(&u.concat(v))? == embed_word(u)?.concat(&embed_word(v)?);
        }
    }
    r.check(
        "g_i -> a^i b is an injective homomorphism onto P_alpha words",
        "Prop 13",
        distinct.len() == images.len() && in_sub && hom,
        None,
    );

    let iso = instances(seed, 20, |i, s| {
        let mut g = rng(s);
        let p: MonoidPoly = {
            let nt = g.random_range(1..=5);
            random_poly(&mut g, &Alphabet::plain(3), 2, nt, 1 + i % 2)
        };
        let phi = embed_monoid_poly(&p)?;
        Ok((dense_norm(&p, src.words()) - dense_norm(&phi, &images)).abs())
    })?;
    let worst = max_by(iso);
    r.output("embedding_max_difference", worst);
    r.check(
        "the embedded copy carries truncated operators isometrically",
        "Prop 13",
        worst <= EXACT_TOLERANCE,
        Some(format!("max difference {worst:e}")),
    );

    let f2 = Alphabet::plain(2);
    let mut pool: Vec<MonoidWord> = ball::<MonoidWord>(&f2, 3)?.words().to_vec();
    pool.extend(images.iter().filter(|w| w.len() <= 5).cloned());
    pool.sort();
    pool.dedup();
    let reports = instances(derive_seed(seed, 1 << 20), 100, |i, s| {
        let mut g = rng(s);
        let p = {
            let nt = g.random_range(2..=6);
            random_poly_from(&mut g, &f2, &pool, nt, 1 + i % 2)
        };
        projection_bound(
            &p,
            &SubsetPredicate::Sub(Split::Embedded),
            1.0,
            4,
            &opts(s),
            BOUND_TOLERANCE,
        )
    })?;
    r.output("projection", projection_summary(&reports));
    check_projection(
        &mut r,
        "projection onto span P_alpha is contractive on 100 seeded p",
        "Prop 13",
        &reports,
    );
    Ok(r)
}

fn prop14(seed: u64) -> Result<Report> {
    let radius = 3;
    let mut r = suite_report(Suite::Prop14, seed, Some(radius));
    let al = Alphabet::split(2, 2);
    let reports = instances(seed, 100, |i, s| {
        let mut g = rng(s);
        let p: MonoidPoly = {
            let nt = g.random_range(2..=6);
            random_poly(&mut g, &al, 3, nt, 1 + i % 2)
        };
        projection_bound(
            &p,
            &SubsetPredicate::KSet { from: 1 },
            1.0,
            radius,
            &opts(s),
            BOUND_TOLERANCE,
        )
    })?;
    r.output("projection", projection_summary(&reports));
    check_projection(
        &mut r,
        "projection onto l2(K) is contractive on 100 seeded p",
        "Prop 14",
        &reports,
    );

    let full: Ball<MonoidWord> = ball(&al, radius)?;
    let alpha: Ball<MonoidWord> = ball(&Alphabet::split(2, 0), radius)?;
    let normed = instances(derive_seed(seed, 1 << 20), 20, |i, s| {
        let mut g = rng(s);
        let level = 1 + i % 2;
        let mut t = MonoidPoly::zero(al.clone(), level);
        for e in 1..=2 {
            let pi: MonoidPoly = {
                let nt = g.random_range(1..=3);
                random_poly(&mut g, &Alphabet::split(2, 0), 2, nt, level)
            };
            let shift = MonoidPoly::from_terms(
                al.clone(),
                level,
                [(
                    MonoidWord::gen(Gen::e(e)),
                    crate::linalg::CMatrix::identity(level, level),
                )],
            )?;
            t = t.add(&shift.mul(&pi.with_alphabet(al.clone())?)?)?;
        }
        Ok((dense_norm(&t, full.words()) - dense_norm(&t, alpha.words())).abs())
    })?;
    let worst = max_by(normed);
    r.output("alpha_domain_max_difference", worst);
    r.check(
        "elements of A(K) are normed by l2(P_alpha) on truncations",
        "Prop 14",
        worst <= EXACT_TOLERANCE,
        Some(format!("max difference {worst:e}")),
    );
    Ok(r)
}

// ---------------------------------------------------------------------------
// Coset sums

/// A random element `Σ_i (I ⊗ e_i) A_i` with `A_i` of word length `≤ 2`.
pub fn random_prop8_element(seed: u64, level: usize) -> Result<Prop8Element> {
    let mut g = rng(seed);
    let alphas = g.random_range(1..=2u32);
    let es = g.random_range(1..=2u32);
    let al = Alphabet::split(alphas, 0);
    let terms = (1..=es)
        .map(|i| {
            (i, {
                let nt = g.random_range(1..=3);
                random_poly(&mut g, &al, 2, nt, level)
            })
        })
        .collect();
    Prop8Element::new(alphas, terms)
}

fn prop8(seed: u64) -> Result<Report> {
    let radius = 3;
    let mut r = suite_report(Suite::Prop8, seed, Some(radius));
    let bounds = instances(seed, 100, |i, s| {
        let t = random_prop8_element(s, 1 + i % 2)?;
        prop8_bounds(&t, radius, &opts(s))
    })?;
    let ordered = count_failures(bounds.iter().map(|b| b.lower <= b.upper));
    let sandwich = count_failures(bounds.iter().map(|b| b.sandwich_holds(BOUND_TOLERANCE)));
    r.output(
        "instances",
        bounds
            .iter()
            .map(|b| json!({ "col_term": b.col_term.value, "row_term": b.row_term, "direct": b.direct.value, "lower": b.lower, "upper": b.upper }))
            .collect::<Vec<_>>(),
    );
    r.output(
        "min_lower_slack",
        min_by(bounds.iter().map(|b| b.direct.value - b.lower)),
    );
    r.output(
        "min_upper_slack",
        min_by(bounds.iter().map(|b| b.upper - b.direct.value)),
    );
    r.check(
        "max(col, row) <= col + row",
        "Prop 8",
        ordered == 0,
        failures_detail(ordered, 100),
    );
    r.check(
        "direct estimate lies in [max - 1e-8, sum + 1e-8]",
        "Prop 8",
        sandwich == 0,
        failures_detail(sandwich, 100),
    );

    let one = Prop8Element::new(1, vec![(1, GroupPoly::one(Alphabet::split(1, 0), 1))])?;
    let b = prop8_bounds(&one, radius, &opts(seed))?;
    r.check(
        "T = e_1: both terms and the norm equal 1",
        "Prop 8",
        [b.col_term.value, b.row_term, b.direct.value]
            .iter()
            .all(|v| (v - 1.0).abs() < 1e-12),
        None,
    );
    let scalars = degree_one_scalars()?;
    let b = prop8_bounds(&scalars, radius, &opts(seed))?;
    r.check(
        "T = 3 e_1 + 4i e_2: col = row = 5",
        "Prop 8",
        (b.col_term.value - 5.0).abs() < 1e-12
            && (b.row_term - 5.0).abs() < 1e-12
            && b.sandwich_holds(BOUND_TOLERANCE),
        None,
    );
    Ok(r)
}

fn degree_one_scalars() -> Result<Prop8Element> {
    let al = Alphabet::split(1, 0);
    Prop8Element::new(
        1,
        vec![
            (
                1,
                GroupPoly::from_scalars(al.clone(), [(GroupWord::identity(), c(3.0, 0.0))])?,
            ),
            (
                2,
                GroupPoly::from_scalars(al, [(GroupWord::identity(), c(0.0, 4.0))])?,
            ),
        ],
    )
}

fn prop9(seed: u64) -> Result<Report> {
    let radius = 3;
    let mut r = suite_report(Suite::Prop9, seed, Some(radius));
    let norms = instances(seed, 100, |i, s| {
        let t = random_prop8_element(derive_seed(s, 9), 1 + i % 2)?;
        intersection_norm(&t, radius, &opts(s))
    })?;
    let out_of_range = count_failures(
        norms
            .iter()
            .map(|n| n.ratio >= 1.0 - 1e-6 && n.ratio <= 2.0 + 1e-6),
    );
    r.output("min_ratio", min_by(norms.iter().map(|n| n.ratio)));
    r.output("max_ratio", max_by(norms.iter().map(|n| n.ratio)));
    r.output(
        "instances",
        norms
            .iter()
            .map(|n| json!({ "col_term": n.col_term, "row_term": n.row_term, "max": n.max, "direct": n.direct, "ratio": n.ratio }))
            .collect::<Vec<_>>(),
    );
    r.check(
        "||T|| / max(col, row) lies in [1, 2]",
        "Prop 9",
        out_of_range == 0,
        failures_detail(out_of_range, 100),
    );

    let balanced = instances(derive_seed(seed, 1 << 20), 10, |_, s| {
        let mut g = rng(s);
        let alphas = 2;
        let al = Alphabet::split(alphas, 0);
        let pool = ball::<GroupWord>(&al, 2)?;
        let terms = (1..=g.random_range(1..=3u32))
            .map(|i| (i, random_poly_from(&mut g, &al, pool.words(), 1, 1)))
            .collect();
        let t = Prop8Element::new(alphas, terms)?;
        let n = intersection_norm(&t, radius, &opts(s))?;
        Ok((n.col_term - n.row_term).abs())
    })?;
    let worst = max_by(balanced);
    r.check(
        "one alpha word per generator: col = row",
        "Prop 9",
        worst <= EXACT_TOLERANCE,
        Some(format!("max difference {worst:e}")),
    );

    let t = degree_one_scalars()?;
    let n = intersection_norm(&t, radius, &opts(seed))?;
    let disk = compression_norm(&t.to_poly()?, radius, &opts(seed))?;
    r.output("degree_one", json!({ "max": n.max, "group_estimate": n.direct, "ratio": n.ratio, "disk_norm": disk.value }));
    r.check(
        "degree-1 scalars: ratio 1 in the disk reading, within [1, 7/5] in the group",
        "Prop 9",
        (disk.value / n.max - 1.0).abs() < 1e-12 && n.ratio >= 1.0 && n.ratio <= 1.4 + 1e-9,
        None,
    );
    Ok(r)
}

fn hp_split_suite(seed: u64) -> Result<Report> {
    let radius = 4;
    let mut r = suite_report(Suite::HpSplit, seed, Some(radius));
    let b: Ball<GroupWord> = ball(&Alphabet::plain(2), radius)?;
    let gens = [Gen::plain(1), Gen::plain(2)];
    let check = check_split(&b, &gens)?;
    r.output("ball_size", b.len());
    r.output("check", &check);
    r.check(
        "e_i = P_i e_i + e_i P_-i on every basis vector",
        "Prop 8",
        check.sum_mismatches == 0 && check.overlap_or_gap == 0,
        None,
    );
    r.check(
        "sum_i P_i <= I",
        "Prop 8",
        check.max_projection_multiplicity <= 1 && check.range_violations == 0,
        None,
    );
    let g1 = Gen::plain(1);
    let part = hp_split(g1, &b)?;
    let at = |w: &GroupWord| b.index_of(w).expect("word in ball");
    let z = GroupWord::from_letters([Letter::pos(g1), Letter::pos(Gen::plain(2))])?;
    let zi = GroupWord::from_letters([Letter::neg(g1), Letter::pos(Gen::plain(2))])?;
    let ex = part.positive[0] == Some(GroupWord::gen(g1))
        && part.negative[0].is_none()
        && part.negative[at(&z)].is_none()
        && part.negative[at(&zi)] == Some(GroupWord::gen(Gen::plain(2)));
    r.check("worked examples", "Prop 8", ex, None);
    Ok(r)
}

// ---------------------------------------------------------------------------
// Hilbertian subspaces of A(k)

fn prop16(seed: u64) -> Result<Report> {
    let mut r = suite_report(Suite::Prop16, seed, Some(2));
    let scalar = instances(seed, 50, |i, s| {
        let mut g = rng(s);
        let k = 1 + (i % 3) as u32;
        let al = Alphabet::plain(k);
        let n = 1 + (i / 3) % 4;
        let b: Ball<MonoidWord> = Ball::new(&al, n)?;
        let p = {
            let nt = g.random_range(1..=6);
            random_poly_from(&mut g, &al, layer(&b, n), nt, 1)
        };
        let l2 = p.l2_norm();
        let mut worst = 0.0f64;
        for radius in 0..=2 {
            worst = worst.max((norm_lower(&p, radius, &opts(s))?.value - l2).abs());
        }
        Ok(worst)
    })?;
    let worst = max_by(scalar);
    r.output("scalar_max_error", worst);
    r.check(
        "homogeneous p: ||p||_inf = ||p||_2 at L = 0, 1, 2 (50 seeded p)",
        "Prop 16",
        worst <= 1e-8,
        Some(format!("max error {worst:e}")),
    );

    let matrix = instances(derive_seed(seed, 1 << 20), 20, |i, s| {
        let mut g = rng(s);
        let al = Alphabet::plain(2);
        let n = 1 + i % 3;
        let b: Ball<MonoidWord> = Ball::new(&al, n)?;
        let t = {
            let nt = g.random_range(1..=4);
            random_poly_from(&mut g, &al, layer(&b, n), nt, 2)
        };
        let col = MatrixFamily::new(t.terms().map(|(_, a)| a.clone()).collect())?.column_norm();
        let mut worst = 0.0f64;
        for radius in 0..=2 {
            let o = PowerOptions {
                tol: 1e-13,
                ..opts(s)
            };
            worst = worst.max((norm_lower_matrix(&t, 2, radius, &o)?.value - col).abs());
        }
        Ok(worst)
    })?;
    let worst = max_by(matrix);
    r.output("matrix_max_error", worst);
    r.check(
        "homogeneous T at level 2: norm = ||sum A_i* A_i||^1/2",
        "Prop 16",
        worst <= EXACT_TOLERANCE,
        Some(format!("max error {worst:e}")),
    );

    let mut dims_ok = true;
    for k in 1..=3u32 {
        let b: Ball<MonoidWord> = ball(&Alphabet::plain(k), 4)?;
        for n in 0..=4 {
            dims_ok &= layer(&b, n).len() == (k as usize).pow(n as u32);
        }
    }
    r.check("X_n has dimension k^n", "Prop 16", dims_ok, None);

    let proj = instances(derive_seed(seed, 2 << 20), 20, |i, s| {
        let mut g = rng(s);
        let p: MonoidPoly = {
            let nt = g.random_range(2..=6);
            random_poly(&mut g, &Alphabet::plain(2), 3, nt, 1 + i % 2)
        };
        projection_bound(
            &p,
            &SubsetPredicate::Degree(1 + i % 3),
            1.0,
            4,
            &opts(s),
            BOUND_TOLERANCE,
        )
    })?;
    r.output("projection", projection_summary(&proj));
    check_projection(
        &mut r,
        "projection onto X_n is contractive",
        "Prop 16",
        &proj,
    );
    Ok(r)
}

fn prop17(seed: u64) -> Result<Report> {
    let mut r = suite_report(Suite::Prop17, seed, Some(2));
    let checks = instances(seed, 20, |i, s| {
        let mut g = rng(s);
        let k = 2 + i % 2;
        let p: MonoidPoly = {
            let nt = g.random_range(1..=5);
            random_poly(&mut g, &Alphabet::plain(k as u32 - 1), 3, nt, 1)
        };
        let mut worst = 0.0f64;
        for radius in 0..=2 {
            worst = worst.max(prop17_check(&p, k, radius, &opts(s))?.difference);
        }
        Ok(worst)
    })?;
    let worst = max_by(checks);
    r.output("max_difference", worst);
    r.check(
        "||p e_k||_inf = ||p||_2 for 20 seeded p at L = 0, 1, 2",
        "Prop 17",
        worst <= 1e-8,
        Some(format!("max difference {worst:e}")),
    );
    let al1 = Alphabet::plain(1);
    let one_plus = MonoidPoly::from_scalars(
        al1.clone(),
        [
            (MonoidWord::identity(), c(1.0, 0.0)),
            (MonoidWord::gen(Gen::plain(1)), c(1.0, 0.0)),
        ],
    )?;
    let ex1 = prop17_check(&one_plus, 2, 3, &opts(seed))?;
    let ex2 = prop17_check(&MonoidPoly::one(al1, 1), 2, 3, &opts(seed))?;
    r.check(
        "p = 1 + e_1 gives sqrt(2); p = 1 gives 1",
        "Prop 17",
        ex1.holds
            && ex2.holds
            && (ex1.l2 - 2f64.sqrt()).abs() < 1e-15
            && (ex2.l2 - 1.0).abs() < 1e-15,
        None,
    );
    Ok(r)
}

// ---------------------------------------------------------------------------
// Row/column identities and the von Neumann inequality

fn row_column(seed: u64) -> Result<Report> {
    let mut r = suite_report(Suite::RowColumn, seed, None);
    let errs = instances(seed, 100, |_, s| {
        let mut g = rng(s);
        let m = g.random_range(1..=6);
        let (rows, cols) = (g.random_range(1..=8), g.random_range(1..=8));
        let f = MatrixFamily::new(
            (0..m)
                .map(|_| gaussian_matrix(&mut g, rows, cols))
                .collect(),
        )?;
        Ok((
            (f.column_norm() - f.stacked_column_norm()).abs(),
            (f.row_norm() - f.stacked_row_norm()).abs(),
        ))
    })?;
    let col = max_by(errs.iter().map(|e| e.0));
    let row = max_by(errs.iter().map(|e| e.1));
    r.output("column_max_error", col);
    r.output("row_max_error", row);
    r.check(
        "||sum T_i* T_i||^1/2 equals the stacked column norm",
        "Column space",
        col <= 1e-10,
        Some(format!("max error {col:e}")),
    );
    r.check(
        "||sum T_i T_i*||^1/2 equals the stacked row norm",
        "Row space",
        row <= 1e-10,
        Some(format!("max error {row:e}")),
    );
    Ok(r)
}

/// Polynomials exercising each bound kind for `k` generators.
fn vn_corpus(k: u32, seed: u64) -> Result<Vec<MonoidPoly>> {
    let mut g = rng(seed);
    let al = Alphabet::plain(k);
    let b: Ball<MonoidWord> = ball(&al, 3)?;
    let mut out = vec![
        random_poly_from(&mut g, &al, layer(&b, 2), 3, 1),
        random_poly(&mut g, &al, 2, 4, 1),
    ];
    if k >= 2 {
        let g1 = Gen::plain(1);
        let g2 = Gen::plain(2);
        let circle = |coeffs: &[C64]| {
            MonoidPoly::from_scalars(
                al.clone(),
                coeffs.iter().enumerate().map(|(m, &z)| {
                    let mut w = vec![g1; m];
                    w.push(g2);
                    (MonoidWord::new(w), z)
                }),
            )
        };
        out.push(circle(&[c(1.0, 0.0), c(1.0, 0.0)])?);
        out.push(circle(
            &(0..4).map(|_| gaussian(&mut g)).collect::<Vec<_>>(),
        )?);
    } else {
        out.push(random_poly_from(&mut g, &al, layer(&b, 3), 1, 1));
        out.push(random_poly(&mut g, &al, 3, 4, 1));
    }
    Ok(out)
}

fn von_neumann(seed: u64) -> Result<Report> {
    let mut r = suite_report(Suite::VonNeumann, seed, None);
    let trials_per = 14;
    let mut jobs = Vec::new();
    for k in 1..=3u32 {
        for d in [2usize, 4, 8] {
            for mode in [SampleMode::Strict, SampleMode::Boundary] {
                jobs.push((k, d, mode));
            }
        }
    }
    let results = instances(seed, jobs.len(), |i, s| {
        let (k, d, mode) = jobs[i];
        let polys = vn_corpus(k, derive_seed(s, 0))?;
        polys
            .iter()
            .enumerate()
            .map(|(j, p)| {
                let cfg = VnConfig {
                    dim: d,
                    trials: trials_per,
                    seed: derive_seed(s, 1 + j as u64),
                    mode,
                    estimate_radius: None,
                };
                Ok((p.to_string(), vn_verify(p, k as usize, &cfg)?))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut total = 0;
    let mut by_kind: HashMap<BoundKind, (usize, usize, f64)> = HashMap::new();
    let mut app2 = true;
    let mut summary = Vec::new();
    for ((k, d, mode), reports) in jobs.iter().zip(&results) {
        for (text, rep) in reports {
            total += rep.trials.len();
            let e = by_kind
                .entry(rep.bound_kind)
                .or_insert((0, 0, f64::INFINITY));
            e.0 += rep.trials.len();
            e.1 += rep.violations;
            e.2 = e.2.min(rep.min_slack);
            if text == "g2 + g1*g2" {
                app2 &= rep.bound_kind == BoundKind::CircleL2
                    && (rep.bound - 2f64.sqrt()).abs() < 1e-15
                    && rep.violations == 0;
            }
            summary.push(json!({
                "k": k, "dim": d, "mode": mode, "p": text, "bound_kind": rep.bound_kind,
                "bound": rep.bound, "max_value": rep.max_value, "min_slack": rep.min_slack, "violations": rep.violations,
            }));
        }
    }
    r.output("trials", total);
    r.output("runs", summary);
    for kind in [
        BoundKind::HomogeneousL2,
        BoundKind::CircleL2,
        BoundKind::Triangle,
    ] {
        let (n, v, slack) = by_kind.get(&kind).copied().unwrap_or((0, 0, f64::INFINITY));
        let name = serde_json::to_value(kind).expect("kind serializes");
        r.check(
            &format!(
                "no violations against the {} bound ({n} trials)",
                name.as_str().unwrap_or("")
            ),
            "Eq (4)",
            v == 0 && n > 0,
            Some(format!("min slack {slack:e}, tolerance {VN_TOLERANCE:e}")),
        );
    }
    r.check(
        "(1+g1)g2 is bounded by sqrt(2) = circle L2 norm of 1+t",
        "Eq (4)",
        app2,
        None,
    );
    r.check("at least 1000 trials", "Eq (4)", total >= 1000, None);

    // Near-extremal tuples for e_1 + e_2: reported only.
    let al = Alphabet::plain(2);
    let p = MonoidPoly::from_scalars(
        al,
        [
            (MonoidWord::gen(Gen::plain(1)), c(1.0, 0.0)),
            (MonoidWord::gen(Gen::plain(2)), c(1.0, 0.0)),
        ],
    )?;
    let cfg = VnConfig {
        dim: 4,
        trials: 50,
        seed: derive_seed(seed, 99),
        mode: SampleMode::Boundary,
        estimate_radius: None,
    };
    let rep = vn_verify(&p, 2, &cfg)?;
    r.output(
        "tightness_witness",
        json!({ "p": p.to_string(), "bound": rep.bound, "best_value": rep.max_value }),
    );
    Ok(r)
}

// ---------------------------------------------------------------------------
// Single-shot commands

/// Norm estimate of a polynomial, as a report.
pub fn norm_report<W: Word>(
    text: &str,
    p: &Poly<W>,
    radius: usize,
    opts: &PowerOptions,
) -> Result<Report> {
    let est = norm_lower(p, radius, opts)?;
    let mut r = Report::new(
        "norm",
        Inputs {
            expression: Some(text.into()),
            mode: Some(W::MODE.to_string()),
            k: Some(p.alphabet().len()),
            radius: Some(radius),
            level: Some(p.level()),
            seeds: vec![opts.seed],
            ..Default::default()
        },
    );
    r.output("estimate", &est);
    r.output("triangle_bound", est.triangle_bound);
    r.check(
        "estimate does not exceed the triangle bound",
        "Norm definition",
        est.value <= est.triangle_bound + 1e-9,
        None,
    );
    let monotone = est.trace.windows(2).all(|w| w[1].value >= w[0].value);
    r.check(
        "estimate is nondecreasing in the radius",
        "Norm definition",
        monotone,
        None,
    );
    if W::MODE == crate::words::Mode::Monoid && p.is_homogeneous() {
        r.check(
            "homogeneous p: estimate equals ||p||_2",
            "Prop 16",
            (est.value - p.l2_norm()).abs() <= 1e-8,
            None,
        );
    }
    Ok(r)
}

/// `‖p‖_∞` against the group-algebra estimate for a positive polynomial.
pub fn compare_remark(
    text: &str,
    p: &MonoidPoly,
    radius: usize,
    opts: &PowerOptions,
) -> Result<Report> {
    let disk = norm_lower(p, radius, opts)?;
    let group = p.to_group();
    let full = norm_lower(&group, radius, opts)?;
    let compressed = compression_norm(&group, radius, opts)?;
    let mut r = Report::new(
        "compare-remark",
        Inputs {
            expression: Some(text.into()),
            k: Some(p.alphabet().len()),
            radius: Some(radius),
            level: Some(p.level()),
            seeds: vec![opts.seed],
            ..Default::default()
        },
    );
    let trace: Vec<f64> = full.trace.iter().map(|s| s.value).collect();
    r.output("disk_norm", &disk);
    r.output("compression_norm", compressed.value);
    r.output("group_estimate", &full);
    r.output("group_trace", &trace);
    r.check(
        "||QpQ|| agrees with the disk norm",
        "Remark (disk norm)",
        (compressed.value - disk.value).abs() <= 1e-8,
        None,
    );
    r.check(
        "disk estimate never exceeds the group norm bound",
        "Remark (disk norm)",
        disk.value <= full.triangle_bound + 1e-9,
        None,
    );
    r.check(
        "group trace is nondecreasing",
        "Remark (disk norm)",
        trace.windows(2).all(|w| w[1] >= w[0]),
        None,
    );
    r.output(
        "strict",
        full.value > disk.value + 1e-6 && disk.kind == EstimateKind::Exact,
    );
    Ok(r)
}

/// Von Neumann check of one polynomial, as a report.
pub fn vn_report(text: &str, p: &MonoidPoly, k: usize, cfg: &VnConfig) -> Result<Report> {
    let rep = vn_verify(p, k, cfg)?;
    let mut r = Report::new(
        "vn",
        Inputs {
            expression: Some(text.into()),
            mode: Some("monoid".into()),
            k: Some(k),
            radius: cfg.estimate_radius,
            level: Some(1),
            dim: Some(cfg.dim),
            trials: Some(cfg.trials),
            seeds: vec![cfg.seed],
            ..Default::default()
        },
    );
    let theorem_backed = matches!(
        rep.bound_kind,
        BoundKind::HomogeneousL2 | BoundKind::CircleL2 | BoundKind::Triangle
    );
    r.check(
        &format!(
            "||p(T)|| <= {} bound on every trial",
            serde_json::to_value(rep.bound_kind)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default()
        ),
        "Eq (4)",
        theorem_backed && rep.violations == 0,
        Some(format!("min slack {:e}", rep.min_slack)),
    );
    if let Some(q) = crate::vncheck::circle_form(p) {
        r.output("circle_l2", circle_l2(&q));
    }
    r.output("report", &rep);
    Ok(r)
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::from_name(s).ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}
