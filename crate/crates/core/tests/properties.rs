use std::collections::HashMap;

use proptest::prelude::*;

use freenorm::expr::{parse_group, parse_monoid};
use freenorm::fockrep::{norm_lower, Ball, PowerOptions, TruncOp};
use freenorm::linalg::{c, C64};
use freenorm::random::{gaussian, random_poly, rng};
use freenorm::words::{
    classify, embed_word, factor, lemma7_action, reduce, Split, SubsetPredicate,
};
use freenorm::{Alphabet, Gen, GroupPoly, GroupWord, Letter, MonoidPoly, MonoidWord, Poly, Word};

fn letter(k: u32) -> impl Strategy<Value = Letter> {
    (1..=k, any::<bool>()).prop_map(|(i, inv)| {
        if inv {
            Letter::neg(Gen::plain(i))
        } else {
            Letter::pos(Gen::plain(i))
        }
    })
}

fn letters(k: u32, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(k), 0..=max)
}

fn group_word(k: u32, max: usize) -> impl Strategy<Value = GroupWord> {
    letters(k, max).prop_map(move |ls| reduce(&ls, &Alphabet::plain(k)).unwrap())
}

fn monoid_word(k: u32, max: usize) -> impl Strategy<Value = MonoidWord> {
    prop::collection::vec((1..=k).prop_map(Gen::plain), 0..=max).prop_map(MonoidWord::new)
}

fn close<W: Word>(p: &Poly<W>, q: &Poly<W>, tol: f64) -> bool {
    p.sub(q).unwrap().l2_norm() <= tol * (1.0 + p.l2_norm())
}

fn opts() -> PowerOptions {
    PowerOptions::default()
}

#[test]
fn concat_is_associative_exhaustively() {
    for (k, radius) in [(1u32, 4usize), (2, 4), (3, 3)] {
        let b: Ball<GroupWord> = Ball::new(&Alphabet::plain(k), radius).unwrap();
        for x in b.words() {
            for y in b.words() {
                let xy = x.concat(y);
                for z in b.words() {
                    assert_eq!(xy.concat(z), x.concat(&y.concat(z)));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn reduce_is_idempotent(ls in letters(3, 12)) {
        let al = Alphabet::plain(3);
        let w = reduce(&ls, &al).unwrap();
        let again = reduce(&w.letters().collect::<Vec<_>>(), &al).unwrap();
        prop_assert_eq!(&again, &w);
        let adjacent_cancel = w.as_letters().windows(2).any(|p| p[0] == p[1].inv());
        prop_assert!(!adjacent_cancel);
    }

    #[test]
    fn reduce_agrees_with_concatenation(a in letters(3, 8), b in letters(3, 8)) {
        let al = Alphabet::plain(3);
        let all: Vec<Letter> = a.iter().chain(&b).copied().collect();
        let lhs = reduce(&all, &al).unwrap();
        let rhs = reduce(&a, &al).unwrap().concat(&reduce(&b, &al).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_cancels(w in group_word(3, 10)) {
        prop_assert!(w.concat(&w.inverse()).is_identity());
        prop_assert!(w.inverse().concat(&w).is_identity());
    }

    #[test]
    fn group_embedding_is_an_injective_homomorphism(u in group_word(4, 6), v in group_word(4, 6)) {
        let (eu, ev) = (embed_word(&u).unwrap(), embed_word(&v).unwrap());
        prop_assert_eq!(embed_word(&u.concat(&v)).unwrap(), eu.concat(&ev));
        prop_assert_eq!(eu == ev, u == v);
        prop_assert!(classify(&eu, &SubsetPredicate::Sub(Split::Embedded)));
    }

    #[test]
    fn monoid_embedding_is_an_injective_homomorphism(u in monoid_word(4, 6), v in monoid_word(4, 6)) {
        let (eu, ev) = (embed_word(&u).unwrap(), embed_word(&v).unwrap());
        prop_assert_eq!(embed_word(&u.concat(&v)).unwrap(), eu.concat(&ev));
        prop_assert_eq!(eu == ev, u == v);
        prop_assert!(classify(&eu, &SubsetPredicate::Sub(Split::Embedded)));
    }

    #[test]
    fn monoid_partition_is_a_bijection(w in monoid_word(3, 10), n in 1u32..3) {
        for split in [Split::FirstGenerators(n), Split::Embedded] {
            if split == Split::Embedded && w.as_gens().iter().any(|g| g.index() > 2) {
                continue;
            }
            let (p, y) = factor(&w, split).expect("every monoid word factors");
            prop_assert_eq!(p.concat(&y), w.clone());
            prop_assert!(classify(&p, &SubsetPredicate::Sub(split)));
            prop_assert!(classify(&y, &SubsetPredicate::ESet(split)));
            if let Some((p2, y2)) = factor(&y, split) {
                prop_assert!(p2.is_identity());
                prop_assert_eq!(y2, y);
            }
        }
    }

    #[test]
    fn group_coset_factorization(w in group_word(3, 10), n in 1u32..3) {
        let split = Split::FirstGenerators(n);
        let (h, t) = factor(&w, split).expect("coset factorization exists");
        prop_assert_eq!(h.concat(&t), w);
        prop_assert!(classify(&h, &SubsetPredicate::Sub(split)));
        prop_assert!(classify(&t, &SubsetPredicate::ESet(split)));
    }
}

fn split_letter() -> impl Strategy<Value = Letter> {
    (1..=2u32, any::<bool>(), any::<bool>()).prop_map(|(i, alpha, inv)| {
        let g = if alpha { Gen::alpha(i) } else { Gen::e(i) };
        if inv {
            Letter::neg(g)
        } else {
            Letter::pos(g)
        }
    })
}

proptest! {
    #[test]
    fn lemma7_vectors_are_orthonormal(
        x in prop::collection::vec((1..=2u32, any::<bool>()), 0..4),
        y in prop::collection::vec((1..=2u32, any::<bool>()), 0..4),
        z1 in prop::collection::vec(split_letter(), 0..4),
        z2 in prop::collection::vec(split_letter(), 0..4),
        i1 in 1..=2u32,
        i2 in 1..=2u32,
    ) {
        let alpha = |v: &Vec<(u32, bool)>| {
            GroupWord::from_letters(v.iter().map(|&(i, inv)| if inv { Letter::neg(Gen::alpha(i)) } else { Letter::pos(Gen::alpha(i)) })).unwrap()
        };
        let (x, y) = (alpha(&x), alpha(&y));
        let (z1, z2) = (GroupWord::from_letters(z1).unwrap(), GroupWord::from_letters(z2).unwrap());
        let a = lemma7_action(&x, i1, &z1).unwrap();
        let b = lemma7_action(&y, i2, &z2).unwrap();
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!(a == b, (&x, i1, &z1) == (&y, i2, &z2));
        }
    }

    #[test]
    fn multiplication_is_associative_and_distributive(seed in any::<u64>(), level in 1usize..=2) {
        let mut g = rng(seed);
        let al = Alphabet::plain(2);
        let p: GroupPoly = random_poly(&mut g, &al, 2, 3, level);
        let q: GroupPoly = random_poly(&mut g, &al, 2, 3, level);
        let r: GroupPoly = random_poly(&mut g, &al, 2, 3, level);
        let lhs = p.mul(&q).unwrap().mul(&r).unwrap();
        prop_assert!(close(&lhs, &p.mul(&q.mul(&r).unwrap()).unwrap(), 1e-12));
        let dist = p.mul(&q.add(&r).unwrap()).unwrap();
        prop_assert!(close(&dist, &p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap(), 1e-12));
        let m: MonoidPoly = random_poly(&mut g, &al, 2, 3, level);
        let n: MonoidPoly = random_poly(&mut g, &al, 2, 3, level);
        let o: MonoidPoly = random_poly(&mut g, &al, 2, 3, level);
        prop_assert!(close(&m.mul(&n).unwrap().mul(&o).unwrap(), &m.mul(&n.mul(&o).unwrap()).unwrap(), 1e-12));
    }

    #[test]
    fn truncated_adjoint_is_the_adjoint(seed in any::<u64>(), level in 1usize..=2) {
        let mut g = rng(seed);
        let al = Alphabet::plain(2);
        let p: GroupPoly = random_poly(&mut g, &al, 2, 4, level);
        let b: Ball<GroupWord> = Ball::new(&al, 2).unwrap();
        let t = TruncOp::new(&p, b.words());
        let x: Vec<C64> = (0..b.len() * level).map(|_| gaussian(&mut g)).collect();
        let y: Vec<C64> = (0..t.codomain().len() * level).map(|_| gaussian(&mut g)).collect();
        let inner = |u: &[C64], v: &[C64]| u.iter().zip(v).map(|(a, b)| a.conj() * b).sum::<C64>();
        let lhs = inner(&t.apply(&x), &y);
        let rhs = inner(&x, &t.apply_adjoint(&y));
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
        prop_assert_eq!(p.adjoint().adjoint(), p.clone());
        prop_assert!((p.l2_norm() - p.adjoint().l2_norm_adjoint()).abs() <= 1e-12);
    }

    #[test]
    fn estimates_are_monotone_and_sandwiched(seed in any::<u64>(), group in any::<bool>()) {
        let mut g = rng(seed);
        let al = Alphabet::plain(2);
        let o = PowerOptions { seed, ..opts() };
        let check = |est: freenorm::NormEstimate, l2: f64, tri: f64| {
            est.trace.windows(2).all(|w| w[1].value >= w[0].value)
                && est.value >= l2 - 1e-12
                && est.value <= tri + 1e-9
        };
        if group {
            let p: GroupPoly = random_poly(&mut g, &al, 2, 4, 1);
            prop_assert!(check(norm_lower(&p, 4, &o).unwrap(), p.l2_norm(), p.triangle_bound()));
        } else {
            let p: MonoidPoly = random_poly(&mut g, &al, 3, 5, 1);
            prop_assert!(check(norm_lower(&p, 4, &o).unwrap(), p.l2_norm(), p.triangle_bound()));
        }
    }

    #[test]
    fn estimates_respect_submultiplicativity(seed in any::<u64>()) {
        let mut g = rng(seed);
        let al = Alphabet::plain(2);
        let p: MonoidPoly = random_poly(&mut g, &al, 1, 3, 1);
        let q: MonoidPoly = random_poly(&mut g, &al, 1, 3, 1);
        let o = PowerOptions { seed, ..opts() };
        let pq = norm_lower(&p.mul(&q).unwrap(), 3, &o).unwrap().value;
        prop_assert!(pq <= p.triangle_bound() * q.triangle_bound() + 1e-9);
        // Homogeneous factors have exact norms, so the product bound is sharp.
        let (hp, hq) = (p.homogeneous_part(1), q.homogeneous_part(1));
        if !hp.is_zero() && !hq.is_zero() {
            let prod = norm_lower(&hp.mul(&hq).unwrap(), 2, &o).unwrap().value;
            prop_assert!((prod - hp.l2_norm() * hq.l2_norm()).abs() <= 1e-9);
        }
    }
}

/// Random expression text over `g1..g3`, with negative powers only on
/// generators when `group` is set.
fn expression(group: bool) -> impl Strategy<Value = String> {
    let coeff = prop_oneof![
        (-9i32..=9).prop_map(|n| n.to_string()),
        (1i32..=9).prop_map(|n| format!("{n}i")),
        (0i32..=20).prop_map(|n| format!("{}", n as f64 / 4.0)),
    ];
    let gen = (1u32..=3, if group { -2i32..=3 } else { 0i32..=3 }).prop_map(|(i, e)| match e {
        1 => format!("g{i}"),
        e => format!("g{i}^{e}"),
    });
    let leaf = prop_oneof![coeff, gen];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..=2).prop_map(|(a, e)| format!("({a})^{e}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_expressions_reparse(g in expression(true), m in expression(false)) {
        let al = Alphabet::plain(3);
        let p = parse_group(&g, &al).unwrap();
        prop_assert_eq!(parse_group(&p.to_string(), &al).unwrap(), p);
        let q = parse_monoid(&m, &al).unwrap();
        prop_assert_eq!(parse_monoid(&q.to_string(), &al).unwrap(), q);
    }
}

#[test]
fn expansion_matches_by_hand() {
    let al = Alphabet::plain(2);
    let p = parse_monoid("(g1+g2)*(g1+g2)", &al).unwrap();
    let mut expect = HashMap::new();
    for a in 1..=2 {
        for b in 1..=2 {
            expect.insert(
                MonoidWord::new(vec![Gen::plain(a), Gen::plain(b)]),
                c(1.0, 0.0),
            );
        }
    }
    assert_eq!(p.num_terms(), 4);
    for (w, z) in expect {
        assert_eq!(p.scalar(&w), z);
    }
}
