//! Words in free groups `F_k` and free monoids `P_k`.
//!
//! Group words are kept fully reduced at all times, so two equal group
//! elements always have identical representations. Monoid words are plain
//! letter sequences with positive powers only.
//!
//! Generators carry an alphabet tag. The split constructions used for the
//! coset sets `K = ⋃ e_j F_α` work with two disjoint families of generators,
//! `alpha1, alpha2, ...` and `e1, e2, ...`; everything else uses the plain
//! generators `g1, g2, ...` (also written `a, b, c`).

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which family a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Plain,
    Alpha,
    E,
}

/// A free generator: an alphabet tag plus a 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    tag: Tag,
    index: u32,
}

impl Gen {
    pub fn new(tag: Tag, index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidGenerator(format!(
                "generator index must be >= 1 (tag {tag:?})"
            )));
        }
        Ok(Gen { tag, index })
    }

    /// `g_i`. Panics if `i == 0`.
    pub fn plain(i: u32) -> Self {
        Gen::new(Tag::Plain, i).expect("plain generator index must be >= 1")
    }

    /// `α_i`. Panics if `i == 0`.
    pub fn alpha(i: u32) -> Self {
        Gen::new(Tag::Alpha, i).expect("alpha generator index must be >= 1")
    }

    /// `e_i` of the split alphabet. Panics if `i == 0`.
    pub fn e(i: u32) -> Self {
        Gen::new(Tag::E, i).expect("e generator index must be >= 1")
    }

    pub fn tag(self) -> Tag {
        self.tag
    }

    pub fn index(self) -> u32 {
        self.index
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            Tag::Plain => write!(f, "g{}", self.index),
            Tag::Alpha => write!(f, "alpha{}", self.index),
            Tag::E => write!(f, "e{}", self.index),
        }
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: Gen) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: Gen) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// Group words or monoid words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Group,
    Monoid,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Group => "group",
            Mode::Monoid => "monoid",
        })
    }
}

/// The finite working alphabet of a session. Order matters: it fixes the
/// lexicographic order used when balls of words are enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    gens: Vec<Gen>,
}

impl Alphabet {
    pub fn new(gens: Vec<Gen>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &gens {
            if !seen.insert(*g) {
                return Err(Error::InvalidGenerator(format!(
                    "generator {g} listed twice"
                )));
            }
        }
        Ok(Alphabet { gens })
    }

    /// `g1..gk`.
    pub fn plain(k: u32) -> Self {
        Alphabet {
            gens: (1..=k).map(Gen::plain).collect(),
        }
    }

    /// `alpha1..alpha_a, e1..e_b`.
    pub fn split(alphas: u32, es: u32) -> Self {
        Alphabet {
            gens: (1..=alphas)
                .map(Gen::alpha)
                .chain((1..=es).map(Gen::e))
                .collect(),
        }
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: Gen) -> bool {
        self.gens.contains(&g)
    }

    pub fn position(&self, g: Gen) -> Option<usize> {
        self.gens.iter().position(|&h| h == g)
    }

    /// The sub-alphabet of generators carrying `tag`.
    pub fn restrict_tag(&self, tag: Tag) -> Alphabet {
        Alphabet {
            gens: self.gens.iter().copied().filter(|g| g.tag == tag).collect(),
        }
    }

    /// Letters available in `mode`, in enumeration order (`g` before `g^-1`).
    pub fn letters(&self, mode: Mode) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.gens.len() * 2);
        for &g in &self.gens {
            out.push(Letter::pos(g));
            if mode == Mode::Group {
                out.push(Letter::neg(g));
            }
        }
        out
    }

    pub fn check_letter(&self, l: Letter) -> Result<()> {
        if self.contains(l.gen) {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(format!(
                "generator {} is outside the alphabet of size {}",
                l.gen,
                self.len()
            )))
        }
    }

    pub fn check_word<W: Word>(&self, w: &W) -> Result<()> {
        w.letters().try_for_each(|l| self.check_letter(l))
    }

    /// True if every generator of `self` also belongs to `other`.
    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.gens.iter().all(|g| other.contains(*g))
    }
}

/// Common interface of group and monoid words.
pub trait Word:
    Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const MODE: Mode;

    fn identity() -> Self;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn is_identity(&self) -> bool {
        self.len() == 0
    }

    /// Letters from left to right (always positive in monoid mode).
    fn letters(&self) -> Box<dyn Iterator<Item = Letter> + '_>;

    /// Product `self · other`; reduced in group mode.
    fn concat(&self, other: &Self) -> Self;

    /// Append one letter on the right, unless it cancels the last letter
    /// (which would lower the length) or is an inverse in monoid mode.
    fn push(&self, letter: Letter) -> Option<Self>;

    /// Build from letters, reducing in group mode. Fails on inverse letters
    /// in monoid mode.
    fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Self>;

    /// The homomorphic image of the `i`-th generator under the embedding of
    /// the countably generated object into the 2-generator one:
    /// `a^i b a^-i` for groups, `a^i b` for monoids (`a = g1`, `b = g2`).
    fn embed_generator(i: u32) -> Result<Self>;

    /// Substitute each generator by a word (group mode maps inverses to
    /// inverse images).
    fn substitute<F>(&self, image: F) -> Result<Self>
    where
        F: FnMut(Gen) -> Result<Self>;
}

fn shortlex<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A reduced word of a free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.letters, &other.letters)
    }
}

/// Free reduction of a raw signed-letter sequence, validated against
/// `alphabet`.
pub fn reduce(letters: &[Letter], alphabet: &Alphabet) -> Result<GroupWord> {
    for &l in letters {
        alphabet.check_letter(l)?;
    }
    Ok(GroupWord::reduced(letters.iter().copied()))
}

impl GroupWord {
    fn reduced<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match stack.last() {
                Some(&top) if top.cancels(l) => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        GroupWord { letters: stack }
    }

    pub fn gen(g: Gen) -> Self {
        GroupWord {
            letters: vec![Letter::pos(g)],
        }
    }

    /// `g^n` for any integer `n`.
    pub fn power(g: Gen, n: i64) -> Self {
        let l = if n >= 0 {
            Letter::pos(g)
        } else {
            Letter::neg(g)
        };
        GroupWord {
            letters: vec![l; n.unsigned_abs() as usize],
        }
    }

    pub fn as_letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Positive words (no inverse letters) lie in the free monoid.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn to_monoid(&self) -> Option<MonoidWord> {
        if self.is_positive() {
            Some(MonoidWord {
                letters: self.letters.iter().map(|l| l.gen).collect(),
            })
        } else {
            None
        }
    }
}

impl Word for GroupWord {
    const MODE: Mode = Mode::Group;

    fn identity() -> Self {
        GroupWord::default()
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn letters(&self) -> Box<dyn Iterator<Item = Letter> + '_> {
        Box::new(self.letters.iter().copied())
    }

    fn concat(&self, other: &Self) -> Self {
        // Both sides are reduced, so cancellation only happens at the seam.
        let mut k = 0;
        let n = self.letters.len();
        while k < n && k < other.letters.len() && self.letters[n - 1 - k].cancels(other.letters[k])
        {
            k += 1;
        }
        let mut letters = Vec::with_capacity(n - k + other.letters.len() - k);
        letters.extend_from_slice(&self.letters[..n - k]);
        letters.extend_from_slice(&other.letters[k..]);
        GroupWord { letters }
    }

    fn push(&self, letter: Letter) -> Option<Self> {
        if let Some(&last) = self.letters.last() {
            if last.cancels(letter) {
                return None;
            }
        }
        let mut letters = self.letters.clone();
        letters.push(letter);
        Some(GroupWord { letters })
    }

    fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Self> {
        Ok(GroupWord::reduced(letters))
    }

    fn embed_generator(i: u32) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidGenerator(
                "embedding index must be >= 1".into(),
            ));
        }
        let (a, b) = (Gen::plain(1), Gen::plain(2));
        let mut letters = vec![Letter::pos(a); i as usize];
        letters.push(Letter::pos(b));
        letters.extend(std::iter::repeat_n(Letter::neg(a), i as usize));
        Ok(GroupWord { letters })
    }

    fn substitute<F>(&self, mut image: F) -> Result<Self>
    where
        F: FnMut(Gen) -> Result<Self>,
    {
        let mut out = GroupWord::identity();
        for l in &self.letters {
            let w = image(l.gen)?;
            let w = if l.inverse { w.inverse() } else { w };
            out = out.concat(&w);
        }
        Ok(out)
    }
}

fn fmt_runs(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("1");
    }
    let mut i = 0;
    let mut first = true;
    while i < letters.len() {
        let mut j = i + 1;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        let run = j - i;
        let l = letters[i];
        match (run, l.inverse) {
            (1, false) => write!(f, "{}", l.gen)?,
            (r, false) => write!(f, "{}^{}", l.gen, r)?,
            (r, true) => write!(f, "{}^-{}", l.gen, r)?,
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_runs(f, &self.letters)
    }
}

/// A word of the free monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MonoidWord {
    letters: Vec<Gen>,
}

impl PartialOrd for MonoidWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonoidWord {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.letters, &other.letters)
    }
}

impl MonoidWord {
    pub fn new(letters: Vec<Gen>) -> Self {
        MonoidWord { letters }
    }

    pub fn gen(g: Gen) -> Self {
        MonoidWord { letters: vec![g] }
    }

    pub fn as_gens(&self) -> &[Gen] {
        &self.letters
    }

    pub fn first(&self) -> Option<Gen> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Gen> {
        self.letters.last().copied()
    }

    pub fn to_group(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().map(|&g| Letter::pos(g)).collect(),
        }
    }

    /// Split after the first `n` letters.
    pub fn split_at(&self, n: usize) -> (MonoidWord, MonoidWord) {
        let (a, b) = self.letters.split_at(n);
        (MonoidWord::new(a.to_vec()), MonoidWord::new(b.to_vec()))
    }
}

impl Word for MonoidWord {
    const MODE: Mode = Mode::Monoid;

    fn identity() -> Self {
        MonoidWord::default()
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn letters(&self) -> Box<dyn Iterator<Item = Letter> + '_> {
        Box::new(self.letters.iter().map(|&g| Letter::pos(g)))
    }

    fn concat(&self, other: &Self) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        MonoidWord { letters }
    }

    fn push(&self, letter: Letter) -> Option<Self> {
        if letter.inverse {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.push(letter.gen);
        Some(MonoidWord { letters })
    }

    fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Result<Self> {
        let mut out = Vec::new();
        for l in letters {
            if l.inverse {
                return Err(Error::ModeMismatch(format!(
                    "inverse letter {}^-1 in a monoid word",
                    l.gen
                )));
            }
            out.push(l.gen);
        }
        Ok(MonoidWord { letters: out })
    }

    fn embed_generator(i: u32) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidGenerator(
                "embedding index must be >= 1".into(),
            ));
        }
        let mut letters = vec![Gen::plain(1); i as usize];
        letters.push(Gen::plain(2));
        Ok(MonoidWord { letters })
    }

    fn substitute<F>(&self, mut image: F) -> Result<Self>
    where
        F: FnMut(Gen) -> Result<Self>,
    {
        let mut letters = Vec::new();
        for &g in &self.letters {
            letters.extend_from_slice(&image(g)?.letters);
        }
        Ok(MonoidWord { letters })
    }
}

impl fmt::Display for MonoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<Letter> = self.letters.iter().map(|&g| Letter::pos(g)).collect();
        fmt_runs(f, &letters)
    }
}

/// The embedding `g_i ↦ a^i b a^-i` (group) or `g_i ↦ a^i b` (monoid) of the
/// countably generated free object into the one on `a = g1, b = g2`. Only
/// plain generators are accepted as sources.
pub fn embed_word<W: Word>(w: &W) -> Result<W> {
    w.substitute(|g| {
        if g.tag() != Tag::Plain {
            return Err(Error::InvalidGenerator(format!(
                "embedding is defined on plain generators, got {g}"
            )));
        }
        W::embed_generator(g.index())
    })
}

/// The sub-object a partition of the word set is taken relative to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Split {
    /// Words over the first `n` plain generators (`F_n ⊂ F_m`, `P_n ⊂ P_m`).
    FirstGenerators(u32),
    /// Words over the alpha-tagged generators (`F_α`, `P_α`).
    Alpha,
    /// The image of [`embed_word`]: `⟨a^i b a^-i⟩` or `⟨a^i b⟩`, `i ≥ 1`.
    Embedded,
}

/// Decidable subsets of the word set that drive projections and partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetPredicate {
    /// Membership in the subgroup / submonoid described by the split.
    Sub(Split),
    /// `K = ⋃_{j ≥ from} e_j F_α` (or `e_j P_α`), with `e_0 F_α = F_α`.
    KSet { from: u32 },
    /// Words with no nonempty initial segment in the sub-object.
    ESet(Split),
    /// The single coset `e_j F_α` (`j = 0` is `F_α` itself).
    Coset(u32),
    /// Words with exactly `n` letters.
    Degree(usize),
}

fn is_plain(l: Letter, i: u32) -> bool {
    l.gen.tag() == Tag::Plain && l.gen.index() == i
}

/// Membership in `⟨a^i b a^-i : i ≥ 1⟩`: the total `a`-exponent is zero and
/// every `b`-letter sits at `a`-height at least one.
fn in_embedded_group(letters: &[Letter]) -> bool {
    let mut height: i64 = 0;
    for &l in letters {
        if is_plain(l, 1) {
            height += if l.inverse { -1 } else { 1 };
        } else if is_plain(l, 2) {
            if height < 1 {
                return false;
            }
        } else {
            return false;
        }
    }
    height == 0
}

/// Length of the longest prefix lying in `⟨a^i b : i ≥ 1⟩`. The blocks
/// `a^i b` form a prefix code, so the parse is unique.
fn embedded_monoid_prefix(letters: &[Letter]) -> usize {
    let mut best = 0;
    let mut run = 0usize;
    for (pos, &l) in letters.iter().enumerate() {
        if l.inverse {
            break;
        }
        if is_plain(l, 1) {
            run += 1;
        } else if is_plain(l, 2) {
            if run == 0 {
                break;
            }
            run = 0;
            best = pos + 1;
        } else {
            break;
        }
    }
    best
}

fn in_split(split: Split, letters: &[Letter], mode: Mode) -> bool {
    match split {
        Split::FirstGenerators(n) => letters
            .iter()
            .all(|l| l.gen.tag() == Tag::Plain && l.gen.index() <= n),
        Split::Alpha => letters.iter().all(|l| l.gen.tag() == Tag::Alpha),
        Split::Embedded => match mode {
            Mode::Group => in_embedded_group(letters),
            Mode::Monoid => embedded_monoid_prefix(letters) == letters.len(),
        },
    }
}

/// Longest prefix of `letters` lying in the split's sub-object, when the
/// sub-object induces a partition `{S·y : y ∈ E}`. For the embedded subgroup
/// of `F_2` there is no such partition and `None` is returned.
fn split_prefix(split: Split, letters: &[Letter], mode: Mode) -> Option<usize> {
    match split {
        Split::FirstGenerators(n) => Some(
            letters
                .iter()
                .take_while(|l| l.gen.tag() == Tag::Plain && l.gen.index() <= n)
                .count(),
        ),
        Split::Alpha => Some(
            letters
                .iter()
                .take_while(|l| l.gen.tag() == Tag::Alpha)
                .count(),
        ),
        Split::Embedded => match mode {
            Mode::Monoid => Some(embedded_monoid_prefix(letters)),
            Mode::Group => None,
        },
    }
}

/// If `w ∈ e_j F_α` (with `j = 0` meaning `F_α`), return `j`.
pub fn coset_index<W: Word>(w: &W) -> Option<u32> {
    let mut it = w.letters();
    let first = match it.next() {
        None => return Some(0),
        Some(l) => l,
    };
    let j = match first.gen.tag() {
        Tag::Alpha => 0,
        Tag::E if !first.inverse => first.gen.index(),
        _ => return None,
    };
    if it.all(|l| l.gen.tag() == Tag::Alpha) {
        Some(j)
    } else {
        None
    }
}

/// Decide membership of `w` in the subset described by `pred`.
pub fn classify<W: Word>(w: &W, pred: &SubsetPredicate) -> bool {
    let letters: Vec<Letter> = w.letters().collect();
    match *pred {
        SubsetPredicate::Sub(split) => in_split(split, &letters, W::MODE),
        SubsetPredicate::KSet { from } => coset_index(w).is_some_and(|j| j >= from),
        SubsetPredicate::Coset(j) => coset_index(w) == Some(j),
        SubsetPredicate::Degree(n) => letters.len() == n,
        SubsetPredicate::ESet(split) => match split_prefix(split, &letters, W::MODE) {
            Some(p) => p == 0,
            // Group embedded case: check every nonempty prefix directly.
            None => (1..=letters.len()).all(|n| !in_split(split, &letters[..n], W::MODE)),
        },
    }
}

/// Write `w = head · tail` with `head` in the split's sub-object and `tail`
/// in the matching E-set. Returns `None` when the split does not induce a
/// partition (the embedded subgroup of `F_2`).
pub fn factor<W: Word>(w: &W, split: Split) -> Option<(W, W)> {
    let letters: Vec<Letter> = w.letters().collect();
    let p = split_prefix(split, &letters, W::MODE)?;
    // Group words stay reduced when cut, so this cannot fail.
    let head = W::from_letters(letters[..p].iter().copied()).ok()?;
    let tail = W::from_letters(letters[p..].iter().copied()).ok()?;
    Some((head, tail))
}

/// The basis action `e_x P_{-i} e_{-i} e_z` with `x ∈ F_α`: the reduced word
/// `x e_i^{-1} z` when `z` does not begin with `e_i`, otherwise `None`
/// (the vector is zero).
pub fn lemma7_action(x: &GroupWord, i: u32, z: &GroupWord) -> Result<Option<GroupWord>> {
    if !x.letters.iter().all(|l| l.gen.tag() == Tag::Alpha) {
        return Err(Error::Domain(format!(
            "{x} does not lie in the alpha subgroup"
        )));
    }
    let ei = Gen::new(Tag::E, i)?;
    if z.first() == Some(Letter::pos(ei)) {
        return Ok(None);
    }
    let mid = GroupWord {
        letters: vec![Letter::neg(ei)],
    };
    Ok(Some(x.concat(&mid).concat(z)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Gen {
        Gen::plain(1)
    }
    fn b() -> Gen {
        Gen::plain(2)
    }

    fn gw(letters: &[(Gen, i8)]) -> GroupWord {
        GroupWord::reduced(letters.iter().map(|&(g, s)| Letter {
            gen: g,
            inverse: s < 0,
        }))
    }

    #[test]
    fn reduce_examples() {
        let al = Alphabet::plain(2);
        let w = reduce(
            &[
                Letter::pos(a()),
                Letter::pos(b()),
                Letter::neg(b()),
                Letter::pos(a()),
            ],
            &al,
        )
        .unwrap();
        assert_eq!(w, GroupWord::power(a(), 2));
        assert_eq!(reduce(&[], &al).unwrap(), GroupWord::identity());
        assert!(reduce(&[Letter::pos(a()), Letter::neg(a())], &al)
            .unwrap()
            .is_identity());
        assert!(reduce(&[Letter::pos(Gen::plain(3))], &al).is_err());
    }

    #[test]
    fn zero_index_rejected() {
        assert!(Gen::new(Tag::Plain, 0).is_err());
        assert!(GroupWord::embed_generator(0).is_err());
        assert!(MonoidWord::embed_generator(0).is_err());
    }

    #[test]
    fn concat_examples() {
        let ab = gw(&[(a(), 1), (b(), 1)]);
        let bia = gw(&[(b(), -1), (a(), 1)]);
        assert_eq!(ab.concat(&bia), GroupWord::power(a(), 2));
        assert_eq!(GroupWord::identity().concat(&ab), ab);
        let mab = MonoidWord::new(vec![a(), b()]);
        let mba = MonoidWord::new(vec![b(), a()]);
        assert_eq!(mab.concat(&mba), MonoidWord::new(vec![a(), b(), b(), a()]));
    }

    #[test]
    fn embedded_generators() {
        let w = GroupWord::embed_generator(2).unwrap();
        assert_eq!(w.to_string(), "g1^2*g2*g1^-2");
        assert_eq!(
            GroupWord::embed_generator(3).unwrap().to_string(),
            "g1^3*g2*g1^-3"
        );
        assert_eq!(MonoidWord::embed_generator(1).unwrap().to_string(), "g1*g2");
    }

    #[test]
    fn embed_word_examples() {
        let g12 = gw(&[(Gen::plain(1), 1), (Gen::plain(2), 1)]);
        // a b a^-1 · a^2 b a^-2 = a b a b a^-2
        let expect = gw(&[(a(), 1), (b(), 1), (a(), 1), (b(), 1), (a(), -1), (a(), -1)]);
        assert_eq!(embed_word(&g12).unwrap(), expect);
        assert_eq!(
            embed_word(&GroupWord::identity()).unwrap(),
            GroupWord::identity()
        );
        let m11 = MonoidWord::new(vec![Gen::plain(1), Gen::plain(1)]);
        assert_eq!(
            embed_word(&m11).unwrap(),
            MonoidWord::new(vec![a(), b(), a(), b()])
        );
        assert!(embed_word(&GroupWord::gen(Gen::alpha(1))).is_err());
    }

    #[test]
    fn k_set_membership() {
        let w = gw(&[(Gen::e(2), 1), (Gen::alpha(1), 1), (Gen::alpha(3), 1)]);
        assert!(classify(&w, &SubsetPredicate::KSet { from: 0 }));
        assert_eq!(coset_index(&w), Some(2));
        let v = gw(&[(Gen::alpha(1), 1), (Gen::e(2), 1)]);
        assert!(!classify(&v, &SubsetPredicate::KSet { from: 0 }));
        // F_α itself is the j = 0 coset, excluded when indexing from 1.
        let alpha = GroupWord::gen(Gen::alpha(1));
        assert!(classify(&alpha, &SubsetPredicate::KSet { from: 0 }));
        assert!(!classify(&alpha, &SubsetPredicate::KSet { from: 1 }));
        // e_j^{-1} does not start a coset e_j F_α.
        let inv = gw(&[(Gen::e(1), -1)]);
        assert!(!classify(&inv, &SubsetPredicate::KSet { from: 0 }));
    }

    #[test]
    fn e_set_for_embedded_monoid() {
        let w = MonoidWord::gen(a());
        assert!(classify(&w, &SubsetPredicate::ESet(Split::Embedded)));
        let (head, tail) = factor(&w, Split::Embedded).unwrap();
        assert!(head.is_identity());
        assert_eq!(tail, w);
        let abab = MonoidWord::new(vec![a(), b(), a(), a(), b(), b()]);
        let (head, tail) = factor(&abab, Split::Embedded).unwrap();
        assert_eq!(head.to_string(), "g1*g2*g1^2*g2");
        assert_eq!(tail.to_string(), "g2");
    }

    #[test]
    fn embedded_subgroup_membership() {
        let sub = SubsetPredicate::Sub(Split::Embedded);
        assert!(classify(&GroupWord::embed_generator(1).unwrap(), &sub));
        assert!(classify(
            &GroupWord::embed_generator(3).unwrap().inverse(),
            &sub
        ));
        assert!(!classify(&GroupWord::gen(b()), &sub));
        assert!(!classify(&GroupWord::gen(a()), &sub));
        assert!(classify(&GroupWord::identity(), &sub));
        assert!(factor(&GroupWord::gen(a()), Split::Embedded).is_none());
    }

    #[test]
    fn lemma7_examples() {
        let x = GroupWord::gen(Gen::alpha(1));
        let z = GroupWord::gen(Gen::alpha(2));
        let got = lemma7_action(&x, 1, &z).unwrap().unwrap();
        assert_eq!(
            got,
            gw(&[(Gen::alpha(1), 1), (Gen::e(1), -1), (Gen::alpha(2), 1)])
        );
        let z = gw(&[(Gen::e(1), 1), (Gen::alpha(1), 1)]);
        assert_eq!(lemma7_action(&x, 1, &z).unwrap(), None);
        let got = lemma7_action(&GroupWord::identity(), 2, &GroupWord::identity()).unwrap();
        assert_eq!(got, Some(gw(&[(Gen::e(2), -1)])));
        assert!(lemma7_action(&GroupWord::gen(Gen::e(1)), 1, &z).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GroupWord::identity().to_string(), "1");
        let w = gw(&[(a(), 1), (a(), 1), (b(), -1)]);
        assert_eq!(w.to_string(), "g1^2*g2^-1");
        assert_eq!(GroupWord::gen(Gen::alpha(2)).to_string(), "alpha2");
    }
}
