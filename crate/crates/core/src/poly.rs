//! Finitely supported polynomials `Σ A_x ⊗ e_x` over group or monoid words.
//!
//! Every coefficient is an `n × n` complex matrix where `n` is the level of
//! the polynomial; level 1 is the scalar case. A level-`n` polynomial is an
//! element of `M_n(𝓛)` (group words) or `M_n(𝓟)` (monoid words).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{c, frobenius, hermitian_max_eigenvalue, spectral_norm, CMatrix, C64};
use crate::words::{Alphabet, Gen, GroupWord, MonoidWord, Word};

/// Coefficients below this Frobenius norm are dropped after arithmetic.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<W: Word> {
    alphabet: Alphabet,
    level: usize,
    terms: BTreeMap<W, CMatrix>,
}

pub type GroupPoly = Poly<GroupWord>;
pub type MonoidPoly = Poly<MonoidWord>;

impl<W: Word> Poly<W> {
    pub fn zero(alphabet: Alphabet, level: usize) -> Self {
        assert!(level >= 1, "coefficient level must be >= 1");
        Poly {
            alphabet,
            level,
            terms: BTreeMap::new(),
        }
    }

    /// `e_0`, the unit.
    pub fn one(alphabet: Alphabet, level: usize) -> Self {
        let mut p = Poly::zero(alphabet, level);
        p.terms
            .insert(W::identity(), CMatrix::identity(level, level));
        p
    }

    /// `a · e_w` at level 1.
    pub fn monomial(alphabet: Alphabet, w: W, a: C64) -> Result<Self> {
        Poly::from_terms(alphabet, 1, [(w, CMatrix::from_element(1, 1, a))])
    }

    /// Scalar polynomial from `(word, coefficient)` pairs; repeated words add.
    pub fn from_scalars<I>(alphabet: Alphabet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (W, C64)>,
    {
        Poly::from_terms(
            alphabet,
            1,
            terms
                .into_iter()
                .map(|(w, a)| (w, CMatrix::from_element(1, 1, a))),
        )
    }

    /// Level-`level` polynomial from `(word, matrix)` pairs; repeated words add.
    pub fn from_terms<I>(alphabet: Alphabet, level: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (W, CMatrix)>,
    {
        if level == 0 {
            return Err(Error::LevelMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut p = Poly::zero(alphabet, level);
        for (w, a) in terms {
            p.alphabet.check_word(&w)?;
            if a.nrows() != level || a.ncols() != level {
                return Err(Error::LevelMismatch {
                    expected: level,
                    got: a.nrows().max(a.ncols()),
                });
            }
            p.add_term(w, a);
        }
        p.prune();
        Ok(p)
    }

    fn add_term(&mut self, w: W, a: CMatrix) {
        match self.terms.get_mut(&w) {
            Some(existing) => *existing += a,
            None => {
                self.terms.insert(w, a);
            }
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, a| frobenius(a) >= PRUNE_THRESHOLD);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&W, &CMatrix)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &W) -> Option<&CMatrix> {
        self.terms.get(w)
    }

    /// Scalar coefficient of `w` (zero if absent). Level 1 only.
    pub fn scalar(&self, w: &W) -> C64 {
        debug_assert_eq!(self.level, 1);
        self.terms.get(w).map(|a| a[(0, 0)]).unwrap_or(c(0.0, 0.0))
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(|w| w.len());
        match lens.next() {
            None => true,
            Some(n) => lens.all(|m| m == n),
        }
    }

    /// Re-home the polynomial on a larger alphabet (all words must fit).
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Self> {
        for w in self.terms.keys() {
            alphabet.check_word(w)?;
        }
        Ok(Poly {
            alphabet,
            level: self.level,
            terms: self.terms.clone(),
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(
                "operands are over different alphabets".into(),
            ));
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                got: other.level,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, a) in &other.terms {
            out.add_term(w.clone(), a.clone());
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(c(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = Poly::zero(self.alphabet.clone(), self.level);
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), a * s);
        }
        out.prune();
        out
    }

    /// Multiply every coefficient on the left by a level-sized matrix.
    pub fn left_matrix(&self, m: &CMatrix) -> Result<Self> {
        if m.nrows() != self.level || m.ncols() != self.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                got: m.nrows(),
            });
        }
        let mut out = Poly::zero(self.alphabet.clone(), self.level);
        for (w, a) in &self.terms {
            out.terms.insert(w.clone(), m * a);
        }
        out.prune();
        Ok(out)
    }

    /// `Σ_{x,y} (A_x B_y) ⊗ e_{xy}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.alphabet.clone(), self.level);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                out.add_term(x.concat(y), a * b);
            }
        }
        out.prune();
        Ok(out)
    }

    /// Non-negative integer power.
    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Poly::one(self.alphabet.clone(), self.level);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Keep the terms whose word satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&W) -> bool) -> Self {
        Poly {
            alphabet: self.alphabet.clone(),
            level: self.level,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, a)| (w.clone(), a.clone()))
                .collect(),
        }
    }

    /// `‖Σ_x A_x^* A_x‖^{1/2}`, the norm of `b ↦ Σ A_x b ⊗ e_x` over unit `b`.
    /// At level 1 this is `(Σ |a_x|²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        if self.level == 1 {
            return self
                .terms
                .values()
                .map(|a| a[(0, 0)].norm_sqr())
                .sum::<f64>()
                .sqrt();
        }
        let mut gram = CMatrix::zeros(self.level, self.level);
        for a in self.terms.values() {
            gram += a.adjoint() * a;
        }
        hermitian_max_eigenvalue(&gram).max(0.0).sqrt()
    }

    /// `‖Σ_x A_x A_x^*‖^{1/2}`, the norm of `b ↦ Σ A_x^* b ⊗ e_x` over unit
    /// `b`. Agrees with [`Poly::l2_norm`] at level 1.
    pub fn l2_norm_adjoint(&self) -> f64 {
        if self.level == 1 {
            return self.l2_norm();
        }
        let mut gram = CMatrix::zeros(self.level, self.level);
        for a in self.terms.values() {
            gram += a * a.adjoint();
        }
        hermitian_max_eigenvalue(&gram).max(0.0).sqrt()
    }

    /// `Σ_x ‖A_x‖`: the triangle-inequality upper bound for every operator
    /// norm of the polynomial.
    pub fn triangle_bound(&self) -> f64 {
        self.terms.values().map(spectral_norm).sum()
    }
}

impl Poly<GroupWord> {
    /// `Σ A_x^* ⊗ e_{x^{-1}}`.
    pub fn adjoint(&self) -> Self {
        let mut out = Poly::zero(self.alphabet.clone(), self.level);
        for (w, a) in &self.terms {
            out.terms.insert(w.inverse(), a.adjoint());
        }
        out
    }

    /// Positive support reinterpreted in the free monoid.
    pub fn to_monoid(&self) -> Result<MonoidPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (w, a) in &self.terms {
            let m = w
                .to_monoid()
                .ok_or_else(|| Error::Domain(format!("word {w} is not a positive word")))?;
            terms.push((m, a.clone()));
        }
        Poly::from_terms(self.alphabet.clone(), self.level, terms)
    }
}

impl Poly<MonoidWord> {
    /// Terms of length exactly `n`.
    pub fn homogeneous_part(&self, n: usize) -> Self {
        self.restrict(|w| w.len() == n)
    }

    pub fn to_group(&self) -> GroupPoly {
        Poly {
            alphabet: self.alphabet.clone(),
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.to_group(), a.clone()))
                .collect(),
        }
    }

    /// `Σ a_x T_{x(1)} ⋯ T_{x(m)}`, with `ops[i]` substituted for the `i`-th
    /// generator of the alphabet and the empty word mapped to the identity.
    pub fn eval_at(&self, ops: &[CMatrix]) -> Result<CMatrix> {
        if self.level != 1 {
            return Err(Error::LevelMismatch {
                expected: 1,
                got: self.level,
            });
        }
        if ops.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{} operators for an alphabet of {} generators",
                ops.len(),
                self.alphabet.len()
            )));
        }
        let d = ops.first().map(|t| t.nrows()).unwrap_or(0);
        if ops.iter().any(|t| t.nrows() != d || t.ncols() != d) {
            return Err(Error::Shape(
                "operators must be square of equal size".into(),
            ));
        }
        let positions: Vec<(Gen, usize)> = self
            .alphabet
            .gens()
            .iter()
            .enumerate()
            .map(|(i, &g)| (g, i))
            .collect();
        let index_of = |g: Gen| positions.iter().find(|(h, _)| *h == g).map(|(_, i)| *i);

        let mut out = CMatrix::zeros(d, d);
        for (w, a) in &self.terms {
            let mut prod = CMatrix::identity(d, d);
            for &g in w.as_gens() {
                let i = index_of(g).expect("words are checked against the alphabet");
                prod *= &ops[i];
            }
            out += prod * a[(0, 0)];
        }
        Ok(out)
    }
}

impl<W: Word> fmt::Display for Poly<W> {
    /// Parseable text form, e.g. `1 + (0.5-2i)*g1*g2^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level != 1 {
            return write!(
                f,
                "<level-{} polynomial with {} terms>",
                self.level,
                self.terms.len()
            );
        }
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let z = a[(0, 0)];
            let coeff = format_complex(z);
            match (coeff.as_str(), w.is_identity()) {
                (_, true) => f.write_str(&coeff)?,
                ("1", false) => write!(f, "{w}")?,
                (_, false) => write!(f, "{coeff}*{w}")?,
            }
        }
        Ok(())
    }
}

/// Exact (round-trip) text form of a complex number.
pub fn format_complex(z: C64) -> String {
    let re_zero = z.re == 0.0 && z.re.is_sign_positive();
    let im_zero = z.im == 0.0 && z.im.is_sign_positive();
    match (re_zero, im_zero) {
        (_, true) => format!("{}", z.re),
        (true, false) => format!("{}i", z.im),
        (false, false) => {
            if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
                format!("({}-{}i)", z.re, -z.im)
            } else {
                format!("({}+{}i)", z.re, z.im)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Letter;
    use approx::assert_abs_diff_eq;

    fn g(i: u32) -> Gen {
        Gen::plain(i)
    }

    fn gword(letters: &[(u32, bool)]) -> GroupWord {
        GroupWord::from_letters(letters.iter().map(|&(i, inv)| Letter {
            gen: g(i),
            inverse: inv,
        }))
        .unwrap()
    }

    fn mword(gens: &[u32]) -> MonoidWord {
        MonoidWord::new(gens.iter().map(|&i| g(i)).collect())
    }

    fn one(x: f64) -> C64 {
        c(x, 0.0)
    }

    #[test]
    fn add_examples() {
        let al = Alphabet::plain(2);
        let e1 = MonoidPoly::monomial(al.clone(), mword(&[1]), one(1.0)).unwrap();
        let two = e1.add(&e1).unwrap();
        assert_eq!(two.scalar(&mword(&[1])), one(2.0));
        assert!(e1.add(&e1.scale(one(-1.0))).unwrap().is_zero());

        let a = CMatrix::from_row_slice(2, 2, &[one(1.0), one(2.0), one(0.0), one(1.0)]);
        let b = CMatrix::identity(2, 2);
        let pa = MonoidPoly::from_terms(al.clone(), 2, [(mword(&[1]), a.clone())]).unwrap();
        let pb = MonoidPoly::from_terms(al, 2, [(mword(&[1]), b.clone())]).unwrap();
        assert_eq!(pa.add(&pb).unwrap().coeff(&mword(&[1])).unwrap(), &(a + b));
    }

    #[test]
    fn mismatches_are_errors() {
        let p = MonoidPoly::one(Alphabet::plain(2), 1);
        let q = MonoidPoly::one(Alphabet::plain(3), 1);
        assert!(matches!(p.add(&q), Err(Error::AlphabetMismatch(_))));
        let r = MonoidPoly::one(Alphabet::plain(2), 2);
        assert!(matches!(p.mul(&r), Err(Error::LevelMismatch { .. })));
        assert!(MonoidPoly::monomial(Alphabet::plain(1), mword(&[2]), one(1.0)).is_err());
    }

    #[test]
    fn mul_examples() {
        let al = Alphabet::plain(2);
        let p = GroupPoly::from_scalars(
            al.clone(),
            [
                (gword(&[(1, false)]), one(1.0)),
                (gword(&[(2, false)]), one(1.0)),
            ],
        )
        .unwrap();
        let binv = GroupPoly::monomial(al.clone(), gword(&[(2, true)]), one(1.0)).unwrap();
        let prod = p.mul(&binv).unwrap();
        assert_eq!(prod.num_terms(), 2);
        assert_eq!(prod.scalar(&gword(&[(1, false), (2, true)])), one(1.0));
        assert_eq!(prod.scalar(&GroupWord::identity()), one(1.0));

        let m = MonoidPoly::from_scalars(
            al.clone(),
            [(mword(&[1]), one(1.0)), (mword(&[2]), one(1.0))],
        )
        .unwrap();
        let e1 = MonoidPoly::monomial(al.clone(), mword(&[1]), one(1.0)).unwrap();
        let prod = m.mul(&e1).unwrap();
        assert_eq!(prod.scalar(&mword(&[1, 1])), one(1.0));
        assert_eq!(prod.scalar(&mword(&[2, 1])), one(1.0));
        assert_eq!(m.mul(&MonoidPoly::one(al, 1)).unwrap(), m);
    }

    #[test]
    fn adjoint_examples() {
        let al = Alphabet::plain(2);
        let a = GroupPoly::monomial(al.clone(), gword(&[(1, false)]), c(1.0, 1.0)).unwrap();
        let adj = a.adjoint();
        assert_eq!(adj.scalar(&gword(&[(1, true)])), c(1.0, -1.0));
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), one(3.0), one(0.0), c(0.0, 1.0)]);
        let p =
            GroupPoly::from_terms(al, 2, [(gword(&[(1, false), (2, false)]), m.clone())]).unwrap();
        let adj = p.adjoint();
        assert_eq!(
            adj.coeff(&gword(&[(2, true), (1, true)])).unwrap(),
            &m.adjoint()
        );
        assert_eq!(adj.adjoint(), p);
    }

    #[test]
    fn l2_examples() {
        let al = Alphabet::plain(1);
        let p = MonoidPoly::from_scalars(
            al.clone(),
            [(mword(&[]), one(1.0)), (mword(&[1]), one(1.0))],
        )
        .unwrap();
        assert_abs_diff_eq!(p.l2_norm(), 2f64.sqrt(), epsilon = 1e-15);
        let m = MonoidPoly::monomial(al.clone(), mword(&[1, 1, 1]), one(1.0)).unwrap();
        assert_abs_diff_eq!(m.l2_norm(), 1.0, epsilon = 1e-15);
        let a = CMatrix::from_row_slice(2, 2, &[one(3.0), one(0.0), one(4.0), one(5.0)]);
        let pa = MonoidPoly::from_terms(al, 2, [(mword(&[1]), a.clone())]).unwrap();
        assert_abs_diff_eq!(pa.l2_norm(), spectral_norm(&a), epsilon = 1e-12);
        assert_abs_diff_eq!(pa.l2_norm_adjoint(), spectral_norm(&a), epsilon = 1e-12);
    }

    #[test]
    fn homogeneous_parts() {
        let al = Alphabet::plain(2);
        let p = MonoidPoly::from_scalars(
            al,
            [
                (mword(&[]), one(1.0)),
                (mword(&[1]), one(1.0)),
                (mword(&[1, 2]), one(1.0)),
            ],
        )
        .unwrap();
        let h2 = p.homogeneous_part(2);
        assert_eq!(h2.num_terms(), 1);
        assert_eq!(h2.scalar(&mword(&[1, 2])), one(1.0));
        assert!(p.homogeneous_part(5).is_zero());
        assert_eq!(h2.homogeneous_part(2), h2);
        let mut sum = MonoidPoly::zero(p.alphabet().clone(), 1);
        for n in 0..=p.max_degree() {
            sum = sum.add(&p.homogeneous_part(n)).unwrap();
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn eval_examples() {
        let al = Alphabet::plain(2);
        let t1 = CMatrix::from_row_slice(2, 2, &[one(0.0), one(1.0), one(0.0), one(0.0)]);
        let t2 = CMatrix::from_row_slice(2, 2, &[one(0.5), one(0.0), c(0.0, 0.5), one(0.0)]);
        let ops = [t1.clone(), t2.clone()];
        let id = MonoidPoly::one(al.clone(), 1);
        assert_eq!(id.eval_at(&ops).unwrap(), CMatrix::identity(2, 2));
        let p = MonoidPoly::monomial(al.clone(), mword(&[1, 2]), one(1.0)).unwrap();
        assert_eq!(p.eval_at(&ops).unwrap(), &t1 * &t2);
        let q = MonoidPoly::from_scalars(
            al.clone(),
            [(mword(&[]), one(1.0)), (mword(&[1]), one(1.0))],
        )
        .unwrap();
        let zero_ops = [CMatrix::zeros(2, 2), t2];
        assert_eq!(q.eval_at(&zero_ops).unwrap(), CMatrix::identity(2, 2));
        assert!(q.eval_at(&ops[..1]).is_err());
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(c(1.0, 0.0)), "1");
        assert_eq!(format_complex(c(0.0, 2.5)), "2.5i");
        assert_eq!(format_complex(c(-1.5, -2.0)), "(-1.5-2i)");
        assert_eq!(format_complex(c(0.25, 3.0)), "(0.25+3i)");
    }
}
