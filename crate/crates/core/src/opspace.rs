//! Operator-space level identities and bounds.
//!
//! Row and column norms of operator families, the splitting of a generator
//! translation into a column-like and a row-like part, the two-sided bound
//! for elements supported on the coset set `K = ⋃ e_j F_α`, and the
//! projection bounds that make the various subspaces complemented.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fockrep::{
    norm_lower, norm_lower_on, norm_lower_seeded, Ball, NormEstimate, PowerOptions, TruncOp,
};
use crate::linalg::{hermitian_max_eigenvalue, spectral_norm, top_eigenvector, CMatrix};
use crate::poly::{GroupPoly, Poly};
use crate::words::{classify, Alphabet, Gen, GroupWord, Letter, SubsetPredicate, Tag, Word};

/// A nonempty family of equally shaped complex matrices `T_1..T_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFamily {
    mats: Vec<CMatrix>,
}

impl MatrixFamily {
    pub fn new(mats: Vec<CMatrix>) -> Result<Self> {
        let first = mats
            .first()
            .ok_or_else(|| Error::Shape("empty matrix family".into()))?;
        let shape = first.shape();
        if mats.iter().any(|m| m.shape() != shape) {
            return Err(Error::Shape(
                "matrices in a family must share one shape".into(),
            ));
        }
        Ok(MatrixFamily { mats })
    }

    pub fn mats(&self) -> &[CMatrix] {
        &self.mats
    }

    /// `‖Σ T_i^* T_i‖^{1/2}`: the norm of `Σ e_{i1} ⊗ T_i` in `C ⊗ B(H)`.
    pub fn column_norm(&self) -> f64 {
        let n = self.mats[0].ncols();
        let mut gram = CMatrix::zeros(n, n);
        for t in &self.mats {
            gram += t.adjoint() * t;
        }
        hermitian_max_eigenvalue(&gram).max(0.0).sqrt()
    }

    /// `‖Σ T_i T_i^*‖^{1/2}`: the norm of `Σ e_{1i} ⊗ T_i` in `R ⊗ B(H)`.
    pub fn row_norm(&self) -> f64 {
        let n = self.mats[0].nrows();
        let mut gram = CMatrix::zeros(n, n);
        for t in &self.mats {
            gram += t * t.adjoint();
        }
        hermitian_max_eigenvalue(&gram).max(0.0).sqrt()
    }

    /// Spectral norm of the vertical stack `[T_1; T_2; …]`.
    pub fn stacked_column_norm(&self) -> f64 {
        let (r, c) = self.mats[0].shape();
        let mut stack = CMatrix::zeros(r * self.mats.len(), c);
        for (i, t) in self.mats.iter().enumerate() {
            stack.view_mut((i * r, 0), (r, c)).copy_from(t);
        }
        spectral_norm(&stack)
    }

    /// Spectral norm of the horizontal stack `[T_1 T_2 …]`.
    pub fn stacked_row_norm(&self) -> f64 {
        let (r, c) = self.mats[0].shape();
        let mut stack = CMatrix::zeros(r, c * self.mats.len());
        for (i, t) in self.mats.iter().enumerate() {
            stack.view_mut((0, i * c), (r, c)).copy_from(t);
        }
        spectral_norm(&stack)
    }
}

pub fn column_norm(family: &MatrixFamily) -> f64 {
    family.column_norm()
}

pub fn row_norm(family: &MatrixFamily) -> f64 {
    family.row_norm()
}

/// The two parts of the translation by a generator `g` on a group ball:
/// `P_g g` (image starts with `g`) and `g P_{-g}` (source starts with `g^-1`).
/// Entry `x` holds the image word of the basis vector `e_x`, or `None` where
/// the part kills it.
#[derive(Clone, Debug)]
pub struct SplitPart {
    pub gen: Gen,
    pub positive: Vec<Option<GroupWord>>,
    pub negative: Vec<Option<GroupWord>>,
}

/// Materialize `g = P_g g + g P_{-g}` on every basis word of `ball`.
pub fn hp_split(g: Gen, ball: &Ball<GroupWord>) -> Result<SplitPart> {
    if !ball.alphabet().contains(g) {
        return Err(Error::InvalidGenerator(format!(
            "{g} is not in the ball's alphabet"
        )));
    }
    let translate = GroupWord::gen(g);
    let starts_pos = Letter::pos(g);
    let starts_neg = Letter::neg(g);
    let mut positive = Vec::with_capacity(ball.len());
    let mut negative = Vec::with_capacity(ball.len());
    for x in ball.words() {
        let gx = translate.concat(x);
        positive.push((gx.first() == Some(starts_pos)).then(|| gx.clone()));
        negative.push((x.first() == Some(starts_neg)).then_some(gx));
    }
    Ok(SplitPart {
        gen: g,
        positive,
        negative,
    })
}

/// Outcome of checking the splitting on a ball.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitCheck {
    /// Basis vectors where `P_g g + g P_{-g}` differs from the translation.
    pub sum_mismatches: usize,
    /// Basis vectors where both parts are nonzero or both vanish.
    pub overlap_or_gap: usize,
    /// Largest diagonal entry of `Σ_g (P_g g)(P_g g)^*` (must be `≤ 1`).
    pub max_projection_multiplicity: usize,
    /// Images of `P_g g` that do not start with `g`.
    pub range_violations: usize,
    pub holds: bool,
}

/// Check the splitting for every generator in `gens` against the truncated
/// translation operators, and check `Σ_g P_g ≤ I` on their ranges.
pub fn check_split(ball: &Ball<GroupWord>, gens: &[Gen]) -> Result<SplitCheck> {
    let mut sum_mismatches = 0;
    let mut overlap_or_gap = 0;
    let mut range_violations = 0;
    let mut multiplicity: std::collections::HashMap<GroupWord, usize> = Default::default();
    for &g in gens {
        let part = hp_split(g, ball)?;
        let shift = Poly::monomial(
            ball.alphabet().clone(),
            GroupWord::gen(g),
            crate::linalg::c(1.0, 0.0),
        )?;
        let op = TruncOp::new(&shift, ball.words());
        let mut image = vec![None; ball.len()];
        for (row, col) in op.block_pattern() {
            image[col] = Some(op.codomain()[row].clone());
        }
        for x in 0..ball.len() {
            let (p, n) = (&part.positive[x], &part.negative[x]);
            let combined = match (p, n) {
                (Some(w), None) | (None, Some(w)) => Some(w.clone()),
                _ => {
                    overlap_or_gap += 1;
                    None
                }
            };
            if combined != image[x] {
                sum_mismatches += 1;
            }
            if let Some(w) = p {
                if w.first() != Some(Letter::pos(g)) {
                    range_violations += 1;
                }
                *multiplicity.entry(w.clone()).or_default() += 1;
            }
        }
    }
    let max_projection_multiplicity = multiplicity.values().copied().max().unwrap_or(0);
    Ok(SplitCheck {
        sum_mismatches,
        overlap_or_gap,
        max_projection_multiplicity,
        range_violations,
        holds: sum_mismatches == 0
            && overlap_or_gap == 0
            && range_violations == 0
            && max_projection_multiplicity <= 1,
    })
}

/// `T = Σ_i (I ⊗ e_i) A_i` with every `A_i` supported on alpha words.
#[derive(Clone, Debug)]
pub struct Prop8Element {
    level: usize,
    alphas: u32,
    terms: Vec<(u32, GroupPoly)>,
}

impl Prop8Element {
    /// `terms` pairs a split-alphabet index `i ≥ 1` with `A_i`. Each `A_i`
    /// must live on the alpha alphabet `alpha1..alpha_{alphas}`.
    pub fn new(alphas: u32, terms: Vec<(u32, GroupPoly)>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Domain("element needs at least one term".into()))?;
        let level = first.1.level();
        let alpha_alphabet = Alphabet::split(alphas, 0);
        let mut seen = std::collections::HashSet::new();
        for (i, a) in &terms {
            if *i == 0 || !seen.insert(*i) {
                return Err(Error::Domain(format!(
                    "generator indices must be distinct and >= 1 (got {i})"
                )));
            }
            if a.level() != level {
                return Err(Error::LevelMismatch {
                    expected: level,
                    got: a.level(),
                });
            }
            for (w, _) in a.terms() {
                if !w.letters().all(|l| l.gen.tag() == Tag::Alpha)
                    || alpha_alphabet.check_word(w).is_err()
                {
                    return Err(Error::Domain(format!(
                        "coefficient word {w} lies outside the alpha subgroup"
                    )));
                }
            }
        }
        Ok(Prop8Element {
            level,
            alphas,
            terms,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn terms(&self) -> &[(u32, GroupPoly)] {
        &self.terms
    }

    /// The split alphabet carrying `T`.
    pub fn alphabet(&self) -> Alphabet {
        let es = self.terms.iter().map(|(i, _)| *i).max().unwrap_or(0);
        Alphabet::split(self.alphas, es)
    }

    pub fn to_poly(&self) -> Result<GroupPoly> {
        let al = self.alphabet();
        let mut out = Poly::zero(al.clone(), self.level);
        for (i, a) in &self.terms {
            let shift = Poly::from_terms(
                al.clone(),
                self.level,
                [(
                    GroupWord::gen(Gen::e(*i)),
                    CMatrix::identity(self.level, self.level),
                )],
            )?;
            out = out.add(&shift.mul(&a.with_alphabet(al.clone())?)?)?;
        }
        Ok(out)
    }

    /// The family of all coefficient matrices `A_{ij}`.
    pub fn coefficient_family(&self) -> Result<MatrixFamily> {
        let mats: Vec<CMatrix> = self
            .terms
            .iter()
            .flat_map(|(_, a)| a.terms().map(|(_, m)| m.clone()))
            .collect();
        MatrixFamily::new(mats)
    }

    /// `‖Σ_{ij} A_{ij} A_{ij}^*‖^{1/2}`, the supremum of `‖T^* b ⊗ e_0‖₂`.
    pub fn row_term(&self) -> Result<f64> {
        match self.coefficient_family() {
            Ok(f) => Ok(f.row_norm()),
            Err(Error::Shape(_)) => Ok(0.0),
            Err(e) => Err(e),
        }
    }

    /// Lower bound for `‖Σ A_i^* A_i‖^{1/2}`, the supremum of `‖Tq‖₂` over
    /// `q` in the alpha-ball of radius `radius`.
    pub fn col_term(&self, radius: usize, opts: &PowerOptions) -> Result<NormEstimate> {
        let t = self.to_poly()?;
        let alpha_ball: Ball<GroupWord> = Ball::new(&Alphabet::split(self.alphas, 0), radius)?;
        Ok(norm_lower_on(&t, &alpha_ball, |_| true, opts))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop8Bounds {
    pub col_term: NormEstimate,
    pub row_term: f64,
    /// `max(col, row)`.
    pub lower: f64,
    /// `col + row`.
    pub upper: f64,
    pub direct: NormEstimate,
}

impl Prop8Bounds {
    pub fn sandwich_holds(&self, tol: f64) -> bool {
        self.lower <= self.upper
            && self.direct.value >= self.lower - tol
            && self.direct.value <= self.upper + tol
    }
}

/// Both constituent norms and the direct truncated estimate of `‖T‖`. The
/// row term is certified by the direct estimate once `radius` reaches the
/// longest word of `T`.
pub fn prop8_bounds(t: &Prop8Element, radius: usize, opts: &PowerOptions) -> Result<Prop8Bounds> {
    let col_term = t.col_term(radius, opts)?;
    let row_term = t.row_term()?;
    let poly = t.to_poly()?;
    // Both left-hand suprema are attained by explicit vectors: the column
    // witness on the alpha-ball, and T^*(b ⊗ e_0) for the top eigenvector b
    // of Σ A_ij A_ij^*. Starting the direct run there keeps it above both.
    let n = t.level;
    let mut starts = Vec::new();
    let alpha_ball: Ball<GroupWord> = Ball::new(&Alphabet::split(t.alphas, 0), radius)?;
    if !col_term.witness.is_empty() {
        starts.push(
            alpha_ball
                .words()
                .iter()
                .enumerate()
                .map(|(i, w)| (w.clone(), col_term.witness[i * n..(i + 1) * n].to_vec()))
                .collect(),
        );
    }
    if let Ok(family) = t.coefficient_family() {
        let mut gram = CMatrix::zeros(n, n);
        for a in family.mats() {
            gram += a * a.adjoint();
        }
        let b = top_eigenvector(&gram);
        starts.push(
            poly.terms()
                .map(|(w, a)| (w.inverse(), (a.adjoint() * &b).iter().copied().collect()))
                .collect(),
        );
    }
    let direct = norm_lower_seeded(&poly, radius, &starts, opts)?;
    Ok(Prop8Bounds {
        lower: col_term.value.max(row_term),
        upper: col_term.value + row_term,
        col_term,
        row_term,
        direct,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionNorm {
    pub col_term: f64,
    pub row_term: f64,
    pub max: f64,
    pub direct: f64,
    /// `direct / max`, which lies in `[1, 2]` up to truncation.
    pub ratio: f64,
}

/// The column-space and row-space norms whose maximum is equivalent to `‖T‖`.
pub fn intersection_norm(
    t: &Prop8Element,
    radius: usize,
    opts: &PowerOptions,
) -> Result<IntersectionNorm> {
    let b = prop8_bounds(t, radius, opts)?;
    let max = b.lower;
    Ok(IntersectionNorm {
        col_term: b.col_term.value,
        row_term: b.row_term,
        max,
        direct: b.direct.value,
        ratio: if max > 0.0 { b.direct.value / max } else { 1.0 },
    })
}

/// Orthogonal projection of the coefficient map onto the words in `pred`.
pub fn project<W: Word>(p: &Poly<W>, pred: &SubsetPredicate) -> Poly<W> {
    p.restrict(|w| classify(w, pred))
}

/// How the right-hand side of a projection bound was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperKind {
    Triangle,
    Converged,
}

/// Relative change `|est(L) − est(L−1)| / est(L)` below which a truncated
/// estimate counts as converged.
pub const CONVERGENCE_MARGIN: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub constant: f64,
    pub projected: NormEstimate,
    pub estimate: NormEstimate,
    pub upper: f64,
    pub upper_kind: UpperKind,
    /// Last relative change of the estimate of `‖p‖`.
    pub margin: f64,
    /// `constant · upper − lower(projection)`.
    pub slack: f64,
    pub holds: bool,
}

/// Check `‖proj(p)‖ ≤ C ‖p‖` one-sidedly: a lower bound for the left side
/// against `C · min(triangle, converged estimate)` for the right side.
pub fn projection_bound<W: Word>(
    p: &Poly<W>,
    pred: &SubsetPredicate,
    constant: f64,
    radius: usize,
    opts: &PowerOptions,
    tol: f64,
) -> Result<ProjectionReport> {
    let q = project(p, pred);
    let projected = norm_lower(&q, radius, opts)?;
    let estimate = norm_lower(p, radius, opts)?;
    let margin = match estimate.trace.as_slice() {
        [.., a, b] if b.value > 0.0 => (b.value - a.value).abs() / b.value,
        _ => f64::INFINITY,
    };
    let (upper, upper_kind) =
        if margin < CONVERGENCE_MARGIN && estimate.value < estimate.triangle_bound {
            (estimate.value, UpperKind::Converged)
        } else {
            (estimate.triangle_bound, UpperKind::Triangle)
        };
    let slack = constant * upper - projected.value;
    Ok(ProjectionReport {
        constant,
        holds: slack >= -tol,
        projected,
        estimate,
        upper,
        upper_kind,
        margin,
        slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockrep::compression_norm;
    use crate::linalg::c;
    use approx::assert_abs_diff_eq;

    fn unit(n: usize, i: usize, j: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        m[(i, j)] = c(1.0, 0.0);
        m
    }

    #[test]
    fn row_column_examples() {
        let t =
            CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let single = MatrixFamily::new(vec![t.clone()]).unwrap();
        assert_abs_diff_eq!(single.column_norm(), spectral_norm(&t), epsilon = 1e-12);
        assert_abs_diff_eq!(single.row_norm(), spectral_norm(&t), epsilon = 1e-12);

        let f = MatrixFamily::new(vec![unit(2, 0, 0), unit(2, 1, 0)]).unwrap();
        // Dense SVD of the stacked 4×2 matrix [E11; E21].
        assert_abs_diff_eq!(f.stacked_column_norm(), 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(f.column_norm(), 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(f.row_norm(), 1.0, epsilon = 1e-12);

        // Isometries C^1 -> C^2 onto orthogonal lines: row norm 1.
        let v1 = CMatrix::from_row_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
        let v2 = CMatrix::from_row_slice(2, 1, &[c(0.0, 0.0), c(0.0, 1.0)]);
        let iso = MatrixFamily::new(vec![v1, v2]).unwrap();
        assert_abs_diff_eq!(iso.row_norm(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(iso.stacked_row_norm(), 1.0, epsilon = 1e-12);

        assert!(MatrixFamily::new(vec![]).is_err());
        assert!(MatrixFamily::new(vec![unit(2, 0, 0), unit(3, 0, 0)]).is_err());
    }

    #[test]
    fn split_on_basis_vectors() {
        let al = Alphabet::split(1, 2);
        let ball: Ball<GroupWord> = Ball::new(&al, 2).unwrap();
        let g = Gen::e(1);
        let part = hp_split(g, &ball).unwrap();
        let e0 = ball.index_of(&GroupWord::identity()).unwrap();
        assert_eq!(part.positive[e0], Some(GroupWord::gen(g)));
        assert_eq!(part.negative[e0], None);
        let z = GroupWord::power(g, -1);
        let iz = ball.index_of(&z).unwrap();
        assert_eq!(part.positive[iz], None);
        assert_eq!(part.negative[iz], Some(GroupWord::identity()));
        let check = check_split(&ball, &[Gen::e(1), Gen::e(2)]).unwrap();
        assert!(check.holds, "{check:?}");
        assert!(hp_split(Gen::e(5), &ball).is_err());
    }

    fn alpha_word(idx: &[(u32, bool)]) -> GroupWord {
        GroupWord::from_letters(idx.iter().map(|&(i, inv)| Letter {
            gen: Gen::alpha(i),
            inverse: inv,
        }))
        .unwrap()
    }

    #[test]
    fn prop8_single_translation() {
        let a = GroupPoly::one(Alphabet::split(1, 0), 1);
        let t = Prop8Element::new(1, vec![(1, a)]).unwrap();
        let b = prop8_bounds(&t, 2, &PowerOptions::default()).unwrap();
        assert_abs_diff_eq!(b.col_term.value, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.row_term, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.direct.value, 1.0, epsilon = 1e-12);
        assert!(b.sandwich_holds(1e-9));
    }

    #[test]
    fn prop8_degree_one_scalars() {
        let al = Alphabet::split(1, 0);
        let t = Prop8Element::new(
            1,
            vec![
                (
                    1,
                    GroupPoly::from_scalars(al.clone(), [(GroupWord::identity(), c(3.0, 0.0))])
                        .unwrap(),
                ),
                (
                    2,
                    GroupPoly::from_scalars(al, [(GroupWord::identity(), c(0.0, 4.0))]).unwrap(),
                ),
            ],
        )
        .unwrap();
        let n = intersection_norm(&t, 2, &PowerOptions::default()).unwrap();
        assert_abs_diff_eq!(n.col_term, 5.0, epsilon = 1e-8);
        assert_abs_diff_eq!(n.row_term, 5.0, epsilon = 1e-12);
        // In the group algebra e_1^{-1} e_2 is a Haar unitary, so the norm is
        // sup |3 + 4i z| = 7 over the circle; only the disk reading gives 5.
        assert!(n.direct <= 7.0 + 1e-9 && n.ratio >= 1.0 && n.ratio <= 2.0);
        let disk = compression_norm(&t.to_poly().unwrap(), 2, &PowerOptions::default()).unwrap();
        assert_abs_diff_eq!(disk.value, 5.0, epsilon = 1e-12);
    }

    #[test]
    fn prop8_rejects_non_alpha_support() {
        let al = Alphabet::split(1, 1);
        let bad = GroupPoly::monomial(al, GroupWord::gen(Gen::e(1)), c(1.0, 0.0)).unwrap();
        assert!(Prop8Element::new(1, vec![(1, bad)]).is_err());
        let ok = GroupPoly::monomial(
            Alphabet::split(1, 0),
            alpha_word(&[(1, false)]),
            c(1.0, 0.0),
        )
        .unwrap();
        assert!(Prop8Element::new(1, vec![(0, ok.clone())]).is_err());
        assert!(Prop8Element::new(1, vec![(1, ok.clone()), (1, ok)]).is_err());
    }

    #[test]
    fn single_alpha_word_per_generator_balances_terms() {
        let al = Alphabet::split(2, 0);
        let t = Prop8Element::new(
            2,
            vec![
                (
                    1,
                    GroupPoly::monomial(al.clone(), alpha_word(&[(1, false)]), c(0.6, 0.0))
                        .unwrap(),
                ),
                (
                    2,
                    GroupPoly::monomial(al, alpha_word(&[(2, true)]), c(0.0, 0.8)).unwrap(),
                ),
            ],
        )
        .unwrap();
        let n = intersection_norm(&t, 2, &PowerOptions::default()).unwrap();
        assert_abs_diff_eq!(n.col_term, n.row_term, epsilon = 1e-8);
    }

    #[test]
    fn projection_onto_cyclic_subgroup() {
        let al = Alphabet::plain(2);
        let p = GroupPoly::from_scalars(
            al,
            [
                (GroupWord::gen(Gen::plain(1)), c(1.0, 0.0)),
                (GroupWord::gen(Gen::plain(2)), c(1.0, 0.0)),
            ],
        )
        .unwrap();
        let pred = SubsetPredicate::Sub(crate::words::Split::FirstGenerators(1));
        let r = project(&p, &pred);
        assert_eq!(r.num_terms(), 1);
        let rep = projection_bound(&p, &pred, 1.0, 3, &PowerOptions::default(), 1e-8).unwrap();
        assert_abs_diff_eq!(rep.projected.value, 1.0, epsilon = 1e-12);
        assert!(rep.holds);
    }

    #[test]
    fn projection_is_identity_on_k_set() {
        let al = Alphabet::split(1, 1);
        let w = GroupWord::gen(Gen::e(1)).concat(&alpha_word(&[(1, false)]));
        let p =
            GroupPoly::from_scalars(al, [(w, c(1.0, 0.0)), (GroupWord::identity(), c(2.0, 0.0))])
                .unwrap();
        let pred = SubsetPredicate::KSet { from: 0 };
        assert_eq!(project(&p, &pred), p);
        let m = crate::poly::MonoidPoly::one(Alphabet::plain(1), 1);
        assert_eq!(project(&m, &SubsetPredicate::Degree(0)).num_terms(), 1);
        assert!(project(&m, &SubsetPredicate::Degree(1)).is_zero());
    }
}
