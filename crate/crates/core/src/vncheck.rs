//! The non-commutative von Neumann inequality on sampled row contractions.
//!
//! For a row contraction `T_1..T_k` (`‖Σ T_i T_i^*‖ ≤ 1`) and a polynomial `p`
//! in the free monoid, `‖p(T)‖ ≤ ‖p‖_∞`. The right side is only computable in
//! special cases, so each check uses the tightest certified upper bound:
//! the `ℓ₂` norm for homogeneous `p`, the circle `L²` norm for `q(e_1)·e_2`,
//! and otherwise the sum of the `ℓ₂` norms of the homogeneous parts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fockrep::{norm_lower, NormEstimate, PowerOptions};
use crate::linalg::{c, hermitian_function, hermitian_max_eigenvalue, spectral_norm, CMatrix, C64};
use crate::poly::MonoidPoly;
use crate::random::{derive_seed, gaussian_matrix, rng};
use crate::words::{Alphabet, Gen, MonoidWord};

/// Certificate slack allowed on `‖Σ T_i T_i^*‖ ≤ 1`.
pub const ROW_TOLERANCE: f64 = 1e-10;

/// Regularization in strict sampling.
pub const STRICT_EPSILON: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    /// `Σ T_i T_i^* = S (S + εI)^{-1}`, strictly inside the unit ball.
    Strict,
    /// Rescaled so that `‖Σ T_i T_i^*‖ = 1`.
    Boundary,
}

/// `k` square matrices with a certified row-contraction norm.
#[derive(Clone, Debug, PartialEq)]
pub struct RowTuple {
    ops: Vec<CMatrix>,
    certificate: f64,
}

fn row_gram(ops: &[CMatrix]) -> CMatrix {
    let d = ops[0].nrows();
    let mut s = CMatrix::zeros(d, d);
    for t in ops {
        s += t * t.adjoint();
    }
    s
}

impl RowTuple {
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        let d = ops
            .first()
            .ok_or_else(|| Error::Shape("row tuple needs at least one operator".into()))?
            .nrows();
        if ops.iter().any(|t| t.nrows() != d || t.ncols() != d) {
            return Err(Error::Shape(
                "row tuple operators must be square of one size".into(),
            ));
        }
        let certificate = hermitian_max_eigenvalue(&row_gram(&ops));
        if certificate > 1.0 + ROW_TOLERANCE {
            return Err(Error::Domain(format!(
                "not a row contraction: ‖Σ T_i T_i*‖ = {certificate}"
            )));
        }
        Ok(RowTuple { ops, certificate })
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }

    /// `‖Σ T_i T_i^*‖`.
    pub fn certificate(&self) -> f64 {
        self.certificate
    }

    pub fn dim(&self) -> usize {
        self.ops[0].nrows()
    }
}

/// Random row contraction of `k` operators on `C^d`, reproducible per seed.
pub fn sample_row_contraction(k: usize, d: usize, seed: u64, mode: SampleMode) -> Result<RowTuple> {
    if k == 0 || d == 0 {
        return Err(Error::Shape("k and d must be positive".into()));
    }
    let mut r = rng(seed);
    let gs: Vec<CMatrix> = (0..k).map(|_| gaussian_matrix(&mut r, d, d)).collect();
    let s = row_gram(&gs);
    let shifted = &s + CMatrix::identity(d, d) * c(STRICT_EPSILON, 0.0);
    let inv_sqrt = hermitian_function(&shifted, |x| 1.0 / x.sqrt());
    let mut ops: Vec<CMatrix> = gs.iter().map(|g| &inv_sqrt * g).collect();
    if mode == SampleMode::Boundary {
        let cert = hermitian_max_eigenvalue(&row_gram(&ops));
        let s = c(1.0 / cert.sqrt(), 0.0);
        ops.iter_mut().for_each(|t| *t *= s);
    }
    RowTuple::new(ops)
}

/// `(∫_T |q(t)|² dm)^{1/2}` by Parseval.
pub fn circle_l2(coeffs: &[C64]) -> f64 {
    coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Upper bound used on the right side of the inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// Truncated estimate of `‖p‖_∞` (a lower bound; diagnostics only).
    AkEstimate,
    HomogeneousL2,
    CircleL2,
    Triangle,
}

/// If every word of `p` is `g1^m g2`, the one-variable coefficients of `q`.
pub fn circle_form(p: &MonoidPoly) -> Option<Vec<C64>> {
    if p.level() != 1 || p.is_zero() {
        return None;
    }
    let (g1, g2) = (Gen::plain(1), Gen::plain(2));
    let mut coeffs: Vec<C64> = Vec::new();
    for (w, a) in p.terms() {
        let (last, rest) = w.as_gens().split_last()?;
        if *last != g2 || rest.iter().any(|&g| g != g1) {
            return None;
        }
        let m = rest.len();
        if coeffs.len() <= m {
            coeffs.resize(m + 1, c(0.0, 0.0));
        }
        coeffs[m] = a[(0, 0)];
    }
    Some(coeffs)
}

/// Tightest certified upper bound for `‖p‖_∞` available from the structure
/// of `p`, in the order homogeneous > circle > triangle.
pub fn certified_bound(p: &MonoidPoly) -> (BoundKind, f64) {
    if p.is_homogeneous() {
        return (BoundKind::HomogeneousL2, p.l2_norm());
    }
    if let Some(q) = circle_form(p) {
        return (BoundKind::CircleL2, circle_l2(&q));
    }
    let tri = (0..=p.max_degree())
        .map(|n| p.homogeneous_part(n).l2_norm())
        .sum();
    (BoundKind::Triangle, tri)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VnTrial {
    pub seed: u64,
    pub certificate: f64,
    pub value: f64,
    pub slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VnReport {
    pub k: usize,
    pub dim: usize,
    pub mode: SampleMode,
    pub seed: u64,
    pub bound_kind: BoundKind,
    pub bound: f64,
    /// Truncated estimate of `‖p‖_∞`, for judging how tight the bound is.
    pub estimate: Option<NormEstimate>,
    pub trials: Vec<VnTrial>,
    pub min_slack: f64,
    pub max_value: f64,
    pub violations: usize,
}

/// Violation threshold on the slack for theorem-backed bounds.
pub const VN_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug)]
pub struct VnConfig {
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: SampleMode,
    /// Radius of the `‖p‖_∞` estimate; `None` skips it.
    pub estimate_radius: Option<usize>,
}

/// Sample `trials` row contractions and compare `‖p(T)‖` with the certified
/// bound. Trial `t` uses seed `derive_seed(seed, t)`.
pub fn vn_verify(p: &MonoidPoly, k: usize, cfg: &VnConfig) -> Result<VnReport> {
    if p.level() != 1 {
        return Err(Error::LevelMismatch {
            expected: 1,
            got: p.level(),
        });
    }
    if p.alphabet() != &Alphabet::plain(k as u32) {
        return Err(Error::AlphabetMismatch(format!(
            "polynomial alphabet has {} generators, expected plain g1..g{k}",
            p.alphabet().len()
        )));
    }
    let (bound_kind, bound) = certified_bound(p);
    let trials: Vec<VnTrial> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| {
            let seed = derive_seed(cfg.seed, t);
            let tuple = sample_row_contraction(k, cfg.dim, seed, cfg.mode)?;
            let value = spectral_norm(&p.eval_at(tuple.ops())?);
            Ok(VnTrial {
                seed,
                certificate: tuple.certificate(),
                value,
                slack: bound - value,
            })
        })
        .collect::<Result<_>>()?;
    let estimate = match cfg.estimate_radius {
        Some(r) => Some(norm_lower(
            p,
            r,
            &PowerOptions {
                seed: cfg.seed,
                ..Default::default()
            },
        )?),
        None => None,
    };
    let min_slack = trials.iter().map(|t| t.slack).fold(f64::INFINITY, f64::min);
    let max_value = trials.iter().map(|t| t.value).fold(0.0, f64::max);
    let violations = trials.iter().filter(|t| t.slack < -VN_TOLERANCE).count();
    Ok(VnReport {
        k,
        dim: cfg.dim,
        mode: cfg.mode,
        seed: cfg.seed,
        bound_kind,
        bound,
        estimate,
        trials,
        min_slack,
        max_value,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop17Report {
    pub k: usize,
    pub radius: usize,
    pub l2: f64,
    pub estimate: NormEstimate,
    pub difference: f64,
    pub holds: bool,
}

/// Tolerance on `‖p e_k‖_∞ = ‖p‖₂`.
pub const PROP17_TOLERANCE: f64 = 1e-8;

/// Check `‖p e_k‖_∞ = ‖p‖₂` on the ball of radius `radius` of `P_k`, for `p`
/// over `g1..g_{k-1}`.
pub fn prop17_check(
    p: &MonoidPoly,
    k: usize,
    radius: usize,
    opts: &PowerOptions,
) -> Result<Prop17Report> {
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let last = Gen::plain(k as u32);
    if p.terms().any(|(w, _)| w.as_gens().contains(&last)) {
        return Err(Error::Domain(format!(
            "polynomial uses the last generator {last}"
        )));
    }
    let al = Alphabet::plain(k as u32);
    let lifted = p.with_alphabet(al.clone())?;
    let ek = MonoidPoly::from_terms(
        al,
        p.level(),
        [(
            MonoidWord::gen(last),
            CMatrix::identity(p.level(), p.level()),
        )],
    )?;
    let estimate = norm_lower(&lifted.mul(&ek)?, radius, opts)?;
    let l2 = p.l2_norm();
    let difference = (estimate.value - l2).abs();
    Ok(Prop17Report {
        k,
        radius,
        l2,
        holds: difference <= PROP17_TOLERANCE,
        estimate,
        difference,
    })
}
