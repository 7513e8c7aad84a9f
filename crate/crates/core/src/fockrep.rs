//! Truncated left-regular and left-creation representations.
//!
//! A polynomial `p` acts on `ℓ₂` of the word set by left multiplication.
//! Restricting the domain to the ball of words of length `≤ L` and keeping
//! every output row (radius `L + deg p`) gives a finite sparse operator whose
//! norm is a certified lower bound for the operator norm of `p`. The largest
//! singular value is found matrix-free by power iteration on `T^*T`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64};
use crate::poly::{GroupPoly, MonoidPoly, Poly};
use crate::words::{Alphabet, GroupWord, Mode, MonoidWord, Word};

/// Default cap on the number of basis words in one ball.
pub const DEFAULT_BALL_CAP: u128 = 2_000_000;

/// Number of words of length `≤ radius` over `k` generators.
pub fn ball_count(mode: Mode, k: usize, radius: usize) -> u128 {
    let k = k as u128;
    match mode {
        Mode::Monoid => {
            if k <= 1 {
                return if k == 0 { 1 } else { radius as u128 + 1 };
            }
            (k.saturating_pow(radius as u32 + 1) - 1) / (k - 1)
        }
        Mode::Group => {
            if k == 0 || radius == 0 {
                return 1;
            }
            if k == 1 {
                return 2 * radius as u128 + 1;
            }
            let r = 2 * k - 1;
            1 + 2 * k * (r.saturating_pow(radius as u32) - 1) / (r - 1)
        }
    }
}

/// All words of length `≤ radius`, indexed densely in shortlex order with
/// the identity at index 0.
#[derive(Clone, Debug)]
pub struct Ball<W: Word> {
    alphabet: Alphabet,
    radius: usize,
    words: Vec<W>,
    /// `offsets[r]` = number of words of length `< r`.
    offsets: Vec<usize>,
    index: HashMap<W, usize>,
}

impl<W: Word> Ball<W> {
    pub fn new(alphabet: &Alphabet, radius: usize) -> Result<Self> {
        Ball::with_cap(alphabet, radius, DEFAULT_BALL_CAP)
    }

    pub fn with_cap(alphabet: &Alphabet, radius: usize, cap: u128) -> Result<Self> {
        let requested = ball_count(W::MODE, alphabet.len(), radius);
        if requested > cap {
            return Err(Error::ResourceCap { requested, cap });
        }
        let letters = alphabet.letters(W::MODE);
        let mut words = Vec::with_capacity(requested as usize);
        let mut offsets = vec![0usize];
        words.push(W::identity());
        let mut layer_start = 0;
        for _ in 0..radius {
            let layer_end = words.len();
            offsets.push(layer_end);
            for i in layer_start..layer_end {
                for &l in &letters {
                    if let Some(w) = words[i].push(l) {
                        words.push(w);
                    }
                }
            }
            layer_start = layer_end;
        }
        offsets.push(words.len());
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Ok(Ball {
            alphabet: alphabet.clone(),
            radius,
            words,
            offsets,
            index,
        })
    }

    pub fn mode(&self) -> Mode {
        W::MODE
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[W] {
        &self.words
    }

    /// Words of length `≤ r` form a prefix of the enumeration.
    pub fn count_within(&self, r: usize) -> usize {
        self.offsets[(r + 1).min(self.offsets.len() - 1)]
    }

    pub fn index_of(&self, w: &W) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn word(&self, i: usize) -> &W {
        &self.words[i]
    }
}

/// One nonzero block of a truncated operator.
#[derive(Clone, Copy, Debug)]
struct Entry {
    row: u32,
    col: u32,
    term: u32,
}

/// Left multiplication by a polynomial, restricted to a finite set of basis
/// words. The codomain holds exactly the words `w·x` that are hit, so no
/// output is ever truncated. Columns are laid out blockwise: the domain
/// vector has `level` consecutive complex entries per basis word.
#[derive(Clone, Debug)]
pub struct TruncOp<W: Word> {
    level: usize,
    domain_len: usize,
    codomain: Vec<W>,
    /// Row-major `level × level` coefficient blocks, one per term of `p`.
    blocks: Vec<Vec<C64>>,
    /// Sorted by column; rows of the first `m` columns are all `< rows_upto[m]`.
    entries: Vec<Entry>,
    col_start: Vec<usize>,
    rows_upto: Vec<usize>,
}

impl<W: Word> TruncOp<W> {
    /// Restrict left multiplication by `p` to the span of `domain`.
    pub fn new(p: &Poly<W>, domain: &[W]) -> Self {
        let level = p.level();
        let terms: Vec<(&W, &CMatrix)> = p.terms().collect();
        let blocks = terms
            .iter()
            .map(|(_, a)| {
                let mut b = Vec::with_capacity(level * level);
                for r in 0..level {
                    for c in 0..level {
                        b.push(a[(r, c)]);
                    }
                }
                b
            })
            .collect();
        let mut codomain: Vec<W> = Vec::new();
        let mut row_index: HashMap<W, u32> = HashMap::new();
        let mut entries = Vec::with_capacity(domain.len() * terms.len());
        let mut col_start = Vec::with_capacity(domain.len() + 1);
        let mut rows_upto = Vec::with_capacity(domain.len() + 1);
        rows_upto.push(0);
        for (col, x) in domain.iter().enumerate() {
            col_start.push(entries.len());
            for (t, (w, _)) in terms.iter().enumerate() {
                let y = w.concat(x);
                let row = *row_index.entry(y.clone()).or_insert_with(|| {
                    codomain.push(y);
                    (codomain.len() - 1) as u32
                });
                entries.push(Entry {
                    row,
                    col: col as u32,
                    term: t as u32,
                });
            }
            rows_upto.push(codomain.len());
        }
        col_start.push(entries.len());
        TruncOp {
            level,
            domain_len: domain.len(),
            codomain,
            blocks,
            entries,
            col_start,
            rows_upto,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn domain_len(&self) -> usize {
        self.domain_len
    }

    pub fn codomain(&self) -> &[W] {
        &self.codomain
    }

    /// Number of scalar rows and columns.
    pub fn shape(&self) -> (usize, usize) {
        (
            self.codomain.len() * self.level,
            self.domain_len * self.level,
        )
    }

    /// `(row, column)` word-index pairs of the nonzero blocks, column-ordered.
    pub fn block_pattern(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries
            .iter()
            .map(|e| (e.row as usize, e.col as usize))
    }

    /// `y = T x` restricted to the first `cols` domain words.
    fn apply_prefix(&self, cols: usize, x: &[C64], y: &mut [C64]) {
        let n = self.level;
        y.iter_mut().for_each(|v| *v = c(0.0, 0.0));
        for e in &self.entries[..self.col_start[cols]] {
            let b = &self.blocks[e.term as usize];
            let xs = &x[e.col as usize * n..(e.col as usize + 1) * n];
            let ys = &mut y[e.row as usize * n..(e.row as usize + 1) * n];
            for r in 0..n {
                let mut acc = c(0.0, 0.0);
                for k in 0..n {
                    acc += b[r * n + k] * xs[k];
                }
                ys[r] += acc;
            }
        }
    }

    /// `x = T^* y` restricted to the first `cols` domain words.
    fn apply_adjoint_prefix(&self, cols: usize, y: &[C64], x: &mut [C64]) {
        let n = self.level;
        x.iter_mut().for_each(|v| *v = c(0.0, 0.0));
        for e in &self.entries[..self.col_start[cols]] {
            let b = &self.blocks[e.term as usize];
            let ys = &y[e.row as usize * n..(e.row as usize + 1) * n];
            let xs = &mut x[e.col as usize * n..(e.col as usize + 1) * n];
            for k in 0..n {
                let mut acc = c(0.0, 0.0);
                for r in 0..n {
                    acc += b[r * n + k].conj() * ys[r];
                }
                xs[k] += acc;
            }
        }
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.domain_len * self.level);
        let mut y = vec![c(0.0, 0.0); self.codomain.len() * self.level];
        self.apply_prefix(self.domain_len, x, &mut y);
        y
    }

    pub fn apply_adjoint(&self, y: &[C64]) -> Vec<C64> {
        assert_eq!(y.len(), self.codomain.len() * self.level);
        let mut x = vec![c(0.0, 0.0); self.domain_len * self.level];
        self.apply_adjoint_prefix(self.domain_len, y, &mut x);
        x
    }

    /// Dense copy, for small operators and cross-checks.
    pub fn to_dense(&self) -> CMatrix {
        let n = self.level;
        let (rows, cols) = self.shape();
        let mut m = CMatrix::zeros(rows, cols);
        for e in &self.entries {
            let b = &self.blocks[e.term as usize];
            for r in 0..n {
                for k in 0..n {
                    m[(e.row as usize * n + r, e.col as usize * n + k)] += b[r * n + k];
                }
            }
        }
        m
    }
}

/// Left multiplication by `p` on a ball.
pub fn left_mult<W: Word>(p: &Poly<W>, ball: &Ball<W>) -> Result<TruncOp<W>> {
    if !p.alphabet().is_subset_of(ball.alphabet()) {
        return Err(Error::AlphabetMismatch(
            "polynomial uses generators outside the ball's alphabet".into(),
        ));
    }
    Ok(TruncOp::new(p, ball.words()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimateKind {
    LowerBound,
    Exact,
}

/// Power-iteration settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerOptions {
    /// Stop when the Rayleigh quotient changes by less than `tol` relatively.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        PowerOptions {
            tol: 1e-9,
            max_iter: 5000,
            seed: 0x5eed,
        }
    }
}

/// Per-radius record of a warm-started estimate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusStep {
    pub radius: usize,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub radius: usize,
    pub kind: EstimateKind,
    pub converged: bool,
    /// `Σ_w ‖A_w‖`, always an upper bound.
    pub triangle_bound: f64,
    /// Relative Rayleigh-quotient change per iteration at the final radius.
    pub residuals: Vec<f64>,
    /// Nondecreasing values for radii `0..=radius`.
    pub trace: Vec<RadiusStep>,
    /// Unit vector attaining `value`, in domain order; not serialized.
    #[serde(skip)]
    pub witness: Vec<C64>,
}

/// Result of one power-iteration run.
#[derive(Clone, Debug)]
pub struct PowerRun {
    /// Best `‖Tv‖` over unit vectors `v` visited.
    pub sigma: f64,
    pub vector: Vec<C64>,
    pub iterations: usize,
    pub converged: bool,
    pub residuals: Vec<f64>,
}

fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [C64]) -> f64 {
    let n = norm2(v);
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
    n
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<C64> {
    (0..len)
        .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Power iteration on `T^*T` over the first `cols` domain words, starting
/// from `start`.
fn power_run<W: Word>(
    op: &TruncOp<W>,
    cols: usize,
    start: Vec<C64>,
    opts: &PowerOptions,
) -> PowerRun {
    let n = op.level;
    let rows = op.rows_upto[cols];
    let mut v = start;
    let mut y = vec![c(0.0, 0.0); rows * n];
    let mut u = vec![c(0.0, 0.0); cols * n];
    let mut residuals = Vec::new();
    if normalize(&mut v) == 0.0 {
        return PowerRun {
            sigma: 0.0,
            vector: v,
            iterations: 0,
            converged: true,
            residuals,
        };
    }
    let mut best = 0.0f64;
    let mut best_vec = v.clone();
    let mut prev = f64::NAN;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iter {
        iterations += 1;
        op.apply_prefix(cols, &v, &mut y);
        let lambda = y.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if lambda > best {
            best = lambda;
            best_vec.copy_from_slice(&v);
        }
        if lambda == 0.0 {
            converged = true;
            break;
        }
        if prev.is_finite() {
            let rel = (lambda - prev).abs() / lambda;
            residuals.push(rel);
            if rel < opts.tol {
                converged = true;
                break;
            }
        }
        prev = lambda;
        op.apply_adjoint_prefix(cols, &y, &mut u);
        if normalize(&mut u) == 0.0 {
            converged = true;
            break;
        }
        std::mem::swap(&mut v, &mut u);
    }
    PowerRun {
        sigma: best.sqrt(),
        vector: best_vec,
        iterations,
        converged,
        residuals,
    }
}

/// Largest singular value of a truncated operator from a seeded random start.
pub fn top_singular_value<W: Word>(op: &TruncOp<W>, opts: &PowerOptions) -> PowerRun {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let start = random_vector(&mut rng, op.domain_len * op.level);
    power_run(op, op.domain_len, start, opts)
}

/// Same, starting from a caller-supplied vector (e.g. a known near-optimal
/// direction). The result is still the Rayleigh quotient of a visited vector.
pub fn top_singular_value_from<W: Word>(
    op: &TruncOp<W>,
    start: Vec<C64>,
    opts: &PowerOptions,
) -> PowerRun {
    assert_eq!(start.len(), op.domain_len * op.level);
    power_run(op, op.domain_len, start, opts)
}

/// Weight of the fresh random component mixed into each warm start.
const WARM_NOISE: f64 = 0.1;

/// Estimate on the nested domains `domain[..counts[r]]`, each radius warm
/// started from the previous optimum. Values are nondecreasing because the
/// previous optimum remains a certificate on the larger domain.
fn nested_estimate<W: Word>(
    p: &Poly<W>,
    domain: &[W],
    counts: &[usize],
    opts: &PowerOptions,
    kind: EstimateKind,
) -> NormEstimate {
    let triangle = p.triangle_bound();
    let radius = counts.len() - 1;
    if p.is_zero() {
        return NormEstimate {
            value: 0.0,
            radius,
            kind: EstimateKind::Exact,
            converged: true,
            triangle_bound: 0.0,
            residuals: Vec::new(),
            trace: (0..=radius)
                .map(|r| RadiusStep {
                    radius: r,
                    value: 0.0,
                    iterations: 0,
                    converged: true,
                })
                .collect(),
            witness: Vec::new(),
        };
    }
    let op = TruncOp::new(p, domain);
    let n = p.level();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut trace = Vec::with_capacity(counts.len());
    let mut prev_vec: Vec<C64> = Vec::new();
    let mut value = 0.0f64;
    let mut witness: Vec<C64> = Vec::new();
    let mut last = None;
    for (r, &cols) in counts.iter().enumerate() {
        let mut start = random_vector(&mut rng, cols * n);
        if !prev_vec.is_empty() {
            let s = WARM_NOISE / norm2(&start).max(f64::MIN_POSITIVE);
            start.iter_mut().for_each(|z| *z *= s);
            for (z, p) in start.iter_mut().zip(&prev_vec) {
                *z += p;
            }
        }
        let run = power_run(&op, cols, start, opts);
        if run.sigma > value || witness.is_empty() {
            value = run.sigma;
            witness = run.vector.clone();
        }
        trace.push(RadiusStep {
            radius: r,
            value,
            iterations: run.iterations,
            converged: run.converged,
        });
        prev_vec = run.vector.clone();
        last = Some(run);
    }
    let last = last.expect("at least one radius");
    witness.resize(counts[radius] * n, c(0.0, 0.0));
    NormEstimate {
        value,
        radius,
        kind,
        converged: last.converged,
        triangle_bound: triangle,
        residuals: last.residuals,
        trace,
        witness,
    }
}

/// True when the truncated norm provably equals the full norm at every
/// radius: the polynomial is homogeneous in the free monoid, has the form
/// `q·e_k` with `q` avoiding the last generator `e_k` (scalar level), or is a
/// single term.
fn exact_by_structure<W: Word>(p: &Poly<W>) -> bool {
    if p.num_terms() <= 1 {
        return true;
    }
    if W::MODE != Mode::Monoid {
        return false;
    }
    if p.is_homogeneous() {
        return true;
    }
    if p.level() != 1 {
        return false;
    }
    let Some(&last_gen) = p.alphabet().gens().last() else {
        return false;
    };
    p.terms().all(|(w, _)| {
        let letters: Vec<_> = w.letters().collect();
        match letters.split_last() {
            Some((l, rest)) => l.gen == last_gen && rest.iter().all(|m| m.gen != last_gen),
            None => false,
        }
    })
}

/// Certified lower bound for `‖p‖` (group words) or `‖p‖_∞` (monoid words)
/// at any level, from the ball of radius `radius`.
pub fn norm_lower<W: Word>(
    p: &Poly<W>,
    radius: usize,
    opts: &PowerOptions,
) -> Result<NormEstimate> {
    let ball = Ball::new(p.alphabet(), radius)?;
    let counts: Vec<usize> = (0..=radius).map(|r| ball.count_within(r)).collect();
    let kind = if exact_by_structure(p) {
        EstimateKind::Exact
    } else {
        EstimateKind::LowerBound
    };
    Ok(nested_estimate(p, ball.words(), &counts, opts, kind))
}

/// [`norm_lower`], followed by extra power runs on the full ball from the
/// given sparse start vectors (word, `level` entries). The value only moves
/// up, and stays the norm of an actual image vector.
pub fn norm_lower_seeded<W: Word>(
    p: &Poly<W>,
    radius: usize,
    starts: &[Vec<(W, Vec<C64>)>],
    opts: &PowerOptions,
) -> Result<NormEstimate> {
    let mut est = norm_lower(p, radius, opts)?;
    if p.is_zero() || starts.is_empty() {
        return Ok(est);
    }
    let ball = Ball::new(p.alphabet(), radius)?;
    let op = TruncOp::new(p, ball.words());
    let n = p.level();
    for s in starts {
        let mut v = vec![c(0.0, 0.0); ball.len() * n];
        for (w, x) in s {
            if let Some(i) = ball.index_of(w) {
                v[i * n..(i + 1) * n].copy_from_slice(x);
            }
        }
        let run = power_run(&op, ball.len(), v, opts);
        if run.sigma > est.value {
            est.value = run.sigma;
            est.witness = run.vector;
            if let Some(step) = est.trace.last_mut() {
                step.value = run.sigma;
            }
        }
    }
    Ok(est)
}

/// [`norm_lower`] for a polynomial with matrix coefficients.
pub fn norm_lower_matrix<W: Word>(
    p: &Poly<W>,
    level: usize,
    radius: usize,
    opts: &PowerOptions,
) -> Result<NormEstimate> {
    if p.level() != level {
        return Err(Error::LevelMismatch {
            expected: level,
            got: p.level(),
        });
    }
    norm_lower(p, radius, opts)
}

/// Lower bound from the words of a ball that satisfy `keep`, radius by
/// radius. The filtered words of length `≤ r` still form a prefix.
pub fn norm_lower_on<W: Word>(
    p: &Poly<W>,
    ball: &Ball<W>,
    keep: impl Fn(&W) -> bool,
    opts: &PowerOptions,
) -> NormEstimate {
    let mut domain = Vec::new();
    let mut counts = Vec::with_capacity(ball.radius() + 1);
    for r in 0..=ball.radius() {
        let lo = if r == 0 { 0 } else { ball.count_within(r - 1) };
        for w in &ball.words()[lo..ball.count_within(r)] {
            if keep(w) {
                domain.push(w.clone());
            }
        }
        counts.push(domain.len());
    }
    nested_estimate(p, &domain, &counts, opts, EstimateKind::LowerBound)
}

/// `‖Q p Q‖` for a group polynomial with positive support, `Q` the
/// projection onto the monoid words of the ball.
pub fn compression_norm(p: &GroupPoly, radius: usize, opts: &PowerOptions) -> Result<NormEstimate> {
    if p.terms().any(|(w, _)| !w.is_positive()) {
        return Err(Error::Domain(
            "compression needs a polynomial supported on positive words".into(),
        ));
    }
    let ball: Ball<MonoidWord> = Ball::new(p.alphabet(), radius)?;
    let domain: Vec<GroupWord> = ball.words().iter().map(|w| w.to_group()).collect();
    let counts: Vec<usize> = (0..=radius).map(|r| ball.count_within(r)).collect();
    // Positive words times positive words stay positive, so Q on the left
    // removes nothing from the image of the compressed domain.
    let kind = if exact_by_structure(&p.to_monoid()?) {
        EstimateKind::Exact
    } else {
        EstimateKind::LowerBound
    };
    Ok(nested_estimate(p, &domain, &counts, opts, kind))
}

/// Monoid reading of a positive group polynomial, for cross-checks.
pub fn monoid_reading(p: &GroupPoly) -> Result<MonoidPoly> {
    p.to_monoid()
}
