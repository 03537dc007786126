//! Exact matrix models of symmetric pairs, flags, conormal spaces, and the map
//! sending a K-orbit on a flag variety to a nilpotent K-orbit.
//!
//! # Models
//!
//! All models live inside `gl_N` acting on `ℚ^N`, with the involution
//! `θ(X) = T X T` for a fixed involutive matrix `T`:
//!
//! | pair        | `N`      | `g`          | `T`                                        |
//! |-------------|----------|--------------|--------------------------------------------|
//! | `upq:p,q`   | `p+q`    | `gl_N`       | `diag(+1^p, -1^q)`                         |
//! | `spr:n`     | `2n`     | `sp_{2n}`    | `diag(+1^n, -1^n)` (a similitude)          |
//! | `sppq:p,q`  | `2p+2q`  | `sp_{2p+2q}` | `+1` on `e_1..e_p` and `e_{N+1-p}..e_N`    |
//! | `cgl:n`     | `2n`     | `gl_n ⊕ gl_n`| the swap of the two blocks                 |
//!
//! The symplectic form is antidiagonal: `ω(e_i, e_{N+1-i}) = +1` for `i ≤ N/2`
//! and `-1` otherwise. Every basis element of `g` is a θ-eigenvector, so `k` and `s`
//! are spanned by subsets of the `g` basis.
//!
//! # Flags
//!
//! A flag is an ordered basis `v_1..v_N`, with `F_i = span(v_1..v_i)`. For
//! symplectic pairs the basis is *adapted*: `ω(v_a, v_b) = 0` unless
//! `a + b = N + 1`, which makes the flag isotropic with `F_i^⊥ = F_{N-i}`.
//! For `cgl:n` the basis is block diagonal and encodes the pair of flags
//! `(F, F')` in the two copies of `ℚ^n`. A partial flag is described by a *step*
//! function on positions: `X` preserves it iff `(M⁻¹XM)_{ab} = 0` whenever
//! `step(a) > step(b)`, where `M` has columns `v_1..v_N`.
//!
//! # Nilpotent K-orbits
//!
//! A conormal covector is identified with `x ∈ s` through the trace pairing.
//! Its signed tableau has rank profile `r(m, δ) = rank(x^m |_{V_δ})`, where `V_±`
//! are the eigenspaces of `T`. This is the profile of
//! [`SignedTableau::profile`] when every row leads with the sign of its
//! chain generator.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kgb_clans::{closure_orders_on_p, project_to_p, ClosurePoset, Kgb, PClass, ParabolicType};
use crate::linalg::{inverse, nullspace, q, rank, Mat, Q};
use crate::partition::{c_collapse, dominance_leq, normalize, transpose, Partition};
use crate::springer_data::{predicted_fiber_size, Ambient, SymmetricPair};
use crate::tableau::{all_valid, Profile, Sign, SignedTableau, TableauError};

/// Errors raised by the geometric layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    /// An internal consistency check failed; indicates a construction bug.
    #[error("model error: {0}")]
    Model(String),
    /// Sampled tableaux had incomparable maxima.
    #[error("genericity failure (seed {seed}): {detail}")]
    Genericity { seed: u64, detail: String },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("not an even orbit: {0:?}")]
    NotEven(Partition),
    #[error(transparent)]
    Tableau(#[from] TableauError),
}

// ---------------------------------------------------------------------------
// Matrix models
// ---------------------------------------------------------------------------

/// `g ⊂ gl_N` with its involution and Cartan decomposition `g = k ⊕ s`.
#[derive(Debug, Clone)]
pub struct MatrixModel {
    pub pair: SymmetricPair,
    /// Size `N` of the matrices.
    pub dim: usize,
    /// The involutive matrix `T`, `θ(X) = T X T`.
    pub theta: Mat,
    /// Gram matrix of the symplectic form, for symplectic pairs.
    pub gram: Option<Mat>,
    /// Eigenvalue of `T` on each coordinate vector, when `T` is diagonal.
    pub signs: Option<Vec<Sign>>,
    /// Basis of `g`; each element is a θ-eigenvector.
    pub g: Vec<Mat>,
    /// Positions in `g` of the basis of `k`.
    pub k_idx: Vec<usize>,
    /// Positions in `g` of the basis of `s`.
    pub s_idx: Vec<usize>,
    /// `tr(g_l s_j)` for every `g` basis element `l` and `s` basis element `j`.
    pairing: Mat,
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = Q::one();
    m
}

fn diag_signs(signs: &[Sign]) -> Mat {
    let mut t = Mat::zeros(signs.len(), signs.len());
    for (i, s) in signs.iter().enumerate() {
        t[(i, i)] = q(if *s == Sign::Plus { 1 } else { -1 });
    }
    t
}

/// Antidiagonal symplectic Gram matrix on `ℚ^N`.
pub fn symplectic_gram(n_total: usize) -> Mat {
    let mut j = Mat::zeros(n_total, n_total);
    for i in 0..n_total {
        j[(i, n_total - 1 - i)] = q(if i < n_total / 2 { 1 } else { -1 });
    }
    j
}

/// Basis `{J (E_ab + E_ba) : a ≤ b}` of `sp_N`.
fn symplectic_basis(gram: &Mat) -> Vec<Mat> {
    let n = gram.rows();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut sym = unit(n, a, b);
            if a != b {
                sym = sym.add(&unit(n, b, a));
            }
            out.push(gram.mul(&sym));
        }
    }
    out
}

impl MatrixModel {
    pub fn new(pair: SymmetricPair) -> Self {
        let (dim, theta, gram, signs, g) = match pair {
            SymmetricPair::Upq(p, qq) => {
                let n = p + qq;
                let signs: Vec<Sign> = (0..n).map(|i| if i < p { Sign::Plus } else { Sign::Minus }).collect();
                let g: Vec<Mat> = (0..n).flat_map(|i| (0..n).map(move |j| unit(n, i, j))).collect();
                (n, diag_signs(&signs), None, Some(signs), g)
            }
            SymmetricPair::SpR(h) => {
                let n = 2 * h;
                let signs: Vec<Sign> = (0..n).map(|i| if i < h { Sign::Plus } else { Sign::Minus }).collect();
                let gram = symplectic_gram(n);
                let g = symplectic_basis(&gram);
                (n, diag_signs(&signs), Some(gram), Some(signs), g)
            }
            SymmetricPair::SpPQ(p, qq) => {
                let n = 2 * (p + qq);
                let signs: Vec<Sign> =
                    (0..n).map(|i| if i < p || i >= n - p { Sign::Plus } else { Sign::Minus }).collect();
                let gram = symplectic_gram(n);
                let g = symplectic_basis(&gram);
                (n, diag_signs(&signs), Some(gram), Some(signs), g)
            }
            SymmetricPair::ComplexGL(h) => {
                let n = 2 * h;
                let mut theta = Mat::zeros(n, n);
                for i in 0..h {
                    theta[(i, h + i)] = Q::one();
                    theta[(h + i, i)] = Q::one();
                }
                let mut g = Vec::new();
                for sign in [1, -1] {
                    for i in 0..h {
                        for j in 0..h {
                            let mut m = unit(n, i, j);
                            m[(h + i, h + j)] = q(sign);
                            g.push(m);
                        }
                    }
                }
                (n, theta, None, None, g)
            }
        };
        let mut k_idx = Vec::new();
        let mut s_idx = Vec::new();
        for (l, x) in g.iter().enumerate() {
            let tx = theta.mul(x).mul(&theta);
            if &tx == x {
                k_idx.push(l);
            } else {
                assert_eq!(tx, x.scale(&q(-1)), "basis element is not a θ-eigenvector");
                s_idx.push(l);
            }
        }
        let mut pairing = Mat::zeros(g.len(), s_idx.len());
        for (l, x) in g.iter().enumerate() {
            for (j, &sj) in s_idx.iter().enumerate() {
                pairing[(l, j)] = x.trace_pairing(&g[sj]);
            }
        }
        MatrixModel { pair, dim, theta, gram, signs, g, k_idx, s_idx, pairing }
    }

    pub fn dim_g(&self) -> usize {
        self.g.len()
    }

    pub fn dim_k(&self) -> usize {
        self.k_idx.len()
    }

    pub fn dim_s(&self) -> usize {
        self.s_idx.len()
    }

    pub fn k_basis(&self) -> Vec<&Mat> {
        self.k_idx.iter().map(|&i| &self.g[i]).collect()
    }

    pub fn s_basis(&self) -> Vec<&Mat> {
        self.s_idx.iter().map(|&i| &self.g[i]).collect()
    }

    /// `θ(X) = T X T`.
    pub fn theta_of(&self, x: &Mat) -> Mat {
        self.theta.mul(x).mul(&self.theta)
    }

    /// The symplectic form `ω(u, v) = uᵀ J v` (symplectic pairs only).
    pub fn omega(&self, u: &[Q], v: &[Q]) -> Q {
        let j = self.gram.as_ref().expect("symplectic pair");
        let jv = j.mul_vec(v);
        u.iter().zip(&jv).map(|(a, b)| a * b).sum()
    }

    /// Membership in `g`, tested through the defining equations.
    pub fn contains(&self, x: &Mat) -> bool {
        match self.pair {
            SymmetricPair::Upq(..) => true,
            SymmetricPair::SpR(_) | SymmetricPair::SpPQ(..) => {
                let j = self.gram.as_ref().expect("symplectic pair");
                x.transpose().mul(j).add(&j.mul(x)).is_zero()
            }
            SymmetricPair::ComplexGL(h) => {
                (0..2 * h).all(|i| (0..2 * h).all(|k| (i < h) == (k < h) || x[(i, k)].is_zero()))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Flags and parabolic shapes
// ---------------------------------------------------------------------------

/// 0-based position `a` of the pair `(v_a, v_{a+1})` moved by simple root `r`.
pub fn root_position(pair: &SymmetricPair, r: usize) -> usize {
    match *pair {
        SymmetricPair::ComplexGL(n) if r >= n => r,
        _ => r - 1,
    }
}

/// Step function of the partial flag whose Levi contains the given simple roots.
///
/// A cut after position `i` (1-based, `1 ≤ i < N`) is kept unless the simple
/// root attached to it lies in the Levi. In type A root `i` owns cut `i`; in
/// type C root `min(i, N - i)` owns cut `i`; for `cgl:n` the cut between the
/// two blocks is always kept, and root `n - 1 + i` owns cut `n + i`.
pub fn steps(pair: &SymmetricPair, levi: &BTreeSet<usize>) -> Vec<usize> {
    let n_total = match *pair {
        SymmetricPair::ComplexGL(n) => 2 * n,
        _ => pair.defining_dim(),
    };
    let owner = |i: usize| -> Option<usize> {
        match *pair {
            SymmetricPair::ComplexGL(n) => {
                if i < n {
                    Some(i)
                } else if i == n {
                    None
                } else {
                    Some(i - 1)
                }
            }
            SymmetricPair::Upq(..) => Some(i),
            SymmetricPair::SpR(_) | SymmetricPair::SpPQ(..) => Some(i.min(n_total - i)),
        }
    };
    let mut out = Vec::with_capacity(n_total);
    let mut step = 0;
    for pos in 0..n_total {
        out.push(step);
        let cut = pos + 1;
        if cut < n_total && owner(cut).is_none_or(|r| !levi.contains(&r)) {
            step += 1;
        }
    }
    out
}

/// A flag given by an adapted ordered basis (columns of `basis`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagRep {
    basis: Mat,
}

impl FlagRep {
    /// Wraps a basis after checking invertibility and (for symplectic models) adaptedness.
    pub fn new(model: &MatrixModel, basis: Mat) -> Result<Self, GeomError> {
        if basis.rows() != model.dim || basis.cols() != model.dim || inverse(&basis).is_none() {
            return Err(GeomError::Model("flag basis is not invertible".into()));
        }
        let f = FlagRep { basis };
        if model.gram.is_some() && !f.is_adapted(model) {
            return Err(GeomError::Model("flag basis is not symplectically adapted".into()));
        }
        if matches!(model.pair, SymmetricPair::ComplexGL(_)) && !model.contains(&f.basis) {
            return Err(GeomError::Model("flag basis is not block diagonal".into()));
        }
        Ok(f)
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn vector(&self, a: usize) -> Vec<Q> {
        self.basis.column(a)
    }

    /// Spanning vectors of `F_i` (the first `i` basis vectors).
    pub fn subspace(&self, i: usize) -> Vec<Vec<Q>> {
        (0..i).map(|a| self.vector(a)).collect()
    }

    /// `ω(v_a, v_b) = 0` unless `a + b = N + 1`.
    pub fn is_adapted(&self, model: &MatrixModel) -> bool {
        let n = model.dim;
        (0..n).all(|a| {
            (0..n).all(|b| a + b + 1 == n || model.omega(&self.vector(a), &self.vector(b)).is_zero())
        })
    }
}

/// A flag together with `M⁻¹ g_l M` for every basis element of `g`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub flag: FlagRep,
    conj: Vec<Mat>,
}

impl Frame {
    pub fn new(model: &MatrixModel, flag: FlagRep) -> Self {
        let inv = inverse(flag.basis()).expect("flag bases are invertible");
        let conj = model.g.iter().map(|x| inv.mul(x).mul(flag.basis())).collect();
        Frame { flag, conj }
    }

    /// Coordinates of the matrices (given by `g` positions) preserving the partial flag.
    fn stabilizer(&self, idx: &[usize], steps: &[usize]) -> Vec<Vec<Q>> {
        nullspace(&self.conditions(idx, steps, false))
    }

    fn stabilizer_dim(&self, idx: &[usize], steps: &[usize]) -> usize {
        idx.len() - rank(&self.conditions(idx, steps, false))
    }

    /// Coordinates of the matrices (given by `g` positions) in the nilradical
    /// of the stabilizer: strictly raising the step.
    fn nilradical(&self, idx: &[usize], steps: &[usize]) -> Vec<Vec<Q>> {
        nullspace(&self.conditions(idx, steps, true))
    }

    /// Linear conditions `(M⁻¹XM)_{ab} = 0` for `step(a) > step(b)`, or
    /// `step(a) ≥ step(b)` when `strict`.
    fn conditions(&self, idx: &[usize], steps: &[usize], strict: bool) -> Mat {
        let n = steps.len();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if steps[a] < steps[b] || (steps[a] == steps[b] && !strict) {
                    continue;
                }
                let row: Vec<Q> = idx.iter().map(|&l| self.conj[l][(a, b)].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        Mat::from_rows(idx.len(), &rows)
    }
}

/// `dim stab_k` of the partial flag of shape `steps`.
pub fn stabilizer_dim_k(model: &MatrixModel, frame: &Frame, steps: &[usize]) -> usize {
    frame.stabilizer_dim(&model.k_idx, steps)
}

/// Dimension of the K-orbit of a full flag: `dim K − dim stab_K`.
pub fn orbit_dim(model: &MatrixModel, frame: &Frame) -> usize {
    let st = steps(&model.pair, &BTreeSet::new());
    model.dim_k() - stabilizer_dim_k(model, frame, &st)
}

/// Dimension of the K-orbit of the partial flag of the given Levi type.
pub fn orbit_dim_partial(model: &MatrixModel, frame: &Frame, levi: &BTreeSet<usize>) -> usize {
    let st = steps(&model.pair, levi);
    model.dim_k() - stabilizer_dim_k(model, frame, &st)
}

/// Basis of the parabolic subalgebra `p ⊂ g` stabilizing the partial flag.
pub fn parabolic_basis(model: &MatrixModel, frame: &Frame, levi: &BTreeSet<usize>) -> Vec<Mat> {
    let all: Vec<usize> = (0..model.dim_g()).collect();
    frame
        .stabilizer(&all, &steps(&model.pair, levi))
        .iter()
        .map(|c| combine(&model.g, c))
        .collect()
}

fn combine(basis: &[Mat], coeffs: &[Q]) -> Mat {
    let mut out = Mat::zeros(basis[0].rows(), basis[0].cols());
    for (x, c) in basis.iter().zip(coeffs) {
        out.add_scaled(c, x);
    }
    out
}

// ---------------------------------------------------------------------------
// Conormal spaces
// ---------------------------------------------------------------------------

/// `{x ∈ s : tr(x b) = 0 for all b ∈ p}`, for `p` the stabilizer of the partial flag.
///
/// Representative flags are isotropic (symplectic pairs) or block diagonal
/// (`cgl:n`), so `p` is a parabolic subalgebra of `g` and its annihilator under
/// the nondegenerate invariant trace form is its nilradical `n`. The space is
/// therefore solved directly as `s ∩ n`; [`conormal_space_by_pairing`] computes
/// the annihilator literally and the two are compared in tests.
pub fn conormal_space(model: &MatrixModel, frame: &Frame, levi: &BTreeSet<usize>) -> Vec<Mat> {
    if model.dim_s() == 0 {
        return Vec::new();
    }
    let s: Vec<Mat> = model.s_basis().into_iter().cloned().collect();
    frame
        .nilradical(&model.s_idx, &steps(&model.pair, levi))
        .iter()
        .map(|c| combine(&s, c))
        .collect()
}

/// The annihilator of `p` in `s`, solved from the trace pairing.
pub fn conormal_space_by_pairing(model: &MatrixModel, frame: &Frame, levi: &BTreeSet<usize>) -> Vec<Mat> {
    let all: Vec<usize> = (0..model.dim_g()).collect();
    let p = frame.stabilizer(&all, &steps(&model.pair, levi));
    if model.dim_s() == 0 {
        return Vec::new();
    }
    let rows: Vec<Vec<Q>> = p
        .iter()
        .map(|c| {
            (0..model.dim_s())
                .map(|j| c.iter().enumerate().map(|(l, cl)| cl * &model.pairing[(l, j)]).sum())
                .collect()
        })
        .collect();
    let sol = nullspace(&Mat::from_rows(model.dim_s(), &rows));
    let s: Vec<Mat> = model.s_basis().into_iter().cloned().collect();
    sol.iter().map(|c| combine(&s, c)).collect()
}

// ---------------------------------------------------------------------------
// Signed Jordan types
// ---------------------------------------------------------------------------

fn power(x: &Mat, m: usize) -> Mat {
    (0..m).fold(Mat::identity(x.rows()), |acc, _| acc.mul(x))
}

/// The signed tableau of a nilpotent `x ∈ s`.
pub fn signed_jordan_type(model: &MatrixModel, x: &Mat) -> Result<SignedTableau, GeomError> {
    if model.theta_of(x) != x.scale(&q(-1)) || !model.contains(x) {
        return Err(GeomError::Model("element is not in s".into()));
    }
    if !power(x, model.dim).is_zero() {
        return Err(GeomError::NotNilpotent);
    }
    let mut prof = Profile::new();
    let t = match (&model.signs, model.pair) {
        (Some(signs), _) => {
            for sign in [Sign::Plus, Sign::Minus] {
                let cols: Vec<usize> = (0..model.dim).filter(|&i| signs[i] == sign).collect();
                let all: Vec<usize> = (0..model.dim).collect();
                let mut pw = Mat::identity(model.dim);
                for m in 0..=model.dim {
                    prof.insert((m, Some(sign)), rank(&pw.select(&all, &cols)));
                    pw = pw.mul(x);
                }
            }
            SignedTableau::from_profile(&prof, true)?
        }
        (None, SymmetricPair::ComplexGL(n)) => {
            let idx: Vec<usize> = (0..n).collect();
            let block = x.select(&idx, &idx);
            let mut pw = Mat::identity(n);
            for m in 0..=n {
                prof.insert((m, None), rank(&pw));
                pw = pw.mul(&block);
            }
            SignedTableau::from_profile(&prof, false)?
        }
        _ => unreachable!("only cgl models have a non-diagonal involution"),
    };
    t.validate(&model.pair)?;
    Ok(t)
}

/// Seed for one sampling task, mixed from a global seed and a task index.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Outcome of sampling a conormal space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericSample {
    pub tableau: SignedTableau,
    /// Every sampled tableau, in sampling order.
    pub samples: Vec<SignedTableau>,
}

/// The signed type of a generic element of a linear space of nilpotent `s`-matrices.
///
/// Trial `i` draws integer coefficients from `[-h_i, h_i]` with `h_0 = 3` and
/// `h_{i+1} = 2 h_i`. The returned tableau is the unique maximum of the samples.
pub fn generic_signed_type(
    model: &MatrixModel,
    space: &[Mat],
    seed: u64,
    trials: usize,
) -> Result<GenericSample, GeomError> {
    if space.is_empty() {
        let zero = signed_jordan_type(model, &Mat::zeros(model.dim, model.dim))?;
        return Ok(GenericSample { tableau: zero.clone(), samples: vec![zero] });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(trials);
    let mut h: i64 = 3;
    for _ in 0..trials.max(1) {
        let coeffs: Vec<Q> = space.iter().map(|_| q(rng.gen_range(-h..=h))).collect();
        samples.push(signed_jordan_type(model, &combine(space, &coeffs))?);
        h = h.saturating_mul(2);
    }
    let maxima: BTreeSet<&SignedTableau> = samples
        .iter()
        .filter(|t| !samples.iter().any(|u| u != *t && t.closure_leq(u)))
        .collect();
    if maxima.len() != 1 {
        let names: Vec<String> = maxima.iter().map(|t| t.to_string()).collect();
        return Err(GeomError::Genericity { seed, detail: format!("incomparable maxima {}", names.join(" | ")) });
    }
    let top = (*maxima.iter().next().expect("one maximum")).clone();
    if !samples.iter().all(|t| t.closure_leq(&top)) {
        return Err(GeomError::Genericity { seed, detail: "sample not below the maximum".into() });
    }
    Ok(GenericSample { tableau: top, samples })
}

// ---------------------------------------------------------------------------
// Root types and moves along P_α-fibers
// ---------------------------------------------------------------------------

/// How a simple root acts on a K-orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    ComplexAscent,
    ComplexDescent,
    NoncompactImaginary,
    CompactImaginary,
    Real,
}

impl RootType {
    /// Whether the orbit is not dense in its `P_α`-fiber.
    pub fn is_ascent(self) -> bool {
        matches!(self, RootType::ComplexAscent | RootType::NoncompactImaginary)
    }
}

/// Classifies root `r` at the flag by the image of `stab_k(π_α F)` in `pgl_2` of `F_{a+1}/F_{a-1}`.
pub fn root_type(model: &MatrixModel, frame: &Frame, r: usize) -> Result<RootType, GeomError> {
    let levi: BTreeSet<usize> = [r].into_iter().collect();
    let st = steps(&model.pair, &levi);
    let a = root_position(&model.pair, r);
    let stab = frame.stabilizer(&model.k_idx, &st);
    // Only the 2×2 block at (a, a+1) of each stabilizer element is needed.
    let entry = |c: &[Q], i: usize, j: usize| -> Q {
        model.k_idx.iter().zip(c).filter(|(_, cl)| !cl.is_zero()).map(|(&l, cl)| cl * &frame.conj[l][(i, j)]).sum()
    };
    let images: Vec<[Q; 3]> = stab
        .iter()
        .map(|c| [entry(c, a, a) - entry(c, a + 1, a + 1), entry(c, a, a + 1), entry(c, a + 1, a)])
        .collect();
    let img_rows: Vec<Vec<Q>> = images.iter().map(|v| v.to_vec()).collect();
    let img_dim = if img_rows.is_empty() { 0 } else { rank(&Mat::from_rows(3, &img_rows)) };
    // The point F_a moves iff some stabilizer element has a nonzero lower-left entry.
    let moves = images.iter().any(|v| !v[2].is_zero());
    let semisimple = |v: &[Q; 3]| {
        let disc = &v[0] * &v[0] + q(4) * &v[1] * &v[2];
        !disc.is_zero()
    };
    let generator = || images.iter().find(|v| v.iter().any(|x| !x.is_zero())).expect("nonzero image");
    Ok(match (moves, img_dim) {
        (true, 3) => RootType::CompactImaginary,
        (true, 2) => RootType::ComplexDescent,
        (true, 1) if semisimple(generator()) => RootType::Real,
        (true, 1) => RootType::ComplexDescent,
        (false, 2) => RootType::ComplexAscent,
        (false, 1) if semisimple(generator()) => RootType::NoncompactImaginary,
        (false, 1) => RootType::ComplexAscent,
        (m, d) => return Err(GeomError::Model(format!("impossible pgl2 image (moves {m}, dim {d})"))),
    })
}

/// Moves the flag within its `P_α`-fiber: `v_a ↦ v_a + t v_{a+1}`, keeping symplectic bases adapted.
pub fn move_along_root(model: &MatrixModel, flag: &FlagRep, r: usize, t: i64) -> Result<FlagRep, GeomError> {
    let n = model.dim;
    let a = root_position(&model.pair, r);
    let mut basis = flag.basis().clone();
    let tq = q(t);
    for i in 0..n {
        let v = &basis[(i, a)] + &tq * &basis[(i, a + 1)];
        basis[(i, a)] = v;
    }
    if model.gram.is_some() && a + 1 != n / 2 {
        // Short root: compensate on the mirror pair (N-1-a-1, N-1-a) so the basis stays adapted.
        let (va, va1) = (flag.vector(a), flag.vector(a + 1));
        let (mirror_lo, mirror_hi) = (n - 2 - a, n - 1 - a);
        let c_a = model.omega(&va, &flag.vector(mirror_hi));
        let c_a1 = model.omega(&va1, &flag.vector(mirror_lo));
        let s = -(&tq * &c_a1) / &c_a;
        for i in 0..n {
            let v = &basis[(i, mirror_lo)] + &s * &basis[(i, mirror_hi)];
            basis[(i, mirror_lo)] = v;
        }
    }
    FlagRep::new(model, basis)
}

// ---------------------------------------------------------------------------
// Orbit invariants
// ---------------------------------------------------------------------------

/// Rank of the matrix whose columns are the given vectors.
fn span_dim(vectors: &[Vec<Q>], rows: usize) -> usize {
    if vectors.is_empty() {
        0
    } else {
        rank(&Mat::from_columns(rows, vectors))
    }
}

/// K-invariant integer data separating the K-orbits of full flags.
///
/// For diagonal `T`: `dim(F_i ∩ V_+)`, `dim(F_i ∩ V_-)`, and `dim(F_i + T F_j)`.
/// For `cgl:n`: `dim(F_i ∩ F'_j)`.
pub fn orbit_invariants(model: &MatrixModel, basis: &Mat) -> Vec<usize> {
    let n = model.dim;
    let mut out = Vec::new();
    match (&model.signs, model.pair) {
        (Some(signs), _) => {
            for sign in [Sign::Plus, Sign::Minus] {
                let other: Vec<usize> = (0..n).filter(|&i| signs[i] != sign).collect();
                for i in 1..=n {
                    let cols: Vec<usize> = (0..i).collect();
                    out.push(i - rank(&basis.select(&other, &cols)));
                }
            }
            let tf = model.theta.mul(basis);
            for i in 1..n {
                for j in 1..n {
                    let mut vecs: Vec<Vec<Q>> = (0..i).map(|a| basis.column(a)).collect();
                    vecs.extend((0..j).map(|b| tf.column(b)));
                    out.push(span_dim(&vecs, n));
                }
            }
        }
        (None, SymmetricPair::ComplexGL(h)) => {
            let top: Vec<usize> = (0..h).collect();
            let bottom: Vec<usize> = (h..2 * h).collect();
            let first = basis.select(&top, &top);
            let second = basis.select(&bottom, &bottom);
            for i in 1..h {
                for j in 1..h {
                    let mut vecs: Vec<Vec<Q>> = (0..i).map(|a| first.column(a)).collect();
                    vecs.extend((0..j).map(|b| second.column(b)));
                    out.push(i + j - span_dim(&vecs, h));
                }
            }
        }
        _ => unreachable!("only cgl models have a non-diagonal involution"),
    }
    out
}

// ---------------------------------------------------------------------------
// Nilpotent orbits: dimensions, closure, Richardson orbits, weighted Dynkin labels
// ---------------------------------------------------------------------------

/// `dim K·ξ = ½ dim G·ξ`; errors if the complex dimension is odd.
pub fn orbit_dim_from_tableau(pair: &SymmetricPair, t: &SignedTableau) -> Result<usize, GeomError> {
    t.validate(pair)?;
    let lam = t.partition();
    let sq: usize = transpose(&lam).iter().map(|c| c * c).sum();
    let complex = match pair.ambient() {
        Ambient::GL(n) => n * n - sq,
        Ambient::Sp(n) => {
            let odd = lam.iter().filter(|p| *p % 2 == 1).count();
            2 * n * n + n - (sq + odd) / 2
        }
    };
    match pair {
        // The complex orbit of (X, -X) in gl_n ⊕ gl_n has twice the dimension of X's orbit.
        SymmetricPair::ComplexGL(_) => Ok(complex),
        _ if complex % 2 == 1 => Err(GeomError::Model(format!("odd orbit dimension {complex} for {t}"))),
        _ => Ok(complex / 2),
    }
}

/// Closure order on nilpotent K-orbits (rank-profile dominance).
pub fn tableau_closure_leq(pair: &SymmetricPair, t1: &SignedTableau, t2: &SignedTableau) -> Result<bool, GeomError> {
    t1.validate(pair)?;
    t2.validate(pair)?;
    Ok(t1.closure_leq(t2))
}

/// Levi block sizes: `(gl block sizes, rank m of the sp_{2m} factor)`.
fn levi_blocks(ambient: Ambient, levi: &BTreeSet<usize>) -> (Vec<usize>, usize) {
    let n = match ambient {
        Ambient::GL(n) => n,
        Ambient::Sp(n) => n,
    };
    let mut blocks = Vec::new();
    let mut cur = 1;
    for i in 1..n {
        if levi.contains(&i) {
            cur += 1;
        } else {
            blocks.push(cur);
            cur = 1;
        }
    }
    match ambient {
        Ambient::GL(_) => {
            blocks.push(cur);
            (blocks, 0)
        }
        Ambient::Sp(_) if levi.contains(&n) => (blocks, cur),
        Ambient::Sp(_) => {
            blocks.push(cur);
            (blocks, 0)
        }
    }
}

/// Partition of the Richardson orbit of the parabolic with the given Levi roots.
pub fn richardson_partition(ambient: Ambient, levi: &BTreeSet<usize>) -> Partition {
    let (blocks, m) = levi_blocks(ambient, levi);
    match ambient {
        Ambient::GL(_) => transpose(&normalize(blocks)),
        Ambient::Sp(_) => {
            let mut cols: Vec<usize> = blocks.iter().flat_map(|&a| [a, a]).collect();
            cols.push(2 * m);
            c_collapse(&transpose(&normalize(cols)))
        }
    }
}

/// Richardson partitions of each factor for a pair (two for `cgl:n`).
pub fn richardson_for_pair(pair: &SymmetricPair, levi: &BTreeSet<usize>) -> Vec<Partition> {
    match *pair {
        SymmetricPair::ComplexGL(n) => {
            let r = n - 1;
            let first: BTreeSet<usize> = levi.iter().copied().filter(|&i| i <= r).collect();
            let second: BTreeSet<usize> = levi.iter().copied().filter(|&i| i > r).map(|i| i - r).collect();
            vec![richardson_partition(pair.ambient(), &first), richardson_partition(pair.ambient(), &second)]
        }
        _ => vec![richardson_partition(pair.ambient(), levi)],
    }
}

/// `dim g/p`, summed over both factors for `cgl:n`.
pub fn dim_g_mod_p(pair: &SymmetricPair, levi: &BTreeSet<usize>) -> usize {
    match *pair {
        SymmetricPair::ComplexGL(n) => {
            let r = n - 1;
            let first: BTreeSet<usize> = levi.iter().copied().filter(|&i| i <= r).collect();
            let second: BTreeSet<usize> = levi.iter().copied().filter(|&i| i > r).map(|i| i - r).collect();
            pair.ambient().dim_g_mod_p(&first) + pair.ambient().dim_g_mod_p(&second)
        }
        _ => pair.ambient().dim_g_mod_p(levi),
    }
}

/// Number of positive roots of the Levi (both factors for `cgl:n`): the fiber dimension of `B → P`.
pub fn levi_positive_roots(pair: &SymmetricPair, levi: &BTreeSet<usize>) -> usize {
    pair.dim_flag_variety() - dim_g_mod_p(pair, levi)
}

/// Nilpotent K-orbits in `K·(g/(k+p))^*`: valid tableaux below the Richardson partition(s).
pub fn nilpotent_orbits_theta(pair: &SymmetricPair, levi: &BTreeSet<usize>) -> Vec<SignedTableau> {
    let rich = richardson_for_pair(pair, levi);
    all_valid(pair).into_iter().filter(|t| rich.iter().all(|r| dominance_leq(&t.partition(), r))).collect()
}

/// Weighted Dynkin labels (`N−1` labels for `GL(N)`, `n` for `Sp(2n)`).
pub fn weighted_dynkin(ambient: Ambient, lambda: &[usize]) -> Vec<i64> {
    let mut h: Vec<i64> = lambda
        .iter()
        .flat_map(|&p| (0..p).map(move |j| p as i64 - 1 - 2 * j as i64))
        .collect();
    h.sort_unstable_by(|a, b| b.cmp(a));
    match ambient {
        Ambient::GL(_) => h.windows(2).map(|w| w[0] - w[1]).collect(),
        Ambient::Sp(n) => {
            let mut labels: Vec<i64> = h[..n].windows(2).map(|w| w[0] - w[1]).collect();
            labels.push(2 * h[n - 1]);
            labels
        }
    }
}

/// Even orbits have all weighted Dynkin labels in `{0, 2}`.
pub fn is_even(ambient: Ambient, lambda: &[usize]) -> bool {
    weighted_dynkin(ambient, lambda).iter().all(|&l| l == 0 || l == 2)
}

/// The parabolic whose Levi is generated by the 0-labelled simple roots of an even orbit.
pub fn parabolic_from_even_orbit(ambient: Ambient, lambda: &[usize]) -> Result<BTreeSet<usize>, GeomError> {
    if !is_even(ambient, lambda) {
        return Err(GeomError::NotEven(lambda.to_vec()));
    }
    Ok(weighted_dynkin(ambient, lambda)
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == 0)
        .map(|(i, _)| i + 1)
        .collect())
}

// ---------------------------------------------------------------------------
// The orbit correspondence
// ---------------------------------------------------------------------------

/// `Φ_B` of one orbit: the generic signed type of its conormal space at the Borel level.
pub fn phi_b(kgb: &Kgb, i: usize, seed: u64, trials: usize) -> Result<SignedTableau, GeomError> {
    let space = conormal_space(&kgb.model, &kgb.orbits[i].frame, &BTreeSet::new());
    Ok(generic_signed_type(&kgb.model, &space, mix_seed(seed, i as u64), trials)?.tableau)
}

/// `Φ_B` for every orbit, indexed like [`Kgb::orbits`]. Orbits are sampled in
/// parallel with independent per-orbit seeds, so the result does not depend on
/// the schedule.
pub fn phi_b_table(kgb: &Kgb, seed: u64, trials: usize) -> Result<Vec<SignedTableau>, GeomError> {
    (0..kgb.len()).into_par_iter().map(|i| phi_b(kgb, i, seed, trials)).collect()
}

fn levi_mask(levi: &BTreeSet<usize>) -> u64 {
    levi.iter().fold(0u64, |m, &r| m | 1u64 << (r % 64))
}

/// `Φ_P` of a class of `K\P`: `Φ_B(Q_C)`, cross-checked against the generic
/// signed type of the conormal space of the partial flag at `Q_C`.
pub fn phi_p(
    kgb: &Kgb,
    levi: &BTreeSet<usize>,
    class: &PClass,
    table: &[SignedTableau],
    seed: u64,
    trials: usize,
) -> Result<SignedTableau, GeomError> {
    let frame = &kgb.orbits[class.top].frame;
    let space = conormal_space(&kgb.model, frame, levi);
    let task = mix_seed(mix_seed(seed, levi_mask(levi)), class.top as u64);
    let direct = generic_signed_type(&kgb.model, &space, task, trials)?.tableau;
    if direct != table[class.top] {
        return Err(GeomError::Model(format!(
            "Φ_P of the class of {} is {direct} on the partial flag but {} on the full flag",
            kgb.orbits[class.top].id, table[class.top]
        )));
    }
    Ok(direct)
}

/// Whether a nilpotent K-orbit meets the Richardson orbit of `P`: `dim O_K = dim g/p`.
pub fn is_p_regular(pair: &SymmetricPair, levi: &BTreeSet<usize>, t: &SignedTableau) -> Result<bool, GeomError> {
    Ok(orbit_dim_from_tableau(pair, t)? == dim_g_mod_p(pair, levi))
}

/// Everything known about one class of `K\P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    /// Id of the dense member `Q_C`.
    pub id: String,
    pub dim: usize,
    pub phi: SignedTableau,
    /// Minimal in the full closure order on `K\P`.
    pub closed: bool,
    pub regular: bool,
    /// `#Φ_P⁻¹(Φ_P(class))` counted from the classes.
    pub geometric_fiber: usize,
    /// The same count predicted from Weyl-group data.
    pub predicted_fiber: usize,
}

/// The correspondence on `K\P`, with both fiber counts for every tableau.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub classes: Vec<PClass>,
    pub records: Vec<ClassRecord>,
    pub weak: ClosurePoset,
    pub full: ClosurePoset,
    /// `(tableau, geometric, predicted)` for every tableau of the pair where either count is nonzero.
    pub fibers: Vec<(SignedTableau, usize, usize)>,
}

impl Correspondence {
    /// Computes classes, posets, `Φ_P`, regularity, and fiber counts.
    pub fn new(
        kgb: &Kgb,
        par: &ParabolicType,
        table: &[SignedTableau],
        seed: u64,
        trials: usize,
    ) -> Result<Correspondence, GeomError> {
        let pair = kgb.pair;
        let classes = project_to_p(kgb, par).map_err(|e| GeomError::Model(e.to_string()))?;
        let (weak, full) = closure_orders_on_p(kgb, &classes);
        let phis: Vec<SignedTableau> = classes
            .par_iter()
            .map(|c| phi_p(kgb, &par.levi, c, table, seed, trials))
            .collect::<Result<_, _>>()?;

        let mut geometric: BTreeMap<SignedTableau, usize> = BTreeMap::new();
        for t in &phis {
            *geometric.entry(t.clone()).or_default() += 1;
        }
        let predict = |t: &SignedTableau| -> Result<usize, GeomError> {
            let n = predicted_fiber_size(&pair, &par.levi, t).map_err(|e| GeomError::Model(e.to_string()))?;
            usize::try_from(n).map_err(|_| GeomError::Model("fiber size overflow".into()))
        };
        let mut fibers = Vec::new();
        for t in all_valid(&pair) {
            let (g, p) = (geometric.get(&t).copied().unwrap_or(0), predict(&t)?);
            if g != 0 || p != 0 {
                fibers.push((t, g, p));
            }
        }

        let mut records = Vec::with_capacity(classes.len());
        for (c, (class, phi)) in classes.iter().zip(&phis).enumerate() {
            records.push(ClassRecord {
                id: kgb.orbits[class.top].id.clone(),
                dim: class.dim,
                phi: phi.clone(),
                closed: !full.edges.iter().any(|e| e.to == c),
                regular: is_p_regular(&pair, &par.levi, phi)?,
                geometric_fiber: geometric[phi],
                predicted_fiber: predict(phi)?,
            });
        }
        Ok(Correspondence { classes, records, weak, full, fibers })
    }

    /// Whether geometric and predicted fiber sizes agree for every tableau.
    pub fn fibers_agree(&self) -> bool {
        self.fibers.iter().all(|(_, g, p)| g == p)
    }

    /// Indices of the P-regular classes.
    pub fn regular(&self) -> Vec<usize> {
        (0..self.records.len()).filter(|&c| self.records[c].regular).collect()
    }
}
