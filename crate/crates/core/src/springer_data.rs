//! The Springer correspondence for types A and C, component groups of
//! nilpotent centralizers, the image of the K-component group, and the
//! resulting fiber counts for the orbit correspondence.
//!
//! # Normalization
//!
//! The zero orbit corresponds to the sign representation and the regular
//! orbit to the trivial one. In type A the orbit `λ` corresponds to the Specht
//! module `S^λ` (only the trivial local system occurs).
//!
//! In type C the orbit `λ` (a partition of `2n`, odd parts with even
//! multiplicity) with local system `ψ` is sent to a bipartition by Lusztig
//! symbols. Write `λ` increasingly, padded with a zero to an odd number of parts
//! `λ_1 ≤ … ≤ λ_{2m+1}`, and set `v_j = λ_j + j - 1`. Even entries `v = 2t`
//! give the top row `t` of the symbol, odd entries `v = 2t + 1` the bottom row.
//! Subtracting `0, 1, 2, …` from the sorted rows yields `(α, β)`.
//!
//! The component group has one generator per distinct even part. A local
//! system is encoded by which generators act by `-1`. Its symbol is obtained
//! by shifting the `v_j` before splitting:
//!
//! * even parts of even multiplicity: each maximal block of flipped parts
//!   that are adjacent in the sorted list lowers `v` at the block's first
//!   position by one and raises it at the last position by one;
//! * even parts of odd multiplicity: flipped parts are paired off in
//!   increasing order. Each pair shifts like a block spanning from the first
//!   part to the second. An unpaired flip lies outside the Springer image.
//!
//! A shifted sequence that does not split into a valid symbol (repeated entries
//! in a row, or wrong row lengths) lies outside the Springer image. This rule
//! is the trivial-local-system algorithm plus the shift rule. It agrees with
//! the correspondence for every pair used here: trivial local systems, and
//! all local systems on orbits whose even parts all have even multiplicity.
//! It is injective with the right number of images through rank 6.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::partition::{is_partition, is_symplectic, multiplicities, Partition};
use crate::tableau::SignedTableau;
use crate::weyl_char::{dimension, sign_multiplicity, LeviType, WIrrep, WeylError, WeylType};

/// Errors raised by the Springer-correspondence layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpringerError {
    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),
    #[error("character has {got} values but the component group has {want} generators")]
    CharacterMismatch { got: usize, want: usize },
    #[error("invalid parabolic: {0}")]
    InvalidParabolic(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Tableau(#[from] crate::tableau::TableauError),
}

/// The four implemented symmetric pairs `(g, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetricPair {
    /// `(gl_n ⊕ gl_n, diagonal gl_n)`: the complex group `GL(n, ℂ)` viewed as a real group.
    ComplexGL(usize),
    /// `(gl_{p+q}, gl_p ⊕ gl_q)`: `U(p, q)`.
    Upq(usize, usize),
    /// `(sp_{2n}, gl_n)`: `Sp(2n, ℝ)`.
    SpR(usize),
    /// `(sp_{2p+2q}, sp_{2p} ⊕ sp_{2q})`: `Sp(p, q)`.
    SpPQ(usize, usize),
}

/// A complex classical group with its defining dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    /// `GL(n)`, acting on `ℂ^n`.
    GL(usize),
    /// `Sp(2n)`, acting on `ℂ^{2n}`.
    Sp(usize),
}

impl Ambient {
    /// Weyl group.
    pub fn weyl(&self) -> WeylType {
        match *self {
            Ambient::GL(n) => WeylType::a(n),
            Ambient::Sp(n) => WeylType::bc(n),
        }
    }

    /// Number of simple roots.
    pub fn rank(&self) -> usize {
        match *self {
            Ambient::GL(n) => n.saturating_sub(1),
            Ambient::Sp(n) => n,
        }
    }

    /// Dimension of the defining representation.
    pub fn defining_dim(&self) -> usize {
        match *self {
            Ambient::GL(n) => n,
            Ambient::Sp(n) => 2 * n,
        }
    }

    /// Number of positive roots.
    pub fn positive_roots(&self) -> usize {
        match *self {
            Ambient::GL(n) => n * n.saturating_sub(1) / 2,
            Ambient::Sp(n) => n * n,
        }
    }

    /// Number of positive roots of the Levi factor generated by the given simple roots.
    pub fn levi_positive_roots(&self, levi: &BTreeSet<usize>) -> usize {
        let roots: Vec<usize> = levi.iter().copied().collect();
        let l = LeviType::from_simple_roots(&self.weyl(), &roots).expect("validated parabolic");
        l.factors
            .iter()
            .map(|f| match f {
                crate::weyl_char::LeviFactor::Sym(a) => a * (a - 1) / 2,
                crate::weyl_char::LeviFactor::BC(m) => m * m,
            })
            .sum()
    }

    /// Dimension of `g/p` for the parabolic with the given Levi simple roots.
    pub fn dim_g_mod_p(&self, levi: &BTreeSet<usize>) -> usize {
        self.positive_roots() - self.levi_positive_roots(levi)
    }
}

impl SymmetricPair {
    /// The complex group `G` of one factor (for `ComplexGL`, each of the two factors).
    pub fn ambient(&self) -> Ambient {
        match *self {
            SymmetricPair::ComplexGL(n) => Ambient::GL(n),
            SymmetricPair::Upq(p, q) => Ambient::GL(p + q),
            SymmetricPair::SpR(n) => Ambient::Sp(n),
            SymmetricPair::SpPQ(p, q) => Ambient::Sp(p + q),
        }
    }

    /// Number of boxes of the tableaux labelling nilpotent K-orbits.
    pub fn defining_dim(&self) -> usize {
        self.ambient().defining_dim()
    }

    pub fn is_symplectic(&self) -> bool {
        matches!(self.ambient(), Ambient::Sp(_))
    }

    /// Number of simple roots of the full root system (twice the factor rank for `ComplexGL`).
    pub fn num_simple_roots(&self) -> usize {
        match *self {
            SymmetricPair::ComplexGL(n) => 2 * n.saturating_sub(1),
            _ => self.ambient().rank(),
        }
    }

    /// Dimension of the full flag variety of `G` (both factors for `ComplexGL`).
    pub fn dim_flag_variety(&self) -> usize {
        match *self {
            SymmetricPair::ComplexGL(_) => 2 * self.ambient().positive_roots(),
            _ => self.ambient().positive_roots(),
        }
    }

    /// Dimension of the flag variety of `K`: the dimension of a closed K-orbit on the flag variety.
    pub fn dim_k_flag_variety(&self) -> usize {
        let tri = |a: usize| a * a.saturating_sub(1) / 2;
        match *self {
            SymmetricPair::ComplexGL(n) => tri(n),
            SymmetricPair::Upq(p, q) => tri(p) + tri(q),
            SymmetricPair::SpR(n) => tri(n),
            SymmetricPair::SpPQ(p, q) => p * p + q * q,
        }
    }

    fn check_positive(&self) -> Result<(), String> {
        let ok = match *self {
            SymmetricPair::ComplexGL(n) | SymmetricPair::SpR(n) => n >= 1,
            SymmetricPair::Upq(p, q) | SymmetricPair::SpPQ(p, q) => p + q >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("rank must be positive in {self}"))
        }
    }
}

impl fmt::Display for SymmetricPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SymmetricPair::ComplexGL(n) => write!(f, "cgl:{n}"),
            SymmetricPair::Upq(p, q) => write!(f, "upq:{p},{q}"),
            SymmetricPair::SpR(n) => write!(f, "spr:{n}"),
            SymmetricPair::SpPQ(p, q) => write!(f, "sppq:{p},{q}"),
        }
    }
}

impl FromStr for SymmetricPair {
    type Err = String;

    /// Parses `cgl:n`, `upq:p,q`, `spr:n`, `sppq:p,q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, args) = s.split_once(':').ok_or_else(|| format!("missing `:` in pair `{s}`"))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| format!("bad number `{a}` in pair `{s}`")))
            .collect::<Result<_, _>>()?;
        let pair = match (kind.trim(), nums.as_slice()) {
            ("cgl", [n]) => SymmetricPair::ComplexGL(*n),
            ("upq", [p, q]) => SymmetricPair::Upq(*p, *q),
            ("spr", [n]) => SymmetricPair::SpR(*n),
            ("sppq", [p, q]) => SymmetricPair::SpPQ(*p, *q),
            _ => return Err(format!("unknown pair `{s}` (expected cgl:n, upq:p,q, spr:n, sppq:p,q)")),
        };
        pair.check_positive()?;
        Ok(pair)
    }
}

/// A complex nilpotent orbit of `gl_n` or `sp_{2n}`, labelled by its Jordan type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NilpotentOrbitC {
    pub ambient: Ambient,
    pub lambda: Partition,
}

impl NilpotentOrbitC {
    pub fn new(ambient: Ambient, lambda: Partition) -> Result<Self, SpringerError> {
        let o = NilpotentOrbitC { ambient, lambda };
        o.check()?;
        Ok(o)
    }

    fn check(&self) -> Result<(), SpringerError> {
        let size: usize = self.lambda.iter().sum();
        let ok = is_partition(&self.lambda)
            && size == self.ambient.defining_dim()
            && (matches!(self.ambient, Ambient::GL(_)) || is_symplectic(&self.lambda));
        if ok {
            Ok(())
        } else {
            Err(SpringerError::InvalidOrbit(format!("{:?} for {:?}", self.lambda, self.ambient)))
        }
    }
}

/// The component group `A_G(ξ)`: an elementary abelian 2-group with one
/// generator per listed part value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AGroup {
    /// The part value labelling each generator, in decreasing order.
    pub generators: Vec<usize>,
}

impl AGroup {
    pub fn order(&self) -> usize {
        1 << self.generators.len()
    }

    /// All characters, starting with the trivial one.
    pub fn characters(&self) -> Vec<ACharacter> {
        let k = self.generators.len();
        (0..(1usize << k))
            .map(|mask| ACharacter {
                values: (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(),
            })
            .collect()
    }
}

/// A character of an [`AGroup`]: the value `±1` on each generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ACharacter {
    pub values: Vec<i8>,
}

impl ACharacter {
    pub fn trivial(k: usize) -> Self {
        ACharacter { values: vec![1; k] }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }
}

/// Image of `A_K(ξ)` in `A_G(ξ)`; for the implemented pairs it is either trivial or everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AkImage {
    pub group: AGroup,
    pub full: bool,
}

impl AkImage {
    /// Whether a character of `A_G` is trivial on the image.
    pub fn kills(&self, psi: &ACharacter) -> bool {
        !self.full || psi.is_trivial()
    }
}

/// `A_G(ξ)` for a complex orbit: trivial for GL, one generator per distinct even part for Sp.
pub fn component_group_g(orbit: &NilpotentOrbitC) -> Result<AGroup, SpringerError> {
    orbit.check()?;
    Ok(match orbit.ambient {
        Ambient::GL(_) => AGroup { generators: vec![] },
        Ambient::Sp(_) => AGroup {
            generators: multiplicities(&orbit.lambda)
                .into_iter()
                .map(|(v, _)| v)
                .filter(|v| v % 2 == 0)
                .collect(),
        },
    })
}

/// Splits a shifted sequence into a symbol and reads off the bipartition.
fn symbol_to_bipartition(v: &[i64], n: usize) -> Option<WIrrep> {
    let mut top: Vec<i64> = v.iter().filter(|x| *x % 2 == 0).map(|x| x / 2).collect();
    let mut bottom: Vec<i64> = v.iter().filter(|x| x.rem_euclid(2) == 1).map(|x| (x - 1) / 2).collect();
    if v.iter().any(|x| *x < 0) || top.len() != bottom.len() + 1 {
        return None;
    }
    top.sort_unstable();
    bottom.sort_unstable();
    if top.windows(2).any(|w| w[0] == w[1]) || bottom.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let mut alpha: Vec<usize> =
        top.iter().enumerate().map(|(i, t)| (t - i as i64) as usize).filter(|&x| x > 0).collect();
    let mut beta: Vec<usize> =
        bottom.iter().enumerate().map(|(i, b)| (b - i as i64) as usize).filter(|&x| x > 0).collect();
    alpha.sort_unstable_by(|a, b| b.cmp(a));
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let size: usize = alpha.iter().sum::<usize>() + beta.iter().sum::<usize>();
    (size == n).then_some(WIrrep::BC(alpha, beta))
}

/// Type C Springer correspondence; see the module documentation.
fn springer_type_c(lambda: &[usize], n: usize, group: &AGroup, psi: &ACharacter) -> Option<WIrrep> {
    let mut asc: Vec<usize> = lambda.iter().rev().copied().collect();
    if asc.len() % 2 == 0 {
        asc.insert(0, 0);
    }
    let mut v: Vec<i64> = asc.iter().enumerate().map(|(j, &p)| (p + j) as i64).collect();
    // (value, first index, last index) of each even part, increasing.
    let run = |value: usize| -> (usize, usize) {
        let first = asc.iter().position(|&p| p == value).expect("part present");
        let last = asc.iter().rposition(|&p| p == value).expect("part present");
        (first, last)
    };
    let mut flipped: Vec<usize> = group
        .generators
        .iter()
        .zip(&psi.values)
        .filter(|(_, &s)| s == -1)
        .map(|(&g, _)| g)
        .collect();
    flipped.sort_unstable();
    let (even_mult, odd_mult): (Vec<usize>, Vec<usize>) =
        flipped.into_iter().partition(|&g| (run(g).1 - run(g).0 + 1) % 2 == 0);
    // Maximal blocks of adjacent flipped runs of even multiplicity.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for g in even_mult {
        let (f, l) = run(g);
        match blocks.last_mut() {
            Some(b) if b.1 + 1 == f => b.1 = l,
            _ => blocks.push((f, l)),
        }
    }
    if odd_mult.len() % 2 == 1 {
        return None;
    }
    for pair in odd_mult.chunks(2) {
        blocks.push((run(pair[0]).0, run(pair[1]).1));
    }
    for (f, l) in blocks {
        v[f] -= 1;
        v[l] += 1;
    }
    symbol_to_bipartition(&v, n)
}

/// The Weyl-group irreducible attached to `(orbit, ψ)`, or `None` outside the Springer image.
pub fn springer_irrep(orbit: &NilpotentOrbitC, psi: &ACharacter) -> Result<Option<WIrrep>, SpringerError> {
    let group = component_group_g(orbit)?;
    if psi.values.len() != group.generators.len() || psi.values.iter().any(|&v| v != 1 && v != -1) {
        return Err(SpringerError::CharacterMismatch { got: psi.values.len(), want: group.generators.len() });
    }
    Ok(match orbit.ambient {
        Ambient::GL(_) => Some(WIrrep::A(orbit.lambda.clone())),
        Ambient::Sp(n) => springer_type_c(&orbit.lambda, n, &group, psi),
    })
}

/// All `(irrep, ψ)` constituents of the Springer representation of an orbit.
pub fn springer_rep_full(orbit: &NilpotentOrbitC) -> Result<Vec<(WIrrep, ACharacter)>, SpringerError> {
    let group = component_group_g(orbit)?;
    let mut out = Vec::new();
    for psi in group.characters() {
        if let Some(sigma) = springer_irrep(orbit, &psi)? {
            out.push((sigma, psi));
        }
    }
    Ok(out)
}

/// The image of `A_K(ξ)` in `A_G(ξ)` for the orbit of a tableau.
pub fn ak_image(pair: &SymmetricPair, t: &SignedTableau) -> Result<AkImage, SpringerError> {
    t.validate(pair)?;
    let orbit = NilpotentOrbitC::new(pair.ambient(), t.partition())?;
    let group = component_group_g(&orbit)?;
    let full = matches!(pair, SymmetricPair::SpR(_)) && !group.generators.is_empty();
    Ok(AkImage { group, full })
}

/// An irreducible representation of the Weyl group of the pair: `W`, or `W × W` for `ComplexGL`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairIrrep {
    Single(WIrrep),
    Outer(WIrrep, WIrrep),
}

impl fmt::Display for PairIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairIrrep::Single(s) => write!(f, "{s}"),
            PairIrrep::Outer(a, b) => write!(f, "{a}⊠{b}"),
        }
    }
}

impl PairIrrep {
    pub fn dimension(&self, w: &WeylType) -> Result<BigInt, SpringerError> {
        Ok(match self {
            PairIrrep::Single(s) => dimension(w, s)?,
            PairIrrep::Outer(a, b) => dimension(w, a)? * dimension(w, b)?,
        })
    }
}

/// `Sp(ξ)^{A_K}` as a multiset of Weyl-group irreducibles.
pub fn sp_invariants(pair: &SymmetricPair, t: &SignedTableau) -> Result<Vec<PairIrrep>, SpringerError> {
    let image = ak_image(pair, t)?;
    let orbit = NilpotentOrbitC::new(pair.ambient(), t.partition())?;
    let mut out = Vec::new();
    for (sigma, psi) in springer_rep_full(&orbit)? {
        if image.kills(&psi) {
            out.push(match pair {
                SymmetricPair::ComplexGL(_) => PairIrrep::Outer(sigma.clone(), sigma),
                _ => PairIrrep::Single(sigma),
            });
        }
    }
    Ok(out)
}

/// Splits the Levi simple roots of a pair into per-factor Levi subgroups of `W`.
///
/// For `ComplexGL(n)` roots `1..n-1` belong to the first factor and `n..2n-2`
/// to the second.
pub fn levi_for_pair(pair: &SymmetricPair, levi: &BTreeSet<usize>) -> Result<Vec<LeviType>, SpringerError> {
    let w = pair.ambient().weyl();
    let r = pair.ambient().rank();
    if let Some(bad) = levi.iter().find(|&&i| i == 0 || i > pair.num_simple_roots()) {
        return Err(SpringerError::InvalidParabolic(format!("simple root {bad} out of range for {pair}")));
    }
    Ok(match pair {
        SymmetricPair::ComplexGL(_) => {
            let first: Vec<usize> = levi.iter().copied().filter(|&i| i <= r).collect();
            let second: Vec<usize> = levi.iter().copied().filter(|&i| i > r).map(|i| i - r).collect();
            vec![LeviType::from_simple_roots(&w, &first)?, LeviType::from_simple_roots(&w, &second)?]
        }
        _ => vec![LeviType::from_simple_roots(&w, &levi.iter().copied().collect::<Vec<_>>())?],
    })
}

fn pair_sign_multiplicity(w: &WeylType, levis: &[LeviType], sigma: &PairIrrep) -> Result<BigInt, SpringerError> {
    Ok(match sigma {
        PairIrrep::Single(s) => sign_multiplicity(w, &levis[0], s)?,
        PairIrrep::Outer(a, b) => sign_multiplicity(w, &levis[0], a)? * sign_multiplicity(w, &levis[1], b)?,
    })
}

/// Predicted `#Φ_P^{-1}(O_K)`: `dim Hom_{W(P)}(sgn, Sp(ξ)^{A_K})`.
pub fn predicted_fiber_size(
    pair: &SymmetricPair,
    levi: &BTreeSet<usize>,
    t: &SignedTableau,
) -> Result<BigInt, SpringerError> {
    let w = pair.ambient().weyl();
    let levis = levi_for_pair(pair, levi)?;
    let mut total = BigInt::zero();
    for sigma in sp_invariants(pair, t)? {
        total += pair_sign_multiplicity(&w, &levis, &sigma)?;
    }
    Ok(total)
}

/// Degree of the moment map of `T^*P` onto its image.
pub fn moment_degree(ambient: Ambient, levi: &BTreeSet<usize>) -> Result<BigInt, SpringerError> {
    let w = ambient.weyl();
    let roots: Vec<usize> = levi.iter().copied().collect();
    let l = LeviType::from_simple_roots(&w, &roots)?;
    let rich = crate::moment_geom::richardson_partition(ambient, levi);
    let orbit = NilpotentOrbitC::new(ambient, rich)?;
    let mut total = BigInt::zero();
    for (sigma, _) in springer_rep_full(&orbit)? {
        total += sign_multiplicity(&w, &l, &sigma)?;
    }
    Ok(total)
}
