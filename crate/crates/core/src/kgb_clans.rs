//! K-orbits on the full flag variety: clans, orbit dimensions, simple-root
//! actions, the weak and full closure orders, and projection to partial flag
//! varieties.
//!
//! # Clans
//!
//! A clan for `upq:p,q` is a word of length `p + q` over `+`, `-`, and pair
//! labels; each label occurs exactly twice, and `#+ + #pairs = p`,
//! `#- + #pairs = q`. Labels are renumbered by first occurrence.
//!
//! Symplectic pairs use clans of the ambient unitary group (`U(n,n)` for
//! `spr:n`, `U(2p,2q)` for `sppq:p,q`) that are symmetric under the mirror
//! `i ↦ N + 1 - i`:
//!
//! | pair     | sign at `i` and at its mirror | pair `(a,b)`                    | self-mirror pair `(a, N+1-a)` |
//! |----------|-------------------------------|---------------------------------|-------------------------------|
//! | `spr:n`  | opposite                      | `(N+1-b, N+1-a)` is also a pair | allowed                       |
//! | `sppq`   | equal                         | `(N+1-b, N+1-a)` is also a pair | forbidden                     |
//!
//! For `cgl:n` a clan is a permutation `w` in one-line notation; its orbit is
//! that of the pair of flags `(F, wF)`.
//!
//! # Geometry as the source of truth
//!
//! [`Kgb::build`] discovers the orbits geometrically. It starts from
//! coordinate flags of the closed orbits and follows every ascent `v_a ↦ v_a + t v_{a+1}`
//! inside `P_α`-fibers. It identifies orbits by the invariants of
//! [`orbit_invariants`] against representatives of the combinatorial clans.
//! The discovered set must equal the enumerated set. The stabilizer dimension
//! of every representative must equal [`clan_dimension`].
//!
//! Root types come from the image of the `P_α`-stabilizer in `pgl_2`.
//! For the dense orbit `Q'` of an ascent `Q →α Q'`, the move is applied with
//! `t = 1`, and with `t = 2` if that does not raise the dimension; no
//! randomness is involved.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::linalg::{q, Mat};
use crate::moment_geom::{
    move_along_root, orbit_dim, orbit_invariants, root_type, Frame, FlagRep, GeomError, MatrixModel, RootType,
};
use crate::springer_data::SymmetricPair;
use crate::tableau::Sign;

/// Errors raised while building or querying orbit data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KgbError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    /// An internal consistency check failed (must never happen).
    #[error("inconsistent orbit data: {0}")]
    Inconsistent(String),
    #[error("invalid parabolic: {0}")]
    InvalidParabolic(String),
    #[error("cannot parse clan `{0}`")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// Clans
// ---------------------------------------------------------------------------

/// One symbol of a clan word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClanSym {
    Plus,
    Minus,
    Pair(usize),
}

/// Combinatorial label of a K-orbit on the full flag variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clan {
    /// Word over `+`, `-`, and pair labels (labels renumbered by first occurrence).
    Word(Vec<ClanSym>),
    /// One-line notation of a permutation of `1..n`.
    Perm(Vec<usize>),
}

const PAIR_CHARS: &[u8] = b"123456789abcdefghijklmnopqrstuvwxyz";

impl Clan {
    /// Renumbers pair labels by first occurrence.
    pub fn canonical(word: &[ClanSym]) -> Clan {
        let mut map: HashMap<usize, usize> = HashMap::new();
        let out = word
            .iter()
            .map(|s| match *s {
                ClanSym::Pair(k) => {
                    let next = map.len() + 1;
                    ClanSym::Pair(*map.entry(k).or_insert(next))
                }
                other => other,
            })
            .collect();
        Clan::Word(out)
    }

    pub fn len(&self) -> usize {
        match self {
            Clan::Word(w) => w.len(),
            Clan::Perm(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Matched pairs `(a, b)`, `a < b`, 0-based (empty for permutations).
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let Clan::Word(w) = self else { return Vec::new() };
        let mut first: HashMap<usize, usize> = HashMap::new();
        let mut out = Vec::new();
        for (i, s) in w.iter().enumerate() {
            if let ClanSym::Pair(k) = s {
                match first.get(k) {
                    Some(&a) => out.push((a, i)),
                    None => {
                        first.insert(*k, i);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Parses the textual form used by [`fmt::Display`].
    pub fn parse(pair: &SymmetricPair, s: &str) -> Result<Clan, KgbError> {
        let bad = || KgbError::Parse(s.to_string());
        let clan = match pair {
            SymmetricPair::ComplexGL(n) => {
                let vals: Vec<usize> = if s.contains(',') {
                    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
                } else {
                    s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
                };
                let mut sorted = vals.clone();
                sorted.sort_unstable();
                if sorted != (1..=*n).collect::<Vec<_>>() {
                    return Err(bad());
                }
                Clan::Perm(vals)
            }
            _ => {
                let word: Vec<ClanSym> = s
                    .bytes()
                    .map(|b| match b {
                        b'+' => Ok(ClanSym::Plus),
                        b'-' => Ok(ClanSym::Minus),
                        _ => PAIR_CHARS.iter().position(|&c| c == b).map(|k| ClanSym::Pair(k + 1)).ok_or_else(bad),
                    })
                    .collect::<Result<_, _>>()?;
                Clan::canonical(&word)
            }
        };
        if !enumerate_clans(pair).contains(&clan) {
            return Err(bad());
        }
        Ok(clan)
    }
}

impl fmt::Display for Clan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clan::Word(w) => {
                for s in w {
                    match s {
                        ClanSym::Plus => write!(f, "+")?,
                        ClanSym::Minus => write!(f, "-")?,
                        ClanSym::Pair(k) => write!(f, "{}", PAIR_CHARS[k - 1] as char)?,
                    }
                }
                Ok(())
            }
            Clan::Perm(p) if p.len() < 10 => {
                for v in p {
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Clan::Perm(p) => {
                let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// All clans of `U(p, q)`.
pub fn unitary_clans(p: usize, q: usize) -> Vec<Vec<ClanSym>> {
    fn rec(
        n: usize,
        plus: usize,
        minus: usize,
        open: &mut Vec<usize>,
        next: usize,
        cur: &mut Vec<ClanSym>,
        out: &mut Vec<Vec<ClanSym>>,
    ) {
        let pos = cur.len();
        if pos == n {
            if open.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        if n - pos < open.len() {
            return;
        }
        if plus > 0 {
            cur.push(ClanSym::Plus);
            rec(n, plus - 1, minus, open, next, cur, out);
            cur.pop();
        }
        if minus > 0 {
            cur.push(ClanSym::Minus);
            rec(n, plus, minus - 1, open, next, cur, out);
            cur.pop();
        }
        if plus > 0 && minus > 0 {
            cur.push(ClanSym::Pair(next));
            open.push(next);
            rec(n, plus - 1, minus - 1, open, next + 1, cur, out);
            open.pop();
            cur.pop();
        }
        for i in 0..open.len() {
            let k = open.remove(i);
            cur.push(ClanSym::Pair(k));
            rec(n, plus, minus, open, next, cur, out);
            cur.pop();
            open.insert(i, k);
        }
    }
    let mut out = Vec::new();
    rec(p + q, p, q, &mut Vec::new(), 1, &mut Vec::new(), &mut out);
    out
}

/// Whether a unitary clan word is a valid clan of a symplectic pair.
pub fn is_symplectic_clan(pair: &SymmetricPair, clan: &Clan) -> bool {
    let Clan::Word(w) = clan else { return false };
    let n = w.len();
    let mirror = |i: usize| n - 1 - i;
    let pairs = clan.pairs();
    let partner: HashMap<usize, usize> = pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    let skew = match pair {
        SymmetricPair::SpR(_) => true,
        SymmetricPair::SpPQ(..) => false,
        _ => return false,
    };
    (0..n).all(|i| match w[i] {
        ClanSym::Plus | ClanSym::Minus => {
            let want = match (w[i], skew) {
                (ClanSym::Plus, true) | (ClanSym::Minus, false) => ClanSym::Minus,
                _ => ClanSym::Plus,
            };
            w[mirror(i)] == want
        }
        ClanSym::Pair(_) => {
            let j = partner[&i];
            let self_mirror = j == mirror(i);
            partner.get(&mirror(i)) == Some(&mirror(j)) && (skew || !self_mirror)
        }
    })
}

/// All permutations of `1..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}

/// Number of inversions of a permutation.
pub fn inversions(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// The complete, duplicate-free, sorted set of clans of a pair.
pub fn enumerate_clans(pair: &SymmetricPair) -> Vec<Clan> {
    let mut out: Vec<Clan> = match *pair {
        SymmetricPair::ComplexGL(n) => permutations(n).into_iter().map(Clan::Perm).collect(),
        SymmetricPair::Upq(p, q) => unitary_clans(p, q).iter().map(|w| Clan::canonical(w)).collect(),
        SymmetricPair::SpR(n) => unitary_clans(n, n)
            .iter()
            .map(|w| Clan::canonical(w))
            .filter(|c| is_symplectic_clan(pair, c))
            .collect(),
        SymmetricPair::SpPQ(p, q) => unitary_clans(2 * p, 2 * q)
            .iter()
            .map(|w| Clan::canonical(w))
            .filter(|c| is_symplectic_clan(pair, c))
            .collect(),
    };
    out.sort();
    out.dedup();
    out
}

/// `Σ_{pairs a<b} (b − a − #{pairs (s,t) : s < a < t < b})`.
fn unitary_length(clan: &Clan) -> usize {
    let pairs = clan.pairs();
    pairs
        .iter()
        .map(|&(a, b)| b - a - pairs.iter().filter(|&&(s, t)| s < a && a < t && t < b).count())
        .sum()
}

/// Dimension of the K-orbit labelled by a clan.
///
/// * `upq:p,q`: `p(p−1)/2 + q(q−1)/2 + L(c)` with `L` the unitary length above.
/// * `spr:n`, `sppq:p,q`: the closed-orbit dimension plus `(L(c) + m(c) + x(c))/2`,
///   where `L(c)` is the unitary length of the symmetric word, `m(c)` counts
///   self-mirror pairs, and `x(c)` counts pairs `(a,b)` that cross their mirror
///   image `(N+1-b, N+1-a)`.
/// * `cgl:n`: `n(n−1)/2 + ℓ(w)`.
pub fn clan_dimension(pair: &SymmetricPair, clan: &Clan) -> usize {
    let tri = |a: usize| a * a.saturating_sub(1) / 2;
    match (pair, clan) {
        (SymmetricPair::ComplexGL(n), Clan::Perm(w)) => tri(*n) + inversions(w),
        (SymmetricPair::Upq(p, q), Clan::Word(_)) => tri(*p) + tri(*q) + unitary_length(clan),
        (SymmetricPair::SpR(_) | SymmetricPair::SpPQ(..), Clan::Word(w)) => {
            let n = w.len();
            let pairs = clan.pairs();
            let self_mirror = pairs.iter().filter(|&&(a, b)| a + b + 1 == n).count();
            // Each mirror couple {(a,b), (n-1-b, n-1-a)} with a < n-1-b is counted once.
            let crossing_couples = pairs
                .iter()
                .filter(|&&(a, b)| {
                    let (c, d) = (n - 1 - b, n - 1 - a);
                    a < c && c < b && b < d
                })
                .count();
            pair.dim_k_flag_variety() + (unitary_length(clan) + self_mirror + crossing_couples) / 2
        }
        _ => panic!("clan {clan} does not belong to {pair}"),
    }
}

/// Basis of the standard representative flag of a unitary clan word.
///
/// `+` takes the next `V_+` coordinate vector `u`, `-` the next `V_-` vector
/// `w`; a pair `(a, b)` puts `u + w` at `a` and `u` at `b`. For `cgl:n` the
/// first block is the identity and the second has columns `e_{w(1)}, …, e_{w(n)}`.
pub fn clan_basis(model: &MatrixModel, clan: &Clan) -> Mat {
    let n = model.dim;
    let mut basis = Mat::zeros(n, n);
    match clan {
        Clan::Perm(w) => {
            let h = w.len();
            for (a, &v) in w.iter().enumerate() {
                basis[(a, a)] = q(1);
                basis[(h + v - 1, h + a)] = q(1);
            }
        }
        Clan::Word(word) => {
            let signs = model.signs.as_ref().expect("diagonal involution");
            let mut plus = (0..n).filter(|&i| signs[i] == Sign::Plus);
            let mut minus = (0..n).filter(|&i| signs[i] == Sign::Minus);
            let mut pending: HashMap<usize, usize> = HashMap::new();
            for (a, s) in word.iter().enumerate() {
                match *s {
                    ClanSym::Plus => basis[(plus.next().expect("signature"), a)] = q(1),
                    ClanSym::Minus => basis[(minus.next().expect("signature"), a)] = q(1),
                    ClanSym::Pair(k) => match pending.remove(&k) {
                        Some(u) => basis[(u, a)] = q(1),
                        None => {
                            let u = plus.next().expect("signature");
                            basis[(u, a)] = q(1);
                            basis[(minus.next().expect("signature"), a)] = q(1);
                            pending.insert(k, u);
                        }
                    },
                }
            }
        }
    }
    basis
}

/// Coordinate flags of the closed orbits, the starting points of the discovery search.
fn closed_flags(model: &MatrixModel) -> Vec<Mat> {
    let n = model.dim;
    let mut out = Vec::new();
    match model.pair {
        SymmetricPair::ComplexGL(_) => out.push(Mat::identity(n)),
        SymmetricPair::Upq(p, q) => {
            for w in unitary_clans(p, q) {
                if w.iter().all(|s| !matches!(s, ClanSym::Pair(_))) {
                    out.push(clan_basis(model, &Clan::Word(w)));
                }
            }
        }
        SymmetricPair::SpR(h) => {
            // v_i ∈ {e_i, e_{N+1-i}}: one choice per position in the first half.
            for mask in 0..(1usize << h) {
                let mut basis = Mat::zeros(n, n);
                for i in 0..h {
                    let (x, y) = if mask >> i & 1 == 0 { (i, n - 1 - i) } else { (n - 1 - i, i) };
                    basis[(x, i)] = q(1);
                    basis[(y, n - 1 - i)] = q(1);
                }
                out.push(basis);
            }
        }
        SymmetricPair::SpPQ(p, qq) => {
            let h = p + qq;
            for mask in 0..(1usize << h) {
                if (mask as u64).count_ones() as usize != p {
                    continue;
                }
                let mut basis = Mat::zeros(n, n);
                let (mut jp, mut jm) = (0, p);
                for i in 0..h {
                    let j = if mask >> i & 1 == 1 {
                        jp += 1;
                        jp - 1
                    } else {
                        jm += 1;
                        jm - 1
                    };
                    basis[(j, i)] = q(1);
                    basis[(n - 1 - j, n - 1 - i)] = q(1);
                }
                out.push(basis);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// The orbit graph
// ---------------------------------------------------------------------------

/// One K-orbit on the full flag variety.
#[derive(Debug, Clone)]
pub struct KgbOrbit {
    pub clan: Clan,
    /// Canonical string of the clan, used as the orbit id.
    pub id: String,
    pub dim: usize,
    /// A representative flag with cached conjugates.
    pub frame: Frame,
    /// Root type for each simple root `1..=rank` (index `r − 1`).
    pub root_types: Vec<RootType>,
    /// The dense orbit of `π_α⁻¹ π_α(Q)` for each ascent.
    pub ascent: Vec<Option<usize>>,
}

/// All K-orbits on the full flag variety of a pair, sorted by `(dim, id)`.
#[derive(Debug, Clone)]
pub struct Kgb {
    pub pair: SymmetricPair,
    pub model: MatrixModel,
    pub orbits: Vec<KgbOrbit>,
    index: HashMap<Clan, usize>,
}

/// How a simple root acts on one orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootAction {
    pub root_type: RootType,
    /// The dense neighbor for ascents; the orbits below for descents.
    pub neighbors: Vec<usize>,
}

impl Kgb {
    /// Discovers all orbits geometrically and cross-checks them against the clan combinatorics.
    pub fn build(pair: SymmetricPair) -> Result<Kgb, KgbError> {
        let model = MatrixModel::new(pair);
        let rank = pair.num_simple_roots();
        let clans = enumerate_clans(&pair);

        let mut dictionary: HashMap<Vec<usize>, Clan> = HashMap::new();
        for c in &clans {
            let inv = orbit_invariants(&model, &clan_basis(&model, c));
            if let Some(old) = dictionary.insert(inv, c.clone()) {
                return Err(KgbError::Inconsistent(format!("clans {old} and {c} share invariants")));
            }
        }
        let identify = |flag: &FlagRep| -> Result<Clan, KgbError> {
            dictionary
                .get(&orbit_invariants(&model, flag.basis()))
                .cloned()
                .ok_or_else(|| KgbError::Inconsistent(format!("flag outside every clan: {:?}", flag.basis())))
        };

        // Breadth-first search over ascents, in deterministic order.
        let mut found: BTreeMap<Clan, (Frame, usize)> = BTreeMap::new();
        let mut queue: VecDeque<Clan> = VecDeque::new();
        for basis in closed_flags(&model) {
            let flag = FlagRep::new(&model, basis)?;
            let clan = identify(&flag)?;
            let frame = Frame::new(&model, flag);
            let dim = orbit_dim(&model, &frame);
            if dim != pair.dim_k_flag_variety() {
                return Err(KgbError::Inconsistent(format!("closed orbit {clan} has dimension {dim}")));
            }
            if !found.contains_key(&clan) {
                queue.push_back(clan.clone());
                found.insert(clan, (frame, dim));
            }
        }
        let mut types: BTreeMap<Clan, Vec<RootType>> = BTreeMap::new();
        let mut edges: BTreeMap<Clan, Vec<Option<Clan>>> = BTreeMap::new();
        while let Some(clan) = queue.pop_front() {
            let (frame, dim) = found[&clan].clone();
            let mut ts = Vec::with_capacity(rank);
            let mut es = Vec::with_capacity(rank);
            for r in 1..=rank {
                let t = root_type(&model, &frame, r)?;
                ts.push(t);
                if !t.is_ascent() {
                    es.push(None);
                    continue;
                }
                // Orbits already found keep their geometrically computed dimension,
                // so a frame is only built for a newly discovered orbit.
                let mut reached = None;
                for step in [1, 2] {
                    let moved = move_along_root(&model, &frame.flag, r, step)?;
                    let target = identify(&moved)?;
                    let d = match found.get(&target) {
                        Some((_, d)) => *d,
                        None => {
                            let moved = Frame::new(&model, moved);
                            let d = orbit_dim(&model, &moved);
                            if d == dim + 1 {
                                queue.push_back(target.clone());
                                found.insert(target.clone(), (moved, d));
                            }
                            d
                        }
                    };
                    if d == dim + 1 {
                        reached = Some(target);
                        break;
                    }
                }
                let Some(target) = reached else {
                    return Err(KgbError::Inconsistent(format!("ascent {r} from {clan} does not raise the dimension")));
                };
                es.push(Some(target));
            }
            types.insert(clan.clone(), ts);
            edges.insert(clan, es);
        }

        let discovered: BTreeSet<&Clan> = found.keys().collect();
        let expected: BTreeSet<&Clan> = clans.iter().collect();
        if discovered != expected {
            return Err(KgbError::Inconsistent(format!(
                "discovered {} orbits but the clan enumeration has {}",
                discovered.len(),
                expected.len()
            )));
        }
        for (clan, (_, dim)) in &found {
            let formula = clan_dimension(&pair, clan);
            if formula != *dim {
                return Err(KgbError::Inconsistent(format!(
                    "clan {clan}: stabilizer dimension {dim}, formula {formula}"
                )));
            }
        }

        let mut order: Vec<Clan> = found.keys().cloned().collect();
        order.sort_by_key(|c| (found[c].1, c.to_string()));
        let index: HashMap<Clan, usize> = order.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let orbits = order
            .iter()
            .map(|c| KgbOrbit {
                clan: c.clone(),
                id: c.to_string(),
                dim: found[c].1,
                frame: found[c].0.clone(),
                root_types: types[c].clone(),
                ascent: edges[c].iter().map(|e| e.as_ref().map(|t| index[t])).collect(),
            })
            .collect();
        Ok(Kgb { pair, model, orbits, index })
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.pair.num_simple_roots()
    }

    pub fn index_of(&self, clan: &Clan) -> Option<usize> {
        self.index.get(clan).copied()
    }

    pub fn index_of_id(&self, id: &str) -> Option<usize> {
        self.orbits.iter().position(|o| o.id == id)
    }

    /// The representative flag of an orbit.
    pub fn representative_flag(&self, i: usize) -> &FlagRep {
        &self.orbits[i].frame.flag
    }

    /// Simple-root action on orbit `i`.
    pub fn root_action(&self, i: usize, r: usize) -> RootAction {
        let root_type = self.orbits[i].root_types[r - 1];
        let neighbors = if root_type.is_ascent() {
            self.orbits[i].ascent[r - 1].into_iter().collect()
        } else {
            (0..self.len()).filter(|&j| self.orbits[j].ascent[r - 1] == Some(i)).collect()
        };
        RootAction { root_type, neighbors }
    }
}

// ---------------------------------------------------------------------------
// Closure posets
// ---------------------------------------------------------------------------

/// Edge style: solid for weak-order relations, dashed for saturation relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeStyle {
    Solid,
    Dashed,
}

/// A covering edge `from < to`, optionally labelled by a simple root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosetEdge {
    pub from: usize,
    pub to: usize,
    pub label: Option<usize>,
    pub style: EdgeStyle,
}

/// A graded DAG of orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosurePoset {
    pub ids: Vec<String>,
    pub dims: Vec<usize>,
    pub edges: Vec<PosetEdge>,
}

impl ClosurePoset {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// `reach[i][j]` iff `i ≤ j` (reflexive-transitive closure of the edges).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        reachability(self.len(), self.edges.iter().map(|e| (e.from, e.to)))
    }

    /// Whether the edge relation has no directed cycle.
    pub fn is_dag(&self) -> bool {
        let reach = self.reachability();
        self.edges.iter().all(|e| e.from != e.to && !reach[e.to][e.from])
    }

    /// Vertices with no outgoing edge.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.edges.iter().any(|e| e.from == i)).collect()
    }

    /// Vertices with no incoming edge.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.edges.iter().any(|e| e.to == i)).collect()
    }
}

fn reachability(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        adj[a].push(b);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen
        })
        .collect()
}

/// The weak closure order: solid edges `Q →α Q'`.
pub fn weak_order(kgb: &Kgb) -> ClosurePoset {
    let mut edges = Vec::new();
    for (i, o) in kgb.orbits.iter().enumerate() {
        for (r, target) in o.ascent.iter().enumerate() {
            if let Some(j) = target {
                edges.push(PosetEdge { from: i, to: *j, label: Some(r + 1), style: EdgeStyle::Solid });
            }
        }
    }
    edges.sort();
    ClosurePoset {
        ids: kgb.orbits.iter().map(|o| o.id.clone()).collect(),
        dims: kgb.orbits.iter().map(|o| o.dim).collect(),
        edges,
    }
}

/// Applies the exchange completion until a fixpoint.
///
/// Whenever `Q₄ → Q₂` is an edge (solid or dashed), `Q₂ →α Q₁` and
/// `Q₄ →α Q₃` are solid with `Q₃ ≠ Q₂`, a dashed edge `Q₃ → Q₁` is added
/// unless an edge `Q₃ → Q₁` is already present. Sweeps visit `Q₄` in order
/// of increasing dimension.
pub fn saturate(poset: &ClosurePoset) -> ClosurePoset {
    let mut edges: BTreeSet<PosetEdge> = poset.edges.iter().cloned().collect();
    let mut order: Vec<usize> = (0..poset.len()).collect();
    order.sort_by_key(|&i| (poset.dims[i], i));
    loop {
        let present: BTreeSet<(usize, usize)> = edges.iter().map(|e| (e.from, e.to)).collect();
        let mut added = Vec::new();
        for &q4 in &order {
            for e in edges.iter().filter(|e| e.from == q4) {
                let q2 = e.to;
                for up in edges.iter().filter(|u| u.from == q2 && u.style == EdgeStyle::Solid) {
                    let (q1, alpha) = (up.to, up.label);
                    for side in edges.iter().filter(|s| s.from == q4 && s.style == EdgeStyle::Solid) {
                        let q3 = side.to;
                        if side.label == alpha && q3 != q2 && !present.contains(&(q3, q1)) {
                            added.push(PosetEdge { from: q3, to: q1, label: None, style: EdgeStyle::Dashed });
                        }
                    }
                }
            }
        }
        let before = edges.len();
        edges.extend(added);
        if edges.len() == before {
            break;
        }
    }
    ClosurePoset { ids: poset.ids.clone(), dims: poset.dims.clone(), edges: edges.into_iter().collect() }
}

/// Removes every edge implied by a longer path.
pub fn transitive_reduction(poset: &ClosurePoset) -> ClosurePoset {
    let n = poset.len();
    let mut adj = vec![Vec::new(); n];
    for e in &poset.edges {
        adj[e.from].push(e.to);
    }
    // reach2[a][b]: a path of length ≥ 2 from a to b.
    let reach = poset.reachability();
    let keep: Vec<PosetEdge> = poset
        .edges
        .iter()
        .filter(|e| !adj[e.from].iter().any(|&m| m != e.to && reach[m][e.to]))
        .cloned()
        .collect();
    ClosurePoset { ids: poset.ids.clone(), dims: poset.dims.clone(), edges: keep }
}

/// The full closure order: saturation of the weak order, transitively reduced.
pub fn full_closure_order(kgb: &Kgb) -> ClosurePoset {
    transitive_reduction(&saturate(&weak_order(kgb)))
}

// ---------------------------------------------------------------------------
// Partial flag varieties
// ---------------------------------------------------------------------------

/// A parabolic type: the simple roots of its Levi factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicType {
    pub pair: SymmetricPair,
    pub levi: BTreeSet<usize>,
}

impl ParabolicType {
    pub fn new(pair: SymmetricPair, levi: impl IntoIterator<Item = usize>) -> Result<Self, KgbError> {
        let levi: BTreeSet<usize> = levi.into_iter().collect();
        if let Some(bad) = levi.iter().find(|&&r| r == 0 || r > pair.num_simple_roots()) {
            return Err(KgbError::InvalidParabolic(format!(
                "simple root {bad} out of range 1..={} for {pair}",
                pair.num_simple_roots()
            )));
        }
        Ok(ParabolicType { pair, levi })
    }

    /// The Borel subgroup (empty Levi).
    pub fn borel(pair: SymmetricPair) -> Self {
        ParabolicType { pair, levi: BTreeSet::new() }
    }

    /// Every parabolic type of the pair.
    pub fn all(pair: SymmetricPair) -> Vec<Self> {
        let r = pair.num_simple_roots();
        (0..(1usize << r))
            .map(|mask| ParabolicType { pair, levi: (1..=r).filter(|i| mask >> (i - 1) & 1 == 1).collect() })
            .collect()
    }

    /// Parses a comma list of Levi roots (`""`/`"B"` for the Borel).
    ///
    /// Accepts an optional `levi=` prefix, `α`/`alpha` for root 1, and `β`/`beta` for root 2.
    /// For `cgl:n`, roots `1..n-1` in the plain form are applied to both factors
    /// (root `i` and root `n - 1 + i`); the prefix `raw:` addresses roots
    /// `1..2n-2` individually.
    pub fn parse(pair: SymmetricPair, s: &str) -> Result<Self, KgbError> {
        let s = s.trim();
        let (raw, body) = match s.strip_prefix("raw:") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let body = body.strip_prefix("levi=").unwrap_or(body).trim();
        let mut roots = Vec::new();
        if !(body.is_empty() || body == "B") {
            for tok in body.split(',') {
                let r = match tok.trim() {
                    "α" | "alpha" => 1,
                    "β" | "beta" => 2,
                    t => t
                        .parse::<usize>()
                        .map_err(|_| KgbError::InvalidParabolic(format!("bad simple root `{t}`")))?,
                };
                roots.push(r);
            }
        }
        match pair {
            SymmetricPair::ComplexGL(n) if !raw => {
                if let Some(bad) = roots.iter().find(|&&r| r == 0 || r >= n) {
                    return Err(KgbError::InvalidParabolic(format!("simple root {bad} out of range 1..{n}")));
                }
                let both: Vec<usize> = roots.iter().flat_map(|&r| [r, r + n - 1]).collect();
                ParabolicType::new(pair, both)
            }
            _ => ParabolicType::new(pair, roots),
        }
    }

    /// Dimension of the fibers of `B → P`.
    pub fn fiber_dim(&self) -> usize {
        crate::moment_geom::levi_positive_roots(&self.pair, &self.levi)
    }
}

impl fmt::Display for ParabolicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.levi.is_empty() {
            return write!(f, "B");
        }
        let parts: Vec<String> = self.levi.iter().map(|r| r.to_string()).collect();
        write!(f, "levi={}", parts.join(","))
    }
}

/// An equivalence class of `K\B` mapping to one orbit of `K\P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PClass {
    /// Member orbits (indices into the [`Kgb`]), sorted.
    pub members: Vec<usize>,
    /// `Q_C`, the dense member.
    pub top: usize,
    /// Dimension of the K-orbit on `P`.
    pub dim: usize,
}

/// Groups orbits along Levi-root edges of the weak order and picks `Q_C`.
///
/// Postconditions (checked): each class has a unique orbit of maximal
/// dimension, and it is the only member with no Levi-root ascent.
pub fn project_to_p(kgb: &Kgb, par: &ParabolicType) -> Result<Vec<PClass>, KgbError> {
    if par.pair != kgb.pair {
        return Err(KgbError::InvalidParabolic(format!("{par} is not a parabolic of {}", kgb.pair)));
    }
    let n = kgb.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let nx = parent[y];
            parent[y] = r;
            y = nx;
        }
        r
    }
    for (i, o) in kgb.orbits.iter().enumerate() {
        for &r in &par.levi {
            if let Some(j) = o.ascent[r - 1] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let fiber = par.fiber_dim();
    let mut classes = Vec::new();
    for members in groups.into_values() {
        let max = members.iter().map(|&i| kgb.orbits[i].dim).max().expect("nonempty");
        let tops: Vec<usize> = members.iter().copied().filter(|&i| kgb.orbits[i].dim == max).collect();
        if tops.len() != 1 {
            return Err(KgbError::Inconsistent(format!("class with {} maximal members", tops.len())));
        }
        let top = tops[0];
        for &i in &members {
            let dense_everywhere = par.levi.iter().all(|&r| !kgb.orbits[i].root_types[r - 1].is_ascent());
            if dense_everywhere != (i == top) {
                return Err(KgbError::Inconsistent(format!(
                    "Q_C characterization fails at {} in class of {}",
                    kgb.orbits[i].id, kgb.orbits[top].id
                )));
            }
        }
        if max < fiber {
            return Err(KgbError::Inconsistent(format!("class top {} below fiber dimension", kgb.orbits[top].id)));
        }
        classes.push(PClass { members, top, dim: max - fiber });
    }
    classes.sort_by(|a, b| (a.dim, &kgb.orbits[a.top].id).cmp(&(b.dim, &kgb.orbits[b.top].id)));
    Ok(classes)
}

/// Weak and full closure orders on `K\P`, restricted from `K\B` to the `Q_C`.
///
/// Vertex `c` is class `c` of [`project_to_p`] and carries the id of its `Q_C`.
/// In the full poset an edge is solid iff the relation already holds in the weak order.
pub fn closure_orders_on_p(kgb: &Kgb, classes: &[PClass]) -> (ClosurePoset, ClosurePoset) {
    let weak_b = weak_order(kgb).reachability();
    let full_b = full_closure_order(kgb).reachability();
    let ids: Vec<String> = classes.iter().map(|c| kgb.orbits[c.top].id.clone()).collect();
    let dims: Vec<usize> = classes.iter().map(|c| c.dim).collect();
    let m = classes.len();
    let rel = |reach: &Vec<Vec<bool>>, i: usize, j: usize| i != j && reach[classes[i].top][classes[j].top];
    let covers = |reach: &Vec<Vec<bool>>| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if rel(reach, i, j) && !(0..m).any(|k| rel(reach, i, k) && rel(reach, k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    };
    let weak_edges = covers(&weak_b)
        .into_iter()
        .map(|(i, j)| PosetEdge { from: i, to: j, label: None, style: EdgeStyle::Solid })
        .collect();
    let full_edges = covers(&full_b)
        .into_iter()
        .map(|(i, j)| PosetEdge {
            from: i,
            to: j,
            label: None,
            style: if rel(&weak_b, i, j) { EdgeStyle::Solid } else { EdgeStyle::Dashed },
        })
        .collect();
    (
        ClosurePoset { ids: ids.clone(), dims: dims.clone(), edges: weak_edges },
        ClosurePoset { ids, dims, edges: full_edges },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(s: &str) -> SymmetricPair {
        s.parse().unwrap()
    }

    #[test]
    fn symplectic_clan_dimensions_match_geometry() {
        // `build` compares every stabilizer dimension with `clan_dimension`.
        for p in ["spr:1", "spr:3", "sppq:2,1", "sppq:1,2"] {
            let kgb = Kgb::build(pair(p)).unwrap();
            assert_eq!(kgb.len(), enumerate_clans(&pair(p)).len());
        }
    }

    #[test]
    fn clan_counts() {
        assert_eq!(enumerate_clans(&pair("spr:2")).len(), 11);
        assert_eq!(enumerate_clans(&pair("sppq:1,1")).len(), 4);
        assert_eq!(enumerate_clans(&pair("upq:1,1")).len(), 3);
        assert_eq!(enumerate_clans(&pair("cgl:3")).len(), 6);
        assert_eq!(enumerate_clans(&pair("spr:1")).len(), 3);
        assert_eq!(enumerate_clans(&pair("upq:2,1")).len(), 6);
    }

    #[test]
    fn clan_strings_round_trip() {
        for p in ["spr:2", "sppq:1,1", "upq:2,2", "cgl:3"] {
            let p = pair(p);
            for c in enumerate_clans(&p) {
                assert_eq!(Clan::parse(&p, &c.to_string()).unwrap(), c);
            }
        }
        assert!(Clan::parse(&pair("upq:1,1"), "++").is_err());
    }

    #[test]
    fn unitary_dimensions() {
        let p = pair("upq:1,1");
        let dims: BTreeMap<String, usize> =
            enumerate_clans(&p).iter().map(|c| (c.to_string(), clan_dimension(&p, c))).collect();
        assert_eq!(dims["+-"], 0);
        assert_eq!(dims["-+"], 0);
        assert_eq!(dims["11"], 1);
    }

    #[test]
    fn small_graphs_build() {
        for p in ["upq:1,1", "upq:2,1", "spr:1", "spr:2", "sppq:1,1", "cgl:2", "cgl:3"] {
            let kgb = Kgb::build(pair(p)).unwrap();
            let open: Vec<&KgbOrbit> =
                kgb.orbits.iter().filter(|o| o.dim == kgb.pair.dim_flag_variety()).collect();
            assert_eq!(open.len(), 1, "{p}");
        }
    }

    #[test]
    fn sp4_real_grading_and_dashed_edges() {
        let kgb = Kgb::build(pair("spr:2")).unwrap();
        let dims: Vec<usize> = kgb.orbits.iter().map(|o| o.dim).collect();
        assert_eq!(dims, vec![1, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4]);
        let full = full_closure_order(&kgb);
        let dashed = full.edges.iter().filter(|e| e.style == EdgeStyle::Dashed).count();
        assert_eq!(dashed, 4);
        assert_eq!(full.edges.len(), 12 + 4);
    }

    #[test]
    fn sp11_has_no_dashed_edges() {
        let kgb = Kgb::build(pair("sppq:1,1")).unwrap();
        let full = full_closure_order(&kgb);
        assert!(full.edges.iter().all(|e| e.style == EdgeStyle::Solid));
        assert_eq!(full.edges.len(), 3);
        let dims: Vec<usize> = kgb.orbits.iter().map(|o| o.dim).collect();
        assert_eq!(dims, vec![2, 2, 3, 4]);
    }

    #[test]
    fn sp4_partial_classes() {
        let kgb = Kgb::build(pair("spr:2")).unwrap();
        let a = project_to_p(&kgb, &ParabolicType::parse(pair("spr:2"), "α").unwrap()).unwrap();
        let b = project_to_p(&kgb, &ParabolicType::parse(pair("spr:2"), "β").unwrap()).unwrap();
        assert_eq!((a.len(), b.len()), (6, 4));
        let (_, full_a) = closure_orders_on_p(&kgb, &a);
        let (_, full_b) = closure_orders_on_p(&kgb, &b);
        let dashed = |p: &ClosurePoset| p.edges.iter().filter(|e| e.style == EdgeStyle::Dashed).count();
        assert_eq!((dashed(&full_a), dashed(&full_b)), (2, 2));
        assert_eq!((full_a.edges.len(), full_b.edges.len()), (6, 3));
    }

    #[test]
    fn saturation_is_idempotent_and_poset_is_graded() {
        for p in ["spr:2", "sppq:1,1", "upq:2,1", "cgl:3"] {
            let kgb = Kgb::build(pair(p)).unwrap();
            let sat = saturate(&weak_order(&kgb));
            assert_eq!(saturate(&sat), sat);
            let full = full_closure_order(&kgb);
            assert!(full.is_dag());
            for e in &full.edges {
                assert!(full.dims[e.to] > full.dims[e.from]);
                if e.style == EdgeStyle::Solid {
                    assert_eq!(full.dims[e.to], full.dims[e.from] + 1);
                }
            }
        }
    }

    #[test]
    fn root_actions_sp11() {
        let kgb = Kgb::build(pair("sppq:1,1")).unwrap();
        // Closed orbits S_± ascend along α to R, R ascends along β to Q.
        let r = kgb.orbits.iter().position(|o| o.dim == 3).unwrap();
        let q = kgb.orbits.iter().position(|o| o.dim == 4).unwrap();
        for s in 0..2 {
            assert_eq!(kgb.root_action(s, 1).neighbors, vec![r]);
            assert!(!kgb.root_action(s, 2).root_type.is_ascent());
        }
        assert_eq!(kgb.root_action(r, 2).neighbors, vec![q]);
        assert_eq!(kgb.root_action(r, 1).neighbors, vec![0, 1]);
    }

    #[test]
    fn parabolic_parsing() {
        let sp = pair("spr:2");
        assert_eq!(ParabolicType::parse(sp, "levi=α").unwrap().levi, [1].into_iter().collect());
        assert_eq!(ParabolicType::parse(sp, "").unwrap(), ParabolicType::borel(sp));
        assert!(ParabolicType::parse(sp, "3").is_err());
        let c = pair("cgl:3");
        assert_eq!(ParabolicType::parse(c, "1").unwrap().levi, [1, 3].into_iter().collect());
        assert_eq!(ParabolicType::parse(c, "raw:4").unwrap().levi, [4].into_iter().collect());
        assert_eq!(ParabolicType::all(sp).len(), 4);
    }
}
