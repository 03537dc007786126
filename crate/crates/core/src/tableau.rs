//! Signed Young tableaux labelling nilpotent K-orbits.
//!
//! A row of length `ℓ` with leading sign `ε` has signs alternating
//! `ε, -ε, ε, …` along the row. The text form lists tokens `i^j±` (`j` rows of
//! length `i` leading with `±`) sorted by decreasing length, `+` before `-`,
//! joined by single spaces; unsigned tableaux (the complex-group case) drop the
//! sign, e.g. `3^1 1^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::partition::{partitions, Partition};
use crate::springer_data::SymmetricPair;

/// Errors raised while parsing or validating tableaux.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("cannot parse tableau token `{0}`")]
    Parse(String),
    #[error("tableau {0} is not valid for {1}")]
    Invalid(String, String),
    #[error("no tableau realizes rank profile {0}")]
    Profile(String),
}

/// A sign `±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign at 1-based position `i` of a row leading with `self`.
    pub fn at(self, i: usize) -> Sign {
        if i % 2 == 1 {
            self
        } else {
            self.flip()
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// `mult` rows of length `len` leading with `sign` (`None` for unsigned tableaux).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    pub len: usize,
    pub sign: Option<Sign>,
    pub mult: usize,
}

/// A normalized signed (or unsigned) Young tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedTableau {
    rows: Vec<Row>,
}

/// Rank profile: `(m, δ) ↦ r(m, δ)`; unsigned tableaux use `δ = None`.
pub type Profile = BTreeMap<(usize, Option<Sign>), usize>;

impl SignedTableau {
    /// Normalizes: merges equal `(len, sign)` groups, drops empty ones, sorts.
    pub fn new(rows: impl IntoIterator<Item = Row>) -> Self {
        let mut acc: BTreeMap<(std::cmp::Reverse<usize>, Option<Sign>), usize> = BTreeMap::new();
        for r in rows {
            if r.len > 0 && r.mult > 0 {
                *acc.entry((std::cmp::Reverse(r.len), r.sign)).or_default() += r.mult;
            }
        }
        SignedTableau {
            rows: acc.into_iter().map(|((l, s), m)| Row { len: l.0, sign: s, mult: m }).collect(),
        }
    }

    /// The unsigned tableau of a partition.
    pub fn unsigned(lambda: &[usize]) -> Self {
        SignedTableau::new(lambda.iter().map(|&l| Row { len: l, sign: None, mult: 1 }))
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn is_signed(&self) -> bool {
        self.rows.iter().any(|r| r.sign.is_some())
    }

    /// Underlying partition.
    pub fn partition(&self) -> Partition {
        let mut out = Vec::new();
        for r in &self.rows {
            out.extend(std::iter::repeat(r.len).take(r.mult));
        }
        out
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len * r.mult).sum()
    }

    /// Number of `+` and `-` boxes.
    pub fn signature(&self) -> (usize, usize) {
        let (mut p, mut m) = (0, 0);
        for r in &self.rows {
            if let Some(s) = r.sign {
                let lead = r.len.div_ceil(2) * r.mult;
                let other = (r.len / 2) * r.mult;
                match s {
                    Sign::Plus => {
                        p += lead;
                        m += other
                    }
                    Sign::Minus => {
                        m += lead;
                        p += other
                    }
                }
            }
        }
        (p, m)
    }

    /// Number of rows of the given length leading with the given sign.
    pub fn count(&self, len: usize, sign: Option<Sign>) -> usize {
        self.rows.iter().filter(|r| r.len == len && r.sign == sign).map(|r| r.mult).sum()
    }

    /// Formal rank profile: `r(m, δ) = Σ_rows #{i ≤ ℓ - m : sign at i = δ}`, for `0 ≤ m ≤ size`.
    pub fn profile(&self) -> Profile {
        let mut prof = Profile::new();
        let deltas: Vec<Option<Sign>> =
            if self.is_signed() { vec![Some(Sign::Plus), Some(Sign::Minus)] } else { vec![None] };
        let n = self.size();
        for m in 0..=n {
            for &d in &deltas {
                let mut total = 0;
                for r in &self.rows {
                    let upto = r.len.saturating_sub(m);
                    let c = match (r.sign, d) {
                        (Some(s), Some(d)) => (1..=upto).filter(|&i| s.at(i) == d).count(),
                        _ => upto,
                    };
                    total += c * r.mult;
                }
                prof.insert((m, d), total);
            }
        }
        prof
    }

    /// Inverts [`SignedTableau::profile`]: row counts from rank differences.
    ///
    /// With `a(m, δ) = r(m, δ) - r(m+1, δ)`, the number of rows of length
    /// `m + 1` leading with `δ` is `a(m, δ) - a(m+1, -δ)`.
    pub fn from_profile(prof: &Profile, signed: bool) -> Result<Self, TableauError> {
        let err = || TableauError::Profile(format!("{prof:?}"));
        let get = |m: usize, d: Option<Sign>| -> i64 { prof.get(&(m, d)).copied().unwrap_or(0) as i64 };
        let max_m = prof.keys().map(|k| k.0).max().unwrap_or(0);
        let mut rows = Vec::new();
        let deltas: Vec<Option<Sign>> =
            if signed { vec![Some(Sign::Plus), Some(Sign::Minus)] } else { vec![None] };
        let a = |m: usize, d: Option<Sign>| get(m, d) - get(m + 1, d);
        for m in 0..=max_m {
            for &d in &deltas {
                let other = d.map(Sign::flip);
                let c = a(m, d) - a(m + 1, other);
                if c < 0 {
                    return Err(err());
                }
                if c > 0 {
                    rows.push(Row { len: m + 1, sign: d, mult: c as usize });
                }
            }
        }
        let t = SignedTableau::new(rows);
        if &t.profile() != prof {
            return Err(err());
        }
        Ok(t)
    }

    /// Closure order: `self ≤ other` iff every rank `r(m, δ)` of `self` is at most that of `other`.
    pub fn closure_leq(&self, other: &SignedTableau) -> bool {
        if self.size() != other.size() || self.is_signed() != other.is_signed() {
            return false;
        }
        let a = self.profile();
        let b = other.profile();
        a.iter().all(|(k, v)| v <= b.get(k).unwrap_or(&0))
    }

    /// Validity for a symmetric pair (see [`SymmetricPair`] for the pairs).
    pub fn is_valid_for(&self, pair: &SymmetricPair) -> bool {
        let n_boxes = pair.defining_dim();
        if self.size() != n_boxes {
            return false;
        }
        match *pair {
            SymmetricPair::ComplexGL(_) => !self.is_signed(),
            SymmetricPair::Upq(p, q) => {
                self.rows.iter().all(|r| r.sign.is_some()) && self.signature() == (p, q)
            }
            SymmetricPair::SpR(n) => {
                self.rows.iter().all(|r| r.sign.is_some())
                    && self.signature() == (n, n)
                    && self.rows.iter().filter(|r| r.len % 2 == 1).all(|r| {
                        self.count(r.len, Some(Sign::Plus)) == self.count(r.len, Some(Sign::Minus))
                    })
            }
            SymmetricPair::SpPQ(p, q) => {
                self.rows.iter().all(|r| r.sign.is_some())
                    && self.signature() == (2 * p, 2 * q)
                    && self.rows.iter().all(|r| {
                        if r.len % 2 == 0 {
                            self.count(r.len, Some(Sign::Plus)) == self.count(r.len, Some(Sign::Minus))
                        } else {
                            r.mult % 2 == 0
                        }
                    })
            }
        }
    }

    /// Checks validity, returning a descriptive error.
    pub fn validate(&self, pair: &SymmetricPair) -> Result<(), TableauError> {
        if self.is_valid_for(pair) {
            Ok(())
        } else {
            Err(TableauError::Invalid(self.to_string(), pair.to_string()))
        }
    }

    /// The zero-orbit tableau for a pair.
    pub fn zero(pair: &SymmetricPair) -> Self {
        all_valid(pair)
            .into_iter()
            .find(|t| t.rows.iter().all(|r| r.len == 1))
            .expect("every pair has a zero orbit")
    }
}

/// All valid tableaux for a pair, sorted.
pub fn all_valid(pair: &SymmetricPair) -> Vec<SignedTableau> {
    let n = pair.defining_dim();
    let mut out = Vec::new();
    for lam in partitions(n) {
        if pair.is_symplectic() && !crate::partition::is_symplectic(&lam) {
            continue;
        }
        if matches!(pair, SymmetricPair::ComplexGL(_)) {
            out.push(SignedTableau::unsigned(&lam));
            continue;
        }
        let groups = crate::partition::multiplicities(&lam);
        // For each distinct length choose how many rows lead with `+`.
        let mut acc: Vec<Vec<Row>> = vec![Vec::new()];
        for &(len, mult) in &groups {
            let mut next = Vec::new();
            for prefix in &acc {
                for plus in 0..=mult {
                    let mut p = prefix.clone();
                    p.push(Row { len, sign: Some(Sign::Plus), mult: plus });
                    p.push(Row { len, sign: Some(Sign::Minus), mult: mult - plus });
                    next.push(p);
                }
            }
            acc = next;
        }
        for rows in acc {
            let t = SignedTableau::new(rows);
            if t.is_valid_for(pair) {
                out.push(t);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for SignedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .rows
            .iter()
            .map(|r| match r.sign {
                Some(s) => format!("{}^{}{}", r.len, r.mult, s.symbol()),
                None => format!("{}^{}", r.len, r.mult),
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl FromStr for SignedTableau {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rows = Vec::new();
        for tok in s.split_whitespace() {
            let bad = || TableauError::Parse(tok.to_string());
            let (len, rest) = tok.split_once('^').ok_or_else(bad)?;
            let (mult, sign) = match rest.chars().last() {
                Some('+') => (&rest[..rest.len() - 1], Some(Sign::Plus)),
                Some('-') => (&rest[..rest.len() - 1], Some(Sign::Minus)),
                _ => (rest, None),
            };
            let len: usize = len.parse().map_err(|_| bad())?;
            let mult: usize = mult.parse().map_err(|_| bad())?;
            if len == 0 || mult == 0 {
                return Err(bad());
            }
            rows.push(Row { len, sign, mult });
        }
        if rows.is_empty() {
            return Err(TableauError::Parse(s.to_string()));
        }
        let signed = rows.iter().filter(|r| r.sign.is_some()).count();
        if signed != 0 && signed != rows.len() {
            return Err(TableauError::Parse(s.to_string()));
        }
        Ok(SignedTableau::new(rows))
    }
}
