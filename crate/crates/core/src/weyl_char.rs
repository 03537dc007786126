//! Characters of the Weyl groups of types `A_{n-1}` (symmetric groups) and
//! `B_n`/`C_n` (hyperoctahedral groups), class fusion from standard Levi
//! subgroups, and multiplicities of irreducibles in representations induced
//! from the sign character of a Levi subgroup.
//!
//! # Conventions
//!
//! * Type A irreducibles are Specht modules `S^λ`; `(n)` is trivial and
//!   `(1^n)` is the sign character.
//! * Type BC irreducibles are bipartitions `(α, β)`. The representation
//!   `(α, β)` with `|α| = a`, `|β| = b` is induced from `B_a × B_b` (first `a`
//!   coordinates, last `b` coordinates) of `S^α` extended trivially across the
//!   sign changes, tensored with `S^β ⊗ ε` where `ε` is `-1` on every sign
//!   change. Thus `((n), ∅)` is trivial, `((n-1), (1))` is the reflection
//!   representation on coordinates, and `(∅, (1^n))` is the sign character.
//!   The simple reflections are `s_i` (swap coordinates `i, i+1`, `i < n`) and
//!   `s_n` (negate coordinate `n`).
//!
//! All arithmetic uses unbounded integers; class sizes come from centralizer
//! orders rather than enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::partition::{factorial, fmt_partition, is_partition, partitions, z_lambda, Partition};

/// Errors raised by Weyl-group character computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Which classical Weyl group family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeylFamily {
    /// The symmetric group on `rank` letters.
    TypeA,
    /// The hyperoctahedral group of order `2^rank · rank!`.
    TypeBC,
}

/// A classical Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylType {
    pub family: WeylFamily,
    pub rank: usize,
}

impl WeylType {
    pub fn a(n: usize) -> Self {
        WeylType { family: WeylFamily::TypeA, rank: n }
    }

    pub fn bc(n: usize) -> Self {
        WeylType { family: WeylFamily::TypeBC, rank: n }
    }

    /// Group order.
    pub fn order(&self) -> BigInt {
        match self.family {
            WeylFamily::TypeA => factorial(self.rank),
            WeylFamily::TypeBC => factorial(self.rank) * BigInt::from(2).pow(self.rank as u32),
        }
    }

    /// All conjugacy classes.
    pub fn classes(&self) -> Vec<ConjClass> {
        match self.family {
            WeylFamily::TypeA => partitions(self.rank).into_iter().map(ConjClass::A).collect(),
            WeylFamily::TypeBC => bipartitions(self.rank)
                .into_iter()
                .map(|(p, m)| ConjClass::BC(p, m))
                .collect(),
        }
    }

    /// All irreducible representations.
    pub fn irreps(&self) -> Vec<WIrrep> {
        match self.family {
            WeylFamily::TypeA => partitions(self.rank).into_iter().map(WIrrep::A).collect(),
            WeylFamily::TypeBC => bipartitions(self.rank)
                .into_iter()
                .map(|(a, b)| WIrrep::BC(a, b))
                .collect(),
        }
    }

    /// The trivial representation.
    pub fn trivial(&self) -> WIrrep {
        match self.family {
            WeylFamily::TypeA => WIrrep::A(vec![self.rank]),
            WeylFamily::TypeBC => WIrrep::BC(nonempty(self.rank), vec![]),
        }
    }

    /// The sign representation.
    pub fn sign(&self) -> WIrrep {
        match self.family {
            WeylFamily::TypeA => WIrrep::A(vec![1; self.rank]),
            WeylFamily::TypeBC => WIrrep::BC(vec![], vec![1; self.rank]),
        }
    }

    /// The class of the identity element.
    pub fn identity_class(&self) -> ConjClass {
        match self.family {
            WeylFamily::TypeA => ConjClass::A(vec![1; self.rank]),
            WeylFamily::TypeBC => ConjClass::BC(vec![1; self.rank], vec![]),
        }
    }
}

fn nonempty(n: usize) -> Partition {
    if n == 0 {
        vec![]
    } else {
        vec![n]
    }
}

/// All ordered pairs of partitions with total size `n`.
pub fn bipartitions(n: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for p in partitions(a) {
            for q in partitions(n - a) {
                out.push((p.clone(), q));
            }
        }
    }
    out
}

/// An irreducible representation of a classical Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WIrrep {
    /// Specht module of a partition.
    A(Partition),
    /// Bipartition `(α, β)`; see the module documentation for the convention.
    BC(Partition, Partition),
}

impl std::fmt::Display for WIrrep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WIrrep::A(l) => write!(f, "{}", fmt_partition(l)),
            WIrrep::BC(a, b) => write!(f, "({};{})", fmt_partition(a), fmt_partition(b)),
        }
    }
}

impl WIrrep {
    /// Size of the underlying (bi)partition.
    pub fn size(&self) -> usize {
        match self {
            WIrrep::A(l) => l.iter().sum(),
            WIrrep::BC(a, b) => a.iter().sum::<usize>() + b.iter().sum::<usize>(),
        }
    }

    fn check(&self, w: &WeylType) -> Result<(), WeylError> {
        let ok = match (self, w.family) {
            (WIrrep::A(l), WeylFamily::TypeA) => is_partition(l),
            (WIrrep::BC(a, b), WeylFamily::TypeBC) => is_partition(a) && is_partition(b),
            _ => false,
        };
        if !ok || self.size() != w.rank {
            return Err(WeylError::InvalidInput(format!("irrep {self} is not a label for {w:?}")));
        }
        Ok(())
    }
}

/// A conjugacy class of a classical Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjClass {
    /// Cycle type.
    A(Partition),
    /// Positive-cycle type and negative-cycle type.
    BC(Partition, Partition),
}

impl ConjClass {
    pub fn size_total(&self) -> usize {
        match self {
            ConjClass::A(l) => l.iter().sum(),
            ConjClass::BC(a, b) => a.iter().sum::<usize>() + b.iter().sum::<usize>(),
        }
    }

    fn check(&self, w: &WeylType) -> Result<(), WeylError> {
        let ok = match (self, w.family) {
            (ConjClass::A(l), WeylFamily::TypeA) => is_partition(l),
            (ConjClass::BC(a, b), WeylFamily::TypeBC) => is_partition(a) && is_partition(b),
            _ => false,
        };
        if !ok || self.size_total() != w.rank {
            return Err(WeylError::InvalidInput(format!("class {self:?} is not a class of {w:?}")));
        }
        Ok(())
    }
}

/// Number of elements in a conjugacy class.
pub fn class_size(w: &WeylType, c: &ConjClass) -> Result<BigInt, WeylError> {
    c.check(w)?;
    Ok(match c {
        ConjClass::A(rho) => factorial(w.rank) / z_lambda(rho),
        ConjClass::BC(pos, neg) => {
            let cycles = (pos.len() + neg.len()) as u32;
            w.order() / (z_lambda(pos) * z_lambda(neg) * BigInt::from(2).pow(cycles))
        }
    })
}

/// Value of the sign character (determinant of the reflection representation) on a class.
pub fn sign_of_class(c: &ConjClass) -> i64 {
    let exp: usize = match c {
        ConjClass::A(rho) => rho.iter().map(|r| r - 1).sum(),
        ConjClass::BC(pos, neg) => {
            pos.iter().map(|r| r - 1).sum::<usize>() + neg.iter().sum::<usize>()
        }
    };
    if exp % 2 == 0 {
        1
    } else {
        -1
    }
}

/// β-set of a partition with `len` beads: `λ_i + len - i`.
fn beta_set(lambda: &[usize], len: usize) -> Vec<usize> {
    (0..len).map(|i| lambda.get(i).copied().unwrap_or(0) + len - 1 - i).collect()
}

/// All ways to remove an `r`-rim hook from a β-set, each with its sign `(-1)^height`.
fn remove_rim_hooks(beta: &[usize], r: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.to_vec();
        nb[idx] = target;
        out.push((nb, if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// Murnaghan–Nakayama on β-sets: value of `χ` on a product of cycles, where
/// each cycle is `(length, sign)`; negative cycles pick up `-1` when their hook
/// is removed from the second component (`second_sign_cycles`).
fn mn_bc(alpha: Vec<usize>, beta: Vec<usize>, cycles: &[(usize, bool)]) -> BigInt {
    let Some((&(r, negative), rest)) = cycles.split_first() else {
        return BigInt::one();
    };
    let mut total = BigInt::zero();
    for (na, s) in remove_rim_hooks(&alpha, r) {
        total += mn_bc(na, beta.clone(), rest) * s;
    }
    for (nb, s) in remove_rim_hooks(&beta, r) {
        let s = if negative { -s } else { s };
        total += mn_bc(alpha.clone(), nb, rest) * s;
    }
    total
}

/// `χ_σ(c)` by the Murnaghan–Nakayama rule (type A) or its wreath-product form (type BC).
pub fn character_value(w: &WeylType, sigma: &WIrrep, c: &ConjClass) -> Result<BigInt, WeylError> {
    sigma.check(w)?;
    c.check(w)?;
    let n = w.rank;
    Ok(match (sigma, c) {
        (WIrrep::A(lambda), ConjClass::A(rho)) => {
            let cycles: Vec<(usize, bool)> = rho.iter().map(|&r| (r, false)).collect();
            mn_bc(beta_set(lambda, n), Vec::new(), &cycles)
        }
        (WIrrep::BC(a, b), ConjClass::BC(pos, neg)) => {
            // Remove long cycles first: fewer branches.
            let mut cycles: Vec<(usize, bool)> = pos
                .iter()
                .map(|&r| (r, false))
                .chain(neg.iter().map(|&r| (r, true)))
                .collect();
            cycles.sort_unstable_by(|x, y| y.0.cmp(&x.0));
            mn_bc(beta_set(a, n), beta_set(b, n), &cycles)
        }
        _ => unreachable!("family checked above"),
    })
}

/// Degree of an irreducible representation.
pub fn dimension(w: &WeylType, sigma: &WIrrep) -> Result<BigInt, WeylError> {
    character_value(w, sigma, &w.identity_class())
}

/// One factor of a standard Levi subgroup of a Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LeviFactor {
    /// Symmetric group `S_a` on a block of consecutive coordinates.
    Sym(usize),
    /// Hyperoctahedral group `B_m` on the last `m` coordinates.
    BC(usize),
}

/// A standard Levi subgroup, given by its factors in coordinate order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeviType {
    pub factors: Vec<LeviFactor>,
}

impl LeviType {
    /// The Levi subgroup generated by the listed simple reflections (1-based
    /// Bourbaki indices: `s_i` for `i < n` swaps coordinates, `s_n` is the sign
    /// change in type BC; type A rank `n` has simple reflections `1..n-1`).
    pub fn from_simple_roots(w: &WeylType, roots: &[usize]) -> Result<Self, WeylError> {
        let n = w.rank;
        let max = match w.family {
            WeylFamily::TypeA => n.saturating_sub(1),
            WeylFamily::TypeBC => n,
        };
        if let Some(bad) = roots.iter().find(|&&r| r == 0 || r > max) {
            return Err(WeylError::InvalidInput(format!("simple root {bad} out of range for {w:?}")));
        }
        let in_levi = |i: usize| roots.contains(&i);
        let mut factors = Vec::new();
        let mut start = 1;
        while start <= n {
            // Coordinates start..=end are joined by s_start..s_{end-1}.
            let mut end = start;
            while end < n && in_levi(end) {
                end += 1;
            }
            if w.family == WeylFamily::TypeBC && end == n && in_levi(n) {
                factors.push(LeviFactor::BC(n - start + 1));
            } else {
                factors.push(LeviFactor::Sym(end - start + 1));
            }
            start = end + 1;
        }
        Ok(LeviType { factors })
    }

    /// The whole group as its own Levi subgroup.
    pub fn full(w: &WeylType) -> Self {
        match w.family {
            WeylFamily::TypeA => LeviType { factors: vec![LeviFactor::Sym(w.rank)] },
            WeylFamily::TypeBC => LeviType { factors: vec![LeviFactor::BC(w.rank)] },
        }
    }

    fn check(&self, w: &WeylType) -> Result<(), WeylError> {
        let total: usize = self
            .factors
            .iter()
            .map(|f| match f {
                LeviFactor::Sym(a) => *a,
                LeviFactor::BC(m) => *m,
            })
            .sum();
        let bc: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, f)| matches!(f, LeviFactor::BC(_)))
            .map(|(i, _)| i)
            .collect();
        let ok = total == w.rank
            && match w.family {
                WeylFamily::TypeA => bc.is_empty(),
                WeylFamily::TypeBC => bc.is_empty() || bc == vec![self.factors.len() - 1],
            };
        if ok {
            Ok(())
        } else {
            Err(WeylError::InvalidInput(format!("Levi {self:?} does not embed in {w:?}")))
        }
    }

    /// Order of the Levi subgroup.
    pub fn order(&self) -> BigInt {
        self.factors
            .iter()
            .map(|f| match f {
                LeviFactor::Sym(a) => WeylType::a(*a).order(),
                LeviFactor::BC(m) => WeylType::bc(*m).order(),
            })
            .product()
    }

    /// The Weyl group of each factor.
    pub fn factor_groups(&self) -> Vec<WeylType> {
        self.factors
            .iter()
            .map(|f| match f {
                LeviFactor::Sym(a) => WeylType::a(*a),
                LeviFactor::BC(m) => WeylType::bc(*m),
            })
            .collect()
    }
}

/// The ambient class of an element of a standard Levi subgroup with the given factor classes.
pub fn class_fusion(w: &WeylType, l: &LeviType, classes: &[ConjClass]) -> Result<ConjClass, WeylError> {
    l.check(w)?;
    if classes.len() != l.factors.len() {
        return Err(WeylError::InvalidInput("one class per Levi factor required".into()));
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (g, c) in l.factor_groups().iter().zip(classes) {
        c.check(g)?;
        match c {
            ConjClass::A(rho) => pos.extend_from_slice(rho),
            ConjClass::BC(p, m) => {
                pos.extend_from_slice(p);
                neg.extend_from_slice(m);
            }
        }
    }
    pos.sort_unstable_by(|a, b| b.cmp(a));
    neg.sort_unstable_by(|a, b| b.cmp(a));
    Ok(match w.family {
        WeylFamily::TypeA => ConjClass::A(pos),
        WeylFamily::TypeBC => ConjClass::BC(pos, neg),
    })
}

/// All tuples of factor classes of a Levi subgroup, with the size of each product class.
fn levi_classes(l: &LeviType) -> Result<Vec<(Vec<ConjClass>, BigInt)>, WeylError> {
    let mut acc: Vec<(Vec<ConjClass>, BigInt)> = vec![(Vec::new(), BigInt::one())];
    for g in l.factor_groups() {
        let mut next = Vec::new();
        for (prefix, size) in &acc {
            for c in g.classes() {
                let s = class_size(&g, &c)?;
                let mut p = prefix.clone();
                p.push(c);
                next.push((p, size * s));
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `dim Hom_L(sgn, Res σ)`, the multiplicity of `σ` in `Ind_L^W sgn`.
pub fn sign_multiplicity(w: &WeylType, l: &LeviType, sigma: &WIrrep) -> Result<BigInt, WeylError> {
    l.check(w)?;
    sigma.check(w)?;
    let mut total = BigInt::zero();
    for (cl, size) in levi_classes(l)? {
        let fused = class_fusion(w, l, &cl)?;
        total += size * sign_of_class(&fused) * character_value(w, sigma, &fused)?;
    }
    let (mult, rem) = total.div_rem(&l.order());
    assert!(rem.is_zero(), "inner product not integral: character table inconsistency");
    assert!(!mult.is_negative(), "negative multiplicity: character table inconsistency");
    Ok(mult)
}

/// Decomposition of `Ind_L^W sgn` as `(irrep, multiplicity)` with positive multiplicities.
pub fn induced_sign_decomposition(w: &WeylType, l: &LeviType) -> Result<Vec<(WIrrep, BigInt)>, WeylError> {
    let mut out = Vec::new();
    for sigma in w.irreps() {
        let m = sign_multiplicity(w, l, &sigma)?;
        if !m.is_zero() {
            out.push((sigma, m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn specht_dimension_by_hook_length() {
        let w = WeylType::a(3);
        assert_eq!(
            character_value(&w, &WIrrep::A(vec![2, 1]), &ConjClass::A(vec![1, 1, 1])).unwrap(),
            big(2)
        );
        for n in 1..=6 {
            let w = WeylType::a(n);
            for sigma in w.irreps() {
                let WIrrep::A(l) = &sigma else { unreachable!() };
                assert_eq!(dimension(&w, &sigma).unwrap(), crate::partition::hook_length_count(l));
            }
        }
    }

    #[test]
    fn trivial_and_sign_values() {
        for n in 1..=5 {
            for w in [WeylType::a(n), WeylType::bc(n)] {
                for c in w.classes() {
                    assert_eq!(character_value(&w, &w.trivial(), &c).unwrap(), big(1));
                    assert_eq!(character_value(&w, &w.sign(), &c).unwrap(), big(sign_of_class(&c)));
                }
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 1..=7 {
            for w in [WeylType::a(n), WeylType::bc(n)] {
                let total: BigInt = w.classes().iter().map(|c| class_size(&w, c).unwrap()).sum();
                assert_eq!(total, w.order());
            }
        }
    }

    #[test]
    fn orthogonality_rank_at_most_four() {
        for n in 1..=4 {
            for w in [WeylType::a(n), WeylType::bc(n)] {
                let irr = w.irreps();
                let classes = w.classes();
                let sizes: Vec<BigInt> = classes.iter().map(|c| class_size(&w, c).unwrap()).collect();
                for s in &irr {
                    let xs: Vec<BigInt> =
                        classes.iter().map(|c| character_value(&w, s, c).unwrap()).collect();
                    for t in &irr {
                        let ip: BigInt = classes
                            .iter()
                            .zip(&sizes)
                            .zip(&xs)
                            .map(|((c, z), x)| z * x * character_value(&w, t, c).unwrap())
                            .sum();
                        let expected = if s == t { w.order() } else { BigInt::zero() };
                        assert_eq!(ip, expected, "{w:?} {s} {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn fusion_examples() {
        let l = LeviType { factors: vec![LeviFactor::Sym(2), LeviFactor::Sym(1)] };
        assert_eq!(
            class_fusion(&WeylType::a(3), &l, &[ConjClass::A(vec![2]), ConjClass::A(vec![1])]).unwrap(),
            ConjClass::A(vec![2, 1])
        );
        let l = LeviType { factors: vec![LeviFactor::Sym(2)] };
        assert_eq!(
            class_fusion(&WeylType::bc(2), &l, &[ConjClass::A(vec![2])]).unwrap(),
            ConjClass::BC(vec![2], vec![])
        );
        // A hyperoctahedral factor sits on the last coordinates.
        let l = LeviType { factors: vec![LeviFactor::Sym(1), LeviFactor::BC(1)] };
        assert_eq!(
            class_fusion(
                &WeylType::bc(2),
                &l,
                &[ConjClass::A(vec![1]), ConjClass::BC(vec![], vec![1])]
            )
            .unwrap(),
            ConjClass::BC(vec![1], vec![1])
        );
        assert!(class_fusion(&WeylType::bc(2), &l, &[ConjClass::A(vec![1])]).is_err());
    }

    #[test]
    fn levi_from_simple_roots() {
        let c2 = WeylType::bc(2);
        assert_eq!(
            LeviType::from_simple_roots(&c2, &[1]).unwrap().factors,
            vec![LeviFactor::Sym(2)]
        );
        assert_eq!(
            LeviType::from_simple_roots(&c2, &[2]).unwrap().factors,
            vec![LeviFactor::Sym(1), LeviFactor::BC(1)]
        );
        assert_eq!(
            LeviType::from_simple_roots(&c2, &[]).unwrap().factors,
            vec![LeviFactor::Sym(1), LeviFactor::Sym(1)]
        );
        assert_eq!(
            LeviType::from_simple_roots(&WeylType::a(4), &[1, 3]).unwrap().factors,
            vec![LeviFactor::Sym(2), LeviFactor::Sym(2)]
        );
        assert!(LeviType::from_simple_roots(&WeylType::a(4), &[4]).is_err());
    }

    #[test]
    fn sign_multiplicity_examples() {
        let c2 = WeylType::bc(2);
        // s_α ↦ -1, s_β ↦ +1.
        let chi_short = WIrrep::BC(vec![1, 1], vec![]);
        let l_alpha = LeviType::from_simple_roots(&c2, &[1]).unwrap();
        let l_beta = LeviType::from_simple_roots(&c2, &[2]).unwrap();
        assert_eq!(sign_multiplicity(&c2, &l_alpha, &chi_short).unwrap(), big(1));
        assert_eq!(sign_multiplicity(&c2, &l_beta, &chi_short).unwrap(), big(0));
        let a3 = WeylType::a(3);
        let l = LeviType::from_simple_roots(&a3, &[1]).unwrap();
        assert_eq!(sign_multiplicity(&a3, &l, &WIrrep::A(vec![2, 1])).unwrap(), big(1));
        for n in 1..=4 {
            let w = WeylType::a(n);
            assert_eq!(sign_multiplicity(&w, &LeviType::full(&w), &w.sign()).unwrap(), big(1));
        }
    }

    #[test]
    fn induced_sign_examples() {
        let a3 = WeylType::a(3);
        let l = LeviType::from_simple_roots(&a3, &[1]).unwrap();
        let dec = induced_sign_decomposition(&a3, &l).unwrap();
        assert_eq!(
            dec,
            vec![(WIrrep::A(vec![2, 1]), big(1)), (WIrrep::A(vec![1, 1, 1]), big(1))]
        );
        let c2 = WeylType::bc(2);
        let dec = induced_sign_decomposition(&c2, &LeviType::from_simple_roots(&c2, &[1]).unwrap()).unwrap();
        // Index 4, multiplicity free: std ⊕ two linear characters negating s_α.
        assert_eq!(dec.len(), 3);
        assert!(dec.iter().all(|(_, m)| m == &big(1)));
        let total: BigInt = dec.iter().map(|(s, _)| dimension(&c2, s).unwrap()).sum();
        assert_eq!(total, big(4));
        for w in [WeylType::a(4), WeylType::bc(3)] {
            assert_eq!(
                induced_sign_decomposition(&w, &LeviType::full(&w)).unwrap(),
                vec![(w.sign(), big(1))]
            );
        }
    }

    #[test]
    fn rejects_mismatched_sizes() {
        let w = WeylType::a(3);
        assert!(character_value(&w, &WIrrep::A(vec![2]), &ConjClass::A(vec![1, 1, 1])).is_err());
        assert!(character_value(&w, &WIrrep::BC(vec![3], vec![]), &ConjClass::A(vec![3])).is_err());
    }
}
