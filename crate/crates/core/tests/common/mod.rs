//! Independent oracles shared by the integration tests: textbook
//! Robinson–Schensted insertion, Bruhat order by subwords of a reduced word,
//! and brute-force Weyl-group characters from induced Young-subgroup
//! characters. None of these call into the library's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

// ---------------------------------------------------------------------------
// Robinson–Schensted
// ---------------------------------------------------------------------------

/// Shape of the insertion tableau of `w` (one-line notation), rows weakly decreasing.
pub fn rs_shape(w: &[usize]) -> Vec<usize> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &x in w {
        let mut bump = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![bump]);
                break;
            }
            match rows[r].iter().position(|&y| y > bump) {
                Some(pos) => {
                    std::mem::swap(&mut rows[r][pos], &mut bump);
                    r += 1;
                }
                None => {
                    rows[r].push(bump);
                    break;
                }
            }
        }
    }
    rows.iter().map(Vec::len).collect()
}

/// All permutations of `1..=n` by Heap's algorithm.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k % 2 == 0 { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Bruhat order
// ---------------------------------------------------------------------------

/// A reduced word of `w` (simple transpositions `s_i` swap positions `i, i+1`, 1-based).
pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    let mut a = w.to_vec();
    let mut word = Vec::new();
    // Bubble sort: each adjacent swap of an inversion is a right multiplication by s_i.
    loop {
        let Some(i) = (0..a.len().saturating_sub(1)).find(|&i| a[i] > a[i + 1]) else { break };
        a.swap(i, i + 1);
        word.push(i + 1);
    }
    word.reverse();
    word
}

fn apply_word(n: usize, word: &[usize]) -> Vec<usize> {
    let mut a: Vec<usize> = (1..=n).collect();
    for &i in word {
        a.swap(i - 1, i);
    }
    a
}

/// Every permutation below `w` in Bruhat order: products of subwords of a reduced word.
pub fn bruhat_below(w: &[usize]) -> BTreeSet<Vec<usize>> {
    let word = reduced_word(w);
    assert_eq!(apply_word(w.len(), &word), w, "reduced word reproduces w");
    (0u32..1 << word.len())
        .map(|mask| {
            let sub: Vec<usize> = word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &s)| s).collect();
            apply_word(w.len(), &sub)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Brute-force characters
// ---------------------------------------------------------------------------

/// Cycles of a permutation of `0..n` given by images.
fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = p[x];
        }
        out.push(c);
    }
    out
}

fn sorted_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Cycle type of a permutation of `0..n`.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    sorted_desc(cycles(p).iter().map(Vec::len).collect())
}

/// Permutation character of the Young subgroup `S_μ` (number of ordered set
/// partitions with block sizes `μ` fixed by `p`), by direct enumeration over
/// colourings of the cycles.
fn young_permutation_character(mu: &[usize], p: &[usize]) -> i64 {
    let cyc: Vec<usize> = cycles(p).iter().map(Vec::len).collect();
    let k = mu.len();
    if k == 0 {
        return i64::from(p.is_empty());
    }
    let mut count = 0;
    let total = k.pow(cyc.len() as u32);
    for code in 0..total {
        let mut sizes = vec![0; k];
        let mut c = code;
        for &len in &cyc {
            sizes[c % k] += len;
            c /= k;
        }
        if sizes == mu {
            count += 1;
        }
    }
    count
}

fn permutations_of(k: usize) -> Vec<Vec<usize>> {
    all_permutations(k).into_iter().map(|p| p.into_iter().map(|x| x - 1).collect()).collect()
}

fn sign_of(p: &[usize]) -> i64 {
    if cycles(p).iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `χ^λ(p)` from the Jacobi–Trudi determinant of Young permutation characters.
pub fn specht_character(lambda: &[usize], p: &[usize]) -> i64 {
    let l = lambda.len();
    let mut total = 0;
    for sigma in permutations_of(l) {
        let mu: Option<Vec<usize>> = (0..l)
            .map(|i| usize::try_from(lambda[i] as i64 - i as i64 + sigma[i] as i64).ok())
            .collect();
        if let Some(mu) = mu {
            total += sign_of(&sigma) * young_permutation_character(&mu, p);
        }
    }
    total
}

/// A signed permutation of `0..n`: `perm[i]` is the image of coordinate `i`,
/// `neg[i]` whether its sign flips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub neg: Vec<bool>,
}

impl SignedPerm {
    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let n = self.perm.len();
        SignedPerm {
            perm: (0..n).map(|i| self.perm[other.perm[i]]).collect(),
            neg: (0..n).map(|i| other.neg[i] ^ self.neg[other.perm[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut neg = vec![false; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            neg[self.perm[i]] = self.neg[i];
        }
        SignedPerm { perm, neg }
    }

    /// Positive-cycle type and negative-cycle type.
    pub fn class(&self) -> (Vec<usize>, Vec<usize>) {
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for c in cycles(&self.perm) {
            let odd = c.iter().filter(|&&i| self.neg[i]).count() % 2 == 1;
            if odd {
                neg.push(c.len());
            } else {
                pos.push(c.len());
            }
        }
        (sorted_desc(pos), sorted_desc(neg))
    }
}

/// Every element of the hyperoctahedral group of rank `n`.
pub fn signed_permutations(n: usize) -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for perm in permutations_of(n) {
        for mask in 0..1u32 << n {
            out.push(SignedPerm { perm: perm.clone(), neg: (0..n).map(|i| mask >> i & 1 == 1).collect() });
        }
    }
    out
}

/// Character of `(α, β)` at `g`, by brute-force induction from `B_a × B_b`
/// of `S^α ⊗ (S^β ⊗ ε)`, with `ε = -1` on each sign change.
pub fn bn_character(alpha: &[usize], beta: &[usize], g: &SignedPerm) -> i64 {
    let n = g.perm.len();
    let a: usize = alpha.iter().sum();
    assert_eq!(a + beta.iter().sum::<usize>(), n);
    let group = signed_permutations(n);
    let in_h = |h: &SignedPerm| (0..a).all(|i| h.perm[i] < a);
    let chi_h = |h: &SignedPerm| -> i64 {
        let x: Vec<usize> = h.perm[..a].to_vec();
        let y: Vec<usize> = h.perm[a..].iter().map(|&j| j - a).collect();
        let flips = h.neg[a..].iter().filter(|&&s| s).count();
        let eps = if flips % 2 == 0 { 1 } else { -1 };
        specht_character(alpha, &x) * specht_character(beta, &y) * eps
    };
    let mut sum = 0;
    let mut h_order = 0;
    for x in &group {
        if in_h(x) {
            h_order += 1;
        }
        let conj = x.compose(g).compose(&x.inverse());
        if in_h(&conj) {
            sum += chi_h(&conj);
        }
    }
    assert_eq!(sum % h_order, 0);
    sum / h_order
}
