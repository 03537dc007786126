//! Integer partitions: enumeration, transpose, dominance, hook lengths, and
//! the type-C collapse.
//!
//! Partitions are stored as weakly decreasing vectors of positive parts.

use num_bigint::BigInt;
use num_traits::One;

/// A weakly decreasing list of positive parts.
pub type Partition = Vec<usize>;

/// Sorts parts decreasingly and drops zeros.
pub fn normalize(mut parts: Vec<usize>) -> Partition {
    parts.retain(|&p| p > 0);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// True when `parts` is weakly decreasing and positive.
pub fn is_partition(parts: &[usize]) -> bool {
    parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1])
}

/// All partitions of `n`, in reverse lexicographic order (`(n)` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Conjugate (transpose) partition.
pub fn transpose(lambda: &[usize]) -> Partition {
    let len = lambda.first().copied().unwrap_or(0);
    (1..=len).map(|i| lambda.iter().filter(|&&p| p >= i).count()).collect()
}

/// Dominance order `a ≤ b` on partitions of the same size.
pub fn dominance_leq(a: &[usize], b: &[usize]) -> bool {
    let (mut sa, mut sb) = (0usize, 0usize);
    for i in 0..a.len().max(b.len()) {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa > sb {
            return false;
        }
    }
    true
}

/// Multiplicity of each part value, as `(value, multiplicity)` in decreasing value order.
pub fn multiplicities(lambda: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in lambda {
        match out.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// A partition of `2n` labels a nilpotent orbit of `sp_2n` iff odd parts have even multiplicity.
pub fn is_symplectic(lambda: &[usize]) -> bool {
    multiplicities(lambda).iter().all(|&(v, m)| v % 2 == 0 || m % 2 == 0)
}

/// The largest symplectic partition dominated by `lambda` (the C-collapse).
pub fn c_collapse(lambda: &[usize]) -> Partition {
    let mut parts: Vec<usize> = lambda.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    loop {
        let bad = multiplicities(&parts)
            .into_iter()
            .filter(|&(v, m)| v % 2 == 1 && m % 2 == 1)
            .map(|(v, _)| v)
            .max();
        let Some(q) = bad else { break };
        let last = parts.iter().rposition(|&p| p == q).expect("part present");
        parts[last] -= 1;
        match parts.iter().position(|&p| p < q - 1) {
            Some(j) => parts[j] += 1,
            None => parts.push(1),
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
    }
    normalize(parts)
}

/// `n(λ) = Σ (i-1) λ_i`.
pub fn n_statistic(lambda: &[usize]) -> usize {
    lambda.iter().enumerate().map(|(i, &p)| i * p).sum()
}

/// Number of standard Young tableaux of shape `lambda` via the hook-length formula.
pub fn hook_length_count(lambda: &[usize]) -> BigInt {
    let n: usize = lambda.iter().sum();
    let conj = transpose(lambda);
    let mut num = BigInt::one();
    for k in 2..=n {
        num *= k;
    }
    let mut den = BigInt::one();
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            den *= row - j + conj[j] - i - 1;
        }
    }
    num / den
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `z_ρ = Π_i i^{m_i} m_i!`, the centralizer order of a permutation of cycle type `ρ`.
pub fn z_lambda(rho: &[usize]) -> BigInt {
    multiplicities(rho).iter().fold(BigInt::one(), |acc, &(v, m)| {
        acc * BigInt::from(v).pow(m as u32) * factorial(m)
    })
}

/// Formats a partition compactly, e.g. `(3,1,1)`; the empty partition prints as `∅`.
pub fn fmt_partition(lambda: &[usize]) -> String {
    if lambda.is_empty() {
        "∅".to_string()
    } else {
        let parts: Vec<String> = lambda.iter().map(|p| p.to_string()).collect();
        format!("({})", parts.join(","))
    }
}
