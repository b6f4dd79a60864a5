//! Factorials, multinomials and the exponent vectors the coefficient
//! formulas sum over.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::Rat;

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n! / (k_1! ... k_r!)` without requiring `Σ k = n`.
pub fn factorial_ratio(n: u32, ks: &[u32]) -> Rat {
    let den = ks.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    Rat::new(factorial(n), den)
}

/// All `L = (l_1, ..., l_parts)` with `Σ l_t = size` and `Σ t·l_t = weight`.
///
/// These index the monomials `C^L = c_1^{l_1} ... c_parts^{l_parts}` of
/// `(c_1 x + ... + c_parts x^parts)^size` contributing to `x^weight`.
pub fn weighted_compositions(parts: usize, size: u32, weight: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if size == 0 && weight == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; parts];
    fill(parts, size, weight, &mut cur, &mut out);
    out
}

// Chooses l_t for t = idx down to 1; the smallest weight left uses the
// remaining size at weight 1, the largest at weight idx.
fn fill(idx: usize, size: u32, weight: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let w = idx as u32;
    if idx == 1 {
        if size == weight {
            cur[0] = size;
            out.push(cur.clone());
            cur[0] = 0;
        }
        return;
    }
    for l in 0..=size {
        let used = l * w;
        if used > weight {
            break;
        }
        let (s, r) = (size - l, weight - used);
        if r < s || r > s * (w - 1) {
            continue;
        }
        cur[idx - 1] = l;
        fill(idx - 1, s, r, cur, out);
    }
    cur[idx - 1] = 0;
}

/// Lexicographically ordered `r`-subsets of `0..n`.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..r).rev().find(|&p| idx[p] != p + n - r) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..r {
            idx[q] = idx[q - 1] + 1;
        }
    }
}
