//! Coefficients of the solution of `y = Q(x, y)` as finite sums of
//! multinomials, and the same sums written directly in terms of a vanishing
//! polynomial and a root prefix.
//!
//! For `Q = Σ b_{l,m} x^l y^m` the `n`-th coefficient of the solution is
//!
//! ```text
//! c_n = Σ_m (1/m) Σ_{|k| = m, ||k||_1 = n, ||k||_2 = m - 1} m!/k! Π b^k
//! ```
//!
//! where `k` runs over exponent vectors on the support of `Q`, `||k||_1`
//! weighs by `l` and `||k||_2` by `m`. Only `m <= 2n - 1` contributes, and
//! only `m <= n` when `x` divides `Q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{rat, BivarPoly, Mono, Rat, TruncatedSeries};
use crate::combinat::{factorial, factorial_ratio, weighted_compositions};
use crate::error::{input, Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Node counter shared by one enumeration request.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::Budget { limit: self.limit });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

/// `y = Q(x, y)` with `Q(0, 0) = ∂Q/∂y(0, 0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHenselEq {
    q: BivarPoly,
}

impl ReducedHenselEq {
    pub fn new(q: BivarPoly) -> Result<Self> {
        if !q.coeff(0, 0).is_zero() {
            return input("Q(0,0) must vanish");
        }
        if !q.coeff(0, 1).is_zero() {
            return input("∂Q/∂y(0,0) must vanish");
        }
        Ok(ReducedHenselEq { q })
    }

    pub fn q(&self) -> &BivarPoly {
        &self.q
    }

    /// `Q(x, 0) ≢ 0`; without it the solution is `y = 0`.
    pub fn has_pure_x_term(&self) -> bool {
        self.q.terms().any(|(m, _)| m.j == 0)
    }

    /// No term `b_{0,m} y^m`, i.e. `x` divides `Q`.
    pub fn no_pure_x_powers(&self) -> bool {
        self.q.terms().all(|(m, _)| m.i >= 1)
    }

    /// `y - Q(x, y)` evaluated at a candidate solution.
    pub fn residual(&self, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        let t = y.precision();
        Ok(y.sub(&self.q.eval_at_series(y, t)?))
    }
}

/// Exponents `k_{l,m}` over the support of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionVector {
    pub exps: Vec<(Mono, u32)>,
    /// `|k| = Σ k`.
    pub size: u32,
    /// `||k||_1 = Σ l k`.
    pub weight_x: u32,
    /// `||k||_2 = Σ m k`.
    pub weight_y: u32,
}

impl CompositionVector {
    pub fn new(exps: Vec<(Mono, u32)>) -> Self {
        let size = exps.iter().map(|(_, k)| k).sum();
        let weight_x = exps.iter().map(|(m, k)| m.i * k).sum();
        let weight_y = exps.iter().map(|(m, k)| m.j * k).sum();
        CompositionVector {
            exps,
            size,
            weight_x,
            weight_y,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Outer sum up to `2n - 1`.
    Full,
    /// Outer sum up to `n`; requires `x | Q`.
    Restricted,
}

type Leaf<'f> = dyn FnMut(&[(Mono, &Rat)], &[u32]) -> Result<()> + 'f;

struct Walk<'a> {
    support: Vec<(Mono, &'a Rat)>,
    n: u32,
    max_size: u32,
    exps: Vec<u32>,
}

impl Walk<'_> {
    // `excess` is Σ (m - 1) k, which must end at -1. Only m = 0 terms lower
    // it, each costing at least 1 of the remaining x-weight.
    fn go(
        &mut self,
        idx: usize,
        size: u32,
        wx: u32,
        excess: i64,
        budget: &mut Budget,
        leaf: &mut Leaf<'_>,
    ) -> Result<()> {
        budget.tick()?;
        if excess + 1 > i64::from(self.n - wx) {
            return Ok(());
        }
        if idx == self.support.len() {
            if wx == self.n && excess == -1 {
                leaf(&self.support, &self.exps)?;
            }
            return Ok(());
        }
        let mono = self.support[idx].0;
        let mut k = 0;
        loop {
            let (s, w) = (size + k, wx + mono.i * k);
            if s > self.max_size || w > self.n {
                break;
            }
            self.exps[idx] = k;
            let e = excess + i64::from(k) * (i64::from(mono.j) - 1);
            self.go(idx + 1, s, w, e, budget, leaf)?;
            k += 1;
        }
        self.exps[idx] = 0;
        Ok(())
    }
}

fn max_size(eq: &ReducedHenselEq, n: u32, variant: Variant) -> Result<u32> {
    match variant {
        Variant::Full => Ok(2 * n - 1),
        Variant::Restricted if eq.no_pure_x_powers() => Ok(n),
        Variant::Restricted => input("the m <= n bound needs x to divide Q"),
    }
}

fn walk(
    eq: &ReducedHenselEq,
    n: u32,
    variant: Variant,
    budget: &mut Budget,
    leaf: &mut Leaf<'_>,
) -> Result<()> {
    if n == 0 {
        return input("coefficients are indexed from 1");
    }
    let max_size = max_size(eq, n, variant)?;
    let support: Vec<(Mono, &Rat)> = eq.q.terms().collect();
    let len = support.len();
    let mut w = Walk {
        support,
        n,
        max_size,
        exps: vec![0; len],
    };
    w.go(0, 0, 0, 0, budget, leaf)
}

/// Every exponent vector contributing to `c_n`.
pub fn compositions(
    eq: &ReducedHenselEq,
    n: u32,
    variant: Variant,
    budget: &mut Budget,
) -> Result<Vec<CompositionVector>> {
    let mut out = Vec::new();
    walk(eq, n, variant, budget, &mut |support, exps| {
        out.push(CompositionVector::new(
            support
                .iter()
                .zip(exps)
                .filter(|(_, &k)| k > 0)
                .map(|(&(m, _), &k)| (m, k))
                .collect(),
        ));
        Ok(())
    })?;
    Ok(out)
}

pub fn fs_coefficient(
    eq: &ReducedHenselEq,
    n: u32,
    variant: Variant,
    budget: &mut Budget,
) -> Result<Rat> {
    let mut total = Rat::zero();
    walk(eq, n, variant, budget, &mut |support, exps| {
        let size: u32 = exps.iter().sum();
        let mut term = factorial_ratio(size - 1, exps);
        for (&(_, b), &k) in support.iter().zip(exps) {
            if k > 0 {
                term *= rat::pow(b, k as usize);
            }
        }
        total += term;
        Ok(())
    })?;
    Ok(total)
}

/// `c_1, ..., c_T` of the solution.
pub fn fs_expand(
    eq: &ReducedHenselEq,
    t: usize,
    variant: Variant,
    budget: &mut Budget,
) -> Result<TruncatedSeries> {
    if t == 0 {
        return input("expansion length must be at least 1");
    }
    let coeffs = (1..=t as u32)
        .map(|n| fs_coefficient(eq, n, variant, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_tail(&coeffs))
}

/// One term `(j! / (m! L!)) C^L x^l y^m` of `a_{i,j} x^i (z_{k+1} + x^(k+1) y)^j`
/// landing in `Q_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub l: u32,
    pub m: u32,
    pub lvec: Vec<u32>,
    pub weight: BigInt,
}

/// The atoms of every support element of `P`, in the support order.
#[derive(Clone, Debug)]
pub struct AtomTable {
    support: Vec<(Mono, Rat)>,
    groups: Vec<Vec<Atom>>,
    parts: usize,
}

impl AtomTable {
    /// Atoms with `1 <= l <= max_l`, for `C = (c_1, ..., c_{k+1})`.
    pub fn new(p: &BivarPoly, k: usize, i_k: u32, max_l: u32) -> Self {
        let step = k as u32 + 1;
        let support: Vec<(Mono, Rat)> = p.terms().map(|(m, a)| (m, a.clone())).collect();
        let groups = support
            .iter()
            .map(|(mono, _)| {
                let mut atoms = Vec::new();
                for m in 0..=mono.j {
                    let size = mono.j - m;
                    for w in size..=size * step {
                        let l = i64::from(w + m * step + mono.i) - i64::from(i_k);
                        if l < 1 || l > i64::from(max_l) {
                            continue;
                        }
                        for lvec in weighted_compositions(k + 1, size, w) {
                            let mut ks = lvec.clone();
                            ks.push(m);
                            atoms.push(Atom {
                                l: l as u32,
                                m,
                                weight: factorial_ratio(mono.j, &ks).to_integer(),
                                lvec,
                            });
                        }
                    }
                }
                atoms
            })
            .collect();
        AtomTable {
            support,
            groups,
            parts: k + 1,
        }
    }

    pub fn support(&self) -> &[(Mono, Rat)] {
        &self.support
    }

    pub fn atoms(&self, g: usize) -> &[Atom] {
        &self.groups[g]
    }
}

struct EState<'a> {
    table: &'a AtomTable,
    s: &'a [u32],
    remaining: Vec<u32>,
    total: Rat,
}

impl EState<'_> {
    fn group(&mut self, g: usize, acc: Rat, budget: &mut Budget) -> Result<()> {
        budget.tick()?;
        if g == self.s.len() {
            if self.remaining.iter().all(|&t| t == 0) {
                self.total += acc;
            }
            return Ok(());
        }
        if self.s[g] == 0 {
            return self.group(g + 1, acc, budget);
        }
        self.atom(g, 0, self.s[g], acc, budget)
    }

    fn atom(&mut self, g: usize, a: usize, left: u32, acc: Rat, budget: &mut Budget) -> Result<()> {
        if left == 0 {
            return self.group(g + 1, acc, budget);
        }
        let atoms = &self.table.groups[g];
        if a == atoms.len() {
            return Ok(());
        }
        budget.tick()?;
        let atom = &atoms[a];
        let mut n = 0;
        let mut acc_n = acc.clone();
        loop {
            self.atom(g, a + 1, left - n, acc_n.clone(), budget)?;
            if n == left || !atom.lvec.iter().zip(&self.remaining).all(|(l, r)| l <= r) {
                break;
            }
            for (r, l) in self.remaining.iter_mut().zip(&atom.lvec) {
                *r -= l;
            }
            n += 1;
            acc_n = acc_n * Rat::from_integer(atom.weight.clone()) / rat::int(i64::from(n));
        }
        for (r, l) in self.remaining.iter_mut().zip(&atom.lvec) {
            *r += l * n;
        }
        Ok(())
    }
}

/// `e_{T_S} = Σ q!/Π n! Π (j!/(m! L!))^n` over atom multiplicities `n` that
/// use `s_{i,j}` atoms of each support element and whose `L` add up to `T`.
pub fn e_coefficient(
    table: &AtomTable,
    s: &[u32],
    t: &[u32],
    budget: &mut Budget,
) -> Result<BigInt> {
    if s.len() != table.groups.len() || t.len() != table.parts {
        return input("index vectors do not match the atom table");
    }
    let q: u32 = s.iter().sum();
    let mut st = EState {
        table,
        s,
        remaining: t.to_vec(),
        total: Rat::zero(),
    };
    st.group(0, Rat::from_integer(factorial(q)), budget)?;
    debug_assert!(st.total.is_integer());
    Ok(st.total.to_integer())
}

/// `c_{k+1+p}` from `P`, `c_1..c_{k+1}`, `i_k` and `ω0`, for `k >= k0 + 1`:
///
/// ```text
/// Σ_{q=1..p} (1/q) (-1/ω0)^q Σ_{|S| = q, ||S||_2 >= q-1} A^S
///     Σ_{|T| = ||S||_2 - q + 1, ||T|| = p + q i_k - (q-1)(k+1) - ||S||_1} e_{T_S} C^T
/// ```
pub fn closed_form_coefficient(
    p: &BivarPoly,
    c: &[Rat],
    k: usize,
    i_k: u32,
    omega0: &Rat,
    p_index: u32,
    budget: &mut Budget,
) -> Result<Rat> {
    if c.len() < k + 1 {
        return Err(Error::Precision {
            needed: k + 1,
            available: c.len(),
        });
    }
    if p_index == 0 {
        return input("p must be at least 1");
    }
    if omega0.is_zero() {
        return Err(Error::NotSimpleRoot("ω0 vanishes".into()));
    }
    let c = &c[..=k];
    // Every atom has l >= 1 and the l of the chosen atoms add up to p.
    let table = AtomTable::new(p, k, i_k, p_index);
    let lmin: Vec<Option<u32>> = table
        .groups
        .iter()
        .map(|g| g.iter().map(|a| a.l).min())
        .collect();
    let neg_inv = -omega0.recip();
    let mut total = Rat::zero();
    for q in 1..=p_index {
        let mut inner = Rat::zero();
        let mut s = vec![0u32; table.support.len()];
        each_s(&lmin, 0, q, p_index, &mut s, &mut |s| {
            let (wx, wy): (u32, u32) = table
                .support
                .iter()
                .zip(s)
                .fold((0, 0), |(a, b), ((m, _), &n)| (a + m.i * n, b + m.j * n));
            if wy + 1 < q {
                return Ok(());
            }
            let t_size = wy + 1 - q;
            let t_weight = i64::from(p_index) + i64::from(q) * i64::from(i_k)
                - i64::from(q - 1) * (k as i64 + 1)
                - i64::from(wx);
            let Ok(t_weight) = u32::try_from(t_weight) else {
                return Ok(());
            };
            let mut sum_t = Rat::zero();
            for t in weighted_compositions(k + 1, t_size, t_weight) {
                let e = e_coefficient(&table, s, &t, budget)?;
                if e.is_zero() {
                    continue;
                }
                let mut term = Rat::from_integer(e);
                for (cn, &tn) in c.iter().zip(&t) {
                    if tn > 0 {
                        term *= rat::pow(cn, tn as usize);
                    }
                }
                sum_t += term;
            }
            if sum_t.is_zero() {
                return Ok(());
            }
            let mut a_s = Rat::one();
            for ((_, a), &n) in table.support.iter().zip(s) {
                if n > 0 {
                    a_s *= rat::pow(a, n as usize);
                }
            }
            inner += a_s * sum_t;
            Ok(())
        })?;
        total += inner * rat::pow(&neg_inv, q as usize) / rat::int(i64::from(q));
    }
    Ok(total)
}

// Multisets S of size q over the support; a support element without atoms
// cannot appear, and the smallest l of each chosen element must fit in p.
fn each_s(
    lmin: &[Option<u32>],
    g: usize,
    left: u32,
    l_left: u32,
    s: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if left == 0 {
        return f(s);
    }
    if g == s.len() {
        return Ok(());
    }
    each_s(lmin, g + 1, left, l_left, s, f)?;
    let Some(lm) = lmin[g] else {
        return Ok(());
    };
    for n in 1..=left {
        if lm * n > l_left {
            break;
        }
        s[g] = n;
        each_s(lmin, g + 1, left - n, l_left - lm * n, s, f)?;
    }
    s[g] = 0;
    Ok(())
}
