//! From a vanishing polynomial and a root prefix to a reduced Henselian
//! equation for the rest of the root.
//!
//! `P_k(x, y) = P(x, z_k + x^(k+1) y)` with `i_k = ord_x P_k`. Along a root
//! the orders strictly increase; along a simple root they eventually
//! increase by exactly one, from the index `k0` on.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{rat, shift_step, BivarPoly, Rat, TruncatedSeries};
use crate::combinat::{factorial_ratio, weighted_compositions};
use crate::error::{input, Error, Result};
use crate::flajolet_soria::ReducedHenselEq;

/// The orders `i_0, i_1, ...` computed so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTrace {
    /// `(k, i_k)` for consecutive `k` starting at 0.
    pub entries: Vec<(usize, u32)>,
    /// Least `k` with `i_{k+1} = i_k + 1`, if seen before any failure.
    pub stable_from: Option<usize>,
    /// First `k` with `i_k <= i_{k-1}`: the seed is not a root prefix.
    pub failure: Option<usize>,
}

impl OrderTrace {
    pub fn order(&self, k: usize) -> Option<u32> {
        self.entries.get(k).map(|&(_, i)| i)
    }
}

/// Walks `P_0, P_1, ...` using the seed coefficients, calling `visit` with
/// each `P_k`; stops when `visit` returns false or the seed runs out.
fn walk_shifts(
    p: &BivarPoly,
    seed: &[Rat],
    k_max: usize,
    mut visit: impl FnMut(usize, &BivarPoly) -> bool,
) {
    let mut pk = p.compose_y(&BivarPoly::monomial(1, 1, Rat::one()));
    for k in 0..=k_max.min(seed.len()) {
        if !visit(k, &pk) || k == k_max.min(seed.len()) {
            return;
        }
        pk = shift_step(&pk, &seed[k]);
    }
}

fn check_poly(p: &BivarPoly) -> Result<()> {
    if p.deg_y() == 0 {
        return input("polynomial must involve y");
    }
    Ok(())
}

fn check_seed(c: &TruncatedSeries) -> Result<()> {
    if !c.coeff(0).is_zero() {
        return input("seed must have no constant term");
    }
    if c.precision() == 0 || c.coeff(1).is_zero() {
        return input("seed must start with c_1 != 0");
    }
    Ok(())
}

/// `i_k` for `k = 0..=k_max`, stopping early at the first failure.
pub fn order_sequence(p: &BivarPoly, c: &TruncatedSeries, k_max: usize) -> Result<OrderTrace> {
    check_poly(p)?;
    check_seed(c)?;
    c.require_precision(k_max)?;
    let mut trace = OrderTrace {
        entries: Vec::new(),
        stable_from: None,
        failure: None,
    };
    walk_shifts(p, c.tail(), k_max, |k, pk| {
        let i = pk.ord_x().expect("P_k is nonzero");
        if let Some(&(_, prev)) = trace.entries.last() {
            if i <= prev {
                trace.failure = Some(k);
                trace.stable_from = None;
                return false;
            }
            if i == prev + 1 && trace.stable_from.is_none() {
                trace.stable_from = Some(k - 1);
            }
        }
        trace.entries.push((k, i));
        true
    });
    Ok(trace)
}

/// Branch-separation data of a simple root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub k0: usize,
    pub i_k0: u32,
    /// `P_{k0+1}`, whose `x^(i_k0+1) y` coefficient is `ω0`.
    pub shifted: BivarPoly,
}

impl Separation {
    /// `e = i_k0 - k0 - 1 = ord_x ∂P/∂y(x, y0)`.
    pub fn derivative_order(&self) -> usize {
        self.i_k0 as usize - self.k0 - 1
    }

    /// `ω0` read off `P_{k0+1}`.
    pub fn omega0(&self) -> Rat {
        self.shifted.coeff(self.i_k0 + 1, 1)
    }

    /// `c_{k0+2} = -π_{k0, i_k0 + 1}(c_{k0+1}) / ω0`, read off `P_{k0+1}`.
    pub fn next_coefficient(&self) -> Rat {
        -self.shifted.coeff(self.i_k0 + 1, 0) / self.omega0()
    }
}

/// Upper bound `2 dx dy + 1` on `k0`.
pub fn k0_bound(p: &BivarPoly) -> usize {
    2 * p.deg_x() as usize * p.deg_y() as usize + 1
}

/// Least `k0` with `i_{k0+1} = i_{k0} + 1`, using as few seed terms as
/// possible (`k0 + 1` of them).
pub fn separate(p: &BivarPoly, c: &TruncatedSeries) -> Result<Separation> {
    check_poly(p)?;
    check_seed(c)?;
    let bound = k0_bound(p);
    let seed = c.tail();
    let mut prev: Option<u32> = None;
    let mut outcome = None;
    walk_shifts(p, seed, bound + 1, |k, pk| {
        let i = pk.ord_x().expect("P_k is nonzero");
        if let Some(prev_i) = prev {
            if i <= prev_i {
                outcome = Some(Err(Error::NotARoot { k }));
                return false;
            }
            if i == prev_i + 1 {
                outcome = Some(Ok(Separation {
                    k0: k - 1,
                    i_k0: prev_i,
                    shifted: pk.clone(),
                }));
                return false;
            }
        }
        prev = Some(i);
        true
    });
    match outcome {
        Some(r) => r,
        None if seed.len() > bound => Err(Error::NotSimpleRoot(format!(
            "orders never increase by one up to k = {}",
            bound + 1
        ))),
        None => Err(Error::Precision {
            needed: bound + 1,
            available: seed.len(),
        }),
    }
}

pub fn find_k0(p: &BivarPoly, c: &TruncatedSeries) -> Result<usize> {
    separate(p, c).map(|s| s.k0)
}

/// `Σ_{i,j} a_{i,j} Σ_{|L| = size(j), ||L|| = weight(i)} (j! / L!) C^L` over
/// `C = (c_1, ..., c_parts)`, skipping terms whose sizes are out of range.
fn coefficient_sum(
    p: &BivarPoly,
    c: &[Rat],
    size: impl Fn(u32) -> Option<u32>,
    weight: impl Fn(u32) -> Option<u32>,
) -> Rat {
    let mut total = Rat::zero();
    for (m, a) in p.terms() {
        let (Some(s), Some(w)) = (size(m.j), weight(m.i)) else {
            continue;
        };
        for l in weighted_compositions(c.len(), s, w) {
            let mut term = factorial_ratio(m.j, &l) * a;
            for (cn, &e) in c.iter().zip(&l) {
                if e > 0 {
                    term *= rat::pow(cn, e as usize);
                }
            }
            total += term;
        }
    }
    total
}

fn sub(a: i64, b: i64) -> Option<u32> {
    u32::try_from(a - b).ok()
}

/// `ω0 = Σ a_{i,j} Σ_{|L| = j-1, ||L|| = i_k0 - k0 - 1 - i} (j! / L!) C^L`
/// with `C = (c_1, ..., c_{k0+1})`: the leading coefficient of
/// `∂P/∂y(x, z_{k0+1})`.
pub fn omega0_closed(p: &BivarPoly, c: &TruncatedSeries, k0: usize, i_k0: u32) -> Result<Rat> {
    c.require_precision(k0 + 1)?;
    let e = i64::from(i_k0) - k0 as i64 - 1;
    let omega = coefficient_sum(
        p,
        &c.tail()[..=k0],
        |j| j.checked_sub(1),
        |i| sub(e, i64::from(i)),
    );
    if omega.is_zero() {
        return Err(Error::NotSimpleRoot("ω0 vanishes".into()));
    }
    Ok(omega)
}

/// `c_{k0+2} = -(1/ω0) Σ a_{i,j} Σ_{|L| = j, ||L|| = i_k0 + 1 - i} (j! / L!) C^L`
/// with `C = (c_1, ..., c_{k0+1})`.
pub fn next_coefficient_closed(
    p: &BivarPoly,
    c: &TruncatedSeries,
    k0: usize,
    i_k0: u32,
    omega0: &Rat,
) -> Result<Rat> {
    c.require_precision(k0 + 1)?;
    let top = i64::from(i_k0) + 1;
    let s = coefficient_sum(p, &c.tail()[..=k0], Some, |i| sub(top, i64::from(i)));
    Ok(-s / omega0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselForm {
    pub k: usize,
    pub k0: usize,
    pub i_k: u32,
    pub omega0: Rat,
    /// `y = Q_k(x, y)`, solved by `(y0 - z_{k+1}) / x^(k+1)`.
    pub eq: ReducedHenselEq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HenselOutcome {
    Equation(HenselForm),
    /// `z_{k+1}` is itself a root of `P`; its coefficients `c_1..c_{k+1}`.
    PolynomialRoot(Vec<Rat>),
}

/// `b_{l,m} = (-1/ω0) Σ_{i, j>=m} a_{i,j} Σ_{|L| = j-m, ||L|| = l + i_k - m(k+1) - i}
/// j! / (m! L!) C^L` for `l >= 1`, with `C = (c_1, ..., c_{k+1})`.
///
/// Terms with `l <= 0` must reduce to `ω0 y`; anything else means the seed
/// is not a root prefix.
fn hensel_coefficients(
    p: &BivarPoly,
    c: &[Rat],
    k: usize,
    i_k: u32,
    omega0: &Rat,
) -> Result<BivarPoly> {
    let step = k as u32 + 1;
    let mut lowest: BTreeMap<(i64, u32), Rat> = BTreeMap::new();
    let mut q = BivarPoly::zero();
    for (mono, a) in p.terms() {
        for m in 0..=mono.j {
            let size = mono.j - m;
            for w in size..=size * step {
                let mut acc = Rat::zero();
                for lv in weighted_compositions(c.len(), size, w) {
                    let mut ks = lv.clone();
                    ks.push(m);
                    let mut term = factorial_ratio(mono.j, &ks);
                    for (cn, &e) in c.iter().zip(&lv) {
                        if e > 0 {
                            term *= rat::pow(cn, e as usize);
                        }
                    }
                    acc += term;
                }
                if acc.is_zero() {
                    continue;
                }
                acc *= a;
                let l = i64::from(w + m * step + mono.i) - i64::from(i_k);
                if l >= 1 {
                    q.add_term(l as u32, m, acc);
                } else {
                    *lowest.entry((l, m)).or_insert_with(Rat::zero) += acc;
                }
            }
        }
    }
    lowest.retain(|_, v| !v.is_zero());
    if lowest.len() != 1 || lowest.get(&(0, 1)) != Some(omega0) {
        return Err(Error::NotARoot { k: k + 1 });
    }
    Ok(q.scale(&(-omega0.recip())))
}

/// The reduced Henselian equation for the tail after `z_{k+1}`, for `k > k0`.
pub fn henselize(p: &BivarPoly, c: &TruncatedSeries, k: usize) -> Result<HenselOutcome> {
    let sep = separate(p, c)?;
    if k <= sep.k0 {
        return input(format!("k = {k} must exceed k0 = {}", sep.k0));
    }
    c.require_precision(k + 1)?;
    let trace = order_sequence(p, c, k + 1)?;
    if let Some(kf) = trace.failure {
        return Err(Error::NotARoot { k: kf });
    }
    let i_k = trace.order(k).expect("trace covers k");
    let z: Vec<Rat> = c.tail()[..=k].to_vec();
    if p.eval_at_polynomial(&z).is_zero() {
        return Ok(HenselOutcome::PolynomialRoot(z));
    }
    let omega0 = omega0_closed(p, c, sep.k0, sep.i_k0)?;
    let q = hensel_coefficients(p, &z, k, i_k, &omega0)?;
    Ok(HenselOutcome::Equation(HenselForm {
        k,
        k0: sep.k0,
        i_k,
        omega0,
        eq: ReducedHenselEq::new(q)?,
    }))
}

/// `P(x, z_{k+1} + x^(k+1) y)` recomputed by substitution, for checking
/// `−ω0 x^{i_k} (−y + Q_k)` against it.
pub fn shifted_at(p: &BivarPoly, c: &TruncatedSeries, k: usize) -> Result<BivarPoly> {
    c.require_precision(k + 1)?;
    let z = crate::algebra::poly::polynomial_in_x(&c.tail()[..=k]);
    Ok(p.compose_y(&z.add(&BivarPoly::monomial(k as u32 + 1, 1, Rat::one()))))
}

/// `−ω0 x^{i_k} (−y + Q_k(x, y))`.
pub fn rebuild_shifted(form: &HenselForm) -> BivarPoly {
    let r = form.eq.q().sub(&BivarPoly::monomial(0, 1, Rat::one()));
    r.scale(&-form.omega0.clone()).shift_x(form.i_k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{frac, int};

    fn series(v: &[Rat]) -> TruncatedSeries {
        TruncatedSeries::from_tail(v)
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&n| int(n)).collect()
    }

    fn reference() -> BivarPoly {
        BivarPoly::from_int_terms(&[(2, 0, -1), (2, 1, -2), (0, 2, 1), (2, 2, 1)])
    }

    fn reference_root() -> Vec<Rat> {
        vec![int(1), int(1), int(0), int(-1), frac(-1, 2)]
    }

    #[test]
    fn reference_orders_and_separation() {
        let c = series(&reference_root());
        let trace = order_sequence(&reference(), &c, 4).unwrap();
        assert_eq!(trace.order(0), Some(2));
        assert_eq!(trace.order(1), Some(3));
        assert_eq!(trace.order(2), Some(4));
        assert_eq!(trace.failure, None);
        let sep = separate(&reference(), &c).unwrap();
        assert_eq!((sep.k0, sep.i_k0), (0, 2));
        assert_eq!(sep.omega0(), int(2));
        assert_eq!(sep.derivative_order(), 1);
        assert_eq!(omega0_closed(&reference(), &c, 0, 2).unwrap(), int(2));
        assert_eq!(sep.next_coefficient(), int(1));
        assert_eq!(
            next_coefficient_closed(&reference(), &c, 0, 2, &int(2)).unwrap(),
            int(1)
        );
    }

    #[test]
    fn reference_hensel_table() {
        let HenselOutcome::Equation(form) =
            henselize(&reference(), &series(&ints(&[1, 1])), 1).unwrap()
        else {
            panic!("expected an equation");
        };
        assert_eq!((form.k, form.k0, form.i_k), (1, 0, 3));
        let q = form.eq.q();
        let want = [
            ((1, 0), int(0)),
            ((1, 1), int(0)),
            ((2, 0), int(-1)),
            ((3, 0), frac(-1, 2)),
            ((1, 2), frac(-1, 2)),
            ((2, 1), int(-1)),
            ((3, 1), int(-1)),
            ((3, 2), frac(-1, 2)),
        ];
        for ((l, m), b) in want {
            assert_eq!(q.coeff(l, m), b, "b[{l},{m}]");
        }
        assert_eq!(
            rebuild_shifted(&form),
            shifted_at(&reference(), &series(&ints(&[1, 1])), 1).unwrap()
        );
    }

    #[test]
    fn hensel_equation_reproduces_the_tail() {
        let c = series(&reference_root());
        let HenselOutcome::Equation(form) = henselize(&reference(), &c, 2).unwrap() else {
            panic!("expected an equation");
        };
        // y = c_4 x + c_5 x^2 + ...
        let y = series(&[int(-1), frac(-1, 2)]);
        let r = form.eq.residual(&y).unwrap();
        assert!(r.valuation().exceeds(2));
        assert_eq!(
            rebuild_shifted(&form),
            shifted_at(&reference(), &c, 2).unwrap()
        );
    }

    #[test]
    fn polynomial_root_is_reported() {
        // (y - x)(y + 1)
        let p = BivarPoly::from_int_terms(&[(0, 2, 1), (0, 1, 1), (1, 1, -1), (1, 0, -1)]);
        let out = henselize(&p, &series(&ints(&[1, 0])), 1).unwrap();
        assert_eq!(out, HenselOutcome::PolynomialRoot(ints(&[1, 0])));
    }

    #[test]
    fn wrong_coefficient_is_located() {
        let c = series(&ints(&[1, 5, 0]));
        let trace = order_sequence(&reference(), &c, 3).unwrap();
        assert_eq!(trace.failure, Some(2));
        assert_eq!(
            henselize(&reference(), &c, 2).unwrap_err(),
            Error::NotARoot { k: 2 }
        );
    }

    #[test]
    fn close_branches() {
        // (y - x)(y - x - x^5)
        let p =
            BivarPoly::from_int_terms(&[(0, 2, 1), (1, 1, -2), (5, 1, -1), (2, 0, 1), (6, 0, 1)]);
        let c = series(&ints(&[1, 0, 0, 0, 1, 0]));
        let sep = separate(&p, &c).unwrap();
        assert_eq!(sep.k0, 4);
        assert_eq!(sep.omega0(), int(1));
        assert_eq!(omega0_closed(&p, &c, sep.k0, sep.i_k0).unwrap(), int(1));
        assert_eq!(find_k0(&p, &c).unwrap(), 4);
        let out = henselize(&p, &c, 5).unwrap();
        assert!(matches!(out, HenselOutcome::PolynomialRoot(_)));
        assert!(henselize(&p, &c, 4).is_err());
    }

    #[test]
    fn constant_in_y_is_rejected() {
        let p = BivarPoly::from_int_terms(&[(1, 0, 1)]);
        assert!(matches!(
            separate(&p, &series(&ints(&[1]))),
            Err(Error::Input(_))
        ));
    }
}
