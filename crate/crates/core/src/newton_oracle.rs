//! Reference computations kept deliberately independent of the closed
//! formulas: Newton iteration for simple roots and fraction-free
//! determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{rat, BivarPoly, Rat, TruncatedSeries, Valuation};
use crate::error::{input, Error, Result};
use crate::henselization::separate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    /// `c_1, ..., c_T`.
    pub series: TruncatedSeries,
    pub iterations: usize,
    /// Lower bound on `ord_x P(x, z_T)`; always above `T`.
    pub residual_ord: usize,
    pub k0: usize,
    /// `ord_x ∂P/∂y(x, y0)`.
    pub derivative_order: usize,
}

/// Lifts the root of `P` starting with `seed` to precision `t`.
///
/// The first `k0 + 1` seed terms select the root; writing
/// `y = z_{k0+1} + x^(k0+1) v`, Newton's method in `v` is quadratic with a
/// unit derivative, so a root correct through `x^s` becomes correct through
/// `x^(2s - k0)` after one step. Remaining seed terms must agree with the
/// lifted root.
pub fn newton_lift(p: &BivarPoly, seed: &[Rat], t: usize) -> Result<LiftReport> {
    if t == 0 {
        return input("target precision must be at least 1");
    }
    let c = TruncatedSeries::from_tail(seed);
    let sep = separate(p, &c)?;
    let k0 = sep.k0;
    let e = sep.derivative_order();
    let target = t.max(seed.len());
    let dp = p.derivative_y();

    let mut y: Vec<Rat> = seed[..=k0].to_vec();
    let mut known = k0 + 1;
    let mut iterations = 0;
    while known < target {
        let next = (2 * known - k0).min(target);
        let work = next + e;
        let mut ys = y.clone();
        ys.resize(work, Rat::zero());
        let ys = TruncatedSeries::from_tail(&ys);
        let r = p.eval_at_series(&ys, work)?;
        let d = dp.eval_at_series(&ys, work)?;
        if d.valuation() != Valuation::Exact(e) {
            return Err(Error::NotSimpleRoot(format!(
                "∂P/∂y has order {} along the seed, expected {e}",
                d.valuation()
            )));
        }
        if !r.valuation().exceeds(e + known) {
            return Err(Error::NotSimpleRoot(format!(
                "residual order {} too low at precision {known}",
                r.valuation()
            )));
        }
        let delta = r.div(&d)?;
        y.extend((known + 1..=next).map(|n| -delta.coeff(n).clone()));
        known = next;
        iterations += 1;
    }

    if let Some(n) = (0..seed.len()).find(|&n| seed[n] != y[n]) {
        return Err(Error::NotARoot { k: n + 1 });
    }
    y.truncate(t);
    let series = TruncatedSeries::from_tail(&y);
    let check = e + t + 1;
    let mut padded = y.clone();
    padded.resize(check, Rat::zero());
    let residual = p.eval_at_series(&TruncatedSeries::from_tail(&padded), check)?;
    let residual_ord = residual.valuation().lower_bound();
    if residual_ord <= t + e {
        return Err(Error::NotSimpleRoot(format!(
            "final residual order {residual_ord} does not exceed {}",
            t + e
        )));
    }
    Ok(LiftReport {
        series,
        iterations,
        residual_ord,
        k0,
        derivative_order: e,
    })
}

/// Determinant by Bareiss elimination on the matrix with each row scaled
/// to integers, divided back at the end.
pub fn bareiss_det(m: &[Vec<Rat>]) -> Result<Rat> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return input("determinant of a non-square matrix");
    }
    if n == 0 {
        return Ok(Rat::one());
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let den = rat::common_denominator(row);
            let out = row
                .iter()
                .map(|x| (x * Rat::from_integer(den.clone())).to_integer())
                .collect();
            scale *= &den;
            out
        })
        .collect();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Rat::zero());
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = v.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = Rat::new(a[n - 1][n - 1].clone(), scale);
    Ok(if sign { -det } else { det })
}
