//! Power series known modulo `x^(T+1)`.

use std::fmt;

use num_traits::{One, Zero};

use super::rat::Rat;
use crate::error::{input, Error, Result};

/// x-adic order of a truncated series.
///
/// A truncation whose known coefficients are all zero only tells us the
/// order exceeds the precision; it never claims the series is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(usize),
    AtLeast(usize),
}

impl Valuation {
    /// True when the order is known to be strictly greater than `bound`.
    pub fn exceeds(self, bound: usize) -> bool {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v > bound,
        }
    }

    pub fn lower_bound(self) -> usize {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// Dense series `c_0 + c_1 x + ... + c_T x^T + O(x^(T+1))`.
///
/// Index 0 is stored so that substitution results with a constant term fit
/// the same type; series standing for a root `y_0` have `c_0 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    pub fn zero(precision: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rat::zero(); precision + 1],
        }
    }

    pub fn one(precision: usize) -> Self {
        let mut s = Self::zero(precision);
        s.coeffs[0] = Rat::one();
        s
    }

    /// Builds `c_0 + ... + c_T x^T` from coefficients starting at index 0.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return input("a truncated series needs at least the x^0 slot");
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Builds `c_1 x + ... + c_T x^T` with precision `T = tail.len()`.
    pub fn from_tail(tail: &[Rat]) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(Rat::zero());
        coeffs.extend_from_slice(tail);
        TruncatedSeries { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^n`; panics past the precision.
    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `c_1, ..., c_T`.
    pub fn tail(&self) -> &[Rat] {
        &self.coeffs[1..]
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Valuation::Exact(v),
            None => Valuation::AtLeast(self.coeffs.len()),
        }
    }

    pub fn require_precision(&self, needed: usize) -> Result<()> {
        if self.precision() < needed {
            return Err(Error::Precision {
                needed,
                available: self.precision(),
            });
        }
        Ok(())
    }

    pub fn truncate(&self, precision: usize) -> Result<Self> {
        self.require_precision(precision)?;
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=precision].to_vec(),
        })
    }

    /// Product truncated at `x^precision`; both factors must be known that far.
    pub fn mul(&self, other: &Self, precision: usize) -> Result<Self> {
        self.require_precision(precision)?;
        other.require_precision(precision)?;
        let mut out = vec![Rat::zero(); precision + 1];
        for (a_idx, a) in self.coeffs[..=precision].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (b_idx, b) in other.coeffs[..=precision - a_idx].iter().enumerate() {
                if !b.is_zero() {
                    out[a_idx + b_idx] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn add_assign_scaled_shifted(&mut self, other: &Self, scale: &Rat, shift: usize) {
        let prec = self.precision();
        for n in shift..=prec {
            let src = n - shift;
            if src > other.precision() {
                break;
            }
            let c = &other.coeffs[src];
            if !c.is_zero() {
                self.coeffs[n] += scale * c;
            }
        }
    }

    /// Quotient `self / other` when `other` has exact order `e` and `self`
    /// has order at least `e`; the result is known to `precision() - e`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let e = other
            .valuation()
            .exact()
            .ok_or_else(|| Error::Input("division by a series with unknown order".into()))?;
        if self.coeffs.iter().take(e).any(|c| !c.is_zero()) {
            return input("dividend order is below the divisor order");
        }
        let prec = self.precision().min(other.precision());
        if prec < e {
            return Err(Error::Precision {
                needed: e,
                available: prec,
            });
        }
        let out_prec = prec - e;
        let num = &self.coeffs[e..=prec];
        let den = &other.coeffs[e..=prec];
        let lead_inv = den[0].recip();
        let mut q: Vec<Rat> = Vec::with_capacity(out_prec + 1);
        for n in 0..=out_prec {
            let mut acc = num[n].clone();
            for (m, qm) in q.iter().enumerate() {
                let d = &den[n - m];
                if !d.is_zero() && !qm.is_zero() {
                    acc -= qm * d;
                }
            }
            q.push(acc * &lead_inv);
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    pub fn sub(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        TruncatedSeries {
            coeffs: (0..=prec)
                .map(|n| &self.coeffs[n] - &other.coeffs[n])
                .collect(),
        }
    }
}

/// `y^j` truncated at `x^precision`, for a series with zero constant term.
///
/// The result has `c^(j)_n = 0` for `n < j` and `c^(j)_j = c_1^j`.
pub fn series_pow(y: &TruncatedSeries, j: usize, precision: usize) -> Result<TruncatedSeries> {
    Ok(series_powers(y, j, precision)?.pop().expect("j+1 powers"))
}

/// `[y^0, y^1, ..., y^max_j]`, each truncated at `x^precision`.
pub fn series_powers(
    y: &TruncatedSeries,
    max_j: usize,
    precision: usize,
) -> Result<Vec<TruncatedSeries>> {
    y.require_precision(precision)?;
    if !y.coeff(0).is_zero() {
        return input("powers are taken of series without constant term");
    }
    let y = y.truncate(precision)?;
    let mut out = Vec::with_capacity(max_j + 1);
    out.push(TruncatedSeries::one(precision));
    for j in 1..=max_j {
        let next = out[j - 1].mul(&y, precision)?;
        out.push(next);
    }
    Ok(out)
}
