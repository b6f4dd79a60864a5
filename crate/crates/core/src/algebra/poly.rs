//! Sparse bivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{self, Rat};
use super::series::{series_powers, TruncatedSeries};
use crate::error::{input, Result};

/// Exponent pair of the monomial `x^i y^j`.
///
/// Ordered anti-lexicographically: first by `j`, then by `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub i: u32,
    pub j: u32,
}

impl Mono {
    pub const fn new(i: u32, j: u32) -> Self {
        Mono { i, j }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `Σ a_{i,j} x^i y^j` with no zero coefficient stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rat)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Convenience for small integer fixtures.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| (i, j, rat::int(c))))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = Mono::new(i, j);
        let slot = self.terms.entry(key).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms
            .get(&Mono::new(i, j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Terms in anti-lexicographic order of their exponents.
    pub fn terms(&self) -> impl Iterator<Item = (Mono, &Rat)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Mono> {
        self.terms.keys().copied().collect()
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|m| m.i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|m| m.j).max().unwrap_or(0)
    }

    /// Least power of x appearing; `None` for the zero polynomial.
    pub fn ord_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.i).min()
    }

    /// The coefficient of `x^i`, as a dense polynomial in `y`.
    pub fn x_coefficient(&self, i: u32) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.deg_y() as usize + 1];
        for (m, c) in self.terms() {
            if m.i == i {
                out[m.j as usize] = c.clone();
            }
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.i, m.j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.i, m.j, -c);
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a.i + b.i, a.j + b.j, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(Rat::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Multiplies by `x^n`.
    pub fn shift_x(&self, n: u32) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.i + n, m.j), c.clone()))
                .collect(),
        }
    }

    /// Divides by `x^n`; every term must be divisible.
    pub fn unshift_x(&self, n: u32) -> Result<Self> {
        if self.terms.keys().any(|m| m.i < n) {
            return input(format!("polynomial is not divisible by x^{n}"));
        }
        Ok(BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.i - n, m.j), c.clone()))
                .collect(),
        })
    }

    pub fn derivative_y(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            if m.j > 0 {
                out.add_term(m.i, m.j - 1, c * rat::int(m.j as i64));
            }
        }
        out
    }

    /// `P(x, g(x, y))`.
    pub fn compose_y(&self, g: &BivarPoly) -> Self {
        let dy = self.deg_y();
        let mut powers = Vec::with_capacity(dy as usize + 1);
        powers.push(Self::constant(Rat::one()));
        for j in 1..=dy as usize {
            let next = powers[j - 1].mul(g);
            powers.push(next);
        }
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            for (pm, pc) in powers[m.j as usize].terms() {
                out.add_term(m.i + pm.i, pm.j, c * pc);
            }
        }
        out
    }

    /// `P(x, y_0(x))` truncated at `x^precision`.
    pub fn eval_at_series(&self, y: &TruncatedSeries, precision: usize) -> Result<TruncatedSeries> {
        let powers = series_powers(y, self.deg_y() as usize, precision)?;
        let mut out = TruncatedSeries::zero(precision);
        for (m, c) in self.terms() {
            out.add_assign_scaled_shifted(&powers[m.j as usize], c, m.i as usize);
        }
        Ok(out)
    }

    /// Exact `P(x, z(x))` for a polynomial `z` given by `c_1, ..., c_k`.
    pub fn eval_at_polynomial(&self, z: &[Rat]) -> BivarPoly {
        self.compose_y(&polynomial_in_x(z))
    }

    /// Scales to a primitive integer polynomial whose anti-lexicographically
    /// greatest term is positive.
    pub fn normalized(&self) -> Self {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return Self::zero();
        };
        let den = rat::common_denominator(self.terms.values());
        let cleared: Vec<Rat> = self
            .terms
            .values()
            .map(|c| c * Rat::from_integer(den.clone()))
            .collect();
        let content = rat::integer_content(&cleared);
        let mut factor = Rat::new(den, content);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn integer_coefficients(&self) -> Option<Vec<(Mono, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (*m, c.to_integer())))
            .collect()
    }
}

/// `c_1 x + ... + c_k x^k` as a polynomial free of `y`.
pub fn polynomial_in_x(z: &[Rat]) -> BivarPoly {
    BivarPoly::from_terms(
        z.iter()
            .enumerate()
            .map(|(n, c)| (n as u32 + 1, 0, c.clone())),
    )
}

/// `P_k(x, y) = P(x, z_k + x^(k+1) y)` together with its x-order and x-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPoly {
    pub k: usize,
    pub poly: BivarPoly,
    /// `ord_x P_k`; `None` only when `P` is zero.
    pub order: Option<u32>,
    pub degree: u32,
}

/// Substitutes `y ↦ c_1 x + ... + c_k x^k + x^(k+1) y`, using the first `k`
/// entries of `z`.
pub fn shift_substitute(p: &BivarPoly, z: &[Rat], k: usize) -> Result<ShiftedPoly> {
    if z.len() < k {
        return input(format!(
            "shift by z_{k} needs {k} coefficients, got {}",
            z.len()
        ));
    }
    let g = polynomial_in_x(&z[..k]).add(&BivarPoly::monomial(k as u32 + 1, 1, Rat::one()));
    let poly = p.compose_y(&g);
    Ok(ShiftedPoly {
        k,
        order: poly.ord_x(),
        degree: poly.deg_x(),
        poly,
    })
}

/// `P(x, α + x y)`: one more step of the shift, `P_{k+1}` from `P_k`.
pub fn shift_step(p: &BivarPoly, alpha: &Rat) -> BivarPoly {
    let g = BivarPoly::constant(alpha.clone()).add(&BivarPoly::monomial(1, 1, Rat::one()));
    p.compose_y(&g)
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (m.i == 0 && m.j == 0) {
                factors.push(rat::to_text(&abs));
            }
            match m.i {
                0 => {}
                1 => factors.push("x".into()),
                i => factors.push(format!("x^{i}")),
            }
            match m.j {
                0 => {}
                1 => factors.push("y".into()),
                j => factors.push(format!("y^{j}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
