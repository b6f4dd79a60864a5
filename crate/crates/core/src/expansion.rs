//! Coefficients past a root prefix, by three independent routes.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{BivarPoly, Rat, TruncatedSeries};
use crate::error::{input, Error, Result};
use crate::flajolet_soria::{closed_form_coefficient, fs_expand, Budget, Variant};
use crate::henselization::{
    henselize, next_coefficient_closed, omega0_closed, order_sequence, separate, HenselOutcome,
};
use crate::newton_oracle::newton_lift;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    /// Flajolet–Soria sum on the reduced Henselian equation.
    Fs,
    /// Closed-form sum over the coefficients of `P` and the seed.
    Closed,
    /// Newton iteration.
    Newton,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Closed, Method::Fs, Method::Newton];

    pub fn name(self) -> &'static str {
        match self {
            Method::Fs => "fs",
            Method::Closed => "closed",
            Method::Newton => "newton",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fs" => Ok(Method::Fs),
            "closed" => Ok(Method::Closed),
            "newton" => Ok(Method::Newton),
            _ => input(format!("unknown method {s:?}")),
        }
    }
}

/// Seed data shared by the formula routes: a prefix long enough that
/// `k = len - 1 >= k0 + 1`.
struct Prepared {
    seed: Vec<Rat>,
    extended: bool,
}

fn prepare(p: &BivarPoly, seed: &[Rat], closed: bool) -> Result<Prepared> {
    let c = TruncatedSeries::from_tail(seed);
    let sep = separate(p, &c)?;
    let mut seed = seed.to_vec();
    let extended = seed.len() == sep.k0 + 1;
    if extended {
        let next = if closed {
            let omega = omega0_closed(p, &c, sep.k0, sep.i_k0)?;
            next_coefficient_closed(p, &c, sep.k0, sep.i_k0, &omega)?
        } else {
            sep.next_coefficient()
        };
        seed.push(next);
    }
    Ok(Prepared { seed, extended })
}

fn finish(
    prep: &Prepared,
    count: usize,
    tail: impl FnOnce(usize) -> Result<Vec<Rat>>,
) -> Result<Vec<Rat>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(count);
    if prep.extended {
        out.push(prep.seed.last().expect("extended seed").clone());
    }
    let rest = count - out.len();
    if rest > 0 {
        out.extend(tail(rest)?);
    }
    Ok(out)
}

/// `c_{s+1}, ..., c_{s+count}` for a seed of length `s`.
pub fn expand(
    p: &BivarPoly,
    seed: &[Rat],
    count: usize,
    method: Method,
    budget: &mut Budget,
) -> Result<Vec<Rat>> {
    match method {
        Method::Newton => {
            let r = newton_lift(p, seed, seed.len() + count)?;
            Ok(r.series.tail()[seed.len()..].to_vec())
        }
        Method::Fs => {
            let prep = prepare(p, seed, false)?;
            let k = prep.seed.len() - 1;
            finish(&prep, count, |rest| {
                let c = TruncatedSeries::from_tail(&prep.seed);
                match henselize(p, &c, k)? {
                    HenselOutcome::PolynomialRoot(_) => Ok(vec![Rat::default(); rest]),
                    HenselOutcome::Equation(form) => {
                        // Q_k(0, y) = 0, so the m <= n form of the sum applies.
                        let t = fs_expand(&form.eq, rest, Variant::Restricted, budget)?;
                        Ok(t.tail().to_vec())
                    }
                }
            })
        }
        Method::Closed => {
            let prep = prepare(p, seed, true)?;
            let k = prep.seed.len() - 1;
            finish(&prep, count, |rest| {
                let c = TruncatedSeries::from_tail(&prep.seed);
                let sep = separate(p, &c)?;
                let trace = order_sequence(p, &c, k + 1)?;
                if let Some(kf) = trace.failure {
                    return Err(Error::NotARoot { k: kf });
                }
                let i_k = trace.order(k).expect("trace covers k");
                let omega = omega0_closed(p, &c, sep.k0, sep.i_k0)?;
                (1..=rest as u32)
                    .map(|pi| closed_form_coefficient(p, &prep.seed, k, i_k, &omega, pi, budget))
                    .collect()
            })
        }
    }
}
