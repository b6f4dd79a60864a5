//! Reference instances and seeded random generators shared by the self-test
//! and the test suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rat::{frac, int};
use crate::algebra::{BivarPoly, Mono, Rat, SupportShape};

pub type FixtureRng = ChaCha8Rng;

pub fn rng(seed: u64) -> FixtureRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `y^2 + x^2 y^2 - 2 x^2 y - x^2`.
pub fn reference_poly() -> BivarPoly {
    BivarPoly::from_int_terms(&[(2, 0, -1), (2, 1, -2), (0, 2, 1), (2, 2, 1)])
}

/// The branch of [`reference_poly`] with `c_1 = 1`.
pub fn reference_seed() -> Vec<Rat> {
    vec![int(1)]
}

/// Support `F = {x^2 y, y^2, x^2 y^2}`, `G = {x^2}`.
pub fn three_column_shape() -> SupportShape {
    SupportShape::new(
        vec![Mono::new(2, 1), Mono::new(0, 2), Mono::new(2, 2)],
        vec![Mono::new(2, 0)],
    )
    .expect("valid shape")
}

/// A polynomial with a simple root whose first coefficients are integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub poly: BivarPoly,
    /// `c_1, ..., c_{k0+2}`.
    pub seed: Vec<Rat>,
    pub family: &'static str,
}

impl Instance {
    pub fn dx(&self) -> u32 {
        self.poly.deg_x()
    }

    pub fn dy(&self) -> u32 {
        self.poly.deg_y()
    }
}

fn small(rng: &mut FixtureRng, lo: i64, hi: i64, nonzero: bool) -> i64 {
    loop {
        let v = rng.gen_range(lo..=hi);
        if !nonzero || v != 0 {
            return v;
        }
    }
}

/// Coefficients in `[-5, 5]` with `a_00 = 0` and `a_01 != 0`, so the root
/// through the origin is simple with `k0 = 0`; `a_10` and `a_20` are solved
/// for so that `c_1` and `c_2` are prescribed integers.
fn unit_derivative_instance(rng: &mut FixtureRng) -> Instance {
    loop {
        let dx = rng.gen_range(2..=3u32);
        let dy = rng.gen_range(1..=3u32);
        let c1 = small(rng, -2, 2, true);
        let c2 = small(rng, -2, 2, false);
        let mut a = vec![vec![0i64; dy as usize + 1]; dx as usize + 1];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if i + j > 0 && rng.gen_bool(0.5) {
                    *v = small(rng, -5, 5, false);
                }
            }
        }
        a[0][1] = small(rng, -5, 5, true);
        a[1][0] = -a[0][1] * c1;
        let a02 = if dy >= 2 { a[0][2] } else { 0 };
        a[2][0] = -(a[0][1] * c2 + a[1][1] * c1 + a02 * c1 * c1);
        if a[1][0].abs() > 5 || a[2][0].abs() > 5 {
            continue;
        }
        let terms: Vec<(u32, u32, i64)> = a
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(j, &v)| (i as u32, j as u32, v))
            })
            .filter(|t| t.2 != 0)
            .collect();
        let poly = BivarPoly::from_int_terms(&terms);
        if poly.deg_y() == 0 {
            continue;
        }
        return Instance {
            poly,
            seed: vec![int(c1), int(c2)],
            family: "unit-derivative",
        };
    }
}

/// `(y - a x)(y - a x - d x^2) + g x^3 y^2`: two branches agreeing through
/// `x`, so `k0 = 1` and `ord_x ∂P/∂y = 2` along either.
fn close_branch_instance(rng: &mut FixtureRng) -> Instance {
    let a = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
    let d = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
    let g = loop {
        let g = small(rng, -5, 5, true);
        if (g * a * a) % d == 0 {
            break g;
        }
    };
    let poly = BivarPoly::from_int_terms(&[
        (0, 2, 1),
        (1, 1, -2 * a),
        (2, 1, -d),
        (2, 0, a * a),
        (3, 0, a * d),
        (3, 2, g),
    ]);
    let beta = g * a * a / d;
    let seed = if rng.gen_bool(0.5) {
        vec![int(a), int(0), int(beta)]
    } else {
        vec![int(a), int(d), int(-beta)]
    };
    Instance {
        poly,
        seed,
        family: "close-branch",
    }
}

/// `n` instances with `dx, dy <= 3` and integer coefficients in `[-5, 5]`,
/// two unit-derivative ones for every close-branch one.
pub fn liftable_instances(seed: u64, n: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..n)
        .map(|idx| {
            if idx % 3 == 2 {
                close_branch_instance(&mut r)
            } else {
                unit_derivative_instance(&mut r)
            }
        })
        .collect()
}

/// `a_21 x^2 y + a_02 y^2 + a_22 x^2 y^2 + a_20 x^2` with
/// `a_20 = -a_02 c_1^2`, so the support fits [`three_column_shape`] and there is a
/// simple root starting with `c_1 x`. Returns the polynomial and `c_1`.
pub fn three_column_instance(rng: &mut FixtureRng) -> (BivarPoly, Rat) {
    let c1 = small(rng, -3, 3, true);
    let a02 = small(rng, -3, 3, true);
    let a21 = small(rng, -5, 5, true);
    let a22 = small(rng, -5, 5, false);
    let poly = BivarPoly::from_int_terms(&[
        (2, 1, a21),
        (0, 2, a02),
        (2, 2, a22),
        (2, 0, -a02 * c1 * c1),
    ]);
    (poly, int(c1))
}

/// Numerator in `[-9, 9]`, denominator in `[1, 5]`.
pub fn random_rat(rng: &mut FixtureRng) -> Rat {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn random_nonzero_rat(rng: &mut FixtureRng) -> Rat {
    frac(small(rng, -9, 9, true), rng.gen_range(1..=5))
}

/// `c_1, ..., c_len` with `c_1 != 0`.
pub fn random_series(rng: &mut FixtureRng, len: usize) -> Vec<Rat> {
    let mut c = vec![random_nonzero_rat(rng)];
    c.extend((1..len).map(|_| random_rat(rng)));
    c
}
