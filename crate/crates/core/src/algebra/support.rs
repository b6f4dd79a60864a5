//! Prescribed supports `(F, G)` for vanishing polynomials.

use super::poly::Mono;
use crate::error::{input, Result};

/// The pair `(F, G)`: `F` holds exponents `(i, j)` with `j >= 1`, `G` holds
/// pure powers `(i, 0)` with `i >= 1`. Both are strictly increasing in the
/// anti-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportShape {
    f: Vec<Mono>,
    g: Vec<Mono>,
}

impl SupportShape {
    pub fn new(f: Vec<Mono>, g: Vec<Mono>) -> Result<Self> {
        if f.windows(2).any(|w| w[0] >= w[1]) {
            return input("F must be strictly increasing anti-lexicographically");
        }
        if g.windows(2).any(|w| w[0] >= w[1]) {
            return input("G must be strictly increasing anti-lexicographically");
        }
        if let Some(m) = f.iter().find(|m| m.j == 0) {
            return input(format!("F element {m} has j = 0"));
        }
        if let Some(m) = g.iter().find(|m| m.j != 0 || m.i == 0) {
            return input(format!(
                "G element {m} must have the form (i,0) with i >= 1"
            ));
        }
        Ok(SupportShape { f, g })
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(mut f: Vec<Mono>, mut g: Vec<Mono>) -> Result<Self> {
        f.sort();
        f.dedup();
        g.sort();
        g.dedup();
        Self::new(f, g)
    }

    /// Every monomial allowed by the degree bounds.
    pub fn full(dx: u32, dy: u32) -> Self {
        let f = (1..=dy)
            .flat_map(|j| (0..=dx).map(move |i| Mono::new(i, j)))
            .collect();
        let g = (1..=dx).map(|i| Mono::new(i, 0)).collect();
        SupportShape { f, g }
    }

    pub fn f(&self) -> &[Mono] {
        &self.f
    }

    pub fn g(&self) -> &[Mono] {
        &self.g
    }

    /// `max i` over `F ∪ G`.
    pub fn dx(&self) -> u32 {
        self.f.iter().chain(&self.g).map(|m| m.i).max().unwrap_or(0)
    }

    /// `max j` over `F`.
    pub fn dy(&self) -> u32 {
        self.f.iter().map(|m| m.j).max().unwrap_or(0)
    }

    pub fn has_g_row(&self, n: usize) -> bool {
        self.g.iter().any(|m| m.i as usize == n)
    }

    pub fn fits(&self, dx: u32, dy: u32) -> bool {
        self.dx() <= dx && self.dy() <= dy
    }

    /// Same `G`, columns restricted to `f`.
    pub fn with_f(&self, f: Vec<Mono>) -> Self {
        SupportShape {
            f,
            g: self.g.clone(),
        }
    }
}

/// Ramification data of a Puiseux series `Σ_{n >= n0} c̃_n x^(n/p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PuiseuxMeta {
    pub ramification: u32,
    pub start: i64,
    pub dy: u32,
}

/// Support allowed for a polynomial cancelling the power series obtained
/// from a Puiseux series by `x^(1/p) ↦ x` and factoring out `x^(n0-1)`.
///
/// Keeps `(i, j)` with `i <= dx`, `j <= dy` and `i ≡ (n0-1) j (mod p)` when
/// `n0 >= 1`, or `i ≡ (1-n0)(dy-j) (mod p)` otherwise. The caller remains
/// responsible for the `x^m` rescaling of the polynomial itself.
pub fn puiseux_support_constraints(meta: PuiseuxMeta, dx: u32) -> Result<SupportShape> {
    if meta.ramification == 0 {
        return input("ramification p must be at least 1");
    }
    let p = i64::from(meta.ramification);
    let admissible = |i: u32, j: u32| {
        let rhs = if meta.start >= 1 {
            (meta.start - 1) * i64::from(j)
        } else {
            (1 - meta.start) * i64::from(meta.dy - j)
        };
        (i64::from(i) - rhs).rem_euclid(p) == 0
    };
    let mut f = Vec::new();
    let mut g = Vec::new();
    for j in 0..=meta.dy {
        for i in 0..=dx {
            if !admissible(i, j) {
                continue;
            }
            match (i, j) {
                (0, 0) => {}
                (_, 0) => g.push(Mono::new(i, 0)),
                _ => f.push(Mono::new(i, j)),
            }
        }
    }
    SupportShape::new(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monos(v: &[(u32, u32)]) -> Vec<Mono> {
        v.iter().map(|&(i, j)| Mono::new(i, j)).collect()
    }

    #[test]
    fn no_ramification_keeps_everything() {
        let meta = PuiseuxMeta {
            ramification: 1,
            start: 1,
            dy: 1,
        };
        let s = puiseux_support_constraints(meta, 1).unwrap();
        assert_eq!(s.f(), monos(&[(0, 1), (1, 1)]).as_slice());
        assert_eq!(s.g(), monos(&[(1, 0)]).as_slice());
    }

    #[test]
    fn square_root_ramification_keeps_even_i() {
        let meta = PuiseuxMeta {
            ramification: 2,
            start: 1,
            dy: 2,
        };
        let s = puiseux_support_constraints(meta, 2).unwrap();
        assert_eq!(s.f(), monos(&[(0, 1), (2, 1), (0, 2), (2, 2)]).as_slice());
        assert_eq!(s.g(), monos(&[(2, 0)]).as_slice());
    }

    #[test]
    fn shifted_start_couples_parities() {
        let meta = PuiseuxMeta {
            ramification: 2,
            start: 2,
            dy: 1,
        };
        let s = puiseux_support_constraints(meta, 2).unwrap();
        assert_eq!(s.f(), monos(&[(1, 1)]).as_slice());
        assert_eq!(s.g(), monos(&[(2, 0)]).as_slice());
    }

    #[test]
    fn negative_start_uses_complementary_congruence() {
        // n0 = -1, p = 3, dy = 2: i ≡ 2(2 - j) (mod 3)
        let meta = PuiseuxMeta {
            ramification: 3,
            start: -1,
            dy: 2,
        };
        let s = puiseux_support_constraints(meta, 4).unwrap();
        assert_eq!(s.g(), monos(&[(1, 0), (4, 0)]).as_slice());
        assert_eq!(s.f(), monos(&[(2, 1), (0, 2), (3, 2)]).as_slice());
    }

    #[test]
    fn zero_ramification_rejected() {
        let meta = PuiseuxMeta {
            ramification: 0,
            start: 1,
            dy: 1,
        };
        assert!(puiseux_support_constraints(meta, 1).is_err());
    }

    #[test]
    fn shape_validation() {
        assert!(SupportShape::new(monos(&[(0, 2), (2, 1)]), vec![]).is_err());
        assert!(SupportShape::new(monos(&[(1, 0)]), vec![]).is_err());
        assert!(SupportShape::new(vec![], monos(&[(0, 0)])).is_err());
        assert!(SupportShape::new(monos(&[(2, 1), (0, 2), (2, 2)]), monos(&[(2, 0)])).is_ok());
    }
}
