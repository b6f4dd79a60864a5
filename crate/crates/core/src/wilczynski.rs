//! Vanishing polynomials from truncated series.
//!
//! Column `(i, j)` of the Wilczynski matrix holds the coefficients of
//! `x^i y0^j`, so a polynomial with support `F ∪ G` vanishes at `y0` exactly
//! when the matching columns are dependent. Rows labelled by the pure powers
//! in `G` are dropped because their coefficients can always be chosen to
//! cancel them. With degree bounds `(dx, dy)` a nonzero `Q(x, y0)` has order
//! at most `2 dx dy`, so a slab of that many rows decides everything.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::algebra::{series_powers, BivarPoly, Mono, Rat, SupportShape, TruncatedSeries};
use crate::combinat::combinations;
use crate::error::{input, Error, Result};
use crate::linalg::{self, determinant, Matrix, RowEchelon};

pub const DEFAULT_MINOR_BUDGET: usize = 512;

/// First `depth` rows of the reduced Wilczynski matrix, restricted to `F`.
#[derive(Clone, Debug)]
pub struct WilczynskiSlab {
    shape: SupportShape,
    rows: Vec<usize>,
    entries: Matrix,
    source_precision: usize,
}

impl WilczynskiSlab {
    pub fn shape(&self) -> &SupportShape {
        &self.shape
    }

    /// Row labels `n` (exponents of x) that survive the removal of `G`.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

    pub fn source_precision(&self) -> usize {
        self.source_precision
    }

    /// Entry at 1-based row position `row` and column `col` of `F`.
    pub fn entry(&self, row: usize, col: usize) -> &Rat {
        &self.entries[row - 1][col]
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    fn columns(&self, cols: &[usize]) -> Matrix {
        let all: Vec<usize> = (0..self.entries.len()).collect();
        linalg::submatrix(&self.entries, &all, cols)
    }
}

/// Row labels kept in the first `depth` rows after removing the `G` rows.
pub fn surviving_rows(shape: &SupportShape, depth: usize) -> Vec<usize> {
    (1..).filter(|&n| !shape.has_g_row(n)).take(depth).collect()
}

fn check_seed(c: &TruncatedSeries) -> Result<()> {
    if !c.coeff(0).is_zero() {
        return input("series must have no constant term");
    }
    if c.precision() == 0 || c.coeff(1).is_zero() {
        return input("series must start with c_1 != 0");
    }
    Ok(())
}

pub fn build_slab(
    shape: &SupportShape,
    c: &TruncatedSeries,
    depth: usize,
) -> Result<WilczynskiSlab> {
    check_seed(c)?;
    let rows = surviving_rows(shape, depth);
    let last = rows.last().copied().unwrap_or(0);
    c.require_precision(last)?;
    let powers = series_powers(c, shape.dy() as usize, last)?;
    let entries = rows
        .iter()
        .map(|&n| {
            shape
                .f()
                .iter()
                .map(|m| {
                    let i = m.i as usize;
                    if n < i {
                        Rat::zero()
                    } else {
                        powers[m.j as usize].coeff(n - i).clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(WilczynskiSlab {
        shape: shape.clone(),
        rows,
        entries,
        source_precision: c.precision(),
    })
}

/// Selects a square submatrix: `rows` are 1-based positions in the reduced
/// matrix (not exponent labels), `cols` a sublist of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<Mono>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<Mono>) -> Result<Self> {
        if rows.len() != cols.len() {
            return input("a minor needs as many rows as columns");
        }
        if rows.windows(2).any(|w| w[0] >= w[1]) || rows.first() == Some(&0) {
            return input("minor rows must be strictly increasing positions starting at 1");
        }
        if cols.windows(2).any(|w| w[0] >= w[1]) {
            return input("minor columns must be strictly increasing anti-lexicographically");
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

pub fn wilczynski_minor(slab: &WilczynskiSlab, idx: &MinorIndex) -> Result<Rat> {
    if let Some(&r) = idx.rows.iter().find(|&&r| r == 0 || r > slab.depth()) {
        return input(format!("row position {r} outside 1..={}", slab.depth()));
    }
    let cols = idx
        .cols
        .iter()
        .map(|m| {
            slab.shape
                .f()
                .iter()
                .position(|f| f == m)
                .ok_or_else(|| Error::Input(format!("column {m} is not in F")))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<usize> = idx.rows.iter().map(|r| r - 1).collect();
    determinant(&linalg::submatrix(&slab.entries, &rows, &cols))
}

/// Outcome of the rank test on the `2 dx dy`-deep slab.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub algebraic: bool,
    pub rank: usize,
    pub depth: usize,
    /// A positive answer only holds if the series is known to be algebraic
    /// within the bounds; otherwise it means "consistent to this depth".
    /// A negative answer is unconditional.
    pub hypothesis_assumed: bool,
}

fn check_bounds(shape: &SupportShape, dx: u32, dy: u32) -> Result<()> {
    if shape.f().is_empty() {
        return input("F must not be empty");
    }
    if !shape.fits(dx, dy) {
        return input(format!(
            "shape exceeds the degree bounds dx = {dx}, dy = {dy}"
        ));
    }
    Ok(())
}

pub fn slab_depth(dx: u32, dy: u32) -> usize {
    2 * dx as usize * dy as usize
}

pub fn is_algebraic_rel(
    shape: &SupportShape,
    c: &TruncatedSeries,
    dx: u32,
    dy: u32,
) -> Result<Verdict> {
    check_bounds(shape, dx, dy)?;
    let depth = slab_depth(dx, dy);
    let slab = build_slab(shape, c, depth)?;
    let rank = slab.rank();
    let algebraic = rank < shape.f().len();
    Ok(Verdict {
        algebraic,
        rank,
        depth,
        hypothesis_assumed: algebraic,
    })
}

/// True iff `ord_x P(x, z_τ) > τ` with `τ = 2 dx dy`.
pub fn certify(p: &BivarPoly, c: &TruncatedSeries, dx: u32, dy: u32) -> Result<bool> {
    if p.is_zero() {
        return input("the zero polynomial certifies nothing");
    }
    if p.deg_x() > dx || p.deg_y() > dy {
        return input(format!(
            "polynomial degrees ({}, {}) exceed the bounds ({dx}, {dy})",
            p.deg_x(),
            p.deg_y()
        ));
    }
    let tau = slab_depth(dx, dy);
    c.require_precision(tau)?;
    let r = p.eval_at_series(&c.truncate(tau)?, tau)?;
    Ok(r.valuation().exceeds(tau))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Implicitization {
    /// A certified vanishing polynomial, valid under the algebraicity
    /// hypothesis at these bounds.
    Found {
        poly: BivarPoly,
        rank: usize,
        depth: usize,
        candidates_tried: usize,
    },
    /// The slab has full column rank: no polynomial with this support and
    /// these bounds vanishes at the series.
    NotAlgebraic { rank: usize, depth: usize },
    /// Null vectors exist to this depth but none passed certification
    /// within the search budget.
    Uncertified {
        rank: usize,
        depth: usize,
        candidates_tried: usize,
    },
}

struct Search<'a> {
    slab: &'a WilczynskiSlab,
    c: &'a TruncatedSeries,
    powers: Vec<TruncatedSeries>,
    dx: u32,
    dy: u32,
    budget: usize,
    tried: usize,
}

impl Search<'_> {
    /// Completes the F-coefficients with the pure powers that cancel the
    /// G rows: `a_{k,0} = -Σ_{(i,j)∈F, i<k} a_{i,j} c^{(j)}_{k-i}`.
    fn polynomial(&self, fam: &[usize], coeffs: &[Rat]) -> BivarPoly {
        let f = self.slab.shape.f();
        let mut p = BivarPoly::zero();
        for (&col, a) in fam.iter().zip(coeffs) {
            p.add_term(f[col].i, f[col].j, a.clone());
        }
        for g in self.slab.shape.g() {
            let k = g.i as usize;
            let mut acc = Rat::zero();
            for (&col, a) in fam.iter().zip(coeffs) {
                let m = f[col];
                if (m.i as usize) < k && !a.is_zero() {
                    acc -= a * self.powers[m.j as usize].coeff(k - m.i as usize);
                }
            }
            p.add_term(g.i, 0, acc);
        }
        p
    }

    fn accept(&self, p: &BivarPoly) -> Result<Option<BivarPoly>> {
        if p.is_zero() {
            return Ok(None);
        }
        let p = p.normalized();
        Ok(certify(&p, self.c, self.dx, self.dy)?.then_some(p))
    }

    /// Tries the Cramer candidates of one column family.
    fn family(&mut self, fam: &[usize]) -> Result<Option<BivarPoly>> {
        let m = self.slab.columns(fam);
        let r = linalg::rank(&m);
        if r == fam.len() {
            return Ok(None);
        }
        if r == 0 {
            for pick in 0..fam.len() {
                let mut coeffs = vec![Rat::zero(); fam.len()];
                coeffs[pick] = Rat::one();
                if let Some(p) = self.accept(&self.polynomial(fam, &coeffs))? {
                    return Ok(Some(p));
                }
            }
            return Ok(None);
        }
        // Rows 1..first_max already have rank < r, so no nonzero minor of
        // order r can use a smaller largest row.
        let mut ech = RowEchelon::new();
        let first_max = m
            .iter()
            .position(|row| ech.insert(row) && ech.rank() == r)
            .expect("rank r is reached");
        let col_sets = combinations(fam.len(), r);
        for last in first_max..m.len() {
            for head in combinations(last, r - 1) {
                let mut rows = head;
                rows.push(last);
                let mut ech = RowEchelon::new();
                if !rows.iter().all(|&row| ech.insert(&m[row])) {
                    continue;
                }
                for cols in &col_sets {
                    if self.tried >= self.budget {
                        return Ok(None);
                    }
                    self.tried += 1;
                    let minor = determinant(&linalg::submatrix(&m, &rows, cols))?;
                    if minor.is_zero() {
                        continue;
                    }
                    for excluded in (0..fam.len()).filter(|e| !cols.contains(e)) {
                        let mut ext: Vec<usize> = cols.clone();
                        ext.push(excluded);
                        ext.sort_unstable();
                        let mut coeffs = vec![Rat::zero(); fam.len()];
                        for (pos, &col) in ext.iter().enumerate() {
                            let rest: Vec<usize> =
                                ext.iter().copied().filter(|&x| x != col).collect();
                            let d = determinant(&linalg::submatrix(&m, &rows, &rest))?;
                            coeffs[col] = if pos % 2 == 0 { d } else { -d };
                        }
                        if let Some(p) = self.accept(&self.polynomial(fam, &coeffs))? {
                            return Ok(Some(p));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Reconstructs a certified vanishing polynomial with support in `F ∪ G`.
///
/// Candidates come from nonzero minors of order `rank`, in order of
/// increasing largest row, then rows, then columns. Each column family gets
/// `minor_budget` minors; if none certifies, smaller families are searched.
pub fn reconstruct(
    shape: &SupportShape,
    c: &TruncatedSeries,
    dx: u32,
    dy: u32,
    minor_budget: usize,
) -> Result<Implicitization> {
    check_bounds(shape, dx, dy)?;
    let depth = slab_depth(dx, dy);
    let slab = build_slab(shape, c, depth)?;
    let rank = slab.rank();
    if rank == shape.f().len() {
        return Ok(Implicitization::NotAlgebraic { rank, depth });
    }
    c.require_precision(depth)?;
    let g_max = shape.g().last().map_or(0, |g| g.i as usize);
    let powers = series_powers(c, shape.dy() as usize, g_max.min(c.precision()))?;
    let mut search = Search {
        slab: &slab,
        c,
        powers,
        dx,
        dy,
        budget: minor_budget,
        tried: 0,
    };
    let mut queue = vec![(0..shape.f().len()).collect::<Vec<usize>>()];
    let mut seen = BTreeSet::new();
    while let Some(fam) = queue.pop() {
        if fam.is_empty() || !seen.insert(fam.clone()) {
            continue;
        }
        search.tried = 0;
        if let Some(poly) = search.family(&fam)? {
            return Ok(Implicitization::Found {
                poly,
                rank,
                depth,
                candidates_tried: search.tried,
            });
        }
        for drop in (0..fam.len()).rev() {
            let mut sub = fam.clone();
            sub.remove(drop);
            queue.push(sub);
        }
    }
    Ok(Implicitization::Uncertified {
        rank,
        depth,
        candidates_tried: search.tried,
    })
}
