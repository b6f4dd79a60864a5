//! Exact elimination over the rationals.

use num_traits::{One, Zero};

use crate::algebra::Rat;
use crate::error::{input, Result};

pub type Matrix = Vec<Vec<Rat>>;

/// Row-reduces in place with first-nonzero pivoting and returns the rank.
/// The determinant sign and pivot product are tracked for square input.
fn eliminate(m: &mut Matrix) -> (usize, Rat) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut det = Rat::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            det = Rat::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = -det;
        }
        let pivot = m[rank][col].clone();
        det *= &pivot;
        let inv = pivot.recip();
        let (top, below) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for (x, p) in row[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (rank, det)
}

pub fn rank(m: &[Vec<Rat>]) -> usize {
    eliminate(&mut m.to_vec()).0
}

/// Determinant by Gaussian elimination; the empty matrix has determinant 1.
pub fn determinant(m: &[Vec<Rat>]) -> Result<Rat> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return input("determinant of a non-square matrix");
    }
    if n == 0 {
        return Ok(Rat::one());
    }
    let (rank, det) = eliminate(&mut m.to_vec());
    Ok(if rank < n { Rat::zero() } else { det })
}

pub fn submatrix(m: &[Vec<Rat>], rows: &[usize], cols: &[usize]) -> Matrix {
    rows.iter()
        .map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect())
        .collect()
}

/// Incrementally maintained echelon basis, used to pick linearly
/// independent rows greedily.
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    basis: Vec<(usize, Vec<Rat>)>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, row: &[Rat]) -> Vec<Rat> {
        let mut v = row.to_vec();
        for (pc, b) in &self.basis {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn is_independent(&self, row: &[Rat]) -> bool {
        self.reduce(row).iter().any(|x| !x.is_zero())
    }

    /// Adds the row if it is independent of the basis; returns whether it was.
    pub fn insert(&mut self, row: &[Rat]) -> bool {
        let mut v = self.reduce(row);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].recip();
        for x in &mut v {
            *x *= &inv;
        }
        for (_, b) in &mut self.basis {
            if b[pc].is_zero() {
                continue;
            }
            let f = b[pc].clone();
            for (x, y) in b.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis.push((pc, v));
        true
    }
}
