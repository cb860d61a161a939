//! Dense linear algebra over `F_q`: reduced row echelon form, the blocked
//! sweep for tall matrices, and an incremental echelon basis.

use rayon::prelude::*;

use crate::field::PrimeField;

/// Work size (rows x columns) above which row elimination is spread over
/// the rayon pool.
const PAR_THRESHOLD: usize = 1 << 16;

/// `row -= c * pivot` on the columns from `from` on.
#[inline]
fn axpy(field: PrimeField, row: &mut [u32], pivot: &[u32], c: u32, from: usize) {
    let q = field.modulus() as u64;
    let neg = (q - c as u64) % q;
    for (r, &p) in row[from..].iter_mut().zip(&pivot[from..]) {
        if p != 0 {
            *r = ((*r as u64 + neg * p as u64) % q) as u32;
        }
    }
}

fn scale(field: PrimeField, row: &mut [u32], c: u32, from: usize) {
    for x in &mut row[from..] {
        *x = field.mul(*x, c);
    }
}

/// Gauss-Jordan elimination in place.
///
/// Pivots are searched column by column, taking the first row (top to
/// bottom) with a nonzero entry. Zero rows end up at the bottom; the
/// returned pivot columns are increasing and row `i` holds pivot `i`.
pub fn rref_plain(field: PrimeField, rows: &mut [Vec<u32>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let parallel = rows.len() * ncols >= PAR_THRESHOLD;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        scale(field, &mut rows[r], inv, c);
        let (head, rest) = rows.split_at_mut(r);
        let (pivot_row, tail) = rest.split_first_mut().unwrap();
        let elim = |row: &mut Vec<u32>| {
            let k = row[c];
            if k != 0 {
                axpy(field, row, pivot_row, k, c);
            }
        };
        if parallel {
            head.par_iter_mut().for_each(elim);
            tail.par_iter_mut().for_each(elim);
        } else {
            head.iter_mut().for_each(elim);
            tail.iter_mut().for_each(elim);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form of an arbitrary dense matrix.
///
/// Returns the nonzero rows (pivot entries 1, pivot columns cleared) and
/// their pivot columns. Matrices with more than four times as many rows as
/// columns are processed by repeatedly reducing the current basis together
/// with the next batch of rows, keeping the working block at most twice the
/// column count. RREF is unique, so both paths agree.
pub fn rref(field: PrimeField, rows: Vec<Vec<u32>>, ncols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    if ncols > 0 && rows.len() > 4 * ncols {
        return rref_blocked(field, rows, ncols);
    }
    let mut rows = rows;
    let pivots = rref_plain(field, &mut rows, ncols);
    rows.truncate(pivots.len());
    (rows, pivots)
}

fn rref_blocked(field: PrimeField, rows: Vec<Vec<u32>>, ncols: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut pivots = Vec::new();
    let mut iter = rows.into_iter().peekable();
    while iter.peek().is_some() {
        let take = 2 * ncols - basis.len();
        let mut block = std::mem::take(&mut basis);
        block.extend(iter.by_ref().take(take.max(1)));
        pivots = rref_plain(field, &mut block, ncols);
        block.truncate(pivots.len());
        basis = block;
    }
    (basis, pivots)
}

pub fn rank(field: PrimeField, rows: Vec<Vec<u32>>, ncols: usize) -> usize {
    rref(field, rows, ncols).1.len()
}

/// A row echelon basis that grows one vector at a time.
///
/// Stored rows are zero left of their (monic) pivot but are not reduced
/// against later pivots; that is enough for span membership and for reading
/// off the set of pivot columns.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivot_row: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        EchelonBasis { field, ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Pivot column of each stored row, in insertion order.
    pub fn pivot_of(&self, i: usize) -> usize {
        self.rows[i].iter().position(|&x| x != 0).expect("stored rows are nonzero")
    }

    /// Add `v` to the span. Returns false if it was already there.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        for c in 0..self.ncols {
            let k = v[c];
            if k == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(i) => axpy(self.field, &mut v, &self.rows[i], k, c),
                None => {
                    let inv = self.field.inv(k).expect("nonzero");
                    scale(self.field, &mut v, inv, c);
                    self.pivot_row[c] = Some(self.rows.len());
                    self.rows.push(v);
                    return true;
                }
            }
        }
        false
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        for c in 0..self.ncols {
            let k = v[c];
            if k == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(i) => axpy(self.field, &mut v, &self.rows[i], k, c),
                None => return false,
            }
        }
        true
    }
}
