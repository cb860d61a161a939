//! Macaulay matrices and the two linear-algebra solving degrees: plain XL
//! (`sd_mac`) and the mutant strategy (`sd_mut`).

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groebner::reduced_gb;
use crate::linalg::{self, EchelonBasis};
use crate::monomial::Monomial;
use crate::poly::{PolySystem, Polynomial, Ring, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MacaulayError {
    #[error("degree {d} is below every generator degree; no rows")]
    NoRows { d: u32 },
    #[error("d_max = {d_max} is below the largest generator degree {max_deg}")]
    DegreeCap { d_max: u32, max_deg: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowLabel {
    pub generator: usize,
    /// Index of the multiplier monomial in [`MacaulayMatrix::multipliers`].
    pub multiplier: usize,
}

/// Rows `t * f_j`, columns the monomials of degree `<= d` (or exactly `d`
/// for the homogeneous block) in descending order.
#[derive(Debug, Clone)]
pub struct MacaulayMatrix {
    ring: Arc<Ring>,
    d: u32,
    homogeneous: bool,
    cols: Vec<Monomial>,
    multipliers: Vec<Monomial>,
    labels: Vec<RowLabel>,
    rows: Vec<Vec<u32>>,
}

fn column_index(cols: &[Monomial]) -> HashMap<Monomial, usize> {
    cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

fn to_row(p: &Polynomial, index: &HashMap<Monomial, usize>, ncols: usize) -> Vec<u32> {
    let mut v = vec![0u32; ncols];
    for t in p.terms() {
        v[index[&t.monomial]] = t.coeff;
    }
    v
}

fn build(sys: &PolySystem, d: u32, homogeneous: bool) -> Result<MacaulayMatrix, MacaulayError> {
    let ring = sys.ring().clone();
    let order = ring.order();
    let cols = if homogeneous { order.monomials_exact(d) } else { order.monomials_up_to(d) };
    let index = column_index(&cols);
    let mut multipliers: Vec<Monomial> = Vec::new();
    let mut mult_index: HashMap<Monomial, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (j, f) in sys.polys().iter().enumerate() {
        let deg = f.degree().unwrap_or(0);
        if deg > d {
            continue;
        }
        let ts = if homogeneous {
            if !f.is_homogeneous() {
                continue;
            }
            order.monomials_exact(d - deg)
        } else {
            order.monomials_up_to(d - deg)
        };
        for t in ts {
            let row = f.mul_term(&t, 1);
            rows.push(to_row(&row, &index, cols.len()));
            let next = multipliers.len();
            let k = *mult_index.entry(t.clone()).or_insert_with(|| {
                multipliers.push(t);
                next
            });
            labels.push(RowLabel { generator: j, multiplier: k });
        }
    }
    if rows.is_empty() {
        return Err(MacaulayError::NoRows { d });
    }
    Ok(MacaulayMatrix { ring, d, homogeneous, cols, multipliers, labels, rows })
}

/// `M_{<=d}(F)`.
pub fn build_macaulay(sys: &PolySystem, d: u32) -> Result<MacaulayMatrix, MacaulayError> {
    build(sys, d, false)
}

/// The degree-`d` block `M_d(F)`; non-homogeneous generators are skipped.
pub fn build_macaulay_homogeneous(sys: &PolySystem, d: u32) -> Result<MacaulayMatrix, MacaulayError> {
    build(sys, d, true)
}

impl MacaulayMatrix {
    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn is_homogeneous_block(&self) -> bool {
        self.homogeneous
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.cols
    }

    pub fn labels(&self) -> &[RowLabel] {
        &self.labels
    }

    pub fn multipliers(&self) -> &[Monomial] {
        &self.multipliers
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn rref(&self) -> RrefResult {
        let (rows, pivots) = linalg::rref(self.ring.field(), self.rows.clone(), self.cols.len());
        let basis_polys = rows.iter().map(|r| row_poly(&self.ring, &self.cols, r)).collect();
        RrefResult { rank: pivots.len(), pivot_columns: pivots, rows, basis_polys }
    }
}

fn row_poly(ring: &Arc<Ring>, cols: &[Monomial], row: &[u32]) -> Polynomial {
    let terms = row
        .iter()
        .zip(cols)
        .filter(|(&c, _)| c != 0)
        .map(|(&coeff, m)| Term { monomial: m.clone(), coeff })
        .collect();
    Polynomial::from_sorted(ring, terms)
}

/// Reduced row echelon form: nonzero rows only, sorted by pivot column.
#[derive(Debug, Clone)]
pub struct RrefResult {
    pub pivot_columns: Vec<usize>,
    pub rows: Vec<Vec<u32>>,
    pub basis_polys: Vec<Polynomial>,
    pub rank: usize,
}

/// Outcome of a solving-degree search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolvingDegree {
    Reached(u32),
    /// No degree up to `d_max` produced a Gröbner basis.
    Exceeded { d_max: u32 },
}

impl SolvingDegree {
    pub fn reached(self) -> Option<u32> {
        match self {
            SolvingDegree::Reached(d) => Some(d),
            SolvingDegree::Exceeded { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDims {
    pub d: u32,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Debug, Clone)]
pub struct MacResult {
    pub degree: SolvingDegree,
    /// RREF at the last degree tried.
    pub witness: RrefResult,
    pub dims: Vec<MatrixDims>,
}

#[derive(Debug, Clone)]
pub struct MutResult {
    pub degree: SolvingDegree,
    /// Mutant rows appended beyond the Macaulay rows, per degree.
    pub appended: Vec<usize>,
    pub dims: Vec<MatrixDims>,
}

fn covers(target: &[Monomial], lms: impl Iterator<Item = Monomial> + Clone) -> bool {
    target.iter().all(|t| lms.clone().any(|m| m.divides(t)))
}

fn check_dmax(sys: &PolySystem, d_max: u32) -> Result<(u32, Vec<Monomial>), MacaulayError> {
    let degs = sys.degrees();
    let max_deg = degs.iter().copied().max().unwrap_or(0);
    if d_max < max_deg {
        return Err(MacaulayError::DegreeCap { d_max, max_deg });
    }
    let oracle: Vec<Monomial> = reduced_gb(sys.polys()).iter().filter_map(|g| g.lm().cloned()).collect();
    Ok((degs.iter().copied().min().unwrap_or(0), oracle))
}

/// Least `d` such that the RREF of `M_{<=d}(F)` contains a Gröbner basis.
pub fn sd_mac(sys: &PolySystem, d_max: u32) -> Result<MacResult, MacaulayError> {
    let (d0, oracle) = check_dmax(sys, d_max)?;
    let mut dims = Vec::new();
    let mut last = None;
    for d in d0..=d_max {
        let m = build_macaulay(sys, d)?;
        let r = m.rref();
        dims.push(MatrixDims { d, rows: m.nrows(), cols: m.ncols(), rank: r.rank });
        let lms = r.pivot_columns.iter().map(|&c| m.cols[c].clone());
        if covers(&oracle, lms) {
            return Ok(MacResult { degree: SolvingDegree::Reached(d), witness: r, dims });
        }
        last = Some(r);
    }
    Ok(MacResult { degree: SolvingDegree::Exceeded { d_max }, witness: last.expect("d0 <= d_max"), dims })
}

/// Mutant strategy: at each degree, keep multiplying the lower-degree
/// polynomials of the row space by variables until nothing new appears.
pub fn sd_mut(sys: &PolySystem, d_max: u32) -> Result<MutResult, MacaulayError> {
    let (d0, oracle) = check_dmax(sys, d_max)?;
    let field = sys.ring().field();
    let n = sys.ring().nvars();
    let mut dims = Vec::new();
    let mut appended = Vec::new();
    for d in d0..=d_max {
        let m = build_macaulay(sys, d)?;
        let index = column_index(&m.cols);
        let ncols = m.ncols();
        let mut span = EchelonBasis::new(field, ncols);
        // rows t*f with deg < d already have their variable multiples here
        let mut expanded = EchelonBasis::new(field, ncols);
        for (row, label) in m.rows.iter().zip(&m.labels) {
            span.insert(row.clone());
            let f = &sys.polys()[label.generator];
            if f.degree().unwrap_or(0) + m.multipliers[label.multiplier].degree() < d {
                expanded.insert(row.clone());
            }
        }
        let base_rank = span.rank();
        let covered = |span: &EchelonBasis| {
            covers(&oracle, (0..span.rank()).map(|i| m.cols[span.pivot_of(i)].clone()))
        };
        let mut done = covered(&span);
        while !done {
            let mut grew = false;
            let mut i = 0;
            while i < span.rank() {
                let row = span.rows()[i].clone();
                i += 1;
                if m.cols[span.pivot_of(i - 1)].degree() >= d || !expanded.insert(row.clone()) {
                    continue;
                }
                for v in 0..n {
                    let mut shifted = vec![0u32; ncols];
                    for (c, &x) in row.iter().enumerate() {
                        if x != 0 {
                            let u = m.cols[c].mul(&Monomial::var(n, v));
                            shifted[index[&u]] = x;
                        }
                    }
                    grew |= span.insert(shifted);
                }
            }
            done = covered(&span);
            if !grew {
                break;
            }
        }
        dims.push(MatrixDims { d, rows: span.rank(), cols: ncols, rank: span.rank() });
        appended.push(span.rank() - base_rank);
        if done {
            return Ok(MutResult { degree: SolvingDegree::Reached(d), appended, dims });
        }
    }
    Ok(MutResult { degree: SolvingDegree::Exceeded { d_max }, appended, dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::normal_form;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::drl(PrimeField::new(101).unwrap(), n)
    }

    fn poly(r: &Arc<Ring>, terms: &[(&[u16], i64)]) -> Polynomial {
        Polynomial::from_terms(r, terms.iter().map(|(e, c)| (Monomial::new(e), *c)))
    }

    #[test]
    fn single_linear_row() {
        let r = ring(2);
        let sys = PolySystem::new(&r, vec![poly(&r, &[(&[1, 0], 1), (&[0, 1], 1)])]).unwrap();
        let m = build_macaulay(&sys, 1).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (1, 3));
        assert_eq!(m.rows()[0], vec![1, 1, 0]);
        assert!(m.columns()[2].is_one());
    }

    #[test]
    fn squares_no_multipliers() {
        let r = ring(2);
        let sys = PolySystem::new(&r, vec![poly(&r, &[(&[2, 0], 1)]), poly(&r, &[(&[0, 2], 1)])]).unwrap();
        let m = build_macaulay(&sys, 2).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (2, 6));
        assert_eq!(build_macaulay(&sys, 1).unwrap_err(), MacaulayError::NoRows { d: 1 });
    }

    #[test]
    fn linear_systems() {
        let r = ring(2);
        let one = PolySystem::new(&r, vec![poly(&r, &[(&[1, 0], 1), (&[0, 0], -1)])]).unwrap();
        assert_eq!(sd_mac(&one, 3).unwrap().degree, SolvingDegree::Reached(1));
        let two = PolySystem::new(
            &r,
            vec![poly(&r, &[(&[1, 0], 1), (&[0, 0], -1)]), poly(&r, &[(&[0, 1], 1), (&[1, 0], -1)])],
        )
        .unwrap();
        assert_eq!(sd_mut(&two, 3).unwrap().degree, SolvingDegree::Reached(1));
        assert_eq!(sd_mac(&two, 3).unwrap().degree, SolvingDegree::Reached(1));
    }

    #[test]
    fn exceeded_is_explicit() {
        let r = ring(2);
        // x1^2 + x2, x1*x2 + 1: x1 - x2^2 only shows up in degree 3
        let sys = PolySystem::new(
            &r,
            vec![poly(&r, &[(&[2, 0], 1), (&[0, 1], 1)]), poly(&r, &[(&[1, 1], 1), (&[0, 0], 1)])],
        )
        .unwrap();
        let res = sd_mac(&sys, 2).unwrap();
        assert_eq!(res.degree, SolvingDegree::Exceeded { d_max: 2 });
        assert!(matches!(sd_mac(&sys, 1), Err(MacaulayError::DegreeCap { .. })));
    }

    #[test]
    fn rref_rows_lie_in_ideal() {
        let r = ring(3);
        let sys = PolySystem::new(
            &r,
            vec![
                poly(&r, &[(&[2, 0, 0], 1), (&[0, 1, 1], 3), (&[0, 0, 0], 1)]),
                poly(&r, &[(&[1, 1, 0], 1), (&[0, 0, 2], -1), (&[1, 0, 0], 2)]),
                poly(&r, &[(&[0, 2, 0], 1), (&[1, 0, 1], 1), (&[0, 0, 1], -1)]),
            ],
        )
        .unwrap();
        let gb = reduced_gb(sys.polys());
        let res = sd_mac(&sys, 6).unwrap();
        for p in &res.witness.basis_polys {
            assert!(normal_form(p, &gb).is_zero());
            assert_eq!(p.lc(), Some(1));
        }
        let w = &res.witness;
        assert!(w.pivot_columns.windows(2).all(|p| p[0] < p[1]));
        for (row, &c) in w.rows.iter().zip(&w.pivot_columns) {
            assert_eq!(row[c], 1);
        }
        let mac = res.degree.reached().unwrap();
        let mt = sd_mut(&sys, 6).unwrap().degree.reached().unwrap();
        let gb_deg = gb.iter().filter_map(|g| g.degree()).max().unwrap();
        assert!(gb_deg <= mt && mt <= mac, "{gb_deg} {mt} {mac}");
    }

    #[test]
    fn homogeneous_block_row_count() {
        let r = ring(3);
        let sys = PolySystem::new(
            &r,
            vec![poly(&r, &[(&[2, 0, 0], 1), (&[0, 1, 1], 1)]), poly(&r, &[(&[0, 2, 0], 1), (&[1, 0, 1], 2)])],
        )
        .unwrap();
        let m = build_macaulay_homogeneous(&sys, 4).unwrap();
        assert_eq!(m.ncols(), 15);
        // two generators times the six degree-2 multipliers
        assert_eq!(m.nrows(), 12);
    }
}
