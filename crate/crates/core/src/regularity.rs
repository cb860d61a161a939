//! Semi-regularity classifiers, the Koszul syzygy oracle, the weakly
//! reverse-lexicographic test, and checks of the Hilbert-function results
//! relating `F`, `F^top` and `F^h`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::semiregular_series_to;
use crate::groebner::{normal_form, reduced_gb};
use crate::hilbert::{lm_ideal, regularity_degrees, HilbertSummary, MonomialIdeal};
use crate::linalg;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyError, PolySystem, Polynomial};
use crate::series::TruncatedSeries;
use crate::Degree;

/// Largest Koszul matrix (rows times columns) we are willing to build.
pub const DEFAULT_SYZYGY_CAP: usize = 500_000;

/// How "every monomial which precedes `u`" is read in the weakly
/// reverse-lexicographic test.
pub const PRECEDES_READING: &str = "strictly greater under the monomial order";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegularityError {
    #[error("system is not homogeneous")]
    NotHomogeneous,
    #[error("syzygy matrix would have {entries} entries (cap {cap})")]
    SyzygyCap { entries: usize, cap: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn product_numerator(degrees: &[u32]) -> Vec<i128> {
    degrees.iter().fold(vec![1i128], |acc, &d| {
        let mut out = vec![0i128; acc.len() + d as usize];
        for (i, &c) in acc.iter().enumerate() {
            out[i] += c;
            out[i + d as usize] -= c;
        }
        out
    })
}

/// First index where two numerators over the same `(1 - z)^n` differ,
/// which is also the first degree where the two series differ.
fn first_mismatch(a: &[i128], b: &[i128]) -> Degree {
    let len = a.len().max(b.len());
    (0..len)
        .find(|&i| a.get(i).copied().unwrap_or(0) != b.get(i).copied().unwrap_or(0))
        .map_or(Degree::Infinite, |i| Degree::Finite(i as u32))
}

fn numerator_of(sys: &PolySystem) -> Vec<i128> {
    trim(lm_ideal(&reduced_gb(sys.polys())).hilbert_numerator())
}

/// Largest `d` for which `sys` is `d`-regular: the first degree where the
/// Hilbert series leaves `prod (1 - z^{d_j}) / (1 - z)^n`.
pub fn regular_up_to(sys: &PolySystem) -> Result<Degree, RegularityError> {
    if !sys.is_homogeneous() {
        return Err(RegularityError::NotHomogeneous);
    }
    Ok(first_mismatch(&numerator_of(sys), &trim(product_numerator(&sys.degrees()))))
}

/// `HF(t)` agrees with the coefficient of `z^t` in
/// `prod (1 - z^{d_j}) / (1 - z)^n` for every `t < d`.
pub fn is_d_regular(sys: &PolySystem, d: Degree) -> Result<bool, RegularityError> {
    Ok(regular_up_to(sys)? >= d)
}

/// Every monomial of the same degree above a minimal generator is in `J`.
pub fn is_weakly_revlex(j: &MonomialIdeal, order: &MonomialOrder) -> bool {
    j.gens().iter().all(|u| {
        order
            .monomials_exact(u.degree())
            .into_iter()
            .take_while(|v| v != u)
            .all(|v| j.contains(&v))
    })
}

/// Degree-`d` piece of the first Koszul homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygySlice {
    pub degree: u32,
    pub dim_syz: usize,
    pub dim_tsyz: usize,
    pub dim_h1: usize,
}

pub fn koszul_h1_dim(sys: &PolySystem, d: u32, cap: usize) -> Result<SyzygySlice, RegularityError> {
    if !sys.is_homogeneous() {
        return Err(RegularityError::NotHomogeneous);
    }
    let ring = sys.ring();
    let order = ring.order();
    let degs = sys.degrees();
    let rows = order.monomials_exact(d);
    let row_index: HashMap<Monomial, usize> = rows.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    // free-module coordinates (u, j) with deg u + d_j = d
    let mut coords: HashMap<(Monomial, usize), usize> = HashMap::new();
    for (j, &dj) in degs.iter().enumerate() {
        if dj <= d {
            for u in order.monomials_exact(d - dj) {
                let k = coords.len();
                coords.insert((u, j), k);
            }
        }
    }
    let ncoords = coords.len();
    let mut pairs = Vec::new();
    for i in 0..degs.len() {
        for j in i + 1..degs.len() {
            if degs[i] + degs[j] <= d {
                for u in order.monomials_exact(d - degs[i] - degs[j]) {
                    pairs.push((i, j, u));
                }
            }
        }
    }
    let entries = (rows.len() * ncoords).max(pairs.len() * ncoords);
    if entries > cap {
        return Err(RegularityError::SyzygyCap { entries, cap });
    }
    let field = ring.field();
    let polys = sys.polys();
    // phi_1 transposed: one vector per coordinate, image u * f_j
    let image: Vec<Vec<u32>> = {
        let mut by_index = vec![Vec::new(); ncoords];
        for ((u, j), &k) in &coords {
            let mut v = vec![0u32; rows.len()];
            for t in polys[*j].mul_term(u, 1).terms() {
                v[row_index[&t.monomial]] = t.coeff;
            }
            by_index[k] = v;
        }
        by_index
    };
    let dim_syz = ncoords - linalg::rank(field, image, rows.len());
    // u * (f_i e_j - f_j e_i)
    let trivial: Vec<Vec<u32>> = pairs
        .iter()
        .map(|(i, j, u)| {
            let mut v = vec![0u32; ncoords];
            for t in polys[*i].mul_term(u, 1).terms() {
                v[coords[&(t.monomial.clone(), *j)]] = t.coeff;
            }
            for t in polys[*j].mul_term(u, 1).terms() {
                let c = &mut v[coords[&(t.monomial.clone(), *i)]];
                *c = field.sub(*c, t.coeff);
            }
            v
        })
        .collect();
    let dim_tsyz = if trivial.is_empty() { 0 } else { linalg::rank(field, trivial, ncoords) };
    Ok(SyzygySlice { degree: d, dim_syz, dim_tsyz, dim_h1: dim_syz - dim_tsyz })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub is_d_regular_up_to: Degree,
    pub is_crypto_semiregular: bool,
    pub is_semiregular: bool,
    pub is_generalized_csr: bool,
    #[serde(rename = "D")]
    pub d: Degree,
    #[serde(rename = "D_prime")]
    pub d_prime: Degree,
    /// Number of projective zeros of `F^h` with multiplicity, when finite.
    pub projective_zeros: Option<i128>,
    pub max_gb_degree_hom: u32,
    pub wrl_hom: bool,
    pub wrl_top: bool,
    pub precedes_reading: String,
}

/// Gröbner bases and Hilbert data of `F^top` and `F^h`, computed once.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub system: PolySystem,
    pub top: PolySystem,
    pub hom: PolySystem,
    pub gb_top: Vec<Polynomial>,
    pub gb_hom: Vec<Polynomial>,
    pub lm_top: MonomialIdeal,
    pub lm_hom: MonomialIdeal,
    pub hilbert_top: HilbertSummary,
    pub hilbert_hom: HilbertSummary,
}

impl Analysis {
    pub fn new(system: &PolySystem) -> Result<Self, RegularityError> {
        let top = system.top_parts()?;
        let hom = system.homogenize()?;
        let gb_top = reduced_gb(top.polys());
        let gb_hom = reduced_gb(hom.polys());
        let lm_top = lm_ideal(&gb_top);
        let lm_hom = lm_ideal(&gb_hom);
        let hilbert_top = regularity_degrees(&lm_top);
        let hilbert_hom = regularity_degrees(&lm_hom);
        Ok(Analysis { system: system.clone(), top, hom, gb_top, gb_hom, lm_top, lm_hom, hilbert_top, hilbert_hom })
    }

    pub fn n(&self) -> usize {
        self.system.ring().nvars()
    }

    /// `D = d_reg(<F^top>)`.
    pub fn d(&self) -> Degree {
        self.hilbert_top.d_reg
    }

    /// `D' = gen_d_reg(<F^h>)`.
    pub fn d_prime(&self) -> Degree {
        self.hilbert_hom.gen_d_reg
    }

    pub fn max_gb_degree_hom(&self) -> u32 {
        self.gb_hom.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    /// Prefix by prefix, the Hilbert series of `F^top` is the truncated
    /// product series.
    pub fn is_semiregular(&self) -> Result<bool, RegularityError> {
        let n = self.n();
        let degs = self.top.degrees();
        for i in 1..=degs.len() {
            let prefix = self.top.prefix(i)?;
            let got = if i == degs.len() { trim(self.lm_top.hilbert_numerator()) } else { numerator_of(&prefix) };
            let target = if i < n {
                trim(product_numerator(&degs[..i]))
            } else {
                let cap = degs[..i].iter().map(|&d| d as usize).sum::<usize>() + 1;
                let t = semiregular_series_to(n, &degs[..i], cap).expect("positive degrees");
                let mut s = TruncatedSeries::new(t.coeffs().to_vec(), cap + n);
                s.mul_one_minus_z_pow(n).expect("small coefficients");
                trim(s.coeffs().to_vec())
            };
            if got != target {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn report(&self) -> Result<RegularityReport, RegularityError> {
        let up_to = regular_up_to(&self.top)?;
        let d = self.d();
        let d_prime = self.d_prime();
        let hom_up_to = first_mismatch(
            &trim(self.lm_hom.hilbert_numerator()),
            &trim(product_numerator(&self.hom.degrees())),
        );
        Ok(RegularityReport {
            n: self.n(),
            degrees: self.system.degrees(),
            is_d_regular_up_to: up_to,
            is_crypto_semiregular: up_to >= d,
            is_semiregular: self.is_semiregular()?,
            is_generalized_csr: hom_up_to >= d_prime,
            d,
            d_prime,
            projective_zeros: self.hilbert_hom.hilbert_poly_constant,
            max_gb_degree_hom: self.max_gb_degree_hom(),
            wrl_hom: is_weakly_revlex(&self.lm_hom, self.hom.ring().order()),
            wrl_top: is_weakly_revlex(&self.lm_top, self.top.ring().order()),
            precedes_reading: PRECEDES_READING.to_string(),
        })
    }

    fn hf_hom(&self, d: i64) -> i128 {
        if d < 0 {
            0
        } else {
            self.hilbert_hom.hf_at(d as u32)
        }
    }

    /// Rank of multiplication by `y` from degree `d - 1` to degree `d` of
    /// `R'/<F^h>`, with the dimensions of source and target.
    pub fn y_multiplication_rank(&self, d: u32) -> (usize, usize, usize) {
        let ring = self.hom.ring();
        let order = ring.order();
        let y = Monomial::var(ring.nvars(), ring.nvars() - 1);
        let source = if d == 0 { Vec::new() } else { self.lm_hom.standard_monomials(order, d - 1) };
        let target = self.lm_hom.standard_monomials(order, d);
        if source.is_empty() || target.is_empty() {
            return (0, source.len(), target.len());
        }
        let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rows: Vec<Vec<u32>> = source
            .iter()
            .map(|s| {
                let nf = normal_form(&Polynomial::monomial(ring, s.mul(&y), 1), &self.gb_hom);
                let mut v = vec![0u32; target.len()];
                for t in nf.terms() {
                    v[index[&t.monomial]] = t.coeff;
                }
                v
            })
            .collect();
        (linalg::rank(ring.field(), rows, target.len()), source.len(), target.len())
    }

    pub fn theorem_1_1(&self) -> Result<Thm11Verdict, RegularityError> {
        let mut v = Thm11Verdict::default();
        let d = match self.d() {
            Degree::Finite(d) if self.hilbert_top.artinian => d,
            _ => {
                v.skipped = Some("F^top is not Artinian".into());
                return Ok(v);
            }
        };
        if regular_up_to(&self.top)? < self.d() {
            v.skipped = Some("F^top is not cryptographic semi-regular".into());
            return Ok(v);
        }
        v.d = d;
        let hf_top = |t: u32| self.hilbert_top.hf_at(t);
        let mut cumulative = 0i128;
        for t in 0..d {
            cumulative += hf_top(t);
            let h = self.hf_hom(t as i64);
            if h != hf_top(t) + self.hf_hom(t as i64 - 1) || h != cumulative {
                v.violations.push(format!("HF recursion fails at degree {t}"));
            }
        }
        let stable = self.d_prime().finite().unwrap_or(d).max(d) + 1;
        for t in 1..d {
            if self.hf_hom(t as i64) < self.hf_hom(t as i64 - 1) {
                v.violations.push(format!("HF of F^h decreases at degree {t} < D"));
            }
        }
        for t in d.saturating_sub(1)..stable {
            if self.hf_hom(t as i64 + 1) > self.hf_hom(t as i64) {
                v.violations.push(format!("HF of F^h increases after degree {t} >= D-1"));
            }
        }
        for t in 1..=stable {
            let (rank, src, tgt) = self.y_multiplication_rank(t);
            if t < d && rank != src {
                v.violations.push(format!("multiplication by y not injective into degree {t}"));
            }
            if t >= d && rank != tgt {
                v.violations.push(format!("multiplication by y not surjective onto degree {t}"));
            }
        }
        let reg = first_mismatch(
            &trim(self.lm_hom.hilbert_numerator()),
            &trim(product_numerator(&self.hom.degrees())),
        );
        if reg < Degree::Finite(d) {
            v.violations.push("Hilbert series of F^h leaves the product series below D".into());
        }
        if !(self.hilbert_hom.zero_dimensional || self.hilbert_hom.artinian) {
            v.violations.push("F^h has infinitely many projective zeros".into());
        }
        if self.system.len() == self.n() {
            let ok = self.d_prime() == Degree::Finite(d - 1);
            v.d_prime_is_d_minus_1 = Some(ok);
            if !ok {
                v.violations.push(format!("m = n but D' = {} and D = {d}", self.d_prime()));
            }
        }
        v.checked = true;
        Ok(v)
    }

    pub fn lemmas_4x(&self) -> Lemma4Verdict {
        let mut v = Lemma4Verdict::default();
        let d = match self.d() {
            Degree::Finite(d) => d,
            Degree::Infinite => {
                v.skipped = Some("D is infinite".into());
                return v;
            }
        };
        let csr = regular_up_to(&self.top).map(|r| r >= self.d()).unwrap_or(false);
        let lms_hom: Vec<&Monomial> = self.lm_hom.gens().iter().collect();
        if csr {
            for t in 0..d {
                let mut hom: Vec<Monomial> =
                    lms_hom.iter().filter(|m| m.degree() == t).map(|m| (*m).clone()).collect();
                let mut top: Vec<Monomial> =
                    self.lm_top.gens().iter().filter(|m| m.degree() == t).map(|m| m.extend(0)).collect();
                hom.sort_by(|a, b| a.exponents().cmp(b.exponents()));
                top.sort_by(|a, b| a.exponents().cmp(b.exponents()));
                if hom != top {
                    v.violations.push(format!("LM(G_hom) and LM(G_top) differ in degree {t}"));
                }
            }
            v.lm_equality_checked = true;
        }
        let low: Vec<&Monomial> =
            self.gb_hom.iter().filter(|g| g.degree().is_some_and(|e| e <= d)).filter_map(|g| g.lm()).collect();
        for u in self.top.ring().order().monomials_exact(d) {
            let u = u.extend(0);
            if !low.iter().any(|m| m.divides(&u)) {
                v.violations.push(format!("degree-D monomial {:?} not covered", u.exponents()));
            }
        }
        for g in self.gb_hom.iter().filter(|g| g.degree() == Some(d)) {
            match g.top_part() {
                Ok(t) if t.len() > 1 => v.violations.push(format!("top part with {} terms in degree D", t.len())),
                _ => {}
            }
        }
        v.checked = true;
        v
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm11Verdict {
    pub checked: bool,
    pub skipped: Option<String>,
    #[serde(rename = "D")]
    pub d: u32,
    pub d_prime_is_d_minus_1: Option<bool>,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma4Verdict {
    pub checked: bool,
    pub skipped: Option<String>,
    pub lm_equality_checked: bool,
    pub violations: Vec<String>,
}

pub fn classify(sys: &PolySystem) -> Result<RegularityReport, RegularityError> {
    Analysis::new(sys)?.report()
}

pub fn verify_theorem_1_1(sys: &PolySystem) -> Result<Thm11Verdict, RegularityError> {
    Analysis::new(sys)?.theorem_1_1()
}

pub fn verify_lemmas_4x(sys: &PolySystem) -> Result<Lemma4Verdict, RegularityError> {
    Ok(Analysis::new(sys)?.lemmas_4x())
}
