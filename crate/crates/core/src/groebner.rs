//! Buchberger's algorithm with degree telemetry, reduced bases, and the
//! saturation exponent of a homogenized system.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::monomial::Monomial;
use crate::poly::{merge, same_ring, PolyError, PolySystem, Polynomial, Ring, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("S-polynomial of a zero polynomial")]
    ZeroInput,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("saturation exponent search gave up at s={0}")]
    SaturationCap(u32),
}

/// Pair selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Lowest LCM degree first.
    #[default]
    Normal,
    /// Lowest sugar first.
    Sugar,
}

/// How pairs with equal degree (or sugar) and equal LCM are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    #[default]
    Oldest,
    Newest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BuchbergerConfig {
    pub strategy: Strategy,
    pub tie_break: TieBreak,
}

impl BuchbergerConfig {
    pub fn sugar() -> Self {
        BuchbergerConfig { strategy: Strategy::Sugar, ..Default::default() }
    }
}

/// Reduced basis plus what happened on the way there.
#[derive(Debug, Clone)]
pub struct GroebnerTrace {
    pub reduced_basis: Vec<Polynomial>,
    /// LCM degree of every processed pair, in processing order.
    pub step_degrees: Vec<u32>,
    /// Degree of every nonzero S-polynomial, in processing order.
    pub spoly_degrees: Vec<u32>,
    pub max_gb_degree: u32,
    pub sd_step: u32,
    pub sd_strict: u32,
    pub zero_reductions: u64,
    pub pairs_processed: u64,
    pub pairs_skipped_coprime: u64,
    pub reduction_steps: u64,
    /// Size of the working set before inter-reduction.
    pub working_basis_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Telemetry {
    pub step_degrees: Vec<u32>,
    pub spoly_degrees: Vec<u32>,
    pub sd_step: u32,
    pub sd_strict: u32,
    pub max_gb_degree: u32,
    pub zero_reductions: u64,
    pub pairs_processed: u64,
    pub pairs_skipped_coprime: u64,
    pub reduction_steps: u64,
}

impl GroebnerTrace {
    pub fn telemetry(&self) -> Telemetry {
        Telemetry {
            step_degrees: self.step_degrees.clone(),
            spoly_degrees: self.spoly_degrees.clone(),
            sd_step: self.sd_step,
            sd_strict: self.sd_strict,
            max_gb_degree: self.max_gb_degree,
            zero_reductions: self.zero_reductions,
            pairs_processed: self.pairs_processed,
            pairs_skipped_coprime: self.pairs_skipped_coprime,
            reduction_steps: self.reduction_steps,
        }
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.reduced_basis.iter().map(|g| g.lm().unwrap().clone()).collect()
    }
}

/// Monic working set in insertion order.
struct Basis {
    ring: Arc<Ring>,
    polys: Vec<Vec<Term>>,
    lms: Vec<Monomial>,
    sugars: Vec<u32>,
    steps: u64,
}

impl Basis {
    fn new(ring: &Arc<Ring>) -> Self {
        Basis { ring: ring.clone(), polys: Vec::new(), lms: Vec::new(), sugars: Vec::new(), steps: 0 }
    }

    fn from_polys(ring: &Arc<Ring>, g: &[Polynomial]) -> Self {
        let mut b = Basis::new(ring);
        for p in g.iter().filter(|p| !p.is_zero()) {
            let p = p.monic();
            b.lms.push(p.lm().unwrap().clone());
            b.sugars.push(p.degree().unwrap());
            b.polys.push(p.terms().to_vec());
        }
        b
    }

    #[inline]
    fn find_reducer(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        self.lms.iter().enumerate().position(|(i, lm)| Some(i) != skip && lm.divides(m))
    }

    /// Reduce every term of `w` from index `start` on. Tracks sugar of the
    /// reduction steps.
    fn reduce(&mut self, mut w: Vec<Term>, start: usize, skip: Option<usize>, sugar: &mut u32) -> Vec<Term> {
        let field = self.ring.field();
        let mut pos = start;
        while pos < w.len() {
            let Some(i) = self.find_reducer(&w[pos].monomial, skip) else {
                pos += 1;
                continue;
            };
            let t = self.lms[i].quotient_of(&w[pos].monomial).unwrap();
            let c = field.neg(w[pos].coeff);
            let tg: Vec<Term> =
                self.polys[i].iter().map(|x| Term { monomial: x.monomial.mul(&t), coeff: x.coeff }).collect();
            let tail = merge(&self.ring, field, &w[pos..], &tg, c);
            w.truncate(pos);
            w.extend(tail);
            *sugar = (*sugar).max(t.degree() + self.sugars[i]);
            self.steps += 1;
        }
        w
    }

    /// Append a monic element and keep every other tail reduced.
    fn insert(&mut self, h: Vec<Term>, sugar: u32) {
        let lm = h[0].monomial.clone();
        self.polys.push(h);
        self.lms.push(lm.clone());
        self.sugars.push(sugar);
        let last = self.polys.len() - 1;
        for k in 0..last {
            if self.polys[k][1..].iter().any(|t| lm.divides(&t.monomial)) {
                let g = std::mem::take(&mut self.polys[k]);
                let mut s = self.sugars[k];
                self.polys[k] = self.reduce(g, 1, Some(k), &mut s);
            }
        }
    }

    fn monic(&self, mut w: Vec<Term>) -> Vec<Term> {
        let field = self.ring.field();
        if let Some(lc) = w.first().map(|t| t.coeff) {
            if lc != 1 {
                let inv = field.inv(lc).unwrap();
                w.iter_mut().for_each(|t| t.coeff = field.mul(t.coeff, inv));
            }
        }
        w
    }
}

type PairKey = (u32, SmallVec<[i32; 12]>, (i64, i64));

/// `t1 f - t2 g` for monic-normalized leading terms.
fn spoly_terms(ring: &Ring, f: &[Term], g: &[Term]) -> (Vec<Term>, Monomial) {
    let field = ring.field();
    let (lf, lg) = (&f[0].monomial, &g[0].monomial);
    let l = lf.lcm(lg);
    let t1 = lf.quotient_of(&l).unwrap();
    let t2 = lg.quotient_of(&l).unwrap();
    let c1 = field.inv(f[0].coeff).unwrap();
    let c2 = field.inv(g[0].coeff).unwrap();
    let a: Vec<Term> =
        f.iter().map(|x| Term { monomial: x.monomial.mul(&t1), coeff: field.mul(x.coeff, c1) }).collect();
    let b: Vec<Term> = g.iter().map(|x| Term { monomial: x.monomial.mul(&t2), coeff: x.coeff }).collect();
    (merge(ring, field, &a, &b, field.neg(c2)), l)
}

/// The S-polynomial `t1 f - t2 g`, normalized so the leading terms of
/// `t1 f` and `t2 g` are both the monic LCM.
pub fn spoly(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    if f.is_zero() || g.is_zero() {
        return Err(GroebnerError::ZeroInput);
    }
    if !same_ring(f.ring(), g.ring()) {
        return Err(PolyError::RingMismatch.into());
    }
    let (terms, _) = spoly_terms(f.ring(), f.terms(), g.terms());
    Ok(Polynomial::from_sorted(f.ring(), terms))
}

/// Full reduction of `f` by `g`, trying reducers in the given order.
pub fn normal_form(f: &Polynomial, g: &[Polynomial]) -> Polynomial {
    let mut b = Basis::from_polys(f.ring(), g);
    let mut sugar = 0;
    let terms = b.reduce(f.terms().to_vec(), 0, None, &mut sugar);
    Polynomial::from_sorted(f.ring(), terms)
}

/// Turn a Gröbner basis into the reduced one: monic, minimal, tails
/// reduced, sorted by leading monomial (descending).
pub fn interreduce(g: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = g.iter().find(|p| !p.is_zero()) else {
        return Vec::new();
    };
    let ring = first.ring().clone();
    let mut polys: Vec<Polynomial> = g.iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    polys.sort_by(|a, b| ring.cmp(a.lm().unwrap(), b.lm().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in polys {
        if !minimal.iter().any(|q| q.lm().unwrap().divides(p.lm().unwrap())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for (i, p) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        let mut b = Basis::from_polys(&ring, &others);
        let mut s = 0;
        let terms = b.reduce(p.terms().to_vec(), 1, None, &mut s);
        out.push(Polynomial::from_sorted(&ring, terms));
    }
    out.sort_by(|a, b| ring.cmp(b.lm().unwrap(), a.lm().unwrap()));
    out
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner(g: &[Polynomial]) -> bool {
    let g: Vec<&Polynomial> = g.iter().filter(|p| !p.is_zero()).collect();
    let owned: Vec<Polynomial> = g.iter().map(|p| (*p).clone()).collect();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let s = spoly(g[i], g[j]).expect("nonzero");
            if !normal_form(&s, &owned).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Buchberger's algorithm under the ring's order.
///
/// Inputs are reduced and inserted in order. Pairs with coprime leading
/// monomials are skipped; the rest are processed lowest key first, where the
/// key is the LCM degree (or the pair's sugar), then the LCM itself, then
/// the pair's age. Whenever an element is added, the tails of all earlier
/// elements are reduced by it, so leading monomials never change but every
/// tail stays in normal form.
pub fn buchberger(f: &[Polynomial], cfg: BuchbergerConfig) -> GroebnerTrace {
    let mut trace = GroebnerTrace {
        reduced_basis: Vec::new(),
        step_degrees: Vec::new(),
        spoly_degrees: Vec::new(),
        max_gb_degree: 0,
        sd_step: 0,
        sd_strict: 0,
        zero_reductions: 0,
        pairs_processed: 0,
        pairs_skipped_coprime: 0,
        reduction_steps: 0,
        working_basis_size: 0,
    };
    let Some(first) = f.iter().find(|p| !p.is_zero()) else {
        return trace;
    };
    let ring = first.ring().clone();
    let order = ring.order().clone();
    let mut basis = Basis::new(&ring);
    let mut heap: BinaryHeap<Reverse<(PairKey, usize, usize)>> = BinaryHeap::new();

    let push_pairs = |basis: &Basis, heap: &mut BinaryHeap<Reverse<(PairKey, usize, usize)>>, skipped: &mut u64| {
        let j = basis.polys.len() - 1;
        for i in 0..j {
            let (li, lj) = (&basis.lms[i], &basis.lms[j]);
            if li.coprime(lj) {
                *skipped += 1;
                continue;
            }
            let l = li.lcm(lj);
            let primary = match cfg.strategy {
                Strategy::Normal => l.degree(),
                Strategy::Sugar => (basis.sugars[i] + l.degree() - li.degree())
                    .max(basis.sugars[j] + l.degree() - lj.degree()),
            };
            let age = match cfg.tie_break {
                TieBreak::Oldest => (j as i64, i as i64),
                TieBreak::Newest => (-(j as i64), -(i as i64)),
            };
            heap.push(Reverse(((primary, order.key(&l), age), i, j)));
        }
    };

    for p in f.iter().filter(|p| !p.is_zero()) {
        let mut sugar = p.degree().unwrap();
        let h = basis.reduce(p.terms().to_vec(), 0, None, &mut sugar);
        if h.is_empty() {
            continue;
        }
        let h = basis.monic(h);
        basis.insert(h, sugar);
        push_pairs(&basis, &mut heap, &mut trace.pairs_skipped_coprime);
    }

    while let Some(Reverse(((_, _, _), i, j))) = heap.pop() {
        trace.pairs_processed += 1;
        let (s, l) = spoly_terms(&ring, &basis.polys[i], &basis.polys[j]);
        trace.step_degrees.push(l.degree());
        let mut sugar = (basis.sugars[i] + l.degree() - basis.lms[i].degree())
            .max(basis.sugars[j] + l.degree() - basis.lms[j].degree());
        if let Some(t) = s.first() {
            trace.spoly_degrees.push(t.monomial.degree());
        }
        let h = basis.reduce(s, 0, None, &mut sugar);
        if h.is_empty() {
            trace.zero_reductions += 1;
            continue;
        }
        let h = basis.monic(h);
        basis.insert(h, sugar);
        push_pairs(&basis, &mut heap, &mut trace.pairs_skipped_coprime);
    }

    trace.working_basis_size = basis.polys.len();
    trace.reduction_steps = basis.steps;
    let working: Vec<Polynomial> = basis.polys.into_iter().map(|t| Polynomial::from_sorted(&ring, t)).collect();
    trace.reduced_basis = interreduce(&working);
    trace.max_gb_degree = trace.reduced_basis.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    trace.sd_step = trace.step_degrees.iter().copied().max().unwrap_or(0);
    trace.sd_strict = trace.spoly_degrees.iter().copied().max().unwrap_or(0);
    trace
}

/// Reduced Gröbner basis with the default configuration.
pub fn reduced_gb(f: &[Polynomial]) -> Vec<Polynomial> {
    buchberger(f, BuchbergerConfig::default()).reduced_basis
}

#[derive(Debug, Clone)]
pub struct SaturationResult {
    pub s0: u32,
    /// `G^h` for the reduced basis `G` of `<F>`: a Gröbner basis of the
    /// saturation `<F>^h`.
    pub saturation_basis: Vec<Polynomial>,
    /// Per element of `saturation_basis`, the least `s` with
    /// `y^s g` in `<F^h>`.
    pub per_element: Vec<u32>,
}

/// Least `s` with `(<F^h> : y^s) = (<F^h> : y^inf)`.
pub fn saturation_exponent(f: &PolySystem) -> Result<SaturationResult, GroebnerError> {
    let fh = f.homogenize()?;
    saturation_from_bases(&reduced_gb(f.polys()), &reduced_gb(fh.polys()))
}

/// Same as [`saturation_exponent`] from the reduced bases of `<F>` and
/// `<F^h>`.
pub fn saturation_from_bases(g: &[Polynomial], gb_h: &[Polynomial]) -> Result<SaturationResult, GroebnerError> {
    let hring = gb_h.first().ok_or(GroebnerError::ZeroInput)?.ring().clone();
    let gh: Vec<Polynomial> = g.iter().map(|p| p.homogenize_into(&hring)).collect::<Result<_, _>>()?;
    let y = Monomial::var(hring.nvars(), hring.nvars() - 1);
    let cap = 64 + gh.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let mut per = Vec::with_capacity(gh.len());
    for p in &gh {
        let mut cur = p.clone();
        let mut s = 0;
        while !normal_form(&cur, gb_h).is_zero() {
            s += 1;
            if s > cap {
                return Err(GroebnerError::SaturationCap(s));
            }
            cur = cur.mul_term(&y, 1);
        }
        per.push(s);
    }
    Ok(SaturationResult { s0: per.iter().copied().max().unwrap_or(0), saturation_basis: gh, per_element: per })
}
