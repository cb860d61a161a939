//! Rings, polynomials and polynomial systems.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::PrimeField;
use crate::linalg;
use crate::monomial::{Monomial, MonomialOrder, OrderKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("operation undefined for the zero polynomial")]
    Zero,
    #[error("constant polynomial not allowed in a system")]
    Constant,
    #[error("empty polynomial system")]
    EmptySystem,
    #[error("transform matrix must be {0}x{0}")]
    BadShape(usize),
    #[error("transform matrix is singular")]
    Singular,
    #[error("ring has no homogenizing variable")]
    NotHomogenized,
    #[error("ring is already homogenized")]
    AlreadyHomogenized,
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

/// Polynomial ring `F_q[x_1..x_k]` with a fixed graded order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    /// DRL ring with variables `x1..xn`.
    pub fn drl(field: PrimeField, n: usize) -> Arc<Ring> {
        let names = (1..=n).map(|i| format!("x{i}")).collect();
        Arc::new(Ring { field, names, order: MonomialOrder::drl(n) })
    }

    pub fn with_names(field: PrimeField, names: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>, PolyError> {
        if names.len() != order.nvars() {
            return Err(PolyError::Invalid("variable count does not match order".into()));
        }
        Ok(Arc::new(Ring { field, names, order }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_homogenized(&self) -> bool {
        self.order.kind() == OrderKind::Hdrl
    }

    /// The ring with an extra smallest variable `y`.
    pub fn homogenized(&self) -> Result<Arc<Ring>, PolyError> {
        if self.is_homogenized() {
            return Err(PolyError::AlreadyHomogenized);
        }
        let mut y = "y".to_string();
        while self.names.contains(&y) {
            y.push('_');
        }
        let mut names = self.names.clone();
        names.push(y);
        Ok(Arc::new(Ring { field: self.field, names, order: self.order.homogenized() }))
    }

    pub fn dehomogenized(&self) -> Result<Arc<Ring>, PolyError> {
        if !self.is_homogenized() {
            return Err(PolyError::NotHomogenized);
        }
        let mut names = self.names.clone();
        names.pop();
        Ok(Arc::new(Ring { field: self.field, names, order: self.order.dehomogenized() }))
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        Polynomial::constant(self, 1)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i), 1)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        parts.join("*")
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A term `coeff * monomial`; `coeff` is a residue in `[0, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: u32,
}

/// Terms strictly descending under the ring's order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: u32) -> Self {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u32) -> Self {
        let c = c % ring.field.modulus();
        let terms = if c == 0 { vec![] } else { vec![Term { monomial: m, coeff: c }] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Build from arbitrary terms: sorts, merges equal monomials, drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let field = ring.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity");
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, field.from_i64(c));
        }
        let mut terms: Vec<Term> =
            acc.into_iter().filter(|(_, c)| *c != 0).map(|(monomial, coeff)| Term { monomial, coeff }).collect();
        terms.sort_by(|a, b| ring.cmp(&b.monomial, &a.monomial));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusts the caller that `terms` are already normalized.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].monomial, &w[1].monomial) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn lc(&self) -> Option<u32> {
        self.terms.first().map(|t| t.coeff)
    }

    pub fn lt(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Total degree; `None` for zero. The order is graded, so this is the
    /// degree of the leading monomial.
    pub fn degree(&self) -> Option<u32> {
        self.lm().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.iter().all(|t| t.monomial.degree() == d),
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.monomial))
            .map(|i| self.terms[i].coeff)
            .unwrap_or(0)
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.combine(other, 1))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.combine(other, self.field().neg(1)))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        let mut acc = Polynomial::zero(&self.ring);
        for t in &other.terms {
            acc = acc.combine(&self.mul_term(&t.monomial, t.coeff), 1);
        }
        Ok(acc)
    }

    /// `self + c * other`, by merging.
    pub(crate) fn combine(&self, other: &Polynomial, c: u32) -> Polynomial {
        let terms = merge(&self.ring, self.field(), &self.terms, &other.terms, c);
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `c * m * self`; multiplying by a monomial keeps the term order.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let field = self.field();
        let c = c % field.modulus();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { monomial: t.monomial.mul(m), coeff: field.mul(t.coeff, c) })
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field().neg(1))
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.lc() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.field().inv(c).expect("nonzero lc")),
        }
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.field();
        self.terms.iter().fold(0, |acc, t| {
            let v = t
                .monomial
                .exponents()
                .iter()
                .zip(point)
                .fold(t.coeff, |v, (&e, &x)| f.mul(v, f.pow(x, e as u64)));
            f.add(acc, v)
        })
    }

    /// `f^h = sum c_t t y^{deg f - deg t}` in the homogenized ring.
    pub fn homogenize(&self) -> Result<Polynomial, PolyError> {
        let target = self.ring.homogenized()?;
        self.homogenize_into(&target)
    }

    pub fn homogenize_into(&self, target: &Arc<Ring>) -> Result<Polynomial, PolyError> {
        let d = self.degree().ok_or(PolyError::Zero)?;
        if !target.is_homogenized() || target.nvars() != self.ring.nvars() + 1 {
            return Err(PolyError::RingMismatch);
        }
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term { monomial: t.monomial.extend((d - t.monomial.degree()) as u16), coeff: t.coeff })
            .collect();
        // Already sorted in most cases, but homogenizing can reorder terms of
        // different degree relative to each other.
        terms.sort_by(|a, b| target.cmp(&b.monomial, &a.monomial));
        Ok(Polynomial { ring: target.clone(), terms })
    }

    /// `h(x_1, .., x_n, 1)` in the underlying affine ring.
    pub fn dehomogenize(&self) -> Result<Polynomial, PolyError> {
        let target = self.ring.dehomogenized()?;
        self.dehomogenize_into(&target)
    }

    pub fn dehomogenize_into(&self, target: &Arc<Ring>) -> Result<Polynomial, PolyError> {
        if !self.ring.is_homogenized() || target.nvars() + 1 != self.ring.nvars() {
            return Err(PolyError::RingMismatch);
        }
        Ok(Polynomial::from_terms(
            target,
            self.terms.iter().map(|t| (t.monomial.truncate_last(), t.coeff as i64)),
        ))
    }

    /// Affine ring: the part of maximal total degree (error on zero).
    /// Homogenized ring: `h` with `y = 0`, returned in the affine ring; may
    /// be zero.
    pub fn top_part(&self) -> Result<Polynomial, PolyError> {
        if self.ring.is_homogenized() {
            let target = self.ring.dehomogenized()?;
            let y = self.ring.nvars() - 1;
            let terms = self
                .terms
                .iter()
                .filter(|t| t.monomial.exp(y) == 0)
                .map(|t| Term { monomial: t.monomial.truncate_last(), coeff: t.coeff })
                .collect();
            return Ok(Polynomial { ring: target, terms });
        }
        let d = self.degree().ok_or(PolyError::Zero)?;
        let terms = self.terms.iter().take_while(|t| t.monomial.degree() == d).cloned().collect();
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Substitute `x -> x P`, i.e. variable `j` becomes `sum_i P[i][j] x_i`.
    pub fn apply_linear_transform(&self, p: &[Vec<u32>]) -> Result<Polynomial, PolyError> {
        let k = self.ring.nvars();
        if p.len() != k || p.iter().any(|r| r.len() != k) {
            return Err(PolyError::BadShape(k));
        }
        let field = self.field();
        let reduced: Vec<Vec<u32>> = p.iter().map(|r| r.iter().map(|&x| x % field.modulus()).collect()).collect();
        if linalg::rank(field, reduced.clone(), k) != k {
            return Err(PolyError::Singular);
        }
        let images: Vec<Polynomial> = (0..k)
            .map(|j| Polynomial::from_terms(&self.ring, (0..k).map(|i| (Monomial::var(k, i), reduced[i][j] as i64))))
            .collect();
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc = Polynomial::zero(&self.ring);
        for t in &self.terms {
            let mut prod = Polynomial::constant(&self.ring, t.coeff);
            for (j, &e) in t.monomial.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((j, e))
                    .or_insert_with(|| {
                        let mut r = self.ring.one();
                        for _ in 0..e {
                            r = r.mul(&images[j]).unwrap();
                        }
                        r
                    })
                    .clone();
                prod = prod.mul(&pw).unwrap();
            }
            acc = acc.combine(&prod, 1);
        }
        Ok(acc)
    }
}

/// Merge two descending term lists computing `a + c*b`.
pub(crate) fn merge(ring: &Ring, field: PrimeField, a: &[Term], b: &[Term], c: u32) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp(&a[i].monomial, &b[j].monomial) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let v = field.mul(b[j].coeff, c);
                if v != 0 {
                    out.push(Term { monomial: b[j].monomial.clone(), coeff: v });
                }
                j += 1;
            }
            Ordering::Equal => {
                let v = field.add(a[i].coeff, field.mul(b[j].coeff, c));
                if v != 0 {
                    out.push(Term { monomial: a[i].monomial.clone(), coeff: v });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let v = field.mul(t.coeff, c);
        if v != 0 {
            out.push(Term { monomial: t.monomial.clone(), coeff: v });
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match (t.coeff, t.monomial.is_one()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{}", self.ring.fmt_monomial(&t.monomial))?,
                (c, false) => write!(f, "{}*{}", c, self.ring.fmt_monomial(&t.monomial))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// An ordered sequence of nonzero, non-constant polynomials in one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    ring: Arc<Ring>,
    polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(ring: &Arc<Ring>, polys: Vec<Polynomial>) -> Result<Self, PolyError> {
        if polys.is_empty() {
            return Err(PolyError::EmptySystem);
        }
        for p in &polys {
            if !same_ring(ring, p.ring()) {
                return Err(PolyError::RingMismatch);
            }
            if p.is_zero() {
                return Err(PolyError::Zero);
            }
            if p.is_constant() {
                return Err(PolyError::Constant);
            }
        }
        Ok(PolySystem { ring: ring.clone(), polys })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(|p| p.degree().unwrap()).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.polys.iter().all(|p| p.is_homogeneous())
    }

    /// First `k` generators.
    pub fn prefix(&self, k: usize) -> Result<PolySystem, PolyError> {
        PolySystem::new(&self.ring, self.polys[..k].to_vec())
    }

    pub fn homogenize(&self) -> Result<PolySystem, PolyError> {
        let target = self.ring.homogenized()?;
        let polys = self.polys.iter().map(|p| p.homogenize_into(&target)).collect::<Result<_, _>>()?;
        Ok(PolySystem { ring: target, polys })
    }

    /// Top parts of an affine system; all are nonzero by construction.
    pub fn top_parts(&self) -> Result<PolySystem, PolyError> {
        if self.ring.is_homogenized() {
            return Err(PolyError::AlreadyHomogenized);
        }
        let polys = self.polys.iter().map(|p| p.top_part()).collect::<Result<_, _>>()?;
        Ok(PolySystem { ring: self.ring.clone(), polys })
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.polys {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(q: u64, n: usize) -> Arc<Ring> {
        Ring::drl(PrimeField::new(q).unwrap(), n)
    }

    fn p(r: &Arc<Ring>, terms: &[(&[u16], i64)]) -> Polynomial {
        Polynomial::from_terms(r, terms.iter().map(|(e, c)| (Monomial::new(e), *c)))
    }

    #[test]
    fn trivial_arithmetic() {
        let r = ring(7, 2);
        let a = p(&r, &[(&[1, 0], 1), (&[0, 0], 1)]);
        let b = p(&r, &[(&[1, 0], -1)]);
        assert_eq!(a.add(&b).unwrap(), r.one());
        let s = p(&r, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let d = p(&r, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(s.mul(&d).unwrap(), p(&r, &[(&[2, 0], 1), (&[0, 2], -1)]));
        assert!(s.mul(&Polynomial::zero(&r)).unwrap().is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(7, 2).var(0);
        let b = ring(11, 2).var(0);
        assert_eq!(a.add(&b), Err(PolyError::RingMismatch));
        assert_eq!(a.mul(&ring(7, 3).var(0)), Err(PolyError::RingMismatch));
    }

    #[test]
    fn homogenize_and_back() {
        let r = ring(7, 1);
        let f = p(&r, &[(&[2], 1), (&[1], 1)]);
        let h = f.homogenize().unwrap();
        assert_eq!(h.to_string(), "x1^2 + x1*y");
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize().unwrap(), f);
        let hr = h.ring().clone();
        let y3 = Polynomial::monomial(&hr, Monomial::new(&[0, 3]), 1);
        assert_eq!(y3.dehomogenize().unwrap(), r.one());
        let x1y3 = Polynomial::monomial(&hr, Monomial::new(&[1, 3]), 1);
        assert_eq!(x1y3.dehomogenize().unwrap(), r.var(0));
        assert_eq!(Polynomial::zero(&r).homogenize(), Err(PolyError::Zero));
    }

    #[test]
    fn top_parts() {
        let r = ring(7, 2);
        let f = p(&r, &[(&[2, 0], 1), (&[1, 1], 2), (&[1, 0], 3)]);
        assert_eq!(f.top_part().unwrap(), p(&r, &[(&[2, 0], 1), (&[1, 1], 2)]));
        let h = f.homogenize().unwrap();
        assert_eq!(h.top_part().unwrap(), f.top_part().unwrap());
        let hr = h.ring().clone();
        let x1y2 = Polynomial::monomial(&hr, Monomial::new(&[1, 0, 2]), 1);
        assert!(x1y2.top_part().unwrap().is_zero());
        assert_eq!(Polynomial::zero(&r).top_part(), Err(PolyError::Zero));
    }

    #[test]
    fn linear_transforms() {
        let r = ring(7, 2);
        let f = p(&r, &[(&[1, 0], 1), (&[0, 1], 2)]);
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(f.apply_linear_transform(&id).unwrap(), f);
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(f.apply_linear_transform(&swap).unwrap(), p(&r, &[(&[0, 1], 1), (&[1, 0], 2)]));
        let sing = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(f.apply_linear_transform(&sing), Err(PolyError::Singular));
        assert_eq!(f.apply_linear_transform(&[vec![1]]), Err(PolyError::BadShape(2)));
    }

    #[test]
    fn transform_sends_linear_form_to_last_variable() {
        // l = a1 x1 + a2 x2 + a3 x3 + x4; P is the identity with last column
        // (-a1, -a2, -a3, 1).
        let r = ring(73, 4);
        let a = [5i64, 17, 60];
        let l = p(&r, &[(&[1, 0, 0, 0], a[0]), (&[0, 1, 0, 0], a[1]), (&[0, 0, 1, 0], a[2]), (&[0, 0, 0, 1], 1)]);
        let f = r.field();
        let mut pm = vec![vec![0u32; 4]; 4];
        for i in 0..4 {
            pm[i][i] = 1;
        }
        for i in 0..3 {
            pm[i][3] = f.from_i64(-a[i]);
        }
        assert_eq!(l.apply_linear_transform(&pm).unwrap(), r.var(3));
    }

    #[test]
    fn display_uses_residues() {
        let r = ring(73, 3);
        let f = p(&r, &[(&[2, 0, 0], 1), (&[1, 1, 0], 3), (&[1, 0, 0], -2), (&[0, 0, 0], 5)]);
        assert_eq!(f.to_string(), "x1^2 + 3*x1*x2 + 71*x1 + 5");
    }

    #[test]
    fn system_rejects_constants() {
        let r = ring(7, 2);
        assert_eq!(PolySystem::new(&r, vec![r.one()]), Err(PolyError::Constant));
        assert_eq!(PolySystem::new(&r, vec![]), Err(PolyError::EmptySystem));
        assert_eq!(PolySystem::new(&r, vec![Polynomial::zero(&r)]), Err(PolyError::Zero));
    }

    fn arb_poly(r: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
        let n = r.nvars();
        proptest::collection::vec((proptest::collection::vec(0u16..3, n), -20i64..20), 0..6)
            .prop_map(move |ts| Polynomial::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::new(&e), c))))
    }

    proptest! {
        #[test]
        fn lm_is_multiplicative(f in arb_poly(ring(31, 3)), g in arb_poly(ring(31, 3))) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let fg = f.mul(&g).unwrap();
            prop_assert_eq!(fg.lm().cloned(), Some(f.lm().unwrap().mul(g.lm().unwrap())));
        }

        #[test]
        fn homogenize_roundtrip(f in arb_poly(ring(31, 3))) {
            prop_assume!(!f.is_zero());
            let h = f.homogenize().unwrap();
            prop_assert!(h.is_homogeneous());
            prop_assert_eq!(h.degree(), f.degree());
            prop_assert_eq!(h.dehomogenize().unwrap(), f.clone());
            prop_assert_eq!(h.top_part().unwrap(), f.top_part().unwrap());
            prop_assert_eq!(h.dehomogenize().unwrap().homogenize().unwrap(), h);
        }

        #[test]
        fn evaluation_is_a_ring_map(f in arb_poly(ring(31, 2)), g in arb_poly(ring(31, 2)), x in 0u32..31, y in 0u32..31) {
            let fl = f.field();
            let pt = [x, y];
            prop_assert_eq!(f.mul(&g).unwrap().evaluate(&pt), fl.mul(f.evaluate(&pt), g.evaluate(&pt)));
            prop_assert_eq!(f.sub(&g).unwrap().evaluate(&pt), fl.sub(f.evaluate(&pt), g.evaluate(&pt)));
        }

        #[test]
        fn invertible_transform_preserves_homogeneous_degree(f in arb_poly(ring(31, 2)), a in 1u32..31, b in 0u32..31) {
            prop_assume!(!f.is_zero());
            let h = f.homogenize().unwrap();
            // upper triangular with nonzero diagonal
            let pm = vec![vec![a, b, 0], vec![0, 1, 3], vec![0, 0, 1]];
            let t = h.apply_linear_transform(&pm).unwrap();
            prop_assert!(t.is_homogeneous());
            prop_assert_eq!(t.degree(), h.degree());
        }
    }
}
