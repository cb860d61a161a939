//! Dense exponent-vector monomials and the graded reverse-lex orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial `x_1^{e_1} ... x_k^{e_k}` with its total degree cached.
///
/// When the ring is homogenized the last slot holds the exponent of `y`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u16>", into = "Vec<u16>")]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl From<Vec<u16>> for Monomial {
    fn from(v: Vec<u16>) -> Self {
        Monomial::new(&v)
    }
}

impl From<Monomial> for Vec<u16> {
    fn from(m: Monomial) -> Vec<u16> {
        m.exps.to_vec()
    }
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps: Exponents::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: smallvec::smallvec![0; nvars], degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect();
        Monomial { degree: exps.iter().map(|&e| e as u32).sum(), exps }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect();
        Monomial { degree: exps.iter().map(|&e| e as u32).sum(), exps }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Same exponents with one extra trailing slot.
    pub fn extend(&self, last: u16) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(last);
        Monomial { exps, degree: self.degree + last as u32 }
    }

    /// Drop the trailing slot.
    pub fn truncate_last(&self) -> Monomial {
        let mut exps = self.exps.clone();
        let last = exps.pop().unwrap_or(0);
        Monomial { exps, degree: self.degree - last as u32 }
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        let old = exps[i];
        exps[i] = e;
        Monomial { exps, degree: self.degree - old as u32 + e as u32 }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// All monomials of total degree exactly `d` in `nvars` variables, in no
/// particular order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left as u16;
            out.push(Monomial::new(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Which flavour of graded reverse-lex order is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Drl,
    /// DRL on `x_1..x_n`, extended to `y` (last slot) as the smallest variable.
    Hdrl,
}

/// A graded reverse-lexicographic order.
///
/// `priority` lists variable slots from largest to smallest; the default is
/// `x_1 > x_2 > ... > x_n` (and `y` last for [`OrderKind::Hdrl`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn drl(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Drl, priority: (0..nvars).collect() }
    }

    /// DRL with a custom variable precedence; `priority[0]` is the largest.
    /// Returns `None` unless `priority` is a permutation of `0..len`.
    pub fn drl_with_priority(priority: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= seen.len() || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(MonomialOrder { kind: OrderKind::Drl, priority })
    }

    /// The homogenized order for a ring with one extra trailing variable.
    pub fn homogenized(&self) -> Self {
        let mut priority = self.priority.clone();
        priority.push(priority.len());
        MonomialOrder { kind: OrderKind::Hdrl, priority }
    }

    /// Inverse of [`MonomialOrder::homogenized`].
    pub fn dehomogenized(&self) -> Self {
        let y = self.priority.len() - 1;
        MonomialOrder {
            kind: OrderKind::Drl,
            priority: self.priority.iter().copied().filter(|&p| p != y).collect(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    /// Degree first, then the monomial with the smaller exponent in the
    /// smallest differing variable is the larger one.
    ///
    /// With `y` placed last this is exactly the homogenized order: among
    /// equal total degree the larger X-degree wins, then DRL on the X-parts.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.degree.cmp(&b.degree) {
            Ordering::Equal => {}
            o => return o,
        }
        for &v in self.priority.iter().rev() {
            let (ea, eb) = (a.exps[v], b.exps[v]);
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }

    /// A key whose lexicographic order agrees with [`MonomialOrder::cmp`].
    pub fn key(&self, m: &Monomial) -> SmallVec<[i32; 12]> {
        let mut k = SmallVec::with_capacity(self.priority.len() + 1);
        k.push(m.degree as i32);
        for &v in self.priority.iter().rev() {
            k.push(-(m.exps[v] as i32));
        }
        k
    }

    /// Sort descending.
    pub fn sort_desc(&self, ms: &mut [Monomial]) {
        ms.sort_by(|a, b| self.cmp(b, a));
    }

    /// All monomials of degree at most `d`, descending.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for k in (0..=d).rev() {
            out.extend(self.monomials_exact(k));
        }
        out
    }

    /// All monomials of degree exactly `d`, descending.
    pub fn monomials_exact(&self, d: u32) -> Vec<Monomial> {
        let mut ms = monomials_of_degree(self.nvars(), d);
        self.sort_desc(&mut ms);
        ms
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn drl_small_cases() {
        let o = MonomialOrder::drl(3);
        // x1 > x2 > x3
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        // x1x3 < x2^2 in DRL
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        let desc: Vec<_> = o.monomials_exact(2);
        let expected = [
            [2, 0, 0],
            [1, 1, 0],
            [0, 2, 0],
            [1, 0, 1],
            [0, 1, 1],
            [0, 0, 2],
        ];
        assert_eq!(desc, expected.iter().map(|e| m(e)).collect::<Vec<_>>());
    }

    #[test]
    fn y_divisible_is_smaller_at_equal_degree() {
        let h = MonomialOrder::drl(2).homogenized();
        assert_eq!(h.kind(), OrderKind::Hdrl);
        // x2^2 > x1 y
        assert_eq!(h.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn permuted_priority() {
        let o = MonomialOrder::drl_with_priority(vec![1, 0]).unwrap();
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[1, 0])), Ordering::Greater);
        assert!(MonomialOrder::drl_with_priority(vec![0, 0]).is_none());
    }

    #[test]
    fn enumeration_counts() {
        // C(n-1+d, d)
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert_eq!(MonomialOrder::drl(2).monomials_up_to(2).last(), Some(&Monomial::one(2)));
    }

    fn mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u16..4, n).prop_map(|v| Monomial::new(&v))
    }

    proptest! {
        #[test]
        fn hdrl_restricts_to_drl(a in mono(3), b in mono(3)) {
            let o = MonomialOrder::drl(3);
            prop_assert_eq!(o.homogenized().cmp(&a.extend(0), &b.extend(0)), o.cmp(&a, &b));
        }

        #[test]
        fn key_agrees_with_cmp(a in mono(4), b in mono(4)) {
            let o = MonomialOrder::drl_with_priority(vec![2, 0, 3, 1]).unwrap();
            prop_assert_eq!(o.key(&a).cmp(&o.key(&b)), o.cmp(&a, &b));
        }

        #[test]
        fn order_is_multiplicative(a in mono(4), b in mono(4), t in mono(4)) {
            let o = MonomialOrder::drl(4);
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&t), &b.mul(&t)));
        }

        #[test]
        fn y_multiple_below_same_degree(a in mono(3), b in mono(3), i in 0usize..3) {
            let h = MonomialOrder::drl(3).homogenized();
            let left = a.extend(1).mul(&b.extend(0));
            let right = a.mul(&b).mul(&Monomial::var(3, i)).extend(0);
            prop_assert_eq!(h.cmp(&left, &right), Ordering::Less);
        }

        #[test]
        fn lcm_gcd_degree_identity(a in mono(4), b in mono(4)) {
            prop_assert_eq!(a.lcm(&b).degree() + a.gcd(&b).degree(), a.degree() + b.degree());
            prop_assert!(a.divides(&a.lcm(&b)));
            prop_assert_eq!(a.quotient_of(&a.mul(&b)), Some(b.clone()));
        }
    }
}
