//! Hilbert functions and series of `R/I` read off the leading-monomial
//! ideal, plus degrees of regularity.

use serde::{Deserialize, Serialize};

use crate::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::series::TruncatedSeries;
use crate::Degree;

/// A monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents())));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        assert!(gens.iter().all(|g| g.nvars() == nvars), "monomial arity");
        MonomialIdeal { nvars, gens: minimalize(gens) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Minimal generators, by degree then exponent vector.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Degree-`d` monomials outside the ideal, descending under `order`.
    pub fn standard_monomials(&self, order: &MonomialOrder, d: u32) -> Vec<Monomial> {
        order.monomials_exact(d).into_iter().filter(|m| !self.contains(m)).collect()
    }

    /// Number of degree-`d` monomials outside the ideal.
    pub fn hilbert_function(&self, d: u32) -> u64 {
        monomials_of_degree(self.nvars, d).iter().filter(|m| !self.contains(m)).count() as u64
    }

    /// Numerator `N(z)` with `HS(z) = N(z) / (1 - z)^nvars`.
    pub fn hilbert_numerator(&self) -> Vec<i128> {
        let n = trim(numerator(self.gens.clone()));
        #[cfg(debug_assertions)]
        self.cross_check(&n);
        n
    }

    #[cfg(debug_assertions)]
    fn cross_check(&self, num: &[i128]) {
        let cap = (num.len() + 2).min(10) as u32;
        let budget: u64 = (0..=cap).map(|d| binom_u64(self.nvars as u64 + d as u64 - 1, d as u64)).sum();
        if self.nvars == 0 || budget * (self.gens.len() as u64 + 1) > 200_000 {
            return;
        }
        let s = expand(num, self.nvars, cap as usize);
        for d in 0..=cap {
            debug_assert_eq!(s.coeff(d as usize), self.hilbert_function(d) as i128, "HS numerator vs HF at {d}");
        }
    }
}

#[cfg(debug_assertions)]
fn binom_u64(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Leading monomials of a (reduced) Gröbner basis.
pub fn lm_ideal(basis: &[Polynomial]) -> MonomialIdeal {
    let nvars = basis.first().map_or(0, |g| g.ring().nvars());
    MonomialIdeal::new(nvars, basis.iter().filter_map(|g| g.lm().cloned()).collect())
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &[i128], b: &[i128], shift: usize) -> Vec<i128> {
    let mut out = a.to_vec();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, 0);
    }
    for (j, &y) in b.iter().enumerate() {
        out[j + shift] += y;
    }
    out
}

/// Pivot recursion: `N(J) = N(J + <p>) + z^{deg p} N(J : p)` with `p` a
/// power of the variable occurring in the most generators.
fn numerator(gens: Vec<Monomial>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let nvars = gens[0].nvars();
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (c, &e) in counts.iter_mut().zip(g.exponents()) {
            if e > 0 {
                *c += 1;
            }
        }
    }
    let (x, &best) = counts.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).unwrap();
    if best <= 1 {
        // pairwise coprime: a complete intersection of monomials
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0i128; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            poly_mul(&acc, &f)
        });
    }
    let e = gens.iter().map(|g| g.exp(x)).filter(|&e| e > 0).min().unwrap();
    let p = Monomial::one(nvars).with_exp(x, e);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(x) == 0).cloned().collect();
    plus.push(p.clone());
    let colon: Vec<Monomial> = gens.iter().map(|g| g.with_exp(x, g.exp(x).saturating_sub(e))).collect();
    let a = numerator(minimalize(plus));
    let b = numerator(minimalize(colon));
    poly_add_shifted(&a, &b, e as usize)
}

/// Coefficients of `num / (1 - z)^k` up to `cap`.
pub fn expand(num: &[i128], k: usize, cap: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::new(num.iter().copied().take(cap + 1).collect(), cap);
    s.div_one_minus_z_pow(k).expect("Hilbert series fits in i128");
    s
}

/// Everything the Hilbert series says about `R/I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSummary {
    pub nvars: usize,
    /// `HF(0), HF(1), ...` up to the point where it is settled, plus two.
    pub hf: Vec<u64>,
    /// `h(z)` with `HS = h(z) / (1 - z)^denominator_power`, `h(1) != 0`.
    pub hs_numerator: Vec<i128>,
    /// Krull dimension of `R/I`.
    pub denominator_power: usize,
    pub d_reg: Degree,
    pub gen_d_reg: Degree,
    pub hilbert_poly_constant: Option<i128>,
    pub artinian: bool,
    pub zero_dimensional: bool,
}

impl HilbertSummary {
    /// `HF(d)` for any `d`, from the series.
    pub fn hf_at(&self, d: u32) -> i128 {
        expand(&self.hs_numerator, self.denominator_power, d as usize).coeff(d as usize)
    }
}

/// Fill a [`HilbertSummary`] from the leading-monomial ideal.
pub fn regularity_degrees(j: &MonomialIdeal) -> HilbertSummary {
    let mut h = j.hilbert_numerator();
    let mut k = j.nvars();
    // divide out (1 - z) while h(1) = 0
    while k > 0 && h.iter().sum::<i128>() == 0 && h.iter().any(|&c| c != 0) {
        let mut q = vec![0i128; h.len() - 1];
        // synthetic division by (1 - z): q_i = sum_{j <= i} h_j
        let mut acc = 0;
        for i in 0..q.len() {
            acc += h[i];
            q[i] = acc;
        }
        h = trim(q);
        k -= 1;
    }
    let unit = h.iter().all(|&c| c == 0);
    if unit {
        k = 0;
    }
    let deg_h = (h.len() - 1) as u32;
    let (artinian, zero_dimensional) = (k == 0, k == 1);
    let (d_reg, gen_d_reg, constant) = if unit {
        (Degree::Finite(0), Degree::Finite(0), None)
    } else if artinian {
        (Degree::Finite(deg_h + 1), Degree::Finite(deg_h + 1), None)
    } else if zero_dimensional {
        (Degree::Infinite, Degree::Finite(deg_h), Some(h.iter().sum()))
    } else {
        (Degree::Infinite, Degree::Infinite, None)
    };
    let cap = deg_h as usize + 2 + if k > 1 { k } else { 0 };
    let s = expand(&h, k, cap);
    HilbertSummary {
        nvars: j.nvars(),
        hf: s.coeffs().iter().map(|&c| c as u64).collect(),
        hs_numerator: h,
        denominator_power: k,
        d_reg,
        gen_d_reg,
        hilbert_poly_constant: constant,
        artinian: artinian || unit,
        zero_dimensional,
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
    fn minimal_generators() {
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[3, 1]), m(&[2, 0]), m(&[0, 1])]);
        assert_eq!(j.gens(), &[m(&[0, 1]), m(&[2, 0])]);
        assert!(j.contains(&m(&[1, 1])));
        assert!(!j.contains(&m(&[1, 0])));
    }

    #[test]
    fn principal_numerator() {
        let j = MonomialIdeal::new(1, vec![m(&[2])]);
        assert_eq!(j.hilbert_numerator(), vec![1, 0, -1]);
        let s = regularity_degrees(&j);
        assert!(s.artinian);
        assert_eq!(s.d_reg, Degree::Finite(2));
    }

    #[test]
    fn full_ring() {
        let j = MonomialIdeal::new(3, vec![]);
        assert_eq!(j.hilbert_function(4), 15);
        let s = regularity_degrees(&j);
        assert!(!s.zero_dimensional && !s.artinian);
        assert_eq!(s.gen_d_reg, Degree::Infinite);
        assert_eq!(s.d_reg, Degree::Infinite);
        let s2 = regularity_degrees(&MonomialIdeal::new(2, vec![]));
        assert_eq!(s2.gen_d_reg, Degree::Infinite);
    }

    #[test]
    fn one_projective_point() {
        // <x1, x2> in k[x1, x2, y]: HF = 1 from degree 0 on
        let j = MonomialIdeal::new(3, vec![m(&[1, 0, 0]), m(&[0, 1, 0])]);
        let s = regularity_degrees(&j);
        assert!(s.zero_dimensional);
        assert_eq!(s.gen_d_reg, Degree::Finite(0));
        assert_eq!(s.hilbert_poly_constant, Some(1));
    }

    #[test]
    fn unit_ideal() {
        let s = regularity_degrees(&MonomialIdeal::new(2, vec![Monomial::one(2)]));
        assert_eq!(s.d_reg, Degree::Finite(0));
        assert!(s.hf.iter().all(|&v| v == 0));
    }

    fn arb_ideal() -> impl Strategy<Value = MonomialIdeal> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0u16..4, n), 0..7)
                .prop_map(move |gs| MonomialIdeal::new(n, gs.iter().map(|e| Monomial::new(e)).collect()))
        })
    }

    proptest! {
        /// Brute-force monomial counting agrees with the recursion.
        #[test]
        fn numerator_matches_enumeration(j in arb_ideal()) {
            let s = expand(&j.hilbert_numerator(), j.nvars(), 12);
            for d in 0..=12u32 {
                prop_assert_eq!(s.coeff(d as usize), j.hilbert_function(d) as i128);
            }
        }

        #[test]
        fn summary_is_consistent(j in arb_ideal()) {
            let s = regularity_degrees(&j);
            for (d, &v) in s.hf.iter().enumerate() {
                prop_assert_eq!(v, j.hilbert_function(d as u32));
            }
            if s.artinian {
                prop_assert_eq!(s.d_reg, s.gen_d_reg);
                let d = s.d_reg.finite().unwrap();
                prop_assert_eq!(j.hilbert_function(d), 0);
                prop_assert!(d == 0 || j.hilbert_function(d - 1) > 0);
            }
            if s.zero_dimensional {
                let d0 = s.gen_d_reg.finite().unwrap();
                let c = s.hilbert_poly_constant.unwrap() as u64;
                for d in d0..d0 + 6 {
                    prop_assert_eq!(j.hilbert_function(d), c);
                }
                prop_assert!(d0 == 0 || j.hilbert_function(d0 - 1) != c);
            }
        }
    }
}
