//! Seeded random affine systems with zero constant term.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;
use crate::monomial::MonomialOrder;
use crate::poly::{PolyError, PolySystem, Polynomial, Ring};

/// `m = degrees.len()` polynomials in `n` variables over `F_q`.
///
/// Every monomial of degree `1..=d_i` gets a uniform coefficient; the
/// degree-`d_i` slice is redrawn until it is nonzero, so `deg f_i = d_i`.
pub fn random_system(n: usize, degrees: &[u32], q: u64, seed: u64) -> Result<PolySystem, PolyError> {
    if n == 0 || degrees.is_empty() {
        return Err(PolyError::Invalid("need n >= 1 and at least one polynomial".into()));
    }
    if let Some(d) = degrees.iter().find(|&&d| d < 2) {
        return Err(PolyError::Invalid(format!("degree {d} < 2")));
    }
    let field = PrimeField::new(q).map_err(|e| PolyError::Invalid(e.to_string()))?;
    let ring = Ring::drl(field, n);
    let order = MonomialOrder::drl(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polys = Vec::with_capacity(degrees.len());
    for &d in degrees {
        let mut terms = Vec::new();
        for k in 1..d {
            for m in order.monomials_exact(k) {
                terms.push((m, rng.gen_range(0..q) as i64));
            }
        }
        let top = order.monomials_exact(d);
        loop {
            let coeffs: Vec<i64> = top.iter().map(|_| rng.gen_range(0..q) as i64).collect();
            if coeffs.iter().any(|&c| c != 0) {
                terms.extend(top.iter().cloned().zip(coeffs));
                break;
            }
        }
        polys.push(Polynomial::from_terms(&ring, terms));
    }
    PolySystem::new(&ring, polys)
}

/// Same shape as [`random_system`] but homogeneous of each degree.
pub fn random_homogeneous_system(n: usize, degrees: &[u32], q: u64, seed: u64) -> Result<PolySystem, PolyError> {
    if n == 0 || degrees.is_empty() || degrees.contains(&0) {
        return Err(PolyError::Invalid("need n >= 1, m >= 1 and positive degrees".into()));
    }
    let field = PrimeField::new(q).map_err(|e| PolyError::Invalid(e.to_string()))?;
    let ring = Ring::drl(field, n);
    let order = MonomialOrder::drl(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polys = Vec::new();
    for &d in degrees {
        let top = order.monomials_exact(d);
        loop {
            let coeffs: Vec<i64> = top.iter().map(|_| rng.gen_range(0..q) as i64).collect();
            if coeffs.iter().any(|&c| c != 0) {
                polys.push(Polynomial::from_terms(&ring, top.iter().cloned().zip(coeffs)));
                break;
            }
        }
    }
    PolySystem::new(&ring, polys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_zero_constant() {
        let s = random_system(3, &[2, 2, 2, 2], 73, 11).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.degrees(), vec![2, 2, 2, 2]);
        for f in s.polys() {
            assert_eq!(f.evaluate(&[0, 0, 0]), 0);
        }
    }

    #[test]
    fn deterministic() {
        let a = random_system(4, &[3, 2, 2], 31, 5).unwrap();
        let b = random_system(4, &[3, 2, 2], 31, 5).unwrap();
        assert_eq!(a, b);
        let c = random_system(4, &[3, 2, 2], 31, 6).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(random_system(3, &[1, 2], 31, 0).is_err());
        assert!(random_system(3, &[2], 32, 0).is_err());
        assert!(random_system(0, &[2], 31, 0).is_err());
        assert!(random_system(2, &[], 31, 0).is_err());
    }

    #[test]
    fn homogeneous_variant() {
        let s = random_homogeneous_system(3, &[1, 2, 3], 31, 1).unwrap();
        assert!(s.is_homogeneous());
        assert_eq!(s.degrees(), vec![1, 2, 3]);
    }
}
