//! Closed-form solving-degree bounds and the semi-regular series formulas.

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{product_series, SeriesError, TruncatedSeries};
use crate::Degree;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("bound needs m > n (got n={n}, m={m})")]
    TooFewPolynomials { n: usize, m: usize },
    #[error("degrees must be positive")]
    ZeroDegree,
    #[error("omega must lie in [2, 3], got {0}")]
    Omega(f64),
    #[error("D must be at least 1")]
    ZeroD,
    #[error("internal check failed: {0}")]
    Check(String),
}

fn check_degrees(degrees: &[u32]) -> Result<(), BoundError> {
    if degrees.contains(&0) {
        return Err(BoundError::ZeroDegree);
    }
    Ok(())
}

/// `d_1 + .. + d_l - l + 1` with `l = min(m, n+1)` over the `l` largest degrees.
pub fn lazard_bound(n: usize, degrees: &[u32]) -> u32 {
    let mut ds = degrees.to_vec();
    ds.sort_unstable_by(|a, b| b.cmp(a));
    let l = ds.len().min(n + 1);
    ds[..l].iter().sum::<u32>() + 1 - l as u32
}

/// Lazard's bound assumes at least as many polynomials as variables.
pub fn lazard_hypothesis_met(n: usize, m: usize) -> bool {
    m >= n
}

/// Default series cap: the Lazard bound plus two.
pub fn default_cap(n: usize, degrees: &[u32]) -> usize {
    lazard_bound(n, degrees) as usize + 2
}

/// Degree of `[prod (1 - z^{d_i}) / (1 - z)^k]`, or infinite when every
/// coefficient stays positive (fewer generators than `k`).
pub fn bracket_degree(k: usize, degrees: &[u32]) -> Result<Degree, BoundError> {
    check_degrees(degrees)?;
    if degrees.len() < k {
        // prod (1 + .. + z^{d_i - 1}) / (1 - z)^{k - m} has no sign change
        return Ok(Degree::Infinite);
    }
    let mut ds = degrees.to_vec();
    ds.sort_unstable_by(|a, b| b.cmp(a));
    // with m >= k the series is a polynomial of degree sum(d_i) - k, and the
    // positive run ends by sum over the k largest of (d_i - 1)
    let cap = ds[..k].iter().map(|&d| d as usize - 1).sum::<usize>() + 2;
    let s = product_series(k, degrees, cap)?;
    match s.positive_prefix_end() {
        Some(e) if e < cap => Ok(Degree::Finite(e as u32)),
        Some(_) => Err(BoundError::Check("positive run reached the cap".into())),
        None => Err(BoundError::Check("series starts non-positive".into())),
    }
}

/// `[prod (1 - z^{d_i}) / (1 - z)^n]` up to the default cap.
pub fn semiregular_series(n: usize, degrees: &[u32]) -> Result<TruncatedSeries, BoundError> {
    semiregular_series_to(n, degrees, default_cap(n, degrees))
}

pub fn semiregular_series_to(n: usize, degrees: &[u32], cap: usize) -> Result<TruncatedSeries, BoundError> {
    check_degrees(degrees)?;
    Ok(product_series(n, degrees, cap)?.bracket_truncate())
}

/// Degree of regularity of a semi-regular sequence: bracket degree plus one.
pub fn d_reg_formula(n: usize, degrees: &[u32]) -> Result<Degree, BoundError> {
    Ok(match bracket_degree(n, degrees)? {
        Degree::Finite(e) => Degree::Finite(e + 1),
        Degree::Infinite => Degree::Infinite,
    })
}

/// The same formula over `n + 1` variables. Infinite for `m <= n`.
pub fn d_new(n: usize, degrees: &[u32]) -> Result<Degree, BoundError> {
    d_reg_formula(n + 1, degrees)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm12Bound {
    pub main: u32,
    pub refined: Option<u32>,
}

/// With degrees sorted ascending: `d_1 + .. + d_n + d_m - n`, and the
/// refinement `d_1 + .. + d_{n+1} - n` when `d_m <= D_1`, where
/// `D_1 = floor((d_1 + .. + d_{n+1} - n - 1) / 2) + 1`.
pub fn thm12_bound(n: usize, degrees: &[u32]) -> Result<Thm12Bound, BoundError> {
    check_degrees(degrees)?;
    let m = degrees.len();
    if m <= n {
        return Err(BoundError::TooFewPolynomials { n, m });
    }
    let mut ds = degrees.to_vec();
    ds.sort_unstable();
    let first_n: u32 = ds[..n].iter().sum();
    let main = first_n + ds[m - 1] - n as u32;
    let first_n1 = first_n + ds[n];
    let d1 = (first_n1 - n as u32 - 1) / 2 + 1;
    let refined = (ds[m - 1] <= d1).then(|| first_n1 - n as u32);
    Ok(Thm12Bound { main, refined })
}

/// Every closed-form bound for one `(n, degrees)` cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub degrees: Vec<u32>,
    pub lazard: u32,
    pub lazard_hypothesis_met: bool,
    pub thm12_main: Option<u32>,
    pub thm12_refined: Option<u32>,
    pub d_reg_formula: Degree,
    pub d_new: Degree,
    pub two_d_minus_1: Option<u32>,
    pub two_d_minus_2: Option<u32>,
    pub d_plus_s0: Option<u32>,
}

pub fn bound_report(n: usize, degrees: &[u32], s0: Option<u32>) -> Result<BoundReport, BoundError> {
    check_degrees(degrees)?;
    let m = degrees.len();
    let lazard = lazard_bound(n, degrees);
    let thm = if m > n { Some(thm12_bound(n, degrees)?) } else { None };
    let d = d_reg_formula(n, degrees)?;
    let dn = d_new(n, degrees)?;
    if m > n {
        let Degree::Finite(v) = dn else {
            return Err(BoundError::Check("D_new infinite with m > n".into()));
        };
        if v > lazard || (m == n + 1 && v != lazard) {
            return Err(BoundError::Check(format!("D_new={v} vs Lazard={lazard}")));
        }
    }
    let fin = d.finite();
    Ok(BoundReport {
        n,
        degrees: degrees.to_vec(),
        lazard,
        lazard_hypothesis_met: lazard_hypothesis_met(n, m),
        thm12_main: thm.map(|t| t.main),
        thm12_refined: thm.and_then(|t| t.refined),
        d_reg_formula: d,
        d_new: dn,
        two_d_minus_1: fin.map(|d| 2 * d - 1),
        two_d_minus_2: fin.map(|d| (2 * d).saturating_sub(2)),
        d_plus_s0: fin.zip(s0).map(|(d, s)| d + s),
    })
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `c^omega`, exact for integral omega and rounded otherwise.
fn rounded_power(c: &BigUint, omega: f64) -> BigUint {
    if omega.fract() == 0.0 {
        return c.pow(omega as u32);
    }
    let v = (c.to_f64().expect("finite").ln() * omega).exp();
    BigUint::from_f64(v.round()).expect("finite and non-negative")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    /// `m C(n+D,D)^w + C(n+D,D)^2 C(n+D-1,D-1)^2 C(n+2D-2,2D-2)`
    #[serde(with = "big_string")]
    pub full: BigUint,
    /// Same, dropping the `C(n+D,D)^2` factor (no zero reductions).
    #[serde(with = "big_string")]
    pub without_zero_reductions: BigUint,
}

mod big_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn complexity_estimate(n: u64, m: u64, d: u64, omega: f64) -> Result<ComplexityEstimate, BoundError> {
    if d == 0 {
        return Err(BoundError::ZeroD);
    }
    if !(2.0..=3.0).contains(&omega) {
        return Err(BoundError::Omega(omega));
    }
    let c = binomial(n + d, d);
    let head = BigUint::from(m) * rounded_power(&c, omega);
    let tail = binomial(n + d - 1, d - 1).pow(2) * binomial(n + 2 * d - 2, 2 * d - 2);
    Ok(ComplexityEstimate {
        full: &head + &c * &c * &tail,
        without_zero_reductions: head + tail,
    })
}
