//! Integer power series truncated at a fixed degree.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("integer overflow in series arithmetic at degree {0}")]
    Overflow(usize),
}

/// `c_0 + c_1 z + ... + c_cap z^cap`; everything above `cap` is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<i128>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<i128>, cap: usize) -> Self {
        coeffs.resize(cap + 1, 0);
        TruncatedSeries { coeffs }
    }

    pub fn one(cap: usize) -> Self {
        TruncatedSeries::new(vec![1], cap)
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        let cap = self.cap().min(other.cap());
        let coeffs = (0..=cap)
            .map(|i| self.coeffs[i].checked_add(other.coeffs[i]).ok_or(SeriesError::Overflow(i)))
            .collect::<Result<_, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let cap = self.cap().min(other.cap());
        let mut out = vec![0i128; cap + 1];
        for (i, &a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(cap + 1 - i) {
                let p = a.checked_mul(b).ok_or(SeriesError::Overflow(i + j))?;
                out[i + j] = out[i + j].checked_add(p).ok_or(SeriesError::Overflow(i + j))?;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiply by `1 - z^d`.
    pub fn mul_one_minus_pow(&mut self, d: usize) -> Result<(), SeriesError> {
        if d == 0 {
            self.coeffs.iter_mut().for_each(|c| *c = 0);
            return Ok(());
        }
        for i in (d..self.coeffs.len()).rev() {
            self.coeffs[i] = self.coeffs[i].checked_sub(self.coeffs[i - d]).ok_or(SeriesError::Overflow(i))?;
        }
        Ok(())
    }

    /// Divide by `(1 - z)^k`: `k` rounds of prefix sums.
    pub fn div_one_minus_z_pow(&mut self, k: usize) -> Result<(), SeriesError> {
        for _ in 0..k {
            for i in 1..self.coeffs.len() {
                self.coeffs[i] = self.coeffs[i].checked_add(self.coeffs[i - 1]).ok_or(SeriesError::Overflow(i))?;
            }
        }
        Ok(())
    }

    /// Multiply by `(1 - z)^k`.
    pub fn mul_one_minus_z_pow(&mut self, k: usize) -> Result<(), SeriesError> {
        for _ in 0..k {
            self.mul_one_minus_pow(1)?;
        }
        Ok(())
    }

    /// Largest `k` with `c_0, .., c_k` all positive, if any.
    pub fn positive_prefix_end(&self) -> Option<usize> {
        match self.coeffs.iter().position(|&c| c <= 0) {
            Some(0) => None,
            Some(i) => Some(i - 1),
            None => Some(self.cap()),
        }
    }

    /// The bracket `[S]`: keep coefficients up to the last one of the initial
    /// run of positive coefficients, zero the rest.
    pub fn bracket_truncate(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        let keep = self.positive_prefix_end().map_or(0, |k| k + 1);
        coeffs[keep..].iter_mut().for_each(|c| *c = 0);
        TruncatedSeries { coeffs }
    }
}

/// `prod (1 - z^{d_i}) / (1 - z)^k` up to `z^cap`.
pub fn product_series(k: usize, degrees: &[u32], cap: usize) -> Result<TruncatedSeries, SeriesError> {
    let mut s = TruncatedSeries::one(cap);
    for &d in degrees {
        s.mul_one_minus_pow(d as usize)?;
    }
    s.div_one_minus_z_pow(k)?;
    Ok(s)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "z".into(),
                (1, m) => format!("{m}z"),
                (i, 1) => format!("z^{i}"),
                (i, m) => format!("{m}z^{i}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
