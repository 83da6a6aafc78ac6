//! Dense integer polynomials in one variable.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Polynomial with `i64` coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![1] }
    }

    /// `1 + t + ... + t^m`.
    pub fn geometric(m: usize) -> Self {
        IntPoly { coeffs: vec![1; m + 1] }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn eval_i64(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, &c| acc * t + BigRational::from_integer(BigInt::from(c)))
    }

    /// Exact division by a monic polynomial; `None` if there is a remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if divisor.coeffs[dd] != 1 {
            return None;
        }
        let Some(nd) = self.degree() else {
            return Some(IntPoly::new(vec![]));
        };
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let lead = rem[k + dd];
            quot[k] = lead;
            if lead != 0 {
                for (j, &c) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= lead * c;
                }
            }
        }
        if rem.iter().all(|&c| c == 0) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// Power-series coefficients of `self / prod_i (1 - t^{m_i})` up to degree `k`.
    pub fn series_over_cyclic_denominators(&self, exponents: &[usize], k: usize) -> Vec<i64> {
        let mut series = vec![0i64; k + 1];
        for (i, &c) in self.coeffs.iter().enumerate().take(k + 1) {
            series[i] = c;
        }
        for &m in exponents {
            // multiply by 1/(1 - t^m): running sum with stride m
            for i in m..=k {
                series[i] += series[i - m];
            }
        }
        series
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a != 1 => write!(f, "{a}t")?,
                _ => f.write_str("t")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Convenience constructor for exact rationals from small integers.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for an exact rational base and signed exponent.
pub fn rat_pow(base: &BigRational, exp: i32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}
