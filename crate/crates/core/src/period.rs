//! Sphere sizes and the period of the Iwahori-spherical harmonic cocycle.
//!
//! On the sphere of chambers at gallery distance `k` from the base chamber of
//! the thickness-`q_F` building there are `a_k q_F^k` chambers, and the
//! normalized Iwahori cocycle takes the value `(-1/q_E)^k` with `q_E = q_F^2`.
//! The period is therefore
//!
//! ```text
//! lambda = sum_k a_k q_F^k (-1/q_E)^k = sum_k a_k (-1/q_F)^k = W_aff(-1/q_F),
//! ```
//!
//! where `W_aff(t) = W_fin(t) / prod_i (1 - t^{m_i})`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{exponents, poincare_finite, CartanType, CoxeterError, Family, GrowthSeries};
use crate::poly::rat_pow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodError {
    #[error("{0} is not a prime power >= 2")]
    NotPrimePower(u64),
    #[error("index {k} is beyond the series truncation {truncation}")]
    OutOfRange { k: usize, truncation: usize },
    #[error("tail ratio {ratio} is not below 1; the geometric tail bound does not apply")]
    TailNotContracting { ratio: String },
    #[error("a tail bound needs at least one enumerated ratio (truncation >= 1)")]
    TruncationTooShort,
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// Residue field size of the base field. `q_E = q_F^2` is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct ResidueSize(u64);

impl ResidueSize {
    pub fn new(q: u64) -> Result<Self, PeriodError> {
        if prime_power_base(q).is_some() {
            Ok(ResidueSize(q))
        } else {
            Err(PeriodError::NotPrimePower(q))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Residue field size of the unramified quadratic extension.
    pub fn squared(self) -> u64 {
        self.0 * self.0
    }
}

impl TryFrom<u64> for ResidueSize {
    type Error = PeriodError;

    fn try_from(q: u64) -> Result<Self, Self::Error> {
        ResidueSize::new(q)
    }
}

impl From<ResidueSize> for u64 {
    fn from(q: ResidueSize) -> u64 {
        q.0
    }
}

/// `Some((p, n))` with `q = p^n`, `p` prime, `n >= 1`.
pub fn prime_power_base(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&p| q.is_multiple_of(p))?;
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(big(num), big(den))
}

/// Number of chambers at gallery distance `k` in the thickness-`q` building: `a_k q^k`.
pub fn sphere_size(series: &GrowthSeries, q: u64, k: usize) -> Result<BigInt, PeriodError> {
    let a = series.get(k).ok_or(PeriodError::OutOfRange { k, truncation: series.truncation })?;
    Ok(big(a) * num_traits::pow(big(q), k))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingRow {
    pub k: usize,
    pub coefficient: u64,
    /// `(d+1) d^{k-1}`.
    #[serde(with = "crate::exact::integer")]
    pub bound: BigInt,
    #[serde(with = "crate::exact::integer")]
    pub slack: BigInt,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub rank: usize,
    pub rows: Vec<CountingRow>,
}

impl CountingReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn all_tight(&self) -> bool {
        self.rows.iter().all(|r| r.slack.is_zero())
    }
}

/// Compares `a_k` with `(d+1) d^{k-1}` for `1 <= k <= K`; the common factor
/// `q^k` of the sphere size and its bound cancels.
pub fn check_counting_bound(series: &GrowthSeries, truncation: usize) -> Result<CountingReport, PeriodError> {
    if truncation > series.truncation {
        return Err(PeriodError::OutOfRange { k: truncation, truncation: series.truncation });
    }
    let d = series.rank as u64;
    let rows = (1..=truncation)
        .map(|k| {
            let coefficient = series.coefficients[k];
            let bound = big(d + 1) * num_traits::pow(big(d), k - 1);
            let slack = &bound - big(coefficient);
            CountingRow { k, coefficient, holds: !slack.is_negative(), bound, slack }
        })
        .collect();
    Ok(CountingReport { rank: series.rank, rows })
}

/// Partial sums `S_m = sum_{k <= m} a_k (-1/q_F)^k` for `m = 0..=K`.
pub fn period_series(
    series: &GrowthSeries,
    q_f: ResidueSize,
    truncation: usize,
) -> Result<Vec<BigRational>, PeriodError> {
    signed_partial_sums(series, q_f, truncation, true)
}

fn signed_partial_sums(
    series: &GrowthSeries,
    q_f: ResidueSize,
    truncation: usize,
    alternating: bool,
) -> Result<Vec<BigRational>, PeriodError> {
    if truncation > series.truncation {
        return Err(PeriodError::OutOfRange { k: truncation, truncation: series.truncation });
    }
    let step = if alternating { -ratio(1, q_f.get()) } else { ratio(1, q_f.get()) };
    let mut power = BigRational::one();
    let mut acc = BigRational::zero();
    let mut out = Vec::with_capacity(truncation + 1);
    for k in 0..=truncation {
        acc += BigRational::from_integer(big(series.coefficients[k])) * &power;
        out.push(acc.clone());
        power *= &step;
    }
    Ok(out)
}

/// `W_aff(t) = W_fin(t) / prod_i (1 - t^{m_i})` evaluated exactly.
pub fn affine_growth_at(family: Family, rank: usize, t: &BigRational) -> Result<BigRational, PeriodError> {
    let poly = poincare_finite(family, rank)?;
    let exps = exponents(family, rank)?;
    let mut value = poly.eval(t);
    for m in exps {
        value /= BigRational::one() - rat_pow(t, m as i32);
    }
    Ok(value)
}

/// The period as an exact rational, `W_aff(-1/q_F)`.
pub fn period_closed_form(family: Family, rank: usize, q_f: ResidueSize) -> Result<BigRational, PeriodError> {
    CartanType::new(family, rank)?;
    affine_growth_at(family, rank, &-ratio(1, q_f.get()))
}

/// Geometric majorant of `sum_{k > K} a_k q^{-k}`.
///
/// Uses `r = max a_{k+1} / (a_k q)` over the last three enumerated ratios and
/// returns `a_K q^{-K} r / (1 - r)`.
pub fn tail_bound(series: &GrowthSeries, q: ResidueSize, truncation: usize) -> Result<BigRational, PeriodError> {
    if truncation > series.truncation {
        return Err(PeriodError::OutOfRange { k: truncation, truncation: series.truncation });
    }
    if truncation == 0 {
        return Err(PeriodError::TruncationTooShort);
    }
    let first = truncation.saturating_sub(3);
    let r = (first..truncation)
        .map(|k| ratio(series.coefficients[k + 1], series.coefficients[k] * q.get()))
        .max()
        .expect("at least one ratio");
    if r >= BigRational::one() {
        return Err(PeriodError::TailNotContracting { ratio: r.to_string() });
    }
    let last = BigRational::from_integer(big(series.coefficients[truncation]))
        * rat_pow(&ratio(1, q.get()), truncation as i32);
    Ok(last * &r / (BigRational::one() - &r))
}

/// Everything known about the period for one `(type, q_F)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodResult {
    pub family: Family,
    pub rank: usize,
    pub q_f: ResidueSize,
    pub q_e: u64,
    #[serde(with = "crate::exact::rational")]
    pub closed_form_value: BigRational,
    /// `partial_sums[m]` is the period series truncated at sphere `m`.
    #[serde(with = "crate::exact::rational_vec")]
    pub partial_sums: Vec<BigRational>,
    #[serde(with = "crate::exact::rational")]
    pub tail_bound: BigRational,
}

impl PeriodResult {
    pub fn truncation(&self) -> usize {
        self.partial_sums.len() - 1
    }

    /// `|closed form - S_K| <= tail bound`.
    pub fn series_agrees(&self) -> bool {
        let last = self.partial_sums.last().expect("nonempty");
        (&self.closed_form_value - last).abs() <= self.tail_bound
    }
}

pub fn compute_period(series: &GrowthSeries, q_f: ResidueSize, truncation: usize) -> Result<PeriodResult, PeriodError> {
    Ok(PeriodResult {
        family: series.family,
        rank: series.rank,
        q_f,
        q_e: q_f.squared(),
        closed_form_value: period_closed_form(series.family, series.rank, q_f)?,
        partial_sums: period_series(series, q_f, truncation)?,
        tail_bound: tail_bound(series, q_f, truncation)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BoundsCheck {
    Holds {
        #[serde(with = "crate::exact::rational")]
        lower: BigRational,
    },
    Violated {
        #[serde(with = "crate::exact::rational")]
        lower: BigRational,
        #[serde(with = "crate::exact::rational")]
        value: BigRational,
    },
    /// `q_F <= d`: the lower bound is not claimed.
    NotApplicable,
}

impl BoundsCheck {
    pub fn passed(&self) -> bool {
        !matches!(self, BoundsCheck::Violated { .. })
    }
}

/// `1 > lambda > 1 - (d+1)/q_F` whenever `q_F > d`.
pub fn check_theorem_bounds(result: &PeriodResult) -> BoundsCheck {
    let q = result.q_f.get();
    let d = result.rank as u64;
    if q <= d {
        return BoundsCheck::NotApplicable;
    }
    let lower = BigRational::one() - ratio(d + 1, q);
    let value = &result.closed_form_value;
    if *value < BigRational::one() && *value > lower {
        BoundsCheck::Holds { lower }
    } else {
        BoundsCheck::Violated { lower, value: value.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct L1Report {
    /// Partial sums of `sum_k a_k q_F^{-k}`.
    #[serde(with = "crate::exact::rational_vec")]
    pub partial_sums: Vec<BigRational>,
    /// Term ratios `a_{k+1} / (a_k q_F)`.
    #[serde(with = "crate::exact::rational_vec")]
    pub term_ratios: Vec<BigRational>,
    pub converges: bool,
    /// Whether `q_F > d`, the sufficient condition of the summability argument.
    pub sufficient_condition: bool,
}

/// Absolute-value series of the Iwahori cocycle over the rational chambers.
///
/// Affine growth is polynomial, so the series converges for every `q_F >= 2`
/// even when `q_F <= d`; `converges` records that observation.
pub fn l1_diagnostic(series: &GrowthSeries, q_f: ResidueSize, truncation: usize) -> Result<L1Report, PeriodError> {
    let partial_sums = signed_partial_sums(series, q_f, truncation, false)?;
    let term_ratios =
        (0..truncation).map(|k| ratio(series.coefficients[k + 1], series.coefficients[k] * q_f.get())).collect();
    Ok(L1Report {
        partial_sums,
        term_ratios,
        converges: q_f.get() >= 2,
        sufficient_condition: q_f.get() > series.rank as u64,
    })
}
