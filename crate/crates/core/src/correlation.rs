//! Periodic correlation by direct summation — the oracle everything else is
//! measured against — plus the Welch lower bound and the √q+3 upper bound.
//!
//! C_{a,b}(τ) = Σ_t ω_M^{a_t − b_{t+τ}} is computed exactly: one pass tallies
//! the digit differences, one reduction turns the tally into a canonical
//! element of Z[ω_M].  Magnitudes only ever become floating point in bound
//! reports.

use crate::cycint::CycInt;
use crate::gf::FieldTable;
use crate::sequences::{sidelnikov, Sequence, SequenceError};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorrelationError {
    /// Sequences differ in modulus or period.
    ShapeMismatch,
    /// Welch bound needs s ≥ 1, ℓ ≥ 1, sℓ > 1.
    DegenerateFamily { s: u64, ell: u64 },
    /// Multipliers must be distinct and nonzero mod M.
    BadMultiplier { c1: u32, c2: u32, m: u32 },
    Sequence(SequenceError),
}

impl CorrelationError {
    pub fn code(&self) -> &'static str {
        match self {
            CorrelationError::ShapeMismatch => "ShapeMismatch",
            CorrelationError::DegenerateFamily { .. } => "DegenerateFamily",
            CorrelationError::BadMultiplier { .. } => "BadMultiplier",
            CorrelationError::Sequence(e) => e.code(),
        }
    }
}

impl fmt::Display for CorrelationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorrelationError::ShapeMismatch => write!(f, "sequences differ in modulus or period"),
            CorrelationError::DegenerateFamily { s, ell } => {
                write!(f, "degenerate family: s = {s}, period = {ell}")
            }
            CorrelationError::BadMultiplier { c1, c2, m } => {
                write!(f, "multipliers ({c1}, {c2}) must be distinct and nonzero mod {m}")
            }
            CorrelationError::Sequence(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CorrelationError {}

impl From<SequenceError> for CorrelationError {
    fn from(e: SequenceError) -> Self {
        CorrelationError::Sequence(e)
    }
}

// ---------------------------------------------------------------------------
// The oracle
// ---------------------------------------------------------------------------

/// C_{a,b}(τ) for all τ ∈ [0, v).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrelationVector {
    #[serde(rename = "M")]
    pub m: u32,
    pub v: usize,
    pub values: Vec<CycInt>,
}

impl CorrelationVector {
    /// max_τ≥1 |C(τ)| as a float, with the achieving τ.
    pub fn max_out_of_phase(&self) -> (f64, usize) {
        let mut best = (0.0f64, 0usize);
        for (tau, value) in self.values.iter().enumerate().skip(1) {
            let a = value.abs();
            if a > best.0 {
                best = (a, tau);
            }
        }
        best
    }
}

/// Exact C_{a,b}(τ) = Σ_{t=0}^{v−1} ω_M^{a_t − b_{t+τ}}; τ is reduced mod v.
pub fn correlate(a: &Sequence, b: &Sequence, tau: i64) -> Result<CycInt, CorrelationError> {
    if a.modulus() != b.modulus() || a.period() != b.period() {
        return Err(CorrelationError::ShapeMismatch);
    }
    let m = a.modulus();
    let v = a.period();
    let tau = tau.rem_euclid(v as i64) as usize;
    let (da, db) = (a.digits(), b.digits());
    let mut counts = vec![0i64; m as usize];
    // split at the wrap point so the inner loop has no modulo
    for (x, y) in da[..v - tau].iter().zip(&db[tau..]) {
        counts[((x + m - y) % m) as usize] += 1;
    }
    for (x, y) in da[v - tau..].iter().zip(&db[..tau]) {
        counts[((x + m - y) % m) as usize] += 1;
    }
    Ok(CycInt::from_root_counts(m, &counts))
}

/// All τ at once; per-τ sums are independent and the arithmetic is exact, so
/// the parallel result is deterministic.
pub fn full_correlation(a: &Sequence, b: &Sequence) -> Result<CorrelationVector, CorrelationError> {
    if a.modulus() != b.modulus() || a.period() != b.period() {
        return Err(CorrelationError::ShapeMismatch);
    }
    let v = a.period();
    let values: Vec<CycInt> = (0..v as i64)
        .into_par_iter()
        .map(|tau| correlate(a, b, tau).expect("shape checked"))
        .collect();
    Ok(CorrelationVector { m: a.modulus(), v, values })
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

/// Welch lower bound √(ℓ²(s−1)/(sℓ−1)) on C_max for a family of s
/// shift-inequivalent sequences of period ℓ.
pub fn welch_bound(s: u64, ell: u64) -> Result<f64, CorrelationError> {
    if s < 1 || ell < 1 || s * ell <= 1 {
        return Err(CorrelationError::DegenerateFamily { s, ell });
    }
    let ell = ell as f64;
    let s = s as f64;
    Ok((ell * ell * (s - 1.0) / (s * ell - 1.0)).sqrt())
}

/// Outcome of checking |C_{c1·s, c2·s}(τ)| ≤ √q + 3 over all τ.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub q: u64,
    #[serde(rename = "M")]
    pub m: u32,
    pub c1: u32,
    pub c2: u32,
    /// max_τ |C(τ)| from the exact values, evaluated in floating point.
    pub max_abs: f64,
    /// τ achieving the maximum.
    pub max_tau: usize,
    /// √q + 3.
    pub bound: f64,
    pub pass: bool,
}

/// Brute-force the whole cross-correlation of (c1·s, c2·s) and compare
/// against √q + 3.
pub fn sidelnikov_bound_check(
    field: &FieldTable,
    m: u32,
    c1: u32,
    c2: u32,
) -> Result<BoundReport, CorrelationError> {
    if c1 == c2 || c1 == 0 || c2 == 0 || c1 >= m || c2 >= m {
        return Err(CorrelationError::BadMultiplier { c1, c2, m });
    }
    let s = sidelnikov(field, m)?;
    let vec = full_correlation(&s.constant_multiple(c1), &s.constant_multiple(c2))?;
    // tau = 0 is a cross-correlation value here too, include it
    let mut max_abs = vec.values[0].abs();
    let mut max_tau = 0usize;
    for (tau, value) in vec.values.iter().enumerate().skip(1) {
        let a = value.abs();
        if a > max_abs {
            max_abs = a;
            max_tau = tau;
        }
    }
    let bound = (field.q() as f64).sqrt() + 3.0;
    Ok(BoundReport {
        q: field.q(),
        m,
        c1,
        c2,
        max_abs,
        max_tau,
        bound,
        pass: max_abs <= bound + 1e-9,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
