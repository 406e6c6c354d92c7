//! M-ary Sidelnikov sequences and constant-multiple families.
//!
//! Over GF(q) with pinned primitive element α and M | q−1, the Sidelnikov
//! sequence of period q−1 is
//!
//! ```text
//!   s_j = log_α(α^j + 1) mod M,   with s_j = 0 when α^j = −1.
//! ```
//!
//! Two constructions are kept permanently and cross-validated: the log
//! congruence above, and the partition construction via the sets
//! D_k = { α^{Mi+k} − 1 : 0 ≤ i < (q−1)/M }.  Their digit-wise agreement is
//! a strong check on the field tables.

use crate::gf::{Element, FieldTable};
use serde::{Deserialize, Serialize};
use std::fmt;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceError {
    /// M does not divide q−1 (or M < 2).
    ModulusDoesNotDivide { m: u32, q: u64 },
    /// Binary operation on sequences of different period or modulus.
    PeriodMismatch,
    /// A digit lies outside [0, M).
    InvalidDigit { digit: u32, m: u32 },
    /// A sequence needs at least one digit.
    Empty,
}

impl SequenceError {
    pub fn code(&self) -> &'static str {
        match self {
            SequenceError::ModulusDoesNotDivide { .. } => "ModulusDoesNotDivide",
            SequenceError::PeriodMismatch => "PeriodMismatch",
            SequenceError::InvalidDigit { .. } => "InvalidDigit",
            SequenceError::Empty => "EmptySequence",
        }
    }
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::ModulusDoesNotDivide { m, q } => {
                write!(f, "M = {m} must divide q-1 = {} and be >= 2", q - 1)
            }
            SequenceError::PeriodMismatch => write!(f, "sequences differ in period or modulus"),
            SequenceError::InvalidDigit { digit, m } => {
                write!(f, "digit {digit} outside [0, {m})")
            }
            SequenceError::Empty => write!(f, "empty digit vector"),
        }
    }
}

impl std::error::Error for SequenceError {}

// ---------------------------------------------------------------------------
// The sequence type
// ---------------------------------------------------------------------------

/// A periodic M-ary sequence stored as one period of digits in [0, M).
///
/// The stored length is the period `v` used by all correlation operations;
/// `least_period` reports the true least period (constant multiples may
/// collapse, e.g. the zero multiple has least period 1).
///
/// Wire format (JSON): `{"M": m, "v": v, "digits": [...]}` with v validated
/// against the digit count on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    m: u32,
    v: usize,
    digits: Vec<u32>,
}

impl Serialize for Sequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            #[serde(rename = "M")]
            m: u32,
            v: u64,
            digits: &'a [u32],
        }
        Wire { m: self.m, v: self.v as u64, digits: &self.digits }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Wire {
            #[serde(rename = "M")]
            m: u32,
            v: u64,
            digits: Vec<u32>,
        }
        let w = Wire::deserialize(d)?;
        if w.v != w.digits.len() as u64 {
            return Err(D::Error::custom(format!(
                "v = {} does not match {} digits",
                w.v,
                w.digits.len()
            )));
        }
        Sequence::new(w.m, w.digits).map_err(D::Error::custom)
    }
}

impl Sequence {
    pub fn new(m: u32, digits: Vec<u32>) -> Result<Sequence, SequenceError> {
        if digits.is_empty() {
            return Err(SequenceError::Empty);
        }
        if m == 0 {
            return Err(SequenceError::InvalidDigit { digit: 0, m });
        }
        if let Some(&bad) = digits.iter().find(|&&d| d >= m) {
            return Err(SequenceError::InvalidDigit { digit: bad, m });
        }
        Ok(Sequence { m, v: digits.len(), digits })
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    /// The stored period v.
    pub fn period(&self) -> usize {
        self.v
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Least d | v with digits[i] = digits[i mod d] for all i (divisor scan).
    pub fn least_period(&self) -> usize {
        let v = self.v;
        'outer: for d in 1..=v {
            if v % d != 0 {
                continue;
            }
            for i in d..v {
                if self.digits[i] != self.digits[i % d] {
                    continue 'outer;
                }
            }
            return d;
        }
        v
    }

    /// Digit-wise multiplication by c mod M.  The result keeps length v;
    /// its least period divides v (and collapses to 1 for c = 0).
    pub fn constant_multiple(&self, c: u32) -> Sequence {
        let c = c % self.m;
        let digits = self.digits.iter().map(|&d| (d * c) % self.m).collect();
        Sequence { m: self.m, v: self.v, digits }
    }

    /// Cyclic shift: digit i of the result is digit (i+ℓ) mod v of self.
    pub fn shift(&self, ell: i64) -> Sequence {
        let v = self.v as i64;
        let ell = ell.rem_euclid(v) as usize;
        let mut digits = Vec::with_capacity(self.v);
        digits.extend_from_slice(&self.digits[ell..]);
        digits.extend_from_slice(&self.digits[..ell]);
        Sequence { m: self.m, v: self.v, digits }
    }

    /// True iff every residue appears ⌊v/M⌋ or ⌈v/M⌉ times in one period.
    pub fn is_balanced(&self) -> bool {
        let mut counts = vec![0usize; self.m as usize];
        for &d in &self.digits {
            counts[d as usize] += 1;
        }
        let lo = self.v / self.m as usize;
        let hi = lo + usize::from(self.v % self.m as usize != 0);
        counts.iter().all(|&c| c == lo || c == hi)
    }
}

/// Least ℓ ∈ [0, v) with shift(a, ℓ) = b, if any.
pub fn shift_equivalent(a: &Sequence, b: &Sequence) -> Result<Option<usize>, SequenceError> {
    if a.m != b.m || a.v != b.v {
        return Err(SequenceError::PeriodMismatch);
    }
    for ell in 0..a.v {
        if (0..a.v).all(|i| a.digits[(i + ell) % a.v] == b.digits[i]) {
            return Ok(Some(ell));
        }
    }
    Ok(None)
}

fn check_params(field: &FieldTable, m: u32) -> Result<(), SequenceError> {
    if m < 2 || (field.q() - 1) % m as u64 != 0 {
        return Err(SequenceError::ModulusDoesNotDivide { m, q: field.q() });
    }
    Ok(())
}

/// The M-ary Sidelnikov sequence via the log congruence.
pub fn sidelnikov(field: &FieldTable, m: u32) -> Result<Sequence, SequenceError> {
    check_params(field, m)?;
    let q = field.q();
    let mut digits = Vec::with_capacity(q as usize - 1);
    for j in 0..q - 1 {
        let x = field.add(field.exp(j), Element::ONE);
        // log(0) = 0 by convention, which is exactly the α^j = −1 case
        digits.push((field.log(x) % m as u64) as u32);
    }
    Ok(Sequence { m, v: digits.len(), digits })
}

/// The same sequence via the D_k partition; must agree digit-wise with
/// [`sidelnikov`] (tested exhaustively at desk scale).
pub fn sidelnikov_via_classes(field: &FieldTable, m: u32) -> Result<Sequence, SequenceError> {
    check_params(field, m)?;
    let q = field.q();
    // class[x] = k iff x ∈ D_k; u32::MAX marks "not covered" (only x = −1)
    let mut class = vec![u32::MAX; q as usize];
    let per_class = (q - 1) / m as u64;
    for k in 0..m as u64 {
        for i in 0..per_class {
            let x = field.sub(field.exp(m as u64 * i + k), Element::ONE);
            class[x.packed() as usize] = k as u32;
        }
    }
    let minus_one = field.minus_one();
    let mut digits = Vec::with_capacity(q as usize - 1);
    for j in 0..q - 1 {
        let x = field.exp(j);
        digits.push(if x == minus_one { 0 } else { class[x.packed() as usize] });
    }
    debug_assert!(digits.iter().all(|&d| d < m));
    Ok(Sequence { m, v: digits.len(), digits })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
