//! Cyclotomic classes and numbers of order k, plus the S-set cardinalities
//! that drive the counting form of the cross-correlation distribution.
//!
//! C_u = { α^{kℓ+u} : 0 ≤ ℓ < (q−1)/k } partitions F_q*, and the cyclotomic
//! number (u,v)_k counts the x ∈ C_u with 1+x ∈ C_v.  In the semiprimitive
//! case (p^t ≡ −1 mod k, 2t | m, s = m/(2t)) the whole k×k matrix collapses
//! to three values:
//!
//! ```text
//!   k²(0,0)_k = q+1−3k−(k−1)(k−2)(−1)^s p^{m/2}
//!   k²(0,b)_k = k²(b,0)_k = k²(k−b,k−b)_k = q+1−k+(−1)^s(k−2)p^{m/2}   (b ≠ 0)
//!   k²(a,b)_k = q+1−2(−1)^s p^{m/2}                                    (a,b,a−b ≠ 0)
//! ```
//!
//! The sets S_{u,v} = { y ∉ {0,1} : χ((y−1)/y) = ω^u, χ(1/(1−y)) = ω^v }
//! reduce to cyclotomic numbers through the substitution y = 1/(1−x),
//! x = −w, which gives
//!
//! ```text
//!   |S_{u,v}| = ((u−κ) mod k, (u+v−κ) mod k)_k,   κ = (q−1)/2 mod k.
//! ```
//!
//! (The frequently quoted index pair (u+v, v) survives only under extra
//! symmetry; the κ-shifted form above is verified cell-by-cell against
//! direct enumeration in the test suites.)

use crate::charsums::{semiprimitivity, CharsumError};
use crate::gf::{Element, FieldTable};
use serde::{Deserialize, Serialize};
use std::fmt;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclotomyError {
    /// k does not divide q−1, or a class index is out of range.
    BadClassIndex { k: u32, index: u32 },
    /// k does not divide q−1.
    OrderDoesNotDivide { k: u32, q: u64 },
    /// The pure formula needs p^t ≡ −1 (mod k).
    NotSemiprimitive { p: u64, k: u32 },
    /// 2t does not divide m.
    DegreeNotCompatible { t: u64, m: u32 },
    /// Division by k² left a remainder — a misapplied precondition.
    NonIntegralCount { u: u32, v: u32 },
    /// Parameter validation (p not an odd prime etc.).
    BadParameters(String),
}

impl CyclotomyError {
    pub fn code(&self) -> &'static str {
        match self {
            CyclotomyError::BadClassIndex { .. } => "BadClassIndex",
            CyclotomyError::OrderDoesNotDivide { .. } => "OrderDoesNotDivide",
            CyclotomyError::NotSemiprimitive { .. } => "NotSemiprimitive",
            CyclotomyError::DegreeNotCompatible { .. } => "DegreeNotCompatible",
            CyclotomyError::NonIntegralCount { .. } => "NonIntegralCount",
            CyclotomyError::BadParameters(_) => "BadParameters",
        }
    }
}

impl fmt::Display for CyclotomyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclotomyError::BadClassIndex { k, index } => {
                write!(f, "class index {index} out of range for k = {k}")
            }
            CyclotomyError::OrderDoesNotDivide { k, q } => {
                write!(f, "k = {k} does not divide q-1 = {}", q - 1)
            }
            CyclotomyError::NotSemiprimitive { p, k } => {
                write!(f, "no positive x with {p}^x = -1 (mod {k})")
            }
            CyclotomyError::DegreeNotCompatible { t, m } => {
                write!(f, "2t = {} does not divide m = {m}", 2 * t)
            }
            CyclotomyError::NonIntegralCount { u, v } => {
                write!(f, "k^2 does not divide the numerator at ({u},{v})")
            }
            CyclotomyError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}

impl std::error::Error for CyclotomyError {}

impl From<CharsumError> for CyclotomyError {
    fn from(e: CharsumError) -> Self {
        CyclotomyError::BadParameters(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

/// How a cyclotomic table was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableSource {
    #[serde(rename = "brute_force")]
    BruteForce,
    #[serde(rename = "pure_formula")]
    PureFormula,
}

/// The k×k matrix of cyclotomic numbers for one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicTable {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub k: u32,
    pub source: TableSource,
    /// Row-major (u, v) entries.
    numbers: Vec<u64>,
}

impl CyclotomicTable {
    /// (u,v)_k with indices reduced mod k.
    pub fn get(&self, u: u32, v: u32) -> u64 {
        let k = self.k;
        self.numbers[((u % k) * k + (v % k)) as usize]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.numbers.chunks(self.k as usize).map(<[u64]>::to_vec).collect()
    }

    pub fn total(&self) -> u64 {
        self.numbers.iter().sum()
    }
}

fn check_divides(field: &FieldTable, k: u32) -> Result<(), CyclotomyError> {
    if k == 0 || (field.q() - 1) % k as u64 != 0 {
        return Err(CyclotomyError::OrderDoesNotDivide { k, q: field.q() });
    }
    Ok(())
}

/// The class C_u = { α^{kℓ+u} : 0 ≤ ℓ < (q−1)/k }, cardinality (q−1)/k.
pub fn cyclotomic_class(field: &FieldTable, k: u32, u: u32) -> Result<Vec<Element>, CyclotomyError> {
    check_divides(field, k)?;
    if u >= k {
        return Err(CyclotomyError::BadClassIndex { k, index: u });
    }
    let per = (field.q() - 1) / k as u64;
    Ok((0..per).map(|l| field.exp(k as u64 * l + u as u64)).collect())
}

/// Exact count of x ∈ C_u with 1+x ∈ C_v, by exhaustive membership.
pub fn cyclotomic_number_brute(
    field: &FieldTable,
    k: u32,
    u: u32,
    v: u32,
) -> Result<u64, CyclotomyError> {
    check_divides(field, k)?;
    if u >= k || v >= k {
        return Err(CyclotomyError::BadClassIndex { k, index: u.max(v) });
    }
    Ok(cyclotomic_table_brute(field, k)?.get(u, v))
}

/// The whole k×k matrix in one O(q) pass over F_q*.
pub fn cyclotomic_table_brute(field: &FieldTable, k: u32) -> Result<CyclotomicTable, CyclotomyError> {
    check_divides(field, k)?;
    let k64 = k as u64;
    let mut numbers = vec![0u64; (k * k) as usize];
    for i in 0..field.q() - 1 {
        let y = field.add(field.exp(i), Element::ONE);
        if y.is_zero() {
            continue; // x = −1 has no class for 1+x
        }
        let u = i % k64;
        let v = field.log(y) % k64;
        numbers[(u * k64 + v) as usize] += 1;
    }
    Ok(CyclotomicTable {
        p: field.p(),
        m: field.m(),
        q: field.q(),
        k,
        source: TableSource::BruteForce,
        numbers,
    })
}

/// The semiprimitive-case closed form for the full matrix.  Every division
/// by k² is checked; a remainder means the preconditions were misapplied.
pub fn cyclotomic_numbers_pure(p: u64, m: u32, k: u32) -> Result<CyclotomicTable, CyclotomyError> {
    if k < 2 {
        return Err(CyclotomyError::BadParameters("k must be >= 2".into()));
    }
    let sp = semiprimitivity(p, k)?.ok_or(CyclotomyError::NotSemiprimitive { p, k })?;
    let s = sp
        .s_for_degree(m)
        .ok_or(CyclotomyError::DegreeNotCompatible { t: sp.t, m })?;
    let q = p.checked_pow(m).ok_or_else(|| CyclotomyError::BadParameters("q overflow".into()))?;
    let sign: i64 = if s % 2 == 0 { 1 } else { -1 };
    let root = p.pow(m / 2) as i64;
    let k64 = k as i64;
    let ksq = k64 * k64;
    let mut numbers = vec![0u64; (k * k) as usize];
    for u in 0..k as i64 {
        for v in 0..k as i64 {
            let numerator = if u == 0 && v == 0 {
                q as i64 + 1 - 3 * k64 - (k64 - 1) * (k64 - 2) * sign * root
            } else if u == 0 || v == 0 || u == v {
                q as i64 + 1 - k64 + sign * (k64 - 2) * root
            } else {
                q as i64 + 1 - 2 * sign * root
            };
            if numerator % ksq != 0 || numerator < 0 {
                return Err(CyclotomyError::NonIntegralCount { u: u as u32, v: v as u32 });
            }
            numbers[(u * k64 + v) as usize] = (numerator / ksq) as u64;
        }
    }
    Ok(CyclotomicTable { p, m, q, k, source: TableSource::PureFormula, numbers })
}

/// Pure table when the semiprimitive case applies, brute force otherwise.
pub fn cyclotomic_table_auto(field: &FieldTable, k: u32) -> Result<CyclotomicTable, CyclotomyError> {
    check_divides(field, k)?;
    if k >= 2 {
        if let Some(sp) = semiprimitivity(field.p(), k)? {
            if sp.s_for_degree(field.m()).is_some() {
                return cyclotomic_numbers_pure(field.p(), field.m(), k);
            }
        }
    }
    cyclotomic_table_brute(field, k)
}

// ---------------------------------------------------------------------------
// S-set cardinalities
// ---------------------------------------------------------------------------

/// |S_{u,v}| read off the cyclotomic table:
/// ((u−κ) mod k, (u+v−κ) mod k)_k with κ = (q−1)/2 mod k.
pub fn s_uv_cardinality(table: &CyclotomicTable, u: u32, v: u32) -> Result<u64, CyclotomyError> {
    let k = table.k;
    if u >= k || v >= k {
        return Err(CyclotomyError::BadClassIndex { k, index: u.max(v) });
    }
    let kappa = (((table.q - 1) / 2) % k as u64) as u32;
    let row = (u + k - kappa % k) % k;
    let col = (u + v + 2 * k - kappa % k) % k;
    Ok(table.get(row, col))
}

/// Direct enumeration of |S_{u,v}| for every (u, v): one pass over
/// y ∈ F_q \ {0, 1}, classifying χ((y−1)/y) and χ(1/(1−y)).
pub fn s_set_counts_brute(field: &FieldTable, k: u32) -> Result<Vec<Vec<u64>>, CyclotomyError> {
    check_divides(field, k)?;
    let k64 = k as u64;
    let mut counts = vec![vec![0u64; k as usize]; k as usize];
    for y in field.elements() {
        if y.is_zero() || y == Element::ONE {
            continue;
        }
        let g = field.mul(field.sub(y, Element::ONE), field.inv(y).unwrap());
        let h = field.inv(field.sub(Element::ONE, y)).unwrap();
        let u = field.log(g) % k64;
        let v = field.log(h) % k64;
        counts[u as usize][v as usize] += 1;
    }
    Ok(counts)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
