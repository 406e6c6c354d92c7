//! Cross-correlation of constant multiples c₁·s, c₂·s of a Sidelnikov
//! sequence: the Jacobi-sum closed form and the full distribution, computed
//! three independent ways and compared exactly.
//!
//! Writing y = α^τ, A = χ^{c₁}(1−α^{−τ}), B = χ^{−c₂}(1−α^{τ}) and
//! J = J(χ^{c₁}, χ^{−c₂}), careful bookkeeping of the two summands where a
//! ψ-argument vanishes gives, for τ ∈ [1, q−2],
//!
//! ```text
//!   C(τ) = A·B·J + A + B − 1,          and   C(0) = 0
//! ```
//!
//! (the balance property forces the τ = 0 value).  A widely printed variant
//! of this identity reads A·B·(J+2) − 1 with C(0) = −1; it treats those two
//! boundary summands as if the characters were multiplicative at 0 and does
//! not survive direct summation — see [`closed_form_correlation_printed`],
//! which is kept for comparison.
//!
//! Since A·B = ω^{c₁u + c₂v} for the exponent pair (u, v) of τ, the whole
//! distribution follows from the S-set cardinalities |S_{u,v}| without
//! touching τ at all: that is the counting path.

use crate::charsums::{jacobi_auto, pure_jacobi, CharsumError, JacobiEvaluation};
use crate::correlation::{self, welch_bound, CorrelationError};
use crate::cycint::CycInt;
use crate::cyclotomy::{cyclotomic_table_auto, s_uv_cardinality, CyclotomyError};
use crate::gf::{Element, FieldSpec, FieldTable};
use crate::sequences::{shift_equivalent, sidelnikov, SequenceError};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistributionError {
    /// τ outside [0, q−2].
    BadTau { tau: i64, q: u64 },
    /// Multipliers must be distinct and nonzero mod M.
    BadMultiplier { c1: u32, c2: u32, m: u32 },
    /// M must divide q−1 and be ≥ 2.
    ModulusDoesNotDivide { m: u32, q: u64 },
    /// A supplied Jacobi evaluation lives at the wrong level.
    JacobiLevelMismatch { expected: u32, got: u32 },
    Charsum(CharsumError),
    Cyclotomy(CyclotomyError),
    Correlation(CorrelationError),
    Sequence(SequenceError),
}

impl DistributionError {
    pub fn code(&self) -> &'static str {
        match self {
            DistributionError::BadTau { .. } => "BadTau",
            DistributionError::BadMultiplier { .. } => "BadMultiplier",
            DistributionError::ModulusDoesNotDivide { .. } => "ModulusDoesNotDivide",
            DistributionError::JacobiLevelMismatch { .. } => "JacobiLevelMismatch",
            DistributionError::Charsum(e) => e.code(),
            DistributionError::Cyclotomy(e) => e.code(),
            DistributionError::Correlation(e) => e.code(),
            DistributionError::Sequence(e) => e.code(),
        }
    }
}

impl fmt::Display for DistributionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionError::BadTau { tau, q } => {
                write!(f, "tau = {tau} outside [0, {}]", q - 2)
            }
            DistributionError::BadMultiplier { c1, c2, m } => {
                write!(f, "multipliers ({c1}, {c2}) must be distinct and nonzero mod {m}")
            }
            DistributionError::ModulusDoesNotDivide { m, q } => {
                write!(f, "M = {m} must divide q-1 = {} and be >= 2", q - 1)
            }
            DistributionError::JacobiLevelMismatch { expected, got } => {
                write!(f, "Jacobi value at level {got}, expected {expected}")
            }
            DistributionError::Charsum(e) => e.fmt(f),
            DistributionError::Cyclotomy(e) => e.fmt(f),
            DistributionError::Correlation(e) => e.fmt(f),
            DistributionError::Sequence(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for DistributionError {}

impl From<CharsumError> for DistributionError {
    fn from(e: CharsumError) -> Self {
        DistributionError::Charsum(e)
    }
}
impl From<CyclotomyError> for DistributionError {
    fn from(e: CyclotomyError) -> Self {
        DistributionError::Cyclotomy(e)
    }
}
impl From<CorrelationError> for DistributionError {
    fn from(e: CorrelationError) -> Self {
        DistributionError::Correlation(e)
    }
}
impl From<SequenceError> for DistributionError {
    fn from(e: SequenceError) -> Self {
        DistributionError::Sequence(e)
    }
}

// ---------------------------------------------------------------------------
// Spec of one cross-correlation problem
// ---------------------------------------------------------------------------

/// Field, modulus M and a pair of distinct nonzero multipliers.
#[derive(Debug, Clone, Copy)]
pub struct CrossCorrSpec<'a> {
    field: &'a FieldTable,
    m: u32,
    c1: u32,
    c2: u32,
}

impl<'a> CrossCorrSpec<'a> {
    pub fn new(field: &'a FieldTable, m: u32, c1: u32, c2: u32) -> Result<Self, DistributionError> {
        if m < 2 || (field.q() - 1) % m as u64 != 0 {
            return Err(DistributionError::ModulusDoesNotDivide { m, q: field.q() });
        }
        if c1 == 0 || c2 == 0 || c1 >= m || c2 >= m || c1 == c2 {
            return Err(DistributionError::BadMultiplier { c1, c2, m });
        }
        Ok(CrossCorrSpec { field, m, c1, c2 })
    }

    pub fn field(&self) -> &'a FieldTable {
        self.field
    }
    pub fn modulus(&self) -> u32 {
        self.m
    }
    pub fn c1(&self) -> u32 {
        self.c1
    }
    pub fn c2(&self) -> u32 {
        self.c2
    }

    /// J(χ^{c₁}, χ^{−c₂}) by the cheapest valid path.  Note the exponent sum
    /// is c₁−c₂ ≢ 0, so this is never a conjugate pair: it is a genuine
    /// magnitude-√q sum, pure whenever p^t ≡ −1 (mod M) has a solution.
    pub fn jacobi(&self) -> Result<JacobiEvaluation, DistributionError> {
        Ok(jacobi_auto(self.field, self.m, self.c1 as i64, -(self.c2 as i64))?)
    }
}

/// The exponent pair (u, v) of a shift τ: u = log χ-class of (y−1)/y and
/// v of 1/(1−y) for y = α^τ, so that A·B = ω^{c₁u + c₂v}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExponentPair {
    pub u: u32,
    pub v: u32,
}

pub fn exponent_pair(f: &FieldTable, m: u32, tau: i64) -> Result<ExponentPair, DistributionError> {
    if m < 2 || (f.q() - 1) % m as u64 != 0 {
        return Err(DistributionError::ModulusDoesNotDivide { m, q: f.q() });
    }
    let q = f.q();
    if tau < 1 || tau > (q - 2) as i64 {
        return Err(DistributionError::BadTau { tau, q });
    }
    let y = f.exp(tau as u64);
    let g = f.mul(f.sub(y, Element::ONE), f.inv(y).expect("y nonzero"));
    let h = f.inv(f.sub(Element::ONE, y)).expect("y != 1");
    let m = m as u64;
    Ok(ExponentPair { u: (f.log(g) % m) as u32, v: (f.log(h) % m) as u32 })
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

fn check_jacobi_level(spec: &CrossCorrSpec, j: &JacobiEvaluation) -> Result<(), DistributionError> {
    if j.value.level() != spec.modulus() {
        return Err(DistributionError::JacobiLevelMismatch {
            expected: spec.modulus(),
            got: j.value.level(),
        });
    }
    Ok(())
}

/// Character factors A = χ^{c₁}(1−α^{−τ}) and B = χ^{−c₂}(1−α^{τ}) as exact
/// roots of unity at level M.
fn character_factors(spec: &CrossCorrSpec, tau: u64) -> (CycInt, CycInt) {
    let f = spec.field();
    let q = f.q();
    let m = spec.modulus();
    let a_arg = f.sub(Element::ONE, f.exp(q - 1 - tau % (q - 1)));
    let b_arg = f.sub(Element::ONE, f.exp(tau));
    let a = CycInt::root_of_unity(m, (spec.c1() as u64 * f.log(a_arg)) as i64);
    let b = CycInt::root_of_unity(m, -((spec.c2() as u64 * f.log(b_arg)) as i64));
    (a, b)
}

/// The exact Jacobi-sum closed form: C(0) = 0 and, for τ ∈ [1, q−2],
/// C(τ) = A·B·J + A + B − 1.  Agrees with [`correlation::correlate`] term for
/// term; this equality over every desk-scale instance is the master check of
/// the whole crate.
pub fn closed_form_correlation(
    spec: &CrossCorrSpec,
    tau: i64,
    j: &JacobiEvaluation,
) -> Result<CycInt, DistributionError> {
    check_jacobi_level(spec, j)?;
    let q = spec.field().q();
    if tau < 0 || tau > (q - 2) as i64 {
        return Err(DistributionError::BadTau { tau, q });
    }
    if tau == 0 {
        return Ok(CycInt::zero(spec.modulus()));
    }
    let (a, b) = character_factors(spec, tau as u64);
    let one = CycInt::one(spec.modulus());
    Ok(a.mul(&b)
        .unwrap()
        .mul(&j.value)
        .unwrap()
        .add(&a)
        .unwrap()
        .add(&b)
        .unwrap()
        .sub(&one)
        .unwrap())
}

/// The widely printed variant: C(0) = −1 and C(τ) = A·B·(J+2) − 1.  It
/// differs from direct summation whenever A ≠ 1 or B ≠ 1 (it multiplies the
/// two boundary summands, whose ψ-value is 1, by spurious units).  Kept so
/// the deviation can be measured; do not use it for results.
pub fn closed_form_correlation_printed(
    spec: &CrossCorrSpec,
    tau: i64,
    j: &JacobiEvaluation,
) -> Result<CycInt, DistributionError> {
    check_jacobi_level(spec, j)?;
    let q = spec.field().q();
    if tau < 0 || tau > (q - 2) as i64 {
        return Err(DistributionError::BadTau { tau, q });
    }
    let m = spec.modulus();
    if tau == 0 {
        return Ok(CycInt::from_int(m, -1));
    }
    let (a, b) = character_factors(spec, tau as u64);
    let j_plus_2 = j.value.add(&CycInt::from_int(m, 2)).unwrap();
    Ok(a.mul(&b).unwrap().mul(&j_plus_2).unwrap().sub(&CycInt::one(m)).unwrap())
}

/// Closed form with the Jacobi sum supplied by the pure formula; requires
/// the semiprimitive case.  Must equal [`closed_form_correlation`] fed any
/// other evaluation path, and the brute-force oracle.
pub fn pure_case_correlation(spec: &CrossCorrSpec, tau: i64) -> Result<CycInt, DistributionError> {
    let f = spec.field();
    let j = pure_jacobi(
        f.p(),
        f.m(),
        spec.modulus(),
        spec.c1() as i64,
        -(spec.c2() as i64),
    )?;
    closed_form_correlation(spec, tau, &j)
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

/// Which route produced a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    #[serde(rename = "brute")]
    Brute,
    #[serde(rename = "per_tau_closed_form")]
    PerTauClosedForm,
    #[serde(rename = "cyclotomic_count")]
    CyclotomicCount,
}

/// One distinct correlation value: the A·B-residue r it belongs to, the
/// exact value, and how many τ ∈ [1, q−2] attain it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistEntry {
    pub residue: u32,
    pub value: CycInt,
    pub count: u64,
}

/// The multiset of C(τ) over τ ∈ [1, q−2], with τ = 0 reported separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrelationDistribution {
    pub c1: u32,
    pub c2: u32,
    #[serde(rename = "M")]
    pub m: u32,
    pub q: u64,
    #[serde(rename = "tau0")]
    pub tau_zero: CycInt,
    pub entries: Vec<DistEntry>,
    pub provenance: Provenance,
    pub jacobi: Option<JacobiEvaluation>,
}

impl CorrelationDistribution {
    /// Total count over all entries; q−2 for a full distribution.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// value → count, forgetting residues; the right notion for comparing
    /// distributions of different multiplier pairs.
    pub fn value_multiset(&self) -> BTreeMap<Vec<i64>, u64> {
        let mut map = BTreeMap::new();
        for e in &self.entries {
            *map.entry(e.value.coeffs().to_vec()).or_insert(0) += e.count;
        }
        map
    }

    /// Entry-level equality against another distribution (any provenance).
    pub fn same_entries(&self, other: &CorrelationDistribution) -> bool {
        self.tau_zero == other.tau_zero && self.entries == other.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.value.abs())
            .fold(self.tau_zero.abs(), f64::max)
    }
}

fn assemble(
    spec: &CrossCorrSpec,
    tau_zero: CycInt,
    acc: BTreeMap<(u32, Vec<i64>), (CycInt, u64)>,
    provenance: Provenance,
    jacobi: Option<JacobiEvaluation>,
) -> CorrelationDistribution {
    let entries = acc
        .into_iter()
        .map(|((residue, _), (value, count))| DistEntry { residue, value, count })
        .collect();
    CorrelationDistribution {
        c1: spec.c1(),
        c2: spec.c2(),
        m: spec.modulus(),
        q: spec.field().q(),
        tau_zero,
        entries,
        provenance,
        jacobi,
    }
}

/// Distribution by direct summation of the correlation at every τ.
pub fn distribution_brute(spec: &CrossCorrSpec) -> Result<CorrelationDistribution, DistributionError> {
    let f = spec.field();
    let s = sidelnikov(f, spec.modulus())?;
    let a = s.constant_multiple(spec.c1());
    let b = s.constant_multiple(spec.c2());
    let vec = correlation::full_correlation(&a, &b)?;
    let mut acc: BTreeMap<(u32, Vec<i64>), (CycInt, u64)> = BTreeMap::new();
    for tau in 1..=(f.q() - 2) as i64 {
        let pair = exponent_pair(f, spec.modulus(), tau)?;
        let r = (spec.c1() * pair.u + spec.c2() * pair.v) % spec.modulus();
        let value = vec.values[tau as usize].clone();
        acc.entry((r, value.coeffs().to_vec()))
            .or_insert_with(|| (value, 0))
            .1 += 1;
    }
    Ok(assemble(spec, vec.values[0].clone(), acc, Provenance::Brute, None))
}

/// Distribution by evaluating the closed form at every τ, with the Jacobi
/// sum picked automatically (pure formula in the semiprimitive case, direct
/// summation otherwise).
pub fn distribution_per_tau(spec: &CrossCorrSpec) -> Result<CorrelationDistribution, DistributionError> {
    let f = spec.field();
    let j = spec.jacobi()?;
    let mut acc: BTreeMap<(u32, Vec<i64>), (CycInt, u64)> = BTreeMap::new();
    for tau in 1..=(f.q() - 2) as i64 {
        let pair = exponent_pair(f, spec.modulus(), tau)?;
        let r = (spec.c1() * pair.u + spec.c2() * pair.v) % spec.modulus();
        let value = closed_form_correlation(spec, tau, &j)?;
        acc.entry((r, value.coeffs().to_vec()))
            .or_insert_with(|| (value, 0))
            .1 += 1;
    }
    let tau_zero = closed_form_correlation(spec, 0, &j)?;
    Ok(assemble(spec, tau_zero, acc, Provenance::PerTauClosedForm, Some(j)))
}

/// Distribution with no τ loop at all: the value attached to the class
/// (u, v) is ω^{c₁u+c₂v}·J + ω^{c₁u} + ω^{c₂v} − 1 and its multiplicity is
/// |S_{u,v}|, read from the cyclotomic table.
pub fn distribution_by_counting(
    spec: &CrossCorrSpec,
) -> Result<CorrelationDistribution, DistributionError> {
    let f = spec.field();
    let m = spec.modulus();
    let j = spec.jacobi()?;
    let table = cyclotomic_table_auto(f, m)?;
    let one = CycInt::one(m);
    let mut acc: BTreeMap<(u32, Vec<i64>), (CycInt, u64)> = BTreeMap::new();
    let mut total = 0u64;
    for u in 0..m {
        for v in 0..m {
            let count = s_uv_cardinality(&table, u, v)?;
            if count == 0 {
                continue;
            }
            total += count;
            let a = CycInt::root_of_unity(m, (spec.c1() * u) as i64);
            let b = CycInt::root_of_unity(m, (spec.c2() * v) as i64);
            let r = (spec.c1() * u + spec.c2() * v) % m;
            let value = a
                .mul(&b)
                .unwrap()
                .mul(&j.value)
                .unwrap()
                .add(&a)
                .unwrap()
                .add(&b)
                .unwrap()
                .sub(&one)
                .unwrap();
            acc.entry((r, value.coeffs().to_vec()))
                .or_insert_with(|| (value, 0))
                .1 += count;
        }
    }
    debug_assert_eq!(total, f.q() - 2);
    Ok(assemble(spec, CycInt::zero(m), acc, Provenance::CyclotomicCount, Some(j)))
}

// ---------------------------------------------------------------------------
// Family report
// ---------------------------------------------------------------------------

/// One member c·s of the family.
#[derive(Debug, Clone, Serialize)]
pub struct MemberReport {
    pub c: u32,
    pub balanced: bool,
    pub least_period: usize,
    /// max_{τ≥1} |C_{cs,cs}(τ)|.
    pub max_autocorrelation: f64,
}

/// One ordered pair of distinct members.
#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub c1: u32,
    pub c2: u32,
    pub max_abs: f64,
    pub distribution: CorrelationDistribution,
}

/// Everything about the family {c·s : 1 ≤ c ≤ M−1}: balance and
/// shift-inequivalence flags, autocorrelation and cross-correlation maxima,
/// and the two bounds they must sit between.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub field: FieldSpec,
    #[serde(rename = "M")]
    pub m: u32,
    pub q: u64,
    pub family_size: u32,
    pub welch_lower: f64,
    pub upper: f64,
    pub c_max: f64,
    pub all_balanced: bool,
    pub shift_inequivalent: bool,
    pub members: Vec<MemberReport>,
    pub pairs: Vec<PairReport>,
    pub welch_le_c_max: bool,
    pub c_max_le_upper: bool,
}

/// Brute-force family survey; distributions come from direct summation so
/// the report stands on the oracle alone.
pub fn family_report(field: &FieldTable, m: u32) -> Result<FamilyReport, DistributionError> {
    if m < 2 || (field.q() - 1) % m as u64 != 0 {
        return Err(DistributionError::ModulusDoesNotDivide { m, q: field.q() });
    }
    let q = field.q();
    let s = sidelnikov(field, m)?;
    let multiples: Vec<_> = (1..m).map(|c| s.constant_multiple(c)).collect();

    let mut members = Vec::new();
    let mut c_max = 0.0f64;
    for (i, seq) in multiples.iter().enumerate() {
        let auto = correlation::full_correlation(seq, seq)?;
        let (max_auto, _) = auto.max_out_of_phase();
        c_max = c_max.max(max_auto);
        members.push(MemberReport {
            c: i as u32 + 1,
            balanced: seq.is_balanced(),
            least_period: seq.least_period(),
            max_autocorrelation: max_auto,
        });
    }

    let mut shift_inequivalent = true;
    for i in 0..multiples.len() {
        for k in i + 1..multiples.len() {
            if shift_equivalent(&multiples[i], &multiples[k])?.is_some() {
                shift_inequivalent = false;
            }
        }
    }

    let mut pairs = Vec::new();
    for c1 in 1..m {
        for c2 in 1..m {
            if c1 == c2 {
                continue;
            }
            let spec = CrossCorrSpec::new(field, m, c1, c2)?;
            let dist = distribution_brute(&spec)?;
            let max_abs = dist.max_abs();
            c_max = c_max.max(max_abs);
            pairs.push(PairReport { c1, c2, max_abs, distribution: dist });
        }
    }

    let family_size = m - 1;
    let welch_lower = if family_size >= 1 && (family_size as u64) * (q - 1) > 1 {
        welch_bound(family_size as u64, q - 1)?
    } else {
        0.0
    };
    let upper = (q as f64).sqrt() + 3.0;
    Ok(FamilyReport {
        field: field.spec().clone(),
        m,
        q,
        family_size,
        welch_lower,
        upper,
        c_max,
        all_balanced: members.iter().all(|r| r.balanced),
        shift_inequivalent,
        members,
        pairs,
        welch_le_c_max: welch_lower <= c_max + 1e-9,
        c_max_le_upper: c_max <= upper + 1e-9,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
