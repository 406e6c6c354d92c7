//! Multiplicative characters, Gauss and Jacobi sums, and the pure closed forms.
//!
//! All characters are powers of the one character pinned by the field's
//! primitive element, χ_k(x) = ω_k^{log_α x}, in two zero conventions:
//! ψ maps 0 to 1 (what the Sidelnikov digit identity needs), χ maps 0 to 0
//! (what Gauss/Jacobi sums need).
//!
//! Brute-force sums are exact elements of Z[ω]: a Gauss sum lives at level
//! lcm(k, p) because it mixes ω_k with the additive character's ω_p; a
//! Jacobi sum lives at level k.
//!
//! A Gauss sum G(χ), χ of order k over GF(p^m), is pure (some power is real)
//! exactly when p^t ≡ −1 (mod k) has a solution; with t least and m = 2ts,
//!
//! ```text
//!   G(χ) = (−1)^{s−1+(p^t+1)s/k} · p^{m/2}
//! ```
//!
//! and the pure Jacobi sums follow through J(χ^a, χ^b) = G(χ^a)G(χ^b)/G(χ^{a+b}).
//!
//! One convention fork is exposed rather than resolved: with the χ(0) = 0
//! convention the literal sum for a trivial character is −1, while the
//! classical properties list assigns it q−1 (which presumes χ(0) = 1).
//! `gauss_sum` computes the literal sum; `trivial_gauss_conventional` returns
//! the classical constant.

use crate::cycint::{lcm_u32, CycInt};
use crate::gf::{self, Element, FieldTable};
use serde::{Deserialize, Serialize};
use std::fmt;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharsumError {
    /// A character power is ≡ 0 where a nontrivial character is required.
    TrivialCharacter,
    /// gcd(p, k) ≠ 1.
    NotCoprime { p: u64, k: u32 },
    /// No x with p^x ≡ −1 (mod k).
    NotSemiprimitive { p: u64, k: u32 },
    /// 2t does not divide the extension degree m.
    DegreeNotCompatible { t: u64, m: u32 },
    /// a + b ≡ 0 (mod k): use the conjugate identity, not the pure formula.
    ConjugatePair,
    /// A stated precondition fails (message says which).
    PreconditionUnmet(String),
    /// The character order divisor must divide q−1.
    OrderDoesNotDivide { k: u32, q: u64 },
    /// Malformed standalone parameters (p not an odd prime, k = 0, ...).
    BadParameters(String),
}

impl CharsumError {
    pub fn code(&self) -> &'static str {
        match self {
            CharsumError::TrivialCharacter => "TrivialCharacter",
            CharsumError::NotCoprime { .. } => "NotCoprime",
            CharsumError::NotSemiprimitive { .. } => "NotSemiprimitive",
            CharsumError::DegreeNotCompatible { .. } => "DegreeNotCompatible",
            CharsumError::ConjugatePair => "ConjugatePair",
            CharsumError::PreconditionUnmet(_) => "PreconditionUnmet",
            CharsumError::OrderDoesNotDivide { .. } => "OrderDoesNotDivide",
            CharsumError::BadParameters(_) => "BadParameters",
        }
    }
}

impl fmt::Display for CharsumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharsumError::TrivialCharacter => write!(f, "character is trivial"),
            CharsumError::NotCoprime { p, k } => write!(f, "gcd({p}, {k}) != 1"),
            CharsumError::NotSemiprimitive { p, k } => {
                write!(f, "no positive x with {p}^x = -1 (mod {k})")
            }
            CharsumError::DegreeNotCompatible { t, m } => {
                write!(f, "2t = {} does not divide m = {m}", 2 * t)
            }
            CharsumError::ConjugatePair => {
                write!(f, "a + b = 0 (mod k); the sum is -chi^a(-1), not a pure value")
            }
            CharsumError::PreconditionUnmet(msg) => write!(f, "precondition unmet: {msg}"),
            CharsumError::OrderDoesNotDivide { k, q } => {
                write!(f, "k = {k} does not divide q-1 = {}", q - 1)
            }
            CharsumError::BadParameters(msg) => write!(f, "bad parameters: {msg}"),
        }
    }
}

impl std::error::Error for CharsumError {}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

/// What a multiplicative character does at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZeroConvention {
    /// ψ-style: ψ(0) = 1 (via log(0) = 0).
    #[serde(rename = "zero_maps_to_one")]
    OneAtZero,
    /// χ-style: χ(0) = 0.
    #[serde(rename = "zero_maps_to_zero")]
    ZeroAtZero,
}

/// A power of the pinned character: x ↦ ω_k^{a·log_α(x)}.
#[derive(Debug, Clone, Copy)]
pub struct Character<'a> {
    field: &'a FieldTable,
    k: u32,
    power: u32,
    zero: ZeroConvention,
}

impl<'a> Character<'a> {
    /// ψ_k^a (maps 0 to 1).
    pub fn psi(field: &'a FieldTable, k: u32, power: i64) -> Result<Self, CharsumError> {
        Self::with_convention(field, k, power, ZeroConvention::OneAtZero)
    }

    /// χ_k^a (maps 0 to 0).
    pub fn chi(field: &'a FieldTable, k: u32, power: i64) -> Result<Self, CharsumError> {
        Self::with_convention(field, k, power, ZeroConvention::ZeroAtZero)
    }

    pub fn with_convention(
        field: &'a FieldTable,
        k: u32,
        power: i64,
        zero: ZeroConvention,
    ) -> Result<Self, CharsumError> {
        if k == 0 || (field.q() - 1) % k as u64 != 0 {
            return Err(CharsumError::OrderDoesNotDivide { k, q: field.q() });
        }
        let power = power.rem_euclid(k as i64) as u32;
        Ok(Character { field, k, power, zero })
    }

    pub fn is_trivial(&self) -> bool {
        self.power == 0
    }

    /// Exact order k / gcd(k, a).
    pub fn order(&self) -> u32 {
        (self.k as u64 / gf_gcd(self.k as u64, self.power as u64)) as u32
    }

    /// Value in Z[ω_k].
    pub fn eval(&self, x: Element) -> CycInt {
        if x.is_zero() {
            return match self.zero {
                ZeroConvention::OneAtZero => CycInt::one(self.k),
                ZeroConvention::ZeroAtZero => CycInt::zero(self.k),
            };
        }
        CycInt::root_of_unity(self.k, (self.power as u64 * self.field.log(x)) as i64)
    }
}

fn gf_gcd(a: u64, b: u64) -> u64 {
    crate::cycint::gcd_u64(a, b)
}

// ---------------------------------------------------------------------------
// Brute-force sums
// ---------------------------------------------------------------------------

/// Literal Gauss sum G(χ_k^a) = Σ_{x∈F_q} χ(x)·ω_p^{Tr(x)} with χ(0) = 0,
/// as an exact value at level lcm(k, p).  A trivial character gives −1
/// under this convention; see [`trivial_gauss_conventional`].
pub fn gauss_sum(field: &FieldTable, k: u32, a: i64) -> Result<CycInt, CharsumError> {
    if k == 0 || (field.q() - 1) % k as u64 != 0 {
        return Err(CharsumError::OrderDoesNotDivide { k, q: field.q() });
    }
    let a = a.rem_euclid(k as i64) as u64;
    let level = lcm_u32(k, field.p() as u32);
    let mul_scale = (level / k) as u64;
    let add_scale = (level / field.p() as u32) as u64;
    let mut counts = vec![0i64; level as usize];
    for i in 0..field.q() - 1 {
        let x = field.exp(i);
        let e = (a * i % k as u64) * mul_scale + field.trace(x) * add_scale;
        counts[(e % level as u64) as usize] += 1;
    }
    Ok(CycInt::from_root_counts(level, &counts))
}

/// The classical constant q−1 assigned to G(trivial χ) when the trivial
/// character is taken to map 0 to 1.  Returned at level 1.
pub fn trivial_gauss_conventional(field: &FieldTable) -> CycInt {
    CycInt::from_int(1, field.q() as i64 - 1)
}

/// Which path produced a Jacobi evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JacobiMethod {
    #[serde(rename = "brute_force")]
    BruteForce,
    #[serde(rename = "conjugate_identity")]
    ConjugateIdentity,
    #[serde(rename = "pure_formula")]
    PureFormula,
}

/// J(χ^a, χ^b) together with its provenance.
///
/// Whenever a, b, a+b are all nonzero mod k, |value|² = q exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiEvaluation {
    pub p: u64,
    pub m: u32,
    pub k: u32,
    pub a: u32,
    pub b: u32,
    pub method: JacobiMethod,
    pub value: CycInt,
}

/// J(χ^a, χ^b) = Σ_x χ^a(x)·χ^b(1−x) by direct summation (χ(0) = 0, so the
/// terms x = 0 and x = 1 vanish); exact at level k.
pub fn jacobi_sum_brute(
    field: &FieldTable,
    k: u32,
    a: i64,
    b: i64,
) -> Result<JacobiEvaluation, CharsumError> {
    if k == 0 || (field.q() - 1) % k as u64 != 0 {
        return Err(CharsumError::OrderDoesNotDivide { k, q: field.q() });
    }
    let an = a.rem_euclid(k as i64) as u64;
    let bn = b.rem_euclid(k as i64) as u64;
    if an == 0 || bn == 0 {
        return Err(CharsumError::TrivialCharacter);
    }
    let mut counts = vec![0i64; k as usize];
    for i in 0..field.q() - 1 {
        let x = field.exp(i);
        let y = field.sub(Element::ONE, x);
        if y.is_zero() {
            continue;
        }
        let e = (an * i + bn * field.log(y)) % k as u64;
        counts[e as usize] += 1;
    }
    Ok(JacobiEvaluation {
        p: field.p(),
        m: field.m(),
        k,
        a: an as u32,
        b: bn as u32,
        method: JacobiMethod::BruteForce,
        value: CycInt::from_root_counts(k, &counts),
    })
}

/// The conjugate-pair identity: for b ≡ −a (mod k), J(χ^a, χ^{−a}) = −χ^a(−1),
/// i.e. −ω_k^{a(q−1)/2}.  This is −1 precisely when k | a(q−1)/2 — in
/// particular throughout the semiprimitive case, where k | (q−1)/2.
pub fn jacobi_conjugate(field: &FieldTable, k: u32, a: i64) -> Result<JacobiEvaluation, CharsumError> {
    if k == 0 || (field.q() - 1) % k as u64 != 0 {
        return Err(CharsumError::OrderDoesNotDivide { k, q: field.q() });
    }
    let an = a.rem_euclid(k as i64) as u64;
    if an == 0 {
        return Err(CharsumError::TrivialCharacter);
    }
    let kappa = (field.q() - 1) / 2;
    let value = CycInt::root_of_unity(k, (an * (kappa % k as u64)) as i64).neg();
    Ok(JacobiEvaluation {
        p: field.p(),
        m: field.m(),
        k,
        a: an as u32,
        b: ((k as u64 - an) % k as u64) as u32,
        method: JacobiMethod::ConjugateIdentity,
        value,
    })
}

/// Evaluate J(χ^a, χ^b) by the cheapest valid path: conjugate identity when
/// a + b ≡ 0, the pure closed form when the semiprimitive case applies, and
/// direct summation otherwise.
pub fn jacobi_auto(
    field: &FieldTable,
    k: u32,
    a: i64,
    b: i64,
) -> Result<JacobiEvaluation, CharsumError> {
    if k == 0 || (field.q() - 1) % k as u64 != 0 {
        return Err(CharsumError::OrderDoesNotDivide { k, q: field.q() });
    }
    let an = a.rem_euclid(k as i64);
    let bn = b.rem_euclid(k as i64);
    if an == 0 || bn == 0 {
        return Err(CharsumError::TrivialCharacter);
    }
    if (an + bn) % k as i64 == 0 {
        return jacobi_conjugate(field, k, an);
    }
    if semiprimitivity(field.p(), k)?.is_some() {
        return pure_jacobi(field.p(), field.m(), k, an, bn);
    }
    jacobi_sum_brute(field, k, an, bn)
}

/// Check J(χ^a, χ^b)·G(χ^{a+b}) = G(χ^a)·G(χ^b) exactly.
pub fn gauss_jacobi_identity_check(
    field: &FieldTable,
    k: u32,
    a: i64,
    b: i64,
) -> Result<bool, CharsumError> {
    let an = a.rem_euclid(k.max(1) as i64);
    let bn = b.rem_euclid(k.max(1) as i64);
    if k == 0 || an == 0 || bn == 0 || (an + bn) % k as i64 == 0 {
        return Err(CharsumError::TrivialCharacter);
    }
    let j = jacobi_sum_brute(field, k, an, bn)?;
    let ga = gauss_sum(field, k, an)?;
    let gb = gauss_sum(field, k, bn)?;
    let gab = gauss_sum(field, k, an + bn)?;
    let level = ga.level();
    let lhs = j.value.lift(level).unwrap().mul(&gab).unwrap();
    let rhs = ga.mul(&gb).unwrap();
    Ok(lhs == rhs)
}

// ---------------------------------------------------------------------------
// Semiprimitivity and the pure closed forms
// ---------------------------------------------------------------------------

/// Witness that p^t ≡ −1 (mod k) with t least.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semiprimitivity {
    pub p: u64,
    pub k: u32,
    /// Least positive t with p^t ≡ −1 (mod k).
    pub t: u64,
}

impl Semiprimitivity {
    /// s = m/(2t) when 2t | m.
    pub fn s_for_degree(&self, m: u32) -> Option<u64> {
        (m as u64 % (2 * self.t) == 0).then(|| m as u64 / (2 * self.t))
    }
}

/// Least t ≥ 1 with p^t ≡ −1 (mod k), searched up to ord_k(p); None if the
/// negation of 1 is never hit.
pub fn semiprimitivity(p: u64, k: u32) -> Result<Option<Semiprimitivity>, CharsumError> {
    if k == 0 {
        return Err(CharsumError::BadParameters("k must be >= 1".into()));
    }
    if gf_gcd(p, k as u64) != 1 {
        return Err(CharsumError::NotCoprime { p, k });
    }
    let k64 = k as u64;
    let target = (k64 - 1) % k64; // -1 mod k (0 when k = 1)
    let mut y = p % k64;
    let mut t = 1u64;
    loop {
        if y == target {
            return Ok(Some(Semiprimitivity { p, k, t }));
        }
        if y == 1 % k64 {
            return Ok(None); // completed the multiplicative order
        }
        y = y * (p % k64) % k64;
        t += 1;
    }
}

/// Parity of (p^t + 1)/d · s, where d | p^t + 1; computed without forming p^t.
fn half_term_parity(p: u64, t: u64, d: u64, s: u64) -> u64 {
    let modulus = 2 * d;
    let x = gf::mod_pow(p % modulus, t, modulus);
    let num = (x + 1) % modulus;
    debug_assert_eq!(num % d, 0, "d must divide p^t + 1");
    (num / d) % 2 * (s % 2) % 2
}

/// The pure Gauss sum (−1)^{s−1+(p^t+1)s/k}·p^{m/2} for χ of order k over
/// GF(p^m), valid when p^t ≡ −1 (mod k) and 2t | m.  Level-1 integer.
pub fn pure_gauss(p: u64, m: u32, k: u32) -> Result<CycInt, CharsumError> {
    validate_odd_prime(p)?;
    if k < 2 {
        return Err(CharsumError::TrivialCharacter);
    }
    let sp = semiprimitivity(p, k)?.ok_or(CharsumError::NotSemiprimitive { p, k })?;
    let s = sp
        .s_for_degree(m)
        .ok_or(CharsumError::DegreeNotCompatible { t: sp.t, m })?;
    let parity = ((s - 1) + half_term_parity(p, sp.t, k as u64, s)) % 2;
    let magnitude = p.pow(m / 2) as i64;
    Ok(CycInt::from_int(1, if parity == 0 { magnitude } else { -magnitude }))
}

/// The pure Jacobi sum in closed form: with t_c the least solution of
/// p^t ≡ −1 (mod k/gcd(k,c)) and s_c = m/(2t_c),
///
/// ```text
///   J(χ^a, χ^b) = (−1)^{s_a+s_b+s_{a+b}+1+Σ_c (p^{t_c}+1)s_c·gcd(k,c)/k} · p^{m/2}
/// ```
///
/// for a, b, a+b all nonzero mod k.  Value at level k (an integer).
pub fn pure_jacobi(p: u64, m: u32, k: u32, a: i64, b: i64) -> Result<JacobiEvaluation, CharsumError> {
    validate_odd_prime(p)?;
    if k < 2 {
        return Err(CharsumError::TrivialCharacter);
    }
    let an = a.rem_euclid(k as i64) as u64;
    let bn = b.rem_euclid(k as i64) as u64;
    if an == 0 || bn == 0 {
        return Err(CharsumError::TrivialCharacter);
    }
    if (an + bn) % k as u64 == 0 {
        return Err(CharsumError::ConjugatePair);
    }
    let sp = semiprimitivity(p, k)?.ok_or(CharsumError::NotSemiprimitive { p, k })?;
    let mut parity = 1u64;
    for c in [an, bn, (an + bn) % k as u64] {
        let g = gf_gcd(k as u64, c);
        let kc = k as u64 / g;
        let spc = semiprimitivity(p, kc as u32)?
            .ok_or(CharsumError::NotSemiprimitive { p, k: kc as u32 })?;
        // divisibility chain from the purity argument
        debug_assert_eq!(sp.t % spc.t, 0, "t_c | t must hold");
        let sc = spc
            .s_for_degree(m)
            .ok_or(CharsumError::DegreeNotCompatible { t: spc.t, m })?;
        parity = (parity + sc + half_term_parity(p, spc.t, kc, sc)) % 2;
    }
    let magnitude = p.pow(m / 2) as i64;
    let value = CycInt::from_int(k, if parity == 0 { magnitude } else { -magnitude });
    Ok(JacobiEvaluation {
        p,
        m,
        k,
        a: an as u32,
        b: bn as u32,
        method: JacobiMethod::PureFormula,
        value,
    })
}

/// The m ≡ 0 (mod 4), t odd shortcut: every pure Jacobi sum over such a
/// field is −p^{m/2}.
pub fn pure_jacobi_simple(
    p: u64,
    m: u32,
    k: u32,
    a: i64,
    b: i64,
) -> Result<JacobiEvaluation, CharsumError> {
    validate_odd_prime(p)?;
    if k < 2 {
        return Err(CharsumError::TrivialCharacter);
    }
    let an = a.rem_euclid(k as i64) as u64;
    let bn = b.rem_euclid(k as i64) as u64;
    if an == 0 || bn == 0 {
        return Err(CharsumError::TrivialCharacter);
    }
    let sp = semiprimitivity(p, k)?.ok_or(CharsumError::NotSemiprimitive { p, k })?;
    if m % 4 != 0 {
        return Err(CharsumError::PreconditionUnmet(format!("m = {m} is not divisible by 4")));
    }
    if sp.t % 2 == 0 {
        return Err(CharsumError::PreconditionUnmet(format!("least t = {} is even", sp.t)));
    }
    if (an + bn) % k as u64 == 0 {
        return Err(CharsumError::PreconditionUnmet("a + b = 0 (mod k)".into()));
    }
    Ok(JacobiEvaluation {
        p,
        m,
        k,
        a: an as u32,
        b: bn as u32,
        method: JacobiMethod::PureFormula,
        value: CycInt::from_int(k, -(p.pow(m / 2) as i64)),
    })
}

fn validate_odd_prime(p: u64) -> Result<(), CharsumError> {
    if p == 2 {
        return Err(CharsumError::BadParameters("p must be odd".into()));
    }
    if !gf::is_prime(p) {
        return Err(CharsumError::BadParameters(format!("{p} is not prime")));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn zero_conventions() {
        let f = build_field(7, 1, None, None).unwrap();
        let psi = Character::psi(&f, 3, 1).unwrap();
        let chi = Character::chi(&f, 3, 1).unwrap();
        assert_eq!(psi.eval(Element::ZERO), CycInt::one(3));
        assert_eq!(chi.eval(Element::ZERO), CycInt::zero(3));
        assert_eq!(psi.eval(Element::ONE), CycInt::one(3));
        assert_eq!(chi.order(), 3);
        assert!(Character::chi(&f, 3, 0).unwrap().is_trivial());
        assert!(Character::chi(&f, 4, 1).is_err()); // 4 does not divide 6
    }

    #[test]
    fn gauss_sum_magnitude_and_trivial_values() {
        let f = build_field(7, 1, None, None).unwrap();
        let g = gauss_sum(&f, 2, 1).unwrap();
        // |G|^2 = q, exactly
        assert_eq!(g.abs_sq(), CycInt::from_int(g.level(), 7));
        // literal sum for the trivial character is -1; the classical
        // convention assigns q-1
        let triv = gauss_sum(&f, 2, 0).unwrap();
        assert_eq!(triv.as_integer(), Some(-1));
        assert_eq!(trivial_gauss_conventional(&f).as_integer(), Some(6));
    }

    #[test]
    fn gauss_gf81_quartic_is_minus_nine() {
        let f = build_field(3, 4, None, None).unwrap();
        let g = gauss_sum(&f, 4, 1).unwrap();
        assert_eq!(g, CycInt::from_int(1, -9).lift(g.level()).unwrap());
        assert_eq!(pure_gauss(3, 4, 4).unwrap().as_integer(), Some(-9));
    }

    #[test]
    fn pure_gauss_examples() {
        // (3, 4, 4): t=1, s=2 -> (-1)^{1+2}·9
        assert_eq!(pure_gauss(3, 4, 4).unwrap().as_integer(), Some(-9));
        // (3, 2, 4): t=1, s=1 -> (-1)^{0+1}·3
        assert_eq!(pure_gauss(3, 2, 4).unwrap().as_integer(), Some(-3));
        // (3, 4, 2): t=1, s=2 -> (-1)^{1+4}·9
        assert_eq!(pure_gauss(3, 4, 2).unwrap().as_integer(), Some(-9));
    }

    #[test]
    fn pure_gauss_matches_brute_force_small() {
        for (p, m) in [(3u64, 2u32), (3, 4), (5, 2), (7, 2), (11, 2), (3, 6)] {
            let f = build_field(p, m, None, None).unwrap();
            let q = f.q();
            for k in 2..=((q - 1) as u32) {
                if (q - 1) % k as u64 != 0 {
                    continue;
                }
                let Ok(Some(sp)) = semiprimitivity(p, k) else { continue };
                if sp.s_for_degree(m).is_none() {
                    continue;
                }
                let pure = pure_gauss(p, m, k).unwrap();
                let brute = gauss_sum(&f, k, 1).unwrap();
                assert_eq!(brute, pure.lift(brute.level()).unwrap(), "p={p} m={m} k={k}");
            }
        }
    }

    #[test]
    fn semiprimitivity_examples() {
        assert_eq!(semiprimitivity(3, 4).unwrap().map(|s| s.t), Some(1));
        assert_eq!(semiprimitivity(5, 4).unwrap(), None);
        assert_eq!(semiprimitivity(3, 5).unwrap().map(|s| s.t), Some(2));
        assert_eq!(
            semiprimitivity(3, 6).unwrap_err(),
            CharsumError::NotCoprime { p: 3, k: 6 }
        );
        // 7 has order 3 mod 9: the powers 7, 4, 1 never hit −1
        assert_eq!(semiprimitivity(7, 9).unwrap(), None);
        // k = 2: p ≡ 1 ≡ −1, so t = 1 always
        assert_eq!(semiprimitivity(11, 2).unwrap().map(|s| s.t), Some(1));
        assert_eq!(semiprimitivity(3, 4).unwrap().unwrap().s_for_degree(4), Some(2));
        assert_eq!(semiprimitivity(3, 4).unwrap().unwrap().s_for_degree(3), None);
    }

    #[test]
    fn jacobi_brute_examples() {
        // conjugate pair over GF(7), M=3: -chi(-1) = -1 here
        let f7 = build_field(7, 1, None, None).unwrap();
        let j = jacobi_sum_brute(&f7, 3, 1, 2).unwrap();
        assert_eq!(j.value.as_integer(), Some(-1));
        assert_eq!(j.value, jacobi_conjugate(&f7, 3, 1).unwrap().value);

        // |J|^2 = q for a + b != 0
        let j = jacobi_sum_brute(&f7, 3, 1, 1).unwrap();
        assert_eq!(j.value.abs_sq(), CycInt::from_int(3, 7));

        // GF(81), M=4: J(chi^1, chi^2) = -9
        let f81 = build_field(3, 4, None, None).unwrap();
        let j = jacobi_sum_brute(&f81, 4, 1, 2).unwrap();
        assert_eq!(j.value.as_integer(), Some(-9));
        // and J(chi, chi) = -9 as well (a + b = 2 is nonzero mod 4)
        let j11 = jacobi_sum_brute(&f81, 4, 1, 1).unwrap();
        assert_eq!(j11.value.as_integer(), Some(-9));

        assert_eq!(
            jacobi_sum_brute(&f7, 3, 3, 1).unwrap_err(),
            CharsumError::TrivialCharacter
        );
    }

    #[test]
    fn conjugate_pairs_are_minus_chi_of_minus_one() {
        // J(chi^a, chi^-a) = -chi^a(-1); -1 exactly when k | a(q-1)/2
        for (p, m, k) in [(5u64, 1u32, 4u32), (7, 1, 3), (13, 1, 4), (3, 2, 4), (17, 1, 8)] {
            let f = build_field(p, m, None, None).unwrap();
            let kappa = (f.q() - 1) / 2;
            for a in 1..k {
                let b = k - a;
                let brute = jacobi_sum_brute(&f, k, a as i64, b as i64).unwrap();
                let expect = CycInt::root_of_unity(k, (a as u64 * kappa) as i64).neg();
                assert_eq!(brute.value, expect, "q={} k={k} a={a}", f.q());
                assert_eq!(jacobi_conjugate(&f, k, a as i64).unwrap().value, expect);
            }
        }
        // concrete non-(-1) case: GF(5), k=4, a=1 gives +1
        let f5 = build_field(5, 1, None, None).unwrap();
        assert_eq!(jacobi_sum_brute(&f5, 4, 1, 3).unwrap().value.as_integer(), Some(1));
    }

    #[test]
    fn gauss_jacobi_identity() {
        let f7 = build_field(7, 1, None, None).unwrap();
        assert!(gauss_jacobi_identity_check(&f7, 3, 1, 1).unwrap());
        let f81 = build_field(3, 4, None, None).unwrap();
        assert!(gauss_jacobi_identity_check(&f81, 4, 1, 2).unwrap());
        let f13 = build_field(13, 1, None, None).unwrap();
        assert!(gauss_jacobi_identity_check(&f13, 4, 1, 1).unwrap());
        assert_eq!(
            gauss_jacobi_identity_check(&f7, 3, 1, 2).unwrap_err(),
            CharsumError::TrivialCharacter
        );
    }

    #[test]
    fn pure_jacobi_examples() {
        assert_eq!(pure_jacobi(3, 4, 4, 1, 2).unwrap().value.as_integer(), Some(-9));
        assert_eq!(pure_jacobi(3, 4, 4, 1, 1).unwrap().value.as_integer(), Some(-9));
        // GF(9), k=4: matches brute force
        let f9 = build_field(3, 2, None, None).unwrap();
        let brute = jacobi_sum_brute(&f9, 4, 1, 1).unwrap();
        let pure = pure_jacobi(3, 2, 4, 1, 1).unwrap();
        assert_eq!(brute.value, pure.value);
        assert_eq!(pure.method, JacobiMethod::PureFormula);
        assert_eq!(
            pure_jacobi(3, 4, 4, 1, 3).unwrap_err(),
            CharsumError::ConjugatePair
        );
        assert_eq!(
            pure_jacobi(5, 2, 4, 1, 1).unwrap_err(),
            CharsumError::NotSemiprimitive { p: 5, k: 4 }
        );
    }

    #[test]
    fn pure_jacobi_simple_examples() {
        assert_eq!(pure_jacobi_simple(3, 4, 4, 1, 2).unwrap().value.as_integer(), Some(-9));
        assert_eq!(pure_jacobi_simple(3, 4, 4, 1, 1).unwrap().value.as_integer(), Some(-9));
        // GF(3^8): brute force over 6561 terms agrees with -81
        let f = build_field(3, 8, None, None).unwrap();
        let brute = jacobi_sum_brute(&f, 4, 1, 1).unwrap();
        assert_eq!(brute.value.as_integer(), Some(-81));
        assert_eq!(pure_jacobi_simple(3, 8, 4, 1, 1).unwrap().value, brute.value);
        assert!(matches!(
            pure_jacobi_simple(3, 2, 4, 1, 1),
            Err(CharsumError::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn jacobi_auto_dispatch() {
        let f81 = build_field(3, 4, None, None).unwrap();
        assert_eq!(jacobi_auto(&f81, 4, 1, 3).unwrap().method, JacobiMethod::ConjugateIdentity);
        assert_eq!(jacobi_auto(&f81, 4, 1, 2).unwrap().method, JacobiMethod::PureFormula);
        let f5 = build_field(5, 1, None, None).unwrap();
        assert_eq!(jacobi_auto(&f5, 4, 1, 2).unwrap().method, JacobiMethod::BruteForce);
        // every path agrees with direct summation
        for (k, a, b) in [(4u32, 1i64, 2i64), (4, 2, 3), (4, 1, 3)] {
            let auto = jacobi_auto(&f81, k, a, b).unwrap();
            let brute = jacobi_sum_brute(&f81, k, a, b).unwrap();
            assert_eq!(auto.value, brute.value);
        }
    }

    #[test]
    fn jacobi_evaluation_json() {
        let j = pure_jacobi(3, 4, 4, 1, 2).unwrap();
        let json = serde_json::to_value(&j).unwrap();
        assert_eq!(json["method"], "pure_formula");
        assert_eq!(json["p"], 3);
        assert_eq!(json["value"]["coeffs"][0], -9);
    }
}
