//! Exact arithmetic in Z[ω_L], ω_L = exp(2πi/L).
//!
//! A value is stored at a fixed level L as the canonical residue of its
//! representing polynomial modulo the L-th cyclotomic polynomial Φ_L, i.e.
//! as φ(L) integer coordinates over the basis 1, ω, …, ω^{φ(L)−1}.  Since
//! Φ_L is the minimal polynomial of ω_L, two values of the same level are
//! equal exactly when their coordinate vectors are equal — this is what
//! makes tolerance-free assertions like |J|² = q possible.
//!
//! Mixed-root quantities (a Gauss sum involves both ω_k and ω_p) are handled
//! by lifting both operands to level lcm(k, p) first; `lift` rescales
//! exponents by L'/L and leaves the complex embedding unchanged.
//!
//! Values are immutable and all operations are pure functions.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycIntError {
    /// Binary operation on values of different levels; lift first.
    LevelMismatch { left: u32, right: u32 },
    /// Lift target is not a multiple of the current level.
    NotAMultiple { level: u32, target: u32 },
    /// Level 0 is meaningless.
    ZeroLevel,
}

impl CycIntError {
    pub fn code(&self) -> &'static str {
        match self {
            CycIntError::LevelMismatch { .. } => "LevelMismatch",
            CycIntError::NotAMultiple { .. } => "NotAMultiple",
            CycIntError::ZeroLevel => "ZeroLevel",
        }
    }
}

impl fmt::Display for CycIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycIntError::LevelMismatch { left, right } => {
                write!(f, "level mismatch: {left} vs {right} (lift to a common level first)")
            }
            CycIntError::NotAMultiple { level, target } => {
                write!(f, "cannot lift level {level} to {target}: not a multiple")
            }
            CycIntError::ZeroLevel => write!(f, "level must be >= 1"),
        }
    }
}

impl std::error::Error for CycIntError {}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials
// ---------------------------------------------------------------------------

pub fn euler_phi(mut n: u32) -> u32 {
    let mut phi = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            phi -= phi / d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Φ_L as ascending integer coefficients (monic, degree φ(L)), computed by
/// Φ_L = (x^L − 1) / ∏_{d|L, d<L} Φ_d with exact integer division.  Results
/// are memoized process-wide.
pub fn cyclotomic_polynomial(level: u32) -> Arc<Vec<i64>> {
    assert!(level >= 1, "level must be >= 1");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&level) {
        return hit.clone();
    }
    // compute Φ_d for every divisor in increasing order so the chain of
    // exact divisions never recurses
    let mut divisors: Vec<u32> = (1..=level).filter(|d| level % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        if cache.lock().unwrap().contains_key(&d) {
            continue;
        }
        let mut num = vec![0i64; d as usize + 1];
        num[0] = -1;
        num[d as usize] = 1;
        for e in 1..d {
            if d % e == 0 {
                let phi_e = cache.lock().unwrap().get(&e).unwrap().clone();
                num = poly_div_exact(&num, &phi_e);
            }
        }
        cache.lock().unwrap().insert(d, Arc::new(num));
    }
    cache.lock().unwrap().get(&level).unwrap().clone()
}

/// Exact division of integer polynomials, divisor monic.  Panics on a
/// nonzero remainder; callers only divide known multiples.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let dn = rem.len() - 1;
    let mut quot = vec![0i64; dn - dd + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        if c == 0 {
            continue;
        }
        quot[i] = c;
        for (j, &f) in den.iter().enumerate() {
            rem[i + j] -= c * f;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact cyclotomic division");
    quot
}

/// Reduce an arbitrary integer polynomial in ω_L to the canonical basis.
fn reduce_mod_cyclotomic(level: u32, mut raw: Vec<i64>) -> Vec<i64> {
    let phi = euler_phi(level) as usize;
    let modulus = cyclotomic_polynomial(level);
    let dd = modulus.len() - 1;
    if raw.len() > dd {
        for i in (dd..raw.len()).rev() {
            let c = raw[i];
            if c == 0 {
                continue;
            }
            raw[i] = 0;
            for (j, &f) in modulus.iter().enumerate().take(dd) {
                raw[i - dd + j] -= c * f;
            }
        }
    }
    raw.resize(phi, 0);
    raw
}

// ---------------------------------------------------------------------------
// The value type
// ---------------------------------------------------------------------------

/// An element of Z[ω_L] in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    level: u32,
    /// Coordinates over 1, ω, …, ω^{φ(L)−1}; length exactly φ(L).
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(level: u32) -> CycInt {
        CycInt { level, coeffs: vec![0; euler_phi(level) as usize] }
    }

    pub fn one(level: u32) -> CycInt {
        CycInt::from_int(level, 1)
    }

    pub fn from_int(level: u32, n: i64) -> CycInt {
        let mut v = CycInt::zero(level);
        v.coeffs[0] = n;
        v
    }

    /// ω_L^e in canonical form (e taken mod L, negatives allowed).
    pub fn root_of_unity(level: u32, e: i64) -> CycInt {
        assert!(level >= 1);
        let e = e.rem_euclid(level as i64) as usize;
        let mut raw = vec![0i64; level as usize];
        raw[e] = 1;
        CycInt { level, coeffs: reduce_mod_cyclotomic(level, raw) }
    }

    /// Σ counts[e]·ω_L^e, reduced once; the workhorse behind the brute-force
    /// character and correlation sums.
    pub fn from_root_counts(level: u32, counts: &[i64]) -> CycInt {
        assert!(level >= 1);
        let mut raw = vec![0i64; level as usize];
        for (e, &c) in counts.iter().enumerate() {
            raw[e % level as usize] += c;
        }
        CycInt { level, coeffs: reduce_mod_cyclotomic(level, raw) }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Some(n) iff the value is the rational integer n.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    fn check_level(&self, other: &CycInt) -> Result<(), CycIntError> {
        if self.level != other.level {
            return Err(CycIntError::LevelMismatch { left: self.level, right: other.level });
        }
        Ok(())
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt, CycIntError> {
        self.check_level(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { level: self.level, coeffs })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt, CycIntError> {
        self.check_level(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { level: self.level, coeffs })
    }

    pub fn neg(&self) -> CycInt {
        CycInt { level: self.level, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scalar_mul(&self, n: i64) -> CycInt {
        CycInt { level: self.level, coeffs: self.coeffs.iter().map(|c| c * n).collect() }
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt, CycIntError> {
        self.check_level(other)?;
        let n = self.coeffs.len();
        if n == 1 {
            return Ok(CycInt { level: self.level, coeffs: vec![self.coeffs[0] * other.coeffs[0]] });
        }
        let mut raw = vec![0i64; 2 * n - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Ok(CycInt { level: self.level, coeffs: reduce_mod_cyclotomic(self.level, raw) })
    }

    /// Complex conjugate (exponent negation ω ↦ ω^{−1}, a ring automorphism).
    pub fn conj(&self) -> CycInt {
        let l = self.level as usize;
        let mut raw = vec![0i64; l];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[(l - i) % l] += c;
        }
        CycInt { level: self.level, coeffs: reduce_mod_cyclotomic(self.level, raw) }
    }

    /// |z|² = z·z̄, exact.  Comparing this against an integer avoids any
    /// floating-point tolerance in magnitude assertions.
    pub fn abs_sq(&self) -> CycInt {
        self.mul(&self.conj()).expect("same level")
    }

    /// Re-express at a multiple level; the complex embedding is unchanged.
    pub fn lift(&self, target: u32) -> Result<CycInt, CycIntError> {
        if target == 0 {
            return Err(CycIntError::ZeroLevel);
        }
        if target % self.level != 0 {
            return Err(CycIntError::NotAMultiple { level: self.level, target });
        }
        if target == self.level {
            return Ok(self.clone());
        }
        let scale = (target / self.level) as usize;
        let mut raw = vec![0i64; target as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[i * scale] += c;
        }
        Ok(CycInt { level: target, coeffs: reduce_mod_cyclotomic(target, raw) })
    }

    /// Lift both operands to lcm of their levels.
    pub fn lift_to_common(a: &CycInt, b: &CycInt) -> (CycInt, CycInt) {
        let l = lcm_u32(a.level, b.level);
        (a.lift(l).unwrap(), b.lift(l).unwrap())
    }

    /// Floating evaluation at ω_L = exp(2πi/L); error is machine epsilon
    /// scaled by Σ|coeffs|.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let theta = TAU * i as f64 / self.level as f64;
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        (re, im)
    }

    pub fn abs(&self) -> f64 {
        let (re, im) = self.to_complex();
        re.hypot(im)
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    (a as u64 / gcd_u64(a as u64, b as u64) * b as u64) as u32
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "w{}", self.level)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// JSON wire format: {"level": L, "coeffs": [...], "re": float, "im": float};
// re/im are derived on output and ignored on input.
impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            level: u32,
            coeffs: &'a [i64],
            re: f64,
            im: f64,
        }
        let (re, im) = self.to_complex();
        Wire { level: self.level, coeffs: &self.coeffs, re, im }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            level: u32,
            coeffs: Vec<i64>,
        }
        let w = Wire::deserialize(d)?;
        if w.level == 0 {
            return Err(D::Error::custom("level must be >= 1"));
        }
        if w.coeffs.len() > w.level as usize {
            return Err(D::Error::custom("more coefficients than the level allows"));
        }
        let mut raw = vec![0i64; w.level as usize];
        raw[..w.coeffs.len()].copy_from_slice(&w.coeffs);
        Ok(CycInt { level: w.level, coeffs: reduce_mod_cyclotomic(w.level, raw) })
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
