//! Finite fields GF(p^m) with fully materialized exp/log tables.
//!
//! Elements are residues of F_p[x] modulo a monic irreducible polynomial of
//! degree m, packed into a single integer in base p (coefficient of x^i is
//! the i-th base-p digit).  Construction is deterministic: when no modulus is
//! supplied, the lexicographically least monic irreducible polynomial is
//! chosen (coefficients compared low-degree-first), and the primitive element
//! is the least element in base-p integer order with multiplicative order
//! q−1.  Everything downstream (sequences, characters, cyclotomy) keys off
//! the resulting table, so pinning these choices makes every report
//! reproducible across runs and machines.
//!
//! The discrete log is extended by the convention log(0) = 0, which is what
//! the Sidelnikov construction expects at the unique index with α^j = −1.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard cap on q = p^m; beyond this the full tables stop being sensible.
const MAX_Q: u64 = 1 << 24;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// p is not a prime number.
    NotPrime(u64),
    /// p = 2; odd characteristic is required.
    EvenPrime,
    /// A supplied modulus is not irreducible over F_p.
    ReducibleModulus,
    /// A supplied element does not have multiplicative order q−1.
    NotPrimitive,
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// A supplied modulus is not monic of degree m with coefficients in [0, p).
    BadModulus(String),
    /// An explicit alpha requires an explicit modulus to be meaningful.
    AlphaRequiresModulus,
    /// A coefficient vector does not describe an element of this field.
    BadElement(String),
    /// q = p^m exceeds full-table feasibility.
    TooLarge(u64),
}

impl FieldError {
    /// Stable machine-readable code, used verbatim by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            FieldError::NotPrime(_) => "NotPrime",
            FieldError::EvenPrime => "EvenPrime",
            FieldError::ReducibleModulus => "ReducibleModulus",
            FieldError::NotPrimitive => "NotPrimitive",
            FieldError::DivisionByZero => "DivisionByZero",
            FieldError::BadModulus(_) => "BadModulus",
            FieldError::AlphaRequiresModulus => "AlphaRequiresModulus",
            FieldError::BadElement(_) => "BadElement",
            FieldError::TooLarge(_) => "TooLarge",
        }
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::EvenPrime => write!(f, "p = 2 is not allowed; the characteristic must be odd"),
            FieldError::ReducibleModulus => write!(f, "the supplied modulus is reducible over F_p"),
            FieldError::NotPrimitive => write!(f, "the supplied element does not generate the multiplicative group"),
            FieldError::DivisionByZero => write!(f, "multiplicative inverse of zero"),
            FieldError::BadModulus(msg) => write!(f, "bad modulus: {msg}"),
            FieldError::AlphaRequiresModulus => write!(f, "an explicit alpha requires an explicit modulus"),
            FieldError::BadElement(msg) => write!(f, "bad element: {msg}"),
            FieldError::TooLarge(q) => write!(f, "q = {q} exceeds full-table feasibility"),
        }
    }
}

impl std::error::Error for FieldError {}

// ---------------------------------------------------------------------------
// Field parameters and element representation
// ---------------------------------------------------------------------------

/// Everything needed to reconstruct a field bit-identically.
///
/// Wire format (JSON): `{"p": int, "m": int, "modulus": [int...], "alpha": [int...]}`
/// with polynomial coefficients listed in ascending degree order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
    /// Monic irreducible modulus, ascending coefficients, length m+1.
    pub modulus: Vec<u64>,
    /// The designated primitive element, ascending coefficients, length m.
    pub alpha: Vec<u64>,
}

/// A field element, packed in base p (digit i = coefficient of x^i).
///
/// Elements are plain indices; all arithmetic goes through the [`FieldTable`]
/// that produced them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub(crate) u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Raw packed value (the base-p coefficient integer).
    pub fn packed(self) -> u32 {
        self.0
    }
}

// ---------------------------------------------------------------------------
// The field table
// ---------------------------------------------------------------------------

/// GF(p^m) with exp/log tables over the pinned primitive element.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct FieldTable {
    spec: FieldSpec,
    q: u64,
    /// Powers of p, length m+1.
    ppow: Vec<u64>,
    /// exp[i] = α^i for 0 ≤ i ≤ q−2.
    exp: Vec<u32>,
    /// log[x] for packed x, with log[0] = 0 by convention.
    log: Vec<u32>,
}

/// Construct GF(p^m).
///
/// With `modulus`/`alpha` absent the deterministic selections described in
/// the module docs are used; either can be pinned explicitly to cross-check
/// against external tables (alpha only together with a modulus).
pub fn build_field(
    p: u64,
    m: u32,
    modulus: Option<&[u64]>,
    alpha: Option<&[u64]>,
) -> Result<FieldTable, FieldError> {
    if p == 2 {
        return Err(FieldError::EvenPrime);
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if m == 0 {
        return Err(FieldError::BadModulus("extension degree m must be >= 1".into()));
    }
    if alpha.is_some() && modulus.is_none() {
        return Err(FieldError::AlphaRequiresModulus);
    }
    let q = (0..m)
        .try_fold(1u64, |acc, _| acc.checked_mul(p))
        .filter(|&q| q <= MAX_Q)
        .ok_or_else(|| FieldError::TooLarge(p.saturating_pow(m)))?;

    let modulus = match modulus {
        Some(coeffs) => {
            if coeffs.len() != m as usize + 1 {
                return Err(FieldError::BadModulus(format!(
                    "expected degree {m} (length {}), got length {}",
                    m + 1,
                    coeffs.len()
                )));
            }
            if coeffs.iter().any(|&c| c >= p) {
                return Err(FieldError::BadModulus("coefficients must lie in [0, p)".into()));
            }
            if coeffs[m as usize] != 1 {
                return Err(FieldError::BadModulus("modulus must be monic".into()));
            }
            if !is_irreducible(coeffs, p) {
                return Err(FieldError::ReducibleModulus);
            }
            coeffs.to_vec()
        }
        None => least_irreducible(p, m),
    };

    let mut field = FieldTable {
        spec: FieldSpec { p, m, modulus, alpha: vec![] },
        q,
        ppow: {
            let mut v = Vec::with_capacity(m as usize + 1);
            let mut acc = 1u64;
            for _ in 0..=m {
                v.push(acc);
                acc = acc.saturating_mul(p);
            }
            v
        },
        exp: Vec::new(),
        log: Vec::new(),
    };

    let factors = distinct_prime_factors(q - 1);
    let alpha_packed = match alpha {
        Some(coeffs) => {
            let a = field.element_from_coeffs(coeffs)?;
            if !field.has_full_order(a, &factors) {
                return Err(FieldError::NotPrimitive);
            }
            a.0
        }
        None => {
            // least packed value of full order; 0 and 1 can never qualify for q >= 3
            let mut found = None;
            for cand in 2..q {
                if field.has_full_order(Element(cand as u32), &factors) {
                    found = Some(cand as u32);
                    break;
                }
            }
            found.ok_or(FieldError::NotPrimitive)?
        }
    };
    field.spec.alpha = field.unpack(Element(alpha_packed));

    // materialize the tables
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut log = vec![0u32; q as usize];
    let mut x = Element::ONE;
    for i in 0..(q - 1) {
        exp.push(x.0);
        log[x.0 as usize] = i as u32;
        x = field.raw_mul(x, Element(alpha_packed));
    }
    debug_assert_eq!(x, Element::ONE);
    field.exp = exp;
    field.log = log;
    Ok(field)
}

impl FieldTable {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// The pinned primitive element.
    pub fn alpha(&self) -> Element {
        Element(self.exp[1])
    }

    /// α^i, with i reduced mod q−1.
    pub fn exp(&self, i: u64) -> Element {
        Element(self.exp[(i % (self.q - 1)) as usize])
    }

    /// Discrete log in [0, q−2], with log(0) = 0.
    pub fn log(&self, x: Element) -> u64 {
        self.log[x.0 as usize] as u64
    }

    /// All q elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.q as u32).map(Element)
    }

    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<Element, FieldError> {
        if coeffs.len() != self.spec.m as usize {
            return Err(FieldError::BadElement(format!(
                "expected {} coefficients, got {}",
                self.spec.m,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(FieldError::BadElement("coefficients must lie in [0, p)".into()));
        }
        let mut packed = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            packed += c * self.ppow[i];
        }
        Ok(Element(packed as u32))
    }

    /// Ascending coefficient vector of length m.
    pub fn unpack(&self, x: Element) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.spec.m as usize);
        let mut e = x.0 as u64;
        for _ in 0..self.spec.m {
            v.push(e % self.spec.p);
            e /= self.spec.p;
        }
        v
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        let p = self.spec.p;
        let (mut ea, mut eb) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        for i in 0..self.spec.m as usize {
            let s = (ea % p + eb % p) % p;
            out += s * self.ppow[i];
            ea /= p;
            eb /= p;
        }
        Element(out as u32)
    }

    pub fn neg(&self, a: Element) -> Element {
        let p = self.spec.p;
        let mut ea = a.0 as u64;
        let mut out = 0u64;
        for i in 0..self.spec.m as usize {
            let d = ea % p;
            if d != 0 {
                out += (p - d) * self.ppow[i];
            }
            ea /= p;
        }
        Element(out as u32)
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// −1, i.e. α^{(q−1)/2}.
    pub fn minus_one(&self) -> Element {
        self.neg(Element::ONE)
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a.is_zero() || b.is_zero() {
            return Element::ZERO;
        }
        let i = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Element(self.exp[(i % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: Element) -> Result<Element, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let i = (self.q - 1 - self.log[a.0 as usize] as u64) % (self.q - 1);
        Ok(Element(self.exp[i as usize]))
    }

    /// a^e with e ∈ Z (negative exponents via the inverse); 0^0 = 1.
    pub fn pow(&self, a: Element, e: i64) -> Element {
        if a.is_zero() {
            return if e == 0 { Element::ONE } else { Element::ZERO };
        }
        let ord = (self.q - 1) as i64;
        let e = e.rem_euclid(ord) as u64;
        let i = (self.log[a.0 as usize] as u64 * e) % (self.q - 1);
        Element(self.exp[i as usize])
    }

    /// Field trace Tr(x) = x + x^p + … + x^{p^{m−1}}, returned in [0, p).
    pub fn trace(&self, x: Element) -> u64 {
        if x.is_zero() {
            return 0;
        }
        let mut acc = Element::ZERO;
        let mut frob = self.log[x.0 as usize] as u64;
        for _ in 0..self.spec.m {
            acc = self.add(acc, Element(self.exp[frob as usize]));
            frob = (frob * self.spec.p) % (self.q - 1);
        }
        debug_assert!(acc.0 as u64 % self.spec.p == acc.0 as u64);
        acc.0 as u64
    }

    fn has_full_order(&self, a: Element, factors: &[u64]) -> bool {
        if a.is_zero() {
            return false;
        }
        let n = self.q - 1;
        if !self.raw_pow(a, n).eq(&Element::ONE) {
            return false;
        }
        factors.iter().all(|&r| self.raw_pow(a, n / r) != Element::ONE)
    }

    /// Polynomial multiplication mod the modulus; used only before the tables
    /// exist (construction and order checks).
    fn raw_mul(&self, a: Element, b: Element) -> Element {
        let p = self.spec.p;
        let m = self.spec.m as usize;
        let pa = self.unpack(a);
        let pb = self.unpack(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in pa.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in pb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce by the monic modulus
        for d in (m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &f) in self.spec.modulus.iter().enumerate().take(m) {
                let idx = d - m + j;
                prod[idx] = (prod[idx] + c * (p - f) % p) % p;
            }
        }
        let mut packed = 0u64;
        for (i, &c) in prod.iter().enumerate().take(m) {
            packed += c * self.ppow[i];
        }
        Element(packed as u32)
    }

    fn raw_pow(&self, a: Element, mut e: u64) -> Element {
        let mut base = a;
        let mut acc = Element::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, base);
            }
            base = self.raw_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Polynomial search helpers (construction only)
// ---------------------------------------------------------------------------

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of a mod b over F_p (ascending coefficients, b monic-ish).
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.iter().rposition(|&c| c != 0).is_some_and(|dr| dr >= db) {
        let dr = r.iter().rposition(|&c| c != 0).unwrap();
        let c = r[dr] * lead_inv % p;
        let shift = dr - db;
        for (j, &f) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + c * (p - f) % p) % p;
        }
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    mod_pow(a, p - 2, p)
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc: u64 = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % n as u128) as u64;
        }
        b = (b as u128 * b as u128 % n as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Exhaustive trial division by all monic polynomials of degree ≤ deg/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let mut g = vec![0u64; d + 1];
        g[d] = 1;
        loop {
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
            // next candidate: increment the d low coefficients, c0 fastest
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                g[i] += 1;
                if g[i] < p {
                    break;
                }
                g[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree m (c0 compared first).
fn least_irreducible(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    let mut coeffs = vec![0u64; m]; // low m coefficients; leading 1 implied
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // advance in lexicographic order with c0 most significant
        let mut i = m;
        loop {
            if i == 0 {
                unreachable!("no irreducible polynomial of degree {m} over F_{p}");
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
