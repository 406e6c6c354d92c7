//! Desk-scale verification sweeps: every closed form in the crate checked
//! against its brute-force counterpart, exactly, over all odd prime powers
//! up to a cap.
//!
//! Each sweep returns one report per instance so callers (the CLI `verify`
//! command and the acceptance suite) can print a line per instance and fail
//! on any mismatch.  All comparisons are exact cyclotomic-integer equalities;
//! floats appear only in the bound columns.

use crate::charsums::{
    gauss_sum, jacobi_sum_brute, pure_gauss, pure_jacobi, pure_jacobi_simple, semiprimitivity,
};
use crate::correlation::{correlate, welch_bound};
use crate::cycint::CycInt;
use crate::cyclotomy::{cyclotomic_numbers_pure, cyclotomic_table_brute, s_set_counts_brute,
    s_uv_cardinality};
use crate::distribution::{
    closed_form_correlation, distribution_by_counting, distribution_per_tau, exponent_pair,
    CrossCorrSpec, DistEntry,
};
use crate::gf::{build_field, is_prime, FieldTable};
use crate::sequences::{shift_equivalent, sidelnikov, sidelnikov_via_classes};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// All (p, m) with p an odd prime and 3 ≤ p^m ≤ max_q, ordered by q.
pub fn odd_prime_powers(max_q: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (3..=max_q).step_by(2) {
        if !is_prime(p) {
            continue;
        }
        let mut q = p;
        let mut m = 1u32;
        while q <= max_q {
            out.push((p, m));
            m += 1;
            q = match q.checked_mul(p) {
                Some(q) => q,
                None => break,
            };
        }
    }
    out.sort_by_key(|&(p, m)| p.pow(m));
    out
}

/// Divisors of q−1 in [2, max_m].
fn moduli(q: u64, max_m: u32) -> Vec<u32> {
    (2..=max_m).filter(|&m| (q - 1) % m as u64 == 0).collect()
}

// ---------------------------------------------------------------------------
// Master equivalence sweep
// ---------------------------------------------------------------------------

/// Per-(q, M) outcome of the master sweep.
#[derive(Debug, Clone, Serialize)]
pub struct MasterInstance {
    pub p: u64,
    pub m_deg: u32,
    pub q: u64,
    #[serde(rename = "M")]
    pub mm: u32,
    pub ok: bool,
    pub failures: Vec<String>,
    /// max of cross-correlation and out-of-phase autocorrelation magnitudes.
    pub c_max: f64,
    pub welch: f64,
    pub upper: f64,
    pub max_autocorrelation: f64,
    pub pairs_checked: u32,
    pub taus_checked: u64,
}

/// The heart of the suite.  For every (q, M, c1, c2) and every τ the
/// Jacobi-sum closed form must equal direct summation of the correlation,
/// exactly; the three distribution routes must coincide entry-wise; and the
/// structural facts (construction agreement, balance, shift-inequivalence,
/// |autocorrelation| ≤ 4, Welch ≤ C_max ≤ √q+3, |J|² = q) must hold.
pub fn master_equivalence(max_q: u64, max_m: u32) -> Vec<MasterInstance> {
    let fields = odd_prime_powers(max_q);
    let mut out: Vec<MasterInstance> = fields
        .par_iter()
        .flat_map(|&(p, m_deg)| {
            let field = build_field(p, m_deg, None, None).expect("valid parameters");
            moduli(field.q(), max_m)
                .into_iter()
                .map(|mm| master_instance(&field, mm))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by_key(|r| (r.q, r.mm));
    out
}

fn master_instance(field: &FieldTable, mm: u32) -> MasterInstance {
    let q = field.q();
    let mut failures = Vec::new();
    let s = sidelnikov(field, mm).expect("M divides q-1");

    if s != sidelnikov_via_classes(field, mm).expect("M divides q-1") {
        failures.push("construction mismatch (log congruence vs class partition)".into());
    }
    if !s.is_balanced() {
        failures.push("not balanced".into());
    }
    if s.least_period() != (q - 1) as usize {
        failures.push(format!("least period {} != q-1", s.least_period()));
    }
    // digit/character identity: ω^{s_j} = ψ(α^j + 1)
    for j in 0..q - 1 {
        let x = field.add(field.exp(j), crate::gf::Element::ONE);
        let psi = CycInt::root_of_unity(mm, field.log(x) as i64);
        if CycInt::root_of_unity(mm, s.digits()[j as usize] as i64) != psi {
            failures.push(format!("character identity fails at j={j}"));
            break;
        }
    }

    let multiples: Vec<_> = (1..mm).map(|c| s.constant_multiple(c)).collect();

    let mut max_auto = 0.0f64;
    for seq in &multiples {
        for tau in 1..(q - 1) as i64 {
            let a = correlate(seq, seq, tau).expect("same shape").abs();
            if a > max_auto {
                max_auto = a;
            }
        }
    }
    if max_auto > 4.0 + 1e-9 {
        failures.push(format!("out-of-phase autocorrelation {max_auto} > 4"));
    }

    for i in 0..multiples.len() {
        for k in i + 1..multiples.len() {
            if shift_equivalent(&multiples[i], &multiples[k]).expect("same shape").is_some() {
                failures.push(format!("multiples {} and {} shift-equivalent", i + 1, k + 1));
            }
        }
    }

    let mut c_max = max_auto;
    let mut pairs_checked = 0u32;
    let mut taus_checked = 0u64;
    for c1 in 1..mm {
        for c2 in 1..mm {
            if c1 == c2 {
                continue;
            }
            pairs_checked += 1;
            let spec = CrossCorrSpec::new(field, mm, c1, c2).expect("validated");
            let j = spec.jacobi().expect("valid pair");
            if j.value.abs_sq() != CycInt::from_int(mm, q as i64) {
                failures.push(format!("|J|^2 != q for ({c1},{c2})"));
            }
            let a_seq = &multiples[c1 as usize - 1];
            let b_seq = &multiples[c2 as usize - 1];
            let mut acc: BTreeMap<(u32, Vec<i64>), (CycInt, u64)> = BTreeMap::new();
            let mut pointwise_ok = true;
            for tau in 0..=(q - 2) as i64 {
                let brute = correlate(a_seq, b_seq, tau).expect("same shape");
                let closed = closed_form_correlation(&spec, tau, &j).expect("valid tau");
                taus_checked += 1;
                if brute != closed {
                    if pointwise_ok {
                        failures.push(format!("closed form != brute at ({c1},{c2}) tau={tau}"));
                    }
                    pointwise_ok = false;
                }
                let a = brute.abs();
                if a > c_max {
                    c_max = a;
                }
                if tau == 0 {
                    if !brute.is_zero() {
                        failures.push(format!("C(0) != 0 at ({c1},{c2})"));
                    }
                    continue;
                }
                let pair = exponent_pair(field, mm, tau).expect("valid tau");
                let r = (c1 * pair.u + c2 * pair.v) % mm;
                acc.entry((r, brute.coeffs().to_vec())).or_insert_with(|| (brute, 0)).1 += 1;
            }
            let brute_entries: Vec<DistEntry> = acc
                .into_iter()
                .map(|((residue, _), (value, count))| DistEntry { residue, value, count })
                .collect();
            match distribution_per_tau(&spec) {
                Ok(d) if d.entries == brute_entries && d.tau_zero.is_zero() => {}
                Ok(_) => failures.push(format!("per-tau distribution mismatch ({c1},{c2})")),
                Err(e) => failures.push(format!("per-tau distribution error ({c1},{c2}): {e}")),
            }
            match distribution_by_counting(&spec) {
                Ok(d) if d.entries == brute_entries && d.tau_zero.is_zero() => {}
                Ok(_) => failures.push(format!("counting distribution mismatch ({c1},{c2})")),
                Err(e) => failures.push(format!("counting distribution error ({c1},{c2}): {e}")),
            }
        }
    }

    let family_size = (mm - 1) as u64;
    let welch = if family_size * (q - 1) > 1 {
        welch_bound(family_size, q - 1).expect("non-degenerate")
    } else {
        0.0
    };
    let upper = (q as f64).sqrt() + 3.0;
    if pairs_checked > 0 {
        if welch > c_max + 1e-9 {
            failures.push(format!("Welch bound {welch} exceeds observed C_max {c_max}"));
        }
        if c_max > upper + 1e-9 {
            failures.push(format!("C_max {c_max} exceeds sqrt(q)+3 = {upper}"));
        }
    }

    MasterInstance {
        p: field.p(),
        m_deg: field.m(),
        q,
        mm,
        ok: failures.is_empty(),
        failures,
        c_max,
        welch,
        upper,
        max_autocorrelation: max_auto,
        pairs_checked,
        taus_checked,
    }
}

// ---------------------------------------------------------------------------
// Targeted sweeps
// ---------------------------------------------------------------------------

/// Generic per-instance outcome for the targeted sweeps.
#[derive(Debug, Clone, Serialize)]
pub struct SweepOutcome {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

impl SweepOutcome {
    fn pass(label: String, detail: String) -> Self {
        SweepOutcome { label, ok: true, detail }
    }
    fn fail(label: String, detail: String) -> Self {
        SweepOutcome { label, ok: false, detail }
    }
}

/// Semiprimitive (p, m, k) triples with q ≤ max_q, k | q−1, and 2t | m.
fn semiprimitive_triples(max_q: u64) -> Vec<(u64, u32, u32)> {
    let mut out = Vec::new();
    for (p, m) in odd_prime_powers(max_q) {
        let q = p.pow(m);
        for k in 2..=(q - 1) as u32 {
            if (q - 1) % k as u64 != 0 {
                continue;
            }
            let Ok(Some(sp)) = semiprimitivity(p, k) else { continue };
            if sp.s_for_degree(m).is_some() {
                out.push((p, m, k));
            }
        }
    }
    out
}

/// Pure Gauss sums (sign formula) vs the literal brute sum, every
/// semiprimitive instance.
pub fn sweep_pure_gauss(max_q: u64) -> Vec<SweepOutcome> {
    let mut groups: BTreeMap<(u64, u32), Vec<u32>> = BTreeMap::new();
    for (p, m, k) in semiprimitive_triples(max_q) {
        groups.entry((p, m)).or_default().push(k);
    }
    let mut out: Vec<SweepOutcome> = groups
        .into_iter()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map(|((p, m), ks)| {
            let field = build_field(*p, *m, None, None).expect("valid");
            ks.iter()
                .map(|&k| {
                    let label = format!("pure-gauss q={} k={k}", field.q());
                    let pure = pure_gauss(*p, *m, k).expect("semiprimitive");
                    let brute = gauss_sum(&field, k, 1).expect("k divides q-1");
                    if brute == pure.lift(brute.level()).expect("divides") {
                        SweepOutcome::pass(label, format!("G = {pure}"))
                    } else {
                        SweepOutcome::fail(label, format!("formula {pure} vs brute {brute}"))
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

/// Pure Jacobi sums vs brute force for every valid (a, b); the shortcut form
/// where m ≡ 0 (mod 4) and t is odd; and conjugate pairs = −1 throughout the
/// semiprimitive sweep.
pub fn sweep_pure_jacobi(max_q: u64) -> Vec<SweepOutcome> {
    let triples = semiprimitive_triples(max_q);
    let mut out: Vec<SweepOutcome> = triples
        .par_iter()
        .map(|&(p, m, k)| {
            let field = build_field(p, m, None, None).expect("valid");
            let q = field.q();
            let label = format!("pure-jacobi q={q} k={k}");
            let t = semiprimitivity(p, k).unwrap().unwrap().t;
            let simple_applies = m % 4 == 0 && t % 2 == 1;
            let mut checked = 0u32;
            for a in 1..k {
                for b in 1..k {
                    let brute = jacobi_sum_brute(&field, k, a as i64, b as i64)
                        .expect("nontrivial")
                        .value;
                    if (a + b) % k == 0 {
                        // conjugate pair: k | (q−1)/2 in the semiprimitive
                        // case, so the value is exactly −1
                        if brute.as_integer() != Some(-1) {
                            return SweepOutcome::fail(
                                label,
                                format!("conjugate J({a},{b}) = {brute} != -1"),
                            );
                        }
                        continue;
                    }
                    let pure = pure_jacobi(p, m, k, a as i64, b as i64).expect("valid").value;
                    if pure != brute {
                        return SweepOutcome::fail(
                            label,
                            format!("J({a},{b}): formula {pure} vs brute {brute}"),
                        );
                    }
                    if simple_applies {
                        let simple =
                            pure_jacobi_simple(p, m, k, a as i64, b as i64).expect("valid").value;
                        if simple != brute {
                            return SweepOutcome::fail(
                                label,
                                format!("J({a},{b}): shortcut {simple} vs brute {brute}"),
                            );
                        }
                    }
                    checked += 1;
                }
            }
            SweepOutcome::pass(label, format!("{checked} pairs"))
        })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

/// Closed-form cyclotomic tables vs brute-force counts, entry-wise.
pub fn sweep_cyclotomic(max_q: u64) -> Vec<SweepOutcome> {
    let triples = semiprimitive_triples(max_q);
    let mut out: Vec<SweepOutcome> = triples
        .par_iter()
        .map(|&(p, m, k)| {
            let field = build_field(p, m, None, None).expect("valid");
            let label = format!("cyclotomic q={} k={k}", field.q());
            let pure = match cyclotomic_numbers_pure(p, m, k) {
                Ok(t) => t,
                Err(e) => return SweepOutcome::fail(label, format!("formula failed: {e}")),
            };
            let brute = cyclotomic_table_brute(&field, k).expect("k divides q-1");
            if pure.rows() == brute.rows() {
                SweepOutcome::pass(label, format!("{}x{k} entries", k))
            } else {
                SweepOutcome::fail(label, "entry mismatch".into())
            }
        })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

/// |S_{u,v}| read from the cyclotomic table vs direct enumeration of the
/// S-sets, all (u, v), all M | q−1 with 2 ≤ M ≤ max_m, all q ≤ max_q.
pub fn sweep_s_sets(max_q: u64, max_m: u32) -> Vec<SweepOutcome> {
    let fields = odd_prime_powers(max_q);
    let mut out: Vec<SweepOutcome> = fields
        .par_iter()
        .flat_map(|&(p, m_deg)| {
            let field = build_field(p, m_deg, None, None).expect("valid");
            let q = field.q();
            moduli(q, max_m)
                .into_iter()
                .map(|k| {
                    let label = format!("s-sets q={q} M={k}");
                    let table = cyclotomic_table_brute(&field, k).expect("divides");
                    let brute = s_set_counts_brute(&field, k).expect("divides");
                    let mut total = 0u64;
                    for u in 0..k {
                        for v in 0..k {
                            let lookup = s_uv_cardinality(&table, u, v).expect("in range");
                            if lookup != brute[u as usize][v as usize] {
                                return SweepOutcome::fail(
                                    label,
                                    format!(
                                        "(u,v)=({u},{v}): table {lookup} vs enumeration {}",
                                        brute[u as usize][v as usize]
                                    ),
                                );
                            }
                            total += lookup;
                        }
                    }
                    if total != q - 2 {
                        return SweepOutcome::fail(label, format!("sum {total} != q-2"));
                    }
                    SweepOutcome::pass(label, format!("{} cells", k * k))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_enumeration() {
        let pp = odd_prime_powers(130);
        assert!(pp.contains(&(3, 4))); // 81
        assert!(pp.contains(&(5, 3))); // 125
        assert!(pp.contains(&(11, 2))); // 121
        assert!(!pp.contains(&(2, 7)));
        assert!(pp.iter().all(|&(p, m)| p.pow(m) <= 130 && p % 2 == 1));
        // sorted by q
        let qs: Vec<u64> = pp.iter().map(|&(p, m)| p.pow(m)).collect();
        let mut sorted = qs.clone();
        sorted.sort_unstable();
        assert_eq!(qs, sorted);
    }

    #[test]
    fn small_master_sweep_is_clean() {
        for r in master_equivalence(60, 12) {
            assert!(r.ok, "q={} M={}: {:?}", r.q, r.mm, r.failures);
        }
    }

    #[test]
    fn small_targeted_sweeps_are_clean() {
        for r in sweep_pure_gauss(120) {
            assert!(r.ok, "{}: {}", r.label, r.detail);
        }
        for r in sweep_pure_jacobi(120) {
            assert!(r.ok, "{}: {}", r.label, r.detail);
        }
        for r in sweep_cyclotomic(120) {
            assert!(r.ok, "{}: {}", r.label, r.detail);
        }
        for r in sweep_s_sets(60, 12) {
            assert!(r.ok, "{}: {}", r.label, r.detail);
        }
    }

    #[test]
    fn semiprimitive_triples_include_known_cases() {
        let t = semiprimitive_triples(100);
        assert!(t.contains(&(3, 4, 4)));
        assert!(t.contains(&(3, 2, 4)));
        assert!(t.contains(&(3, 2, 2)));
        // 5 ≡ 1 (mod 4): never semiprimitive at k=4
        assert!(!t.iter().any(|&(p, _, k)| p == 5 && k == 4));
        // m odd can never satisfy 2t | m
        assert!(t.iter().all(|&(_, m, _)| m % 2 == 0));
    }
}
