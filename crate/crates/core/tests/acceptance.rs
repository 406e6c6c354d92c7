//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (run with `--nocapture` to see the lines for passing tests too).
//!
//! Four tests marked `printed_` assert classically printed identities that
//! do not survive exact re-derivation: the per-shift closed form behind them
//! mis-handles the two summands where a character argument vanishes, which
//! shifts C(0) from 0 to −1 and turns A·B·J + A + B − 1 into A·B·(J+2) − 1.
//! Those tests are expected to fail; their failure messages state the exact
//! values direct summation produces.  Everything else must pass.

use sidelnikov::charsums::pure_gauss;
use sidelnikov::correlation::{correlate, sidelnikov_bound_check, welch_bound};
use sidelnikov::cycint::CycInt;
use sidelnikov::cyclotomy::{cyclotomic_numbers_pure, cyclotomic_table_brute, s_set_counts_brute};
use sidelnikov::distribution::{
    distribution_brute, distribution_by_counting, distribution_per_tau, CrossCorrSpec,
};
use sidelnikov::gf::{build_field, Element};
use sidelnikov::sequences::sidelnikov;
use sidelnikov::verify::{
    master_equivalence, odd_prime_powers, sweep_cyclotomic, sweep_pure_gauss, sweep_pure_jacobi,
    sweep_s_sets, MasterInstance,
};
use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

const SWEEP_MAX_Q: u64 = 1000;
const SWEEP_MAX_M: u32 = 12;

struct MasterRun {
    instances: Vec<MasterInstance>,
    elapsed: Duration,
}

/// The full master sweep, run once, single-threaded so the measured time is
/// the stated single-thread budget.
fn master() -> &'static MasterRun {
    static RUN: OnceLock<MasterRun> = OnceLock::new();
    RUN.get_or_init(|| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let start = Instant::now();
        let instances = pool.install(|| master_equivalence(SWEEP_MAX_Q, SWEEP_MAX_M));
        MasterRun { instances, elapsed: start.elapsed() }
    })
}

fn multiset(entries: &[(i64, i64, u64)]) -> BTreeMap<Vec<i64>, u64> {
    entries.iter().map(|&(re, im, n)| (vec![re, im], n)).collect()
}

// ---------------------------------------------------------------------------
// Criterion 1 — the GF(81), M = 4 distributions
// ---------------------------------------------------------------------------

#[test]
fn criterion_1_three_way_agreement_gf81() {
    let start = Instant::now();
    let f = build_field(3, 4, None, None).unwrap();
    let mut dists = BTreeMap::new();
    for (c1, c2) in [(1u32, 2u32), (1, 3), (2, 3)] {
        let spec = CrossCorrSpec::new(&f, 4, c1, c2).unwrap();
        let brute = distribution_brute(&spec).unwrap();
        let per_tau = distribution_per_tau(&spec).unwrap();
        let counting = distribution_by_counting(&spec).unwrap();
        assert!(
            brute.same_entries(&per_tau) && brute.same_entries(&counting),
            "criterion 1: methods disagree for ({c1},{c2})"
        );
        assert_eq!(brute.total(), 79, "criterion 1: tau range must be 1..=79");
        assert!(brute.tau_zero.is_zero());
        dists.insert((c1, c2), brute);
    }
    // (2,3) carries the same value multiset as (1,2)
    assert_eq!(
        dists[&(2, 3)].value_multiset(),
        dists[&(1, 2)].value_multiset(),
        "criterion 1: (2,3) must equal the (1,2) multiset"
    );
    // exact multisets produced by direct summation (coeffs [re, im] at level 4)
    assert_eq!(
        dists[&(1, 2)].value_multiset(),
        multiset(&[
            (-12, 0, 8),
            (-8, 0, 7),
            (-2, -10, 10),
            (-2, 10, 10),
            (0, -8, 10),
            (0, 8, 10),
            (8, 0, 24),
        ]),
    );
    assert_eq!(
        dists[&(1, 3)].value_multiset(),
        multiset(&[
            (-12, 0, 6),
            (-10, 0, 8),
            (-8, 0, 1),
            (-2, -10, 8),
            (-2, 10, 8),
            (0, -8, 12),
            (0, 8, 12),
            (8, -2, 6),
            (8, 0, 12),
            (8, 2, 6),
        ]),
    );
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "criterion 1: runtime {elapsed:?} >= 5 s");
    println!(
        "criterion 1 (three-way agreement, (2,3) = (1,2), exact multisets): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_1_printed_tables() {
    // The stated GF(81), M = 4 tables: (1,2) = {−8:15, −7i−1:20, 6:24,
    // 7i−1:20} and (1,3) = {0:15, i−1:20, −2:24, −i−1:20}.  They come from
    // the printed closed form A·B·(J+2) − 1, which deviates from the
    // defining sum whenever A ≠ 1 or B ≠ 1, so direct summation cannot
    // reproduce them.  Expected to fail.
    let f = build_field(3, 4, None, None).unwrap();
    let spec12 = CrossCorrSpec::new(&f, 4, 1, 2).unwrap();
    let observed12 = distribution_brute(&spec12).unwrap().value_multiset();
    let printed12 = multiset(&[(-8, 0, 15), (-1, -7, 20), (6, 0, 24), (-1, 7, 20)]);
    let spec13 = CrossCorrSpec::new(&f, 4, 1, 3).unwrap();
    let observed13 = distribution_brute(&spec13).unwrap().value_multiset();
    let printed13 = multiset(&[(0, 0, 15), (-1, 1, 20), (-2, 0, 24), (-1, -1, 20)]);
    let ok = observed12 == printed12 && observed13 == printed13;
    println!("criterion 1 (printed tables): {}", if ok { "PASS" } else { "FAIL" });
    assert_eq!(
        observed12, printed12,
        "direct summation of the (1,2) cross-correlation does not yield the printed table"
    );
    assert_eq!(
        observed13, printed13,
        "direct summation of the (1,3) cross-correlation does not yield the printed table"
    );
}

// ---------------------------------------------------------------------------
// Criterion 2 — master oracle equivalence
// ---------------------------------------------------------------------------

#[test]
fn criterion_2_master_oracle_equivalence() {
    let run = master();
    let bad: Vec<_> = run.instances.iter().filter(|r| !r.ok).collect();
    let taus: u64 = run.instances.iter().map(|r| r.taus_checked).sum();
    let pairs: u32 = run.instances.iter().map(|r| r.pairs_checked).sum();
    let ok = bad.is_empty() && run.elapsed < Duration::from_secs(600);
    println!(
        "criterion 2 (closed form = brute force, q <= {SWEEP_MAX_Q}, M <= {SWEEP_MAX_M}): {} — \
         {} instances, {pairs} pairs, {taus} shifts, {:.1} s single-threaded",
        if ok { "PASS" } else { "FAIL" },
        run.instances.len(),
        run.elapsed.as_secs_f64()
    );
    for r in bad.iter().take(5) {
        println!("  q={} M={}: {:?}", r.q, r.mm, r.failures);
    }
    assert!(bad.is_empty(), "{} failing instances", bad.len());
    assert!(
        run.elapsed < Duration::from_secs(600),
        "single-threaded sweep took {:?}, budget is 10 min",
        run.elapsed
    );
}

// ---------------------------------------------------------------------------
// Criterion 3 — pure Gauss sums
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_pure_gauss_sums() {
    let results = sweep_pure_gauss(SWEEP_MAX_Q);
    let bad: Vec<_> = results.iter().filter(|r| !r.ok).collect();
    // the pinned instance: GF(81), k = 4 gives −9
    let pinned = pure_gauss(3, 4, 4).unwrap().as_integer();
    let ok = bad.is_empty() && pinned == Some(-9);
    println!(
        "criterion 3 (pure Gauss sums, {} semiprimitive instances): {}",
        results.len(),
        if ok { "PASS" } else { "FAIL" }
    );
    for r in bad.iter().take(5) {
        println!("  {}: {}", r.label, r.detail);
    }
    assert!(bad.is_empty());
    assert_eq!(pinned, Some(-9));
}

// ---------------------------------------------------------------------------
// Criterion 4 — pure Jacobi sums
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_pure_jacobi_sums() {
    let results = sweep_pure_jacobi(SWEEP_MAX_Q);
    let bad: Vec<_> = results.iter().filter(|r| !r.ok).collect();
    println!(
        "criterion 4 (pure Jacobi sums incl. shortcut and conjugate pairs, {} instances): {}",
        results.len(),
        if bad.is_empty() { "PASS" } else { "FAIL" }
    );
    for r in bad.iter().take(5) {
        println!("  {}: {}", r.label, r.detail);
    }
    assert!(bad.is_empty());
}

// ---------------------------------------------------------------------------
// Criterion 5 — cyclotomic numbers and S-set cardinalities
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_cyclotomic_numbers_and_s_sets() {
    let tables = sweep_cyclotomic(SWEEP_MAX_Q);
    let bad_tables: Vec<_> = tables.iter().filter(|r| !r.ok).collect();

    // the four aggregate sums over GF(81), k = 4
    let t = cyclotomic_numbers_pure(3, 4, 4).unwrap();
    let sum = |pairs: &[(u32, u32)]| pairs.iter().map(|&(u, v)| t.get(u, v)).sum::<u64>();
    let aggregates = [
        sum(&[(0, 0), (2, 2), (3, 1), (1, 3)]),
        sum(&[(1, 0), (3, 2), (0, 1), (2, 3)]),
        sum(&[(1, 1), (3, 3), (2, 0), (0, 2)]),
        sum(&[(2, 1), (0, 3), (3, 0), (1, 2)]),
    ];

    let s_sets = sweep_s_sets(200, SWEEP_MAX_M);
    let bad_s: Vec<_> = s_sets.iter().filter(|r| !r.ok).collect();

    let ok = bad_tables.is_empty() && aggregates == [15, 20, 24, 20] && bad_s.is_empty();
    println!(
        "criterion 5 (cyclotomic tables x{}, aggregates {:?}, S-sets x{}): {}",
        tables.len(),
        aggregates,
        s_sets.len(),
        if ok { "PASS" } else { "FAIL" }
    );
    for r in bad_tables.iter().chain(bad_s.iter()).take(5) {
        println!("  {}: {}", r.label, r.detail);
    }
    assert!(bad_tables.is_empty());
    assert_eq!(aggregates, [15, 20, 24, 20]);
    assert!(bad_s.is_empty());
}

#[test]
fn criterion_5_printed_s_index() {
    // The widely quoted index form |S_{u,v}| = (u+v, v)_M.  The substitution
    // y = 1/(1−x), x = −w gives ((u−κ) mod M, (u+v−κ) mod M)_M with
    // κ = (q−1)/2 mod M instead, and direct enumeration agrees with the
    // latter; (u+v, v) survives only under extra symmetry.  Expected to fail.
    let mut mismatches = Vec::new();
    let mut cells = 0u64;
    for (p, m_deg) in odd_prime_powers(200) {
        let f = build_field(p, m_deg, None, None).unwrap();
        let q = f.q();
        for k in 2..=SWEEP_MAX_M {
            if (q - 1) % k as u64 != 0 {
                continue;
            }
            let table = cyclotomic_table_brute(&f, k).unwrap();
            let brute = s_set_counts_brute(&f, k).unwrap();
            for u in 0..k {
                for v in 0..k {
                    cells += 1;
                    let printed = table.get((u + v) % k, v);
                    if printed != brute[u as usize][v as usize] {
                        mismatches.push((q, k, u, v, printed, brute[u as usize][v as usize]));
                    }
                }
            }
        }
    }
    let ok = mismatches.is_empty();
    println!(
        "criterion 5 (printed S-set index form, {cells} cells): {} — {} mismatches",
        if ok { "PASS" } else { "FAIL" },
        mismatches.len()
    );
    assert!(
        mismatches.is_empty(),
        "(u+v, v) disagrees with direct S-set enumeration in {} of {cells} cells; first: \
         q={} M={} (u,v)=({},{}): table {} vs enumeration {}",
        mismatches.len(),
        mismatches[0].0,
        mismatches[0].1,
        mismatches[0].2,
        mismatches[0].3,
        mismatches[0].4,
        mismatches[0].5,
    );
}

// ---------------------------------------------------------------------------
// Criterion 6 — bounds
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_bounds() {
    let w = welch_bound(3, 3124).unwrap();
    assert!((w - 45.63).abs() <= 0.01, "welch(3, 3124) = {w}, want 45.63 +/- 0.01");
    let upper_5_5 = (5f64.powi(5)).sqrt() + 3.0;
    assert!((upper_5_5 - 58.90).abs() <= 0.01, "sqrt(5^5)+3 = {upper_5_5}");

    // the full-scale q = 5^5 family: bound figure and bound check only
    let f = build_field(5, 5, None, None).unwrap();
    let report = sidelnikov_bound_check(&f, 4, 1, 2).unwrap();
    assert!((report.bound - 58.90).abs() <= 0.01);
    assert!(report.pass, "|C| exceeded sqrt(q)+3 at q=5^5: {}", report.max_abs);

    // Welch <= C_max <= sqrt(q)+3 for every desk-scale family, and
    // out-of-phase autocorrelation magnitude <= 4 throughout
    let run = master();
    let mut worst_auto = 0.0f64;
    for r in &run.instances {
        worst_auto = worst_auto.max(r.max_autocorrelation);
        if r.pairs_checked > 0 {
            assert!(
                r.welch <= r.c_max + 1e-9 && r.c_max <= r.upper + 1e-9,
                "q={} M={}: welch {} c_max {} upper {}",
                r.q,
                r.mm,
                r.welch,
                r.c_max,
                r.upper
            );
        }
        assert!(
            r.max_autocorrelation <= 4.0 + 1e-9,
            "q={} M={}: autocorrelation {}",
            r.q,
            r.mm,
            r.max_autocorrelation
        );
    }
    println!(
        "criterion 6 (welch 45.64≈45.63, upper 58.90, {} families bounded, worst autocorrelation \
         {worst_auto}): PASS",
        run.instances.len()
    );
}

// ---------------------------------------------------------------------------
// Criterion 7 — structural properties
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_structural_properties() {
    // balance, construction agreement, digit/character identity and
    // C(0) = 0 are all enforced inside the master sweep
    let run = master();
    assert!(run.instances.iter().all(|r| r.ok), "structural failures in the master sweep");

    // the corrected magnitude identity, exhaustively over GF(81):
    // C(τ) + 1 − A − B = A·B·J, so |C(τ)+1−A−B|² = q exactly
    let f = build_field(3, 4, None, None).unwrap();
    let s = sidelnikov(&f, 4).unwrap();
    let q = CycInt::from_int(4, 81);
    for (c1, c2) in [(1u32, 2u32), (1, 3), (2, 3)] {
        let spec = CrossCorrSpec::new(&f, 4, c1, c2).unwrap();
        let (a_seq, b_seq) = (s.constant_multiple(c1), s.constant_multiple(c2));
        for tau in 1..=79i64 {
            let c = correlate(&a_seq, &b_seq, tau).unwrap();
            let (a, b) = character_factors_public(&spec, tau as u64);
            let lhs = c
                .add(&CycInt::one(4))
                .unwrap()
                .sub(&a)
                .unwrap()
                .sub(&b)
                .unwrap();
            assert_eq!(lhs.abs_sq(), q, "(c1,c2)=({c1},{c2}) tau={tau}");
        }
    }
    println!("criterion 7 (balance, construction agreement, character identity, C(0)=0, |C+1−A−B|²=q): PASS");
}

// the character factors are private to the distribution module; rebuild them
// here from first principles so the acceptance check is independent
fn character_factors_public(spec: &CrossCorrSpec, tau: u64) -> (CycInt, CycInt) {
    let f = spec.field();
    let q = f.q();
    let m = spec.modulus();
    let a_arg = f.sub(Element::ONE, f.exp(q - 1 - tau % (q - 1)));
    let b_arg = f.sub(Element::ONE, f.exp(tau));
    (
        CycInt::root_of_unity(m, (spec.c1() as u64 * f.log(a_arg)) as i64),
        CycInt::root_of_unity(m, -((spec.c2() as u64 * f.log(b_arg)) as i64)),
    )
}

#[test]
fn criterion_7_printed_tau_zero() {
    // The printed claim C(0) = −1.  Perfect balance of the Sidelnikov digits
    // forces C(0) = Σ_k count·ω^{(c1−c2)k} = 0 for every valid pair, so −1
    // is unattainable.  Expected to fail.
    let f = build_field(3, 4, None, None).unwrap();
    let s = sidelnikov(&f, 4).unwrap();
    let c0 = correlate(&s.constant_multiple(1), &s.constant_multiple(2), 0).unwrap();
    let ok = c0 == CycInt::from_int(4, -1);
    println!("criterion 7 (printed C(0) = −1): {}", if ok { "PASS" } else { "FAIL" });
    assert_eq!(
        c0,
        CycInt::from_int(4, -1),
        "direct summation gives C(0) = {c0}; the balance property forces 0, not −1"
    );
}

#[test]
fn criterion_7_printed_magnitude() {
    // The printed claim |C(τ)+1| = |J+2| for all τ ≥ 1, compared by exact
    // squared magnitudes.  The true identity is |C(τ)+1−A−B|² = q; |C+1|
    // varies with τ.  Expected to fail.
    let f = build_field(3, 4, None, None).unwrap();
    let spec = CrossCorrSpec::new(&f, 4, 1, 2).unwrap();
    let j = spec.jacobi().unwrap();
    let s = sidelnikov(&f, 4).unwrap();
    let (a_seq, b_seq) = (s.constant_multiple(1), s.constant_multiple(2));
    let rhs = j.value.add(&CycInt::from_int(4, 2)).unwrap().abs_sq();
    let mut first_break = None;
    for tau in 1..=79i64 {
        let lhs = correlate(&a_seq, &b_seq, tau)
            .unwrap()
            .add(&CycInt::one(4))
            .unwrap()
            .abs_sq();
        if lhs != rhs && first_break.is_none() {
            first_break = Some((tau, lhs.clone()));
        }
    }
    let ok = first_break.is_none();
    println!("criterion 7 (printed |C(τ)+1| = |J+2|): {}", if ok { "PASS" } else { "FAIL" });
    if let Some((tau, lhs)) = first_break {
        panic!(
            "|C({tau})+1|² = {lhs} but |J+2|² = {rhs}; the exact identity is |C(τ)+1−A−B|² = q"
        );
    }
}
