//! Command-line front end: field construction, sequence emission,
//! correlation, character sums, cyclotomic tables, distributions, family
//! reports, and the verification sweeps.
//!
//! Output is byte-deterministic given identical flags: entries are sorted,
//! floats are printed with six decimals, JSON key order follows the struct
//! definitions.  Exit codes: 0 success, 1 usage, 2 domain error,
//! 3 verification failure.  `SIDELNIKOV_THREADS` caps the rayon pool used by
//! the brute-force loops (results are exact and order-independent either
//! way).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sidelnikov::charsums::{
    gauss_sum, jacobi_auto, jacobi_conjugate, jacobi_sum_brute, pure_gauss, pure_jacobi,
    semiprimitivity, trivial_gauss_conventional, JacobiEvaluation, JacobiMethod,
};
use sidelnikov::correlation::{correlate, CorrelationVector};
use sidelnikov::cycint::CycInt;
use sidelnikov::cyclotomy::{
    cyclotomic_numbers_pure, cyclotomic_table_auto, cyclotomic_table_brute, CyclotomicTable,
    TableSource,
};
use sidelnikov::distribution::{
    closed_form_correlation, distribution_brute, distribution_by_counting, distribution_per_tau,
    family_report, pure_case_correlation, CorrelationDistribution, CrossCorrSpec, FamilyReport,
    Provenance,
};
use sidelnikov::gf::{build_field, FieldSpec, FieldTable};
use sidelnikov::sequences::{sidelnikov as sidelnikov_seq, Sequence};
use sidelnikov::verify::{
    master_equivalence, sweep_cyclotomic, sweep_pure_gauss, sweep_pure_jacobi, sweep_s_sets,
    MasterInstance, SweepOutcome,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "sidelnikov",
    version,
    about = "Sidelnikov sequences and exact cross-correlation distributions over GF(p^m)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Odd prime characteristic.
    #[arg(long)]
    p: u64,
    /// Extension degree.
    #[arg(long)]
    m: u32,
    /// Explicit modulus, ascending coefficients ("c0,c1,...,1").
    #[arg(long)]
    modulus: Option<String>,
    /// Explicit primitive element, ascending coefficients (needs --modulus).
    #[arg(long)]
    alpha: Option<String>,
    /// JSON file with a field spec {"p","m","modulus","alpha"}; overrides
    /// the other field flags.
    #[arg(long)]
    field_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct GF(p^m) and print its spec.
    Field(FieldArgs),
    /// Emit an M-ary Sidelnikov sequence (or a constant multiple of it).
    Sequence {
        #[command(flatten)]
        field: FieldArgs,
        /// Sequence modulus M (must divide q-1).
        #[arg(long = "M")]
        mm: u32,
        /// Constant multiplier c; 0 gives the all-zero sequence.
        #[arg(long, default_value_t = 1)]
        multiplier: u32,
    },
    /// Cross-correlation of c1*s and c2*s: one shift or the full vector.
    Correlate {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "M")]
        mm: u32,
        #[arg(long)]
        c1: u32,
        #[arg(long)]
        c2: u32,
        /// Single shift; omit for the full vector over all shifts.
        #[arg(long)]
        tau: Option<i64>,
        #[arg(long, value_enum, default_value_t = CorrMethod::Brute)]
        method: CorrMethod,
    },
    /// Full cross-correlation distribution of (c1*s, c2*s).
    Distribution {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "M")]
        mm: u32,
        #[arg(long)]
        c1: u32,
        #[arg(long)]
        c2: u32,
        #[arg(long, value_enum, default_value_t = DistMethod::PerTau)]
        method: DistMethod,
    },
    /// Jacobi sum J(chi^a, chi^b) of order-k characters.
    Jacobi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, value_enum, default_value_t = JacMethod::Auto)]
        method: JacMethod,
    },
    /// Gauss sum G(chi^a) of an order-k character.
    Gauss {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        a: i64,
        #[arg(long, value_enum, default_value_t = GaussMethod::Auto)]
        method: GaussMethod,
    },
    /// k x k cyclotomic number table.
    Cyclotomic {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = CycMethod::Auto)]
        method: CycMethod,
    },
    /// Family survey: distributions, C_max, Welch and sqrt(q)+3 bounds,
    /// balance and shift-inequivalence flags.
    Report {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "M")]
        mm: u32,
    },
    /// Run the verification sweeps over all odd prime powers q <= max-q.
    Verify {
        #[arg(long, default_value_t = 200)]
        max_q: u64,
        /// Largest sequence modulus M to sweep.
        #[arg(long, default_value_t = 12)]
        max_m: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorrMethod {
    /// Direct summation of the defining sum.
    Brute,
    /// Jacobi-sum closed form (Jacobi value picked automatically).
    Closed,
    /// Closed form with the Jacobi sum from the pure formula.
    Pure,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistMethod {
    PerTau,
    Counting,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum JacMethod {
    Auto,
    Brute,
    Pure,
    Conjugate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GaussMethod {
    Auto,
    Brute,
    Pure,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CycMethod {
    Auto,
    Brute,
    Pure,
}

// ---------------------------------------------------------------------------
// Error plumbing: every domain error exits 2 with one machine-parsable line
// ---------------------------------------------------------------------------

struct CliError {
    code: String,
    message: String,
}

impl CliError {
    fn new(code: &str, message: impl Into<String>) -> Self {
        CliError { code: code.into(), message: message.into() }
    }
}

macro_rules! impl_from {
    ($ty:path) => {
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError { code: e.code().into(), message: e.to_string() }
            }
        }
    };
}
impl_from!(sidelnikov::gf::FieldError);
impl_from!(sidelnikov::cycint::CycIntError);
impl_from!(sidelnikov::sequences::SequenceError);
impl_from!(sidelnikov::charsums::CharsumError);
impl_from!(sidelnikov::cyclotomy::CyclotomyError);
impl_from!(sidelnikov::correlation::CorrelationError);
impl_from!(sidelnikov::distribution::DistributionError);

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new("Io", e.to_string())
    }
}
impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::new("Json", e.to_string())
    }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SIDELNIKOV_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error[BadThreadCount]: SIDELNIKOV_THREADS must be a positive integer");
                return ExitCode::from(1);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    let output = cli.output.clone();
    match run(cli.command, format) {
        Ok((text, verify_failed)) => {
            let written = match &output {
                Some(path) => std::fs::write(path, text.as_bytes()).map_err(CliError::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error[{}]: {}", e.code, e.message);
                return ExitCode::from(2);
            }
            ExitCode::from(if verify_failed { 3 } else { 0 })
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.code, e.message);
            ExitCode::from(2)
        }
    }
}

/// Dispatch; returns the rendered output and whether verification failed.
fn run(cmd: Command, format: Format) -> Result<(String, bool), CliError> {
    match cmd {
        Command::Field(args) => {
            let field = load_field(&args)?;
            Ok((render_field(field.spec(), format)?, false))
        }
        Command::Sequence { field, mm, multiplier } => {
            let f = load_field(&field)?;
            let s = sidelnikov_seq(&f, mm)?;
            let s = if multiplier % mm == 1 {
                s
            } else {
                if multiplier % mm == 0 {
                    eprintln!(
                        "warning: multiplier {multiplier} = 0 (mod {mm}) collapses every digit \
                         to 0 (least period 1)"
                    );
                }
                s.constant_multiple(multiplier)
            };
            Ok((render_sequence(&f, mm, &s, format)?, false))
        }
        Command::Correlate { field, mm, c1, c2, tau, method } => {
            let f = load_field(&field)?;
            Ok((render_correlate(&f, mm, c1, c2, tau, method, format)?, false))
        }
        Command::Distribution { field, mm, c1, c2, method } => {
            let f = load_field(&field)?;
            let spec = CrossCorrSpec::new(&f, mm, c1, c2)?;
            let dist = match method {
                DistMethod::PerTau => distribution_per_tau(&spec)?,
                DistMethod::Counting => distribution_by_counting(&spec)?,
                DistMethod::Brute => distribution_brute(&spec)?,
            };
            Ok((render_distribution(&dist, format)?, false))
        }
        Command::Jacobi { field, k, a, b, method } => {
            let f = load_field(&field)?;
            let j = match method {
                JacMethod::Auto => jacobi_auto(&f, k, a, b)?,
                JacMethod::Brute => jacobi_sum_brute(&f, k, a, b)?,
                JacMethod::Pure => pure_jacobi(f.p(), f.m(), k, a, b)?,
                JacMethod::Conjugate => jacobi_conjugate(&f, k, a)?,
            };
            Ok((render_jacobi(&j, format)?, false))
        }
        Command::Gauss { field, k, a, method } => {
            let f = load_field(&field)?;
            Ok((render_gauss(&f, k, a, method, format)?, false))
        }
        Command::Cyclotomic { field, k, method } => {
            let f = load_field(&field)?;
            let table = match method {
                CycMethod::Auto => cyclotomic_table_auto(&f, k)?,
                CycMethod::Brute => cyclotomic_table_brute(&f, k)?,
                CycMethod::Pure => cyclotomic_numbers_pure(f.p(), f.m(), k)?,
            };
            Ok((render_cyclotomic(&table, format)?, false))
        }
        Command::Report { field, mm } => {
            let f = load_field(&field)?;
            let report = family_report(&f, mm)?;
            Ok((render_report(&report, format)?, false))
        }
        Command::Verify { max_q, max_m } => render_verify(max_q, max_m, format),
    }
}

// ---------------------------------------------------------------------------
// Field loading
// ---------------------------------------------------------------------------

fn parse_coeffs(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::new("BadCoefficients", format!("cannot parse '{s}': {e}")))
}

fn load_field(args: &FieldArgs) -> Result<FieldTable, CliError> {
    if let Some(path) = &args.field_file {
        let data = std::fs::read_to_string(path)?;
        let spec: FieldSpec = serde_json::from_str(&data)?;
        return Ok(build_field(spec.p, spec.m, Some(&spec.modulus), Some(&spec.alpha))?);
    }
    let modulus = args.modulus.as_deref().map(parse_coeffs).transpose()?;
    let alpha = args.alpha.as_deref().map(parse_coeffs).transpose()?;
    Ok(build_field(args.p, args.m, modulus.as_deref(), alpha.as_deref())?)
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn join_u64(v: &[u64], sep: &str) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

fn cyc_csv_cells(v: &CycInt) -> String {
    let (re, im) = v.to_complex();
    let coeffs = v.coeffs().iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    format!("{coeffs},{},{}", f6(re), f6(im))
}

/// Header cells c0..c{n-1} for an n-coefficient value.
fn coeff_heads(n: usize) -> String {
    (0..n).map(|i| format!("c{i}")).collect::<Vec<_>>().join(",")
}

fn cyc_text(v: &CycInt) -> String {
    let (re, im) = v.to_complex();
    format!("{v}  (re={}, im={})", f6(re), f6(im))
}

fn render_field(spec: &FieldSpec, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string(spec)?),
        Format::Csv => format!(
            "p,m,q,modulus,alpha\n{},{},{},{},{}\n",
            spec.p,
            spec.m,
            spec.p.pow(spec.m),
            join_u64(&spec.modulus, ";"),
            join_u64(&spec.alpha, ";"),
        ),
        Format::Text => format!(
            "p = {}\nm = {}\nq = {}\nmodulus (ascending) = [{}]\nalpha (ascending) = [{}]\n",
            spec.p,
            spec.m,
            spec.p.pow(spec.m),
            join_u64(&spec.modulus, ", "),
            join_u64(&spec.alpha, ", "),
        ),
    })
}

fn render_sequence(
    f: &FieldTable,
    mm: u32,
    s: &Sequence,
    format: Format,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string(s)?),
        Format::Csv => {
            let mut out = String::from("index,digit\n");
            for (i, d) in s.digits().iter().enumerate() {
                let _ = writeln!(out, "{i},{d}");
            }
            out
        }
        Format::Text => {
            // header line "p m M alpha-spec", then one period of digits
            let alpha = join_u64(&f.spec().alpha, ",");
            let digits = s.digits().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            format!("{} {} {mm} {alpha}\n{digits}\n", f.p(), f.m())
        }
    })
}

#[derive(Serialize)]
struct SingleCorrelation<'a> {
    #[serde(rename = "M")]
    m: u32,
    c1: u32,
    c2: u32,
    tau: i64,
    method: &'a str,
    value: CycInt,
}

fn corr_method_name(m: CorrMethod) -> &'static str {
    match m {
        CorrMethod::Brute => "brute",
        CorrMethod::Closed => "closed",
        CorrMethod::Pure => "pure",
    }
}

fn render_correlate(
    f: &FieldTable,
    mm: u32,
    c1: u32,
    c2: u32,
    tau: Option<i64>,
    method: CorrMethod,
    format: Format,
) -> Result<String, CliError> {
    let spec = CrossCorrSpec::new(f, mm, c1, c2)?;
    let seqs = match method {
        CorrMethod::Brute => {
            let s = sidelnikov_seq(f, mm)?;
            Some((s.constant_multiple(c1), s.constant_multiple(c2)))
        }
        _ => None,
    };
    let jacobi = match method {
        CorrMethod::Closed => Some(spec.jacobi()?),
        _ => None,
    };
    let one_value = |tau: i64| -> Result<CycInt, CliError> {
        Ok(match method {
            CorrMethod::Brute => {
                let (a, b) = seqs.as_ref().expect("built above");
                correlate(a, b, tau)?
            }
            CorrMethod::Closed => {
                closed_form_correlation(&spec, tau, jacobi.as_ref().expect("built above"))?
            }
            CorrMethod::Pure => pure_case_correlation(&spec, tau)?,
        })
    };
    if let Some(tau) = tau {
        let value = one_value(tau)?;
        return Ok(match format {
            Format::Json => format!(
                "{}\n",
                serde_json::to_string(&SingleCorrelation {
                    m: mm,
                    c1,
                    c2,
                    tau,
                    method: corr_method_name(method),
                    value,
                })?
            ),
            Format::Csv => format!(
                "tau,{},re,im\n{tau},{}\n",
                coeff_heads(value.coeffs().len()),
                cyc_csv_cells(&value)
            ),
            Format::Text => format!("C({tau}) = {}\n", cyc_text(&value)),
        });
    }
    let values: Result<Vec<CycInt>, CliError> = (0..(f.q() - 1) as i64).map(one_value).collect();
    let vec = CorrelationVector { m: mm, v: (f.q() - 1) as usize, values: values? };
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string(&vec)?),
        Format::Csv => {
            let mut out = format!("tau,{},re,im\n", coeff_heads(vec.values[0].coeffs().len()));
            for (tau, value) in vec.values.iter().enumerate() {
                let _ = writeln!(out, "{tau},{}", cyc_csv_cells(value));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (tau, value) in vec.values.iter().enumerate() {
                let _ = writeln!(out, "C({tau}) = {}", cyc_text(value));
            }
            out
        }
    })
}

fn provenance_str(p: Provenance) -> &'static str {
    match p {
        Provenance::Brute => "brute",
        Provenance::PerTauClosedForm => "per_tau_closed_form",
        Provenance::CyclotomicCount => "cyclotomic_count",
    }
}

fn render_distribution(dist: &CorrelationDistribution, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string(dist)?),
        Format::Csv => {
            let width = dist.tau_zero.coeffs().len();
            let mut out = format!("residue,count,{},re,im\n", coeff_heads(width));
            for e in &dist.entries {
                let _ = writeln!(out, "{},{},{}", e.residue, e.count, cyc_csv_cells(&e.value));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "cross-correlation distribution c1={} c2={} (M={}, q={}, method={})\n",
                dist.c1,
                dist.c2,
                dist.m,
                dist.q,
                provenance_str(dist.provenance)
            );
            let _ = writeln!(out, "C(0) = {}", cyc_text(&dist.tau_zero));
            for e in &dist.entries {
                let _ =
                    writeln!(out, "residue {}: {}  x{}", e.residue, cyc_text(&e.value), e.count);
            }
            let _ = writeln!(out, "total shifts covered: {}", dist.total());
            out
        }
    })
}

fn method_str(m: JacobiMethod) -> &'static str {
    match m {
        JacobiMethod::BruteForce => "brute_force",
        JacobiMethod::ConjugateIdentity => "conjugate_identity",
        JacobiMethod::PureFormula => "pure_formula",
    }
}

fn render_jacobi(j: &JacobiEvaluation, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string(j)?),
        Format::Csv => {
            let (re, im) = j.value.to_complex();
            format!(
                "p,m,k,a,b,method,value,re,im\n{},{},{},{},{},{},{},{},{}\n",
                j.p,
                j.m,
                j.k,
                j.a,
                j.b,
                method_str(j.method),
                j.value,
                f6(re),
                f6(im)
            )
        }
        Format::Text => format!(
            "J(chi^{}, chi^{}) over GF({}^{}) with k={}: {}  [method: {}]\n",
            j.a,
            j.b,
            j.p,
            j.m,
            j.k,
            cyc_text(&j.value),
            method_str(j.method)
        ),
    })
}

#[derive(Serialize)]
struct GaussOutput {
    p: u64,
    m: u32,
    k: u32,
    a: i64,
    method: &'static str,
    value: CycInt,
    /// q−1, the classical constant for a trivial character under the
    /// zero-maps-to-one convention; only present when the character is
    /// trivial (the literal sum with chi(0) = 0 gives −1 instead).
    #[serde(skip_serializing_if = "Option::is_none")]
    trivial_conventional: Option<CycInt>,
}

fn render_gauss(
    f: &FieldTable,
    k: u32,
    a: i64,
    method: GaussMethod,
    format: Format,
) -> Result<String, CliError> {
    if k == 0 {
        return Err(CliError::new("OrderDoesNotDivide", "k must be >= 1"));
    }
    let trivial = a.rem_euclid(k as i64) == 0;
    let (value, mname): (CycInt, &'static str) = match method {
        GaussMethod::Brute => (gauss_sum(f, k, a)?, "brute_force"),
        GaussMethod::Pure => (pure_gauss(f.p(), f.m(), k)?, "pure_formula"),
        GaussMethod::Auto => {
            // the pure formula covers the full-order character chi^1
            let pure_ok = !trivial
                && k >= 2
                && a.rem_euclid(k as i64) == 1
                && semiprimitivity(f.p(), k)?.is_some_and(|sp| sp.s_for_degree(f.m()).is_some());
            if pure_ok {
                (pure_gauss(f.p(), f.m(), k)?, "pure_formula")
            } else {
                (gauss_sum(f, k, a)?, "brute_force")
            }
        }
    };
    let out = GaussOutput {
        p: f.p(),
        m: f.m(),
        k,
        a,
        method: mname,
        value,
        trivial_conventional: trivial.then(|| trivial_gauss_conventional(f)),
    };
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string(&out)?),
        Format::Csv => {
            let (re, im) = out.value.to_complex();
            format!(
                "p,m,k,a,method,value,re,im\n{},{},{},{},{},{},{},{}\n",
                out.p, out.m, out.k, out.a, out.method, out.value, f6(re), f6(im)
            )
        }
        Format::Text => {
            let mut text = format!(
                "G(chi^{}) over GF({}^{}) with k={}: {}  [method: {}]\n",
                out.a,
                out.p,
                out.m,
                out.k,
                cyc_text(&out.value),
                out.method
            );
            if let Some(conv) = &out.trivial_conventional {
                let _ = writeln!(
                    text,
                    "trivial character: the literal sum uses chi(0)=0; the classical \
                     convention assigns q-1 = {conv}"
                );
            }
            text
        }
    })
}

#[derive(Serialize)]
struct CyclotomicOutput<'a> {
    p: u64,
    m: u32,
    q: u64,
    k: u32,
    source: &'a str,
    numbers: Vec<Vec<u64>>,
}

fn render_cyclotomic(table: &CyclotomicTable, format: Format) -> Result<String, CliError> {
    let source = match table.source {
        TableSource::BruteForce => "brute_force",
        TableSource::PureFormula => "pure_formula",
    };
    Ok(match format {
        Format::Json => {
            let out = CyclotomicOutput {
                p: table.p,
                m: table.m,
                q: table.q,
                k: table.k,
                source,
                numbers: table.rows(),
            };
            format!("{}\n", serde_json::to_string(&out)?)
        }
        Format::Csv => {
            // row = u, column = v
            let heads: Vec<String> = (0..table.k).map(|v| format!("v{v}")).collect();
            let mut out = format!("u,{}\n", heads.join(","));
            for (u, row) in table.rows().iter().enumerate() {
                let _ = writeln!(out, "{u},{}", join_u64(row, ","));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "cyclotomic numbers (u,v)_{} over GF({}) [{}]\n",
                table.k, table.q, source
            );
            for (u, row) in table.rows().iter().enumerate() {
                let _ = writeln!(out, "u={u}: {}", join_u64(row, " "));
            }
            out
        }
    })
}

fn render_report(report: &FamilyReport, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string(report)?),
        Format::Csv => {
            let mut out = String::from("c1,c2,max_abs\n");
            for pair in &report.pairs {
                let _ = writeln!(out, "{},{},{}", pair.c1, pair.c2, f6(pair.max_abs));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "family of nonzero constant multiples, GF({}), M = {} ({} sequences)\n",
                report.q, report.m, report.family_size
            );
            let _ = writeln!(
                out,
                "welch lower bound = {}   sqrt(q)+3 = {}   observed C_max = {}",
                f6(report.welch_lower),
                f6(report.upper),
                f6(report.c_max)
            );
            let _ = writeln!(
                out,
                "welch <= C_max: {}   C_max <= sqrt(q)+3: {}   shift-inequivalent: {}",
                report.welch_le_c_max, report.c_max_le_upper, report.shift_inequivalent
            );
            for m in &report.members {
                let _ = writeln!(
                    out,
                    "member c={}: balanced={} least_period={} max out-of-phase |C| = {}",
                    m.c,
                    m.balanced,
                    m.least_period,
                    f6(m.max_autocorrelation)
                );
            }
            for p in &report.pairs {
                let _ = writeln!(out, "pair ({}, {}): max |C| = {}", p.c1, p.c2, f6(p.max_abs));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct VerifyOutput {
    max_q: u64,
    max_m: u32,
    ok: bool,
    master: Vec<MasterInstance>,
    pure_gauss: Vec<SweepOutcome>,
    pure_jacobi: Vec<SweepOutcome>,
    cyclotomic: Vec<SweepOutcome>,
    s_sets: Vec<SweepOutcome>,
}

fn render_verify(max_q: u64, max_m: u32, format: Format) -> Result<(String, bool), CliError> {
    let master = master_equivalence(max_q, max_m);
    let gauss = sweep_pure_gauss(max_q);
    let jacobi = sweep_pure_jacobi(max_q);
    let cyclotomic = sweep_cyclotomic(max_q);
    let s_sets = sweep_s_sets(max_q.min(200), max_m);
    let ok = master.iter().all(|r| r.ok)
        && gauss.iter().all(|r| r.ok)
        && jacobi.iter().all(|r| r.ok)
        && cyclotomic.iter().all(|r| r.ok)
        && s_sets.iter().all(|r| r.ok);

    let text = match format {
        Format::Json => {
            let out = VerifyOutput {
                max_q,
                max_m,
                ok,
                master,
                pure_gauss: gauss,
                pure_jacobi: jacobi,
                cyclotomic,
                s_sets,
            };
            format!("{}\n", serde_json::to_string(&out)?)
        }
        Format::Csv => {
            let mut out = String::from("section,label,ok,detail\n");
            for r in &master {
                let _ = writeln!(
                    out,
                    "master,q={} M={},{},{}",
                    r.q,
                    r.mm,
                    r.ok,
                    r.failures.join("; ")
                );
            }
            for (name, rows) in [
                ("pure-gauss", &gauss),
                ("pure-jacobi", &jacobi),
                ("cyclotomic", &cyclotomic),
                ("s-sets", &s_sets),
            ] {
                for r in rows.iter() {
                    let _ = writeln!(out, "{name},{},{},{}", r.label, r.ok, r.detail);
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &master {
                if r.ok {
                    let _ = writeln!(
                        out,
                        "master q={} M={}: ok ({} pairs, {} shifts, C_max={}, welch={}, bound={})",
                        r.q,
                        r.mm,
                        r.pairs_checked,
                        r.taus_checked,
                        f6(r.c_max),
                        f6(r.welch),
                        f6(r.upper)
                    );
                } else {
                    let _ = writeln!(out, "master q={} M={}: FAIL {:?}", r.q, r.mm, r.failures);
                }
            }
            for rows in [&gauss, &jacobi, &cyclotomic, &s_sets] {
                for r in rows.iter() {
                    if r.ok {
                        let _ = writeln!(out, "{}: ok ({})", r.label, r.detail);
                    } else {
                        let _ = writeln!(out, "{}: FAIL ({})", r.label, r.detail);
                    }
                }
            }
            let _ = writeln!(
                out,
                "verify: {} (q <= {max_q}, M <= {max_m})",
                if ok { "all checks passed" } else { "FAILURES found" }
            );
            out
        }
    };
    Ok((text, !ok))
}
