//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::complex::{build_complex, HomologyTable};
use crate::diagram::{builder, kauffman_bracket, parse_pd, LinkDiagram};
use crate::error::{Error, Result};
use crate::frobenius::{a5, A5Params, FrobeniusData, FrobeniusJson};
use crate::rank2::{isomorphic, Classifier, MultTable, MultTableJson};
use crate::ring::{Integers, PrimeField, Rationals, Ring, RingSpec};
use crate::verifier::{self, Report, SearchSpace};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification finds a counterexample.
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
/// Exit status for malformed input or usage errors.
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "frobknot",
    version,
    about = "Link homology from rank-2 Frobenius algebras, and exhaustive checks of rank-2 algebra structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology of a link diagram with coefficients in a Frobenius algebra.
    Homology {
        /// PD file, or `builder:NAME`.
        input: String,
        /// Frobenius algebra JSON file.
        #[arg(long, conflicts_with = "a5")]
        algebra: Option<PathBuf>,
        /// Use Z[x]/(x^2 - hx - t) at the given integers (default 0,0).
        #[arg(long, value_name = "H,T")]
        a5: Option<String>,
        /// Coefficient ring: Z, Q or Fp:P.
        #[arg(long)]
        ring: Option<String>,
        /// Shift degrees by the crossing counts of the orientation.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        json: bool,
    },
    /// Kauffman bracket of a diagram.
    Bracket {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Axiom report for a Frobenius algebra JSON file.
    CheckAlgebra {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Identify a rank-2 multiplication table over F_p up to base change.
    Classify {
        file: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run an exhaustive structural check.
    Verify {
        which: Check,
        #[arg(long, conflicts_with = "zbound")]
        p: Option<u64>,
        /// Entry bound for the integer slice (thm1.2 only).
        #[arg(long)]
        zbound: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Check the cobordism relations through generator compositions.
    Relations {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    #[value(name = "thm1.1")]
    Thm11,
    #[value(name = "thm1.2")]
    Thm12,
    #[value(name = "prop3.4")]
    Prop34,
    #[value(name = "char2")]
    Char2,
    #[value(name = "noncomm")]
    Noncomm,
}

/// Sizes the global worker pool from `FROBKNOT_THREADS`, if set.
pub fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("FROBKNOT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse(format!("FROBKNOT_THREADS must be a positive integer, got {v:?}")))?;
    // a pool that already exists (e.g. in tests) is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    Ok(writeln!(out, "{text}")?)
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Homology {
            input,
            algebra,
            a5,
            ring,
            normalize,
            json,
        } => {
            let d = load_diagram(&input)?;
            let table = homology(&d, algebra.as_deref(), a5.as_deref(), ring.as_deref(), normalize)?;
            if json {
                emit(out, &pretty(&table)?)?;
            } else {
                emit(out, table.to_text().trim_end())?;
                emit(out, &format!("total rank: {}", table.total_rank()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Bracket { input, json } => {
            let b = kauffman_bracket(&load_diagram(&input)?).to_string();
            emit(out, &if json { pretty(&json!({ "bracket": b }))? } else { b })?;
            Ok(EXIT_OK)
        }
        Command::CheckAlgebra { file, json } => {
            let report = with_algebra_file(&file, |f| Ok(serde_json::to_value(f.check_axioms())))?;
            emit(out, &render_flags(&report?, json)?)?;
            Ok(EXIT_OK)
        }
        Command::Relations { file, json } => {
            let report = with_algebra_file(&file, |f| Ok(serde_json::to_value(f.verify_n2cob_relations())))?;
            emit(out, &render_flags(&report?, json)?)?;
            Ok(EXIT_OK)
        }
        Command::Classify { file, p, json } => classify(&file, p, json, out),
        Command::Verify { which, p, zbound, json } => {
            let report = verify(which, p, zbound)?;
            if json {
                emit(out, &pretty(&report)?)?;
            } else {
                emit(out, &report.to_string())?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
    }
}

fn render_flags(v: &Value, json: bool) -> Result<String> {
    if json {
        return pretty(v);
    }
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected an object".into()))?;
    Ok(obj
        .iter()
        .map(|(k, v)| format!("{k}: {v}"))
        .collect::<Vec<_>>()
        .join("\n"))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

fn load_diagram(input: &str) -> Result<LinkDiagram> {
    match input.strip_prefix("builder:") {
        Some(name) => builder(name),
        None => parse_pd(&read(Path::new(input))?),
    }
}

fn polynomial_ring_error() -> Error {
    Error::Unsupported("homology over the generic ring Z[h,t] is not computed; specialize with --a5 h,t".into())
}

fn parse_ring(s: &str) -> Result<RingSpec> {
    if s.contains('[') {
        return Err(polynomial_ring_error());
    }
    s.parse()
}

fn parse_a5(s: &str) -> Result<A5Params> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts[..] {
        [h, t] => match (h.parse(), t.parse()) {
            (Ok(h), Ok(t)) => Ok(A5Params { h, t }),
            _ => Err(polynomial_ring_error()),
        },
        _ => Err(Error::Parse(format!("--a5 expects two integers `h,t`, got {s:?}"))),
    }
}

/// Reads algebra JSON, diagnosing a polynomial coefficient ring.
fn read_algebra_json(path: &Path) -> Result<FrobeniusJson> {
    let text = read(path)?;
    let raw: Value = serde_json::from_str(&text)?;
    if raw.get("ring").is_some_and(|r| r.to_string().contains('[')) {
        return Err(polynomial_ring_error());
    }
    Ok(serde_json::from_value(raw)?)
}

macro_rules! dispatch_ring {
    ($spec:expr, |$r:ident| $body:expr) => {
        match $spec {
            RingSpec::Integers => {
                let $r = Integers;
                $body
            }
            RingSpec::Rationals => {
                let $r = Rationals;
                $body
            }
            RingSpec::PrimeField { p } => {
                let $r = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn with_algebra_file<T>(path: &Path, f: impl Fn(&dyn AlgebraView) -> Result<T>) -> Result<T> {
    let j = read_algebra_json(path)?;
    dispatch_ring!(j.ring, |r| f(&FrobeniusData::from_json(r, &j)?))
}

/// The ring-independent checks the CLI reports.
trait AlgebraView {
    fn check_axioms(&self) -> crate::frobenius::AxiomReport;
    fn verify_n2cob_relations(&self) -> crate::frobenius::RelationReport;
}

impl<R: Ring> AlgebraView for FrobeniusData<R> {
    fn check_axioms(&self) -> crate::frobenius::AxiomReport {
        FrobeniusData::check_axioms(self)
    }

    fn verify_n2cob_relations(&self) -> crate::frobenius::RelationReport {
        FrobeniusData::verify_n2cob_relations(self)
    }
}

fn homology(
    d: &LinkDiagram,
    algebra: Option<&Path>,
    a5_arg: Option<&str>,
    ring: Option<&str>,
    normalize: bool,
) -> Result<HomologyTable> {
    let ring = ring.map(parse_ring).transpose()?;
    match algebra {
        Some(path) => {
            let j = read_algebra_json(path)?;
            match ring {
                // values are reread in the requested ring
                Some(spec) => dispatch_ring!(spec, |r| build_complex(
                    d,
                    &FrobeniusData::from_json_values(r, &j)?,
                    normalize
                )?
                .homology()),
                None => dispatch_ring!(j.ring, |r| build_complex(
                    d,
                    &FrobeniusData::from_json(r, &j)?,
                    normalize
                )?
                .homology()),
            }
        }
        None => {
            let params = a5_arg.map(parse_a5).transpose()?.unwrap_or(A5Params { h: 0, t: 0 });
            let base = a5(params);
            dispatch_ring!(ring.unwrap_or(RingSpec::Integers), |r| build_complex(
                d,
                &base.change_ring(r),
                normalize
            )?
            .homology())
        }
    }
}

fn classify(path: &Path, p: u64, json: bool, out: &mut dyn Write) -> Result<i32> {
    let text = read(path)?;
    let j: MultTableJson = serde_json::from_str(&text)?;
    let f = PrimeField::new(p)?;
    let t = MultTable::from_json_values(f, &j)?;
    let found = if t.is_commutative() {
        let t = t.as_commutative().unwrap_or(t);
        match Classifier::new(f).classify(&t) {
            Ok((fam, g)) => Some((fam.to_string(), g)),
            Err(Error::ClassificationGap(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        if !t.is_associative_full() {
            return Err(Error::Algebra("table is not associative".into()));
        }
        let targets = verifier::noncommutative_targets(&f)?;
        let names = ["nc_left", "nc_right"];
        let mut hit = None;
        for (name, target) in names.iter().zip(&targets) {
            if let Some(g) = isomorphic(&t, target)? {
                hit = Some((name.to_string(), g));
                break;
            }
        }
        hit
    };
    let value = match &found {
        Some((fam, g)) => json!({ "class": fam, "base_change": g }),
        None => json!({ "class": null }),
    };
    if json {
        emit(out, &pretty(&value)?)?;
    } else {
        match &found {
            Some((fam, g)) => emit(out, &format!("{fam}\nbase change: {g:?}"))?,
            None => emit(out, "no representative matches")?,
        }
    }
    Ok(if found.is_some() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn verify(which: Check, p: Option<u64>, zbound: Option<i64>) -> Result<Report> {
    if zbound.is_some() && which != Check::Thm12 {
        return Err(Error::Unsupported("--zbound applies only to thm1.2".into()));
    }
    let each = |name: &str, ps: &[u64], f: fn(u64) -> Result<Report>| -> Result<Report> {
        let parts = match p {
            Some(p) => vec![f(p)?],
            None => ps.iter().map(|&p| f(p)).collect::<Result<Vec<_>>>()?,
        };
        Ok(Report::merge(name, parts))
    };
    match which {
        Check::Thm11 => each("thm1.1", &[2, 3], verifier::verify_frobenius_from_surjectivity),
        Check::Thm12 => {
            let spaces = match (p, zbound) {
                (Some(p), _) => vec![SearchSpace::field(p)?],
                (None, Some(b)) => vec![SearchSpace::bounded_z(b)?],
                (None, None) => vec![
                    SearchSpace::field(2)?,
                    SearchSpace::field(3)?,
                    SearchSpace::field(5)?,
                    SearchSpace::bounded_z(2)?,
                ],
            };
            let parts = spaces
                .into_iter()
                .map(verifier::verify_unital_if_surjective)
                .collect::<Result<Vec<_>>>()?;
            Ok(Report::merge("thm1.2", parts))
        }
        Check::Prop34 => each("prop3.4", &[3, 5], verifier::verify_family_conditions),
        Check::Char2 => match p {
            Some(p) if p != 2 => Err(Error::Unsupported("char2 runs over F_2 only".into())),
            _ => verifier::verify_char2_classification(),
        },
        Check::Noncomm => each("noncomm", &[2, 3], verifier::verify_noncommutative),
    }
}
