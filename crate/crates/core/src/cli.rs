//! Command-line frontend.
//!
//! Exit status: 0 on success, 1 when a checked claim fails, 2 on usage, input
//! or domain errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::fibonacci::theta_set;
use crate::net_frequency::{net_occurrences_bruteforce, net_occurrences_indexed, NetOccurrenceRecord};
use crate::occurrence::{find_occurrences, Occurrence};
use crate::onoc::prove_completeness;
use crate::thue_morse::{ab_sets, smallest_factorization, FactorizationKind, OccurrenceSets};
use crate::verify::{verify_fibonacci, verify_onoc_lemma_exhaustive, verify_onoc_lemma_random, verify_thue_morse};
use crate::words::{fib_word, tm_word, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "netocc", version, about = "Net occurrences in binary texts, Fibonacci and Thue-Morse words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Fib,
    Tm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TmOnly {
    Tm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Engine {
    Oracle,
    Indexed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    A,
    B,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a Fibonacci or Thue-Morse word.
    Gen {
        family: FamilyArg,
        #[arg(long)]
        order: usize,
        /// Exchange a and b.
        #[arg(long)]
        flip: bool,
        /// Write to this file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the net occurrences of a text.
    Netocc {
        #[command(flatten)]
        source: TextSource,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value = "oracle")]
        engine: Engine,
    },
    /// Compare a recurrence-built occurrence set with a direct scan.
    OccSets {
        family: FamilyArg,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        json: bool,
    },
    /// Smallest factorization of a Thue-Morse word around T_{i-j} (A) or its flip (B).
    Factorize {
        family: TmOnly,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum, ignore_case = true)]
        kind: KindArg,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification sweep.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Check that a cover is an ONOC and that no net occurrence lies outside it.
    OnocCheck {
        #[arg(long)]
        text: PathBuf,
        /// Members as "s,e" pairs joined by ";", e.g. "1,6;6,11;9,13".
        #[arg(long)]
        cover: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct TextSource {
    /// Read the text from a word file.
    #[arg(long)]
    text: Option<PathBuf>,
    /// Use the Fibonacci word of this order.
    #[arg(long)]
    fib: Option<usize>,
    /// Use the Thue-Morse word of this order.
    #[arg(long)]
    tm: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    /// Fibonacci claims for orders 7..=max-order.
    Fib {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Thue-Morse claims for orders 5..=max-order.
    Tm {
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// The bridging-super lemma on random or all short texts.
    Onoc {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        max_len: usize,
        /// Check every text of length up to max-len instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
}

/// Failure of a command, mapped onto an exit status.
enum Failure {
    Usage(String),
    Claim,
    /// The reader went away, e.g. `| head`.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs with process stdout/stderr. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Claim) => EXIT_CLAIM_FAILED,
        Err(Failure::Closed) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Caps the worker pool when `NETOCC_THREADS` is set.
fn configure_threads() -> std::result::Result<(), String> {
    let Ok(value) = std::env::var("NETOCC_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("NETOCC_THREADS must be a positive integer, got {value:?}"))?;
    // a pool already built by an earlier call in this process is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn io(e: std::io::Error) -> Failure {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        Failure::Closed
    } else {
        Failure::Usage(e.to_string())
    }
}

fn emit_json(out: &mut dyn Write, value: &impl Serialize) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| match e.io_error_kind() {
        Some(std::io::ErrorKind::BrokenPipe) => Failure::Closed,
        _ => Failure::Usage(e.to_string()),
    })?;
    writeln!(out).map_err(io)
}

fn claim(pass: bool) -> Outcome {
    if pass {
        Ok(())
    } else {
        Err(Failure::Claim)
    }
}

fn family_word(family: FamilyArg, order: usize) -> crate::Result<Word> {
    match family {
        FamilyArg::Fib => fib_word(order),
        FamilyArg::Tm => tm_word(order),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Gen {
            family,
            order,
            flip,
            output,
        } => {
            let mut w = family_word(family, order)?;
            if flip {
                w = w.flip();
            }
            match output {
                Some(path) => w.write_file(&path).map_err(io),
                None => writeln!(out, "{w}").map_err(io),
            }
        }
        Command::Netocc { source, json, engine } => {
            let text = match (source.text, source.fib, source.tm) {
                (Some(path), _, _) => Word::read_file(path)?,
                (_, Some(n), _) => fib_word(n)?,
                (_, _, Some(n)) => tm_word(n)?,
                _ => unreachable!("clap requires exactly one source"),
            };
            let records = match engine {
                Engine::Oracle => net_occurrences_bruteforce(&text)?,
                Engine::Indexed => net_occurrences_indexed(&text)?,
            };
            if json {
                emit_json(out, &records)
            } else {
                write_records(out, &records).map_err(io)
            }
        }
        Command::OccSets { family, order, j, json } => occ_sets(out, family, order, j, json),
        Command::Factorize {
            family: TmOnly::Tm,
            order,
            j,
            kind,
            json,
        } => {
            let kind = match kind {
                KindArg::A => FactorizationKind::A,
                KindArg::B => FactorizationKind::B,
            };
            let sf = smallest_factorization(order, j, kind)?;
            if json {
                emit_json(out, &sf)
            } else {
                let names: Vec<String> = sf.factorization.factors().iter().map(|f| f.to_string()).collect();
                writeln!(out, "({})", names.join(", ")).map_err(io)
            }
        }
        Command::Verify { target } => verify(out, target),
        Command::OnocCheck { text, cover, json } => {
            let text = Word::read_file(text)?;
            let members = parse_cover(&cover)?;
            let report = prove_completeness(&text, &members);
            if json {
                emit_json(out, &report)?;
            } else {
                let list = |v: &[Occurrence]| v.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" ");
                writeln!(out, "cover valid: {}", report.cover_valid).map_err(io)?;
                writeln!(out, "bnsos: {}", list(&report.bnsos)).map_err(io)?;
                writeln!(out, "offending super-occurrences: {}", list(&report.offending_supers)).map_err(io)?;
                writeln!(out, "agrees with brute force: {}", report.oracle_agrees).map_err(io)?;
            }
            claim(report.cover_valid && report.offending_supers.is_empty() && report.oracle_agrees)
        }
    }
}

fn write_records(out: &mut dyn Write, records: &[NetOccurrenceRecord]) -> std::io::Result<()> {
    let ext = |l: Option<crate::words::Letter>| l.map_or('-', |l| l.as_char());
    for r in records {
        writeln!(
            out,
            "{}\t{}\tleft={}\tright={}",
            r.occurrence,
            r.substring,
            ext(r.left),
            ext(r.right)
        )?;
    }
    Ok(())
}

fn occ_sets(out: &mut dyn Write, family: FamilyArg, order: usize, j: usize, json: bool) -> Outcome {
    #[derive(Serialize)]
    struct Comparison<T: Serialize> {
        family: &'static str,
        order: usize,
        j: usize,
        recurrence: T,
        oracle: T,
        equal: bool,
    }
    fn show<T: Serialize + std::fmt::Debug + PartialEq>(out: &mut dyn Write, c: Comparison<T>, json: bool, fmt: impl Fn(&T) -> String) -> Outcome {
        if json {
            emit_json(out, &c)?;
        } else {
            writeln!(out, "recurrence: {}", fmt(&c.recurrence)).map_err(io)?;
            writeln!(out, "oracle: {}", fmt(&c.oracle)).map_err(io)?;
            writeln!(out, "equal: {}", c.equal).map_err(io)?;
        }
        claim(c.equal)
    }
    let text = family_word(family, order)?;
    match family {
        FamilyArg::Fib => {
            let recurrence = theta_set(order, j)?;
            let oracle = find_occurrences(&fib_word(order - j)?, &text)?;
            let equal = recurrence == oracle;
            show(out, Comparison { family: "fib", order, j, recurrence, oracle, equal }, json, |s| s.to_string())
        }
        FamilyArg::Tm => {
            let recurrence = ab_sets(order, j)?;
            let w = tm_word(order - j)?;
            let oracle = OccurrenceSets {
                a_set: find_occurrences(&w, &text)?,
                b_set: find_occurrences(&w.flip(), &text)?,
            };
            let equal = recurrence == oracle;
            show(out, Comparison { family: "tm", order, j, recurrence, oracle, equal }, json, |s| {
                format!("A = {}, B = {}", s.a_set, s.b_set)
            })
        }
    }
}

fn verify(out: &mut dyn Write, target: VerifyTarget) -> Outcome {
    match target {
        VerifyTarget::Fib { max_order, json } => {
            let report = verify_fibonacci(max_order)?;
            finish_sweep(out, &report, json)
        }
        VerifyTarget::Tm { max_order, json } => {
            let report = verify_thue_morse(max_order)?;
            finish_sweep(out, &report, json)
        }
        VerifyTarget::Onoc {
            seed,
            samples,
            max_len,
            exhaustive,
            json,
        } => {
            let report = if exhaustive {
                verify_onoc_lemma_exhaustive(max_len)?
            } else {
                verify_onoc_lemma_random(seed, samples, max_len)?
            };
            if json {
                emit_json(out, &report)?;
            } else {
                writeln!(
                    out,
                    "samples {}, tested {}, skipped {}, covers checked {}, violations {}",
                    report.samples,
                    report.tested,
                    report.skipped,
                    report.covers_checked,
                    report.violations.len()
                )
                .map_err(io)?;
                for v in &report.violations {
                    let cover: Vec<String> = v.cover.iter().map(|o| o.to_string()).collect();
                    writeln!(out, "{}\tcover {}\toffending {}", v.text, cover.join(" "), v.offending).map_err(io)?;
                }
            }
            claim(report.holds())
        }
    }
}

fn finish_sweep(out: &mut dyn Write, report: &crate::verify::VerificationReport, json: bool) -> Outcome {
    if json {
        emit_json(out, report)?;
    } else {
        for (name, c) in &report.claims {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{status}\t{name}").map_err(io)?;
            if !c.pass {
                if let Some(w) = &c.witness {
                    writeln!(out, "\t{w}").map_err(io)?;
                }
            }
        }
        let counts: Vec<String> = report
            .net_occurrence_counts
            .iter()
            .map(|(i, c)| format!("{i}:{c}"))
            .collect();
        writeln!(out, "net occurrences per order: {}", counts.join(" ")).map_err(io)?;
        let failed = report.failures().count();
        writeln!(
            out,
            "{} claims, {} failed, {} ms",
            report.claims.len(),
            failed,
            report.wall_time_ms
        )
        .map_err(io)?;
    }
    claim(report.all_pass())
}

/// Parses `"s1,e1;s2,e2;..."`.
fn parse_cover(list: &str) -> std::result::Result<Vec<Occurrence>, Failure> {
    list.split(';')
        .map(|pair| {
            let bad = || Failure::Usage(format!("cover entry {pair:?} is not of the form s,e"));
            let (s, e) = pair.split_once(',').ok_or_else(bad)?;
            let s: usize = s.trim().parse().map_err(|_| bad())?;
            let e: usize = e.trim().parse().map_err(|_| bad())?;
            Ok(Occurrence::new(s, e)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("netocc").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cover_syntax() {
        let c = parse_cover("1,6; 6,11;9,13").ok().unwrap();
        assert_eq!(c[1], Occurrence { start: 6, end: 11 });
        assert!(parse_cover("1-6").is_err());
        assert!(parse_cover("6,1").is_err());
        assert!(parse_cover("").is_err());
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["gen", "fib"]).0, EXIT_USAGE);
        assert_eq!(call(&["gen", "fib", "--order", "7", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["netocc", "--fib", "7", "--tm", "5"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["gen", "fib", "--order", "0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("order"));
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn factorize_text() {
        let (code, out, _) = call(&["factorize", "tm", "--order", "6", "--j", "2", "--kind", "A"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "(T_4, flip(T_3), T_4, T_3, T_4)\n");
    }

    #[test]
    fn occ_sets_text() {
        let (code, out, _) = call(&["occ-sets", "fib", "--order", "7", "--j", "2"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "recurrence: {1, 6, 9}\noracle: {1, 6, 9}\nequal: true\n");
        assert_eq!(call(&["occ-sets", "tm", "--order", "4", "--j", "3"]).0, EXIT_USAGE);
    }
}
