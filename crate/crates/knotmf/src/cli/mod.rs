//! Command-line front end and the verification suites.

pub mod verify;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::braid::BraidWord;
use crate::hecke::{from_braid, homflypt, trace_ocneanu};
use crate::localization::{parse_jm, superpoly_jm, syt_all, syt_enumerate, LocalizationError, Mode, Partition, DEFAULT_ORDER, SYT_MAX_STRANDS};

pub use verify::{Report, ReportStep, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

pub const STRAND_CAP: usize = 6;
pub const HECKE_RELATION_CAP: usize = 5;
pub const ORDER_CAP: i32 = 40;
pub const DEFAULT_SEED: u64 = 7;
pub const SEED_ENV: &str = "KNOTMF_SEED";

#[derive(Parser, Debug)]
#[command(name = "knotmf", version, about = "HOMFLYPT, two-strand matrix factorizations and localization characters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Residue,
    Syt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    MfSuite,
    Markov,
    Skein,
    Localization,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// HOMFLYPT polynomial of a braid closure, e.g. "1 1 -2".
    Homfly {
        #[arg(allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Allow more than 6 strands.
        #[arg(long)]
        force: bool,
    },
    /// Localization character of the closure of δ₁^{b₁}⋯δ_{n−1}^{b_{n−1}}.
    Superpoly {
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        jm: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Syt)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: i32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Hecke algebra image of a braid and its trace, or the relation checks.
    Hecke {
        #[arg(default_value = "", allow_hyphen_values = true)]
        braid: String,
        #[arg(long)]
        strands: Option<usize>,
        /// Check braid, quadratic and JM relations up to this many strands instead.
        #[arg(long)]
        relations: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a property suite and print a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Standard Young tableaux of a shape, or of every shape of size n.
    Tableaux {
        #[arg(long, conflicts_with = "shape")]
        n: Option<usize>,
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// Exit code and what goes to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn err(code: i32, msg: impl ToString) -> Self {
        Outcome { code, stdout: String::new(), stderr: msg.to_string() }
    }
}

/// KNOTMF_SEED, or the built-in default when unset.
pub fn default_seed() -> Result<u64, String> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{SEED_ENV}={s:?} is not an unsigned integer")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn loc_code(e: &LocalizationError) -> i32 {
    match e {
        LocalizationError::Guard { .. } => EXIT_GUARD,
        LocalizationError::Scalar(_) | LocalizationError::Braid(_) => EXIT_INPUT,
        _ => EXIT_PROPERTY,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Homfly { braid, strands, format, force } => run_homfly(braid, *strands, *format, *force),
        Command::Superpoly { jm, mode, order, format } => run_superpoly(jm, *mode, *order, *format),
        Command::Hecke { braid, strands, relations, format } => match relations {
            Some(n) => run_hecke_relations(*n),
            None => run_hecke(braid, *strands, *format),
        },
        Command::Verify { suite, seed, samples } => {
            let seed = match seed.map(Ok).unwrap_or_else(default_seed) {
                Ok(s) => s,
                Err(e) => return Outcome::err(EXIT_INPUT, e),
            };
            run_verify(*suite, seed, *samples)
        }
        Command::Tableaux { n, shape, force, format } => run_tableaux(*n, shape.as_deref(), *force, *format),
    }
}

fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord, Outcome> {
    BraidWord::parse(text, strands).map_err(|e| Outcome::err(EXIT_INPUT, e))
}

pub fn run_homfly(text: &str, strands: Option<usize>, format: Format, force: bool) -> Outcome {
    let b = match parse_braid(text, strands) {
        Ok(b) => b,
        Err(o) => return o,
    };
    if b.strands() > STRAND_CAP && !force {
        return Outcome::err(EXIT_GUARD, format!("{} strands exceeds the cap of {STRAND_CAP} (use --force)", b.strands()));
    }
    let p = homflypt(&b);
    Outcome::ok(match format {
        Format::Text => format!("{p}\n"),
        Format::Json => pretty(&json!({ "braid": b.to_text(), "strands": b.strands(), "homflypt": p.to_json(), "text": p.to_string() })),
    })
}

pub fn run_superpoly(jm: &str, mode: ModeArg, order: i32, format: Format) -> Outcome {
    let b = match parse_jm(jm) {
        Ok(b) => b,
        Err(e) => return Outcome::err(EXIT_INPUT, e),
    };
    if !(0..=ORDER_CAP).contains(&order) {
        return Outcome::err(EXIT_GUARD, format!("order {order} outside 0..={ORDER_CAP}"));
    }
    let mode = match mode {
        ModeArg::Residue => Mode::Residue,
        ModeArg::Syt => Mode::Syt,
    };
    let ch = match superpoly_jm(&b, mode, order) {
        Ok(c) => c,
        Err(e) => return Outcome::err(loc_code(&e), e),
    };
    let series = match ch.to_json() {
        Ok(s) => s,
        Err(e) => return Outcome::err(loc_code(&e), e),
    };
    Outcome::ok(match format {
        Format::Json => pretty(&json!({ "jm": b, "strands": ch.strands, "mode": mode.name(), "value": ch.value.to_string(), "character": series })),
        Format::Text => {
            let mut s = format!("n = {}, b = {:?}, mode = {}\nvalue: {}\n", ch.strands, b, mode.name(), ch.value);
            for (a, p) in ch.series().unwrap() {
                let _ = writeln!(s, "a^{a}: {p} + O({})", order + 1);
            }
            s
        }
    })
}

pub fn run_hecke(text: &str, strands: Option<usize>, format: Format) -> Outcome {
    let b = match parse_braid(text, strands) {
        Ok(b) => b,
        Err(o) => return o,
    };
    if b.strands() > STRAND_CAP {
        return Outcome::err(EXIT_GUARD, format!("{} strands exceeds the cap of {STRAND_CAP}", b.strands()));
    }
    let h = from_braid(&b);
    let tr = trace_ocneanu(&h);
    Outcome::ok(match format {
        Format::Text => format!("{h}\ntrace: {tr}\n"),
        Format::Json => {
            let terms: Vec<_> = h.terms().iter().map(|(w, c)| json!({ "w": w.one_line(), "coeff": c.to_string() })).collect();
            pretty(&json!({ "braid": b.to_text(), "strands": b.strands(), "terms": terms, "trace": tr.to_string() }))
        }
    })
}

pub fn run_hecke_relations(n: usize) -> Outcome {
    if n > HECKE_RELATION_CAP {
        return Outcome::err(EXIT_GUARD, format!("relations are checked up to {HECKE_RELATION_CAP} strands"));
    }
    report_outcome(&verify::hecke_relations(n))
}

pub fn run_verify(suite: Suite, seed: u64, samples: usize) -> Outcome {
    let r = match suite {
        Suite::MfSuite => verify::mf_suite(),
        Suite::Markov => verify::markov(seed, samples),
        Suite::Skein => verify::skein(seed, samples),
        Suite::Localization => verify::localization(seed, samples.min(5)),
    };
    report_outcome(&r)
}

fn report_outcome(r: &Report) -> Outcome {
    let mut o = Outcome::ok(pretty(r));
    if !r.passed {
        o.code = EXIT_PROPERTY;
        o.stderr = format!("{:?}", r.first_failure);
    }
    o
}

pub fn run_tableaux(n: Option<usize>, shape: Option<&str>, force: bool, format: Format) -> Outcome {
    let shapes = match (n, shape) {
        (_, Some(s)) => {
            let parts: Result<Vec<usize>, _> = s.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).map(str::parse).collect();
            match parts.map_err(|e| e.to_string()).and_then(|p| Partition::new(p).map_err(|e| e.to_string())) {
                Ok(p) => vec![p],
                Err(e) => return Outcome::err(EXIT_INPUT, e),
            }
        }
        (Some(n), None) => Partition::all(n),
        (None, None) => return Outcome::err(EXIT_INPUT, "give --n or --shape"),
    };
    let size = shapes.first().map_or(0, |p| p.size());
    if size > SYT_MAX_STRANDS && !force {
        return Outcome::err(EXIT_GUARD, format!("size {size} exceeds the cap of {SYT_MAX_STRANDS} (use --force)"));
    }
    let mut rows = Vec::new();
    for p in &shapes {
        let ts = syt_enumerate(p);
        rows.push((p.to_string(), ts.iter().map(|t| t.to_string()).collect::<Vec<_>>(), p.hook_length_count()));
    }
    let total: usize = rows.iter().map(|r| r.1.len()).sum();
    if n.is_some() {
        debug_assert_eq!(total, syt_all(size).len());
    }
    Outcome::ok(match format {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(s, t, h)| json!({ "shape": s, "count": t.len(), "hook_length": h.to_string(), "tableaux": t })).collect();
            pretty(&json!({ "size": size, "total": total, "shapes": v }))
        }
        Format::Text => {
            let mut s = String::new();
            for (shape, ts, h) in &rows {
                let _ = writeln!(s, "{shape}: {} tableaux (hook length {h})", ts.len());
                for t in ts {
                    let _ = writeln!(s, "  {t}");
                }
            }
            let _ = writeln!(s, "total {total}");
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        let mut v = vec!["knotmf"];
        v.extend_from_slice(args);
        run(&Cli::try_parse_from(v).unwrap())
    }

    #[test]
    fn homfly_codes() {
        assert_eq!(go(&["homfly", "", "--strands", "1"]).stdout.trim(), crate::hecke::homflypt(&BraidWord::identity(1)).to_string());
        assert_eq!(go(&["homfly", "0"]).code, EXIT_INPUT);
        assert_eq!(go(&["homfly", "1 2 3 4 5 6"]).code, EXIT_GUARD);
        assert_eq!(go(&["homfly", "1 1 1", "--format", "json"]).code, EXIT_OK);
    }

    #[test]
    fn superpoly_guard() {
        assert_eq!(go(&["superpoly", "--jm", "1,1,1,1,1", "--mode", "residue"]).code, EXIT_GUARD);
        assert_eq!(go(&["superpoly", "--jm", "x"]).code, EXIT_INPUT);
        assert_eq!(go(&["superpoly", "--jm", "1", "--mode", "residue"]).code, EXIT_OK);
    }

    #[test]
    fn tableaux_counts() {
        let o = go(&["tableaux", "--shape", "2,1"]);
        assert!(o.stdout.contains("2 tableaux"));
        assert_eq!(go(&["tableaux", "--n", "9"]).code, EXIT_GUARD);
        assert_eq!(go(&["tableaux", "--shape", "1,2"]).code, EXIT_INPUT);
    }

    #[test]
    fn verify_is_deterministic() {
        let a = go(&["verify", "skein", "--samples", "5", "--seed", "3"]);
        assert_eq!(a.code, EXIT_OK);
        assert_eq!(a, go(&["verify", "skein", "--samples", "5", "--seed", "3"]));
    }
}
