//! Command-line front end. Every path prints one JSON document; the exit
//! code is 0 on success, 2 on invalid input and 1 when an internal identity
//! check fails.

use std::ffi::OsString;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value as Json};
use wittstab_core::bott::{build_bott, export, verify_bott_suite};
use wittstab_core::forms::GramForm;
use wittstab_core::invariants::{witt_class, witt_ring_table};
use wittstab_core::lift::roundtrip_isomorphism_demo;
use wittstab_core::stab::{chain_from_json, colimit, exactness_check, GroupSeq};
use wittstab_core::{Error, RingElem, RingSpec};

/// Default seed for randomized subcommands.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Parser, Debug)]
#[command(name = "wittstab", version, about = "Exact Witt-group computations with JSON output")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Witt classes of symmetric forms
    #[command(subcommand)]
    Witt(WittCmd),
    /// The Bott element matrix
    #[command(subcommand)]
    Bott(BottCmd),
    /// Direct limits and exactness of sequences of abelian groups
    #[command(subcommand)]
    Stab(StabCmd),
    /// Lifting along nilpotent extensions
    #[command(subcommand)]
    Lift(LiftCmd),
}

#[derive(Args, Debug)]
struct FormArgs {
    /// Ring tag: q, dyadic, fp:<p>
    #[arg(long)]
    ring: Option<String>,
    /// Diagonal entries, comma separated (fractions allowed: 1/2)
    #[arg(long, allow_hyphen_values = true)]
    diag: Option<String>,
    /// Gram matrix as a JSON list of rows
    #[arg(long)]
    gram: Option<String>,
    /// JSON file holding {"ring", "diag"} or {"ring", "epsilon", "gram"}
    #[arg(long)]
    file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum WittCmd {
    /// Invariants of one form
    Class(FormArgs),
    /// Whether two diagonal forms are Witt equivalent
    Equiv {
        #[arg(long)]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Group structure and tables of the Witt ring over F_p or Z[1/2]
    Ring {
        #[arg(long)]
        ring: String,
        /// Generator as diagonal entries; repeat for several (default: the standard set)
        #[arg(long = "gen", allow_hyphen_values = true)]
        generators: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum BottCmd {
    /// Check every matrix identity and report each outcome
    Verify,
    /// Print M, p and u entrywise
    Export,
}

#[derive(Subcommand, Debug)]
enum StabCmd {
    /// Direct limit of an eventually periodic sequence file
    Colim {
        #[arg(long)]
        file: String,
    },
    /// Nodes where a chain file fails to be exact
    Exact {
        #[arg(long)]
        file: String,
    },
}

#[derive(Subcommand, Debug)]
enum LiftCmd {
    /// Random lifts and conjugators over B[x]/(x^k)
    Demo {
        /// q or fp:<p>
        #[arg(long, default_value = "q")]
        base: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn error_json(kind: &str, message: &str) -> String {
    json!({"error": {"kind": kind, "message": message}}).to_string()
}

fn parse_entry(ring: &RingSpec, s: &str) -> Result<RingElem, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad entry {s:?}"));
    let q = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
    };
    RingElem::from_rational(ring, &q)
}

fn diag_form(ring: &RingSpec, list: &str) -> Result<GramForm, Error> {
    let entries = list
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_entry(ring, t))
        .collect::<Result<Vec<_>, _>>()?;
    GramForm::diagonal(ring, &entries)
}

fn read_json(path: &str) -> Result<Json, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn ring_arg(s: &str) -> Result<RingSpec, Error> {
    RingSpec::parse_tag(s)
}

fn form_from_args(a: &FormArgs) -> Result<GramForm, Error> {
    let given = [a.diag.is_some(), a.gram.is_some(), a.file.is_some()].iter().filter(|b| **b).count();
    if given != 1 {
        return Err(Error::InvalidParameter("give exactly one of --diag, --gram, --file".into()));
    }
    if let Some(path) = &a.file {
        if a.ring.is_some() {
            return Err(Error::InvalidParameter("--ring is read from the file".into()));
        }
        return GramForm::from_json(&read_json(path)?);
    }
    let ring = ring_arg(a.ring.as_deref().ok_or_else(|| Error::InvalidParameter("--ring is required".into()))?)?;
    if let Some(d) = &a.diag {
        return diag_form(&ring, d);
    }
    let rows: Json = serde_json::from_str(a.gram.as_deref().unwrap_or_default()).map_err(|e| Error::Parse(format!("--gram: {e}")))?;
    GramForm::from_json(&json!({"ring": ring.tag(), "gram": rows}))
}

fn dispatch(cmd: Command) -> Result<Json, Error> {
    match cmd {
        Command::Witt(WittCmd::Class(a)) => Ok(witt_class(&form_from_args(&a)?)?.to_json()),
        Command::Witt(WittCmd::Equiv { ring, left, right }) => {
            let ring = ring_arg(&ring)?;
            let (f, g) = (diag_form(&ring, &left)?, diag_form(&ring, &right)?);
            let (cf, cg) = (witt_class(&f)?, witt_class(&g)?);
            Ok(json!({"equivalent": cf == cg, "left": cf.to_json(), "right": cg.to_json()}))
        }
        Command::Witt(WittCmd::Ring { ring, generators }) => {
            let ring = ring_arg(&ring)?;
            let gens = generators
                .iter()
                .map(|g| diag_form(&ring, g))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(witt_ring_table(&ring, &gens)?.to_json())
        }
        Command::Bott(BottCmd::Verify) => Ok(verify_bott_suite(&build_bott()).to_json()),
        Command::Bott(BottCmd::Export) => Ok(export(&build_bott())),
        Command::Stab(StabCmd::Colim { file }) => Ok(colimit(&GroupSeq::from_json(&read_json(&file)?)?).to_json()),
        Command::Stab(StabCmd::Exact { file }) => {
            let chain = chain_from_json(&read_json(&file)?)?;
            let failures = exactness_check(&chain)?;
            Ok(json!({"exact": failures.is_empty(), "failures": failures}))
        }
        Command::Lift(LiftCmd::Demo { base, k, n, trials, seed }) => {
            let base = ring_arg(&base)?;
            Ok(roundtrip_isomorphism_demo(&base, k, n, trials, seed)?.to_json())
        }
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit code and the text for standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, error_json("Usage", e.to_string().trim())),
            };
        }
    };
    match catch_unwind(AssertUnwindSafe(|| dispatch(cli.command))) {
        Ok(Ok(v)) => (0, v.to_string()),
        Ok(Err(e)) => (2, error_json(e.kind(), &e.to_string())),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal assertion failed".into());
            (1, error_json("AssertionFailure", &msg))
        }
    }
}
