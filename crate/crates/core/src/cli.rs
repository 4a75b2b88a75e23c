//! Command line front end.
//!
//! Exit codes: `0` valid, `1` invalid (or not a curve), `2` malformed input
//! or usage error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::curveclass::classify;
use crate::cycle::{betti_check, cycle_class, notation, validate_cycle, CycleConfig};
use crate::deform::{smooth_node, smooth_to_nodal, Smoothed, SmoothingOutcome};
use crate::divisor::{validate_maximal_divisor, MaximalDivisorConfig};
use crate::error::Error;
use crate::fixtures::{self, Config, Fixture};
use crate::graph::DivisorGraph;
use crate::lattice::ClassVector;
use crate::oracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "donlat", version, about = "Curve classes in the Donaldson basis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a class vector read as a JSON array.
    Classify(InputArgs),
    /// Print a bundled fixture.
    Fixture { name: String },
    /// Validate a cycle, a maximal divisor or a fixture.
    Validate(InputArgs),
    /// Count enumerated cycles per length and verdict.
    Census {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cap: CapArgs,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// List the cycles of `s` curves in rank `n`.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        no_symmetry: bool,
        #[command(flatten)]
        cap: CapArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Smooth the node between curves `i` and `i+1` of a cycle.
    Smooth {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Keep smoothing at position 0 down to a single curve.
        #[arg(long)]
        iterate: bool,
    },
    /// Emit the dual graph in DOT.
    Dot(InputArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// JSON input file; standard input when absent.
    pub file: Option<PathBuf>,
    /// Use a bundled fixture instead of a file.
    #[arg(long, conflicts_with = "file")]
    pub fixture: Option<String>,
}

#[derive(Args, Debug)]
pub struct CapArgs {
    #[arg(long, env = "DONLAT_CAP", default_value_t = oracle::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Dot,
}

/// Failure carrying its exit code.
struct Exit {
    code: i32,
    message: String,
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidCycle(_) | Error::InvalidDivisor(_) | Error::NotPartitionCase(_) => EXIT_INVALID,
            _ => EXIT_MALFORMED,
        };
        Exit { code, message: e.to_string() }
    }
}

fn malformed(message: impl Into<String>) -> Exit {
    Exit {
        code: EXIT_MALFORMED,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Exit>;

/// Parse `args` (program name first) and run. Never panics on bad input.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Classify(input) => cmd_classify(&input, stdin, out),
        Command::Fixture { name } => {
            let f = fixtures::by_name(&name)?;
            emit_json(out, &f)?;
            Ok(EXIT_OK)
        }
        Command::Validate(input) => cmd_validate(&input, stdin, out),
        Command::Census { n, cap, format } => cmd_census(n, cap.cap, format, out),
        Command::Enumerate {
            n,
            s,
            no_symmetry,
            cap,
            format,
        } => cmd_enumerate(n, s, !no_symmetry, cap.cap, format, out),
        Command::Smooth { input, i, iterate } => cmd_smooth(&input, i, iterate, stdin, out),
        Command::Dot(input) => cmd_dot(&input, stdin, out),
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Exit> {
    out.write_all(text.as_bytes())
        .map_err(|e| malformed(format!("write failed: {e}")))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Exit> {
    let text = serde_json::to_string_pretty(value).map_err(|e| malformed(e.to_string()))?;
    write_out(out, &text)?;
    write_out(out, "\n")
}

fn read_text(input: &InputArgs, stdin: &mut dyn Read) -> Result<String, Exit> {
    match &input.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| malformed(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| malformed(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn read_value(input: &InputArgs, stdin: &mut dyn Read) -> Result<Value, Exit> {
    let text = read_text(input, stdin)?;
    serde_json::from_str(&text).map_err(|e| malformed(format!("malformed JSON: {e}")))
}

/// A configuration read from a fixture name, a fixture dump, a divisor or a cycle.
struct Loaded {
    fixture: Option<Fixture>,
    config: Config,
}

fn load_config(input: &InputArgs, stdin: &mut dyn Read) -> Result<Loaded, Exit> {
    if let Some(name) = &input.fixture {
        let f = fixtures::by_name(name)?;
        return Ok(Loaded {
            config: f.config.clone(),
            fixture: Some(f),
        });
    }
    let value = read_value(input, stdin)?;
    let schema = |e: serde_json::Error| malformed(format!("schema violation: {e}"));
    let obj = value
        .as_object()
        .ok_or_else(|| malformed("expected a JSON object"))?;
    if obj.contains_key("config") {
        let f: Fixture = serde_json::from_value(value).map_err(schema)?;
        Ok(Loaded {
            config: f.config.clone(),
            fixture: Some(f),
        })
    } else if obj.contains_key("cycle") {
        let d: MaximalDivisorConfig = serde_json::from_value(value).map_err(schema)?;
        Ok(Loaded {
            fixture: None,
            config: Config::Divisor(d),
        })
    } else if obj.contains_key("curves") {
        let c: CycleConfig = serde_json::from_value(value).map_err(schema)?;
        Ok(Loaded {
            fixture: None,
            config: Config::Cycle(c),
        })
    } else {
        Err(malformed("expected a cycle, a divisor or a fixture"))
    }
}

fn cmd_classify(input: &InputArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    if input.fixture.is_some() {
        return Err(malformed("classify reads a class vector, not a fixture"));
    }
    let value = read_value(input, stdin)?;
    let x: ClassVector =
        serde_json::from_value(value).map_err(|e| malformed(format!("expected an integer array: {e}")))?;
    let kind = classify(&x);
    let text = serde_json::to_string(&kind).map_err(|e| malformed(e.to_string()))?;
    write_out(out, &text)?;
    write_out(out, "\n")?;
    Ok(if kind.is_curve() { EXIT_OK } else { EXIT_INVALID })
}

fn cycle_report(c: &CycleConfig) -> Value {
    let report = validate_cycle(c);
    let mut v = json!({
        "kind": "cycle",
        "valid": report.is_valid(),
        "violations": report.violations,
    });
    if let Ok(w) = c.weights() {
        v["sequence"] = json!(notation(&w));
    }
    if report.is_valid() {
        if let Ok(b) = betti_check(c) {
            v["betti"] = json!(b);
        }
        if let Ok((class, set)) = cycle_class(c) {
            v["cycle_class"] = json!(class);
            v["cycle_set"] = json!(set);
        }
    }
    v
}

fn cmd_validate(input: &InputArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let loaded = load_config(input, stdin)?;
    let (valid, report) = match &loaded.config {
        Config::Cycle(c) => {
            let r = cycle_report(c);
            (r["valid"] == json!(true), r)
        }
        Config::Divisor(d) => {
            let r = validate_maximal_divisor(d);
            let total = crate::lattice::sum(&d.all_curves()).ok();
            let v = json!({
                "kind": "divisor",
                "valid": r.is_valid(),
                "violations": r.violations,
                "trace": r.trace,
                "order": r.order,
                "total_class": total,
            });
            (r.is_valid(), v)
        }
    };
    emit_json(out, &report)?;
    Ok(if valid { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_census(n: usize, cap: usize, format: Format, out: &mut dyn Write) -> CmdResult {
    let rows = oracle::census(n, cap)?;
    match format {
        Format::Tsv => write_out(out, &oracle::census_tsv(&rows))?,
        Format::Json => emit_json(out, &rows)?,
        Format::Dot => return Err(malformed("census supports --format tsv or json")),
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(n: usize, s: usize, symmetry: bool, cap: usize, format: Format, out: &mut dyn Write) -> CmdResult {
    let cycles = oracle::enumerate_cycles(n, s, symmetry, cap)?;
    match format {
        Format::Json => emit_json(out, &cycles)?,
        Format::Tsv => {
            let mut text = String::from("index\tsequence\tverdict\tcurves\n");
            for (k, c) in cycles.iter().enumerate() {
                let seq = c.weights().map(|w| notation(&w)).unwrap_or_default();
                let verdict = betti_check(c).map(|b| b.verdict.to_string()).unwrap_or_default();
                let curves: Vec<String> = c.curves().iter().map(|x| x.to_string()).collect();
                text.push_str(&format!("{k}\t{seq}\t{verdict}\t{}\n", curves.join(" ")));
            }
            write_out(out, &text)?;
        }
        Format::Dot => return Err(malformed("enumerate supports --format json or tsv")),
    }
    Ok(EXIT_OK)
}

fn smoothing_record(o: &SmoothingOutcome) -> Value {
    match &o.result {
        Smoothed::Cycle(c) => json!({ "cycle": c, "exceptional": o.exceptional }),
        Smoothed::Elliptic { class } => json!({ "elliptic": class, "exceptional": Value::Null }),
    }
}

fn cmd_smooth(input: &InputArgs, i: usize, iterate: bool, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let loaded = load_config(input, stdin)?;
    let cycle = loaded.config.cycle();
    if iterate {
        for step in smooth_to_nodal(cycle)? {
            let line = serde_json::to_string(&smoothing_record(&step)).map_err(|e| malformed(e.to_string()))?;
            write_out(out, &line)?;
            write_out(out, "\n")?;
        }
    } else {
        emit_json(out, &smoothing_record(&smooth_node(cycle, i)?))?;
    }
    Ok(EXIT_OK)
}

fn cmd_dot(input: &InputArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let loaded = load_config(input, stdin)?;
    let graph = match &loaded.fixture {
        Some(f) => DivisorGraph::from_fixture(f)?,
        None => {
            let classes = match &loaded.config {
                Config::Divisor(d) => d.all_curves(),
                Config::Cycle(c) => c.curves().to_vec(),
            };
            DivisorGraph::from_classes("divisor", &classes)?
        }
    };
    write_out(out, &graph.to_dot())?;
    Ok(EXIT_OK)
}
