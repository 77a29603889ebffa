//! Command-line verbs: `synth`, `count`, `verify`, `rewrite`, `table`.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage or input error,
//! 3 internal invariant violated.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::circuit::qasm::{emit_qasm, parse_qasm, ParseOptions};
use crate::circuit::{
    count_resources, Circuit, Control, Equivalence, QubitId, TargetKind, TargetOp, TargetSpec,
};
use crate::constructions::{self, CatalogRequest, ConstructionError};
use crate::rewrite::{rewrite, RuleSet};
use crate::verify::check_implements;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rphase", version, about = "Relative-phase Toffoli synthesis, rewriting and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AncillaArg {
    Clean,
    Dirty,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Qasm,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpArg {
    X,
    Z,
    P,
}

impl From<OpArg> for TargetOp {
    fn from(o: OpArg) -> Self {
        match o {
            OpArg::X => TargetOp::X,
            OpArg::Z => TargetOp::Z,
            OpArg::P => TargetOp::P,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Tof,
    Rtof,
    Srtof,
    Identity,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EquivalenceArg {
    Exact,
    GlobalPhase,
    RelativePhase,
    SpecialForm,
}

impl From<EquivalenceArg> for Equivalence {
    fn from(e: EquivalenceArg) -> Self {
        match e {
            EquivalenceArg::Exact => Equivalence::Exact,
            EquivalenceArg::GlobalPhase => Equivalence::GlobalPhase,
            EquivalenceArg::RelativePhase => Equivalence::RelativePhase,
            EquivalenceArg::SpecialForm => Equivalence::SpecialForm,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a circuit from the catalog.
    Synth {
        /// Catalog entry (see `rphase synth --list`).
        #[arg(long, required_unless_present = "list")]
        gate: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "clean")]
        ancilla: AncillaArg,
        #[arg(long, value_enum, default_value = "x")]
        op: OpArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "qasm")]
        format: FormatArg,
        /// List catalog entries and exit.
        #[arg(long)]
        list: bool,
    },
    /// Count gates in a QASM file.
    Count { file: PathBuf },
    /// Check that a QASM circuit implements a target gate.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "tof")]
        kind: KindArg,
        /// Control qubits; prefix with '!' for a negative control.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        controls: Vec<String>,
        #[arg(long)]
        target: Option<usize>,
        /// Qubits the phases must not depend on (special form).
        #[arg(long, value_delimiter = ',')]
        xprime: Vec<usize>,
        #[arg(long, value_enum)]
        equivalence: Option<EquivalenceArg>,
        #[arg(long, value_enum, default_value = "x")]
        op: OpArg,
        /// Reject marker gates in the input.
        #[arg(long)]
        strict: bool,
    },
    /// Apply relative-phase replacements and inverse-pair cancellation.
    Rewrite {
        file: PathBuf,
        /// Comma-separated subset of prop1,prop2,prop3,cancel.
        #[arg(long, default_value = "prop1,prop2,cancel")]
        rules: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print gate counts of the multiple-control Toffoli constructions.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "4,5,6,11")]
        n_list: Vec<usize>,
        #[arg(long)]
        csv: bool,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

fn from_construction(e: ConstructionError) -> Failure {
    let code = match e {
        ConstructionError::ClaimMismatch { .. } => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn read_circuit(path: &PathBuf, strict: bool) -> Result<(String, Circuit), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let c = parse_qasm(&text, ParseOptions { strict })
        .map_err(|e| usage(format!("{}:{e}", path.display())))?;
    Ok((text, c))
}

fn write_output(path: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| usage(e.to_string())),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report types serialize")
}

fn parse_control(s: &str) -> Result<Control, Failure> {
    let (neg, num) = match s.strip_prefix('!') {
        Some(n) => (true, n),
        None => (false, s),
    };
    let q: usize = num
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad control '{s}'")))?;
    Ok(if neg { Control::neg(q) } else { Control::pos(q) })
}

fn run_command(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Synth {
            gate,
            n,
            k,
            ancilla,
            op,
            out: path,
            format,
            list,
        } => {
            if list {
                for (name, about) in constructions::CATALOG {
                    let _ = writeln!(out, "{name:18} {about}");
                }
                return Ok(EXIT_OK);
            }
            let name = gate.expect("clap enforces --gate");
            let req = CatalogRequest {
                n,
                k,
                dirty: matches!(ancilla, AncillaArg::Dirty),
                op: op.into(),
            };
            let built = constructions::build(&name, &req).map_err(from_construction)?;
            let report = json(&built.report);
            let text = match format {
                FormatArg::Json => format!("{}\n", json(&built)),
                FormatArg::Qasm if path.is_none() => {
                    format!("// resources: {report}\n{}", emit_qasm(&built.circuit))
                }
                FormatArg::Qasm => emit_qasm(&built.circuit),
            };
            write_output(&path, &text, out)?;
            if path.is_some() {
                let _ = writeln!(out, "{report}");
            }
            Ok(EXIT_OK)
        }
        Command::Count { file } => {
            let (_, c) = read_circuit(&file, false)?;
            let _ = writeln!(out, "{}", json(&count_resources(&c)));
            Ok(EXIT_OK)
        }
        Command::Verify {
            file,
            kind,
            controls,
            target,
            xprime,
            equivalence,
            op,
            strict,
        } => {
            let (_, c) = read_circuit(&file, strict)?;
            let controls = controls
                .iter()
                .map(|s| parse_control(s))
                .collect::<Result<Vec<_>, _>>()?;
            let target = match (kind, target) {
                (KindArg::Identity, t) => t.unwrap_or(0),
                (_, Some(t)) => t,
                (_, None) => return Err(usage("--target is required")),
            };
            let base = TargetSpec::tof(&[], target);
            let (kind, default_eq) = match kind {
                KindArg::Tof => (TargetKind::Tof, Equivalence::Exact),
                KindArg::Rtof => (TargetKind::Rtof, Equivalence::RelativePhase),
                KindArg::Srtof => (
                    TargetKind::Srtof(xprime.iter().map(|&q| QubitId(q)).collect()),
                    Equivalence::SpecialForm,
                ),
                KindArg::Identity => (TargetKind::Identity, Equivalence::Exact),
            };
            let spec = TargetSpec {
                kind,
                controls,
                equivalence: equivalence.map_or(default_eq, Into::into),
                op: op.into(),
                ..base
            };
            for q in spec.qubits() {
                if q.0 >= c.width() {
                    return Err(usage(format!("{q} is outside the circuit")));
                }
            }
            match check_implements(&c, &spec) {
                Ok(report) => {
                    let _ = writeln!(out, "{}", json(&report));
                    Ok(if report.passed(&spec) {
                        EXIT_OK
                    } else {
                        EXIT_VERIFY_FAILED
                    })
                }
                Err(e) => {
                    let _ = writeln!(out, "{}", serde_json::json!({ "error": e.to_string() }));
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        }
        Command::Rewrite { file, rules, out: path } => {
            let rules: RuleSet = rules.parse().map_err(usage)?;
            let (text, c) = read_circuit(&file, false)?;
            let outcome = rewrite(&c, &rules).map_err(|e| Failure {
                code: EXIT_INVARIANT,
                message: e.to_string(),
            })?;
            let result = if outcome.changed() {
                emit_qasm(&outcome.circuit)
            } else {
                text
            };
            write_output(&path, &result, out)?;
            Ok(EXIT_OK)
        }
        Command::Table { n_list, csv } => {
            let mut rows = Vec::new();
            for n in n_list {
                let build = |dirty| {
                    let req = CatalogRequest {
                        n: Some(n),
                        dirty,
                        ..CatalogRequest::default()
                    };
                    constructions::build("tof", &req).map_err(from_construction)
                };
                rows.push((n, build(false)?, build(true)?));
            }
            let header = ["n", "ancilla", "t", "cnot", "h", "pz", "ancillae"];
            if csv {
                let _ = writeln!(out, "{}", header.join(","));
            } else {
                let _ = writeln!(
                    out,
                    "{:>3} {:>7} {:>5} {:>5} {:>5} {:>4} {:>8}",
                    header[0], header[1], header[2], header[3], header[4], header[5], header[6]
                );
            }
            for (n, clean, dirty) in &rows {
                for (label, c) in [("clean", clean), ("dirty", dirty)] {
                    let r = &c.report;
                    if csv {
                        let _ = writeln!(
                            out,
                            "{n},{label},{},{},{},{},{}",
                            r.t, r.cnot, r.h, r.pz, r.ancilla.count
                        );
                    } else {
                        let _ = writeln!(
                            out,
                            "{n:>3} {label:>7} {:>5} {:>5} {:>5} {:>4} {:>8}",
                            r.t, r.cnot, r.h, r.pz, r.ancilla.count
                        );
                    }
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match run_command(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
