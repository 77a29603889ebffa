//! OpenQASM 2.0 subset: `x y z s sdg t tdg h ry cx cz ccx` on one `qreg`.
//!
//! Gates outside that set are written as their base-gate expansion wrapped in
//! `// rphase: {"begin": <gate>}` ... `// rphase: {"end": true}` comments, so
//! they survive a round trip. Gates with no fixed expansion (Toffolis with
//! three or more controls, uncatalogued phase tables) are written as a lone
//! `// rphase: {"gate": <gate>}` comment. Ancilla roles go in a
//! `// rphase: {"roles": [...]}` comment.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::lower::expand_fixed;
use super::{Circuit, CircuitError, Control, Gate, QubitId, QubitRole};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unsupported gate '{name}'")]
    UnsupportedGate {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("{line}:{column}: marker gates are not allowed in strict mode")]
    MarkerInStrictMode { line: usize, column: usize },
    #[error("{line}:{column}: {source}")]
    Circuit {
        line: usize,
        column: usize,
        source: CircuitError,
    },
}

const PREFIX: &str = "// rphase:";

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Meta {
    Roles { roles: Vec<QubitRole> },
    Begin { begin: Gate },
    End { end: bool },
    Single { gate: Gate },
}

fn meta_line(m: &Meta) -> String {
    format!(
        "{PREFIX} {}",
        serde_json::to_string(m).expect("metadata serializes")
    )
}

fn ry_angle(m: i32) -> String {
    match m {
        0 => "0".to_string(),
        1 => "pi/4".to_string(),
        -1 => "-pi/4".to_string(),
        _ => format!("{m}*pi/4"),
    }
}

/// The native statement for `g`, if it has one.
fn native(g: &Gate) -> Option<String> {
    let pos = |c: &Control| !c.is_negative();
    Some(match g {
        Gate::X(q) => format!("x q[{}];", q.0),
        Gate::Y(q) => format!("y q[{}];", q.0),
        Gate::Z(q) => format!("z q[{}];", q.0),
        Gate::P(q) => format!("s q[{}];", q.0),
        Gate::Pdg(q) => format!("sdg q[{}];", q.0),
        Gate::T(q) => format!("t q[{}];", q.0),
        Gate::Tdg(q) => format!("tdg q[{}];", q.0),
        Gate::H(q) => format!("h q[{}];", q.0),
        Gate::Ry {
            qubit,
            quarter_turns,
        } => format!("ry({}) q[{}];", ry_angle(*quarter_turns), qubit.0),
        Gate::Cnot { control, target } if pos(control) => {
            format!("cx q[{}],q[{}];", control.qubit.0, target.0)
        }
        Gate::Cz { control, target } if pos(control) => {
            format!("cz q[{}],q[{}];", control.qubit.0, target.0)
        }
        Gate::Tof { controls, target } if controls.len() == 2 && controls.iter().all(pos) => {
            format!(
                "ccx q[{}],q[{}],q[{}];",
                controls[0].qubit.0, controls[1].qubit.0, target.0
            )
        }
        _ => return None,
    })
}

fn emit_gate(out: &mut String, g: &Gate) {
    if let Some(s) = native(g) {
        out.push_str(&s);
        out.push('\n');
        return;
    }
    match expand_fixed(g) {
        Some(body) => {
            let _ = writeln!(out, "{}", meta_line(&Meta::Begin { begin: g.clone() }));
            for b in &body {
                emit_gate(out, b);
            }
            let _ = writeln!(out, "{}", meta_line(&Meta::End { end: true }));
        }
        None => {
            let _ = writeln!(out, "{}", meta_line(&Meta::Single { gate: g.clone() }));
        }
    }
}

/// Writes `c` as OpenQASM 2.0.
pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    if c.roles().iter().any(|r| r.is_ancilla()) {
        out.push_str(&meta_line(&Meta::Roles {
            roles: c.roles().to_vec(),
        }));
        out.push('\n');
    }
    let _ = writeln!(out, "qreg q[{}];", c.width());
    for g in c.gates() {
        emit_gate(&mut out, g);
    }
    out
}

/// Parsing options.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ParseOptions {
    /// Reject marker gates and ignore all other gate metadata, keeping only
    /// native statements.
    pub strict: bool,
}

struct Parser {
    strict: bool,
    reg: Option<(String, usize)>,
    roles: Option<Vec<QubitRole>>,
    gates: Vec<Gate>,
    /// Open `begin` block: the gate and its start position.
    open: Option<(Gate, usize, usize)>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

impl Parser {
    fn meta(&mut self, json: &str, line: usize, column: usize) -> Result<(), ParseError> {
        let m: Meta = serde_json::from_str(json)
            .map_err(|e| syntax(line, column, format!("bad rphase metadata: {e}")))?;
        let is_marker = |g: &Gate| matches!(g, Gate::Marker { .. });
        match m {
            Meta::Roles { roles } => self.roles = Some(roles),
            Meta::Begin { begin } => {
                if self.open.is_some() {
                    return Err(syntax(line, column, "nested rphase begin"));
                }
                if self.strict && is_marker(&begin) {
                    return Err(ParseError::MarkerInStrictMode { line, column });
                }
                self.open = Some((begin, line, column));
            }
            Meta::End { .. } => {
                let (g, ..) = self
                    .open
                    .take()
                    .ok_or_else(|| syntax(line, column, "rphase end without begin"))?;
                if !self.strict {
                    self.gates.push(g);
                }
            }
            Meta::Single { gate } => {
                if self.strict {
                    return Err(if is_marker(&gate) {
                        ParseError::MarkerInStrictMode { line, column }
                    } else {
                        ParseError::UnsupportedGate {
                            line,
                            column,
                            name: gate.name(),
                        }
                    });
                }
                self.gates.push(gate);
            }
        }
        Ok(())
    }

    fn statement(&mut self, stmt: &str, line: usize, column: usize) -> Result<(), ParseError> {
        let (head, rest) = match stmt.find(|ch: char| ch.is_whitespace() || ch == '(') {
            Some(p) => (&stmt[..p], stmt[p..].trim_start()),
            None => (stmt, ""),
        };
        match head {
            "OPENQASM" => {
                if rest != "2.0" {
                    return Err(syntax(line, column, format!("unsupported version '{rest}'")));
                }
                return Ok(());
            }
            "include" | "creg" => return Ok(()),
            "qreg" => {
                if self.reg.is_some() {
                    return Err(syntax(line, column, "only one qreg is supported"));
                }
                let (name, size) = parse_indexed(rest)
                    .ok_or_else(|| syntax(line, column, "expected qreg name[size]"))?;
                self.reg = Some((name.to_string(), size));
                return Ok(());
            }
            _ => {}
        }
        let (param, args) = if let Some(r) = rest.strip_prefix('(') {
            let close = r
                .find(')')
                .ok_or_else(|| syntax(line, column, "unclosed parameter list"))?;
            (Some(r[..close].trim()), r[close + 1..].trim())
        } else {
            (None, rest)
        };
        let (reg, width) = self
            .reg
            .clone()
            .ok_or_else(|| syntax(line, column, "gate before qreg"))?;
        let qubits = args
            .split(',')
            .map(|a| {
                let (name, idx) = parse_indexed(a.trim())
                    .ok_or_else(|| syntax(line, column, format!("bad qubit argument '{a}'")))?;
                if name != reg {
                    return Err(syntax(line, column, format!("unknown register '{name}'")));
                }
                if idx >= width {
                    return Err(syntax(line, column, format!("{name}[{idx}] out of range")));
                }
                Ok(idx)
            })
            .collect::<Result<Vec<usize>, ParseError>>()?;
        let arity = |n: usize| {
            if qubits.len() == n {
                Ok(())
            } else {
                Err(syntax(
                    line,
                    column,
                    format!("{head} takes {n} qubits, got {}", qubits.len()),
                ))
            }
        };
        let q0 = || QubitId(qubits[0]);
        let gate = match head {
            "x" | "y" | "z" | "s" | "sdg" | "t" | "tdg" | "h" => {
                arity(1)?;
                match head {
                    "x" => Gate::X(q0()),
                    "y" => Gate::Y(q0()),
                    "z" => Gate::Z(q0()),
                    "s" => Gate::P(q0()),
                    "sdg" => Gate::Pdg(q0()),
                    "t" => Gate::T(q0()),
                    "tdg" => Gate::Tdg(q0()),
                    _ => Gate::H(q0()),
                }
            }
            "ry" => {
                arity(1)?;
                let p = param.ok_or_else(|| syntax(line, column, "ry needs an angle"))?;
                let m = parse_quarter_turns(p).ok_or_else(|| {
                    syntax(line, column, format!("angle '{p}' is not a multiple of pi/4"))
                })?;
                Gate::ry(qubits[0], m)
            }
            "cx" => {
                arity(2)?;
                Gate::cx(qubits[0], qubits[1])
            }
            "cz" => {
                arity(2)?;
                Gate::cz(qubits[0], qubits[1])
            }
            "ccx" => {
                arity(3)?;
                Gate::ccx(qubits[0], qubits[1], qubits[2])
            }
            _ => {
                return Err(ParseError::UnsupportedGate {
                    line,
                    column,
                    name: head.to_string(),
                })
            }
        };
        if param.is_some() && head != "ry" {
            return Err(syntax(line, column, format!("{head} takes no parameter")));
        }
        super::validate_gate(&gate, width).map_err(|source| ParseError::Circuit {
            line,
            column,
            source,
        })?;
        if self.open.is_none() || self.strict {
            self.gates.push(gate);
        }
        Ok(())
    }
}

/// `name[index]` with optional whitespace.
fn parse_indexed(s: &str) -> Option<(&str, usize)> {
    let (name, rest) = s.split_once('[')?;
    let idx = rest.strip_suffix(']')?.trim().parse().ok()?;
    let name = name.trim();
    (!name.is_empty()).then_some((name, idx))
}

/// Angle in quarter turns (multiples of π/4). Accepts `pi`, `pi/N`, `K*pi`,
/// `K*pi/N` with an optional sign, and plain numbers close to a multiple.
fn parse_quarter_turns(s: &str) -> Option<i32> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.as_str()),
    };
    let m = if body.contains("pi") {
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, d.parse::<i64>().ok()?),
            None => (body, 1),
        };
        let k = match num.strip_suffix("pi")? {
            "" => 1,
            k => k.strip_suffix('*')?.parse::<i64>().ok()?,
        };
        if den == 0 || (4 * k) % den != 0 {
            return None;
        }
        4 * k / den
    } else {
        let x: f64 = body.parse().ok()?;
        let q = x / std::f64::consts::FRAC_PI_4;
        if (q - q.round()).abs() > 1e-9 {
            return None;
        }
        q.round() as i64
    };
    i32::try_from(if neg { -m } else { m }).ok()
}

/// Reads a circuit written in the supported subset.
pub fn parse_qasm(src: &str, opts: ParseOptions) -> Result<Circuit, ParseError> {
    let mut p = Parser {
        strict: opts.strict,
        reg: None,
        roles: None,
        gates: Vec::new(),
        open: None,
    };
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        let (code, comment) = match raw.find("//") {
            Some(i) => (&raw[..i], Some(i)),
            None => (raw, None),
        };
        let mut offset = 0;
        for piece in code.split_inclusive(';') {
            let start = offset + piece.len() - piece.trim_start().len();
            offset += piece.len();
            let trimmed = piece.trim();
            if trimmed.is_empty() {
                continue;
            }
            let Some(stmt) = trimmed.strip_suffix(';') else {
                return Err(syntax(line, start + 1, "missing ';'"));
            };
            p.statement(stmt.trim(), line, start + 1)?;
        }
        if let Some(i) = comment {
            if let Some(json) = raw[i..].strip_prefix(PREFIX) {
                p.meta(json.trim(), line, i + 1)?;
            }
        }
    }
    if let Some((_, line, column)) = p.open {
        return Err(syntax(line, column, "rphase begin without end"));
    }
    let (_, width) = p
        .reg
        .ok_or_else(|| syntax(1, 1, "no qreg declaration"))?;
    let at_end = |source| ParseError::Circuit {
        line: src.lines().count().max(1),
        column: 1,
        source,
    };
    let mut c = match p.roles {
        Some(roles) => {
            if roles.len() != width {
                return Err(at_end(CircuitError::RoleCount {
                    found: roles.len(),
                    width,
                }));
            }
            Circuit::with_roles(roles)
        }
        None => Circuit::new(width),
    };
    c.extend(p.gates).map_err(at_end)?;
    Ok(c)
}
