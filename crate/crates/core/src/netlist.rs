//! Line-oriented textual netlist for mixed-radix circuits.
//!
//! ```text
//! # comment
//! dims 2 2 2
//! roles data data output
//! hadamard 0
//! not 1 1
//! inc 2 +1 ctrl 0:1
//! mct ctrl 0:1 ctrl 1:1 target 2
//! perm 0 1,0
//! diag 2 0,3.141592653589793 ctrl 0:1
//! not 1 1 levels 2
//! ```
//!
//! The `dims` line must come first. `roles` is optional. Every gate line is a
//! kind name, the target (after the keyword `target` for `mct`, positional
//! otherwise), kind parameters, any number of `ctrl wire:value` pairs and an
//! optional `levels L` restriction. Floats are written in Rust's shortest
//! round-trip form, so serialization is lossless.

use std::fmt::Write as _;

use crate::circuit::{Circuit, WireRole};
use crate::error::{Error, Result};
use crate::gate::{Control, GateKind, PlacedGate};

/// One gate line without trailing newline.
pub fn format_gate(g: &PlacedGate) -> String {
    let mut s = String::new();
    let name = g.kind.name();
    match &g.kind {
        GateKind::Mct => s.push_str(name),
        GateKind::Not { power } | GateKind::Phase { power } => {
            let _ = write!(s, "{name} {} {power}", g.target);
        }
        GateKind::Hadamard { .. } => {
            let _ = write!(s, "{name} {}", g.target);
        }
        GateKind::Increment { step } => {
            let _ = write!(s, "{name} {} {step:+}", g.target);
        }
        GateKind::Permutation(perm) => {
            let list: Vec<String> = perm.iter().map(|p| p.to_string()).collect();
            let _ = write!(s, "{name} {} {}", g.target, list.join(","));
        }
        GateKind::DiagonalPhase(angles) => {
            let list: Vec<String> = angles.iter().map(|a| format!("{a:?}")).collect();
            let _ = write!(s, "{name} {} {}", g.target, list.join(","));
        }
    }
    for c in &g.controls {
        let _ = write!(s, " ctrl {}:{}", c.wire, c.value);
    }
    if matches!(g.kind, GateKind::Mct) {
        let _ = write!(s, " target {}", g.target);
    }
    if let Some(levels) = g.levels {
        let _ = write!(s, " levels {levels}");
    }
    s
}

/// Serialize a circuit. The output is deterministic for a given circuit.
pub fn serialize_netlist(circuit: &Circuit) -> String {
    let mut out = String::new();
    let dims: Vec<String> = circuit.dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "dims {}", dims.join(" "));
    if let Some(roles) = circuit.roles() {
        let roles: Vec<&str> = roles.iter().map(|r| r.as_str()).collect();
        let _ = writeln!(out, "roles {}", roles.join(" "));
    }
    for g in circuit.gates() {
        out.push_str(&format_gate(g));
        out.push('\n');
    }
    out
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found `{tok}`")))
}

fn parse_gate(body: &str, line: usize) -> Result<PlacedGate> {
    let mut tokens = body.split_whitespace();
    let name = tokens.next().ok_or_else(|| Error::parse(line, "empty gate line"))?;
    let mut positional = Vec::new();
    let mut controls = Vec::new();
    let mut target = None;
    let mut levels = None;
    while let Some(tok) = tokens.next() {
        let mut next = |kw: &str| {
            tokens
                .next()
                .ok_or_else(|| Error::parse(line, format!("`{kw}` needs an argument")))
        };
        match tok {
            "ctrl" => {
                let arg = next("ctrl")?;
                let (w, v) = arg
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line, format!("control `{arg}` is not wire:value")))?;
                controls.push(Control::new(
                    parse_usize(w, line, "control wire")?,
                    parse_usize(v, line, "control value")?,
                ));
            }
            "target" => target = Some(parse_usize(next("target")?, line, "target wire")?),
            "levels" => levels = Some(parse_usize(next("levels")?, line, "level count")?),
            other => positional.push(other),
        }
    }

    let mut pos = positional.into_iter();
    let mut take_target = |pos: &mut std::vec::IntoIter<&str>| -> Result<usize> {
        if let Some(t) = target.take() {
            return Ok(t);
        }
        let tok = pos
            .next()
            .ok_or_else(|| Error::parse(line, format!("`{name}` needs a target wire")))?;
        parse_usize(tok, line, "target wire")
    };
    let param = |pos: &mut std::vec::IntoIter<&str>| -> Result<String> {
        pos.next()
            .map(str::to_string)
            .ok_or_else(|| Error::parse(line, format!("`{name}` is missing its parameter")))
    };

    let (kind, target) = match name {
        "mct" => (GateKind::Mct, take_target(&mut pos)?),
        "hadamard" | "hadamard_dg" => (
            GateKind::Hadamard {
                adjoint: name == "hadamard_dg",
            },
            take_target(&mut pos)?,
        ),
        "not" | "phase" | "inc" => {
            let t = take_target(&mut pos)?;
            let p = param(&mut pos)?;
            let value: i64 = p
                .parse()
                .map_err(|_| Error::parse(line, format!("bad integer parameter `{p}`")))?;
            let kind = match name {
                "not" => GateKind::Not { power: value },
                "phase" => GateKind::Phase { power: value },
                _ => GateKind::Increment { step: value },
            };
            (kind, t)
        }
        "perm" => {
            let t = take_target(&mut pos)?;
            let p = param(&mut pos)?;
            let perm = p
                .split(',')
                .map(|x| parse_usize(x, line, "permutation entry"))
                .collect::<Result<Vec<_>>>()?;
            (GateKind::Permutation(perm), t)
        }
        "diag" => {
            let t = take_target(&mut pos)?;
            let p = param(&mut pos)?;
            let angles = p
                .split(',')
                .map(|x| {
                    x.parse::<f64>()
                        .map_err(|_| Error::parse(line, format!("bad angle `{x}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            (GateKind::DiagonalPhase(angles), t)
        }
        other => return Err(Error::parse(line, format!("unknown gate `{other}`"))),
    };
    if let Some(extra) = pos.next() {
        return Err(Error::parse(line, format!("unexpected token `{extra}`")));
    }
    Ok(PlacedGate {
        kind,
        target,
        controls,
        levels,
    })
}

/// Parse a netlist produced by [`serialize_netlist`] (or written by hand).
pub fn parse_netlist(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let keyword = body.split_whitespace().next().unwrap_or("");
        match (&mut circuit, keyword) {
            (None, "dims") => {
                let dims = body
                    .split_whitespace()
                    .skip(1)
                    .map(|t| parse_usize(t, line, "wire dimension"))
                    .collect::<Result<Vec<_>>>()?;
                if dims.is_empty() {
                    return Err(Error::parse(line, "`dims` lists no wires"));
                }
                circuit = Some(Circuit::new(dims).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            (None, _) => return Err(Error::parse(line, "netlist must start with a `dims` line")),
            (Some(_), "dims") => return Err(Error::parse(line, "duplicate `dims` line")),
            (Some(c), "roles") => {
                if c.roles().is_some() || !c.is_empty() {
                    return Err(Error::parse(line, "`roles` must directly follow `dims`"));
                }
                let roles = body
                    .split_whitespace()
                    .skip(1)
                    .map(|t| t.parse::<WireRole>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                c.set_roles(roles)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            (Some(c), _) => {
                let gate = parse_gate(body, line)?;
                c.append(gate).map_err(|e| Error::parse(line, e.to_string()))?;
            }
        }
    }
    circuit.ok_or_else(|| Error::parse(0, "empty netlist"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_gate_roundtrip() {
        let mut c = Circuit::uniform(2, 2).unwrap();
        c.append(PlacedGate::new(GateKind::Not { power: 1 }, 0)).unwrap();
        let text = serialize_netlist(&c);
        assert_eq!(text, "dims 2 2\nnot 0 1\n");
        assert_eq!(parse_netlist(&text).unwrap(), c);
    }

    #[test]
    fn documented_examples_parse() {
        let text = "dims 2 2 2 3 3\n\
                    mct ctrl 0:1 ctrl 1:1 target 2\n\
                    hadamard 4\n\
                    inc 3 +1 ctrl 4:2\n";
        let c = parse_netlist(text).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.gates()[0].kind, GateKind::Mct);
        assert_eq!(c.gates()[0].target, 2);
        assert_eq!(c.gates()[2].kind, GateKind::Increment { step: 1 });
        assert_eq!(serialize_netlist(&c), text);
    }

    #[test]
    fn control_value_out_of_range_reports_line() {
        let text = "dims 2 2\n# fine\nmct ctrl 0:5 target 1\n";
        match parse_netlist(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_lines() {
        for bad in [
            "not 0 1\n",
            "dims 2\nfrobnicate 0\n",
            "dims 2\nnot\n",
            "dims 2 2\nmct ctrl 0-1 target 1\n",
            "dims 2\nnot 0 1 7\n",
            "dims 2\ndiag 0 0,abc\n",
            "",
        ] {
            assert!(matches!(parse_netlist(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn roles_and_float_angles_roundtrip() {
        let mut c = Circuit::uniform(2, 3)
            .unwrap()
            .with_roles(vec![WireRole::Data, WireRole::Output])
            .unwrap();
        c.append(
            PlacedGate::new(
                GateKind::DiagonalPhase(vec![0.0, std::f64::consts::PI, -0.1 / 3.0]),
                1,
            )
            .ctrl(0, 2),
        )
        .unwrap();
        c.append(PlacedGate::new(GateKind::Permutation(vec![2, 0, 1]), 0))
            .unwrap();
        c.append(PlacedGate::new(GateKind::Not { power: 1 }, 0).with_levels(2))
            .unwrap();
        let back = parse_netlist(&serialize_netlist(&c)).unwrap();
        assert_eq!(back, c);
    }
}
