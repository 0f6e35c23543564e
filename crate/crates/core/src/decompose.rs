//! Lowering of multi-controlled gates to gates of small arity.
//!
//! Two routes are provided.
//!
//! * **Binary, ancilla-free.** An MCT on qubits is `H` conjugating a
//!   multi-controlled phase `MCP(pi)`, and `MCP(phi)` recurses as
//!   `CP(phi/2) . C^{n-1}X . CP(-phi/2) . C^{n-1}X . C^{n-1}P(phi/2)`, bottoming
//!   out in controlled phases and CNOTs.
//! * **Qudit, borrowed levels.** Wires of dimension `d` are run at `d+1` or
//!   `d+2`. The extra levels `|d>` and `|d+1>` act as scratch space: a tree of
//!   controlled increments pushes a representative wire to an out-of-range
//!   *mark* value iff every control holds `d-1`, the original gate is applied
//!   controlled on that mark, and the tree is uncomputed. Logical states never
//!   leave the lower `d` levels once the gate is complete.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{Circuit, DENSE_LIMIT};
use crate::error::{Error, Result};
use crate::gate::{Control, GateKind, PlacedGate};
use crate::state::{mixed_radix_decode, mixed_radix_encode, StateVector};

/// Equality tolerance for [`verify_equivalence`].
pub const TOLERANCE: f64 = 1e-9;

/// Largest register simulated column by column during verification.
pub const VERIFY_STATE_LIMIT: usize = 1 << 16;

/// How far to lower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    /// Gates of arity at most 3 (Toffoli-sized).
    Mct,
    /// Gates of arity at most 2.
    TwoWire,
}

impl Level {
    pub fn max_arity(self) -> usize {
        match self {
            Level::Mct => 3,
            Level::TwoWire => 2,
        }
    }

    /// Levels borrowed per wire by the qudit route.
    fn extra_levels(self) -> usize {
        match self {
            Level::Mct => 1,
            Level::TwoWire => 2,
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mct" => Ok(Level::Mct),
            "two-wire" => Ok(Level::TwoWire),
            other => Err(Error::Parameter(format!("unknown decomposition level `{other}`"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Mct => "mct",
            Level::TwoWire => "two-wire",
        })
    }
}

fn binary_x(controls: &[usize], target: usize, out: &mut Vec<PlacedGate>) {
    let not = GateKind::Not { power: 1 };
    match controls {
        [] => out.push(PlacedGate::new(not, target)),
        [c] => out.push(PlacedGate::new(not, target).ctrl(*c, 1)),
        _ => {
            let h = GateKind::Hadamard { adjoint: false };
            out.push(PlacedGate::new(h.clone(), target));
            binary_phase(controls, target, PI, out);
            out.push(PlacedGate::new(h, target));
        }
    }
}

fn binary_phase(controls: &[usize], target: usize, phi: f64, out: &mut Vec<PlacedGate>) {
    let cp = |c: Option<usize>, angle: f64| {
        let g = PlacedGate::new(GateKind::DiagonalPhase(vec![0.0, angle]), target);
        match c {
            Some(c) => g.ctrl(c, 1),
            None => g,
        }
    };
    match controls {
        [] => out.push(cp(None, phi)),
        [c] => out.push(cp(Some(*c), phi)),
        [rest @ .., c] => {
            out.push(cp(Some(*c), phi / 2.0));
            binary_x(rest, *c, out);
            out.push(cp(Some(*c), -phi / 2.0));
            binary_x(rest, *c, out);
            binary_phase(rest, target, phi / 2.0, out);
        }
    }
}

/// Lower one gate on qubits to 1- and 2-wire gates without ancillas.
fn lower_binary(g: &PlacedGate) -> Result<Vec<PlacedGate>> {
    let mut out = Vec::new();
    let flips: Vec<PlacedGate> = g
        .controls
        .iter()
        .filter(|c| c.value == 0)
        .map(|c| PlacedGate::new(GateKind::Not { power: 1 }, c.wire))
        .collect();
    out.extend(flips.iter().cloned());
    let cs: Vec<usize> = g.controls.iter().map(|c| c.wire).collect();
    let t = g.target;
    match &g.kind {
        _ if g.levels == Some(1) => {}
        GateKind::Mct => binary_x(&cs, t, &mut out),
        GateKind::Not { power: p } | GateKind::Increment { step: p } => {
            if p.rem_euclid(2) == 1 {
                binary_x(&cs, t, &mut out);
            }
        }
        GateKind::Phase { power } => {
            if power.rem_euclid(2) == 1 {
                binary_phase(&cs, t, PI, &mut out);
            }
        }
        GateKind::Permutation(p) => {
            if p[0] == 1 {
                binary_x(&cs, t, &mut out);
            }
        }
        GateKind::DiagonalPhase(angles) => {
            let (a, b) = (angles[0], angles[1]);
            binary_phase(&cs, t, b - a, &mut out);
            if a != 0.0 {
                // the e^{ia} factor applies whenever the controls fire
                let (last, rest) = cs.split_last().expect("lowered gates have controls");
                binary_phase(rest, *last, a, &mut out);
            }
        }
        GateKind::Hadamard { .. } => {
            return Err(Error::Structural(format!(
                "cannot lower a Hadamard with {} controls",
                g.controls.len()
            )))
        }
    }
    out.extend(flips);
    Ok(out)
}

/// Ancilla-free lowering of the `n_controls`-control MCT on qubits (controls on
/// wires `0..n`, target on wire `n`) to 1- and 2-wire gates.
///
/// ```
/// use qudit_color::decompose::decompose_mct_binary;
/// let c = decompose_mct_binary(2).unwrap();
/// assert!(c.gates().iter().all(|g| g.arity() <= 2));
/// ```
pub fn decompose_mct_binary(n_controls: usize) -> Result<Circuit> {
    if n_controls == 0 {
        return Err(Error::Parameter("an MCT needs at least one control".into()));
    }
    let mut out = Vec::new();
    binary_x(&(0..n_controls).collect::<Vec<_>>(), n_controls, &mut out);
    let mut c = Circuit::uniform(n_controls + 1, 2)?;
    c.extend(out)?;
    Ok(c)
}

struct Marker<'a> {
    logical: &'a [usize],
    level: Level,
    out: Vec<PlacedGate>,
}

impl Marker<'_> {
    /// Push a representative wire to its mark value iff every wire in `ws`
    /// holds its top logical value; returns `(wire, mark)`. The representative
    /// otherwise stays at or below its mark.
    fn mark(&mut self, ws: &[usize]) -> (usize, usize) {
        let top = |w: usize| self.logical[w] - 1;
        let inc = |step: i64| GateKind::Increment { step };
        match *ws {
            [w] => (w, top(w)),
            [a, b] => {
                self.out.push(PlacedGate::new(inc(1), b).ctrl(a, top(a)));
                (b, self.logical[b])
            }
            _ => {
                let mid = ws.len() / 2;
                let x = ws[mid];
                let (rl, ml) = self.mark(&ws[..mid]);
                let (rr, mr) = self.mark(&ws[mid + 1..]);
                match self.level {
                    Level::Mct => {
                        self.out
                            .push(PlacedGate::new(inc(1), x).ctrl(rl, ml).ctrl(rr, mr));
                    }
                    Level::TwoWire => {
                        self.out.push(PlacedGate::new(inc(1), rr).ctrl(rl, ml));
                        self.out.push(PlacedGate::new(inc(1), x).ctrl(rr, mr + 1));
                        self.out.push(PlacedGate::new(inc(-1), rr).ctrl(rl, ml));
                    }
                }
                (x, self.logical[x])
            }
        }
    }
}

/// Lower one gate on enlarged wires. `logical` holds the original dimensions.
fn lower_qudit(g: &PlacedGate, logical: &[usize], level: Level) -> Vec<PlacedGate> {
    let levels = g.levels.unwrap_or(logical[g.target]);
    if g.arity() <= level.max_arity() {
        let mut copy = g.clone();
        copy.levels = Some(levels);
        return vec![copy];
    }
    let conj: Vec<PlacedGate> = g
        .controls
        .iter()
        .filter(|c| c.value != logical[c.wire] - 1)
        .map(|c| {
            let top = logical[c.wire] - 1;
            PlacedGate::new(GateKind::Not { power: (top - c.value) as i64 }, c.wire)
                .with_levels(logical[c.wire])
        })
        .collect();
    let wires: Vec<usize> = g.controls.iter().map(|c| c.wire).collect();
    let mut marker = Marker {
        logical,
        level,
        out: Vec::new(),
    };
    let (rep, mark) = marker.mark(&wires);
    let compute = marker.out;

    let mut out = conj.clone();
    out.extend(compute.iter().cloned());
    out.push(PlacedGate {
        kind: g.kind.clone(),
        target: g.target,
        controls: vec![Control::new(rep, mark)],
        levels: Some(levels),
    });
    out.extend(compute.iter().rev().map(PlacedGate::inverse));
    out.extend(conj.iter().rev().map(PlacedGate::inverse));
    out
}

/// Toffoli on three `d`-level wires run at `d+1`: raise the second control to
/// `|d>` when both controls hold `d-1`, apply `X_d` on the target controlled
/// on `|d>`, then lower the control again.
///
/// ```
/// let c = qudit_color::decompose::decompose_toffoli_qudit(3).unwrap();
/// assert_eq!(c.len(), 3);
/// assert_eq!(c.dims(), &[4, 4, 4]);
/// ```
pub fn decompose_toffoli_qudit(d: usize) -> Result<Circuit> {
    if d < 2 {
        return Err(Error::Parameter(format!("dimension {d} < 2")));
    }
    let mut c = Circuit::uniform(3, d + 1)?;
    c.append(PlacedGate::new(GateKind::Increment { step: 1 }, 1).ctrl(0, d - 1))?;
    c.append(PlacedGate::new(GateKind::Not { power: 1 }, 2).ctrl(1, d).with_levels(d))?;
    c.append(PlacedGate::new(GateKind::Increment { step: -1 }, 1).ctrl(0, d - 1))?;
    Ok(c)
}

/// The `n_controls`-control MCT on `d`-level wires, run at `d+2` and built
/// from 2-wire gates only. Controls are wires `0..n`, the target is wire `n`.
pub fn decompose_mct_qudit(n_controls: usize, d: usize) -> Result<Circuit> {
    if n_controls < 2 {
        return Err(Error::Parameter(format!(
            "the qudit MCT ladder needs at least 2 controls (got {n_controls})"
        )));
    }
    if d < 2 {
        return Err(Error::Parameter(format!("dimension {d} < 2")));
    }
    let logical = vec![d; n_controls + 1];
    let gate = PlacedGate::controlled(
        GateKind::Mct,
        n_controls,
        (0..n_controls).map(|w| Control::new(w, d - 1)).collect(),
    );
    let mut c = Circuit::uniform(n_controls + 1, d + 2)?;
    c.extend(lower_qudit(&gate, &logical, Level::TwoWire))?;
    Ok(c)
}

/// Lower every gate of `circuit` above the level's arity.
///
/// Circuits with nothing to lower come back unchanged. Otherwise qubit-only
/// circuits lowered to two-wire level keep their wires; every other case runs
/// on wires enlarged by one (`mct`) or two (`two-wire`) levels, with every
/// gate restricted to the original levels.
pub fn decompose_circuit(circuit: &Circuit, level: Level) -> Result<Circuit> {
    if circuit.gates().iter().all(|g| g.arity() <= level.max_arity()) {
        return Ok(circuit.clone());
    }
    let logical = circuit.dims().to_vec();
    let (dims, gates) = if level == Level::TwoWire && logical.iter().all(|&d| d == 2) {
        let mut gates = Vec::new();
        for g in circuit.gates() {
            if g.arity() <= 2 {
                gates.push(g.clone());
            } else {
                gates.extend(lower_binary(g)?);
            }
        }
        (logical.clone(), gates)
    } else {
        let dims: Vec<usize> = logical.iter().map(|d| d + level.extra_levels()).collect();
        let gates = circuit
            .gates()
            .iter()
            .flat_map(|g| lower_qudit(g, &logical, level))
            .collect();
        (dims, gates)
    };
    let mut out = Circuit::new(dims)?;
    if let Some(roles) = circuit.roles() {
        out.set_roles(roles.to_vec())?;
    }
    out.extend(gates)?;
    Ok(out)
}

/// Number of gates `g` becomes when lowered to two-wire level on its own.
pub fn two_wire_cost(g: &PlacedGate, dims: &[usize]) -> Result<usize> {
    if g.arity() <= 2 {
        return Ok(1);
    }
    let local = localize(g, dims)?;
    Ok(decompose_circuit(&local, Level::TwoWire)?.len())
}

/// The gate moved onto wires `0..arity` (controls first, target last).
fn localize(g: &PlacedGate, dims: &[usize]) -> Result<Circuit> {
    let wires: Vec<usize> = g.controls.iter().map(|c| c.wire).chain([g.target]).collect();
    let local_dims: Vec<usize> = wires.iter().map(|&w| dims[w]).collect();
    let gate = PlacedGate {
        kind: g.kind.clone(),
        target: wires.len() - 1,
        controls: g
            .controls
            .iter()
            .enumerate()
            .map(|(i, c)| Control::new(i, c.value))
            .collect(),
        levels: g.levels,
    };
    let mut c = Circuit::new(local_dims)?;
    c.append(gate)?;
    Ok(c)
}

/// Result of an equivalence check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Equivalence {
    /// Equal up to global phase within [`TOLERANCE`], with no leakage.
    pub equal: bool,
    pub max_deviation: f64,
    /// Largest probability that a subspace input ends outside the subspace.
    pub leakage: f64,
}

/// The circuit restricted to the subspace where wire `w` stays below
/// `subspace[w]`, plus the worst leakage out of it.
fn restricted_matrix(circuit: &Circuit, subspace: &[usize]) -> Result<(Array2<Complex64>, f64)> {
    let dims = circuit.dims();
    if subspace.len() != dims.len() || subspace.iter().zip(dims).any(|(s, d)| s > d || *s == 0) {
        return Err(Error::Structural(format!(
            "subspace {subspace:?} does not fit register {dims:?}"
        )));
    }
    let size: usize = subspace.iter().product();
    if size > DENSE_LIMIT {
        return Err(Error::Resource(format!(
            "subspace dimension {size} exceeds dense limit {DENSE_LIMIT}"
        )));
    }
    let full: u64 = dims.iter().map(|&d| d as u64).product();
    if full > VERIFY_STATE_LIMIT as u64 {
        return Err(Error::Resource(format!(
            "register dimension {full} exceeds verification limit {VERIFY_STATE_LIMIT}"
        )));
    }
    let rows: Vec<usize> = (0..size)
        .map(|i| mixed_radix_encode(&mixed_radix_decode(i, subspace)?, dims))
        .collect::<Result<_>>()?;
    let mut m = Array2::zeros((size, size));
    let mut leakage = 0.0f64;
    for col in 0..size {
        let mut s = StateVector::basis(dims, &mixed_radix_decode(col, subspace)?)?;
        circuit.apply_to(&mut s)?;
        let mut kept = 0.0;
        for (row, &idx) in rows.iter().enumerate() {
            let a = s.amplitudes()[idx];
            kept += a.norm_sqr();
            m[[row, col]] = a;
        }
        leakage = leakage.max(1.0 - kept);
    }
    Ok((m, leakage.max(0.0)))
}

fn compare(a: &Array2<Complex64>, reference: &Array2<Complex64>, leakage: f64) -> Result<Equivalence> {
    if a.dim() != reference.dim() {
        return Err(Error::Structural(format!(
            "matrix shapes differ: {:?} vs {:?}",
            a.dim(),
            reference.dim()
        )));
    }
    let (idx, pivot) = reference
        .indexed_iter()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .map(|(i, v)| (i, *v))
        .ok_or_else(|| Error::Structural("empty matrix".into()))?;
    let ratio = a[idx] / pivot;
    let phase = if ratio.norm() > 1e-12 {
        ratio / ratio.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let max_deviation = a
        .iter()
        .zip(reference.iter())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max);
    Ok(Equivalence {
        equal: max_deviation < TOLERANCE && leakage < 1e-10,
        max_deviation,
        leakage,
    })
}

/// Compare `circuit` with `reference` on a subspace (default: the reference's
/// full register), up to global phase.
///
/// ```
/// use qudit_color::decompose::{decompose_mct_binary, verify_equivalence};
/// use qudit_color::{Circuit, GateKind, PlacedGate};
/// let mut exact = Circuit::uniform(3, 2)?;
/// exact.append(PlacedGate::new(GateKind::Mct, 2).ctrl(0, 1).ctrl(1, 1))?;
/// let eq = verify_equivalence(&decompose_mct_binary(2)?, &exact, None)?;
/// assert!(eq.equal);
/// # Ok::<(), qudit_color::Error>(())
/// ```
pub fn verify_equivalence(
    circuit: &Circuit,
    reference: &Circuit,
    subspace: Option<&[usize]>,
) -> Result<Equivalence> {
    let sub = subspace.unwrap_or(reference.dims());
    let (r, _) = restricted_matrix(reference, sub)?;
    verify_against_unitary(circuit, &r, Some(sub))
}

/// Compare `circuit`, restricted to `subspace`, with a dense unitary.
pub fn verify_against_unitary(
    circuit: &Circuit,
    unitary: &Array2<Complex64>,
    subspace: Option<&[usize]>,
) -> Result<Equivalence> {
    let sub = subspace.unwrap_or(circuit.dims());
    let (a, leakage) = restricted_matrix(circuit, sub)?;
    compare(&a, unitary, leakage)
}

/// Check a lowering gate by gate: every gate above the level's arity is
/// lowered on its own wires and compared with the original gate on the
/// logical subspace. Returns the worst result and the number of gates checked.
pub fn verify_lowering(circuit: &Circuit, level: Level) -> Result<(Equivalence, usize)> {
    let mut worst = Equivalence {
        equal: true,
        max_deviation: 0.0,
        leakage: 0.0,
    };
    let mut checked = 0;
    for g in circuit.gates().iter().filter(|g| g.arity() > level.max_arity()) {
        let local = localize(g, circuit.dims())?;
        let lowered = decompose_circuit(&local, level)?;
        let eq = verify_equivalence(&lowered, &local, Some(local.dims()))?;
        worst.equal &= eq.equal;
        worst.max_deviation = worst.max_deviation.max(eq.max_deviation);
        worst.leakage = worst.leakage.max(eq.leakage);
        checked += 1;
    }
    Ok((worst, checked))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_mct(n: usize, d: usize) -> Circuit {
        let mut c = Circuit::uniform(n + 1, d).unwrap();
        c.append(PlacedGate::controlled(
            GateKind::Mct,
            n,
            (0..n).map(|w| Control::new(w, d - 1)).collect(),
        ))
        .unwrap();
        c
    }

    #[test]
    fn binary_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| decompose_mct_binary(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 7, 23, 71]);
    }

    #[test]
    fn binary_equivalence() {
        for n in 1..=4 {
            let eq = verify_equivalence(&decompose_mct_binary(n).unwrap(), &exact_mct(n, 2), None).unwrap();
            assert!(eq.equal, "n={n}: {eq:?}");
        }
    }

    #[test]
    fn cnot_is_not_toffoli() {
        let mut cnot = Circuit::uniform(3, 2).unwrap();
        cnot.append(PlacedGate::new(GateKind::Not { power: 1 }, 2).ctrl(0, 1)).unwrap();
        assert!(!verify_equivalence(&cnot, &exact_mct(2, 2), None).unwrap().equal);
        let same = verify_equivalence(&cnot, &cnot, None).unwrap();
        assert_eq!(same.max_deviation, 0.0);
    }

    #[test]
    fn toffoli_qudit() {
        for d in [2, 3] {
            let c = decompose_toffoli_qudit(d).unwrap();
            let eq = verify_equivalence(&c, &exact_mct(2, d), Some(&[d, d, d])).unwrap();
            assert!(eq.equal, "d={d}: {eq:?}");
        }
    }

    #[test]
    fn mct_qudit_small() {
        for (n, d) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (5, 2)] {
            let c = decompose_mct_qudit(n, d).unwrap();
            assert!(c.gates().iter().all(|g| g.arity() <= 2));
            let sub = vec![d; n + 1];
            let eq = verify_equivalence(&c, &exact_mct(n, d), Some(&sub)).unwrap();
            assert!(eq.equal, "n={n} d={d}: {eq:?}");
        }
    }

    #[test]
    fn mixed_control_values_and_kinds() {
        let mut c = Circuit::uniform(4, 3).unwrap();
        c.append(PlacedGate::new(GateKind::DiagonalPhase(vec![0.3, 0.0, PI]), 3).ctrl(0, 0).ctrl(1, 1).ctrl(2, 2))
            .unwrap();
        c.append(PlacedGate::new(GateKind::Hadamard { adjoint: false }, 0).ctrl(1, 2).ctrl(2, 0).ctrl(3, 1))
            .unwrap();
        for level in [Level::Mct, Level::TwoWire] {
            let low = decompose_circuit(&c, level).unwrap();
            assert!(low.gates().iter().all(|g| g.arity() <= level.max_arity()));
            let eq = verify_equivalence(&low, &c, Some(&[3, 3, 3, 3])).unwrap();
            assert!(eq.equal, "{level}: {eq:?}");
        }
    }

    #[test]
    fn binary_phase_with_zero_controls() {
        let mut c = Circuit::uniform(4, 2).unwrap();
        c.append(PlacedGate::new(GateKind::DiagonalPhase(vec![0.7, -0.2]), 3).ctrl(0, 0).ctrl(1, 1).ctrl(2, 0))
            .unwrap();
        let low = decompose_circuit(&c, Level::TwoWire).unwrap();
        assert_eq!(low.dims(), c.dims());
        assert!(verify_equivalence(&low, &c, None).unwrap().equal);
    }

    #[test]
    fn low_circuits_unchanged() {
        let mut c = Circuit::uniform(2, 3).unwrap();
        c.append(PlacedGate::new(GateKind::Mct, 1).ctrl(0, 2)).unwrap();
        assert_eq!(decompose_circuit(&c, Level::TwoWire).unwrap(), c);
    }

    #[test]
    fn linear_growth() {
        let counts: Vec<usize> = (2..=9).map(|n| decompose_mct_qudit(n, 3).unwrap().len()).collect();
        for (i, &c) in counts.iter().enumerate() {
            assert!(c <= 6 * (i + 2), "{counts:?}");
        }
    }

    #[test]
    fn guards() {
        assert!(matches!(decompose_mct_binary(0), Err(Error::Parameter(_))));
        assert!(matches!(decompose_mct_qudit(1, 3), Err(Error::Parameter(_))));
        let big = Circuit::uniform(13, 2).unwrap();
        assert!(matches!(verify_equivalence(&big, &big, None), Err(Error::Resource(_))));
    }
}
