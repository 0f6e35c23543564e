//! Automatic synthesis of the k-coloring phase oracle in dimension `d`.
//!
//! Each vertex's color is stored in `c = ceil(log_d k)` data qudits, most
//! significant digit first. The oracle is built from four blocks:
//!
//! 1. **Invalid-color detection** (only when `d^c > k`): every vertex's digits
//!    are *activated* so that one invalid color reads as all `d-1`, an MCT
//!    records the hit on that vertex's ancilla, and finally one MCT over all
//!    vertex ancillas raises the invalid flag `0 -> d-1` iff no vertex holds an
//!    invalid color. The per-vertex records are then uncomputed.
//! 2. **Comparators**: for each vertex `i` and each neighbour `j > i`, a
//!    comparator writes `0` (equal) or `d-1` (different) onto a fresh ancilla.
//!    When a vertex has more than one forward neighbour, an MCT folds its
//!    verdicts into a single ancilla taken from the top of the ancilla range
//!    and the individual verdicts are uncomputed, which keeps the ancilla
//!    count at most `n`.
//! 3. **Phase kickback**: an MCT controlled on every surviving verdict (and on
//!    the invalid flag) increments the output qudit, which is prepared in
//!    `F_d|d-1>`, an eigenvector of `X_d` with eigenvalue `w^((d-1)^2)`.
//! 4. **Mirror**: blocks 2 and 1 are inverted to restore every ancilla.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, WireRole};
use crate::error::{Error, Result};
use crate::gate::{root_of_unity, Control, GateKind, PlacedGate};
use crate::graph::Graph;

/// How the marked-state phase is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KickbackMode {
    /// MCT onto the output qudit in `F_d|d-1>`; phase `w^((d-1)^2)`, which is
    /// `-1` only for `d = 2`.
    #[default]
    PaperExact,
    /// A controlled `-1` diagonal phase; the textbook Grover oracle at any `d`.
    PiPhase,
}

impl KickbackMode {
    /// The phase multiplying marked basis states.
    pub fn phase(self, d: usize) -> Complex64 {
        match self {
            KickbackMode::PaperExact => root_of_unity((d - 1) * (d - 1), d),
            KickbackMode::PiPhase => Complex64::new(-1.0, 0.0),
        }
    }
}

impl FromStr for KickbackMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-exact" => Ok(KickbackMode::PaperExact),
            "pi-phase" => Ok(KickbackMode::PiPhase),
            other => Err(Error::Parameter(format!("unknown kickback mode `{other}`"))),
        }
    }
}

impl fmt::Display for KickbackMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KickbackMode::PaperExact => "paper-exact",
            KickbackMode::PiPhase => "pi-phase",
        })
    }
}

/// Wire plan of an oracle: data qudits, comparator ancillas, optional invalid
/// flag, output qudit, in that order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Digits per vertex, `ceil(log_d k)`.
    pub digits: usize,
    /// Comparator / per-vertex ancillas, all prepared in `|d-1>`.
    pub comparator_ancillas: usize,
    /// Present iff `d^digits > k`.
    pub has_invalid_flag: bool,
}

impl RegisterLayout {
    pub fn data_wires(&self) -> usize {
        self.n * self.digits
    }

    /// Wire holding digit `digit` (0 = most significant) of `vertex`.
    pub fn data_wire(&self, vertex: usize, digit: usize) -> usize {
        vertex * self.digits + digit
    }

    pub fn vertex_wires(&self, vertex: usize) -> Vec<usize> {
        (0..self.digits).map(|t| self.data_wire(vertex, t)).collect()
    }

    pub fn ancilla_wire(&self, index: usize) -> usize {
        self.data_wires() + index
    }

    pub fn flag_wire(&self) -> Option<usize> {
        self.has_invalid_flag
            .then(|| self.data_wires() + self.comparator_ancillas)
    }

    pub fn output_wire(&self) -> usize {
        self.data_wires() + self.comparator_ancillas + usize::from(self.has_invalid_flag)
    }

    pub fn total_wires(&self) -> usize {
        self.output_wire() + 1
    }

    /// Ancilla qudits excluding the output qudit.
    pub fn ancilla_count(&self) -> usize {
        self.comparator_ancillas + usize::from(self.has_invalid_flag)
    }

    /// `d^digits`, the number of encodable colors.
    pub fn encodable_colors(&self) -> usize {
        self.d.pow(self.digits as u32)
    }

    pub fn invalid_colors(&self) -> std::ops::Range<usize> {
        self.k..self.encodable_colors()
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![self.d; self.total_wires()]
    }

    pub fn roles(&self) -> Vec<WireRole> {
        let mut roles = vec![WireRole::Data; self.data_wires()];
        roles.extend(std::iter::repeat_n(WireRole::Ancilla, self.comparator_ancillas));
        if self.has_invalid_flag {
            roles.push(WireRole::InvalidFlag);
        }
        roles.push(WireRole::Output);
        roles
    }

    /// Color of every vertex given the data-register digits.
    pub fn colors_of(&self, data_digits: &[usize]) -> Vec<usize> {
        data_digits
            .chunks(self.digits)
            .map(|chunk| chunk.iter().fold(0, |acc, &x| acc * self.d + x))
            .collect()
    }

    /// The value each ancilla wire starts (and must end) in, by wire index.
    pub fn initial_value(&self, wire: usize) -> usize {
        if wire < self.data_wires() {
            0
        } else if wire < self.data_wires() + self.comparator_ancillas {
            self.d - 1
        } else if Some(wire) == self.flag_wire() {
            0
        } else {
            self.d - 1
        }
    }
}

impl fmt::Display for RegisterLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} data + {} ancilla ({} comparator{}) + 1 output",
            self.data_wires(),
            self.ancilla_count(),
            self.comparator_ancillas,
            if self.has_invalid_flag { " + 1 invalid-flag" } else { "" }
        )
    }
}

/// One vertex's comparisons and, if it has several, the ancilla they fold into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VertexGroup {
    pub vertex: usize,
    /// `(neighbour, ancilla index)`.
    pub comparisons: Vec<(usize, usize)>,
    pub fold_target: Option<usize>,
}

/// A verdict that survives to the kickback MCT: ancilla index and the value
/// it holds when the constraint is satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Verdict {
    pub ancilla: usize,
    pub satisfied: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Schedule {
    pub groups: Vec<VertexGroup>,
    pub verdicts: Vec<Verdict>,
    pub ancillas_used: usize,
}

/// Ancilla bookkeeping for the comparator stage. Free ancillas are handed out
/// from the bottom (`free`), fold targets from the top (`fold`).
pub(crate) fn schedule(graph: &Graph, d: usize) -> Schedule {
    let n = graph.n();
    let mut free = 0usize;
    let mut fold = n; // one past the next fold target
    let mut groups = Vec::new();
    let mut verdicts = Vec::new();
    let mut used = 0usize;
    for i in 0..n.saturating_sub(1) {
        let comparisons: Vec<(usize, usize)> = (i + 1..n)
            .filter(|&j| graph.has_edge(i, j))
            .enumerate()
            .map(|(slot, j)| (j, free + slot))
            .collect();
        let fold_target = match comparisons.len() {
            0 => None,
            1 => {
                verdicts.push(Verdict {
                    ancilla: free,
                    satisfied: d - 1,
                });
                free += 1;
                None
            }
            _ => {
                fold -= 1;
                // the fold MCT increments d-1 to 0 when every comparison saw different colors
                verdicts.push(Verdict {
                    ancilla: fold,
                    satisfied: 0,
                });
                Some(fold)
            }
        };
        if let Some(&(_, last)) = comparisons.last() {
            debug_assert!(fold_target.is_none_or(|t| t > last));
            used = used.max(last + 1);
        }
        if let Some(t) = fold_target {
            used = used.max(t + 1);
        }
        if !comparisons.is_empty() {
            groups.push(VertexGroup {
                vertex: i,
                comparisons,
                fold_target,
            });
        }
    }
    verdicts.sort_by_key(|v| v.ancilla);
    Schedule {
        groups,
        verdicts,
        ancillas_used: used,
    }
}

fn digits_for(k: usize, d: usize) -> usize {
    let mut c = 1;
    let mut cap = d;
    while cap < k {
        cap *= d;
        c += 1;
    }
    c
}

/// Decide the wire plan for coloring `graph` with `k` colors on `d`-level qudits.
///
/// ```
/// use qudit_color::{graph::Graph, oracle::plan_layout};
/// let layout = plan_layout(&Graph::complete(3).unwrap(), 3, 2).unwrap();
/// assert_eq!(layout.data_wires(), 6);
/// assert!(layout.has_invalid_flag);
/// ```
pub fn plan_layout(graph: &Graph, k: usize, d: usize) -> Result<RegisterLayout> {
    if !(2..=36).contains(&d) {
        return Err(Error::Parameter(format!("dimension d = {d} outside 2..=36")));
    }
    if k == 0 {
        return Err(Error::Parameter("k = 0 colors".into()));
    }
    if k == 1 && graph.num_edges() > 0 {
        return Err(Error::Parameter(
            "k = 1 is degenerate: a single color cannot color a graph with edges".into(),
        ));
    }
    if k > 1 << 20 {
        return Err(Error::Resource(format!("k = {k} colors is too many to encode")));
    }
    // k = 1 still gets one digit; every nonzero digit value is then an invalid color
    let digits = digits_for(k, d);
    let has_invalid_flag = d.pow(digits as u32) > k;
    let sched = schedule(graph, d);
    let mut comparator_ancillas = sched.ancillas_used;
    if has_invalid_flag {
        // one scratch ancilla per vertex for the invalid-color detector
        comparator_ancillas = comparator_ancillas.max(graph.n());
    }
    Ok(RegisterLayout {
        n: graph.n(),
        k,
        d,
        digits,
        comparator_ancillas,
        has_invalid_flag,
    })
}

/// Single-qudit shifts that map the digits of `invalid_color` to all `d-1`.
pub fn synth_qudit_activation(
    vertex_wires: &[usize],
    invalid_color: usize,
    k: usize,
    d: usize,
) -> Result<Vec<PlacedGate>> {
    let encodable = d.pow(vertex_wires.len() as u32);
    if invalid_color < k || invalid_color >= encodable {
        return Err(Error::Parameter(format!(
            "color {invalid_color} is not an invalid color (valid: 0..{k}, encodable: 0..{encodable})"
        )));
    }
    let powers = activation_powers(invalid_color, vertex_wires.len(), d);
    Ok(shift_gates(vertex_wires, &powers, d))
}

/// Per-digit power of `X_d` taking `color` to all `d-1`.
fn activation_powers(color: usize, digits: usize, d: usize) -> Vec<i64> {
    let mut out = vec![0i64; digits];
    let mut rest = color;
    for slot in out.iter_mut().rev() {
        let digit = rest % d;
        rest /= d;
        *slot = (d - 1 - digit) as i64;
    }
    out
}

fn shift_gates(wires: &[usize], powers: &[i64], d: usize) -> Vec<PlacedGate> {
    wires
        .iter()
        .zip(powers)
        .filter_map(|(&w, &p)| {
            let p = p.rem_euclid(d as i64);
            (p != 0).then(|| PlacedGate::new(GateKind::Not { power: p }, w))
        })
        .collect()
}

fn all_at(wires: &[usize], value: usize) -> Vec<Control> {
    wires.iter().map(|&w| Control::new(w, value)).collect()
}

/// Invalid-color detector: leaves the flag (initially `|0>`) at `|d-1>` iff no
/// vertex holds a color `>= k`, and at `|0>` otherwise. Data wires and vertex
/// ancillas are restored.
pub fn synth_icd(layout: &RegisterLayout) -> Result<Vec<PlacedGate>> {
    let flag = layout.flag_wire().ok_or_else(|| {
        Error::Structural("layout has no invalid colors, so no invalid-color detector".into())
    })?;
    if layout.comparator_ancillas < layout.n {
        return Err(Error::Structural(
            "invalid-color detection needs one ancilla per vertex".into(),
        ));
    }
    let d = layout.d;
    let mut record = Vec::new();
    for v in 0..layout.n {
        let wires = layout.vertex_wires(v);
        let anc = layout.ancilla_wire(v);
        let mut current = vec![0i64; layout.digits];
        for color in layout.invalid_colors() {
            let next = activation_powers(color, layout.digits, d);
            let delta: Vec<i64> = next.iter().zip(&current).map(|(a, b)| a - b).collect();
            record.extend(shift_gates(&wires, &delta, d));
            // d-1 -> 0 on the vertex ancilla: this vertex holds `color`
            record.push(PlacedGate::controlled(GateKind::Mct, anc, all_at(&wires, d - 1)));
            current = next;
        }
        let undo: Vec<i64> = current.iter().map(|p| -p).collect();
        record.extend(shift_gates(&wires, &undo, d));
    }
    let ancillas: Vec<usize> = (0..layout.n).map(|v| layout.ancilla_wire(v)).collect();
    let mut gates = record.clone();
    gates.push(PlacedGate::controlled(
        GateKind::Increment { step: -1 },
        flag,
        all_at(&ancillas, d - 1),
    ));
    gates.extend(record.iter().rev().map(PlacedGate::inverse));
    Ok(gates)
}

fn check_comparator_wires(a: &[usize], b: &[usize], ancilla: usize) -> Result<()> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Parameter(format!(
            "comparator registers must be equally long and nonempty ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.push(ancilla);
    let count = all.len();
    all.sort_unstable();
    all.dedup();
    if all.len() != count {
        return Err(Error::Structural("comparator wires overlap".into()));
    }
    Ok(())
}

fn comparator_gates(
    d: usize,
    a: &[usize],
    b: &[usize],
    ancilla: usize,
    verdict: GateKind,
) -> Result<Vec<PlacedGate>> {
    check_comparator_wires(a, b, ancilla)?;
    let shift_b = |sign: i64| {
        a.iter().zip(b).flat_map(move |(&wa, &wb)| {
            (1..d).map(move |v| {
                let power = (sign * v as i64).rem_euclid(d as i64);
                PlacedGate::new(GateKind::Not { power }, wb).ctrl(wa, v)
            })
        })
    };
    let mut gates: Vec<PlacedGate> = shift_b(-1).collect();
    // b - a is all-zero exactly when the colors agree
    gates.push(PlacedGate::controlled(verdict, ancilla, all_at(b, 0)));
    gates.extend(shift_b(1));
    Ok(gates)
}

/// Comparator: adds one to `ancilla` iff registers `a` and `b` hold the same
/// digits. From the oracle's `|d-1>` this yields `0` on equality and leaves
/// `d-1` otherwise. Both registers are restored.
pub fn synth_comparator(
    layout: &RegisterLayout,
    a: &[usize],
    b: &[usize],
    ancilla: usize,
) -> Result<Vec<PlacedGate>> {
    comparator_gates(layout.d, a, b, ancilla, GateKind::Mct)
}

/// Inverse comparator: subtracts one from `ancilla` iff `a == b`.
pub fn synth_inverse_comparator(
    layout: &RegisterLayout,
    a: &[usize],
    b: &[usize],
    ancilla: usize,
) -> Result<Vec<PlacedGate>> {
    comparator_gates(layout.d, a, b, ancilla, GateKind::Increment { step: -1 })
}

/// True iff `assignment` uses only colors `< k` and no edge is monochromatic.
pub fn classical_coloring_check(assignment: &[usize], graph: &Graph, k: usize) -> bool {
    assignment.len() == graph.n()
        && assignment.iter().all(|&c| c < k)
        && graph.edges().all(|(a, b)| assignment[a] != assignment[b])
}

/// A synthesized oracle together with what it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCircuit {
    graph: Graph,
    layout: RegisterLayout,
    mode: KickbackMode,
    circuit: Circuit,
}

impl OracleCircuit {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn mode(&self) -> KickbackMode {
        self.mode
    }

    /// The oracle unitary `U_f` alone.
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// Register preparation followed by `U_f`: the complete synthesized netlist.
    pub fn netlist_circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.layout.dims())
            .and_then(|c| c.with_roles(self.layout.roles()))
            .expect("layout dims are valid");
        c.extend(crate::grover::synth_initialization(&self.layout))
            .expect("initialization fits the layout");
        c.compose(&self.circuit).expect("same register")
    }

    /// Classical predicate on data-register digits.
    pub fn is_marked(&self, data_digits: &[usize]) -> bool {
        classical_coloring_check(&self.layout.colors_of(data_digits), &self.graph, self.layout.k)
    }

    /// Phase applied to marked states.
    pub fn marked_phase(&self) -> Complex64 {
        self.mode.phase(self.layout.d)
    }
}

/// Synthesize the k-coloring oracle for `graph` on `d`-level qudits.
pub fn synth_oracle(graph: &Graph, k: usize, d: usize, mode: KickbackMode) -> Result<OracleCircuit> {
    let layout = plan_layout(graph, k, d)?;
    let sched = schedule(graph, d);

    let detector = if layout.has_invalid_flag {
        synth_icd(&layout)?
    } else {
        Vec::new()
    };

    let mut compare = Vec::new();
    for group in &sched.groups {
        let a = layout.vertex_wires(group.vertex);
        for &(j, anc) in &group.comparisons {
            compare.extend(synth_comparator(&layout, &a, &layout.vertex_wires(j), layout.ancilla_wire(anc))?);
        }
        if let Some(target) = group.fold_target {
            let verdicts: Vec<usize> = group
                .comparisons
                .iter()
                .map(|&(_, anc)| layout.ancilla_wire(anc))
                .collect();
            compare.push(PlacedGate::controlled(
                GateKind::Mct,
                layout.ancilla_wire(target),
                all_at(&verdicts, d - 1),
            ));
            for &(j, anc) in &group.comparisons {
                compare.extend(synth_inverse_comparator(
                    &layout,
                    &a,
                    &layout.vertex_wires(j),
                    layout.ancilla_wire(anc),
                )?);
            }
        }
    }

    let mut controls: Vec<Control> = sched
        .verdicts
        .iter()
        .map(|v| Control::new(layout.ancilla_wire(v.ancilla), v.satisfied))
        .collect();
    if let Some(flag) = layout.flag_wire() {
        controls.push(Control::new(flag, d - 1));
    }
    let kind = match mode {
        KickbackMode::PaperExact => GateKind::Mct,
        KickbackMode::PiPhase => GateKind::DiagonalPhase(vec![PI; d]),
    };
    let kickback = PlacedGate::controlled(kind, layout.output_wire(), controls);

    let mut circuit = Circuit::new(layout.dims())?.with_roles(layout.roles())?;
    circuit.extend(detector.iter().cloned())?;
    circuit.extend(compare.iter().cloned())?;
    circuit.append(kickback)?;
    circuit.extend(compare.iter().rev().map(PlacedGate::inverse))?;
    circuit.extend(detector.iter().rev().map(PlacedGate::inverse))?;

    Ok(OracleCircuit {
        graph: graph.clone(),
        layout,
        mode,
        circuit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateVector;

    fn run(gates: &[PlacedGate], dims: &[usize], input: &[usize]) -> Vec<usize> {
        let mut s = StateVector::basis(dims, input).unwrap();
        s.apply_all(gates).unwrap();
        let idx = s
            .amplitudes()
            .iter()
            .position(|a| (a.norm() - 1.0).abs() < 1e-12)
            .expect("basis state stays a basis state");
        crate::state::mixed_radix_decode(idx, dims).unwrap()
    }

    #[test]
    fn layout_examples() {
        let k3 = plan_layout(&Graph::complete(3).unwrap(), 3, 2).unwrap();
        assert_eq!(k3.data_wires(), 6);
        assert!(k3.comparator_ancillas <= 3);
        assert!(k3.has_invalid_flag);
        assert_eq!(k3.total_wires(), 6 + k3.comparator_ancillas + 2);

        let path = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        let p = plan_layout(&path, 3, 3).unwrap();
        assert_eq!(p.data_wires(), 3);
        assert!(!p.has_invalid_flag);

        let single = plan_layout(&Graph::new(1, []).unwrap(), 2, 2).unwrap();
        assert_eq!(single.data_wires(), 1);
        assert_eq!(single.comparator_ancillas, 0);

        assert!(matches!(
            plan_layout(&Graph::complete(2).unwrap(), 1, 2),
            Err(Error::Parameter(_))
        ));
        assert_eq!(plan_layout(&Graph::complete(4).unwrap(), 5, 2).unwrap().digits, 3);
    }

    #[test]
    fn activation_examples() {
        assert!(synth_qudit_activation(&[0, 1], 3, 3, 2).unwrap().is_empty());
        let g = synth_qudit_activation(&[0, 1], 2, 2, 2).unwrap();
        assert_eq!(g, vec![PlacedGate::new(GateKind::Not { power: 1 }, 1)]);
        // 7 = ternary 21 -> 22
        let g = synth_qudit_activation(&[4, 5], 7, 5, 3).unwrap();
        assert_eq!(g, vec![PlacedGate::new(GateKind::Not { power: 1 }, 5)]);
        assert!(matches!(synth_qudit_activation(&[0, 1], 1, 3, 2), Err(Error::Parameter(_))));
    }

    #[test]
    fn detector_k3_binary() {
        let layout = plan_layout(&Graph::complete(3).unwrap(), 3, 2).unwrap();
        let gates = synth_icd(&layout).unwrap();
        let dims = layout.dims();
        let flag = layout.flag_wire().unwrap();
        let base: Vec<usize> = (0..layout.total_wires()).map(|w| layout.initial_value(w)).collect();

        let mut input = base.clone();
        input[..6].copy_from_slice(&[0, 1, 1, 0, 0, 0]);
        let out = run(&gates, &dims, &input);
        assert_eq!(out[flag], 1);
        assert_eq!(out[..6], input[..6]);

        let mut input = base.clone();
        input[..6].copy_from_slice(&[1, 1, 0, 0, 0, 0]);
        let out = run(&gates, &dims, &input);
        assert_ne!(out[flag], 1);
        assert_eq!(out[..flag], input[..flag]);

        let no_invalid = plan_layout(&Graph::complete(3).unwrap(), 3, 3).unwrap();
        assert!(matches!(
            synth_icd(&no_invalid),
            Err(Error::Structural(_))
        ));
    }

    fn bare(d: usize) -> RegisterLayout {
        RegisterLayout {
            n: 2,
            k: d,
            d,
            digits: 1,
            comparator_ancillas: 1,
            has_invalid_flag: false,
        }
    }

    #[test]
    fn comparator_small_cases() {
        // d=2, c=1, a=b=1
        let g = synth_comparator(&bare(2), &[0], &[1], 2).unwrap();
        assert_eq!(run(&g, &[2, 2, 2], &[1, 1, 1]), vec![1, 1, 0]);
        // d=2, c=2, a=01, b=10
        let g = synth_comparator(&bare(2), &[0, 1], &[2, 3], 4).unwrap();
        assert_eq!(run(&g, &[2; 5], &[0, 1, 1, 0, 1]), vec![0, 1, 1, 0, 1]);
        assert!(matches!(synth_comparator(&bare(2), &[0], &[0], 1), Err(Error::Structural(_))));
        assert!(matches!(synth_comparator(&bare(2), &[0, 1], &[2], 3), Err(Error::Parameter(_))));
    }

    #[test]
    fn ternary_comparator_exhaustive() {
        let g = synth_comparator(&bare(3), &[0], &[1], 2).unwrap();
        let inv = synth_inverse_comparator(&bare(3), &[0], &[1], 2).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let out = run(&g, &[3, 3, 3], &[a, b, 2]);
                assert_eq!(out, vec![a, b, if a == b { 0 } else { 2 }]);
                let mut both = g.clone();
                both.extend(inv.iter().cloned());
                assert_eq!(run(&both, &[3, 3, 3], &[a, b, 2]), vec![a, b, 2]);
            }
        }
    }

    #[test]
    fn schedule_k4_folds_from_the_top() {
        let s = schedule(&Graph::complete(4).unwrap(), 2);
        assert_eq!(s.groups[0].fold_target, Some(3));
        assert_eq!(s.groups[1].fold_target, Some(2));
        assert_eq!(s.groups[2].fold_target, None);
        assert_eq!(s.ancillas_used, 4);
        assert_eq!(s.verdicts.len(), 3);
    }

    #[test]
    fn classical_check_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert!(classical_coloring_check(&[0, 1, 2], &k3, 3));
        assert!(!classical_coloring_check(&[0, 0, 1], &k3, 3));
        let path = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        assert!(classical_coloring_check(&[0, 1, 1], &path, 3));
        assert!(!classical_coloring_check(&[0, 1, 3], &path, 3));
    }

    #[test]
    fn kickback_phase_values() {
        assert!((KickbackMode::PaperExact.phase(2) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((KickbackMode::PaperExact.phase(3) - w.powu(4)).norm() < 1e-12);
        assert_eq!(KickbackMode::PiPhase.phase(5), Complex64::new(-1.0, 0.0));
    }
}
