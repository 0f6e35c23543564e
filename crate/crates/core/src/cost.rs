//! Resource accounting for synthesized oracles and comparison against
//! published baseline figures.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::circuit::{Circuit, WireRole};
use crate::decompose::two_wire_cost;
use crate::error::Result;
use crate::oracle::OracleCircuit;

/// Prior ternary oracle gate counts for `n = 3, 4, 5`.
pub const TERNARY_BASELINE: [usize; 3] = [106, 298, 494];
/// Prior ternary upper bounds for `n = 3, 4, 5`.
pub const TERNARY_UPPER_BASELINE: [usize; 3] = [343, 1000, 2700];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineComparison {
    pub name: String,
    pub metric: String,
    pub baseline: usize,
    pub ours: usize,
    /// `(baseline - ours) / baseline`, in percent.
    pub reduction_percent: f64,
}

impl BaselineComparison {
    pub fn new(name: &str, metric: &str, baseline: usize, ours: usize) -> Self {
        BaselineComparison {
            name: name.to_string(),
            metric: metric.to_string(),
            baseline,
            ours,
            reduction_percent: reduction_percent(baseline, ours),
        }
    }

    pub fn beats_baseline(&self) -> bool {
        self.ours < self.baseline
    }
}

pub fn reduction_percent(baseline: usize, ours: usize) -> f64 {
    if baseline == 0 {
        return 0.0;
    }
    (baseline as f64 - ours as f64) / baseline as f64 * 100.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub data_qudits: usize,
    /// Ancillas excluding the output qudit.
    pub ancilla_qudits: usize,
    pub output_qudits: usize,
    /// Gates in the full netlist (preparation and oracle).
    pub gate_count_total: usize,
    pub gate_count_by_kind: BTreeMap<String, usize>,
    pub gate_count_by_arity: BTreeMap<usize, usize>,
    /// Gates in the oracle unitary alone.
    pub oracle_gate_count: usize,
    /// Gate count after lowering every gate to two-wire gates.
    pub two_wire_gate_count: usize,
    pub depth: usize,
    pub baseline_comparisons: Vec<BaselineComparison>,
    pub notes: Vec<String>,
}

/// Counts for an arbitrary circuit; qudit roles come from its role labels
/// (unlabelled wires count as data).
pub fn analyze_circuit(circuit: &Circuit) -> Result<CostReport> {
    let counts = circuit.gate_counts();
    let roles: Vec<WireRole> = circuit
        .roles()
        .map(<[WireRole]>::to_vec)
        .unwrap_or_else(|| vec![WireRole::Data; circuit.num_wires()]);
    let count = |pred: fn(&WireRole) -> bool| roles.iter().filter(|r| pred(r)).count();
    let mut two_wire = 0;
    for g in circuit.gates() {
        two_wire += two_wire_cost(g, circuit.dims())?;
    }
    Ok(CostReport {
        n: 0,
        k: 0,
        d: circuit.dims().iter().copied().max().unwrap_or(0),
        data_qudits: count(|r| *r == WireRole::Data),
        ancilla_qudits: count(|r| matches!(r, WireRole::Ancilla | WireRole::InvalidFlag)),
        output_qudits: count(|r| *r == WireRole::Output),
        gate_count_total: counts.total,
        gate_count_by_kind: counts.by_kind,
        gate_count_by_arity: counts.by_arity,
        oracle_gate_count: counts.total,
        two_wire_gate_count: two_wire,
        depth: circuit.depth(),
        baseline_comparisons: Vec::new(),
        notes: Vec::new(),
    })
}

/// Costs of a synthesized oracle, counted on its full netlist.
///
/// ```
/// use qudit_color::{cost::analyze, graph::Graph, synth_oracle, KickbackMode};
/// let oracle = synth_oracle(&Graph::complete(3)?, 3, 2, KickbackMode::PaperExact)?;
/// let report = analyze(&oracle)?;
/// assert_eq!(report.data_qudits, 6);
/// assert!(report.ancilla_qudits <= 4);
/// # Ok::<(), qudit_color::Error>(())
/// ```
pub fn analyze(oracle: &OracleCircuit) -> Result<CostReport> {
    let mut report = analyze_circuit(&oracle.netlist_circuit())?;
    let layout = oracle.layout();
    report.n = layout.n;
    report.k = layout.k;
    report.d = layout.d;
    report.oracle_gate_count = oracle.circuit().len();
    Ok(report)
}

/// Add the ternary gate-count comparisons for `n = 3, 4, 5`.
pub fn compare_ternary_baselines(mut report: CostReport) -> CostReport {
    if report.d != 3 {
        report
            .notes
            .push(format!("ternary comparison skipped: d = {}", report.d));
        return report;
    }
    match report.n {
        3..=5 => {
            let i = report.n - 3;
            let ours = report.gate_count_total;
            report.baseline_comparisons.push(BaselineComparison::new(
                "prior ternary oracle",
                "gates",
                TERNARY_BASELINE[i],
                ours,
            ));
            report.baseline_comparisons.push(BaselineComparison::new(
                "prior ternary oracle (upper bound)",
                "gates",
                TERNARY_UPPER_BASELINE[i],
                ours,
            ));
        }
        n => report
            .notes
            .push(format!("no ternary baseline row for n = {n} (rows exist for n = 3, 4, 5)")),
    }
    report
}

/// Add the binary data-qubit comparison: `n*k` one-hot qubits against
/// `n*ceil(log2 k)` here.
pub fn compare_binary_baseline(mut report: CostReport) -> CostReport {
    if report.d != 2 {
        report
            .notes
            .push(format!("binary comparison skipped: d = {}", report.d));
        return report;
    }
    report.baseline_comparisons.push(BaselineComparison::new(
        "one-hot binary encoding",
        "data qubits",
        report.n * report.k,
        report.data_qudits,
    ));
    report.notes.push(format!(
        "one-hot binary encoding needs O((n*k)^2) ancillas; this oracle uses {}",
        report.ancilla_qudits
    ));
    report
}

/// Both comparisons, whichever apply.
pub fn compare_baselines(report: CostReport) -> CostReport {
    match report.d {
        2 => compare_binary_baseline(report),
        3 => compare_ternary_baselines(report),
        d => {
            let mut report = report;
            report.notes.push(format!("no baseline figures for d = {d}"));
            report
        }
    }
}

impl CostReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("vertices (n)".into(), self.n.to_string()),
            ("colors (k)".into(), self.k.to_string()),
            ("dimension (d)".into(), self.d.to_string()),
            ("data qudits".into(), self.data_qudits.to_string()),
            ("ancilla qudits".into(), self.ancilla_qudits.to_string()),
            ("output qudits".into(), self.output_qudits.to_string()),
            ("gates (netlist)".into(), self.gate_count_total.to_string()),
            ("gates (oracle only)".into(), self.oracle_gate_count.to_string()),
            ("gates (two-wire)".into(), self.two_wire_gate_count.to_string()),
            ("depth".into(), self.depth.to_string()),
        ];
        for (kind, c) in &self.gate_count_by_kind {
            rows.push((format!("  kind {kind}"), c.to_string()));
        }
        for (arity, c) in &self.gate_count_by_arity {
            rows.push((format!("  arity {arity}"), c.to_string()));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &rows {
            let _ = writeln!(out, "{k:<width$}  {v:>8}");
        }
        if !self.baseline_comparisons.is_empty() {
            let name_w = self
                .baseline_comparisons
                .iter()
                .map(|c| c.name.len())
                .max()
                .unwrap_or(0)
                .max("baseline".len());
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:<name_w$}  {:<11}  {:>8}  {:>8}  {:>9}",
                "baseline", "metric", "theirs", "ours", "reduction"
            );
            for c in &self.baseline_comparisons {
                let _ = writeln!(
                    out,
                    "{:<name_w$}  {:<11}  {:>8}  {:>8}  {:>8.1}%",
                    c.name, c.metric, c.baseline, c.ours, c.reduction_percent
                );
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}
