//! Grover search over the coloring oracle: preparation, diffusion, iteration
//! count and the exact simulation loop.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::circuit::{Circuit, DENSE_LIMIT};
use crate::error::{Error, Result};
use crate::gate::{Control, GateKind, PlacedGate};
use crate::graph::Graph;
use crate::oracle::{classical_coloring_check, plan_layout, synth_oracle, KickbackMode, OracleCircuit, RegisterLayout};
use crate::state::{basis_string, mixed_radix_decode, StateVector};

/// Largest state vector `run_grover` will allocate.
pub const SIMULATION_LIMIT: usize = 1 << 22;

/// Largest data space `count_solutions` will enumerate.
pub const ENUMERATION_LIMIT: usize = 1 << 20;

/// Register preparation starting from `|0...0>` on every wire: `F_d` on the
/// data wires, `|d-1>` on the comparator ancillas, flag left at `|0>`, and the
/// output qudit in `F_d|d-1>`.
pub fn synth_initialization(layout: &RegisterLayout) -> Vec<PlacedGate> {
    let d = layout.d;
    let top = GateKind::Not { power: (d - 1) as i64 };
    let h = GateKind::Hadamard { adjoint: false };
    let mut gates: Vec<PlacedGate> = (0..layout.data_wires())
        .map(|w| PlacedGate::new(h.clone(), w))
        .collect();
    gates.extend(
        (0..layout.comparator_ancillas).map(|i| PlacedGate::new(top.clone(), layout.ancilla_wire(i))),
    );
    gates.push(PlacedGate::new(top, layout.output_wire()));
    gates.push(PlacedGate::new(h, layout.output_wire()));
    gates
}

/// The diffusion operator `2|s><s| - I` over `m` qudits, with `|s>` the
/// uniform superposition: every entry is `2/d^m`, minus one on the diagonal.
///
/// ```
/// let m = qudit_color::grover::diffusion_matrix(2, 1).unwrap();
/// assert_eq!(m[[0, 0]].re, 0.0);
/// assert_eq!(m[[0, 1]].re, 1.0);
/// ```
pub fn diffusion_matrix(d: usize, m: usize) -> Result<Array2<Complex64>> {
    if d < 2 || m == 0 {
        return Err(Error::Parameter(format!("diffusion needs d >= 2 and m >= 1 (got d={d}, m={m})")));
    }
    let size = (d as u64).checked_pow(m as u32).filter(|&s| s <= DENSE_LIMIT as u64).ok_or_else(|| {
        Error::Resource(format!("diffusion matrix {d}^{m} exceeds dense limit {DENSE_LIMIT}"))
    })? as usize;
    let off = 2.0 / size as f64;
    Ok(Array2::from_shape_fn((size, size), |(x, y)| {
        Complex64::new(if x == y { off - 1.0 } else { off }, 0.0)
    }))
}

/// Diffusion gates on the given wires (all of dimension `d`).
///
/// The layers are `F_d^dagger`, a shift taking `|0>` to `|d-1>`, a `-1` phase on
/// the all-`(d-1)` pattern, the shift back, then `F_d`. The product is
/// `I - 2|s><s|`, the diffusion operator up to a global phase of `-1`.
pub fn diffusion_gates(d: usize, wires: &[usize]) -> Vec<PlacedGate> {
    let Some((&last, rest)) = wires.split_last() else {
        return Vec::new();
    };
    let mut gates = Vec::with_capacity(4 * wires.len() + 1);
    let layer = |kind: GateKind| wires.iter().map(move |&w| PlacedGate::new(kind.clone(), w));
    gates.extend(layer(GateKind::Hadamard { adjoint: true }));
    gates.extend(layer(GateKind::Not { power: (d - 1) as i64 }));
    let mut angles = vec![0.0; d];
    angles[d - 1] = PI;
    gates.push(PlacedGate::controlled(
        GateKind::DiagonalPhase(angles),
        last,
        rest.iter().map(|&w| Control::new(w, d - 1)).collect(),
    ));
    gates.extend(layer(GateKind::Not { power: 1 }));
    gates.extend(layer(GateKind::Hadamard { adjoint: false }));
    gates
}

/// The diffusion operator as a circuit on `m` fresh wires of dimension `d`.
pub fn synth_diffusion_circuit(d: usize, m: usize) -> Result<Circuit> {
    if m == 0 {
        return Err(Error::Parameter("diffusion needs at least one wire".into()));
    }
    let mut c = Circuit::uniform(m, d)?;
    c.extend(diffusion_gates(d, &(0..m).collect::<Vec<_>>()))?;
    Ok(c)
}

/// Optimal number of Grover iterations for `solutions` marked items out of
/// `space`: `round(pi / (4 theta) - 1/2)` with `sin theta = sqrt(M/N)`,
/// rounding halves up.
///
/// ```
/// use qudit_color::grover::optimal_iterations;
/// assert_eq!(optimal_iterations(64, 6).unwrap(), 2);
/// assert_eq!(optimal_iterations(27, 12).unwrap(), 1);
/// ```
pub fn optimal_iterations(space: usize, solutions: usize) -> Result<usize> {
    if solutions == 0 {
        return Err(Error::NoSolution("no marked states; nothing to amplify".into()));
    }
    if solutions > space {
        return Err(Error::Parameter(format!(
            "{solutions} solutions in a space of {space}"
        )));
    }
    let theta = (solutions as f64 / space as f64).sqrt().asin();
    let x = PI / (4.0 * theta) - 0.5;
    Ok((x + 0.5).floor().max(0.0) as usize)
}

/// `sin^2((2r+1) theta)`, the ideal success probability after `r` iterations.
pub fn ideal_success_probability(space: usize, solutions: usize, iterations: usize) -> f64 {
    let theta = (solutions as f64 / space as f64).sqrt().asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

/// Number of data basis states that encode a proper coloring with valid colors.
pub fn count_solutions(graph: &Graph, k: usize, d: usize) -> Result<usize> {
    let layout = plan_layout(graph, k, d)?;
    let data_dims = vec![d; layout.data_wires()];
    let space = (d as u64)
        .checked_pow(layout.data_wires() as u32)
        .filter(|&s| s <= ENUMERATION_LIMIT as u64)
        .ok_or_else(|| {
            Error::Resource(format!(
                "{d}^{} data states is too many to enumerate; pass the solution count explicitly",
                layout.data_wires()
            ))
        })? as usize;
    let mut count = 0;
    for idx in 0..space {
        let digits = mixed_radix_decode(idx, &data_dims)?;
        if classical_coloring_check(&layout.colors_of(&digits), graph, k) {
            count += 1;
        }
    }
    Ok(count)
}

/// Outcome of a simulated Grover search.
#[derive(Debug, Clone)]
pub struct GroverRun {
    pub oracle: OracleCircuit,
    pub iterations: usize,
    pub kickback_mode: KickbackMode,
    pub final_state: StateVector,
    /// Probability of each data basis state, in mixed-radix index order.
    pub histogram: Vec<f64>,
    pub solutions: usize,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct HistogramRow<'a> {
    basis_string: &'a str,
    probability: f64,
    marked: bool,
}

#[derive(Serialize)]
struct RunJson<'a> {
    n: usize,
    k: usize,
    d: usize,
    kickback: String,
    iterations: usize,
    solutions: usize,
    success_probability: f64,
    histogram: Vec<HistogramRow<'a>>,
}

impl GroverRun {
    fn data_digits(&self, index: usize) -> Vec<usize> {
        let layout = self.oracle.layout();
        mixed_radix_decode(index, &vec![layout.d; layout.data_wires()]).expect("index in range")
    }

    /// Basis string of every histogram entry.
    pub fn labels(&self) -> Vec<String> {
        (0..self.histogram.len())
            .map(|i| basis_string(&self.data_digits(i)))
            .collect()
    }

    pub fn is_marked(&self, index: usize) -> bool {
        self.oracle.is_marked(&self.data_digits(index))
    }

    /// Total probability on marked states.
    pub fn success_probability(&self) -> f64 {
        self.histogram
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.is_marked(i))
            .fold(0.0, |acc, (_, p)| acc + p)
    }

    /// `(basis string, probability)` sorted by descending probability, ties by index.
    pub fn top_states(&self, count: usize) -> Vec<(String, f64)> {
        let mut order: Vec<usize> = (0..self.histogram.len()).collect();
        // equal probabilities differ only by rounding noise; keep them in index order
        let key = |i: usize| (self.histogram[i] * 1e12).round() as i64;
        order.sort_by(|&a, &b| key(b).cmp(&key(a)).then(a.cmp(&b)));
        order
            .into_iter()
            .take(count)
            .map(|i| (basis_string(&self.data_digits(i)), self.histogram[i]))
            .collect()
    }

    /// Histogram as CSV with header `basis_string,probability`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("basis_string,probability\n");
        for (label, p) in self.labels().iter().zip(&self.histogram) {
            out.push_str(&format!("{label},{p:.12}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let labels = self.labels();
        let layout = self.oracle.layout();
        let doc = RunJson {
            n: layout.n,
            k: layout.k,
            d: layout.d,
            kickback: self.kickback_mode.to_string(),
            iterations: self.iterations,
            solutions: self.solutions,
            success_probability: self.success_probability(),
            histogram: labels
                .iter()
                .zip(&self.histogram)
                .enumerate()
                .map(|(i, (l, &p))| HistogramRow {
                    basis_string: l,
                    probability: p,
                    marked: self.is_marked(i),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }
}

/// Synthesize the oracle and run Grover's search exactly.
///
/// With `iterations = None` the optimal count is used; instances with no
/// solution run zero iterations and carry a warning.
pub fn run_grover(
    graph: &Graph,
    k: usize,
    d: usize,
    iterations: Option<usize>,
    mode: KickbackMode,
) -> Result<GroverRun> {
    let oracle = synth_oracle(graph, k, d, mode)?;
    let layout = oracle.layout().clone();
    let size = (d as u64).checked_pow(layout.total_wires() as u32);
    if size.is_none_or(|s| s > SIMULATION_LIMIT as u64) {
        return Err(Error::Resource(format!(
            "{} wires of dimension {d} exceed the simulation limit of {SIMULATION_LIMIT} amplitudes",
            layout.total_wires()
        )));
    }
    let solutions = count_solutions(graph, k, d)?;
    let space = d.pow(layout.data_wires() as u32);
    let mut warnings = Vec::new();
    let iterations = match iterations {
        Some(r) => r,
        None if solutions == 0 => {
            warnings.push("0 solutions: the graph has no valid coloring; ran 0 iterations".into());
            0
        }
        None => optimal_iterations(space, solutions)?,
    };
    if solutions == 0 && iterations > 0 {
        warnings.push("0 solutions: amplification has nothing to amplify".into());
    }

    let mut state = StateVector::zero(&layout.dims())?;
    state.apply_all(&synth_initialization(&layout))?;
    let data: Vec<usize> = (0..layout.data_wires()).collect();
    let diffusion = diffusion_gates(d, &data);
    for _ in 0..iterations {
        oracle.circuit().apply_to(&mut state)?;
        state.apply_all(&diffusion)?;
    }
    let histogram = state.marginal(&data)?;
    Ok(GroverRun {
        oracle,
        iterations,
        kickback_mode: mode,
        final_state: state,
        histogram,
        solutions,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Array2<Complex64>, b: &Array2<Complex64>, phase: Complex64) -> f64 {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - phase * y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn diffusion_matrix_examples() {
        let m = diffusion_matrix(2, 1).unwrap();
        assert_eq!(m[[0, 0]], Complex64::new(0.0, 0.0));
        assert_eq!(m[[1, 0]], Complex64::new(1.0, 0.0));
        let m = diffusion_matrix(3, 1).unwrap();
        assert!((m[[0, 0]].re + 1.0 / 3.0).abs() < 1e-15);
        assert!((m[[2, 1]].re - 2.0 / 3.0).abs() < 1e-15);
        for (d, k) in [(2, 3), (3, 2), (4, 2)] {
            let m = diffusion_matrix(d, k).unwrap();
            let sq = m.dot(&m);
            let eye = Array2::<Complex64>::eye(sq.nrows());
            assert!(close(&sq, &eye, Complex64::new(1.0, 0.0)) < 1e-12);
        }
        assert!(matches!(diffusion_matrix(2, 13), Err(Error::Resource(_))));
    }

    #[test]
    fn diffusion_circuit_matches_matrix() {
        for (d, m) in [(2, 1), (2, 2), (3, 2), (4, 1)] {
            let u = synth_diffusion_circuit(d, m).unwrap().unitary().unwrap();
            let want = diffusion_matrix(d, m).unwrap();
            assert!(close(&u, &want, Complex64::new(-1.0, 0.0)) < 1e-9, "d={d} m={m}");
        }
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(optimal_iterations(64, 6).unwrap(), 2);
        assert_eq!(optimal_iterations(27, 12).unwrap(), 1);
        assert_eq!(optimal_iterations(10, 10).unwrap(), 0);
        assert_eq!(optimal_iterations(4, 1).unwrap(), 1);
        assert!(matches!(optimal_iterations(8, 0), Err(Error::NoSolution(_))));
    }

    #[test]
    fn solution_counts() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(count_solutions(&k3, 3, 2).unwrap(), 6);
        assert_eq!(count_solutions(&k3, 2, 2).unwrap(), 0);
        let path = Graph::new(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(count_solutions(&path, 3, 3).unwrap(), 12);
    }

    #[test]
    fn initialization_is_uniform_on_data() {
        let layout = plan_layout(&Graph::complete(3).unwrap(), 3, 2).unwrap();
        let mut s = StateVector::zero(&layout.dims()).unwrap();
        s.apply_all(&synth_initialization(&layout)).unwrap();
        let data: Vec<usize> = (0..6).collect();
        for p in s.marginal(&data).unwrap() {
            assert!((p - 1.0 / 64.0).abs() < 1e-12);
        }
        for w in 6..layout.output_wire() {
            let m = s.marginal(&[w]).unwrap();
            assert!((m[layout.initial_value(w)] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_iterations_is_uniform() {
        let run = run_grover(&Graph::complete(2).unwrap(), 2, 2, Some(0), KickbackMode::PaperExact).unwrap();
        for p in &run.histogram {
            assert!((p - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn no_solution_warns() {
        let run = run_grover(&Graph::complete(3).unwrap(), 2, 2, None, KickbackMode::PaperExact).unwrap();
        assert_eq!(run.iterations, 0);
        assert_eq!(run.solutions, 0);
        assert!(!run.warnings.is_empty());
    }

    #[test]
    fn csv_layout() {
        let run = run_grover(&Graph::complete(2).unwrap(), 2, 2, None, KickbackMode::PaperExact).unwrap();
        let csv = run.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "basis_string,probability");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("00,"));
        let json: serde_json::Value = serde_json::from_str(&run.to_json()).unwrap();
        assert_eq!(json["histogram"].as_array().unwrap().len(), 4);
    }
}
