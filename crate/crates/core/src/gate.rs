//! Generalized qudit gates and their placement on wires.
//!
//! Every gate acts on a single *target* wire and may be conditioned on any
//! number of *control* wires, each with its own trigger value. A gate can also
//! be restricted to the lowest `levels` basis states of its target; levels
//! above that are left untouched. The restriction is what lets a logical
//! `d`-level gate run on a wire that has been enlarged to `d + 1` or `d + 2`
//! levels for MCT lowering.

use std::f64::consts::PI;
use std::fmt;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The single-wire operation a placed gate applies when its controls fire.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    /// `X_d^power`: `|j> -> |(j + power) mod d>`.
    Not { power: i64 },
    /// `Z_d^power`: `|j> -> w^(power * j) |j>` with `w = exp(2 pi i / d)`.
    Phase { power: i64 },
    /// The generalized Hadamard `F_d` (entries `w^(jk) / sqrt(d)`), or its adjoint.
    Hadamard { adjoint: bool },
    /// Add `step` (+1 or -1) modulo the gate's level count.
    Increment { step: i64 },
    /// The generalized Toffoli: add one modulo the level count. Without controls
    /// this is `X_d`, with one control it is the generalized CNOT.
    Mct,
    /// `|j> -> |perm[j]>`.
    Permutation(Vec<usize>),
    /// `|j> -> exp(i * angles[j]) |j>`, angles in radians.
    DiagonalPhase(Vec<f64>),
}

impl GateKind {
    /// The kind implementing the adjoint operation.
    ///
    /// `Mct` has no dedicated decrement form, so it inverts to `Increment { step: -1 }`.
    pub fn inverse(&self) -> GateKind {
        match self {
            GateKind::Not { power } => GateKind::Not { power: -power },
            GateKind::Phase { power } => GateKind::Phase { power: -power },
            GateKind::Hadamard { adjoint } => GateKind::Hadamard { adjoint: !adjoint },
            GateKind::Increment { step } => GateKind::Increment { step: -step },
            GateKind::Mct => GateKind::Increment { step: -1 },
            GateKind::Permutation(perm) => {
                let mut inv = vec![0; perm.len()];
                for (j, &p) in perm.iter().enumerate() {
                    inv[p] = j;
                }
                GateKind::Permutation(inv)
            }
            GateKind::DiagonalPhase(angles) => GateKind::DiagonalPhase(
                angles
                    .iter()
                    .map(|&a| if a == 0.0 { 0.0 } else { -a })
                    .collect(),
            ),
        }
    }

    /// Short lowercase name used for gate-count tables and the netlist.
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::Not { .. } => "not",
            GateKind::Phase { .. } => "phase",
            GateKind::Hadamard { adjoint: false } => "hadamard",
            GateKind::Hadamard { adjoint: true } => "hadamard_dg",
            GateKind::Increment { .. } => "inc",
            GateKind::Mct => "mct",
            GateKind::Permutation(_) => "perm",
            GateKind::DiagonalPhase(_) => "diag",
        }
    }

    /// Check the kind's parameters against the number of levels it acts on.
    pub fn validate(&self, dim: usize) -> Result<()> {
        if dim < 2 {
            return Err(Error::Parameter(format!("gate dimension {dim} < 2")));
        }
        match self {
            GateKind::Increment { step } if step.abs() != 1 => Err(Error::Parameter(format!(
                "increment step must be +1 or -1, got {step}"
            ))),
            GateKind::Permutation(perm) => {
                if perm.len() != dim {
                    return Err(Error::Parameter(format!(
                        "permutation has {} entries for a {dim}-level gate",
                        perm.len()
                    )));
                }
                let mut seen = vec![false; dim];
                for &p in perm {
                    if p >= dim || seen[p] {
                        return Err(Error::Parameter(format!(
                            "permutation {perm:?} is not a bijection on 0..{dim}"
                        )));
                    }
                    seen[p] = true;
                }
                Ok(())
            }
            GateKind::DiagonalPhase(angles) => {
                if angles.len() != dim {
                    return Err(Error::Parameter(format!(
                        "diagonal phase has {} angles for a {dim}-level gate",
                        angles.len()
                    )));
                }
                if angles.iter().any(|a| !a.is_finite()) {
                    return Err(Error::Parameter("non-finite phase angle".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The basis-state action of the kind, in the cheapest available form.
    pub(crate) fn action(&self, dim: usize) -> Result<Action> {
        self.validate(dim)?;
        let shift = |by: i64| {
            let by = by.rem_euclid(dim as i64) as usize;
            Action::Permute((0..dim).map(|j| (j + by) % dim).collect())
        };
        Ok(match self {
            GateKind::Not { power } => shift(*power),
            GateKind::Increment { step } => shift(*step),
            GateKind::Mct => shift(1),
            GateKind::Permutation(perm) => Action::Permute(perm.clone()),
            GateKind::Phase { power } => {
                let p = power.rem_euclid(dim as i64) as usize;
                Action::Diagonal((0..dim).map(|j| root_of_unity(p * j, dim)).collect())
            }
            GateKind::DiagonalPhase(angles) => {
                Action::Diagonal(angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect())
            }
            GateKind::Hadamard { adjoint } => {
                let norm = 1.0 / (dim as f64).sqrt();
                let m = Array2::from_shape_fn((dim, dim), |(j, k)| {
                    let w = root_of_unity(j * k, dim) * norm;
                    if *adjoint {
                        w.conj()
                    } else {
                        w
                    }
                });
                Action::Dense(m)
            }
        })
    }
}

/// `exp(2 pi i * (exponent mod dim) / dim)`, reducing the exponent first so
/// large powers do not lose precision.
pub fn root_of_unity(exponent: usize, dim: usize) -> Complex64 {
    let e = exponent % dim;
    if (4 * e).is_multiple_of(dim) {
        // exact values on the axes
        return match 4 * e / dim {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / dim as f64)
}

pub(crate) enum Action {
    /// Column `j` maps to row `perm[j]`.
    Permute(Vec<usize>),
    Diagonal(Vec<Complex64>),
    Dense(Array2<Complex64>),
}

/// The `dim x dim` unitary of a gate kind.
///
/// ```
/// use qudit_color::{gate_matrix, GateKind};
/// let x = gate_matrix(&GateKind::Not { power: 1 }, 2).unwrap();
/// assert_eq!(x[[0, 1]].re, 1.0);
/// assert_eq!(x[[1, 0]].re, 1.0);
/// ```
pub fn gate_matrix(kind: &GateKind, dim: usize) -> Result<Array2<Complex64>> {
    Ok(match kind.action(dim)? {
        Action::Permute(perm) => {
            let mut m = Array2::zeros((dim, dim));
            for (j, &p) in perm.iter().enumerate() {
                m[[p, j]] = Complex64::new(1.0, 0.0);
            }
            m
        }
        Action::Diagonal(phases) => {
            let mut m = Array2::zeros((dim, dim));
            for (j, p) in phases.into_iter().enumerate() {
                m[[j, j]] = p;
            }
            m
        }
        Action::Dense(m) => m,
    })
}

/// A control condition: the gate fires only if `wire` holds `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Control {
    pub wire: usize,
    pub value: usize,
}

impl Control {
    pub fn new(wire: usize, value: usize) -> Self {
        Control { wire, value }
    }
}

/// A gate kind bound to a target wire, its controls and an optional level restriction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedGate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
    /// Act only on the lowest `levels` states of the target; `None` means all of them.
    pub levels: Option<usize>,
}

impl PlacedGate {
    pub fn new(kind: GateKind, target: usize) -> Self {
        PlacedGate {
            kind,
            target,
            controls: Vec::new(),
            levels: None,
        }
    }

    pub fn controlled(kind: GateKind, target: usize, controls: Vec<Control>) -> Self {
        PlacedGate {
            kind,
            target,
            controls,
            levels: None,
        }
    }

    /// Builder-style control addition.
    pub fn ctrl(mut self, wire: usize, value: usize) -> Self {
        self.controls.push(Control::new(wire, value));
        self
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = Some(levels);
        self
    }

    /// Number of wires the gate touches (target plus controls).
    pub fn arity(&self) -> usize {
        1 + self.controls.len()
    }

    /// All wires touched, target first.
    pub fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.target).chain(self.controls.iter().map(|c| c.wire))
    }

    pub fn inverse(&self) -> PlacedGate {
        PlacedGate {
            kind: self.kind.inverse(),
            target: self.target,
            controls: self.controls.clone(),
            levels: self.levels,
        }
    }

    /// Levels the kind acts on when placed on a register with these wire dims.
    pub fn effective_dim(&self, dims: &[usize]) -> usize {
        self.levels.unwrap_or(dims[self.target])
    }

    /// Check wire indices, control values and kind parameters against `dims`.
    pub fn validate(&self, dims: &[usize]) -> Result<()> {
        let n = dims.len();
        if self.target >= n {
            return Err(Error::Structural(format!(
                "target wire {} out of range for {n} wires",
                self.target
            )));
        }
        let mut seen = vec![false; n];
        seen[self.target] = true;
        for c in &self.controls {
            if c.wire >= n {
                return Err(Error::Structural(format!(
                    "control wire {} out of range for {n} wires",
                    c.wire
                )));
            }
            if seen[c.wire] {
                return Err(Error::Structural(format!(
                    "wire {} used more than once in one gate",
                    c.wire
                )));
            }
            seen[c.wire] = true;
            if c.value >= dims[c.wire] {
                return Err(Error::Parameter(format!(
                    "control value {} out of range for wire {} of dimension {}",
                    c.value, c.wire, dims[c.wire]
                )));
            }
        }
        if let Some(levels) = self.levels {
            if levels < 2 || levels > dims[self.target] {
                return Err(Error::Parameter(format!(
                    "level restriction {levels} invalid for wire {} of dimension {}",
                    self.target, dims[self.target]
                )));
            }
        }
        self.kind.validate(self.effective_dim(dims))
    }
}

impl fmt::Display for PlacedGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::netlist::format_gate(self))
    }
}
