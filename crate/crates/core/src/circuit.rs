//! Circuit intermediate representation: an ordered list of placed gates over a
//! fixed register of wires.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate::PlacedGate;
use crate::state::StateVector;

/// Largest register for which a dense unitary will be built.
pub const DENSE_LIMIT: usize = 4096;

/// What a wire is used for in a synthesized oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WireRole {
    Data,
    Ancilla,
    InvalidFlag,
    Output,
}

impl WireRole {
    pub fn as_str(self) -> &'static str {
        match self {
            WireRole::Data => "data",
            WireRole::Ancilla => "ancilla",
            WireRole::InvalidFlag => "invalid-flag",
            WireRole::Output => "output",
        }
    }
}

impl fmt::Display for WireRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WireRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "data" => Ok(WireRole::Data),
            "ancilla" => Ok(WireRole::Ancilla),
            "invalid-flag" => Ok(WireRole::InvalidFlag),
            "output" => Ok(WireRole::Output),
            other => Err(Error::Parameter(format!("unknown wire role `{other}`"))),
        }
    }
}

/// Gate tallies by kind name and by arity (target + controls).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub total: usize,
    pub by_kind: BTreeMap<String, usize>,
    pub by_arity: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    dims: Vec<usize>,
    gates: Vec<PlacedGate>,
    roles: Option<Vec<WireRole>>,
}

impl Circuit {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if let Some(&d) = dims.iter().find(|&&d| !(2..=36).contains(&d)) {
            return Err(Error::Parameter(format!(
                "wire dimension {d} outside supported range 2..=36"
            )));
        }
        Ok(Circuit {
            dims,
            gates: Vec::new(),
            roles: None,
        })
    }

    /// `n` wires of dimension `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Circuit::new(vec![d; n])
    }

    pub fn with_roles(mut self, roles: Vec<WireRole>) -> Result<Self> {
        self.set_roles(roles)?;
        Ok(self)
    }

    pub fn set_roles(&mut self, roles: Vec<WireRole>) -> Result<()> {
        if roles.len() != self.dims.len() {
            return Err(Error::Structural(format!(
                "{} roles for {} wires",
                roles.len(),
                self.dims.len()
            )));
        }
        self.roles = Some(roles);
        Ok(())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_wires(&self) -> usize {
        self.dims.len()
    }

    pub fn gates(&self) -> &[PlacedGate] {
        &self.gates
    }

    pub fn roles(&self) -> Option<&[WireRole]> {
        self.roles.as_deref()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Append one gate after validating it against the register.
    pub fn append(&mut self, gate: PlacedGate) -> Result<()> {
        gate.validate(&self.dims)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = PlacedGate>) -> Result<()> {
        for g in gates {
            self.append(g)?;
        }
        Ok(())
    }

    /// The adjoint circuit: gates reversed, each replaced by its inverse.
    pub fn invert(&self) -> Circuit {
        Circuit {
            dims: self.dims.clone(),
            gates: self.gates.iter().rev().map(PlacedGate::inverse).collect(),
            roles: self.roles.clone(),
        }
    }

    /// `self` followed by `other` on the same register.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.dims != other.dims {
            return Err(Error::Structural(
                "cannot compose circuits over different registers".into(),
            ));
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    /// Length of the longest chain of gates that share wires, using
    /// as-soon-as-possible layering.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.dims.len()];
        let mut depth = 0;
        for g in &self.gates {
            let layer = g.wires().map(|w| level[w]).max().unwrap_or(0) + 1;
            for w in g.wires() {
                level[w] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            counts.total += 1;
            *counts.by_kind.entry(g.kind.name().to_string()).or_default() += 1;
            *counts.by_arity.entry(g.arity()).or_default() += 1;
        }
        counts
    }

    /// Run the circuit on a state.
    pub fn apply_to(&self, state: &mut StateVector) -> Result<()> {
        if state.dims() != self.dims.as_slice() {
            return Err(Error::Structural("state and circuit registers differ".into()));
        }
        state.apply_all(&self.gates)
    }

    /// Dense unitary, built column by column from basis-state simulation.
    pub fn unitary(&self) -> Result<Array2<Complex64>> {
        let size: usize = self.dims.iter().product();
        if size > DENSE_LIMIT {
            return Err(Error::Resource(format!(
                "dense unitary of dimension {size} exceeds limit {DENSE_LIMIT}"
            )));
        }
        let mut u = Array2::zeros((size, size));
        for col in 0..size {
            let digits = crate::state::mixed_radix_decode(col, &self.dims)?;
            let mut s = StateVector::basis(&self.dims, &digits)?;
            self.apply_to(&mut s)?;
            for (row, a) in s.amplitudes().iter().enumerate() {
                u[[row, col]] = *a;
            }
        }
        Ok(u)
    }
}
