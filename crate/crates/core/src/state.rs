//! Dense mixed-radix state vectors.
//!
//! Wire 0 is the most significant digit of the flat amplitude index.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gate::{Action, PlacedGate};

/// Flat index of `digits` in a register with per-wire dimensions `dims`.
///
/// ```
/// use qudit_color::state::{mixed_radix_decode, mixed_radix_encode};
/// assert_eq!(mixed_radix_encode(&[0, 1, 1], &[3, 3, 3]).unwrap(), 4);
/// assert_eq!(mixed_radix_decode(4, &[3, 3, 3]).unwrap(), vec![0, 1, 1]);
/// ```
pub fn mixed_radix_encode(digits: &[usize], dims: &[usize]) -> Result<usize> {
    if digits.len() != dims.len() {
        return Err(Error::Parameter(format!(
            "{} digits for {} wires",
            digits.len(),
            dims.len()
        )));
    }
    let mut index = 0usize;
    for (i, (&digit, &dim)) in digits.iter().zip(dims).enumerate() {
        if digit >= dim {
            return Err(Error::Parameter(format!(
                "digit {digit} on wire {i} exceeds dimension {dim}"
            )));
        }
        index = index * dim + digit;
    }
    Ok(index)
}

/// Inverse of [`mixed_radix_encode`].
pub fn mixed_radix_decode(mut index: usize, dims: &[usize]) -> Result<Vec<usize>> {
    let size: usize = dims.iter().product();
    if index >= size {
        return Err(Error::Parameter(format!(
            "index {index} out of range for a register of size {size}"
        )));
    }
    let mut digits = vec![0; dims.len()];
    for (slot, &dim) in digits.iter_mut().zip(dims).rev() {
        *slot = index % dim;
        index /= dim;
    }
    Ok(digits)
}

/// Render digits as a basis string, one base-36 character per wire.
pub fn basis_string(digits: &[usize]) -> String {
    digits
        .iter()
        .map(|&d| std::char::from_digit(d as u32, 36).expect("digit < 36"))
        .collect()
}

/// Row-major strides: `strides[i] = prod(dims[i+1..])`.
pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

fn check_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::Parameter("register needs at least one wire".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| !(2..=36).contains(&d)) {
        return Err(Error::Parameter(format!(
            "wire dimension {d} outside supported range 2..=36"
        )));
    }
    Ok(())
}

/// Amplitudes over a register of wires with individual local dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state `|digits>`.
    pub fn basis(dims: &[usize], digits: &[usize]) -> Result<Self> {
        check_dims(dims)?;
        let size: usize = dims.iter().product();
        let index = mixed_radix_encode(digits, dims)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); size];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            dims: dims.to_vec(),
            amplitudes,
        })
    }

    /// `|0...0>`.
    pub fn zero(dims: &[usize]) -> Result<Self> {
        StateVector::basis(dims, &vec![0; dims.len()])
    }

    /// Wrap raw amplitudes; the vector must match the register size and be normalized.
    pub fn from_amplitudes(dims: &[usize], amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dims(dims)?;
        let size: usize = dims.iter().product();
        if amplitudes.len() != size {
            return Err(Error::Parameter(format!(
                "{} amplitudes for a register of size {size}",
                amplitudes.len()
            )));
        }
        let s = StateVector {
            dims: dims.to_vec(),
            amplitudes,
        };
        if (s.norm_sqr() - 1.0).abs() > 1e-10 {
            return Err(Error::Parameter(format!(
                "state is not normalized (norm^2 = {})",
                s.norm_sqr()
            )));
        }
        Ok(s)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<Complex64> {
        Ok(self.amplitudes[mixed_radix_encode(digits, &self.dims)?])
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::Structural("inner product of mismatched registers".into()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Apply a placed gate in place.
    pub fn apply(&mut self, gate: &PlacedGate) -> Result<()> {
        gate.validate(&self.dims)?;
        let levels = gate.effective_dim(&self.dims);
        let action = gate.kind.action(levels)?;
        let strides = strides(&self.dims);
        let t = gate.target;
        let (dim_t, stride_t) = (self.dims[t], strides[t]);
        let controls: Vec<(usize, usize, usize)> = gate
            .controls
            .iter()
            .map(|c| (strides[c.wire], self.dims[c.wire], c.value))
            .collect();
        let block = dim_t * stride_t;
        let mut buf = vec![Complex64::new(0.0, 0.0); levels];

        for outer in (0..self.amplitudes.len()).step_by(block) {
            for inner in 0..stride_t {
                let base = outer + inner;
                if !controls
                    .iter()
                    .all(|&(stride, dim, value)| (base / stride) % dim == value)
                {
                    continue;
                }
                match &action {
                    Action::Diagonal(phases) => {
                        for (j, p) in phases.iter().enumerate() {
                            self.amplitudes[base + j * stride_t] *= p;
                        }
                    }
                    Action::Permute(perm) => {
                        for (j, slot) in buf.iter_mut().enumerate() {
                            *slot = self.amplitudes[base + j * stride_t];
                        }
                        for (j, &p) in perm.iter().enumerate() {
                            self.amplitudes[base + p * stride_t] = buf[j];
                        }
                    }
                    Action::Dense(m) => {
                        for (j, slot) in buf.iter_mut().enumerate() {
                            *slot = self.amplitudes[base + j * stride_t];
                        }
                        for i in 0..levels {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for (j, b) in buf.iter().enumerate() {
                                acc += m[[i, j]] * b;
                            }
                            self.amplitudes[base + i * stride_t] = acc;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Apply a sequence of gates in order.
    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a PlacedGate>) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    /// Marginal distribution over `wires`, indexed by the mixed-radix index of
    /// the selected digits (in the order given).
    pub fn marginal(&self, wires: &[usize]) -> Result<Vec<f64>> {
        if wires.is_empty() {
            return Err(Error::Parameter("empty wire set".into()));
        }
        let mut seen = vec![false; self.dims.len()];
        for &w in wires {
            if w >= self.dims.len() || seen[w] {
                return Err(Error::Structural(format!("bad or repeated wire {w}")));
            }
            seen[w] = true;
        }
        let strides = strides(&self.dims);
        let sub_dims: Vec<usize> = wires.iter().map(|&w| self.dims[w]).collect();
        let size: usize = sub_dims.iter().product();
        let mut out = vec![0.0; size];
        for (index, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut sub = 0;
            for (&w, &dim) in wires.iter().zip(&sub_dims) {
                sub = sub * dim + (index / strides[w]) % self.dims[w];
            }
            out[sub] += p;
        }
        Ok(out)
    }

    /// Marginal probabilities keyed by basis string. Zero-probability outcomes
    /// are included, so the map always has `prod(dims[wires])` entries.
    pub fn measure_probabilities(&self, wires: &[usize]) -> Result<BTreeMap<String, f64>> {
        let marginal = self.marginal(wires)?;
        let sub_dims: Vec<usize> = wires.iter().map(|&w| self.dims[w]).collect();
        marginal
            .into_iter()
            .enumerate()
            .map(|(i, p)| Ok((basis_string(&mixed_radix_decode(i, &sub_dims)?), p)))
            .collect()
    }
}

/// Functional form of [`StateVector::apply`].
pub fn apply_gate(state: &StateVector, gate: &PlacedGate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}
