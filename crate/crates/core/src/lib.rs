//! Grover-based graph k-coloring on qudits of any dimension `d >= 2`.
//!
//! The crate synthesizes the coloring oracle for an arbitrary graph, lowers
//! its multi-controlled gates to small-arity gates, simulates the full search
//! exactly on a mixed-radix state vector and tallies the resulting costs.
//!
//! ```
//! use qudit_color::{graph::Graph, grover::run_grover, oracle::KickbackMode};
//!
//! let run = run_grover(&Graph::complete(3)?, 3, 2, None, KickbackMode::PaperExact)?;
//! assert_eq!(run.iterations, 2);
//! assert!(run.success_probability() > 0.95);
//! # Ok::<(), qudit_color::Error>(())
//! ```

pub mod circuit;
pub mod cost;
pub mod decompose;
pub mod error;
pub mod gate;
pub mod graph;
pub mod grover;
pub mod netlist;
pub mod oracle;
pub mod state;

pub use circuit::{Circuit, WireRole};
pub use error::{Error, Result};
pub use gate::{gate_matrix, Control, GateKind, PlacedGate};
pub use graph::Graph;
pub use oracle::{synth_oracle, KickbackMode, OracleCircuit, RegisterLayout};
pub use state::StateVector;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/qudits.md")]
    struct Qudits;
    #[doc = include_str!("../../../book/src/oracle.md")]
    struct Oracle;
    #[doc = include_str!("../../../book/src/grover.md")]
    struct Grover;
    #[doc = include_str!("../../../book/src/decomposition.md")]
    struct Decomposition;
    #[doc = include_str!("../../../book/src/costs.md")]
    struct Costs;
    #[doc = include_str!("../../../book/src/netlist-format.md")]
    struct NetlistFormat;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../book/src/report-schema.md")]
    struct ReportSchema;
}
