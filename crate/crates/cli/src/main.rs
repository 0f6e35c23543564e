//! `qcolor`: synthesize, simulate, lower and cost Grover k-coloring oracles.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use qudit_color::cost::{analyze, compare_baselines};
use qudit_color::decompose::{decompose_circuit, verify_lowering, Level, TOLERANCE};
use qudit_color::graph::{parse_graph, GraphFormat};
use qudit_color::grover::run_grover;
use qudit_color::netlist::{parse_netlist, serialize_netlist};
use qudit_color::{synth_oracle, Error, Graph, KickbackMode};

#[derive(Parser)]
#[command(name = "qcolor", version, about = "Grover k-coloring oracles on qudits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Instance {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// edge-list, adjacency-json or dimacs-col; guessed from the extension if omitted.
    #[arg(long)]
    format: Option<String>,
    /// Number of colors.
    #[arg(long)]
    k: usize,
    /// Qudit dimension.
    #[arg(long)]
    d: usize,
    /// paper-exact or pi-phase.
    #[arg(long, default_value = "paper-exact")]
    kickback: String,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize the oracle netlist.
    Synth {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run Grover's search exactly and write the data-register histogram.
    Simulate {
        #[command(flatten)]
        instance: Instance,
        /// Iteration count or `auto`.
        #[arg(long, default_value = "auto")]
        iterations: String,
        /// Histogram output; `.json` writes JSON, anything else CSV.
        #[arg(long)]
        histogram: Option<PathBuf>,
        /// States to list (default: the number of solutions, at least 1).
        #[arg(long)]
        top: Option<usize>,
    },
    /// Lower multi-controlled gates in a netlist.
    Decompose {
        #[arg(long)]
        netlist: PathBuf,
        /// mct or two-wire.
        #[arg(long, default_value = "two-wire")]
        level: String,
        #[arg(long)]
        out: PathBuf,
        /// Check every lowered gate against the original.
        #[arg(long)]
        verify: bool,
    },
    /// Print the cost report.
    Report {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        compare_baselines: bool,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_graph(instance: &Instance) -> Result<Graph> {
    let format = match &instance.format {
        Some(f) => f.parse::<GraphFormat>()?,
        None => match instance.graph.extension().and_then(|e| e.to_str()) {
            Some("json") => GraphFormat::AdjacencyJson,
            Some("col") => GraphFormat::DimacsCol,
            _ => GraphFormat::EdgeList,
        },
    };
    let text = read(&instance.graph)?;
    parse_graph(&text, format).with_context(|| format!("in {}", instance.graph.display()))
}

fn synth(instance: &Instance, out: &Path) -> Result<()> {
    let graph = load_graph(instance)?;
    let mode: KickbackMode = instance.kickback.parse()?;
    let oracle = synth_oracle(&graph, instance.k, instance.d, mode)?;
    let netlist = oracle.netlist_circuit();
    write(out, &serialize_netlist(&netlist))?;
    let layout = oracle.layout();
    println!("{graph}, k = {}, d = {}, kickback {mode}", instance.k, instance.d);
    println!("layout: {layout}");
    println!("digits per vertex: {}", layout.digits);
    if layout.has_invalid_flag {
        let invalid: Vec<String> = layout.invalid_colors().map(|c| c.to_string()).collect();
        println!("invalid colors: {}", invalid.join(" "));
    } else {
        println!("invalid colors: none");
    }
    println!(
        "gates: {} ({} preparation + {} oracle), depth {}",
        netlist.len(),
        netlist.len() - oracle.circuit().len(),
        oracle.circuit().len(),
        netlist.depth()
    );
    println!("wrote {}", out.display());
    Ok(())
}

fn simulate(instance: &Instance, iterations: &str, histogram: Option<&Path>, top: Option<usize>) -> Result<()> {
    let graph = load_graph(instance)?;
    let mode: KickbackMode = instance.kickback.parse()?;
    let iterations = match iterations {
        "auto" => None,
        s => Some(
            s.parse::<usize>()
                .map_err(|_| Error::Parameter(format!("--iterations must be an integer or `auto`, got `{s}`")))?,
        ),
    };
    let run = run_grover(&graph, instance.k, instance.d, iterations, mode)?;
    for w in &run.warnings {
        eprintln!("warning: {w}");
    }
    println!("{graph}, k = {}, d = {}, kickback {mode}", instance.k, instance.d);
    println!("solutions: {} of {}", run.solutions, run.histogram.len());
    println!("iterations: {}", run.iterations);
    println!("success probability: {:.6}", run.success_probability());
    let count = top.unwrap_or(run.solutions.max(1));
    println!("top {count} states:");
    let labels = run.labels();
    for (label, p) in run.top_states(count) {
        let idx = labels.iter().position(|l| *l == label).expect("label exists");
        let mark = if run.is_marked(idx) { "marked" } else { "" };
        println!("  {label}  {p:.6}  {mark}");
    }
    if let Some(path) = histogram {
        let text = if path.extension().and_then(|e| e.to_str()) == Some("json") {
            run.to_json()
        } else {
            run.to_csv()
        };
        write(path, &text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn decompose(netlist: &Path, level: &str, out: &Path, verify: bool) -> Result<()> {
    let level: Level = level.parse()?;
    let circuit = parse_netlist(&read(netlist)?).with_context(|| format!("in {}", netlist.display()))?;
    let lowered = decompose_circuit(&circuit, level)?;
    write(out, &serialize_netlist(&lowered))?;
    let max_arity = lowered.gates().iter().map(|g| g.arity()).max().unwrap_or(0);
    println!(
        "{} gates -> {} gates at level {level} (max arity {max_arity}, wire dims {:?})",
        circuit.len(),
        lowered.len(),
        dedup(lowered.dims())
    );
    if verify {
        let (eq, checked) = verify_lowering(&circuit, level)?;
        println!(
            "verified {checked} lowered gates: max deviation {:.3e} {} {TOLERANCE:e}, leakage {:.3e}",
            eq.max_deviation,
            if eq.max_deviation < TOLERANCE { "<" } else { ">=" },
            eq.leakage
        );
        if !eq.equal {
            anyhow::bail!(Error::Validation("lowered circuit differs from the original".into()));
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn dedup(dims: &[usize]) -> Vec<usize> {
    let mut v = dims.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn report(instance: &Instance, baselines: bool, json: bool) -> Result<()> {
    let graph = load_graph(instance)?;
    let mode: KickbackMode = instance.kickback.parse()?;
    let oracle = synth_oracle(&graph, instance.k, instance.d, mode)?;
    let mut report = analyze(&oracle)?;
    if baselines {
        report = compare_baselines(report);
    }
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_table());
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Resource(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth { instance, out } => synth(instance, out),
        Command::Simulate {
            instance,
            iterations,
            histogram,
            top,
        } => simulate(instance, iterations, histogram.as_deref(), *top),
        Command::Decompose {
            netlist,
            level,
            out,
            verify,
        } => decompose(netlist, level, out, *verify),
        Command::Report {
            instance,
            compare_baselines,
            json,
        } => report(instance, *compare_baselines, *json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
