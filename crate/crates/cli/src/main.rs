//! `rainbow`: command-line front end for the rainbow-graphs library.
//!
//! Every subcommand is a thin shell around one library operation: parse
//! flags, read/write the text graph format, map errors to exit codes.
//! Exit status: 0 success (or property true), 1 property false, 2 usage or
//! parse error, 3 infeasible input.

use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rainbow_graphs::expansion::{check_expansion, ExpansionReport};
use rainbow_graphs::experiments::{run_plan, emit_csv, ExperimentPlan, Property, SweepVar};
use rainbow_graphs::generators::{
    color_uniform, gen_host, k_out, k_out_capped, perturb, split_host, HostKind, HostSpec,
};
use rainbow_graphs::graph::{ColoredGraph, Graph};
use rainbow_graphs::hamiltonicity::{
    find_hamilton_with_budget, pack_rainbow_hamilton, HamiltonCycle, PackParams,
};
use rainbow_graphs::rainbow_connectivity::{is_rainbow_connected, rainbow_path, RcWitness};
use rainbow_graphs::{io as gio, seed, Error};

/// Seed used when `--seed` is absent, so bare invocations reproduce.
const DEFAULT_SEED: u64 = 1729;

#[derive(Parser)]
#[command(
    name = "rainbow",
    about = "Randomly perturbed, randomly colored graphs: generators, \
             Hamilton cycle search, rainbow connectivity, experiments",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Input graph file; stdin when absent.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a host graph.
    Gen {
        /// Host family: random_dense, complete_bipartite, or two_blob.
        #[arg(long)]
        host: String,
        #[arg(long)]
        n: usize,
        /// Minimum-degree fraction in (0, 0.5).
        #[arg(long)]
        delta: f64,
        /// Within-blob edge probability (two_blob only).
        #[arg(long)]
        blob_edge_prob: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Add m uniformly random non-edges to an uncolored graph.
    Perturb {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Color every edge independently and uniformly with one of r colors.
    Color {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Split an uncolored graph into H' (each edge kept with probability p)
    /// and H'' (the rest).
    Split {
        /// Input graph file; stdin when absent.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        p: f64,
        #[arg(long, value_name = "PATH")]
        out_prime: PathBuf,
        #[arg(long, value_name = "PATH")]
        out_rest: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Keep k random incident edges per vertex.
    Kout {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Let low-degree vertices keep all their edges instead of failing.
        #[arg(long)]
        capped: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Check connectivity and vertex expansion |N(S)| > 2|S|.
    ExpansionCheck {
        /// Input graph file; stdin when absent.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0.2)]
        max_fraction: f64,
        #[arg(long, default_value_t = 3)]
        small_cap: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Emit one CSV line instead of the line-oriented report.
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Search for a Hamilton cycle with rotation-extension.
    Ham {
        /// Input graph file; stdin when absent.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Rotation budget; defaults to n².
        #[arg(long)]
        rotation_budget: Option<usize>,
    },
    /// Pack t edge-disjoint rainbow Hamilton cycles from a colored graph.
    RainbowPack {
        /// Input colored graph file; stdin when absent.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Host edges (subset of the input); the whole input when absent.
        #[arg(long, value_name = "PATH")]
        host: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, default_value_t = 0.05)]
        split_p: f64,
        #[arg(long)]
        chunk: Option<usize>,
        #[arg(long)]
        target: Option<usize>,
        /// Fraction of each chunk selection used as Q1 (rest is Q2).
        #[arg(long, conflicts_with = "q2_frac")]
        q1_frac: Option<f64>,
        /// Complementary way to state the same split: q1_frac = 1 - q2_frac.
        #[arg(long)]
        q2_frac: Option<f64>,
        #[arg(long)]
        rotation_budget: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decide rainbow connectivity; exit 0 if connected, 1 if not.
    RcCheck {
        /// Input colored graph file; stdin when absent.
        #[arg(long = "in", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Print the failing pair, or one rainbow path per pair on success.
        #[arg(long)]
        witness: bool,
    },
    /// Run a Monte Carlo sweep and emit CSV.
    Experiment {
        /// Plan file (key = value lines); replaces the inline flags.
        #[arg(long, value_name = "PATH")]
        plan: Option<PathBuf>,
        #[arg(long, required_unless_present = "plan")]
        property: Option<String>,
        #[arg(long, required_unless_present = "plan")]
        host: Option<String>,
        #[arg(long, required_unless_present = "plan")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "plan")]
        delta: Option<f64>,
        #[arg(long)]
        blob_edge_prob: Option<f64>,
        /// Swept variable: m, r, or n.
        #[arg(long)]
        sweep: Option<String>,
        /// Sweep values, comma separated.
        #[arg(long, value_delimiter = ',')]
        values: Vec<u64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 30)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Worker threads; affects speed only, never results.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Infeasible(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn read_input(path: Option<&Path>) -> rainbow_graphs::Result<ColoredGraph> {
    match path {
        Some(p) => gio::read_colored_file(p),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            gio::read_colored(buf.as_bytes())
        }
    }
}

/// Reads an input that must be uncolored (r = 0) and strips the wrapper.
fn read_uncolored(path: Option<&Path>, what: &str) -> rainbow_graphs::Result<Graph> {
    let cg = read_input(path)?;
    if cg.r() != 0 {
        return Err(Error::InvalidInput(format!(
            "{what} expects an uncolored graph (header r = 0), got r = {}",
            cg.r()
        )));
    }
    Ok(cg.graph().clone())
}

fn write_out(path: Option<&Path>, body: &str) -> rainbow_graphs::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(std::fs::File::create(p)?);
            w.write_all(body.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn write_graph_out(path: Option<&Path>, g: &Graph) -> rainbow_graphs::Result<()> {
    let mut buf = Vec::new();
    gio::write_graph(&mut buf, g)?;
    write_out(path, std::str::from_utf8(&buf).expect("format is ascii"))
}

fn cycle_line(cycle: &HamiltonCycle) -> String {
    let words: Vec<String> = cycle.vertices().iter().map(|v| v.to_string()).collect();
    words.join(" ")
}

fn run(cmd: Command) -> rainbow_graphs::Result<ExitCode> {
    match cmd {
        Command::Gen { host, n, delta, blob_edge_prob, seed: s, out } => {
            let mut spec = HostSpec::new(host.parse::<HostKind>()?, n, delta);
            if let Some(p) = blob_edge_prob {
                spec.blob_edge_prob = p;
            }
            let g = gen_host(&spec, &mut seed::stream(s, seed::TAG_HOST, 0))?;
            write_graph_out(out.as_deref(), &g)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Perturb { io, m, seed: s } => {
            let g = read_uncolored(io.input.as_deref(), "perturb")?;
            let extra = perturb(&g, m, &mut seed::stream(s, seed::TAG_PERTURB, 0))?;
            write_graph_out(io.out.as_deref(), &g.union(&extra)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Color { io, r, seed: s } => {
            let g = read_uncolored(io.input.as_deref(), "color")?;
            let cg = color_uniform(&g, r, &mut seed::stream(s, seed::TAG_COLOR, 0))?;
            let mut buf = Vec::new();
            gio::write_colored(&mut buf, &cg)?;
            write_out(io.out.as_deref(), std::str::from_utf8(&buf).expect("ascii"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Split { input, p, out_prime, out_rest, seed: s } => {
            let g = read_uncolored(input.as_deref(), "split")?;
            let split = split_host(&g, p, &mut seed::stream(s, seed::TAG_SPLIT, 0))?;
            gio::write_graph_file(&out_prime, &split.h_prime)?;
            gio::write_graph_file(&out_rest, &split.h_double_prime)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Kout { io, k, capped, seed: s } => {
            let g = read_uncolored(io.input.as_deref(), "kout")?;
            let mut rng = seed::stream(s, seed::TAG_KOUT, 0);
            let sub = if capped { k_out_capped(&g, k, &mut rng) } else { k_out(&g, k, &mut rng)? };
            write_graph_out(io.out.as_deref(), &sub)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExpansionCheck { input, max_fraction, small_cap, samples, csv, seed: s } => {
            let cg = read_input(input.as_deref())?;
            let mut rng = seed::stream(s, seed::TAG_EXPANSION, 0);
            let report = check_expansion(cg.graph(), max_fraction, small_cap, samples, &mut rng)?;
            print!("{}", render_expansion(&report, csv));
            Ok(if report.connected && report.expansion_holds() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Ham { input, rotation_budget } => {
            let cg = read_input(input.as_deref())?;
            let g = cg.graph();
            let budget = rotation_budget.unwrap_or(g.n() * g.n());
            let outcome = find_hamilton_with_budget(g, &[], &[], budget)?;
            match outcome.cycle() {
                Some(cycle) => {
                    cycle.verify(g)?;
                    println!("{}", cycle_line(cycle));
                    println!("verified 1/1 cycles");
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("no hamilton cycle found");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::RainbowPack {
            input,
            host,
            t,
            k,
            split_p,
            chunk,
            target,
            q1_frac,
            q2_frac,
            rotation_budget,
            seed: s,
        } => {
            let cg = read_input(input.as_deref())?;
            let host_graph = match host {
                Some(p) => {
                    let h = gio::read_colored_file(&p)?;
                    h.graph().clone()
                }
                None => cg.graph().clone(),
            };
            let params = PackParams {
                k,
                split_p,
                chunk,
                target,
                q1_frac: q1_frac.or(q2_frac.map(|q2| 1.0 - q2)),
                rotation_budget,
            };
            let packing = pack_rainbow_hamilton(&cg, &host_graph, t, &params, s)?;
            let mut verified = 0;
            for packed in &packing.cycles {
                packed.cycle.verify_rainbow(&cg)?;
                verified += 1;
                println!("{}", cycle_line(&packed.cycle));
            }
            println!(
                "packed {}/{} cycles, verified {verified}/{}",
                packing.cycles.len(),
                packing.requested,
                packing.cycles.len()
            );
            for (part, failure) in &packing.failures {
                eprintln!(
                    "part {part}: stuck at path length {} after {} boosters",
                    failure.longest_path, failure.boosters_consumed
                );
            }
            Ok(if packing.is_complete() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::RcCheck { input, witness } => {
            let cg = read_input(input.as_deref())?;
            let report = is_rainbow_connected(&cg)?;
            println!("rainbow connected: {}", report.connected);
            if witness {
                match report.witness {
                    Some(RcWitness::Disconnected { u, v }) => {
                        println!("witness: disconnected {u} {v}");
                    }
                    Some(RcWitness::Distance { u, v, distance }) => {
                        println!("witness: distance {u} {v} {distance}");
                    }
                    Some(RcWitness::NoRainbowPath { u, v }) => {
                        println!("witness: no-rainbow-path {u} {v}");
                    }
                    None => {
                        for u in 0..cg.n() as u32 {
                            for v in (u + 1)..cg.n() as u32 {
                                let path = rainbow_path(&cg, u, v)?
                                    .expect("connected graph must yield a path");
                                let words: Vec<String> =
                                    path.iter().map(|x| x.to_string()).collect();
                                println!("{u} {v}: {}", words.join(" "));
                            }
                        }
                    }
                }
            }
            Ok(if report.connected { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Experiment {
            plan,
            property,
            host,
            n,
            delta,
            blob_edge_prob,
            sweep,
            values,
            m,
            r,
            t,
            trials,
            seed: s,
            threads,
            out,
        } => {
            if let Some(workers) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build_global()
                    .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
            }
            let plan = match plan {
                Some(path) => ExperimentPlan::parse(&std::fs::read_to_string(path)?)?,
                None => {
                    let mut spec = HostSpec::new(
                        host.expect("clap enforces").parse::<HostKind>()?,
                        n.expect("clap enforces"),
                        delta.expect("clap enforces"),
                    );
                    if let Some(p) = blob_edge_prob {
                        spec.blob_edge_prob = p;
                    }
                    let mut plan = ExperimentPlan::new(
                        property.expect("clap enforces").parse::<Property>()?,
                        spec,
                    );
                    if let Some(sw) = sweep {
                        plan.sweep = sw.parse::<SweepVar>()?;
                    }
                    plan.values = values;
                    plan.m = m;
                    plan.r = r;
                    plan.t = t;
                    plan.trials = trials;
                    plan.master_seed = s;
                    if plan.values.is_empty() {
                        if let Some(fixed_m) = plan.m {
                            plan.sweep = SweepVar::M;
                            plan.values = vec![fixed_m as u64];
                        }
                    }
                    plan
                }
            };
            let records = run_plan(&plan)?;
            write_out(out.as_deref(), &emit_csv(&records))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn render_expansion(report: &ExpansionReport, csv: bool) -> String {
    let holds = report.expansion_holds();
    if csv {
        return format!(
            "connected,small_cap,small_violations,samples,sampled_violations,expansion_holds\n\
             {},{},{},{},{},{}\n",
            report.connected,
            report.small_cap,
            report.small_violation_count,
            report.samples,
            report.sampled_violation_count,
            holds
        );
    }
    let mut out = String::new();
    out.push_str(&format!("connected {}\n", report.connected));
    out.push_str(&format!("small_cap {}\n", report.small_cap));
    out.push_str(&format!("small_violations {}\n", report.small_violation_count));
    out.push_str(&format!("samples {}\n", report.samples));
    out.push_str(&format!("sampled_violations {}\n", report.sampled_violation_count));
    out.push_str(&format!("expansion_holds {holds}\n"));
    for (set, nbhd) in report.small_set_violations.iter().take(5) {
        let words: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("violation [{}] neighborhood {nbhd}\n", words.join(" ")));
    }
    out
}
