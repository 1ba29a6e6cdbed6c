use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use fourcolor::atlas;
use fourcolor::colorer::{four_color, Budget, Coloring, TraceCounts};
use fourcolor::graph::VertexId;
use fourcolor::oracle;
use fourcolor::workbench::bench::{render_table, run_bench};
use fourcolor::workbench::fixtures::{gen_fixture, Fixture};
use fourcolor::workbench::format::{
    emit_coloring_json, emit_edge_list, emit_rotation_json, parse_coloring_json, parse_instance,
    ParsedInstance, RotationJsonFile,
};
use fourcolor::workbench::fuzz::{run_campaign, FuzzParams};
use fourcolor::workbench::gen::{gen_with_mode, GenMode};

/// Plane-triangulation coloring workbench.
#[derive(Parser)]
#[command(name = "fourcolor", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Four-color an instance; exit 0 on <= 4 colors, 2 on the 5-color fallback.
    Color {
        /// Instance file (rotation JSON or edge list).
        file: PathBuf,
        /// Strategy attempts allowed per degree-4/5 vertex.
        #[arg(long, default_value_t = 64)]
        budget: u32,
        /// Write the coloring as JSON.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Write a Graphviz rendering with color classes filled.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a coloring file against an instance; exit 0 proper, 1 improper.
    Verify {
        file: PathBuf,
        coloring: PathBuf,
    },
    /// Triangulate an instance and emit the maximal supergraph.
    Triangulate {
        file: PathBuf,
        /// Output path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate, classify and reduce the ring-configuration atlas.
    Atlas {
        /// Ring length, 4 or 5.
        #[arg(long)]
        d: usize,
        /// Show the class table reduced by ring symmetry as well.
        #[arg(long)]
        dihedral: bool,
        /// Structured report path (default atlas_d<d>.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parallel fuzz campaign over random triangulations.
    Fuzz {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        count: u64,
        #[arg(long)]
        seed: u64,
        /// Worker threads (default: FOURCOLOR_JOBS or all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Output directory for records.jsonl and corpus/.
        #[arg(long)]
        out: PathBuf,
        /// Strategy attempts allowed per degree-4/5 vertex.
        #[arg(long, default_value_t = 64)]
        budget: u32,
    },
    /// Wall-time table for the coloring and Kempe paths.
    Bench {
        /// Instance sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u32>,
    },
    /// Generate an instance (random triangulation or named fixture).
    Gen {
        /// Random instance size (ignored with --fixture).
        #[arg(long, conflicts_with = "fixture")]
        n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// stacked | flipped
        #[arg(long, default_value = "stacked")]
        mode: String,
        /// k4 | octahedron | icosahedron | errera | glued-k4s | wheel(d) | bipyramid(d)
        #[arg(long)]
        fixture: Option<String>,
        /// rotation | edgelist
        #[arg(long, default_value = "rotation")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Color {
            file,
            budget,
            emit,
            dot,
        } => cmd_color(&file, budget, emit.as_deref(), dot.as_deref()),
        Command::Verify { file, coloring } => cmd_verify(&file, &coloring),
        Command::Triangulate { file, out } => cmd_triangulate(&file, out.as_deref()),
        Command::Atlas { d, dihedral, out } => cmd_atlas(d, dihedral, out),
        Command::Fuzz {
            n_min,
            n_max,
            count,
            seed,
            jobs,
            out,
            budget,
        } => cmd_fuzz(n_min, n_max, count, seed, jobs, out, budget),
        Command::Bench { sizes } => {
            let rows = run_bench(&sizes, &Budget::default());
            print!("{}", render_table(&rows));
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen {
            n,
            seed,
            mode,
            fixture,
            format,
            out,
        } => cmd_gen(n, seed, &mode, fixture.as_deref(), &format, out.as_deref()),
    }
}

fn load_instance(path: &Path) -> Result<ParsedInstance> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_instance(&text).with_context(|| format!("parsing {}", path.display()))?)
}

/// Colors every component and reassembles over the file's vertex ids.
fn color_instance(
    instance: &ParsedInstance,
    budget: &Budget,
) -> (Vec<u8>, TraceCounts, u64, bool) {
    let mut colors = vec![0u8; instance.n_total];
    let mut counts = TraceCounts::default();
    let mut gap_events = 0u64;
    let mut fallback = false;
    for component in &instance.components {
        let (coloring, trace) = four_color(&component.graph, budget);
        for (local, &orig) in component.original_ids.iter().enumerate() {
            colors[orig as usize] = coloring.get(local as VertexId).expect("total coloring");
        }
        gap_events += trace.gap_events();
        fallback |= trace.used_kempe_fallback();
        merge_counts(&mut counts, trace.counts());
    }
    (colors, counts, gap_events, fallback)
}

fn merge_counts(into: &mut TraceCounts, from: &TraceCounts) {
    into.base_case += from.base_case;
    into.separating_split += from.separating_split;
    into.low_degree += from.low_degree;
    into.ring_direct += from.ring_direct;
    into.attempts_direct += from.attempts_direct;
    into.attempts_whole_ring += from.attempts_whole_ring;
    into.attempts_edge_pair += from.attempts_edge_pair;
    into.attempts_kempe_swap += from.attempts_kempe_swap;
    into.attempts_oracle += from.attempts_oracle;
    into.wins_direct += from.wins_direct;
    into.wins_whole_ring += from.wins_whole_ring;
    into.wins_edge_pair += from.wins_edge_pair;
    into.wins_kempe_swap += from.wins_kempe_swap;
    into.wins_oracle += from.wins_oracle;
    into.fallback_kempe += from.fallback_kempe;
    into.fallback_oracle += from.fallback_oracle;
    into.gap_events += from.gap_events;
}

fn cmd_color(
    path: &Path,
    budget: u32,
    emit: Option<&Path>,
    dot: Option<&Path>,
) -> Result<ExitCode> {
    let instance = load_instance(path)?;
    let budget = Budget {
        attempts_per_call: budget,
        ..Budget::default()
    };
    let (colors, counts, gap_events, fallback) = color_instance(&instance, &budget);
    let mut used = [false; 6];
    for &c in &colors {
        used[c as usize] = true;
    }
    let colors_used = used.iter().filter(|&&b| b).count();
    println!("colors_used: {colors_used}");
    println!(
        "strategy summary: base={} split={} low_degree={} ring_direct={} s0={}/{} s1={}/{} s2={}/{} s3={}/{} s4={}/{} kempe_fallback={} gap_events={}",
        counts.base_case,
        counts.separating_split,
        counts.low_degree,
        counts.ring_direct,
        counts.wins_direct,
        counts.attempts_direct,
        counts.wins_whole_ring,
        counts.attempts_whole_ring,
        counts.wins_edge_pair,
        counts.attempts_edge_pair,
        counts.wins_kempe_swap,
        counts.attempts_kempe_swap,
        counts.wins_oracle,
        counts.attempts_oracle,
        counts.fallback_kempe,
        gap_events,
    );
    if let Some(out) = emit {
        let mut coloring = Coloring::new(instance.n_total);
        for (v, &c) in colors.iter().enumerate() {
            coloring.set(v as VertexId, c);
        }
        std::fs::write(out, emit_coloring_json(instance.n_total, &coloring)?)
            .with_context(|| format!("writing {}", out.display()))?;
    }
    if let Some(out) = dot {
        std::fs::write(out, render_dot(&instance, &colors))
            .with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(if fallback {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn render_dot(instance: &ParsedInstance, colors: &[u8]) -> String {
    const FILLS: [&str; 6] = ["white", "#e64980", "#74b816", "#fab005", "#4dabf7", "#b197fc"];
    let mut s = String::from("graph fourcolor {\n  node [style=filled];\n");
    for (v, &c) in colors.iter().enumerate() {
        s.push_str(&format!(
            "  {v} [fillcolor=\"{}\" label=\"{v}:{c}\"];\n",
            FILLS[c as usize]
        ));
    }
    for component in &instance.components {
        for (u, w) in component.graph.edges() {
            let (a, b) = (
                component.original_ids[u as usize],
                component.original_ids[w as usize],
            );
            s.push_str(&format!("  {a} -- {b};\n"));
        }
    }
    s.push_str("}\n");
    s
}

fn cmd_verify(instance_path: &Path, coloring_path: &Path) -> Result<ExitCode> {
    let instance = load_instance(instance_path)?;
    let text = std::fs::read_to_string(coloring_path)
        .with_context(|| format!("reading {}", coloring_path.display()))?;
    let file = parse_coloring_json(&text)?;
    if file.n != instance.n_total {
        bail!(
            "coloring is over {} vertices but the instance has {}",
            file.n,
            instance.n_total
        );
    }
    let mut colors_used = [false; 6];
    for &c in &file.colors {
        colors_used[c as usize] = true;
    }
    for component in &instance.components {
        let mut coloring = Coloring::new(component.graph.slot_count());
        for (local, &orig) in component.original_ids.iter().enumerate() {
            coloring.set(local as VertexId, file.colors[orig as usize]);
        }
        let report = oracle::verify(&component.graph, &coloring)?;
        if let Some((u, w)) = report.violating_edge {
            let (a, b) = (
                component.original_ids[u as usize],
                component.original_ids[w as usize],
            );
            println!("improper: edge {a}-{b} is monochromatic");
            return Ok(ExitCode::from(1));
        }
    }
    println!(
        "proper: {} colors",
        colors_used.iter().filter(|&&b| b).count()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_triangulate(path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let instance = load_instance(path)?;
    let mut rotations: Vec<Vec<VertexId>> = vec![Vec::new(); instance.n_total];
    for component in &instance.components {
        let graph = if component.graph.vertex_count() >= 3 {
            component.graph.triangulate()?.graph
        } else {
            component.graph.clone()
        };
        for (local, &orig) in component.original_ids.iter().enumerate() {
            rotations[orig as usize] = graph
                .rotation(local as VertexId)
                .iter()
                .map(|&w| component.original_ids[w as usize])
                .collect();
        }
    }
    let file = RotationJsonFile {
        n: instance.n_total,
        rotations,
        seed: instance.seed,
        generator: instance.generator.clone(),
    };
    let mut text = serde_json::to_string(&file)?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_atlas(d: usize, dihedral: bool, out: Option<PathBuf>) -> Result<ExitCode> {
    let report = atlas::atlas_report(d)?;
    print!("{}", report.to_text(dihedral));
    let out = out.unwrap_or_else(|| PathBuf::from(format!("atlas_d{d}.json")));
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    std::fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
    eprintln!("structured report written to {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_fuzz(
    n_min: u32,
    n_max: u32,
    count: u64,
    seed: u64,
    jobs: Option<usize>,
    out: PathBuf,
    budget: u32,
) -> Result<ExitCode> {
    if n_min < 4 || n_max < n_min {
        bail!("need 4 <= n_min <= n_max");
    }
    let jobs = jobs
        .or_else(|| {
            std::env::var("FOURCOLOR_JOBS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        });
    let params = FuzzParams {
        n_min,
        n_max,
        count,
        seed,
        jobs,
        out_dir: out,
    };
    let budget = Budget {
        attempts_per_call: budget,
        ..Budget::default()
    };
    let summary = run_campaign(&params, &budget)?;
    println!(
        "records: {}  verifier_failures: {}  gap_instances: {}  five_color_fallbacks: {}  corpus_entries: {}",
        summary.records,
        summary.verifier_failures,
        summary.gap_instances,
        summary.five_color_fallbacks,
        summary.corpus_entries
    );
    Ok(if summary.verifier_failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_gen(
    n: Option<u32>,
    seed: u64,
    mode: &str,
    fixture: Option<&str>,
    format: &str,
    out: Option<&Path>,
) -> Result<ExitCode> {
    let (graph, seed_field, generator) = match fixture {
        Some(name) => {
            let fixture: Fixture = name.parse()?;
            (gen_fixture(&fixture), None, name.to_string())
        }
        None => {
            let n = n.context("either --n or --fixture is required")?;
            let mode: GenMode = mode.parse()?;
            (gen_with_mode(n, seed, mode)?, Some(seed), mode.to_string())
        }
    };
    let text = match format {
        "rotation" => emit_rotation_json(&graph, seed_field, Some(&generator)),
        "edgelist" => emit_edge_list(&graph),
        other => bail!("unknown format {other:?}; use rotation or edgelist"),
    };
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
