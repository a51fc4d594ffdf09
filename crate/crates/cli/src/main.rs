use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use prodstruct::colouring::bound_report;
use prodstruct::dot::{decomposition_to_dot, graph_to_dot, partition_to_dot};
use prodstruct::generate::{
    grid_one_plane, random_connected_graph, random_connected_partition, random_curves,
    random_kplane_drawing, random_map_instance, random_one_plane, random_plane_triangulation,
    random_points, random_shortcut_system, rng,
};
use prodstruct::geom::IPoint;
use prodstruct::graph::{Graph, HPartition, TreeDecomposition};
use prodstruct::pipeline::{
    run_knn, run_kplanar, run_map, run_one_planar, run_power, run_shortcut, run_string,
    PipelineOptions, PipelineReport, ShortcutInstance,
};
use serde_json::Value;

/// Product structure for graphs built from shortcut systems.
#[derive(Parser)]
#[command(name = "prodstruct", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random instance as JSON.
    Gen {
        class: GenClass,
        /// Number of vertices, points or curves.
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Crossings per edge (kplane), path length (shortcut).
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Load cap (shortcut), crossings per curve (curves).
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Diagonal probability (one-plane), edge removal probability (map).
        #[arg(long, default_value_t = 0.5)]
        prob: f64,
        /// Nation probability (map).
        #[arg(long, default_value_t = 0.7)]
        nation_prob: f64,
        /// Grid rows and columns (grid-one-plane).
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        cols: usize,
        /// Bends per curve and grid size (curves).
        #[arg(long, default_value_t = 2)]
        bends: usize,
        #[arg(long, default_value_t = 400)]
        size: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a pipeline on an instance file and report; exit code 0 iff every
    /// claim holds.
    Run {
        pipeline: Pipeline,
        file: PathBuf,
        /// k for kplanar, power and knn.
        #[arg(long)]
        k: Option<usize>,
        /// Crossings per curve for string (defaults to the measured value).
        #[arg(long)]
        delta: Option<usize>,
        /// Build and check a p-centered colouring.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = 20)]
        exact_tw_cap: usize,
        #[arg(long, default_value_t = 12)]
        chip_cap: usize,
        #[arg(long, default_value_t = 18)]
        checker_cap: usize,
        /// Seed to record in the report.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Write the lifted partition as DOT.
        #[arg(long)]
        dot_out: Option<PathBuf>,
    },
    /// Export a graph, `{graph, partition}` pair or tree decomposition as DOT.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the table of theoretical caps for a class.
    Bounds {
        class: String,
        /// Parameters as name=value.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, u64)>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenClass {
    Triangulation,
    OnePlane,
    GridOnePlane,
    Kplane,
    Points,
    Map,
    Curves,
    Graph,
    Shortcut,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pipeline {
    Kplanar,
    #[value(name = "1planar")]
    OnePlanar,
    Shortcut,
    Power,
    Map,
    String,
    Knn,
}

fn parse_param(s: &str) -> std::result::Result<(String, u64), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=value")?;
    let v = v
        .parse()
        .map_err(|_| format!("`{v}` is not a non-negative integer"))?;
    Ok((k.to_string(), v))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read<T: serde::de::DeserializeOwned>(file: &Path) -> Result<T> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))
}

#[allow(clippy::too_many_arguments)]
fn generate(
    class: GenClass,
    n: usize,
    k: usize,
    d: usize,
    prob: f64,
    nation_prob: f64,
    (rows, cols): (usize, usize),
    (bends, size): (usize, i64),
    seed: u64,
) -> Result<String> {
    let r = &mut rng(seed);
    let json = match class {
        GenClass::Triangulation => {
            serde_json::to_string_pretty(&random_plane_triangulation(n, r)?)?
        }
        GenClass::OnePlane => serde_json::to_string_pretty(&random_one_plane(n, prob, r)?)?,
        GenClass::GridOnePlane => serde_json::to_string_pretty(&grid_one_plane(rows, cols)?)?,
        GenClass::Kplane => serde_json::to_string_pretty(&random_kplane_drawing(n, k, r)?)?,
        GenClass::Points => serde_json::to_string_pretty(&random_points(n, r))?,
        GenClass::Map => {
            serde_json::to_string_pretty(&random_map_instance(n, prob, nation_prob, r)?)?
        }
        GenClass::Curves => serde_json::to_string_pretty(&random_curves(n, bends, size, d, r)?)?,
        GenClass::Graph => serde_json::to_string_pretty(&random_connected_graph(n, n, 5, r))?,
        GenClass::Shortcut => {
            let g = random_connected_graph(n, n, 5, r);
            let partition = random_connected_partition(&g, (n / 4).max(1), r);
            let system = random_shortcut_system(&g, k, d, 2 * n, r);
            serde_json::to_string_pretty(&ShortcutInstance {
                system,
                partition,
                layering: None,
                decomposition: None,
            })?
        }
    };
    Ok(json + "\n")
}

fn run(
    pipeline: Pipeline,
    file: &Path,
    k: Option<usize>,
    delta: Option<usize>,
    opts: &PipelineOptions,
) -> Result<PipelineReport> {
    let need_k = || k.context("this pipeline needs --k");
    Ok(match pipeline {
        Pipeline::Kplanar => run_kplanar(&read(file)?, k, opts)?,
        Pipeline::OnePlanar => run_one_planar(&read(file)?, opts)?,
        Pipeline::Shortcut => run_shortcut(&read(file)?, opts)?,
        Pipeline::Power => run_power(&read::<Graph>(file)?, need_k()?, opts)?,
        Pipeline::Map => run_map(&read(file)?, opts)?,
        Pipeline::String => run_string(&read(file)?, delta, opts)?,
        Pipeline::Knn => run_knn(&read::<Vec<IPoint>>(file)?, need_k()?, opts)?,
    })
}

fn export_dot(file: &Path) -> Result<String> {
    let v: Value = read(file)?;
    if v.get("bags").is_some() {
        let td: TreeDecomposition = serde_json::from_value(v)?;
        return Ok(decomposition_to_dot(&td));
    }
    if let (Some(g), Some(p)) = (v.get("graph"), v.get("partition")) {
        let g: Graph = serde_json::from_value(g.clone())?;
        let p: HPartition = serde_json::from_value(p.clone())?;
        if p.vertex_count() != g.vertex_count() {
            bail!("partition and graph differ in size");
        }
        return Ok(partition_to_dot(&g, &p));
    }
    let g: Graph = serde_json::from_value(v)?;
    Ok(graph_to_dot(&g))
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Gen {
            class,
            n,
            k,
            d,
            prob,
            nation_prob,
            rows,
            cols,
            bends,
            size,
            seed,
            out,
        } => {
            let json = generate(
                class,
                n,
                k,
                d,
                prob,
                nation_prob,
                (rows, cols),
                (bends, size),
                seed,
            )?;
            write_out(out.as_deref(), &json)?;
        }
        Command::Run {
            pipeline,
            file,
            k,
            delta,
            p,
            exact_tw_cap,
            chip_cap,
            checker_cap,
            seed,
            json_out,
            dot_out,
        } => {
            let opts = PipelineOptions {
                exact_tw_cap,
                chi_cap: chip_cap,
                checker_cap,
                colour_p: p,
                seed,
            };
            let report = run(pipeline, &file, k, delta, &opts)?;
            write_out(
                json_out.as_deref(),
                &(serde_json::to_string_pretty(&report)? + "\n"),
            )?;
            if let Some(path) = dot_out {
                let a = &report.artifacts;
                match (&a.graph, &a.partition) {
                    (Some(g), Some(p)) => write_out(Some(&path), &partition_to_dot(g, p))?,
                    _ => bail!("this pipeline produced no partition to export"),
                }
            }
            for c in report.claims.iter().filter(|c| !c.pass) {
                eprintln!("claim failed: {}", c.name);
            }
            return Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::ExportDot { file, out } => {
            write_out(out.as_deref(), &export_dot(&file)?)?;
        }
        Command::Bounds { class, params } => {
            let params: BTreeMap<String, u64> = params.into_iter().collect();
            let report = bound_report(&class, &params)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}
