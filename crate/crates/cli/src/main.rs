//! Batch front end: family generation, anti-forcing computations, nice
//! matching enumeration, theta/product analysis, construction traces, and
//! the `verify` suite.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage or input error.

mod report;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use antiforce::{
    bounds, cartesian_product, decompose, enumerate_nice, equivalence_classes, generate,
    involution_of, is_isomorphic, max_antiforcing_with_threads, min_antiforcing,
    prime_by_theta, random_extremal, theta_partition, ConstructionTrace, FamilySpec, Graph,
    LabeledClasses, PerfectMatching, Primality,
};

#[derive(Parser)]
#[command(
    name = "antiforce",
    version,
    about = "Anti-forcing numbers, nice perfect matchings, and extremal graphs"
)]
struct Cli {
    /// Worker threads for matching-level parallelism (used by `af --max`).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named family into the graph text format.
    ///
    /// Families: complete N | complete-bipartite M N | cycle N | path N |
    /// hypercube N | folded-hypercube N | enhanced-hypercube N K.
    /// Hypercube families also write an edge-class sidecar `<out>.classes`.
    Gen {
        /// Family name (hyphens or underscores).
        family: String,
        /// Integer parameters of the family.
        params: Vec<usize>,
        /// Output graph file.
        #[arg(short, long)]
        output: PathBuf,
        /// Sidecar path for the labeled edge classes (default `<out>.classes`).
        #[arg(long)]
        classes: Option<PathBuf>,
        /// Skip the classes sidecar.
        #[arg(long)]
        no_classes: bool,
    },
    /// Anti-forcing numbers; prints a JSON result object.
    Af(AfArgs),
    /// Nice perfect matchings of a graph.
    Nice {
        graph: PathBuf,
        /// Print the number of nice matchings (default).
        #[arg(long)]
        count: bool,
        /// Print the matchings in the matching text format, blank-line
        /// separated.
        #[arg(long)]
        list: bool,
        /// Print equivalence classes as a JSON array of index arrays.
        #[arg(long)]
        classes: bool,
        /// Write output here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Edge-involutions of a graph (in bijection with nice matchings).
    Involutions {
        graph: PathBuf,
        /// One involution per line: the images of 0..v-1.
        #[arg(long)]
        list: bool,
    },
    /// Theta* edge classes and the primality certificate.
    Theta {
        graph: PathBuf,
        /// Print the classes, one `class k: u v, ...` line each.
        #[arg(long)]
        classes: bool,
        /// Print `prime` or `inconclusive`.
        #[arg(long)]
        prime: bool,
    },
    /// Cartesian products.
    Product {
        /// Build A.txt x B.txt and write the product graph.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        build: Option<Vec<PathBuf>>,
        /// Search for an isomorphism between two graph files; exit 1 if
        /// none exists.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        verify_iso: Option<Vec<PathBuf>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construction traces: seeded random walks or decompositions.
    Construct {
        /// Seed for the random walk.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of expansion steps.
        #[arg(long, default_value_t = 8)]
        steps: usize,
        /// Vertex-count cap for growth steps.
        #[arg(long, default_value_t = 14)]
        cap: usize,
        /// Decompose GRAPH MATCHING instead of generating randomly.
        #[arg(long, num_args = 2, value_names = ["GRAPH", "MATCHING"])]
        decompose: Option<Vec<PathBuf>>,
        /// Write the trace JSON here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay the built-in check suite and emit a report.
    Verify {
        /// Check suite to run.
        #[arg(long, default_value = "paper")]
        suite: String,
        /// Tier: 3 (sub-second), 4 (adds dimension-4 families and full
        /// random suites), 5 (adds dimension-5 enumeration and primality).
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// Report format: json or tsv.
        #[arg(long, default_value = "json")]
        format: String,
        /// Seed offsetting the random property suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record real per-check timings (breaks byte-for-byte report
        /// determinism).
        #[arg(long)]
        timings: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AfArgs {
    graph: PathBuf,
    /// Matching file in the matching text format.
    #[arg(long, conflicts_with_all = ["matching_class", "max"])]
    matching: Option<PathBuf>,
    /// Use class I from the classes sidecar as the matching.
    #[arg(long, conflicts_with = "max")]
    matching_class: Option<usize>,
    /// Classes sidecar path (default `<graph>.classes`).
    #[arg(long)]
    classes: Option<PathBuf>,
    /// Maximize over all perfect matchings.
    #[arg(long)]
    max: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_text(&text).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))
}

fn read_matching(path: &Path, g: &Graph) -> anyhow::Result<PerfectMatching> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PerfectMatching::parse_text(&text, g).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))
}

fn write_or_print(output: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn parse_family(family: &str, params: &[usize]) -> anyhow::Result<FamilySpec> {
    let need = |k: usize| -> anyhow::Result<()> {
        if params.len() != k {
            bail!("family `{family}` takes {k} parameter(s), got {}", params.len());
        }
        Ok(())
    };
    let spec = match family.replace('_', "-").as_str() {
        "complete" => {
            need(1)?;
            FamilySpec::Complete { n: params[0] }
        }
        "complete-bipartite" => {
            need(2)?;
            FamilySpec::CompleteBipartite {
                m: params[0],
                n: params[1],
            }
        }
        "cycle" => {
            need(1)?;
            FamilySpec::Cycle { n: params[0] }
        }
        "path" => {
            need(1)?;
            FamilySpec::Path { n: params[0] }
        }
        "hypercube" => {
            need(1)?;
            FamilySpec::Hypercube { n: params[0] }
        }
        "folded-hypercube" => {
            need(1)?;
            FamilySpec::FoldedHypercube { n: params[0] }
        }
        "enhanced-hypercube" => {
            need(2)?;
            FamilySpec::EnhancedHypercube {
                n: params[0],
                k: params[1],
            }
        }
        other => bail!("unknown family `{other}`"),
    };
    Ok(spec)
}

fn default_classes_path(graph: &Path) -> PathBuf {
    let mut s = graph.as_os_str().to_os_string();
    s.push(".classes");
    PathBuf::from(s)
}

fn load_class_matching(
    g: &Graph,
    graph_path: &Path,
    classes_path: Option<&Path>,
    id: usize,
) -> anyhow::Result<PerfectMatching> {
    let path = classes_path
        .map(Path::to_path_buf)
        .unwrap_or_else(|| default_classes_path(graph_path));
    let text = fs::read_to_string(&path)
        .with_context(|| format!("reading classes sidecar {}", path.display()))?;
    let classes =
        LabeledClasses::parse_text(&text).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))?;
    let edges = classes
        .get(id)
        .ok_or_else(|| anyhow::anyhow!("{}: no class {id}", path.display()))?;
    PerfectMatching::from_edges(g, edges)
        .map_err(|e| anyhow::anyhow!("class {id} is not a perfect matching: {e}"))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen {
            family,
            params,
            output,
            classes,
            no_classes,
        } => {
            let spec = parse_family(&family, &params)?;
            let (g, labeled) = generate(&spec)?;
            fs::write(&output, g.to_text())
                .with_context(|| format!("writing {}", output.display()))?;
            if !no_classes && !labeled.is_empty() {
                let path = classes.unwrap_or_else(|| default_classes_path(&output));
                fs::write(&path, labeled.to_text())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Af(args) => run_af(args, cli.threads),

        Command::Nice {
            graph,
            count,
            list,
            classes,
            output,
        } => {
            let g = read_graph(&graph)?;
            let nice = enumerate_nice(&g);
            let mut content = String::new();
            if list {
                let blocks: Vec<String> = nice.iter().map(|m| m.to_text()).collect();
                content.push_str(&blocks.join("\n"));
            } else if classes {
                let partition = equivalence_classes(&g, &nice)?;
                content.push_str(&serde_json::to_string(&partition)?);
                content.push('\n');
            } else {
                let _ = count; // counting is the default
                content.push_str(&format!("{}\n", nice.count()));
            }
            write_or_print(output.as_deref(), &content)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Involutions { graph, list } => {
            let g = read_graph(&graph)?;
            let nice = enumerate_nice(&g);
            if list {
                for m in nice.iter() {
                    let alpha = involution_of(&g, m)?;
                    let images: Vec<String> =
                        alpha.images().iter().map(|v| v.to_string()).collect();
                    println!("{}", images.join(" "));
                }
            } else {
                println!("{}", nice.count());
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Theta {
            graph,
            classes,
            prime,
        } => {
            let g = read_graph(&graph)?;
            if prime {
                match prime_by_theta(&g)? {
                    Primality::Prime => println!("prime"),
                    Primality::Inconclusive => println!("inconclusive"),
                }
            }
            if classes || !prime {
                let t = theta_partition(&g)?;
                for (k, class) in t.classes().iter().enumerate() {
                    let body: Vec<String> =
                        class.iter().map(|e| format!("{} {}", e.u(), e.v())).collect();
                    println!("class {}: {}", k + 1, body.join(", "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Product {
            build,
            verify_iso,
            output,
        } => {
            if let Some(paths) = build {
                let a = read_graph(&paths[0])?;
                let b = read_graph(&paths[1])?;
                let p = cartesian_product(&a, &b);
                write_or_print(output.as_deref(), &p.graph().to_text())?;
                return Ok(ExitCode::SUCCESS);
            }
            if let Some(paths) = verify_iso {
                let a = read_graph(&paths[0])?;
                let b = read_graph(&paths[1])?;
                return match is_isomorphic(&a, &b) {
                    Some(phi) => {
                        println!("{}", json!({ "isomorphic": true, "witness": phi }));
                        Ok(ExitCode::SUCCESS)
                    }
                    None => {
                        println!("{}", json!({ "isomorphic": false }));
                        Ok(ExitCode::from(1))
                    }
                };
            }
            bail!("product needs --build or --verify-iso");
        }

        Command::Construct {
            seed,
            steps,
            cap,
            decompose: decompose_paths,
            output,
        } => {
            let trace: ConstructionTrace = match decompose_paths {
                Some(paths) => {
                    let g = read_graph(&paths[0])?;
                    let m = read_matching(&paths[1], &g)?;
                    decompose(&g, &m)?
                }
                None => random_extremal(seed, steps, cap),
            };
            let mut content = trace.to_json();
            content.push('\n');
            write_or_print(output.as_deref(), &content)?;
            eprintln!(
                "trace: {} steps, v={}, e={}",
                trace.steps().len(),
                trace.graph().vertex_count(),
                trace.graph().edge_count()
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            suite,
            max_dim,
            format,
            seed,
            timings,
            output,
        } => {
            if suite != "paper" {
                bail!("unknown suite `{suite}` (only `paper`)");
            }
            let report = verify::run_paper_suite(max_dim, seed, timings)?;
            let rendered = report.emit(&format)?;
            write_or_print(output.as_deref(), &rendered)?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn run_af(args: AfArgs, threads: usize) -> anyhow::Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let b = bounds(&g);
    let (matching_desc, m) = if args.max {
        let (_, argmax) = max_antiforcing_with_threads(&g, threads)?;
        ("argmax".to_string(), argmax)
    } else if let Some(path) = &args.matching {
        (path.display().to_string(), read_matching(path, &g)?)
    } else if let Some(id) = args.matching_class {
        (
            format!("class {id}"),
            load_class_matching(&g, &args.graph, args.classes.as_deref(), id)?,
        )
    } else {
        bail!("af needs --matching, --matching-class or --max");
    };
    let result = min_antiforcing(&g, &m)?;
    let witness: Vec<(usize, usize)> = result.witness.iter().map(|e| e.endpoints()).collect();
    let out = json!({
        "graph": args.graph.display().to_string(),
        "matching": matching_desc,
        "af": result.value,
        "witness": witness,
        "lower_bound_c4": result.lower_bound_c4,
        "quarter_bound": b.quarter.to_string(),
        "cyclomatic_bound": b.cyclomatic,
        "nodes_explored": result.nodes_explored,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}
