use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncwl::codec::{decode_multiset, exhaustive_check, CodecContext, CodecError};
use ncwl::corpus::{load_corpus, load_manifest_file};
use ncwl::nn::{embed_graph, random_layers};
use ncwl::suite::{check_corpus, random_pair_sweep, sweep_result};
use ncwl::wl::{compare_with_cap, refine_with_cap, Histogram, Method};
use ncwl::{disjoint_union, parse_edge_list, Graph};

const EXIT_HELP: &str = "\
Exit codes:
  0  success; for `compare`, the graphs were not distinguished
  1  `compare`: distinguished; `suite` / `codec-check`: a check failed
  2  usage, input or manifest error

Set WL_NO_PARALLEL=1 to force sequential refinement.";

#[derive(Parser)]
#[command(name = "ncwl", version, about = "Color refinement (1-WL, NC-1-WL, k-WL) and NC-GNN tools", after_help = EXIT_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the color histogram after every refinement round.
    Refine {
        graph: PathBuf,
        #[arg(long, default_value = "1wl")]
        method: Method,
        /// Node cap for k-WL (defaults: 128 for 2-WL, 32 for 3-WL).
        #[arg(long)]
        k_cap: Option<usize>,
    },
    /// Jointly refine two graphs and report whether their histograms ever differ.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value = "nc1wl")]
        method: Method,
        #[arg(long)]
        k_cap: Option<usize>,
    },
    /// Triangle and neighbor-edge statistics.
    Stats { graph: PathBuf },
    /// Check corpus verdicts and random-pair hierarchy properties.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        random_pairs: usize,
        /// Largest random graph (at most 10, the oracle limit).
        #[arg(long, default_value_t = 8)]
        max_nodes: usize,
        /// Corpus manifest to check instead of the built-in corpus.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Sum-readout embedding through randomly initialized NC-GNN layers.
    GnnEmbed {
        graph: PathBuf,
        #[arg(long, default_value_t = 2)]
        layers: usize,
        #[arg(long, default_value_t = 16)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// One-hot width; defaults to the largest label plus one.
        #[arg(long)]
        num_labels: Option<usize>,
    },
    /// Exhaustive injectivity check of the exact multiset codecs.
    CodecCheck {
        #[arg(long, default_value_t = 3)]
        alphabet: u64,
        #[arg(long, default_value_t = 2)]
        max_card: usize,
        /// Encoding base N; defaults to 4 * max-card + 3.
        #[arg(long)]
        base: Option<u64>,
    },
    /// Print the disjoint union of two graphs as an edge list.
    Union { first: PathBuf, second: PathBuf },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn histogram_text(h: &Histogram, sep: &str) -> String {
    h.iter().map(|(c, n)| format!("{c}:{n}")).collect::<Vec<_>>().join(sep)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let tsv = cli.format == Format::Tsv;
    let mut out = String::new();
    let code = match cli.command {
        Command::Refine { graph, method, k_cap } => {
            let g = read_graph(&graph)?;
            let history = refine_with_cap(&g, method, k_cap)?;
            if tsv {
                out.push_str("iteration\tclasses\thistogram\n");
            }
            for (i, c) in history.iter().enumerate() {
                if tsv {
                    let _ = writeln!(out, "{i}\t{}\t{}", c.num_classes(), histogram_text(c.histogram(), ","));
                } else {
                    let _ = writeln!(out, "iter {i}: {} classes  {}", c.num_classes(), histogram_text(c.histogram(), " "));
                }
            }
            if !tsv {
                let _ = writeln!(out, "converged at iteration {}", history.len() - 1);
            }
            0
        }
        Command::Compare {
            first,
            second,
            method,
            k_cap,
        } => {
            let (g1, g2) = (read_graph(&first)?, read_graph(&second)?);
            let report = compare_with_cap(&g1, &g2, method, k_cap)?;
            match (report.distinguishing_iteration, tsv) {
                (Some(k), false) => out += &format!("DISTINGUISHED iter={k}\n"),
                (None, false) => out += &format!("NOT-DISTINGUISHED iters={}\n", report.iterations_run),
                (Some(k), true) => out += &format!("verdict\titeration\nDISTINGUISHED\t{k}\n"),
                (None, true) => out += &format!("verdict\titeration\nNOT-DISTINGUISHED\t{}\n", report.iterations_run),
            }
            report.verdict.is_distinguished() as u8
        }
        Command::Stats { graph } => {
            let g = read_graph(&graph)?;
            let s = g.stats();
            let sum: usize = s.messages_nc_per_node.iter().sum();
            let fields = [
                ("n", s.node_count.to_string()),
                ("m", s.edge_count.to_string()),
                ("T", s.triangle_count.to_string()),
                ("sum_nc", sum.to_string()),
                ("avg_nc", s.avg_messages_nc.to_string()),
                ("max_nc", s.max_messages_nc.to_string()),
                ("max_deg", s.max_degree.to_string()),
                ("membound", s.memory_bound.to_string()),
            ];
            if tsv {
                let names: Vec<_> = fields.iter().map(|f| f.0).collect();
                let values: Vec<_> = fields.iter().map(|f| f.1.as_str()).collect();
                let _ = writeln!(out, "{}\n{}", names.join("\t"), values.join("\t"));
            } else {
                let parts: Vec<_> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(out, "{}", parts.join(" "));
            }
            0
        }
        Command::Suite {
            seed,
            random_pairs,
            max_nodes,
            manifest,
        } => {
            let corpus = match manifest {
                Some(path) => load_manifest_file(&path)?,
                None => load_corpus(),
            };
            let mut results = check_corpus(&corpus);
            results.push(sweep_result(&random_pair_sweep(seed, random_pairs, max_nodes)));
            let failed = results.iter().filter(|r| !r.passed).count();
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                if tsv {
                    let _ = writeln!(out, "{status}\t{}\t{}", r.name, r.detail);
                } else {
                    let _ = writeln!(out, "{status}  {:<44} {}", r.name, r.detail);
                }
            }
            if !tsv {
                let _ = writeln!(out, "{} checks, {failed} failed (seed {seed})", results.len());
            }
            (failed > 0) as u8
        }
        Command::GnnEmbed {
            graph,
            layers,
            dim,
            seed,
            num_labels,
        } => {
            let g = read_graph(&graph)?;
            let num_labels = num_labels.unwrap_or_else(|| g.labels().iter().max().map_or(1, |&l| l as usize + 1));
            let params = random_layers(num_labels, dim, layers, seed);
            let embedding = embed_graph(&g, &params, num_labels)?;
            let values: Vec<String> = embedding.iter().map(f64::to_string).collect();
            let sep = if tsv { "\t" } else { " " };
            let _ = writeln!(out, "{}", values.join(sep));
            0
        }
        Command::CodecCheck {
            alphabet,
            max_card,
            base,
        } => {
            let fixture = CodecContext::new(4)?.encode_multiset(&[0, 2, 2])?;
            let fixture_ok = fixture.to_string() == "9/8" && decode_multiset(&fixture, 4)? == [0, 2, 2];
            let report = match exhaustive_check(alphabet, max_card, base) {
                Err(e @ CodecError::CardinalityBound { .. }) => {
                    return Err(Failure(format!("{e}; need 2 * max-card < N")));
                }
                r => r?,
            };
            let ok = fixture_ok && report.is_injective();
            if tsv {
                let _ = writeln!(
                    out,
                    "fixture\tbase\tpairwise_inputs\tpairwise_distinct\tcentered_inputs\tcentered_distinct\n{}\t{}\t{}\t{}\t{}\t{}",
                    fixture,
                    report.base,
                    report.pairwise_inputs,
                    report.pairwise_distinct,
                    report.centered_inputs,
                    report.centered_distinct
                );
            } else {
                let _ = writeln!(out, "fixture: h({{0,2,2}}) in base 4 = {fixture} {}", if fixture_ok { "ok" } else { "WRONG" });
                let _ = writeln!(
                    out,
                    "N={} pairwise: {} inputs, {} distinct; centered: {} inputs, {} distinct",
                    report.base, report.pairwise_inputs, report.pairwise_distinct, report.centered_inputs, report.centered_distinct
                );
                let _ = writeln!(out, "{}", if ok { "injective" } else { "COLLISION" });
            }
            (!ok) as u8
        }
        Command::Union { first, second } => {
            let (u, _) = disjoint_union(&read_graph(&first)?, &read_graph(&second)?);
            out = u.to_edge_list();
            0
        }
    };
    print!("{out}");
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
