//! `h3g`: spanning trees of 3-uniform hypergraphs from the command line.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (no spanning tree,
//! no uniform-sign orientation, a violated bound), 2 on input errors.

mod format;

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Zero;

use format::{parse_h3g, render_h3g, H3gDocument};
use threegraph::decision::{
    decide_3pfaffian_from, decide_graph_pfaffian, minimality_check, Decision, Minimality,
    Reduction,
};
use threegraph::families;
use threegraph::model::{Multigraph, ThreeGraph, Triple, Vertex};
use threegraph::pfaffian::{
    hr_expansion, randomized_existence_test, signed_count_via_pfaffian, ExistenceVerdict,
};
use threegraph::signs::{signed_tree_census, tree_sign, TripleOrientation};
use threegraph::steiner::{decide_psts_via_graph, psts_bijection_report, PstsVerdict};
use threegraph::structure::{blocks, tutte_like_check, TutteOutcome};
use threegraph::suspension::{decide_2susp, suspend, TwoSuspVerdict};
use threegraph::trees::{
    count_spanning_trees, count_spanning_trees_parallel, is_forest, prufer_decode, prufer_encode,
    spanning_trees, PruferCode, SpanningTree,
};

#[derive(Parser)]
#[command(name = "h3g", version, about = "Spanning trees of 3-uniform hypergraphs")]
struct Cli {
    /// Seed for randomized subcommands; identical inputs and seeds give
    /// identical output.
    #[arg(long, global = true, default_value_t = 0x3717)]
    seed: u64,
    /// Cap on worker threads for parallel search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated instance in the h3g format.
    Gen {
        /// Family name: complete, twin, interlaced, table1, table2, table3,
        /// prop63-two-edges, prop63-triangle, sts, no-tree-ham, psts-k33,
        /// white-gadget.
        family: String,
        /// Integer parameters of the family.
        params: Vec<usize>,
    },
    /// Number of spanning trees.
    CountTrees { input: String },
    /// Every spanning tree, one per line, lexicographically.
    EnumerateTrees { input: String },
    /// Sign of the input (whose triples must form a spanning tree) under the
    /// orientation carried by the file.
    Sign { input: String },
    /// Signed census (positive and negative tree counts) under the file
    /// orientation.
    Census { input: String },
    /// Signed tree count via the skew matrix, under the file orientation.
    PfaffianCount {
        input: String,
        /// 1-based index of the deleted row/column.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Signed tree count via the perfect-matching expansion.
    HrCount { input: String },
    /// Decide whether some orientation gives every spanning tree the same
    /// sign; witness flips are relative to the file orientation.
    #[command(name = "decide-3pfaffian")]
    Decide3pfaffian { input: String },
    /// Decide whether some edge orientation gives every perfect matching the
    /// same adjusted sign (graph document with edge lines).
    DecideGraphPfaffian { input: String },
    /// Randomized spanning-tree existence test.
    Exists {
        input: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Check the component-count bound over all vertex subsets.
    TutteCheck {
        input: String,
        #[arg(long, default_value_t = 15)]
        cap: usize,
    },
    /// Blocks of the underlying graph; flags an even block.
    Blocks { input: String },
    /// Suspend a graph document from k fresh apex vertices.
    Suspend { k: usize, input: String },
    /// Structural decision for 2-suspensions of a graph document.
    #[command(name = "decide-2susp")]
    Decide2susp { input: String },
    /// Prüfer-style codec for spanning trees of complete hosts.
    Prufer {
        #[command(subcommand)]
        dir: PruferCommand,
    },
    /// Partial Steiner triple system operations.
    Psts {
        #[command(subcommand)]
        op: PstsCommand,
    },
    /// Minimality under single deletions/contractions for a non-orientable
    /// input.
    MinimalCheck { input: String },
    /// Run the full acceptance suite and exit 0 iff every criterion passes.
    VerifyPaper,
}

#[derive(Subcommand)]
enum PruferCommand {
    /// Encode a spanning tree (h3g file on 2n+1 vertices) into its code.
    Encode { input: String },
    /// Decode a code document (`n`, `gamma`, `pair` lines) into a tree.
    Decode { input: String },
}

#[derive(Subcommand)]
enum PstsCommand {
    /// Decide orientability through the deleted-vertex graph.
    Decide {
        input: String,
        /// Vertex to delete; defaults to the first with an acyclic residue.
        #[arg(long)]
        vertex: Option<Vertex>,
    },
    /// Tree/matching bijection report at a vertex.
    Bijection {
        input: String,
        #[arg(long, default_value_t = 1)]
        vertex: Vertex,
    },
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("reading {path}: {e}")))
    }
}

fn load_doc(path: &str) -> Result<H3gDocument, Failure> {
    let text = read_input(path)?;
    parse_h3g(&text).map_err(|e| Failure::input(e.to_string()))
}

fn load_three_graph(path: &str) -> Result<(H3gDocument, ThreeGraph, TripleOrientation), Failure> {
    let doc = load_doc(path)?;
    if doc.n_vertices > 64 {
        return Err(Failure::input(
            "instances above 64 vertices are unsupported",
        ));
    }
    let (h, w) = doc
        .to_three_graph()
        .map_err(|e| Failure::input(e.to_string()))?;
    Ok((doc, h, w))
}

fn load_graph(path: &str) -> Result<(H3gDocument, Multigraph), Failure> {
    let doc = load_doc(path)?;
    let g = doc
        .to_multigraph()
        .map_err(|e| Failure::input(e.to_string()))?;
    Ok((doc, g))
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen { family, params } => gen(&family, &params),
        Command::CountTrees { input } => {
            let (_, h, _) = load_three_graph(&input)?;
            let count = if cli.threads > 1 {
                count_spanning_trees_parallel(&h, cli.threads)
            } else {
                count_spanning_trees(&h)
            };
            println!("{count}");
            Ok(if count.is_zero() { 1 } else { 0 })
        }
        Command::EnumerateTrees { input } => {
            let (doc, h, _) = load_three_graph(&input)?;
            let mut any = false;
            for tree in spanning_trees(&h) {
                any = true;
                let words: Vec<String> =
                    tree.triples().iter().map(|t| doc.display_triple(t)).collect();
                println!("{}", words.join(" "));
            }
            Ok(if any { 0 } else { 1 })
        }
        Command::Sign { input } => {
            let (_, h, w) = load_three_graph(&input)?;
            let tree = SpanningTree::new(h.n_vertices(), h.triples().to_vec())
                .map_err(|e| Failure::input(format!("input is not a spanning tree: {e}")))?;
            let s = tree_sign(&tree, &w).map_err(|e| Failure::input(e.to_string()))?;
            println!("{}", if s > 0 { "+1" } else { "-1" });
            Ok(0)
        }
        Command::Census { input } => {
            let (_, h, w) = load_three_graph(&input)?;
            let (p, m) = signed_tree_census(&h, &w).map_err(|e| Failure::input(e.to_string()))?;
            println!("plus {p} minus {m}");
            Ok(0)
        }
        Command::PfaffianCount { input, k } => {
            let (_, h, w) = load_three_graph(&input)?;
            let v = signed_count_via_pfaffian(&h, &w, k)
                .map_err(|e| Failure::input(e.to_string()))?;
            println!("{v}");
            Ok(0)
        }
        Command::HrCount { input } => {
            let (_, h, w) = load_three_graph(&input)?;
            let v = hr_expansion(&h, &w).map_err(|e| Failure::input(e.to_string()))?;
            println!("{v}");
            Ok(0)
        }
        Command::Decide3pfaffian { input } => {
            let (doc, h, w) = load_three_graph(&input)?;
            match decide_3pfaffian_from(&h, &w) {
                Decision::Witness(witness) => {
                    if witness.vacuous {
                        println!("WITNESS vacuous (no spanning tree)");
                    } else {
                        let words: Vec<String> = witness
                            .flips
                            .iter()
                            .map(|t| doc.display_triple(t))
                            .collect();
                        println!(
                            "WITNESS sign {} flip: {}",
                            if witness.uniform_sign > 0 { "+1" } else { "-1" },
                            if words.is_empty() {
                                "(none)".to_string()
                            } else {
                                words.join(" ")
                            }
                        );
                    }
                    Ok(0)
                }
                Decision::Certificate(cert) => {
                    println!("CERTIFICATE");
                    println!(
                        "positive-target trees: {}",
                        join_indices(&cert.positive_combo)
                    );
                    println!(
                        "negative-target trees: {}",
                        join_indices(&cert.negative_combo)
                    );
                    Ok(1)
                }
            }
        }
        Command::DecideGraphPfaffian { input } => {
            let (doc, g) = load_graph(&input)?;
            match decide_graph_pfaffian(&g) {
                Decision::Witness(witness) => {
                    if witness.vacuous {
                        println!("WITNESS vacuous (no perfect matching)");
                    } else {
                        let words: Vec<String> = witness
                            .flips
                            .iter()
                            .map(|&(a, b)| doc.display_edge(a, b))
                            .collect();
                        println!(
                            "WITNESS sign {} flip: {}",
                            if witness.uniform_sign > 0 { "+1" } else { "-1" },
                            if words.is_empty() {
                                "(none)".to_string()
                            } else {
                                words.join(" ")
                            }
                        );
                    }
                    Ok(0)
                }
                Decision::Certificate(cert) => {
                    println!("CERTIFICATE");
                    println!(
                        "positive-target matchings: {}",
                        join_indices(&cert.positive_combo)
                    );
                    println!(
                        "negative-target matchings: {}",
                        join_indices(&cert.negative_combo)
                    );
                    Ok(1)
                }
            }
        }
        Command::Exists { input, trials } => {
            let (_, h, _) = load_three_graph(&input)?;
            match randomized_existence_test(&h, trials, cli.seed) {
                ExistenceVerdict::TreeExists {
                    trial,
                    modulus,
                    value,
                } => {
                    println!("TREE EXISTS trial={trial} q={modulus} value={value}");
                    Ok(0)
                }
                ExistenceVerdict::ProbablyNone { failure_bound } => {
                    println!("PROBABLY NONE bound={failure_bound}");
                    Ok(1)
                }
            }
        }
        Command::TutteCheck { input, cap } => {
            let (doc, h, _) = load_three_graph(&input)?;
            match tutte_like_check(&h, cap).map_err(|e| Failure::input(e.to_string()))? {
                TutteOutcome::Passes => {
                    println!("PASSES");
                    Ok(0)
                }
                TutteOutcome::Violation { s, q } => {
                    let names: Vec<String> =
                        s.iter().map(|&v| doc.display_vertex(v)).collect();
                    println!("VIOLATION S={{{}}} q={q}", names.join(","));
                    Ok(1)
                }
            }
        }
        Command::Blocks { input } => {
            let (doc, h, _) = load_three_graph(&input)?;
            let all = blocks(&h.underlying_graph());
            let mut even = false;
            for block in &all {
                let names: Vec<String> =
                    block.iter().map(|&v| doc.display_vertex(v)).collect();
                let marker = if block.len() % 2 == 0 {
                    even = true;
                    " EVEN"
                } else {
                    ""
                };
                println!("block {{{}}}{marker}", names.join(","));
            }
            Ok(if even { 1 } else { 0 })
        }
        Command::Suspend { k, input } => {
            if k == 0 {
                return Err(Failure::input("the apex count must be positive"));
            }
            let (_, g) = load_graph(&input)?;
            let h = suspend(&g, k);
            let doc = H3gDocument::from_graph(&h, None, &[]);
            print!("{}", render_h3g(&doc));
            Ok(0)
        }
        Command::Decide2susp { input } => {
            let (doc, g) = load_graph(&input)?;
            match decide_2susp(&g) {
                TwoSuspVerdict::Vacuous => {
                    println!("ORIENTABLE vacuous (no quasi-perfect matching)");
                    Ok(0)
                }
                TwoSuspVerdict::Orientable => {
                    println!("ORIENTABLE");
                    Ok(0)
                }
                TwoSuspVerdict::NonPfaffianVertex(v) => {
                    println!(
                        "NON-ORIENTABLE graph minus vertex {} is not orientable",
                        doc.display_vertex(v)
                    );
                    Ok(1)
                }
                TwoSuspVerdict::Forbidden(w) => {
                    let names: Vec<String> =
                        w.vertices.iter().map(|&v| doc.display_vertex(v)).collect();
                    println!(
                        "NON-ORIENTABLE forbidden {:?} on {{{}}}",
                        w.kind,
                        names.join(",")
                    );
                    Ok(1)
                }
            }
        }
        Command::Prufer { dir } => prufer(dir),
        Command::Psts { op } => psts(op),
        Command::MinimalCheck { input } => {
            let (doc, h, _) = load_three_graph(&input)?;
            match minimality_check(&h) {
                Ok(Minimality::Minimal) => {
                    println!("MINIMAL");
                    Ok(0)
                }
                Ok(Minimality::Reducible { triple, op }) => {
                    let opname = match op {
                        Reduction::Delete => "delete",
                        Reduction::Contract => "contract",
                    };
                    println!("REDUCIBLE {opname} {}", doc.display_triple(&triple));
                    Ok(1)
                }
                Err(e) => Err(Failure::input(e.to_string())),
            }
        }
        Command::VerifyPaper => {
            let outcomes = threegraph::acceptance::run_all();
            let mut all_ok = true;
            for o in &outcomes {
                let status = match &o.result {
                    Ok(()) => "PASS".to_string(),
                    Err(msg) => {
                        all_ok = false;
                        format!("FAIL ({msg})")
                    }
                };
                println!(
                    "criterion {:2} ({}): {} [{:.2}s]",
                    o.id, o.name, status, o.seconds
                );
            }
            println!(
                "{} of {} criteria passed",
                outcomes.iter().filter(|o| o.result.is_ok()).count(),
                outcomes.len()
            );
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn join_indices(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn gen(family: &str, params: &[usize]) -> CmdResult {
    let need = |count: usize| -> Result<(), Failure> {
        if params.len() == count {
            Ok(())
        } else {
            Err(Failure::input(format!(
                "family {family} takes {count} parameter(s), got {}",
                params.len()
            )))
        }
    };
    let lib = |e: threegraph::Error| Failure::input(e.to_string());
    let doc = match family {
        "complete" => {
            need(1)?;
            H3gDocument::from_graph(&families::complete(params[0]).map_err(lib)?, None, &[])
        }
        "twin" => {
            need(0)?;
            H3gDocument::from_graph(&families::twin(), None, &families::twin_labels())
        }
        "interlaced" => {
            need(1)?;
            H3gDocument::from_graph(&families::interlaced(params[0]).map_err(lib)?, None, &[])
        }
        "table1" => {
            need(1)?;
            let f = families::table1(params[0]).map_err(lib)?;
            H3gDocument::from_graph(&f.graph, Some(&f.orientation), &f.labels)
        }
        "table2" => {
            need(1)?;
            let f = families::table2(params[0]).map_err(lib)?;
            H3gDocument::from_graph(&f.graph, Some(&f.orientation), &f.labels)
        }
        "table3" => {
            need(0)?;
            let f = families::table3();
            H3gDocument::from_graph(&f.graph, Some(&f.orientation), &f.labels)
        }
        "prop63-two-edges" => {
            need(5)?;
            let h =
                families::prop63_two_edges(params[0], params[1], params[2], params[3], params[4])
                    .map_err(lib)?;
            H3gDocument::from_graph(&h, None, &[])
        }
        "prop63-triangle" => {
            need(4)?;
            let h = families::prop63_triangle(params[0], params[1], params[2], params[3])
                .map_err(lib)?;
            H3gDocument::from_graph(&h, None, &[])
        }
        "sts" => {
            need(1)?;
            H3gDocument::from_graph(&families::sts(params[0]).map_err(lib)?, None, &[])
        }
        "no-tree-ham" => {
            need(1)?;
            H3gDocument::from_graph(
                &families::no_tree_hamiltonian(params[0]).map_err(lib)?,
                None,
                &[],
            )
        }
        "psts-k33" => {
            need(0)?;
            H3gDocument::from_graph(&families::psts_with_k33_reduction(), None, &[])
        }
        "white-gadget" => {
            need(0)?;
            H3gDocument::from_graph(&families::white_gadget(), None, &[])
        }
        other => return Err(Failure::input(format!("unknown family {other:?}"))),
    };
    print!("{}", render_h3g(&doc));
    Ok(0)
}

fn prufer(dir: PruferCommand) -> CmdResult {
    match dir {
        PruferCommand::Encode { input } => {
            let (_, h, _) = load_three_graph(&input)?;
            let n_vertices = h.n_vertices();
            if n_vertices % 2 == 0 {
                return Err(Failure::input("a spanning tree has odd order"));
            }
            let n = (n_vertices - 1) / 2;
            let tree = SpanningTree::new(n_vertices, h.triples().to_vec())
                .map_err(|e| Failure::input(format!("input is not a spanning tree: {e}")))?;
            let code = prufer_encode(&tree, n).map_err(|e| Failure::input(e.to_string()))?;
            println!("n {n}");
            let gamma: Vec<String> = code.gamma.iter().map(|c| c.to_string()).collect();
            println!("gamma {}", gamma.join(" "));
            for (a, b) in code.matching {
                println!("pair {a} {b}");
            }
            Ok(0)
        }
        PruferCommand::Decode { input } => {
            let text = read_input(&input)?;
            let mut n: Option<usize> = None;
            let mut gamma: Vec<Vertex> = Vec::new();
            let mut matching: Vec<(Vertex, Vertex)> = Vec::new();
            for (idx, raw) in text.lines().enumerate() {
                let line = raw.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let mut parts = line.split_whitespace();
                let bad = || Failure::input(format!("line {}: bad code line", idx + 1));
                match parts.next().unwrap() {
                    "n" => {
                        n = Some(
                            parts
                                .next()
                                .and_then(|s| s.parse().ok())
                                .ok_or_else(bad)?,
                        )
                    }
                    "gamma" => {
                        for s in parts {
                            gamma.push(s.parse().map_err(|_| bad())?);
                        }
                    }
                    "pair" => {
                        let a: Vertex =
                            parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                        let b: Vertex =
                            parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                        matching.push((a, b));
                    }
                    _ => return Err(bad()),
                }
            }
            let n = n.ok_or_else(|| Failure::input("missing n line"))?;
            let code = PruferCode { gamma, matching };
            let tree = prufer_decode(&code, n).map_err(|e| Failure::input(e.to_string()))?;
            let h = ThreeGraph::from_triples(2 * n + 1, tree.triples().to_vec())
                .map_err(|e| Failure::input(e.to_string()))?;
            print!("{}", render_h3g(&H3gDocument::from_graph(&h, None, &[])));
            Ok(0)
        }
    }
}

fn psts(op: PstsCommand) -> CmdResult {
    match op {
        PstsCommand::Decide { input, vertex } => {
            let (doc, h, _) = load_three_graph(&input)?;
            let v = match vertex {
                Some(v) => v,
                None => first_acyclic_vertex(&h).ok_or_else(|| {
                    Failure::input("no vertex whose deletion leaves an acyclic residue")
                })?,
            };
            match decide_psts_via_graph(&h, v).map_err(|e| Failure::input(e.to_string()))? {
                PstsVerdict::Orientable {
                    graph_flips,
                    orientation,
                } => {
                    let edges: Vec<String> = graph_flips
                        .iter()
                        .map(|&(a, b)| doc.display_edge(a, b))
                        .collect();
                    let triples: Vec<String> = orientation
                        .flips_versus_canonical()
                        .iter()
                        .map(|t| doc.display_triple(t))
                        .collect();
                    println!("ORIENTABLE vertex {}", doc.display_vertex(v));
                    println!(
                        "graph flip: {}",
                        if edges.is_empty() {
                            "(none)".into()
                        } else {
                            edges.join(" ")
                        }
                    );
                    println!(
                        "triple flip: {}",
                        if triples.is_empty() {
                            "(none)".into()
                        } else {
                            triples.join(" ")
                        }
                    );
                    Ok(0)
                }
                PstsVerdict::NonOrientable {
                    graph_certificate,
                    triple_certificate,
                } => {
                    println!("NON-ORIENTABLE vertex {}", doc.display_vertex(v));
                    println!(
                        "graph certificate matchings: {} | {}",
                        join_indices(&graph_certificate.positive_combo),
                        join_indices(&graph_certificate.negative_combo)
                    );
                    println!(
                        "triple certificate trees: {} | {}",
                        join_indices(&triple_certificate.positive_combo),
                        join_indices(&triple_certificate.negative_combo)
                    );
                    Ok(1)
                }
            }
        }
        PstsCommand::Bijection { input, vertex } => {
            let (_, h, _) = load_three_graph(&input)?;
            let rep = psts_bijection_report(&h, vertex)
                .map_err(|e| Failure::input(e.to_string()))?;
            println!(
                "trees {} matchings {} bijective {}",
                rep.tree_count, rep.matching_count, rep.bijective
            );
            Ok(if rep.bijective { 0 } else { 1 })
        }
    }
}

fn first_acyclic_vertex(h: &ThreeGraph) -> Option<Vertex> {
    (1..=h.n_vertices() as Vertex).find(|&v| {
        let residue: Vec<Triple> = h
            .triples()
            .iter()
            .filter(|t| !t.contains(v))
            .copied()
            .collect();
        match ThreeGraph::from_triples(h.n_vertices(), residue.clone()) {
            Ok(sub) => is_forest(&sub, &residue).unwrap_or(false),
            Err(_) => false,
        }
    })
}
