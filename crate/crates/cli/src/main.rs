//! `ggk`: command-line front end for graphs of virtually cyclic groups.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ggk_core::constructions::{
    certify_fjcw, check_certificate, quotient_by_max_finite_normal, quotient_by_max_infinite_cyclic,
    verify_edge_kernel_is_max_finite_normal, Certificate, ConstructionError,
};
use ggk_core::doc::{element_to_json, format_element, InputDocument};
use ggk_core::gog::{describe_group, validate, GraphOfGroups};
use ggk_core::pi1::{format_word, parse_word, reduce, InducedHom};
use ggk_core::tree::{ball, expected_degree, quotient_ball_by_kernel, stabilizer_witness, universal_cover_encoding};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ggk", version, about = "Graphs of virtually cyclic groups")]
struct Cli {
    /// Machine-readable reports and diagnostics.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a document.
    Validate { file: PathBuf },
    /// Classify every vertex group.
    Classify { file: PathBuf },
    /// Print the presentation of the fundamental group.
    Present { file: PathBuf },
    /// Print the normal form of a word.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Enumerate a ball in the Bass–Serre tree.
    TreeBall {
        file: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Vertex at the centre; defaults to the root.
        #[arg(long)]
        vertex: Option<String>,
        /// Cosets taken per incident edge.
        #[arg(long, default_value_t = 8)]
        branch_cap: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Quotient by the maximal finite normal subgroups.
    QuotientFin { file: PathBuf },
    /// Quotient by the maximal infinite cyclic subgroups.
    QuotientCyc { file: PathBuf },
    /// Check a structural claim on a ball.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long, default_value_t = 4)]
        radius: usize,
    },
    /// Emit an FJCw certificate.
    Certify {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate.
    CheckCert { cert: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    Tree,
    EdgeKernel,
    Stabilizers,
}

enum Failure {
    /// Exit code 1.
    Input { kind: &'static str, message: String },
    /// Exit code 2.
    Check { message: String, witness: Value },
}

fn input(kind: &'static str, message: impl ToString) -> Failure {
    Failure::Input { kind, message: message.to_string() }
}

fn construction(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::ClaimViolated { message, witnesses } => Failure::Check {
            message,
            witness: json!(witnesses.iter().map(|w| [w.fin as i64, w.dih.shift, i64::from(w.dih.flip)]).collect::<Vec<_>>()),
        },
        e => input("construction", e),
    }
}

/// Text and JSON forms of a successful report.
struct Report {
    text: String,
    json: Value,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input("io", format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GraphOfGroups, Failure> {
    let doc = InputDocument::from_json(&read(path)?).map_err(|e| input("schema", e))?;
    doc.to_gog().map_err(|e| input("validation", e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input("io", format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Validate { file } => {
            let doc = InputDocument::from_json(&read(&file)?).map_err(|e| input("schema", e))?;
            let spec = doc.to_spec().map_err(|e| input("schema", e))?;
            let report = validate(&spec);
            if let Some(issue) = report.issues.first() {
                let all: Vec<String> = report.issues.iter().map(ToString::to_string).collect();
                return Err(input("validation", if all.len() == 1 { issue.to_string() } else { all.join("; ") }));
            }
            let gog = doc.to_gog().map_err(|e| input("validation", e))?;
            Ok(Report {
                text: format!("valid: {} vertices, {} edges\n", gog.vertex_count(), gog.edge_count()),
                json: json!({"valid": true, "vertices": gog.vertex_count(), "edges": gog.edge_count()}),
            })
        }
        Command::Classify { file } => {
            let gog = load(&file)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for v in 0..gog.vertex_count() {
                let g = gog.vertex_group(v);
                let class = format!("{:?}", g.class()).to_lowercase();
                let f = g.max_finite_normal().members.len();
                text.push_str(&format!("{}: {class}, |F| = {f}, {}\n", gog.vertex_id(v), describe_group(g)));
                rows.push(json!({"vertex": gog.vertex_id(v), "class": class, "max_finite_normal_order": f, "group": describe_group(g)}));
            }
            Ok(Report { text, json: json!({"vertices": rows}) })
        }
        Command::Present { file } => {
            let gog = load(&file)?;
            let text = gog.presentation().render(&gog);
            Ok(Report { json: json!({"presentation": text}), text })
        }
        Command::Reduce { file, word } => {
            let gog = load(&file)?;
            let w = parse_word(&gog, &word).map_err(|e| input("word", e))?;
            let nf = reduce(&gog, &w).map_err(|e| input("word", e))?;
            let shown = nf.display(&gog);
            Ok(Report {
                json: json!({"normal_form": shown, "word": format_word(&gog, &nf.to_word(&gog))}),
                text: format!("{shown}\n"),
            })
        }
        Command::TreeBall { file, radius, vertex, branch_cap, dot } => {
            let gog = load(&file)?;
            let v0 = match vertex {
                Some(id) => gog.vertex_index(&id).ok_or_else(|| input("argument", format!("no vertex {id}")))?,
                None => gog.root(),
            };
            let b = ball(&gog, v0, radius, branch_cap).map_err(|e| input("tree", e))?;
            if let Some(path) = dot {
                write(&path, &b.to_dot(&gog))?;
            }
            let mut text = format!("ball of radius {radius}: {} vertices, {} edges\n", b.len(), b.edges.len());
            let mut rows = Vec::new();
            for (i, x) in b.vertices.iter().enumerate() {
                let mark = if b.truncated[i] { " (truncated)" } else { "" };
                text.push_str(&format!("  {} depth {} degree {}{mark}\n", x.display(&gog), b.depth[i], b.degree(i)));
                rows.push(json!({
                    "vertex": x.display(&gog),
                    "depth": b.depth[i],
                    "degree": b.degree(i),
                    "expected_degree": expected_degree(&gog, x.label),
                    "truncated": b.truncated[i],
                }));
            }
            Ok(Report { text, json: json!({"radius": radius, "vertices": rows, "edges": b.edges.len()}) })
        }
        Command::QuotientFin { file } => quotient_report(&file, true),
        Command::QuotientCyc { file } => quotient_report(&file, false),
        Command::Check { file, lemma, radius } => {
            let gog = load(&file)?;
            match lemma {
                Lemma::Tree => check_tree(&gog, radius),
                Lemma::EdgeKernel => check_edge_kernels(&gog),
                Lemma::Stabilizers => check_stabilizers(&gog, radius),
            }
        }
        Command::Certify { file, out } => {
            let gog = load(&file)?;
            let cert = certify_fjcw(&gog).map_err(|e| input("certificate", e))?;
            let text = cert.to_json_pretty();
            let summary = json!({"nodes": cert.nodes.len(), "root": cert.root, "subject": cert.subject});
            match out {
                Some(path) => {
                    write(&path, &format!("{text}\n"))?;
                    Ok(Report { text: format!("certificate with {} nodes written to {}\n", cert.nodes.len(), path.display()), json: summary })
                }
                None => Ok(Report { json: serde_json::from_str(&text).expect("certificate JSON"), text: format!("{text}\n") }),
            }
        }
        Command::CheckCert { cert } => {
            let c = Certificate::from_json(&read(&cert)?).map_err(|e| input("schema", e))?;
            match check_certificate(&c) {
                Ok(report) => Ok(Report {
                    text: format!("certificate valid: {} nodes\n", report.nodes),
                    json: json!({"valid": true, "nodes": report.nodes,
                        "rules": report.rules.iter().map(|(r, n)| (format!("{r:?}"), json!(n))).collect::<serde_json::Map<_, _>>()}),
                }),
                Err(e) => Err(Failure::Check { message: e.to_string(), witness: json!(format!("{e:?}")) }),
            }
        }
    }
}

fn quotient_report(file: &Path, finite: bool) -> Result<Report, Failure> {
    let gog = load(file)?;
    let res = if finite { quotient_by_max_finite_normal(&gog) } else { quotient_by_max_infinite_cyclic(&gog) }
        .map_err(construction)?;
    let doc = InputDocument::from_gog(&res.gog);
    Ok(Report { text: format!("{}\n", doc.to_json_pretty()), json: serde_json::from_str(&doc.to_json_pretty()).expect("document JSON") })
}

fn check_tree(gog: &GraphOfGroups, radius: usize) -> Result<Report, Failure> {
    let b = ball(gog, gog.root(), radius, 4).map_err(|e| input("tree", e))?;
    let q = quotient_ball_by_kernel(gog, &b, &InducedHom::PhiFree).map_err(|e| input("tree", e))?.truncate(radius);
    if !q.is_tree() {
        return Err(Failure::Check {
            message: "quotient ball is not a tree".into(),
            witness: json!({"vertices": q.len(), "edges": q.edges.len()}),
        });
    }
    let want = universal_cover_encoding(gog, gog.root(), radius);
    let got = q.rooted_encoding().expect("tree");
    if got != want {
        return Err(Failure::Check {
            message: "quotient ball differs from the universal cover".into(),
            witness: json!({"quotient": got, "universal_cover": want}),
        });
    }
    Ok(Report {
        text: "quotient ball is a tree, matches universal cover\n".into(),
        json: json!({"tree": true, "matches_universal_cover": true, "vertices": q.len(), "radius": radius}),
    })
}

fn check_edge_kernels(gog: &GraphOfGroups) -> Result<Report, Failure> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for o in 0..2 * gog.edge_count() {
        let id = gog.edge_id(o / 2);
        let side = if o % 2 == 0 { "from" } else { "to" };
        if gog.edge_group(o / 2).is_finite() {
            text.push_str(&format!("{id} ({side}): skipped, finite edge group\n"));
            rows.push(json!({"edge": id, "side": side, "skipped": true}));
            continue;
        }
        let report = verify_edge_kernel_is_max_finite_normal(gog, o).map_err(construction)?;
        let members: Vec<String> = report.preimage.iter().map(|x| format_element(gog.edge_group(o / 2), x)).collect();
        text.push_str(&format!("{id} ({side}): preimage of F is F_e, order {}\n", members.len()));
        rows.push(json!({"edge": id, "side": side, "preimage": report.preimage.iter().map(|x| element_to_json(gog.edge_group(o / 2), x)).collect::<Vec<_>>()}));
    }
    Ok(Report { text, json: json!({"edges": rows}) })
}

fn check_stabilizers(gog: &GraphOfGroups, radius: usize) -> Result<Report, Failure> {
    let b = ball(gog, gog.root(), radius, 4).map_err(|e| input("tree", e))?;
    let mut rng = StdRng::seed_from_u64(0);
    for x in &b.vertices {
        if let Err(e) = stabilizer_witness(gog, x, &mut rng) {
            return Err(Failure::Check { message: e.to_string(), witness: json!({"vertex": x.display(gog)}) });
        }
    }
    Ok(Report {
        text: format!("stabilizers verified at {} vertices\n", b.len()),
        json: json!({"vertices": b.len(), "radius": radius}),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input { kind, message }) => {
            if cli.json {
                eprintln!("{}", json!({"error": kind, "message": message}));
            } else {
                eprintln!("error: {message}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Check { message, witness }) => {
            if cli.json {
                eprintln!("{}", json!({"error": "check_failed", "message": message, "witness": witness}));
            } else {
                eprintln!("check failed: {message}");
            }
            ExitCode::from(2)
        }
    }
}
