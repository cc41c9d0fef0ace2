use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use signforge::catalog;
use signforge::constructions::{ghat, ghat_planar, h_join};
use signforge::criticality::{find_connected_decompositions, find_decompositions, is_critical, Method};
use signforge::enumerate::{enumerate_critical, non_decomposable, EnumBounds};
use signforge::frustration::frustration_index;
use signforge::planar::{faces, verify_planar_critical, RotationSystem};
use signforge::structure::{audit_conjectures, check_ggs, find_k4_minus_subdivision, in_s_star};
use signforge::subdivision::{is_irreducible, reduce_to_irreducible, suppressible_vertices};
use signforge::{reproduce, Error, SignedGraph};

const USAGE: u8 = 64;
const GUARD: u8 = 3;
const MISMATCH: u8 = 2;

#[derive(Parser)]
#[command(name = "signforge", version, about = "Frustration, criticality and constructions for signed multigraphs")]
struct Cli {
    /// Print machine-readable JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Frustration index and a least minimum signature.
    Frustration { file: PathBuf },
    /// Certify critical frustration; exits 2 when the graph is not critical.
    Certify {
        file: PathBuf,
        /// Expected frustration index.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "all")]
        method: Method,
    },
    /// List the decompositions of a critical graph.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Only decompositions whose parts are connected.
        #[arg(long)]
        connected: bool,
    },
    /// Suppress vertices until the graph is irreducible.
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Structural checks.
    Structure {
        file: PathBuf,
        #[arg(long, value_enum)]
        find: Find,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Faces of an embedding given as a rotation system.
    Faces {
        file: PathBuf,
        rotation: PathBuf,
        /// Also check the face profile of a k-frustrated graph.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Build H-joins and ladders.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Inspect and verify the built-in catalog.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
    },
    /// Enumerate critically k-frustrated graphs up to switching isomorphism.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_edges: usize,
        #[arg(long, default_value_t = 2)]
        max_mult: usize,
        #[arg(long, default_value_t = 2)]
        max_loops: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        non_decomposable: bool,
        /// Directory for the .sg files and manifest.json.
        #[arg(long, default_value = "enumerated")]
        out: PathBuf,
    },
    /// Run every reproduction check and print a pass/fail table.
    Reproduce,
}

#[derive(Clone, Copy, ValueEnum)]
enum Find {
    K4minus,
    Sstar,
    Ggs,
    Audit,
}

#[derive(Subcommand)]
enum Construct {
    /// Join two graphs along negative edges given by id.
    Hjoin {
        first: PathBuf,
        first_edge: usize,
        second: PathBuf,
        second_edge: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The ladder of order t; with --planar also its rotation system.
    Ladder {
        t: usize,
        #[arg(long)]
        planar: bool,
        /// Output stem; writes <stem>.sg and, when planar, <stem>.rot.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    /// Print an entry as .sg text (and its rotation, if any).
    Show { name: String },
    /// Recompute the stored properties; exits 2 on any mismatch.
    Verify {
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Write every entry as .sg/.rot files.
    Export { dir: PathBuf },
}

fn read_graph(path: &Path) -> anyhow::Result<SignedGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SignedGraph::parse_sg(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(json: bool, value: &Value, human: impl FnOnce()) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        human();
    }
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.entry("schema").or_insert(json!(1));
    }
    v
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let json = cli.json;
    match cli.cmd {
        Cmd::Frustration { file } => {
            let g = read_graph(&file)?;
            let m = frustration_index(&g)?;
            let v = with_schema(serde_json::to_value(&m)?);
            emit(json, &v, || {
                println!("ell={}", m.ell);
                println!("{}", serde_json::to_string(&v).expect("serializable"));
            });
            Ok(0)
        }
        Cmd::Certify { file, k, method } => {
            let g = read_graph(&file)?;
            let cert = is_critical(&g, method)?;
            let ok = cert.critical && k.map_or(true, |k| k == cert.ell);
            emit(true, &serde_json::to_value(&cert)?, || {});
            if !json {
                eprintln!(
                    "ell={} critical={}{}",
                    cert.ell,
                    cert.critical,
                    k.filter(|&k| k != cert.ell).map(|k| format!(" (expected ell={k})")).unwrap_or_default()
                );
            }
            Ok(if ok { 0 } else { MISMATCH })
        }
        Cmd::Decompose { file, k, connected } => {
            let g = read_graph(&file)?;
            let k = match k {
                Some(k) => k,
                None => frustration_index(&g)?.ell,
            };
            let ds = if connected {
                find_connected_decompositions(&g, k)?
            } else {
                find_decompositions(&g, k)?
            };
            let v = json!({ "schema": 1, "k": k, "decomposable": !ds.is_empty(), "decompositions": ds });
            emit(json, &v, || {
                println!("{} decomposition(s)", ds.len());
                for d in &ds {
                    let parts: Vec<String> = d.parts.iter().map(|p| format!("k={} {:?}", p.k, p.edges)).collect();
                    println!("  {}", parts.join(" | "));
                }
            });
            Ok(0)
        }
        Cmd::Reduce { file, output } => {
            let g = read_graph(&file)?;
            let r = reduce_to_irreducible(&g);
            if json {
                let v = json!({
                    "schema": 1,
                    "irreducible_input": is_irreducible(&g),
                    "suppressible": suppressible_vertices(&g).iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                    "reduced": r.to_sg(),
                });
                emit(true, &v, || {});
                if let Some(p) = output {
                    write_out(Some(&p), &r.to_sg())?;
                }
            } else {
                write_out(output.as_deref(), &r.to_sg())?;
            }
            Ok(0)
        }
        Cmd::Structure { file, find, k } => {
            let g = read_graph(&file)?;
            let k = match k {
                Some(k) => k,
                None => frustration_index(&g)?.ell,
            };
            let v = match find {
                Find::K4minus => json!({ "schema": 1, "subdivision": find_k4_minus_subdivision(&g)? }),
                Find::Sstar => json!({ "schema": 1, "k": k, "in_s_star": in_s_star(&g, k)? }),
                Find::Ggs => with_schema(serde_json::to_value(check_ggs(&g)?)?),
                Find::Audit => with_schema(serde_json::to_value(audit_conjectures(&g, k)?)?),
            };
            println!("{}", serde_json::to_string_pretty(&v)?);
            Ok(0)
        }
        Cmd::Faces { file, rotation, k } => {
            let g = read_graph(&file)?;
            let text = fs::read_to_string(&rotation).with_context(|| format!("reading {}", rotation.display()))?;
            let rot = RotationSystem::parse(&g, &text)?;
            match k {
                Some(k) => {
                    let rep = verify_planar_critical(&g, &rot, k)?;
                    emit(json, &serde_json::to_value(&rep)?, || {
                        println!(
                            "faces={} negative={} all_negative={} one_negative_edge_per_face={}",
                            rep.face_count, rep.negative_faces, rep.all_faces_negative, rep.one_negative_edge_per_face
                        );
                    });
                }
                None => {
                    let rep = faces(&g, &rot, true)?;
                    emit(json, &with_schema(serde_json::to_value(&rep)?), || {
                        println!("faces={} euler={}", rep.faces.len(), rep.euler_characteristic);
                        for f in &rep.faces {
                            println!("  {} {:?}", f.sign, f.edges);
                        }
                    });
                }
            }
            Ok(0)
        }
        Cmd::Construct { what } => match what {
            Construct::Hjoin {
                first,
                first_edge,
                second,
                second_edge,
                output,
            } => {
                let g = h_join(&read_graph(&first)?, first_edge, &read_graph(&second)?, second_edge)?;
                write_out(output.as_deref(), &g.to_sg())?;
                Ok(0)
            }
            Construct::Ladder { t, planar, output } => {
                if planar {
                    let p = ghat_planar(t)?;
                    match output {
                        Some(stem) => {
                            write_out(Some(&stem.with_extension("sg")), &p.graph.to_sg())?;
                            write_out(Some(&stem.with_extension("rot")), &p.rotation.to_rot(&p.graph))?;
                        }
                        None => {
                            print!("{}", p.graph.to_sg());
                            println!("# rotation");
                            for l in p.rotation.to_rot(&p.graph).lines() {
                                println!("# {l}");
                            }
                        }
                    }
                    if json {
                        println!("{}", serde_json::to_string_pretty(&with_schema(p.cuts_json()))?);
                    }
                } else {
                    let g = ghat(t);
                    write_out(output.map(|s| s.with_extension("sg")).as_deref(), &g.to_sg())?;
                }
                Ok(0)
            }
        },
        Cmd::Catalog { what } => catalog_cmd(what, json),
        Cmd::Enumerate {
            k,
            max_n,
            max_edges,
            max_mult,
            max_loops,
            connected,
            irreducible,
            non_decomposable: nd,
            out,
        } => {
            let mut b = EnumBounds::new(max_n, max_mult, max_loops, max_edges);
            b.connected_only = connected;
            let mut found = enumerate_critical(&b, k, irreducible)?;
            if nd {
                found = non_decomposable(found)?;
            }
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let mut files = Vec::new();
            for (i, g) in found.iter().enumerate() {
                let name = format!("k{k}-{i:03}.sg");
                fs::write(out.join(&name), g.to_sg())?;
                files.push(json!({ "file": name, "vertices": g.vertex_count(), "edges": g.edge_count() }));
            }
            let manifest = json!({
                "schema": 1,
                "k": k,
                "bounds": b,
                "irreducible_only": irreducible,
                "non_decomposable_only": nd,
                "count": found.len(),
                "graphs": files,
            });
            fs::write(out.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
            emit(json, &manifest, || println!("{} graph(s) written to {}", found.len(), out.display()));
            Ok(0)
        }
        Cmd::Reproduce => {
            let reports = reproduce::all();
            let ok = reports.iter().all(|r| r.passed);
            emit(json, &json!({ "schema": 1, "passed": ok, "criteria": reports }), || {
                for r in &reports {
                    println!("{}", r.line());
                    for s in &r.skipped {
                        println!("       skipped: {s}");
                    }
                }
                println!("{}", if ok { "all criteria pass" } else { "some criteria FAIL" });
            });
            Ok(if ok { 0 } else { MISMATCH })
        }
    }
}

fn catalog_cmd(what: CatalogCmd, json: bool) -> anyhow::Result<u8> {
    match what {
        CatalogCmd::List => {
            let entries = catalog::list();
            emit(json, &json!({ "schema": 1, "entries": entries }), || {
                for e in &entries {
                    println!("{:<20} {:<14} {}", e.name, e.classes.join(","), e.description);
                }
            });
            Ok(0)
        }
        CatalogCmd::Show { name } => {
            let e = catalog::get(&name)?;
            print!("# {}\n{}", e.description, e.graph.to_sg());
            if let Some(r) = &e.rotation {
                println!("# rotation");
                for l in r.to_rot(&e.graph).lines() {
                    println!("# {l}");
                }
            }
            Ok(0)
        }
        CatalogCmd::Verify { name, all } => {
            let names = match (name, all) {
                (Some(n), false) => vec![n],
                (None, true) => catalog::names(),
                _ => return Err(anyhow!(UsageError("give an entry name or --all".into()))),
            };
            let mut reports = Vec::new();
            for n in &names {
                reports.push(catalog::verify(n)?);
            }
            let mut ok = reports.iter().all(|r| r.ok);
            let mut dup = Vec::new();
            if all {
                for class in ["P*(3)", "S*(3)"] {
                    dup.extend(catalog::isomorphic_pairs(class)?);
                }
                ok &= dup.is_empty();
            }
            emit(json, &json!({ "schema": 1, "ok": ok, "reports": reports, "isomorphic_pairs": dup }), || {
                for r in &reports {
                    println!("{} {}", if r.ok { "ok  " } else { "FAIL" }, r.name);
                    for c in r.checks.iter().filter(|c| !c.ok) {
                        println!("     {}: expected {}, found {}", c.property, c.expected, c.actual);
                    }
                }
                for (a, b) in &dup {
                    println!("FAIL {a} and {b} are switching isomorphic");
                }
            });
            Ok(if ok { 0 } else { MISMATCH })
        }
        CatalogCmd::Export { dir } => {
            fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
            for e in catalog::list() {
                fs::write(dir.join(format!("{}.sg", e.name)), format!("# {}\n{}", e.description, e.graph.to_sg()))?;
                if let Some(r) = &e.rotation {
                    fs::write(dir.join(format!("{}.rot", e.name)), r.to_rot(&e.graph))?;
                }
            }
            Ok(0)
        }
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() || err.downcast_ref::<std::io::Error>().is_some() {
        return USAGE;
    }
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_guard() => GUARD,
        Some(Error::Parse { .. } | Error::UnknownVertex(_) | Error::UnknownEdge(_) | Error::UnknownCatalogEntry { .. })
        | Some(Error::MalformedRotation(_) | Error::DuplicateEdgeId(_) | Error::SparseEdgeIds(_)) => USAGE,
        Some(_) => MISMATCH,
        None => USAGE,
    }
}

/// A closed stdout (`signforge catalog list | head`) ends the process quietly.
fn quiet_broken_pipe() {
    let default = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        let msg = info
            .payload()
            .downcast_ref::<String>()
            .map(String::as_str)
            .or_else(|| info.payload().downcast_ref::<&str>().copied())
            .unwrap_or("");
        if msg.contains("Broken pipe") {
            std::process::exit(0);
        }
        default(info);
    }));
}

fn main() -> ExitCode {
    quiet_broken_pipe();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
