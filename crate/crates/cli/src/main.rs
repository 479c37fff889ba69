//! `simplicial`: command-line access to the library and its datasets.
//!
//! Exit status is 0 when the requested operation or check succeeds, 1 when
//! it fails or errors, and 2 on usage errors.

mod input;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use simplicial::bistellar::{certify_manifold, reduce_search, SearchConfig};
use simplicial::homology::is_orientable;
use simplicial::isomorphism::{are_isomorphic, automorphism_group, DEFAULT_NODE_BUDGET};
use simplicial::{check_action, datasets, homology, quotient, Complex, Ring};

use input::{load_dataset, load_file, load_named, resolve_group, resolve_naming, Input};

#[derive(Parser)]
#[command(
    name = "simplicial",
    version,
    about = "Build, check and reduce simplicial complexes"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Facet list or orbit spec file.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Embedded dataset name.
    #[arg(long, value_name = "NAME")]
    dataset: Option<String>,
}

impl Source {
    fn load(&self) -> Result<Input> {
        match (&self.input, &self.dataset) {
            (Some(p), _) => load_file(p),
            (_, Some(d)) => load_dataset(d),
            _ => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Args, Clone)]
struct Budget {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    max_moves: Option<u64>,
    #[arg(long)]
    max_seconds: Option<f64>,
}

impl Budget {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            max_moves: self.max_moves,
            max_seconds: self.max_seconds,
            ..SearchConfig::with_seed(self.seed)
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Pseudomanifold,
    Pure,
    Good,
    Manifold,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an orbit spec into its facet list.
    Expand {
        #[command(flatten)]
        source: Source,
        /// Print only the f-vector.
        #[arg(long)]
        fvector: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Fvector {
        #[command(flatten)]
        source: Source,
    },
    Euler {
        #[command(flatten)]
        source: Source,
    },
    /// Pseudomanifold structure, purity or goodness of an action, or
    /// combinatorial manifold certification.
    Check {
        kind: Check,
        #[command(flatten)]
        source: Source,
        /// S3, A4, spec, or a group spec file (pure and good only).
        #[arg(long)]
        group: Option<String>,
        /// Required for `manifold`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_moves: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
    },
    Homology {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: Ring,
    },
    /// Quotient by a pure group action.
    Quotient {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        group: String,
        /// `builtin` or a file of `label -> name` lines.
        #[arg(long)]
        naming: Option<String>,
        /// Also require the action to be good.
        #[arg(long)]
        check_good: bool,
        /// Dataset name or file the quotient should be isomorphic to.
        #[arg(long)]
        compare: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded bistellar reduction of the f-vector.
    Reduce {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        /// Stop at this many vertices.
        #[arg(long)]
        target: Option<usize>,
        /// Verify GF(2) homology every N moves.
        #[arg(long, value_name = "N")]
        checkpoint: Option<u64>,
        /// Write the best complex here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the move log here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Find a facet-preserving vertex bijection.
    Iso {
        #[command(flatten)]
        source: Source,
        /// Dataset name or file.
        #[arg(long)]
        compare: String,
    },
    /// Order and generators of the automorphism group.
    Aut {
        #[command(flatten)]
        source: Source,
        /// Backtracking node limit.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// f-vectors of all vertex links.
    Links {
        #[command(flatten)]
        source: Source,
    },
    Neighborly {
        #[command(flatten)]
        source: Source,
    },
    /// Staircase triangulation of a product, vertices ordered by label table.
    Product {
        #[command(flatten)]
        source: Source,
        /// Dataset name or file of the second factor.
        #[arg(long)]
        with: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List or emit embedded datasets.
    Dataset {
        #[command(subcommand)]
        action: DatasetAction,
    },
}

#[derive(Subcommand)]
enum DatasetAction {
    List,
    Emit {
        name: String,
        /// Write the expanded facet list instead of the stored text.
        #[arg(long)]
        expanded: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_ring(s: &str) -> std::result::Result<Ring, String> {
    s.parse().map_err(|e: simplicial::Error| e.to_string())
}

/// What a command reports, in both renderings.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            ok: true,
            text,
            json,
        }
    }
}

fn write_or_print(out: &Option<PathBuf>, body: &str, text: &mut String) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, body).with_context(|| format!("writing {}", p.display()))?;
            let _ = writeln!(text, "wrote {}", p.display());
        }
        None => text.push_str(body),
    }
    Ok(())
}

fn isomorphic_to(x: &Complex, other: &str) -> Result<bool> {
    let y = load_named(other)?.complex;
    Ok(are_isomorphic(x, &y).is_some())
}

fn run(cmd: Command) -> Result<Report> {
    Ok(match cmd {
        Command::Expand {
            source,
            fvector,
            out,
        } => {
            let inp = source.load()?;
            let f = inp.complex.f_vector();
            let mut text = String::new();
            if fvector {
                let _ = writeln!(text, "{f}");
            } else {
                write_or_print(&out, &inp.complex.render(), &mut text)?;
            }
            let json = json!({
                "f_vector": f.counts,
                "facets": inp.complex.facets().len(),
                "orbit_lengths": inp.orbit_lengths,
            });
            Report::ok(text, json)
        }
        Command::Fvector { source } => {
            let f = source.load()?.complex.f_vector();
            Report::ok(format!("{f}\n"), json!({ "f_vector": f.counts }))
        }
        Command::Euler { source } => {
            let chi = source.load()?.complex.euler_characteristic();
            Report::ok(format!("{chi}\n"), json!({ "euler_characteristic": chi }))
        }
        Command::Check {
            kind,
            source,
            group,
            seed,
            max_moves,
            max_seconds,
        } => {
            let inp = source.load()?;
            let x = &inp.complex;
            match kind {
                Check::Pseudomanifold => {
                    let r = x.pseudomanifold_check();
                    let orientable = if r.is_closed_pseudomanifold() {
                        Some(is_orientable(x)?)
                    } else {
                        None
                    };
                    let text = format!(
                        "pure: {}, closed: {}, strongly connected: {}, orientable: {}\n",
                        r.pure,
                        r.closed,
                        r.strongly_connected,
                        orientable.map_or("n/a".to_string(), |o| o.to_string())
                    );
                    Report {
                        ok: r.is_closed_pseudomanifold(),
                        text,
                        json: json!({ "report": r, "orientable": orientable }),
                    }
                }
                Check::Pure | Check::Good => {
                    let Some(name) = group else {
                        return Err(Usage("check pure|good needs --group".into()).into());
                    };
                    let g = resolve_group(&name, &inp)?;
                    let r = check_action(x, &g)?;
                    let ok = if matches!(kind, Check::Pure) {
                        r.is_pure
                    } else {
                        r.is_good
                    };
                    let text = format!(
                        "pure: {}, good: {}, violations: {}\n",
                        r.is_pure, r.is_good, r.violation_count
                    );
                    Report {
                        ok,
                        text,
                        json: serde_json::to_value(&r)?,
                    }
                }
                Check::Manifold => {
                    let Some(seed) = seed else {
                        return Err(Usage("check manifold needs --seed".into()).into());
                    };
                    let cfg = Budget {
                        seed,
                        max_moves,
                        max_seconds,
                    }
                    .config();
                    let r = certify_manifold(x, &cfg)?;
                    let mut text = String::new();
                    for l in &r.links {
                        let _ = writeln!(
                            text,
                            "{}: {:?} after {} moves",
                            l.vertex, l.certificate.verdict, l.certificate.moves
                        );
                    }
                    let _ = writeln!(text, "verdict: {:?}", r.verdict);
                    Report {
                        ok: r.verdict == simplicial::bistellar::ManifoldVerdict::Manifold,
                        text,
                        json: serde_json::to_value(&r)?,
                    }
                }
            }
        }
        Command::Homology { source, ring } => {
            let h = homology(&source.load()?.complex, ring)?;
            let mut text = String::new();
            for (k, b) in h.betti.iter().enumerate() {
                let _ = write!(text, "H_{k}: {b}");
                for t in &h.torsion[k] {
                    let _ = write!(text, " + Z/{t}");
                }
                text.push('\n');
            }
            Report::ok(text, serde_json::to_value(&h)?)
        }
        Command::Quotient {
            source,
            group,
            naming,
            check_good,
            compare,
            out,
        } => {
            let inp = source.load()?;
            let g = resolve_group(&group, &inp)?;
            let naming = naming.map(|n| resolve_naming(&n)).transpose()?;
            let q = quotient(&inp.complex, &g, naming.as_ref())?;
            let mut ok = true;
            let mut parts = Vec::new();
            let mut json = json!({ "f_vector": q.complex.f_vector().counts });
            if check_good {
                let good = check_action(&inp.complex, &g)?.is_good;
                ok &= good;
                parts.push(format!("good: {good}"));
                json["good"] = good.into();
            }
            if let Some(other) = compare {
                let iso = isomorphic_to(&q.complex, &other)?;
                ok &= iso;
                parts.push(format!("isomorphic: {iso}"));
                json["isomorphic"] = iso.into();
            }
            let mut text = format!("f-vector: {}\n", q.complex.f_vector());
            if !parts.is_empty() {
                let _ = writeln!(text, "{}", parts.join(", "));
            }
            if out.is_some() {
                write_or_print(&out, &q.complex.render(), &mut text)?;
            }
            Report { ok, text, json }
        }
        Command::Reduce {
            source,
            budget,
            target,
            checkpoint,
            out,
            log,
        } => {
            let x = source.load()?.complex;
            let cfg = SearchConfig {
                target_vertices: target,
                homology_checkpoint: checkpoint,
                ..budget.config()
            };
            let o = reduce_search(&x, &cfg)?;
            let status = serde_json::to_value(o.status)?;
            let mut text = format!(
                "status: {}\nf-vector: {}\nmoves applied: {}\nlogged moves: {}\n",
                status.as_str().unwrap_or_default(),
                o.complex.f_vector(),
                o.moves_applied,
                o.log.len()
            );
            if let Some(p) = &out {
                write_or_print(&Some(p.clone()), &o.complex.render(), &mut text)?;
            }
            if let Some(p) = &log {
                write_or_print(&Some(p.clone()), &o.log.render(), &mut text)?;
            }
            let json = json!({
                "status": status,
                "f_vector": o.f_vector,
                "moves_applied": o.moves_applied,
                "logged_moves": o.log.len(),
                "checkpoints": o.checkpoints,
            });
            Report::ok(text, json)
        }
        Command::Iso { source, compare } => {
            let x = source.load()?.complex;
            let y = load_named(&compare)?.complex;
            match are_isomorphic(&x, &y) {
                Some(map) => {
                    let mut text = String::new();
                    for (a, b) in &map {
                        let _ = writeln!(text, "{a} -> {b}");
                    }
                    let pairs: serde_json::Map<String, Value> = map
                        .into_iter()
                        .map(|(a, b)| (a, Value::String(b)))
                        .collect();
                    Report::ok(text, json!({ "isomorphic": true, "map": pairs }))
                }
                None => Report {
                    ok: false,
                    text: "not isomorphic\n".into(),
                    json: json!({ "isomorphic": false }),
                },
            }
        }
        Command::Aut { source, budget } => {
            let x = source.load()?.complex;
            let a = automorphism_group(&x, budget)?;
            let mut text = format!("order: {}\n", a.order);
            let mut gens = Vec::new();
            for g in a.group.generators() {
                let c = g.perm.to_cycle_string(x.vertices());
                let _ = writeln!(text, "{}: {c}", g.name);
                gens.push(c);
            }
            Report::ok(text, json!({ "order": a.order, "generators": gens }))
        }
        Command::Links { source } => {
            let x = source.load()?.complex;
            let mut text = String::new();
            let mut rows = Vec::new();
            for v in 0..x.num_vertices() as u32 {
                let f = x.link(&[v])?.f_vector();
                let label = x.vertices().label(v);
                let _ = writeln!(text, "{label}: {f}");
                rows.push(json!({ "vertex": label, "f_vector": f.counts }));
            }
            Report::ok(text, Value::Array(rows))
        }
        Command::Neighborly { source } => {
            let k = source.load()?.complex.neighborliness();
            Report::ok(format!("{k}-neighborly\n"), json!({ "neighborliness": k }))
        }
        Command::Product { source, with, out } => {
            let x = source.load()?.complex;
            let y = load_named(&with)?.complex;
            let p = x.staircase_product_default(&y)?;
            let mut text = format!("f-vector: {}\n", p.f_vector());
            write_or_print(&out, &p.render(), &mut text)?;
            Report::ok(text, json!({ "f_vector": p.f_vector().counts }))
        }
        Command::Dataset { action } => match action {
            DatasetAction::List => {
                let mut text = String::new();
                let mut rows = Vec::new();
                for name in datasets::NAMES {
                    let d = datasets::load_dataset(name)?;
                    let _ = writeln!(text, "{name}: {}", d.description);
                    rows.push(json!({
                        "name": name,
                        "description": d.description,
                        "f_vector": d.expected_f_vector,
                    }));
                }
                Report::ok(text, Value::Array(rows))
            }
            DatasetAction::Emit {
                name,
                expanded,
                out,
            } => {
                let body = if expanded {
                    load_dataset(&name)?.complex.render()
                } else {
                    datasets::load_dataset(&name)?.text
                };
                let mut text = String::new();
                write_or_print(&out, &body, &mut text)?;
                Report::ok(text, json!({ "name": name, "bytes": body.len() }))
            }
        },
    })
}

/// A command-line error found after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.json);
            } else {
                print!("{}", r.text);
            }
            ExitCode::from(u8::from(!r.ok))
        }
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
