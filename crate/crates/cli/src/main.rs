use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use unicellular::homology::homology_json;
use unicellular::*;

/// Exit codes: 0 success or claim holds, 1 claim violated, 2 usage error or
/// infeasible size.
#[derive(Parser)]
#[command(
    name = "unicellular",
    version,
    about = "Unicellular maps, surgery graphs and their mod-2 invariants"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Bfs,
}

impl From<Mode> for GraphMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Full => GraphMode::Full,
            Mode::Bfs => GraphMode::Bfs,
        }
    }
}

#[derive(Args)]
struct Shape {
    #[arg(long)]
    genus: usize,
    /// Vertex degrees, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    degree: Vec<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, vertex count and degree partition of a coding.
    Analyze { coding: String },
    /// Canonical representative of a coding.
    Canon { coding: String },
    /// Every map with the given genus and degrees.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
    },
    /// Every admissible surgery of a coding.
    Surgeries { coding: String },
    /// The surgery graph, with component count and diameters.
    Graph {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        /// Starting map for `--mode bfs`; found by search when omitted.
        #[arg(long)]
        seed: Option<String>,
    },
    /// The surgery invariant [G] with the intersection form.
    Invariant { coding: String },
    /// The mod-2 intersection form on the fundamental cycles.
    Form { coding: String },
    /// Strands of a 4-valent map.
    Curves { coding: String },
    /// The chain of 2g curves as a coding.
    Chain {
        #[arg(long)]
        genus: usize,
    },
    /// Moves taking a primitive vector congruent to x1 mod 2 back to x1.
    Reduce {
        /// Comma-separated coordinates (x1,y1,...,xg,yg).
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Checks one claim and prints PASS or FAIL.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand)]
enum Verify {
    /// The surgery graph has a single component.
    Connectivity {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[arg(long)]
        seed: Option<String>,
    },
    /// Surgery along (x̄, ȳ) undoes surgery along (x, y) on every 4-valent map.
    DoubleSurgery {
        #[arg(long)]
        genus: usize,
    },
    /// Transvections avoiding y1 generate the stabilizer of x1 mod 2.
    Stabilizer {
        #[arg(long)]
        genus: usize,
        /// Every nonzero class of span{x1, x2, y2, ...}.
        #[arg(long, conflicts_with = "humphries")]
        full_span: bool,
        /// The 2g-element configuration (default).
        #[arg(long)]
        humphries: bool,
    },
    /// The orbit of x1 under Sp(2g, 2) has 2^(2g) - 1 elements.
    Orbit {
        #[arg(long)]
        genus: usize,
    },
    /// [G] is nonzero for the 4-valent maps and the chain collection.
    InvariantNonzero {
        #[arg(long)]
        genus: usize,
    },
}

enum Failure {
    Usage(String),
    Claim(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Claim(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn coding(text: &str) -> std::result::Result<Coding, Failure> {
    Ok(parse_coding(text)?)
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        _ => print!("{}", text()),
    }
}

fn no_dot(format: Format, command: &str) -> Outcome {
    if format == Format::Dot {
        return Err(Failure::Usage(format!("{command} has no dot output")));
    }
    Ok(())
}

fn bits(v: &[u8]) -> String {
    v.iter().map(|b| char::from(b'0' + b)).collect()
}

fn surgery_graph(
    shape: &Shape,
    mode: Mode,
    seed: Option<&str>,
) -> std::result::Result<SurgeryGraph, Failure> {
    let seed = match (mode, seed) {
        (Mode::Bfs, Some(s)) => Some(coding(s)?),
        (Mode::Bfs, None) => Some(find_map(shape.genus, &shape.degree)?.ok_or_else(|| {
            Failure::Usage(format!(
                "no map of genus {} with degrees {:?}",
                shape.genus, shape.degree
            ))
        })?),
        (Mode::Full, _) => None,
    };
    Ok(build_surgery_graph(
        shape.genus,
        &shape.degree,
        mode.into(),
        seed.as_ref(),
    )?)
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Analyze { coding: text } => {
            no_dot(format, "analyze")?;
            let c = coding(&text)?;
            let s = analyze(&c);
            emit(format, &s.to_json(&c), || {
                let d: Vec<String> = s.degree_partition.iter().map(ToString::to_string).collect();
                format!(
                    "coding {c}\ngenus {}\nvertices {}\nedges {}\ndegrees {}\n",
                    s.genus,
                    s.vertex_count,
                    s.edge_count,
                    d.join(",")
                )
            });
        }
        Command::Canon { coding: text } => {
            no_dot(format, "canon")?;
            let k = canonical_form(&coding(&text)?);
            emit(format, &json!({ "canonical": k.to_string() }), || {
                format!("{k}\n")
            });
        }
        Command::Enumerate { shape } => {
            no_dot(format, "enumerate")?;
            let maps = enumerate_maps(shape.genus, &shape.degree)?;
            let names: Vec<String> = maps.iter().map(ToString::to_string).collect();
            emit(
                format,
                &json!({ "genus": shape.genus, "degrees": shape.degree, "count": maps.len(), "maps": names }),
                || names.iter().map(|n| format!("{n}\n")).collect(),
            );
        }
        Command::Surgeries { coding: text } => {
            no_dot(format, "surgeries")?;
            let c = coding(&text)?;
            let moves = all_surgeries(&c);
            let rows: Vec<Value> = moves
                .iter()
                .map(|(x, y, t)| json!({ "x": x.to_string(), "y": y.to_string(), "result": t.to_string() }))
                .collect();
            emit(
                format,
                &json!({ "coding": c.to_string(), "surgeries": rows }),
                || {
                    moves
                        .iter()
                        .map(|(x, y, t)| format!("{x} {y} {t}\n"))
                        .collect()
                },
            );
        }
        Command::Graph { shape, mode, seed } => {
            let g = surgery_graph(&shape, mode, seed.as_deref())?;
            match format {
                Format::Dot => print!("{}", g.to_dot()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&g.to_json()).unwrap()),
                Format::Text => {
                    let m = graph_metrics(&g);
                    println!("nodes {}", m.node_count);
                    println!("edges {}", m.edge_count);
                    println!("components {}", m.components);
                    let d: Vec<String> = m.diameters.iter().map(ToString::to_string).collect();
                    println!("diameters {}", d.join(","));
                    for (i, c) in g.nodes.iter().enumerate() {
                        println!("{i} {c}");
                    }
                    for (i, j, w) in &g.edges {
                        println!("{i} -- {j} ({},{} on {})", w.x, w.y, w.on);
                    }
                }
            }
        }
        Command::Invariant { coding: text } => {
            no_dot(format, "invariant")?;
            let c = coding(&text)?;
            let class = graph_class(&c)?;
            let value = homology_json(&c)?;
            emit(format, &value, || format!("{}\n", bits(&class.bits)));
        }
        Command::Form { coding: text } => {
            no_dot(format, "form")?;
            let c = coding(&text)?;
            let f = intersection_form(&c)?;
            let ids: Vec<usize> = f.basis_edges.iter().map(|e| e + 1).collect();
            emit(
                format,
                &json!({ "basis_edges": ids, "form": f.matrix, "rank": f.rank() }),
                || f.to_rows().iter().map(|r| format!("{r}\n")).collect(),
            );
        }
        Command::Curves { coding: text } => {
            no_dot(format, "curves")?;
            let d = constituent_curves(&coding(&text)?)?;
            let value = serde_json::to_value(&d).unwrap();
            emit(format, &value, || {
                let mut s = String::new();
                for (i, curve) in d.curves.iter().enumerate() {
                    let edges: Vec<String> = curve.iter().map(|e| (e + 1).to_string()).collect();
                    s.push_str(&format!(
                        "curve {i}: edges {} self-crossings {}\n",
                        edges.join(","),
                        d.self_intersections[i]
                    ));
                }
                for row in &d.crossing_matrix {
                    let r: Vec<String> = row.iter().map(ToString::to_string).collect();
                    s.push_str(&format!("{}\n", r.join(" ")));
                }
                s
            });
        }
        Command::Chain { genus } => {
            no_dot(format, "chain")?;
            let c = chain_collection(genus)?;
            emit(format, &analyze(&c).to_json(&c), || format!("{c}\n"));
        }
        Command::Reduce { vector } => {
            no_dot(format, "reduce")?;
            let v: IntVector = vector.parse()?;
            let word = vector_reduce(&v)?;
            let image = apply_move_word(&word, &v)?;
            if image != IntVector::x(v.genus(), 1) {
                return Err(Failure::Claim(format!("word sends {v} to {image}")));
            }
            emit(format, &word.to_json(), || {
                word.0
                    .iter()
                    .map(|m| format!("{} [{}]^{}\n", m.tag.as_str(), m.class, m.power))
                    .collect()
            });
        }
        Command::Verify(v) => return verify(v),
    }
    Ok(())
}

fn report(name: &str, ok: bool, mut detail: Value, start: Instant) -> Outcome {
    detail["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    println!("{}", serde_json::to_string(&detail).unwrap());
    if ok {
        Ok(())
    } else {
        Err(Failure::Claim(format!("{name} failed")))
    }
}

fn verify(v: Verify) -> Outcome {
    let start = Instant::now();
    match v {
        Verify::Connectivity { shape, mode, seed } => {
            let g = surgery_graph(&shape, mode, seed.as_deref())?;
            let m = graph_metrics(&g);
            let detail =
                json!({ "genus": shape.genus, "degrees": g.degrees, "metrics": m.to_json() });
            report("connectivity", m.components == 1, detail, start)
        }
        Verify::DoubleSurgery { genus } => {
            let degrees = vec![4; 2 * genus.max(1) - 1];
            let maps = enumerate_maps(genus, &degrees)?;
            let mut triples = 0usize;
            let mut held = 0usize;
            let mut first_failure = Value::Null;
            for c in &maps {
                for (x, y, _) in all_surgeries(c) {
                    triples += 1;
                    if double_surgery_identity(c, x, y)? {
                        held += 1;
                    } else if first_failure.is_null() {
                        first_failure = json!({ "coding": c.to_string(), "x": x.to_string(), "y": y.to_string() });
                    }
                }
            }
            let detail = json!({
                "genus": genus,
                "maps": maps.len(),
                "triples": triples,
                "held": held,
                "first_failure": first_failure,
            });
            report("double-surgery", held == triples, detail, start)
        }
        Verify::Stabilizer {
            genus, full_span, ..
        } => {
            let (name, classes) = if full_span {
                ("full-span", full_span_classes(genus))
            } else {
                ("humphries", humphries_classes(genus))
            };
            let r = stabilizer_check(genus, &classes)?;
            let mut detail = r.to_json();
            detail["configuration"] = json!(name);
            detail["classes"] = json!(classes
                .iter()
                .map(|&c| format_bits(c, 2 * genus))
                .collect::<Vec<_>>());
            report("stabilizer", r.equal, detail, start)
        }
        Verify::Orbit { genus } => {
            if genus == 0 || genus > 12 {
                return Err(Failure::Usage(format!("genus {genus} outside 1..=12")));
            }
            let size = orbit_of(1, &standard_generators(genus))?;
            let expected = (1usize << (2 * genus)) - 1;
            let detail = json!({ "genus": genus, "orbit": size, "expected": expected });
            report("orbit", size == expected, detail, start)
        }
        Verify::InvariantNonzero { genus } => {
            let mut maps = Vec::new();
            let degrees = vec![4; 2 * genus.max(1) - 1];
            if 4 * degrees.len() <= ENUMERATION_CAP {
                maps = enumerate_maps(genus, &degrees)?;
            }
            maps.push(chain_collection(genus)?);
            let mut zero = Vec::new();
            for c in &maps {
                match graph_class(c) {
                    Ok(v) if !v.is_zero() => {}
                    Ok(_) | Err(Error::Internal(_)) => zero.push(c.to_string()),
                    Err(e) => return Err(e.into()),
                }
            }
            let detail = json!({ "genus": genus, "maps": maps.len(), "zero": zero });
            report("invariant-nonzero", zero.is_empty(), detail, start)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
