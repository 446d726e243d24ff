use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tolrec::geometry::{PermutationRep, RepJson, ToleranceRep, TrapezoidRep};
use tolrec::graph::GraphJson;
use tolrec::oracles::{check_equivalence, is_comparability, is_permutation_graph, nae_sat_bruteforce};
use tolrec::orientation::{is_acyclic_trapezoid_rep, is_acyclic_wrt_pairs, parallelogramize, split_lines_rep, PairSet};
use tolrec::reduction::{build_gphi, build_hphi, build_pphi, parse_cnf, MonotoneCnf};
use tolrec::split::split_u;
use tolrec::structure::{n_partition_with, ComponentFamily};
use tolrec::{Error, Execution, Graph};

#[derive(Parser)]
#[command(name = "tolrec", version, about = "Trapezoid, parallelogram and tolerance graph tools")]
struct Cli {
    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build P_φ, G_φ or H_φ from a monotone 3-CNF and write it to a directory.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, value_enum)]
        emit: Emit,
        #[arg(long)]
        out: PathBuf,
        /// Flip the blocks of these variables (1-based, comma-separated).
        /// With `--emit hphi` the flipped rep is straightened and the
        /// parallelogram rep is written with exact coordinates.
        #[arg(long, value_delimiter = ',')]
        flip: Option<Vec<usize>>,
        /// Also write a DOT file of the graph.
        #[arg(long)]
        dot: bool,
    },
    /// Run Split-U on a vertex set; vertices are split in the given order.
    SplitU {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertex ids, e.g. "0,3,7".
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
    },
    /// Check a permutation rep for acyclicity w.r.t. a pairing, or a
    /// trapezoid rep w.r.t. its own left/right lines.
    CheckAcyclic {
        #[arg(long)]
        rep: PathBuf,
        /// `{"pairs": [[x, y], ...]}`; required for permutation reps.
        #[arg(long)]
        pairs: Option<PathBuf>,
    },
    /// Check that a rep (any kind) induces exactly the given graph.
    VerifyRep {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Exhaustive NAE-satisfiability.
    NaeSat {
        #[arg(long)]
        cnf: PathBuf,
        #[command(flatten)]
        guards: Guards,
    },
    /// Compare NAE-satisfiability with the acyclic-flip search, the
    /// certificate and the straightened H_φ.
    CheckEquivalence {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        guards: Guards,
    },
    /// Components, closures, masters, deltas and the N-partition of a vertex.
    Structure {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
    /// Exact membership in a graph class.
    Recognize {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        class: Class,
    },
    /// Tolerance → parallelogram, parallelogram → tolerance, or straighten
    /// a trapezoid rep into a parallelogram rep.
    Convert {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Guards {
    #[arg(long, default_value_t = tolrec::oracles::equivalence::MAX_VARIABLES)]
    max_n: usize,
    #[arg(long, default_value_t = tolrec::oracles::equivalence::MAX_CLAUSES)]
    max_k: usize,
}

impl Guards {
    fn check(&self, f: &MonotoneCnf) -> anyhow::Result<()> {
        if self.max_n == 0 || self.max_k == 0 {
            bail!("guards must be positive");
        }
        if f.n() > self.max_n {
            bail!("formula has {} variables, guard is {}", f.n(), self.max_n);
        }
        if f.k() > self.max_k {
            bail!("formula has {} clauses, guard is {}", f.k(), self.max_k);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Pphi,
    Gphi,
    Hphi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Permutation,
    Comparability,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Parallelogram,
    Tolerance,
}

/// Answer of a yes/no command: exit 0 for yes, 1 for no.
struct Verdict(bool);

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    Ok(Graph::from_json(&read_json::<GraphJson>(path)?)?)
}

fn read_cnf(path: &Path) -> anyhow::Result<MonotoneCnf> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_cnf(&text)?)
}

fn read_pairs(path: &Path, n: usize) -> anyhow::Result<PairSet> {
    let doc: Value = read_json(path)?;
    let pairs: Vec<(usize, usize)> = serde_json::from_value(doc.get("pairs").cloned().unwrap_or(doc))
        .with_context(|| format!("{} is not a list of pairs", path.display()))?;
    Ok(PairSet::new(n, pairs)?)
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// A closed stdout pipe is not an error.
fn print_line(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print(v: &Value) {
    print_line(&serde_json::to_string_pretty(v).expect("values serialize"));
}

fn reduce(cnf: &Path, emit: Emit, out: &Path, flip: Option<&[usize]>, dot: bool) -> anyhow::Result<Verdict> {
    let f = read_cnf(cnf)?;
    let art = build_pphi(&f)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let (name, graph, rep, labels) = match emit {
        Emit::Pphi => {
            let rp = match flip {
                Some(vars) => art.flip_blocks(vars)?,
                None => art.rp.clone(),
            };
            ("pphi", art.pphi.clone(), serde_json::to_value(rp.to_json())?, art.labels.clone())
        }
        Emit::Gphi => {
            if flip.is_some() {
                bail!("--flip applies to pphi and hphi");
            }
            let g = build_gphi(&art)?;
            ("gphi", g.graph, serde_json::to_value(g.rep.to_json())?, g.labels)
        }
        Emit::Hphi => {
            let g = build_gphi(&art)?;
            let h = build_hphi(&g.rep)?;
            let mut labels = g.labels.clone();
            for (i, p) in h.parents.iter().enumerate() {
                labels.push(format!("{}.{}", g.labels[p.vertex], i % 6 + 1));
            }
            let rep = match flip {
                Some(vars) => {
                    let p = parallelogramize(&h.flip_blocks(&g, &art, vars)?)?;
                    if let Some(m) = p.as_trapezoid().verify(&h.graph)? {
                        bail!("straightened rep disagrees with H_φ on {}-{}", m.u, m.v);
                    }
                    p.into_trapezoid()
                }
                None => h.normalized(),
            };
            ("hphi", h.graph.clone(), serde_json::to_value(rep.to_json())?, labels)
        }
    };
    write(&out.join(format!("{name}.graph.json")), &serde_json::to_string_pretty(&graph.to_json(Some(&labels)))?)?;
    write(&out.join(format!("{name}.rep.json")), &serde_json::to_string_pretty(&rep)?)?;
    let blocks: Vec<Vec<usize>> = art.blocks.iter().map(|b| b.as_slice().to_vec()).collect();
    write(&out.join("blocks.json"), &serde_json::to_string_pretty(&json!({ "blocks": blocks }))?)?;
    write(&out.join("merge_pairs.json"), &serde_json::to_string_pretty(&json!({ "pairs": art.merge_pairs.pairs() }))?)?;
    if dot {
        write(&out.join(format!("{name}.dot")), &graph.to_dot(Some(&labels)))?;
    }
    print(&json!({
        "emit": name,
        "vertices": graph.n(),
        "edges": graph.edge_count(),
        "lines": art.line_count(),
        "connectors": art.connectors,
        "m": art.m(),
    }));
    Ok(Verdict(true))
}

fn split(graph: &Path, set: &[usize]) -> anyhow::Result<Verdict> {
    let g = read_graph(graph)?;
    match split_u(&g, set) {
        Ok(s) => {
            let derivatives: serde_json::Map<String, Value> =
                s.derivatives.iter().map(|(u, (a, b))| (u.to_string(), json!([a, b]))).collect();
            print(&json!({
                "graph": s.graph.to_json(None),
                "derivatives": derivatives,
                "dropped": s.dropped.as_slice(),
                "steps": s.steps,
            }));
            Ok(Verdict(true))
        }
        Err(e @ Error::SplitPrecondition { .. }) => {
            print(&json!({ "error": e.to_string() }));
            Ok(Verdict(false))
        }
        Err(e) => Err(e.into()),
    }
}

fn check_acyclic(rep: &Path, pairs: Option<&Path>) -> anyhow::Result<Verdict> {
    let verdict = match read_json::<RepJson>(rep)? {
        RepJson::Permutation(doc) => {
            let r = PermutationRep::from_json(&doc)?;
            let Some(pairs) = pairs else { bail!("--pairs is required for a permutation rep") };
            is_acyclic_wrt_pairs(&r, &read_pairs(pairs, r.len())?)?
        }
        RepJson::Trapezoid(doc) => {
            let r = TrapezoidRep::from_json(&doc)?;
            if pairs.is_some() {
                bail!("a trapezoid rep is paired by its own left/right lines; drop --pairs");
            }
            let (lines, pairs) = split_lines_rep(&r);
            is_acyclic_wrt_pairs(&lines, &pairs)?
        }
        RepJson::Tolerance(_) => bail!("check-acyclic takes a permutation or trapezoid rep"),
    };
    print(&serde_json::to_value(&verdict)?);
    Ok(Verdict(verdict.acyclic))
}

fn verify(rep: &Path, graph: &Path) -> anyhow::Result<Verdict> {
    let g = read_graph(graph)?;
    let mismatch = match read_json::<RepJson>(rep)? {
        RepJson::Permutation(doc) => PermutationRep::from_json(&doc)?.verify(&g)?,
        RepJson::Trapezoid(doc) => TrapezoidRep::from_json(&doc)?.verify(&g)?,
        RepJson::Tolerance(doc) => ToleranceRep::from_json(&doc)?.verify(&g)?,
    };
    print(&json!({ "ok": mismatch.is_none(), "mismatch": mismatch }));
    Ok(Verdict(mismatch.is_none()))
}

fn nae_sat(cnf: &Path, guards: &Guards, exec: Execution) -> anyhow::Result<Verdict> {
    let f = read_cnf(cnf)?;
    guards.check(&f)?;
    let a = nae_sat_bruteforce(&f, exec)?;
    match &a {
        Some(a) => print_line(&format!("NAE-satisfiable: {a}")),
        None => print_line("not NAE-satisfiable"),
    }
    Ok(Verdict(a.is_some()))
}

fn equivalence(cnf: &Path, as_json: bool, guards: &Guards, exec: Execution) -> anyhow::Result<Verdict> {
    let f = read_cnf(cnf)?;
    guards.check(&f)?;
    let report = check_equivalence(&f, exec)?;
    if as_json {
        print(&serde_json::to_value(&report)?);
    } else {
        let assignment = match &report.assignment {
            Some(a) => format!("NAE-satisfiable: {a}"),
            None => "not NAE-satisfiable".to_string(),
        };
        let flip = match &report.flip {
            Some(vars) => format!("acyclic flip of blocks {vars:?}"),
            None => "no block flip is acyclic".to_string(),
        };
        print_line(&format!(
            "n = {}, k = {}, m = {}\n{assignment}\n{flip}\ncertificate acyclic: {:?}\nstraightened H_φ verified: {:?}\nSplit-U recovers P_φ: {}\nconsistent: {}",
            report.n,
            report.k,
            report.m,
            report.certificate_acyclic,
            report.parallelogram_verified,
            report.split_recovers_pphi,
            report.consistent
        ));
    }
    Ok(Verdict(report.consistent))
}

fn structure(graph: &Path, u: usize) -> anyhow::Result<Verdict> {
    let g = read_graph(graph)?;
    let family = ComponentFamily::new(&g, u)?;
    let closures = (0..family.len()).map(|i| family.closure(i)).collect::<Result<Vec<_>, _>>()?;
    let complements = (0..family.len()).map(|i| family.closure_complement(i)).collect::<Result<Vec<_>, _>>()?;
    let masters = if family.is_empty() { Vec::new() } else { family.masters()? };
    let deltas = family.select_deltas()?;
    let partition = match (deltas.delta, deltas.delta_star) {
        (Some(i), Some(j)) => Some(n_partition_with(&g, &family, i, j)?),
        _ => None,
    };
    print(&json!({
        "vertex": u,
        "components": family.components,
        "boundaries": family.boundaries,
        "closures": closures,
        "closure_complements": complements,
        "masters": masters,
        "delta": deltas.delta,
        "delta_star": deltas.delta_star,
        "partition": partition,
    }));
    Ok(Verdict(partition.is_some()))
}

fn recognize(graph: &Path, class: Class) -> anyhow::Result<Verdict> {
    let g = read_graph(graph)?;
    let (name, member, orientation) = match class {
        Class::Permutation => ("permutation", is_permutation_graph(&g)?, None),
        Class::Comparability => {
            let o = is_comparability(&g)?;
            ("comparability", o.is_some(), o.map(|o| o.arcs.into_iter().collect::<Vec<_>>()))
        }
    };
    let mut doc = json!({ "class": name, "member": member });
    if let Some(arcs) = orientation {
        doc["orientation"] = json!(arcs);
    }
    print(&doc);
    Ok(Verdict(member))
}

fn convert(rep: &Path, to: Target, out: Option<&Path>) -> anyhow::Result<Verdict> {
    let doc = match (read_json::<RepJson>(rep)?, to) {
        (RepJson::Tolerance(doc), Target::Parallelogram) => {
            let p = ToleranceRep::from_json(&doc)?.to_parallelogram()?;
            serde_json::to_value(p.as_trapezoid().to_json())?
        }
        (RepJson::Trapezoid(doc), Target::Parallelogram) => {
            let r = TrapezoidRep::from_json(&doc)?;
            if !is_acyclic_trapezoid_rep(&r)? {
                bail!("trapezoid rep is not acyclic, so it has no straightening");
            }
            serde_json::to_value(parallelogramize(&r)?.as_trapezoid().to_json())?
        }
        (RepJson::Trapezoid(doc), Target::Tolerance) => {
            let p = tolrec::geometry::ParallelogramRep::new(TrapezoidRep::from_json(&doc)?)?;
            serde_json::to_value(p.to_tolerance().to_json())?
        }
        (RepJson::Tolerance(_), Target::Tolerance) => bail!("rep is already a tolerance rep"),
        (RepJson::Permutation(_), _) => bail!("convert takes a tolerance or trapezoid rep"),
    };
    let text = serde_json::to_string_pretty(&doc)?;
    match out {
        Some(path) => write(path, &text)?,
        None => print_line(&text),
    }
    Ok(Verdict(true))
}

fn run(cli: Cli) -> anyhow::Result<Verdict> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match cli.command {
        Command::Reduce { cnf, emit, out, flip, dot } => reduce(&cnf, emit, &out, flip.as_deref(), dot),
        Command::SplitU { graph, set } => split(&graph, &set),
        Command::CheckAcyclic { rep, pairs } => check_acyclic(&rep, pairs.as_deref()),
        Command::VerifyRep { rep, graph } => verify(&rep, &graph),
        Command::NaeSat { cnf, guards } => nae_sat(&cnf, &guards, exec),
        Command::CheckEquivalence { cnf, json, guards } => equivalence(&cnf, json, &guards, exec),
        Command::Structure { graph, vertex } => structure(&graph, vertex),
        Command::Recognize { graph, class } => recognize(&graph, class),
        Command::Convert { rep, to, out } => convert(&rep, to, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict(true)) => ExitCode::SUCCESS,
        Ok(Verdict(false)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
