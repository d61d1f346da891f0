//! Command-line front end. JSON on stdout by default, flattened
//! `key: value` lines with `--format text`.
//!
//! Exit codes: 0 when every check passes, 1 when a counterexample or a
//! failed check is reported, 2 on usage errors (bad parameters, caps,
//! unreadable input).

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{
    certify, compare_lemma23, replay_comparison, search_counterexamples, Corpus, TheoremSpec, Verdict,
};
use crate::error::{invalid, Error, Result};
use crate::factors::{
    fractional_ab_factor, fractional_pm_violator, half_integral_oracle, hall_check, has_k_factor,
    is_fractional_ab_deleted, is_id_factor_critical, max_matching, tutte_violator,
};
use crate::graph::{build_extremal_gr, build_gs, build_join_family, graph_stats, BlockLayout, Graph};
use crate::io::{from_graph6, read_graph6_lines, to_graph6};
use crate::quotient::{
    eq3_ratio_check, extremal_quotient, ineq4_check, quotient_matrix, theorem1_quotient,
    verify_quotient_equality, Partition,
};
use crate::spectra::{self, all_pairs_distances, distance_matrix, dq_matrix, transmission_bounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "distfactor", version, about = "Distance spectra, extremal graphs and factor oracles")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A single graph: `--graph6` inline, `--input FILE` (first line), or stdin.
#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    #[arg(long)]
    pub graph6: Option<String>,
    #[arg(long, conflicts_with = "graph6")]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Distance data, λ₁(D), μ₁(D^Q) and transmission bounds.
    Spectra {
        #[command(flatten)]
        graph: GraphInput,
        /// Relative tolerance for power iteration.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Also report both full spectra (Jacobi).
        #[arg(long)]
        full: bool,
    },
    /// Build a named graph and print its graph6 encoding.
    Construct(ConstructArgs),
    /// Quotient matrices and the eigenvector checks for G^(r).
    Quotient(QuotientArgs),
    /// Run one factor oracle and print its witness.
    Factor(FactorArgs),
    /// Evaluate a theorem's hypothesis and conclusion on one graph.
    Certify(CertifyArgs),
    /// Replay the G^(s) versus G^(r) comparison numerically.
    #[command(subcommand)]
    Replay(ReplayCommand),
    /// Certify every graph of a corpus and tally verdicts.
    Search(SearchArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ConstructArgs {
    /// G^(r) on n vertices.
    #[arg(long, num_args = 2, value_names = ["N", "R"])]
    pub extremal_gr: Option<Vec<usize>>,
    /// G^(s) on n vertices with parameters r and s.
    #[arg(long, num_args = 3, value_names = ["N", "R", "S"])]
    pub gs: Option<Vec<usize>>,
    /// I_r ∨ K_s ∨ (K_{n_1} + ⋯ + K_{n_p}), odd parts.
    #[arg(long, num_args = 3.., value_names = ["R", "S", "PARTS"])]
    pub join_family: Option<Vec<usize>>,
    #[arg(long, value_name = "N")]
    pub complete: Option<usize>,
    #[arg(long, value_name = "N")]
    pub cycle: Option<usize>,
    #[arg(long, value_name = "N")]
    pub path: Option<usize>,
    /// Star with the given number of leaves.
    #[arg(long, value_name = "LEAVES")]
    pub star: Option<usize>,
}

#[derive(Args, Debug)]
pub struct QuotientArgs {
    /// Check the four-block quotient of G^(r) on n vertices.
    #[arg(long, num_args = 2, value_names = ["N", "R"], conflicts_with_all = ["graph6", "input", "layout"])]
    pub extremal_gr: Option<Vec<usize>>,
    #[command(flatten)]
    pub graph: GraphInput,
    /// Consecutive block sizes, e.g. `1,1,8,2`.
    #[arg(long, value_delimiter = ',')]
    pub layout: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Matching,
    Tutte,
    FractionalPm,
    Hall,
    FractionalAb,
    HalfIntegral,
    Deleted,
    KFactor,
    Id,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    #[arg(value_enum)]
    pub oracle: Oracle,
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// One side of the bipartition for `hall`; the rest is the other side.
    #[arg(long, value_delimiter = ',')]
    pub left: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Id,
    FractionalAb,
    Deleted,
    KFactor,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TheoremParams {
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(value_enum)]
    pub theorem: TheoremArg,
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub params: TheoremParams,
}

#[derive(Subcommand, Debug)]
pub enum ReplayCommand {
    /// D(G^(s)) − D(G^(r)) block pattern, quadratic identity and the gap.
    /// Without `--s`, every admissible s is replayed.
    Comparison {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Clique merging inside K_s ∨ (K_{n_1} + ⋯ + K_{n_p}).
    Join {
        #[arg(long)]
        s: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub theorem: TheoremArg,
    #[command(flatten)]
    pub params: TheoremParams,
    /// Every connected graph with MIN ≤ n ≤ MAX.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], conflicts_with_all = ["sampled", "input"])]
    pub exhaustive: Option<Vec<usize>>,
    /// COUNT seeded random connected graphs on N vertices.
    #[arg(long, num_args = 2, value_names = ["N", "COUNT"], conflicts_with = "input")]
    pub sampled: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// graph6 file, one graph per line; `-` for stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(Output { value, raw, code }) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("reports serialize") + "\n",
                Format::Text => raw.unwrap_or_else(|| render_text(&value)),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Output {
    value: Value,
    /// Replaces the flattened rendering in text mode.
    raw: Option<String>,
    code: i32,
}

fn output(value: impl Serialize, code: i32) -> Result<Output> {
    Ok(Output { value: serde_json::to_value(value).expect("reports serialize"), raw: None, code })
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead) -> Result<Output> {
    match &cli.command {
        Command::Spectra { graph, tol, full } => run_spectra(&read_graph(graph, stdin)?, *tol, *full),
        Command::Construct(args) => run_construct(args),
        Command::Quotient(args) => run_quotient(args, stdin),
        Command::Factor(args) => run_factor(args, stdin),
        Command::Certify(args) => {
            let g = read_graph(&args.graph, stdin)?;
            let rep = certify(&g, theorem_spec(args.theorem, args.params)?)?;
            let code = if rep.verdict == Verdict::Counterexample { EXIT_FOUND } else { EXIT_OK };
            output(json!({ "graph6": to_graph6(&g), "report": rep }), code)
        }
        Command::Replay(cmd) => run_replay(cmd),
        Command::Search(args) => run_search(args, stdin),
    }
}

fn read_graph(input: &GraphInput, stdin: &mut dyn BufRead) -> Result<Graph> {
    if let Some(text) = &input.graph6 {
        return from_graph6(text.trim());
    }
    let graphs = match &input.input {
        Some(path) => read_graph6_lines(std::io::BufReader::new(std::fs::File::open(path)?))?,
        None => read_graph6_lines(stdin)?,
    };
    graphs.into_iter().next().ok_or_else(|| invalid("no graph on input"))
}

fn need(value: Option<usize>, name: &str, what: &str) -> Result<usize> {
    value.ok_or_else(|| invalid(format!("{what} requires --{name}")))
}

fn run_spectra(g: &Graph, tol: f64, full: bool) -> Result<Output> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(invalid(format!("--tol must lie in (0, 1), got {tol}")));
    }
    let data = all_pairs_distances(g)?;
    let d = distance_matrix(g)?.to_f64();
    let q = dq_matrix(g)?.to_f64();
    let lambda1 = spectra::spectral_radius(&d, tol)?;
    let mu1 = spectra::spectral_radius(&q, tol)?;
    let mut value = json!({
        "graph6": to_graph6(g),
        "stats": graph_stats(g),
        "distances": {
            "matrix": data.dist,
            "transmissions": data.transmissions,
            "sigma": data.sigma,
            "diameter": data.diameter,
            "transmission_regular": data.is_transmission_regular(),
        },
        "lambda1": lambda1,
        "mu1": mu1,
        "power_iteration": { "rel_tol": tol, "residual_tol": crate::linalg::PowerConfig::default().residual_tol },
        "bounds": transmission_bounds(g)?,
    });
    if full {
        value["distance_spectrum"] = json!(spectra::full_spectrum(&d));
        value["dq_spectrum"] = json!(spectra::full_spectrum(&q));
        value["jacobi_tolerance"] = json!(1e-10);
    }
    output(value, EXIT_OK)
}

fn run_construct(args: &ConstructArgs) -> Result<Output> {
    let (g, layout): (Graph, Option<BlockLayout>) = if let Some(v) = &args.extremal_gr {
        let (g, l) = build_extremal_gr(v[0], v[1])?;
        (g, Some(l))
    } else if let Some(v) = &args.gs {
        let (g, l) = build_gs(v[0], v[1], v[2])?;
        (g, Some(l))
    } else if let Some(v) = &args.join_family {
        (build_join_family(v[0], v[1], &v[2..])?, None)
    } else if let Some(n) = args.complete {
        (Graph::complete(n), None)
    } else if let Some(n) = args.cycle {
        if n < 3 {
            return Err(invalid(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        (Graph::cycle(n), None)
    } else if let Some(n) = args.path {
        (Graph::path(n), None)
    } else if let Some(l) = args.star {
        (Graph::star(l), None)
    } else {
        unreachable!("clap requires one construction")
    };
    let g6 = to_graph6(&g);
    let value = json!({
        "graph6": g6,
        "order": g.order(),
        "edge_count": g.edge_count(),
        "layout": layout.map(|l| l.sizes),
    });
    Ok(Output { value, raw: Some(format!("{g6}\n")), code: EXIT_OK })
}

fn run_quotient(args: &QuotientArgs, stdin: &mut dyn BufRead) -> Result<Output> {
    if let Some(v) = &args.extremal_gr {
        let (n, r) = (v[0], v[1]);
        let closed_form = theorem1_quotient(n, r)?;
        let computed = extremal_quotient(n, r)?;
        let (g, layout) = build_extremal_gr(n, r)?;
        let check = verify_quotient_equality(&distance_matrix(&g)?.to_f64(), &Partition::from_layout(&layout))?;
        let eq3 = eq3_ratio_check(n, r)?;
        let matches = closed_form == computed;
        let pass = matches && check.holds() && eq3.passes;
        let value = json!({
            "n": n,
            "r": r,
            "layout": layout.sizes,
            "quotient": computed,
            "matches_closed_form": matches,
            "check": check,
            "eigenvector_ratio": eq3,
            "threshold_check": ineq4_check(n, r)?,
        });
        return output(value, if pass { EXIT_OK } else { EXIT_FOUND });
    }
    let g = read_graph(&args.graph, stdin)?;
    let sizes = args.layout.clone().ok_or_else(|| invalid("quotient requires --extremal-gr or --layout"))?;
    let layout = BlockLayout::new(sizes);
    if layout.total() != g.order() {
        return Err(Error::InvalidPartition(format!(
            "layout covers {} vertices, graph has {}",
            layout.total(),
            g.order()
        )));
    }
    let partition = Partition::from_layout(&layout);
    let d = distance_matrix(&g)?.to_f64();
    let q = quotient_matrix(&d, &partition)?;
    let check = if q.equitable { Some(verify_quotient_equality(&d, &partition)?) } else { None };
    let pass = check.as_ref().is_some_and(|c| c.holds());
    output(
        json!({ "graph6": to_graph6(&g), "layout": layout.sizes, "quotient": q, "check": check }),
        if pass { EXIT_OK } else { EXIT_FOUND },
    )
}

fn run_factor(args: &FactorArgs, stdin: &mut dyn BufRead) -> Result<Output> {
    let g = read_graph(&args.graph, stdin)?;
    let what = args.oracle.to_possible_value().expect("no skipped variants").get_name().to_string();
    let ab = || -> Result<(usize, usize)> { Ok((need(args.a, "a", &what)?, need(args.b, "b", &what)?)) };
    let witness = match args.oracle {
        Oracle::Matching => serde_json::to_value(max_matching(&g)?),
        Oracle::Tutte => serde_json::to_value(tutte_violator(&g)?),
        Oracle::FractionalPm => serde_json::to_value(fractional_pm_violator(&g)?),
        Oracle::Hall => {
            let left = args.left.clone().ok_or_else(|| invalid("hall requires --left"))?;
            let right: Vec<usize> = (0..g.order()).filter(|v| !left.contains(v)).collect();
            serde_json::to_value(hall_check(&g, &left, &right)?)
        }
        Oracle::FractionalAb => {
            let (a, b) = ab()?;
            serde_json::to_value(fractional_ab_factor(&g, a, b)?)
        }
        Oracle::HalfIntegral => {
            let (a, b) = ab()?;
            serde_json::to_value(half_integral_oracle(&g, a, b)?)
        }
        Oracle::Deleted => {
            let (a, b) = ab()?;
            serde_json::to_value(is_fractional_ab_deleted(&g, a, b)?)
        }
        Oracle::KFactor => serde_json::to_value(has_k_factor(&g, need(args.k, "k", &what)?)?),
        Oracle::Id => serde_json::to_value(is_id_factor_critical(&g)?),
    }
    .expect("witnesses serialize");
    output(json!({ "graph6": to_graph6(&g), "oracle": what, "result": witness }), EXIT_OK)
}

fn theorem_spec(t: TheoremArg, p: TheoremParams) -> Result<TheoremSpec> {
    let spec = match t {
        TheoremArg::Id => TheoremSpec::IdFactorCritical { r: need(p.r, "r", "id")? },
        TheoremArg::FractionalAb => {
            TheoremSpec::FractionalAb { a: need(p.a, "a", "fractional-ab")?, b: need(p.b, "b", "fractional-ab")? }
        }
        TheoremArg::Deleted => TheoremSpec::AbDeleted { a: need(p.a, "a", "deleted")?, b: need(p.b, "b", "deleted")? },
        TheoremArg::KFactor => TheoremSpec::KFactor { k: need(p.k, "k", "k-factor")? },
    };
    spec.validate()?;
    Ok(spec)
}

fn run_replay(cmd: &ReplayCommand) -> Result<Output> {
    match *cmd {
        ReplayCommand::Comparison { n, r, s } => {
            let reports = match s {
                Some(s) => vec![replay_comparison(n, r, s)?],
                None => {
                    let hi = n.saturating_sub(r + 2) / 2;
                    if 3 * r + 1 > hi {
                        return Err(invalid(format!("no admissible s for n = {n}, r = {r}")));
                    }
                    (3 * r + 1..=hi).map(|s| replay_comparison(n, r, s)).collect::<Result<Vec<_>>>()?
                }
            };
            let pass = reports.iter().all(|r| r.all_hold());
            output(json!({ "reports": reports, "all_hold": pass }), if pass { EXIT_OK } else { EXIT_FOUND })
        }
        ReplayCommand::Join { s, ref parts } => {
            let rep = compare_lemma23(s, parts)?;
            let code = if rep.holds { EXIT_OK } else { EXIT_FOUND };
            output(rep, code)
        }
    }
}

fn run_search(args: &SearchArgs, stdin: &mut dyn BufRead) -> Result<Output> {
    let spec = theorem_spec(args.theorem, args.params)?;
    let corpus = if let Some(v) = &args.exhaustive {
        Corpus::Exhaustive { min_order: v[0], max_order: v[1] }
    } else if let Some(v) = &args.sampled {
        Corpus::Sampled { order: v[0], count: v[1], seed: args.seed }
    } else if let Some(path) = &args.input {
        let graphs = if path.as_os_str() == "-" {
            read_graph6_lines(stdin)?
        } else {
            read_graph6_lines(std::io::BufReader::new(std::fs::File::open(path)?))?
        };
        Corpus::explicit(graphs)
    } else {
        return Err(invalid("search requires --exhaustive, --sampled or --input"));
    };
    let rep = search_counterexamples(corpus, spec)?;
    let code = if rep.counterexamples.is_empty() { EXIT_OK } else { EXIT_FOUND };
    output(rep, code)
}

/// Flattens a JSON value into `path: value` lines. Arrays of scalars stay on
/// one line.
pub fn render_text(value: &Value) -> String {
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::Null => Some("-".into()),
            Value::Bool(b) => Some(b.to_string()),
            Value::Number(n) => Some(n.to_string()),
            Value::String(s) => Some(s.clone()),
            _ => None,
        }
    }
    fn go(v: &Value, path: &str, out: &mut String) {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{path}: {s}\n"));
            return;
        }
        let join = |key: &str| if path.is_empty() { key.to_string() } else { format!("{path}.{key}") };
        match v {
            Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
                let row: Vec<String> = items.iter().filter_map(scalar).collect();
                out.push_str(&format!("{path}: [{}]\n", row.join(" ")));
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    go(x, &join(&i.to_string()), out);
                }
            }
            Value::Object(map) => {
                for (k, x) in map {
                    go(x, &join(k), out);
                }
            }
            _ => unreachable!(),
        }
    }
    let mut out = String::new();
    go(value, "", &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("distfactor").chain(args.iter().copied());
        let code = run(argv, &mut std::io::empty(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn spectra_of_k4() {
        let (code, out, _) = call(&["spectra", "--graph6", "C~"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["lambda1"]["value"].as_f64().unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn construct_then_certify() {
        let (code, g6, _) = call(&["--format", "text", "construct", "--extremal-gr", "11", "1"]);
        assert_eq!(code, 0);
        let (code, out, _) = call(&["certify", "id", "--graph6", g6.trim(), "--r", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["verdict"], "extremal_exception");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["certify", "id", "--graph6", "C~"]).0, 2);
        assert_eq!(call(&["factor", "fractional-ab", "--graph6", "C~", "--a", "3", "--b", "2"]).0, 2);
        let (code, _, err) = call(&["search", "k-factor", "--k", "1", "--exhaustive", "2", "12"]);
        assert_eq!(code, 2);
        assert!(err.contains("cap"), "{err}");
        assert_eq!(call(&["nonsense"]).0, 2);
    }

    #[test]
    fn text_rendering_flattens() {
        let text = render_text(&json!({ "a": { "b": [1, 2] }, "c": [{ "d": null }] }));
        assert_eq!(text, "a.b: [1 2]\nc.0.d: -\n");
    }
}
