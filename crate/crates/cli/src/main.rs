//! `nilmetric` command line.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use nilmetric::analysis::{
    analyze, verify_report, Analysis, InputDescriptor, OutputFormat, RunConfig, SolverMode,
    Timings, Verdict, VerdictReport,
};
use nilmetric::graphs::{build_algebra, classify_graph, parse_graph, Prediction};
use nilmetric::parabolic::{
    build_nilradical, certify_free_isomorphism, classify_nilradical, verify_lcs_grading,
    NilradicalPrediction, ParabolicSpec,
};
use nilmetric::roots::CartanType;
use nilmetric::scan::{classical_types, scan_graphs, scan_parabolics};
use nilmetric::{free_nilpotent, LieAlgebra, Subspace};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "nilmetric",
    version,
    about = "Ad-invariant metrics on nilpotent Lie algebras"
)]
struct Cli {
    #[arg(
        long,
        value_enum,
        default_value = "text",
        env = "NILMETRIC_OUTPUT",
        global = true
    )]
    output: Output,
    #[arg(long, env = "NILMETRIC_SEED", global = true)]
    seed: Option<u64>,
    #[arg(long, env = "NILMETRIC_MC_TRIALS", global = true)]
    mc_trials: Option<usize>,
    #[arg(long, env = "NILMETRIC_MC_RANGE", global = true)]
    mc_range: Option<u64>,
    #[arg(long, env = "NILMETRIC_SYMBOLIC_MAX_DIM", global = true)]
    symbolic_max_dim: Option<usize>,
    #[arg(long, env = "NILMETRIC_SYMBOLIC_MAX_FORMS", global = true)]
    symbolic_max_forms: Option<usize>,
    #[arg(long, env = "NILMETRIC_SOLVER_DIM_CAP", global = true)]
    solver_dim_cap: Option<usize>,
    #[arg(long, env = "NILMETRIC_THETA_BUDGET", global = true)]
    theta_budget: Option<usize>,
    /// Add wall-clock timings to reports (breaks byte-identical output).
    #[arg(long, global = true)]
    timings: bool,
    /// Re-check a saved JSON report.
    #[arg(long, value_name = "REPORT")]
    verify: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a structure-constant JSON file (`-` for stdin).
    Analyze {
        input: PathBuf,
        #[arg(long)]
        obstructions_only: bool,
    },
    /// Decide the algebra of a graph (edge list or JSON, `-` for stdin).
    Graph { input: PathBuf },
    /// Decide the free nilpotent algebra on `p` generators of class `k`.
    Free { p: usize, k: usize },
    /// Decide a parabolic nilradical, e.g. `E6:g3` or `A4:g1,g3`.
    Parabolic {
        spec: String,
        #[arg(long)]
        obstructions_only: bool,
    },
    /// Connected graphs up to N vertices and their disjoint unions.
    ScanGraphs {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = 8)]
        union_max_vertices: usize,
    },
    /// All single-root and two-root nilradicals of the listed types.
    ScanParabolics {
        /// Comma-separated types: A,B,C,D families or explicit names like E6.
        #[arg(long, value_delimiter = ',', default_value = "A,B,C,D,G2,F4,E6")]
        types: Vec<String>,
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
        #[arg(long)]
        no_pairs: bool,
    },
    /// Relative central series of a subspace (default: the whole algebra).
    Series {
        input: PathBuf,
        #[arg(long)]
        subspace: Option<PathBuf>,
    },
}

enum Failure {
    Disagreement(String),
    Input(String),
}

type CliResult = Result<(), Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn config(cli: &Cli) -> Result<RunConfig, Failure> {
    let d = RunConfig::default();
    let c = RunConfig {
        seed: cli.seed.unwrap_or(d.seed),
        mc_trials: cli.mc_trials.unwrap_or(d.mc_trials),
        mc_range: cli.mc_range.unwrap_or(d.mc_range),
        symbolic_max_dim: cli.symbolic_max_dim.unwrap_or(d.symbolic_max_dim),
        symbolic_max_forms: cli.symbolic_max_forms.unwrap_or(d.symbolic_max_forms),
        solver_dim_cap: cli.solver_dim_cap.unwrap_or(d.solver_dim_cap),
        theta_budget: cli.theta_budget.unwrap_or(d.theta_budget),
        output: match cli.output {
            Output::Text => OutputFormat::Text,
            Output::Json => OutputFormat::Json,
        },
    };
    c.validate().map_err(input_err)?;
    Ok(c)
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn run(cli: &Cli) -> CliResult {
    let cfg = config(cli)?;
    if let Some(path) = &cli.verify {
        return verify(&read_input(path)?, &cfg);
    }
    let Some(command) = &cli.command else {
        return Err(Failure::Input("no subcommand given (see --help)".into()));
    };
    let start = Instant::now();
    match command {
        Command::Analyze {
            input,
            obstructions_only,
        } => {
            let g = LieAlgebra::from_json_str(&read_input(input)?).map_err(input_err)?;
            let a = analyze_cmd(&g, &[], &cfg, *obstructions_only)?;
            let report = VerdictReport::new(descriptor("structure_constants", input), &cfg, &g, a);
            emit_report(report, cli, start, &cfg)
        }
        Command::Graph { input } => {
            let graph = parse_graph(&read_input(input)?).map_err(input_err)?;
            let ga = build_algebra(&graph);
            let cls = classify_graph(&graph);
            let a = analyze_cmd(&ga.algebra, &[], &cfg, false)?;
            let agrees =
                decided(&a.verdict) && a.verdict.admits() == (cls.prediction == Prediction::Admits);
            let mut report = VerdictReport::new(descriptor("graph", input), &cfg, &ga.algebra, a);
            report.prediction = Some(json(&cls));
            report.agrees_with_prediction = Some(agrees);
            report.details = Some(serde_json::json!({ "graph": graph.to_json() }));
            emit_report(report, cli, start, &cfg)
        }
        Command::Free { p, k } => {
            if *p == 0 || *k == 0 {
                return Err(Failure::Input("p and k must be positive".into()));
            }
            let g = free_nilpotent(*p, *k);
            let a = analyze_cmd(&g, &[], &cfg, false)?;
            let input = InputDescriptor {
                kind: "free".into(),
                source: format!("n_{{{p},{k}}}"),
            };
            emit_report(VerdictReport::new(input, &cfg, &g, a), cli, start, &cfg)
        }
        Command::Parabolic {
            spec,
            obstructions_only,
        } => {
            let spec: ParabolicSpec = spec.parse().map_err(input_err)?;
            let pn = build_nilradical(&spec);
            let prediction = classify_nilradical(&spec);
            let a = analyze_cmd(
                &pn.algebra,
                &pn.registered_decompositions(),
                &cfg,
                *obstructions_only,
            )?;
            let iso = certify_free_isomorphism(&pn).map(|(name, _)| name);
            let iso_ok = match prediction {
                NilradicalPrediction::N23 | NilradicalPrediction::N32 => iso.is_some(),
                _ => true,
            };
            let agrees = decided(&a.verdict) && a.verdict.admits() == prediction.admits() && iso_ok;
            let lcs = verify_lcs_grading(&pn);
            let roots: Vec<String> = pn
                .roots
                .iter()
                .map(|&r| nilmetric::roots::RootSystem::root_label(pn.rs.root(r)))
                .collect();
            let mut report = VerdictReport::new(
                InputDescriptor {
                    kind: "parabolic".into(),
                    source: spec.to_string(),
                },
                &cfg,
                &pn.algebra,
                a,
            );
            report.prediction = Some(json(&prediction));
            report.agrees_with_prediction = Some(agrees);
            report.details = Some(serde_json::json!({
                "k": pn.k,
                "layer_dims": pn.layer_dims(),
                "top_layer_dim": pn.layer(pn.k).dim(),
                "roots": roots,
                "lcs": lcs,
                "isomorphism": iso,
            }));
            emit_report(report, cli, start, &cfg)
        }
        Command::ScanGraphs {
            max_vertices,
            union_max_vertices,
        } => {
            let scan = scan_graphs(*max_vertices, *union_max_vertices, &cfg);
            match cfg.output {
                OutputFormat::Json => print_json(&scan),
                OutputFormat::Text => {
                    for r in scan.rows.iter().filter(|r| !r.agrees || !r.dims_ok) {
                        println!(
                            "DISAGREE {} verdict={} predicted_admits={}",
                            r.graph, r.verdict, r.predicted_admits
                        );
                    }
                    println!(
                        "graphs: {} connected, {} unions, {} disagreements, {} soundness conflicts",
                        scan.connected, scan.unions, scan.disagreements, scan.conflicts
                    );
                }
            }
            print_timing(cli, start);
            if scan.all_agree() {
                Ok(())
            } else {
                Err(Failure::Disagreement(format!(
                    "{} graph cases",
                    scan.disagreements + scan.conflicts
                )))
            }
        }
        Command::ScanParabolics {
            types,
            max_rank,
            no_pairs,
        } => {
            let types = parse_types(types, *max_rank)?;
            let scan = scan_parabolics(&types, !no_pairs, &cfg);
            match cfg.output {
                OutputFormat::Json => print_json(&scan),
                OutputFormat::Text => {
                    for r in &scan.rows {
                        println!(
                            "{:<10} dim={:<3} k={} layers={:?} verdict={}{}{}{}",
                            r.spec,
                            r.dim,
                            r.k,
                            r.layer_dims,
                            r.verdict,
                            r.certificate
                                .as_ref()
                                .map(|c| format!(" [{c}]"))
                                .unwrap_or_default(),
                            r.isomorphism
                                .as_ref()
                                .map(|c| format!(" ~ {c}"))
                                .unwrap_or_default(),
                            if r.agrees && r.lcs_ok && r.jacobi_ok {
                                ""
                            } else {
                                "  DISAGREE"
                            },
                        );
                    }
                    println!(
                        "parabolics: {} single, {} pairs, {} disagreements, {} soundness conflicts",
                        scan.single, scan.pairs, scan.disagreements, scan.conflicts
                    );
                }
            }
            print_timing(cli, start);
            if scan.all_agree() {
                Ok(())
            } else {
                Err(Failure::Disagreement(format!(
                    "{} parabolic cases",
                    scan.disagreements + scan.conflicts
                )))
            }
        }
        Command::Series { input, subspace } => {
            let g = LieAlgebra::from_json_str(&read_input(input)?).map_err(input_err)?;
            let v = match subspace {
                None => Subspace::full(g.dim()),
                Some(p) => serde_json::from_str::<Subspace>(&read_input(p)?).map_err(input_err)?,
            };
            let out = series_output(&g, &v)?;
            match cfg.output {
                OutputFormat::Json => print_json(&out),
                OutputFormat::Text => {
                    println!("dim g = {}, dim V = {}", out.dim, out.subspace_dim);
                    println!("C^j(V) dims: {:?}", out.lower_dims);
                    println!("C_j(V) dims: {:?}", out.upper_dims);
                    for r in &out.rows {
                        println!(
                            "j={}: {} + {} = {}{}",
                            r.j,
                            r.lower,
                            r.upper,
                            r.lower + r.upper,
                            if r.holds { "" } else { " != dim g" }
                        );
                    }
                }
            }
            print_timing(cli, start);
            Ok(())
        }
    }
}

fn decided(v: &Verdict) -> bool {
    v.admits() || v.refutes()
}

fn json(v: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_timing(cli: &Cli, start: Instant) {
    if cli.timings {
        eprintln!("elapsed: {:.1} ms", start.elapsed().as_secs_f64() * 1e3);
    }
}

fn descriptor(kind: &str, path: &Path) -> InputDescriptor {
    InputDescriptor {
        kind: kind.into(),
        source: path.display().to_string(),
    }
}

fn analyze_cmd(
    g: &LieAlgebra,
    registered: &[nilmetric::obstructions::Decomposition],
    cfg: &RunConfig,
    obstructions_only: bool,
) -> Result<Analysis, Failure> {
    let mode = if obstructions_only {
        SolverMode::Never
    } else {
        SolverMode::AfterObstructions
    };
    analyze(g, registered, cfg, mode).map_err(input_err)
}

fn parse_types(list: &[String], max_rank: usize) -> Result<Vec<CartanType>, Failure> {
    let mut out = Vec::new();
    for item in list {
        let item = item.trim();
        if item.len() == 1 {
            let fam: Vec<CartanType> = classical_types(max_rank)
                .into_iter()
                .filter(|t| t.to_string().starts_with(&item.to_ascii_uppercase()))
                .collect();
            if fam.is_empty() {
                return Err(Failure::Input(format!("unknown type family {item:?}")));
            }
            out.extend(fam);
        } else {
            out.push(item.parse::<CartanType>().map_err(input_err)?);
        }
    }
    Ok(out)
}

fn emit_report(mut report: VerdictReport, cli: &Cli, start: Instant, cfg: &RunConfig) -> CliResult {
    if cli.timings {
        report.timings = Some(Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    match cfg.output {
        OutputFormat::Json => print_json(&report),
        OutputFormat::Text => print_report_text(&report),
    }
    if report.analysis.soundness_conflict {
        return Err(Failure::Disagreement(
            "obstruction and witness for the same algebra".into(),
        ));
    }
    match report.agrees_with_prediction {
        Some(false) => Err(Failure::Disagreement(format!(
            "verdict {} differs from the predicted outcome",
            report.analysis.verdict.kind_name()
        ))),
        _ => Ok(()),
    }
}

fn print_report_text(r: &VerdictReport) {
    let s = &r.analysis.summary;
    println!("input: {} {}", r.input.kind, r.input.source);
    println!(
        "dim {}, class {}, lower central {:?}, upper central {:?}, center {}",
        s.dim,
        s.nilpotency_class
            .map_or("-".to_string(), |k| k.to_string()),
        s.lower_central_dims,
        s.upper_central_dims,
        s.center_dim
    );
    if let Some(p) = &r.prediction {
        println!("prediction: {p}");
    }
    if let Some(d) = &r.details {
        if let Some(top) = d.get("top_layer_dim") {
            println!("dim C^(k-1) = {top}, layers {}", d["layer_dims"]);
        }
        if let Some(iso) = d.get("isomorphism").filter(|v| !v.is_null()) {
            println!("isomorphic to {iso}");
        }
    }
    println!("verdict: {}", r.analysis.verdict.describe());
    if let Verdict::Admits { witness, .. } = &r.analysis.verdict {
        println!("witness:");
        for row in witness.matrix().to_rows() {
            let cells: Vec<String> = row.iter().map(nilmetric::linalg::format_rational).collect();
            println!("  [{}]", cells.join(", "));
        }
    }
    if let Some(a) = r.agrees_with_prediction {
        println!("agrees with prediction: {a}");
    }
    println!("seed: {}", r.config.seed);
    if let Some(t) = &r.timings {
        println!("elapsed: {:.1} ms", t.total_ms);
    }
}

fn verify(text: &str, cfg: &RunConfig) -> CliResult {
    let report: VerdictReport = serde_json::from_str(text).map_err(input_err)?;
    match verify_report(&report) {
        Ok(outcome) => {
            match cfg.output {
                OutputFormat::Json => print_json(&outcome),
                OutputFormat::Text => {
                    println!(
                        "verified {}: {}",
                        outcome.verdict_kind,
                        outcome.checked.join(", ")
                    );
                }
            }
            Ok(())
        }
        Err(msg) => Err(Failure::Disagreement(format!(
            "report does not verify: {msg}"
        ))),
    }
}

#[derive(Serialize)]
struct SeriesRow {
    j: usize,
    lower: usize,
    upper: usize,
    holds: bool,
}

#[derive(Serialize)]
struct SeriesOutput {
    dim: usize,
    subspace_dim: usize,
    lower_dims: Vec<usize>,
    upper_dims: Vec<usize>,
    rows: Vec<SeriesRow>,
}

fn series_output(g: &LieAlgebra, v: &Subspace) -> Result<SeriesOutput, Failure> {
    let s = g.relative_series(v).map_err(input_err)?;
    let rows = (1..=s.span_len())
        .map(|j| {
            let (lower, upper) = (s.lower(j).dim(), s.upper(j).dim());
            SeriesRow {
                j,
                lower,
                upper,
                holds: lower + upper == g.dim(),
            }
        })
        .collect();
    Ok(SeriesOutput {
        dim: g.dim(),
        subspace_dim: v.dim(),
        lower_dims: s.descending_dims(),
        upper_dims: s.ascending_dims(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_lists_expand_families() {
        let Ok(types) = parse_types(&["B".into(), "G2".into()], 4) else {
            panic!("valid list");
        };
        let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
        assert_eq!(names, ["B2", "B3", "B4", "G2"]);
        assert!(parse_types(&["Z".into()], 4).is_err());
    }

    #[test]
    fn series_rows_for_heisenberg() {
        let g = free_nilpotent(2, 2);
        let Ok(out) = series_output(&g, &Subspace::full(3)) else {
            panic!("full space is valid");
        };
        assert_eq!(out.lower_dims, [3, 1, 0]);
        assert!(!out.rows[0].holds);
    }
}
