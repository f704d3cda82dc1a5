//! Command implementations behind the `hgraphon` binary.
//!
//! Exit codes: 0 when a verdict was reached, 3 when the step-graphon
//! classification is undetermined (concentration vector on the polytope
//! boundary), 2 for invalid input.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hgraphon::classify::StepReport;
use hgraphon::hamdec::DegreeDefect;
use hgraphon::io::{graphon_id, parse_graphon};
use hgraphon::{
    decide, parse_graph, run_check, run_experiment, sample_graph, CheckReport, Classification,
    ClassifyOptions, Decision, GeneralGraphon, Matrix, Rational, Scalar, SkeletonGraph, Status,
};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hgraphon",
    version,
    about = "Hamiltonian decompositions of graphon samples"
)]
pub struct Cli {
    /// Worker threads for sampling and simulation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the odd-cycle and polytope conditions for a graphon.
    Check(CheckArgs),
    /// Draw one graph from a graphon.
    Sample(SampleArgs),
    /// Decide whether a graph file has a Hamiltonian decomposition.
    Hamdec(HamdecArgs),
    /// Print the skeleton graph and incidence matrix of a step-graphon.
    Skeleton(SkeletonArgs),
    /// Monte Carlo frequency of Hamiltonian decompositions across sizes.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct Arithmetic {
    /// Exact rational arithmetic (default).
    #[arg(long, conflicts_with = "float")]
    pub exact: bool,
    /// Floating-point arithmetic with tolerance 1e-9.
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Graphon JSON file.
    pub input: PathBuf,
    /// Grid resolutions for the discretized conditions.
    #[arg(long, value_delimiter = ',', default_values_t = vec![8, 16, 32, 64])]
    pub resolution: Vec<usize>,
    /// Sample points per cell side when discretizing the support.
    #[arg(long, default_value_t = 3)]
    pub subsamples: usize,
    #[command(flatten)]
    pub arithmetic: Arithmetic,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the directed version (`d n m` header) instead of the undirected sample.
    #[arg(long)]
    pub directed: bool,
    /// Graph file; the coordinates go to `<out>.coords`. Without it the graph is printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HamdecArgs {
    /// Graph file (`n m` undirected or `d n m` directed).
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SkeletonArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub input: PathBuf,
    /// Comma-separated sample sizes.
    #[arg(long, value_delimiter = ',', required_unless_present = "n")]
    pub n_list: Vec<usize>,
    /// Single sample size (shorthand for a one-element --n-list).
    #[arg(long, conflicts_with = "n_list")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fill the `seconds` column (makes the output machine-dependent).
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot of frequency against n.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command. Normal
/// output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_INVALID
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32> {
    let Some(threads) = cli.threads else {
        return dispatch(&cli.command, stdout);
    };
    if threads == 0 {
        bail!("--threads must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?;
    let mut buffer = Vec::new();
    let code = pool.install(|| dispatch(&cli.command, &mut buffer))?;
    stdout.write_all(&buffer)?;
    Ok(code)
}

fn dispatch(command: &Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Check(a) => cmd_check(a, stdout),
        Command::Sample(a) => cmd_sample(a, stdout),
        Command::Hamdec(a) => cmd_hamdec(a, stdout),
        Command::Skeleton(a) => cmd_skeleton(a, stdout),
        Command::Simulate(a) => cmd_simulate(a, stdout),
    }
}

fn read_graphon(path: &Path) -> Result<GeneralGraphon> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graphon(&text).with_context(|| format!("invalid graphon file {}", path.display()))
}

fn emit(out: &Option<PathBuf>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn unsupported(format: Format, command: &str) -> anyhow::Error {
    anyhow::anyhow!("format {format:?} is not available for {command}")
}

fn vector<T: std::fmt::Display>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", items.join(", "))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// check

pub fn cmd_check(a: &CheckArgs, stdout: &mut dyn Write) -> Result<i32> {
    if a.resolution.is_empty() || a.resolution.contains(&0) {
        bail!("resolutions must be positive");
    }
    if a.subsamples == 0 {
        bail!("--subsamples must be at least 1");
    }
    let g = read_graphon(&a.input)?;
    let options = ClassifyOptions {
        resolutions: a.resolution.clone(),
        subsamples: a.subsamples,
    };
    if a.arithmetic.float {
        finish_check(&run_check::<f64>(&g, &options), a, stdout)
    } else {
        finish_check(&run_check::<Rational>(&g, &options), a, stdout)
    }
}

fn finish_check<T: Scalar>(
    report: &CheckReport<T>,
    a: &CheckArgs,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let text = match a.format {
        Format::Text => check_text(report),
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        other => return Err(unsupported(other, "check")),
    };
    emit(&a.out, stdout, &text)?;
    Ok(match report.verdict.classification {
        Classification::Undetermined => EXIT_UNDETERMINED,
        _ => EXIT_OK,
    })
}

/// The one-line summary, e.g. `A: yes; B: interior (t*=1/5); H-property: YES`.
pub fn summary_line<T: Scalar>(report: &CheckReport<T>) -> String {
    let v = &report.verdict;
    let mut s = format!("A: {}; ", yes_no(v.condition_a));
    if v.condition_a {
        let margin = report
            .step
            .as_ref()
            .and_then(|r| r.membership.margin.as_ref())
            .map(ToString::to_string);
        match (v.condition_b_status, margin) {
            (Status::Interior, Some(t)) => {
                let _ = write!(s, "B: interior (t*={t}); ");
            }
            (status, _) => {
                let _ = write!(s, "B: {status}; ");
            }
        }
    }
    let _ = write!(s, "H-property: {}", v.classification);
    s
}

fn check_text<T: Scalar>(report: &CheckReport<T>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graphon: {}", report.graphon_kind);
    if let Some(step) = &report.step {
        step_text(&mut s, step);
    }
    if !report.extended.is_empty() {
        let _ = writeln!(
            s,
            "grid conditions (subsample points per side: {}):",
            report.extended[0].subsamples
        );
        for e in &report.extended {
            let margin = e
                .b_ext_margin
                .map(|m| format!(" margin={:.6}", if m.abs() < 1e-12 { 0.0 } else { m }))
                .unwrap_or_default();
            let _ = writeln!(
                s,
                "  N={:<4} A_ext: {:<3} B_ext: {}{}{}",
                e.resolution,
                yes_no(e.a_ext),
                e.b_ext_status,
                margin,
                if e.exact { " (aligned)" } else { "" }
            );
        }
    }
    if report.step.is_none() {
        let _ = writeln!(s, "basis: grid approximation at the finest resolution");
    }
    let _ = writeln!(s, "{}", summary_line(report));
    s
}

fn step_text<T: Scalar>(s: &mut String, step: &StepReport<T>) {
    let edges: Vec<String> = step
        .skeleton_edges
        .iter()
        .map(|(i, j)| format!("{i}-{j}"))
        .collect();
    let _ = writeln!(
        s,
        "skeleton edges: {}",
        if edges.is_empty() {
            "(none)".into()
        } else {
            edges.join(" ")
        }
    );
    let _ = writeln!(s, "odd cycle: {}", yes_no(step.has_odd_cycle));
    let _ = writeln!(
        s,
        "every component non-bipartite: {}",
        yes_no(step.all_components_nonbipartite)
    );
    if step.readings_disagree() {
        let _ = writeln!(
            s,
            "warning: the skeleton has an odd cycle but also a bipartite component; \
             the odd-cycle and rank readings of condition A disagree"
        );
    }
    let _ = writeln!(s, "x* = {}", vector(&step.concentration_vector));
    let m = &step.membership;
    let _ = writeln!(s, "B: {}", m.status);
    if let Some(t) = &m.margin {
        let _ = writeln!(s, "t* = {t}");
    }
    if let Some(lambda) = &m.certificate {
        let _ = writeln!(s, "lambda = {}", vector(lambda));
    }
    if let Some(y) = &m.separating_certificate {
        let _ = writeln!(s, "separating y = {}", vector(y));
    }
}

// sample

pub fn cmd_sample(a: &SampleArgs, stdout: &mut dyn Write) -> Result<i32> {
    if a.n == 0 {
        bail!("--n must be at least 1");
    }
    let g = read_graphon(&a.input)?;
    let sample = sample_graph(&g, a.n, a.seed)?;
    let graph = if a.directed {
        sample.directify().to_edge_list()
    } else {
        sample.to_edge_list()
    };
    match &a.out {
        Some(path) => {
            fs::write(path, graph).with_context(|| format!("cannot write {}", path.display()))?;
            let mut sidecar = path.clone().into_os_string();
            sidecar.push(".coords");
            fs::write(&sidecar, sample.coordinates_sidecar())
                .with_context(|| format!("cannot write {}", Path::new(&sidecar).display()))?;
        }
        None => stdout.write_all(graph.as_bytes())?,
    }
    Ok(EXIT_OK)
}

// hamdec

pub fn cmd_hamdec(a: &HamdecArgs, stdout: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(&a.input)
        .with_context(|| format!("cannot read {}", a.input.display()))?;
    let d = parse_graph(&text)
        .with_context(|| format!("invalid graph file {}", a.input.display()))?
        .into_directed();
    let decision = decide(&d);
    let out = match a.format {
        Format::Text => hamdec_text(&decision),
        Format::Json => {
            let v = match &decision {
                Decision::Yes(hd) => json!({"decision": "yes", "cycles": hd.cycles}),
                Decision::No { witness } => json!({
                    "decision": "no",
                    "witness": witness.map(|(v, defect)| json!({"vertex": v, "defect": defect})),
                }),
            };
            serde_json::to_string_pretty(&v)? + "\n"
        }
        other => return Err(unsupported(other, "hamdec")),
    };
    emit(&a.out, stdout, &out)?;
    Ok(EXIT_OK)
}

fn hamdec_text(decision: &Decision) -> String {
    let mut s = String::new();
    match decision {
        Decision::Yes(hd) => {
            s.push_str("YES\n");
            for c in &hd.cycles {
                let items: Vec<String> = c.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{}", items.join(" "));
            }
        }
        Decision::No { witness } => {
            s.push_str("NO\n");
            if let Some((v, defect)) = witness {
                let what = match defect {
                    DegreeDefect::InDegreeZero => "in-degree 0",
                    DegreeDefect::OutDegreeZero => "out-degree 0",
                };
                let _ = writeln!(s, "witness: vertex {v} ({what})");
            }
        }
    }
    s
}

// skeleton

pub fn cmd_skeleton(a: &SkeletonArgs, stdout: &mut dyn Write) -> Result<i32> {
    let g = read_graphon(&a.input)?;
    let Some(step) = g.as_step() else {
        bail!(
            "{} graphons have no finite skeleton; use `check` for the grid conditions",
            g.kind()
        );
    };
    let s = SkeletonGraph::from_step_graphon(&step);
    let b: Matrix<Rational> = s.incidence_matrix();
    let columns: Vec<Vec<String>> = (0..b.cols())
        .map(|j| b.column(j).iter().map(ToString::to_string).collect())
        .collect();
    let text = match a.format {
        Format::Text => {
            let mut t = s.to_string();
            let _ = writeln!(t, "B =");
            for i in 0..b.rows() {
                let row: Vec<String> = columns.iter().map(|c| format!("{:>5}", c[i])).collect();
                let _ = writeln!(t, "  [{} ]", row.join(" "));
            }
            let _ = writeln!(t, "odd cycle: {}", yes_no(s.has_odd_cycle()));
            let _ = writeln!(
                t,
                "every component non-bipartite: {}",
                yes_no(s.all_components_nonbipartite())
            );
            if s.has_odd_cycle() != s.all_components_nonbipartite() {
                let _ = writeln!(t, "warning: the two readings of condition A disagree");
            }
            t
        }
        Format::Json => {
            let v = json!({
                "q": s.q(),
                "edges": s.edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect::<Vec<_>>(),
                "incidence_columns": columns,
                "has_odd_cycle": s.has_odd_cycle(),
                "all_components_nonbipartite": s.all_components_nonbipartite(),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
        other => return Err(unsupported(other, "skeleton")),
    };
    emit(&a.out, stdout, &text)?;
    Ok(EXIT_OK)
}

// simulate

pub fn cmd_simulate(a: &SimulateArgs, stdout: &mut dyn Write) -> Result<i32> {
    let n_list: Vec<usize> = match a.n {
        Some(n) => vec![n],
        None => a.n_list.clone(),
    };
    if n_list.is_empty() || n_list.contains(&0) {
        bail!("sample sizes must be positive");
    }
    if a.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let g = read_graphon(&a.input)?;
    let report = run_experiment(&g, &graphon_id(&g), &n_list, a.trials, a.seed)?;
    let text = match a.format {
        Format::Csv => report.to_csv(a.timing),
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Svg => report.to_svg(),
        Format::Text => {
            let mut s = format!(
                "graphon {} seed {}\n",
                report.graphon_id, report.master_seed
            );
            for r in &report.rows {
                let _ = writeln!(
                    s,
                    "n={:<6} {}/{} = {:.4}  95% CI [{:.4}, {:.4}]",
                    r.n, r.successes, r.trials, r.frequency, r.ci_low, r.ci_high
                );
            }
            s
        }
    };
    emit(&a.out, stdout, &text)?;
    if let Some(path) = &a.svg {
        fs::write(path, report.to_svg())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(EXIT_OK)
}
